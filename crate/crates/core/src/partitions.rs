//! Partition and dominant-weight combinatorics for `GL(n)`.
//!
//! Weights are finite weakly decreasing integer sequences; negative entries
//! are first class and encode duals and determinant twists. The module
//! provides Littlewood-Richardson products (by skew-tableau enumeration,
//! memoized), the Weyl dimension formula in arbitrary precision, the two
//! classical plethysms `Sym^t(Λ²V)` and `Sym^t(Sym²V)`, and the dotted Weyl
//! regularization step that drives Borel-Bott-Weil.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// A partition: weakly decreasing non-negative integers, trailing zeros
/// normalized away.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<i64>);

impl Partition {
    pub fn new(mut parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be weakly decreasing, got {parts:?}"
            )));
        }
        if parts.iter().any(|&p| p < 0) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be non-negative, got {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts.
    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    /// All partitions of `n` with at most `max_len` parts.
    pub fn enumerate(n: i64, max_len: usize) -> Vec<Partition> {
        fn rec(remaining: i64, max_part: i64, slots: usize, acc: &mut Vec<i64>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition(acc.clone()));
                return;
            }
            if slots == 0 || max_part == 0 {
                return;
            }
            let top = remaining.min(max_part);
            for p in (1..=top).rev() {
                acc.push(p);
                rec(remaining - p, p, slots - 1, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        if n >= 0 {
            rec(n, n, max_len, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl From<Partition> for BlockWeight {
    fn from(p: Partition) -> Self {
        BlockWeight(p.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A dominant `GL` weight: weakly decreasing integers, negatives allowed.
///
/// Trailing zeros are normalized away, so `(2,0)` and `(2)` denote the same
/// weight; a weight is padded back to the rank of the acting group at use
/// sites (zeros are inserted between the non-negative and negative entries,
/// the unique dominance-preserving position).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockWeight(Vec<i64>);

impl BlockWeight {
    pub fn new(mut entries: Vec<i64>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "weight entries must be weakly decreasing, got {entries:?}"
            )));
        }
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Ok(BlockWeight(entries))
    }

    /// Builds a weight without stripping trailing zeros; callers that track
    /// an explicit length (block weights inside bundles) use this.
    pub fn new_exact(entries: Vec<i64>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "weight entries must be weakly decreasing, got {entries:?}"
            )));
        }
        Ok(BlockWeight(entries))
    }

    pub fn zero(len: usize) -> Self {
        BlockWeight(vec![0; len])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Pads to length `rank`, inserting zeros in the dominance-preserving
    /// position (after the non-negative entries).
    pub fn padded(&self, rank: usize) -> Result<Vec<i64>> {
        if self.0.len() > rank {
            return Err(Error::InvalidArgument(format!(
                "weight {self} has more than rank = {rank} entries"
            )));
        }
        let split = self.0.iter().position(|&e| e < 0).unwrap_or(self.0.len());
        let mut padded = Vec::with_capacity(rank);
        padded.extend_from_slice(&self.0[..split]);
        padded.resize(rank - (self.0.len() - split), 0);
        padded.extend_from_slice(&self.0[split..]);
        Ok(padded)
    }

    /// The dual weight: reverse and negate.
    pub fn dual(&self) -> Self {
        BlockWeight(self.0.iter().rev().map(|&e| -e).collect())
    }

    /// Strips trailing zeros (the normal form used in `SchurSum` keys).
    pub fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    /// Adds `c` to every entry of the rank-`rank` padding.
    pub fn det_shifted(&self, c: i64, rank: usize) -> Result<Self> {
        let padded = self.padded(rank)?;
        BlockWeight::new(padded.into_iter().map(|e| e + c).collect())
    }
}

impl fmt::Display for BlockWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A not-necessarily-dominant integer weight, the intermediate state of the
/// Borel-Bott-Weil algorithm.
pub type WeightVector = Vec<i64>;

/// A multiplicity list of dominant weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchurSum {
    terms: BTreeMap<BlockWeight, u64>,
}

impl SchurSum {
    pub fn new() -> Self {
        SchurSum::default()
    }

    pub fn singleton(w: BlockWeight, mult: u64) -> Self {
        let mut s = SchurSum::new();
        s.add(w, mult);
        s
    }

    pub fn add(&mut self, w: BlockWeight, mult: u64) {
        if mult > 0 {
            *self.terms.entry(w).or_insert(0) += mult;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BlockWeight, u64)> {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, w: &BlockWeight) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Total dimension `Σ mult · dim S^w` at the given rank.
    pub fn dimension(&self, rank: usize) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for (w, m) in self.iter() {
            total += schur_dim(w, rank)? * BigUint::from(m);
        }
        Ok(total)
    }
}

impl fmt::Display for SchurSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m != 1 {
                write!(f, "{m}*")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// Outcome of the dotted Weyl regularization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regularized {
    /// `w + ρ` has a repeated entry: no cohomology.
    Singular,
    /// `w + ρ` is regular: a single dominant weight in a single degree.
    Dominant {
        /// Number of inversions of `w + ρ` (the cohomological degree shift).
        degree_shift: usize,
        /// `sort_desc(w + ρ) − ρ`, kept at the input length.
        weight: BlockWeight,
    },
}

/// Dotted Weyl regularization: add `ρ = (n−1,…,0)`, report `Singular` on a
/// repeated entry, otherwise the inversion count and `sort_desc(w+ρ) − ρ`.
pub fn dotted_weyl_regularize(w: &[i64]) -> Regularized {
    let n = w.len();
    let mut v: Vec<i64> = w
        .iter()
        .enumerate()
        .map(|(i, &e)| e + (n - 1 - i) as i64)
        .collect();
    let mut inversions = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            if v[i] == v[j] {
                return Regularized::Singular;
            }
            if v[i] < v[j] {
                inversions += 1;
            }
        }
    }
    v.sort_unstable_by(|a, b| b.cmp(a));
    let weight: Vec<i64> = v
        .iter()
        .enumerate()
        .map(|(i, &e)| e - (n - 1 - i) as i64)
        .collect();
    Regularized::Dominant {
        degree_shift: inversions,
        weight: BlockWeight(weight),
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// Dimension of the `GL(rank)` irreducible with highest weight `w`, by the
/// Weyl dimension formula on the zero-padded weight.
pub fn schur_dim(w: &BlockWeight, rank: usize) -> Result<BigUint> {
    if rank == 0 {
        return if w.is_empty() {
            Ok(BigUint::one())
        } else {
            Err(Error::InvalidArgument("rank 0 admits only the empty weight".into()))
        };
    }
    let padded = w.padded(rank)?;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..rank {
        for j in (i + 1)..rank {
            let gap = (j - i) as i64;
            num *= BigUint::from((padded[i] - padded[j] + gap) as u64);
            den *= BigUint::from(gap as u64);
        }
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

// ---------------------------------------------------------------------------
// Littlewood-Richardson products
// ---------------------------------------------------------------------------

type LrTable = BTreeMap<Vec<i64>, u64>;
type LrCache = HashMap<(Vec<i64>, Vec<i64>), LrTable>;

fn lr_cache() -> &'static Mutex<LrCache> {
    static CACHE: OnceLock<Mutex<LrCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Adds a horizontal strip of `boxes` boxes to `shape`, subject to the
/// lattice-word bound against the previous strip's cumulative row counts.
/// `prev_cum[r]` is the number of boxes of the previous strip in rows `..=r`
/// (0-based); `None` means the first strip (unconstrained).
fn add_strip(
    shape: &[i64],
    boxes: i64,
    prev_cum: Option<&[i64]>,
    out: &mut BTreeMap<(Vec<i64>, Vec<i64>), u64>,
    mult: u64,
) {
    let rows = shape.len() + 1;
    // Boxes of the new strip allowed in rows ..=r:
    // with no predecessor this is everything; otherwise prev_cum[r-1].
    let allowed = |r: usize| -> i64 {
        match prev_cum {
            None => boxes,
            Some(cum) => {
                if r == 0 {
                    0
                } else {
                    let idx = (r - 1).min(cum.len().saturating_sub(1));
                    if cum.is_empty() {
                        0
                    } else {
                        cum[idx]
                    }
                }
            }
        }
    };
    // Depth-first over per-row placements.
    struct Builder<'a> {
        shape: &'a [i64],
        rows: usize,
        allowed: &'a dyn Fn(usize) -> i64,
        out: &'a mut BTreeMap<(Vec<i64>, Vec<i64>), u64>,
        mult: u64,
        new_shape: Vec<i64>,
        new_cum: Vec<i64>,
    }
    impl Builder<'_> {
        fn place(&mut self, r: usize, remaining: i64, cum_so_far: i64) {
            if r == self.rows {
                if remaining == 0 {
                    let mut ns = self.new_shape.clone();
                    while ns.last() == Some(&0) {
                        ns.pop();
                    }
                    *self.out.entry((ns, self.new_cum.clone())).or_insert(0) += self.mult;
                }
                return;
            }
            let cur = if r < self.shape.len() { self.shape[r] } else { 0 };
            let cap_interlace = if r == 0 { i64::MAX } else { self.shape[r - 1] - cur };
            let cap_lattice = (self.allowed)(r) - cum_so_far;
            let max_here = remaining.min(cap_interlace).min(cap_lattice).max(0);
            for s in 0..=max_here {
                self.new_shape.push(cur + s);
                self.new_cum.push(cum_so_far + s);
                self.place(r + 1, remaining - s, cum_so_far + s);
                self.new_shape.pop();
                self.new_cum.pop();
            }
        }
    }
    let mut builder = Builder {
        shape,
        rows,
        allowed: &allowed,
        out,
        mult,
        new_shape: Vec::with_capacity(rows),
        new_cum: Vec::with_capacity(rows),
    };
    builder.place(0, boxes, 0);
}

/// Full Schur expansion of `S^lam · S^mu` for partitions (no rank bound),
/// by Littlewood-Richardson skew-tableau enumeration.
fn lr_expand(lam: &[i64], mu: &[i64]) -> LrTable {
    let key = (lam.to_vec(), mu.to_vec());
    if let Some(hit) = lr_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    // States are (shape, cumulative row counts of the latest strip).
    let mut states: BTreeMap<(Vec<i64>, Vec<i64>), u64> = BTreeMap::new();
    states.insert((lam.to_vec(), Vec::new()), 1);
    for (i, &q) in mu.iter().enumerate() {
        let mut next = BTreeMap::new();
        for ((shape, cum), mult) in &states {
            let prev = if i == 0 { None } else { Some(cum.as_slice()) };
            add_strip(shape, q, prev, &mut next, *mult);
        }
        states = next;
    }
    let mut table = LrTable::new();
    for ((shape, _), mult) in states {
        *table.entry(shape).or_insert(0) += mult;
    }
    lr_cache().lock().unwrap().insert(key, table.clone());
    table
}

/// Decomposes `S^lam ⊗ S^mu` for `GL(rank)`.
///
/// Weights with negative entries are shifted into partitions, multiplied,
/// and shifted back; output weights with more than `rank` rows are
/// discarded.
pub fn lr_product(lam: &BlockWeight, mu: &BlockWeight, rank: usize) -> Result<SchurSum> {
    if rank == 0 {
        return Err(Error::InvalidArgument("lr_product needs rank >= 1".into()));
    }
    let lam_p = lam.padded(rank)?;
    let mu_p = mu.padded(rank)?;
    let shift_l = (-lam_p[rank - 1]).max(0);
    let shift_m = (-mu_p[rank - 1]).max(0);
    let mut lam_pos: Vec<i64> = lam_p.iter().map(|&e| e + shift_l).collect();
    let mut mu_pos: Vec<i64> = mu_p.iter().map(|&e| e + shift_m).collect();
    while lam_pos.last() == Some(&0) {
        lam_pos.pop();
    }
    while mu_pos.last() == Some(&0) {
        mu_pos.pop();
    }
    let table = lr_expand(&lam_pos, &mu_pos);
    let shift_back = shift_l + shift_m;
    let mut sum = SchurSum::new();
    for (shape, mult) in table {
        if shape.len() > rank {
            continue;
        }
        let mut padded = shape;
        padded.resize(rank, 0);
        let entries: Vec<i64> = padded.into_iter().map(|e| e - shift_back).collect();
        sum.add(BlockWeight(entries).trimmed(), mult);
    }
    Ok(sum)
}

// ---------------------------------------------------------------------------
// Plethysms
// ---------------------------------------------------------------------------

/// `Sym^t(Λ²V)` for `dim V = rank`: the multiplicity-free sum of `S^λ V`
/// over partitions `λ ⊢ 2t` whose conjugate has all parts even (columns
/// pair up), restricted to length ≤ rank.
pub fn plethysm_sym_wedge2(t: i64, rank: usize) -> Result<SchurSum> {
    if t < 0 {
        return Err(Error::InvalidArgument("plethysm degree must be >= 0".into()));
    }
    let mut sum = SchurSum::new();
    for p in Partition::enumerate(2 * t, rank) {
        // All columns even <=> rows pair up: λ_1 = λ_2, λ_3 = λ_4, ...
        let parts = p.parts();
        if parts.len() % 2 == 0 && parts.chunks(2).all(|c| c[0] == c[1]) {
            sum.add(p.into(), 1);
        }
    }
    Ok(sum)
}

/// `Sym^t(Sym²V)`: the sum of `S^λ V` over partitions `λ ⊢ 2t` with all
/// parts even, length ≤ rank.
pub fn plethysm_sym_sym2(t: i64, rank: usize) -> Result<SchurSum> {
    if t < 0 {
        return Err(Error::InvalidArgument("plethysm degree must be >= 0".into()));
    }
    if rank == 0 && t > 0 {
        return Ok(SchurSum::new());
    }
    let mut sum = SchurSum::new();
    for p in Partition::enumerate(2 * t, rank) {
        if p.parts().iter().all(|&x| x % 2 == 0) {
            sum.add(p.into(), 1);
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(entries: &[i64]) -> BlockWeight {
        BlockWeight::new(entries.to_vec()).unwrap()
    }

    fn sum_of(pairs: &[(&[i64], u64)]) -> SchurSum {
        let mut s = SchurSum::new();
        for (entries, m) in pairs {
            s.add(w(entries), *m);
        }
        s
    }

    #[test]
    fn pieri_smallest_case() {
        let got = lr_product(&w(&[1]), &w(&[1]), 3).unwrap();
        assert_eq!(got, sum_of(&[(&[2], 1), (&[1, 1], 1)]));
    }

    #[test]
    fn lr_21_times_1() {
        let got = lr_product(&w(&[2, 1]), &w(&[1]), 4).unwrap();
        assert_eq!(
            got,
            sum_of(&[(&[3, 1], 1), (&[2, 2], 1), (&[2, 1, 1], 1)])
        );
    }

    #[test]
    fn lr_21_squared() {
        let got = lr_product(&w(&[2, 1]), &w(&[2, 1]), 6).unwrap();
        assert_eq!(
            got,
            sum_of(&[
                (&[4, 2], 1),
                (&[4, 1, 1], 1),
                (&[3, 3], 1),
                (&[3, 2, 1], 2),
                (&[3, 1, 1, 1], 1),
                (&[2, 2, 2], 1),
                (&[2, 2, 1, 1], 1),
            ])
        );
    }

    #[test]
    fn lr_rank_truncation() {
        // At rank 2 the length-3 and length-4 shapes of the previous case drop.
        let got = lr_product(&w(&[2, 1]), &w(&[2, 1]), 2).unwrap();
        assert_eq!(got, sum_of(&[(&[4, 2], 1), (&[3, 3], 1)]));
    }

    #[test]
    fn lr_negative_entries_det_shift() {
        // S^(1,-1) ⊗ det = S^(2,0) for GL(2), so the product with (1) matches
        // the shifted product.
        let got = lr_product(&w(&[1, -1]), &w(&[1]), 2).unwrap();
        assert_eq!(got, sum_of(&[(&[2, -1], 1), (&[1], 1)]));
    }

    #[test]
    fn lr_rejects_rank_zero() {
        assert!(lr_product(&w(&[1]), &w(&[1]), 0).is_err());
    }

    #[test]
    fn schur_dim_examples() {
        assert_eq!(schur_dim(&w(&[0]), 5).unwrap(), BigUint::from(1u32));
        assert_eq!(schur_dim(&w(&[2, 1]), 3).unwrap(), BigUint::from(8u32));
        assert_eq!(schur_dim(&w(&[2]), 4).unwrap(), BigUint::from(10u32));
        assert_eq!(schur_dim(&w(&[-1, -2]), 2).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn dimension_is_multiplicative_over_lr() {
        let lam = w(&[3, 1]);
        let mu = w(&[2, 2]);
        for rank in 2..=5 {
            let prod = lr_product(&lam, &mu, rank).unwrap();
            let lhs = prod.dimension(rank).unwrap();
            let rhs = schur_dim(&lam, rank).unwrap() * schur_dim(&mu, rank).unwrap();
            assert_eq!(lhs, rhs, "rank {rank}");
        }
    }

    #[test]
    fn plethysm_wedge2_examples() {
        assert_eq!(plethysm_sym_wedge2(0, 7).unwrap(), sum_of(&[(&[], 1)]));
        assert_eq!(plethysm_sym_wedge2(1, 4).unwrap(), sum_of(&[(&[1, 1], 1)]));
        assert_eq!(
            plethysm_sym_wedge2(2, 4).unwrap(),
            sum_of(&[(&[2, 2], 1), (&[1, 1, 1, 1], 1)])
        );
        // Rank 1 kills Λ².
        assert!(plethysm_sym_wedge2(3, 1).unwrap().is_empty());
    }

    #[test]
    fn plethysm_sym2_examples() {
        assert_eq!(plethysm_sym_sym2(1, 3).unwrap(), sum_of(&[(&[2], 1)]));
        assert_eq!(
            plethysm_sym_sym2(2, 3).unwrap(),
            sum_of(&[(&[4], 1), (&[2, 2], 1)])
        );
        assert_eq!(plethysm_sym_sym2(2, 1).unwrap(), sum_of(&[(&[4], 1)]));
    }

    #[test]
    fn plethysm_dimension_identities() {
        // dim Sym^t(Λ²) = C(C(r,2)+t−1, t); dim Sym^t(Sym²) = C(C(r+1,2)+t−1, t).
        for r in 1..=5u64 {
            for t in 0..=4i64 {
                let wedge = plethysm_sym_wedge2(t, r as usize).unwrap();
                let d = r * (r - 1) / 2;
                assert_eq!(
                    wedge.dimension(r as usize).unwrap(),
                    binomial(d + t as u64 - if t > 0 { 1 } else { 0 }, t as u64),
                    "wedge2 r={r} t={t}"
                );
                let sym = plethysm_sym_sym2(t, r as usize).unwrap();
                let d2 = r * (r + 1) / 2;
                assert_eq!(
                    sym.dimension(r as usize).unwrap(),
                    binomial(d2 + t as u64 - if t > 0 { 1 } else { 0 }, t as u64),
                    "sym2 r={r} t={t}"
                );
            }
        }
    }

    #[test]
    fn regularize_examples() {
        let exact = |e: &[i64]| BlockWeight::new_exact(e.to_vec()).unwrap();
        assert_eq!(
            dotted_weyl_regularize(&[3, 1, 0]),
            Regularized::Dominant { degree_shift: 0, weight: exact(&[3, 1, 0]) }
        );
        assert_eq!(
            dotted_weyl_regularize(&[0, 0, 0]),
            Regularized::Dominant { degree_shift: 0, weight: exact(&[0, 0, 0]) }
        );
        assert_eq!(
            dotted_weyl_regularize(&[-3, 0]),
            Regularized::Dominant { degree_shift: 1, weight: w(&[-1, -2]) }
        );
        // v = w + ρ = (1, 1) has a repeat.
        assert_eq!(dotted_weyl_regularize(&[0, 1]), Regularized::Singular);
    }

    #[test]
    fn padding_mixed_signs() {
        assert_eq!(w(&[1, -1]).padded(3).unwrap(), vec![1, 0, -1]);
        assert_eq!(w(&[2, 1]).padded(4).unwrap(), vec![2, 1, 0, 0]);
        assert!(w(&[2, 1, 1]).padded(2).is_err());
    }

    #[test]
    fn memoized_products_agree_across_threads() {
        let lam = w(&[3, 1]);
        let mu = w(&[2, 2, 1]);
        let expected = lr_product(&lam, &mu, 4).unwrap();
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..8)
                .map(|_| {
                    let (lam, mu) = (lam.clone(), mu.clone());
                    s.spawn(move || lr_product(&lam, &mu, 4).unwrap())
                })
                .collect();
            for h in handles {
                assert_eq!(h.join().unwrap(), expected);
            }
        });
    }
}
