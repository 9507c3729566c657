//! Products of partial flag varieties of `GL(n)`, their Picard lattices and
//! canonical classes, and the expression language for equivariant bundles.
//!
//! A flag variety `Fl(d_1 < … < d_s; n)` carries the tautological flag
//! `0 ⊂ U_{d_1} ⊂ … ⊂ U_{d_s} ⊂ k^n`; its subquotient blocks
//! `B_1 = U_{d_1}, B_2 = U_{d_2}/U_{d_1}, …, B_{s+1} = k^n/U_{d_s}` generate
//! every equivariant bundle through Schur functors. Picard generator `j` is
//! `det(U_{d_j})^∨`, so `O(1)` is the Plücker class on a Grassmannian and
//! the hyperplane class on projective space; the normal form of a bundle is
//! a multiplicity list of per-block dominant weights.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::partitions::{lr_product, plethysm_sym_sym2, plethysm_sym_wedge2, schur_dim, BlockWeight, SchurSum};
use crate::{Error, Result};

/// A partial flag variety `Fl(d_1 < … < d_s; n)`.
///
/// `steps` may be empty only for the internal point model produced by
/// pushforwards; user-facing constructors require at least one step.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlagVariety {
    n: usize,
    steps: Vec<usize>,
}

impl FlagVariety {
    pub fn new(steps: Vec<usize>, n: usize) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidArgument("a flag variety needs at least one step".into()));
        }
        if steps[0] == 0 || *steps.last().unwrap() >= n || steps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "steps must satisfy 0 < d_1 < … < d_s < n, got {steps:?} with n = {n}"
            )));
        }
        Ok(FlagVariety { n, steps })
    }

    /// `P^d` as `Fl(1; d+1)`.
    pub fn projective_space(d: usize) -> Self {
        FlagVariety { n: d + 1, steps: vec![1] }
    }

    pub fn grassmannian(k: usize, n: usize) -> Result<Self> {
        FlagVariety::new(vec![k], n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    pub fn block_count(&self) -> usize {
        self.steps.len() + 1
    }

    /// Sizes of the subquotient blocks, including the final quotient.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = Vec::with_capacity(self.steps.len() + 1);
        let mut prev = 0;
        for &d in &self.steps {
            sizes.push(d - prev);
            prev = d;
        }
        sizes.push(self.n - prev);
        sizes
    }

    pub fn dimension(&self) -> usize {
        let sizes = self.block_sizes();
        let mut dim = 0;
        for i in 0..sizes.len() {
            for j in (i + 1)..sizes.len() {
                dim += sizes[i] * sizes[j];
            }
        }
        dim
    }

    pub fn picard_rank(&self) -> usize {
        self.steps.len()
    }

    /// Forgets step `drop` (0-based index into `steps`), merging the two
    /// adjacent blocks.
    pub(crate) fn forget_step(&self, drop: usize) -> Result<FlagVariety> {
        if drop >= self.steps.len() {
            return Err(Error::InvalidArgument(format!(
                "step index {drop} out of range for {self}"
            )));
        }
        let mut steps = self.steps.clone();
        steps.remove(drop);
        Ok(FlagVariety { n: self.n, steps })
    }

    /// Rank of topological K-theory: the multinomial `n! / ∏ b_i!`.
    pub fn k0_rank(&self) -> BigUint {
        let mut num = BigUint::one();
        for i in 1..=self.n {
            num *= BigUint::from(i);
        }
        let mut den = BigUint::one();
        for b in self.block_sizes() {
            for i in 1..=b {
                den *= BigUint::from(i);
            }
        }
        num / den
    }
}

impl fmt::Display for FlagVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.steps.as_slice() {
            [] => write!(f, "pt"),
            [1] => write!(f, "P{}", self.n - 1),
            [k] => write!(f, "Gr({},{})", k, self.n),
            steps => {
                write!(f, "Fl(")?;
                for (i, d) in steps.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{d}")?;
                }
                write!(f, ";{})", self.n)
            }
        }
    }
}

/// A finite product of flag varieties.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductVariety {
    factors: Vec<FlagVariety>,
}

impl ProductVariety {
    pub fn new(factors: Vec<FlagVariety>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("a product variety needs at least one factor".into()));
        }
        Ok(ProductVariety { factors })
    }

    pub fn single(factor: FlagVariety) -> Self {
        ProductVariety { factors: vec![factor] }
    }

    pub fn factors(&self) -> &[FlagVariety] {
        &self.factors
    }

    pub fn dimension(&self) -> usize {
        self.factors.iter().map(|f| f.dimension()).sum()
    }

    pub fn picard_rank(&self) -> usize {
        self.factors.iter().map(|f| f.picard_rank()).sum()
    }

    /// Offset of factor `f`'s generators inside a Picard coefficient vector.
    fn picard_offset(&self, f: usize) -> usize {
        self.factors[..f].iter().map(|x| x.picard_rank()).sum()
    }

    pub fn k0_rank(&self) -> BigUint {
        let mut r = BigUint::one();
        for f in &self.factors {
            r *= f.k0_rank();
        }
        r
    }
}

impl fmt::Display for ProductVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// An integer class in the Picard lattice, in the basis of the
/// `det(U_{d_j})^∨` generators of all factors in order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineBundleClass(Vec<i64>);

impl LineBundleClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        LineBundleClass(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, t: i64) -> LineBundleClass {
        LineBundleClass(self.0.iter().map(|&c| c * t).collect())
    }

    pub fn plus(&self, other: &LineBundleClass) -> LineBundleClass {
        LineBundleClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Per-factor, per-block constant weights of `O(coeffs)`: block `k`
    /// (0-based) of factor `f` receives `−Σ_{j ≥ k+1} a_{f,j}` on each entry.
    pub fn block_constants(&self, variety: &ProductVariety) -> Result<Vec<Vec<i64>>> {
        if self.0.len() != variety.picard_rank() {
            return Err(Error::InvalidArgument(format!(
                "twist arity mismatch: {} coefficients for Picard rank {}",
                self.0.len(),
                variety.picard_rank()
            )));
        }
        let mut out = Vec::with_capacity(variety.factors().len());
        for (f, fac) in variety.factors().iter().enumerate() {
            let off = variety.picard_offset(f);
            let s = fac.picard_rank();
            let coeffs = &self.0[off..off + s];
            let mut consts = Vec::with_capacity(s + 1);
            for k in 0..=s {
                let tail: i64 = coeffs[k..].iter().sum();
                consts.push(-tail);
            }
            out.push(consts);
        }
        Ok(out)
    }
}

impl fmt::Display for LineBundleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A reference to a tautological block, possibly dualized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockRef {
    /// 0-based factor index.
    pub factor: usize,
    /// 0-based block index within the factor (the last index is the final
    /// quotient block).
    pub block: usize,
    pub dual: bool,
}

/// Parsed abstract syntax of an equivariant bundle expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BundleExpr {
    /// `O(a_1, …, a_ρ)`, one integer per Picard generator.
    Line(Vec<i64>),
    /// A tautological subquotient block or its dual.
    Block(BlockRef),
    Dual(Box<BundleExpr>),
    Tensor(Box<BundleExpr>, Box<BundleExpr>),
    Sum(Box<BundleExpr>, Box<BundleExpr>),
    /// `S^w` of a block, `w` a dominant weight.
    Schur(BlockWeight, BlockRef),
    /// `Sym^t(Λ² block)`.
    SymWedge2(i64, BlockRef),
    /// `Sym^t(Sym² block)`.
    SymSym2(i64, BlockRef),
}

impl BundleExpr {
    pub fn tensor(a: BundleExpr, b: BundleExpr) -> BundleExpr {
        BundleExpr::Tensor(Box::new(a), Box::new(b))
    }

    pub fn sum(a: BundleExpr, b: BundleExpr) -> BundleExpr {
        BundleExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn dual(a: BundleExpr) -> BundleExpr {
        BundleExpr::Dual(Box::new(a))
    }

    /// Direct sum of a non-empty list.
    pub fn sum_of(mut items: Vec<BundleExpr>) -> Result<BundleExpr> {
        if items.is_empty() {
            return Err(Error::InvalidArgument("empty direct sum".into()));
        }
        let mut acc = items.remove(0);
        for item in items {
            acc = BundleExpr::sum(acc, item);
        }
        Ok(acc)
    }
}

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleExpr::Line(c) => {
                write!(f, "O(")?;
                for (i, a) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            BundleExpr::Block(r) => write!(f, "{}", display_block(r)),
            BundleExpr::Dual(e) => write!(f, "dual({e})"),
            BundleExpr::Tensor(a, b) => write!(f, "{a} * {b}"),
            BundleExpr::Sum(a, b) => write!(f, "{a} + {b}"),
            BundleExpr::Schur(w, r) => {
                write!(f, "S[")?;
                for (i, e) in w.entries().iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, "]({})", display_block(r))
            }
            BundleExpr::SymWedge2(t, r) => write!(f, "symwedge2[{t}]({})", display_block(r)),
            BundleExpr::SymSym2(t, r) => write!(f, "symsym2[{t}]({})", display_block(r)),
        }
    }
}

fn display_block(r: &BlockRef) -> String {
    let star = if r.dual { "*" } else { "" };
    if r.factor == 0 {
        format!("U{}{}", r.block + 1, star)
    } else {
        format!("U{}@{}{}", r.block + 1, r.factor + 1, star)
    }
}

/// An irreducible equivariant bundle: one dominant weight per tautological
/// block per factor, each of length equal to its block size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrreducibleBundle {
    factors: Vec<Vec<BlockWeight>>,
}

impl IrreducibleBundle {
    pub fn new(variety: &ProductVariety, factors: Vec<Vec<BlockWeight>>) -> Result<Self> {
        if factors.len() != variety.factors().len() {
            return Err(Error::InvalidArgument("factor count mismatch".into()));
        }
        for (f, fac) in variety.factors().iter().enumerate() {
            let sizes = fac.block_sizes();
            if factors[f].len() != sizes.len() {
                return Err(Error::InvalidArgument(format!(
                    "factor {f} expects {} block weights",
                    sizes.len()
                )));
            }
            for (b, w) in factors[f].iter().enumerate() {
                if w.len() != sizes[b] {
                    return Err(Error::InvalidArgument(format!(
                        "block {b} of factor {f} expects a weight of length {}",
                        sizes[b]
                    )));
                }
            }
        }
        Ok(IrreducibleBundle { factors })
    }

    /// The structure sheaf.
    pub fn trivial(variety: &ProductVariety) -> Self {
        let factors = variety
            .factors()
            .iter()
            .map(|f| f.block_sizes().iter().map(|&b| BlockWeight::zero(b)).collect())
            .collect();
        IrreducibleBundle { factors }
    }

    pub fn block_weights(&self) -> &[Vec<BlockWeight>] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.iter().all(|f| f.iter().all(|w| w.is_zero()))
    }

    pub fn dual(&self) -> Self {
        IrreducibleBundle {
            factors: self
                .factors
                .iter()
                .map(|f| f.iter().map(|w| w.dual()).collect())
                .collect(),
        }
    }

    /// Twists by `O(class)`: adds the per-block constants of the class.
    pub fn twisted(&self, class: &LineBundleClass, variety: &ProductVariety) -> Result<Self> {
        let consts = class.block_constants(variety)?;
        let mut factors = Vec::with_capacity(self.factors.len());
        for (f, blocks) in self.factors.iter().enumerate() {
            let mut out = Vec::with_capacity(blocks.len());
            for (b, w) in blocks.iter().enumerate() {
                let entries: Vec<i64> = w.entries().iter().map(|&e| e + consts[f][b]).collect();
                out.push(BlockWeight::new_exact(entries)?);
            }
            factors.push(out);
        }
        Ok(IrreducibleBundle { factors })
    }

    pub fn rank(&self, variety: &ProductVariety) -> Result<BigUint> {
        let mut r = BigUint::one();
        for (f, fac) in variety.factors().iter().enumerate() {
            for (b, size) in fac.block_sizes().iter().enumerate() {
                r *= schur_dim(&self.factors[f][b], *size)?;
            }
        }
        Ok(r)
    }
}

impl fmt::Display for IrreducibleBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, blocks) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (b, w) in blocks.iter().enumerate() {
                if b > 0 {
                    write!(f, ";")?;
                }
                write!(f, "{w}")?;
            }
        }
        Ok(())
    }
}

/// Multiplicity decomposition of a bundle expression.
pub type BundleSum = BTreeMap<IrreducibleBundle, u64>;

fn add_term(sum: &mut BundleSum, b: IrreducibleBundle, mult: u64) {
    if mult > 0 {
        *sum.entry(b).or_insert(0) += mult;
    }
}

/// Decomposes `e` into irreducible summands with multiplicities.
pub fn normalize(e: &BundleExpr, variety: &ProductVariety) -> Result<BundleSum> {
    match e {
        BundleExpr::Line(coeffs) => {
            let class = LineBundleClass::new(coeffs.clone());
            let trivial = IrreducibleBundle::trivial(variety);
            let mut sum = BundleSum::new();
            add_term(&mut sum, trivial.twisted(&class, variety)?, 1);
            Ok(sum)
        }
        BundleExpr::Block(r) => {
            let size = block_size(variety, r)?;
            let mut v = vec![0i64; size];
            v[0] = 1;
            let w = BlockWeight::new_exact(v)?;
            single_block_sum(variety, r, SchurSum::singleton(w.trimmed(), 1))
        }
        BundleExpr::Schur(w, r) => {
            let size = block_size(variety, r)?;
            if w.len() > size {
                // Schur functor longer than the block rank is zero.
                return Ok(BundleSum::new());
            }
            single_block_sum(variety, r, SchurSum::singleton(w.clone(), 1))
        }
        BundleExpr::SymWedge2(t, r) => {
            let size = block_size(variety, r)?;
            single_block_sum(variety, r, plethysm_sym_wedge2(*t, size)?)
        }
        BundleExpr::SymSym2(t, r) => {
            let size = block_size(variety, r)?;
            single_block_sum(variety, r, plethysm_sym_sym2(*t, size)?)
        }
        BundleExpr::Dual(inner) => {
            let sum = normalize(inner, variety)?;
            let mut out = BundleSum::new();
            for (b, m) in sum {
                add_term(&mut out, b.dual(), m);
            }
            Ok(out)
        }
        BundleExpr::Sum(a, b) => {
            let mut out = normalize(a, variety)?;
            for (bundle, m) in normalize(b, variety)? {
                add_term(&mut out, bundle, m);
            }
            Ok(out)
        }
        BundleExpr::Tensor(a, b) => {
            let left = normalize(a, variety)?;
            let right = normalize(b, variety)?;
            let mut out = BundleSum::new();
            for (lb, lm) in &left {
                for (rb, rm) in &right {
                    for (bundle, m) in tensor_irreducibles(variety, lb, rb)? {
                        add_term(&mut out, bundle, m * lm * rm);
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Tensor product of two irreducible bundles: Littlewood-Richardson within
/// each block, independent across blocks and factors.
fn tensor_irreducibles(
    variety: &ProductVariety,
    a: &IrreducibleBundle,
    b: &IrreducibleBundle,
) -> Result<BundleSum> {
    let mut partial: Vec<(Vec<Vec<BlockWeight>>, u64)> = vec![(Vec::new(), 1)];
    for (f, fac) in variety.factors().iter().enumerate() {
        for p in &mut partial {
            p.0.push(Vec::new());
        }
        for (blk, &size) in fac.block_sizes().iter().enumerate() {
            let product = lr_product(&a.block_weights()[f][blk], &b.block_weights()[f][blk], size)?;
            let mut next = Vec::with_capacity(partial.len() * product.len());
            for (prefix, m) in &partial {
                for (w, wm) in product.iter() {
                    let mut ext = prefix.clone();
                    let padded = BlockWeight::new_exact(w.padded(size)?)?;
                    ext[f].push(padded);
                    next.push((ext, m * wm));
                }
            }
            partial = next;
        }
    }
    let mut out = BundleSum::new();
    for (factors, m) in partial {
        add_term(&mut out, IrreducibleBundle { factors }, m);
    }
    Ok(out)
}

fn block_size(variety: &ProductVariety, r: &BlockRef) -> Result<usize> {
    let fac = variety
        .factors()
        .get(r.factor)
        .ok_or_else(|| Error::InvalidArgument(format!("factor {} out of range", r.factor + 1)))?;
    let sizes = fac.block_sizes();
    sizes
        .get(r.block)
        .copied()
        .ok_or_else(|| Error::InvalidArgument(format!("block {} out of range for {fac}", r.block + 1)))
}

/// Places a one-block Schur sum at `r`, dualizing if the reference is dual.
fn single_block_sum(variety: &ProductVariety, r: &BlockRef, sum: SchurSum) -> Result<BundleSum> {
    let size = block_size(variety, r)?;
    let mut out = BundleSum::new();
    for (w, m) in sum.iter() {
        if w.len() > size {
            continue;
        }
        let mut placed = BlockWeight::new_exact(w.padded(size)?)?;
        if r.dual {
            placed = placed.dual();
        }
        let mut factors: Vec<Vec<BlockWeight>> = variety
            .factors()
            .iter()
            .map(|f| f.block_sizes().iter().map(|&b| BlockWeight::zero(b)).collect())
            .collect();
        factors[r.factor][r.block] = placed;
        add_term(&mut out, IrreducibleBundle { factors }, m);
    }
    Ok(out)
}

/// Total rank of a bundle expression.
pub fn rank(e: &BundleExpr, variety: &ProductVariety) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for (b, m) in normalize(e, variety)? {
        total += b.rank(variety)? * BigUint::from(m);
    }
    Ok(total)
}

/// The canonical bundle, as per-block constant weights together with its
/// Picard-lattice coordinates.
///
/// Block `k` of each factor receives the constant `Σ_{i>k} b_i − Σ_{i<k} b_i`
/// (from `K = det(⊕_{i<j} Hom(B_i, B_j))^∨`); the coordinates are the unique
/// solution of `O(a) = K` up to the trivial determinant of the ambient space.
pub fn canonical_bundle(variety: &ProductVariety) -> (IrreducibleBundle, LineBundleClass) {
    let mut factors = Vec::new();
    let mut coeffs = Vec::new();
    for fac in variety.factors() {
        let sizes = fac.block_sizes();
        let m = sizes.len();
        let mut consts = Vec::with_capacity(m);
        for k in 0..m {
            let after: i64 = sizes[k + 1..].iter().map(|&b| b as i64).sum();
            let before: i64 = sizes[..k].iter().map(|&b| b as i64).sum();
            consts.push(after - before);
        }
        // Coordinates: with h_k = c_k − c_last, generator j gets h_j − h_{j−1}.
        let last = consts[m - 1];
        let h: Vec<i64> = consts.iter().map(|&c| c - last).collect();
        for j in 1..m {
            coeffs.push(h[j] - h[j - 1]);
        }
        factors.push(
            sizes
                .iter()
                .zip(&consts)
                .map(|(&b, &c)| BlockWeight::new_exact(vec![c; b]).unwrap())
                .collect(),
        );
    }
    (IrreducibleBundle { factors }, LineBundleClass::new(coeffs))
}

/// Rank of topological K-theory of the product.
pub fn k0_rank(variety: &ProductVariety) -> BigUint {
    variety.k0_rank()
}

/// The `O(c)` expression; round-trips with [`normalize`].
pub fn line_bundle_to_expr(c: &LineBundleClass, variety: &ProductVariety) -> Result<BundleExpr> {
    if c.len() != variety.picard_rank() {
        return Err(Error::InvalidArgument(format!(
            "twist arity mismatch: {} coefficients for Picard rank {}",
            c.len(),
            variety.picard_rank()
        )));
    }
    Ok(BundleExpr::Line(c.coeffs().to_vec()))
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text: text.as_bytes(), pos: 0 }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next byte without skipping whitespace (for the adjacency rule of the
    /// trailing dual star).
    fn peek_raw(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.text.get(self.pos).copied();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        self.skip_ws();
        if self.peek_raw() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", b as char)))
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.peek_raw() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek_raw() == Some(b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.peek_raw().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("integer out of range"))
    }

    fn unsigned(&mut self) -> Result<usize> {
        let v = self.integer()?;
        usize::try_from(v).map_err(|_| self.error("expected a non-negative integer"))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.peek_raw().is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.text[start..self.pos]).into_owned()
    }

    /// Identifier made of letters only, stopping at `x` (the product joiner
    /// in variety descriptors).
    fn ident_alpha(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.peek_raw().is_some_and(|b| b.is_ascii_alphabetic() && b != b'x') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.text[start..self.pos]).into_owned()
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        let mut out = vec![self.integer()?];
        while self.eat(b',') {
            out.push(self.integer()?);
        }
        Ok(out)
    }
}

/// Parses a bundle expression against `variety`.
///
/// Grammar (ASCII): `+` direct sum, `*` tensor, `O(a,…)` line bundles,
/// `U<i>`/`Q<i>` tautological blocks with optional `@<factor>` and a
/// trailing `*` (immediately adjacent) for the dual, `S[w](block)` Schur
/// functors, `wedge[k]`, `symwedge2[t]`, `symsym2[t]`, `dual(expr)` and
/// parentheses.
pub fn parse_bundle(text: &str, variety: &ProductVariety) -> Result<BundleExpr> {
    let mut cur = Cursor::new(text);
    let expr = parse_expr(&mut cur, variety)?;
    cur.skip_ws();
    if cur.pos != cur.text.len() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(expr)
}

fn parse_expr(cur: &mut Cursor, variety: &ProductVariety) -> Result<BundleExpr> {
    let mut acc = parse_term(cur, variety)?;
    while cur.eat(b'+') {
        let rhs = parse_term(cur, variety)?;
        acc = BundleExpr::sum(acc, rhs);
    }
    Ok(acc)
}

fn parse_term(cur: &mut Cursor, variety: &ProductVariety) -> Result<BundleExpr> {
    let mut acc = parse_factor(cur, variety)?;
    while cur.eat(b'*') {
        let rhs = parse_factor(cur, variety)?;
        acc = BundleExpr::tensor(acc, rhs);
    }
    Ok(acc)
}

fn parse_factor(cur: &mut Cursor, variety: &ProductVariety) -> Result<BundleExpr> {
    cur.skip_ws();
    if cur.eat(b'(') {
        let inner = parse_expr(cur, variety)?;
        cur.expect(b')')?;
        return Ok(inner);
    }
    let at = cur.pos;
    let word = cur.ident();
    match word.as_str() {
        "O" => {
            cur.expect(b'(')?;
            let coeffs = cur.int_list()?;
            cur.expect(b')')?;
            if coeffs.len() != variety.picard_rank() {
                cur.pos = at;
                return Err(cur.error(format!(
                    "twist arity mismatch: O(..) needs {} coefficients on {variety}",
                    variety.picard_rank()
                )));
            }
            Ok(BundleExpr::Line(coeffs))
        }
        "S" => {
            cur.expect(b'[')?;
            let entries = cur.int_list()?;
            cur.expect(b']')?;
            let w = BlockWeight::new(entries).map_err(|e| cur.error(e.to_string()))?;
            let r = parenthesized_blockref(cur, variety)?;
            Ok(BundleExpr::Schur(w, r))
        }
        "wedge" => {
            cur.expect(b'[')?;
            let k = cur.unsigned()?;
            cur.expect(b']')?;
            let r = parenthesized_blockref(cur, variety)?;
            let w = BlockWeight::new(vec![1; k]).unwrap();
            Ok(BundleExpr::Schur(w, r))
        }
        "symwedge2" => {
            cur.expect(b'[')?;
            let t = cur.integer()?;
            cur.expect(b']')?;
            let r = parenthesized_blockref(cur, variety)?;
            Ok(BundleExpr::SymWedge2(t, r))
        }
        "symsym2" => {
            cur.expect(b'[')?;
            let t = cur.integer()?;
            cur.expect(b']')?;
            let r = parenthesized_blockref(cur, variety)?;
            Ok(BundleExpr::SymSym2(t, r))
        }
        "dual" => {
            cur.expect(b'(')?;
            let inner = parse_expr(cur, variety)?;
            cur.expect(b')')?;
            Ok(BundleExpr::dual(inner))
        }
        w if w.starts_with('U') || w.starts_with('Q') => {
            cur.pos = at;
            let r = parse_blockref(cur, variety)?;
            Ok(BundleExpr::Block(r))
        }
        _ => {
            cur.pos = at;
            Err(cur.error("expected a bundle factor"))
        }
    }
}

fn parenthesized_blockref(cur: &mut Cursor, variety: &ProductVariety) -> Result<BlockRef> {
    cur.expect(b'(')?;
    let r = parse_blockref(cur, variety)?;
    cur.expect(b')')?;
    Ok(r)
}

/// `("U" | "Q") int ["@" int] ["*"]`; the dual star must be immediately
/// adjacent (otherwise `*` is the tensor operator).
fn parse_blockref(cur: &mut Cursor, variety: &ProductVariety) -> Result<BlockRef> {
    cur.skip_ws();
    let at = cur.pos;
    let kind = match cur.bump() {
        Some(b'U') => b'U',
        Some(b'Q') => b'Q',
        _ => {
            cur.pos = at;
            return Err(cur.error("expected a block name U<i> or Q<i>"));
        }
    };
    let idx = cur.unsigned()?;
    let factor = if cur.peek_raw() == Some(b'@') {
        cur.pos += 1;
        let f = cur.unsigned()?;
        if f == 0 {
            return Err(cur.error("factor indices are 1-based"));
        }
        f - 1
    } else {
        0
    };
    let dual = if cur.peek_raw() == Some(b'*') {
        cur.pos += 1;
        true
    } else {
        false
    };
    let fac = variety
        .factors()
        .get(factor)
        .ok_or_else(|| Error::Parse { pos: at, msg: format!("unknown factor {} on {variety}", factor + 1) })?;
    let blocks = fac.block_count();
    let block = match kind {
        b'U' => {
            if idx == 0 || idx > blocks {
                return Err(Error::Parse {
                    pos: at,
                    msg: format!("unknown block U{idx} on {fac} ({blocks} blocks)"),
                });
            }
            idx - 1
        }
        _ => {
            if idx == 0 || idx > fac.picard_rank() {
                return Err(Error::Parse {
                    pos: at,
                    msg: format!("unknown block Q{idx} on {fac} ({} steps)", fac.picard_rank()),
                });
            }
            idx
        }
    };
    Ok(BlockRef { factor, block, dual })
}

/// Parses a variety descriptor: `P<n>`, `Gr(k,n)`, `Fl(d_1,…,d_s;n)`, and
/// products of those joined by `x`.
pub fn parse_variety(text: &str) -> Result<ProductVariety> {
    let mut cur = Cursor::new(text);
    let mut factors = vec![parse_flag(&mut cur)?];
    loop {
        cur.skip_ws();
        if cur.peek_raw() == Some(b'x') {
            cur.pos += 1;
            factors.push(parse_flag(&mut cur)?);
        } else {
            break;
        }
    }
    cur.skip_ws();
    if cur.pos != cur.text.len() {
        return Err(cur.error("unexpected trailing input in variety descriptor"));
    }
    ProductVariety::new(factors)
}

fn parse_flag(cur: &mut Cursor) -> Result<FlagVariety> {
    cur.skip_ws();
    let at = cur.pos;
    let word = cur.ident_alpha();
    match word.as_str() {
        "P" => {
            let d = cur.unsigned()?;
            Ok(FlagVariety::projective_space(d))
        }
        "Gr" => {
            cur.expect(b'(')?;
            let k = cur.unsigned()?;
            cur.expect(b',')?;
            let n = cur.unsigned()?;
            cur.expect(b')')?;
            FlagVariety::grassmannian(k, n).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })
        }
        "Fl" => {
            cur.expect(b'(')?;
            let mut steps = vec![cur.unsigned()?];
            while cur.eat(b',') {
                steps.push(cur.unsigned()?);
            }
            cur.expect(b';')?;
            let n = cur.unsigned()?;
            cur.expect(b')')?;
            FlagVariety::new(steps, n).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })
        }
        _ => {
            cur.pos = at;
            Err(cur.error("expected P<n>, Gr(k,n) or Fl(d_1,…;n)"))
        }
    }
}
