//! Borel-Bott-Weil cohomology on products of flag varieties.
//!
//! An irreducible bundle is regularized factor by factor: every block weight
//! `(w_1,…,w_b)` is mapped to its reversed negative `(−w_b,…,−w_1)`, the
//! per-block strings are concatenated, and the dotted Weyl step of
//! [`crate::partitions::dotted_weyl_regularize`] is applied. A repeated
//! entry of `w + ρ` kills the summand; otherwise it contributes in exactly
//! one degree, the inversion count. Pushforward along a forgetful map drops
//! one step of the flag and regularizes only the two merged blocks with the
//! local `ρ`, which composes with further drops in any order.
//!
//! The orientation of the coordinate change is pinned by two fixtures:
//! `O(-3)` on `P¹` has `h¹ = 2` and nothing else, and `O(-3)` on `P²` has
//! `h² = 1` and nothing else.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::partitions::{dotted_weyl_regularize, schur_dim, BlockWeight, Regularized};
use crate::varieties::{
    canonical_bundle, normalize, BundleExpr, BundleSum, FlagVariety, IrreducibleBundle,
    ProductVariety,
};
use crate::{Error, Result};

/// One cohomology class: a dominant weight per factor, in the regularized
/// (reversed-negative) labeling. Its dimension equals the dimension of the
/// actual representation, which is the dual.
pub type CohomologyClass = Vec<BlockWeight>;

/// Cohomology table of a bundle: degree → dominant weights with
/// multiplicities, plus a cached total dimension per degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyTable {
    entries: BTreeMap<usize, BTreeMap<CohomologyClass, u64>>,
    dims: BTreeMap<usize, BigUint>,
}

impl CohomologyTable {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn classes(&self, degree: usize) -> impl Iterator<Item = (&CohomologyClass, u64)> {
        self.entries
            .get(&degree)
            .into_iter()
            .flat_map(|m| m.iter().map(|(c, &u)| (c, u)))
    }

    pub fn dim(&self, degree: usize) -> BigUint {
        self.dims.get(&degree).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    /// Dimensions summed over positive degrees.
    pub fn positive_part_dim(&self) -> BigUint {
        self.dims
            .iter()
            .filter(|(&d, _)| d > 0)
            .fold(BigUint::zero(), |acc, (_, v)| acc + v)
    }

    /// Alternating sum of dimensions.
    pub fn euler(&self) -> BigInt {
        let mut total = BigInt::zero();
        for (&d, v) in &self.dims {
            let term = BigInt::from(v.clone());
            if d % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    /// True when the table is exactly the trivial class in degree 0 with
    /// multiplicity one.
    pub fn is_scalar(&self) -> bool {
        if self.entries.len() != 1 {
            return false;
        }
        match self.entries.get(&0) {
            Some(m) if m.len() == 1 => m
                .iter()
                .next()
                .map(|(c, &mult)| mult == 1 && c.iter().all(|w| w.is_zero()))
                .unwrap_or(false),
            _ => false,
        }
    }
}

/// The reversed-negative coordinate string of one factor's block weights.
fn bbw_vector(weights: &[BlockWeight]) -> Vec<i64> {
    let mut v = Vec::new();
    for w in weights {
        v.extend(w.entries().iter().rev().map(|&e| -e));
    }
    v
}

/// Regularizes one factor completely: `None` when singular, otherwise the
/// total degree and the dominant `GL(n)` weight in the regularized labeling.
pub fn regularize_factor(weights: &[BlockWeight]) -> Option<(usize, BlockWeight)> {
    match dotted_weyl_regularize(&bbw_vector(weights)) {
        Regularized::Singular => None,
        Regularized::Dominant { degree_shift, weight } => Some((degree_shift, weight)),
    }
}

/// Result of a one-step pushforward: degree shift → base bundles with
/// multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushforwardResult {
    pub base: FlagVariety,
    pub entries: BTreeMap<usize, BTreeMap<Vec<BlockWeight>, u64>>,
}

impl PushforwardResult {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when the result is exactly the structure sheaf in degree 0.
    pub fn is_structure_sheaf(&self) -> bool {
        if self.entries.len() != 1 {
            return false;
        }
        match self.entries.get(&0) {
            Some(m) if m.len() == 1 => m
                .iter()
                .next()
                .map(|(ws, &mult)| mult == 1 && ws.iter().all(|w| w.is_zero()))
                .unwrap_or(false),
            _ => false,
        }
    }

    pub fn first_entry(&self) -> Option<(usize, &Vec<BlockWeight>, u64)> {
        self.entries
            .iter()
            .next()
            .and_then(|(&d, m)| m.iter().next().map(|(ws, &u)| (d, ws, u)))
    }
}

/// One-step relative Borel-Bott-Weil for a single summand: merges blocks
/// `drop` and `drop+1` (0-based step index) with the local dotted Weyl step.
/// Returns `None` when the summand is singular.
fn pushforward_weights(weights: &[BlockWeight], drop: usize) -> Option<(usize, Vec<BlockWeight>)> {
    let local = bbw_vector(&weights[drop..=drop + 1]);
    match dotted_weyl_regularize(&local) {
        Regularized::Singular => None,
        Regularized::Dominant { degree_shift, weight } => {
            let mut out = Vec::with_capacity(weights.len() - 1);
            out.extend_from_slice(&weights[..drop]);
            out.push(weight.dual());
            out.extend_from_slice(&weights[drop + 2..]);
            Some((degree_shift, out))
        }
    }
}

/// Pushes a single-factor irreducible bundle along the forgetful map that
/// drops step `drop_step` (1-based) of `variety`.
pub fn pushforward(
    variety: &FlagVariety,
    drop_step: usize,
    e: &IrreducibleBundle,
) -> Result<PushforwardResult> {
    let weights = single_factor_weights(variety, e)?;
    pushforward_sum_weights(variety, drop_step, &[(weights, 1)])
}

/// Pushes every summand of a decomposition along the same forgetful map.
pub fn pushforward_sum(
    variety: &FlagVariety,
    drop_step: usize,
    sum: &BundleSum,
) -> Result<PushforwardResult> {
    let mut items = Vec::with_capacity(sum.len());
    for (b, &m) in sum {
        items.push((single_factor_weights(variety, b)?, m));
    }
    pushforward_sum_weights(variety, drop_step, &items)
}

fn pushforward_sum_weights(
    variety: &FlagVariety,
    drop_step: usize,
    items: &[(Vec<BlockWeight>, u64)],
) -> Result<PushforwardResult> {
    if drop_step == 0 || drop_step > variety.steps().len() {
        return Err(Error::InvalidArgument(format!(
            "drop_step {drop_step} out of range for {variety}"
        )));
    }
    let drop = drop_step - 1;
    let base = variety.forget_step(drop)?;
    let mut entries: BTreeMap<usize, BTreeMap<Vec<BlockWeight>, u64>> = BTreeMap::new();
    for (weights, mult) in items {
        if let Some((degree, out)) = pushforward_weights(weights, drop) {
            *entries.entry(degree).or_default().entry(out).or_insert(0) += mult;
        }
    }
    Ok(PushforwardResult { base, entries })
}

fn single_factor_weights(variety: &FlagVariety, e: &IrreducibleBundle) -> Result<Vec<BlockWeight>> {
    let factors = e.block_weights();
    if factors.len() != 1 {
        return Err(Error::InvalidArgument(
            "pushforward expects a bundle on a single flag variety".into(),
        ));
    }
    let sizes = variety.block_sizes();
    if factors[0].len() != sizes.len() || factors[0].iter().zip(&sizes).any(|(w, &s)| w.len() != s) {
        return Err(Error::InvalidArgument(format!(
            "bundle block weights do not match the blocks of {variety}"
        )));
    }
    Ok(factors[0].clone())
}

/// Cohomology of a normalized decomposition.
pub fn cohomology_of_sum(variety: &ProductVariety, sum: &BundleSum) -> Result<CohomologyTable> {
    let mut entries: BTreeMap<usize, BTreeMap<CohomologyClass, u64>> = BTreeMap::new();
    for (bundle, &mult) in sum {
        let mut degree = 0usize;
        let mut class: CohomologyClass = Vec::with_capacity(variety.factors().len());
        let mut singular = false;
        for weights in bundle.block_weights() {
            match regularize_factor(weights) {
                None => {
                    singular = true;
                    break;
                }
                Some((d, w)) => {
                    degree += d;
                    class.push(w);
                }
            }
        }
        if !singular {
            *entries.entry(degree).or_default().entry(class).or_insert(0) += mult;
        }
    }
    let mut dims = BTreeMap::new();
    for (&degree, classes) in &entries {
        let mut total = BigUint::zero();
        for (class, &mult) in classes {
            let mut d = BigUint::from(mult);
            for (w, fac) in class.iter().zip(variety.factors()) {
                d *= schur_dim(w, fac.n())?;
            }
            total += d;
        }
        dims.insert(degree, total);
    }
    Ok(CohomologyTable { entries, dims })
}

/// Full sheaf cohomology `H^•(variety, e)`.
pub fn cohomology(variety: &ProductVariety, e: &BundleExpr) -> Result<CohomologyTable> {
    cohomology_of_sum(variety, &normalize(e, variety)?)
}

/// `Ext^•(E, F) = H^•(E^∨ ⊗ F)` for locally free `E`.
pub fn ext_table(variety: &ProductVariety, e: &BundleExpr, f: &BundleExpr) -> Result<CohomologyTable> {
    let hom = BundleExpr::tensor(BundleExpr::dual(e.clone()), f.clone());
    cohomology(variety, &hom)
}

/// Alternating sum of cohomology dimensions.
pub fn euler_char(variety: &ProductVariety, e: &BundleExpr) -> Result<BigInt> {
    Ok(cohomology(variety, e)?.euler())
}

/// Outcome of a relative Ext-vanishing test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelativeVanishing {
    Vanishes,
    Fails {
        degree: usize,
        base_weights: Vec<BlockWeight>,
        mult: u64,
    },
}

impl RelativeVanishing {
    pub fn vanishes(&self) -> bool {
        matches!(self, RelativeVanishing::Vanishes)
    }
}

/// Tests `f_* RHom(E, F) = 0` along the forgetful map dropping `drop_step`;
/// on failure reports the first surviving base summand.
pub fn relative_ext_vanishes(
    variety: &FlagVariety,
    drop_step: usize,
    e: &BundleExpr,
    f: &BundleExpr,
) -> Result<RelativeVanishing> {
    let product = ProductVariety::single(variety.clone());
    let hom = BundleExpr::tensor(BundleExpr::dual(e.clone()), f.clone());
    let sum = normalize(&hom, &product)?;
    let pushed = pushforward_sum(variety, drop_step, &sum)?;
    match pushed.first_entry() {
        None => Ok(RelativeVanishing::Vanishes),
        Some((degree, ws, mult)) => Ok(RelativeVanishing::Fails {
            degree,
            base_weights: ws.clone(),
            mult,
        }),
    }
}

/// Serre-duality partner table: `H^•(E^∨ ⊗ ω)`, to be compared against
/// `H^{dim − •}(E)`.
pub fn serre_dual_table(variety: &ProductVariety, e: &BundleExpr) -> Result<CohomologyTable> {
    let (_, k_class) = canonical_bundle(variety);
    let omega = BundleExpr::Line(k_class.coeffs().to_vec());
    let twisted = BundleExpr::tensor(BundleExpr::dual(e.clone()), omega);
    cohomology(variety, &twisted)
}
