//! Property tests for the combinatorial and cohomological invariants, with
//! independent oracles where one exists (hook-content dimensions, twist
//! covariance, cross-validated strictness).

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;

use catres::bbw::{cohomology, pushforward_sum, serre_dual_table};
use catres::lefschetz::{
    check_chain_and_strictness, check_semiorthogonality, Generator, LefschetzSpec, Orientation,
};
use catres::partitions::{
    dotted_weyl_regularize, lr_product, schur_dim, BlockWeight, Partition, Regularized,
};
use catres::varieties::{
    normalize, BundleExpr, FlagVariety, IrreducibleBundle, LineBundleClass, ProductVariety,
};

fn weight_strategy(max_len: usize, bound: i64) -> impl Strategy<Value = BlockWeight> {
    proptest::collection::vec(-bound..=bound, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        BlockWeight::new(v).unwrap()
    })
}

/// Hook-content formula: `dim S^λ(k^r) = ∏_cells (r + j − i) / hook(i,j)`.
fn hook_content_dim(p: &Partition, rank: usize) -> BigUint {
    let parts = p.parts();
    let conjugate_len = |col: i64| parts.iter().filter(|&&x| x > col).count() as i64;
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row {
            let content = rank as i64 + j - i as i64;
            if content <= 0 {
                return BigUint::ZERO;
            }
            num *= BigUint::from(content as u64);
            let arm = row - j - 1;
            let leg = conjugate_len(j) - i as i64 - 1;
            den *= BigUint::from((arm + leg + 1) as u64);
        }
    }
    num / den
}

#[test]
fn schur_dim_matches_hook_content() {
    for size in 0..=8i64 {
        for p in Partition::enumerate(size, 4) {
            for rank in 1..=6usize {
                if p.len() > rank {
                    continue;
                }
                let w: BlockWeight = p.clone().into();
                assert_eq!(
                    schur_dim(&w, rank).unwrap(),
                    hook_content_dim(&p, rank),
                    "λ = {p}, rank {rank}"
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lr_product_is_commutative_and_dimension_multiplicative(
        lam in weight_strategy(3, 4),
        mu in weight_strategy(3, 4),
        rank in 3usize..=5,
    ) {
        let ab = lr_product(&lam, &mu, rank).unwrap();
        let ba = lr_product(&mu, &lam, rank).unwrap();
        prop_assert_eq!(&ab, &ba);
        let total = ab.dimension(rank).unwrap();
        let expected = schur_dim(&lam, rank).unwrap() * schur_dim(&mu, rank).unwrap();
        prop_assert_eq!(total, expected);
    }

    #[test]
    fn lr_product_is_shift_equivariant(
        lam in weight_strategy(3, 3),
        mu in weight_strategy(3, 3),
        c in -3i64..=3,
    ) {
        let rank = 3usize;
        let plain = lr_product(&lam, &mu, rank).unwrap();
        let shifted = lr_product(&lam.det_shifted(c, rank).unwrap(), &mu, rank).unwrap();
        let mut expected = BTreeMap::new();
        for (w, m) in plain.iter() {
            expected.insert(w.det_shifted(c, rank).unwrap().trimmed(), m);
        }
        let got: BTreeMap<_, _> = shifted.iter().map(|(w, m)| (w.clone(), m)).collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn dotted_weyl_round_trip(w in proptest::collection::vec(-6i64..=6, 1..=6)) {
        let n = w.len();
        let rho = |i: usize| (n - 1 - i) as i64;
        let mut v: Vec<i64> = w.iter().enumerate().map(|(i, &e)| e + rho(i)).collect();
        let has_repeat = {
            let mut s = v.clone();
            s.sort_unstable();
            s.windows(2).any(|p| p[0] == p[1])
        };
        match dotted_weyl_regularize(&w) {
            Regularized::Singular => prop_assert!(has_repeat),
            Regularized::Dominant { degree_shift, weight } => {
                prop_assert!(!has_repeat);
                // Re-adding ρ reproduces w + ρ as a multiset.
                let mut back: Vec<i64> = weight
                    .entries()
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| e + rho(i))
                    .collect();
                back.sort_unstable();
                v.sort_unstable();
                prop_assert_eq!(back, v.clone());
                // Strictly dominant inputs come back unchanged.
                let strictly_dominant =
                    w.windows(2).all(|p| p[0] >= p[1]);
                if strictly_dominant {
                    prop_assert_eq!(degree_shift, 0);
                    prop_assert_eq!(weight.entries(), w.as_slice());
                }
            }
        }
    }

    #[test]
    fn euler_characteristic_on_p1_is_riemann_roch(k in -12i64..=12) {
        let v = ProductVariety::single(FlagVariety::projective_space(1));
        let e = BundleExpr::Line(vec![k]);
        let table = cohomology(&v, &e).unwrap();
        prop_assert_eq!(table.euler(), num_bigint::BigInt::from(k + 1));
    }
}

fn random_flag() -> impl Strategy<Value = FlagVariety> {
    (2usize..=7).prop_flat_map(|n| {
        proptest::sample::subsequence((1..n).collect::<Vec<_>>(), 1..=3.min(n - 1))
            .prop_map(move |steps| FlagVariety::new(steps, n).unwrap())
    })
}

fn bundle_on(flag: &FlagVariety) -> impl Strategy<Value = Vec<BlockWeight>> {
    let sizes = flag.block_sizes();
    let strategies: Vec<_> = sizes
        .iter()
        .map(|&b| {
            proptest::collection::vec(-4i64..=4, b).prop_map(|mut v| {
                v.sort_unstable_by(|x, y| y.cmp(x));
                BlockWeight::new_exact(v).unwrap()
            })
        })
        .collect();
    strategies
}

/// Pushes a bundle all the way to a point along the given order of step
/// values, returning degree → regularized class → multiplicity.
fn iterate_to_point(
    flag: &FlagVariety,
    weights: Vec<BlockWeight>,
    order: &[usize],
) -> BTreeMap<(usize, BlockWeight), u64> {
    let mut stage: Vec<(FlagVariety, usize, Vec<BlockWeight>, u64)> =
        vec![(flag.clone(), 0, weights, 1)];
    for &step_value in order {
        let mut next = Vec::new();
        for (current, degree, ws, mult) in stage {
            let idx = current
                .steps()
                .iter()
                .position(|&s| s == step_value)
                .expect("step value present")
                + 1;
            let product = ProductVariety::single(current.clone());
            let bundle = IrreducibleBundle::new(&product, vec![ws]).unwrap();
            let mut sum = BTreeMap::new();
            sum.insert(bundle, mult);
            let pushed = pushforward_sum(&current, idx, &sum).unwrap();
            for (d, bundles) in &pushed.entries {
                for (out, m) in bundles {
                    next.push((pushed.base.clone(), degree + d, out.clone(), *m));
                }
            }
        }
        stage = next;
    }
    let mut table = BTreeMap::new();
    for (_, degree, ws, mult) in stage {
        let (extra, label) = catres::bbw::regularize_factor(&ws).expect("point weights regular");
        assert_eq!(extra, 0);
        *table.entry((degree, label)).or_insert(0) += mult;
    }
    table
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pushforward_is_order_independent(
        (flag, weights) in random_flag().prop_flat_map(|f| {
            let ws = bundle_on(&f);
            (Just(f), ws)
        }),
        seed in any::<u64>(),
    ) {
        let order: Vec<usize> = flag.steps().to_vec();
        let mut reversed = order.clone();
        reversed.reverse();
        // A third order from the seed.
        let mut rotated = order.clone();
        if !rotated.is_empty() {
            let k = (seed as usize) % rotated.len();
            rotated.rotate_left(k);
        }
        let base = iterate_to_point(&flag, weights.clone(), &order);
        let rev = iterate_to_point(&flag, weights.clone(), &reversed);
        let rot = iterate_to_point(&flag, weights.clone(), &rotated);
        prop_assert_eq!(&base, &rev);
        prop_assert_eq!(&base, &rot);

        // Agreement with the one-shot regularization.
        let product = ProductVariety::single(flag.clone());
        let bundle = IrreducibleBundle::new(&product, vec![weights]).unwrap();
        let mut sum = BTreeMap::new();
        sum.insert(bundle, 1u64);
        let direct = catres::bbw::cohomology_of_sum(&product, &sum).unwrap();
        let direct_map: BTreeMap<(usize, BlockWeight), u64> = direct
            .degrees()
            .flat_map(|d| {
                direct
                    .classes(d)
                    .map(move |(c, m)| ((d, c[0].clone()), m))
                    .collect::<Vec<_>>()
            })
            .collect();
        prop_assert_eq!(base, direct_map);
    }

    #[test]
    fn serre_duality_on_random_bundles(
        (flag, weights) in random_flag().prop_flat_map(|f| {
            let ws = bundle_on(&f);
            (Just(f), ws)
        }),
    ) {
        let product = ProductVariety::single(flag);
        let bundle = IrreducibleBundle::new(&product, vec![weights]).unwrap();
        let mut sum = BTreeMap::new();
        sum.insert(bundle.clone(), 1u64);
        let direct = catres::bbw::cohomology_of_sum(&product, &sum).unwrap();

        // Express the bundle as Schur nodes to reuse the expression API.
        let expr = expr_of(&bundle);
        let dual_table = serre_dual_table(&product, &expr).unwrap();
        let dim = product.dimension();
        for i in 0..=dim {
            prop_assert_eq!(direct.dim(i), dual_table.dim(dim - i), "degree {}", i);
        }
    }
}

fn expr_of(bundle: &IrreducibleBundle) -> BundleExpr {
    let mut acc: Option<BundleExpr> = None;
    for (f, blocks) in bundle.block_weights().iter().enumerate() {
        for (b, w) in blocks.iter().enumerate() {
            let node = BundleExpr::Schur(
                w.clone().trimmed(),
                catres::varieties::BlockRef { factor: f, block: b, dual: false },
            );
            acc = Some(match acc {
                None => node,
                Some(prev) => BundleExpr::tensor(prev, node),
            });
        }
    }
    acc.expect("non-empty bundle")
}

#[test]
fn semiorthogonality_is_twist_covariant() {
    // Tensoring every block by a fixed line bundle leaves every verdict
    // unchanged; checked on a passing and on a failing spec.
    let v = catres::varieties::parse_variety("P3").unwrap();
    for (blocks, expect_pass) in [
        (vec![vec!["O(-1)", "O(0)"], vec!["O(-1)", "O(0)"]], true),
        (vec![vec!["O(0)", "O(3)"], vec!["O(0)", "O(3)"]], false),
    ] {
        let mut verdicts = Vec::new();
        for shift in [0i64, 2, -3] {
            let twisted_blocks: Vec<Vec<Generator>> = blocks
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|t| {
                            let text = format!("{t} * O({shift})");
                            Generator::parse(&text, &v).unwrap()
                        })
                        .collect()
                })
                .collect();
            let spec = LefschetzSpec {
                variety: v.clone(),
                twist: LineBundleClass::new(vec![2]),
                blocks: twisted_blocks,
                orientation: Orientation::Dual,
                relative_base: None,
            };
            verdicts.push(check_semiorthogonality(&spec, 1).unwrap().status.is_pass());
        }
        assert!(verdicts.iter().all(|&x| x == verdicts[0]), "{blocks:?}");
        assert_eq!(verdicts[0], expect_pass, "{blocks:?}");
    }
}

#[test]
fn rectangular_strictness_matches_adjacent_semiorthogonality() {
    // For a rectangular spec the strictness orthogonality tasks coincide
    // with the (0, k) slices of semiorthogonality; the verdicts must agree.
    let v = catres::varieties::parse_variety("Gr(2,4)").unwrap();
    for block in [vec!["O(0)", "S[1](U1*)"], vec!["O(0)", "O(2)"]] {
        let blocks: Vec<Vec<Generator>> = (0..2)
            .map(|_| block.iter().map(|t| Generator::parse(t, &v).unwrap()).collect())
            .collect();
        let spec = LefschetzSpec {
            variety: v.clone(),
            twist: LineBundleClass::new(vec![1]),
            blocks,
            orientation: Orientation::Dual,
            relative_base: None,
        };
        let semi = check_semiorthogonality(&spec, 1).unwrap();
        let strict = &check_chain_and_strictness(&spec, 1).unwrap()[1];
        assert_eq!(semi.status.is_pass(), strict.status.is_pass(), "{block:?}");
    }
}

#[test]
fn euler_characteristic_is_additive_and_kunneth_multiplicative() {
    use catres::bbw::euler_char;
    use catres::varieties::{parse_bundle, parse_variety};
    let v = parse_variety("Gr(2,4)").unwrap();
    let a = parse_bundle("S[2](U1*) * O(-1)", &v).unwrap();
    let b = parse_bundle("S[1](U1)", &v).unwrap();
    let sum = BundleExpr::sum(a.clone(), b.clone());
    assert_eq!(
        euler_char(&v, &sum).unwrap(),
        euler_char(&v, &a).unwrap() + euler_char(&v, &b).unwrap()
    );

    // χ(E ⊠ F) = χ(E) · χ(F) on a product.
    let p = parse_variety("P1xP2").unwrap();
    for (a1, a2) in [(3i64, -4i64), (-2, 2), (-1, -3), (2, 0)] {
        let joint = euler_char(&p, &BundleExpr::Line(vec![a1, a2])).unwrap();
        let f1 = parse_variety("P1").unwrap();
        let f2 = parse_variety("P2").unwrap();
        let e1 = euler_char(&f1, &BundleExpr::Line(vec![a1])).unwrap();
        let e2 = euler_char(&f2, &BundleExpr::Line(vec![a2])).unwrap();
        assert_eq!(joint, e1 * e2, "O({a1},{a2})");
    }
}

#[test]
fn euler_on_projective_space_is_the_signed_binomial() {
    use catres::bbw::euler_char;
    use num_bigint::BigInt;
    for n in 1usize..=5 {
        let v = ProductVariety::single(FlagVariety::projective_space(n));
        for k in -12i64..=12 {
            // The polynomial extension of C(n+k, n): ∏_{i=1..n} (k+i) / n!.
            let mut num = BigInt::from(1);
            let mut den = BigInt::from(1);
            for i in 1..=n as i64 {
                num *= BigInt::from(k + i);
                den *= BigInt::from(i);
            }
            let expected = num / den;
            let got = euler_char(&v, &BundleExpr::Line(vec![k])).unwrap();
            assert_eq!(got, expected, "P{n}, O({k})");
        }
    }
}

#[test]
fn tilting_pass_makes_graded_dims_match_euler_termwise() {
    // With no higher cohomology up to the certified bound, dim A_t equals
    // the full Euler characteristic of End F ⊗ L^t.
    use catres::bbw::euler_char;
    use catres::lefschetz::{graded_algebra_dims, tilting_check};
    use catres::varieties::parse_bundle;
    for (n, d) in [(2usize, 2usize), (3, 2), (3, 4)] {
        let s = catres::scenarios::veronese(n, d).unwrap();
        let problem = s.tilting.as_ref().unwrap();
        let outcome = tilting_check(problem, 1).unwrap();
        assert!(outcome.passed());
        let dims = graded_algebra_dims(problem, outcome.bound).unwrap();
        let v = &problem.variety;
        let gens: Vec<String> = problem.generators.iter().map(|g| g.text.clone()).collect();
        let f_text = gens.join(" + ");
        for (t, dim) in dims.iter().enumerate() {
            let expr = format!(
                "dual({f_text}) * ({f_text}) * O({})",
                d as i64 * t as i64
            );
            let euler = euler_char(v, &parse_bundle(&expr, v).unwrap()).unwrap();
            assert_eq!(
                num_bigint::BigInt::from(dim.clone()),
                euler,
                "veronese({n},{d}), t = {t}"
            );
        }
    }
}

#[test]
fn normalize_is_deterministic_across_repeats() {
    let v = catres::varieties::parse_variety("Fl(2,4;6)").unwrap();
    let text = "S[2,1](U1*) * O(-1,-2) + symwedge2[2](Q2) * S[1](U2)";
    let first = normalize(&catres::varieties::parse_bundle(text, &v).unwrap(), &v).unwrap();
    for _ in 0..5 {
        let again = normalize(&catres::varieties::parse_bundle(text, &v).unwrap(), &v).unwrap();
        assert_eq!(first, again);
    }
}
