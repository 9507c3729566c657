//! Builtin verification scenarios: cones over the Veronese, Segre,
//! anticanonical and Plücker embeddings, and the Pfaffian resolutions.
//!
//! Each builder embeds the geometric constants of its construction
//! (grading line bundle, block structure, assumption provenances) and
//! returns a ready-to-verify [`ResolutionScenario`].

use crate::lefschetz::{
    compute_m_r, Assumption, Generator, GradedTwist, LefschetzSpec, Orientation, RelativeBase,
    ResolutionScenario, ScenarioKind, TiltingProblem,
};
use crate::varieties::{FlagVariety, LineBundleClass, ProductVariety};
use crate::{Error, Result};

fn gens(variety: &ProductVariety, texts: &[String]) -> Result<Vec<Generator>> {
    texts.iter().map(|t| Generator::parse(t, variety)).collect()
}

fn cone_assumptions() -> Vec<Assumption> {
    vec![
        Assumption::new("pisjz", "by-construction: the resolution is the blowup of the cone vertex"),
        Assumption::new("rational_singularities", "classical: cone over a projectively normal embedding"),
        Assumption::new("b0_generated_by_E", "by-construction: the block generators pull back from E"),
    ]
}

/// Cone over `P^n` in the degree-`d` embedding, `1 ≤ d ≤ n+1`. The
/// exceptional divisor is `P^n` with conormal class `O(d)`; the blocks are
/// `B_0 = … = B_{m−2} = ⟨O(1−d),…,O⟩` and `B_{m−1} = ⟨O(1−r),…,O⟩` with
/// `n+1 = (m−1)d + r`.
pub fn veronese(n: usize, d: usize) -> Result<ResolutionScenario> {
    if n == 0 {
        return Err(Error::InvalidArgument("the Veronese scenario needs n >= 1".into()));
    }
    let (m, r) = compute_m_r(n as u64, d as u64)?;
    let variety = ProductVariety::single(FlagVariety::projective_space(n));
    let full_block: Vec<String> = (1 - d as i64..=0).map(|j| format!("O({j})")).collect();
    let last_block: Vec<String> = (1 - r as i64..=0).map(|j| format!("O({j})")).collect();
    let mut blocks = Vec::with_capacity(m as usize);
    for _ in 0..m.saturating_sub(1) {
        blocks.push(gens(&variety, &full_block)?);
    }
    blocks.push(gens(&variety, &last_block)?);
    let twist = LineBundleClass::new(vec![d as i64]);
    let tilting_gens: Vec<String> = (0..d as i64).map(|j| format!("O({j})")).collect();
    let tilting = TiltingProblem {
        variety: variety.clone(),
        generators: gens(&variety, &tilting_gens)?,
        twist: GradedTwist::LinePower(twist.clone()),
    };
    Ok(ResolutionScenario {
        name: "veronese".into(),
        kind: ScenarioKind::Cone,
        spec: LefschetzSpec {
            variety,
            twist,
            blocks,
            orientation: Orientation::Dual,
            relative_base: None,
        },
        tilting: Some(tilting),
        assumptions: cone_assumptions(),
        params: vec![
            ("n".into(), n.to_string()),
            ("d".into(), d.to_string()),
            ("m".into(), m.to_string()),
            ("r".into(), r.to_string()),
        ],
    })
}

/// Cone over `P^{m−1} × P^{m−1}` in the Segre embedding: conormal class
/// `O(1,1)`, rectangular blocks `⟨O(0,1−m),…,O(0,0)⟩`.
pub fn segre(m: usize) -> Result<ResolutionScenario> {
    if m < 2 {
        return Err(Error::InvalidArgument("the Segre scenario needs m >= 2".into()));
    }
    let p = FlagVariety::projective_space(m - 1);
    let variety = ProductVariety::new(vec![p.clone(), p])?;
    let block: Vec<String> = (1 - m as i64..=0).map(|j| format!("O(0,{j})")).collect();
    let blocks: Vec<Vec<Generator>> =
        (0..m).map(|_| gens(&variety, &block)).collect::<Result<_>>()?;
    let twist = LineBundleClass::new(vec![1, 1]);
    let tilting = TiltingProblem {
        variety: variety.clone(),
        generators: gens(&variety, &block)?,
        twist: GradedTwist::LinePower(twist.clone()),
    };
    Ok(ResolutionScenario {
        name: "segre".into(),
        kind: ScenarioKind::Cone,
        spec: LefschetzSpec {
            variety,
            twist,
            blocks,
            orientation: Orientation::Dual,
            relative_base: None,
        },
        tilting: Some(tilting),
        assumptions: cone_assumptions(),
        params: vec![("m".into(), m.to_string())],
    })
}

/// Cone over `Gr(2,m)` in the Plücker embedding, with `k = ⌊(m−1)/2⌋` and
/// blocks `⟨O, U^∨, …, S^top U^∨⟩`: for odd
/// `m` all `m` blocks carry `top = k` (whose object count oversteps the
/// K-rank; the mismatch is surfaced, not repaired), for even `m` the upper
/// half drops to `top = k−1`. `blocks_top` overrides the top power of every
/// block, giving a rectangular variant.
pub fn grassmannian_cone(m: usize, blocks_top: Option<usize>) -> Result<ResolutionScenario> {
    if m < 3 {
        return Err(Error::InvalidArgument("the Grassmannian cone scenario needs m >= 3".into()));
    }
    let variety = ProductVariety::single(FlagVariety::grassmannian(2, m)?);
    let k = (m - 1) / 2;
    let power_block = |top: usize| -> Vec<String> {
        let mut b = vec!["O(0)".to_string()];
        for j in 1..=top {
            b.push(format!("S[{j}](U1*)"));
        }
        b
    };
    let mut blocks = Vec::with_capacity(m);
    let tilting_top;
    match blocks_top {
        Some(top) => {
            tilting_top = top;
            for _ in 0..m {
                blocks.push(gens(&variety, &power_block(top))?);
            }
        }
        None if m % 2 == 1 => {
            tilting_top = k;
            for _ in 0..m {
                blocks.push(gens(&variety, &power_block(k))?);
            }
        }
        None => {
            tilting_top = k;
            for _ in 0..=k {
                blocks.push(gens(&variety, &power_block(k))?);
            }
            for _ in (k + 1)..m {
                blocks.push(gens(&variety, &power_block(k - 1))?);
            }
        }
    }
    let twist = LineBundleClass::new(vec![1]);
    let tilting = TiltingProblem {
        variety: variety.clone(),
        generators: gens(&variety, &power_block(tilting_top))?,
        twist: GradedTwist::LinePower(twist.clone()),
    };
    let mut params = vec![("m".into(), m.to_string()), ("k".into(), k.to_string())];
    if let Some(top) = blocks_top {
        params.push(("blocks_top".into(), top.to_string()));
    }
    Ok(ResolutionScenario {
        name: "grassmannian_cone".into(),
        kind: ScenarioKind::Cone,
        spec: LefschetzSpec {
            variety,
            twist,
            blocks,
            orientation: Orientation::Dual,
            relative_base: None,
        },
        tilting: Some(tilting),
        assumptions: cone_assumptions(),
        params,
    })
}

/// Cone over a Fano base in the anticanonical embedding: the single block
/// `B_0` is the provided strong exceptional collection and the conormal
/// class is the anticanonical class.
pub fn anticanonical(variety: ProductVariety, collection: &[String]) -> Result<ResolutionScenario> {
    if collection.is_empty() {
        return Err(Error::InvalidArgument("the anticanonical scenario needs a collection".into()));
    }
    let (_, k_class) = crate::varieties::canonical_bundle(&variety);
    let twist = k_class.scaled(-1);
    if twist.coeffs().iter().any(|&c| c <= 0) {
        return Err(Error::InvalidArgument(
            "the anticanonical class is not in the ample direction".into(),
        ));
    }
    let block = gens(&variety, collection)?;
    let tilting = TiltingProblem {
        variety: variety.clone(),
        generators: block.clone(),
        twist: GradedTwist::LinePower(twist.clone()),
    };
    Ok(ResolutionScenario {
        name: "anticanonical".into(),
        kind: ScenarioKind::Cone,
        spec: LefschetzSpec {
            variety: variety.clone(),
            twist,
            blocks: vec![block],
            orientation: Orientation::Dual,
            relative_base: None,
        },
        tilting: Some(tilting),
        assumptions: cone_assumptions(),
        params: vec![
            ("base".into(), variety.to_string()),
            ("collection_size".into(), collection.len().to_string()),
        ],
    })
}

/// The Pfaffian resolution for skew forms of rank ≤ 4 on an `n`-space,
/// `n ≥ 6`: the exceptional divisor is `Fl(n−4, n−2; n)` fibered over
/// `Gr(n−2, n)` (drop the first step), the conormal class is the first
/// Picard generator, and the blocks are powers of the dual tautological
/// `(n−4)`-plane bundle, `m = n−2` of them. The tilting bundle lives on
/// `Gr(n−4, n)` with the `Sym^t(Λ²(quotient))` grading.
pub fn pfaffian(n: usize) -> Result<ResolutionScenario> {
    if n < 6 {
        return Err(Error::InvalidArgument("the Pfaffian scenario needs n >= 6".into()));
    }
    let flag = FlagVariety::new(vec![n - 4, n - 2], n)?;
    let variety = ProductVariety::single(flag);
    let power_block = |top: usize| -> Vec<String> {
        let mut b = vec!["O(0,0)".to_string()];
        for j in 1..=top {
            b.push(format!("S[{j}](U1*)"));
        }
        b
    };
    let m = n - 2;
    let mut blocks = Vec::with_capacity(m);
    if n.is_multiple_of(2) {
        let p = (n - 2) / 2;
        for _ in 0..p {
            blocks.push(gens(&variety, &power_block(p - 1))?);
        }
        for _ in p..2 * p {
            blocks.push(gens(&variety, &power_block(p.saturating_sub(2)))?);
        }
    } else {
        let p = (n - 1) / 2;
        for _ in 0..m {
            blocks.push(gens(&variety, &power_block(p - 2))?);
        }
    }
    let twist = LineBundleClass::new(vec![1, 0]);

    let grass = ProductVariety::single(FlagVariety::grassmannian(n - 4, n)?);
    let top = n / 2 - 2;
    let mut tilting_gens = vec!["O(0)".to_string()];
    for j in 1..=top {
        tilting_gens.push(format!("S[{j}](U1*)"));
    }
    let tilting = TiltingProblem {
        variety: grass.clone(),
        generators: gens(&grass, &tilting_gens)?,
        twist: GradedTwist::SymWedge2Final,
    };

    Ok(ResolutionScenario {
        name: "pfaffian".into(),
        kind: ScenarioKind::Pfaffian { n },
        spec: LefschetzSpec {
            variety,
            twist,
            blocks,
            orientation: Orientation::Dual,
            relative_base: Some(RelativeBase { drop_step: 1 }),
        },
        tilting: Some(tilting),
        assumptions: vec![
            Assumption::new("pisjz", "by-construction: the resolution is the blowup of the singular locus"),
            Assumption::new("rational_singularities", "classical: skew-form loci have rational singularities"),
            Assumption::new(
                "b0_generated_by_E",
                "by-construction: the block generators pull back from E",
            ),
        ],
        params: vec![
            ("n".into(), n.to_string()),
            ("m".into(), m.to_string()),
            ("Z".into(), format!("Gr({},{n})", n - 2)),
            ("Ztilde".into(), format!("Fl({},{};{n})", n - 4, n - 2)),
            ("model".into(), format!("subspaces of the {n}-space W; Gr(2,W*) = Gr({},W)", n - 2)),
        ],
    })
}

/// Names and parameter hints of the builtin scenarios.
pub fn builtin_list() -> Vec<(&'static str, &'static str)> {
    vec![
        ("veronese", "--n <n> --d <d>: cone over P^n in degree d, 1 <= d <= n+1"),
        ("segre", "--m <m>: cone over P^{m-1} x P^{m-1}, m >= 2"),
        ("grassmannian_cone", "--m <m> [--blocks-top <k>]: cone over Gr(2,m), m >= 3"),
        ("anticanonical", "--collection <file>: cone over a Fano base in the anticanonical embedding"),
        ("pfaffian", "--n <n>: rank-4 skew forms on an n-space, n >= 6"),
    ]
}
