//! Plain-text scenario files.
//!
//! Sections are introduced by `[name]` headers; `#` starts a comment.
//! Recognized sections: `[variety]`, `[line_bundle]`, `[orientation]`,
//! `[blocks]` (one line per block, generators separated by `;`), `[base]`
//! (optional, `drop_step = N`), `[bundle_E]` (optional, generators
//! separated by `;`) and `[assumptions]` (optional `name = provenance`
//! overrides). Unknown sections or keys are errors.

use std::collections::BTreeMap;

use catres::lefschetz::{
    Assumption, Generator, GradedTwist, LefschetzSpec, Orientation, RelativeBase,
    ResolutionScenario, ScenarioKind, TiltingProblem,
};
use catres::varieties::{parse_bundle, parse_variety, BundleExpr, LineBundleClass, ProductVariety};
use catres::{Error, Result};

fn sections_of(text: &str) -> Result<Vec<(String, Vec<String>)>> {
    let mut out: Vec<(String, Vec<String>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            if !line.ends_with(']') {
                return Err(Error::Parse {
                    pos: idx + 1,
                    msg: format!("malformed section header {line}"),
                });
            }
            out.push((line[1..line.len() - 1].trim().to_string(), Vec::new()));
        } else {
            match out.last_mut() {
                Some((_, lines)) => lines.push(line.to_string()),
                None => {
                    return Err(Error::Parse {
                        pos: idx + 1,
                        msg: "content before the first section header".into(),
                    })
                }
            }
        }
    }
    Ok(out)
}

fn single_line(name: &str, lines: &[String]) -> Result<String> {
    match lines {
        [one] => Ok(one.clone()),
        _ => Err(Error::InvalidArgument(format!("section [{name}] needs exactly one line"))),
    }
}

fn parse_generators(line: &str, variety: &ProductVariety) -> Result<Vec<Generator>> {
    line.split(';')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| Generator::parse(t, variety))
        .collect()
}

fn parse_line_class(text: &str, variety: &ProductVariety) -> Result<LineBundleClass> {
    match parse_bundle(text, variety)? {
        BundleExpr::Line(coeffs) => Ok(LineBundleClass::new(coeffs)),
        _ => Err(Error::InvalidArgument(format!("expected a line bundle O(..), got {text}"))),
    }
}

/// Parses a scenario file into a custom [`ResolutionScenario`].
pub fn parse_scenario_file(text: &str, label: &str) -> Result<ResolutionScenario> {
    let sections = sections_of(text)?;
    let known = [
        "variety",
        "line_bundle",
        "orientation",
        "blocks",
        "base",
        "bundle_E",
        "assumptions",
    ];
    for (name, _) in &sections {
        if !known.contains(&name.as_str()) {
            return Err(Error::InvalidArgument(format!("unknown section [{name}]")));
        }
    }
    let get = |name: &str| -> Option<&Vec<String>> {
        sections.iter().find(|(n, _)| n == name).map(|(_, l)| l)
    };
    let require = |name: &str| -> Result<&Vec<String>> {
        get(name).ok_or_else(|| Error::InvalidArgument(format!("missing section [{name}]")))
    };

    let variety = parse_variety(&single_line("variety", require("variety")?)?)?;
    let twist = parse_line_class(&single_line("line_bundle", require("line_bundle")?)?, &variety)?;
    let orientation = match single_line("orientation", require("orientation")?)?.as_str() {
        "dual" => Orientation::Dual,
        "straight" => Orientation::Straight,
        other => {
            return Err(Error::InvalidArgument(format!(
                "orientation must be dual or straight, got {other}"
            )))
        }
    };
    let block_lines = require("blocks")?;
    if block_lines.is_empty() {
        return Err(Error::InvalidArgument("section [blocks] needs at least one line".into()));
    }
    let blocks: Vec<Vec<Generator>> = block_lines
        .iter()
        .map(|l| parse_generators(l, &variety))
        .collect::<Result<_>>()?;

    let relative_base = match get("base") {
        None => None,
        Some(lines) => {
            let line = single_line("base", lines)?;
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument("section [base] expects drop_step = N".into()))?;
            if key.trim() != "drop_step" {
                return Err(Error::InvalidArgument(format!(
                    "unknown key {} in [base]",
                    key.trim()
                )));
            }
            let drop_step: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument("drop_step must be a positive integer".into()))?;
            Some(RelativeBase { drop_step })
        }
    };

    let tilting = match get("bundle_E") {
        None => None,
        Some(lines) => {
            let gens = parse_generators(&single_line("bundle_E", lines)?, &variety)?;
            Some(TiltingProblem {
                variety: variety.clone(),
                generators: gens,
                twist: GradedTwist::LinePower(twist.clone()),
            })
        }
    };

    let mut assumption_map: BTreeMap<String, String> = BTreeMap::from([
        ("pisjz".to_string(), "unchecked".to_string()),
        ("rational_singularities".to_string(), "unchecked".to_string()),
        ("b0_generated_by_E".to_string(), "unchecked".to_string()),
    ]);
    if let Some(lines) = get("assumptions") {
        for line in lines {
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument("section [assumptions] expects name = provenance".into())
            })?;
            let key = key.trim().to_string();
            if !assumption_map.contains_key(&key) {
                return Err(Error::InvalidArgument(format!("unknown assumption {key}")));
            }
            assumption_map.insert(key, value.trim().to_string());
        }
    }
    let assumptions: Vec<Assumption> =
        assumption_map.iter().map(|(k, v)| Assumption::new(k, v)).collect();

    Ok(ResolutionScenario {
        name: "custom".into(),
        kind: ScenarioKind::Custom,
        spec: LefschetzSpec { variety, twist, blocks, orientation, relative_base },
        tilting,
        assumptions,
        params: vec![("file".into(), label.to_string())],
    })
}

/// Parses a collection file for the anticanonical scenario: sections
/// `[variety]` and `[collection]` (one generator per line or `;`-separated).
pub fn parse_collection_file(text: &str) -> Result<(ProductVariety, Vec<String>)> {
    let sections = sections_of(text)?;
    for (name, _) in &sections {
        if name != "variety" && name != "collection" {
            return Err(Error::InvalidArgument(format!("unknown section [{name}]")));
        }
    }
    let variety_lines = sections
        .iter()
        .find(|(n, _)| n == "variety")
        .map(|(_, l)| l)
        .ok_or_else(|| Error::InvalidArgument("missing section [variety]".into()))?;
    let variety = parse_variety(&single_line("variety", variety_lines)?)?;
    let collection_lines = sections
        .iter()
        .find(|(n, _)| n == "collection")
        .map(|(_, l)| l)
        .ok_or_else(|| Error::InvalidArgument("missing section [collection]".into()))?;
    let mut collection = Vec::new();
    for line in collection_lines {
        for item in line.split(';') {
            let item = item.trim();
            if !item.is_empty() {
                collection.push(item.to_string());
            }
        }
    }
    Ok((variety, collection))
}
