//! Command-line interface: cohomology and Ext tables, scenario
//! verification, graded dimensions of the resolution algebra.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on
//! malformed input.

mod report;
mod scenario_file;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use catres::bbw::{cohomology, ext_table, CohomologyTable};
use catres::lefschetz::{
    graded_algebra_dims, resolution_report, tilting_check, CheckStatus, ResolutionOutcome,
    ResolutionScenario,
};
use catres::scenarios;
use catres::varieties::{parse_bundle, parse_variety};
use catres::Error;

use report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Parser)]
#[command(
    name = "catres",
    version,
    about = "Exact checks for Lefschetz decompositions and noncommutative resolutions on flag varieties",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads for independent checks; the output is identical
    /// regardless.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology table of a bundle expression.
    Cohomology {
        /// Variety descriptor, e.g. P2, Gr(2,4), Fl(2,4;6), P1xP1.
        variety: String,
        /// Bundle expression, e.g. "O(-3)" or "S[2](U1*)".
        bundle: String,
    },
    /// Ext table between two bundle expressions.
    Ext { variety: String, e: String, f: String },
    /// Run the full verification of a builtin scenario or a scenario file.
    Verify {
        /// veronese | segre | grassmannian_cone | anticanonical | pfaffian,
        /// or a path to a scenario file.
        scenario: String,
        #[command(flatten)]
        params: ScenarioParams,
    },
    /// Graded dimensions of the pushforward endomorphism algebra.
    Hilbert {
        scenario: String,
        /// Largest graded degree to report.
        #[arg(long, default_value_t = 5)]
        t_max: usize,
        #[command(flatten)]
        params: ScenarioParams,
    },
    /// List the builtin scenarios and their parameters.
    ListScenarios,
}

#[derive(clap::Args)]
struct ScenarioParams {
    /// Ambient parameter n (veronese, pfaffian).
    #[arg(long)]
    n: Option<usize>,
    /// Embedding degree d (veronese).
    #[arg(long)]
    d: Option<usize>,
    /// Size parameter m (segre, grassmannian_cone).
    #[arg(long)]
    m: Option<usize>,
    /// Override the top symmetric power of every block (grassmannian_cone).
    #[arg(long)]
    blocks_top: Option<usize>,
    /// Collection file for the anticanonical scenario.
    #[arg(long)]
    collection: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    let jobs = cli.jobs.max(1);
    match &cli.command {
        Command::Cohomology { variety, bundle } => {
            let v = parse_variety(variety)?;
            let e = parse_bundle(bundle, &v)?;
            let table = cohomology(&v, &e)?;
            let mut r = Report::new();
            r.put("variety", variety);
            r.put("bundle", bundle);
            put_table(&mut r, &table);
            emit(cli, &r);
            Ok(ExitCode::SUCCESS)
        }
        Command::Ext { variety, e, f } => {
            let v = parse_variety(variety)?;
            let ee = parse_bundle(e, &v)?;
            let ff = parse_bundle(f, &v)?;
            let table = ext_table(&v, &ee, &ff)?;
            let mut r = Report::new();
            r.put("variety", variety);
            r.put("source", e);
            r.put("target", f);
            put_table(&mut r, &table);
            emit(cli, &r);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { scenario, params } => {
            let scenario = resolve_scenario(scenario, params)?;
            let outcome = resolution_report(&scenario, jobs)?;
            let r = verification_report(&scenario, &outcome);
            emit(cli, &r);
            if outcome.all_checks_pass() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Hilbert { scenario, t_max, params } => {
            let scenario = resolve_scenario(scenario, params)?;
            let problem = scenario.tilting.as_ref().ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "scenario {} carries no tilting bundle (section [bundle_E])",
                    scenario.name
                ))
            })?;
            let outcome = tilting_check(problem, jobs)?;
            let mut r = Report::new();
            r.put("scenario", &scenario.name);
            let p = r.child("params");
            for (k, v) in &scenario.params {
                p.put(k, v);
            }
            let t = r.child("tilting");
            match &outcome.failure {
                None => {
                    t.put("status", "pass");
                    t.put("bound", outcome.bound.to_string());
                }
                Some(w) => {
                    t.put("status", "fail");
                    t.put(
                        "witness",
                        format!(
                            "H^{} of summand {} at t = {} has dim {}",
                            w.degree, w.summand, w.t, w.dim
                        ),
                    );
                }
            }
            if outcome.passed() {
                let dims = graded_algebra_dims(problem, *t_max)?;
                let d = r.child("graded_dims");
                for (t, dim) in dims.iter().enumerate() {
                    d.put(&format!("A{t}"), dim.to_string());
                }
                emit(cli, &r);
                Ok(ExitCode::SUCCESS)
            } else {
                emit(cli, &r);
                Ok(ExitCode::from(1))
            }
        }
        Command::ListScenarios => {
            let mut r = Report::new();
            let s = r.child("scenarios");
            for (name, hint) in scenarios::builtin_list() {
                s.put(name, hint);
            }
            emit(cli, &r);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit(cli: &Cli, r: &Report) {
    let rendered = match cli.format {
        Format::Text => r.render_text(),
        Format::Structured => r.render_structured(),
    };
    print!("{rendered}");
}

fn required(name: &str, value: Option<usize>, flag: &str) -> Result<usize, Error> {
    value.ok_or_else(|| {
        Error::InvalidArgument(format!("scenario {name} needs {flag} (see list-scenarios)"))
    })
}

fn resolve_scenario(name: &str, params: &ScenarioParams) -> Result<ResolutionScenario, Error> {
    match name {
        "veronese" => {
            let n = required(name, params.n, "--n")?;
            let d = required(name, params.d, "--d")?;
            scenarios::veronese(n, d)
        }
        "segre" => scenarios::segre(required(name, params.m, "--m")?),
        "grassmannian_cone" => {
            let m = required(name, params.m, "--m")?;
            scenarios::grassmannian_cone(m, params.blocks_top)
        }
        "pfaffian" => scenarios::pfaffian(required(name, params.n, "--n")?),
        "anticanonical" => {
            let path = params.collection.as_ref().ok_or_else(|| {
                Error::InvalidArgument("scenario anticanonical needs --collection <file>".into())
            })?;
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
            })?;
            let (variety, collection) = scenario_file::parse_collection_file(&text)?;
            scenarios::anticanonical(variety, &collection)
        }
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
            scenario_file::parse_scenario_file(&text, path)
        }
    }
}

fn put_table(r: &mut Report, table: &CohomologyTable) {
    let section = r.child("cohomology");
    if table.is_zero() {
        section.put("total", "0");
    } else {
        for degree in table.degrees().collect::<Vec<_>>() {
            let row = section.child(&format!("H{degree}"));
            row.put("dim", table.dim(degree).to_string());
            for (class, mult) in table.classes(degree) {
                let label: Vec<String> = class.iter().map(|w| w.to_string()).collect();
                row.put("class", format!("{} x{}", label.join("|"), mult));
            }
        }
    }
    r.put("euler_characteristic", table.euler().to_string());
}

fn verification_report(scenario: &ResolutionScenario, outcome: &ResolutionOutcome) -> Report {
    let mut r = Report::new();
    r.put("scenario", &scenario.name);
    let p = r.child("params");
    for (k, v) in &scenario.params {
        p.put(k, v);
    }
    r.put("variety", scenario.spec.variety.to_string());
    r.put("line_bundle", scenario.spec.twist.to_string());
    r.put("orientation", scenario.spec.orientation.to_string());
    if let Some(rb) = &scenario.spec.relative_base {
        r.put("relative_base", format!("drop step {} of the flag", rb.drop_step));
    }
    let blocks = r.child("blocks");
    for (k, block) in scenario.spec.blocks.iter().enumerate() {
        let texts: Vec<&str> = block.iter().map(|g| g.text.as_str()).collect();
        blocks.put(&format!("B{k}"), texts.join("; "));
    }
    let checks = r.child("checks");
    for check in &outcome.checks {
        let c = checks.child(&check.name);
        c.put("status", status_line(&check.status));
        for note in &check.notes {
            c.put("note", note);
        }
    }
    let props = r.child("properties");
    props.put("rectangular", outcome.rectangular.to_string());
    if let Some(g) = &outcome.gorenstein {
        props.put("gorenstein_index", g.to_string());
    }
    if let Some(d) = &outcome.discrepancy {
        props.put("discrepancy", d.to_string());
    }
    if let Some(t) = &outcome.tilting {
        props.put("tilting_bound", t.bound.to_string());
    }
    let serre = r.child("serre");
    serre.put("twist", &outcome.serre.twist);
    serre.put("shift", outcome.serre.shift.to_string());
    if let Some(caveat) = &outcome.serre.caveat {
        serre.put("caveat", caveat);
    }
    for (check, ok) in &outcome.serre.dimension_checks {
        serre.put("check", format!("{check}: {}", if *ok { "pass" } else { "fail" }));
    }
    let assumptions = r.child("assumptions");
    for a in &outcome.assumptions {
        assumptions.put(&a.name, &a.provenance);
    }
    let verdicts = r.child("verdicts");
    verdicts.put(
        "categorical_resolution",
        format!("{} ({})", outcome.categorical.0, outcome.categorical.1),
    );
    verdicts.put(
        "noncommutative_resolution",
        format!("{} ({})", outcome.noncommutative.0, outcome.noncommutative.1),
    );
    verdicts.put("crepant", format!("{} ({})", outcome.crepant.0, outcome.crepant.1));
    r
}

fn status_line(status: &CheckStatus) -> String {
    match status {
        CheckStatus::Pass => "pass".to_string(),
        CheckStatus::Fail(w) => format!("fail ({w})"),
        CheckStatus::Assumed(p) => format!("assumed ({p})"),
        CheckStatus::Skipped(reason) => format!("skipped ({reason})"),
    }
}
