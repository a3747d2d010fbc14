//! Command-line front end.
//!
//! Exit codes: 0 success (including expected counterexamples), 1 a
//! facet-count violation for a finite-covolume input, 2 bad input, 3 a search
//! bound was exceeded.

use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::diagrams::{classify_diagram, DiagramClass, Signature};
use crate::docs::{parse_matrix, DiagramDocument};
use crate::engine::{theorem_check, Bounds, EngineError, SubgroupSpec};
use crate::harness::{
    andreev_corpus, andreev_suite, corpus_polygons, enumerate_and_verify, lemma1_suite,
    lemma2_suite, lemma3_suite, remark2_regression, Corpus, SuiteReport,
};
use crate::render::{render_svg, Model, RenderError, RenderSpec};
use crate::Tolerances;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "coxdec",
    version,
    about = "Reflection groups, chambers and facet counts"
)]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_geo: f64,
    #[arg(long, global = true, default_value_t = 1e-7)]
    pub tol_ang: f64,
    #[arg(long, global = true, default_value_t = 8)]
    pub max_depth: usize,
    #[arg(long, global = true, default_value_t = 4096)]
    pub max_chambers: usize,
    #[arg(long, global = true, default_value_t = 48)]
    pub max_index: usize,
    /// Worker threads for suites (0: all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Theorem,
    Lemma1,
    Lemma2,
    Lemma3,
    Remark2,
    Andreev,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    PoincareDisk,
    EuclideanPlane,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Diagram, signature and type of a Coxeter matrix document.
    Classify {
        /// Matrix document, or `-` for stdin.
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Facet-count verdict for a reflection subgroup.
    Subgroup { group: PathBuf, subgroup: PathBuf },
    /// Run property suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
    /// SVG picture of the chamber tiling.
    Render {
        group: PathBuf,
        #[arg(long, value_enum)]
        model: Option<ModelArg>,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 0.002)]
        stroke_width: f64,
        #[arg(long, default_value_t = 0.006)]
        mirror_width: f64,
        /// Subgroup document whose chamber is filled.
        #[arg(long)]
        highlight: Option<PathBuf>,
    },
    /// List finite-index reflection subgroups of one group with their verdicts.
    Enumerate { group: PathBuf },
}

struct Failure(i32, String);

impl Cli {
    fn tolerances(&self) -> Tolerances {
        Tolerances {
            geo: self.tol_geo,
            ang: self.tol_ang,
            ..Tolerances::default()
        }
    }

    fn bounds(&self) -> Bounds {
        Bounds {
            max_depth: self.max_depth,
            max_chambers: self.max_chambers,
            tol: self.tolerances(),
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    Ok(s)
}

fn input_error(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_INPUT, format!("{}: {e}", path.display()))
}

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable") + "\n"
}

fn engine_failure(e: EngineError) -> Failure {
    let code = match e {
        EngineError::IndexBoundExceeded(_) | EngineError::BoundExceeded(_) => EXIT_BOUND,
        _ => EXIT_INPUT,
    };
    Failure(code, e.to_string())
}

/// Type word for a signature and classification.
pub fn type_name(class: &DiagramClass, sig: &Signature) -> &'static str {
    match class {
        DiagramClass::Elliptic(_) => "elliptic",
        DiagramClass::ParabolicUnion(_) => "parabolic",
        DiagramClass::Indefinite if sig.negative == 1 => "hyperbolic",
        DiagramClass::Indefinite => "indefinite",
    }
}

fn classify(input: &Path, json: bool) -> Result<(String, i32), Failure> {
    let m = parse_matrix(&read_input(input)?).map_err(|e| input_error(input, e))?;
    let d = m.diagram();
    let sig = m.gram().signature();
    let class = classify_diagram(&d);
    let kind = type_name(&class, &sig);
    let names = match &class {
        DiagramClass::Elliptic(n) | DiagramClass::ParabolicUnion(n) => Some(n.clone()),
        DiagramClass::Indefinite => None,
    };
    let out = if json {
        to_json(&serde_json::json!({
            "type": kind,
            "signature": sig,
            "components": names,
            "diagram": DiagramDocument::from_diagram(&d),
            "text_art": d.text_art(),
        }))
    } else {
        let mut s = format!("diagram:\n{}\n", d.text_art());
        s += &format!("type: {kind}");
        if let Some(n) = &names {
            s += &format!(", components [{}]", n.join(", "));
        }
        s += &format!(", signature {sig}\n");
        s
    };
    Ok((out, EXIT_OK))
}

fn subgroup(cli: &Cli, group: &Path, sub: &Path) -> Result<(String, i32), Failure> {
    let m = parse_matrix(&read_input(group)?).map_err(|e| input_error(group, e))?;
    let h: SubgroupSpec =
        serde_json::from_str(&read_input(sub)?).map_err(|e| input_error(sub, e))?;
    let mut bounds = cli.bounds();
    bounds.max_chambers = cli.max_index;
    let v = theorem_check(&m, &h, &bounds).map_err(engine_failure)?;
    let code = if v.finite_volume && !v.holds {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    };
    Ok((to_json(&v), code))
}

fn corpus(cli: &Cli) -> Corpus {
    Corpus {
        max_depth: cli.max_depth,
        max_index: cli.max_index,
        tol: cli.tolerances(),
        ..Corpus::default()
    }
}

fn verify(cli: &Cli, suite: Suite, max_rank: usize) -> Result<(String, i32), Failure> {
    if max_rank > 10 {
        return Err(Failure(EXIT_INPUT, "--max-rank must be at most 10".into()));
    }
    let tol = cli.tolerances();
    let want = |s: Suite| suite == s || suite == Suite::All;
    let mut reports: Vec<SuiteReport> = Vec::new();
    if want(Suite::Theorem) {
        reports.push(enumerate_and_verify(&corpus(cli)));
    }
    if want(Suite::Lemma1) {
        reports.push(lemma1_suite(&corpus_polygons(tol)));
    }
    if want(Suite::Lemma2) {
        reports.push(lemma2_suite(max_rank));
    }
    if want(Suite::Lemma3) {
        reports.push(lemma3_suite(&corpus_polygons(tol)));
    }
    if want(Suite::Remark2) {
        reports.push(remark2_regression());
    }
    if want(Suite::Andreev) {
        reports.push(andreev_suite(&andreev_corpus(tol)));
    }
    let code = if reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    for r in &reports {
        eprintln!(
            "{:<8} {} cases={} violations={} expected={} skipped={} hypothesis={} ({} ms)",
            r.suite,
            if r.passed() { "PASS" } else { "FAIL" },
            r.cases,
            r.violations.len(),
            r.expected_counterexamples.len(),
            r.skipped,
            r.hypothesis_cases,
            r.wall_clock_ms
        );
    }
    Ok((to_json(&reports), code))
}

#[allow(clippy::too_many_arguments)]
fn render(
    cli: &Cli,
    group: &Path,
    model: Option<ModelArg>,
    depth: usize,
    stroke_width: f64,
    mirror_width: f64,
    highlight: Option<&Path>,
) -> Result<(String, i32), Failure> {
    let m = parse_matrix(&read_input(group)?).map_err(|e| input_error(group, e))?;
    let highlight = match highlight {
        Some(p) => Some(
            serde_json::from_str::<SubgroupSpec>(&read_input(p)?).map_err(|e| input_error(p, e))?,
        ),
        None => None,
    };
    let spec = RenderSpec {
        model: model.map(|m| match m {
            ModelArg::PoincareDisk => Model::PoincareDisk,
            ModelArg::EuclideanPlane => Model::EuclideanPlane,
        }),
        depth,
        max_chambers: cli.max_chambers.max(1),
        stroke_width,
        mirror_width,
        highlight,
    };
    match render_svg(&m, &spec, &cli.tolerances()) {
        Ok(r) => Ok((r.svg, EXIT_OK)),
        Err(RenderError::Engine(e)) => Err(engine_failure(e)),
        Err(e) => Err(Failure(EXIT_INPUT, e.to_string())),
    }
}

fn enumerate(cli: &Cli, group: &Path) -> Result<(String, i32), Failure> {
    let m = parse_matrix(&read_input(group)?).map_err(|e| input_error(group, e))?;
    let name = group
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "group".into());
    let c = Corpus {
        groups: vec![(name, m)],
        ..corpus(cli)
    };
    let r = enumerate_and_verify(&c);
    let code = if r.passed() { EXIT_OK } else { EXIT_VIOLATION };
    Ok((to_json(&r), code))
}

fn dispatch(cli: &Cli) -> Result<(String, i32), Failure> {
    match &cli.command {
        Command::Classify { input, json } => classify(input, *json),
        Command::Subgroup { group, subgroup: s } => subgroup(cli, group, s),
        Command::Verify { suite, max_rank } => verify(cli, *suite, *max_rank),
        Command::Render {
            group,
            model,
            depth,
            stroke_width,
            mirror_width,
            highlight,
        } => render(
            cli,
            group,
            *model,
            *depth,
            *stroke_width,
            *mirror_width,
            highlight.as_deref(),
        ),
        Command::Enumerate { group } => enumerate(cli, group),
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build();
    let result = match pool {
        Ok(pool) => pool.install(|| dispatch(&cli)),
        Err(_) => dispatch(&cli),
    };
    match result {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(p) => std::fs::write(p, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return EXIT_INPUT;
            }
            code
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}
