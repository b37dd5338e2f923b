//! Command-line front end: argument parsing, dispatch, report text and exit codes.
//!
//! Exit code 0 means every check passed, 1 means a violation (the first
//! witness is printed), 2 means the input could not be read or parsed.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use hopfcross::actions::{check_comodule, check_module, HopfContext};
use hopfcross::algebra::{check_algebra_axioms, check_hopf_axioms, default_mode, Algebra};
use hopfcross::bimodule::{check_hopf_bimodule, example_bimodule, run_suite, ExampleKind};
use hopfcross::catalog::{catalog_hopf, CatalogSpec};
use hopfcross::check::{CheckMode, CheckReport};
use hopfcross::crossed::{
    build_xyz, diagonal_crossed, left_smash, right_smash, two_sided_crossed, z_coefficient_algebra, AlgebraHandle,
    Which, DEFAULT_MATERIALIZE_CAP,
};
use hopfcross::format::{FieldJson, HopfFile};
use hopfcross::iso::{certify, composition_identity, IsoKind};
use hopfcross::radical::trace_form_radical;
use hopfcross::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hopfcross", version, about = "Exact verification of crossed products over Hopf algebras")]
pub struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the algebra or Hopf axioms of a file, plus any action, coaction and module blocks.
    Check { file: PathBuf },
    /// Print a catalog entry's dimensions and axiom status.
    Describe {
        #[arg(long)]
        catalog: String,
        /// Also write the entry as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a crossed product over the Hopf algebra in the input file.
    Build {
        #[arg(long, value_enum)]
        construction: Construction,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MATERIALIZE_CAP)]
        materialize_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify one of the explicit isomorphisms and its inverse.
    Iso {
        #[arg(long)]
        kind: IsoArg,
        #[arg(long)]
        input: PathBuf,
        /// `exhaustive` or `random:N`; defaults by dimension.
        #[arg(long)]
        mode: Option<String>,
        /// Write the matrix and reports as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the Hopf bimodule correspondence suite on an example bimodule.
    Bimodule {
        #[arg(long)]
        input: PathBuf,
        /// `regular`, `free:N`, or `embedded` for the file's module block.
        #[arg(long)]
        module: String,
    },
    /// Dimension of the trace-form radical (rational algebras only).
    Semisimple { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    #[value(name = "X")]
    X,
    #[value(name = "Y")]
    Y,
    #[value(name = "Z")]
    Z,
    LeftSmash,
    RightSmash,
    TwoSided,
    Diagonal,
}

impl Construction {
    fn name(self) -> &'static str {
        match self {
            Construction::X => "X",
            Construction::Y => "Y",
            Construction::Z => "Z",
            Construction::LeftSmash => "left-smash",
            Construction::RightSmash => "right-smash",
            Construction::TwoSided => "two-sided",
            Construction::Diagonal => "diagonal",
        }
    }
}

/// `phi`, `alpha`, `beta`, `f`, or any of them suffixed `_inv`.
#[derive(Clone, Copy, Debug)]
pub struct IsoArg(pub IsoKind);

impl std::str::FromStr for IsoArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.parse::<IsoKind>().map(IsoArg).map_err(|e| e.to_string())
    }
}

/// Exit code plus the report text destined for standard output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

enum Failure {
    Input(String),
    Violation(String, Box<CheckReport>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unverified { what, report } => Failure::Violation(what, report),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Run = Result<bool, Failure>;

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            return Outcome { code, report: e.to_string() };
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> Outcome {
    let mut out = String::new();
    let result = match &cli.command {
        Command::Check { file } => cmd_check(file, cli.seed, &mut out),
        Command::Describe { catalog, out: path } => cmd_describe(catalog, path.as_deref(), &mut out),
        Command::Build { construction, input, materialize_cap, out: path } => {
            cmd_build(*construction, input, *materialize_cap, path.as_deref(), cli.seed, &mut out)
        }
        Command::Iso { kind, input, mode, out: path } => {
            cmd_iso(kind.0, input, mode.as_deref(), path.as_deref(), cli.seed, &mut out)
        }
        Command::Bimodule { input, module } => cmd_bimodule(input, module, cli.seed, &mut out),
        Command::Semisimple { file } => cmd_semisimple(file, &mut out),
    };
    let code = match result {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_VIOLATION,
        Err(Failure::Violation(what, report)) => {
            let _ = writeln!(out, "{what}: {}", report.summary());
            write_witness(&mut out, &report);
            EXIT_VIOLATION
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(out, "error: {msg}");
            EXIT_INPUT
        }
    };
    Outcome { code, report: out }
}

fn write_witness(out: &mut String, report: &CheckReport) {
    if let Some(v) = report.first_violation() {
        let _ = writeln!(out, "  first violation: {v}");
    }
}

/// One `name: pass (N unit)` line, or a FAIL line with the first witness.
fn report_line(out: &mut String, name: &str, report: &CheckReport, unit: &str) -> bool {
    if report.passed() {
        let _ = writeln!(out, "{name}: pass ({} {unit})", report.checked);
    } else {
        let _ = writeln!(out, "{name}: FAIL ({} of {} {unit} violated)", report.violation_count, report.checked);
        write_witness(out, report);
    }
    report.passed()
}

fn read_file(path: &Path) -> Result<(HopfFile, Vec<u8>), Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok((HopfFile::parse(text)?, bytes))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn context(file: &HopfFile) -> Result<Arc<HopfContext>, Failure> {
    let h = file.require_hopf()?;
    Ok(Arc::new(HopfContext::new(&h)?))
}

fn parse_mode(s: Option<&str>, default: CheckMode, seed: u64) -> Result<CheckMode, Failure> {
    match s {
        None => Ok(default),
        Some("exhaustive") => Ok(CheckMode::Exhaustive),
        Some(m) => m
            .strip_prefix("random:")
            .and_then(|t| t.parse().ok())
            .filter(|&t: &usize| t > 0)
            .map(|trials| CheckMode::Random { trials, seed })
            .ok_or_else(|| Failure::Input(format!("bad mode {m:?}; expected exhaustive or random:N"))),
    }
}

fn cmd_check(path: &Path, seed: u64, out: &mut String) -> Run {
    let (file, _) = read_file(path)?;
    let algebra = file.algebra()?;
    let hopf = file.hopf()?;
    let actions = file.actions()?;
    let coactions = file.coactions()?;
    let module = file.module()?;
    let mode = default_mode(algebra.dim(), seed);
    let _ = writeln!(out, "dimension: {}", algebra.dim());
    let _ = writeln!(out, "mode: {mode}");
    let mut ok = match &hopf {
        Some(h) => report_line(out, "hopf axioms", &check_hopf_axioms(h, mode), "checks"),
        None => report_line(out, "algebra axioms", &check_algebra_axioms(&algebra, mode), "checks"),
    };
    for (i, act) in actions.iter().enumerate() {
        let r = check_module(&algebra, act, CheckMode::for_triples(algebra.dim().max(act.space_dim()), seed))?;
        ok &= report_line(out, &format!("action {i} ({:?})", act.side), &r, "checks");
    }
    if !coactions.is_empty() || module.is_some() {
        let Some(h) = &hopf else {
            return Err(Failure::Input("coaction and module blocks need a Hopf algebra".into()));
        };
        for (i, co) in coactions.iter().enumerate() {
            let r = check_comodule(co, &h.coalgebra, CheckMode::for_triples(h.dim().max(co.space_dim), seed))?;
            ok &= report_line(out, &format!("coaction {i} ({:?})", co.side), &r, "checks");
        }
        if let Some(m) = &module {
            ok &= report_line(out, "hopf bimodule", &check_hopf_bimodule(m, h)?, "checks");
        }
    }
    Ok(ok)
}

fn cmd_describe(spec: &str, path: Option<&Path>, out: &mut String) -> Run {
    let spec = CatalogSpec::parse(spec)?;
    let h = catalog_hopf(&spec)?;
    let n = h.dim();
    let _ = writeln!(out, "catalog: {spec}");
    let _ = writeln!(out, "field: {}", h.field());
    let _ = writeln!(out, "dimension: {n}");
    let _ = writeln!(out, "basis: {}", h.labels().join(" "));
    let _ = writeln!(out, "X, Y, Z dimension: {}", n.pow(4));
    let ok = report_line(out, "hopf axioms", &check_hopf_axioms(&h, CheckMode::Exhaustive), "checks");
    if let Some(p) = path {
        write_file(p, &HopfFile::from_hopf(&h).to_json())?;
        let _ = writeln!(out, "wrote {}", p.display());
    }
    Ok(ok)
}

fn construct(ctx: &Arc<HopfContext>, c: Construction) -> hopfcross::Result<AlgebraHandle> {
    match c {
        Construction::X => build_xyz(ctx, Which::X),
        Construction::Y => build_xyz(ctx, Which::Y),
        Construction::Z => build_xyz(ctx, Which::Z),
        Construction::LeftSmash => left_smash(&ctx.dual.algebra, &ctx.k, &ctx.k_action_on_dual()),
        Construction::RightSmash => right_smash(&ctx.k, &ctx.dual.algebra.opposite(), &ctx.k_action_on_dual_op()),
        Construction::TwoSided => two_sided_crossed(
            &ctx.dual.algebra,
            &ctx.k,
            &ctx.dual.algebra.opposite(),
            &ctx.k_action_on_dual(),
            &ctx.k_action_on_dual_op(),
        ),
        Construction::Diagonal => diagonal_crossed(&z_coefficient_algebra(ctx)?, &ctx.k),
    }
}

fn cmd_build(c: Construction, input: &Path, cap: usize, path: Option<&Path>, seed: u64, out: &mut String) -> Run {
    let (file, bytes) = read_file(input)?;
    let ctx = context(&file)?;
    let alg = construct(&ctx, c)?;
    let mode = CheckMode::for_triples(alg.dim(), seed);
    let _ = writeln!(out, "construction: {}", c.name());
    let _ = writeln!(out, "dimension: {} (factors {:?})", alg.dim(), alg.factor_dims);
    let _ = writeln!(out, "mode: {mode}");
    let ok = report_line(out, "algebra axioms", &check_algebra_axioms(&alg, mode), "checks");
    let text = match alg.materialize(cap) {
        Ok(data) => {
            let _ = writeln!(out, "materialized: yes");
            HopfFile::from_algebra(&data).to_json()
        }
        Err(Error::CapExceeded { .. }) => {
            let _ = writeln!(out, "materialized: no (cap {cap})");
            descriptor(c, &alg, &bytes, cap)
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(p) = path {
        write_file(p, &text)?;
        let _ = writeln!(out, "wrote {}", p.display());
    }
    Ok(ok)
}

fn descriptor(c: Construction, alg: &AlgebraHandle, input: &[u8], cap: usize) -> String {
    let hash = format!("{:x}", Sha256::digest(input));
    let doc = serde_json::json!({
        "construction": c.name(),
        "dim": alg.dim(),
        "factor_dims": alg.factor_dims,
        "field": FieldJson::from_spec(alg.field()),
        "input_sha256": hash,
        "materialize_cap": cap,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("descriptor serializes");
    s.push('\n');
    s
}

fn report_json(r: &CheckReport) -> serde_json::Value {
    serde_json::json!({
        "passed": r.passed(),
        "checked": r.checked,
        "violations": r.violation_count,
        "first_violation": r.first_violation().map(|v| v.to_string()),
    })
}

fn cmd_iso(kind: IsoKind, input: &Path, mode: Option<&str>, path: Option<&Path>, seed: u64, out: &mut String) -> Run {
    let (file, _) = read_file(input)?;
    let ctx = context(&file)?;
    let mode = parse_mode(mode, CheckMode::for_pairs(ctx.n().pow(4), seed), seed)?;
    let cert = certify(&ctx, kind, mode)?;
    let _ = writeln!(out, "kind: {kind}");
    let _ = writeln!(out, "mode: {mode}");
    // the unit check is counted separately from the product pairs
    let unit = if mode.is_exhaustive() { "pairs" } else { "trials" };
    let m = &cert.morphism;
    let morphism = if m.passed() {
        format!("morphism: pass ({} {unit})", m.checked.saturating_sub(1))
    } else {
        format!("morphism: FAIL ({} of {} checks violated)", m.violation_count, m.checked)
    };
    let inverse = if cert.inverse.passed() { "inverse: pass" } else { "inverse: FAIL" };
    let _ = writeln!(out, "{morphism}, {inverse}");
    write_witness(out, m);
    write_witness(out, &cert.inverse);
    let mut ok = cert.passed();
    if matches!(kind, IsoKind::Beta | IsoKind::BetaInv) {
        ok &= report_line(out, "composition identity", &composition_identity(&ctx)?, "entries");
    }
    if let Some(p) = path {
        let entries: Vec<serde_json::Value> = cert
            .map
            .columns()
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |(i, v)| serde_json::json!([i, j, v.to_string()])))
            .collect();
        let doc = serde_json::json!({
            "kind": kind.to_string(),
            "field": FieldJson::from_spec(ctx.field()),
            "rows": cert.map.dst_dim,
            "cols": cert.map.src_dim,
            "entries": entries,
            "mode": mode.to_string(),
            "morphism": report_json(&cert.morphism),
            "inverse": report_json(&cert.inverse),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("matrix serializes");
        s.push('\n');
        write_file(p, &s)?;
        let _ = writeln!(out, "wrote {}", p.display());
    }
    Ok(ok)
}

fn cmd_bimodule(input: &Path, module: &str, seed: u64, out: &mut String) -> Run {
    let (file, _) = read_file(input)?;
    let ctx = context(&file)?;
    let m = if module == "embedded" {
        file.module()?.ok_or_else(|| Failure::Input("file has no module block".into()))?
    } else {
        let kind: ExampleKind = module.parse()?;
        example_bimodule(&ctx.h, kind)?
    };
    let suite = run_suite(&m, &ctx, seed)?;
    let _ = writeln!(out, "module: {module} (dimension {})", m.dim());
    report_line(out, "hopf bimodule axioms", &suite.axioms, "checks");
    for (which, r) in &suite.modules {
        report_line(out, &format!("module over {which:?}"), r, "checks");
    }
    report_line(out, "triple module roundtrip", &suite.triple, "checks");
    report_line(out, "diagonal module condition", &suite.diagonal, "checks");
    report_line(out, "action correspondence", &suite.correspondence, "checks");
    Ok(suite.passed())
}

fn cmd_semisimple(path: &Path, out: &mut String) -> Run {
    let (file, _) = read_file(path)?;
    let algebra = file.algebra()?;
    let radical = trace_form_radical(&algebra)?;
    let _ = writeln!(out, "dimension: {}", algebra.dim());
    let _ = writeln!(out, "radical dimension: {}", radical.len());
    let _ = writeln!(out, "semisimple: {}", if radical.is_empty() { "yes" } else { "no" });
    Ok(true)
}
