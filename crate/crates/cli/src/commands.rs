use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use qforms_core::autgroup::{complement_group_verdict, group_verdict, invariant_basis, AffineQuadric};
use qforms_core::exactnum::{format_rational, parse_rational, set_factor_bound};
use qforms_core::isotropy::{constructive_witt_index, first_witt_index, is_isotropic, search_witness, witt_decompose, WitnessOutcome, WitnessSearch, DEFAULT_HEIGHT_BOUND};
use qforms_core::pfister::{cayley_dickson_multiply, hopf_map, neighbor_analysis, pfister};
use qforms_core::poly::{parse_polynomial, parse_polynomial_infer, var_names, Polynomial};
use qforms_core::ruledness::{ahmad_ohm_map, classify_ruledness, sphere_quadric_ruledness};
use qforms_core::{suites, Field, FormSpec, QuadraticForm};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{failure, render_human, success, to_value, Failure};

#[derive(Debug, Parser)]
#[command(name = "qforms", version, about = "Quadratic forms over Q, R and F_p: invariants, isotropy, Pfister forms, ruledness and automorphism verdicts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON reports (newline-delimited in batch mode).
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to this file (appended in batch mode).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Height bound for isotropic vector searches.
    #[arg(long, global = true, default_value_t = DEFAULT_HEIGHT_BOUND)]
    pub height_bound: u64,
    /// Largest cofactor accepted after trial division (overrides QFORMS_FACTOR_BOUND).
    #[arg(long, global = true, value_name = "N")]
    pub factor_bound: Option<String>,
    /// Degree bound for invariant bases (aut).
    #[arg(long, global = true, default_value_t = 1)]
    pub degree: u32,
}

#[derive(Debug, Clone, Default, Args)]
pub struct FormInput {
    /// Diagonal entries, e.g. 1,1,-3/2.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["poly", "form_file", "batch"])]
    pub diag: Option<Vec<String>>,
    /// Polynomial, e.g. "x1*x2 + x3^2 - 1".
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["form_file", "batch"])]
    pub poly: Option<String>,
    /// Variable order for --poly.
    #[arg(long, value_delimiter = ',', requires = "poly")]
    pub vars: Option<Vec<String>>,
    /// JSON form file.
    #[arg(long, conflicts_with = "batch")]
    pub form_file: Option<PathBuf>,
    /// Q, R or Fp:<p>.
    #[arg(long, default_value = "Q")]
    pub field: String,
    /// File with one JSON form per line.
    #[arg(long)]
    pub batch: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Invariants, diagonalization and Witt index.
    Analyze(FormInput),
    /// Isotropy decision with a searched witness.
    Isotropy(FormInput),
    /// Witt decomposition, checked by explicit plane splitting.
    Witt(FormInput),
    /// First Witt index.
    I1(FormInput),
    /// Ruledness verdict for the projective quadric.
    Ruled(FormInput),
    /// Ruledness of x0^2 + ... + xn^2 = 0 over R.
    SphereRuled { n: usize },
    /// Automorphism group verdict for an affine quadric f = 0.
    Aut {
        #[command(flatten)]
        input: FormInput,
        /// Treat the input as a form q and study the complement of q = 0.
        #[arg(long)]
        complement: bool,
    },
    /// Pfister forms and composition algebras.
    Pfister {
        #[command(subcommand)]
        op: PfisterOp,
    },
    /// Rational map certificate for a form b1·P ⊥ ... ⊥ b_r·P1.
    Map {
        /// Pfister parameters (numbers or symbols).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        params: Vec<String>,
        /// Dimension of the leading subform P1.
        #[arg(long)]
        p1_dim: usize,
        /// Scalars b1..b_r (numbers or symbols).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        scalars: Vec<String>,
    },
    /// Built-in self checks.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum PfisterOp {
    /// The form <<a1,...,an>>.
    Build {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        params: Vec<String>,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Cayley-Dickson product with its norm identity.
    Multiply {
        /// Parameters; symbolic a1..an when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Option<Vec<String>>,
        #[arg(long, default_value_t = 3)]
        fold: usize,
    },
    /// Pfister neighbor analysis.
    Neighbor(FormInput),
    /// Hopf map with its sphere identity.
    Hopf {
        #[arg(long, default_value_t = 1)]
        fold: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FormCommand {
    Analyze,
    Isotropy,
    Witt,
    I1,
    Ruled,
    Aut { complement: bool },
    Neighbor,
}

impl FormCommand {
    fn name(&self) -> &'static str {
        match self {
            FormCommand::Analyze => "analyze",
            FormCommand::Isotropy => "isotropy",
            FormCommand::Witt => "witt",
            FormCommand::I1 => "i1",
            FormCommand::Ruled => "ruled",
            FormCommand::Aut { .. } => "aut",
            FormCommand::Neighbor => "pfister neighbor",
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Opts {
    height_bound: u64,
    degree: u32,
}

/// Parses argv, runs the request, writes to stdout and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let json_requested = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(std::io::stdout(), "{e}");
                return 0;
            }
            if json_requested {
                let f = Failure::usage("Usage", e.to_string().trim().to_string());
                let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&failure("usage", None, &f, None)).expect("serializable"));
            } else {
                eprint!("{e}");
            }
            return 1;
        }
    };
    let mut stdout = std::io::stdout().lock();
    match execute(&cli, &mut stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(std::io::stderr(), "error: {}", f.message);
            f.exit
        }
    }
}

fn emit(cli: &Cli, out: &mut dyn Write, report: &Value) -> Result<(), Failure> {
    if cli.json {
        writeln!(out, "{}", serde_json::to_string_pretty(report)?)?;
    } else {
        write!(out, "{}", render_human(report))?;
    }
    if let Some(path) = &cli.out {
        fs::write(path, serde_json::to_string_pretty(report)? + "\n")?;
    }
    Ok(())
}

/// Runs the parsed request; single reports that fail are emitted and mapped
/// to their exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    if let Some(b) = &cli.factor_bound {
        let bound: BigUint = b.trim().parse().map_err(|_| Failure::usage("Usage", format!("invalid factor bound `{b}`")))?;
        set_factor_bound(bound);
    }
    let opts = Opts { height_bound: cli.height_bound, degree: cli.degree };
    let (cmd, input) = match &cli.command {
        Command::Analyze(i) => (FormCommand::Analyze, i),
        Command::Isotropy(i) => (FormCommand::Isotropy, i),
        Command::Witt(i) => (FormCommand::Witt, i),
        Command::I1(i) => (FormCommand::I1, i),
        Command::Ruled(i) => (FormCommand::Ruled, i),
        Command::Aut { input, complement } => (FormCommand::Aut { complement: *complement }, input),
        Command::Pfister { op: PfisterOp::Neighbor(i) } => (FormCommand::Neighbor, i),
        other => {
            let (name, result) = standalone(other);
            return single(cli, out, name, None, result);
        }
    };
    if let Some(path) = &input.batch {
        return batch(cli, out, cmd, path, opts);
    }
    let spec = match form_spec(input) {
        Ok(s) => s,
        Err(f) => return single(cli, out, cmd.name(), None, Err(f)),
    };
    let echo = to_value(&spec).ok();
    single(cli, out, cmd.name(), echo, run_form(cmd, &spec, opts))
}

fn single(cli: &Cli, out: &mut dyn Write, name: &str, input: Option<Value>, result: Result<Value, Failure>) -> Result<i32, Failure> {
    match result {
        Ok(v) => {
            let code = if name == "verify" && v["all_passed"] == json!(false) { 1 } else { 0 };
            emit(cli, out, &success(name, input, v))?;
            Ok(code)
        }
        Err(f) => {
            if cli.json {
                emit(cli, out, &failure(name, input, &f, None))?;
            } else {
                writeln!(std::io::stderr(), "error: {}", f.message)?;
            }
            Ok(f.exit)
        }
    }
}

fn batch(cli: &Cli, out: &mut dyn Write, cmd: FormCommand, path: &PathBuf, opts: Opts) -> Result<i32, Failure> {
    let text = fs::read_to_string(path)?;
    let lines: Vec<(usize, &str)> = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).map(|(i, l)| (i + 1, l)).collect();
    let reports: Vec<Value> = lines
        .par_iter()
        .map(|&(n, line)| match serde_json::from_str::<FormSpec>(line) {
            Ok(spec) => {
                let echo = to_value(&spec).ok();
                match run_form(cmd, &spec, opts) {
                    Ok(v) => {
                        let mut r = success(cmd.name(), echo, v);
                        r["line"] = json!(n);
                        r
                    }
                    Err(f) => failure(cmd.name(), echo, &f, Some(n)),
                }
            }
            Err(e) => failure(cmd.name(), None, &Failure::from(e), Some(n)),
        })
        .collect();
    let mut file = match &cli.out {
        Some(p) => Some(OpenOptions::new().create(true).append(true).open(p)?),
        None => None,
    };
    for r in &reports {
        let line = serde_json::to_string(r)?;
        if cli.json {
            writeln!(out, "{line}")?;
        } else {
            writeln!(out, "{}", render_human(r))?;
        }
        if let Some(f) = file.as_mut() {
            writeln!(f, "{line}")?;
        }
    }
    Ok(0)
}

fn form_spec(input: &FormInput) -> Result<FormSpec, Failure> {
    if let Some(path) = &input.form_file {
        let text = fs::read_to_string(path)?;
        return Ok(serde_json::from_str(&text)?);
    }
    let field = Field::parse(&input.field)?;
    match (&input.diag, &input.poly) {
        (Some(d), None) => Ok(FormSpec { field, diagonal: Some(d.iter().map(|s| s.trim().to_string()).collect()), poly: None, vars: None }),
        (None, Some(p)) => Ok(FormSpec { field, diagonal: None, poly: Some(p.clone()), vars: input.vars.clone() }),
        _ => Err(Failure::usage("Usage", "exactly one of --diag, --poly, --form-file or --batch is required")),
    }
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn run_form(cmd: FormCommand, spec: &FormSpec, opts: Opts) -> Result<Value, Failure> {
    if let FormCommand::Aut { complement: false } = cmd {
        return run_aut(spec, opts);
    }
    let q = spec.to_form()?;
    match cmd {
        FormCommand::Analyze => {
            let inv = q.invariants()?;
            let diag = q.diagonalize();
            let w = witt_decompose(&q)?;
            Ok(json!({
                "invariants": to_value(&inv)?,
                "diagonal": diag.entries.iter().map(format_rational).collect::<Vec<_>>(),
                "isotropic": is_isotropic(&q)?,
                "witt_index": w.witt_index,
            }))
        }
        FormCommand::Isotropy => isotropy_report(&q, opts),
        FormCommand::Witt => {
            let w = witt_decompose(&q)?;
            let c = constructive_witt_index(&q, &WitnessSearch::capped(opts.height_bound, q.dim()))?;
            Ok(json!({
                "witt_index": w.witt_index,
                "radical_dimension": w.radical_dimension,
                "anisotropic_invariants": to_value(&w.anisotropic_invariants)?,
                "constructive": to_value(&c)?,
                "constructive_agrees": c.planes == w.witt_index,
            }))
        }
        FormCommand::I1 => to_value(&first_witt_index(&q)?),
        FormCommand::Ruled => to_value(&classify_ruledness(&q)?),
        FormCommand::Neighbor => to_value(&neighbor_analysis(&q)?),
        FormCommand::Aut { .. } => to_value(&complement_group_verdict(&q)?),
    }
}

fn isotropy_report(q: &QuadraticForm, opts: Opts) -> Result<Value, Failure> {
    let iso = is_isotropic(q)?;
    let (search, witness) = if iso {
        match search_witness(q, &WitnessSearch::capped(opts.height_bound, q.dim())) {
            WitnessOutcome::Found(w) => ("found", Some(strings(&w))),
            WitnessOutcome::Exhausted => ("exhausted", None),
            WitnessOutcome::Truncated => ("truncated", None),
        }
    } else {
        ("skipped", None)
    };
    Ok(json!({ "isotropic": iso, "search": search, "witness": witness, "height_bound": opts.height_bound }))
}

fn run_aut(spec: &FormSpec, opts: Opts) -> Result<Value, Failure> {
    let text = spec.poly.as_ref().ok_or_else(|| Failure::usage("Usage", "aut needs --poly; use --complement for a form given by --diag"))?;
    let f = match &spec.vars {
        Some(v) => parse_polynomial(text, v)?,
        None => parse_polynomial_infer(text)?,
    };
    let x = AffineQuadric::new(spec.field, &f, spec.vars.as_deref())?;
    let verdict = group_verdict(&x, false, opts.height_bound)?;
    let mut hvars = x.variables.clone();
    hvars.push(x.homogenizing_variable.clone());
    let mut v = to_value(&verdict)?;
    v["quadric"] = json!({
        "variables": x.variables,
        "homogenizing_variable": x.homogenizing_variable,
        "homogenization": x.homogenization.to_polynomial(&hvars).to_string(),
        "convention": "Q(z, h) = q(z) + h*L(z) + c*h^2",
    });
    if let Some(fam) = &verdict.family {
        v["invariants"] = json!(strings(&invariant_basis(fam, opts.degree)?));
    }
    Ok(v)
}

fn polys(items: &[String]) -> Result<Vec<Polynomial>, Failure> {
    Ok(items.iter().map(|s| parse_polynomial_infer(s)).collect::<Result<_, _>>()?)
}

fn standalone(cmd: &Command) -> (&'static str, Result<Value, Failure>) {
    match cmd {
        Command::SphereRuled { n } => ("sphere-ruled", sphere_quadric_ruledness(*n).map_err(Failure::from).and_then(|v| to_value(&v))),
        Command::Pfister { op } => match op {
            PfisterOp::Build { params, field } => ("pfister build", (|| {
                let field = Field::parse(field)?;
                let p: Vec<_> = params.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?;
                to_value(&pfister(field, &p)?)
            })()),
            PfisterOp::Multiply { params, fold } => ("pfister multiply", (|| {
                let p = match params {
                    Some(p) => polys(p)?,
                    None => (1..=*fold).map(|i| Polynomial::var(&format!("a{i}"))).collect(),
                };
                let dim = 1usize.checked_shl(p.len() as u32).unwrap_or(0);
                let m = cayley_dickson_multiply(&p, &var_names("x", dim), &var_names("y", dim))?;
                Ok(json!({ "fold": p.len(), "params": strings(&p), "map": to_value(&m)?, "norm_identity": "N(xy) - N(x)N(y) = 0", "verified": true }))
            })()),
            PfisterOp::Hopf { fold } => ("pfister hopf", (|| {
                let h = hopf_map(*fold)?;
                let mut v = to_value(&h)?;
                v["verified"] = json!(h.certificate.is_zero());
                Ok(v)
            })()),
            PfisterOp::Neighbor(_) => unreachable!("handled as a form command"),
        },
        Command::Map { params, p1_dim, scalars } => ("map", (|| {
            let cert = ahmad_ohm_map(&polys(params)?, *p1_dim, &polys(scalars)?)?;
            let mut v = to_value(&cert)?;
            v["verified"] = json!(cert.is_valid());
            Ok(v)
        })()),
        Command::Verify { suite, seed } => ("verify", (|| {
            let checks = match suite {
                Suite::Identities => suites::identities(),
                Suite::Oracle => suites::oracle(*seed),
            };
            let passed = checks.iter().filter(|c| c.passed).count();
            Ok(json!({
                "suite": match suite { Suite::Identities => "identities", Suite::Oracle => "oracle" },
                "checks": to_value(&checks)?,
                "passed": passed,
                "failed": checks.len() - passed,
                "all_passed": passed == checks.len(),
            }))
        })()),
        _ => unreachable!("form commands are dispatched separately"),
    }
}
