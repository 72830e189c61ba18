//! Command-line front end: one subcommand per pipeline stage, each running
//! exactly one exact-arithmetic pipeline and emitting a JSON `RunReport`.
//!
//! Exit codes follow the verdict: 0 when the certified claim holds, 1 when
//! the computation completes and refutes it, 2 when the inputs never reach
//! the mathematics (usage errors, malformed files, module preconditions).

mod inputs;
mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use oscdual_core::bryant::{
    beta_point, conormal_lift, degree_root_counts, expected_degrees, genericity_a, genericity_b,
    parametric_curve_degree, theta_point, theta_pushforward, verify_pullback, HypothesisCheck,
    IncidencePoint,
};
use oscdual_core::catalog::{monomial_contact_form, monomial_dual_exponents, v_family_contact_form};
use oscdual_core::contact::{find_contact_form, legendrian_check, standard_b, ContactError, SkewForm};
use oscdual_core::exactmath::format_rational;
use oscdual_core::osculation::{osculating_dual, selfdual_certificate};
use oscdual_core::{MultiPoly, ParamVariety, ProjPoint};

use inputs::{
    catalog_variety, enforce_degree_cap, load_skew_form, load_variety, parse_address, parse_point,
    CatalogEntry, CliError,
};
use report::{write_report, Outcome, RunReport, Verdict};

#[derive(Parser)]
#[command(
    name = "oscdual",
    version,
    about = "Exact certificates for osculating self-dual projective varieties"
)]
struct Cli {
    /// Write the JSON report to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Run every invocation listed in FILE (a JSON array of argument lists)
    /// and aggregate their verdicts into one report.
    #[arg(long, value_name = "FILE")]
    suite: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

/// Input variety: a catalog address or a variety file, exactly one.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct CurveInput {
    /// Catalog address: monomial:a,b,c | hypersurface:n:F | vfamily:k.
    #[arg(long, value_name = "ADDRESS")]
    catalog: Option<String>,

    /// JSON variety file with fields params, coords, ambient_dim.
    #[arg(long, value_name = "FILE")]
    curve: Option<PathBuf>,
}

/// Contact form selection: `auto` searches for a form making the input
/// Legendrian, `standard` uses the block form on the input's ambient space,
/// and anything else is read as a skew-form file path.
#[derive(Args)]
struct FormChoice {
    #[arg(long, value_name = "auto|standard|FILE", default_value = "auto")]
    form: String,
}

#[derive(Subcommand)]
enum Command {
    /// Map an incident point pair forward into the contact space.
    Theta {
        /// Comma-separated rational coordinates of the source point.
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        x: String,
        /// Comma-separated rational coordinates of the incident hyperplane.
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        y: String,
    },
    /// Invert the incidence map at a point of the contact space.
    Beta {
        /// Comma-separated rational coordinates of the point.
        #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
        point: String,
    },
    /// Lift a plane curve to its conormal curve.
    Conormal {
        #[command(flatten)]
        input: CurveInput,
    },
    /// Push a plane curve's conormal lift forward into the contact space.
    Pushforward {
        #[command(flatten)]
        input: CurveInput,
    },
    /// Check the genericity hypotheses of one construction lemma on a plane
    /// curve.
    Genericity {
        #[command(flatten)]
        input: CurveInput,
        /// Which lemma's hypotheses to check.
        #[arg(long, value_parser = ["A", "B"])]
        lemma: String,
    },
    /// Certify that a parametrized variety is Legendrian for a contact form.
    Legendrian {
        #[command(flatten)]
        input: CurveInput,
        #[command(flatten)]
        form: FormChoice,
    },
    /// Certify osculating self-duality of a Legendrian variety.
    Selfdual {
        #[command(flatten)]
        input: CurveInput,
        #[command(flatten)]
        form: FormChoice,
    },
    /// Compute the osculating dual parametrization.
    Dualize {
        #[command(flatten)]
        input: CurveInput,
    },
    /// Measure a parametrized curve's image degree, or evaluate the closed
    /// degree formulas for a nodal plane curve.
    Degree {
        #[command(flatten)]
        input: DegreeInput,
        /// Plane-curve degree for the closed formulas.
        #[arg(long, requires = "g", conflicts_with_all = ["catalog", "curve"])]
        d: Option<u32>,
        /// Plane-curve genus for the closed formulas.
        #[arg(long, requires = "d", conflicts_with_all = ["catalog", "curve"])]
        g: Option<u32>,
    },
    /// Resolve a catalog address and print the entry with its invariants.
    Catalog {
        /// Catalog address: monomial:a,b,c | hypersurface:n:F | vfamily:k.
        #[arg(value_name = "ADDRESS")]
        address: String,
    },
    /// Verify the pullback and round-trip identities of the incidence maps.
    VerifyPullback {
        /// Half-dimension of the contact space.
        #[arg(long)]
        n: usize,
    },
}

/// Like `CurveInput` but optional, for the subcommand that also accepts the
/// closed formulas instead of a variety.
#[derive(Args)]
#[group(multiple = false)]
struct DegreeInput {
    /// Catalog address: monomial:a,b,c | hypersurface:n:F | vfamily:k.
    #[arg(long, value_name = "ADDRESS")]
    catalog: Option<String>,

    /// JSON variety file with fields params, coords, ambient_dim.
    #[arg(long, value_name = "FILE")]
    curve: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("oscdual: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<ExitCode, CliError> {
    match (&cli.suite, &cli.command) {
        (Some(_), Some(_)) => {
            Err(CliError::Usage("give either --suite or a subcommand, not both".into()))
        }
        (Some(path), None) => run_suite(path, cli.out.as_deref()),
        (None, Some(command)) => {
            let report = run_report(command);
            write_report(&report, cli.out.as_deref())?;
            Ok(report.exit_code())
        }
        (None, None) => Err(CliError::Usage("missing subcommand; see --help".into())),
    }
}

/// Runs one pipeline and wraps its outcome into a report. Module errors
/// become `error` verdicts here so a failing load still produces a report.
fn run_report(command: &Command) -> RunReport {
    let start = Instant::now();
    let mut inputs = BTreeMap::new();
    let outcome = run_command(command, &mut inputs)
        .unwrap_or_else(|e| Outcome::error(e.to_string()));
    RunReport {
        command: command_name(command).to_string(),
        inputs,
        verdict: outcome.verdict,
        residuals: outcome.residuals,
        data: outcome.data,
        timings_ms: start.elapsed().as_millis(),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Theta { .. } => "theta",
        Command::Beta { .. } => "beta",
        Command::Conormal { .. } => "conormal",
        Command::Pushforward { .. } => "pushforward",
        Command::Genericity { .. } => "genericity",
        Command::Legendrian { .. } => "legendrian",
        Command::Selfdual { .. } => "selfdual",
        Command::Dualize { .. } => "dualize",
        Command::Degree { .. } => "degree",
        Command::Catalog { .. } => "catalog",
        Command::VerifyPullback { .. } => "verify-pullback",
    }
}

fn run_command(
    command: &Command,
    inputs: &mut BTreeMap<String, String>,
) -> Result<Outcome, CliError> {
    match command {
        Command::Theta { x, y } => cmd_theta(x, y, inputs),
        Command::Beta { point } => cmd_beta(point, inputs),
        Command::Conormal { input } => cmd_conormal(input, inputs),
        Command::Pushforward { input } => cmd_pushforward(input, inputs),
        Command::Genericity { input, lemma } => cmd_genericity(input, lemma, inputs),
        Command::Legendrian { input, form } => cmd_legendrian(input, form, inputs),
        Command::Selfdual { input, form } => cmd_selfdual(input, form, inputs),
        Command::Dualize { input } => cmd_dualize(input, inputs),
        Command::Degree { input, d, g } => cmd_degree(input, *d, *g, inputs),
        Command::Catalog { address } => cmd_catalog(address, inputs),
        Command::VerifyPullback { n } => cmd_verify_pullback(*n, inputs),
    }
}

/// Resolves a curve input, echoing both the user-facing source and the
/// canonical parametrization into the inputs digest.
fn resolve_curve(
    catalog: &Option<String>,
    curve: &Option<PathBuf>,
    inputs: &mut BTreeMap<String, String>,
) -> Result<ParamVariety, CliError> {
    let x = match (catalog, curve) {
        (Some(address), None) => {
            inputs.insert("catalog".into(), address.clone());
            catalog_variety(address)?
        }
        (None, Some(path)) => {
            inputs.insert("curve".into(), path.display().to_string());
            load_variety(path)?
        }
        _ => return Err(CliError::Usage("give exactly one of --catalog or --curve".into())),
    };
    inputs.insert("params".into(), x.params().join(","));
    inputs.insert(
        "coords".into(),
        x.coords().iter().map(MultiPoly::to_string).collect::<Vec<_>>().join("; "),
    );
    enforce_degree_cap(&x)?;
    Ok(x)
}

fn point_value(p: &ProjPoint) -> Value {
    Value::Array(p.coords().iter().map(|c| Value::String(format_rational(c))).collect())
}

fn polys_value(polys: &[MultiPoly]) -> Value {
    Value::Array(polys.iter().map(|p| Value::String(p.to_string())).collect())
}

fn form_value(b: &SkewForm) -> Value {
    Value::Array(
        b.matrix()
            .iter()
            .map(|row| {
                Value::Array(row.iter().map(|e| Value::String(format_rational(e))).collect())
            })
            .collect(),
    )
}

fn variety_data(x: &ParamVariety, data: &mut BTreeMap<String, Value>) {
    data.insert("params".into(), json!(x.params()));
    data.insert("coords".into(), polys_value(x.coords()));
    data.insert("ambient_dim".into(), json!(x.ambient_dim()));
}

fn cmd_theta(
    x: &str,
    y: &str,
    inputs: &mut BTreeMap<String, String>,
) -> Result<Outcome, CliError> {
    inputs.insert("x".into(), x.to_string());
    inputs.insert("y".into(), y.to_string());
    let pair = IncidencePoint::new(parse_point(x)?, parse_point(y)?)?;
    let image = theta_point(&pair)?;
    let mut data = BTreeMap::new();
    data.insert("point".into(), point_value(&image));
    Ok(Outcome::pass(data))
}

fn cmd_beta(point: &str, inputs: &mut BTreeMap<String, String>) -> Result<Outcome, CliError> {
    inputs.insert("point".into(), point.to_string());
    let pair = beta_point(&parse_point(point)?)?;
    let mut data = BTreeMap::new();
    data.insert("x".into(), point_value(pair.x()));
    data.insert("y".into(), point_value(pair.y()));
    Ok(Outcome::pass(data))
}

fn cmd_conormal(
    input: &CurveInput,
    inputs: &mut BTreeMap<String, String>,
) -> Result<Outcome, CliError> {
    let c = resolve_curve(&input.catalog, &input.curve, inputs)?;
    let lift = conormal_lift(&c)?;
    let mut data = BTreeMap::new();
    data.insert("gamma".into(), polys_value(lift.gamma()));
    data.insert("ell".into(), polys_value(lift.ell()));
    data.insert("param".into(), json!(lift.param()));
    Ok(Outcome::pass(data))
}

fn cmd_pushforward(
    input: &CurveInput,
    inputs: &mut BTreeMap<String, String>,
) -> Result<Outcome, CliError> {
    let c = resolve_curve(&input.catalog, &input.curve, inputs)?;
    let push = theta_pushforward(&conormal_lift(&c)?)?;
    let mut data = BTreeMap::new();
    variety_data(&push, &mut data);
    Ok(Outcome::pass(data))
}

fn checks_value(checks: &[HypothesisCheck]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| {
                json!({
                    "index": c.index,
                    "chart": c.chart,
                    "description": c.description,
                    "passed": c.passed,
                    "witness": c.witness,
                })
            })
            .collect(),
    )
}

fn cmd_genericity(
    input: &CurveInput,
    lemma: &str,
    inputs: &mut BTreeMap<String, String>,
) -> Result<Outcome, CliError> {
    inputs.insert("lemma".into(), lemma.to_string());
    let c = resolve_curve(&input.catalog, &input.curve, inputs)?;
    let report = match lemma {
        "A" => genericity_a(&c)?,
        _ => genericity_b(&c)?,
    };
    let mut data = BTreeMap::new();
    data.insert("checks".into(), checks_value(&report.checks));
    let residuals = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| match &c.witness {
            Some(w) => format!(
                "hypothesis ({}) on chart {}: {} [witness {}]",
                c.index, c.chart, c.description, w
            ),
            None => format!("hypothesis ({}) on chart {}: {}", c.index, c.chart, c.description),
        })
        .collect();
    Ok(Outcome::certified(report.passed, residuals, data))
}

enum FormResolution {
    Form(SkewForm),
    NoneFound { solution_dim: usize },
}

/// Resolves `--form`. The chosen form's matrix lands in `data` so the report
/// pins down exactly which form was certified against.
fn resolve_form(
    choice: &str,
    x: &ParamVariety,
    data: &mut BTreeMap<String, Value>,
) -> Result<FormResolution, CliError> {
    match choice {
        "auto" => {
            let search = find_contact_form(x)?;
            data.insert("solution_dim".into(), json!(search.solution_dim));
            match search.form {
                Some(form) => {
                    data.insert("form".into(), form_value(&form));
                    Ok(FormResolution::Form(form))
                }
                None => Ok(FormResolution::NoneFound { solution_dim: search.solution_dim }),
            }
        }
        "standard" => {
            let size = x.coords().len();
            if !size.is_multiple_of(2) {
                return Err(ContactError::OddDimension(size).into());
            }
            let form = standard_b(size / 2)?;
            data.insert("form".into(), form_value(&form));
            Ok(FormResolution::Form(form))
        }
        path => {
            let form = load_skew_form(Path::new(path))?;
            data.insert("form".into(), form_value(&form));
            Ok(FormResolution::Form(form))
        }
    }
}

fn no_form_residual(solution_dim: usize) -> String {
    format!("no nondegenerate contact form (solution dim {solution_dim})")
}

fn cmd_legendrian(
    input: &CurveInput,
    form: &FormChoice,
    inputs: &mut BTreeMap<String, String>,
) -> Result<Outcome, CliError> {
    inputs.insert("form".into(), form.form.clone());
    let x = resolve_curve(&input.catalog, &input.curve, inputs)?;
    let mut data = BTreeMap::new();
    match resolve_form(&form.form, &x, &mut data)? {
        FormResolution::NoneFound { solution_dim } => {
            Ok(Outcome::fail(vec![no_form_residual(solution_dim)], data))
        }
        FormResolution::Form(b) => {
            let cert = legendrian_check(&x, &b)?;
            Ok(Outcome::certified(cert.passed, cert.residuals, data))
        }
    }
}

fn cmd_selfdual(
    input: &CurveInput,
    form: &FormChoice,
    inputs: &mut BTreeMap<String, String>,
) -> Result<Outcome, CliError> {
    inputs.insert("form".into(), form.form.clone());
    let x = resolve_curve(&input.catalog, &input.curve, inputs)?;
    let mut data = BTreeMap::new();
    match resolve_form(&form.form, &x, &mut data)? {
        FormResolution::NoneFound { solution_dim } => {
            Ok(Outcome::fail(vec![no_form_residual(solution_dim)], data))
        }
        FormResolution::Form(b) => {
            let report = selfdual_certificate(&x, &b)?;
            data.insert("legendrian".into(), json!(report.legendrian));
            data.insert("osc2_generic_dim".into(), json!(report.osc2_generic_dim));
            data.insert("in_hyperplane".into(), json!(report.in_hyperplane));
            data.insert("selfdual".into(), json!(report.selfdual));
            Ok(Outcome::certified(report.selfdual, report.residuals, data))
        }
    }
}

fn cmd_dualize(
    input: &CurveInput,
    inputs: &mut BTreeMap<String, String>,
) -> Result<Outcome, CliError> {
    let x = resolve_curve(&input.catalog, &input.curve, inputs)?;
    let dual = osculating_dual(&x)?;
    let mut data = BTreeMap::new();
    variety_data(&dual, &mut data);
    Ok(Outcome::pass(data))
}

fn cmd_degree(
    input: &DegreeInput,
    d: Option<u32>,
    g: Option<u32>,
    inputs: &mut BTreeMap<String, String>,
) -> Result<Outcome, CliError> {
    let mut data = BTreeMap::new();
    match (d, g) {
        (Some(d), Some(g)) => {
            inputs.insert("d".into(), d.to_string());
            inputs.insert("g".into(), g.to_string());
            let expected = expected_degrees(d, g)?;
            data.insert("nodes".into(), json!(expected.nodes));
            data.insert("dual_degree".into(), json!(expected.dual_degree));
            data.insert("legendrian_degree".into(), json!(expected.legendrian_degree));
        }
        _ => {
            if input.catalog.is_none() && input.curve.is_none() {
                return Err(CliError::Usage(
                    "give a curve (--catalog or --curve) or both --d and --g".into(),
                ));
            }
            let x = resolve_curve(&input.catalog, &input.curve, inputs)?;
            data.insert("degree".into(), json!(parametric_curve_degree(&x)?));
            data.insert("root_counts".into(), json!(degree_root_counts(&x)?));
        }
    }
    Ok(Outcome::pass(data))
}

fn cmd_catalog(address: &str, inputs: &mut BTreeMap<String, String>) -> Result<Outcome, CliError> {
    inputs.insert("address".into(), address.to_string());
    let entry = parse_address(address)?;
    let x = entry.variety()?;
    enforce_degree_cap(&x)?;
    let mut data = BTreeMap::new();
    variety_data(&x, &mut data);
    match &entry {
        CatalogEntry::Monomial(spec) => {
            let dual = monomial_dual_exponents(spec);
            data.insert("dual_exponents".into(), json!(dual.exponents));
            data.insert("symmetric".into(), json!(dual.symmetric));
            if let Some(form) = monomial_contact_form(spec) {
                data.insert("form".into(), form_value(&form));
            }
        }
        CatalogEntry::Hypersurface { f, .. } => {
            data.insert("f".into(), json!(f.to_string()));
        }
        CatalogEntry::VFamily { k } => {
            data.insert("form".into(), form_value(&v_family_contact_form(*k)?));
        }
    }
    Ok(Outcome::pass(data))
}

fn cmd_verify_pullback(
    n: usize,
    inputs: &mut BTreeMap<String, String>,
) -> Result<Outcome, CliError> {
    inputs.insert("n".into(), n.to_string());
    let report = verify_pullback(n)?;
    Ok(Outcome::certified(report.passed, report.residuals, BTreeMap::new()))
}

/// Parses one suite entry back through the top-level parser. Entries are
/// plain argument lists without the binary name and cannot nest `--suite`
/// or redirect with `--out`.
fn suite_entry_report(args: &[String]) -> RunReport {
    let argv = std::iter::once("oscdual".to_string()).chain(args.iter().cloned());
    let entry_error = |message: String| RunReport {
        command: "invalid".into(),
        inputs: BTreeMap::from([("args".to_string(), args.join(" "))]),
        verdict: Verdict::Error,
        residuals: vec![message],
        data: BTreeMap::new(),
        timings_ms: 0,
    };
    match Cli::try_parse_from(argv) {
        Ok(entry) => {
            if entry.suite.is_some() || entry.out.is_some() {
                return entry_error("suite entries cannot use --suite or --out".into());
            }
            match entry.command {
                Some(command) => run_report(&command),
                None => entry_error("suite entry names no subcommand".into()),
            }
        }
        Err(e) => {
            let line = e.to_string().lines().next().unwrap_or("invalid arguments").to_string();
            entry_error(line)
        }
    }
}

fn run_suite(path: &Path, out: Option<&Path>) -> Result<ExitCode, CliError> {
    let start = Instant::now();
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })?;
    let entries: Vec<Vec<String>> = serde_json::from_str(&text).map_err(|e| CliError::Json {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;

    let mut residuals = Vec::new();
    let mut reports = Vec::new();
    let mut verdict = Verdict::Pass;
    for (i, args) in entries.iter().enumerate() {
        let report = suite_entry_report(args);
        if report.verdict != Verdict::Pass {
            residuals.push(format!(
                "invocation {} ({}): {}",
                i,
                args.join(" "),
                report.verdict.label()
            ));
        }
        verdict = match (verdict, report.verdict) {
            (Verdict::Error, _) | (_, Verdict::Error) => Verdict::Error,
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            _ => Verdict::Pass,
        };
        reports.push(report);
    }

    let mut data = BTreeMap::new();
    data.insert("reports".into(), serde_json::to_value(&reports).expect("reports serialize"));
    let report = RunReport {
        command: "suite".into(),
        inputs: BTreeMap::from([
            ("suite".to_string(), path.display().to_string()),
            ("invocations".to_string(), entries.len().to_string()),
        ]),
        verdict,
        residuals,
        data,
        timings_ms: start.elapsed().as_millis(),
    };
    write_report(&report, out)?;
    Ok(report.exit_code())
}
