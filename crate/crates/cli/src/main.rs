//! `orthogen` — expand, fit, classify, identify, verify, and tabulate
//! polynomial families defined by generating functions with a quadratic
//! argument. All values cross the boundary as exact `"p/q"` strings.
//!
//! Exit codes: 0 for success or an accepted verdict, 2 for a rejected
//! verdict or a failed verification, 1 for usage errors and crashes.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use orthogen::classify::{classify, identify_from_recursion, Verdict};
use orthogen::exact::{parse_rational, Rational};
use orthogen::families::{moment_oracle, polys_from_recursion, recursion_of, FamilyId};
use orthogen::favard::{fit, Recursion};
use orthogen::genfun::{expand, CoeffRule, GFSpec, MonicFamily, NamedRule};
use orthogen::orthocheck::verify_orthogonality;
use orthogen::schema::{
    FamilyIdWire, FamilyPolysWire, GFSpecWire, RecursionWire, ReportWire, TableWire, VerdictWire,
};

const DEFAULT_ORDER: usize = 12;

#[derive(Parser)]
#[command(
    name = "orthogen",
    about = "Exact expansion and classification of orthogonal polynomial families from quadratic-argument generating functions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand F(xz - alpha z^2) into a monic polynomial table P_0..P_N
    Expand(GfArgs),
    /// Fit the three-term recursion of a family (from a file or from expansion flags)
    Fit(FitArgs),
    /// Classify a coefficient rule: which orthogonal family, if any
    Classify(GfArgs),
    /// Identify the family behind given recursion coefficients
    Identify(IdentifyArgs),
    /// Verify orthogonality of a named family or an expanded rule through exact Gram matrices
    Verify(VerifyArgs),
    /// Print recursion, polynomials, and moments of a named reference family
    Table(TableArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct RuleArgs {
    /// Coefficient rule: abc, explicit, named:exp, named:geometric, or named:log
    #[arg(long)]
    rule: Option<String>,
    /// Parameter a (abc and named:exp rules)
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Parameter b (abc, named:geometric, named:log rules)
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Parameter c (abc rules)
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Comma-separated coefficients for explicit rules, e.g. "1,1,1/2"
    #[arg(long, allow_hyphen_values = true)]
    values: Option<String>,
}

#[derive(Args)]
struct GfArgs {
    #[command(flatten)]
    rule: RuleArgs,
    /// Quadratic parameter alpha as an exact rational
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Truncation order N
    #[arg(long)]
    order: Option<usize>,
    /// Read the flags from a generating-function JSON file instead
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Append decimal renderings next to exact values (text format only)
    #[arg(long)]
    approx: bool,
}

#[derive(Args)]
struct FitArgs {
    #[command(flatten)]
    gf: GfArgs,
}

#[derive(Args)]
struct IdentifyArgs {
    /// Recursion JSON file ({"betas": [...], "omegas": [...]})
    #[arg(long)]
    input: Option<PathBuf>,
    /// Comma-separated beta coefficients
    #[arg(long, allow_hyphen_values = true)]
    betas: Option<String>,
    /// Comma-separated omega coefficients (omega_1 first)
    #[arg(long, allow_hyphen_values = true)]
    omegas: Option<String>,
    /// Quadratic parameter alpha as an exact rational
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FamilyArgs {
    /// Reference family: hermite, charlier, legendre, ultraspherical, chebyshev_t, chebyshev_u
    #[arg(long)]
    family: String,
    /// Ultraspherical parameter lambda (> -1/2, nonzero)
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Reference family name (alternative to rule flags)
    #[arg(long)]
    family: Option<String>,
    /// Ultraspherical parameter lambda
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[command(flatten)]
    rule: RuleArgs,
    /// Quadratic parameter alpha (rule-based verification)
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Family order N to verify
    #[arg(long)]
    order: Option<usize>,
    /// Generating-function JSON file (alternative to rule flags)
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Table order N
    #[arg(long)]
    order: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

/// Usage-level failure: message to stderr, exit 1.
struct UsageError(String);

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version go to stdout with success, true usage errors to
            // stderr with exit 1 (clap's own default of 2 collides with the
            // rejected-verdict code)
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let outcome = match cli.command {
        Command::Expand(args) => run_expand(args),
        Command::Fit(args) => run_fit(args),
        Command::Classify(args) => run_classify(args),
        Command::Identify(args) => run_identify(args),
        Command::Verify(args) => run_verify(args),
        Command::Table(args) => run_table(args),
    };
    match outcome {
        Ok(code) => code,
        Err(UsageError(message)) => {
            eprintln!("{}", error_json(&message));
            ExitCode::from(1)
        }
    }
}

fn error_json(message: &str) -> String {
    serde_json::json!({ "error": message }).to_string()
}

fn parse_rat_flag(name: &str, value: &str) -> Result<Rational, UsageError> {
    parse_rational(value).map_err(|e| UsageError(format!("--{name}: {e}")))
}

fn parse_rat_list(name: &str, value: &str) -> Result<Vec<Rational>, UsageError> {
    let trimmed = value.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|part| parse_rat_flag(name, part.trim()))
        .collect()
}

fn rule_from_args(args: &RuleArgs) -> Result<CoeffRule, UsageError> {
    let kind = args
        .rule
        .as_deref()
        .ok_or_else(|| UsageError("--rule is required (abc, explicit, or named:<name>)".into()))?;
    let need = |name: &str, value: &Option<String>| -> Result<Rational, UsageError> {
        let raw = value
            .as_deref()
            .ok_or_else(|| UsageError(format!("rule {kind} requires --{name}")))?;
        parse_rat_flag(name, raw)
    };
    let rule = match kind {
        "abc" => CoeffRule::Abc {
            a: need("a", &args.a)?,
            b: need("b", &args.b)?,
            c: need("c", &args.c)?,
        },
        "explicit" => {
            let raw = args
                .values
                .as_deref()
                .ok_or_else(|| UsageError("rule explicit requires --values".into()))?;
            CoeffRule::Explicit(parse_rat_list("values", raw)?)
        }
        "named:exp" => CoeffRule::Named(NamedRule::Exp {
            a: need("a", &args.a)?,
        }),
        "named:geometric" => CoeffRule::Named(NamedRule::Geometric {
            b: need("b", &args.b)?,
        }),
        "named:log" => CoeffRule::Named(NamedRule::Log {
            b: need("b", &args.b)?,
        }),
        other => {
            return Err(UsageError(format!(
                "unknown rule {other:?}; expected abc, explicit, named:exp, named:geometric, or named:log"
            )))
        }
    };
    rule.validate()?;
    Ok(rule)
}

fn read_gfspec_file(path: &PathBuf) -> Result<GFSpecWire, UsageError> {
    let text =
        fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

/// Rule, alpha, and order from `--input` (with `--alpha`/`--order` flags
/// overriding the file) or from the rule flags alone.
fn rule_alpha_order(args: &GfArgs) -> Result<(CoeffRule, Rational, usize), UsageError> {
    if let Some(path) = &args.input {
        let wire = read_gfspec_file(path)?;
        let rule = CoeffRule::try_from(&wire.rule)?;
        let alpha = match &args.alpha {
            Some(raw) => parse_rat_flag("alpha", raw)?,
            None => parse_rat_flag("alpha", &wire.alpha)?,
        };
        return Ok((rule, alpha, args.order.unwrap_or(wire.order)));
    }
    let rule = rule_from_args(&args.rule)?;
    let alpha_raw = args
        .alpha
        .as_deref()
        .ok_or_else(|| UsageError("--alpha is required".into()))?;
    let alpha = parse_rat_flag("alpha", alpha_raw)?;
    Ok((rule, alpha, args.order.unwrap_or(DEFAULT_ORDER)))
}

fn gfspec_from_args(args: &GfArgs) -> Result<GFSpec, UsageError> {
    let (rule, alpha, order) = rule_alpha_order(args)?;
    Ok(GFSpec::new(rule, alpha, order)?)
}

fn family_id_from_parts(family: &str, lambda: Option<&str>) -> Result<FamilyId, UsageError> {
    let wire = FamilyIdWire {
        family: family.to_owned(),
        lambda: lambda.map(str::to_owned),
    };
    let id = FamilyId::try_from(&wire)?;
    id.validate()?;
    Ok(id)
}

/// Renders a rational, optionally with a decimal reading appended.
fn show_rat(r: &Rational, approx: bool) -> String {
    match (approx, r.to_f64()) {
        (true, Some(f)) if !num_traits::One::is_one(r.denom()) => format!("{r} ~ {f}"),
        _ => r.to_string(),
    }
}

fn emit(payload: String) -> ExitCode {
    println!("{payload}");
    ExitCode::SUCCESS
}

fn run_expand(args: GfArgs) -> Result<ExitCode, UsageError> {
    let spec = gfspec_from_args(&args)?;
    let family = expand(&spec)?;
    let rendered = match args.output.format {
        Format::Json => serde_json::to_string(&FamilyPolysWire::from(&family))?,
        Format::Csv => {
            let mut out = String::from("n,polynomial");
            for (n, p) in family.polys().iter().enumerate() {
                write!(out, "\n{n},{p}").unwrap();
            }
            out
        }
        Format::Text => {
            let lines: Vec<String> = family
                .polys()
                .iter()
                .enumerate()
                .map(|(n, p)| format!("P_{n}(x) = {p}"))
                .collect();
            lines.join("\n")
        }
    };
    Ok(emit(rendered))
}

fn recursion_payload(rec: &Recursion, output: &OutputArgs) -> Result<String, UsageError> {
    Ok(match output.format {
        Format::Json => serde_json::to_string(&RecursionWire::from(rec))?,
        Format::Csv => {
            let mut out = String::from("n,beta,omega");
            for (n, beta) in rec.betas().iter().enumerate() {
                let omega = if n >= 1 {
                    rec.omega(n).to_string()
                } else {
                    String::new()
                };
                write!(out, "\n{n},{beta},{omega}").unwrap();
            }
            out
        }
        Format::Text => {
            let mut lines = Vec::new();
            for (n, beta) in rec.betas().iter().enumerate() {
                lines.push(format!("beta_{n} = {}", show_rat(beta, output.approx)));
            }
            for n in 1..=rec.omegas().len() {
                lines.push(format!("omega_{n} = {}", show_rat(rec.omega(n), output.approx)));
            }
            lines.join("\n")
        }
    })
}

fn run_fit(args: FitArgs) -> Result<ExitCode, UsageError> {
    // --input may hold a family produced by `expand` or a generating-function
    // request; flags mean expand-then-fit.
    let family: MonicFamily = if let Some(path) = &args.gf.input {
        let text = fs::read_to_string(path)
            .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        if let Ok(wire) = serde_json::from_str::<FamilyPolysWire>(&text) {
            MonicFamily::try_from(&wire)?
        } else {
            let wire: GFSpecWire = serde_json::from_str(&text)?;
            expand(&GFSpec::try_from(&wire)?)?
        }
    } else {
        expand(&gfspec_from_args(&args.gf)?)?
    };
    let rec = fit(&family)?;
    Ok(emit(recursion_payload(&rec, &args.gf.output)?))
}

fn verdict_payload(verdict: &Verdict, output: &OutputArgs) -> Result<String, UsageError> {
    let wire = VerdictWire::from(verdict);
    Ok(match output.format {
        Format::Json => serde_json::to_string(&wire)?,
        Format::Csv => {
            let cell = |v: Option<String>| v.unwrap_or_default();
            format!(
                "family,a,lambda,b,scale_sq,reason,index\n{},{},{},{},{},{},{}",
                wire.family,
                cell(wire.a),
                cell(wire.lambda),
                cell(wire.b),
                cell(wire.scale_sq),
                cell(wire.reason),
                wire.index.map(|i| i.to_string()).unwrap_or_default()
            )
        }
        Format::Text => {
            let mut lines = vec![format!("family: {}", wire.family)];
            let approx = |s: &str| match parse_rational(s) {
                Ok(r) => show_rat(&r, output.approx),
                Err(_) => s.to_owned(),
            };
            if let Some(a) = &wire.a {
                lines.push(format!("a: {}", approx(a)));
            }
            if let Some(lambda) = &wire.lambda {
                lines.push(format!("lambda: {}", approx(lambda)));
            }
            if let Some(b) = &wire.b {
                lines.push(format!("b: {}", approx(b)));
            }
            if let Some(scale_sq) = &wire.scale_sq {
                lines.push(format!("scale_sq: {}", approx(scale_sq)));
            }
            if let Some(reason) = &wire.reason {
                lines.push(format!("reason: {reason}"));
            }
            if let Some(index) = wire.index {
                lines.push(format!("index: {index}"));
            }
            lines.join("\n")
        }
    })
}

fn verdict_exit(verdict: &Verdict) -> ExitCode {
    if verdict.is_accepted() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn run_classify(args: GfArgs) -> Result<ExitCode, UsageError> {
    // No expansion happens here, so alpha = 0 is a classifiable input (it is
    // rejected with a verdict) rather than a usage error.
    let (rule, alpha, order) = rule_alpha_order(&args)?;
    let verdict = classify(&rule, &alpha, order)?;
    println!("{}", verdict_payload(&verdict, &args.output)?);
    Ok(verdict_exit(&verdict))
}

fn run_identify(args: IdentifyArgs) -> Result<ExitCode, UsageError> {
    let rec: Recursion = if let Some(path) = &args.input {
        let text = fs::read_to_string(path)
            .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        let wire: RecursionWire = serde_json::from_str(&text)?;
        Recursion::try_from(&wire)?
    } else {
        let betas = args
            .betas
            .as_deref()
            .ok_or_else(|| UsageError("identify needs --input or --betas/--omegas".into()))?;
        let omegas = args
            .omegas
            .as_deref()
            .ok_or_else(|| UsageError("identify needs --input or --betas/--omegas".into()))?;
        Recursion::new(
            parse_rat_list("betas", betas)?,
            parse_rat_list("omegas", omegas)?,
        )?
    };
    let alpha = parse_rat_flag("alpha", &args.alpha)?;
    let verdict = identify_from_recursion(&rec, &alpha)?;
    println!("{}", verdict_payload(&verdict, &args.output)?);
    Ok(verdict_exit(&verdict))
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, UsageError> {
    // The verification needs omega_1..omega_N, one more than a fit of the
    // order-N family yields, so both paths produce the recursion at N + 1.
    let (family, rec) = if let Some(name) = &args.family {
        let order = args.order.unwrap_or(DEFAULT_ORDER);
        let id = family_id_from_parts(name, args.lambda.as_deref())?;
        let rec = recursion_of(&id, order + 1)?;
        let family = polys_from_recursion(&rec, order)?;
        (family, rec)
    } else {
        let (rule, alpha, order) = if let Some(path) = &args.input {
            let wire = read_gfspec_file(path)?;
            (
                CoeffRule::try_from(&wire.rule)?,
                parse_rat_flag("alpha", &wire.alpha)?,
                args.order.unwrap_or(wire.order),
            )
        } else {
            let rule = rule_from_args(&args.rule)?;
            let alpha_raw = args
                .alpha
                .as_deref()
                .ok_or_else(|| UsageError("--alpha is required with rule flags".into()))?;
            (
                rule,
                parse_rat_flag("alpha", alpha_raw)?,
                args.order.unwrap_or(DEFAULT_ORDER),
            )
        };
        let full = expand(&GFSpec::new(rule, alpha, order + 1)?)?;
        let rec = fit(&full)?;
        (full.truncate(order), rec)
    };
    let report = verify_orthogonality(&family, &rec)?;
    let wire = ReportWire::from(&report);
    let rendered = match args.output.format {
        Format::Json => serde_json::to_string(&wire)?,
        Format::Csv => {
            let mut out = String::from("field,value");
            write!(out, "\npass,{}", wire.pass).unwrap();
            if let Some(order) = wire.order {
                write!(out, "\norder,{order}").unwrap();
            }
            if let Some(diag) = &wire.diagonal {
                for (n, value) in diag.iter().enumerate() {
                    write!(out, "\nnorm_{n},{value}").unwrap();
                }
            }
            if let Some((j, k)) = wire.first_failure {
                write!(out, "\nfirst_failure,({j} {k})").unwrap();
            }
            if let Some(value) = &wire.value {
                write!(out, "\nvalue,{value}").unwrap();
            }
            out
        }
        Format::Text => {
            let mut lines = vec![format!("pass: {}", wire.pass)];
            if let Some(order) = wire.order {
                lines.push(format!("order: {order}"));
            }
            if let Some(diag) = &wire.diagonal {
                for (n, value) in diag.iter().enumerate() {
                    let shown = parse_rational(value)
                        .map(|r| show_rat(&r, args.output.approx))
                        .unwrap_or_else(|_| value.clone());
                    lines.push(format!("<P_{n}, P_{n}> = {shown}"));
                }
            }
            if let Some((j, k)) = wire.first_failure {
                lines.push(format!("first_failure: ({j}, {k})"));
            }
            if let Some(value) = &wire.value {
                lines.push(format!("value: {value}"));
            }
            lines.join("\n")
        }
    };
    println!("{rendered}");
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn run_table(args: TableArgs) -> Result<ExitCode, UsageError> {
    let order = args.order.unwrap_or(DEFAULT_ORDER);
    let id = family_id_from_parts(&args.family.family, args.family.lambda.as_deref())?;
    let rec = recursion_of(&id, order)?;
    let family = polys_from_recursion(&rec, order)?;
    let moments: Vec<Rational> = (0..=order).map(|k| moment_oracle(&id, k)).collect();
    let id_wire = FamilyIdWire::from(&id);
    let rec_wire = RecursionWire::from(&rec);
    let family_wire = FamilyPolysWire::from(&family);
    let rendered = match args.output.format {
        Format::Json => {
            let wire = TableWire {
                family: id_wire.family,
                lambda: id_wire.lambda,
                order,
                betas: rec_wire.betas,
                omegas: rec_wire.omegas,
                polys: family_wire.polys,
                moments: orthogen::schema::moment_strings(&moments),
            };
            serde_json::to_string(&wire)?
        }
        Format::Csv => {
            let mut out = String::from("n,beta,omega,polynomial,moment");
            for (n, moment) in moments.iter().enumerate() {
                let beta = rec
                    .betas()
                    .get(n)
                    .map(ToString::to_string)
                    .unwrap_or_default();
                let omega = if (1..=rec.omegas().len()).contains(&n) {
                    rec.omega(n).to_string()
                } else {
                    String::new()
                };
                write!(out, "\n{n},{beta},{omega},{},{moment}", family.poly(n)).unwrap();
            }
            out
        }
        Format::Text => {
            let approx = args.output.approx;
            let mut lines = vec![format!(
                "family: {}{}",
                id_wire.family,
                id_wire
                    .lambda
                    .as_deref()
                    .map(|l| format!(" (lambda = {l})"))
                    .unwrap_or_default()
            )];
            for (n, beta) in rec.betas().iter().enumerate() {
                lines.push(format!("beta_{n} = {}", show_rat(beta, approx)));
            }
            for n in 1..=rec.omegas().len() {
                lines.push(format!("omega_{n} = {}", show_rat(rec.omega(n), approx)));
            }
            for (n, p) in family.polys().iter().enumerate() {
                lines.push(format!("P_{n}(x) = {p}"));
            }
            for (k, m) in moments.iter().enumerate() {
                lines.push(format!("m_{k} = {}", show_rat(m, approx)));
            }
            lines.join("\n")
        }
    };
    Ok(emit(rendered))
}
