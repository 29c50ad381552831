//! Command-line front end.
//!
//! Every command produces one report, as JSON or as an aligned table, on
//! stdout or into `--output FILE`. Exit status is 0 when every verification
//! line passes, 1 when any reports a discrepancy, and 2 on usage errors.
//! Identical invocations (including `--seed`) produce byte-identical
//! output.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::boltzmann::{gibbs_series, gibbs_symbolic, gibbs_wp_normalized, symbolic_exponential, EnergeticSet};
use crate::error::{Error, Result};
use crate::fgl::FormalGroupLaw;
use crate::json::{bivariate_to_json, fgl_to_json, series_to_json};
use crate::prob::Distribution;
use crate::rational::Rational;
use crate::ring::{PolyRing, Rationals, Ring};
use crate::series::TruncatedSeries;
use crate::symfun::{complete_gf, elementary_gf, power_sum_gf, Alphabet};
use crate::universal::{specialize_bivariate, specialize_series, UniversalContext};
use crate::verify::{run_suite, Suite, SuiteConfig, VerificationItem};

const DEFAULT_ORDER: usize = 12;
/// Symbolic bivariate work defaults lower: coefficients are polynomials.
const DEFAULT_SYMBOLIC_ORDER: usize = 5;

#[derive(Parser, Debug)]
#[command(
    name = "fglab",
    version,
    about = "Exact formal group laws over the rationals",
    disable_help_subcommand = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Truncation order (default 12; 5 for the universal command)
    #[arg(long, global = true)]
    pub order: Option<usize>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Report doubled (topological) degrees in symbolic tables
    #[arg(long, global = true)]
    pub topological: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The multiplicative law x + y - xy with its exp/log pair
    Gm,
    /// The universal law over Q[CP_*], its modulus, and the Cartier character
    Universal(UniversalArgs),
    /// The Boltzmann law of a finite energy spectrum
    Boltzmann(BoltzmannArgs),
    /// The law, cumulant series, and modulus of a distribution
    Dist(DistArgs),
    /// The Gibbs free-energy series of a spectrum
    Gibbs(GibbsArgs),
    /// Symmetric-function generating series of an alphabet
    Symfun(SymfunArgs),
    /// Run a named verification suite
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct UniversalArgs {
    /// Specialize every generator to one value, e.g. CP=1 or CP=0
    #[arg(long)]
    pub spec: Option<String>,
    /// What to emit (comma-separated)
    #[arg(long, value_delimiter = ',', default_values_t = [UniversalEmit::Log, UniversalEmit::Law])]
    pub emit: Vec<UniversalEmit>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UniversalEmit {
    Log,
    Law,
    St,
    Cartier,
}

impl std::fmt::Display for UniversalEmit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = clap::ValueEnum::to_possible_value(self).expect("no skipped variants");
        write!(f, "{}", v.get_name())
    }
}

#[derive(Args, Debug)]
pub struct BoltzmannArgs {
    /// Energy levels, strictly increasing positive rationals: 1,3/2,2
    #[arg(long, required_unless_present = "symbolic")]
    pub levels: Option<String>,
    /// Emit the symbolic exponential over Q[p_*] instead
    #[arg(long)]
    pub symbolic: bool,
}

#[derive(Args, Debug)]
pub struct DistArgs {
    /// Distribution kind: poisson, bernoulli, or finite
    #[arg(long, requires = "param", conflicts_with = "dist")]
    pub kind: Option<String>,
    /// Parameter: a rational, or v1@w1,v2@w2 for finite support
    #[arg(long, requires = "kind")]
    pub param: Option<String>,
    /// Literal form kind:parameters, e.g. poisson:1 or finite:1@1/2,2@1/2
    #[arg(long)]
    pub dist: Option<String>,
    /// What to emit (comma-separated)
    #[arg(long, value_delimiter = ',', default_values_t = [DistEmit::Law])]
    pub emit: Vec<DistEmit>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DistEmit {
    Moments,
    Mgf,
    Exp,
    Law,
    St,
    Kappa,
    Intertwining,
}

impl std::fmt::Display for DistEmit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = clap::ValueEnum::to_possible_value(self).expect("no skipped variants");
        write!(f, "{}", v.get_name())
    }
}

#[derive(Args, Debug)]
pub struct GibbsArgs {
    /// Energy levels for the numeric form
    #[arg(long)]
    pub levels: Option<String>,
    /// Emit only the symbolic form over Q[p_*]
    #[arg(long)]
    pub symbolic: bool,
    /// Also emit the wp-normalized rewriting over Q[wp_*, p_1]
    #[arg(long)]
    pub normalized: bool,
}

#[derive(Args, Debug)]
pub struct SymfunArgs {
    /// Alphabet values: 1,2 or 1/2,3,5/2
    #[arg(long)]
    pub alphabet: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite: all, engine, symfun, prob, boltzmann, universal, cartier
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Seed for the randomized items
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

/// Parses argv and runs; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(all_pass) => {
            if all_pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// A rendered report: the JSON result plus its verification lines.
struct Report {
    command: &'static str,
    order: usize,
    result: Value,
    verification: Vec<VerificationItem>,
    /// Table-format body lines, already aligned.
    table: Vec<String>,
}

fn run(cli: Cli) -> Result<bool> {
    let report = match &cli.command {
        Command::Gm => run_gm(&cli),
        Command::Universal(args) => run_universal(&cli, args),
        Command::Boltzmann(args) => run_boltzmann(&cli, args),
        Command::Dist(args) => run_dist(&cli, args),
        Command::Gibbs(args) => run_gibbs(&cli, args),
        Command::Symfun(args) => run_symfun(&cli, args),
        Command::Verify(args) => run_verify(&cli, args),
    }?;

    let all_pass = report.verification.iter().all(|v| v.pass);
    let rendered = match cli.format {
        Format::Json => {
            let verification: Vec<Value> = report
                .verification
                .iter()
                .map(|v| {
                    json!({
                        "name": v.name,
                        "pass": v.pass,
                        "first_discrepancy": v.first_discrepancy,
                    })
                })
                .collect();
            let doc = json!({
                "command": report.command,
                "order": report.order,
                "result": report.result,
                "verification": verification,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
        Format::Table => {
            let mut lines = Vec::new();
            lines.push(format!("fglab {} (order {})", report.command, report.order));
            lines.extend(report.table);
            if !report.verification.is_empty() {
                lines.push(String::new());
                lines.push("verification:".to_string());
                for v in &report.verification {
                    match (&v.pass, &v.first_discrepancy) {
                        (true, _) => lines.push(format!("  PASS  {}", v.name)),
                        (false, Some(d)) => lines.push(format!("  FAIL  {}  ({d})", v.name)),
                        (false, None) => lines.push(format!("  FAIL  {}", v.name)),
                    }
                }
            }
            let mut s = lines.join("\n");
            s.push('\n');
            s
        }
    };

    match &cli.output {
        None => {
            print!("{rendered}");
            std::io::stdout().flush().map_err(|e| Error::Io(e.to_string()))?;
        }
        Some(path) => {
            std::fs::write(path, rendered.as_bytes())
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(all_pass)
}

fn axiom_items<R: Ring>(law: &FormalGroupLaw<R>) -> Vec<VerificationItem> {
    let report = law.check_axioms();
    vec![
        VerificationItem::from_check("axiom/unit", &report.unit),
        VerificationItem::from_check("axiom/commutativity", &report.commutativity),
        VerificationItem::from_check("axiom/associativity", &report.associativity),
    ]
}

fn run_gm(cli: &Cli) -> Result<Report> {
    let order = cli.order.unwrap_or(DEFAULT_ORDER);
    let law = FormalGroupLaw::multiplicative(&Rationals, order);
    let mut table = Vec::new();
    table.extend(series_table("exp", law.exponential(), cli));
    table.extend(series_table("log", law.logarithm(), cli));
    table.extend(law_table(&law, cli));
    Ok(Report {
        command: "gm",
        order,
        result: fgl_to_json(&law),
        verification: axiom_items(&law),
        table,
    })
}

fn parse_spec(spec: &str) -> Result<Rational> {
    let (name, value) = spec
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("`{spec}` is not of the form CP=value")))?;
    if name != "CP" {
        return Err(Error::Parse(format!(
            "only CP=value specializations are supported, got `{name}`"
        )));
    }
    value.parse()
}

fn run_universal(cli: &Cli, args: &UniversalArgs) -> Result<Report> {
    let order = cli.order.unwrap_or(DEFAULT_SYMBOLIC_ORDER);
    let spec = args.spec.as_deref().map(parse_spec).transpose()?;
    let mut result = serde_json::Map::new();
    let mut table = Vec::new();
    let mut verification = Vec::new();

    for emit in &args.emit {
        match emit {
            UniversalEmit::Log => {
                let log = UniversalContext::new(order).log();
                match &spec {
                    None => {
                        table.extend(symbolic_series_table("log", &log, cli));
                        result.insert("log".into(), series_to_json(&log));
                    }
                    Some(v) => {
                        let s = specialize_series(&log, v)?;
                        table.extend(series_table("log", &s, cli));
                        result.insert("log".into(), series_to_json(&s));
                    }
                }
            }
            UniversalEmit::Law => {
                let law = UniversalContext::new(order).law()?;
                match &spec {
                    None => {
                        table.extend(law_table(&law, cli));
                        result.insert("law".into(), fgl_to_json(&law));
                        verification.extend(axiom_items(&law));
                    }
                    Some(v) => {
                        let b = specialize_bivariate(law.law(), v)?;
                        table.extend(bivariate_table("law", &b, cli));
                        result.insert("law".into(), bivariate_to_json(&b));
                    }
                }
            }
            UniversalEmit::St => {
                let st = UniversalContext::new(order).with_b().st_modulus()?;
                match &spec {
                    None => {
                        table.extend(symbolic_series_table("st", &st, cli));
                        result.insert("st".into(), series_to_json(&st));
                    }
                    Some(v) => {
                        let s = specialize_series(&st, v)?;
                        table.extend(series_table("st", &s, cli));
                        result.insert("st".into(), series_to_json(&s));
                    }
                }
            }
            UniversalEmit::Cartier => {
                let cartier = UniversalContext::new(order).with_beta().cartier_character()?;
                table.extend(symbolic_series_table("cartier", &cartier.series, cli));
                result.insert("cartier".into(), series_to_json(&cartier.series));
                verification.push(VerificationItem::from_check(
                    "cartier/multiplicativity",
                    &cartier.multiplicativity,
                ));
                verification.push(VerificationItem::from_check(
                    "cartier/log-identity",
                    &cartier.log_identity,
                ));
            }
        }
    }

    Ok(Report {
        command: "universal",
        order,
        result: Value::Object(result),
        verification,
        table,
    })
}

fn run_boltzmann(cli: &Cli, args: &BoltzmannArgs) -> Result<Report> {
    let order = cli.order.unwrap_or(DEFAULT_ORDER);
    let mut result = serde_json::Map::new();
    let mut table = Vec::new();
    let mut verification = Vec::new();

    if args.symbolic {
        let exp = symbolic_exponential(order);
        table.extend(symbolic_series_table("exp_BE (symbolic)", &exp, cli));
        result.insert("symbolic".into(), series_to_json(&exp));
    }
    if let Some(levels) = &args.levels {
        let set = EnergeticSet::parse(levels)?;
        let law = set.formal_group_law(order)?;
        table.extend(series_table("exp_BE", law.exponential(), cli));
        table.extend(law_table(&law, cli));
        result.insert("exponential".into(), series_to_json(law.exponential()));
        result.insert("law".into(), fgl_to_json(&law));
        verification.extend(axiom_items(&law));
    }

    Ok(Report {
        command: "boltzmann",
        order,
        result: Value::Object(result),
        verification,
        table,
    })
}

fn run_dist(cli: &Cli, args: &DistArgs) -> Result<Report> {
    let order = cli.order.unwrap_or(DEFAULT_ORDER);
    let dist = match (&args.dist, &args.kind, &args.param) {
        (Some(literal), None, None) => Distribution::parse(literal)?,
        (None, Some(kind), Some(param)) => Distribution::from_kind_and_param(kind, param)?,
        _ => {
            return Err(Error::InvalidArgument(
                "specify either --dist KIND:PARAM or --kind KIND --param PARAM".into(),
            ))
        }
    };

    let mut result = serde_json::Map::new();
    let mut table = Vec::new();
    let mut verification = Vec::new();

    for emit in &args.emit {
        match emit {
            DistEmit::Moments => {
                let m = dist.moments(order);
                let values: Vec<Value> = m
                    .moments()
                    .iter()
                    .map(|q| Value::String(q.to_string()))
                    .collect();
                table.push(format!(
                    "moments: {}",
                    m.moments()
                        .iter()
                        .map(|q| q.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
                result.insert("moments".into(), Value::Array(values));
            }
            DistEmit::Mgf => {
                let m = dist.mgf(order);
                table.extend(series_table("mgf", &m, cli));
                result.insert("mgf".into(), series_to_json(&m));
            }
            DistEmit::Exp => {
                let e = dist.exponential(order);
                table.extend(series_table("exp", &e, cli));
                result.insert("exp".into(), series_to_json(&e));
            }
            DistEmit::Law => {
                let law = dist.formal_group_law(order)?;
                table.extend(law_table(&law, cli));
                result.insert("law".into(), fgl_to_json(&law));
                verification.extend(axiom_items(&law));
            }
            DistEmit::St => {
                let st = dist.st_modulus(order)?;
                table.extend(series_table("st", &st, cli));
                result.insert("st".into(), series_to_json(&st));
            }
            DistEmit::Kappa => {
                let kappa = dist.cumulant_series(order)?;
                table.extend(series_table("kappa", &kappa, cli));
                result.insert("kappa".into(), series_to_json(&kappa));
            }
            DistEmit::Intertwining => {
                let report = dist.intertwining_report(order)?;
                verification.push(VerificationItem::from_check(
                    "intertwining/kappa",
                    &report.kappa_identity,
                ));
                verification.push(VerificationItem::from_check(
                    "intertwining/st",
                    &report.st_identity,
                ));
            }
        }
    }

    Ok(Report {
        command: "dist",
        order,
        result: Value::Object(result),
        verification,
        table,
    })
}

fn run_gibbs(cli: &Cli, args: &GibbsArgs) -> Result<Report> {
    let order = cli.order.unwrap_or(DEFAULT_ORDER);
    let mut result = serde_json::Map::new();
    let mut table = Vec::new();
    let mut verification = Vec::new();

    if !args.symbolic && args.levels.is_none() {
        return Err(Error::InvalidArgument(
            "gibbs needs --levels for the numeric form or --symbolic".into(),
        ));
    }

    let symbolic = gibbs_symbolic(order);
    table.extend(symbolic_series_table("gibbs", &symbolic, cli));
    result.insert("symbolic".into(), series_to_json(&symbolic));

    if let Some(levels) = &args.levels {
        let set = EnergeticSet::parse(levels)?;
        let g = gibbs_series(&set, order);
        table.extend(series_table("gibbs(levels)", &g.numeric, cli));
        result.insert("numeric".into(), series_to_json(&g.numeric));
        verification.push(VerificationItem::from_bool(
            "gibbs/numeric-symbolic-consistency",
            g.is_consistent_with(&set),
            "numeric form is not the symbolic form at the power sums",
        ));
    }

    if args.normalized {
        let normalized = gibbs_wp_normalized(order)?;
        table.extend(symbolic_series_table("gibbs(wp)", &normalized, cli));
        result.insert("normalized".into(), series_to_json(&normalized));
    }

    Ok(Report {
        command: "gibbs",
        order,
        result: Value::Object(result),
        verification,
        table,
    })
}

fn run_symfun(cli: &Cli, args: &SymfunArgs) -> Result<Report> {
    let order = cli.order.unwrap_or(DEFAULT_ORDER);
    let values = args
        .alphabet
        .split(',')
        .map(|part| part.trim().parse::<Rational>())
        .collect::<Result<Vec<_>>>()?;
    let alphabet = Alphabet::new(values);

    let e = elementary_gf(&alphabet, order);
    let h = complete_gf(&alphabet, order);
    let p = power_sum_gf(&alphabet, order);
    let power_sums: Vec<Value> = (1..=order)
        .map(|n| Value::String(alphabet.power_sum(n).to_string()))
        .collect();

    let mut table = Vec::new();
    table.extend(series_table("E", &e, cli));
    table.extend(series_table("H", &h, cli));
    table.extend(series_table("P", &p, cli));
    table.push(format!(
        "power sums p_1..p_{order}: {}",
        (1..=order)
            .map(|n| alphabet.power_sum(n).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));

    let one = TruncatedSeries::one(&Rationals, "t", order);
    let he = h
        .mul(&e.scale_argument(&Rational::from_int(-1)))
        .expect("compatible");
    let verification = vec![
        VerificationItem::from_bool(
            "symfun/h-times-e-neg",
            he == one,
            "H(t) E(-t) != 1",
        ),
        VerificationItem::from_bool(
            "symfun/h-derivative",
            complete_gf(&alphabet, order + 1).derivative()
                == p.mul(&h).expect("compatible"),
            "H' != P H",
        ),
    ];

    Ok(Report {
        command: "symfun",
        order,
        result: json!({
            "E": series_to_json(&e),
            "H": series_to_json(&h),
            "P": series_to_json(&p),
            "power_sums": power_sums,
        }),
        verification,
        table,
    })
}

fn run_verify(cli: &Cli, args: &VerifyArgs) -> Result<Report> {
    let order = cli.order.unwrap_or(DEFAULT_ORDER);
    let suite = Suite::parse(&args.suite)?;
    let config = SuiteConfig {
        order,
        seed: args.seed,
    };
    let report = run_suite(suite, &config);
    let passed = report.items.iter().filter(|i| i.pass).count();
    let table = vec![format!(
        "suite {} at order {}, seed {}: {passed}/{} passed",
        args.suite,
        order,
        args.seed,
        report.items.len()
    )];
    Ok(Report {
        command: "verify",
        order,
        result: json!({
            "suite": args.suite,
            "seed": args.seed,
            "passed": passed,
            "total": report.items.len(),
        }),
        verification: report.items,
        table,
    })
}

// table rendering

fn series_table(label: &str, s: &TruncatedSeries<Rationals>, _cli: &Cli) -> Vec<String> {
    let mut lines = vec![format!("{label}:")];
    let width = s
        .coeffs()
        .iter()
        .map(|c| c.to_string().len())
        .max()
        .unwrap_or(1);
    let var = s.var();
    for (n, c) in s.coeffs().iter().enumerate() {
        lines.push(format!("  {var}^{n:<3} {:>width$}", c.to_string()));
    }
    lines
}

fn symbolic_series_table(label: &str, s: &TruncatedSeries<PolyRing>, cli: &Cli) -> Vec<String> {
    let mut lines = vec![format!("{label}:")];
    let var = s.var();
    for (n, c) in s.coeffs().iter().enumerate() {
        let weight = match c.homogeneous_weight() {
            Ok(w) if !c.is_zero() => {
                let shown = if cli.topological { 2 * w } else { w };
                shown.to_string()
            }
            _ => "-".to_string(),
        };
        let degree_label = if cli.topological { "topdeg" } else { "weight" };
        lines.push(format!("  {var}^{n:<3} [{degree_label} {weight:>2}]  {c}"));
    }
    lines
}

fn bivariate_table<R: Ring>(
    label: &str,
    b: &crate::bivariate::BivariateSeries<R>,
    _cli: &Cli,
) -> Vec<String> {
    let mut lines = vec![format!("{label}:")];
    let mut entries: Vec<((usize, usize), String)> = b
        .terms()
        .map(|((i, j), c)| ((i, j), b.ring().to_string(c)))
        .collect();
    entries.sort_by_key(|&((i, j), _)| (i + j, i));
    for ((i, j), c) in entries {
        lines.push(format!("  x^{i} y^{j}  {c}"));
    }
    lines
}

fn law_table<R: Ring>(law: &FormalGroupLaw<R>, cli: &Cli) -> Vec<String> {
    bivariate_table("law", law.law(), cli)
}

/// A distribution literal map for callers that assemble assignments
/// themselves (kept public for the FFI layer).
pub fn parse_rational_map(pairs: &str) -> Result<BTreeMap<String, Rational>> {
    pairs
        .split(',')
        .map(|pair| {
            let (name, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("`{pair}` is not name=value")))?;
            Ok((name.trim().to_string(), value.trim().parse()?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_strings_parse() {
        assert_eq!(parse_spec("CP=1").unwrap(), Rational::one());
        assert_eq!(parse_spec("CP=0").unwrap(), Rational::zero());
        assert!(parse_spec("b=1").is_err());
        assert!(parse_spec("CP").is_err());
    }

    #[test]
    fn rational_maps_parse() {
        let m = parse_rational_map("CP=1, b=2/3").unwrap();
        assert_eq!(m["CP"], Rational::one());
        assert_eq!(m["b"], "2/3".parse().unwrap());
    }
}
