//! The `reesnorm` command line. Every command reads JSON (a file argument or
//! standard input) and writes JSON or a text rendering, so commands chain
//! through pipes:
//!
//! ```text
//! reesnorm factor --int 72 | reesnorm normalize --strategy prime-elim | reesnorm verify
//! ```
//!
//! Exit codes: 0 success, 1 usage, 2 domain error, 3 verification failure.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use serde_json::Value;

use crate::arith::FactorBounds;
use crate::backends::{factor_integer, factor_polynomial, parse_coefficients, ConcreteRing};
use crate::decimal;
use crate::equivalence::{class_generator, is_proj_equivalent, proj_full_check, MODEL_NOTE};
use crate::error::{Error, Result};
use crate::ideal::{rees_profile, same_spot, FactoredIdeal, Spot};
use crate::multi::{execute_plan, plan_multi, residue_degree_plan, MultiIdealPlan, ResidueDegreePlan};
use crate::normalization::{closed_form, normalize_with, uniformize, verify_report, ClosedFormMode, NormalizationReport, Strategy};
use crate::selftest::{self, CriterionReport, DEFAULT_SEED};
use crate::system::{ConsistentSystem, ExtensionChain};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "reesnorm", version, about = "Extension data making ideals of semilocal Dedekind domains powers of radicals")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print nothing on standard output (errors still go to standard error).
    #[arg(long, short, global = true)]
    quiet: bool,
    /// Trial-division bound for integer factorization (overrides REESNORM_TRIAL_LIMIT).
    #[arg(long, global = true)]
    trial_limit: Option<u64>,
    /// Pollard rho iteration cap (overrides REESNORM_RHO_ITERATIONS).
    #[arg(long, global = true)]
    rho_iterations: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    PrimeElim,
    SplitOne,
    ClosedFormProduct,
    ClosedFormLcm,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::PrimeElim => Strategy::PrimeElim,
            StrategyArg::SplitOne => Strategy::SplitOne,
            StrategyArg::ClosedFormProduct => Strategy::ClosedFormProduct,
            StrategyArg::ClosedFormLcm => Strategy::ClosedFormLcm,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Product,
    Lcm,
}

/// An ideal document, given as a positional path or with `--ideal`.
#[derive(Debug, clap::Args)]
struct IdealInput {
    /// Ideal JSON file; standard input when omitted or `-`.
    #[arg(conflicts_with = "ideal")]
    input: Option<PathBuf>,
    #[arg(long)]
    ideal: Option<PathBuf>,
}

impl IdealInput {
    fn path(&self) -> Option<&PathBuf> {
        self.input.as_ref().or(self.ideal.as_ref())
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Factor an integer or a polynomial into an ideal document.
    Factor {
        /// Nonzero nonunit integer.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "poly", required_unless_present = "poly")]
        int: Option<String>,
        /// Polynomial coefficients, highest degree first ("1,0,1" is x^2 + 1).
        #[arg(long, allow_hyphen_values = true, requires = "field")]
        poly: Option<String>,
        /// Coefficient field: a prime p or Q.
        #[arg(long)]
        field: Option<String>,
    },
    /// Rees integers with multiplicities, gcd and lcm.
    Rees(IdealInput),
    /// Build and verify a tower making the ideal a power of a radical.
    Normalize {
        #[command(flatten)]
        input: IdealInput,
        #[arg(long, value_enum, default_value_t = StrategyArg::PrimeElim)]
        strategy: StrategyArg,
    },
    /// The single system a tower composes to.
    ClosedForm {
        #[command(flatten)]
        input: IdealInput,
        #[arg(long, value_enum, default_value_t = ModeArg::Product)]
        mode: ModeArg,
    },
    /// Make every Rees integer equal.
    Uniformize(IdealInput),
    /// Uniformize several ideals at once.
    Multi {
        /// A multi-ideal document, or several ideal documents on one spot.
        inputs: Vec<PathBuf>,
        /// Per-ideal targets, comma separated.
        #[arg(long)]
        targets: Option<String>,
        /// Hide degree-one steps in the text table.
        #[arg(long)]
        elide_identity: bool,
    },
    /// One-step plan using a residue extension at a chosen site.
    ResiduePlan {
        inputs: Vec<PathBuf>,
        #[arg(long)]
        targets: Option<String>,
        /// Ideal number, from 1.
        #[arg(long)]
        ideal: usize,
        /// Support-site number within that ideal, from 1.
        #[arg(long)]
        site: usize,
    },
    /// Projective equivalence of two ideals on one spot.
    Equiv { a: PathBuf, b: PathBuf },
    /// The generator of the projective equivalence class.
    ClassGen(IdealInput),
    /// Whether the ideal generates its class.
    FullCheck(IdealInput),
    /// Re-run verification on a stored normalization report.
    Verify {
        input: Option<PathBuf>,
    },
    /// Run the seeded property suites.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Run a single criterion (1 to 10).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        criterion: Option<u8>,
    },
}

/// A command's result: the JSON document, its text rendering, and whether
/// it reports a verification failure.
struct Output {
    json: Value,
    text: String,
    failed_verification: Option<String>,
}

impl Output {
    fn new<T: Serialize>(doc: &T, text: String) -> Result<Self> {
        Ok(Output {
            json: serde_json::to_value(doc)?,
            text,
            failed_verification: None,
        })
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

/// Recovers the domain error behind a failed deserialization, whose message
/// carries the error's display text.
fn from_json_error(e: serde_json::Error) -> Error {
    if !matches!(e.classify(), serde_json::error::Category::Data) {
        return e.into();
    }
    let msg = e.to_string();
    type Wrap = fn(String) -> Error;
    let table: [(&str, Wrap); 6] = [
        ("unit or zero ideal: ", Error::UnitOrZero),
        ("invalid spot: ", Error::InvalidSpot),
        ("invalid ideal: ", Error::InvalidIdeal),
        ("malformed system: ", Error::MalformedSystem),
        ("broken chain: ", Error::BrokenChain),
        ("spot mismatch: ", Error::SpotMismatch),
    ];
    for (prefix, make) in table {
        if let Some(rest) = msg.strip_prefix(prefix) {
            return make(rest.to_string());
        }
    }
    e.into()
}

fn parse<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(from_json_error)
}

fn read_ideal(input: &IdealInput) -> Result<FactoredIdeal> {
    parse(&read_input(input.path())?)
}

fn parse_targets(s: &str) -> Result<Vec<BigUint>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad target {t:?}"))))
        .collect()
}

/// Ideals and optional targets from a multi document
/// `{"spot": .., "ideals": [[..], ..], "targets": [..]}` or from ideal
/// documents that all live on the same spot.
fn read_multi(inputs: &[PathBuf]) -> Result<(Vec<FactoredIdeal>, Option<Vec<BigUint>>)> {
    if inputs.len() <= 1 {
        let text = read_input(inputs.first())?;
        let v: Value = serde_json::from_str(&text)?;
        if v.get("ideals").is_some() {
            #[derive(serde::Deserialize)]
            struct MultiDoc {
                spot: Spot,
                ideals: Vec<Row>,
                #[serde(default)]
                targets: Option<Row>,
            }
            #[derive(serde::Deserialize)]
            struct Row(#[serde(with = "decimal::vec")] Vec<BigUint>);
            let doc: MultiDoc = serde_json::from_value(v).map_err(from_json_error)?;
            let spot = Arc::new(doc.spot);
            let ideals = doc
                .ideals
                .into_iter()
                .map(|r| FactoredIdeal::new(spot.clone(), r.0))
                .collect::<Result<Vec<_>>>()?;
            return Ok((ideals, doc.targets.map(|t| t.0)));
        }
        return Ok((vec![serde_json::from_value(v).map_err(from_json_error)?], None));
    }
    let mut ideals: Vec<FactoredIdeal> = Vec::with_capacity(inputs.len());
    for p in inputs {
        let i: FactoredIdeal = parse(&read_input(Some(p))?)?;
        match ideals.first() {
            None => ideals.push(i),
            Some(first) if same_spot(first.spot(), i.spot()) => {
                ideals.push(FactoredIdeal::new(first.spot().clone(), i.exponents().to_vec())?)
            }
            Some(first) => {
                return Err(Error::SpotMismatch(format!(
                    "{} is on spot {}, the first ideal on {}",
                    p.display(),
                    i.spot().id(),
                    first.spot().id()
                )))
            }
        }
    }
    Ok((ideals, None))
}

fn bounds(cli: &Cli) -> Result<FactorBounds> {
    let mut b = FactorBounds::from_env()?;
    if let Some(t) = cli.trial_limit {
        b.trial_limit = t;
    }
    if let Some(r) = cli.rho_iterations {
        b.rho_iterations = r;
    }
    Ok(b)
}

fn ideal_text(i: &FactoredIdeal) -> String {
    let spot = i.spot();
    let mut s = format!("spot {} ({} sites)\n", spot.id(), spot.len());
    for (k, site) in spot.sites().iter().enumerate() {
        let _ = write!(s, "  {:<24} exponent {:>6}  residue {} (degree {})", site.label, i.exponent(k), site.residue.label(), site.residue.degree());
        if site.multiplicity != BigUint::from(1u8) {
            let _ = write!(s, "  x{}", site.multiplicity);
        }
        s.push('\n');
    }
    s
}

fn system_text(sys: &ConsistentSystem) -> String {
    let mut s = format!("degree {} over {}\n", sys.degree(), sys.spot().id());
    for (site, triples) in sys.spot().sites().iter().zip(sys.per_site()) {
        let parts: Vec<String> = triples
            .iter()
            .map(|t| format!("{} x (f={}, e={}, {})", t.count, t.f, t.e, t.residue.label()))
            .collect();
        let _ = writeln!(s, "  {:<24} {}", site.label, parts.join(", "));
    }
    s
}

fn chain_table(chain: &ExtensionChain, elide_identity: bool) -> String {
    let mut s = format!("{:>4}  {:>12}  {:>14}  {:>14}  evidence\n", "step", "degree", "sites before", "sites after");
    let mut before = chain.base().site_count();
    for (k, step) in chain.steps().iter().enumerate() {
        let after = step.result_spot().site_count();
        if !(elide_identity && *step.degree() == BigUint::from(1u8)) {
            let _ = writeln!(s, "{:>4}  {:>12}  {:>14}  {:>14}  {:?}", k + 1, step.degree(), before, after, step.evidence().kind);
        }
        before = after;
    }
    let _ = writeln!(s, "total degree {}", chain.total_degree());
    s
}

fn report_text(r: &NormalizationReport) -> String {
    let mut s = format!(
        "strategy {:?}: d = {}, h = {}, {} steps, verified {}\n",
        r.strategy,
        r.d,
        r.h,
        r.chain.len(),
        r.oracle_verified
    );
    s.push_str(&chain_table(&r.chain, false));
    s
}

fn plan_text(p: &MultiIdealPlan, elide_identity: bool) -> String {
    let mut s = format!("m = {}, supports {:?}\n", p.m, p.supports);
    for (k, row) in p.estars.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|e| format!("{}: e={} e*={}", e.site, e.rees_integer, e.estar)).collect();
        let _ = writeln!(s, "  ideal {} target {}: {}", k + 1, p.targets[k], cells.join("; "));
    }
    s.push_str(&chain_table(&p.chain, elide_identity));
    if let Some(v) = &p.verdicts {
        for (k, v) in v.iter().enumerate() {
            let _ = writeln!(
                s,
                "  ideal {}: Rees integer {} with multiplicity {} (expected {}), uniform {}",
                k + 1,
                v.target,
                v.multiplicity,
                v.expected_multiplicity,
                v.uniform
            );
        }
    }
    s
}

fn residue_plan_text(p: &ResidueDegreePlan) -> String {
    let mut s = system_text(&p.system);
    let _ = writeln!(s, "evidence {:?}: {}", p.evidence.kind, p.evidence.detail);
    for (k, r) in p.results.iter().enumerate() {
        let _ = writeln!(s, "  ideal {} Rees integers {:?}", k + 1, rees_profile(r).multiplicities().iter().map(|(v, m)| format!("{v}x{m}")).collect::<Vec<_>>());
    }
    s
}

fn selftest_text(reports: &[CriterionReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let _ = writeln!(s, "{}", r.line());
    }
    s
}

fn execute(cli: &Cli) -> Result<Output> {
    let bounds = bounds(cli)?;
    match &cli.command {
        Command::Factor { int, poly, field } => {
            let ideal = match (int, poly) {
                (Some(n), _) => {
                    let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("{n:?} is not an integer")))?;
                    factor_integer(&n, &bounds)?
                }
                (None, Some(c)) => {
                    let field = field.as_deref().unwrap_or("Q");
                    let ring = if field.eq_ignore_ascii_case("q") {
                        ConcreteRing::PolynomialOverRationals
                    } else {
                        let p = field.parse().map_err(|_| Error::Parse(format!("field {field:?} is neither a prime nor Q")))?;
                        ConcreteRing::PolynomialOverPrimeField { p }
                    };
                    factor_polynomial(&parse_coefficients(c)?, ring, &bounds)?
                }
                (None, None) => unreachable!("clap requires --int or --poly"),
            };
            Output::new(&ideal, ideal_text(&ideal))
        }
        Command::Rees(input) => {
            let p = rees_profile(&read_ideal(input)?);
            let mut text = String::new();
            for e in &p.entries {
                let _ = writeln!(text, "  {:<24} {:>8}  x{}", e.site, e.rees_integer, e.multiplicity);
            }
            let _ = writeln!(text, "gcd {}  lcm {}  product {}", p.gcd, p.lcm, p.product());
            Output::new(&p, text)
        }
        Command::Normalize { input, strategy } => {
            let r = normalize_with(&read_ideal(input)?, (*strategy).into(), &bounds)?;
            Output::new(&r, report_text(&r))
        }
        Command::ClosedForm { input, mode } => {
            let ideal = read_ideal(input)?;
            let (i0, _) = crate::ideal::gcd_normalize(&ideal);
            let mode = match mode {
                ModeArg::Product => ClosedFormMode::Product,
                ModeArg::Lcm => ClosedFormMode::Lcm,
            };
            let sys = closed_form(&i0, mode)?;
            Output::new(&sys, system_text(&sys))
        }
        Command::Uniformize(input) => {
            let u = uniformize(&read_ideal(input)?)?;
            #[derive(Serialize)]
            struct Doc<'a> {
                #[serde(with = "decimal")]
                m: &'a BigUint,
                report: &'a NormalizationReport,
            }
            let text = format!("m = {}\n{}", u.m, report_text(&u.report));
            Output::new(&Doc { m: &u.m, report: &u.report }, text)
        }
        Command::Multi { inputs, targets, elide_identity } => {
            let (ideals, doc_targets) = read_multi(inputs)?;
            let t = match targets {
                Some(s) => Some(parse_targets(s)?),
                None => doc_targets,
            };
            let plan = execute_plan(&plan_multi(&ideals, t.as_deref())?)?;
            Output::new(&plan, plan_text(&plan, *elide_identity))
        }
        Command::ResiduePlan { inputs, targets, ideal, site } => {
            let (ideals, doc_targets) = read_multi(inputs)?;
            let t = match targets {
                Some(s) => Some(parse_targets(s)?),
                None => doc_targets,
            };
            if *ideal == 0 || *site == 0 {
                return Err(Error::Precondition("--ideal and --site count from 1".into()));
            }
            let p = residue_degree_plan(&ideals, t.as_deref(), (ideal - 1, site - 1))?;
            Output::new(&p, residue_plan_text(&p))
        }
        Command::Equiv { a, b } => {
            let i: FactoredIdeal = parse(&read_input(Some(a))?)?;
            let j: FactoredIdeal = parse(&read_input(Some(b))?)?;
            let v = is_proj_equivalent(&i, &j)?;
            let text = match (&v.witness, &v.reason) {
                (Some(w), _) => format!("equivalent: I^{} = J^{}\n", w.m, w.n),
                (None, Some(r)) => format!("not equivalent: {r}\n"),
                _ => "not equivalent\n".into(),
            };
            Output::new(&v, text)
        }
        Command::ClassGen(input) => {
            let (g, d) = class_generator(&read_ideal(input)?);
            #[derive(Serialize)]
            struct Doc<'a> {
                generator: &'a FactoredIdeal,
                #[serde(with = "decimal")]
                d: &'a BigUint,
                model: &'static str,
            }
            let text = format!("d = {d}\n{}", ideal_text(&g));
            Output::new(&Doc { generator: &g, d: &d, model: MODEL_NOTE }, text)
        }
        Command::FullCheck(input) => {
            let f = proj_full_check(&read_ideal(input)?);
            let text = match &f {
                crate::equivalence::Fullness::Full { criterion, .. } => format!("full: {criterion}\n"),
                crate::equivalence::Fullness::NotGenerator { generator, d, .. } => {
                    format!("not the class generator: I = G^{d} with\n{}", ideal_text(generator))
                }
            };
            Output::new(&f, text)
        }
        Command::Verify { input } => {
            let text = read_input(input.as_ref())?;
            let mut report: NormalizationReport = match serde_json::from_str(&text) {
                Ok(r) => r,
                // Well-formed JSON that no longer rebuilds into a consistent report was altered.
                Err(e) if matches!(e.classify(), serde_json::error::Category::Data) => {
                    return Err(Error::Verification(format!("report does not rebuild: {e}")))
                }
                Err(e) => return Err(e.into()),
            };
            report.oracle_verified = false;
            #[derive(Serialize)]
            struct Doc {
                verified: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                site: Option<String>,
                #[serde(skip_serializing_if = "Option::is_none")]
                message: Option<String>,
            }
            match verify_report(&mut report) {
                Ok(()) => Output::new(&Doc { verified: true, site: None, message: None }, "verified\n".into()),
                Err(f) => {
                    let text = format!("verification failed: {f}\n");
                    let reason = f.to_string();
                    let mut out = Output::new(&Doc { verified: false, site: f.site, message: Some(f.message) }, text)?;
                    out.failed_verification = Some(reason);
                    Ok(out)
                }
            }
        }
        Command::Selftest { seed, criterion } => {
            let criteria = match criterion {
                Some(id) => vec![selftest::run_one(*id, *seed).expect("criterion range checked by clap")],
                None => selftest::run_all(*seed).criteria,
            };
            let passed = criteria.iter().all(|c| c.passed);
            let text = selftest_text(&criteria);
            let mut out = Output::new(&selftest::SelftestReport { seed: *seed, criteria, passed }, text)?;
            if !passed {
                out.failed_verification = Some("selftest criteria failed".into());
            }
            Ok(out)
        }
    }
}

fn error_json(e: &Error) -> String {
    serde_json::json!({ "code": e.code(), "message": e.to_string() }).to_string()
}

/// Runs one invocation with explicit arguments (the first is the program
/// name) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{}", error_json(&e));
            return if matches!(e, Error::Verification(_)) { EXIT_VERIFY } else { EXIT_DOMAIN };
        }
    };
    let mut body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("values serialize"),
        Format::Text => out.text.trim_end().to_string(),
    };
    body.push('\n');
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &body) {
            eprintln!("{}", error_json(&Error::Io(format!("{}: {e}", path.display()))));
            return EXIT_DOMAIN;
        }
    } else if !cli.quiet {
        let mut stdout = io::stdout().lock();
        let _ = stdout.write_all(body.as_bytes());
    }
    if let Some(reason) = out.failed_verification {
        eprintln!("{}", error_json(&Error::Verification(reason)));
        return EXIT_VERIFY;
    }
    EXIT_OK
}

pub fn main() -> i32 {
    run(std::env::args_os())
}
