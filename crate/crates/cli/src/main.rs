//! Deterministic command-line front end for the counting library.
//!
//! Every subcommand prints exactly one canonical JSON object (sorted
//! keys, compact encoding, trailing newline) or a fixed-column CSV
//! table; identical invocations produce identical bytes. All numeric
//! payloads are exact integers; exponent estimates are exact rationals
//! carried as numerator/denominator pairs.
//!
//! Exit codes: 0 success, 2 validation/usage error, 3 search budget or
//! enumeration bound exhausted, 4 input/output failure. Errors print a
//! machine-readable `{"code":..,"error":..}` object on standard error.

mod cfg;
mod emit;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{Map, Value};

use isocensus_core::census::{
    conjectured_exponent, ec_census, predicted_ec_size, surface_census, theorem_verdict,
    CensusReport, EquivalenceSearchSpace, PrimeColumn, RunLimits, SsModel, Stratum,
};
use isocensus_core::endo_counts::{
    class_number, count_cyclic_norm_d, count_norm_d, QuadraticOrder, QuaternaryForm,
};
use isocensus_core::error::Error as CoreError;
use isocensus_core::ff_curves::{frobenius_data, PrimePower};
use isocensus_core::frobenius::{
    classify, horizontal_count, scalar_level, stable_cyclic_subgroups, FrobeniusClass,
    FrobeniusMatrix,
};
use isocensus_core::symplectic::{IsotropyType, SymplecticModule};
use isocensus_core::arith;

use cfg::{need, opt, FileConfig};
use emit::{ji, ju, to_bytes, CsvRow, Format, Output};

/// Program-level error paired with its exit code.
#[derive(Debug)]
pub enum CliError {
    /// Parameter or input validation failure (exit 2).
    Validation(String),
    /// Search budget or enumeration bound exhausted (exit 3).
    Budget(String),
    /// Input/output failure (exit 4).
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Budget(m) | CliError::Io(m) => m,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::BudgetExhausted { .. } | CoreError::BoundExceeded { .. } => {
                CliError::Budget(e.to_string())
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "isocensus",
    version,
    about = "Exact torsion-subgroup counts, norm-form counts, Frobenius classification, \
             and isogeny-class censuses for elliptic curves and split abelian surfaces"
)]
struct Cli {
    /// Flat key=value config file; command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Output format: json (canonical, sorted keys) or csv (fixed columns).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count Lagrangian planes of (Z/ell^m)^4 and their Type 1 / Type 2 split.
    CountLagrangians {
        #[arg(long)]
        ell: Option<u64>,
        #[arg(long)]
        m: Option<u32>,
    },
    /// Classify the Frobenius action on E[ell^m] for an ordinary trace t over F_{q^n}.
    ClassifyFrobenius {
        #[arg(long, allow_negative_numbers = true)]
        t: Option<i64>,
        /// Base field size (a prime power).
        #[arg(long)]
        q: Option<u64>,
        /// Extension degree.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        ell: Option<u64>,
        #[arg(long)]
        m: Option<u32>,
    },
    /// Exact representation count of n by a positive-definite quaternary norm form.
    CountReps {
        /// One of: four_squares, hurwitz_p2, maximal_p3.
        #[arg(long)]
        form: Option<String>,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Count ideals of norm d (total and primitive/cyclic) in the imaginary
    /// quadratic order of discriminant D.
    CountNorm {
        #[arg(long, allow_negative_numbers = true)]
        disc: Option<i64>,
        #[arg(long)]
        d: Option<u64>,
    },
    /// Class number of the imaginary quadratic order of discriminant D.
    ClassNumber {
        #[arg(long, allow_negative_numbers = true)]
        disc: Option<i64>,
    },
    /// Exhaustive isogeny-class census of elliptic curves over F_{q^n}.
    EcCensus {
        #[arg(long, allow_negative_numbers = true)]
        t: Option<i64>,
        /// Base field size (a prime).
        #[arg(long)]
        q: Option<u64>,
        /// Extension degree.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        tau_num: Option<u32>,
        #[arg(long)]
        tau_den: Option<u32>,
    },
    /// Census of Frobenius-stable Lagrangians of (E x E_ss)[ell^m] up to
    /// the endomorphism-kernel equivalence, one column per ell,m pair.
    SurfaceCensus {
        #[arg(long, allow_negative_numbers = true)]
        t: Option<i64>,
        /// Base field size (a prime power).
        #[arg(long)]
        q: Option<u64>,
        /// Extension degree.
        #[arg(long)]
        n: Option<u32>,
        /// Comma-separated list of primes, e.g. 2,3.
        #[arg(long)]
        ell: Option<String>,
        /// Comma-separated list of exponents, zipped with --ell
        /// (a single value broadcasts).
        #[arg(long)]
        m: Option<String>,
        /// Cap the scalar-isogeny degree layer of the search space.
        #[arg(long)]
        k_cap: Option<u32>,
        /// Candidate-evaluation budget per column.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        tau_num: Option<u32>,
        #[arg(long)]
        tau_den: Option<u32>,
    },
    /// Predicted census size for a stratum.
    Predict {
        /// ordinary-ec (alias: ec) or ordinary-times-supersingular (alias: surface).
        #[arg(long)]
        stratum: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        t: Option<i64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        ell: Option<String>,
        #[arg(long)]
        m: Option<String>,
    },
    /// Exponent estimate and trend verdict for an observed count.
    Verdict {
        /// Observed census size.
        #[arg(long)]
        count: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        stratum: Option<String>,
        #[arg(long)]
        tau_num: Option<u32>,
        #[arg(long)]
        tau_den: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            report_error(2, &e.to_string());
            return ExitCode::from(2);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            report_error(err.code(), err.message());
            ExitCode::from(err.code())
        }
    }
}

fn report_error(code: u8, message: &str) {
    let obj = serde_json::json!({ "code": code, "error": message });
    eprintln!("{obj}");
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let cfgf = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::empty(),
    };
    let format = opt(cli.format, &cfgf, "format")?.unwrap_or(Format::Json);
    let out_path = match cli.out {
        Some(p) => Some(p),
        None => cfgf.raw("out").map(PathBuf::from),
    };
    let output = dispatch(cli.cmd, &cfgf)?;
    let bytes = to_bytes(format, &output);
    match out_path {
        Some(p) => std::fs::write(&p, &bytes)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))?,
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    Ok(())
}

fn dispatch(cmd: Cmd, cfgf: &FileConfig) -> Result<Output, CliError> {
    match cmd {
        Cmd::CountLagrangians { ell, m } => count_lagrangians(cfgf, ell, m),
        Cmd::ClassifyFrobenius { t, q, n, ell, m } => classify_frobenius(cfgf, t, q, n, ell, m),
        Cmd::CountReps { form, n } => count_reps(cfgf, form, n),
        Cmd::CountNorm { disc, d } => count_norm(cfgf, disc, d),
        Cmd::ClassNumber { disc } => class_number_cmd(cfgf, disc),
        Cmd::EcCensus { t, q, n, tau_num, tau_den } => ec_census_cmd(cfgf, t, q, n, tau_num, tau_den),
        Cmd::SurfaceCensus { t, q, n, ell, m, k_cap, budget, tau_num, tau_den } => {
            surface_census_cmd(cfgf, t, q, n, ell, m, k_cap, budget, tau_num, tau_den)
        }
        Cmd::Predict { stratum, t, q, n, ell, m } => predict(cfgf, stratum, t, q, n, ell, m),
        Cmd::Verdict { count, q, n, stratum, tau_num, tau_den } => {
            verdict_cmd(cfgf, count, q, n, stratum, tau_num, tau_den)
        }
    }
}

/// Parse a prime-power field size q = p^k into its base data.
fn parse_prime_power(q: u64) -> Result<PrimePower, CliError> {
    let factors = arith::factor(q as u128);
    match factors.as_slice() {
        [(p, k)] => Ok(PrimePower::new(*p, *k)?),
        _ => Err(CliError::Validation(format!("q = {q} is not a prime power"))),
    }
}

/// Parse a comma-separated list of unsigned integers.
fn parse_list(s: &str, what: &str) -> Result<Vec<u64>, CliError> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        out.push(part.parse::<u64>().map_err(|e| {
            CliError::Validation(format!("{what} entry {part:?}: {e}"))
        })?);
    }
    if out.is_empty() {
        return Err(CliError::Validation(format!("{what} list is empty")));
    }
    Ok(out)
}

fn tau(cfgf: &FileConfig, num: Option<u32>, den: Option<u32>) -> Result<(u32, u32), CliError> {
    let defaults = RunLimits::default();
    let num = opt(num, cfgf, "tau-num")?.unwrap_or(defaults.tau_num);
    let den = opt(den, cfgf, "tau-den")?.unwrap_or(defaults.tau_den);
    if den == 0 {
        return Err(CliError::Validation("tau-den must be positive".into()));
    }
    Ok((num, den))
}

fn count_lagrangians(
    cfgf: &FileConfig,
    ell: Option<u64>,
    m: Option<u32>,
) -> Result<Output, CliError> {
    let ell = need(ell, cfgf, "ell")?;
    let m = need(m, cfgf, "m")?;
    let module = SymplecticModule::new(ell, m)?;
    let lagrangians = module.enumerate_lagrangians()?;
    let (mut type1, mut type2) = (0u64, 0u64);
    for h in &lagrangians {
        match module.classify_type(h) {
            IsotropyType::Product { .. } => type1 += 1,
            IsotropyType::NonProduct { .. } => type2 += 1,
        }
    }
    let count = lagrangians.len() as u64;
    let mut obj = Map::new();
    obj.insert("count".into(), count.into());
    obj.insert("type1".into(), type1.into());
    obj.insert("type2".into(), type2.into());
    let row = CsvRow {
        ell: Some(ell),
        m: Some(m),
        count: Some(count as u128),
        type1: Some(type1),
        type2: Some(type2),
        ..CsvRow::default()
    };
    Ok(Output { json: Value::Object(obj), rows: vec![row] })
}

fn classify_frobenius(
    cfgf: &FileConfig,
    t: Option<i64>,
    q: Option<u64>,
    n: Option<u32>,
    ell: Option<u64>,
    m: Option<u32>,
) -> Result<Output, CliError> {
    let t = need(t, cfgf, "t")?;
    let q = need(q, cfgf, "q")?;
    let n = need(n, cfgf, "n")?;
    let ell = need(ell, cfgf, "ell")?;
    let m = need(m, cfgf, "m")?;
    let base = parse_prime_power(q)?;
    let fd = frobenius_data(t, base, n)?;
    let fm = FrobeniusMatrix::model(&fd, ell, m)?;
    let class = classify(&fm);
    let stable = stable_cyclic_subgroups(&fm, m).len() as u64;
    let horizontal = horizontal_count(&class);
    let slevel = match scalar_level(&fd, ell) {
        Ok(v) => Some(v),
        Err(CoreError::RamifiedPrime { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let (tag, lambda, mu, level) = match class {
        FrobeniusClass::Irreducible => ("irreducible", None, None, None),
        FrobeniusClass::DistinctEigen { lambda, mu } => ("distinct-eigen", Some(lambda), Some(mu), None),
        FrobeniusClass::Scalar { lambda } => ("scalar", Some(lambda), None, None),
        FrobeniusClass::CongruentEigen { lambda, mu, level } => {
            ("congruent-eigen", Some(lambda), Some(mu), Some(level))
        }
        FrobeniusClass::NonSemisimple => ("non-semisimple", None, None, None),
    };
    let mut obj = Map::new();
    obj.insert("class".into(), tag.into());
    if let Some(h) = horizontal {
        obj.insert("horizontal".into(), h.into());
    }
    if let Some(l) = lambda {
        obj.insert("lambda".into(), l.into());
    }
    if let Some(l) = level {
        obj.insert("level".into(), l.into());
    }
    if let Some(v) = mu {
        obj.insert("mu".into(), v.into());
    }
    if let Some(s) = slevel {
        obj.insert("scalar_level".into(), s.into());
    }
    obj.insert("stable".into(), stable.into());
    let row = CsvRow {
        q: Some(q),
        n: Some(n),
        ell: Some(ell),
        m: Some(m),
        count: Some(stable as u128),
        ..CsvRow::default()
    };
    Ok(Output { json: Value::Object(obj), rows: vec![row] })
}

fn count_reps(cfgf: &FileConfig, form: Option<String>, n: Option<u64>) -> Result<Output, CliError> {
    let form_name: String = need(form, cfgf, "form")?;
    let n = need(n, cfgf, "n")?;
    let form = match form_name.as_str() {
        "four_squares" => QuaternaryForm::four_squares(),
        "hurwitz_p2" => QuaternaryForm::hurwitz_p2(),
        "maximal_p3" => QuaternaryForm::maximal_p3(),
        _ => {
            return Err(CliError::Validation(format!(
                "unknown form {form_name:?} (expected four_squares, hurwitz_p2, or maximal_p3)"
            )))
        }
    };
    let r = form.count_representations(n)?;
    let mut obj = Map::new();
    obj.insert("r".into(), r.into());
    let row = CsvRow { count: Some(r as u128), ..CsvRow::default() };
    Ok(Output { json: Value::Object(obj), rows: vec![row] })
}

fn count_norm(cfgf: &FileConfig, disc: Option<i64>, d: Option<u64>) -> Result<Output, CliError> {
    let disc = need(disc, cfgf, "disc")?;
    let d = need(d, cfgf, "d")?;
    let order = QuadraticOrder::new(disc as i128)?;
    let count = count_norm_d(&order, d)?;
    let cyclic = count_cyclic_norm_d(&order, d)?;
    let mut obj = Map::new();
    obj.insert("count".into(), count.into());
    obj.insert("cyclic".into(), cyclic.into());
    let row = CsvRow { count: Some(count as u128), ..CsvRow::default() };
    Ok(Output { json: Value::Object(obj), rows: vec![row] })
}

fn class_number_cmd(cfgf: &FileConfig, disc: Option<i64>) -> Result<Output, CliError> {
    let disc = need(disc, cfgf, "disc")?;
    let h = class_number(disc as i128)?;
    let mut obj = Map::new();
    obj.insert("h".into(), h.into());
    let row = CsvRow { count: Some(h as u128), ..CsvRow::default() };
    Ok(Output { json: Value::Object(obj), rows: vec![row] })
}

fn ec_census_cmd(
    cfgf: &FileConfig,
    t: Option<i64>,
    q: Option<u64>,
    n: Option<u32>,
    tau_num: Option<u32>,
    tau_den: Option<u32>,
) -> Result<Output, CliError> {
    let t = need(t, cfgf, "t")?;
    let q = need(q, cfgf, "q")?;
    let n = need(n, cfgf, "n")?;
    let (tau_num, tau_den) = tau(cfgf, tau_num, tau_den)?;
    let base = parse_prime_power(q)?;
    let fd = frobenius_data(t, base, n)?;
    let censusr = ec_census(t, base, n)?;
    let pred = predicted_ec_size(&fd)?;
    let (verdict, (xn, xd)) =
        theorem_verdict(censusr.classes as u128, q, n, Stratum::OrdinaryEc, tau_num, tau_den);
    let mut predicted = Map::new();
    predicted.insert("class_number_order".into(), pred.class_number_order.into());
    predicted.insert("geometric_sum".into(), ju(pred.geometric_sum)?);
    predicted.insert("p_unramified".into(), ju(pred.p_unramified)?);
    let mut obj = Map::new();
    obj.insert("classes".into(), censusr.classes.into());
    obj.insert("exponent_den".into(), xd.into());
    obj.insert("exponent_num".into(), xn.into());
    obj.insert("n".into(), n.into());
    obj.insert("predicted".into(), Value::Object(predicted));
    obj.insert("q".into(), q.into());
    obj.insert("q_n".into(), censusr.q_n.into());
    obj.insert("reference_trace".into(), ji(censusr.reference_trace)?);
    obj.insert("same_trace".into(), censusr.same_trace_classes.into());
    obj.insert("scanned".into(), censusr.scanned.into());
    obj.insert("t".into(), t.into());
    obj.insert("verdict".into(), verdict.as_str().into());
    let row = CsvRow {
        q: Some(q),
        n: Some(n),
        count: Some(censusr.classes as u128),
        predicted: Some(pred.geometric_sum),
        exponent_num: Some(xn),
        exponent_den: Some(xd),
        verdict: Some(verdict.as_str()),
        ..CsvRow::default()
    };
    Ok(Output { json: Value::Object(obj), rows: vec![row] })
}

/// Worker-pool cap: ISOGENY_CENSUS_THREADS when set, else the machine's
/// available parallelism, clamped to the number of work items.
fn thread_cap(items: usize) -> Result<usize, CliError> {
    let cap = match std::env::var("ISOGENY_CENSUS_THREADS") {
        Ok(v) => v.parse::<usize>().ok().filter(|&c| c >= 1).ok_or_else(|| {
            CliError::Validation("ISOGENY_CENSUS_THREADS must be a positive integer".into())
        })?,
        Err(std::env::VarError::NotPresent) => {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        }
        Err(_) => {
            return Err(CliError::Validation("ISOGENY_CENSUS_THREADS is not valid UTF-8".into()))
        }
    };
    Ok(cap.min(items.max(1)))
}

/// Run the census columns with a bounded worker pool; results keep the
/// input order regardless of scheduling.
fn run_columns(
    t: i64,
    base: PrimePower,
    n: u32,
    specs: &[(u64, u32)],
    k_cap: Option<u32>,
    limits: RunLimits,
) -> Result<Vec<PrimeColumn>, CliError> {
    let workers = thread_cap(specs.len())?;
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<PrimeColumn, CoreError>>>> =
        specs.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= specs.len() {
                    break;
                }
                let (ell, m) = specs[i];
                let space = match k_cap {
                    Some(k) => EquivalenceSearchSpace::with_scalar_cap(m, k),
                    None => EquivalenceSearchSpace::standard(m),
                };
                let result =
                    surface_census(t, base, n, SsModel::TraceZero, ell, m, &space, &limits);
                *slots[i].lock().unwrap() = Some(result);
            });
        }
    });
    let mut out = Vec::with_capacity(specs.len());
    for slot in slots {
        let result = slot.into_inner().unwrap().expect("every index was claimed by a worker");
        out.push(result?);
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn surface_census_cmd(
    cfgf: &FileConfig,
    t: Option<i64>,
    q: Option<u64>,
    n: Option<u32>,
    ell: Option<String>,
    m: Option<String>,
    k_cap: Option<u32>,
    budget: Option<u64>,
    tau_num: Option<u32>,
    tau_den: Option<u32>,
) -> Result<Output, CliError> {
    let t = need(t, cfgf, "t")?;
    let q = need(q, cfgf, "q")?;
    let n = need(n, cfgf, "n")?;
    let ells = parse_list(&need::<String>(ell, cfgf, "ell")?, "ell")?;
    let ms_raw = parse_list(&need::<String>(m, cfgf, "m")?, "m")?;
    let ms: Vec<u32> = ms_raw
        .iter()
        .map(|&v| {
            u32::try_from(v).map_err(|_| CliError::Validation("m entry out of range".into()))
        })
        .collect::<Result<_, _>>()?;
    let ms = if ms.len() == 1 { vec![ms[0]; ells.len()] } else { ms };
    if ms.len() != ells.len() {
        return Err(CliError::Validation(
            "--ell and --m lists must have equal length (or a single m)".into(),
        ));
    }
    let k_cap = opt(k_cap, cfgf, "k-cap")?;
    let (tau_num, tau_den) = tau(cfgf, tau_num, tau_den)?;
    let mut limits = RunLimits { tau_num, tau_den, ..RunLimits::default() };
    if let Some(b) = opt(budget, cfgf, "budget")? {
        limits.budget = b;
    }
    let base = parse_prime_power(q)?;
    let specs: Vec<(u64, u32)> = ells.into_iter().zip(ms).collect();
    let columns = run_columns(t, base, n, &specs, k_cap, limits)?;
    let label = format!("surface t={t} q={q} n={n}");
    let report = CensusReport::from_columns(
        q,
        n,
        Stratum::OrdinaryTimesSupersingular,
        columns,
        tau_num,
        tau_den,
        label,
    );
    report_output(&report)
}

fn report_output(report: &CensusReport) -> Result<Output, CliError> {
    let mut columns = Vec::new();
    let mut rows = Vec::new();
    for c in &report.columns {
        let mut co = Map::new();
        co.insert("ell".into(), c.ell.into());
        co.insert("exhausted".into(), c.exhausted.into());
        co.insert("m".into(), c.m.into());
        co.insert("n0".into(), c.n0.into());
        co.insert("n1".into(), c.n1.into());
        co.insert("n2".into(), c.n2.into());
        co.insert("raw".into(), c.raw.into());
        co.insert("stable".into(), c.stable.into());
        co.insert("type1".into(), c.type1.into());
        co.insert("type2".into(), c.type2.into());
        columns.push(Value::Object(co));
        rows.push(CsvRow {
            q: Some(report.q),
            n: Some(report.n),
            ell: Some(c.ell),
            m: Some(c.m),
            count: Some(c.stable as u128),
            type1: Some(c.type1),
            type2: Some(c.type2),
            n0: Some(c.n0),
            n1: Some(c.n1),
            n2: Some(c.n2),
            predicted: Some(report.predicted),
            exponent_num: Some(report.exponent.0),
            exponent_den: Some(report.exponent.1),
            verdict: Some(report.verdict.as_str()),
        });
    }
    let mut obj = Map::new();
    obj.insert("classes_total".into(), ju(report.classes_total)?);
    obj.insert("columns".into(), Value::Array(columns));
    obj.insert("exponent_den".into(), report.exponent.1.into());
    obj.insert("exponent_num".into(), report.exponent.0.into());
    obj.insert("label".into(), report.label.clone().into());
    obj.insert("n".into(), report.n.into());
    obj.insert("predicted".into(), ju(report.predicted)?);
    obj.insert("q".into(), report.q.into());
    obj.insert("verdict".into(), report.verdict.as_str().into());
    Ok(Output { json: Value::Object(obj), rows })
}

fn stratum_tag(stratum: Stratum) -> &'static str {
    match stratum {
        Stratum::OrdinaryTimesSupersingular => "ordinary-times-supersingular",
        Stratum::OrdinaryEc => "ordinary-ec",
    }
}

fn predict(
    cfgf: &FileConfig,
    stratum: Option<String>,
    t: Option<i64>,
    q: Option<u64>,
    n: Option<u32>,
    ell: Option<String>,
    m: Option<String>,
) -> Result<Output, CliError> {
    let stratum = Stratum::parse(&need::<String>(stratum, cfgf, "stratum")?)?;
    let (cn, cd) = conjectured_exponent(stratum);
    match stratum {
        Stratum::OrdinaryEc => {
            let t = need(t, cfgf, "t")?;
            let q = need(q, cfgf, "q")?;
            let n = need(n, cfgf, "n")?;
            let base = parse_prime_power(q)?;
            let fd = frobenius_data(t, base, n)?;
            let pred = predicted_ec_size(&fd)?;
            let mut predicted = Map::new();
            predicted.insert("class_number_order".into(), pred.class_number_order.into());
            predicted.insert("geometric_sum".into(), ju(pred.geometric_sum)?);
            predicted.insert("p_unramified".into(), ju(pred.p_unramified)?);
            let mut obj = Map::new();
            obj.insert("conjectured_den".into(), cd.into());
            obj.insert("conjectured_num".into(), cn.into());
            obj.insert("predicted".into(), Value::Object(predicted));
            obj.insert("stratum".into(), stratum_tag(stratum).into());
            let row = CsvRow {
                q: Some(q),
                n: Some(n),
                predicted: Some(pred.geometric_sum),
                ..CsvRow::default()
            };
            Ok(Output { json: Value::Object(obj), rows: vec![row] })
        }
        Stratum::OrdinaryTimesSupersingular => {
            let ells = parse_list(&need::<String>(ell, cfgf, "ell")?, "ell")?;
            let ms = parse_list(&need::<String>(m, cfgf, "m")?, "m")?;
            let ms = if ms.len() == 1 { vec![ms[0]; ells.len()] } else { ms };
            if ms.len() != ells.len() {
                return Err(CliError::Validation(
                    "--ell and --m lists must have equal length (or a single m)".into(),
                ));
            }
            let mut predicted: u128 = 1;
            for (&l, &mm) in ells.iter().zip(&ms) {
                let p = arith::checked_pow(l, mm as u32)
                    .and_then(|v| predicted.checked_mul(v))
                    .ok_or_else(|| {
                        CliError::Validation("predicted size exceeds the integer range".into())
                    })?;
                predicted = p;
            }
            let mut obj = Map::new();
            obj.insert("conjectured_den".into(), cd.into());
            obj.insert("conjectured_num".into(), cn.into());
            obj.insert("predicted".into(), ju(predicted)?);
            obj.insert("stratum".into(), stratum_tag(stratum).into());
            let row = CsvRow { predicted: Some(predicted), ..CsvRow::default() };
            Ok(Output { json: Value::Object(obj), rows: vec![row] })
        }
    }
}

fn verdict_cmd(
    cfgf: &FileConfig,
    count: Option<u64>,
    q: Option<u64>,
    n: Option<u32>,
    stratum: Option<String>,
    tau_num: Option<u32>,
    tau_den: Option<u32>,
) -> Result<Output, CliError> {
    let count = need(count, cfgf, "count")?;
    let q = need(q, cfgf, "q")?;
    let n = need(n, cfgf, "n")?;
    if q < 2 || n == 0 {
        return Err(CliError::Validation("verdict requires q >= 2 and n >= 1".into()));
    }
    let stratum = Stratum::parse(&need::<String>(stratum, cfgf, "stratum")?)?;
    let (tau_num, tau_den) = tau(cfgf, tau_num, tau_den)?;
    let (verdict, (xn, xd)) = theorem_verdict(count as u128, q, n, stratum, tau_num, tau_den);
    let mut obj = Map::new();
    obj.insert("count".into(), count.into());
    obj.insert("exponent_den".into(), xd.into());
    obj.insert("exponent_num".into(), xn.into());
    obj.insert("n".into(), n.into());
    obj.insert("q".into(), q.into());
    obj.insert("stratum".into(), stratum_tag(stratum).into());
    obj.insert("verdict".into(), verdict.as_str().into());
    let row = CsvRow {
        q: Some(q),
        n: Some(n),
        count: Some(count as u128),
        exponent_num: Some(xn),
        exponent_den: Some(xd),
        verdict: Some(verdict.as_str()),
        ..CsvRow::default()
    };
    Ok(Output { json: Value::Object(obj), rows: vec![row] })
}
