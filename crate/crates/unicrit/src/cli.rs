//! Command-line interface: one subcommand per capability, text or
//! machine-readable output, and scriptable exit codes (0 = success/pass,
//! 1 = failing verification or negative verdict, 2 = usage error).

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::census::{emit_report, run_census, CensusOptions, ReportFormat};
use crate::dynamics::{OrbitKind, UnicriticalPoly};
use crate::integer_kernel::{prime_divisors, pth_power_witness};
use crate::irreducibility::{certify_with_resolver, CertRule, IrreducibilityVerdict, ResolverOptions};
use crate::semigroup::{classify_semigroup, density_lower_bound, ClassificationOutcome, Presentation, Word};
use crate::verifier::{run_all, run_suite, SuiteId, SuiteParams};

#[derive(Parser)]
#[command(
    name = "unicrit",
    version,
    about = "Irreducibility and dynamics of compositions of x^d + c over the integers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the orbit of an integer point under x^d + c
    Orbit {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// List powered fixed points (and 2-cycles for d = 2) of x^d + c
    PoweredPoints {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Certify irreducibility of a composition word over the presentation
    Irreducible {
        #[command(flatten)]
        pres: PresentationArgs,
        /// Generator indices, outermost first, comma-separated
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
        #[command(flatten)]
        resolver: ResolverArgs,
    },
    /// Run the semigroup trichotomy classifier on a presentation
    Classify {
        #[command(flatten)]
        pres: PresentationArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
    },
    /// Chain-certify every word up to a length bound and report statistics
    Census {
        #[command(flatten)]
        pres: PresentationArgs,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        /// Output file; standard output when omitted
        #[arg(long)]
        output: Option<PathBuf>,
        /// Thread count; defaults to UNICRIT_WORKERS or the global pool
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        resolver: ResolverArgs,
    },
    /// Run one verification suite, or all of them
    Verify {
        /// Suite id; all suites when omitted
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: TextFormat,
        #[command(flatten)]
        ranges: RangeArgs,
    },
}

#[derive(Args)]
struct PresentationArgs {
    #[arg(long)]
    d: u32,
    /// Comma-separated integer coefficients (deduplicated, sorted)
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
}

#[derive(Args)]
struct ResolverArgs {
    /// Disable the mod-q resolution of chain-blocked words
    #[arg(long)]
    no_resolver: bool,
    /// Degree cap for dense expansion in the resolver
    #[arg(long)]
    degree_cap: Option<u64>,
}

impl ResolverArgs {
    fn options(&self) -> ResolverOptions {
        let mut opts = ResolverOptions::default();
        opts.enabled = !self.no_resolver;
        if let Some(cap) = self.degree_cap {
            opts.degree_cap = cap;
        }
        opts
    }
}

#[derive(Args, Default)]
struct RangeArgs {
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    d_max: Option<u32>,
    #[arg(long)]
    c_max: Option<i64>,
    #[arg(long)]
    x_max: Option<i64>,
    #[arg(long)]
    r_max: Option<i64>,
    #[arg(long)]
    beta_max: Option<i64>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long)]
    m_max: Option<u32>,
    #[arg(long)]
    max_len: Option<usize>,
    #[arg(long)]
    trials: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
}

impl RangeArgs {
    fn params(&self) -> SuiteParams {
        SuiteParams {
            d: self.d,
            d_max: self.d_max,
            c_max: self.c_max,
            x_max: self.x_max,
            r_max: self.r_max,
            beta_max: self.beta_max,
            n_max: self.n_max,
            m_max: self.m_max,
            max_len: self.max_len,
            trials: self.trials,
            seed: self.seed,
        }
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    2
}

fn parse_bigint(s: &str) -> Result<BigInt, String> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| format!("{s:?} is not an integer"))
}

fn parse_coeffs(s: &str) -> Result<Vec<BigInt>, String> {
    s.split(',')
        .map(parse_bigint)
        .collect::<Result<Vec<_>, _>>()
}

fn parse_word(s: &str) -> Result<Word, String> {
    let indices = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("{t:?} is not a generator index"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Word::new(indices).map_err(|e| e.to_string())
}

/// Annotates a value with its power witness, if any prime `p | d` applies.
fn power_note(v: &BigInt, d: u32) -> Option<String> {
    prime_divisors(d)
        .ok()?
        .into_iter()
        .find_map(|p| pth_power_witness(v, p))
        .map(|w| format!("{v} = {w}"))
}

/// Parses `argv` (including the program name) and runs one subcommand,
/// returning the process exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Orbit { d, c, alpha, format } => cmd_orbit(d, &c, &alpha, format),
        Command::PoweredPoints { d, c, format } => cmd_powered_points(d, &c, format),
        Command::Irreducible {
            pres,
            word,
            format,
            resolver,
        } => cmd_irreducible(&pres, &word, format, &resolver),
        Command::Classify { pres, format } => cmd_classify(&pres, format),
        Command::Census {
            pres,
            max_len,
            format,
            output,
            workers,
            resolver,
        } => cmd_census(&pres, max_len, format, output, workers, &resolver),
        Command::Verify {
            suite,
            format,
            ranges,
        } => cmd_verify(suite.as_deref(), format, &ranges),
    }
}

fn make_poly(d: u32, c: &str) -> Result<UnicriticalPoly, String> {
    UnicriticalPoly::new(d, parse_bigint(c)?).map_err(|e| e.to_string())
}

fn make_presentation(args: &PresentationArgs) -> Result<Presentation, String> {
    Presentation::new(args.d, parse_coeffs(&args.coeffs)?).map_err(|e| e.to_string())
}

fn cmd_orbit(d: u32, c: &str, alpha: &str, format: TextFormat) -> i32 {
    let (f, alpha) = match (make_poly(d, c), parse_bigint(alpha)) {
        (Ok(f), Ok(a)) => (f, a),
        (Err(e), _) | (_, Err(e)) => return usage_error(&e),
    };
    let report = f.orbit_classify(&alpha);
    let notes: Vec<String> = report
        .prefix
        .iter()
        .filter_map(|v| power_note(v, d))
        .collect();
    match format {
        TextFormat::Json => {
            let kind = match report.kind {
                OrbitKind::Preperiodic { tail, period } => serde_json::json!({
                    "kind": "preperiodic", "tail": tail, "period": period,
                }),
                OrbitKind::Escaping { index } => serde_json::json!({
                    "kind": "escaping", "index": index,
                }),
            };
            let prefix: Vec<String> = report.prefix.iter().map(|v| v.to_string()).collect();
            println!(
                "{}",
                serde_json::json!({
                    "map": f.to_string(),
                    "alpha": alpha.to_string(),
                    "orbit": kind,
                    "prefix": prefix,
                    "power_notes": notes,
                })
            );
        }
        TextFormat::Text => {
            let prefix: Vec<String> = report.prefix.iter().map(|v| v.to_string()).collect();
            match report.kind {
                OrbitKind::Preperiodic { tail, period } => println!(
                    "{f}: alpha = {alpha} is preperiodic (tail {tail}, period {period}); orbit {}",
                    prefix.join(", ")
                ),
                OrbitKind::Escaping { index } => println!(
                    "{f}: alpha = {alpha} is escaping at index {index}; prefix {}",
                    prefix.join(", ")
                ),
            }
            for note in &notes {
                println!("note: {note}");
            }
        }
    }
    0
}

fn cmd_powered_points(d: u32, c: &str, format: TextFormat) -> i32 {
    let f = match make_poly(d, c) {
        Ok(f) => f,
        Err(e) => return usage_error(&e),
    };
    let fixed = f.powered_fixed_points();
    let two_cycles = f.powered_two_cycles().unwrap_or_default();
    match format {
        TextFormat::Json => {
            let fixed: Vec<serde_json::Value> = fixed
                .iter()
                .map(|w| {
                    serde_json::json!({
                        "value": w.value().to_string(),
                        "epsilon": w.epsilon,
                        "y": w.y.to_string(),
                        "p": w.p,
                    })
                })
                .collect();
            let cycles: Vec<String> = two_cycles.iter().map(|v| v.to_string()).collect();
            println!(
                "{}",
                serde_json::json!({
                    "map": f.to_string(),
                    "powered_fixed_points": fixed,
                    "powered_two_cycles": cycles,
                })
            );
        }
        TextFormat::Text => {
            if fixed.is_empty() {
                println!("{f}: no powered fixed points");
            }
            for w in &fixed {
                println!("{f}: powered fixed point {} = {w}", w.value());
            }
            for v in &two_cycles {
                println!("{f}: powered 2-cycle value {v}");
            }
        }
    }
    0
}

fn verdict_json(verdict: &IrreducibilityVerdict) -> serde_json::Value {
    match verdict {
        IrreducibilityVerdict::Irreducible(cert) => {
            let rule = match &cert.rule {
                CertRule::Chain => serde_json::json!({"rule": "chain"}),
                CertRule::Stability { generator, count } => serde_json::json!({
                    "rule": "stability", "generator": generator, "count": count,
                }),
                CertRule::ModqResolved { q } => serde_json::json!({
                    "rule": "modq", "q": q,
                }),
            };
            let steps: Vec<serde_json::Value> = cert
                .steps
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "step": s.step,
                        "value": s.value.to_string(),
                        "primes_checked": s.primes_checked,
                    })
                })
                .collect();
            serde_json::json!({"verdict": "irreducible", "certificate": rule, "steps": steps})
        }
        IrreducibilityVerdict::Reducible(w) => {
            serde_json::json!({"verdict": "reducible", "witness": format!("{w:?}")})
        }
        IrreducibilityVerdict::Unknown(u) => serde_json::json!({
            "verdict": "unknown",
            "step": u.step,
            "blocking": u.witness.to_string(),
        }),
    }
}

fn cmd_irreducible(
    pres_args: &PresentationArgs,
    word: &str,
    format: TextFormat,
    resolver: &ResolverArgs,
) -> i32 {
    let pres = match make_presentation(pres_args) {
        Ok(p) => p,
        Err(e) => return usage_error(&e),
    };
    let word = match parse_word(word) {
        Ok(w) => w,
        Err(e) => return usage_error(&e),
    };
    if let Err(e) = word.validate_for(&pres) {
        return usage_error(&e.to_string());
    }
    let verdict = certify_with_resolver(&pres, &word, &resolver.options());
    match format {
        TextFormat::Json => println!("{}", verdict_json(&verdict)),
        TextFormat::Text => match &verdict {
            IrreducibilityVerdict::Irreducible(cert) => {
                println!("word {word}: irreducible ({})", match &cert.rule {
                    CertRule::Chain => "chain certificate".to_string(),
                    CertRule::Stability { generator, count } => {
                        format!("stability: generator {generator} to the power {count}")
                    }
                    CertRule::ModqResolved { q } => format!("irreducible mod {q}"),
                });
                for s in &cert.steps {
                    println!("  step {}: test value {} is no p-th power", s.step, s.value);
                }
            }
            IrreducibilityVerdict::Reducible(w) => println!("word {word}: reducible ({w:?})"),
            IrreducibilityVerdict::Unknown(u) => println!(
                "word {word}: unknown (step {} blocks on {})",
                u.step, u.witness
            ),
        },
    }
    match verdict {
        IrreducibilityVerdict::Reducible(_) => 1,
        _ => 0,
    }
}

fn outcome_json(pres: &Presentation, outcome: &ClassificationOutcome) -> serde_json::Value {
    match outcome {
        ClassificationOutcome::NoIrreducibleGenerator => {
            serde_json::json!({"outcome": "no-irreducible-generator"})
        }
        ClassificationOutcome::CertifiedFamily { f1, f2, word, rule } => {
            let density = density_lower_bound(pres, outcome)
                .map(|r| r.to_string())
                .unwrap_or_default();
            serde_json::json!({
                "outcome": "certified-family",
                "f1": f1,
                "f2": f2,
                "word": word.indices(),
                "rule": rule.name(),
                "density_lower_bound": density,
            })
        }
        ClassificationOutcome::Exceptional(e) => serde_json::json!({
            "outcome": "exceptional",
            "y": e.y.to_string(),
            "p": e.p,
            "statement": e.statement,
            "equality": e.equality,
        }),
        ClassificationOutcome::PriorWorkResolvedD2 => {
            serde_json::json!({"outcome": "prior-work-resolved-d2"})
        }
    }
}

fn cmd_classify(pres_args: &PresentationArgs, format: TextFormat) -> i32 {
    let pres = match make_presentation(pres_args) {
        Ok(p) => p,
        Err(e) => return usage_error(&e),
    };
    let outcome = classify_semigroup(&pres);
    match format {
        TextFormat::Json => println!("{}", outcome_json(&pres, &outcome)),
        TextFormat::Text => match &outcome {
            ClassificationOutcome::NoIrreducibleGenerator => {
                println!("no irreducible generator: every element is reducible");
            }
            ClassificationOutcome::CertifiedFamily { f1, f2, word, rule } => {
                let density = density_lower_bound(&pres, &outcome)
                    .map(|r| r.to_string())
                    .unwrap_or_default();
                print!("certified family by rule {}: f1 = {}", rule.name(), pres.generator(*f1));
                if let Some(f2) = f2 {
                    print!(", f2 = {}", pres.generator(*f2));
                }
                println!("; word [{}]; density lower bound {density}", word);
            }
            ClassificationOutcome::Exceptional(e) => println!(
                "exceptional family: coefficients lie in the (y, p) = ({}, {}) value set (statement {}, equality {})",
                e.y, e.p, e.statement, e.equality
            ),
            ClassificationOutcome::PriorWorkResolvedD2 => {
                println!("degree-2 exceptional case: resolved in prior published work");
            }
        },
    }
    match outcome {
        ClassificationOutcome::NoIrreducibleGenerator | ClassificationOutcome::Exceptional(_) => 1,
        _ => 0,
    }
}

fn cmd_census(
    pres_args: &PresentationArgs,
    max_len: usize,
    format: TableFormat,
    output: Option<PathBuf>,
    workers: Option<usize>,
    resolver: &ResolverArgs,
) -> i32 {
    let pres = match make_presentation(pres_args) {
        Ok(p) => p,
        Err(e) => return usage_error(&e),
    };
    let workers = workers.or_else(|| {
        std::env::var("UNICRIT_WORKERS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    let mut opts = CensusOptions::default();
    opts.resolver = !resolver.no_resolver;
    if let Some(cap) = resolver.degree_cap {
        opts.degree_cap = cap;
    }
    opts.workers = workers;
    let rows = match run_census(&pres, max_len, &opts) {
        Ok(rows) => rows,
        Err(e) => return usage_error(&e.to_string()),
    };
    let format = match format {
        TableFormat::Csv => ReportFormat::Csv,
        TableFormat::Json => ReportFormat::Json,
    };
    match emit_report(&pres, &rows, &opts, format, output.as_deref()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn cmd_verify(suite: Option<&str>, format: TextFormat, ranges: &RangeArgs) -> i32 {
    let params = ranges.params();
    let reports = match suite {
        Some(name) => match SuiteId::parse(name) {
            Ok(id) => vec![run_suite(id, &params)],
            Err(e) => return usage_error(&e.to_string()),
        },
        None => run_all(&params),
    };
    match format {
        TextFormat::Json => {
            let values: Vec<serde_json::Value> = reports.iter().map(|r| r.to_json()).collect();
            println!("{}", serde_json::Value::Array(values));
        }
        TextFormat::Text => {
            for r in &reports {
                println!("{r}");
            }
        }
    }
    if reports.iter().all(|r| r.passed()) {
        0
    } else {
        1
    }
}
