use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use palinfix::cf::{self, QuadraticValue};
use palinfix::generators::{near_sqrt3_psi, sturmian_psi, word_from_psi};
use palinfix::lengths::{self, DeltaEstimate, PalindromicProfile};
use palinfix::oracle;
use palinfix::psi::{episturmian_psi, recover_psi, DirectiveFunctionSpec, PsiValue, Tail};
use palinfix::verify::{self, CaseResult, Counterexample, Suite};
use palinfix::{FiniteWord, Letter, WordStream};

/// Words with abundant palindromic prefixes.
///
/// SPEC arguments are a path to a JSON spec or one of the builtins
/// `fibonacci`, `tribonacci`, `constant:<letter>`, `psi-n:<n>`,
/// `sturmian:<s>` (e.g. `sturmian:(2,1)`) and `episturmian:<delta>`
/// (e.g. `episturmian:(abc)`).
#[derive(Parser)]
#[command(name = "palinfix", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a prefix of w_ψ and/or its palindromic-prefix profile.
    Generate {
        spec: String,
        #[arg(long, default_value_t = 1000)]
        length: usize,
        #[arg(long, value_enum, default_value_t = Emit::Word)]
        emit: Emit,
        /// Word output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Profile CSV output file (stdout if omitted).
        #[arg(long)]
        profile_out: Option<PathBuf>,
    },
    /// Estimate δ, with the exact value when one is known.
    Delta {
        #[arg(required_unless_present = "word", conflicts_with = "word")]
        spec: Option<String>,
        /// Estimate from the palindromic prefixes of a word file instead.
        #[arg(long)]
        word: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        burn_in: usize,
        #[arg(long, default_value_t = 200)]
        window: usize,
        #[arg(long)]
        json: bool,
    },
    /// Report reducedness, the t-family and 𝒜-strictness.
    Check {
        spec: String,
        #[arg(long, default_value_t = 200)]
        horizon: usize,
    },
    /// Recover the reduced ψ of a word file and print it as JSON.
    Recover {
        #[arg(long)]
        word: PathBuf,
        /// Letters of the word to use (all of them if omitted).
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        profile_out: Option<PathBuf>,
    },
    /// Print the word of first letters δ_1 δ_2 ….
    FirstLetters {
        spec: String,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
    /// Enumerate [1; 1, b] over admissible b as CSV.
    Scan {
        #[arg(long, default_value_t = 3)]
        max_entry: u64,
        #[arg(long, default_value_t = 6)]
        max_period: usize,
        #[arg(long, default_value_t = 3)]
        max_preperiod: usize,
        /// Exclusive lower bound, e.g. `sqrt(3)`.
        #[arg(long)]
        lo: Option<String>,
        /// Exclusive upper bound, e.g. `(7+sqrt(13))/6`.
        #[arg(long)]
        hi: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run randomized property suites, or replay a counterexample.
    Verify {
        /// Suite name or `all`.
        #[arg(long, default_value = "all", required_unless_present = "replay")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Counterexample JSON written by an earlier failing run.
        #[arg(long)]
        replay: Option<PathBuf>,
        /// Where to write the first counterexample (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Appendix diagnostics: summary JSON and the α trace as CSV.
    Diagnostics {
        spec: String,
        #[arg(long, default_value_t = 300)]
        terms: usize,
        /// CSV of `i,alpha,hull_width` (omitted if not given).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Word,
    Profile,
    Both,
}

enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("PALINFIX_THREADS") else { return Ok(()) };
    let n: usize = raw.trim().parse().with_context(|| format!("PALINFIX_THREADS={raw:?}"))?;
    if n == 0 {
        bail!("PALINFIX_THREADS must be positive");
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Generate { spec, length, emit, out, profile_out } => {
            generate(&load_spec(&spec)?, length, emit, out.as_deref(), profile_out.as_deref())?
        }
        Command::Delta { spec, word, burn_in, window, json } => {
            positive("window", window)?;
            let est = match (spec, word) {
                (Some(spec), _) => lengths::delta_estimate(&load_spec(&spec)?, burn_in, window)?,
                (None, Some(path)) => {
                    let w = read_word(&path)?;
                    let len = w.letters().len();
                    oracle::delta_from_word(&mut WordStream::finite(w), len, burn_in)?
                }
                (None, None) => unreachable!("clap requires one input"),
            };
            emit_text(None, &render_delta(&est, json)?)?;
        }
        Command::Check { spec, horizon } => {
            positive("horizon", horizon)?;
            emit_text(None, &check_report(&load_spec(&spec)?, horizon)?)?;
        }
        Command::Recover { word, horizon, profile_out } => {
            let w = read_word(&word)?;
            let len = horizon.unwrap_or(w.letters().len()).min(w.letters().len());
            let (spec, profile) = recover_psi(&mut WordStream::finite(w), len)?;
            emit_text(None, &format!("{}\n", spec.to_json()))?;
            if let Some(path) = profile_out {
                write_csv(Some(&path), &["i", "n_i", "psi_i", "ratio"], profile.to_csv_rows())?;
            }
        }
        Command::FirstLetters { spec, count } => {
            let letters = load_spec(&spec)?.first_letters(count)?;
            emit_text(None, &format!("{}\n", palinfix::words::render(&letters)))?;
        }
        Command::Scan { max_entry, max_period, max_preperiod, lo, hi, out } => {
            positive("max-entry", max_entry as usize)?;
            positive("max-period", max_period)?;
            let bound = |s: Option<String>| s.map(|s| s.parse::<QuadraticValue>()).transpose();
            let (lo, hi) = (bound(lo)?, bound(hi)?);
            let rows = cf::spectrum(max_entry, max_period, max_preperiod)
                .into_iter()
                .filter(|e| lo.as_ref().is_none_or(|lo| *lo < e.value) && hi.as_ref().is_none_or(|hi| e.value < *hi))
                .map(|e| [e.b.to_string(), e.value.to_string(), e.value.to_decimal(10)]);
            write_csv(out.as_deref(), &["b", "value", "decimal"], rows)?;
        }
        Command::Verify { suite, seed, cases, replay, out } => {
            return match replay {
                Some(path) => replay_counterexample(&path),
                None => run_suites(&suite, seed, cases, out.as_deref()),
            }
        }
        Command::Diagnostics { spec, terms, csv } => {
            positive("terms", terms)?;
            let report = lengths::appendix_diagnostics(&load_spec(&spec)?, terms)?;
            emit_text(None, &format!("{}\n", serde_json::to_string_pretty(&summary(&report))?))?;
            if let Some(path) = csv {
                let rows = report
                    .alpha
                    .iter()
                    .enumerate()
                    .map(|(k, a)| [k.to_string(), format!("{a:.12}"), report.hull_width.get(k).map_or(String::new(), |w| format!("{w:.6e}"))]);
                write_csv(Some(&path), &["i", "alpha", "hull_width"], rows)?;
            }
        }
    }
    Ok(Outcome::Ok)
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        bail!("--{name} must be positive");
    }
    Ok(())
}

fn load_spec(arg: &str) -> Result<DirectiveFunctionSpec> {
    if let Some(spec) = builtin_spec(arg)? {
        return Ok(spec);
    }
    let text = fs::read_to_string(arg).with_context(|| format!("{arg} is neither a builtin spec nor a readable file"))?;
    Ok(DirectiveFunctionSpec::from_json(&text)?)
}

fn builtin_spec(arg: &str) -> Result<Option<DirectiveFunctionSpec>> {
    let (name, param) = arg.split_once(':').map_or((arg, None), |(a, b)| (a, Some(b)));
    let need = || param.ok_or_else(|| anyhow!("{name} needs a parameter, as in {name}:<value>"));
    Ok(Some(match name {
        "fibonacci" => DirectiveFunctionSpec::fibonacci(),
        "tribonacci" => DirectiveFunctionSpec::tribonacci(),
        "constant" => {
            let c = need()?.chars().next().ok_or_else(|| anyhow!("constant needs a letter"))?;
            DirectiveFunctionSpec::constant(Letter::from_char(c).ok_or_else(|| anyhow!("{c:?} is not a letter"))?)
        }
        "psi-n" => near_sqrt3_psi(need()?.parse().context("psi-n takes an integer")?)?,
        "sturmian" => sturmian_psi(&need()?.parse()?),
        "episturmian" => episturmian_psi(&need()?.parse()?),
        _ => return Ok(None),
    }))
}

fn read_word(path: &Path) -> Result<FiniteWord> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let letters: String = text.split_whitespace().collect();
    Ok(FiniteWord::parse(&letters)?)
}

fn generate(spec: &DirectiveFunctionSpec, length: usize, emit: Emit, out: Option<&Path>, profile_out: Option<&Path>) -> Result<()> {
    positive("length", length)?;
    let mut g = word_from_psi(spec, length)?;
    let word = g.prefix(length)?;
    if emit != Emit::Profile {
        emit_text(out, &format!("{}\n", word.render()))?;
    }
    if emit != Emit::Word {
        let keep = g.profile.small_lengths().iter().take_while(|&&n| n <= length).count();
        let profile = PalindromicProfile::new(g.profile.n[..keep].to_vec(), g.profile.steps[..keep.min(g.profile.steps.len())].to_vec());
        write_csv(profile_out, &["i", "n_i", "psi_i", "ratio"], profile.to_csv_rows())?;
    }
    Ok(())
}

fn render_delta(est: &DeltaEstimate, json: bool) -> Result<String> {
    if json {
        return Ok(format!("{}\n", serde_json::to_string(est)?));
    }
    let value = if est.is_infinite() { "inf".to_string() } else { format!("{:.6}", est.value) };
    let mut s = format!("delta {value}\n");
    if let Some(exact) = &est.exact {
        s += &format!("exact {exact}\n");
    }
    s += &format!("burn_in {}\nwindow {}\nspread {:.3e}\n", est.burn_in, est.window, est.spread);
    Ok(s)
}

fn check_report(spec: &DirectiveFunctionSpec, horizon: usize) -> Result<String> {
    let mut s = format!("reduced: {}\n", spec.is_reduced(horizon)?);
    let family = spec.t_family(horizon)?;
    let shown: Vec<String> = family.indices.iter().take(30).map(|t| t.to_string()).collect();
    let more = if family.indices.len() > 30 { ",…" } else { "" };
    s += &format!(
        "t_family: {}{more} ({})\n",
        shown.join(","),
        if family.exhaustive { "complete" } else { "up to horizon" }
    );
    s += &format!(
        "infinite_t_family: {}\n",
        spec.has_infinite_t_family().map_or("unknown".to_string(), |b| b.to_string())
    );
    let alphabet: BTreeSet<Letter> = spec
        .table()
        .iter()
        .filter_map(|v| match v {
            PsiValue::Letter(l) => Some(*l),
            PsiValue::Index(_) => None,
        })
        .chain(spec.first_letters(horizon).unwrap_or_default())
        .collect();
    if !matches!(spec.tail(), Tail::Truncated) {
        s += &format!("strict: {:?}\n", spec.is_a_strict(&alphabet, horizon)?);
    }
    match spec.tail_structure() {
        Some(t) => s += &format!("tail: from {} with period {}, max offset {}\n", t.start, t.period, t.max_offset),
        None => s += "tail: no periodic offset structure\n",
    }
    Ok(s)
}

fn summary(r: &lengths::AppendixReport) -> serde_json::Value {
    serde_json::json!({
        "terms": r.terms,
        "growth_checked": r.growth_checked,
        "growth_failure": r.growth_failure,
        "back_reference_bound": r.back_reference_bound,
        "delta_ceiling": r.delta_ceiling,
        "delta": r.delta,
        "ceiling_respected": r.ceiling_respected,
        "alpha_terms": r.alpha.len(),
        "hull_monotone": r.hull_monotone,
        "contraction": r.contraction,
    })
}

fn run_suites(name: &str, seed: u64, cases: usize, out: Option<&Path>) -> Result<Outcome> {
    positive("cases", cases)?;
    let suites = if name == "all" { Suite::ALL.to_vec() } else { vec![name.parse::<Suite>()?] };
    let mut first: Option<Counterexample> = None;
    for suite in suites {
        let report = verify::run_suite(suite, seed, cases);
        eprintln!("{report}");
        if first.is_none() {
            first = report.failures.into_iter().next();
        }
    }
    match first {
        None => Ok(Outcome::Ok),
        Some(c) => {
            emit_text(out, &format!("{}\n", serde_json::to_string_pretty(&c)?))?;
            Ok(Outcome::Failed)
        }
    }
}

fn replay_counterexample(path: &Path) -> Result<Outcome> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let c: Counterexample = serde_json::from_str(&text).context("parsing counterexample")?;
    let suite: Suite = c.suite.parse()?;
    Ok(match verify::replay(suite, &c.input, c.case_seed)? {
        CaseResult::Fail { index, message, .. } => {
            eprintln!("FAIL {suite} case {}: {message} (index {index:?})", c.case);
            Outcome::Failed
        }
        CaseResult::Skip(why) => {
            eprintln!("SKIP {suite} case {}: {why}", c.case);
            Outcome::Ok
        }
        CaseResult::Pass => {
            eprintln!("PASS {suite} case {}", c.case);
            Outcome::Ok
        }
    })
}

fn emit_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().lock().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn write_csv<R: IntoIterator<Item = [String; N]>, const N: usize>(path: Option<&Path>, header: &[&str; N], rows: R) -> Result<()> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
