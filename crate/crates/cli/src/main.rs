//! `kron` — exact-arithmetic experiments with Kronecker sequences on the
//! d-torus: best-approximation scans, nearest-distance gap statistics,
//! continued fractions, witness search, and doubling-failure sampling.

mod alpha;
mod output;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kron_core::{
    cf_convergents, bracketing_count, compute_best_approximations, compute_until_record_exceeds,
    contact_number, count_distinct, doubling_index, gap_spectrum, halving_check,
    ratio_floor_check, sample_doubling_violations, search_high_g, verify_sum_inequality,
    window_stats, BestApproxSequence, CFDescription, CfKind, CountSeries, NormKind, Quantifier,
    RationalVector, DEFAULT_PRIME,
};

use alpha::parse_alpha_spec;
use output::{write_output, Meta};

#[derive(Debug)]
pub enum CliError {
    /// Bad input or unsatisfiable precondition; exit 2.
    Validation(String),
    /// An invariant the program itself guarantees was broken; exit 1.
    Internal(String),
}

impl From<kron_core::Error> for CliError {
    fn from(e: kron_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "{m}"),
            CliError::Internal(m) => write!(f, "internal assertion failed: {m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
    /// The line-oriented record format (bda, gaps, search).
    Lines,
}

impl fmt::Display for OutFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OutFormat::Json => "json",
            OutFormat::Csv => "csv",
            OutFormat::Lines => "lines",
        };
        f.write_str(s)
    }
}

impl FromStr for OutFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutFormat::Json),
            "csv" => Ok(OutFormat::Csv),
            "lines" => Ok(OutFormat::Lines),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "kron",
    version,
    about = "Exact-arithmetic gap statistics of Kronecker sequences on the d-torus"
)]
struct Cli {
    /// Flat key=value config file; explicit flags override file entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan the best Diophantine approximation sequence of alpha.
    Bda(BdaArgs),
    /// Distinct nearest-distance counts g(alpha, N) over a window of N.
    Gaps(GapsArgs),
    /// Growth-inequality checks on a best-approximation sequence.
    Verify(VerifyArgs),
    /// Continued fraction expansion, convergents, tail classification.
    Cf(CfArgs),
    /// Randomized search for (alpha, N) with a large count, oracle-verified.
    Search(SearchArgs),
    /// Sample alphas and count indices with q_{n+T} < 2 q_n.
    Sample(SampleArgs),
}

#[derive(Args)]
struct OutArgs {
    /// Output format (default json).
    #[arg(long)]
    format: Option<OutFormat>,
    /// Output path (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit the timestamp field from JSON output.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args)]
struct BdaArgs {
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    norm: Option<NormKind>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    qmax: Option<u64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct GapsArgs {
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    norm: Option<NormKind>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    nlo: Option<u64>,
    #[arg(long)]
    nhi: Option<u64>,
    /// Compute only the enumeration oracle.
    #[arg(long, conflicts_with = "fast")]
    oracle: bool,
    /// Compute only the fast bracketing path.
    #[arg(long)]
    fast: bool,
    /// Run both paths and fail (exit 1) on any mismatch.
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    norm: Option<NormKind>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    qmax: Option<u64>,
    /// Check q_{n+shift} >= q_{n+1} + q_n.
    #[arg(long)]
    shift: Option<u64>,
    /// With --shift: report witnesses instead of requiring every index.
    #[arg(long)]
    exists: bool,
    /// Check q_{n+shift} >= q_{n+1} + q_n with the contact-number shift.
    #[arg(long)]
    contact: bool,
    /// Check r_{n+K} <= r_n / 2 for this K.
    #[arg(long)]
    halving: Option<u64>,
    /// Check q_{n+1} >= floor(r_{n-1}/r_n) * q_n (Linf only).
    #[arg(long)]
    ratio: bool,
    /// Report the minimal T with q_{n+T} >= 2 q_n over the horizon.
    #[arg(long)]
    doubling: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct CfArgs {
    /// A rational in (0,1) such as 89/144, or a description like [0;3,(1,2)].
    #[arg(long)]
    input: Option<String>,
    /// Emit the first k convergents.
    #[arg(long)]
    convergents: Option<usize>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    norm: Option<NormKind>,
    #[arg(long)]
    target: Option<u64>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    nmax: Option<u64>,
    #[arg(long)]
    prime: Option<u64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    norm: Option<NormKind>,
    #[arg(long)]
    shift: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    qmax: Option<u64>,
    #[arg(long)]
    prime: Option<u64>,
    #[command(flatten)]
    out: OutArgs,
}

/// Fallback values from the flat key=value config file.
struct Ctx {
    cfg: BTreeMap<String, String>,
    resolved: BTreeMap<String, String>,
    no_timestamp: bool,
}

impl Ctx {
    fn load(path: &Option<PathBuf>) -> Result<Self, CliError> {
        let mut cfg = BTreeMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Validation(format!("cannot read config {}: {e}", path.display()))
            })?;
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line.split_once('=').ok_or_else(|| {
                    CliError::Validation(format!("config line is not key=value: `{line}`"))
                })?;
                cfg.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(Self {
            cfg,
            resolved: BTreeMap::new(),
            no_timestamp: false,
        })
    }

    /// Flag value, else config-file value, else default.
    fn get<T: FromStr + fmt::Display + Clone>(
        &mut self,
        flag: &Option<T>,
        key: &str,
        default: Option<T>,
    ) -> Result<T, CliError>
    where
        T::Err: fmt::Display,
    {
        let value = if let Some(v) = flag {
            v.clone()
        } else if let Some(raw) = self.cfg.get(key) {
            raw.parse::<T>()
                .map_err(|e| CliError::Validation(format!("config {key}={raw}: {e}")))?
        } else if let Some(d) = default {
            d
        } else {
            return Err(CliError::Validation(format!("missing required --{key}")));
        };
        self.resolved.insert(key.to_string(), value.to_string());
        Ok(value)
    }

    fn get_opt<T: FromStr + fmt::Display + Clone>(
        &mut self,
        flag: &Option<T>,
        key: &str,
    ) -> Result<Option<T>, CliError>
    where
        T::Err: fmt::Display,
    {
        if flag.is_none() && !self.cfg.contains_key(key) {
            return Ok(None);
        }
        self.get(flag, key, None).map(Some)
    }

    fn note(&mut self, key: &str, value: impl fmt::Display) {
        self.resolved.insert(key.to_string(), value.to_string());
    }

    fn meta(&self, command: &str) -> Meta {
        Meta::new(command, self.resolved.clone(), self.no_timestamp)
    }

    /// Every run prints the resolved configuration for reproducibility.
    fn print_resolved(&self, command: &str) {
        let mut line = format!("resolved: command={command}");
        for (k, v) in &self.resolved {
            line.push_str(&format!(" {k}={v}"));
        }
        eprintln!("{line}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(e @ CliError::Validation(_)) => {
            eprintln!("error: {e}");
            2
        }
        Err(e @ CliError::Internal(_)) => {
            eprintln!("error: {e}");
            1
        }
    };
    ExitCode::from(code)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut ctx = Ctx::load(&cli.config)?;
    match cli.command {
        Command::Bda(args) => run_bda(&mut ctx, args),
        Command::Gaps(args) => run_gaps(&mut ctx, args),
        Command::Verify(args) => run_verify(&mut ctx, args),
        Command::Cf(args) => run_cf(&mut ctx, args),
        Command::Search(args) => run_search(&mut ctx, args),
        Command::Sample(args) => run_sample(&mut ctx, args),
    }
}

fn resolve_out(ctx: &mut Ctx, out: &OutArgs) -> Result<(OutFormat, Option<PathBuf>), CliError> {
    let format = ctx.get(&out.format, "format", Some(OutFormat::Json))?;
    let path = match (&out.out, ctx.cfg.get("out")) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(p)) => Some(PathBuf::from(p)),
        (None, None) => None,
    };
    if let Some(p) = &path {
        ctx.note("out", p.display());
    }
    ctx.no_timestamp = out.no_timestamp || ctx.cfg.get("no_timestamp").map(String::as_str) == Some("true");
    Ok((format, path))
}

fn resolve_alpha(
    ctx: &mut Ctx,
    alpha: &Option<String>,
    dim: &Option<usize>,
) -> Result<RationalVector, CliError> {
    let dim = ctx.get_opt(dim, "dim")?;
    let spec = ctx.get(alpha, "alpha", None::<String>)?;
    let alpha = parse_alpha_spec(&spec, dim)?;
    ctx.note("alpha", &alpha);
    Ok(alpha)
}

#[derive(Serialize)]
struct TermOut {
    q: u64,
    r: String,
}

#[derive(Serialize)]
struct BdaDoc {
    meta: Meta,
    alpha: RationalVector,
    norm: NormKind,
    q_max: u64,
    hit_zero: bool,
    terms: Vec<TermOut>,
}

fn term_rows(seq: &BestApproxSequence) -> Vec<TermOut> {
    seq.terms()
        .iter()
        .map(|t| TermOut {
            q: t.q,
            r: t.r.value.to_string(),
        })
        .collect()
}

fn run_bda(ctx: &mut Ctx, args: BdaArgs) -> Result<(), CliError> {
    let (format, path) = resolve_out(ctx, &args.out)?;
    let alpha = resolve_alpha(ctx, &args.alpha, &args.dim)?;
    let norm = ctx.get(&args.norm, "norm", Some(NormKind::Linf))?;
    let q_max = ctx.get(&args.qmax, "qmax", None)?;
    ctx.print_resolved("bda");

    let seq = compute_best_approximations(&alpha, norm, q_max)?;
    let content = match format {
        OutFormat::Lines => seq.to_records(),
        OutFormat::Json => {
            let doc = BdaDoc {
                meta: ctx.meta("bda"),
                alpha: alpha.clone(),
                norm,
                q_max: seq.q_max(),
                hit_zero: seq.hit_zero(),
                terms: term_rows(&seq),
            };
            output::to_json(&doc)?
        }
        OutFormat::Csv => {
            let mut w = output::csv_writer();
            w.write_record(["n", "q", "r_numerator", "r_denominator", "norm"])
                .map_err(output::csv_err)?;
            for (i, t) in seq.terms().iter().enumerate() {
                w.write_record([
                    (i + 1).to_string(),
                    t.q.to_string(),
                    t.r.value.numer().to_string(),
                    t.r.value.denom().to_string(),
                    norm.to_string(),
                ])
                .map_err(output::csv_err)?;
            }
            output::csv_finish(w)?
        }
    };
    write_output(&path, &content)
}

#[derive(Serialize)]
struct GapsRow {
    n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    g_fast: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g_oracle: Option<u64>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    matches: Option<bool>,
}

#[derive(Serialize)]
struct GapsDoc {
    meta: Meta,
    alpha: RationalVector,
    norm: NormKind,
    n_lo: u64,
    n_hi: u64,
    rows: Vec<GapsRow>,
    window_min: u64,
    window_max: u64,
}

fn run_gaps(ctx: &mut Ctx, args: GapsArgs) -> Result<(), CliError> {
    let (format, path) = resolve_out(ctx, &args.out)?;
    let alpha = resolve_alpha(ctx, &args.alpha, &args.dim)?;
    let norm = ctx.get(&args.norm, "norm", Some(NormKind::Linf))?;
    let n_lo = ctx.get(&args.nlo, "nlo", Some(2))?;
    let n_hi = ctx.get(&args.nhi, "nhi", None)?;
    let run_fast = !args.oracle;
    let run_oracle = !args.fast || args.check || args.oracle;
    ctx.note("paths", match (run_fast, run_oracle) {
        (true, true) => "fast+oracle",
        (true, false) => "fast",
        (false, true) => "oracle",
        (false, false) => unreachable!(),
    });
    ctx.print_resolved("gaps");

    let fast: Option<CountSeries> = if run_fast {
        Some(window_stats(&alpha, norm, n_lo, n_hi, true)?)
    } else {
        None
    };
    let oracle: Option<CountSeries> = if run_oracle {
        Some(window_stats(&alpha, norm, n_lo, n_hi, false)?)
    } else {
        None
    };

    let count = (n_hi - n_lo + 1) as usize;
    let mut rows = Vec::with_capacity(count);
    let mut mismatch = None;
    for i in 0..count {
        let n = n_lo + i as u64;
        let g_fast = fast.as_ref().map(|s| s.g_values[i].1);
        let g_oracle = oracle.as_ref().map(|s| s.g_values[i].1);
        let matches = match (g_fast, g_oracle) {
            (Some(a), Some(b)) => {
                if a != b && mismatch.is_none() {
                    mismatch = Some(n);
                }
                Some(a == b)
            }
            _ => None,
        };
        rows.push(GapsRow {
            n,
            g_fast,
            g_oracle,
            matches,
        });
    }
    let reference = oracle.as_ref().or(fast.as_ref()).unwrap();
    let (window_min, window_max) = (reference.window_min, reference.window_max);

    let content = match format {
        OutFormat::Json => output::to_json(&GapsDoc {
            meta: ctx.meta("gaps"),
            alpha: alpha.clone(),
            norm,
            n_lo,
            n_hi,
            rows,
            window_min,
            window_max,
        })?,
        OutFormat::Csv => {
            let mut w = output::csv_writer();
            w.write_record(["N", "g_fast", "g_oracle", "match"])
                .map_err(output::csv_err)?;
            let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
            for row in &rows {
                w.write_record([
                    row.n.to_string(),
                    opt(row.g_fast),
                    opt(row.g_oracle),
                    row.matches.map(|m| m.to_string()).unwrap_or_default(),
                ])
                .map_err(output::csv_err)?;
            }
            output::csv_finish(w)?
        }
        OutFormat::Lines => {
            let mut text = String::new();
            for n in n_lo..=n_hi {
                text.push_str(&gap_spectrum(&alpha, norm, n)?.to_records());
            }
            text
        }
    };
    write_output(&path, &content)?;

    if args.check {
        if let Some(n) = mismatch {
            return Err(CliError::Internal(format!(
                "fast/oracle count mismatch at N={n}"
            )));
        }
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(tag = "kind")]
enum CheckOut {
    #[serde(rename = "sum_inequality")]
    Sum(kron_core::InequalityReport),
    #[serde(rename = "halving")]
    Halving(kron_core::InequalityReport),
    #[serde(rename = "ratio_floor")]
    Ratio(kron_core::InequalityReport),
    #[serde(rename = "doubling_index")]
    Doubling { t: u64 },
}

#[derive(Serialize)]
struct VerifyDoc {
    meta: Meta,
    alpha: RationalVector,
    norm: NormKind,
    q_max: u64,
    term_count: usize,
    checks: Vec<CheckOut>,
    all_passed: bool,
}

fn run_verify(ctx: &mut Ctx, args: VerifyArgs) -> Result<(), CliError> {
    let (format, path) = resolve_out(ctx, &args.out)?;
    let alpha = resolve_alpha(ctx, &args.alpha, &args.dim)?;
    let norm = ctx.get(&args.norm, "norm", Some(NormKind::Linf))?;
    let q_max = ctx.get(&args.qmax, "qmax", None)?;
    let shift = ctx.get_opt(&args.shift, "shift")?;
    ctx.print_resolved("verify");

    if shift.is_none() && !args.contact && args.halving.is_none() && !args.ratio && !args.doubling {
        return Err(CliError::Validation(
            "nothing to verify: pass --shift, --contact, --halving, --ratio or --doubling".into(),
        ));
    }

    let seq = compute_best_approximations(&alpha, norm, q_max)?;
    let quantifier = if args.exists {
        Quantifier::ExistsInfinitely
    } else {
        Quantifier::ForAll
    };

    let mut checks = Vec::new();
    if let Some(shift) = shift {
        checks.push(CheckOut::Sum(verify_sum_inequality(&seq, shift, quantifier)?));
    }
    if args.contact {
        let d = alpha.dim() as u32;
        let k = contact_number(norm, d).ok_or_else(|| {
            CliError::Validation(format!("contact number unknown for {norm}, d={d}"))
        })?;
        checks.push(CheckOut::Sum(verify_sum_inequality(&seq, k, quantifier)?));
    }
    if let Some(k) = args.halving {
        checks.push(CheckOut::Halving(halving_check(&seq, k)?));
    }
    if args.ratio {
        checks.push(CheckOut::Ratio(ratio_floor_check(&seq)?));
    }
    if args.doubling {
        checks.push(CheckOut::Doubling {
            t: doubling_index(&seq)?,
        });
    }
    let all_passed = checks.iter().all(|c| match c {
        CheckOut::Sum(r) | CheckOut::Halving(r) | CheckOut::Ratio(r) => r.passed,
        CheckOut::Doubling { .. } => true,
    });

    let doc = VerifyDoc {
        meta: ctx.meta("verify"),
        alpha,
        norm,
        q_max: seq.q_max(),
        term_count: seq.len(),
        checks,
        all_passed,
    };
    let content = match format {
        OutFormat::Json => output::to_json(&doc)?,
        other => {
            return Err(CliError::Validation(format!(
                "verify supports only json output, not {other}"
            )))
        }
    };
    write_output(&path, &content)
}

#[derive(Serialize)]
struct ConvergentOut {
    n: usize,
    a: String,
    p: String,
    q: String,
}

#[derive(Serialize)]
struct CfDoc {
    meta: Meta,
    input: String,
    kind: String,
    expansion: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    limsup: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    liminf: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    golden_equivalent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    convergents: Option<Vec<ConvergentOut>>,
}

fn run_cf(ctx: &mut Ctx, args: CfArgs) -> Result<(), CliError> {
    let (format, path) = resolve_out(ctx, &args.out)?;
    let input = ctx.get(&args.input, "input", None::<String>)?;
    let depth = ctx.get_opt(&args.convergents, "convergents")?;
    ctx.print_resolved("cf");

    let cf: CFDescription = if input.trim_start().starts_with('[') {
        input.parse()?
    } else {
        kron_core::cf_expand(&kron_core::parse_rational(&input)?)?
    };
    let (kind, limsup, liminf, golden) = match cf.kind() {
        CfKind::Finite => ("finite", None, None, None),
        CfKind::EventuallyPeriodic => (
            "eventually_periodic",
            Some(kron_core::classify_limsup(&cf)?),
            Some(kron_core::classify_liminf(&cf)?),
            Some(kron_core::golden_equivalent(&cf)?),
        ),
    };
    let convergents = match depth {
        Some(k) => Some(
            cf_convergents(&cf, k)?
                .entries
                .iter()
                .enumerate()
                .map(|(i, row)| ConvergentOut {
                    n: i + 1,
                    a: row.a.to_string(),
                    p: row.p.to_string(),
                    q: row.q.to_string(),
                })
                .collect::<Vec<_>>(),
        ),
        None => None,
    };

    let content = match format {
        OutFormat::Json => output::to_json(&CfDoc {
            meta: ctx.meta("cf"),
            input,
            kind: kind.to_string(),
            expansion: cf.to_string(),
            limsup,
            liminf,
            golden_equivalent: golden,
            convergents,
        })?,
        OutFormat::Csv => {
            let mut w = output::csv_writer();
            w.write_record(["n", "a", "p", "q"]).map_err(output::csv_err)?;
            for c in convergents.unwrap_or_default() {
                w.write_record([c.n.to_string(), c.a, c.p, c.q])
                    .map_err(output::csv_err)?;
            }
            output::csv_finish(w)?
        }
        OutFormat::Lines => format!("{cf}\n"),
    };
    write_output(&path, &content)
}

#[derive(Serialize)]
struct SearchDoc {
    meta: Meta,
    witnesses: Vec<kron_core::Witness>,
}

fn run_search(ctx: &mut Ctx, args: SearchArgs) -> Result<(), CliError> {
    let (format, path) = resolve_out(ctx, &args.out)?;
    let dim = ctx.get(&args.dim, "dim", Some(2))?;
    let norm = ctx.get(&args.norm, "norm", Some(NormKind::Linf))?;
    let target = ctx.get(&args.target, "target", None)?;
    let budget = ctx.get(&args.budget, "budget", Some(100))?;
    let seed = ctx.get(&args.seed, "seed", Some(0))?;
    let n_max = ctx.get(&args.nmax, "nmax", Some(2000))?;
    let prime = ctx.get(&args.prime, "prime", Some(DEFAULT_PRIME))?;
    ctx.print_resolved("search");

    let witnesses = search_high_g(dim, norm, target, budget, seed, n_max, prime)?;
    // Re-verify before reporting: a recorded g that the oracle cannot
    // reproduce is a defect, not a result.
    for w in &witnesses {
        let oracle = count_distinct(&gap_spectrum(&w.alpha, w.norm, w.n)?);
        if oracle != w.g {
            return Err(CliError::Internal(format!(
                "witness count {} disagrees with oracle {oracle} at alpha={} N={}",
                w.g, w.alpha, w.n
            )));
        }
    }

    let content = match format {
        OutFormat::Json => output::to_json(&SearchDoc {
            meta: ctx.meta("search"),
            witnesses,
        })?,
        OutFormat::Csv => {
            let mut w = output::csv_writer();
            w.write_record(["alpha", "N", "norm", "g", "verified_by_oracle"])
                .map_err(output::csv_err)?;
            for wit in &witnesses {
                w.write_record([
                    wit.alpha.to_string(),
                    wit.n.to_string(),
                    wit.norm.to_string(),
                    wit.g.to_string(),
                    wit.verified_by_oracle.to_string(),
                ])
                .map_err(output::csv_err)?;
            }
            output::csv_finish(w)?
        }
        OutFormat::Lines => {
            let mut text = String::new();
            for wit in &witnesses {
                let seq =
                    compute_until_record_exceeds(&wit.alpha, wit.norm, wit.n, wit.n.saturating_mul(64))?;
                debug_assert_eq!(bracketing_count(&seq, wit.n)?, wit.g);
                text.push_str(&seq.to_records());
                text.push_str(&format!("N={} g={}\n", wit.n, wit.g));
            }
            text
        }
    };
    write_output(&path, &content)
}

fn run_sample(ctx: &mut Ctx, args: SampleArgs) -> Result<(), CliError> {
    let (format, path) = resolve_out(ctx, &args.out)?;
    let dim = ctx.get(&args.dim, "dim", Some(1))?;
    let norm = ctx.get(&args.norm, "norm", Some(NormKind::Linf))?;
    let shift = ctx.get(&args.shift, "shift", None)?;
    let samples = ctx.get(&args.samples, "samples", None)?;
    let seed = ctx.get(&args.seed, "seed", Some(0))?;
    let q_max = ctx.get(&args.qmax, "qmax", None)?;
    let prime = ctx.get(&args.prime, "prime", Some(DEFAULT_PRIME))?;
    ctx.print_resolved("sample");

    let report = sample_doubling_violations(dim, norm, shift, samples, seed, q_max, prime)?;
    let content = match format {
        OutFormat::Json => {
            #[derive(Serialize)]
            struct SampleDoc {
                meta: Meta,
                report: kron_core::SamplingReport,
            }
            output::to_json(&SampleDoc {
                meta: ctx.meta("sample"),
                report,
            })?
        }
        OutFormat::Csv => {
            let mut w = output::csv_writer();
            w.write_record(["index", "alpha", "terms", "checked_indices", "violation_count"])
                .map_err(output::csv_err)?;
            for row in &report.rows {
                w.write_record([
                    row.index.to_string(),
                    row.alpha.to_string(),
                    row.terms.to_string(),
                    row.checked_indices.to_string(),
                    row.violation_count.to_string(),
                ])
                .map_err(output::csv_err)?;
            }
            output::csv_finish(w)?
        }
        OutFormat::Lines => {
            return Err(CliError::Validation(
                "sample supports json or csv output".into(),
            ))
        }
    };
    write_output(&path, &content)
}
