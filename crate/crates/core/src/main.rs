use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use ofdm_im::bench::{
    counter_series, estimate_kappa, fit_counters, fit_runtime, kappa_spread, mean_kappa, run_campaign_with, write_csv,
    write_json, CampaignConfig, Direction, KappaEstimate, ThroughputRecord, DEFAULT_SEED, MIN_FIT_POINTS,
};
use ofdm_im::combinatorics::verify::{check_guard, verify_exhaustive, verify_random};
use ofdm_im::combinatorics::{binom_uncounted, LinearCombinadic, OriginalCombinadic, SelectorKind};
use ofdm_im::imcodec::{demap_symbol, derive_params, map_symbol, BitBuffer, FrequencySymbol, ImConfig};

/// OFDM index-modulation mapper, demapper and benchmark harness.
#[derive(Debug, Parser)]
#[command(name = "ofdm-im", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the bit accounting of a configuration.
    Params(ConfigArgs),
    /// Map a bit file to one frequency-domain symbol.
    Map(MapArgs),
    /// Demap a symbol file back to bits.
    Demap(DemapArgs),
    /// Cross-check both index selectors against the enumeration oracle.
    Verify(VerifyArgs),
    /// Time the mapper and demapper and emit a throughput table.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct ConfigArgs {
    /// Subcarriers per symbol.
    #[arg(long = "N")]
    subcarriers: usize,
    /// Subblocks per symbol.
    #[arg(long = "g", default_value_t = 1)]
    subblocks: usize,
    /// Active subcarriers per subblock [default: half the subblock]
    #[arg(long = "k")]
    active: Option<usize>,
    /// Constellation size (2 or 4).
    #[arg(long = "M", default_value_t = 2)]
    order: usize,
}

impl ConfigArgs {
    fn build(&self) -> Result<ImConfig, CliError> {
        if self.subblocks == 0 || !self.subcarriers.is_multiple_of(self.subblocks) {
            // let ImConfig produce the diagnostic
            return ImConfig::new(self.subcarriers, self.subblocks, 1, self.order).map_err(CliError::config);
        }
        let n = self.subcarriers / self.subblocks;
        let k = self.active.unwrap_or((n / 2).max(1));
        ImConfig::new(self.subcarriers, self.subblocks, k, self.order).map_err(CliError::config)
    }
}

#[derive(Debug, Args)]
struct MapArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Raw input bytes, consumed MSB-first.
    #[arg(long)]
    bits_file: PathBuf,
    /// Number of bits to take from the file; must equal m.
    #[arg(long)]
    nbits: usize,
    #[arg(long, default_value = "linear")]
    selector: SelectorKind,
    /// Symbol file to write [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DemapArgs {
    #[command(flatten)]
    config: ConfigArgs,
    #[arg(long)]
    symbol_file: PathBuf,
    #[arg(long, default_value = "linear")]
    selector: SelectorKind,
    /// Raw bit file to write [default: print the bits as text]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Largest n swept exhaustively.
    #[arg(long, default_value_t = 16)]
    max_n: usize,
    /// Refuse sweeps where some C(n, k) exceeds this.
    #[arg(long, default_value_t = 10_000_000)]
    exhaustive_limit: u64,
    /// Random ranks checked at each of (64,32), (128,64) and (256,128).
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Even N values: `start:stop:step` ranges and/or comma lists.
    #[arg(long, default_value = "2:62:2")]
    n_list: String,
    #[arg(long, value_delimiter = ',', default_value = "original,linear")]
    selectors: Vec<SelectorKind>,
    #[arg(long, value_delimiter = ',', default_value = "map,demap")]
    directions: Vec<Direction>,
    #[arg(long, default_value_t = 100_000)]
    max_samples: usize,
    #[arg(long, default_value_t = 10)]
    min_samples: usize,
    /// Discarded samples per point.
    #[arg(long, default_value_t = 300)]
    warmup: usize,
    /// Target CI half-width relative to the mean.
    #[arg(long, default_value_t = 0.05)]
    precision: f64,
    /// Seconds of measuring per point before giving up on convergence.
    #[arg(long, default_value_t = 10.0)]
    time_budget: f64,
    /// Seconds of warmup per point at most.
    #[arg(long, default_value_t = 2.0)]
    warmup_budget: f64,
    /// CSV destination [default: stdout]
    #[arg(long)]
    csv_out: Option<PathBuf>,
    /// Also dump every record with its raw samples as JSON.
    #[arg(long)]
    json_out: Option<PathBuf>,
    /// Count coefficient updates instead of timing, and fit their slopes.
    #[arg(long)]
    counters: bool,
    /// Inputs per N in counter mode.
    #[arg(long, default_value_t = 16)]
    inputs: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug)]
struct CliError {
    code: &'static str,
    message: String,
}

impl CliError {
    fn new(code: &'static str, message: impl fmt::Display) -> Self {
        Self {
            code,
            message: message.to_string(),
        }
    }

    fn config(e: impl fmt::Display) -> Self {
        Self::new("E_CONFIG", e)
    }

    fn io(path: &Path, e: io::Error) -> Self {
        Self::new("E_IO", format!("{}: {e}", path.display()))
    }

    fn exit_code(&self) -> u8 {
        if self.code == "E_USAGE" {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // one line, whatever the source error looked like
        let flat = self.message.split_whitespace().collect::<Vec<_>>().join(" ");
        write!(f, "{}: {flat}", self.code)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            let err = CliError::new("E_USAGE", first.trim_start_matches("error: "));
            eprintln!("error: {err}");
            return ExitCode::from(err.exit_code());
        }
    };
    let result = match cli.command {
        Command::Params(a) => cmd_params(&a),
        Command::Map(a) => cmd_map(&a),
        Command::Demap(a) => cmd_demap(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Bench(a) => cmd_bench(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn cmd_params(args: &ConfigArgs) -> Result<(), CliError> {
    let cfg = args.build()?;
    let acc = derive_params(&cfg);
    let combos = binom_uncounted(cfg.subblock_len(), cfg.active());
    let mut out = io::stdout().lock();
    let lines = [
        format!(
            "N={} g={} n={} k={} M={}",
            cfg.subcarriers(),
            cfg.subblocks(),
            cfg.subblock_len(),
            cfg.active(),
            cfg.order()
        ),
        format!("p1={}", acc.p1),
        format!("p2={}", acc.p2),
        format!("p={}", acc.p1 + acc.p2),
        format!("m={}", acc.m),
        format!("se_gain={}", acc.se_gain_2dp()),
        format!("C(n,k)={combos}"),
        format!("waveforms=2^{}", acc.p1),
    ];
    for line in lines {
        writeln!(out, "{line}").map_err(|e| CliError::new("E_IO", e))?;
    }
    Ok(())
}

fn cmd_map(args: &MapArgs) -> Result<(), CliError> {
    let cfg = args.config.build()?;
    let m = cfg.symbol_bits();
    if args.nbits != m {
        return Err(CliError::new(
            "E_BITLEN",
            format!("expected {m} bits for this configuration, --nbits gave {}", args.nbits),
        ));
    }
    let bytes = fs::read(&args.bits_file).map_err(|e| CliError::io(&args.bits_file, e))?;
    let bits = BitBuffer::from_bytes(&bytes, args.nbits).map_err(|e| CliError::new("E_BITLEN", e))?;
    let sym = map_symbol(&bits, &cfg, args.selector.selector()).map_err(|e| CliError::new("E_BITLEN", e))?;
    emit_text(args.out.as_deref(), &sym.to_text())
}

fn cmd_demap(args: &DemapArgs) -> Result<(), CliError> {
    let cfg = args.config.build()?;
    let text = fs::read_to_string(&args.symbol_file).map_err(|e| CliError::io(&args.symbol_file, e))?;
    let sym = FrequencySymbol::parse(&text).map_err(|e| CliError::new("E_PARSE", e))?;
    if sym.config != cfg {
        return Err(CliError::config(format!(
            "symbol file header is N={} g={} k={} M={}, flags give N={} g={} k={} M={}",
            sym.config.subcarriers(),
            sym.config.subblocks(),
            sym.config.active(),
            sym.config.order(),
            cfg.subcarriers(),
            cfg.subblocks(),
            cfg.active(),
            cfg.order()
        )));
    }
    let bits = demap_symbol(&sym, &cfg, args.selector.selector()).map_err(|e| CliError::new("E_MALFORMED", e))?;
    match &args.out {
        Some(path) => fs::write(path, bits.as_bytes()).map_err(|e| CliError::io(path, e)),
        None => emit_text(None, &format!("{bits}\n")),
    }
}

fn emit_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::new("E_IO", e)),
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("IMCODEC_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::config(format!("IMCODEC_SEED='{v}' is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    if args.max_n == 0 {
        return Err(CliError::config("--max-n must be at least 1"));
    }
    let seed = resolve_seed(args.seed)?;
    check_guard(args.max_n, args.exhaustive_limit)
        .map_err(|e| CliError::new("E_GUARD", format!("{e}; raise --exhaustive-limit or lower --max-n")))?;
    let report = verify_exhaustive(
        args.max_n,
        args.exhaustive_limit,
        &OriginalCombinadic,
        &LinearCombinadic,
    )
    .map_err(|e| CliError::new("E_GUARD", e))?;
    if let Some(m) = &report.mismatch {
        return Err(CliError::new(
            "E_VERIFY",
            format!("{m} (reproduce with n={} k={} X={})", m.n, m.k, m.rank),
        ));
    }
    println!(
        "exhaustive n<={}: {} cases checked (oracle agreement, combinadic identity, unrank equivalence, bijection), 0 mismatches",
        args.max_n, report.cases_checked
    );
    if args.random > 0 {
        for n in [64usize, 128, 256] {
            let r = verify_random(n, n / 2, args.random, seed, &OriginalCombinadic, &LinearCombinadic)
                .map_err(CliError::config)?;
            if let Some(m) = &r.mismatch {
                return Err(CliError::new(
                    "E_VERIFY",
                    format!("{m} (reproduce with n={} k={} X={})", m.n, m.k, m.rank),
                ));
            }
            println!(
                "random n={n} k={}: {} cases checked, 0 mismatches (seed {seed})",
                n / 2,
                r.cases_checked
            );
        }
    }
    println!("PASS");
    Ok(())
}

/// `2:62:2`, `64,128,256`, or a mix such as `2:10:2,64`. A range without a
/// step uses step 2.
fn parse_n_list(spec: &str) -> Result<Vec<usize>, CliError> {
    let bad = |what: &str| CliError::config(format!("bad --n-list '{spec}': {what}"));
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| bad(&format!("'{s}' is not a count")))
    };
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        match parts[..] {
            [one] => out.push(num(one)?),
            [a, b] | [a, b, _] => {
                let (start, stop) = (num(a)?, num(b)?);
                let step = if parts.len() == 3 { num(parts[2])? } else { 2 };
                if step == 0 || start > stop {
                    return Err(bad(&format!("empty range '{item}'")));
                }
                out.extend((start..=stop).step_by(step));
            }
            _ => return Err(bad(&format!("'{item}'"))),
        }
    }
    if out.is_empty() {
        return Err(bad("no values"));
    }
    if let Some(&n) = out.iter().find(|&&n| n < 2 || n % 2 != 0) {
        return Err(bad(&format!("N={n} is not an even count >= 2")));
    }
    Ok(out)
}

fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    let n_list = parse_n_list(&args.n_list)?;
    let seed = resolve_seed(args.seed)?;
    if args.counters {
        return bench_counters(args, &n_list, seed);
    }
    if args.precision.is_nan() || args.precision <= 0.0 || args.max_samples == 0 {
        return Err(CliError::config(
            "--precision must be positive and --max-samples at least 1",
        ));
    }
    let budget = |secs: f64, flag: &str| {
        Duration::try_from_secs_f64(secs).map_err(|_| CliError::config(format!("bad {flag} {secs}")))
    };
    let cfg = CampaignConfig {
        n_list: n_list.clone(),
        selectors: args.selectors.clone(),
        directions: args.directions.clone(),
        warmup: args.warmup,
        warmup_budget: Some(budget(args.warmup_budget, "--warmup-budget")?),
        precision: args.precision,
        min_samples: args.min_samples,
        max_samples: args.max_samples,
        sample_budget: Some(budget(args.time_budget, "--time-budget")?),
        seed,
    };
    eprintln!(
        "bench: seed {seed}, {} points",
        n_list.len() * cfg.selectors.len() * cfg.directions.len()
    );
    let records = run_campaign_with(&cfg, |r| {
        eprintln!(
            "  {:<15} N={:<5} runtime_us={:.3} delta_us={:.3} samples={}{}",
            r.mapper_label(),
            r.n,
            r.runtime_us,
            r.delta_us,
            r.samples,
            if r.converged { "" } else { " (not converged)" }
        );
    })
    .map_err(CliError::config)?;

    match &args.csv_out {
        Some(p) => {
            let f = fs::File::create(p).map_err(|e| CliError::io(p, e))?;
            write_csv(io::BufWriter::new(f), &records).map_err(|e| CliError::io(p, e))?;
        }
        None => write_csv(io::stdout().lock(), &records).map_err(|e| CliError::new("E_IO", e))?,
    }
    if let Some(p) = &args.json_out {
        let f = fs::File::create(p).map_err(|e| CliError::io(p, e))?;
        write_json(io::BufWriter::new(f), &records).map_err(|e| CliError::io(p, e))?;
    }
    print_summary(&records, &cfg);
    Ok(())
}

fn print_summary(records: &[ThroughputRecord], cfg: &CampaignConfig) {
    eprintln!("summary:");
    for &direction in &cfg.directions {
        for &selector in &cfg.selectors {
            let series: Vec<&ThroughputRecord> = records
                .iter()
                .filter(|r| r.direction == direction && r.selector == selector)
                .collect();
            if series.len() >= MIN_FIT_POINTS {
                if let Ok(fit) = fit_runtime(&series) {
                    eprintln!("  {selector}-{direction}: wall-time slope {:.2}", fit.slope);
                }
            }
            if selector == SelectorKind::Linear && direction == Direction::Map {
                let est: Vec<KappaEstimate> = series.iter().map(|r| estimate_kappa(r)).collect();
                if let (Some(mean), Some(spread)) = (mean_kappa(&est), kappa_spread(&est)) {
                    eprintln!("  kappa (linear-map): mean {mean:.4} us, relative spread {spread:.2}");
                }
            }
        }
    }
    let stragglers: Vec<String> = records
        .iter()
        .filter(|r| !r.converged)
        .map(|r| format!("{}@N={}", r.mapper_label(), r.n))
        .collect();
    if stragglers.is_empty() {
        eprintln!(
            "  all points converged to {:.0}% at 95% confidence",
            cfg.precision * 100.0
        );
    } else {
        eprintln!("  NOT CONVERGED ({}): {}", stragglers.len(), stragglers.join(" "));
    }
}

fn bench_counters(args: &BenchArgs, n_list: &[usize], seed: u64) -> Result<(), CliError> {
    if args.inputs == 0 {
        return Err(CliError::config("--inputs must be at least 1"));
    }
    let mut csv = String::from("N,selector,direction,mean_coeff_updates,max_coeff_updates,mean_builds,max_builds\n");
    let mut slopes = Vec::new();
    for &direction in &args.directions {
        for &selector in &args.selectors {
            let series = counter_series(selector, direction, n_list, args.inputs, seed).map_err(CliError::config)?;
            for p in &series {
                csv.push_str(&format!(
                    "{},{selector},{direction},{:.2},{},{:.2},{}\n",
                    p.n, p.mean_coeff_updates, p.max_coeff_updates, p.mean_builds, p.max_builds
                ));
            }
            match fit_counters(&series) {
                Ok(fit) => slopes.push(format!(
                    "  {selector}-{direction}: coeff_updates slope {:.3}",
                    fit.slope
                )),
                Err(e) => slopes.push(format!("  {selector}-{direction}: no slope ({e})")),
            }
        }
    }
    emit_text(args.csv_out.as_deref(), &csv)?;
    eprintln!("summary (seed {seed}, {} inputs per N):", args.inputs);
    for s in slopes {
        eprintln!("{s}");
    }
    Ok(())
}
