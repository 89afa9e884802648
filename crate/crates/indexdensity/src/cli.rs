//! Subcommand frontend. Thin dispatcher: parsing, defaults file, output
//! formatting and exit codes live here; every computation is a library call.
//!
//! Exit codes: 0 success, 2 precondition violation, 3 resource limit,
//! 4 internal consistency failure (selftest oracle mismatch).

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::density::{self, DensityValue};
use crate::error::Error;
use crate::harness::{self, IndexHistogram, ScanOptions};
use crate::kummer;
use crate::lattice::{build_lattice, GroupSpec, Rational};
use crate::rank_one;
use crate::vanishing;

const DEFAULT_PRECISION: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Pretty,
    Tsv,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "indexdensity",
    about = "Densities of primes by the index of a rational multiplicative subgroup",
    version
)]
pub struct Cli {
    /// Optional key=value defaults file (threads, precision, format,
    /// segment-size, max-x)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for scans (overridden by INDEXDENSITY_THREADS)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Target error bound for densities
    #[arg(long, global = true)]
    pub precision: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write the primary artifact (table or histogram JSON) here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Display mode: round half-even instead of truncating
    #[arg(long, global = true)]
    pub round: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Density rho(Γ, m) for each m in a range
    Density {
        /// Generators, e.g. "-1,2" or "2,3/5"
        #[arg(long, allow_hyphen_values = true)]
        group: String,
        /// Single index or inclusive range, e.g. 4 or 1..20
        #[arg(long, default_value = "1..10")]
        m: String,
    },
    /// Sieve primes below x and histogram the index of the reduction group
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        group: String,
        /// Upper limit (exclusive), scientific notation accepted, e.g. 1e8
        #[arg(long, default_value = "1e8")]
        x: String,
        /// Lower limit for partial scans; [x-lo, x) must later merge to a
        /// full range
        #[arg(long, default_value = "0")]
        x_lo: String,
        #[arg(long, default_value_t = 20)]
        m_max: u32,
        /// Sieve segment length in numbers
        #[arg(long)]
        segment_size: Option<u64>,
        /// Refuse scans beyond this limit
        #[arg(long)]
        max_x: Option<String>,
        /// Skip the prediction table (histogram JSON only)
        #[arg(long)]
        no_compare: bool,
    },
    /// Merge stored histograms and compare against predicted densities
    Compare {
        /// Histogram JSON path; repeat to merge adjacent ranges
        #[arg(long = "hist", required = true)]
        hists: Vec<PathBuf>,
    },
    /// Vanishing verdict for one group and index
    Vanish {
        #[arg(long, allow_hyphen_values = true)]
        group: String,
        #[arg(long)]
        m: u64,
    },
    /// Census of pairs (a, least vanishing m) over cubes a = b^3
    VanishScan {
        /// Sweep the torsion family <-1, a> with a running over cubes
        #[arg(long)]
        minus_one_cubes: bool,
        #[arg(long, default_value_t = 216_000)]
        a_max: u64,
        #[arg(long, default_value_t = 40)]
        m_max: u64,
    },
    /// Degree of Q(zeta_n, Γ^{1/d})
    Kummer {
        #[arg(long, allow_hyphen_values = true)]
        group: String,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
    },
    /// Cross-checks between independent code paths; exits 4 on mismatch
    Selftest,
}

#[derive(Debug, Default, Clone)]
struct ConfigFile {
    threads: Option<usize>,
    precision: Option<f64>,
    format: Option<OutputFormat>,
    segment_size: Option<u64>,
    max_x: Option<u64>,
}

fn parse_config(path: &PathBuf) -> Result<ConfigFile, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("config {}: {e}", path.display())))?;
    let mut cfg = ConfigFile::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Parse(format!(
                "config line {} is not key=value",
                lineno + 1
            )));
        };
        let (key, value) = (key.trim(), value.trim());
        let bad = |e: String| Error::Parse(format!("config {key}: {e}"));
        match key {
            "threads" => cfg.threads = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "precision" => cfg.precision = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "format" => {
                cfg.format = Some(match value {
                    "pretty" => OutputFormat::Pretty,
                    "tsv" => OutputFormat::Tsv,
                    "json" => OutputFormat::Json,
                    other => return Err(bad(format!("unknown format {other}"))),
                })
            }
            "segment-size" => {
                cfg.segment_size = Some(parse_limit(value)?)
            }
            "max-x" => cfg.max_x = Some(parse_limit(value)?),
            other => return Err(Error::Parse(format!("unknown config key {other}"))),
        }
    }
    Ok(cfg)
}

/// Limits like 100000000, 1e8 or 10_000_000_000.
pub fn parse_limit(s: &str) -> Result<u64, Error> {
    let compact: String = s.chars().filter(|&c| c != '_').collect();
    if compact.contains(['e', 'E']) {
        let v: f64 = compact
            .parse()
            .map_err(|_| Error::Parse(format!("bad limit {s:?}")))?;
        if v < 0.0 || v > 1.8e19 || v.fract() != 0.0 {
            return Err(Error::Parse(format!("limit {s:?} is not a whole number")));
        }
        Ok(v as u64)
    } else {
        compact
            .parse()
            .map_err(|_| Error::Parse(format!("bad limit {s:?}")))
    }
}

/// "4" or "1..20", inclusive on both ends.
pub fn parse_m_range(s: &str) -> Result<(u64, u64), Error> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let lo: u64 = a
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad range {s:?}")))?;
        let hi: u64 = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| Error::Parse(format!("bad range {s:?}")))?;
        if lo == 0 || hi < lo {
            return Err(Error::Parse(format!("bad range {s:?}")));
        }
        Ok((lo, hi))
    } else {
        let m: u64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad index {s:?}")))?;
        if m == 0 {
            return Err(Error::Parse("index must be positive".into()));
        }
        Ok((m, m))
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ResourceLimit { .. } => 3,
        _ => 2,
    }
}

struct Ctx {
    precision: f64,
    format: OutputFormat,
    truncate: bool,
    threads: usize,
    segment_size: u64,
    max_x: u64,
    out: Option<PathBuf>,
}

fn emit(ctx: &Ctx, text: &str) -> Result<(), Error> {
    match &ctx.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::Parse(format!("stdout: {e}")))
        }
    }
}

pub fn run_cli() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    let cfg = match &cli.config {
        Some(path) => parse_config(path)?,
        None => ConfigFile::default(),
    };
    let env_threads = std::env::var("INDEXDENSITY_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    let ctx = Ctx {
        precision: cli.precision.or(cfg.precision).unwrap_or(DEFAULT_PRECISION),
        format: cli.format.or(cfg.format).unwrap_or(OutputFormat::Pretty),
        truncate: !cli.round,
        threads: env_threads.or(cli.threads).or(cfg.threads).unwrap_or(0),
        segment_size: cfg.segment_size.unwrap_or(harness::DEFAULT_SEGMENT_SIZE),
        max_x: cfg.max_x.unwrap_or(harness::DEFAULT_MAX_X),
        out: cli.out.clone(),
    };
    match cli.command {
        Command::Density { group, m } => cmd_density(&ctx, &group, &m),
        Command::Scan {
            group,
            x,
            x_lo,
            m_max,
            segment_size,
            max_x,
            no_compare,
        } => {
            let x = parse_limit(&x)?;
            let x_lo = parse_limit(&x_lo)?;
            let opts = ScanOptions {
                x_lo,
                threads: ctx.threads,
                segment_size: segment_size.unwrap_or(ctx.segment_size),
                max_x: match max_x {
                    Some(s) => parse_limit(&s)?,
                    None => ctx.max_x,
                },
            };
            cmd_scan(&ctx, &group, x, m_max, opts, no_compare)
        }
        Command::Compare { hists } => cmd_compare(&ctx, &hists),
        Command::Vanish { group, m } => cmd_vanish(&ctx, &group, m),
        Command::VanishScan {
            minus_one_cubes,
            a_max,
            m_max,
        } => {
            if !minus_one_cubes {
                return Err(Error::Parse(
                    "vanish-scan currently requires --minus-one-cubes".into(),
                ));
            }
            cmd_vanish_scan(&ctx, a_max, m_max)
        }
        Command::Kummer { group, n, d } => cmd_kummer(&ctx, &group, n, d),
        Command::Selftest => cmd_selftest(),
    }
}

fn density_row(ctx: &Ctx, dv: &DensityValue) -> (String, String, String) {
    let rho = dv.display(ctx.truncate);
    let err = if dv.exact_zero {
        "0".to_string()
    } else {
        format!("{:.2e}", dv.error_bound)
    };
    (rho, err, dv.exact_zero.to_string())
}

fn cmd_density(ctx: &Ctx, group: &str, m_spec: &str) -> Result<i32, Error> {
    let spec: GroupSpec = group.parse()?;
    let lat = build_lattice(&spec)?;
    let (lo, hi) = parse_m_range(m_spec)?;
    let mut text = String::new();
    let mut json_rows = Vec::new();
    if ctx.format == OutputFormat::Pretty {
        text.push_str(&format!("group <{}>\n", spec.canonical()));
        text.push_str("m\trho\terror\texact_zero\n");
    } else if ctx.format == OutputFormat::Tsv {
        text.push_str("m\trho\terror\texact_zero\n");
    }
    for m in lo..=hi {
        let dv = density::rho(&lat, m, ctx.precision)?;
        let (rho, err, zero) = density_row(ctx, &dv);
        match ctx.format {
            OutputFormat::Json => json_rows.push(serde_json::json!({
                "m": m,
                "rho": rho,
                "error_bound": dv.error_bound,
                "exact_zero": dv.exact_zero,
            })),
            _ => text.push_str(&format!("{m}\t{rho}\t{err}\t{zero}\n")),
        }
    }
    if ctx.format == OutputFormat::Json {
        text = serde_json::to_string_pretty(&serde_json::json!({
            "group": spec.canonical(),
            "rows": json_rows,
        }))
        .expect("json")
            + "\n";
    }
    emit(ctx, &text)?;
    Ok(0)
}

fn comparison_text(ctx: &Ctx, report: &harness::ComparisonReport) -> String {
    let mut text = String::new();
    text.push_str(&format!("counted primes: {}\n", report.total_primes));
    text.push_str("m\tcount\tratio\trho\tdeviation\tsigma\tflag\n");
    for r in &report.rows {
        text.push_str(&format!(
            "{}\t{}\t{}\t{}\t{:.3e}\t{:.3e}\t{}\n",
            r.m,
            r.count,
            decimal_of_f64(r.ratio, ctx.truncate),
            decimal_of_f64(r.rho, ctx.truncate),
            r.deviation,
            r.sigma,
            if r.flagged { "DEVIATES" } else { "ok" }
        ));
    }
    text
}

fn decimal_of_f64(v: f64, truncate: bool) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let q = num_rational::BigRational::from_float(v).expect("finite");
    crate::highprec::decimal_of_rational(&q, 7, truncate)
}

fn cmd_scan(
    ctx: &Ctx,
    group: &str,
    x: u64,
    m_max: u32,
    opts: ScanOptions,
    no_compare: bool,
) -> Result<i32, Error> {
    let spec: GroupSpec = group.parse()?;
    let hist = harness::scan(&spec, x, m_max, opts)?;
    let json = hist.to_json() + "\n";
    match &ctx.out {
        Some(path) => std::fs::write(path, &json)
            .map_err(|e| Error::Parse(format!("write {}: {e}", path.display())))?,
        None => print!("{json}"),
    }
    if !no_compare && opts.x_lo == 0 {
        let lat = build_lattice(&spec)?;
        let densities: std::result::Result<Vec<_>, _> = (1..=m_max as u64)
            .map(|m| density::rho(&lat, m, ctx.precision))
            .collect();
        let report = harness::compare(&hist, &densities?);
        print!("{}", comparison_text(ctx, &report));
    }
    Ok(0)
}

fn cmd_compare(ctx: &Ctx, paths: &[PathBuf]) -> Result<i32, Error> {
    let mut hists = Vec::new();
    for p in paths {
        let text = std::fs::read_to_string(p)
            .map_err(|e| Error::Parse(format!("read {}: {e}", p.display())))?;
        hists.push(IndexHistogram::from_json(&text)?);
    }
    hists.sort_by_key(|h| h.x_lo);
    let mut merged = hists[0].clone();
    for h in &hists[1..] {
        merged = merged.merge(h)?;
    }
    if merged.x_lo != 0 {
        return Err(Error::MergeMismatch(format!(
            "merged range starts at {} instead of 0",
            merged.x_lo
        )));
    }
    let spec: GroupSpec = merged.group.parse()?;
    let lat = build_lattice(&spec)?;
    let densities: std::result::Result<Vec<_>, _> = (1..=merged.m_max as u64)
        .map(|m| density::rho(&lat, m, ctx.precision))
        .collect();
    let report = harness::compare(&merged, &densities?);
    emit(ctx, &comparison_text(ctx, &report))?;
    Ok(0)
}

fn cmd_vanish(ctx: &Ctx, group: &str, m: u64) -> Result<i32, Error> {
    let spec: GroupSpec = group.parse()?;
    let lat = build_lattice(&spec)?;
    let mut text = String::new();

    let gens = &spec.generators;
    let minus_one_a: Option<Rational> = match gens.len() {
        2 if gens[0].is_minus_one() => Some(gens[1]),
        2 if gens[1].is_minus_one() => Some(gens[0]),
        _ => None,
    };
    if let Some(a) = minus_one_a {
        if !a.is_minus_one() {
            let dec = rank_one::decompose(a)?;
            let v = vanishing::classify_minus_one_a(&dec, m);
            text.push_str(&format!(
                "torsion-rank-one\t{}\t{}\t{}\n",
                v.vanishes, v.matched_condition, v.finiteness
            ));
        }
    }
    if gens.len() == 1 && !gens[0].is_minus_one() {
        let v = vanishing::classify_lenstra(gens[0], m)?;
        text.push_str(&format!(
            "lenstra\t{}\t{}\t{}\n",
            v.vanishes, v.matched_condition, v.finiteness
        ));
    }
    let v = vanishing::sufficient_vanishing(&lat, m)?;
    text.push_str(&format!(
        "general\t{}\t{}\t{}\n",
        v.vanishes, v.matched_condition, v.finiteness
    ));
    if ctx.format == OutputFormat::Pretty {
        text.insert_str(0, "classifier\tvanishes\tcondition\tfiniteness\n");
    }
    emit(ctx, &text)?;
    Ok(0)
}

fn cmd_vanish_scan(ctx: &Ctx, a_max: u64, m_max: u64) -> Result<i32, Error> {
    let census = vanishing::minus_one_cube_census(a_max, m_max)?;
    let mut text = String::new();
    if ctx.format == OutputFormat::Pretty {
        text.push_str("a\tbase^3\tm\n");
    }
    for e in &census {
        text.push_str(&format!("{}\t{}^3\t{}\n", e.a, e.base, e.m));
    }
    emit(ctx, &text)?;
    Ok(0)
}

fn cmd_kummer(ctx: &Ctx, group: &str, n: u64, d: u64) -> Result<i32, Error> {
    let spec: GroupSpec = group.parse()?;
    let lat = build_lattice(&spec)?;
    let deg = kummer::kummer_degree(&lat, n, d)?;
    emit(ctx, &format!("{deg}\n"))?;
    Ok(0)
}

/// Cross-checks between independent code paths. Any mismatch is an internal
/// consistency failure (exit 4), distinct from bad input (exit 2).
fn cmd_selftest() -> Result<i32, Error> {
    let mut checks = 0usize;
    let mut failures: Vec<String> = Vec::new();
    let mut check = |name: &str, ok: bool| {
        checks += 1;
        if !ok {
            failures.push(name.to_string());
        }
    };

    // torsion rank-one closed form vs general engine
    for a in [2i128, 3, 4, 5, 8, 12] {
        let lat = build_lattice(&GroupSpec::from_ints(&[-1, a]).unwrap())?;
        let dec = rank_one::decompose(Rational::from_int(a)?)?;
        for m in 1..=6u64 {
            let e = density::rho(&lat, m, 1e-10)?;
            let c = rank_one::minus_one_a_density(&dec, m, 1e-10)?;
            check(
                &format!("minus-one-a a={a} m={m}"),
                (e.to_f64() - c.to_f64()).abs() <= 1e-9 && e.exact_zero == c.exact_zero,
            );
        }
    }
    // single-generator closed forms vs engine for odd m
    for a in [2i128, 5, -3, 8] {
        let lat = build_lattice(&GroupSpec::from_ints(&[a]).unwrap())?;
        let dec = rank_one::decompose(Rational::from_int(a)?)?;
        for m in [1u64, 3, 5] {
            let e = density::rho(&lat, m, 1e-10)?;
            let c = rank_one::moree_odd_density(&dec, m, 1e-10)?;
            check(
                &format!("odd closed form a={a} m={m}"),
                (e.to_f64() - c.to_f64()).abs() <= 1e-9,
            );
        }
        let h = rank_one::hooley_density(&dec, 1e-10)?;
        let e = density::rho(&lat, 1, 1e-10)?;
        check(
            &format!("hooley a={a}"),
            (e.to_f64() - h.to_f64()).abs() <= 1e-9,
        );
    }
    // inclusion-exclusion series oracle
    for gens in [vec![-1i128, 2], vec![2, 3]] {
        let lat = build_lattice(&GroupSpec::from_ints(&gens).unwrap())?;
        for m in [1u64, 2] {
            let (oracle, tail) = density::rho_series_oracle(&lat, m, 2000)?;
            let dense = density::rho(&lat, m, 1e-10)?;
            check(
                &format!("series oracle {gens:?} m={m}"),
                (oracle - dense.to_f64()).abs() <= tail + dense.error_bound,
            );
        }
    }
    // odd-m specialization is exactly equal
    for gens in [vec![-1i128, 2], vec![2, -3]] {
        let lat = build_lattice(&GroupSpec::from_ints(&gens).unwrap())?;
        for m in [1u64, 3, 9] {
            let a = density::rho(&lat, m, 1e-10)?;
            let b = density::rho_odd_closed_form(&lat, m, 1e-10)?;
            check(
                &format!("odd path {gens:?} m={m}"),
                a.prefactor == b.prefactor,
            );
        }
    }
    // summation identity
    let lat2 = build_lattice(&GroupSpec::from_ints(&[2]).unwrap())?;
    let (lhs, rhs, bound) = density::lemma_identity_check(&lat2, 1, 3, 2001)?;
    check("summation identity", (lhs - rhs).abs() <= bound);
    // vanishing classifiers vs each other
    for g in (2i128..=10).chain(-10i128..=-2) {
        for m in 1..=8u64 {
            check(
                &format!("lenstra consistency g={g} m={m}"),
                vanishing::lenstra_consistency(Rational::from_int(g)?, m)?,
            );
        }
    }

    if failures.is_empty() {
        println!("selftest: {checks} checks passed");
        Ok(0)
    } else {
        for f in &failures {
            eprintln!("selftest failure: {f}");
        }
        eprintln!("selftest: {} of {checks} checks failed", failures.len());
        Ok(4)
    }
}
