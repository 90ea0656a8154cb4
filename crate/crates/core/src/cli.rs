//! Command-line surface: `bounds`, `construct`, `verify`, `certify`, `tower`.
//!
//! Exit codes: 0 success or pass, 1 domain/argument/parse error, 2 a check
//! failed, 3 a capacity limit was hit.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{self, Delta, Schedule};
use crate::error::{Error, Result};
use crate::lenstra;
use crate::numtheory::SIEVE_CAPACITY;
use crate::quadfield::{self, make_field};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gvforge", version, about = "Number-field codes, rate bounds and finite-q certificates")]
pub struct Cli {
    /// Worker threads for parallel sieving, sweeps and verification (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// GV, Plotkin and the best certified number-field bound per (q, δ).
    Bounds(BoundsArgs),
    /// Build a punctured Lenstra code and write it in the export format.
    Construct(ConstructArgs),
    /// Recompute M and d of a code file and compare against its header.
    Verify(VerifyArgs),
    /// Certificate for a parameter schedule at one q, as JSON.
    Certify(CertifyArgs),
    /// Golod–Shafarevich test for an infinite 2-class field tower.
    Tower(TowerArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct SieveArgs {
    /// Largest prime bound the sieve may use.
    #[arg(long, env = "GVFORGE_SIEVE_LIMIT", default_value_t = SIEVE_CAPACITY)]
    pub sieve_limit: u64,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// Alphabet sizes, comma separated or repeated.
    #[arg(long, required = true, value_delimiter = ',')]
    pub q: Vec<u64>,
    /// Single relative distance, decimal or a/b.
    #[arg(long, conflicts_with = "delta_grid")]
    pub delta: Option<String>,
    /// start:stop:step, inclusive.
    #[arg(long)]
    pub delta_grid: Option<String>,
    /// Number of r grid points in the witness search.
    #[arg(long, default_value_t = 64)]
    pub budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub sieve: SieveArgs,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// Fundamental discriminant.
    #[arg(long, allow_hyphen_values = true)]
    pub disc: String,
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub q: u64,
    #[arg(long = "G", alias = "g")]
    pub g: u32,
    /// Seed for the random fallback of the τ search.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Code file; stdout when absent (the summary then goes to stderr).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub path: PathBuf,
    /// Also check r^ℓ(a,b) ≤ |N(a−b)| < r^G on every pair of the regenerated code.
    #[arg(long)]
    pub norm_chain: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScheduleKind {
    Theorem1,
    Theorem2,
    Custom,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, value_enum, default_value_t = ScheduleKind::Theorem2)]
    pub schedule: ScheduleKind,
    /// C₀ > 1 for the theorem1 schedule.
    #[arg(long)]
    pub c0: Option<f64>,
    /// r, ℓ, k for the custom schedule.
    #[arg(long)]
    pub r: Option<u64>,
    #[arg(long)]
    pub ell: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub sieve: SieveArgs,
}

#[derive(Args, Debug)]
pub struct TowerArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub disc: String,
    /// |S_c|.
    #[arg(long, default_value_t = 0)]
    pub sc_size: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Capacity(_) => EXIT_CAPACITY,
        _ => EXIT_ERROR,
    }
}

/// Runs a parsed command line, writing results to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32 {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n);
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| dispatch(&cli.command, out, err)),
        Err(e) => Err(Error::argument(format!("thread pool: {e}"))),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Parses `args` (program name first) and runs. Help and usage errors go to `err`.
pub fn run_from<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            code
        }
    }
}

fn dispatch(cmd: &Command, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32> {
    match cmd {
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::Construct(a) => cmd_construct(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Certify(a) => cmd_certify(a, out, err),
        Command::Tower(a) => cmd_tower(a, out),
    }
}

fn emit(path: &Option<PathBuf>, out: &mut (dyn Write + Send), bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes)?,
        None => out.write_all(bytes)?,
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

pub fn cmd_bounds(a: &BoundsArgs, out: &mut (dyn Write + Send)) -> Result<i32> {
    let deltas = match (&a.delta, &a.delta_grid) {
        (Some(d), None) => vec![d.parse::<Delta>()?],
        (None, Some(g)) => bounds::parse_delta_grid(g)?,
        _ => return Err(Error::argument("give --delta or --delta-grid")),
    };
    let rows = bounds::bound_sweep(&a.q, &deltas, a.budget, a.sieve.sieve_limit)?;
    let mut buf = Vec::new();
    match a.format {
        Format::Json => buf.extend(json(&rows).into_bytes()),
        _ => bounds::write_csv(&rows, &mut buf)?,
    }
    emit(&a.output, out, &buf)?;
    Ok(EXIT_OK)
}

fn parse_disc(s: &str) -> Result<rug::Integer> {
    s.trim()
        .parse::<rug::Integer>()
        .map_err(|_| Error::argument(format!("--disc `{s}` is not an integer")))
}

pub fn cmd_construct(a: &ConstructArgs, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32> {
    let field = make_field(&parse_disc(&a.disc)?)?;
    let code = lenstra::build_code(&field, a.r, a.q, a.g, a.seed)?;
    let mut buf = Vec::new();
    lenstra::write_code(&code, &mut buf)?;
    let summary = format!(
        "n={} M={} M_bound={} d_bound={} tau={},{}",
        code.n(),
        code.codewords.len(),
        code.m_bound()?,
        code.d_bound(),
        code.tau.0,
        code.tau.1
    );
    match &a.output {
        Some(p) => {
            fs::write(p, &buf)?;
            writeln!(out, "{summary}")?;
        }
        None => {
            out.write_all(&buf)?;
            writeln!(err, "{summary}")?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyOutput {
    #[serde(flatten)]
    file: lenstra::FileReport,
    norm_chain: Option<lenstra::NormGapReport>,
    pass: bool,
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut (dyn Write + Send)) -> Result<i32> {
    let text = fs::read_to_string(&a.path)?;
    let rep = lenstra::verify_code_text(&text)?;
    let norm_chain = if a.norm_chain {
        let h = &rep.header;
        let field = quadfield::make_field_i64(h.disc)?;
        let code = lenstra::build_code_with_tau(&field, h.r, h.q, h.g, h.tau)?;
        Some(lenstra::norm_gap_check(&code)?)
    } else {
        None
    };
    let pass = rep.pass && norm_chain.as_ref().is_none_or(|n| n.holds());
    if a.format == Format::Json {
        let v = VerifyOutput {
            file: rep,
            norm_chain,
            pass,
        };
        out.write_all(json(&v).as_bytes())?;
    } else {
        let r = &rep.report;
        writeln!(out, "n={} M={} d={}", r.n, r.m, r.d)?;
        writeln!(
            out,
            "declared: r={} G={} n={}  guaranteed: M ≥ {} d ≥ {}",
            rep.header.r, rep.header.g, rep.header.n, r.m_bound, r.d_bound
        )?;
        writeln!(out, "injective={} matches_psi={} regenerated_match={}", r.injective, r.matches_psi, rep.regenerated_match)?;
        if let Some(line) = rep.first_mismatch_line {
            writeln!(out, "first line differing from the regenerated code: {line}")?;
        }
        if let Some((i, j)) = r.first_violation {
            writeln!(out, "first violating pair: codewords {i} and {j} (lines {} and {})", i + 2, j + 2)?;
        }
        if let Some(nc) = &norm_chain {
            writeln!(out, "norm chain: {} pairs, {} violations", nc.pairs_checked, nc.violations)?;
        }
        writeln!(out, "{}", if pass { "PASS" } else { "FAIL" })?;
    }
    Ok(if pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

pub fn cmd_certify(a: &CertifyArgs, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<i32> {
    let limit = a.sieve.sieve_limit;
    let cert = match a.schedule {
        ScheduleKind::Theorem2 => bounds::certify(a.q, &Schedule::Theorem2, limit)?,
        ScheduleKind::Theorem1 => {
            let c0 = a.c0.ok_or_else(|| Error::argument("theorem1 schedule needs --c0"))?;
            bounds::certify(a.q, &Schedule::Theorem1 { c0 }, limit)?
        }
        ScheduleKind::Custom => match (a.r, a.ell, a.k) {
            (Some(r), Some(ell), Some(k)) => bounds::certify_custom(a.q, r, ell, k, limit)?,
            _ => return Err(Error::argument("custom schedule needs --r, --ell and --k")),
        },
    };
    for w in &cert.warnings {
        writeln!(err, "warning: {w}")?;
    }
    emit(&a.output, out, cert.to_json().as_bytes())?;
    if a.output.is_none() {
        writeln!(out)?;
    }
    Ok(if cert.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

#[derive(Serialize)]
struct TowerOutput {
    #[serde(flatten)]
    cert: quadfield::TowerCertificate,
    d2_source: &'static str,
    class_number: Option<u64>,
}

pub fn cmd_tower(a: &TowerArgs, out: &mut (dyn Write + Send)) -> Result<i32> {
    let field = make_field(&parse_disc(&a.disc)?)?;
    let (d2, source, h) = match field.is_imaginary().then(|| quadfield::class_group_imaginary(&field)) {
        Some(Ok(cg)) => (cg.two_rank, "class group", Some(cg.h)),
        Some(Err(Error::Capacity(_))) | None => (quadfield::genus_two_rank_lower(&field), "genus bound", None),
        Some(Err(e)) => return Err(e),
    };
    let cert = quadfield::golod_shafarevich_check(&field, d2, a.sc_size);
    let passes = cert.passes;
    if a.format == Format::Json {
        let v = TowerOutput {
            cert,
            d2_source: source,
            class_number: h,
        };
        out.write_all(json(&v).as_bytes())?;
    } else {
        writeln!(out, "disc={} s={} t={}", field.disc(), field.s(), field.t())?;
        if let Some(h) = h {
            writeln!(out, "h={h}")?;
        }
        writeln!(out, "d2={d2} ({source})")?;
        writeln!(
            out,
            "threshold 2+2*sqrt({}+{}+1) = {}",
            a.sc_size,
            field.infinite_places(),
            cert.threshold.to_interval_string(12)
        )?;
        writeln!(out, "{}", if passes { "infinite tower certified" } else { "not certified" })?;
    }
    Ok(if passes { EXIT_OK } else { EXIT_CHECK_FAILED })
}
