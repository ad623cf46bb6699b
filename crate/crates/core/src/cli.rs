//! The `fsig` command line: argument definitions, the on-disk length cache
//! and table output.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::field::PrimeField;
use crate::fractal::{fractal_dim_probe_with, monsky_table};
use crate::newton::{clipped_volume_exact, clipped_volume_mc, newton_facets, MonomialIdeal};
use crate::poly::{parse_poly, SparsePoly};
use crate::rational::{to_decimal, ExactRational, PadicRational};
use crate::sigcore::{
    derivative_table, grid_numerator, validate_pair_element, Calculator, SignatureTable, DEFAULT_BASIS_BUDGET,
};
use crate::verify::{standard_suite, PropertyReport};

/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "FSIG_CACHE";

const DECIMAL_DIGITS: u32 = 12;

#[derive(Debug, Parser)]
#[command(name = "fsig", version, about = "Exact F-signature functions of hypersurface pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of s(R, f^t) at t = a/p^c for a = 0..tmax*p^c.
    Signature(GridArgs),
    /// Forward difference quotients of the signature table.
    Derivative(GridArgs),
    /// Hilbert-Kunz sequence len(R/(m^[p^e] + f)) / p^{e(n-1)}, e = 1..=emax.
    Hk(SequenceArgs),
    /// Quotient signature sequence len(R/(m^[p^e] : f^{p^e-1})) / p^{e(n-1)}.
    Qsig(SequenceArgs),
    /// Volume of t * Newton(I) clipped to the unit cube.
    Volume(VolumeArgs),
    /// Rank of rescaled windows of phi = 1 - s.
    Fractal(FractalArgs),
    /// Closed-form table of y^3 - x^4 + x^2 y^2 over F_3 at t = a/3^c.
    Monsky(MonskyArgs),
    /// Property suite on the full table; exits 1 if any property fails.
    Verify(GridArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u64,
    /// Number of variables.
    #[arg(long)]
    pub n: usize,
    /// The polynomial, e.g. "x^3+y^2".
    #[arg(long)]
    pub f: String,
    /// Largest monomial basis q^n a rank computation may use.
    #[arg(long, default_value_t = DEFAULT_BASIS_BUDGET)]
    pub budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Scale: t runs over multiples of 1/p^c.
    #[arg(long)]
    pub c: u32,
    /// Last parameter value, a p-adic rational.
    #[arg(long, default_value = "1")]
    pub tmax: String,
    /// Length cache file (defaults to $FSIG_CACHE when set).
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Worker threads for the sweep.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long)]
    pub emax: u32,
}

#[derive(Debug, Args)]
pub struct VolumeArgs {
    #[arg(long)]
    pub n: usize,
    /// Monomial generators, e.g. "x^2, y^3".
    #[arg(long)]
    pub ideal: String,
    /// Non-negative rational t.
    #[arg(long)]
    pub t: String,
    /// Also report a Monte Carlo estimate with this many samples.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct FractalArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Deepest window level.
    #[arg(long)]
    pub ew: u32,
    /// Sample scale inside each window.
    #[arg(long)]
    pub es: u32,
}

#[derive(Debug, Args)]
pub struct MonskyArgs {
    #[arg(long)]
    pub c: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Failure of a command, with its process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Compute(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("{0} of {1} properties failed")]
    PropertiesFailed(usize, usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(e) => match e {
                Error::Parse { .. }
                | Error::UnknownVariable { .. }
                | Error::ExponentOverflow(_)
                | Error::InvalidModulus(_)
                | Error::NonGridParameter(_)
                | Error::InvalidIdeal(_) => 2,
                Error::Capacity { .. } | Error::GeneratorExplosion { .. } | Error::DimensionTooLarge { .. } => 3,
                Error::UnitElement(_) => 4,
                _ => 1,
            },
            _ => 1,
        }
    }
}

fn io_error(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// One line of the cache file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub p: u32,
    pub n: usize,
    pub c: u32,
    pub a: u64,
    pub f_canonical: String,
    pub length: String,
}

type CacheKey = (u32, usize, u32, u64, String);

/// Append-only file of colon lengths, one JSON record per line.
///
/// Lines that do not parse, or whose length exceeds `p^{cn}`, are skipped
/// with a warning and recomputed on demand. Appends go through one mutex
/// and one `write_all` per record, so lines never interleave.
pub struct LengthCache {
    path: PathBuf,
    known: Mutex<HashMap<CacheKey, u64>>,
    writer: Mutex<File>,
}

fn valid_record(rec: &CacheRecord) -> Option<u64> {
    let length: u64 = rec.length.parse().ok()?;
    let full = (rec.p as u128).checked_pow(rec.c.checked_mul(rec.n as u32)?)?;
    (length as u128 <= full).then_some(length)
}

impl LengthCache {
    pub fn open(path: &Path) -> Result<Self, CliError> {
        let mut known = HashMap::new();
        if path.exists() {
            let file = File::open(path).map_err(io_error(path))?;
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(io_error(path))?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<CacheRecord>(&line).ok().and_then(|r| Some((valid_record(&r)?, r))) {
                    Some((length, r)) => {
                        known.entry((r.p, r.n, r.c, r.a, r.f_canonical)).or_insert(length);
                    }
                    None => log::warn!("{}: skipping corrupted line {}", path.display(), i + 1),
                }
            }
        }
        let mut writer = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(io_error(path))?;
        // a torn last line must not swallow the next record
        let contents_end = std::fs::read(path).map_err(io_error(path))?.last().copied();
        if contents_end.is_some_and(|b| b != b'\n') {
            writer.write_all(b"\n").map_err(io_error(path))?;
        }
        Ok(Self {
            path: path.to_path_buf(),
            known: Mutex::new(known),
            writer: Mutex::new(writer),
        })
    }

    pub fn len(&self) -> usize {
        self.known.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn key(f: &SparsePoly, c: u32, a: u64) -> CacheKey {
        (f.p(), f.nvars(), c, a, f.to_string())
    }

    pub fn lookup(&self, f: &SparsePoly, c: u32, a: u64) -> Option<u64> {
        self.known.lock().expect("cache lock").get(&Self::key(f, c, a)).copied()
    }

    pub fn record(&self, f: &SparsePoly, c: u32, a: u64, length: u64) -> Result<(), CliError> {
        let key = Self::key(f, c, a);
        let rec = CacheRecord {
            p: key.0,
            n: key.1,
            c,
            a,
            f_canonical: key.4.clone(),
            length: length.to_string(),
        };
        let mut line = serde_json::to_string(&rec).expect("record serializes");
        line.push('\n');
        let mut writer = self.writer.lock().expect("cache lock");
        writer.write_all(line.as_bytes()).map_err(io_error(&self.path))?;
        self.known.lock().expect("cache lock").insert(key, length);
        Ok(())
    }
}

/// The colon length `len(R / (m^[p^c] : f^a))`, from the cache if present.
pub fn cache_lookup_or_compute(
    cache: Option<&LengthCache>,
    calc: &Calculator,
    f: &SparsePoly,
    c: u32,
    a: u64,
) -> Result<u64, CliError> {
    if let Some(length) = cache.and_then(|cache| cache.lookup(f, c, a)) {
        return Ok(length);
    }
    let tp = calc.params(f, c)?;
    let length = calc.colon_length(f, a, &tp)?.length;
    if let Some(cache) = cache {
        cache.record(f, c, a, length)?;
    }
    Ok(length)
}

/// Full grid of colon lengths, evaluated from the largest `a` down on
/// `jobs` threads and returned in increasing `a`.
pub fn sweep(
    cache: Option<&LengthCache>,
    calc: &Calculator,
    f: &SparsePoly,
    c: u32,
    t_max: PadicRational,
    jobs: usize,
) -> Result<SignatureTable, CliError> {
    validate_pair_element(f)?;
    let last = grid_numerator(f.p(), c, t_max)?;
    calc.params(f, c)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let descending: Vec<u64> = (0..=last).rev().collect();
    let mut lengths = pool.install(|| {
        descending
            .par_iter()
            .map(|&a| cache_lookup_or_compute(cache, calc, f, c, a))
            .collect::<Result<Vec<u64>, CliError>>()
    })?;
    lengths.reverse();
    Ok(SignatureTable::from_lengths(f.clone(), c, &lengths)?)
}

#[derive(Debug, Serialize)]
struct GridRow {
    a: u64,
    t_num: String,
    t_den: String,
    s_num: String,
    s_den: String,
    s_dec: String,
}

fn grid_rows(c: u32, samples: &[(PadicRational, ExactRational)]) -> Vec<GridRow> {
    samples
        .iter()
        .map(|(t, s)| GridRow {
            a: t.numerator_at(c).expect("sample on the table grid"),
            t_num: t.numerator().to_string(),
            t_den: t.denominator().to_string(),
            s_num: s.numer().to_string(),
            s_den: s.denom().to_string(),
            s_dec: to_decimal(s, DECIMAL_DIGITS),
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct DerivativeRow {
    a: u64,
    t_num: String,
    t_den: String,
    d_num: String,
    d_den: String,
    d_dec: String,
}

#[derive(Debug, Serialize)]
struct SequenceRow {
    e: u32,
    v_num: String,
    v_den: String,
    v_dec: String,
}

#[derive(Debug, Serialize)]
struct VolumeRow {
    t_num: String,
    t_den: String,
    v_num: String,
    v_den: String,
    v_dec: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    mc_estimate: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mc_bound: Option<String>,
}

#[derive(Debug, Serialize)]
struct RankRow {
    p: u32,
    ew: u32,
    es: u32,
    rank: usize,
}

fn emit<T: Serialize>(rows: &[T], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let stdout = |e: io::Error| CliError::Io {
        path: "<output>".into(),
        source: e,
    };
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row).map_err(|e| stdout(e.into()))?;
            }
            w.flush().map_err(stdout)?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows).map_err(|e| stdout(e.into()))?;
            writeln!(out).map_err(stdout)?;
        }
    }
    Ok(())
}

fn parse_pair(args: &PairArgs) -> Result<(SparsePoly, Calculator), CliError> {
    let field = PrimeField::new(args.p)?;
    let f = parse_poly(&args.f, args.n, field)?;
    validate_pair_element(&f)?;
    Ok((f, Calculator::with_budget(args.budget)))
}

fn grid_table(args: &GridArgs) -> Result<SignatureTable, CliError> {
    let (f, calc) = parse_pair(&args.pair)?;
    let t_max = PadicRational::parse(f.p(), &args.tmax)?;
    let path = args
        .cache
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let cache = path.as_deref().map(LengthCache::open).transpose()?;
    sweep(cache.as_ref(), &calc, &f, args.c, t_max, args.jobs)
}

fn sequence_rows(values: Vec<ExactRational>) -> Vec<SequenceRow> {
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| SequenceRow {
            e: i as u32 + 1,
            v_num: v.numer().to_string(),
            v_den: v.denom().to_string(),
            v_dec: to_decimal(&v, DECIMAL_DIGITS),
        })
        .collect()
}

fn report_lines(reports: &[PropertyReport], out: &mut dyn Write) -> io::Result<()> {
    for r in reports {
        writeln!(
            out,
            "{} p={} c={} n={} f={}: {}",
            r.name,
            r.meta.p,
            r.meta.c,
            r.meta.n,
            r.meta.f,
            if r.pass { "pass" } else { "FAIL" }
        )?;
        for w in &r.witnesses {
            writeln!(out, "  at {}: expected {}, got {}", w.location, w.expected, w.actual)?;
        }
    }
    Ok(())
}

/// Runs one command, writing its table to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Signature(args) => {
            let tbl = grid_table(&args)?;
            emit(&grid_rows(args.c, tbl.samples()), args.pair.format, out)
        }
        Command::Derivative(args) => {
            let tbl = grid_table(&args)?;
            let rows: Vec<DerivativeRow> = grid_rows(args.c, &derivative_table(&tbl)?)
                .into_iter()
                .map(|r| DerivativeRow {
                    a: r.a,
                    t_num: r.t_num,
                    t_den: r.t_den,
                    d_num: r.s_num,
                    d_den: r.s_den,
                    d_dec: r.s_dec,
                })
                .collect();
            emit(&rows, args.pair.format, out)
        }
        Command::Hk(args) => {
            let (f, calc) = parse_pair(&args.pair)?;
            emit(&sequence_rows(calc.hk_sequence(&f, args.emax)?), args.pair.format, out)
        }
        Command::Qsig(args) => {
            let (f, calc) = parse_pair(&args.pair)?;
            let values = calc.quotient_signature_sequence(&f, args.emax)?;
            emit(&sequence_rows(values), args.pair.format, out)
        }
        Command::Volume(args) => {
            let ideal = MonomialIdeal::parse(&args.ideal, args.n)?;
            let t = crate::rational::parse_rational(&args.t)?;
            let poly = newton_facets(&ideal)?;
            let v = clipped_volume_exact(&poly, &t)?;
            let mc = args
                .samples
                .map(|n| clipped_volume_mc(&poly, &t, n, args.seed))
                .transpose()?;
            let row = VolumeRow {
                t_num: t.numer().to_string(),
                t_den: t.denom().to_string(),
                v_num: v.numer().to_string(),
                v_den: v.denom().to_string(),
                v_dec: to_decimal(&v, DECIMAL_DIGITS),
                mc_estimate: mc.as_ref().map(|(est, _)| to_decimal(est, DECIMAL_DIGITS)),
                mc_bound: mc.as_ref().map(|(_, bound)| to_decimal(bound, DECIMAL_DIGITS)),
            };
            emit(&[row], args.format, out)
        }
        Command::Fractal(args) => {
            let (f, calc) = parse_pair(&args.pair)?;
            let rank = fractal_dim_probe_with(&calc, &f, f.nvars(), f.p(), args.ew, args.es)?;
            let row = RankRow {
                p: f.p(),
                ew: args.ew,
                es: args.es,
                rank,
            };
            emit(&[row], args.pair.format, out)
        }
        Command::Monsky(args) => {
            let samples: Vec<(PadicRational, ExactRational)> = monsky_table(args.c)?
                .into_iter()
                .map(|(t, s)| (PadicRational::from(t), s))
                .collect();
            emit(&grid_rows(args.c, &samples), args.format, out)
        }
        Command::Verify(args) => {
            let (f, calc) = parse_pair(&args.pair)?;
            let t_max = PadicRational::parse(f.p(), &args.tmax)?;
            if t_max.value() != BigRational::one() {
                log::warn!("verify always checks the full table on [0, 1]");
            }
            let reports = standard_suite(&calc, &f, args.c)?;
            match args.pair.format {
                Format::Csv => report_lines(&reports, out).map_err(|e| CliError::Io {
                    path: "<output>".into(),
                    source: e,
                })?,
                Format::Json => emit(&reports, Format::Json, out).map(|_| ())?,
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            if failed > 0 {
                return Err(CliError::PropertiesFailed(failed, reports.len()));
            }
            Ok(())
        }
    }
}

/// Exact rational from a CSV/JSON numerator and denominator pair.
pub fn parse_exact(num: &str, den: &str) -> Result<ExactRational, Error> {
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("not a fraction: {num}/{den}"),
    };
    let n: num_bigint::BigInt = num.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if d == 0.into() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio_u;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("fsig").chain(args.iter().copied())).unwrap()
    }

    fn output(args: &[&str]) -> Result<String, CliError> {
        let mut out = Vec::new();
        run(cli(args), &mut out)?;
        Ok(String::from_utf8(out).unwrap())
    }

    #[test]
    fn smooth_signature_table() {
        let text = output(&["signature", "--p", "5", "--n", "2", "--f", "x", "--c", "1"]).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "a,t_num,t_den,s_num,s_den,s_dec");
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[1], "0,0,1,1,1,1.00000000000");
        assert_eq!(lines[3], "2,2,5,3,5,0.600000000000");
        assert_eq!(lines[6], "5,1,1,0,1,0");
    }

    #[test]
    fn exit_codes() {
        let code = |args: &[&str]| output(args).unwrap_err().exit_code();
        assert_eq!(code(&["signature", "--p", "5", "--n", "2", "--f", "x+1", "--c", "1"]), 4);
        assert_eq!(code(&["signature", "--p", "5", "--n", "2", "--f", "x^", "--c", "1"]), 2);
        assert_eq!(code(&["signature", "--p", "5", "--n", "2", "--f", "x", "--c", "9"]), 3);
        assert_eq!(code(&["signature", "--p", "5", "--n", "2", "--f", "x", "--c", "1", "--tmax", "1/3"]), 2);
        assert_eq!(code(&["hk", "--p", "5", "--n", "2", "--f", "0", "--emax", "1"]), 1);
    }

    #[test]
    fn csv_round_trip() {
        let text = output(&["signature", "--p", "3", "--n", "2", "--f", "x^2+y^3", "--c", "2"]).unwrap();
        let calc = Calculator::default();
        let f = parse_poly("x^2+y^3", 2, PrimeField::new(3).unwrap()).unwrap();
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        for (a, row) in reader.records().enumerate() {
            let row = row.unwrap();
            assert_eq!(row[0].parse::<u64>().unwrap(), a as u64);
            let t = parse_exact(&row[1], &row[2]).unwrap();
            assert_eq!(t, ratio_u(a as u64, 9));
            let s = parse_exact(&row[3], &row[4]).unwrap();
            assert_eq!(s, calc.signature_at_scale(&f, a as u64, 2).unwrap());
        }
    }

    #[test]
    fn json_has_the_csv_fields() {
        let text = output(&["signature", "--p", "2", "--n", "1", "--f", "x", "--c", "1", "--format", "json"]).unwrap();
        let rows: Vec<serde_json::Value> = serde_json::from_str(&text).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1]["a"], 1);
        assert_eq!(rows[1]["s_num"], "1");
        assert_eq!(rows[1]["s_den"], "2");
        assert_eq!(rows[1]["s_dec"], "0.500000000000");
    }

    #[test]
    fn other_commands() {
        let hk = output(&["hk", "--p", "2", "--n", "2", "--f", "x*y", "--emax", "2"]).unwrap();
        assert_eq!(hk, "e,v_num,v_den,v_dec\n1,3,2,1.50000000000\n2,7,4,1.75000000000\n");
        let vol = output(&["volume", "--n", "2", "--ideal", "x^2, y^3", "--t", "1/2"]).unwrap();
        assert_eq!(vol, "t_num,t_den,v_num,v_den,v_dec\n1,2,1,3,0.333333333333\n");
        let monsky = output(&["monsky", "--c", "1"]).unwrap();
        assert_eq!(monsky.lines().count(), 5);
        assert!(monsky.ends_with("3,1,1,0,1,0\n"));
        let rank = output(&["fractal", "--p", "3", "--n", "2", "--f", "x", "--ew", "1", "--es", "2"]).unwrap();
        assert_eq!(rank, "p,ew,es,rank\n3,1,2,2\n");
        let der = output(&["derivative", "--p", "5", "--n", "2", "--f", "x", "--c", "1"]).unwrap();
        assert_eq!(der.lines().count(), 6);
        assert!(der.starts_with("a,t_num,t_den,d_num,d_den,d_dec\n"));
        assert!(der.lines().skip(1).all(|l| l.contains(",-1,1,-1.00000000000")));
    }

    #[test]
    fn verify_command() {
        let text = output(&["verify", "--p", "3", "--n", "2", "--f", "x^3+y^2", "--c", "2"]).unwrap();
        assert_eq!(text.lines().count(), 5);
        assert!(text.lines().all(|l| l.ends_with(": pass")));
    }

    #[test]
    fn cache_skips_corrupted_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.ndjson");
        let f = parse_poly("x", 2, PrimeField::new(5).unwrap()).unwrap();
        std::fs::write(
            &path,
            "{\"p\":5,\"n\":2,\"c\":1,\"a\":2,\"f_canonical\":\"x\",\"length\":\"15\"}\n\
             {\"p\":5,\"n\":2,\"c\":1,\"a\":3,\n\
             {\"p\":5,\"n\":2,\"c\":1,\"a\":4,\"f_canonical\":\"x\",\"length\":\"99\"}\n\
             {\"p\":5,\"n\":2,\"c\":1,\"a\":1,\"f_can",
        )
        .unwrap();
        let cache = LengthCache::open(&path).unwrap();
        assert_eq!(cache.len(), 1);
        assert_eq!(cache.lookup(&f, 1, 2), Some(15));
        assert_eq!(cache.lookup(&f, 1, 4), None);
        let calc = Calculator::default();
        assert_eq!(cache_lookup_or_compute(Some(&cache), &calc, &f, 1, 4).unwrap(), 5);
        let reopened = LengthCache::open(&path).unwrap();
        assert_eq!(reopened.lookup(&f, 1, 4), Some(5));
        assert_eq!(reopened.len(), 2);
    }

    #[test]
    fn cold_and_warm_cache() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.ndjson");
        let args = ["signature", "--p", "3", "--n", "2", "--f", "x^3+y^2", "--c", "2", "--cache", path.to_str().unwrap()];
        let first = output(&args).unwrap();
        let lines = std::fs::read_to_string(&path).unwrap().lines().count();
        assert_eq!(lines, 10);
        let second = output(&args).unwrap();
        assert_eq!(first, second);
        assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), lines);
    }
}
