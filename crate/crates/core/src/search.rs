//! Row-ordered, checkpointed sieve for integer roots of `Q_pq` over all
//! coprime seeds with `q ≤ q_max`, `p ≤ p_max`.
//!
//! Output is one JSON object per seed, ordered by `(q, p)`. A checkpoint is
//! written after every completed `q`-row; resuming truncates the report back
//! to the checkpoint and continues with the next row.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::asymptotics::forward_intervals;
use crate::charpoly::{build_qpq, Branch, SeedPair};
use crate::error::{Error, Result};
use crate::exact::{
    ceil, floor, isolate_roots, ratio_string, IntPolynomial, Integer, IsolatingInterval, Rational,
};
use crate::filter::{
    classify_region, exclusion_check, reconstruct, upper_bound_holds, CuboidCandidate,
    CuboidReconstruction, ExclusionReport, RegionClass,
};

/// Exponent applied to `p` and `q` in the divisor sieve: integer roots of
/// `Q_pq` divide its constant term `−p¹⁰q¹⁰`.
const SIEVE_EXPONENT: u32 = 10;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub q_max: u64,
    pub p_max: u64,
    /// Isolation width for the `t3` root in the nonlinear region.
    pub width: Rational,
    pub workers: usize,
    pub report_path: PathBuf,
    pub checkpoint_path: PathBuf,
    /// Checkpoint to resume from; usually equal to `checkpoint_path`.
    pub resume_path: Option<PathBuf>,
    /// Test hook: return after this many rows, as if killed.
    pub stop_after_rows: Option<u64>,
}

impl SearchConfig {
    /// Checkpoint defaults to `<report>.checkpoint`.
    pub fn new(q_max: u64, p_max: u64, width: Rational, report_path: impl Into<PathBuf>) -> Self {
        let report_path = report_path.into();
        let mut ck = report_path.clone().into_os_string();
        ck.push(".checkpoint");
        SearchConfig {
            q_max,
            p_max,
            width,
            workers: 1,
            report_path,
            checkpoint_path: PathBuf::from(ck),
            resume_path: None,
            stop_after_rows: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.q_max == 0 || self.p_max == 0 {
            return Err(Error::InvalidConfig(
                "q_max and p_max must be positive".into(),
            ));
        }
        if !self.width.is_positive() {
            return Err(Error::NonPositiveWidth(self.width.to_string()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidConfig("workers must be at least 1".into()));
        }
        Ok(())
    }

    /// SHA-256 over the fields that determine report content. Paths and
    /// worker count are excluded.
    pub fn config_hash(&self) -> String {
        let canonical = format!(
            "q_max={};p_max={};width={}",
            self.q_max,
            self.p_max,
            ratio_string(&self.width)
        );
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }
}

/// An exact integer root found by the sieve. Roots failing admissibility
/// are kept.
#[derive(Clone, Debug, Serialize)]
pub struct FoundRoot {
    #[serde(flatten)]
    pub candidate: CuboidCandidate,
    pub admissible: bool,
    /// Absent when the parametrization degenerates at this root.
    pub reconstruction: Option<CuboidReconstruction>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReportRecord {
    pub p: u64,
    pub q: u64,
    pub region: RegionClass,
    pub checks_passed: Vec<String>,
    pub integer_points_tested: Vec<String>,
    pub candidates_found: Vec<FoundRoot>,
    /// Wall-clock seconds; excluded from determinism comparisons.
    pub elapsed: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    /// `(q, p)` of the last record in the last completed row.
    pub last_completed: (u64, u64),
    pub config_hash: String,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    /// Write-then-rename so a kill never leaves a partial checkpoint.
    pub fn store(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        fs::write(&tmp, serde_json::to_string(self)?)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub rows_completed: u64,
    pub records_written: u64,
    pub candidates: Vec<FoundRoot>,
    /// Stopped early through `stop_after_rows`.
    pub interrupted: bool,
}

/// Prime factorization by trial division.
fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors `d` of `p¹⁰q¹⁰` that satisfy `keep(d)`, ascending.
/// `keep` must be downward closed (true at `d` implies true below `d`).
pub fn bounded_divisors(seed: SeedPair, keep: impl Fn(&Integer) -> bool) -> Vec<Integer> {
    let mut primes = factor(seed.p);
    primes.extend(factor(seed.q));
    let mut out = Vec::new();
    fn walk(
        primes: &[(u64, u32)],
        acc: Integer,
        keep: &dyn Fn(&Integer) -> bool,
        out: &mut Vec<Integer>,
    ) {
        let Some((&(prime, e), rest)) = primes.split_first() else {
            out.push(acc);
            return;
        };
        let mut d = acc;
        for _ in 0..=e * SIEVE_EXPONENT {
            if !keep(&d) {
                break;
            }
            walk(rest, d.clone(), keep, out);
            d *= prime;
        }
    }
    walk(&primes, Integer::one(), &keep, &mut out);
    out.sort();
    out
}

/// Exact roots of `poly` among `points`, reported on both branches.
fn roots_among(seed: SeedPair, poly: &IntPolynomial, points: &[Integer]) -> Result<Vec<FoundRoot>> {
    let mut found = Vec::new();
    for t in points {
        if !t.is_positive() || !poly.eval_integer(t).is_zero() {
            continue;
        }
        for branch in [Branch::First, Branch::Second] {
            let candidate = CuboidCandidate::new(seed, t.clone(), branch)?;
            found.push(FoundRoot {
                admissible: candidate.admissible(),
                reconstruction: reconstruct(&candidate).ok(),
                candidate,
            });
        }
    }
    Ok(found)
}

/// Names of the exclusion checks that hold for `ex`.
fn exclusion_tags(ex: &ExclusionReport) -> Vec<String> {
    [
        ("t2_below_p_squared", ex.t2_below_p_squared),
        ("t1_margin", ex.t1_margin.holds()),
        ("t3_free_of_integers", ex.t3_free_of_integers),
        ("fully_excluded", ex.fully_excluded),
    ]
    .into_iter()
    .filter(|(_, ok)| *ok)
    .map(|(name, _)| name.to_string())
    .collect()
}

/// Integers in the closed interval `[lo, hi]`.
fn closed_integer_range(lo: &Rational, hi: &Rational) -> Vec<Integer> {
    let mut out = Vec::new();
    let mut n = ceil(lo);
    let end = floor(hi);
    while n <= end {
        out.push(n.clone());
        n += 1;
    }
    out
}

/// Sieve one seed.
pub fn search_seed(seed: SeedPair, width: &Rational) -> Result<SearchReportRecord> {
    let start = Instant::now();
    let region = classify_region(seed);
    let qpq = build_qpq(seed);
    let (p, q) = (seed.p_int(), seed.q_int());
    let mut checks = Vec::new();
    let mut points = Vec::new();

    match region {
        RegionClass::NoCuboid => {
            if seed.p >= 59 * seed.q {
                let ex = exclusion_check(seed)?;
                checks.extend(exclusion_tags(&ex));
            } else {
                checks.push("reverse_region".to_string());
            }
        }
        RegionClass::Nonlinear => {
            let ex = exclusion_check(seed)?;
            checks.extend(exclusion_tags(&ex));
            let t3 = &forward_intervals(seed)?[2];
            let lo = t3
                .lo
                .as_rational()
                .expect("t3 endpoints are rational")
                .clone();
            let hi = t3
                .hi
                .as_rational()
                .expect("t3 endpoints are rational")
                .clone();
            // Closed range: a root on an endpoint must not slip through.
            points = closed_integer_range(&lo, &hi);
            let region_iv = IsolatingInterval::new(lo, hi)?;
            if isolate_roots(&qpq.poly, &region_iv, width)?.len() == 1 {
                checks.push("t3_root_isolated".to_string());
            }
            checks.push("t3_points_enumerated".to_string());
        }
        RegionClass::Linear => {
            points = bounded_divisors(seed, |d| upper_bound_holds(&p, &q, d));
            checks.push("divisor_sieve".to_string());
        }
    }

    let candidates_found = roots_among(seed, &qpq.poly, &points)?;
    Ok(SearchReportRecord {
        p: seed.p,
        q: seed.q,
        region,
        checks_passed: checks,
        integer_points_tested: points.iter().map(ToString::to_string).collect(),
        candidates_found,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

/// Coprime seeds of row `q`, ascending in `p`.
fn row_seeds(q: u64, p_max: u64) -> Vec<SeedPair> {
    (1..=p_max)
        .filter(|&p| p != q && p.gcd(&q) == 1)
        .map(|p| SeedPair { p, q })
        .collect()
}

/// Keep only report lines whose `q` is at most `last_q`.
fn truncate_report(path: &Path, last_q: u64) -> Result<u64> {
    let reader = BufReader::new(File::open(path)?);
    let mut kept = Vec::new();
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let v: serde_json::Value = serde_json::from_str(&line)?;
        let q = v["q"]
            .as_u64()
            .ok_or_else(|| Error::Parse(format!("record without q: {line}")))?;
        if q <= last_q {
            kept.push(line);
        }
    }
    let mut w = BufWriter::new(File::create(path)?);
    for line in &kept {
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    Ok(kept.len() as u64)
}

/// Run the sieve described by `config`, writing the report and checkpoint.
pub fn run_search(config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    let hash = config.config_hash();
    let mut outcome = SearchOutcome::default();

    let first_row = match &config.resume_path {
        Some(path) => {
            let ck = Checkpoint::load(path)?;
            if ck.config_hash != hash {
                return Err(Error::CheckpointMismatch {
                    expected: hash,
                    found: ck.config_hash,
                });
            }
            outcome.records_written = truncate_report(&config.report_path, ck.last_completed.0)?;
            ck.last_completed.0 + 1
        }
        None => {
            File::create(&config.report_path)?;
            1
        }
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let mut report = BufWriter::new(OpenOptions::new().append(true).open(&config.report_path)?);

    for q in first_row..=config.q_max {
        if config
            .stop_after_rows
            .is_some_and(|n| outcome.rows_completed >= n)
        {
            outcome.interrupted = true;
            break;
        }
        let seeds = row_seeds(q, config.p_max);
        let records: Vec<SearchReportRecord> = pool.install(|| {
            seeds
                .par_iter()
                .map(|&s| search_seed(s, &config.width))
                .collect::<Result<_>>()
        })?;
        for rec in &records {
            serde_json::to_writer(&mut report, rec)?;
            report.write_all(b"\n")?;
            outcome
                .candidates
                .extend(rec.candidates_found.iter().cloned());
        }
        report.flush()?;
        outcome.records_written += records.len() as u64;
        let last_p = seeds.last().map_or(config.p_max, |s| s.p);
        Checkpoint {
            last_completed: (q, last_p),
            config_hash: hash.clone(),
        }
        .store(&config.checkpoint_path)?;
        outcome.rows_completed += 1;
    }
    Ok(outcome)
}

/// Report lines with the `elapsed` field removed, for determinism checks.
pub fn comparable_lines(path: &Path) -> Result<Vec<String>> {
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for line in reader.lines() {
        let mut v: serde_json::Value = serde_json::from_str(&line?)?;
        if let Some(obj) = v.as_object_mut() {
            obj.remove("elapsed");
        }
        out.push(v.to_string());
    }
    Ok(out)
}
