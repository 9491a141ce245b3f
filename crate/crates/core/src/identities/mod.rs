//! Catalog of identities and recurrences, with a uniform verification
//! engine.
//!
//! Every entry binds a builder to a stable id. A builder produces
//! [`Evidence`]: polynomial checks (both sides must agree), partition
//! listings, and for statements with a suspected misprint a set of
//! competing [`Reading`]s, each compared against an independent oracle.
//! [`judge`] turns evidence into a [`VerificationReport`].

mod catalog;
mod finite;
mod recurrences;
mod series;
mod sums;
mod trinomial;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::mpsc;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::qpoly::{Discrepancy, QPoly};

pub use catalog::registry;

/// Global truncation order for infinite identities that do not pin their own.
pub const DEFAULT_T: i64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    ExactPolynomial,
    TruncatedSeries,
    RecurrenceCheck,
    CountEquality,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::ExactPolynomial => "exact-polynomial",
            Kind::TruncatedSeries => "truncated-series",
            Kind::RecurrenceCheck => "recurrence-check",
            Kind::CountEquality => "count-equality",
        }
    }
}

/// The integer parameter an entry is indexed by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    N,
    M,
    Nu,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::N => "N",
            Axis::M => "M",
            Axis::Nu => "nu",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamRange {
    pub axis: Axis,
    pub lo: i64,
    pub hi: i64,
}

/// Truncation policy of an infinite identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub default: i64,
    /// Whether the global default (and its environment override) applies.
    pub follows_global: bool,
    /// Largest accepted order, set by enumeration caps or cost.
    pub max: i64,
}

/// Resolved arguments handed to a builder.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Args {
    pub v: i64,
    pub t: i64,
}

pub(crate) type Builder = fn(Args) -> Result<Evidence>;

#[derive(Clone)]
pub struct IdentitySpec {
    pub id: &'static str,
    pub kind: Kind,
    pub range: Option<ParamRange>,
    pub truncation: Option<Truncation>,
    /// What the entry states, in a few words.
    pub anchor: &'static str,
    pub(crate) builder: Builder,
}

impl fmt::Debug for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentitySpec")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .field("range", &self.range)
            .field("truncation", &self.truncation)
            .finish()
    }
}

impl IdentitySpec {
    /// Parameter values swept by the suite.
    pub fn points(&self) -> Vec<Option<i64>> {
        match self.range {
            Some(r) => (r.lo..=r.hi).map(Some).collect(),
            None => vec![None],
        }
    }

    pub fn range_text(&self) -> String {
        let mut parts = Vec::new();
        if let Some(r) = self.range {
            parts.push(format!("{} in [{}, {}]", r.axis.name(), r.lo, r.hi));
        }
        if let Some(t) = self.truncation {
            parts.push(format!("T = {}", t.default));
        }
        if parts.is_empty() {
            "-".to_string()
        } else {
            parts.join(", ")
        }
    }
}

/// User supplied parameters. Fields that do not apply to an entry are ignored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(rename = "N")]
    pub n: Option<i64>,
    #[serde(rename = "M")]
    pub big_m: Option<i64>,
    pub nu: Option<i64>,
    #[serde(rename = "T")]
    pub t: Option<i64>,
}

impl Params {
    pub fn with_n(n: i64) -> Self {
        Params { n: Some(n), ..Params::default() }
    }

    pub fn with_t(t: i64) -> Self {
        Params { t: Some(t), ..Params::default() }
    }

    fn axis(&self, a: Axis) -> Option<i64> {
        match a {
            Axis::N => self.n,
            Axis::M => self.big_m,
            Axis::Nu => self.nu,
        }
    }

    fn set_axis(&mut self, a: Axis, v: i64) {
        match a {
            Axis::N => self.n = Some(v),
            Axis::M => self.big_m = Some(v),
            Axis::Nu => self.nu = Some(v),
        }
    }
}

/// One comparison inside an entry.
#[derive(Clone, Debug)]
pub enum Check {
    Poly { label: String, lhs: QPoly, rhs: QPoly, half_integer: bool },
    Listing { label: String, lhs: Vec<Partition>, rhs: Vec<Partition> },
}

impl Check {
    pub fn poly(label: impl Into<String>, lhs: QPoly, rhs: QPoly) -> Self {
        Check::Poly { label: label.into(), lhs, rhs, half_integer: false }
    }

    pub fn half_integer(label: impl Into<String>, lhs: QPoly, rhs: QPoly) -> Self {
        Check::Poly { label: label.into(), lhs, rhs, half_integer: true }
    }

    pub fn listing(label: impl Into<String>, lhs: Vec<Partition>, rhs: Vec<Partition>) -> Self {
        Check::Listing { label: label.into(), lhs, rhs }
    }

    pub fn label(&self) -> &str {
        match self {
            Check::Poly { label, .. } | Check::Listing { label, .. } => label,
        }
    }
}

/// A candidate form of a statement, compared against its oracle.
#[derive(Clone, Debug)]
pub struct Reading {
    pub name: String,
    /// True for the form as printed, false for a proposed correction.
    pub printed: bool,
    pub candidate: QPoly,
    pub oracle: QPoly,
}

impl Reading {
    pub fn printed(name: impl Into<String>, candidate: QPoly, oracle: QPoly) -> Self {
        Reading { name: name.into(), printed: true, candidate, oracle }
    }

    pub fn corrected(name: impl Into<String>, candidate: QPoly, oracle: QPoly) -> Self {
        Reading { name: name.into(), printed: false, candidate, oracle }
    }
}

/// Everything a builder produced for one parameter point.
#[derive(Clone, Debug, Default)]
pub struct Evidence {
    pub checks: Vec<Check>,
    pub readings: Vec<Reading>,
    pub notes: Vec<String>,
}

impl Evidence {
    pub fn new() -> Self {
        Evidence::default()
    }

    pub fn check(mut self, c: Check) -> Self {
        self.checks.push(c);
        self
    }

    pub fn poly(self, label: impl Into<String>, lhs: QPoly, rhs: QPoly) -> Self {
        self.check(Check::poly(label, lhs, rhs))
    }

    pub fn reading(mut self, r: Reading) -> Self {
        self.readings.push(r);
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// Why an entry failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// The first monomial where the two sides disagree.
    Coefficient {
        check: String,
        #[serde(flatten)]
        at: Discrepancy,
    },
    /// Partitions present on one side of a listing only.
    Listing { check: String, missing: Vec<Partition>, unexpected: Vec<Partition> },
    /// The sides live on different cosets of the integers (half-unit offsets).
    ParityOffset { check: String, lhs: Vec<i64>, rhs: Vec<i64> },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Coefficient { check, at } => write!(f, "{check}: {at}"),
            Witness::Listing { check, missing, unexpected } => {
                write!(f, "{check}: {} missing, {} unexpected", missing.len(), unexpected.len())?;
                if let Some(p) = missing.first().or(unexpected.first()) {
                    write!(f, " (first {p})")?;
                }
                Ok(())
            }
            Witness::ParityOffset { check, lhs, rhs } => {
                write!(f, "{check}: half-unit offsets {lhs:?} vs {rhs:?}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadingVerdict {
    pub name: String,
    pub printed: bool,
    pub matches: bool,
    pub discrepancy: Option<Discrepancy>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub params: BTreeMap<String, i64>,
    pub status: Status,
    pub discrepancy: Option<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub readings: Vec<ReadingVerdict>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub wall_ms: f64,
}

/// Looks up an entry by id.
pub fn lookup(id: &str) -> Result<&'static IdentitySpec> {
    registry().iter().find(|s| s.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

fn resolve(spec: &IdentitySpec, params: &Params, global_t: Option<i64>) -> Result<(Args, BTreeMap<String, i64>)> {
    let mut shown = BTreeMap::new();
    let v = match spec.range {
        Some(r) => {
            let v = params.axis(r.axis).ok_or_else(|| {
                Error::InvalidParam(format!("{} needs a value for {}", spec.id, r.axis.name()))
            })?;
            if v < r.lo || v > r.hi {
                return Err(Error::ParamOutOfRange { name: r.axis.name().to_string(), value: v, lo: r.lo, hi: r.hi });
            }
            shown.insert(r.axis.name().to_string(), v);
            v
        }
        None => 0,
    };
    let t = match spec.truncation {
        Some(tr) => {
            let t = params
                .t
                .or(if tr.follows_global { global_t } else { None })
                .unwrap_or(tr.default);
            if t < 0 || t > tr.max {
                return Err(Error::ParamOutOfRange { name: "T".to_string(), value: t, lo: 0, hi: tr.max });
            }
            shown.insert("T".to_string(), t);
            t
        }
        None => 0,
    };
    Ok((Args { v, t }, shown))
}

/// Builds the evidence of one entry without judging it.
pub fn build(id: &str, params: &Params) -> Result<Evidence> {
    let spec = lookup(id)?;
    let (args, _) = resolve(spec, params, None)?;
    (spec.builder)(args)
}

fn offsets(p: &QPoly) -> Vec<i64> {
    let mut v: Vec<i64> = p.terms().map(|(m, _)| m.q_half_exponent().rem_euclid(2)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Judges evidence: every check must hold, and when readings are present at
/// least one of them must match its oracle.
pub fn judge(id: &str, params: BTreeMap<String, i64>, evidence: &Evidence, wall: Duration) -> VerificationReport {
    let mut witness = None;
    for check in &evidence.checks {
        let w = match check {
            Check::Poly { label, lhs, rhs, half_integer } => {
                if *half_integer {
                    let (lo, ro) = (offsets(lhs), offsets(rhs));
                    if lo != ro {
                        Some(Witness::ParityOffset { check: label.clone(), lhs: lo, rhs: ro })
                    } else {
                        lhs.compare(rhs).map(|at| Witness::Coefficient { check: label.clone(), at })
                    }
                } else {
                    lhs.compare(rhs).map(|at| Witness::Coefficient { check: label.clone(), at })
                }
            }
            Check::Listing { label, lhs, rhs } => {
                let missing: Vec<_> = rhs.iter().filter(|p| !lhs.contains(p)).cloned().collect();
                let unexpected: Vec<_> = lhs.iter().filter(|p| !rhs.contains(p)).cloned().collect();
                if missing.is_empty() && unexpected.is_empty() && lhs.len() == rhs.len() {
                    None
                } else {
                    Some(Witness::Listing { check: label.clone(), missing, unexpected })
                }
            }
        };
        if w.is_some() {
            witness = w;
            break;
        }
    }
    let readings: Vec<ReadingVerdict> = evidence
        .readings
        .iter()
        .map(|r| {
            let d = r.candidate.compare(&r.oracle);
            ReadingVerdict { name: r.name.clone(), printed: r.printed, matches: d.is_none(), discrepancy: d }
        })
        .collect();
    let mut notes = evidence.notes.clone();
    if !readings.is_empty() {
        let matching: Vec<&str> = readings.iter().filter(|r| r.matches).map(|r| r.name.as_str()).collect();
        let printed_ok = readings.iter().any(|r| r.printed && r.matches);
        let summary = if matching.is_empty() {
            "no reading matches the oracle".to_string()
        } else if printed_ok {
            format!("printed form matches; matching readings: {}", matching.join(", "))
        } else {
            format!("printed form fails; matching readings: {}", matching.join(", "))
        };
        notes.push(summary);
        if witness.is_none() && matching.is_empty() {
            let first = &readings[0];
            witness = first.discrepancy.clone().map(|at| Witness::Coefficient { check: first.name.clone(), at });
        }
    }
    let status = if witness.is_some() { Status::Fail } else { Status::Pass };
    VerificationReport {
        id: id.to_string(),
        params,
        status,
        discrepancy: witness,
        readings,
        notes,
        wall_ms: wall.as_secs_f64() * 1e3,
    }
}

/// Verifies one entry at one parameter point.
pub fn verify(id: &str, params: &Params) -> Result<VerificationReport> {
    verify_with(lookup(id)?, params, None)
}

fn verify_with(spec: &IdentitySpec, params: &Params, global_t: Option<i64>) -> Result<VerificationReport> {
    let (args, shown) = resolve(spec, params, global_t)?;
    let start = clock::start();
    let evidence = (spec.builder)(args)?;
    Ok(judge(spec.id, shown, &evidence, clock::elapsed(start)))
}

/// Wall clock, absent in the browser build where `Instant` panics.
mod clock {
    use std::time::Duration;

    #[cfg(not(target_arch = "wasm32"))]
    pub fn start() -> Option<std::time::Instant> {
        Some(std::time::Instant::now())
    }

    #[cfg(target_arch = "wasm32")]
    pub fn start() -> Option<std::time::Instant> {
        None
    }

    pub fn elapsed(start: Option<std::time::Instant>) -> Duration {
        start.map_or(Duration::ZERO, |s| s.elapsed())
    }
}

/// Options for [`run_suite`].
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteOptions {
    /// Fixed parameter values; an entry's axis left unset is swept over its range.
    pub params: Params,
    /// Replaces [`DEFAULT_T`] for entries that follow the global default.
    pub global_t: Option<i64>,
    /// Per-verification wall clock limit; an overrun is reported as skipped.
    pub timeout: Option<Duration>,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
}

/// Entries whose id matches the glob pattern, in id order.
pub fn matching(pattern: &str) -> Result<Vec<&'static IdentitySpec>> {
    let pat = glob::Pattern::new(pattern).map_err(|e| Error::InvalidParam(format!("bad pattern `{pattern}`: {e}")))?;
    let mut out: Vec<_> = registry().iter().filter(|s| pat.matches(s.id)).collect();
    out.sort_by_key(|s| s.id);
    Ok(out)
}

fn skipped(id: &str, params: &Params, axis: Option<Axis>, note: String) -> VerificationReport {
    let mut shown = BTreeMap::new();
    if let Some(a) = axis {
        if let Some(v) = params.axis(a) {
            shown.insert(a.name().to_string(), v);
        }
    }
    VerificationReport {
        id: id.to_string(),
        params: shown,
        status: Status::Skipped,
        discrepancy: None,
        readings: Vec::new(),
        notes: vec![note],
        wall_ms: 0.0,
    }
}

fn run_one(spec: &'static IdentitySpec, params: Params, opts: &SuiteOptions) -> VerificationReport {
    let axis = spec.range.map(|r| r.axis);
    let global_t = opts.global_t;
    let Some(limit) = opts.timeout else {
        return verify_with(spec, &params, global_t)
            .unwrap_or_else(|e| skipped(spec.id, &params, axis, e.to_string()));
    };
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(verify_with(spec, &params, global_t));
    });
    match rx.recv_timeout(limit) {
        Ok(Ok(r)) => r,
        Ok(Err(e)) => skipped(spec.id, &params, axis, e.to_string()),
        Err(_) => skipped(spec.id, &params, axis, format!("timed out after {} s", limit.as_secs_f64())),
    }
}

/// Runs every entry whose id matches `pattern`, sweeping unset axes over
/// their declared ranges. Reports come back ordered by id, then parameter.
pub fn run_suite(pattern: &str, opts: &SuiteOptions) -> Result<Vec<VerificationReport>> {
    let mut jobs = Vec::new();
    for spec in matching(pattern)? {
        let points = match spec.range {
            Some(r) if opts.params.axis(r.axis).is_some() => vec![opts.params.axis(r.axis)],
            _ => spec.points(),
        };
        for p in points {
            let mut params = opts.params;
            if let (Some(r), Some(v)) = (spec.range, p) {
                params.set_axis(r.axis, v);
            }
            jobs.push((spec, params));
        }
    }
    let work = || jobs.par_iter().map(|(spec, params)| run_one(spec, *params, opts)).collect::<Vec<_>>();
    let reports = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidParam(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    Ok(reports)
}

/// Counts of each status.
pub fn summarize(reports: &[VerificationReport]) -> (usize, usize, usize) {
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    (count(Status::Pass), count(Status::Fail), count(Status::Skipped))
}
