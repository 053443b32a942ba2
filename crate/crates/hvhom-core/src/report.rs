//! Check/audit report types, deterministic counterexample ordering, the
//! windowed grid runner and canonical JSON emission.
//!
//! Reports must be byte-stable: identical inputs produce identical JSON no
//! matter how the grid was evaluated. Grid points are enumerated in a fixed
//! order (indices by increasing magnitude, positive before negative;
//! generators kind-major), evaluation may run in parallel, and the results
//! are merged back in enumeration order. JSON objects serialize with sorted
//! keys and scalars are carried as exact text, never as floats.

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::algebra::Generator;

/// Default window for pairwise identity suites.
pub const DEFAULT_PAIR_WINDOW: i64 = 8;
/// Default window for triple identity suites (Jacobi-shaped grids).
pub const DEFAULT_TRIPLE_WINDOW: i64 = 6;
/// Default cap on recorded counterexamples.
pub const DEFAULT_MAX_COUNTEREXAMPLES: usize = 5;

/// Sort key placing indices in the order 0, 1, -1, 2, -2, …
pub(crate) fn mag_ordered(i: i64) -> (u64, u8) {
    (i.unsigned_abs(), u8::from(i < 0))
}

/// Indices `[-window, window]` in deterministic enumeration order.
pub(crate) fn mag_range(window: i64) -> Vec<i64> {
    let mut out = vec![0];
    for n in 1..=window.max(0) {
        out.push(n);
        out.push(-n);
    }
    out
}

/// The indexed generators `L_n, I_n` for `|n| ≤ window`, enumeration order.
pub(crate) fn indexed_generators(window: i64) -> Vec<Generator> {
    let idx = mag_range(window);
    let mut out: Vec<Generator> = idx.iter().map(|&n| Generator::L(n)).collect();
    out.extend(idx.iter().map(|&n| Generator::I(n)));
    out
}

/// Indexed generators plus the three central generators.
pub(crate) fn all_generators(window: i64) -> Vec<Generator> {
    let mut out = indexed_generators(window);
    out.extend([Generator::CL, Generator::CLI, Generator::CI]);
    out
}

/// A coordinate of a grid point: an integer index or a generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PointVal {
    Int(i64),
    Gen(Generator),
}

impl PointVal {
    fn order_key(&self) -> (u8, u8, (u64, u8)) {
        match self {
            PointVal::Int(i) => (0, 0, mag_ordered(*i)),
            PointVal::Gen(g) => {
                let (kind, idx) = g.order_key();
                (1, kind, idx)
            }
        }
    }

    fn to_json(&self) -> Value {
        match self {
            PointVal::Int(i) => json!(i),
            PointVal::Gen(g) => json!(g.to_string()),
        }
    }
}

impl PartialOrd for PointVal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PointVal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

/// A grid point: named index assignment, e.g. `{g: L1, h: L-1, t: 0}`.
#[derive(Clone, PartialEq, Debug)]
pub struct Point(pub BTreeMap<&'static str, PointVal>);

impl Eq for Point {}

impl<const N: usize> From<[(&'static str, PointVal); N]> for Point {
    fn from(entries: [(&'static str, PointVal); N]) -> Self {
        Point(entries.into_iter().collect())
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.iter().cmp(other.0.iter())
    }
}

impl Point {
    fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, v) in &self.0 {
            map.insert((*k).to_string(), v.to_json());
        }
        Value::Object(map)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "(")?;
        for (k, v) in &self.0 {
            if !first {
                write!(f, ", ")?;
            }
            match v {
                PointVal::Int(i) => write!(f, "{k}={i}")?,
                PointVal::Gen(g) => write!(f, "{k}={g}")?,
            }
            first = false;
        }
        write!(f, ")")
    }
}

/// One failed grid point with both sides fully formatted for diffing.
#[derive(Clone, PartialEq, Debug)]
pub struct Counterexample {
    pub point: Point,
    pub lhs: String,
    pub rhs: String,
}

impl Counterexample {
    fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("lhs".into(), json!(self.lhs));
        map.insert("point".into(), self.point.to_json());
        map.insert("rhs".into(), json!(self.rhs));
        Value::Object(map)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// Deterministic record of one suite run.
#[derive(Clone, PartialEq, Debug)]
pub struct CheckReport {
    pub suite: String,
    pub window: BTreeMap<&'static str, i64>,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub checked: u64,
    /// Total number of failing points (the recorded list is capped).
    pub failures: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        let mut window = Map::new();
        for (k, w) in &self.window {
            window.insert((*k).to_string(), json!([-w, w]));
        }
        let mut params = Map::new();
        for (k, v) in &self.params {
            params.insert(k.clone(), json!(v));
        }
        let mut map = Map::new();
        map.insert("checked".into(), json!(self.checked));
        map.insert(
            "counterexamples".into(),
            Value::Array(self.counterexamples.iter().map(|c| c.to_json()).collect()),
        );
        map.insert("failures".into(), json!(self.failures));
        map.insert("params".into(), Value::Object(params));
        map.insert("status".into(), json!(self.status.as_str()));
        map.insert("suite".into(), json!(self.suite));
        map.insert("window".into(), Value::Object(window));
        Value::Object(map)
    }

    pub fn canonical_bytes(&self) -> Vec<u8> {
        canonical_bytes(&self.to_json())
    }
}

/// One compared component in an audit: a tabulated value against the value
/// this crate derives independently.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AuditEntry {
    pub component: String,
    pub printed: String,
    pub derived: String,
    pub matches: bool,
}

impl AuditEntry {
    fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("component".into(), json!(self.component));
        map.insert("derived".into(), json!(self.derived));
        map.insert("printed".into(), json!(self.printed));
        map.insert(
            "verdict".into(),
            json!(if self.matches { "match" } else { "mismatch" }),
        );
        Value::Object(map)
    }
}

/// Componentwise comparison report, optionally with attached suite runs.
#[derive(Clone, PartialEq, Debug)]
pub struct AuditReport {
    pub subject: String,
    pub entries: Vec<AuditEntry>,
    pub checks: Vec<CheckReport>,
}

impl AuditReport {
    pub fn identical(&self) -> bool {
        self.entries.iter().all(|e| e.matches)
    }

    pub fn mismatched_components(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|e| !e.matches)
            .map(|e| e.component.as_str())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert(
            "checks".into(),
            Value::Array(self.checks.iter().map(|c| c.to_json()).collect()),
        );
        map.insert(
            "entries".into(),
            Value::Array(self.entries.iter().map(|e| e.to_json()).collect()),
        );
        map.insert("subject".into(), json!(self.subject));
        map.insert(
            "verdict".into(),
            json!(if self.identical() {
                "identical"
            } else {
                "mismatch"
            }),
        );
        Value::Object(map)
    }

    pub fn canonical_bytes(&self) -> Vec<u8> {
        canonical_bytes(&self.to_json())
    }
}

/// Compact JSON with sorted object keys and a trailing newline.
pub fn canonical_bytes(value: &Value) -> Vec<u8> {
    let mut bytes = serde_json::to_vec(value).expect("report values are valid JSON");
    bytes.push(b'\n');
    bytes
}

/// Write canonical JSON to a file, returning the bytes written.
pub fn emit_to_path(value: &Value, path: &Path) -> io::Result<Vec<u8>> {
    let bytes = canonical_bytes(value);
    std::fs::write(path, &bytes)?;
    Ok(bytes)
}

/// Evaluate `eval` over every point (possibly in parallel), merging results
/// in enumeration order. The recorded counterexample list is capped at
/// `max_counterexamples`; `failures` carries the uncapped count.
pub(crate) fn run_grid<P, F>(
    suite: &str,
    window: BTreeMap<&'static str, i64>,
    params: BTreeMap<String, String>,
    points: &[P],
    max_counterexamples: usize,
    eval: F,
) -> CheckReport
where
    P: Sync,
    F: Fn(&P) -> Option<Counterexample> + Sync,
{
    let found: Vec<Option<Counterexample>> = points.par_iter().map(&eval).collect();
    let mut counterexamples = Vec::new();
    let mut failures = 0u64;
    // at least one counterexample is always recorded: fail status implies a
    // nonempty list
    let cap = max_counterexamples.max(1);
    for cx in found.into_iter().flatten() {
        failures += 1;
        if counterexamples.len() < cap {
            counterexamples.push(cx);
        }
    }
    CheckReport {
        suite: suite.to_string(),
        window,
        params,
        status: if failures == 0 {
            Status::Pass
        } else {
            Status::Fail
        },
        checked: points.len() as u64,
        failures,
        counterexamples,
    }
}
