//! Pass/fail reports shared by every verifier.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub info: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub digests: BTreeMap<String, String>,
    #[serde(default)]
    pub seed: u64,
}

/// Outcome of a single law: `Err` carries the witness.
pub type Outcome = Result<(), String>;

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, id: &str, anchor: &str, outcome: Outcome) {
        let (status, witness) = match outcome {
            Ok(()) => (Status::Pass, None),
            Err(w) => (Status::Fail, Some(w)),
        };
        self.push(Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status,
            witness,
        });
    }

    pub fn skip(&mut self, id: &str, anchor: &str, reason: &str) {
        self.push(Check {
            id: id.to_string(),
            anchor: anchor.to_string(),
            status: Status::Skipped,
            witness: None,
        });
        self.info
            .insert(format!("skipped.{id}"), serde_json::Value::from(reason));
    }

    fn push(&mut self, c: Check) {
        debug_assert!(
            self.checks.iter().all(|x| x.id != c.id),
            "duplicate check id {}",
            c.id
        );
        self.checks.push(c);
        self.refresh();
    }

    pub fn note(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.info.insert(key.to_string(), value.into());
    }

    /// Appends another report, prefixing its ids.
    pub fn merge(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.id = format!("{prefix}.{}", c.id);
            }
            self.push(c);
        }
        for (k, v) in other.info {
            let k = if prefix.is_empty() { k } else { format!("{prefix}.{k}") };
            self.info.insert(k, v);
        }
        self.digests.extend(other.digests);
    }

    fn refresh(&mut self) {
        let mut s = Summary {
            total: self.checks.len(),
            ..Summary::default()
        };
        for c in &self.checks {
            match c.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        self.summary = s;
    }

    /// Sorts checks by id for stable output.
    pub fn canonicalize(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn status_of(&self, id: &str) -> Option<Status> {
        self.get(id).map(|c| c.status)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            write!(f, "{tag:4} {:40} {}", c.id, c.anchor)?;
            if let Some(w) = &c.witness {
                write!(f, "\n       witness: {w}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "total {} passed {} failed {} skipped {}",
            self.summary.total, self.summary.passed, self.summary.failed, self.summary.skipped
        )
    }
}

/// Runs `check` on indices `0..n` and reports the first failing one.
pub fn first_failure<F>(n: usize, check: F) -> Outcome
where
    F: Fn(usize) -> Outcome + Sync + Send,
{
    use rayon::prelude::*;
    match (0..n).into_par_iter().map(|i| check(i)).find_first(|r| r.is_err()) {
        Some(r) => r,
        None => Ok(()),
    }
}

/// Exhaustive scans above this many tuples are replaced by a seeded sample.
pub const SAMPLE_LIMIT: usize = 100_000;

/// Indices to scan out of `0..n`: all of them, or `SAMPLE_LIMIT` drawn
/// with a ChaCha generator seeded by `seed`.
pub fn scan_indices(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::index::sample;
    use rand::SeedableRng;
    if n <= SAMPLE_LIMIT {
        return (0..n).collect();
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut v = sample(&mut rng, n, SAMPLE_LIMIT).into_vec();
    v.sort_unstable();
    v
}

/// `first_failure` over `scan_indices(n, seed)`.
pub fn first_failure_sampled<F>(n: usize, seed: u64, check: F) -> Outcome
where
    F: Fn(usize) -> Outcome + Sync + Send,
{
    let idx = scan_indices(n, seed);
    first_failure(idx.len(), |k| check(idx[k]))
}

/// Turns a boolean into an outcome with a lazily formatted witness.
pub fn ensure(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_tracks_checks() {
        let mut r = Report::new();
        r.record("b", "law b", Ok(()));
        r.record("a", "law a", Err("x=1".into()));
        r.skip("c", "law c", "too large");
        assert_eq!(
            r.summary,
            Summary {
                total: 3,
                passed: 1,
                failed: 1,
                skipped: 1
            }
        );
        r.canonicalize();
        assert_eq!(r.checks[0].id, "a");
        let json = serde_json::to_value(&r).unwrap();
        assert!(json["checks"][1].get("witness").is_none());
        assert_eq!(json["checks"][0]["status"], "fail");
        let back: Report = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn sampling_is_seeded() {
        assert_eq!(scan_indices(10, 3), (0..10).collect::<Vec<_>>());
        let a = scan_indices(SAMPLE_LIMIT * 3, 7);
        assert_eq!(a.len(), SAMPLE_LIMIT);
        assert_eq!(a, scan_indices(SAMPLE_LIMIT * 3, 7));
        assert_ne!(a, scan_indices(SAMPLE_LIMIT * 3, 8));
    }

    #[test]
    fn first_failure_is_deterministic() {
        let r = first_failure(1000, |i| ensure(i % 97 != 13, || format!("i={i}")));
        assert_eq!(r, Err("i=13".to_string()));
    }
}
