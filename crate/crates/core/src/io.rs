//! JSON file formats: hypergraphs, blow-ups, streams, run outcomes and
//! experiment configs. Output is canonical (sorted keys, no whitespace).

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::blowup::{BlowUp, PartialTransversal};
use crate::error::{Error, Result};
use crate::experiment::ExperimentConfig;
use crate::hypergraph::Hypergraph;
use crate::search::{RecordEntry, SearchOutcome, Status};
use crate::Rational;

/// Serializes with object keys sorted and no insignificant whitespace.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(&serde_json::to_value(value)?)?)
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.95` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Precondition(format!("cannot parse {s:?} as a rational"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let negative = int.starts_with('-');
    let digits = format!("{}{frac}", int.trim_start_matches(['-', '+']));
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let numer: BigInt = digits.parse().map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let q = Rational::new(numer, denom);
    Ok(if negative && q.is_positive() { -q } else { q })
}

/// Serde adapter storing a rational as `"p/q"`; also reads decimals and numbers.
pub mod rational_string {
    use serde::de::{self, Deserializer};
    use serde::{Deserialize, Serializer};
    use serde_json::Value;

    use super::{format_rational, parse_rational};
    use crate::Rational;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = match Value::deserialize(d)? {
            Value::String(s) => s,
            Value::Number(n) => n.to_string(),
            other => {
                return Err(de::Error::custom(format!(
                    "expected a rational, got {other}"
                )))
            }
        };
        parse_rational(&text).map_err(de::Error::custom)
    }
}

fn read_value(path: &Path) -> Result<Value> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

/// Replaces a string-valued `hypergraph` field by the hypergraph stored at
/// that path, resolved relative to `base`'s directory.
fn inline_hypergraph(mut v: Value, base: &Path) -> Result<Value> {
    if let Some(Value::String(rel)) = v.get("hypergraph") {
        let dir = base.parent().unwrap_or_else(|| Path::new("."));
        let inner = read_value(&dir.join(rel))?;
        v["hypergraph"] = inner;
    }
    Ok(v)
}

fn from_value<T: DeserializeOwned>(v: Value) -> Result<T> {
    Ok(serde_json::from_value(v)?)
}

pub fn read_hypergraph(path: &Path) -> Result<Hypergraph> {
    from_value(read_value(path)?)
}

/// Reads a blow-up whose `hypergraph` is either inline or a relative path.
pub fn read_blowup(path: &Path) -> Result<BlowUp> {
    from_value(inline_hypergraph(read_value(path)?, path)?)
}

pub fn read_experiment_config(path: &Path) -> Result<ExperimentConfig> {
    from_value(inline_hypergraph(read_value(path)?, path)?)
}

/// A stream file: a JSON array of positive integers.
pub fn read_stream(path: &Path) -> Result<Vec<usize>> {
    from_value(read_value(path)?)
}

/// The on-disk form of a [`SearchOutcome`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeFile {
    pub status: Status,
    pub final_picks: BTreeMap<usize, usize>,
    pub records: Vec<RecordEntry>,
    pub steps: usize,
}

impl From<&SearchOutcome> for OutcomeFile {
    fn from(o: &SearchOutcome) -> Self {
        OutcomeFile {
            status: o.status,
            final_picks: o.final_picks.to_map(),
            records: o.records.clone(),
            steps: o.steps(),
        }
    }
}

impl OutcomeFile {
    /// Rebuilds the outcome for a pattern on `h` vertices.
    pub fn into_outcome(self, h: usize) -> Result<SearchOutcome> {
        if self.steps != self.records.len() {
            return Err(Error::Decode {
                step: self.steps,
                reason: format!("{} records for {} steps", self.records.len(), self.steps),
            });
        }
        let final_picks = PartialTransversal::from_picks(h, &self.final_picks)?;
        if (self.status == Status::Halted) != final_picks.is_full() {
            return Err(Error::Decode {
                step: self.steps,
                reason: "status disagrees with the final picks".into(),
            });
        }
        Ok(SearchOutcome {
            status: self.status,
            final_picks,
            records: self.records,
        })
    }
}

pub fn read_outcome(path: &Path) -> Result<OutcomeFile> {
    from_value(read_value(path)?)
}
