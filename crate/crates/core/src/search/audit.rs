use std::collections::HashSet;

use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::blowup::BlowUp;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::tree::search_tree;
use crate::Rational;

use super::{
    decode_a, decode_b, run, Algorithm, IntegerStream, MinLeaf, MinUnrepresented, RunConfig,
};

/// Default cap on `n^s` for [`injectivity_census`].
pub const CENSUS_GUARD: u64 = 100_000;

/// Base-n log gap between the `n^s` possible streams and the number of
/// (final picks, record) pairs an s-step suspended run can produce, with
/// the unknown constant factors dropped. Positive means the run must halt.
pub fn capacity_audit(
    n: usize,
    s: usize,
    h: usize,
    k: usize,
    branch_factor: f64,
    growth: f64,
    density: &Rational,
) -> Result<f64> {
    if n < 2 || k == 0 {
        return Err(Error::Precondition(
            "capacity audit needs n >= 2 and k >= 1".into(),
        ));
    }
    if *density < Rational::from_integer(0.into()) || *density > Rational::one() {
        return Err(Error::Precondition(format!(
            "density {density} outside [0, 1]"
        )));
    }
    if density.is_one() {
        return Ok(f64::INFINITY);
    }
    let deficiency = (Rational::one() - density).to_f64().unwrap_or(0.0);
    let ln_n = (n as f64).ln();
    let log_n = |x: f64| x.ln() / ln_n;
    let (s, h, k) = (s as f64, h as f64, k as f64);
    let cost = h * log_n(n as f64 + 1.0)
        + (s + 4.0 * h) / k * log_n(growth)
        + s / k * (log_n(branch_factor * deficiency) + k);
    Ok(s - cost)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub algorithm: String,
    pub n: usize,
    pub steps: usize,
    pub streams: u64,
    pub halted: u64,
    pub suspended: u64,
    /// Distinct (final picks, record) pairs among suspended runs.
    pub distinct_encodings: u64,
    pub collisions: u64,
    pub decoded: u64,
    pub decode_failures: u64,
}

impl CensusReport {
    pub fn is_clean(&self) -> bool {
        self.collisions == 0 && self.decode_failures == 0
    }
}

/// Runs the algorithm on every stream in `[n]^s` and checks that the
/// encodings of non-halting runs are pairwise distinct and that every
/// consumed prefix decodes back.
pub fn injectivity_census(
    algorithm: Algorithm,
    hg: &Hypergraph,
    g: &BlowUp,
    s: usize,
    guard: u64,
) -> Result<CensusReport> {
    let n = g
        .uniform_size()
        .ok_or_else(|| Error::Precondition("class sizes must all be equal".into()))?;
    if s == 0 {
        return Err(Error::Precondition(
            "census length must be at least 1".into(),
        ));
    }
    let total = (n as u128)
        .checked_pow(s as u32)
        .filter(|&t| t <= guard as u128);
    let total = total.ok_or_else(|| Error::GuardExceeded {
        needed: format!("{n}^{s}"),
        guard,
    })? as u64;
    let tree = match algorithm {
        Algorithm::A => None,
        Algorithm::B => Some(search_tree(hg)?),
    };
    let mut report = CensusReport {
        algorithm: algorithm.to_string(),
        n,
        steps: s,
        streams: total,
        halted: 0,
        suspended: 0,
        distinct_encodings: 0,
        collisions: 0,
        decoded: 0,
        decode_failures: 0,
    };
    let mut seen = HashSet::new();
    let mut values = vec![1usize; s];
    for _ in 0..total {
        let mut z = IntegerStream::explicit(n, values.clone())?;
        let config = RunConfig::new(s);
        let outcome = match &tree {
            None => run(g, &mut MinUnrepresented::new(), &mut z, config, None)?,
            Some(t) => run(g, &mut MinLeaf { tree: t.clone() }, &mut z, config, None)?,
        };
        let decoded = match &tree {
            None => decode_a(hg, &outcome.records, &outcome.final_picks, Some(n)),
            Some(t) => decode_b(hg, t, &outcome.records, &outcome.final_picks, Some(n)),
        };
        match decoded {
            Ok(d) if d == z.consumed() => report.decoded += 1,
            _ => report.decode_failures += 1,
        }
        if outcome.halted() {
            report.halted += 1;
        } else {
            report.suspended += 1;
            if !seen.insert((outcome.final_picks, outcome.records)) {
                report.collisions += 1;
            }
        }
        advance(&mut values, n);
    }
    report.distinct_encodings = seen.len() as u64;
    Ok(report)
}

/// Next stream in lexicographic order (last position varies fastest).
fn advance(values: &mut [usize], n: usize) {
    for v in values.iter_mut().rev() {
        if *v < n {
            *v += 1;
            return;
        }
        *v = 1;
    }
}
