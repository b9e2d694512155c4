//! Seeded random blow-ups at a prescribed edge density and batch trials of
//! the searches on them.

use std::io::Write;

use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::blowup::BlowUp;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::io::{format_rational, rational_string};
use crate::search::{decode, record_to_dyck, run_search, Algorithm, IntegerStream, RunConfig};
use crate::Rational;

/// A blow-up with class size `n` in which every base edge carries exactly
/// `ceil(target * n^k)` tuples, sampled uniformly without replacement from
/// `ChaCha8Rng::seed_from_u64(seed)` (word stream 0), edge by edge in order.
pub fn random_blowup(hg: &Hypergraph, n: usize, target: &Rational, seed: u64) -> Result<BlowUp> {
    check_density(target)?;
    let empty = BlowUp::empty(hg.clone(), vec![n; hg.h()])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let present = (0..hg.edges().len())
        .map(|e| {
            let cells = empty.cells(e);
            let quota = (target * Rational::from_integer(cells.into()))
                .ceil()
                .to_integer();
            let quota: usize = quota.try_into().expect("quota is at most the cell count");
            let mut bits = FixedBitSet::with_capacity(cells);
            for code in sample(&mut rng, cells, quota).into_iter() {
                bits.insert(code);
            }
            bits
        })
        .collect();
    BlowUp::from_bitsets(hg.clone(), vec![n; hg.h()], present)
}

fn check_density(d: &Rational) -> Result<()> {
    if *d < Rational::zero() || *d > Rational::one() {
        return Err(Error::Precondition(format!(
            "density {} outside [0, 1]",
            format_rational(d)
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub hypergraph: Hypergraph,
    pub n: usize,
    #[serde(with = "rational_string")]
    pub target_density: Rational,
    pub trials: usize,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub max_steps: usize,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        check_density(&self.target_density)?;
        if self.trials == 0 || self.n == 0 || self.max_steps == 0 {
            return Err(Error::Precondition(
                "trials, n and max_steps must be positive".into(),
            ));
        }
        if self.algorithm == Algorithm::B {
            self.hypergraph.require_connected()?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialResult {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub target_density: String,
    pub min_density: String,
    pub algorithm: String,
    pub halted: bool,
    pub steps: usize,
    pub max_height: usize,
    pub max_descent: usize,
}

/// Runs `cfg.trials` independent trials; trial `t` uses seed `cfg.seed + t`
/// for both the blow-up and the search stream. Each outcome is verified:
/// halted runs must end on a transversal and every record must decode back
/// to the consumed stream.
pub fn run_trials(cfg: &ExperimentConfig) -> Result<Vec<TrialResult>> {
    cfg.validate()?;
    (0..cfg.trials)
        .into_par_iter()
        .map(|trial| run_trial(cfg, trial))
        .collect()
}

fn run_trial(cfg: &ExperimentConfig, trial: usize) -> Result<TrialResult> {
    let hg = &cfg.hypergraph;
    let seed = cfg.seed.wrapping_add(trial as u64);
    let g = random_blowup(hg, cfg.n, &cfg.target_density, seed)?;
    let mut z = IntegerStream::seeded(cfg.n, seed)?;
    let out = run_search(cfg.algorithm, hg, &g, &mut z, RunConfig::new(cfg.max_steps))?;
    if out.halted() && !g.is_transversal(&out.final_picks)? {
        return Err(Error::Invariant {
            step: out.steps(),
            reason: format!("trial {trial} halted without a transversal"),
        });
    }
    let decoded = decode(
        cfg.algorithm,
        hg,
        &out.records,
        &out.final_picks,
        Some(cfg.n),
    )?;
    if decoded != z.consumed() {
        return Err(Error::Invariant {
            step: out.steps(),
            reason: format!("trial {trial} does not decode to its stream"),
        });
    }
    let path = record_to_dyck(&out.records, hg.k())?;
    Ok(TrialResult {
        trial,
        seed,
        n: cfg.n,
        target_density: format_rational(&cfg.target_density),
        min_density: format_rational(&g.min_density()?),
        algorithm: cfg.algorithm.to_string(),
        halted: out.halted(),
        steps: out.steps(),
        max_height: path.height(),
        max_descent: path.max_descent(),
    })
}

/// Writes trial results as CSV with a header row.
pub fn write_csv<W: Write>(results: &[TrialResult], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in results {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Fraction of trials that halted.
pub fn halted_fraction(results: &[TrialResult]) -> f64 {
    if results.is_empty() {
        return 0.0;
    }
    results.iter().filter(|r| r.halted).count() as f64 / results.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn config(
        hg: Hypergraph,
        n: usize,
        target: Rational,
        trials: usize,
        algorithm: Algorithm,
    ) -> ExperimentConfig {
        ExperimentConfig {
            hypergraph: hg,
            n,
            target_density: target,
            trials,
            algorithm,
            seed: 7,
            max_steps: 2000,
        }
    }

    #[test]
    fn extreme_targets() {
        let k3 = Hypergraph::complete(2, 3).unwrap();
        let full = random_blowup(&k3, 3, &q(1, 1), 1).unwrap();
        assert_eq!(full, BlowUp::complete(k3.clone(), vec![3; 3]).unwrap());
        let none = random_blowup(&k3, 3, &q(0, 1), 1).unwrap();
        assert_eq!(none, BlowUp::empty(k3.clone(), vec![3; 3]).unwrap());
        assert!(random_blowup(&k3, 3, &q(3, 2), 1).is_err());
    }

    #[test]
    fn quotas_are_exact() {
        let k3 = Hypergraph::complete(2, 3).unwrap();
        let g = random_blowup(&k3, 2, &q(3, 4), 5).unwrap();
        for e in 0..3 {
            assert_eq!(g.present_count(e), 3);
        }
        let k4_3 = Hypergraph::complete(3, 4).unwrap();
        let target = q(7, 10);
        let g = random_blowup(&k4_3, 5, &target, 11).unwrap();
        for e in 0..4 {
            assert_eq!(g.present_count(e), 88);
        }
        assert!(g.min_density().unwrap() >= target);
    }

    #[test]
    fn seeds_reproduce() {
        let k3 = Hypergraph::complete(2, 3).unwrap();
        let a = random_blowup(&k3, 6, &q(1, 2), 99).unwrap();
        assert_eq!(a, random_blowup(&k3, 6, &q(1, 2), 99).unwrap());
        assert_ne!(a, random_blowup(&k3, 6, &q(1, 2), 100).unwrap());
        let cfg = config(k3, 6, q(1, 2), 8, Algorithm::B);
        assert_eq!(run_trials(&cfg).unwrap(), run_trials(&cfg).unwrap());
    }

    #[test]
    fn dense_triangles_halt() {
        let k3 = Hypergraph::complete(2, 3).unwrap();
        let cfg = config(k3, 50, q(95, 100), 100, Algorithm::A);
        let results = run_trials(&cfg).unwrap();
        assert_eq!(results.len(), 100);
        assert!(results.iter().enumerate().all(|(i, r)| r.trial == i));
        assert_eq!(halted_fraction(&results), 1.0);
    }

    #[test]
    fn empty_single_edge_never_halts() {
        let edge = Hypergraph::new(2, 2, vec![vec![1, 2]]).unwrap();
        let mut cfg = config(edge, 4, q(0, 1), 10, Algorithm::A);
        cfg.max_steps = 50;
        assert_eq!(halted_fraction(&run_trials(&cfg).unwrap()), 0.0);
    }

    #[test]
    fn complete_blowups_halt_in_h_steps() {
        let hg = Hypergraph::new(3, 5, vec![vec![1, 2, 3], vec![3, 4, 5]]).unwrap();
        for alg in [Algorithm::A, Algorithm::B] {
            let cfg = config(hg.clone(), 3, q(1, 1), 5, alg);
            for r in run_trials(&cfg).unwrap() {
                assert!(r.halted);
                assert_eq!(r.steps, 5);
            }
        }
    }

    #[test]
    fn csv_layout() {
        let edge = Hypergraph::new(2, 2, vec![vec![1, 2]]).unwrap();
        let cfg = config(edge, 2, q(1, 2), 2, Algorithm::B);
        let mut buf = Vec::new();
        write_csv(&run_trials(&cfg).unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "trial,seed,n,target_density,min_density,algorithm,halted,steps,max_height,max_descent"
        );
        assert!(lines.next().unwrap().starts_with("0,7,2,1/2,1/2,B,"));
    }
}
