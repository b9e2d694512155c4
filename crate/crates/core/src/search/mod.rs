//! Transversal searches that double as compressors of their input stream.
//!
//! Both searches repeatedly pick a class, draw the next integer `z` from the
//! stream, and add `w^class_z` to the current partial transversal. When the
//! addition breaks a base edge, the offending k-tuple is recorded and all of
//! its vertices are dropped. The record together with the final partial
//! transversal determines the consumed stream, which [`decode`] recovers.
//!
//! * Algorithm A always works on the smallest unrepresented class and
//!   retries the same class after a failure.
//! * Algorithm B works on the smallest leaf of a tree in the skeleton,
//!   peeling the leaf on success and hanging the dropped classes below it on
//!   failure.

mod audit;
mod decode;
mod stream;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::blowup::{BlowUp, PartialTransversal, Tuple};
use crate::dyck::{DyckPath, Step};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::tree::Tree;

pub use audit::{capacity_audit, injectivity_census, CensusReport, CENSUS_GUARD};
pub use decode::{decode, decode_a, decode_b};
pub use stream::IntegerStream;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    A,
    B,
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Algorithm::A),
            "B" | "b" => Ok(Algorithm::B),
            other => Err(Error::Precondition(format!("unknown algorithm {other:?}"))),
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Algorithm::A => "A",
            Algorithm::B => "B",
        })
    }
}

/// One entry of a run record: `1` for a successful addition, or the absent
/// k-tuple that made the addition fail.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RecordEntry {
    Success,
    Missing(Tuple),
}

impl Serialize for RecordEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RecordEntry::Success => serializer.serialize_u8(1),
            RecordEntry::Missing(t) => t.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for RecordEntry {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Flag(u64),
            Tuple(Tuple),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Flag(1) => Ok(RecordEntry::Success),
            Raw::Flag(other) => Err(de::Error::custom(format!(
                "record flag must be 1, got {other}"
            ))),
            Raw::Tuple(t) => Ok(RecordEntry::Missing(t)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Halted,
    Suspended,
}

/// Result of a bounded run. A halted run's `final_picks` is a transversal;
/// otherwise it is the partial transversal held after `max_steps` steps.
/// One stream value is consumed per step.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SearchOutcome {
    pub status: Status,
    pub final_picks: PartialTransversal,
    pub records: Vec<RecordEntry>,
}

impl SearchOutcome {
    pub fn steps(&self) -> usize {
        self.records.len()
    }

    pub fn halted(&self) -> bool {
        self.status == Status::Halted
    }
}

/// Per-step diagnostics collected when a run is traced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTrace {
    pub class: usize,
    /// Violated base edges through `class` after the addition.
    pub violated: usize,
    /// Tree parent of `class` when it was chosen (Algorithm B only).
    pub parent: Option<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub max_steps: usize,
    /// Re-check every invariant after every step.
    pub validate: bool,
}

impl RunConfig {
    pub fn new(max_steps: usize) -> Self {
        RunConfig {
            max_steps,
            validate: false,
        }
    }

    pub fn validated(max_steps: usize) -> Self {
        RunConfig {
            max_steps,
            validate: true,
        }
    }
}

/// Decides which class is worked on next. The choice depends only on the
/// record so far, which is what lets the decoder replay it.
pub(crate) trait ClassOrder {
    fn next_class(&self, represented: &[bool]) -> Result<usize>;
    fn parent_of(&self, _class: usize) -> Option<usize> {
        None
    }
    fn on_success(&mut self, class: usize) -> Result<()>;
    fn on_failure(&mut self, class: usize, edge: &[usize]) -> Result<()>;
    /// Classes that must be exactly the unrepresented ones, if tracked.
    fn pending(&self) -> Option<Vec<usize>> {
        None
    }
}

/// Smallest unrepresented class; after a failure, the same class again.
pub(crate) struct MinUnrepresented {
    retry: Option<usize>,
}

impl MinUnrepresented {
    pub(crate) fn new() -> Self {
        MinUnrepresented { retry: None }
    }
}

impl ClassOrder for MinUnrepresented {
    fn next_class(&self, represented: &[bool]) -> Result<usize> {
        if let Some(c) = self.retry {
            return Ok(c);
        }
        represented
            .iter()
            .position(|&r| !r)
            .map(|i| i + 1)
            .ok_or_else(|| Error::Precondition("every class is represented".into()))
    }

    fn on_success(&mut self, _class: usize) -> Result<()> {
        self.retry = None;
        Ok(())
    }

    fn on_failure(&mut self, class: usize, _edge: &[usize]) -> Result<()> {
        self.retry = Some(class);
        Ok(())
    }
}

/// Smallest leaf of the current tree.
pub(crate) struct MinLeaf {
    pub(crate) tree: Tree,
}

impl ClassOrder for MinLeaf {
    fn next_class(&self, _represented: &[bool]) -> Result<usize> {
        self.tree.min_leaf()
    }

    fn parent_of(&self, class: usize) -> Option<usize> {
        self.tree.parent(class)
    }

    fn on_success(&mut self, class: usize) -> Result<()> {
        self.tree.remove_leaf(class)
    }

    fn on_failure(&mut self, class: usize, edge: &[usize]) -> Result<()> {
        self.tree.attach(class, edge)
    }

    fn pending(&self) -> Option<Vec<usize>> {
        Some(self.tree.vertices().collect())
    }
}

fn check_inputs(hg: &Hypergraph, g: &BlowUp, z: &IntegerStream) -> Result<usize> {
    if g.base() != hg {
        return Err(Error::Precondition(
            "blow-up is not over the given hypergraph".into(),
        ));
    }
    let n = g
        .uniform_size()
        .ok_or_else(|| Error::Precondition("class sizes must all be equal".into()))?;
    if z.n() != n {
        return Err(Error::Precondition(format!(
            "stream draws from 1..={}, classes have size {n}",
            z.n()
        )));
    }
    Ok(n)
}

fn run<O: ClassOrder>(
    g: &BlowUp,
    order: &mut O,
    z: &mut IntegerStream,
    config: RunConfig,
    mut trace: Option<&mut Vec<StepTrace>>,
) -> Result<SearchOutcome> {
    if config.max_steps == 0 {
        return Err(Error::Precondition("max_steps must be at least 1".into()));
    }
    let hg = g.base();
    let mut p = PartialTransversal::empty(hg.h());
    let mut represented = vec![false; hg.h()];
    let mut records = Vec::new();
    while !p.is_full() && records.len() < config.max_steps {
        let class = order.next_class(&represented)?;
        let parent = order.parent_of(class);
        let index = z.next_value()?;
        p.set(class, index);
        let violated = g.violated_edges(&p, Some(class));
        if let Some(t) = trace.as_deref_mut() {
            t.push(StepTrace {
                class,
                violated: violated.len(),
                parent,
            });
        }
        match violated.first() {
            None => {
                represented[class - 1] = true;
                records.push(RecordEntry::Success);
                order.on_success(class)?;
            }
            Some(&e) => {
                let edge = &hg.edges()[e];
                let tuple = p.restrict(edge).expect("violated edge is represented");
                for &c in edge {
                    p.remove(c);
                    represented[c - 1] = false;
                }
                records.push(RecordEntry::Missing(tuple));
                order.on_failure(class, edge)?;
            }
        }
        if config.validate {
            validate_step(g, &p, order, records.len())?;
        }
    }
    let status = if p.is_full() {
        Status::Halted
    } else {
        Status::Suspended
    };
    Ok(SearchOutcome {
        status,
        final_picks: p,
        records,
    })
}

fn validate_step<O: ClassOrder>(
    g: &BlowUp,
    p: &PartialTransversal,
    order: &O,
    step: usize,
) -> Result<()> {
    if !g.is_partial_transversal(p)? {
        return Err(Error::Invariant {
            step,
            reason: "picks are not a partial transversal".into(),
        });
    }
    if let Some(pending) = order.pending() {
        let unrepresented: Vec<usize> = (1..=p.h()).filter(|&c| !p.contains_class(c)).collect();
        if pending != unrepresented {
            return Err(Error::Invariant {
                step,
                reason: format!(
                    "tree {pending:?} is not the complement of the picks {:?}",
                    p.classes()
                ),
            });
        }
    }
    Ok(())
}

/// Algorithm A on an n-blow-up `g` of `hg`.
pub fn run_algorithm_a(
    hg: &Hypergraph,
    g: &BlowUp,
    z: &mut IntegerStream,
    config: RunConfig,
) -> Result<SearchOutcome> {
    check_inputs(hg, g, z)?;
    run(g, &mut MinUnrepresented::new(), z, config, None)
}

/// Algorithm B on an n-blow-up `g` of `hg`, guided by the spanning tree `tree`
/// of the skeleton of `hg`.
pub fn run_algorithm_b(
    hg: &Hypergraph,
    tree: &Tree,
    g: &BlowUp,
    z: &mut IntegerStream,
    config: RunConfig,
) -> Result<SearchOutcome> {
    check_inputs(hg, g, z)?;
    check_spanning(hg, tree)?;
    run(g, &mut MinLeaf { tree: tree.clone() }, z, config, None)
}

/// Like the runners above, also returning per-step diagnostics.
pub fn run_traced(
    algorithm: Algorithm,
    hg: &Hypergraph,
    tree: Option<&Tree>,
    g: &BlowUp,
    z: &mut IntegerStream,
    config: RunConfig,
) -> Result<(SearchOutcome, Vec<StepTrace>)> {
    check_inputs(hg, g, z)?;
    let mut trace = Vec::new();
    let outcome = match algorithm {
        Algorithm::A => run(g, &mut MinUnrepresented::new(), z, config, Some(&mut trace))?,
        Algorithm::B => {
            let tree =
                tree.ok_or_else(|| Error::Precondition("algorithm B needs a tree".into()))?;
            check_spanning(hg, tree)?;
            run(
                g,
                &mut MinLeaf { tree: tree.clone() },
                z,
                config,
                Some(&mut trace),
            )?
        }
    };
    Ok((outcome, trace))
}

/// Runs either algorithm, using [`crate::tree::search_tree`] for B.
pub fn run_search(
    algorithm: Algorithm,
    hg: &Hypergraph,
    g: &BlowUp,
    z: &mut IntegerStream,
    config: RunConfig,
) -> Result<SearchOutcome> {
    match algorithm {
        Algorithm::A => run_algorithm_a(hg, g, z, config),
        Algorithm::B => run_algorithm_b(hg, &crate::tree::search_tree(hg)?, g, z, config),
    }
}

pub(crate) fn check_spanning(hg: &Hypergraph, tree: &Tree) -> Result<()> {
    let spans = tree.len() == hg.h() && tree.vertices().eq(hg.vertices());
    if !spans {
        return Err(Error::Tree("tree does not span the hypergraph".into()));
    }
    let skeleton = hg.skeleton();
    for (child, parent) in tree.edges() {
        let pair = [child.min(parent), child.max(parent)];
        if skeleton.edge_index(&pair).is_none() {
            return Err(Error::Tree(format!(
                "tree edge {child}-{parent} is not in the skeleton"
            )));
        }
    }
    Ok(())
}

/// The size profile of a run: a rise per success and a (k-1)-fall per
/// missing tuple.
pub fn record_to_dyck(records: &[RecordEntry], k: usize) -> Result<DyckPath> {
    if k < 2 {
        return Err(Error::Precondition("uniformity must be at least 2".into()));
    }
    let steps = records
        .iter()
        .map(|r| match r {
            RecordEntry::Success => Step::Rise,
            RecordEntry::Missing(_) => Step::Fall,
        })
        .collect();
    DyckPath::new(k - 1, steps)
}

#[cfg(test)]
mod tests;
