//! Blow-ups of a hypergraph, their edge densities and (partial) transversals.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::Rational;

/// Vertex `w^class_index` of a blow-up; both coordinates are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct ClassVertex {
    pub class: usize,
    pub index: usize,
}

impl ClassVertex {
    pub fn new(class: usize, index: usize) -> Self {
        ClassVertex { class, index }
    }
}

impl From<(usize, usize)> for ClassVertex {
    fn from((class, index): (usize, usize)) -> Self {
        ClassVertex { class, index }
    }
}

impl From<ClassVertex> for (usize, usize) {
    fn from(v: ClassVertex) -> Self {
        (v.class, v.index)
    }
}

/// A k-tuple of blow-up vertices, sorted by class.
pub type Tuple = Vec<ClassVertex>;

/// The classes a tuple lives in.
pub fn project(tuple: &[ClassVertex]) -> Vec<usize> {
    tuple.iter().map(|v| v.class).collect()
}

/// At most one chosen vertex per class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialTransversal {
    picks: Vec<Option<usize>>,
}

impl PartialTransversal {
    pub fn empty(h: usize) -> Self {
        PartialTransversal {
            picks: vec![None; h],
        }
    }

    pub fn from_picks(h: usize, picks: &BTreeMap<usize, usize>) -> Result<Self> {
        let mut p = PartialTransversal::empty(h);
        for (&class, &index) in picks {
            if class == 0 || class > h {
                return Err(Error::VertexOutOfRange { vertex: class, h });
            }
            if index == 0 {
                return Err(Error::InvalidBlowUp(format!("class {class}: index 0")));
            }
            p.set(class, index);
        }
        Ok(p)
    }

    /// Number of classes.
    pub fn h(&self) -> usize {
        self.picks.len()
    }

    pub fn get(&self, class: usize) -> Option<usize> {
        self.picks[class - 1]
    }

    pub fn set(&mut self, class: usize, index: usize) {
        self.picks[class - 1] = Some(index);
    }

    pub fn remove(&mut self, class: usize) -> Option<usize> {
        self.picks[class - 1].take()
    }

    pub fn contains_class(&self, class: usize) -> bool {
        self.picks[class - 1].is_some()
    }

    /// Number of represented classes.
    pub fn len(&self) -> usize {
        self.picks.iter().filter(|p| p.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.picks.iter().all(Option::is_some)
    }

    /// The represented classes, ascending.
    pub fn classes(&self) -> Vec<usize> {
        self.iter().map(|v| v.class).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = ClassVertex> + '_ {
        self.picks
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|index| ClassVertex::new(i + 1, index)))
    }

    pub fn to_map(&self) -> BTreeMap<usize, usize> {
        self.iter().map(|v| (v.class, v.index)).collect()
    }

    /// The picks restricted to the classes of `edge`, if all are represented.
    pub fn restrict(&self, edge: &[usize]) -> Option<Tuple> {
        edge.iter()
            .map(|&c| self.get(c).map(|i| ClassVertex::new(c, i)))
            .collect()
    }
}

#[derive(Deserialize, Serialize)]
struct RawBlowUp {
    hypergraph: Hypergraph,
    class_sizes: Vec<usize>,
    present_edges: Vec<Tuple>,
}

/// A subgraph of the complete blow-up of `base` with class sizes `class_sizes`.
///
/// Present edges are kept as one bitset per base edge, indexed by the
/// mixed-radix code of the tuple's (0-based) indices in class order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawBlowUp", into = "RawBlowUp")]
pub struct BlowUp {
    base: Hypergraph,
    class_sizes: Vec<usize>,
    present: Vec<FixedBitSet>,
}

impl TryFrom<RawBlowUp> for BlowUp {
    type Error = Error;

    fn try_from(raw: RawBlowUp) -> Result<Self> {
        BlowUp::new(raw.hypergraph, raw.class_sizes, raw.present_edges)
    }
}

impl From<BlowUp> for RawBlowUp {
    fn from(g: BlowUp) -> Self {
        let present_edges = g.present_tuples();
        RawBlowUp {
            hypergraph: g.base,
            class_sizes: g.class_sizes,
            present_edges,
        }
    }
}

impl BlowUp {
    pub fn new(base: Hypergraph, class_sizes: Vec<usize>, tuples: Vec<Tuple>) -> Result<Self> {
        let mut g = BlowUp::empty(base, class_sizes)?;
        for mut tuple in tuples {
            tuple.sort();
            let classes = project(&tuple);
            if classes.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidBlowUp(format!(
                    "tuple {tuple:?} repeats a class"
                )));
            }
            let e = g
                .base
                .edge_index(&classes)
                .ok_or(Error::NotAnEdge(classes))?;
            let code = g.encode(&tuple)?;
            g.present[e].insert(code);
        }
        Ok(g)
    }

    /// The blow-up with no edges present.
    pub fn empty(base: Hypergraph, class_sizes: Vec<usize>) -> Result<Self> {
        if class_sizes.len() != base.h() {
            return Err(Error::InvalidBlowUp(format!(
                "{} class sizes for {} vertices",
                class_sizes.len(),
                base.h()
            )));
        }
        if class_sizes.contains(&0) {
            return Err(Error::InvalidBlowUp("empty vertex class".into()));
        }
        let present = base
            .edges()
            .iter()
            .map(|e| {
                let cells = e
                    .iter()
                    .try_fold(1usize, |acc, &c| acc.checked_mul(class_sizes[c - 1]));
                cells
                    .map(FixedBitSet::with_capacity)
                    .ok_or_else(|| Error::InvalidBlowUp("blow-up too large".into()))
            })
            .collect::<Result<_>>()?;
        Ok(BlowUp {
            base,
            class_sizes,
            present,
        })
    }

    /// Every k-tuple over the classes of a base edge is present.
    pub fn complete(base: Hypergraph, class_sizes: Vec<usize>) -> Result<Self> {
        let mut g = BlowUp::empty(base, class_sizes)?;
        for bits in &mut g.present {
            bits.insert_range(..);
        }
        Ok(g)
    }

    /// Builds a blow-up from per-edge bitsets over tuple codes.
    pub fn from_bitsets(
        base: Hypergraph,
        class_sizes: Vec<usize>,
        present: Vec<FixedBitSet>,
    ) -> Result<Self> {
        let g = BlowUp::empty(base, class_sizes)?;
        if present.len() != g.present.len()
            || present
                .iter()
                .zip(&g.present)
                .any(|(a, b)| a.len() != b.len())
        {
            return Err(Error::InvalidBlowUp("bitset shape mismatch".into()));
        }
        Ok(BlowUp { present, ..g })
    }

    pub fn base(&self) -> &Hypergraph {
        &self.base
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// The common class size when all classes have the same size.
    pub fn uniform_size(&self) -> Option<usize> {
        let n = self.class_sizes[0];
        self.class_sizes.iter().all(|&a| a == n).then_some(n)
    }

    /// Number of k-tuples of the complete blow-up over base edge `e`.
    pub fn cells(&self, e: usize) -> usize {
        self.present[e].len()
    }

    fn encode(&self, tuple: &[ClassVertex]) -> Result<usize> {
        let mut code = 0;
        for v in tuple {
            let size = self.class_sizes[v.class - 1];
            if v.index == 0 || v.index > size {
                return Err(Error::InvalidBlowUp(format!(
                    "index {} out of range for class {} of size {size}",
                    v.index, v.class
                )));
            }
            code = code * size + (v.index - 1);
        }
        Ok(code)
    }

    /// Inverse of the tuple code for base edge `e`.
    pub fn decode_tuple(&self, e: usize, mut code: usize) -> Tuple {
        let edge = &self.base.edges()[e];
        let mut tuple = vec![ClassVertex::new(0, 0); edge.len()];
        for (slot, &c) in edge.iter().enumerate().rev() {
            let size = self.class_sizes[c - 1];
            tuple[slot] = ClassVertex::new(c, code % size + 1);
            code /= size;
        }
        tuple
    }

    /// Whether a class-sorted tuple is an edge of this blow-up.
    pub fn contains(&self, tuple: &[ClassVertex]) -> Result<bool> {
        let classes = project(tuple);
        let e = self
            .base
            .edge_index(&classes)
            .ok_or(Error::NotAnEdge(classes))?;
        Ok(self.present[e].contains(self.encode(tuple)?))
    }

    pub fn present_count(&self, e: usize) -> usize {
        self.present[e].count_ones(..)
    }

    pub fn present_bits(&self, e: usize) -> &FixedBitSet {
        &self.present[e]
    }

    /// All present tuples, grouped by base edge in edge order.
    pub fn present_tuples(&self) -> Vec<Tuple> {
        (0..self.present.len())
            .flat_map(|e| {
                self.present[e]
                    .ones()
                    .map(move |code| self.decode_tuple(e, code))
            })
            .collect()
    }

    pub fn edge_density(&self, edge: &[usize]) -> Result<Rational> {
        let e = self
            .base
            .edge_index(edge)
            .ok_or_else(|| Error::NotAnEdge(edge.to_vec()))?;
        Ok(self.density_at(e))
    }

    pub(crate) fn density_at(&self, e: usize) -> Rational {
        Rational::new(
            BigInt::from(self.present_count(e)),
            BigInt::from(self.cells(e)),
        )
    }

    /// Minimum edge density over the base edges.
    pub fn min_density(&self) -> Result<Rational> {
        (0..self.present.len())
            .map(|e| self.density_at(e))
            .min()
            .ok_or_else(|| Error::Precondition("base hypergraph has no edges".into()))
    }

    fn check_picks(&self, p: &PartialTransversal) -> Result<()> {
        if p.h() != self.base.h() {
            return Err(Error::InvalidBlowUp(format!(
                "transversal over {} classes, blow-up has {}",
                p.h(),
                self.base.h()
            )));
        }
        for v in p.iter() {
            if v.index == 0 || v.index > self.class_sizes[v.class - 1] {
                return Err(Error::InvalidBlowUp(format!(
                    "index {} out of range for class {}",
                    v.index, v.class
                )));
            }
        }
        Ok(())
    }

    /// Base edges (by index, ascending) inside the represented classes whose
    /// induced tuple is absent. Only edges through `through` are considered
    /// when it is given.
    pub fn violated_edges(&self, p: &PartialTransversal, through: Option<usize>) -> Vec<usize> {
        let mut out = Vec::new();
        for (e, edge) in self.base.edges().iter().enumerate() {
            if let Some(v) = through {
                if !edge.contains(&v) {
                    continue;
                }
            }
            if let Some(tuple) = p.restrict(edge) {
                let code = self.encode(&tuple).expect("picks checked");
                if !self.present[e].contains(code) {
                    out.push(e);
                }
            }
        }
        out
    }

    pub fn is_partial_transversal(&self, p: &PartialTransversal) -> Result<bool> {
        self.check_picks(p)?;
        Ok(self.violated_edges(p, None).is_empty())
    }

    pub fn is_transversal(&self, p: &PartialTransversal) -> Result<bool> {
        self.check_picks(p)?;
        Ok(p.is_full() && self.violated_edges(p, None).is_empty())
    }

    /// Lexicographically first transversal, by backtracking over classes in order.
    ///
    /// Refuses to search when the number of full picks exceeds `guard`.
    pub fn find_transversal_exhaustive(&self, guard: u64) -> Result<Option<PartialTransversal>> {
        let total = self
            .class_sizes
            .iter()
            .fold(BigInt::one(), |acc, &a| acc * BigInt::from(a));
        if total > BigInt::from(guard) {
            return Err(Error::GuardExceeded {
                needed: total.to_string(),
                guard,
            });
        }
        // edges whose largest class is c are checked once c is picked
        let mut closing: Vec<Vec<usize>> = vec![Vec::new(); self.base.h() + 1];
        for (e, edge) in self.base.edges().iter().enumerate() {
            closing[*edge.last().expect("nonempty edge")].push(e);
        }
        let mut p = PartialTransversal::empty(self.base.h());
        Ok(self.extend(&mut p, 1, &closing).then_some(p))
    }

    fn extend(&self, p: &mut PartialTransversal, class: usize, closing: &[Vec<usize>]) -> bool {
        if class > self.base.h() {
            return true;
        }
        for index in 1..=self.class_sizes[class - 1] {
            p.set(class, index);
            let ok = closing[class].iter().all(|&e| {
                let tuple = p
                    .restrict(&self.base.edges()[e])
                    .expect("earlier classes picked");
                self.present[e].contains(self.encode(&tuple).expect("in range"))
            });
            if ok && self.extend(p, class + 1, closing) {
                return true;
            }
        }
        p.remove(class);
        false
    }
}

/// Complete blow-up of `base` with the given class sizes.
pub fn complete_blowup(base: &Hypergraph, sizes: &[usize]) -> Result<BlowUp> {
    BlowUp::complete(base.clone(), sizes.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn k3() -> Hypergraph {
        Hypergraph::complete(2, 3).unwrap()
    }

    fn cv(c: usize, i: usize) -> ClassVertex {
        ClassVertex::new(c, i)
    }

    #[test]
    fn complete_blowup_sizes() {
        let g = complete_blowup(&k3(), &[2, 2, 2]).unwrap();
        assert_eq!(g.present_tuples().len(), 12);
        let single = Hypergraph::new(2, 2, vec![vec![1, 2]]).unwrap();
        let g = complete_blowup(&single, &[1, 1]).unwrap();
        assert_eq!(g.present_tuples(), vec![vec![cv(1, 1), cv(2, 1)]]);
        let g = complete_blowup(&k3(), &[1, 1, 1]).unwrap();
        assert_eq!(g.present_tuples().len(), 3);
        assert!(complete_blowup(&k3(), &[1, 0, 1]).is_err());
        assert!(complete_blowup(&k3(), &[1, 1]).is_err());
    }

    #[test]
    fn densities() {
        let full = complete_blowup(&k3(), &[2, 2, 2]).unwrap();
        assert_eq!(full.edge_density(&[1, 3]).unwrap(), Rational::one());
        assert_eq!(full.min_density().unwrap(), Rational::one());

        let mut tuples = full.present_tuples();
        tuples.retain(|t| t != &vec![cv(1, 2), cv(2, 2)]);
        let g = BlowUp::new(k3(), vec![2, 2, 2], tuples).unwrap();
        let three_quarters = Rational::new(3.into(), 4.into());
        assert_eq!(g.edge_density(&[1, 2]).unwrap(), three_quarters);
        assert_eq!(g.edge_density(&[2, 3]).unwrap(), Rational::one());
        assert_eq!(g.min_density().unwrap(), three_quarters);

        let empty = BlowUp::empty(k3(), vec![2, 2, 2]).unwrap();
        assert!(empty.min_density().unwrap().is_zero());
        assert!(matches!(
            empty.edge_density(&[1, 4]),
            Err(Error::NotAnEdge(_))
        ));
    }

    #[test]
    fn transversal_predicates() {
        let single = Hypergraph::new(2, 2, vec![vec![1, 2]]).unwrap();
        let empty = BlowUp::empty(single.clone(), vec![2, 2]).unwrap();
        let mut p = PartialTransversal::empty(2);
        assert!(empty.is_partial_transversal(&p).unwrap());
        p.set(1, 1);
        assert!(empty.is_partial_transversal(&p).unwrap());
        p.set(2, 2);
        assert!(!empty.is_partial_transversal(&p).unwrap());
        assert!(!empty.is_transversal(&p).unwrap());

        let full = complete_blowup(&single, &[2, 2]).unwrap();
        assert!(full.is_transversal(&p).unwrap());
        p.remove(1);
        assert!(full.is_partial_transversal(&p).unwrap());
        assert!(!full.is_transversal(&p).unwrap());
        p.set(1, 3);
        assert!(full.is_partial_transversal(&p).is_err());
    }

    #[test]
    fn exhaustive_search() {
        let full = complete_blowup(&k3(), &[3, 3, 3]).unwrap();
        let p = full
            .find_transversal_exhaustive(1_000_000)
            .unwrap()
            .unwrap();
        assert_eq!(p.to_map(), BTreeMap::from([(1, 1), (2, 1), (3, 1)]));

        let single = Hypergraph::new(2, 2, vec![vec![1, 2]]).unwrap();
        let empty = BlowUp::empty(single, vec![3, 3]).unwrap();
        assert_eq!(empty.find_transversal_exhaustive(100).unwrap(), None);

        // one parallel copy w^1_2 w^2_1 w^3_2
        let copy = vec![
            vec![cv(1, 2), cv(2, 1)],
            vec![cv(1, 2), cv(3, 2)],
            vec![cv(2, 1), cv(3, 2)],
        ];
        let g = BlowUp::new(k3(), vec![2, 2, 2], copy).unwrap();
        let p = g.find_transversal_exhaustive(100).unwrap().unwrap();
        assert_eq!(p.to_map(), BTreeMap::from([(1, 2), (2, 1), (3, 2)]));

        assert!(matches!(
            full.find_transversal_exhaustive(10),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn tuple_codes_round_trip() {
        let g = complete_blowup(&Hypergraph::complete(3, 4).unwrap(), &[2, 3, 4, 5]).unwrap();
        for e in 0..4 {
            for code in 0..g.cells(e) {
                let t = g.decode_tuple(e, code);
                assert_eq!(g.encode(&t).unwrap(), code);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let single = Hypergraph::new(2, 2, vec![vec![1, 2]]).unwrap();
        let g = BlowUp::new(single, vec![2, 1], vec![vec![cv(2, 1), cv(1, 2)]]).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(
            s,
            r#"{"hypergraph":{"k":2,"h":2,"edges":[[1,2]]},"class_sizes":[2,1],"present_edges":[[[1,2],[2,1]]]}"#
        );
        let back: BlowUp = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<BlowUp>(
            r#"{"hypergraph":{"k":2,"h":2,"edges":[[1,2]]},"class_sizes":[2,1],"present_edges":[[[1,3],[2,1]]]}"#
        )
        .is_err());
    }
}
