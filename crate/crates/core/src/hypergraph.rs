//! k-uniform hypergraphs on the ordered vertex set `1..=h`.

use std::collections::{BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Deserialize, Serialize)]
struct RawHypergraph {
    k: usize,
    h: usize,
    edges: Vec<Vec<usize>>,
}

/// A k-graph on vertices `1..=h`.
///
/// Edges are stored sorted ascending and the edge list itself is kept in
/// lexicographic order, so two hypergraphs with the same edge set compare
/// equal and iterate their edges identically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct Hypergraph {
    k: usize,
    h: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        Hypergraph::new(raw.k, raw.h, raw.edges)
    }
}

impl From<Hypergraph> for RawHypergraph {
    fn from(hg: Hypergraph) -> Self {
        RawHypergraph {
            k: hg.k,
            h: hg.h,
            edges: hg.edges,
        }
    }
}

impl Hypergraph {
    pub fn new(k: usize, h: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidHypergraph(format!("uniformity {k} < 2")));
        }
        if h < k {
            return Err(Error::InvalidHypergraph(format!(
                "{h} vertices cannot carry a {k}-edge"
            )));
        }
        let mut canonical = BTreeSet::new();
        for mut edge in edges {
            edge.sort_unstable();
            if edge.len() != k {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {edge:?} does not have {k} vertices"
                )));
            }
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {edge:?} repeats a vertex"
                )));
            }
            if let Some(&v) = edge.iter().find(|&&v| v == 0 || v > h) {
                return Err(Error::VertexOutOfRange { vertex: v, h });
            }
            if !canonical.insert(edge.clone()) {
                return Err(Error::InvalidHypergraph(format!("duplicate edge {edge:?}")));
            }
        }
        Ok(Hypergraph {
            k,
            h,
            edges: canonical.into_iter().collect(),
        })
    }

    /// The complete k-graph on `h` vertices.
    pub fn complete(k: usize, h: usize) -> Result<Self> {
        let mut edges = Vec::new();
        let mut current = Vec::with_capacity(k);
        combinations(1, h, k, &mut current, &mut edges);
        Hypergraph::new(k, h, edges)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.h
    }

    pub fn edge_index(&self, edge: &[usize]) -> Option<usize> {
        self.edges.binary_search_by(|e| e.as_slice().cmp(edge)).ok()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.h {
            Err(Error::VertexOutOfRange {
                vertex: v,
                h: self.h,
            })
        } else {
            Ok(())
        }
    }

    /// Indices of the edges containing `v`, in edge order.
    pub fn incident_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.contains(&v))
            .map(|(i, _)| i)
    }

    /// The (k-1)-sets B with `{v} ∪ B` an edge.
    pub fn neighbourhood(&self, v: usize) -> Result<Vec<Vec<usize>>> {
        self.check_vertex(v)?;
        Ok(self
            .incident_edges(v)
            .map(|i| self.edges[i].iter().copied().filter(|&w| w != v).collect())
            .collect())
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.incident_edges(v).count())
    }

    pub fn max_degree(&self) -> usize {
        self.vertices()
            .map(|v| self.incident_edges(v).count())
            .max()
            .unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.vertices()
            .map(|v| self.incident_edges(v).count())
            .min()
            .unwrap_or(0)
    }

    /// True when every vertex has the same degree.
    pub fn is_regular(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    /// Largest number of pairwise disjoint sets in the neighbourhood of `v`.
    ///
    /// Exact maximum set packing by branch and bound. Neighbourhoods are small
    /// for the patterns this crate targets, so the exponential worst case is
    /// never reached in practice.
    pub fn disjoint_degree(&self, v: usize) -> Result<usize> {
        let sets: Vec<FixedBitSet> = self
            .neighbourhood(v)?
            .into_iter()
            .map(|b| {
                let mut bits = FixedBitSet::with_capacity(self.h + 1);
                for w in b {
                    bits.insert(w);
                }
                bits
            })
            .collect();
        let mut used = FixedBitSet::with_capacity(self.h + 1);
        let mut best = 0;
        pack(&sets, 0, &mut used, 0, self.h - 1, self.k - 1, &mut best);
        Ok(best)
    }

    pub fn max_disjoint_degree(&self) -> usize {
        self.vertices()
            .map(|v| self.disjoint_degree(v).expect("vertex in range"))
            .max()
            .unwrap_or(0)
    }

    /// The 2-graph joining two vertices whenever some edge contains both.
    pub fn skeleton(&self) -> Hypergraph {
        let mut pairs = BTreeSet::new();
        for e in &self.edges {
            for (i, &x) in e.iter().enumerate() {
                for &y in &e[i + 1..] {
                    pairs.insert(vec![x, y]);
                }
            }
        }
        Hypergraph {
            k: 2,
            h: self.h,
            edges: pairs.into_iter().collect(),
        }
    }

    /// Sorted adjacency lists of the skeleton, indexed by vertex (slot 0 unused).
    pub fn skeleton_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![BTreeSet::new(); self.h + 1];
        for e in &self.edges {
            for &x in e {
                for &y in e {
                    if x != y {
                        adj[x].insert(y);
                    }
                }
            }
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.skeleton_adjacency();
        let mut seen = vec![false; self.h + 1];
        let mut queue = VecDeque::from([1]);
        seen[1] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.h
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// True when this is the complete k-graph on its vertex set.
    pub fn is_complete(&self) -> bool {
        binomial(self.h as u64, self.k as u64) == self.edges.len() as u128
    }
}

fn combinations(
    from: usize,
    to: usize,
    k: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == k {
        out.push(current.clone());
        return;
    }
    for v in from..=to {
        if to - v + 1 < k - current.len() {
            break;
        }
        current.push(v);
        combinations(v + 1, to, k, current, out);
        current.pop();
    }
}

fn pack(
    sets: &[FixedBitSet],
    idx: usize,
    used: &mut FixedBitSet,
    count: usize,
    free: usize,
    set_size: usize,
    best: &mut usize,
) {
    *best = (*best).max(count);
    if idx == sets.len() {
        return;
    }
    let by_sets = sets.len() - idx;
    let by_room = free / set_size;
    if count + by_sets.min(by_room) <= *best {
        return;
    }
    if sets[idx].is_disjoint(used) {
        used.union_with(&sets[idx]);
        pack(
            sets,
            idx + 1,
            used,
            count + 1,
            free - set_size,
            set_size,
            best,
        );
        used.difference_with(&sets[idx]);
    }
    pack(sets, idx + 1, used, count, free, set_size, best);
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Hypergraph {
        Hypergraph::complete(2, 3).unwrap()
    }

    #[test]
    fn degrees() {
        assert_eq!(k3().degree(1).unwrap(), 2);
        let k43 = Hypergraph::complete(3, 4).unwrap();
        assert_eq!(k43.degree(1).unwrap(), 3);
        let single = Hypergraph::new(3, 3, vec![vec![1, 2, 3]]).unwrap();
        assert!(matches!(
            single.degree(4),
            Err(Error::VertexOutOfRange { vertex: 4, h: 3 })
        ));
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(k3().max_degree(), 2);
        assert_eq!(Hypergraph::complete(3, 5).unwrap().max_degree(), 6);
        let path = Hypergraph::new(2, 3, vec![vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(path.max_degree(), 2);
    }

    #[test]
    fn disjoint_degree_examples() {
        let k43 = Hypergraph::complete(3, 4).unwrap();
        assert_eq!(k43.disjoint_degree(1).unwrap(), 1);
        assert_eq!(k43.max_disjoint_degree(), 1);
        let bowtie = Hypergraph::new(3, 5, vec![vec![1, 2, 3], vec![1, 4, 5]]).unwrap();
        assert_eq!(bowtie.disjoint_degree(1).unwrap(), 2);
        assert_eq!(k3().max_disjoint_degree(), 2);
        assert_eq!(Hypergraph::complete(3, 5).unwrap().max_disjoint_degree(), 2);
        assert!(k43.disjoint_degree(0).is_err());
    }

    #[test]
    fn skeleton_examples() {
        let single = Hypergraph::new(3, 3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(single.skeleton(), k3());
        let k43 = Hypergraph::complete(3, 4).unwrap();
        assert_eq!(k43.skeleton(), Hypergraph::complete(2, 4).unwrap());
        let two = Hypergraph::new(3, 6, vec![vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        let sk = two.skeleton();
        assert_eq!(
            sk.edges(),
            &[
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
                vec![4, 5],
                vec![4, 6],
                vec![5, 6]
            ]
        );
        assert!(!two.is_connected());
        assert!(single.is_connected());
    }

    #[test]
    fn rejects_malformed_edges() {
        assert!(Hypergraph::new(2, 3, vec![vec![1, 1]]).is_err());
        assert!(Hypergraph::new(2, 3, vec![vec![1, 2], vec![2, 1]]).is_err());
        assert!(Hypergraph::new(2, 3, vec![vec![1, 2, 3]]).is_err());
        assert!(Hypergraph::new(2, 3, vec![vec![1, 4]]).is_err());
        assert!(Hypergraph::new(1, 3, vec![]).is_err());
    }

    #[test]
    fn json_shape() {
        let hg: Hypergraph =
            serde_json::from_str(r#"{"k":2,"h":3,"edges":[[2,3],[1,2],[3,1]]}"#).unwrap();
        assert_eq!(hg, k3());
        assert_eq!(
            serde_json::to_string(&hg).unwrap(),
            r#"{"k":2,"h":3,"edges":[[1,2],[1,3],[2,3]]}"#
        );
    }
}
