//! Rooted trees inside the skeleton of a hypergraph.
//!
//! A tree with two or more vertices never counts its root as a leaf; a
//! single-vertex tree's only vertex is a leaf. With this convention the
//! smallest leaf is always defined on a nonempty tree and the root is the
//! last vertex to be peeled off.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Tree {
    root: Option<usize>,
    parent: BTreeMap<usize, Option<usize>>,
    children: BTreeMap<usize, BTreeSet<usize>>,
}

impl Tree {
    pub fn empty() -> Self {
        Tree::default()
    }

    pub fn singleton(v: usize) -> Self {
        Tree {
            root: Some(v),
            parent: BTreeMap::from([(v, None)]),
            children: BTreeMap::from([(v, BTreeSet::new())]),
        }
    }

    /// Builds a tree from `(child, parent)` pairs hanging off `root`.
    pub fn from_parents(root: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut t = Tree::singleton(root);
        let mut pending: Vec<(usize, usize)> = edges.to_vec();
        while !pending.is_empty() {
            let before = pending.len();
            let mut rest = Vec::new();
            for (child, parent) in pending {
                if t.contains(child) {
                    return Err(Error::Tree(format!("vertex {child} appears twice")));
                }
                if t.contains(parent) {
                    t.add_child(parent, child);
                } else {
                    rest.push((child, parent));
                }
            }
            if rest.len() == before {
                return Err(Error::Tree(
                    "parent map is not connected to the root".into(),
                ));
            }
            pending = rest;
        }
        Ok(t)
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.parent.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.parent.keys().copied()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent.get(&v).copied().flatten()
    }

    /// `(child, parent)` pairs in ascending child order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.parent
            .iter()
            .filter_map(|(&c, &p)| p.map(|p| (c, p)))
            .collect()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        match self.children.get(&v) {
            None => false,
            Some(ch) => ch.is_empty() && (self.len() == 1 || self.root != Some(v)),
        }
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices().filter(|&v| self.is_leaf(v))
    }

    /// The smallest leaf.
    pub fn min_leaf(&self) -> Result<usize> {
        self.leaves()
            .next()
            .ok_or_else(|| Error::Tree("empty tree has no leaves".into()))
    }

    fn add_child(&mut self, parent: usize, child: usize) {
        self.parent.insert(child, Some(parent));
        self.children.insert(child, BTreeSet::new());
        self.children
            .get_mut(&parent)
            .expect("parent present")
            .insert(child);
    }

    pub fn remove_leaf(&mut self, v: usize) -> Result<()> {
        if !self.is_leaf(v) {
            return Err(Error::Tree(format!("{v} is not a leaf")));
        }
        let parent = self.parent.remove(&v).flatten();
        self.children.remove(&v);
        match parent {
            Some(p) => {
                self.children
                    .get_mut(&p)
                    .expect("parent present")
                    .remove(&v);
            }
            None => self.root = None,
        }
        Ok(())
    }

    /// Hangs every vertex of `edge` other than `v` below the leaf `v`.
    ///
    /// `edge` must meet the tree exactly in `v`.
    pub fn attach(&mut self, v: usize, edge: &[usize]) -> Result<()> {
        if !self.is_leaf(v) {
            return Err(Error::Tree(format!("{v} is not a leaf")));
        }
        if !edge.contains(&v) {
            return Err(Error::Tree(format!("edge {edge:?} does not contain {v}")));
        }
        if let Some(&w) = edge.iter().find(|&&w| w != v && self.contains(w)) {
            return Err(Error::Tree(format!(
                "edge {edge:?} meets the tree again at {w}"
            )));
        }
        for &w in edge.iter().filter(|&&w| w != v) {
            self.add_child(v, w);
        }
        Ok(())
    }

    /// `self ⊕_v edge` as a new tree.
    pub fn attached(&self, v: usize, edge: &[usize]) -> Result<Tree> {
        let mut t = self.clone();
        t.attach(v, edge)?;
        Ok(t)
    }
}

/// Breadth-first spanning tree of a 2-graph rooted at vertex 1.
pub fn spanning_tree(graph: &Hypergraph) -> Result<Tree> {
    spanning_tree_from(graph, 1)
}

/// Breadth-first spanning tree of the skeleton of `graph`, rooted at `root`,
/// visiting neighbours in ascending order.
pub fn spanning_tree_from(graph: &Hypergraph, root: usize) -> Result<Tree> {
    graph.check_vertex(root)?;
    let adj = graph.skeleton_adjacency();
    let mut tree = Tree::singleton(root);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !tree.contains(w) {
                tree.add_child(v, w);
                queue.push_back(w);
            }
        }
    }
    if tree.len() != graph.h() {
        return Err(Error::Disconnected);
    }
    Ok(tree)
}

/// The tree driving the tree-guided search on `hg`.
///
/// Rooted at the smallest vertex of minimum degree: the root is processed
/// only once it is the last vertex left, and is the one vertex without a
/// parent, so a low-degree root keeps every failing step's choice of edge
/// below the maximum degree when `hg` is not regular.
pub fn search_tree(hg: &Hypergraph) -> Result<Tree> {
    hg.require_connected()?;
    let min = hg.min_degree();
    let root = hg
        .vertices()
        .find(|&v| hg.degree(v).expect("in range") == min)
        .expect("nonempty vertex set");
    spanning_tree_from(hg, root)
}
