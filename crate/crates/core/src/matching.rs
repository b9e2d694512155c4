//! Matching polynomials of graphs.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::poly::{IntPoly, RootBracket, RootFinder};

/// Graphs with more vertices than this are refused (vertex sets are bitmasks).
pub const MAX_VERTICES: usize = 64;

/// Number of matchings of each size `j = 0, 1, ...` in a graph.
pub fn matching_counts(g: &Hypergraph) -> Result<Vec<BigInt>> {
    if g.k() != 2 {
        return Err(Error::Precondition(format!(
            "matching polynomial needs a graph, got a {}-graph",
            g.k()
        )));
    }
    if g.h() > MAX_VERTICES {
        return Err(Error::Precondition(format!(
            "at most {MAX_VERTICES} vertices supported"
        )));
    }
    let adj: Vec<u64> = g
        .skeleton_adjacency()
        .iter()
        .skip(1)
        .map(|nbrs| nbrs.iter().fold(0u64, |m, &u| m | 1 << (u - 1)))
        .collect();
    let all = if g.h() == 64 {
        u64::MAX
    } else {
        (1u64 << g.h()) - 1
    };
    let mut memo = HashMap::new();
    Ok(counts(all, &adj, &mut memo))
}

// The lowest remaining vertex is either left unmatched or matched to a
// remaining neighbour.
fn counts(rest: u64, adj: &[u64], memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if rest == 0 {
        return vec![BigInt::from(1)];
    }
    if let Some(c) = memo.get(&rest) {
        return c.clone();
    }
    let v = rest.trailing_zeros() as usize;
    let without = rest & !(1 << v);
    let mut out = counts(without, adj, memo);
    let mut nbrs = adj[v] & without;
    while nbrs != 0 {
        let u = nbrs.trailing_zeros() as usize;
        nbrs &= nbrs - 1;
        let sub = counts(without & !(1 << u), adj, memo);
        if out.len() < sub.len() + 1 {
            out.resize(sub.len() + 1, BigInt::from(0));
        }
        for (j, c) in sub.iter().enumerate() {
            out[j + 1] += c;
        }
    }
    memo.insert(rest, out.clone());
    out
}

/// `sum_j (-1)^j m_j x^{h - 2j}` with `m_j` the number of j-matchings.
pub fn matching_polynomial(g: &Hypergraph) -> Result<IntPoly> {
    let m = matching_counts(g)?;
    let mut coeffs = vec![BigInt::from(0); g.h() + 1];
    for (j, c) in m.into_iter().enumerate() {
        coeffs[g.h() - 2 * j] = if j % 2 == 0 { c } else { -c };
    }
    Ok(IntPoly::new(coeffs))
}

/// Bracket of the largest root of the matching polynomial (all its roots are real).
pub fn largest_root(g: &Hypergraph, rel_tol: f64) -> Result<RootBracket> {
    let p = matching_polynomial(g)?;
    RootFinder::new(&p)
        .largest(&p, rel_tol)
        .ok_or_else(|| Error::NoRoot(format!("matching polynomial {p}")))
}
