use crate::blowup::{project, PartialTransversal};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::tree::{search_tree, Tree};

use super::{check_spanning, Algorithm, ClassOrder, MinLeaf, MinUnrepresented, RecordEntry};

fn corrupt(step: usize, reason: impl Into<String>) -> Error {
    Error::Decode {
        step,
        reason: reason.into(),
    }
}

/// Recovers the stream consumed by Algorithm A from its record and final
/// picks. With `n` given, every index is also checked against `1..=n`.
pub fn decode_a(
    hg: &Hypergraph,
    records: &[RecordEntry],
    final_picks: &PartialTransversal,
    n: Option<usize>,
) -> Result<Vec<usize>> {
    decode_with(hg, &mut MinUnrepresented::new(), records, final_picks, n)
}

/// Recovers the stream consumed by Algorithm B run with `tree`.
pub fn decode_b(
    hg: &Hypergraph,
    tree: &Tree,
    records: &[RecordEntry],
    final_picks: &PartialTransversal,
    n: Option<usize>,
) -> Result<Vec<usize>> {
    check_spanning(hg, tree)?;
    let mut order = MinLeaf { tree: tree.clone() };
    decode_with(hg, &mut order, records, final_picks, n)
}

/// Decodes either algorithm, using [`search_tree`] for B.
pub fn decode(
    algorithm: Algorithm,
    hg: &Hypergraph,
    records: &[RecordEntry],
    final_picks: &PartialTransversal,
    n: Option<usize>,
) -> Result<Vec<usize>> {
    match algorithm {
        Algorithm::A => decode_a(hg, records, final_picks, n),
        Algorithm::B => decode_b(hg, &search_tree(hg)?, records, final_picks, n),
    }
}

fn decode_with<O: ClassOrder>(
    hg: &Hypergraph,
    order: &mut O,
    records: &[RecordEntry],
    final_picks: &PartialTransversal,
    n: Option<usize>,
) -> Result<Vec<usize>> {
    let h = hg.h();
    if final_picks.h() != h {
        return Err(corrupt(
            0,
            format!("final picks cover {} classes, not {h}", final_picks.h()),
        ));
    }
    let in_range = |index: usize| index >= 1 && n.is_none_or(|n| index <= n);

    // Forward: the chosen classes and the classes held after each step.
    let mut represented = vec![false; h];
    let mut chosen = Vec::with_capacity(records.len());
    for (t, record) in records.iter().enumerate() {
        let step = t + 1;
        if represented.iter().all(|&r| r) {
            return Err(corrupt(
                step,
                "record continues after a transversal was found",
            ));
        }
        let class = order
            .next_class(&represented)
            .map_err(|e| corrupt(step, e.to_string()))?;
        match record {
            RecordEntry::Success => {
                represented[class - 1] = true;
                order
                    .on_success(class)
                    .map_err(|e| corrupt(step, e.to_string()))?;
            }
            RecordEntry::Missing(tuple) => {
                let edge = project(tuple);
                if hg.edge_index(&edge).is_none() || !edge.windows(2).all(|w| w[0] < w[1]) {
                    return Err(corrupt(
                        step,
                        format!("tuple classes {edge:?} are not a base edge"),
                    ));
                }
                if !edge.contains(&class) {
                    return Err(corrupt(
                        step,
                        format!("tuple classes {edge:?} miss the active class {class}"),
                    ));
                }
                if let Some(c) = edge.iter().find(|&&c| c != class && !represented[c - 1]) {
                    return Err(corrupt(
                        step,
                        format!("tuple uses class {c}, which holds no pick"),
                    ));
                }
                if let Some(v) = tuple.iter().find(|v| !in_range(v.index)) {
                    return Err(corrupt(step, format!("index {} out of range", v.index)));
                }
                for &c in &edge {
                    represented[c - 1] = false;
                }
                order
                    .on_failure(class, &edge)
                    .map_err(|e| corrupt(step, e.to_string()))?;
            }
        }
        chosen.push(class);
    }
    let s = records.len();
    for c in 1..=h {
        if represented[c - 1] != final_picks.contains_class(c) {
            return Err(corrupt(
                s,
                format!(
                    "final picks {:?} disagree with the record",
                    final_picks.classes()
                ),
            ));
        }
    }
    if let Some(v) = final_picks.iter().find(|v| !in_range(v.index)) {
        return Err(corrupt(s, format!("final index {} out of range", v.index)));
    }

    // Backward: undo each step, reading off the drawn index.
    let mut p = final_picks.clone();
    let mut z = vec![0; s];
    for t in (0..s).rev() {
        let step = t + 1;
        let class = chosen[t];
        match &records[t] {
            RecordEntry::Success => {
                z[t] = p
                    .remove(class)
                    .ok_or_else(|| corrupt(step, format!("class {class} holds no pick")))?;
            }
            RecordEntry::Missing(tuple) => {
                if p.contains_class(class) {
                    return Err(corrupt(
                        step,
                        format!("class {class} unexpectedly holds a pick"),
                    ));
                }
                for v in tuple {
                    if v.class == class {
                        z[t] = v.index;
                    } else if p.contains_class(v.class) {
                        return Err(corrupt(step, format!("class {} picked twice", v.class)));
                    } else {
                        p.set(v.class, v.index);
                    }
                }
            }
        }
    }
    if !p.is_empty() {
        return Err(corrupt(0, "picks remain before the first step"));
    }
    Ok(z)
}
