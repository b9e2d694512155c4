use super::*;
use crate::blowup::{project, ClassVertex};
use crate::tree::search_tree;
use crate::Rational;

fn cv(class: usize, index: usize) -> ClassVertex {
    ClassVertex::new(class, index)
}

fn single_edge() -> Hypergraph {
    Hypergraph::new(2, 2, vec![vec![1, 2]]).unwrap()
}

fn triangle() -> Hypergraph {
    Hypergraph::complete(2, 3).unwrap()
}

fn triangle_missing_one() -> BlowUp {
    let hg = triangle();
    let mut tuples = BlowUp::complete(hg.clone(), vec![2; 3])
        .unwrap()
        .present_tuples();
    tuples.retain(|t| t != &vec![cv(1, 1), cv(2, 1)]);
    BlowUp::new(hg, vec![2; 3], tuples).unwrap()
}

fn stream(n: usize, values: &[usize]) -> IntegerStream {
    IntegerStream::explicit(n, values.to_vec()).unwrap()
}

fn alternating() -> Vec<RecordEntry> {
    let miss = RecordEntry::Missing(vec![cv(1, 1), cv(2, 1)]);
    vec![
        RecordEntry::Success,
        miss.clone(),
        RecordEntry::Success,
        miss,
        RecordEntry::Success,
    ]
}

#[test]
fn a_on_complete_blowup_halts_in_h_steps() {
    let hg = triangle();
    let g = BlowUp::complete(hg.clone(), vec![3; 3]).unwrap();
    let mut z = stream(3, &[3, 1, 2, 2, 2]);
    let out = run_algorithm_a(&hg, &g, &mut z, RunConfig::validated(10)).unwrap();
    assert!(out.halted());
    assert_eq!(out.records, vec![RecordEntry::Success; 3]);
    assert!(g.is_transversal(&out.final_picks).unwrap());
    assert_eq!(
        decode_a(&hg, &out.records, &out.final_picks, Some(3)).unwrap(),
        vec![3, 1, 2]
    );
}

#[test]
fn a_on_empty_single_edge_alternates() {
    let hg = single_edge();
    let g = BlowUp::empty(hg.clone(), vec![1, 1]).unwrap();
    let mut z = stream(1, &[1; 8]);
    let out = run_algorithm_a(&hg, &g, &mut z, RunConfig::validated(5)).unwrap();
    assert_eq!(out.status, Status::Suspended);
    assert_eq!(out.records, alternating());
    assert_eq!(z.consumed(), &[1; 5]);
    assert_eq!(
        decode_a(&hg, &out.records, &out.final_picks, Some(1)).unwrap(),
        vec![1; 5]
    );
    let path = record_to_dyck(&out.records, 2).unwrap();
    assert_eq!(path.to_string(), "UFUFU");
    assert_eq!(path.height(), 1);
}

#[test]
fn a_on_triangle_with_absent_tuple() {
    let hg = triangle();
    let g = triangle_missing_one();
    let mut z = stream(2, &[1, 1, 2, 1, 2, 2]);
    let out = run_algorithm_a(&hg, &g, &mut z, RunConfig::validated(20)).unwrap();
    assert_eq!(out.records[0], RecordEntry::Success);
    assert_eq!(
        out.records[1],
        RecordEntry::Missing(vec![cv(1, 1), cv(2, 1)])
    );
    let consumed = z.consumed().to_vec();
    assert_eq!(
        decode_a(&hg, &out.records, &out.final_picks, Some(2)).unwrap(),
        consumed
    );
}

#[test]
fn unequal_classes_and_dry_streams_are_errors() {
    let hg = single_edge();
    let g = BlowUp::complete(hg.clone(), vec![1, 2]).unwrap();
    let mut z = stream(2, &[1, 1]);
    assert!(matches!(
        run_algorithm_a(&hg, &g, &mut z, RunConfig::new(5)),
        Err(Error::Precondition(_))
    ));
    let g = BlowUp::empty(hg.clone(), vec![1, 1]).unwrap();
    let mut z = stream(1, &[1, 1]);
    assert!(matches!(
        run_algorithm_a(&hg, &g, &mut z, RunConfig::new(5)),
        Err(Error::StreamExhausted(2))
    ));
    let mut z = stream(1, &[1]);
    assert!(run_algorithm_a(&hg, &g, &mut z, RunConfig::new(0)).is_err());
}

#[test]
fn b_on_complete_blowup_peels_the_tree() {
    let hg = Hypergraph::new(2, 4, vec![vec![1, 2], vec![2, 3], vec![2, 4]]).unwrap();
    let tree = search_tree(&hg).unwrap();
    let g = BlowUp::complete(hg.clone(), vec![2; 4]).unwrap();
    let mut z = stream(2, &[1, 2, 1, 2]);
    let (out, trace) = run_traced(
        Algorithm::B,
        &hg,
        Some(&tree),
        &g,
        &mut z,
        RunConfig::validated(10),
    )
    .unwrap();
    assert!(out.halted());
    assert_eq!(out.steps(), 4);
    let mut peel = tree.clone();
    let mut expected = Vec::new();
    while !peel.is_empty() {
        let v = peel.min_leaf().unwrap();
        expected.push(v);
        peel.remove_leaf(v).unwrap();
    }
    assert_eq!(trace.iter().map(|s| s.class).collect::<Vec<_>>(), expected);
}

#[test]
fn b_on_empty_single_edge_alternates() {
    let hg = single_edge();
    let tree = Tree::from_parents(1, &[(2, 1)]).unwrap();
    let g = BlowUp::empty(hg.clone(), vec![1, 1]).unwrap();
    let mut z = stream(1, &[1; 5]);
    let out = run_algorithm_b(&hg, &tree, &g, &mut z, RunConfig::validated(5)).unwrap();
    assert_eq!(out.records, alternating());
    assert_eq!(
        decode_b(&hg, &tree, &out.records, &out.final_picks, Some(1)).unwrap(),
        vec![1; 5]
    );
}

#[test]
fn b_on_triangle_regrows_the_tree() {
    let hg = triangle();
    let tree = search_tree(&hg).unwrap();
    let g = triangle_missing_one();
    for seed in 0..50 {
        let mut z = IntegerStream::seeded(2, seed).unwrap();
        let (out, trace) = run_traced(
            Algorithm::B,
            &hg,
            Some(&tree),
            &g,
            &mut z,
            RunConfig::validated(40),
        )
        .unwrap();
        let consumed = z.consumed().to_vec();
        assert_eq!(
            decode_b(&hg, &tree, &out.records, &out.final_picks, Some(2)).unwrap(),
            consumed
        );
        for (step, r) in trace.iter().zip(&out.records) {
            if matches!(r, RecordEntry::Missing(_)) {
                // the parent edge is never violated: the parent holds no pick
                let cap = hg.degree(step.class).unwrap() - usize::from(step.parent.is_some());
                assert!(step.violated >= 1 && step.violated <= cap);
            }
        }
    }
}

#[test]
fn b_on_non_regular_graphs_has_at_most_delta_minus_one_choices() {
    let hg = Hypergraph::new(
        3,
        5,
        vec![vec![1, 2, 3], vec![1, 2, 4], vec![2, 3, 5], vec![1, 4, 5]],
    )
    .unwrap();
    assert!(!hg.is_regular());
    let tree = search_tree(&hg).unwrap();
    let full = BlowUp::complete(hg.clone(), vec![2; 5]).unwrap();
    let mut tuples = full.present_tuples();
    tuples.retain(|t| t.iter().filter(|v| v.index == 1).count() != 2);
    let g = BlowUp::new(hg.clone(), vec![2; 5], tuples).unwrap();
    let mut missing = 0;
    for seed in 0..40 {
        let mut z = IntegerStream::seeded(2, seed).unwrap();
        let (out, trace) = run_traced(
            Algorithm::B,
            &hg,
            Some(&tree),
            &g,
            &mut z,
            RunConfig::validated(50),
        )
        .unwrap();
        for (step, r) in trace.iter().zip(&out.records) {
            if matches!(r, RecordEntry::Missing(_)) {
                missing += 1;
                assert!(step.violated < hg.max_degree());
            }
        }
        let path = record_to_dyck(&out.records, 3).unwrap();
        if !out.halted() {
            assert!(path.height() < hg.h());
        }
    }
    assert!(missing > 0);
}

#[test]
fn b_rejects_non_spanning_trees() {
    let hg = triangle();
    let g = BlowUp::complete(hg.clone(), vec![1; 3]).unwrap();
    let mut z = stream(1, &[1; 3]);
    let tree = Tree::from_parents(1, &[(2, 1)]).unwrap();
    assert!(matches!(
        run_algorithm_b(&hg, &tree, &g, &mut z, RunConfig::new(3)),
        Err(Error::Tree(_))
    ));
}

#[test]
fn tampered_records_do_not_decode() {
    let hg = triangle();
    let g = BlowUp::complete(hg.clone(), vec![3; 3]).unwrap();
    let mut z = stream(3, &[3, 1, 2]);
    let out = run_algorithm_a(&hg, &g, &mut z, RunConfig::new(3)).unwrap();
    let mut records = out.records.clone();
    records[1] = RecordEntry::Missing(vec![cv(1, 3), cv(2, 2)]);
    assert!(matches!(
        decode_a(&hg, &records, &out.final_picks, Some(3)),
        Err(Error::Decode { .. })
    ));
    let tree = search_tree(&hg).unwrap();
    assert!(decode_b(&hg, &tree, &records, &out.final_picks, Some(3)).is_err());
    // a tuple over a non-edge
    let records = vec![RecordEntry::Success, RecordEntry::Missing(vec![cv(1, 1)])];
    assert!(decode_a(&hg, &records, &PartialTransversal::empty(3), None).is_err());
    // steps after halting
    let mut records = out.records.clone();
    records.push(RecordEntry::Success);
    assert!(decode_a(&hg, &records, &out.final_picks, None).is_err());
}

#[test]
fn h_free_blowups_never_halt() {
    let hg = triangle();
    let mut tuples = BlowUp::complete(hg.clone(), vec![2; 3])
        .unwrap()
        .present_tuples();
    // no triangle survives once every edge of class pair {1,2} is gone
    tuples.retain(|t| project(t) != vec![1, 2]);
    let g = BlowUp::new(hg.clone(), vec![2; 3], tuples).unwrap();
    assert!(g.find_transversal_exhaustive(1000).unwrap().is_none());
    for alg in [Algorithm::A, Algorithm::B] {
        for seed in 0..20 {
            let mut z = IntegerStream::seeded(2, seed).unwrap();
            let out = run_search(alg, &hg, &g, &mut z, RunConfig::validated(30)).unwrap();
            assert!(!out.halted());
            let falls = out
                .records
                .iter()
                .filter(|r| **r != RecordEntry::Success)
                .count();
            assert!(falls <= out.steps() / hg.k());
        }
    }
}

#[test]
fn dyck_projection_of_a_runs_on_k4_3() {
    let hg = Hypergraph::complete(3, 4).unwrap();
    let full = BlowUp::complete(hg.clone(), vec![3; 4]).unwrap();
    let mut tuples = full.present_tuples();
    tuples.retain(|t| t.iter().map(|v| v.index).sum::<usize>() % 2 == 0);
    let g = BlowUp::new(hg.clone(), vec![3; 4], tuples).unwrap();
    for seed in 0..30 {
        let mut z = IntegerStream::seeded(3, seed).unwrap();
        let out = run_algorithm_a(&hg, &g, &mut z, RunConfig::validated(60)).unwrap();
        let path = record_to_dyck(&out.records, 3).unwrap();
        assert!(path.max_descent() <= 1);
        let before_halt = if out.halted() {
            DyckPath::new(2, path.steps()[..path.len() - 1].to_vec()).unwrap()
        } else {
            path
        };
        assert!(before_halt.height() < hg.h());
    }
}

#[test]
fn all_success_record_projects_to_rises() {
    let path = record_to_dyck(&vec![RecordEntry::Success; 4], 3).unwrap();
    assert_eq!(path.to_string(), "UUUU");
    assert_eq!(path.height(), 4);
    assert!(record_to_dyck(&[], 1).is_err());
}

#[test]
fn record_json_format() {
    let records = vec![
        RecordEntry::Success,
        RecordEntry::Missing(vec![cv(1, 2), cv(3, 1)]),
    ];
    let json = serde_json::to_string(&records).unwrap();
    assert_eq!(json, "[1,[[1,2],[3,1]]]");
    let back: Vec<RecordEntry> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, records);
    assert!(serde_json::from_str::<Vec<RecordEntry>>("[2]").is_err());
}

#[test]
fn capacity_audit_examples() {
    let one = Rational::from_integer(1.into());
    assert_eq!(
        capacity_audit(10, 30, 3, 2, 2.0, 3.0, &one).unwrap(),
        f64::INFINITY
    );
    let alpha = 4.0;
    let delta = 3.0;
    let d = 1.0 - 1.0 / (alpha * delta) + 0.01;
    let density = Rational::from_float(d).unwrap();
    let gap = capacity_audit(1_000_000, 3000, 4, 3, delta, alpha, &density).unwrap();
    assert!(gap > 0.0, "{gap}");
    let zero = Rational::from_integer(0.into());
    assert!(capacity_audit(3, 30, 3, 2, 2.0, 3.0, &zero).unwrap() < 0.0);
    assert!(capacity_audit(1, 30, 3, 2, 2.0, 3.0, &zero).is_err());
}

#[test]
fn census_single_edge() {
    let hg = single_edge();
    let g = BlowUp::empty(hg.clone(), vec![2, 2]).unwrap();
    for alg in [Algorithm::A, Algorithm::B] {
        let r = injectivity_census(alg, &hg, &g, 4, CENSUS_GUARD).unwrap();
        assert_eq!(r.streams, 16);
        assert_eq!(r.suspended, 16);
        assert_eq!(r.distinct_encodings, 16);
        assert_eq!(r.decoded, 16);
        assert!(r.is_clean());
    }
}

#[test]
fn census_complete_and_triangle() {
    let hg = triangle();
    let g = BlowUp::complete(hg.clone(), vec![2; 3]).unwrap();
    let r = injectivity_census(Algorithm::A, &hg, &g, 4, CENSUS_GUARD).unwrap();
    assert_eq!(r.suspended, 0);
    assert_eq!(r.halted, 16);
    let g = triangle_missing_one();
    for alg in [Algorithm::A, Algorithm::B] {
        let r = injectivity_census(alg, &hg, &g, 6, CENSUS_GUARD).unwrap();
        assert_eq!(r.streams, 64);
        assert!(r.is_clean(), "{r:?}");
    }
    assert!(matches!(
        injectivity_census(Algorithm::A, &hg, &g, 17, CENSUS_GUARD),
        Err(Error::GuardExceeded { .. })
    ));
}
