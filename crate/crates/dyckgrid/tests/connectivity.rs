use dyckgrid::connectivity::*;
use dyckgrid::generators::elementary_wall;
use dyckgrid::graph::{vset, Graph, VertexSet};
use dyckgrid::minor::SearchBudget;
use dyckgrid::width::treewidth_exact;
use dyckgrid::Error;
use num_rational::Ratio;

const LIMIT: usize = 10_000_000;

fn two_thirds() -> Alpha {
    Ratio::new(2, 3)
}

fn all(g: &Graph) -> VertexSet {
    g.vertices().collect()
}

#[test]
fn separation_enumeration() {
    let p3 = Graph::path(3);
    let seps = enumerate_separations(&p3, 2, LIMIT).unwrap();
    assert!(seps.contains(&Separation::new(vset([0, 1]), vset([1, 2]))));
    assert!(seps.iter().all(|s| s.is_valid(&p3) && s.order() < 2));

    let k4 = Graph::complete(4);
    let v = all(&k4);
    for s in enumerate_separations(&k4, 2, LIMIT).unwrap() {
        assert!(s.a == v || s.b == v, "{s:?}");
    }
    assert!(enumerate_separations(&p3, 0, LIMIT).unwrap().is_empty());
}

#[test]
fn separation_invariant_is_checked() {
    let p3 = Graph::path(3);
    assert!(Separation::new(vset([0]), vset([1, 2]))
        .validate(&p3)
        .is_err());
    assert!(Separation::new(vset([0, 1]), vset([2]))
        .validate(&p3)
        .is_err());
    assert!(Separation::new(vset([0, 1]), vset([1, 2]))
        .validate(&p3)
        .is_ok());
    let s = Separation::new(vset([0, 1]), vset([1, 2]));
    assert_eq!(s.flipped().a, vset([1, 2]));
    assert_eq!(s.separator(), vset([1]));
}

#[test]
fn well_linkedness() {
    let a = two_thirds();
    let one = is_well_linked(&Graph::path(3), &vset([1]), 0, a, 1000).unwrap();
    assert!(one.well_linked());

    let g4 = Graph::grid(4, 4);
    assert!(is_well_linked(&g4, &all(&g4), 1, a, LIMIT)
        .unwrap()
        .well_linked());
    assert!(is_well_linked(&g4, &all(&g4), 2, a, LIMIT)
        .unwrap()
        .well_linked());
    // a three-vertex diagonal cuts off a corner of 3 and leaves 10 <= 2/3 * 16
    let cert = is_well_linked(&g4, &all(&g4), 3, a, LIMIT).unwrap();
    let x = cert.separator.expect("balanced separator");
    assert!(x.len() <= 3);
    assert!(is_balanced_separator(&g4, &all(&g4), &x, a));

    let long = Graph::path(9);
    let cert = is_well_linked(&long, &vset([0, 8]), 1, a, LIMIT).unwrap();
    let x = cert.separator.unwrap();
    assert_eq!(x.len(), 1);
    assert!(is_balanced_separator(&long, &vset([0, 8]), &x, a));

    assert!(matches!(
        is_well_linked(&g4, &all(&g4), 1, Ratio::new(1, 2), LIMIT),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn strong_linkedness() {
    let g6 = Graph::grid(6, 6);
    assert!(is_strongly_linked(&g6, &(0..6).collect()).unwrap());
    let split = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
    assert!(!is_strongly_linked(&split, &vset([0, 2])).unwrap());
    assert!(is_strongly_linked(&split, &vset([3])).unwrap());
    assert!(is_strongly_linked(&split, &VertexSet::new()).unwrap());

    let star = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
    let v = strong_link_violation(&star, &vset([1, 2, 3, 4]), None)
        .unwrap()
        .expect("the centre cuts");
    assert!(v.separation.order() < v.s1.len().min(v.s2.len()));
}

/// Free set of a well-linked grid, checked for freeness and strong linkedness, with both tangles.
fn pipeline(side: usize, k: usize) -> (VertexSet, Tangle, Tangle) {
    let a = two_thirds();
    let g = Graph::grid(side, side);
    let s = all(&g);
    assert!(is_well_linked(&g, &s, k - 1, a, LIMIT)
        .unwrap()
        .well_linked());
    let f = free_set(&g, &s, a, k).unwrap();
    assert_eq!(f.len(), k - 1);
    assert_eq!(s_free_violation(&g, &f, &s, a, LIMIT).unwrap(), None);
    assert!(is_strongly_linked(&g, &f).unwrap());
    let order = (f.len() / 3).max(1);
    let tf = tangle_from_free_set(&g, &f, order, LIMIT).unwrap();
    let ts = tangle_of_welllinked(&g, &s, a, order, LIMIT).unwrap();
    (f, tf, ts)
}

#[test]
fn free_set_pipeline_on_grids() {
    for (side, k) in [(4, 2), (4, 3), (5, 3), (5, 4)] {
        let g = Graph::grid(side, side);
        let (f, tf, ts) = pipeline(side, k);
        assert!(tangle_validate(&g, &tf, LIMIT).unwrap().is_empty());
        assert!(tangle_validate(&g, &ts, LIMIT).unwrap().is_empty());
        assert!(is_truncation(&tf, &ts), "side {side}, k {k}");
        let tw = treewidth_exact(&g, 25).unwrap().value;
        assert!(tw >= f.len() / 3);
    }
}

#[test]
fn free_set_tangle_of_order_two() {
    // |F| = 3 orients the order-1 separations towards the side with two of its vertices
    let g = Graph::grid(5, 5);
    let (f, _, _) = pipeline(5, 4);
    let tf = tangle_from_free_set(&g, &f, 2, LIMIT).unwrap();
    let ts = tangle_of_welllinked(&g, &all(&g), two_thirds(), 2, LIMIT).unwrap();
    assert!(tangle_validate(&g, &tf, LIMIT).unwrap().is_empty());
    assert!(is_truncation(&tf, &ts));
    assert_eq!(tf.oriented.len(), 26);
}

#[test]
fn free_set_in_a_disconnected_host() {
    let g = Graph::grid(3, 3).disjoint_union(&Graph::path(2));
    let s = all(&g);
    let f = free_set(&g, &s, two_thirds(), 2).unwrap();
    assert!(f.iter().all(|&v| v < 9), "{f:?}");
}

#[test]
fn order_one_tangle() {
    let g = Graph::cycle(5);
    let t = tangle_of_welllinked(&g, &all(&g), two_thirds(), 1, LIMIT).unwrap();
    assert_eq!(t.oriented, vec![Separation::new(VertexSet::new(), all(&g))]);
    assert!(tangle_validate(&g, &t, LIMIT).unwrap().is_empty());
}

#[test]
fn flipped_orientation_is_reported() {
    let g = Graph::grid(4, 4);
    let mut t = tangle_of_welllinked(&g, &all(&g), two_thirds(), 2, LIMIT).unwrap();
    let i = t.oriented.iter().position(|s| s.order() == 1).unwrap();
    t.oriented[i] = t.oriented[i].flipped();
    let v = tangle_validate(&g, &t, LIMIT).unwrap();
    assert!(
        v.iter().any(|x| matches!(
            x,
            TangleViolation::Covering { .. } | TangleViolation::Unoriented { .. }
        )),
        "{v:?}"
    );
}

#[test]
fn wall_tangles() {
    let w = elementary_wall(3).unwrap();
    let rows: Vec<VertexSet> = w
        .rows()
        .into_iter()
        .map(|r| r.into_iter().collect())
        .collect();
    let cols: Vec<VertexSet> = w
        .columns()
        .into_iter()
        .map(|c| c.into_iter().collect())
        .collect();
    let t = tangle_of_wall(&w.graph, &rows, &cols, 3, LIMIT).unwrap();
    assert!(tangle_validate(&w.graph, &t, LIMIT).unwrap().is_empty());
    assert_eq!(t.order, 3);
}

#[test]
fn linkage_outcomes() {
    let g4 = Graph::grid(4, 4);
    let top: VertexSet = (0..4).collect();
    let bottom: VertexSet = (12..16).collect();
    match augment_or_separate(&g4, &top, &bottom, 4).unwrap() {
        Augmentation::Paths { paths } => {
            assert_eq!(paths.len(), 4);
            let used: VertexSet = paths.iter().flatten().copied().collect();
            assert_eq!(used.len(), paths.iter().map(Vec::len).sum::<usize>());
        }
        other => panic!("expected paths, got {other:?}"),
    }

    // a triangle hanging off a 6-clique through one cut vertex
    let mut edges = vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)];
    for u in 4..10 {
        for v in u + 1..10 {
            edges.push((u, v));
        }
    }
    let bottleneck = Graph::from_edge_list(10, &edges).unwrap();
    let x = vset([0, 1]);
    let y: VertexSet = (4..10).collect();
    let out = augment_or_separate(&bottleneck, &x, &y, 2).unwrap();
    match out {
        Augmentation::Pushed { from, to } => {
            assert!(to.is_valid(&bottleneck) && to.order() < 2);
            assert!(to.b.is_subset(&from.b) && to.b.len() < from.b.len());
        }
        Augmentation::SafeEdge { from, edge } => {
            assert!(from.b.contains(&edge.0) && from.b.contains(&edge.1));
            assert!(strong_link_violation(&bottleneck, &x, Some(edge))
                .unwrap()
                .is_none());
        }
        Augmentation::Paths { .. } => panic!("a cut vertex separates X from Y"),
    }

    assert!(matches!(
        augment_or_separate(&bottleneck, &x, &vset([5, 6, 7]), 2),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn walls_from_well_linked_sets() {
    let a = two_thirds();
    let g6 = Graph::grid(6, 6);
    match wall_from_welllinked(&g6, &all(&g6), a, 3, SearchBudget::default()).unwrap() {
        WallOutcome::Wall(w) => {
            assert_eq!(w.rows.len(), 3);
            let ts = tangle_of_welllinked(&g6, &all(&g6), a, 3, LIMIT).unwrap();
            let tw = tangle_of_wall(&g6, &w.rows, &w.columns, 3, LIMIT).unwrap();
            assert!(is_truncation(&tw, &ts));
        }
        other => panic!("expected a wall, got {other:?}"),
    }
    let tree = Graph::path(8);
    match wall_from_welllinked(&tree, &all(&tree), a, 3, SearchBudget::default()).unwrap() {
        WallOutcome::NoWall {
            treewidth, exact, ..
        } => assert_eq!((treewidth, exact), (1, true)),
        other => panic!("a tree has no wall, got {other:?}"),
    }
}

#[test]
fn tangle_json_round_trip() {
    let g = Graph::grid(3, 3);
    let t = tangle_of_welllinked(&g, &all(&g), two_thirds(), 2, LIMIT).unwrap();
    let back: Tangle = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
    assert_eq!(back, t);
}
