use dyckgrid::generators::{mixed_surface_grid, Kind, Subdivisions};
use dyckgrid::graph::{vset, Graph, VertexSet};
use dyckgrid::minor::SearchBudget;
use dyckgrid::societies::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod common;
use common::random_society;

fn ring(n: usize) -> Society {
    Society::new(Graph::cycle(n), (0..n).collect()).unwrap()
}

fn perimeter_of_grid3() -> Society {
    Society::new(Graph::grid(3, 3), vec![0, 1, 2, 5, 8, 7, 6, 3]).unwrap()
}

fn check_cross(soc: &Society, c: &Cross) {
    let pos = |v: usize| soc.omega.iter().position(|&w| w == v).unwrap();
    let (p, q) = (&c.first, &c.second);
    let pv: VertexSet = p.iter().copied().collect();
    assert!(q.iter().all(|v| !pv.contains(v)));
    for path in [p, q] {
        assert!(path.windows(2).all(|w| soc.graph.has_edge(w[0], w[1])));
        assert!(path[1..path.len() - 1]
            .iter()
            .all(|v| !soc.omega.contains(v)));
    }
    let (a, b) = (
        pos(p[0]).min(pos(p[p.len() - 1])),
        pos(p[0]).max(pos(p[p.len() - 1])),
    );
    let inside = |v: usize| a < pos(v) && pos(v) < b;
    assert_ne!(inside(q[0]), inside(q[q.len() - 1]));
}

#[test]
fn segments() {
    let s = ring(5);
    assert_eq!(s.segment(3, 1).unwrap(), vec![3, 4, 0, 1]);
    assert_eq!(s.segment(2, 1).unwrap(), vec![2, 3, 4, 0, 1]);
    assert_eq!(s.segment(2, 2).unwrap(), vec![2]);
    assert!(s.segment(2, 7).is_err());
    assert_eq!(s.segments().len(), 5 * 4 + 1);
    assert!(s.is_segment(&vset([4, 0, 1])));
    assert!(!s.is_segment(&vset([0, 2])));
    assert!(Society::new(Graph::cycle(3), vec![0, 1, 0]).is_err());
    assert!(Society::new(Graph::cycle(3), vec![0, 5]).is_err());
}

#[test]
fn transaction_depths() {
    assert_eq!(ring(6).transaction_depth(), 2);
    let k4 = Society::new(Graph::complete(4), (0..4).collect()).unwrap();
    assert_eq!(k4.transaction_depth(), 2);
    assert_eq!(
        Society::new(Graph::path(3), vec![1])
            .unwrap()
            .transaction_depth(),
        0
    );
    assert_eq!(perimeter_of_grid3().transaction_depth(), 3);
    let t = perimeter_of_grid3().deepest_transaction();
    assert_eq!(t.paths.len(), 3);
    let ends: VertexSet = t
        .paths
        .iter()
        .flat_map(|p| [p[0], p[p.len() - 1]])
        .collect();
    assert_eq!(ends.len(), 6);
}

#[test]
fn crosses() {
    let b = SearchBudget::default();
    let k4 = Society::new(Graph::complete(4), (0..4).collect()).unwrap();
    let c = has_cross(&k4, b)
        .unwrap()
        .expect("K4 on its four vertices has a cross");
    check_cross(&k4, &c);
    assert_eq!(has_cross(&ring(6), b).unwrap(), None);
    assert_eq!(has_cross(&perimeter_of_grid3(), b).unwrap(), None);
    // the same grid with the cycle order of two corners swapped crosses
    let twisted = Society::new(Graph::grid(3, 3), vec![0, 1, 2, 5, 6, 7, 8, 3]).unwrap();
    check_cross(&twisted, &has_cross(&twisted, b).unwrap().unwrap());
}

#[test]
fn transactions_of_generated_grids() {
    for (kinds, expected) in [
        (
            vec![Kind::Crosscap],
            [
                TransactionClass::Cross,
                TransactionClass::Crosscap { thickness: 4 },
                TransactionClass::Crosscap { thickness: 6 },
            ],
        ),
        (
            vec![Kind::Handle],
            [
                TransactionClass::Cross,
                TransactionClass::Handle { thickness: 2 },
                TransactionClass::Handle { thickness: 3 },
            ],
        ),
    ] {
        for k in 1..=3 {
            let lg = mixed_surface_grid(k, &kinds, &Subdivisions::None).unwrap();
            let omega: Vec<usize> = (1..=lg.length).map(|j| lg.vertex(1, j)).collect();
            let class = classify_transaction(&lg.transactions[0].paths, &omega).unwrap();
            assert_eq!(class, expected[k - 1], "{kinds:?} k={k}");
        }
    }
}

#[test]
fn classification_of_small_families() {
    let omega: Vec<usize> = (0..8).collect();
    assert_eq!(
        classify_transaction(&[vec![0, 9, 4], vec![1, 10, 3]], &omega).unwrap(),
        TransactionClass::Planar
    );
    assert_eq!(
        classify_transaction(&[vec![0, 9, 4], vec![2, 10, 6]], &omega).unwrap(),
        TransactionClass::Cross
    );
    assert_eq!(
        classify_transaction(&[], &omega).unwrap(),
        TransactionClass::Planar
    );
    assert_eq!(
        classify_transaction(&[vec![0, 9, 4]], &omega).unwrap(),
        TransactionClass::Crosscap { thickness: 1 }
    );
    assert!(classify_transaction(&[vec![]], &omega).is_err());
}

#[test]
fn linear_decompositions_on_a_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut both = [0; 2];
    for case in 0..50 {
        let soc = random_society(&mut rng);
        let depth = soc.transaction_depth();
        for theta in 0..=3 {
            match linear_decomposition(&soc, theta).unwrap() {
                LinearOutcome::Decomposition(d) => {
                    both[0] += 1;
                    assert!(
                        d.validate(&soc).is_empty(),
                        "case {case}: {:?}",
                        d.validate(&soc)
                    );
                    assert!(d.adhesion() <= 2 * theta, "case {case} theta {theta}");
                }
                LinearOutcome::Deep(t) => {
                    both[1] += 1;
                    assert!(t.paths.len() > theta);
                    assert!(depth > theta);
                    let used: Vec<usize> = t.paths.iter().flatten().copied().collect();
                    assert_eq!(
                        used.len(),
                        used.iter().copied().collect::<VertexSet>().len()
                    );
                    for p in &t.paths {
                        assert!(t.a.contains(&p[0]) && t.b.contains(&p[p.len() - 1]));
                    }
                }
            }
            if depth <= theta {
                assert!(matches!(
                    linear_decomposition(&soc, theta).unwrap(),
                    LinearOutcome::Decomposition(_)
                ));
            }
        }
    }
    assert!(both[0] > 0 && both[1] > 0, "{both:?}");
}

#[test]
fn linear_decomposition_examples() {
    match linear_decomposition(&ring(6), 2).unwrap() {
        LinearOutcome::Decomposition(d) => {
            assert_eq!(d.anchors, vec![0, 1, 2, 3, 4, 5]);
            assert!(d.validate(&ring(6)).is_empty());
        }
        other => panic!("{other:?}"),
    }
    let path = Society::new(Graph::path(3), vec![0, 2]).unwrap();
    match linear_decomposition(&path, 0).unwrap() {
        LinearOutcome::Deep(t) => assert_eq!(t.paths, vec![vec![0, 1, 2]]),
        other => panic!("{other:?}"),
    }
    let edgeless = Society::new(Graph::empty(3), vec![0, 1, 2]).unwrap();
    match linear_decomposition(&edgeless, 0).unwrap() {
        LinearOutcome::Decomposition(d) => assert_eq!(d.adhesion(), 0),
        other => panic!("{other:?}"),
    }
}

#[test]
fn linear_decomposition_violations() {
    let soc = ring(4);
    let bad = LinearDecomposition {
        bags: vec![vset([0, 1]), vset([2, 3])],
        anchors: vec![0, 2],
    };
    let v = bad.validate(&soc);
    assert!(
        v.iter()
            .any(|x| matches!(x, LinearViolation::UncoveredEdge { .. })),
        "{v:?}"
    );
    let swapped = LinearDecomposition {
        bags: vec![vset([0, 1, 2, 3]); 3],
        anchors: vec![2, 0, 1],
    };
    assert!(swapped.validate(&soc).is_empty());
    let backwards = LinearDecomposition {
        bags: vec![vset([0, 1, 2, 3]); 3],
        anchors: vec![2, 1, 0],
    };
    assert!(backwards
        .validate(&soc)
        .contains(&LinearViolation::AnchorOrder));
}

#[test]
fn society_json_round_trip() {
    let soc = perimeter_of_grid3();
    let back: Society = serde_json::from_str(&serde_json::to_string(&soc).unwrap()).unwrap();
    assert_eq!(back, soc);
}
