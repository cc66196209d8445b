use std::collections::BTreeMap;

use dyckgrid::graph::{vset, Graph, Partition, VertexSet};
use dyckgrid::minor::*;
use dyckgrid::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Tries every assignment of host vertices to pattern vertices (or to nothing).
fn brute_force_minor(host: &Graph, pattern: &Graph, roots: Option<&VertexSet>) -> bool {
    let n = host.n();
    let labels = pattern.n() + 1;
    for code in 0..labels.pow(n as u32) {
        let mut c = code;
        let mut sets: BTreeMap<usize, VertexSet> =
            (0..pattern.n()).map(|x| (x, VertexSet::new())).collect();
        for v in 0..n {
            let l = c % labels;
            c /= labels;
            if l < pattern.n() {
                sets.get_mut(&l).unwrap().insert(v);
            }
        }
        let m = MinorModel {
            pattern: pattern.clone(),
            host: host.clone(),
            branch_sets: sets,
            roots: roots.cloned(),
        };
        if m.is_valid() {
            return true;
        }
    }
    false
}

fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut e = vec![];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    Graph::from_edges_lossy(n, e)
}

fn identity(g: &Graph) -> MinorModel {
    MinorModel {
        pattern: g.clone(),
        host: g.clone(),
        branch_sets: g.vertices().map(|v| (v, vset([v]))).collect(),
        roots: None,
    }
}

#[test]
fn graph_construction_errors() {
    let p3 = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
    assert_eq!((p3.n(), p3.m()), (3, 2));
    assert_eq!(Graph::from_edge_list(2, &[(0, 0)]), Err(Error::SelfLoop(0)));
    assert_eq!(
        Graph::from_edge_list(4, &[(0, 1), (0, 1)]),
        Err(Error::DuplicateEdge(0, 1))
    );
    assert!(matches!(
        Graph::from_edge_list(2, &[(0, 2)]),
        Err(Error::EndpointOutOfRange { .. })
    ));
}

#[test]
fn contraction_and_components() {
    let p3 = Graph::path(3);
    let one = p3
        .contract_partition(&Partition::new(vec![vset([0, 1]), vset([2])]))
        .unwrap();
    assert_eq!((one.n(), one.m()), (2, 1));
    let c4 = Graph::cycle(4);
    let same = c4
        .contract_partition(&Partition::new((0..4).map(|v| vset([v])).collect()))
        .unwrap();
    assert_eq!(same, c4);
    assert!(matches!(
        p3.contract_partition(&Partition::new(vec![vset([0, 2]), vset([1])])),
        Err(Error::DisconnectedPart(_))
    ));
    let two = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
    assert_eq!(two.connected_components().len(), 2);
    assert!(Graph::empty(0).connected_components().is_empty());
    assert_eq!(Graph::cycle(5).connected_components().len(), 1);
}

#[test]
fn model_validation() {
    let c4 = Graph::cycle(4);
    assert!(identity(&c4).is_valid());

    let mut shared = identity(&c4);
    shared.branch_sets.insert(1, vset([1, 0]));
    let v = shared.violations();
    assert!(
        v.iter()
            .any(|x| matches!(x, Violation::Disjointness { .. })),
        "{v:?}"
    );

    let mut missing = identity(&Graph::complete(3));
    missing.host = Graph::path(3);
    let v = missing.violations();
    assert!(
        matches!(v.as_slice(), [Violation::MissingEdge { .. }]),
        "{v:?}"
    );
    assert!(missing.validate().is_err());
}

#[test]
fn search_examples() {
    let k3 = Graph::complete(3);
    assert!(find_minor(&k3, &k3, None, SearchBudget::default())
        .found()
        .is_some());
    let g4 = Graph::grid(4, 4);
    assert!(matches!(
        find_minor(&g4, &Graph::complete(5), None, SearchBudget::default()),
        Search::None
    ));
    let found = find_minor(&g4, &Graph::complete(4), None, SearchBudget::default());
    found.found().unwrap().validate().unwrap();
}

#[test]
fn rooted_grid_in_the_centre() {
    let g8 = Graph::grid(8, 8);
    let central: VertexSet = (0..64)
        .filter(|v| (2..6).contains(&(v / 8)) && (2..6).contains(&(v % 8)))
        .collect();
    let model = bg_at_least(
        &g8,
        &central,
        2,
        SearchBudget::unlimited().with_nodes(50_000_000),
    )
    .unwrap()
    .expect("a rooted 2x2 grid");
    model.validate().unwrap();
    assert!(model.branch_sets.values().all(|b| !b.is_disjoint(&central)));
}

#[test]
fn biggest_grid() {
    let b = SearchBudget::default();
    assert_eq!(
        bg_annotated(&Graph::grid(3, 3), &(0..9).collect(), b).unwrap(),
        3
    );
    assert_eq!(
        bg_annotated(&Graph::grid(3, 3), &VertexSet::new(), b).unwrap(),
        0
    );
    assert_eq!(
        bg_annotated(&Graph::complete(9), &(0..9).collect(), b).unwrap(),
        3
    );
    assert_eq!(
        bg_annotated(&Graph::path(4), &(0..4).collect(), b).unwrap(),
        1
    );
}

#[test]
fn hadwiger_numbers() {
    let b = SearchBudget::default();
    assert_eq!(hadwiger(&Graph::complete(5), b).unwrap(), 5);
    assert_eq!(hadwiger(&Graph::path(6), b).unwrap(), 2);
    assert_eq!(hadwiger(&Graph::grid(3, 3), b).unwrap(), 4);
    assert_eq!(hadwiger(&Graph::cycle(7), b).unwrap(), 3);
}

#[test]
fn budget_is_reported() {
    let tight = SearchBudget::unlimited().with_nodes(5);
    assert!(matches!(
        find_minor(&Graph::grid(5, 5), &Graph::grid(3, 3), None, tight),
        Search::BudgetExceeded
    ));
    assert_eq!(
        hadwiger(&Graph::grid(5, 5), tight),
        Err(Error::BudgetExceeded)
    );
}

#[test]
fn subgraph_search() {
    let found = find_subgraph(
        &Graph::grid(3, 4),
        &Graph::cycle(6),
        SearchBudget::default(),
    );
    let m = found.found().unwrap();
    m.validate().unwrap();
    assert!(m.branch_sets.values().all(|b| b.len() == 1));
    assert!(matches!(
        find_subgraph(
            &Graph::grid(3, 3),
            &Graph::complete(3),
            SearchBudget::default()
        ),
        Search::None
    ));
}

#[test]
fn search_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for it in 0..1500 {
        let n = rng.gen_range(1..=6);
        let d = rng.gen_range(0.2..0.9);
        let host = random_graph(&mut rng, n, d);
        let pn = rng.gen_range(1..=4);
        let d = rng.gen_range(0.3..1.0);
        let pattern = random_graph(&mut rng, pn, d);
        let roots: Option<VertexSet> = if rng.gen_bool(0.5) {
            Some((0..n).filter(|_| rng.gen_bool(0.6)).collect())
        } else {
            None
        };
        let search = find_minor(&host, &pattern, roots.as_ref(), SearchBudget::unlimited());
        if let Some(m) = search.found() {
            m.validate().unwrap();
        }
        let expected = brute_force_minor(&host, &pattern, roots.as_ref());
        assert_eq!(
            search.found().is_some(),
            expected,
            "case {it}: host {:?} pattern {:?} roots {roots:?}",
            host.edges(),
            pattern.edges()
        );
    }
}

#[test]
fn model_json_round_trip() {
    let m = bg_at_least(
        &Graph::grid(4, 4),
        &(0..16).collect(),
        2,
        SearchBudget::default(),
    )
    .unwrap()
    .unwrap();
    let text = serde_json::to_string(&m).unwrap();
    let back: MinorModel = serde_json::from_str(&text).unwrap();
    assert_eq!(back, m);
}
