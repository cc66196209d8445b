use dyckgrid::generators::Kind::{self, Crosscap, Handle};
use dyckgrid::generators::{dtilde, dyck_grid, mixed_surface_grid, Subdivisions};
use dyckgrid::transforms::*;
use dyckgrid::Error;

/// Every kind sequence of Euler genus `2h + c` at most `g`.
fn sequences(g: usize) -> Vec<Vec<Kind>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![(vec![], 0)];
    while let Some((seq, genus)) = frontier.pop() {
        for (kind, cost) in [(Handle, 2), (Crosscap, 1)] {
            if genus + cost <= g {
                let mut next: Vec<Kind> = seq.clone();
                next.push(kind);
                out.push(next.clone());
                frontier.push((next, genus + cost));
            }
        }
    }
    out
}

fn expect_pattern(routed: &RoutedModel, kinds: &[Kind], k: usize) {
    routed.model.validate().unwrap();
    let target = mixed_surface_grid(k, kinds, &Subdivisions::None).unwrap();
    assert_eq!(routed.model.pattern, target.graph, "{kinds:?}");
}

#[test]
fn swaps_for_every_small_sequence() {
    let mut checked = 0;
    for kinds in sequences(4) {
        for i in 2..kinds.len() + 1 {
            let pair = [kinds[i - 2], kinds[i - 1]];
            let r = swap_adjacent(&kinds, 9, i);
            if pair[0] == pair[1] {
                assert!(matches!(r, Err(Error::Precondition(_))), "{kinds:?} at {i}");
                continue;
            }
            let mut swapped = kinds.clone();
            swapped.swap(i - 2, i - 1);
            expect_pattern(&r.unwrap(), &swapped, 1);
            checked += 1;
        }
    }
    // XH, HX, XXH, HXX once each and XHX twice
    assert_eq!(checked, 6);
}

#[test]
fn swap_at_order_two() {
    expect_pattern(
        &swap_adjacent(&[Crosscap, Handle], 18, 2).unwrap(),
        &[Handle, Crosscap],
        2,
    );
    expect_pattern(
        &swap_adjacent(&[Handle, Crosscap], 18, 2).unwrap(),
        &[Crosscap, Handle],
        2,
    );
}

#[test]
fn crosscap_trades() {
    let mut checked = 0;
    for kinds in sequences(5) {
        for i in 2..kinds.len() + 1 {
            if kinds.len() > i && kinds[i - 2..=i].iter().all(|&x| x == Crosscap) {
                let mut out = kinds[..i - 2].to_vec();
                out.extend([Handle, Crosscap]);
                out.extend(&kinds[i + 1..]);
                expect_pattern(&crosscaps_to_handle(&kinds, 18, i).unwrap(), &out, 1);
                checked += 1;
            }
            if kinds[i - 2..].starts_with(&[Handle, Crosscap]) {
                let mut out = kinds[..i - 2].to_vec();
                out.extend([Crosscap; 3]);
                out.extend(&kinds[i..]);
                expect_pattern(&handle_to_crosscaps(&kinds, 18, i).unwrap(), &out, 1);
                checked += 1;
            }
        }
    }
    assert!(checked >= 8, "{checked}");
}

#[test]
fn crosscap_trades_at_order_two() {
    expect_pattern(
        &crosscaps_to_handle(&[Crosscap; 3], 36, 2).unwrap(),
        &[Handle, Crosscap],
        2,
    );
    expect_pattern(
        &handle_to_crosscaps(&[Handle, Crosscap], 36, 2).unwrap(),
        &[Crosscap; 3],
        2,
    );
}

#[test]
fn step_logs_name_the_routing() {
    let r = swap_adjacent(&[Handle, Crosscap, Handle], 9, 3).unwrap();
    assert!(r
        .step_log
        .iter()
        .any(|s| s.action.starts_with("carry transaction")));
    assert!(r
        .step_log
        .iter()
        .all(|s| s.vertices.iter().all(|v| *v < r.model.host.n())));
    let r = handle_to_crosscaps(&[Handle, Crosscap], 18, 2).unwrap();
    assert_eq!(r.step_log.len(), 3);
}

#[test]
fn transform_errors() {
    assert!(matches!(
        swap_adjacent(&[Crosscap, Handle], 8, 2),
        Err(Error::InvalidParameter(_))
    ));
    assert!(matches!(
        crosscaps_to_handle(&[Crosscap, Crosscap, Handle], 18, 2),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        handle_to_crosscaps(&[Crosscap, Handle], 18, 2),
        Err(Error::Precondition(_))
    ));
    assert!(swap_adjacent(&[Crosscap, Handle], 9, 3).is_err());
    assert!(annulus_embed(0, 0, 2).is_err());
    assert!(annulus_embed(1, 0, 0).is_err());
    assert!(half_integral_packing(1, 0, 0, 2).is_err());
}

#[test]
fn annulus_containments() {
    for (h, c, k) in [
        (1, 0, 2),
        (0, 1, 2),
        (0, 2, 2),
        (1, 1, 2),
        (2, 0, 2),
        (1, 2, 2),
        (1, 0, 3),
        (0, 1, 3),
        (2, 2, 3),
        (0, 2, 1),
    ] {
        let (contract, regrow) = annulus_embed(h, c, k).unwrap();
        contract.model.validate().unwrap();
        regrow.model.validate().unwrap();
        assert_eq!(contract.model.pattern, dtilde(h, c, k).unwrap().graph);
        assert_eq!(
            contract.model.host,
            dyck_grid(h as isize, c, k).unwrap().graph
        );
        assert_eq!(
            regrow.model.pattern,
            dyck_grid(h as isize, c, k).unwrap().graph
        );
        let factor = if (h, c) == (0, 1) { 3 } else { 2 };
        assert_eq!(
            regrow.model.host,
            dtilde(h, c, factor * k).unwrap().graph,
            "({h},{c},{k})"
        );
    }
}

#[test]
fn packings() {
    for (h, c, x, y) in [(1, 2, 4, 2), (0, 1, 2, 1), (1, 0, 1, 3), (0, 2, 3, 1)] {
        let p = half_integral_packing(h, c, x, y).unwrap();
        assert_eq!(p.copies.len(), x);
        let pattern = dtilde(h, c, y).unwrap().graph;
        for m in &p.copies {
            m.validate().unwrap();
            assert_eq!(m.pattern, pattern);
        }
        let expected = if x == 1 { 1 } else { 2 };
        assert_eq!(p.max_multiplicity(), expected, "({h},{c},{x},{y})");
        // recount the multiplicities from the copies
        let mut count = std::collections::BTreeMap::new();
        for v in p
            .copies
            .iter()
            .flat_map(|m| m.branch_sets.values().flatten())
        {
            *count.entry(*v).or_insert(0) += 1;
        }
        assert_eq!(count, p.multiplicity);
    }
}

#[test]
fn dyck_plans() {
    let p = plan_to_dyck(0, 3, 1).unwrap();
    assert_eq!(p.g, 3);
    assert_eq!(p.required_order, 162u128.pow(6));
    assert_eq!(p.step_plan, vec![("crosscaps_to_handle".to_string(), 18)]);
    let p = plan_to_dyck(1, 2, 5).unwrap();
    assert_eq!(p.g, 4);
    assert_eq!(p.required_order, 162u128.pow(8) * 5);
    assert_eq!(
        p.step_plan
            .iter()
            .filter(|s| s.0 == "swap_adjacent")
            .count(),
        3
    );
    assert!(plan_to_dyck(2, 0, 1).unwrap().step_plan.is_empty());
    assert!(matches!(plan_to_dyck(10, 10, 1), Err(Error::TooLarge(_))));
}

#[test]
fn routed_model_json_round_trip() {
    let r = swap_adjacent(&[Crosscap, Handle], 9, 2).unwrap();
    let back: RoutedModel = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
}
