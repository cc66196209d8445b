use dyckgrid::surfaces::*;
use proptest::prelude::*;

mod common;
use common::{genus_class_obstructions, lattice_panels};

fn s(text: &str) -> Surface {
    text.parse().unwrap()
}

fn set(items: &[&str]) -> SurfaceSet {
    items.iter().map(|t| s(t)).collect()
}

#[test]
fn normal_forms() {
    assert_eq!(s("(1,0)"), Surface::TORUS);
    assert_eq!(s("(0,3)"), s("(1,1)"));
    assert_eq!(s("(0,4)"), s("(1,2)"));
    assert_eq!(s("(2,3)"), Surface::normalize(3, 1));
    assert_eq!(s("(-1,2)"), Surface::SPHERE);
    assert_eq!(Surface::normalize(0, 2), Surface::KLEIN_BOTTLE);
    assert!("(1)".parse::<Surface>().is_err());
    assert!("mobius".parse::<Surface>().is_err());
    for t in [
        "empty",
        "sphere",
        "torus",
        "projective-plane",
        "klein-bottle",
        "(2,1)",
    ] {
        assert_eq!(s(t).to_string(), t);
    }
}

#[test]
fn containment() {
    assert!(Surface::SPHERE.contained_in(Surface::TORUS));
    assert!(!Surface::PROJECTIVE_PLANE.contained_in(Surface::TORUS));
    assert!(Surface::TORUS.contained_in(s("(1,1)")));
    assert!(!Surface::TORUS.contained_in(Surface::KLEIN_BOTTLE));
    assert!(Surface::Empty.contained_in(Surface::Empty));
    assert!(!Surface::SPHERE.contained_in(Surface::Empty));
    for x in surfaces_up_to(5) {
        assert!(x.contained_in(x));
    }
}

#[test]
fn obstruction_examples() {
    assert_eq!(sobs(&SurfaceSet::new()).unwrap(), set(&["empty"]));
    assert_eq!(sobs(&set(&["empty"])).unwrap(), set(&["sphere"]));
    assert_eq!(
        sobs(&set(&["empty", "sphere"])).unwrap(),
        set(&["torus", "projective-plane"])
    );
    let err = sobs(&set(&["torus"])).unwrap_err();
    assert!(err.to_string().contains("not closed"));
}

#[test]
fn prevalent_examples() {
    assert_eq!(prevalent(&SurfaceSet::new()).unwrap(), Surface::Empty);
    assert_eq!(prevalent(&set(&["empty"])).unwrap(), Surface::SPHERE);
    assert_eq!(
        prevalent(&set(&["empty", "sphere"])).unwrap(),
        Surface::SPHERE
    );
}

#[test]
fn lattice_panels_reproduce() {
    for (i, (closed, obs, prev)) in lattice_panels().into_iter().enumerate() {
        assert_eq!(sobs(&closed).unwrap(), obs, "panel {i}");
        assert_eq!(prevalent(&closed).unwrap(), prev, "panel {i}");
    }
}

#[test]
fn genus_class_obstructions_follow_the_closed_form() {
    for g in -1..=6i64 {
        assert_eq!(
            sobs(&genus_class(g).unwrap()).unwrap(),
            genus_class_obstructions(g),
            "g={g}"
        );
    }
    assert!(genus_class(-2).is_err());
}

#[test]
fn genus_class_members() {
    assert_eq!(genus_class(-1).unwrap(), set(&["empty"]));
    assert_eq!(
        genus_class(2).unwrap(),
        set(&[
            "empty",
            "sphere",
            "projective-plane",
            "torus",
            "klein-bottle"
        ])
    );
    for g in 0..=6 {
        assert!(genus_class(g).unwrap().iter().all(|x| x.euler_genus() <= g));
    }
}

#[test]
fn iteration_order() {
    let all: Vec<Surface> = surfaces_up_to(3).into_iter().collect();
    assert_eq!(all[0], Surface::Empty);
    assert_eq!(all[1], Surface::SPHERE);
    assert!(all.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn hasse_diagram() {
    let dot = hasse_dot(2);
    assert!(dot.starts_with("digraph"));
    for name in [
        "empty",
        "sphere",
        "torus",
        "projective-plane",
        "klein-bottle",
    ] {
        assert!(dot.contains(&format!("\"{name}\"")), "{name} missing");
    }
    // covering pairs only: sphere sits directly under the torus, not under the Klein bottle
    assert!(dot.contains("\"sphere\" -> \"torus\""));
    assert!(!dot.contains("\"sphere\" -> \"klein-bottle\""));
}

fn closed_set() -> impl Strategy<Value = SurfaceSet> {
    let all: Vec<Surface> = surfaces_up_to(6).into_iter().collect();
    proptest::collection::vec(proptest::sample::select(all), 0..4)
        .prop_map(|tops| tops.into_iter().flat_map(down_closure).collect())
}

proptest! {
    #[test]
    fn obstructions_are_minimal_and_outside(closed in closed_set()) {
        let obs = sobs(&closed).unwrap();
        prop_assert!(!obs.is_empty());
        for o in &obs {
            prop_assert!(!closed.contains(o));
            for d in down_closure(*o) {
                prop_assert!(d == *o || closed.contains(&d));
            }
        }
        // everything outside the set lies above some obstruction
        for x in surfaces_up_to(8) {
            if !closed.contains(&x) {
                prop_assert!(obs.iter().any(|o| o.contained_in(x)));
            }
        }
    }

    #[test]
    fn prevalent_is_unique_and_orientable(closed in closed_set()) {
        let p = prevalent(&closed).unwrap();
        prop_assert!(p == Surface::Empty || p.is_orientable());
        let obs = sobs(&closed).unwrap();
        prop_assert!(obs.iter().all(|o| p.contained_in(*o)));
        prop_assert_eq!(obs.contains(&p), obs.len() == 1 && obs.contains(&p));
    }

    #[test]
    fn single_obstruction_condition(closed in closed_set()) {
        let obs = sobs(&closed).unwrap();
        let g = closed.iter().map(|x| x.euler_genus()).max().unwrap_or(-1);
        let top_nonorientable = g > 0 && g % 2 == 0
            && closed.iter().filter(|x| x.euler_genus() == g).all(|x| !x.is_orientable());
        let trivial = closed.iter().all(|x| *x == Surface::Empty);
        prop_assert_eq!(obs.len() == 1, top_nonorientable || trivial);
        prop_assert_eq!(obs.contains(&prevalent(&closed).unwrap()), obs.len() == 1);
    }

    #[test]
    fn containment_is_a_partial_order(a in 0usize..4, b in 0usize..4, c in 0usize..5, d in 0usize..5) {
        let x = Surface::normalize(a, c);
        let y = Surface::normalize(b, d);
        if x.contained_in(y) && y.contained_in(x) {
            prop_assert_eq!(x, y);
        }
        if x.contained_in(y) {
            prop_assert!(x.euler_genus() <= y.euler_genus());
        }
        let z = Surface::normalize(a + b, c + d);
        prop_assert!(x.contained_in(z));
    }
}
