use std::collections::BTreeMap;

use nilorbit::frobenius::{orbit_action, FrobeniusDescriptor};
use nilorbit::orbits::OrbitLabel;
use nilorbit::roottypes::{diagram_automorphisms, DiagramAutomorphism, DynkinType};

type Action = BTreeMap<OrbitLabel, OrbitLabel>;

fn d4() -> DynkinType {
    "D4".parse().unwrap()
}

fn action(f: &FrobeniusDescriptor) -> Action {
    orbit_action(f).unwrap().into_iter().collect()
}

fn named(name: &str) -> Action {
    action(&FrobeniusDescriptor::by_name(d4(), name).unwrap())
}

fn of(gamma: DiagramAutomorphism) -> Action {
    action(&FrobeniusDescriptor::from_twist(gamma, "gamma"))
}

fn then(a: &Action, b: &Action) -> Action {
    a.iter().map(|(k, v)| (k.clone(), b[v].clone())).collect()
}

#[test]
fn named_twists_are_the_expected_transpositions() {
    let t = d4();
    for (name, a, b) in [("F1", 3, 4), ("F2", 1, 3), ("F3", 1, 4)] {
        let f = FrobeniusDescriptor::by_name(t, name).unwrap();
        assert_eq!(*f.twist(), DiagramAutomorphism::transposition(t, a, b).unwrap(), "{name}");
    }
}

#[test]
fn action_is_a_homomorphism_from_s3() {
    let autos = diagram_automorphisms(d4());
    assert_eq!(autos.len(), 6);
    for g in &autos {
        for h in &autos {
            // orbit_action is pull-back free: acting by g then h equals acting by h . g
            let composed = h.compose(g).unwrap();
            assert_eq!(then(&of(g.clone()), &of(h.clone())), of(composed), "{g} {h}");
        }
    }
}

#[test]
fn transposition_relations() {
    let (f0, f1, f2, f3) = (named("F0"), named("F1"), named("F2"), named("F3"));
    assert!(f0.iter().all(|(k, v)| k == v));
    for f in [&f1, &f2, &f3] {
        assert_eq!(then(f, f), f0);
    }
    // (13)(34)(13) = (14)
    assert_eq!(then(&then(&f2, &f1), &f2), f3);
    // a product of two distinct transpositions has order 3
    let r = then(&f1, &f2);
    assert_ne!(r, f0);
    assert_eq!(then(&then(&r, &r), &r), f0);
}

#[test]
fn fixed_orbit_counts() {
    let fixed = |a: &Action| a.iter().filter(|(k, v)| k == v).count();
    assert_eq!(fixed(&named("F0")), 12);
    for name in ["F1", "F2", "F3"] {
        assert_eq!(fixed(&named(name)), 8, "{name}");
    }
}
