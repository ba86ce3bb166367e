//! Published values for small instances, pinned as regression checks.

use divrel::betti::{betti, betti_extremal_power, taylor_binomial_bounds};
use divrel::closure::{closure, is_minimal_generating};
use divrel::decision::{build_tree, membership_with_certificate, Verdict};
use divrel::extremal::{extremal_ideal, q_extremal};
use divrel::homology::Field;
use divrel::relation::{div_min, holds};
use divrel::{DivRel, GeneratorList, Limits, RelationSet};

fn single() -> RelationSet {
    RelationSet::of(4, &[(1, &[2, 3])])
}

#[test]
fn running_example_relations() {
    let vars = divrel::VariableSet::new(["a", "b", "c", "d", "e", "f", "g", "h"]).unwrap();
    let u = GeneratorList::parse(vars, &["b*c*g", "a*b*g", "c*d*f", "a*d*g*h", "b*e*f"]).unwrap();
    let d = div_min(&u).unwrap();
    assert!(d.contains(&DivRel::of(1, &[2, 3])));
    assert!(d.contains(&DivRel::of(2, &[4, 5])));
    assert!(holds(&DivRel::of(1, &[3, 4, 5]), &u));
    assert!(holds(&DivRel::of(1, &[2, 3, 4]), &u));
}

#[test]
fn extremal_generators_for_a_single_relation() {
    let e = extremal_ideal(&single(), 4).unwrap();
    assert_eq!(
        e.render(),
        [
            "y_12*y_13*y_123*y_124*y_134*y_1234",
            "y_2*y_12*y_23*y_24*y_123*y_124*y_234*y_1234",
            "y_3*y_13*y_23*y_34*y_123*y_134*y_234*y_1234",
            "y_4*y_24*y_34*y_124*y_134*y_234*y_1234",
        ]
    );
    let used: Vec<&String> = e.variables().names().iter().collect();
    assert_eq!(used.len(), 13);
    assert!(!e.variables().names().iter().any(|n| n == "y_1" || n == "y_14"));
}

#[test]
fn closure_of_the_six_generator_example() {
    let d = RelationSet::of(6, &[(1, &[2, 3]), (2, &[4, 5]), (5, &[4, 6])]);
    let expected = RelationSet::of(
        6,
        &[
            (1, &[2, 3]),
            (2, &[4, 5]),
            (5, &[4, 6]),
            (1, &[3, 4, 5]),
            (1, &[3, 4, 6]),
            (2, &[4, 6]),
        ],
    );
    assert_eq!(closure(&d).unwrap().min_core(), &expected);
}

#[test]
fn minimal_generating_sets_are_not_unique() {
    let d = RelationSet::of(6, &[(1, &[2, 3, 4]), (2, &[3, 4])]);
    let d2 = RelationSet::of(6, &[(1, &[3, 4]), (2, &[3, 4])]);
    let core = closure(&d).unwrap().min_core().clone();
    assert!(core.contains(&DivRel::of(1, &[3, 4])));
    assert!(!core.contains(&DivRel::of(1, &[2, 3, 4])));
    let u = extremal_ideal(&d, 6).unwrap().generator_list().unwrap();
    assert!(is_minimal_generating(&d, &u).unwrap());
    assert!(is_minimal_generating(&d2, &u).unwrap());

    let d = RelationSet::of(6, &[(1, &[2, 3]), (2, &[3, 4]), (4, &[2, 3])]);
    let d2 = RelationSet::of(6, &[(1, &[3, 4]), (2, &[3, 4]), (4, &[2, 3])]);
    let u = extremal_ideal(&d, 6).unwrap().generator_list().unwrap();
    assert!(is_minimal_generating(&d, &u).unwrap());
    assert!(is_minimal_generating(&d2, &u).unwrap());
    let mut all_min = d.clone();
    all_min.insert(DivRel::of(1, &[3, 4])).unwrap();
    assert_eq!(div_min(&u).unwrap(), all_min);
    assert!(!is_minimal_generating(&all_min, &u).unwrap());
}

#[test]
fn decision_trees_for_a_two_target_query() {
    let d = RelationSet::of(5, &[(1, &[2, 3]), (3, &[1, 5]), (3, &[4, 5])]);
    let t = build_tree(&d, 1, divrel::IndexSet::from_iter([2, 5])).unwrap();
    assert_eq!(t.height(), 3);
    assert_eq!(t.vertices().len(), 5);
    assert!(!t.root().good);
    let t = build_tree(&d, 3, divrel::IndexSet::from_iter([2, 5])).unwrap();
    assert_eq!(t.height(), 3);
    assert_eq!(t.vertices().len(), 5);
    match membership_with_certificate(&d, &DivRel::of(1, &[2, 5])).unwrap() {
        Verdict::NotIn { witness, .. } => {
            assert!(witness.contains(1));
            assert!(!witness.contains(2) && !witness.contains(5));
        }
        other => panic!("expected a witness, got {other:?}"),
    }
}

#[test]
fn betti_numbers_of_first_powers() {
    let e = extremal_ideal(&single(), 4).unwrap().generator_list().unwrap();
    assert_eq!(betti(&e, Field::Rational).unwrap().total(), [4, 5, 2]);
    let e4 = q_extremal(4).unwrap().generator_list().unwrap();
    assert_eq!(betti(&e4, Field::Rational).unwrap().total(), [4, 6, 4, 1]);
    assert_eq!(taylor_binomial_bounds(4, 1), [4, 6, 4, 1]);
}

#[test]
fn betti_numbers_of_squares() {
    let lim = Limits::default();
    let e = extremal_ideal(&single(), 4).unwrap();
    let t = betti_extremal_power(&e, 2, Field::Rational, &lim).unwrap();
    assert_eq!(t.total(), [10, 21, 15, 3]);
    let e4 = q_extremal(4).unwrap();
    let t = betti_extremal_power(&e4, 2, Field::Rational, &lim).unwrap();
    assert_eq!(t.total(), [10, 27, 32, 19, 6, 1]);
    assert_eq!(taylor_binomial_bounds(4, 2), [10, 45, 120, 210, 252, 210, 120, 45, 10, 1]);
}

#[test]
fn rational_and_mod_two_tables_agree_on_the_examples() {
    let lim = Limits::default();
    let vars = divrel::VariableSet::new(["a", "b", "c", "d", "e", "f", "g", "h"]).unwrap();
    let running = GeneratorList::parse(vars, &["b*c*g", "a*b*g", "c*d*f", "a*d*g*h", "b*e*f"]).unwrap();
    let gf2 = Field::prime(2).unwrap();
    assert_eq!(
        betti(&running, Field::Rational).unwrap().graded(),
        betti(&running, gf2).unwrap().graded()
    );
    for e in [extremal_ideal(&single(), 4).unwrap(), q_extremal(4).unwrap()] {
        for r in 1..=2 {
            let a = betti_extremal_power(&e, r, Field::Rational, &lim).unwrap();
            let b = betti_extremal_power(&e, r, gf2, &lim).unwrap();
            assert_eq!(a.graded(), b.graded(), "power {r}");
        }
    }
}
