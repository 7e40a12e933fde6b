mod common;

use common::*;
use intval::geom::ConvexBody;
use intval::valuation::{equal, evaluate, shrink_probe, singleton_value, Representation};
use rand::SeedableRng;

#[test]
fn evaluation_is_linear_in_the_representation() {
    let mut rng = Rng8::seed_from_u64(21);
    for _ in 0..300 {
        let (a, b) = (representation(&mut rng, 5), representation(&mut rng, 5));
        let k = query(&mut rng, 3);
        let sum = a.concat(&b).unwrap();
        assert_eq!(evaluate(&sum, &k), evaluate(&a, &k) + evaluate(&b, &k));
        assert_eq!(evaluate(&a.scaled(&r(-3)), &k), evaluate(&a, &k) * r(-3));
    }
}

#[test]
fn points_evaluate_to_singleton_values() {
    let mut rng = Rng8::seed_from_u64(22);
    for _ in 0..300 {
        let rep = representation(&mut rng, 6);
        let x = point(&mut rng, 3, 2);
        assert_eq!(evaluate(&rep, &ConvexBody::Point(x.clone())), singleton_value(&rep, &x));
    }
}

#[test]
fn small_boxes_converge_to_singleton_values() {
    let mut rng = Rng8::seed_from_u64(23);
    for _ in 0..100 {
        let rep = representation(&mut rng, 6);
        let x = point(&mut rng, 3, 2);
        assert!(shrink_probe(&rep, &x, 12).holds);
    }
}

#[test]
fn merged_and_expanded_forms_are_equal() {
    let mut rng = Rng8::seed_from_u64(24);
    for _ in 0..100 {
        let rep = representation(&mut rng, 6);
        let doubled = rep.concat(&rep).unwrap();
        assert!(equal(&doubled.merged(), &rep.scaled(&r(2)), None).unwrap().holds);
        assert!(equal(&rep.expanded().unwrap(), &rep, None).unwrap().holds);
    }
}

#[test]
fn equal_detects_a_single_point_difference() {
    let mut rng = Rng8::seed_from_u64(25);
    for _ in 0..200 {
        let rep = representation(&mut rng, 5);
        let mut other = rep.clone();
        let x = point(&mut rng, 3, 4);
        other.push(r(1), ConvexBody::Point(x.clone()));
        let v = equal(&rep, &other, None).unwrap();
        assert!(!v.holds);
        assert!(
            equal(&rep, &rep.concat(&Representation::empty(2)).unwrap(), None)
                .unwrap()
                .holds
        );
    }
}
