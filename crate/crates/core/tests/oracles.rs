//! Known small-group facts the library must reproduce.

use vclosed::abelian::{abelian_groups_of_order, primary_decompose, strong_retract_criterion};
use vclosed::approx::{parity_code, verify_property1, verify_property1_rank, verify_property2, CodeSubspace};
use vclosed::group::catalog::{d4, parse_group, q8, s3};
use vclosed::group::hom::{all_homomorphisms, find_retraction, DEFAULT_NODE_LIMIT};
use vclosed::group::subgroup::{center, closure, commutator_subgroup, subgroups, Subgroup};
use vclosed::group::FiniteGroup;
use vclosed::heisenberg::heis_group;
use vclosed::words::{verbal_image, verbally_closed_bounded, Word, DEFAULT_EVAL_BUDGET};

fn g(name: &str) -> FiniteGroup {
    parse_group(name).unwrap()
}

fn hom_count(src: &FiniteGroup, tgt: &FiniteGroup) -> usize {
    all_homomorphisms(src, &Subgroup::whole(src), tgt, DEFAULT_NODE_LIMIT).unwrap().len()
}

fn image_order(group: &FiniteGroup, word: &str) -> usize {
    let w: Word = word.parse().unwrap();
    verbal_image(group, &w, DEFAULT_EVAL_BUDGET).unwrap().elements.len()
}

#[test]
fn subgroup_counts() {
    assert_eq!(subgroups(&q8()).len(), 6);
    assert_eq!(subgroups(&d4()).len(), 10);
    assert_eq!(subgroups(&s3()).len(), 6);
    assert_eq!(subgroups(&g("Z2+Z2+Z2")).len(), 16);
    assert_eq!(subgroups(&g("Z4+Z4")).len(), 15);
    assert_eq!(subgroups(&g("Z12")).len(), 6);
}

#[test]
fn homomorphism_counts() {
    assert_eq!(hom_count(&g("Z2+Z2"), &g("Z2+Z2")), 16);
    assert_eq!(hom_count(&g("Z4"), &q8()), 8);
    assert_eq!(hom_count(&g("Z6"), &g("Z4")), 2);
    assert_eq!(hom_count(&s3(), &g("Z2")), 2);
    assert_eq!(hom_count(&q8(), &g("Z2")), 4);
    assert_eq!(hom_count(&s3(), &s3()), 10);
}

#[test]
fn verbal_images() {
    assert_eq!(image_order(&q8(), "x1^2"), 2);
    assert_eq!(image_order(&q8(), "[x1,x2]"), 2);
    assert_eq!(image_order(&s3(), "x1^2"), 3);
    // identity and the three transpositions
    assert_eq!(image_order(&s3(), "x1^3"), 4);
    assert_eq!(image_order(&s3(), "[x1,x2]"), 3);
    assert_eq!(image_order(&d4(), "x1^4"), 1);
    assert_eq!(image_order(&g("Z6"), "x1^2"), 3);
}

#[test]
fn retracts() {
    let z4 = g("Z4");
    assert!(find_retraction(&z4, &closure(&z4, &[2]), DEFAULT_NODE_LIMIT).unwrap().is_none());
    let v = g("Z2+Z2");
    assert!(find_retraction(&v, &closure(&v, &[1]), DEFAULT_NODE_LIMIT).unwrap().is_some());
    assert!(find_retraction(&q8(), &center(&q8()), DEFAULT_NODE_LIMIT).unwrap().is_none());
    assert!(find_retraction(&d4(), &center(&d4()), DEFAULT_NODE_LIMIT).unwrap().is_none());
    let s = s3();
    let transposition = closure(&s, &[s.elements().find(|&x| s.element_order(x) == 2).unwrap()]);
    assert!(find_retraction(&s, &transposition, DEFAULT_NODE_LIMIT).unwrap().is_some());
}

#[test]
fn verbal_closedness() {
    // 2Z4 is the image of x^2 in Z4 but x^2 = 2 has no solution inside it
    let z4 = g("Z4");
    let r = verbally_closed_bounded(&z4, &closure(&z4, &[2]), 2, 1, DEFAULT_EVAL_BUDGET).unwrap();
    assert!(!r.counterexamples.is_empty());
    let v = g("Z2+Z2");
    let r = verbally_closed_bounded(&v, &closure(&v, &[1]), 4, 2, DEFAULT_EVAL_BUDGET).unwrap();
    assert!(r.counterexamples.is_empty());
}

#[test]
fn abelian_type_counts() {
    let counts: Vec<usize> = [1, 2, 4, 8, 16, 32, 64, 72].iter().map(|&n| abelian_groups_of_order(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 6]);
}

#[test]
fn criterion_examples() {
    let crit = |name: &str| strong_retract_criterion(&primary_decompose(&g(name)).unwrap());
    assert!(crit("Z2+Z2"));
    assert!(crit("Z6"));
    assert!(crit("Z4+Z4+Z9"));
    assert!(!crit("Z2+Z4"));
    assert!(!crit("Z3+Z9+Z2"));
}

#[test]
fn heisenberg_mod_three() {
    let h = heis_group(1, 3).unwrap();
    assert_eq!(h.order(), 27);
    assert_eq!(center(&h).order(), 3);
    assert_eq!(commutator_subgroup(&h).members(), center(&h).members());
    assert_eq!(h.exponent(), 3);
    assert_eq!(heis_group(1, 2).unwrap().exponent(), 4);
}

#[test]
fn parity_codes() {
    for t in [3, 5, 7] {
        let code = parity_code(t).unwrap();
        assert_eq!(code.dim(), t - 1);
        assert!(verify_property1(&code).unwrap());
        assert!(verify_property2(&code, t - 1));
    }
    assert!(parity_code(4).is_err());
    assert!(!verify_property1(&CodeSubspace::full(2, 3)).unwrap());
    // two codewords of the length-3 parity code can cover every coordinate
    assert!(!verify_property1_rank(&parity_code(3).unwrap(), 2).unwrap());
}
