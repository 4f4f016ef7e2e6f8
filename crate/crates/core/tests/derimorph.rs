use derivator::derimorph::*;
use derivator::fincat::{terminal, FinCategory, FinFunctor};
use derivator::repder::{Corpus, Policy};
use std::sync::Arc;

fn policy() -> Policy {
    Policy { seed: 7, samples: 3, max_dim: 2 }
}

fn pi(k: &Arc<FinCategory>) -> FinFunctor {
    FinFunctor::to_terminal(k, &terminal())
}

#[test]
fn standard_morphisms_are_coherent() {
    let c = Corpus::get();
    let ms = [
        DerMorphism::tensor_with(2),
        DerMorphism::direct_sum_with_constant(1),
        DerMorphism::pullback_along(&c.i_one()),
        DerMorphism::lan_along(&c.i_one()),
        DerMorphism::ran_along(&pi(&c.one)),
        DerMorphism::lan_along(&pi(&c.discrete2)),
        DerMorphism::tensor_with(2).then(DerMorphism::direct_sum_with_constant(1)).unwrap(),
    ];
    for m in ms {
        let r = validate_morphism(&m, &policy()).unwrap();
        assert!(r.passed, "{}: {:?}", r.morphism, r.failures);
        assert!(r.checks > 0);
    }
}

#[test]
fn tampered_gamma_is_caught() {
    let m = DerMorphism::direct_sum_with_constant(1).with_gamma_tamper();
    let r = validate_morphism(&m, &policy()).unwrap();
    assert!(!r.passed);
    assert!(r.failures.iter().any(|f| f.contains("γ_id")));
}

#[test]
fn cocontinuity_routes_agree() {
    let c = Corpus::get();
    let cases = [
        (DerMorphism::tensor_with(2), pi(&c.corner), true),
        (DerMorphism::tensor_with(3), pi(&c.discrete2), true),
        (DerMorphism::direct_sum_with_constant(1), pi(&c.discrete2), false),
        (DerMorphism::direct_sum_with_constant(1), pi(&c.empty), false),
        (DerMorphism::direct_sum_with_constant(1), pi(&c.one), true),
        (DerMorphism::ran_along(&c.i_one()), pi(&c.discrete2), true),
        (DerMorphism::ran_along(&c.i_one()), pi(&c.corner), true),
        (DerMorphism::lan_along(&c.i_one()), pi(&c.corner), true),
        (DerMorphism::pullback_along(&c.i_corner()), c.i_one(), true),
        (DerMorphism::ran_along(&pi(&c.zigzag)), pi(&c.corner), false),
    ];
    for (m, u, want) in cases {
        let r = is_cocontinuous(&m, &u, &policy()).unwrap();
        assert!(r.routes_agree, "{r:?}");
        assert_eq!(r.along_u, want, "{r:?}");
        assert_eq!(r.witness.is_some(), !want);
    }
}

#[test]
fn kan_unit_and_counit_form_an_adjunction() {
    let c = Corpus::get();
    for u in [c.i_one(), pi(&c.one)] {
        let unit = Modification::KanUnit(u.clone());
        let counit = Modification::KanCounit(u.clone());
        for m in [&unit, &counit] {
            let r = validate_modification(m, &policy()).unwrap();
            assert!(r.passed, "{}: {:?}", r.morphism, r.failures);
        }
        let (l, p) = (DerMorphism::lan_along(&u), DerMorphism::pullback_along(&u));
        let r = check_morphism_adjunction(&l, &p, &unit, &counit, &policy()).unwrap();
        assert!(r.passed, "{:?}", r.failures);
        let bad = Modification::Scaled(Box::new(unit.clone()), 2);
        let r = check_morphism_adjunction(&l, &p, &bad, &counit, &policy()).unwrap();
        assert!(!r.passed);
    }
}

#[test]
fn pointedness() {
    assert!(DerMorphism::tensor_with(2).is_pointed().unwrap());
    assert!(DerMorphism::lan_along(&Corpus::get().i_one()).is_pointed().unwrap());
    assert!(!DerMorphism::direct_sum_with_constant(1).is_pointed().unwrap());
    assert!(DerMorphism::direct_sum_with_constant(0).is_pointed().unwrap());
}
