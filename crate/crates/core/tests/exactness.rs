use std::sync::Arc;

use derivator::exactness::*;
use derivator::fincat::{
    construct_standard, objects_by_label, terminal, FinCategory, FinFunctor, ObjId,
    Orientation, OrientedSquare, StandardShape,
};
use derivator::repder::{Corpus, DerivatorView, MateSide, Policy};
use derivator::Error;

fn policy() -> Policy {
    Policy { seed: 7, samples: 4, max_dim: 3 }
}

fn pi(k: &Arc<FinCategory>) -> FinFunctor {
    FinFunctor::to_terminal(k, &terminal())
}

fn cls(k: &Arc<FinCategory>, label: &str) -> FinFunctor {
    FinFunctor::classifier(&terminal(), k, k.object(label).unwrap())
}

#[test]
fn comma_squares_are_exact() {
    let c = Corpus::get();
    let view = DerivatorView::base();
    let pairs = [
        (c.i_one(), cls(&c.corner, "(0,1)")),
        (pi(&c.one), pi(&c.discrete2)),
        (c.i_corner(), FinFunctor::identity(&c.square)),
        (cls(&c.two, "1"), cls(&c.two, "2")),
    ];
    for (u1, u2) in pairs {
        let s = build_named_square(&SquareFamily::Comma { u1, u2 }).unwrap();
        let r = check_exact_both(&view, &s, &policy()).unwrap();
        assert_eq!(r.exact(), Some(true));
        assert_eq!(r.left.unwrap().note, "falsification check, not a proof");
    }
}

#[test]
fn adjoint_squares() {
    let c = Corpus::get();
    let view = DerivatorView::base();
    // The final object 1 of [1] is right adjoint to the projection.
    let r = cls(&c.one, "1");
    let s = build_named_square(&SquareFamily::AdjointRight { r: r.clone() }).unwrap();
    assert_eq!(check_exact_both(&view, &s, &policy()).unwrap().exact(), Some(true));
    let l = cls(&c.one, "0");
    let s = build_named_square(&SquareFamily::AdjointLeft { l }).unwrap();
    assert_eq!(check_exact_both(&view, &s, &policy()).unwrap().exact(), Some(true));
    // 1 is not a left adjoint; the same shape of square is not exact.
    assert!(matches!(
        build_named_square(&SquareFamily::AdjointLeft { l: r.clone() }),
        Err(Error::Precondition(_))
    ));
    let e = terminal();
    let bad = OrientedSquare::commutative(
        r.clone(),
        FinFunctor::identity(&e),
        FinFunctor::identity(&e),
        pi(&c.one),
        Orientation::UpRight,
    )
    .unwrap();
    let v = check_exact(&view, &bad, MateSide::Left, &policy()).unwrap();
    assert!(!v.exact);
    let w = v.witness.unwrap();
    assert!(w.rank < w.size.0.max(w.size.1));
}

#[test]
fn ff_unit_square_detects_full_faithfulness() {
    let c = Corpus::get();
    let view = DerivatorView::base();
    for u in [c.i_one(), c.i_corner(), cls(&c.zigzag, "c")] {
        let r = ff_kan_fully_faithful_check(&view, &u, &policy()).unwrap();
        assert!(r.fully_faithful && r.consistent(), "{r:?}");
    }
    for u in [pi(&c.discrete2), pi(&c.one), derivator::fincat::FinFunctor::from_object_map(
        c.two.clone(), c.one.clone(), vec![ObjId(0), ObjId(0), ObjId(1)]).unwrap()] {
        let r = ff_kan_fully_faithful_check(&view, &u, &policy()).unwrap();
        assert!(!r.fully_faithful && r.consistent(), "{r:?}");
        assert!(r.witness.is_some());
    }
}

#[test]
fn strict_pullback_along_opfibration() {
    let c = Corpus::get();
    let view = DerivatorView::base();
    let sq = &c.square;
    // Second projection □ -> [1] (objects (i,j) ↦ j) is an opfibration.
    let proj = FinFunctor::from_object_map(
        sq.clone(),
        c.one.clone(),
        objects_by_label(&c.one, &["0", "1", "0", "1"]).unwrap(),
    )
    .unwrap();
    for w in [cls(&c.one, "1"), cls(&c.one, "0"), FinFunctor::identity(&c.one)] {
        let s = build_named_square(&SquareFamily::StrictPullback { w, q: proj.clone() }).unwrap();
        assert_eq!(check_exact_both(&view, &s, &policy()).unwrap().exact(), Some(true));
    }
    // The object 0 of [1] is not an opfibration, and the empty pullback of it
    // against 1 is not exact.
    let q = cls(&c.one, "0");
    let w = cls(&c.one, "1");
    assert!(matches!(
        build_named_square(&SquareFamily::StrictPullback { w: w.clone(), q: q.clone() }),
        Err(Error::Precondition(_))
    ));
    let z = Corpus::get().empty.clone();
    let e = terminal();
    let s = OrientedSquare::commutative(
        FinFunctor::from_empty(&z, &e),
        FinFunctor::from_empty(&z, &e),
        w,
        q,
        Orientation::DownLeft,
    )
    .unwrap();
    let r = check_exact_both(&view, &s, &policy()).unwrap();
    assert_eq!(r.exact(), Some(false));
    assert!(r.sides_agree());
}

#[test]
fn pasting_cancellation_agrees() {
    let c = Corpus::get();
    let view = DerivatorView::base();
    let e = terminal();
    let z = c.empty.clone();
    let not_exact = OrientedSquare::commutative(
        FinFunctor::from_empty(&z, &e),
        FinFunctor::from_empty(&z, &e),
        cls(&c.one, "1"),
        cls(&c.one, "0"),
        Orientation::DownLeft,
    )
    .unwrap();
    let exact = build_named_square(&SquareFamily::Comma {
        u1: c.i_one(),
        u2: cls(&c.corner, "(0,1)"),
    })
    .unwrap();
    let adj = build_named_square(&SquareFamily::AdjointLeft { l: cls(&c.one, "0") }).unwrap();
    for (s, want) in [(not_exact, false), (exact, true), (adj, true)] {
        let r = pasting_cancellation_check(&view, &s, &policy()).unwrap();
        assert_eq!(r.square.exact, want);
        assert!(r.equivalent, "{r:?}");
    }
}

#[test]
fn rl_adjunction_holds_on_corpus_pairs() {
    let c = Corpus::get();
    let pairs = [
        (c.i_one(), c.i_one()),
        (c.i_corner(), FinFunctor::identity(&c.square)),
        (pi(&c.one), pi(&c.discrete2)),
        (FinFunctor::identity(&c.zigzag), FinFunctor::identity(&c.zigzag)),
    ];
    for (u1, u2) in pairs {
        for j2 in u2.source().objects() {
            let f = rl_adjunction(&u1, &u2, j2).unwrap();
            assert!(f.check.holds, "{:?}", f.check.failure);
        }
    }
}

#[test]
fn shifted_views_give_the_same_verdicts() {
    let c = Corpus::get();
    let s = build_named_square(&SquareFamily::FfUnit { u: pi(&c.discrete2) }).unwrap();
    for view in [DerivatorView::base(), DerivatorView::shifted(c.one.clone())] {
        let r = check_exact_both(&view, &s, &policy()).unwrap();
        assert_eq!(r.exact(), Some(false));
    }
    let arc = |s| Arc::new(construct_standard(&s).unwrap());
    let v = DerivatorView::shifted(arc(StandardShape::Discrete(2)));
    let s = build_named_square(&SquareFamily::Der4Left { u: c.i_corner(), k: ObjId(3) }).unwrap();
    assert_eq!(check_exact_both(&v, &s, &policy()).unwrap().exact(), Some(true));
}

#[test]
fn mate_calculus_on_named_squares() {
    let c = Corpus::get();
    let squares = [
        build_named_square(&SquareFamily::Der4Left { u: c.i_corner(), k: ObjId(3) }).unwrap(),
        build_named_square(&SquareFamily::Der4Right { u: c.i_one(), k: ObjId(1) }).unwrap(),
        build_named_square(&SquareFamily::Comma { u1: c.i_one(), u2: cls(&c.corner, "(0,1)") })
            .unwrap(),
        build_named_square(&SquareFamily::AdjointLeft { l: cls(&c.one, "0") }).unwrap(),
        build_named_square(&SquareFamily::FfUnit { u: pi(&c.discrete2) }).unwrap(),
    ];
    for s in &squares {
        let r = mate_calculus_check(s, &policy()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.checks > 10);
    }
}
