use std::sync::Arc;

use derivator::fincat::{
    comma_category, construct_standard, enumerate_functors, opposite_functor, sieve_kind,
    FinCategory, FinFunctor, Orientation, OrientedSquare, PasteDirection, SieveKind, StandardShape,
};
use derivator::repder::Corpus;
use proptest::prelude::*;

fn small_shapes() -> Vec<Arc<FinCategory>> {
    let c = Corpus::get();
    vec![c.e.clone(), c.one.clone(), c.corner.clone(), c.discrete2.clone()]
}

fn pick(v: &[FinFunctor], i: usize) -> FinFunctor {
    v[i % v.len()].clone()
}

/// Right edge `u1`, bottom edge `u2`, with the comma cell in either
/// orientation.
fn comma_square(u1: &FinFunctor, u2: &FinFunctor, o: Orientation) -> OrientedSquare {
    match o {
        Orientation::DownLeft => {
            let k = comma_category(u1, u2).unwrap();
            OrientedSquare::new(k.pr1, k.pr2, u2.clone(), u1.clone(), k.cell, o).unwrap()
        }
        Orientation::UpRight => {
            let k = comma_category(u2, u1).unwrap();
            OrientedSquare::new(k.pr2, k.pr1, u2.clone(), u1.clone(), k.cell, o).unwrap()
        }
    }
}

fn dual(k: SieveKind) -> SieveKind {
    match k {
        SieveKind::Sieve => SieveKind::Cosieve,
        SieveKind::Cosieve => SieveKind::Sieve,
        k => k,
    }
}

#[test]
fn sieve_kinds_of_corpus_inclusions() {
    let c = Corpus::get();
    assert_eq!(sieve_kind(&c.i_one()).unwrap(), SieveKind::Sieve);
    assert_eq!(sieve_kind(&c.i_corner()).unwrap(), SieveKind::Sieve);
    let id = FinFunctor::identity(&c.square);
    assert_eq!(sieve_kind(&id).unwrap(), SieveKind::Both);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn horizontal_pasting_is_associative(
        a in 0usize..4, b in 0usize..4, d in 0usize..4,
        i in any::<usize>(), j in any::<usize>(), f in any::<usize>(), g in any::<usize>(),
        up in any::<bool>(),
    ) {
        let o = if up { Orientation::UpRight } else { Orientation::DownLeft };
        let s = small_shapes();
        let c = Corpus::get();
        let u1 = pick(&enumerate_functors(&s[a], &c.one), i);
        let u2 = pick(&enumerate_functors(&s[b], &c.one), j);
        let first = comma_square(&u1, &u2, o);
        let f = pick(&enumerate_functors(&c.one, &s[d]), f);
        let g = pick(&enumerate_functors(&s[d], &c.one), g);
        let second = OrientedSquare::commutative(u1.clone(), u1.clone(), f.clone(), f.clone(), o).unwrap();
        let third = OrientedSquare::commutative(f.clone(), f.clone(), g.clone(), g.clone(), o).unwrap();
        let h = PasteDirection::Horizontal;
        let left = first.paste(&second, h).unwrap().paste(&third, h).unwrap();
        let right = first.paste(&second.paste(&third, h).unwrap(), h).unwrap();
        prop_assert!(left == right);
    }

    #[test]
    fn vertical_pasting_is_associative(
        a in 0usize..4, b in 0usize..4, d in 0usize..4,
        i in any::<usize>(), j in any::<usize>(), f in any::<usize>(), g in any::<usize>(),
        up in any::<bool>(),
    ) {
        let o = if up { Orientation::UpRight } else { Orientation::DownLeft };
        let s = small_shapes();
        let c = Corpus::get();
        let u1 = pick(&enumerate_functors(&s[a], &c.one), i);
        let u2 = pick(&enumerate_functors(&s[b], &c.one), j);
        let first = comma_square(&u1, &u2, o);
        let f = pick(&enumerate_functors(&c.one, &s[d]), f);
        let g = pick(&enumerate_functors(&s[d], &c.one), g);
        let second = OrientedSquare::commutative(u2.clone(), u2.clone(), f.clone(), f.clone(), o).unwrap();
        let third = OrientedSquare::commutative(f.clone(), f.clone(), g.clone(), g.clone(), o).unwrap();
        let v = PasteDirection::Vertical;
        let top = first.paste(&second, v).unwrap().paste(&third, v).unwrap();
        let bottom = first.paste(&second.paste(&third, v).unwrap(), v).unwrap();
        prop_assert!(top == bottom);
    }

    #[test]
    fn sieves_and_cosieves_swap_under_opposites(a in 0usize..4, t in 0usize..3, i in any::<usize>()) {
        let s = small_shapes();
        let c = Corpus::get();
        let target = [c.one.clone(), c.corner.clone(), c.square.clone()][t].clone();
        let u = pick(&enumerate_functors(&s[a], &target), i);
        let op = |k: &Arc<FinCategory>| Arc::new(construct_standard(&StandardShape::Opposite(k.clone())).unwrap());
        let uop = opposite_functor(&u, &op(u.source()), &op(&target));
        match sieve_kind(&u) {
            Ok(k) => prop_assert_eq!(sieve_kind(&uop).unwrap(), dual(k)),
            Err(_) => prop_assert!(sieve_kind(&uop).is_err()),
        }
    }
}
