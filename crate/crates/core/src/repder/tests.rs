use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::fincat::{
    construct_standard, objects_by_label, terminal, FinCategory, FinFunctor, ObjId, StandardShape,
};
use crate::linalg::Matrix;

fn small() -> Policy {
    Policy {
        seed: 7,
        samples: 4,
        max_dim: 3,
    }
}

fn pi(k: &Arc<FinCategory>) -> FinFunctor {
    FinFunctor::to_terminal(k, &terminal())
}

fn mor(k: &FinCategory, l: &str) -> crate::fincat::MorId {
    k.morphism(l).unwrap()
}

/// Span `B <- A -> C` on `⌜`, as `(f: A -> B, g: A -> C)` with
/// `B = (1,0)`, `C = (0,1)`.
fn span(f: &Matrix, g: &Matrix) -> Diagram {
    let c = &Corpus::get().corner;
    let dims = vec![f.cols(), g.rows(), f.rows()];
    Diagram::from_generators(
        c.clone(),
        dims,
        &[
            (mor(c, "(0,0)->(1,0)"), f.clone()),
            (mor(c, "(0,0)->(0,1)"), g.clone()),
        ],
    )
    .unwrap()
}

#[test]
fn colimit_of_arrow_is_its_target() {
    let one = &Corpus::get().one;
    let m = Matrix::from_i64(&[&[1, 2], &[0, 0], &[3, 6]]);
    let x = Diagram::from_generators(one.clone(), vec![2, 3], &[(mor(one, "0->1"), m)]).unwrap();
    let l = lan(&pi(one), &x).unwrap();
    assert_eq!(l.output.dims(), &[3]);
    let r = ran(&pi(one), &x).unwrap();
    assert_eq!(r.output.dims(), &[2]);
}

#[test]
fn pushout_dimension_matches_rank_formula() {
    let f = Matrix::from_i64(&[&[1, 0], &[0, 1]]);
    let g = Matrix::from_i64(&[&[1, 1]]);
    let x = span(&f, &g);
    let l = lan(&pi(&Corpus::get().corner), &x).unwrap();
    // dim B + dim C - rank (f; -g)
    let stacked = Matrix::vstack(&[f.clone(), g.scale(&crate::linalg::rat(-1))], 2);
    assert_eq!(l.output.dim(ObjId(0)), 2 + 1 - stacked.rank());
    assert_eq!(l.output.dim(ObjId(0)), 1);
}

#[test]
fn coproduct_and_product_over_discrete() {
    let d2 = &Corpus::get().discrete2;
    let x = Diagram::from_generators(d2.clone(), vec![2, 3], &[]).unwrap();
    assert_eq!(lan(&pi(d2), &x).unwrap().output.dims(), &[5]);
    assert_eq!(ran(&pi(d2), &x).unwrap().output.dims(), &[5]);
    let z = Corpus::get().empty.clone();
    assert_eq!(lan(&pi(&z), &Diagram::zero(&z)).unwrap().output.dims(), &[0]);
    assert_eq!(ran(&pi(&z), &Diagram::zero(&z)).unwrap().output.dims(), &[0]);
}

#[test]
fn pullback_over_cospan_matches_rank_formula() {
    // Cospan a -> c <- b in the zigzag poset restricted to {a, b, c}.
    let c = Corpus::get();
    let z = &c.zigzag;
    let (sub, inc) = crate::fincat::full_subcategory(
        z,
        &objects_by_label(z, &["a", "b", "c"]).unwrap(),
        "cospan",
    )
    .unwrap();
    let _ = inc;
    let f = Matrix::from_i64(&[&[1, 0], &[0, 1], &[0, 0]]);
    let g = Matrix::from_i64(&[&[1], &[1], &[0]]);
    let x = Diagram::from_generators(
        sub.clone(),
        vec![2, 1, 3],
        &[(mor(&sub, "a->c"), f.clone()), (mor(&sub, "b->c"), g.clone())],
    )
    .unwrap();
    let r = ran(&pi(&sub), &x).unwrap();
    let side = Matrix::hstack(&[f, g.scale(&crate::linalg::rat(-1))], 3);
    assert_eq!(r.output.dim(ObjId(0)), 3 - side.rank());
}

#[test]
fn kan_along_fully_faithful_restricts_back() {
    let c = Corpus::get();
    let p = small();
    for u in [c.i_one(), c.i_corner()] {
        for x in p.diagrams(u.source()) {
            let (l, eta) = lan_unit(&u, &x).unwrap();
            assert!(eta.is_iso());
            assert_eq!(l.output.shape(), u.target());
            let (_, eps) = ran_counit(&u, &x).unwrap();
            assert!(eps.is_iso());
        }
    }
}

#[test]
fn extension_along_sieve_is_zero_off_image() {
    let c = Corpus::get();
    let u = c.i_one();
    let off = c.corner.object("(0,1)").unwrap();
    for x in small().diagrams(&c.one) {
        assert_eq!(ran(&u, &x).unwrap().output.dim(off), 0);
    }
}

#[test]
fn kan_maps_are_functorial() {
    let c = Corpus::get();
    let u = pi(&c.zigzag);
    let p = small();
    let xs = p.diagrams(&c.zigzag);
    let mut rng = p.rng_for(&c.zigzag, 9);
    for w in xs.windows(3) {
        let (a, b, d) = (&w[0], &w[1], &w[2]);
        let f = random_map(a, b, &mut rng).unwrap();
        let g = random_map(b, d, &mut rng).unwrap();
        let (la, lb, ld) = (lan(&u, a).unwrap(), lan(&u, b).unwrap(), lan(&u, d).unwrap());
        let lhs = lan_map(&g.compose(&f).unwrap(), &la, &ld).unwrap();
        let rhs = lan_map(&g, &lb, &ld).unwrap().compose(&lan_map(&f, &la, &lb).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let (ra, rb, rd) = (ran(&u, a).unwrap(), ran(&u, b).unwrap(), ran(&u, d).unwrap());
        let lhs = ran_map(&g.compose(&f).unwrap(), &ra, &rd).unwrap();
        let rhs = ran_map(&g, &rb, &rd).unwrap().compose(&ran_map(&f, &ra, &rb).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(lan_map(&DiagramMap::identity(a), &la, &la).unwrap().is_identity());
    }
}

#[test]
fn mates_invert_back_to_the_cell() {
    let c = Corpus::get();
    let p = small();
    for u in [c.i_one(), pi(&c.corner), c.i_corner()] {
        for k in u.target().objects() {
            for (s, side) in [
                (der4_left_square(&u, k).unwrap(), MateSide::Left),
                (der4_left_square(&u, k).unwrap(), MateSide::Right),
                (der4_right_square(&u, k).unwrap(), MateSide::Left),
                (der4_right_square(&u, k).unwrap(), MateSide::Right),
            ] {
                for y in p.diagrams(s.right.target()) {
                    let direct = pullback_cell(&s.cell, &y).unwrap();
                    let rebuilt = cell_from_mate(&s, side, &y).unwrap();
                    assert_eq!(direct, rebuilt, "{side:?}");
                }
            }
        }
    }
}

#[test]
fn shift_by_terminal_agrees_with_base() {
    let c = Corpus::get();
    let base = DerivatorView::base();
    let shifted = DerivatorView::shifted(c.e.clone());
    let p = small();
    for u in [c.i_one(), pi(&c.square), c.i_corner()] {
        for x in p.diagrams(u.source()) {
            let xs = x.rehome(&shifted.level(u.source()).unwrap()).unwrap();
            let a = base.lan(&u, &x).unwrap().output;
            let b = shifted.lan(&u, &xs).unwrap().output;
            assert_eq!((a.dims(), a.mats()), (b.dims(), b.mats()));
            let a = base.ran(&u, &x).unwrap().output;
            let b = shifted.ran(&u, &xs).unwrap().output;
            assert_eq!((a.dims(), a.mats()), (b.dims(), b.mats()));
        }
    }
}

#[test]
fn shifted_colimit_is_levelwise() {
    // In D^[1], the colimit over discrete(2) is the levelwise direct sum.
    let c = Corpus::get();
    let v = DerivatorView::shifted(c.one.clone());
    let lvl = v.level(&c.discrete2).unwrap();
    for x in small().diagrams(&lvl) {
        let l = v.lan(&pi(&c.discrete2), &x).unwrap().output;
        for i in 0..2 {
            assert_eq!(l.dim(ObjId(i)), x.dim(ObjId(2 * i)) + x.dim(ObjId(2 * i + 1)));
        }
    }
}

#[test]
fn half_views_refuse_the_missing_side() {
    let c = Corpus::get();
    let s = der4_left_square(&c.i_one(), ObjId(0)).unwrap();
    let x = Diagram::constant(&c.one, 1);
    let v = DerivatorView::base().left_only();
    assert!(v.mate_component(&s, MateSide::Left, &x).is_ok());
    assert!(matches!(
        v.mate_component(&s, MateSide::Right, &Diagram::constant(&c.e, 1)),
        Err(Error::MateUnavailable(_))
    ));
    assert!(matches!(
        DerivatorView::base().right_only().lan(&c.i_one(), &x),
        Err(Error::MateUnavailable(_))
    ));
}

#[test]
fn axioms_hold_on_small_samples() {
    for view in [DerivatorView::base(), DerivatorView::shifted(Corpus::get().one.clone())] {
        for r in check_axioms(&view, &Policy { samples: 2, ..small() }).unwrap() {
            assert!(r.passed, "{:?}: {:?}", r.axiom, r.failures);
            assert!(r.checks > 0);
        }
    }
}

#[test]
fn sampling_is_deterministic() {
    let c = Corpus::get();
    assert_eq!(small().diagrams(&c.square), small().diagrams(&c.square));
    let other = Policy { seed: 8, ..small() };
    assert_ne!(small().diagrams(&c.square), other.diagrams(&c.square));
}

#[test]
fn hom_space_of_constant_over_connected_is_matrices() {
    let c = Corpus::get();
    let x = Diagram::constant(&c.zigzag, 2);
    assert_eq!(hom_space(&x, &x).unwrap().len(), 4);
    let d = Diagram::constant(&c.discrete2, 2);
    assert_eq!(hom_space(&d, &d).unwrap().len(), 8);
}

#[test]
fn invalid_diagrams_are_rejected() {
    let c = Corpus::get();
    let sq = &c.square;
    let one = Matrix::from_i64(&[&[1]]);
    let two = Matrix::from_i64(&[&[2]]);
    // Non-commuting square.
    let r = Diagram::from_generators(
        sq.clone(),
        vec![1; 4],
        &[
            (mor(sq, "(0,0)->(0,1)"), one.clone()),
            (mor(sq, "(0,0)->(1,0)"), one.clone()),
            (mor(sq, "(0,1)->(1,1)"), one.clone()),
            (mor(sq, "(1,0)->(1,1)"), two),
        ],
    );
    assert!(matches!(r, Err(Error::InvalidDiagram(_))));
    let bad = Diagram::new(c.one.clone(), vec![1, 2], vec![one.clone(), one.clone(), Matrix::identity(2)]);
    assert!(matches!(bad, Err(Error::InvalidDiagram(_))));
}

fn arc(s: StandardShape) -> Arc<FinCategory> {
    Arc::new(construct_standard(&s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn random_diagrams_are_functors(seed in any::<u64>(), n in 0usize..4) {
        let shapes = [arc(StandardShape::Ordinal(n)), Corpus::get().square.clone(), Corpus::get().zigzag.clone()];
        let p = Policy { seed, samples: 3, max_dim: 3 };
        for s in &shapes {
            for x in p.diagrams(s) {
                prop_assert!(Diagram::new(s.clone(), x.dims().to_vec(), x.mats().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn colimit_over_final_object_is_evaluation(seed in any::<u64>(), n in 0usize..4) {
        let k = arc(StandardShape::Ordinal(n));
        let p = Policy { seed, samples: 3, max_dim: 3 };
        for x in p.diagrams(&k) {
            let l = lan(&pi(&k), &x).unwrap().output;
            prop_assert_eq!(l.dim(ObjId(0)), x.dim(ObjId(n)));
            let r = ran(&pi(&k), &x).unwrap().output;
            prop_assert_eq!(r.dim(ObjId(0)), x.dim(ObjId(0)));
        }
    }

    #[test]
    fn lan_counit_and_unit_are_natural(seed in any::<u64>()) {
        let c = Corpus::get();
        let p = Policy { seed, samples: 2, max_dim: 3 };
        let u = c.i_corner();
        for y in p.diagrams(&c.square) {
            let (_, eps) = lan_counit(&u, &y).unwrap();
            prop_assert!(eps.defect().is_none());
            let (_, eta) = ran_unit(&u, &y).unwrap();
            prop_assert!(eta.defect().is_none());
        }
    }
}
