use derivator::derimorph::DerMorphism;
use derivator::fincat::{FinFunctor, SieveKind};
use derivator::linalg::Matrix;
use derivator::pointedops::*;
use derivator::repder::{hom_space, Corpus, Diagram, DerivatorView, Policy};
use derivator::Error;
use proptest::prelude::*;

fn policy() -> Policy {
    Policy { seed: 7, samples: 3, max_dim: 2 }
}

fn arrow(f: Matrix) -> Diagram {
    let c = Corpus::get();
    Diagram::from_generators(
        c.one.clone(),
        vec![f.cols(), f.rows()],
        &[(c.one.morphism("0->1").unwrap(), f)],
    )
    .unwrap()
}

fn corner(f: Matrix, g: Matrix) -> Diagram {
    let c = Corpus::get();
    let k = &c.corner;
    let mut dims = vec![0; 3];
    dims[k.object("(0,0)").unwrap().0] = f.cols();
    dims[k.object("(1,0)").unwrap().0] = f.rows();
    dims[k.object("(0,1)").unwrap().0] = g.rows();
    Diagram::from_generators(
        k.clone(),
        dims,
        &[
            (k.morphism("(0,0)->(1,0)").unwrap(), f),
            (k.morphism("(0,0)->(0,1)").unwrap(), g),
        ],
    )
    .unwrap()
}

fn small_matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-2i64..=2, r * c).prop_map(move |v| {
            let rows: Vec<&[i64]> = v.chunks(c.max(1)).take(r).collect();
            if c == 0 {
                Matrix::zeros(r, 0)
            } else {
                Matrix::from_i64(&rows)
            }
        })
    })
}

#[test]
fn zero_has_only_zero_maps() {
    let c = Corpus::get();
    for x in policy().diagrams(&c.square) {
        let (i, t) = zero_maps(&x).unwrap();
        assert!(i.is_zero() && t.is_zero());
    }
    assert!(zero_diagram(&c.zigzag).is_zero_object());
}

#[test]
fn extension_by_zero_along_sieve_and_cosieve() {
    let c = Corpus::get();
    let x = arrow(Matrix::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]));
    let e = extend_by_zero(&c.i_one(), &x).unwrap();
    assert_eq!(e.kind, SieveKind::Sieve);
    assert_eq!(e.off_image.len(), 1);
    assert!(e.restriction_iso.is_iso());

    // the target of [1] is a cosieve in [1]
    let one = FinFunctor::classifier(&c.e, &c.one, c.one.object("1").unwrap());
    let y = Diagram::constant(&c.e, 3);
    let e = extend_by_zero(&one, &y).unwrap();
    assert!(e.kind.is_cosieve());
    assert_eq!(e.output.dims(), &[0, 3]);

    let o = |l| c.square.object(l).unwrap();
    let d = FinFunctor::from_object_map(c.one.clone(), c.square.clone(), vec![o("(0,0)"), o("(1,1)")])
        .unwrap();
    let x = Diagram::zero(&c.one);
    assert!(matches!(extend_by_zero(&d, &x), Err(Error::Precondition(_))));
}

#[test]
fn cofiber_dimension_matches_rank_formula() {
    let f = Matrix::from_i64(&[&[1, 2], &[2, 4], &[0, 0]]);
    let cof = cofiber(&arrow(f.clone())).unwrap();
    assert_eq!(cof.object_dim(), f.rows() - f.rank());
    assert!(cof.cocartesian.cocartesian);
    let sq = &Corpus::get().square;
    assert_eq!(cof.square.dim(sq.object("(0,1)").unwrap()), 0);
    assert!(cof.map.is_surjective());
}

#[test]
fn non_cocartesian_square_is_detected() {
    let c = Corpus::get();
    assert!(is_cocartesian(&Diagram::constant(&c.square, 1)).unwrap().cocartesian);
    let sq = &c.square;
    let mut dims = vec![1; 4];
    dims[sq.object("(1,1)").unwrap().0] = 0;
    let gens: Vec<_> = ["(0,0)->(1,0)", "(0,0)->(0,1)", "(1,0)->(1,1)", "(0,1)->(1,1)"]
        .iter()
        .map(|l| {
            let m = sq.morphism(l).unwrap();
            let (s, t) = (sq.source(m), sq.target(m));
            (m, Matrix::identity(dims[s.0]).block(0, 0, dims[t.0], dims[s.0]))
        })
        .collect();
    let x = Diagram::from_generators(sq.clone(), dims, &gens).unwrap();
    assert!(!is_cocartesian(&x).unwrap().cocartesian);
    assert!(matches!(k0_additivity_check(&x), Err(Error::Precondition(_))));
    let z = Diagram::zero(&c.square);
    assert!(is_cocartesian(&z).unwrap().cocartesian);
}

#[test]
fn exceptional_adjoint_is_kernel() {
    let f = Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 1]]);
    let g = Matrix::from_i64(&[&[1, 1, 0]]);
    let y = corner(f.clone(), g.clone());
    let ex = exceptional_right_adjoint_i1(&y).unwrap();
    assert_eq!(ex.output.dims(), &[g.cols() - g.rank(), f.rows()]);
    assert!(g.mul(&ex.inclusion).is_zero());
    assert!(ex.ran_route_agrees);
    let x = arrow(Matrix::from_i64(&[&[1], &[-1]]));
    assert!(exceptional_adjunction_check(&x, &y).unwrap());
}

#[test]
fn pointed_levels() {
    let c = Corpus::get();
    for view in [DerivatorView::base(), DerivatorView::shifted(c.one.clone())] {
        for k in [&c.e, &c.corner, &c.zigzag] {
            let r = pointed_levels_check(&view, k, &policy()).unwrap();
            assert!(r.zero && r.initial_is_final, "{r:?}");
        }
    }
}

#[test]
fn pointed_morphisms_commute_with_extension_by_zero() {
    let c = Corpus::get();
    let r = pointed_morphism_extzero_commute(&DerMorphism::tensor_with(2), &c.i_one(), &policy())
        .unwrap();
    assert!(r.pointed && r.commutes, "{r:?}");
    let r = pointed_morphism_extzero_commute(
        &DerMorphism::lan_along(&c.i_one()),
        &c.i_corner(),
        &policy(),
    )
    .unwrap();
    assert!(r.pointed && r.commutes, "{r:?}");
    let r = pointed_morphism_extzero_commute(
        &DerMorphism::direct_sum_with_constant(1),
        &c.i_one(),
        &policy(),
    )
    .unwrap();
    assert!(!r.pointed && !r.commutes && r.witness.is_some(), "{r:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cofiber_rank_and_k0(f in small_matrix(3)) {
        let cof = cofiber(&arrow(f.clone())).unwrap();
        prop_assert_eq!(cof.object_dim(), f.rows() - f.rank());
        let k0 = k0_additivity_check(&cof.square).unwrap();
        prop_assert_eq!(k0.injective, f.is_injective());
        if let Some(add) = k0.additive {
            prop_assert!(add);
        }
    }

    #[test]
    fn exceptional_adjoint_properties(f in small_matrix(2), g0 in small_matrix(2)) {
        let g = if g0.cols() == f.cols() { g0 } else { Matrix::zeros(g0.rows(), f.cols()) };
        let y = corner(f, g.clone());
        let ex = exceptional_right_adjoint_i1(&y).unwrap();
        prop_assert_eq!(ex.output.dims()[0], g.cols() - g.rank());
        prop_assert!(ex.ran_route_agrees);
        let x = arrow(Matrix::from_i64(&[&[1, 0]]));
        prop_assert!(exceptional_adjunction_check(&x, &y).unwrap());
        // i^! i_* X ≅ X
        let e = extend_by_zero(&Corpus::get().i_one(), &x).unwrap();
        let back = exceptional_right_adjoint_i1(&e.output).unwrap();
        prop_assert_eq!(back.output.dims(), x.dims());
        prop_assert_eq!(hom_space(&x, &back.output).unwrap().len(),
                        hom_space(&x, &x).unwrap().len());
    }
}
