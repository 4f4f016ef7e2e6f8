//! Pointed operations: extension by zero, cofibers, the exceptional right
//! adjoint of `i_[1]` and additivity on K0.

use derivator::linalg::Matrix;
use derivator::pointedops::{
    cofiber, exceptional_adjunction_check, exceptional_right_adjoint_i1, extend_by_zero,
    k0_additivity_check,
};
use derivator::repder::{Corpus, Diagram};

fn main() -> derivator::Result<()> {
    let c = Corpus::get();
    let arrow = |m: Matrix| {
        let (r, k) = m.shape();
        Diagram::from_generators(c.one.clone(), vec![k, r], &[(c.one.morphism("0->1").unwrap(), m)])
    };
    let f = arrow(Matrix::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]))?;

    let ext = extend_by_zero(&c.i_one(), &f)?;
    println!("extension by zero ({:?}): dims {:?}", ext.kind, ext.output.dims());

    let cof = cofiber(&f)?;
    println!("cofiber of Q^2 -> Q^3: dim {}", cof.object_dim());
    println!("cocartesian: {}", cof.cocartesian.cocartesian);
    let k0 = k0_additivity_check(&cof.square)?;
    println!("K0: dims {:?}, additive {:?}", k0.dims, k0.additive);

    let span = Diagram::from_generators(
        c.corner.clone(),
        vec![2, 1, 2],
        &[
            (c.corner.morphism("(0,0)->(0,1)").unwrap(), Matrix::from_i64(&[&[1, 1]])),
            (c.corner.morphism("(0,0)->(1,0)").unwrap(), Matrix::identity(2)),
        ],
    )?;
    let exc = exceptional_right_adjoint_i1(&span)?;
    println!("i_[1]^! dims {:?}, ran route agrees {}", exc.output.dims(), exc.ran_route_agrees);
    println!("adjunction on (f, span): {}", exceptional_adjunction_check(&f, &span)?);
    Ok(())
}
