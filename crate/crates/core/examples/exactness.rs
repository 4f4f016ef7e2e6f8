//! Homotopy exact squares: mates on named families, the pasting
//! cancellation test and a square that is not exact.

use derivator::exactness::{
    build_named_square, check_exact_both, mate_calculus_check, pasting_cancellation_check,
    SquareFamily,
};
use derivator::fincat::{FinFunctor, Orientation, OrientedSquare};
use derivator::repder::{Corpus, DerivatorView, Policy};

fn main() -> derivator::Result<()> {
    let c = Corpus::get();
    let policy = Policy { samples: 6, ..Policy::default() };
    let view = DerivatorView::base();

    let families = [
        SquareFamily::Comma { u1: c.i_one(), u2: c.i_one() },
        SquareFamily::Der4Left { u: c.i_corner(), k: c.square.object("(1,1)").unwrap() },
        SquareFamily::FfUnit { u: c.i_corner() },
    ];
    for f in &families {
        let s = build_named_square(f)?;
        let r = check_exact_both(&view, &s, &policy)?;
        let m = mate_calculus_check(&s, &policy)?;
        println!("{}: exact {:?}, mate calculus {}", f.name(), r.exact(), m.passed());
        let p = pasting_cancellation_check(&view, &s, &policy)?;
        println!("  pastings agree: {}", p.equivalent);
    }

    // A point of [1] over the point of e: commutes, but is not exact.
    let e = &c.e;
    let one = FinFunctor::classifier(e, &c.one, derivator::fincat::ObjId(1));
    let id = FinFunctor::identity(e);
    let bad = OrientedSquare::commutative(
        one,
        id.clone(),
        id,
        FinFunctor::to_terminal(&c.one, e),
        Orientation::UpRight,
    )?;
    let r = check_exact_both(&view, &bad, &policy)?;
    if let Some(w) = r.left.as_ref().and_then(|v| v.witness.as_ref()) {
        println!("not exact: rank {} of {:?} at {}", w.rank, w.size, w.object);
    }
    Ok(())
}
