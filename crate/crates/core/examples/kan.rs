//! Pointwise Kan extensions: a pushout as a left Kan extension from the
//! corner to the square, and a pullback the other way round.

use derivator::linalg::Matrix;
use derivator::repder::{lan, lan_counit, ran, Corpus, Diagram};

fn main() -> derivator::Result<()> {
    let c = Corpus::get();
    let sq = &c.corner;
    // Q <- Q^2 -> Q^2, both legs onto the first coordinate.
    let span = Diagram::from_generators(
        sq.clone(),
        vec![2, 1, 2],
        &[
            (sq.morphism("(0,0)->(0,1)").unwrap(), Matrix::from_i64(&[&[1, 0]])),
            (sq.morphism("(0,0)->(1,0)").unwrap(), Matrix::from_i64(&[&[1, 0], &[0, 0]])),
        ],
    )?;
    let push = lan(&c.i_corner(), &span)?;
    println!("pushout dims on □: {:?}", push.output.dims());
    let corner = c.square.object("(1,1)").unwrap();
    println!("(1,1) leg from (0,0):\n{}", push.leg(corner, c.corner.object("(0,0)").unwrap()));

    let (_, counit) = lan_counit(&c.i_corner(), &push.output)?;
    println!("counit on a pushout square is iso: {}", counit.is_iso());

    let cospan = Diagram::constant(&c.one, 2);
    let r = ran(&c.i_one(), &cospan)?;
    println!("ran along i_[1] of a constant arrow: {:?}", r.output.dims());
    Ok(())
}
