//! Comma categories, sieves and adjoints between small shapes.

use derivator::fincat::{comma_category, is_fully_faithful, sieve_kind, FinFunctor};
use derivator::repder::Corpus;

fn main() -> derivator::Result<()> {
    let c = Corpus::get();
    let i1 = c.i_one();
    let ic = c.i_corner();

    // (i_[1] / id): objects are arrows i(x) -> y in the corner.
    let comma = comma_category(&i1, &FinFunctor::identity(&c.corner))?;
    println!(
        "(i_[1]/id_⌜): {} objects, {} morphisms",
        comma.category.num_objects(),
        comma.category.num_morphisms()
    );
    for (a, x) in comma.objects.iter().enumerate() {
        println!(
            "  #{a}: {} --{}--> {}",
            c.one.object_label(x.left),
            c.corner.morphism_label(x.arrow),
            c.corner.object_label(x.right)
        );
    }

    for (name, u) in [("i_[1]", &i1), ("i_⌜", &ic)] {
        println!(
            "{name}: {:?}, fully faithful: {}",
            sieve_kind(u)?,
            is_fully_faithful(u).is_ok()
        );
    }
    println!("i_⌜ left adjoint: {}", derivator::exactness::is_left_adjoint(&ic)?);
    Ok(())
}
