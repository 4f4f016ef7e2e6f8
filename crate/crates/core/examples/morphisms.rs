//! Morphisms of derivators: coherence of the structure maps and
//! cocontinuity along small functors.

use derivator::derimorph::{is_cocontinuous, validate_morphism, DerMorphism};
use derivator::fincat::FinFunctor;
use derivator::repder::{Corpus, Policy};

fn main() -> derivator::Result<()> {
    let c = Corpus::get();
    let policy = Policy { samples: 4, max_dim: 3, ..Policy::default() };
    let pi = FinFunctor::to_terminal(&c.discrete2, &c.e);

    let phis = [
        DerMorphism::tensor_with(2),
        DerMorphism::direct_sum_with_constant(1),
        DerMorphism::ran_along(&c.i_one()),
    ];
    for phi in &phis {
        let v = validate_morphism(phi, &policy)?;
        println!("{}: coherent {} ({} checks)", v.morphism, v.passed, v.checks);
        if phi.source == derivator::repder::DerivatorView::base() {
            let r = is_cocontinuous(phi, &pi, &policy)?;
            println!("  preserves coproducts of two: {}", r.along_u);
            if let Some(w) = &r.witness {
                println!("  witness: {w}");
            }
        }
    }
    Ok(())
}
