//! Runs the derivator axioms on `Vect` and on a shifted view.

use derivator::repder::{check_axioms, Corpus, DerivatorView, Policy};

fn main() -> derivator::Result<()> {
    let policy = Policy { samples: 4, max_dim: 3, ..Policy::default() };
    for view in [DerivatorView::base(), DerivatorView::shifted(Corpus::get().one.clone())] {
        println!("{}", view.describe());
        for r in check_axioms(&view, &policy)? {
            println!("  {:?}: {} ({} checks)", r.axiom, if r.passed { "ok" } else { "FAIL" }, r.checks);
            for f in &r.failures {
                println!("    {f}");
            }
        }
    }
    Ok(())
}
