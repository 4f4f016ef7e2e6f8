//! The acceptance suite run by `corpus`: nine criteria over the corpus
//! shapes, each a list of named checks with verdicts.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::derimorph::{is_cocontinuous, DerMorphism};
use crate::error::Result;
use crate::exactness::{
    build_named_square, check_exact, check_exact_both, ff_kan_fully_faithful_check,
    mate_calculus_check, pasting_cancellation_check, SquareFamily,
};
use crate::fincat::{
    objects_by_label, sieve_kind, terminal, FinCategory, FinFunctor, Orientation, OrientedSquare,
};
use crate::linalg::Matrix;
use crate::pointedops::{
    cofiber, exceptional_adjunction_check, exceptional_right_adjoint_i1, extend_by_zero,
    k0_additivity_check, pointed_levels_check, pointed_morphism_extzero_commute,
};
use crate::repder::{
    check_axioms, random_matrix, Corpus, Diagram, DerivatorView, MateSide, Policy,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub samples: usize,
    pub max_dim: usize,
    pub criteria: Vec<Criterion>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }

    /// One line per check: criterion, statement, verdict.
    pub fn concordance(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.criteria {
            for k in &c.checks {
                out.push(format!(
                    "[{}] {}: {} ({})",
                    c.id,
                    k.name,
                    if k.passed { "pass" } else { "FAIL" },
                    k.detail
                ));
            }
        }
        out
    }
}

struct Builder {
    id: u8,
    title: &'static str,
    checks: Vec<Check>,
}

impl Builder {
    fn new(id: u8, title: &'static str) -> Self {
        Builder { id, title, checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check { name: name.into(), passed, detail });
    }

    fn finish(self) -> Criterion {
        Criterion {
            id: self.id,
            title: self.title.to_string(),
            passed: !self.checks.is_empty() && self.checks.iter().all(|c| c.passed),
            checks: self.checks,
        }
    }
}

fn pi(k: &Arc<FinCategory>) -> FinFunctor {
    FinFunctor::to_terminal(k, &terminal())
}

fn cls(k: &Arc<FinCategory>, label: &str) -> FinFunctor {
    FinFunctor::classifier(&terminal(), k, k.object(label).expect("corpus label"))
}

fn arrow(f: Matrix) -> Result<Diagram> {
    let c = Corpus::get();
    let g = c.one.morphism("0->1").expect("label");
    Diagram::from_generators(c.one.clone(), vec![f.cols(), f.rows()], &[(g, f)])
}

/// Second projection `□ -> [1]`, an opfibration.
fn square_projection() -> FinFunctor {
    let c = Corpus::get();
    FinFunctor::from_object_map(
        c.square.clone(),
        c.one.clone(),
        objects_by_label(&c.one, &["0", "1", "0", "1"]).expect("labels"),
    )
    .expect("projection")
}

fn exact_families() -> Vec<SquareFamily> {
    let c = Corpus::get();
    let mut out = vec![
        SquareFamily::AdjointLeft { l: cls(&c.one, "0") },
        SquareFamily::AdjointRight { r: cls(&c.one, "1") },
        SquareFamily::AdjointRight { r: cls(&c.square, "(1,1)") },
        SquareFamily::AdjointLeft { l: cls(&c.corner, "(0,0)") },
        SquareFamily::Comma { u1: c.i_one(), u2: cls(&c.corner, "(0,1)") },
        SquareFamily::Comma { u1: pi(&c.one), u2: pi(&c.discrete2) },
        SquareFamily::Comma { u1: cls(&c.two, "1"), u2: cls(&c.two, "2") },
        SquareFamily::FfUnit { u: c.i_corner() },
        SquareFamily::FfUnit { u: c.i_one() },
        SquareFamily::FfUnit { u: cls(&c.zigzag, "c") },
    ];
    for (u, k) in [(c.i_corner(), &c.square), (c.i_one(), &c.corner), (pi(&c.zigzag), &c.e)] {
        for obj in k.objects() {
            out.push(SquareFamily::Der4Left { u: u.clone(), k: obj });
            out.push(SquareFamily::Der4Right { u: u.clone(), k: obj });
        }
    }
    for w in [cls(&c.one, "0"), cls(&c.one, "1"), FinFunctor::identity(&c.one)] {
        out.push(SquareFamily::StrictPullback { w, q: square_projection() });
    }
    out
}

/// `1: e -> [1]` against the projection: commutes but is not exact.
fn negative_control() -> Result<OrientedSquare> {
    let c = Corpus::get();
    let e = terminal();
    OrientedSquare::commutative(
        cls(&c.one, "1"),
        FinFunctor::identity(&e),
        FinFunctor::identity(&e),
        pi(&c.one),
        Orientation::UpRight,
    )
}

/// The empty square over `0, 1: e -> [1]`.
fn empty_square() -> Result<OrientedSquare> {
    let c = Corpus::get();
    let e = terminal();
    OrientedSquare::commutative(
        FinFunctor::from_empty(&c.empty, &e),
        FinFunctor::from_empty(&c.empty, &e),
        cls(&c.one, "1"),
        cls(&c.one, "0"),
        Orientation::DownLeft,
    )
}

fn criterion_axioms(policy: &Policy) -> Criterion {
    let mut b = Builder::new(1, "axiom suite");
    match check_axioms(&DerivatorView::base(), policy) {
        Ok(reports) => {
            for r in reports {
                b.check(format!("{:?}", r.axiom), || {
                    Ok((r.passed, format!("{} checks, failures {:?}", r.checks, r.failures)))
                });
            }
        }
        Err(e) => b.check("axioms", || Err(e)),
    }
    b.finish()
}

fn criterion_mates(policy: &Policy) -> Criterion {
    let mut b = Builder::new(2, "mate calculus");
    let mut families = exact_families();
    let c = Corpus::get();
    families.push(SquareFamily::FfUnit { u: pi(&c.discrete2) });
    for f in families {
        let label = format!("mates of {} square", f.name());
        b.check(label, || {
            let s = build_named_square(&f)?;
            let r = mate_calculus_check(&s, policy)?;
            Ok((
                r.passed(),
                format!(
                    "{} checks; double mate {}, pasting {}, sides agree {}",
                    r.checks, r.double_mate, r.pasting, r.sides_agree
                ),
            ))
        });
    }
    for (name, s) in [("negative control", negative_control()), ("empty square", empty_square())] {
        b.check(format!("mates of {name}"), || {
            let r = mate_calculus_check(&s?, policy)?;
            Ok((r.passed(), format!("{} checks", r.checks)))
        });
    }
    b.finish()
}

fn criterion_exact(policy: &Policy) -> Criterion {
    let mut b = Builder::new(3, "exact-square families");
    let view = DerivatorView::base();
    for f in exact_families() {
        b.check(format!("{} square is exact", f.name()), || {
            let s = build_named_square(&f)?;
            let r = check_exact_both(&view, &s, policy)?;
            Ok((
                r.exact() == Some(true) && r.sides_agree(),
                format!("left {:?}, right {:?}", r.left.map(|v| v.exact), r.right.map(|v| v.exact)),
            ))
        });
    }
    b.check("negative control is not exact, reproducibly", || {
        let s = negative_control()?;
        let v1 = check_exact(&view, &s, MateSide::Left, policy)?;
        let v2 = check_exact(&view, &s, MateSide::Left, policy)?;
        let both = check_exact_both(&view, &s, policy)?;
        let ok = !v1.exact && v1.witness.is_some() && v1 == v2 && both.exact() == Some(false);
        Ok((ok, format!("witness {:?}", v1.witness)))
    });
    b.finish()
}

fn criterion_pasting(policy: &Policy) -> Criterion {
    let mut b = Builder::new(4, "pasting cancellation");
    let view = DerivatorView::base();
    let c = Corpus::get();
    let mut squares: Vec<(String, Result<OrientedSquare>)> = exact_families()
        .into_iter()
        .map(|f| (f.name().to_string(), build_named_square(&f)))
        .collect();
    squares.push(("ff-unit of π".into(), build_named_square(&SquareFamily::FfUnit { u: pi(&c.discrete2) })));
    squares.push(("negative control".into(), negative_control()));
    squares.push(("empty square".into(), empty_square()));
    for (name, s) in squares {
        b.check(format!("{name}: exact iff its comma pastings are"), || {
            let r = pasting_cancellation_check(&view, &s?, policy)?;
            Ok((
                r.equivalent,
                format!(
                    "square {}, {} horizontal, {} vertical",
                    r.square.exact,
                    r.horizontal.len(),
                    r.vertical.len()
                ),
            ))
        });
    }
    b.finish()
}

fn criterion_ff(policy: &Policy) -> Criterion {
    let mut b = Builder::new(5, "fully faithful Kan extensions");
    let view = DerivatorView::base();
    let c = Corpus::get();
    let mut fs = vec![("i_⌜".to_string(), c.i_corner()), ("i_[1]".to_string(), c.i_one())];
    for k in c.shapes() {
        fs.push((format!("id on {}", k.name()), FinFunctor::identity(&k)));
    }
    for (name, u) in fs {
        b.check(format!("unit and counit along {name} invertible"), || {
            let r = ff_kan_fully_faithful_check(&view, &u, policy)?;
            let ok = r.fully_faithful && r.lan_fully_faithful && r.ran_fully_faithful && r.consistent();
            Ok((ok, format!("witness {:?}", r.witness)))
        });
    }
    b.check("control: π on discrete(2) detected", || {
        let r = ff_kan_fully_faithful_check(&view, &pi(&c.discrete2), policy)?;
        Ok((!r.fully_faithful && r.consistent() && r.witness.is_some(), format!("witness {:?}", r.witness)))
    });
    b.finish()
}

fn criterion_pointed(policy: &Policy) -> Criterion {
    let mut b = Builder::new(6, "pointed suite");
    let c = Corpus::get();
    for u in c.functors() {
        let Ok(kind) = sieve_kind(&u) else { continue };
        if !kind.is_sieve() && !kind.is_cosieve() {
            continue;
        }
        let name = format!(
            "extension by zero along {} -> {} ({:?})",
            u.source().name(),
            u.target().name(),
            kind
        );
        b.check(name, || {
            let xs = policy.diagrams(u.source());
            for x in &xs {
                extend_by_zero(&u, x)?;
            }
            Ok((true, format!("{} inputs", xs.len())))
        });
    }
    for view in [DerivatorView::base(), DerivatorView::shifted(c.one.clone())] {
        for k in c.shapes() {
            b.check(format!("{} level {} is pointed", view.describe(), k.name()), || {
                let r = pointed_levels_check(&view, &k, policy)?;
                Ok((r.zero && r.initial_is_final, String::new()))
            });
        }
    }
    b.check("cofibers: cocartesian, dim C(f) = dim cod - rank f", || {
        let mut rng = policy.rng_for(&c.one, 61);
        let n = policy.samples.max(25);
        for i in 0..n {
            let (r, s) = (rng.gen_range(0..=policy.max_dim), rng.gen_range(0..=policy.max_dim));
            let f = random_matrix(r, s, &mut rng);
            let cof = cofiber(&arrow(f.clone())?)?;
            if !cof.cocartesian.cocartesian || cof.object_dim() != r - f.rank() {
                return Ok((false, format!("map {i}: {r}x{s} rank {}", f.rank())));
            }
        }
        Ok((true, format!("{n} random maps")))
    });
    b.check("cofiber of the zero map Q -> Q has dimension 1", || {
        let cof = cofiber(&arrow(Matrix::zeros(1, 1))?)?;
        Ok((cof.object_dim() == 1, format!("dim {}", cof.object_dim())))
    });
    b.check("i_[1]^!: hom bijection and kernel route = ran route", || {
        let xs = policy.diagrams(&c.one);
        let ys = policy.diagrams(&c.corner);
        let mut pairs = 0;
        for (x, y) in xs.iter().zip(&ys) {
            pairs += 1;
            if !exceptional_right_adjoint_i1(y)?.ran_route_agrees {
                return Ok((false, format!("routes differ on pair {pairs}")));
            }
            if !exceptional_adjunction_check(x, y)? {
                return Ok((false, format!("bijection fails on pair {pairs}")));
            }
        }
        Ok((true, format!("{pairs} pairs")))
    });
    b.finish()
}

fn criterion_morphisms(policy: &Policy) -> Criterion {
    let mut b = Builder::new(7, "morphism suite");
    let c = Corpus::get();
    let projections: Vec<FinFunctor> = c.shapes().iter().map(pi).collect();
    let mut along = projections.clone();
    along.extend([c.i_one(), c.i_corner()]);
    let cocont = |b: &mut Builder, phi: &DerMorphism, u: &FinFunctor, want: bool| {
        let name = format!(
            "{} along {} -> {}: {}",
            phi.describe(),
            u.source().name(),
            u.target().name(),
            if want { "cocontinuous" } else { "not cocontinuous" }
        );
        b.check(name, || {
            let r = is_cocontinuous(phi, u, policy)?;
            Ok((r.along_u == want && r.routes_agree, format!("witness {:?}", r.witness)))
        });
    };
    let i_star = DerMorphism::ran_along(&c.i_one());
    for u in &along {
        cocont(&mut b, &i_star, u, true);
    }
    let t = DerMorphism::tensor_with(2);
    for u in &along {
        cocont(&mut b, &t, u, true);
    }
    for u in [c.i_one(), cls(&c.one, "1"), c.i_corner()] {
        let name = format!("{} commutes with extension by zero along {}", t.describe(), u.source().name());
        b.check(name, || {
            let r = pointed_morphism_extzero_commute(&t, &u, policy)?;
            Ok((r.pointed && r.commutes, format!("{:?}", r.kind)))
        });
    }
    let ds = DerMorphism::direct_sum_with_constant(1);
    cocont(&mut b, &ds, &pi(&c.discrete2), false);
    b.check("routes agree on the corpus", || {
        let ms = [
            DerMorphism::tensor_with(2),
            DerMorphism::direct_sum_with_constant(1),
            DerMorphism::lan_along(&c.i_one()),
            DerMorphism::pullback_along(&c.i_corner()),
        ];
        let mut n = 0;
        for m in &ms {
            for u in &projections {
                n += 1;
                let r = is_cocontinuous(m, u, policy)?;
                if !r.routes_agree {
                    return Ok((false, format!("{} along π on {}", m.describe(), u.source().name())));
                }
            }
        }
        Ok((true, format!("{n} cases")))
    });
    b.finish()
}

fn criterion_k0(policy: &Policy) -> Criterion {
    let mut b = Builder::new(8, "K0 additivity");
    let c = Corpus::get();
    b.check("additivity on random mono-top cocartesian squares", || {
        let mut rng = policy.rng_for(&c.square, 83);
        let n = policy.samples.max(25);
        for i in 0..n {
            let a = rng.gen_range(0..=policy.max_dim);
            let bb = rng.gen_range(a..=policy.max_dim.max(a));
            let f = loop {
                let f = random_matrix(bb, a, &mut rng);
                if f.is_injective() {
                    break f;
                }
            };
            let r = k0_additivity_check(&cofiber(&arrow(f)?)?.square)?;
            if r.additive != Some(true) {
                return Ok((false, format!("square {i}: {r:?}")));
            }
        }
        Ok((true, format!("{n} squares")))
    });
    b.check("mono hypothesis guard on the zero map Q -> Q", || {
        let r = k0_additivity_check(&cofiber(&arrow(Matrix::zeros(1, 1))?)?.square)?;
        Ok((!r.injective && r.additive.is_none(), format!("dims {:?}", r.dims)))
    });
    b.finish()
}

fn first_eight(policy: &Policy) -> Vec<Criterion> {
    vec![
        criterion_axioms(policy),
        criterion_mates(policy),
        criterion_exact(policy),
        criterion_pasting(policy),
        criterion_ff(policy),
        criterion_pointed(policy),
        criterion_morphisms(policy),
        criterion_k0(policy),
    ]
}

pub fn run_suite(policy: &Policy) -> SuiteReport {
    let mut criteria = first_eight(policy);
    let mut b = Builder::new(9, "determinism");
    b.check("second run with the same seed is byte-identical", || {
        let again = first_eight(policy);
        let a = serde_json::to_string(&criteria).map_err(|e| crate::Error::Invariant(e.to_string()))?;
        let z = serde_json::to_string(&again).map_err(|e| crate::Error::Invariant(e.to_string()))?;
        Ok((a == z, format!("{} bytes", a.len())))
    });
    criteria.push(b.finish());
    SuiteReport {
        seed: policy.seed,
        samples: policy.samples,
        max_dim: policy.max_dim,
        criteria,
    }
}
