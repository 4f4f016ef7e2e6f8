use std::sync::Arc;

use serde::Serialize;

use super::corpus::Corpus;
use super::diagram::{Diagram, DiagramMap};
use super::kan::{lan_counit, lan_map, lan_unit, pullback_map, ran_counit, ran_map, ran_unit};
use super::mate::MateSide;
use super::sample::{random_isomorphic, random_map, Policy};
use super::view::DerivatorView;
use crate::error::{Error, Result};
use crate::fincat::{
    comma_category, construct_standard, coproduct_inclusions, terminal, FinCategory, FinFunctor,
    ObjId, Orientation, OrientedSquare, StandardShape,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Der1,
    Der2,
    Der3Left,
    Der3Right,
    Der4Left,
    Der4Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub checks: usize,
    /// First few failures, as text.
    pub failures: Vec<String>,
}

impl AxiomReport {
    fn new(axiom: Axiom) -> Self {
        AxiomReport {
            axiom,
            passed: true,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.passed = false;
            if self.failures.len() < 8 {
                self.failures.push(what());
            }
        }
    }
}

/// `(u/k)` square: top `pr1`, left `π`, bottom `k`, right `u`, down-left.
/// Its left mate is `π_! pr1* ⇒ k* u_!`.
pub fn der4_left_square(u: &FinFunctor, k: ObjId) -> Result<OrientedSquare> {
    let kc = FinFunctor::classifier(&terminal(), u.target(), k);
    let c = comma_category(u, &kc)?;
    OrientedSquare::new(c.pr1, c.pr2, kc, u.clone(), c.cell, Orientation::DownLeft)
}

/// `(k/u)` square: top `pr2`, left `π`, bottom `k`, right `u`, up-right.
/// Its right mate is `k* u_* ⇒ π_* pr2*`.
pub fn der4_right_square(u: &FinFunctor, k: ObjId) -> Result<OrientedSquare> {
    let kc = FinFunctor::classifier(&terminal(), u.target(), k);
    let c = comma_category(&kc, u)?;
    OrientedSquare::new(c.pr2, c.pr1, kc, u.clone(), c.cell, Orientation::UpRight)
}

fn same_map(a: &DiagramMap, b: &DiagramMap) -> bool {
    a.components() == b.components()
}

/// Runs Der1 to Der4 over the corpus at `view`.
pub fn check_axioms(view: &DerivatorView, policy: &Policy) -> Result<Vec<AxiomReport>> {
    let mut out = vec![der1(view, policy)?, der2(view, policy)?];
    if view.has_left() {
        out.push(der3(view, policy, MateSide::Left)?);
    }
    if view.has_right() {
        out.push(der3(view, policy, MateSide::Right)?);
    }
    if view.has_left() {
        out.push(der4(view, policy, MateSide::Left)?);
    }
    if view.has_right() {
        out.push(der4(view, policy, MateSide::Right)?);
    }
    Ok(out)
}

/// Restriction to the summands of `A ⊔ B` is an equivalence: restricting and
/// reassembling is the identity in both directions.
pub fn der1(view: &DerivatorView, policy: &Policy) -> Result<AxiomReport> {
    let c = Corpus::get();
    let mut rep = AxiomReport::new(Axiom::Der1);
    for (a, b) in [
        (&c.e, &c.e),
        (&c.one, &c.corner),
        (&c.empty, &c.square),
    ] {
        let ab = Arc::new(construct_standard(&StandardShape::Coproduct(a.clone(), b.clone()))?);
        let (i1, i2) = coproduct_inclusions(a, b, &ab);
        let (l1, l2) = (view.lift(&i1)?, view.lift(&i2)?);
        let lab = view.level(&ab)?;
        let name = ab.name().to_string();
        for x in policy.diagrams(&lab) {
            let x1 = view.pullback(&i1, &x)?;
            let x2 = view.pullback(&i2, &x)?;
            let back = reassemble(&lab, &l1, &l2, &x1, &x2)?;
            rep.record(back == x, || format!("{name}: restriction then reassembly differs"));
        }
        let p1 = policy.diagrams(l1.source());
        let p2 = policy.diagrams(l2.source());
        for (x1, x2) in p1.iter().zip(p2.iter().rev()) {
            let y = reassemble(&lab, &l1, &l2, x1, x2)?;
            let ok = view.pullback(&i1, &y)? == *x1 && view.pullback(&i2, &y)? == *x2;
            rep.record(ok, || format!("{name}: reassembly then restriction differs"));
        }
    }
    Ok(rep)
}

/// The diagram on `A ⊔ B` with the given restrictions.
fn reassemble(
    ab: &Arc<FinCategory>,
    i1: &FinFunctor,
    i2: &FinFunctor,
    x1: &Diagram,
    x2: &Diagram,
) -> Result<Diagram> {
    let mut dims = vec![None; ab.num_objects()];
    let mut mats = vec![None; ab.num_morphisms()];
    for (i, x) in [(i1, x1), (i2, x2)] {
        for a in i.source().objects() {
            dims[i.on_object(a).0] = Some(x.dim(a));
        }
        for f in i.source().morphisms() {
            mats[i.on_morphism(f).0] = Some(x.mat(f).clone());
        }
    }
    let dims = dims
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Invariant("object outside both summands".into()))?;
    let mats = mats
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Invariant("morphism between summands".into()))?;
    Diagram::new(ab.clone(), dims, mats)
}

/// A map is invertible iff it is invertible at every object: pointwise
/// invertible maps get a natural inverse, and the zero map on a non-zero
/// diagram is caught with a witness object.
pub fn der2(view: &DerivatorView, policy: &Policy) -> Result<AxiomReport> {
    let mut rep = AxiomReport::new(Axiom::Der2);
    for k in Corpus::get().shapes() {
        let lk = view.level(&k)?;
        let mut rng = policy.rng_for(&lk, 2);
        for x in policy.diagrams(&lk) {
            let (_, phi) = random_isomorphic(&x, &mut rng)?;
            let pointwise = lk
                .objects()
                .all(|a| phi.component(a).is_invertible());
            let inv = phi.inverse();
            let ok = pointwise
                && inv.as_ref().is_some_and(|psi| {
                    psi.defect().is_none()
                        && phi.compose(psi).is_ok_and(|m| m.is_identity())
                        && psi.compose(&phi).is_ok_and(|m| m.is_identity())
                });
            rep.record(ok, || format!("{}: pointwise iso without inverse", k.name()));
            if !x.is_zero_object() {
                let z = DiagramMap::zero(&x, &x)?;
                let w = z.non_iso_witness();
                let ok = !z.is_iso() && w.is_some_and(|a| x.dim(a) > 0);
                rep.record(ok, || format!("{}: zero map reported invertible", k.name()));
            }
        }
    }
    Ok(rep)
}

/// Unit and counit of `u_! ⊣ u*` (or `u* ⊣ u_*`) satisfy the triangle
/// identities and induce mutually inverse hom bijections.
pub fn der3(view: &DerivatorView, policy: &Policy, side: MateSide) -> Result<AxiomReport> {
    let axiom = match side {
        MateSide::Left => Axiom::Der3Left,
        MateSide::Right => Axiom::Der3Right,
    };
    let mut rep = AxiomReport::new(axiom);
    for u in Corpus::get().functors() {
        let lu = view.lift(&u)?;
        let (lj, lk) = (lu.source().clone(), lu.target().clone());
        let xs = policy.diagrams(&lj);
        let ys = policy.diagrams(&lk);
        let mut rng = policy.rng_for(&lj, 3);
        let name = format!("{} -> {}", u.source().name(), u.target().name());
        for (x, y) in xs.iter().zip(ys.iter()) {
            let ok = match side {
                MateSide::Left => der3_left(&lu, x, y, &mut rng)?,
                MateSide::Right => der3_right(&lu, x, y, &mut rng)?,
            };
            for (i, good) in ok.iter().enumerate() {
                rep.record(*good, || format!("{name}: identity #{i} fails"));
            }
        }
    }
    Ok(rep)
}

fn der3_left(
    u: &FinFunctor,
    x: &Diagram,
    y: &Diagram,
    rng: &mut impl rand::Rng,
) -> Result<[bool; 4]> {
    let (l, eta) = lan_unit(u, x)?;
    let (l2, eps_l) = lan_counit(u, &l.output)?;
    let t1 = eps_l.compose(&lan_map(&eta, &l, &l2)?)?.is_identity();
    let (ly, eps_y) = lan_counit(u, y)?;
    let eta_uy = ly.adjunction_map()?;
    let t2 = pullback_map(u, &eps_y)?.compose(&eta_uy)?.is_identity();
    // φ: u_!X -> Y  ↦  u*φ ∘ η  ↦  ε ∘ u_!(-)
    let phi = random_map(&l.output, y, rng)?;
    let flat = pullback_map(u, &phi)?.compose(&eta)?;
    let back = eps_y.compose(&lan_map(&flat, &l, &ly)?)?;
    let r1 = same_map(&back, &phi);
    let psi = random_map(x, &ly.input, rng)?;
    let sharp = eps_y.compose(&lan_map(&psi, &l, &ly)?)?;
    let back = pullback_map(u, &sharp)?.compose(&eta)?;
    let r2 = same_map(&back, &psi);
    Ok([t1, t2, r1, r2])
}

fn der3_right(
    u: &FinFunctor,
    x: &Diagram,
    y: &Diagram,
    rng: &mut impl rand::Rng,
) -> Result<[bool; 4]> {
    let (r, eps) = ran_counit(u, x)?;
    let (r2, eta_r) = ran_unit(u, &r.output)?;
    let t1 = ran_map(&eps, &r2, &r)?.compose(&eta_r)?.is_identity();
    let (ry, eta_y) = ran_unit(u, y)?;
    let eps_uy = ry.adjunction_map()?;
    let t2 = eps_uy.compose(&pullback_map(u, &eta_y)?)?.is_identity();
    // φ: Y -> u_*X  ↦  ε ∘ u*φ  ↦  u_*(-) ∘ η
    let phi = random_map(y, &r.output, rng)?;
    let flat = eps.compose(&pullback_map(u, &phi)?)?;
    let back = ran_map(&flat, &ry, &r)?.compose(&eta_y)?;
    let r1 = same_map(&back, &phi);
    let psi = random_map(&ry.input, x, rng)?;
    let sharp = ran_map(&psi, &ry, &r)?.compose(&eta_y)?;
    let back = eps.compose(&pullback_map(u, &sharp)?)?;
    let r2 = same_map(&back, &psi);
    Ok([t1, t2, r1, r2])
}

/// The comma squares of every corpus functor and object have invertible
/// mates on all samples.
pub fn der4(view: &DerivatorView, policy: &Policy, side: MateSide) -> Result<AxiomReport> {
    let axiom = match side {
        MateSide::Left => Axiom::Der4Left,
        MateSide::Right => Axiom::Der4Right,
    };
    let mut rep = AxiomReport::new(axiom);
    for u in Corpus::get().functors() {
        for k in u.target().objects() {
            let s = match side {
                MateSide::Left => der4_left_square(&u, k)?,
                MateSide::Right => der4_right_square(&u, k)?,
            };
            let lj = view.mate_input_level(&s, side)?;
            for x in policy.diagrams(&lj) {
                let m = view.mate_component(&s, side, &x)?;
                rep.record(m.is_iso(), || {
                    format!(
                        "{} -> {} at {}: mate not invertible",
                        u.source().name(),
                        u.target().name(),
                        u.target().object_label(k)
                    )
                });
            }
        }
    }
    Ok(rep)
}
