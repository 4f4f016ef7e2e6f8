//! Morphisms of derivators, their structure isomorphisms `γ`, cocontinuity
//! and modifications.
//!
//! A morphism `Φ` assigns to every level `K` a functor `Φ_K` and to every
//! `u: J -> K` an invertible `γ_u: u* Φ_K ⇒ Φ_J u*`, coherent with identities,
//! composition and 2-cells.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{
    comma_category, product_functor, terminal, FinCategory, FinFunctor, FinNatTrans,
    Orientation, OrientedSquare,
};
use crate::linalg::{rat, Matrix};
use crate::repder::{
    lan, lan_counit, lan_map, lan_unit, mate_component, pullback, pullback_map,
    ran, ran_counit, ran_map, ran_unit, Corpus, Diagram, DiagramMap, DerivatorView, MateSide,
    Policy,
};

#[derive(Clone, Debug)]
pub enum MorphismKind {
    Identity,
    /// `D^B -> D^A` for `u: A -> B`.
    PullbackAlong(FinFunctor),
    /// `D^A -> D^B` for `u: A -> B`.
    LanAlong(FinFunctor),
    RanAlong(FinFunctor),
    /// `X ↦ X ⊗ Q^n`, matrices `M ⊗ 1_n`.
    TensorWith(usize),
    /// `X ↦ X ⊕ Q^n` with the constant summand. Not pointed for `n > 0`.
    DirectSumWithConstant(usize),
    /// Apply the first, then the second.
    Composite(Box<DerMorphism>, Box<DerMorphism>),
}

#[derive(Clone, Debug)]
pub struct DerMorphism {
    pub kind: MorphismKind,
    pub source: DerivatorView,
    pub target: DerivatorView,
    /// Scales the constant block of every `γ` by 2. Only meaningful for
    /// [`MorphismKind::DirectSumWithConstant`]; breaks coherence.
    pub tampered: bool,
}

fn shifted(i: &Arc<FinCategory>) -> DerivatorView {
    DerivatorView::shifted(i.clone())
}

impl DerMorphism {
    pub fn identity(view: DerivatorView) -> Self {
        DerMorphism {
            kind: MorphismKind::Identity,
            source: view.clone(),
            target: view,
            tampered: false,
        }
    }

    pub fn pullback_along(u: &FinFunctor) -> Self {
        DerMorphism {
            kind: MorphismKind::PullbackAlong(u.clone()),
            source: shifted(u.target()),
            target: shifted(u.source()),
            tampered: false,
        }
    }

    pub fn lan_along(u: &FinFunctor) -> Self {
        DerMorphism {
            kind: MorphismKind::LanAlong(u.clone()),
            source: shifted(u.source()),
            target: shifted(u.target()),
            tampered: false,
        }
    }

    pub fn ran_along(u: &FinFunctor) -> Self {
        DerMorphism {
            kind: MorphismKind::RanAlong(u.clone()),
            source: shifted(u.source()),
            target: shifted(u.target()),
            tampered: false,
        }
    }

    pub fn tensor_with(n: usize) -> Self {
        DerMorphism {
            kind: MorphismKind::TensorWith(n),
            source: DerivatorView::base(),
            target: DerivatorView::base(),
            tampered: false,
        }
    }

    pub fn direct_sum_with_constant(n: usize) -> Self {
        DerMorphism {
            kind: MorphismKind::DirectSumWithConstant(n),
            source: DerivatorView::base(),
            target: DerivatorView::base(),
            tampered: false,
        }
    }

    /// Same morphism between the shifts `D^I -> E^I` (levelwise kinds only).
    pub fn on_view(mut self, view: DerivatorView) -> Result<Self> {
        match self.kind {
            MorphismKind::TensorWith(_)
            | MorphismKind::DirectSumWithConstant(_)
            | MorphismKind::Identity => {
                self.source = view.clone();
                self.target = view;
                Ok(self)
            }
            _ => Err(Error::Precondition(
                "only levelwise morphisms can be moved to another view".into(),
            )),
        }
    }

    pub fn with_gamma_tamper(mut self) -> Self {
        self.tampered = true;
        self
    }

    /// `second ∘ first`.
    pub fn then(self, second: DerMorphism) -> Result<Self> {
        if self.target != second.source {
            return Err(Error::Shape(format!(
                "cannot compose: {} vs {}",
                self.target.describe(),
                second.source.describe()
            )));
        }
        Ok(DerMorphism {
            source: self.source.clone(),
            target: second.target.clone(),
            kind: MorphismKind::Composite(Box::new(self), Box::new(second)),
            tampered: false,
        })
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            MorphismKind::Identity => "id".into(),
            MorphismKind::PullbackAlong(u) => format!("pullback along {}->{}", u.source().name(), u.target().name()),
            MorphismKind::LanAlong(u) => format!("lan along {}->{}", u.source().name(), u.target().name()),
            MorphismKind::RanAlong(u) => format!("ran along {}->{}", u.source().name(), u.target().name()),
            MorphismKind::TensorWith(n) => format!("tensor with Q^{n}"),
            MorphismKind::DirectSumWithConstant(n) => format!("direct sum with Q^{n}"),
            MorphismKind::Composite(a, b) => format!("({}) then ({})", a.describe(), b.describe()),
        }
    }

    /// `w × id_K` between the levels of the shifts by `w.source()` and
    /// `w.target()`.
    fn lifted(w: &FinFunctor, k: &Arc<FinCategory>) -> Result<FinFunctor> {
        let a = shifted(w.source()).level(k)?;
        let b = shifted(w.target()).level(k)?;
        Ok(product_functor(w, &FinFunctor::identity(k), &a, &b))
    }

    /// `Φ_K(X)`; `x` lives on the source level at `k`.
    pub fn apply(&self, k: &Arc<FinCategory>, x: &Diagram) -> Result<Diagram> {
        match &self.kind {
            MorphismKind::Identity => Ok(x.clone()),
            MorphismKind::PullbackAlong(w) => pullback(&Self::lifted(w, k)?, x),
            MorphismKind::LanAlong(w) => Ok(lan(&Self::lifted(w, k)?, x)?.output),
            MorphismKind::RanAlong(w) => Ok(ran(&Self::lifted(w, k)?, x)?.output),
            MorphismKind::TensorWith(n) => {
                let id = Matrix::identity(*n);
                Diagram::new(
                    x.shape().clone(),
                    x.dims().iter().map(|d| d * n).collect(),
                    x.mats().iter().map(|m| m.kron(&id)).collect(),
                )
            }
            MorphismKind::DirectSumWithConstant(n) => {
                let id = Matrix::identity(*n);
                Diagram::new(
                    x.shape().clone(),
                    x.dims().iter().map(|d| d + n).collect(),
                    x.mats().iter().map(|m| Matrix::block_diag(&[m.clone(), id.clone()])).collect(),
                )
            }
            MorphismKind::Composite(a, b) => b.apply(k, &a.apply(k, x)?),
        }
    }

    /// `Φ_K(φ)`.
    pub fn apply_map(&self, k: &Arc<FinCategory>, phi: &DiagramMap) -> Result<DiagramMap> {
        match &self.kind {
            MorphismKind::Identity => Ok(phi.clone()),
            MorphismKind::PullbackAlong(w) => pullback_map(&Self::lifted(w, k)?, phi),
            MorphismKind::LanAlong(w) => {
                let u = Self::lifted(w, k)?;
                lan_map(phi, &lan(&u, phi.source())?, &lan(&u, phi.target())?)
            }
            MorphismKind::RanAlong(w) => {
                let u = Self::lifted(w, k)?;
                ran_map(phi, &ran(&u, phi.source())?, &ran(&u, phi.target())?)
            }
            MorphismKind::TensorWith(n) => {
                let id = Matrix::identity(*n);
                DiagramMap::new(
                    self.apply(k, phi.source())?,
                    self.apply(k, phi.target())?,
                    phi.components().iter().map(|m| m.kron(&id)).collect(),
                )
            }
            MorphismKind::DirectSumWithConstant(n) => {
                let id = Matrix::identity(*n);
                DiagramMap::new(
                    self.apply(k, phi.source())?,
                    self.apply(k, phi.target())?,
                    phi.components()
                        .iter()
                        .map(|m| Matrix::block_diag(&[m.clone(), id.clone()]))
                        .collect(),
                )
            }
            MorphismKind::Composite(a, b) => b.apply_map(k, &a.apply_map(k, phi)?),
        }
    }

    /// `γ_u` at `x` (on the source level at `u.target()`):
    /// `u* Φ_K X -> Φ_J u* X`.
    pub fn gamma(&self, u: &FinFunctor, x: &Diagram) -> Result<DiagramMap> {
        let (j, k) = (u.source(), u.target());
        let lhs = self.target.pullback(u, &self.apply(k, x)?)?;
        let rhs = self.apply(j, &self.source.pullback(u, x)?)?;
        match &self.kind {
            MorphismKind::Identity | MorphismKind::PullbackAlong(_) | MorphismKind::TensorWith(_) => {
                DiagramMap::identity(&lhs).retype(lhs, rhs)
            }
            MorphismKind::DirectSumWithConstant(n) => {
                let s = if self.tampered { rat(2) } else { rat(1) };
                let comp = lhs
                    .dims()
                    .iter()
                    .map(|&d| {
                        Matrix::block_diag(&[Matrix::identity(d - n), Matrix::identity(*n).scale(&s)])
                    })
                    .collect();
                DiagramMap::new(lhs, rhs, comp)
            }
            MorphismKind::LanAlong(w) => {
                let s = Self::base_change_square(w, u, Orientation::DownLeft)?;
                let m = mate_component(&s, MateSide::Left, x)?;
                let inv = m.inverse().ok_or_else(|| {
                    Error::Invariant("base change for lan is not invertible".into())
                })?;
                inv.retype(lhs, rhs)
            }
            MorphismKind::RanAlong(w) => {
                let s = Self::base_change_square(w, u, Orientation::UpRight)?;
                mate_component(&s, MateSide::Right, x)?.retype(lhs, rhs)
            }
            MorphismKind::Composite(a, b) => {
                // u*Ψ_KΦ_K X -> Ψ_J u*Φ_K X -> Ψ_J Φ_J u* X
                let first = b.gamma(u, &a.apply(k, x)?)?;
                let second = b.apply_map(j, &a.gamma(u, x)?)?;
                second.compose(&first)
            }
        }
    }

    /// The commutative square `A×J -> A×K`, `B×J -> B×K` with vertical
    /// edges `w × id`.
    fn base_change_square(w: &FinFunctor, u: &FinFunctor, o: Orientation) -> Result<OrientedSquare> {
        let (j, k) = (u.source(), u.target());
        let (sa, sb) = (shifted(w.source()), shifted(w.target()));
        OrientedSquare::commutative(
            sa.lift(u)?,
            Self::lifted(w, j)?,
            sb.lift(u)?,
            Self::lifted(w, k)?,
            o,
        )
    }

    /// Whether `Φ` sends zero diagrams to zero diagrams on the corpus.
    pub fn is_pointed(&self) -> Result<bool> {
        for k in Corpus::get().shapes() {
            let lk = self.source.level(&k)?;
            if !self.apply(&k, &Diagram::zero(&lk))?.is_zero_object() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub morphism: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl MorphismReport {
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

/// Functors, composable pairs and 2-cells used to test coherence.
pub struct CoherenceCorpus {
    pub functors: Vec<FinFunctor>,
    /// `(v, u)` with `u ∘ v` defined.
    pub pairs: Vec<(FinFunctor, FinFunctor)>,
    pub cells: Vec<FinNatTrans>,
}

impl CoherenceCorpus {
    pub fn standard() -> Self {
        let c = Corpus::get();
        let e = terminal();
        let c0 = FinFunctor::classifier(&e, &c.one, crate::fincat::ObjId(0));
        let c1 = FinFunctor::classifier(&e, &c.one, crate::fincat::ObjId(1));
        let pi1 = FinFunctor::to_terminal(&c.one, &e);
        let pic = FinFunctor::to_terminal(&c.corner, &e);
        let functors = vec![
            c0.clone(),
            c1.clone(),
            pi1.clone(),
            c.i_one(),
            c.i_corner(),
            pic.clone(),
            FinFunctor::to_terminal(&c.discrete2, &e),
        ];
        let pairs = vec![
            (c0.clone(), pi1.clone()),
            (c.i_one(), c.i_corner()),
            (c.i_one(), pic.clone()),
            (c1.clone(), c.i_one()),
        ];
        let to_one = FinNatTrans::new(c0.clone(), c1.clone(), vec![c.one.morphism("0->1").unwrap()])
            .expect("0 ⇒ 1");
        let comma = comma_category(&FinFunctor::identity(&c.one), &c1).expect("comma");
        let (_, _, unit, _) =
            crate::fincat::final_object_adjunction(&c.one, &e).expect("[1] has a final object");
        let cells = vec![to_one, comma.cell, unit];
        CoherenceCorpus {
            functors,
            pairs,
            cells,
        }
    }
}

fn sample_source(
    phi: &DerMorphism,
    k: &Arc<FinCategory>,
    policy: &Policy,
) -> Result<Vec<Diagram>> {
    Ok(policy.diagrams(&phi.source.level(k)?))
}

/// Checks `γ` for invertibility, naturality, unitality, composition and
/// compatibility with 2-cells, and `Φ` for functoriality on maps.
pub fn validate_morphism(phi: &DerMorphism, policy: &Policy) -> Result<MorphismReport> {
    let cc = CoherenceCorpus::standard();
    let mut rep = MorphismReport {
        morphism: phi.describe(),
        passed: true,
        checks: 0,
        failures: Vec::new(),
    };
    let name = |u: &FinFunctor| format!("{}->{}", u.source().name(), u.target().name());
    for u in &cc.functors {
        for (i, x) in sample_source(phi, u.target(), policy)?.iter().enumerate() {
            let g = phi.gamma(u, x)?;
            rep.record(g.defect().is_none() && g.is_iso(), || {
                format!("γ at {} sample {i} is not a natural isomorphism", name(u))
            });
        }
    }
    for k in Corpus::get().shapes() {
        let id = FinFunctor::identity(&k);
        let xs = sample_source(phi, &k, policy)?;
        for (i, x) in xs.iter().enumerate() {
            let g = phi.gamma(&id, x)?;
            rep.record(g.is_identity(), || format!("γ_id on {} sample {i} is not the identity", k.name()));
        }
        let mut rng = policy.rng_for(&*phi.source.level(&k)?, 11);
        for w in xs.windows(3).step_by(3) {
            let f = crate::repder::random_map(&w[0], &w[1], &mut rng)?;
            let g = crate::repder::random_map(&w[1], &w[2], &mut rng)?;
            let lhs = phi.apply_map(&k, &g.compose(&f)?)?;
            let rhs = phi.apply_map(&k, &g)?.compose(&phi.apply_map(&k, &f)?)?;
            rep.record(lhs == rhs, || format!("Φ on {} does not preserve composition", k.name()));
        }
    }
    for (v, u) in &cc.pairs {
        let uv = u.after(v)?;
        for (i, x) in sample_source(phi, u.target(), policy)?.iter().enumerate() {
            // γ_{uv} = γ_v(u*X) ∘ v*(γ_u)
            let lhs = phi.gamma(&uv, x)?;
            let first = phi.target.pullback_map(v, &phi.gamma(u, x)?)?;
            let second = phi.gamma(v, &phi.source.pullback(u, x)?)?;
            let rhs = second.compose(&first)?;
            rep.record(lhs.components() == rhs.components(), || {
                format!("γ not compatible with {} then {} at sample {i}", name(v), name(u))
            });
        }
    }
    for alpha in &cc.cells {
        let (u, u2) = (alpha.source(), alpha.target());
        let (j, k) = (u.source(), u.target());
        for (i, x) in sample_source(phi, k, policy)?.iter().enumerate() {
            // Φ_J(α*_X) ∘ γ_u = γ_u' ∘ α*_{Φ_K X}
            let lhs = phi.apply_map(j, &phi.source.pullback_cell(alpha, x)?)?.compose(&phi.gamma(u, x)?)?;
            let rhs = phi
                .gamma(u2, x)?
                .compose(&phi.target.pullback_cell(alpha, &phi.apply(k, x)?)?)?;
            rep.record(lhs.components() == rhs.components(), || {
                format!("γ not compatible with a 2-cell on {} at sample {i}", name(u))
            });
        }
    }
    Ok(rep)
}

/// `u_! Φ_J X -> Φ_K u_! X`, the mate of `γ_u^{-1}`.
pub fn lan_comparison(phi: &DerMorphism, u: &FinFunctor, x: &Diagram) -> Result<DiagramMap> {
    let (j, k) = (u.source(), u.target());
    let (su, tu) = (phi.source.lift(u)?, phi.target.lift(u)?);
    let (l, eta) = lan_unit(&su, x)?;
    let fl = phi.apply(k, &l.output)?;
    let g_inv = phi
        .gamma(u, &l.output)?
        .inverse()
        .ok_or_else(|| Error::Invariant("γ is not invertible".into()))?;
    // ψ: Φ_J X -> Φ_J u* u_! X -> u* Φ_K u_! X
    let psi = g_inv.compose(&phi.apply_map(j, &eta)?.retype(phi.apply(j, x)?, g_inv.source().clone())?)?;
    let (l2, eps) = lan_counit(&tu, &fl)?;
    let l1 = lan(&tu, &phi.apply(j, x)?)?;
    let psi = psi.retype(l1.input.clone(), l2.input.clone())?;
    eps.compose(&lan_map(&psi, &l1, &l2)?)
}

/// `Φ_K u_* X -> u_* Φ_J X`, the mate of `γ_u`.
pub fn ran_comparison(phi: &DerMorphism, u: &FinFunctor, x: &Diagram) -> Result<DiagramMap> {
    let (j, k) = (u.source(), u.target());
    let (su, tu) = (phi.source.lift(u)?, phi.target.lift(u)?);
    let (r, eps) = ran_counit(&su, x)?;
    let z = phi.apply(k, &r.output)?;
    // χ: u*Φ_K u_*X -> Φ_J u* u_*X -> Φ_J X
    let g = phi.gamma(u, &r.output)?;
    let chi = phi.apply_map(j, &eps)?.retype(g.target().clone(), phi.apply(j, x)?)?.compose(&g)?;
    let (r1, eta) = ran_unit(&tu, &z)?;
    let r2 = ran(&tu, &phi.apply(j, x)?)?;
    let chi = chi.retype(r1.input.clone(), r2.input.clone())?;
    ran_map(&chi, &r1, &r2)?.compose(&eta)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocontinuityReport {
    pub morphism: String,
    pub functor: String,
    /// All comparisons `u_!Φ ⇒ Φu_!` invertible on samples.
    pub along_u: bool,
    /// All comparisons along the projections `(u/k) -> e` invertible.
    pub along_projections: bool,
    pub routes_agree: bool,
    pub witness: Option<String>,
    pub note: &'static str,
}

/// Cocontinuity along `u`, by the direct comparison and by the reduction
/// to colimits over the slices `(u/k)`.
pub fn is_cocontinuous(phi: &DerMorphism, u: &FinFunctor, policy: &Policy) -> Result<CocontinuityReport> {
    let mut witness = None;
    let mut along_u = true;
    for (i, x) in policy.diagrams(&phi.source.level(u.source())?).iter().enumerate() {
        let c = lan_comparison(phi, u, x)?;
        if let Some(a) = c.non_iso_witness() {
            along_u = false;
            witness.get_or_insert_with(|| {
                format!("along u, sample {i}, at {}", c.source().shape().object_label(a))
            });
        }
    }
    let e = terminal();
    let mut along_pi = true;
    for k in u.target().objects() {
        let kc = FinFunctor::classifier(&e, u.target(), k);
        let slice = comma_category(u, &kc)?;
        let p = FinFunctor::to_terminal(&slice.category, &e);
        for (i, x) in policy.diagrams(&phi.source.level(&slice.category)?).iter().enumerate() {
            let c = lan_comparison(phi, &p, x)?;
            if !c.is_iso() {
                along_pi = false;
                witness.get_or_insert_with(|| {
                    format!("colimit over ({}/{}) sample {i}", u.source().name(), u.target().object_label(k))
                });
            }
        }
    }
    Ok(CocontinuityReport {
        morphism: phi.describe(),
        functor: format!("{}->{}", u.source().name(), u.target().name()),
        along_u,
        along_projections: along_pi,
        routes_agree: along_u == along_pi,
        witness,
        note: crate::exactness::VERDICT_NOTE,
    })
}

/// Modifications between derivator morphisms.
#[derive(Clone, Debug)]
pub enum Modification {
    Identity(DerMorphism),
    Zero(DerMorphism, DerMorphism),
    /// `id ⇒ u* u_!` on `D^A`.
    KanUnit(FinFunctor),
    /// `u_! u* ⇒ id` on `D^B`.
    KanCounit(FinFunctor),
    /// Every component multiplied by an integer (breaks the triangle
    /// identities unless the factor is 1).
    Scaled(Box<Modification>, i64),
}

impl Modification {
    pub fn source(&self) -> Result<DerMorphism> {
        Ok(match self {
            Modification::Identity(f) => f.clone(),
            Modification::Zero(f, _) => f.clone(),
            Modification::KanUnit(u) => DerMorphism::identity(shifted(u.source())),
            Modification::KanCounit(u) => {
                DerMorphism::pullback_along(u).then(DerMorphism::lan_along(u))?
            }
            Modification::Scaled(m, _) => m.source()?,
        })
    }

    pub fn target(&self) -> Result<DerMorphism> {
        Ok(match self {
            Modification::Identity(f) => f.clone(),
            Modification::Zero(_, g) => g.clone(),
            Modification::KanUnit(u) => {
                DerMorphism::lan_along(u).then(DerMorphism::pullback_along(u))?
            }
            Modification::KanCounit(u) => DerMorphism::identity(shifted(u.target())),
            Modification::Scaled(m, _) => m.target()?,
        })
    }

    /// `μ_K` at `x`.
    pub fn component(&self, k: &Arc<FinCategory>, x: &Diagram) -> Result<DiagramMap> {
        match self {
            Modification::Identity(f) => Ok(DiagramMap::identity(&f.apply(k, x)?)),
            Modification::Zero(f, g) => DiagramMap::zero(&f.apply(k, x)?, &g.apply(k, x)?),
            Modification::KanUnit(u) => Ok(lan_unit(&DerMorphism::lifted(u, k)?, x)?.1),
            Modification::KanCounit(u) => Ok(lan_counit(&DerMorphism::lifted(u, k)?, x)?.1),
            Modification::Scaled(m, s) => Ok(m.component(k, x)?.scale(&rat(*s))),
        }
    }
}

/// Naturality and compatibility with `γ`:
/// `γ'_u ∘ u*μ_K = μ_J u* ∘ γ_u`.
pub fn validate_modification(mu: &Modification, policy: &Policy) -> Result<MorphismReport> {
    let (f, g) = (mu.source()?, mu.target()?);
    let mut rep = MorphismReport {
        morphism: format!("{} ⇒ {}", f.describe(), g.describe()),
        passed: true,
        checks: 0,
        failures: Vec::new(),
    };
    let cc = CoherenceCorpus::standard();
    for u in &cc.functors {
        let (j, k) = (u.source(), u.target());
        for (i, x) in sample_source(&f, k, policy)?.iter().enumerate() {
            let m = mu.component(k, x)?;
            rep.record(m.defect().is_none(), || format!("component not natural at sample {i}"));
            let lhs = g.gamma(u, x)?.compose(&f.target.pullback_map(u, &m)?.retype(
                f.target.pullback(u, &f.apply(k, x)?)?,
                g.target.pullback(u, &g.apply(k, x)?)?,
            )?)?;
            let rhs = mu.component(j, &f.source.pullback(u, x)?)?.compose(&f.gamma(u, x)?)?;
            rep.record(lhs.components() == rhs.components(), || {
                format!(
                    "not compatible with γ along {}->{} at sample {i}",
                    j.name(),
                    k.name()
                )
            });
        }
    }
    Ok(rep)
}

/// Triangle identities for `Φ ⊣ Ψ` with unit `η: id ⇒ ΨΦ` and counit
/// `ε: ΦΨ ⇒ id`, levelwise on the corpus.
pub fn check_morphism_adjunction(
    phi: &DerMorphism,
    psi: &DerMorphism,
    unit: &Modification,
    counit: &Modification,
    policy: &Policy,
) -> Result<MorphismReport> {
    let mut rep = MorphismReport {
        morphism: format!("{} ⊣ {}", phi.describe(), psi.describe()),
        passed: true,
        checks: 0,
        failures: Vec::new(),
    };
    for k in Corpus::get().shapes() {
        for (i, x) in sample_source(phi, &k, policy)?.iter().enumerate() {
            // ε_{ΦX} ∘ Φ(η_X) = id
            let fx = phi.apply(&k, x)?;
            let a = phi.apply_map(&k, &unit.component(&k, x)?)?;
            let b = counit.component(&k, &fx)?;
            let ok = b.components().iter().zip(a.components()).all(|(p, q)| p.mul(q).is_identity());
            rep.record(ok, || format!("εΦ ∘ Φη ≠ id on {} at sample {i}", k.name()));
        }
        for (i, y) in sample_source(psi, &k, policy)?.iter().enumerate() {
            // Ψ(ε_Y) ∘ η_{ΨY} = id
            let gy = psi.apply(&k, y)?;
            let a = unit.component(&k, &gy)?;
            let b = psi.apply_map(&k, &counit.component(&k, y)?)?;
            let ok = b.components().iter().zip(a.components()).all(|(p, q)| p.mul(q).is_identity());
            rep.record(ok, || format!("Ψε ∘ ηΨ ≠ id on {} at sample {i}", k.name()));
        }
    }
    Ok(rep)
}
