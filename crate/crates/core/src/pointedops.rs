//! Pointed constructions: zero objects, extension by zero, cocartesian
//! squares, cofibers, the exceptional right adjoint of `i_[1]`, and the
//! additivity of dimension along cofiber sequences.

use std::sync::Arc;

use serde::Serialize;

use crate::derimorph::{lan_comparison, ran_comparison, DerMorphism};
use crate::error::{Error, Result};
use crate::fincat::{
    construct_standard, sieve_kind, FinCategory, FinFunctor, ObjId, SieveKind, StandardShape,
};
use crate::linalg::Matrix;
use crate::repder::{
    hom_space, lan, lan_counit, lan_unit, ran, ran_counit, Corpus, Diagram, DiagramMap,
    DerivatorView, Policy,
};

pub fn zero_diagram(k: &Arc<FinCategory>) -> Diagram {
    Diagram::zero(k)
}

/// The unique maps `0 -> X` and `X -> 0`, after confirming uniqueness
/// (both hom spaces are zero-dimensional).
pub fn zero_maps(x: &Diagram) -> Result<(DiagramMap, DiagramMap)> {
    let z = Diagram::zero(x.shape());
    if !hom_space(&z, x)?.is_empty() || !hom_space(x, &z)?.is_empty() {
        return Err(Error::Invariant("zero diagram has non-trivial maps".into()));
    }
    Ok((DiagramMap::zero(&z, x)?, DiagramMap::zero(x, &z)?))
}

#[derive(Clone, Debug)]
pub struct ExtensionByZero {
    pub kind: SieveKind,
    pub output: Diagram,
    /// `u* output ≅ X`: the counit (sieve) or the inverse of the unit
    /// (cosieve).
    pub restriction_iso: DiagramMap,
    /// Objects outside the image, all of which carry the zero space.
    pub off_image: Vec<ObjId>,
}

/// Right Kan extension along a sieve, left Kan extension along a cosieve.
pub fn extend_by_zero(u: &FinFunctor, x: &Diagram) -> Result<ExtensionByZero> {
    let kind = sieve_kind(u)?;
    let (output, restriction_iso) = if kind.is_sieve() {
        let (r, eps) = ran_counit(u, x)?;
        (r.output, eps)
    } else if kind.is_cosieve() {
        let (l, eta) = lan_unit(u, x)?;
        let inv = eta
            .inverse()
            .ok_or_else(|| Error::Invariant("unit along a cosieve is not invertible".into()))?;
        (l.output, inv)
    } else {
        return Err(Error::Precondition(
            "extension by zero needs a sieve or a cosieve".into(),
        ));
    };
    if !restriction_iso.is_iso() {
        return Err(Error::Invariant("restriction of the extension is not X".into()));
    }
    let k = u.target();
    let image: Vec<ObjId> = u.object_map().to_vec();
    let off_image: Vec<ObjId> = k.objects().filter(|a| !image.contains(a)).collect();
    if let Some(a) = off_image.iter().find(|a| output.dim(**a) != 0) {
        return Err(Error::Invariant(format!(
            "extension is non-zero at {}",
            k.object_label(*a)
        )));
    }
    Ok(ExtensionByZero {
        kind,
        output,
        restriction_iso,
        off_image,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocartesianCheck {
    pub cocartesian: bool,
    /// Rank and size of the comparison from the pushout to `X(1,1)`.
    pub rank: usize,
    pub size: (usize, usize),
}

/// Whether the canonical map from the pushout of the corner to `X(1,1)` is
/// invertible.
pub fn is_cocartesian(x: &Diagram) -> Result<CocartesianCheck> {
    let c = Corpus::get();
    let (_, eps) = lan_counit(&c.i_corner(), x)?;
    let top = c.square.object("(1,1)").expect("□ label");
    let m = eps.component(top);
    Ok(CocartesianCheck {
        cocartesian: m.is_invertible(),
        rank: m.rank(),
        size: m.shape(),
    })
}

#[derive(Clone, Debug)]
pub struct Cofiber {
    /// `A -> B` extended by zero to the corner.
    pub corner: Diagram,
    /// The cocartesian square.
    pub square: Diagram,
    /// `B -> C`, the bottom edge of the square.
    pub map: Matrix,
    pub cocartesian: CocartesianCheck,
}

impl Cofiber {
    pub fn object_dim(&self) -> usize {
        let sq = &Corpus::get().square;
        self.square.dim(sq.object("(1,1)").expect("□ label"))
    }
}

/// `cof(f)`: extend `f: A -> B` by zero along `i_[1]`, then take the left
/// Kan extension along `i_⌜`.
pub fn cofiber(f: &Diagram) -> Result<Cofiber> {
    let c = Corpus::get();
    let ext = extend_by_zero(&c.i_one(), f)?;
    let sq = lan(&c.i_corner(), &ext.output)?.output;
    let cocartesian = is_cocartesian(&sq)?;
    if !cocartesian.cocartesian {
        return Err(Error::Invariant("cofiber square is not cocartesian".into()));
    }
    let map = sq.mat(c.square.morphism("(1,0)->(1,1)").expect("□ label")).clone();
    Ok(Cofiber {
        corner: ext.output,
        square: sq,
        map,
        cocartesian,
    })
}

/// `i_[1]^! Y` for `Y` on `⌜`: `ker(Y(a) -> Y(c)) -> Y(b)`.
#[derive(Clone, Debug)]
pub struct ExceptionalAdjoint {
    pub output: Diagram,
    /// `ker -> Y(a)`.
    pub inclusion: Matrix,
    /// The limit of `0 -> Y(c) <- Y(a)` computed as a right Kan extension
    /// has the same dimension and the same image in `Y(a)`.
    pub ran_route_agrees: bool,
}

pub fn exceptional_right_adjoint_i1(y: &Diagram) -> Result<ExceptionalAdjoint> {
    let c = Corpus::get();
    let corner = &c.corner;
    if !(Arc::ptr_eq(y.shape(), corner) || **y.shape() == **corner) {
        return Err(Error::Shape("i_[1]^! takes diagrams on the corner".into()));
    }
    let m = |l: &str| y.mat(corner.morphism(l).expect("corner label")).clone();
    let (g, f) = (m("(0,0)->(0,1)"), m("(0,0)->(1,0)"));
    let inclusion = g.kernel_basis();
    let p = inclusion.cols();
    let b = y.dim(corner.object("(1,0)").expect("label"));
    let output = Diagram::from_generators(
        c.one.clone(),
        vec![p, b],
        &[(c.one.morphism("0->1").expect("label"), f.mul(&inclusion))],
    )?;

    let cospan = Arc::new(construct_standard(&StandardShape::Poset {
        objects: vec!["z".into(), "c".into(), "a".into()],
        relation: vec![("z".into(), "c".into()), ("a".into(), "c".into())],
    })?);
    let dc = g.rows();
    let da = g.cols();
    let z = Diagram::from_generators(
        cospan.clone(),
        vec![0, dc, da],
        &[
            (cospan.morphism("z->c").expect("label"), Matrix::zeros(dc, 0)),
            (cospan.morphism("a->c").expect("label"), g.clone()),
        ],
    )?;
    let pi = FinFunctor::to_terminal(&cospan, &c.e);
    let lim = ran(&pi, &z)?;
    let a_idx = lim
        .comma(ObjId(0))
        .objects
        .iter()
        .position(|o| o.right == ObjId(2))
        .expect("a in the slice");
    let leg = lim.leg(ObjId(0), ObjId(a_idx));
    let joint = Matrix::hstack(&[leg.clone(), inclusion.clone()], da);
    let ran_route_agrees = leg.cols() == p && leg.is_injective() && joint.rank() == p;
    Ok(ExceptionalAdjoint {
        output,
        inclusion,
        ran_route_agrees,
    })
}

/// Checks `Hom(i_* X, Y) ≅ Hom(X, i^! Y)` through explicit mutually inverse
/// maps on a basis, plus equality of dimensions.
pub fn exceptional_adjunction_check(x: &Diagram, y: &Diagram) -> Result<bool> {
    let c = Corpus::get();
    let (r, eps) = ran_counit(&c.i_one(), x)?;
    let ix = r.output;
    let ex = exceptional_right_adjoint_i1(y)?;
    let left = hom_space(&ix, y)?;
    let right = hom_space(x, &ex.output)?;
    if left.len() != right.len() {
        return Ok(false);
    }
    let (a, b, cc) = (
        c.corner.object("(0,0)").expect("label"),
        c.corner.object("(1,0)").expect("label"),
        c.corner.object("(0,1)").expect("label"),
    );
    let eps0 = eps.component(ObjId(0)).inverse().expect("counit along a sieve");
    let eps1 = eps.component(ObjId(1)).inverse().expect("counit along a sieve");
    for phi in &left {
        // ψ0 with ι ψ0 = φ_a ε0^{-1}; ψ1 = φ_b ε1^{-1}
        let target = phi.component(a).mul(&eps0);
        let Some(psi0) = ex.inclusion.solve(&target)? else {
            return Ok(false);
        };
        let psi1 = phi.component(b).mul(&eps1);
        let Ok(psi) = DiagramMap::new(x.clone(), ex.output.clone(), vec![psi0.clone(), psi1.clone()])
        else {
            return Ok(false);
        };
        let mut back = vec![Matrix::zeros(0, 0); 3];
        back[a.0] = ex.inclusion.mul(psi.component(ObjId(0))).mul(eps.component(ObjId(0)));
        back[b.0] = psi.component(ObjId(1)).mul(eps.component(ObjId(1)));
        back[cc.0] = Matrix::zeros(y.dim(cc), ix.dim(cc));
        if back.as_slice() != phi.components() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K0Report {
    pub dims: (usize, usize, usize),
    pub injective: bool,
    /// `dim B = dim A + dim C`; only claimed when `A -> B` is injective.
    pub additive: Option<bool>,
}

/// For a cocartesian square with zero corner `(0,1)`: if `A -> B` is
/// injective then `dim B = dim A + dim C`.
pub fn k0_additivity_check(x: &Diagram) -> Result<K0Report> {
    let sq = &Corpus::get().square;
    let o = |l: &str| sq.object(l).expect("□ label");
    if x.dim(o("(0,1)")) != 0 {
        return Err(Error::Precondition("corner (0,1) is not zero".into()));
    }
    if !is_cocartesian(x)?.cocartesian {
        return Err(Error::Precondition("square is not cocartesian".into()));
    }
    let f = x.mat(sq.morphism("(0,0)->(1,0)").expect("label"));
    let dims = (x.dim(o("(0,0)")), x.dim(o("(1,0)")), x.dim(o("(1,1)")));
    let injective = f.is_injective();
    Ok(K0Report {
        dims,
        injective,
        additive: injective.then_some(dims.1 == dims.0 + dims.2),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointedLevels {
    pub level: String,
    /// Colimit and limit of the empty diagram are both zero.
    pub zero: bool,
    /// The unique map from the initial object to the final one is an
    /// isomorphism, and both have no non-zero maps in or out on samples.
    pub initial_is_final: bool,
}

pub fn pointed_levels_check(
    view: &DerivatorView,
    k: &Arc<FinCategory>,
    policy: &Policy,
) -> Result<PointedLevels> {
    let c = Corpus::get();
    let from_empty = FinFunctor::from_empty(&c.empty, k);
    let z = Diagram::zero(&view.level(&c.empty)?);
    let init = view.lan(&from_empty, &z)?.output;
    let fin = view.ran(&from_empty, &z)?.output;
    let zero = init.is_zero_object() && fin.is_zero_object();
    let unique = DiagramMap::zero(&init, &fin)?;
    let mut ok = unique.is_iso() && hom_space(&init, &fin)?.is_empty();
    for x in policy.diagrams_limited(&view.level(k)?, 4) {
        ok &= hom_space(&init, &x)?.is_empty() && hom_space(&x, &fin)?.is_empty();
    }
    Ok(PointedLevels {
        level: k.name().to_string(),
        zero,
        initial_is_final: ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtZeroCommute {
    pub morphism: String,
    pub pointed: bool,
    pub kind: SieveKind,
    /// All comparisons between `Φ` and extension by zero invertible.
    pub commutes: bool,
    pub witness: Option<String>,
}

/// A pointed morphism commutes with extension by zero along a sieve (right
/// Kan extension) or cosieve (left Kan extension).
pub fn pointed_morphism_extzero_commute(
    phi: &DerMorphism,
    u: &FinFunctor,
    policy: &Policy,
) -> Result<ExtZeroCommute> {
    let kind = sieve_kind(u)?;
    if !kind.is_sieve() && !kind.is_cosieve() {
        return Err(Error::Precondition("functor is neither a sieve nor a cosieve".into()));
    }
    let mut commutes = true;
    let mut witness = None;
    for (i, x) in policy.diagrams(&phi.source.level(u.source())?).iter().enumerate() {
        let m = if kind.is_sieve() {
            ran_comparison(phi, u, x)?
        } else {
            lan_comparison(phi, u, x)?
        };
        if let Some(a) = m.non_iso_witness() {
            commutes = false;
            witness.get_or_insert_with(|| {
                format!("sample {i} at {}", m.source().shape().object_label(a))
            });
        }
    }
    Ok(ExtZeroCommute {
        morphism: phi.describe(),
        pointed: phi.is_pointed()?,
        kind,
        commutes,
        witness,
    })
}
