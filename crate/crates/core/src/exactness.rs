//! Exactness of oriented squares, decided by sampling the mates.
//!
//! A square is exact when its mate is invertible; since the represented
//! derivator has both Kan extensions, left and right mates are conjugate and
//! either one decides. Every verdict here comes from finitely many sampled
//! diagrams, so a failure is a certificate and a pass is evidence.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{
    comma_category, extremal_object, is_fully_faithful, is_grothendieck_opfibration,
    strict_pullback, terminal, CommaObject, Extremal, FinFunctor, FinNatTrans, ObjId,
    Orientation, OrientedSquare, PasteDirection,
};
use crate::fincat::{check_adjunction, AdjunctionCheck};
use crate::repder::{
    cell_from_mate, der4_left_square, der4_right_square, lan_unit, mate_input_shape,
    mate_pasting_check, pullback_cell, ran_counit, DerivatorView, MateSide, Policy,
};

pub const VERDICT_NOTE: &str = "falsification check, not a proof";

/// A sampled input on which a mate failed to be invertible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessWitness {
    pub sample: usize,
    /// Dimensions of the input diagram.
    pub input_dims: Vec<usize>,
    /// Label of the object where the mate component is singular.
    pub object: String,
    pub rank: usize,
    pub size: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessVerdict {
    pub side: MateSide,
    pub exact: bool,
    pub samples: usize,
    pub witness: Option<ExactnessWitness>,
    pub note: &'static str,
}

/// Checks invertibility of one mate of `s` on the policy's samples.
pub fn check_exact(
    view: &DerivatorView,
    s: &OrientedSquare,
    side: MateSide,
    policy: &Policy,
) -> Result<ExactnessVerdict> {
    let level = view.mate_input_level(s, side)?;
    let xs = policy.diagrams(&level);
    let n = xs.len();
    for (i, x) in xs.into_iter().enumerate() {
        let m = view.mate_component(s, side, &x)?;
        if let Some(a) = m.non_iso_witness() {
            let c = m.component(a);
            return Ok(ExactnessVerdict {
                side,
                exact: false,
                samples: i + 1,
                witness: Some(ExactnessWitness {
                    sample: i,
                    input_dims: x.dims().to_vec(),
                    object: m.source().shape().object_label(a).to_string(),
                    rank: c.rank(),
                    size: c.shape(),
                }),
                note: VERDICT_NOTE,
            });
        }
    }
    Ok(ExactnessVerdict {
        side,
        exact: true,
        samples: n,
        witness: None,
        note: VERDICT_NOTE,
    })
}

/// Left and right verdicts. They must agree whenever both mates exist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub left: Option<ExactnessVerdict>,
    pub right: Option<ExactnessVerdict>,
}

impl ExactnessReport {
    pub fn exact(&self) -> Option<bool> {
        match (&self.left, &self.right) {
            (Some(l), Some(r)) if l.exact == r.exact => Some(l.exact),
            (Some(_), Some(_)) => None,
            (Some(v), None) | (None, Some(v)) => Some(v.exact),
            (None, None) => None,
        }
    }

    pub fn sides_agree(&self) -> bool {
        match (&self.left, &self.right) {
            (Some(l), Some(r)) => l.exact == r.exact,
            _ => true,
        }
    }
}

pub fn check_exact_both(
    view: &DerivatorView,
    s: &OrientedSquare,
    policy: &Policy,
) -> Result<ExactnessReport> {
    let run = |side| -> Result<Option<ExactnessVerdict>> {
        if view.mate_available(side) {
            check_exact(view, s, side, policy).map(Some)
        } else {
            Ok(None)
        }
    };
    Ok(ExactnessReport {
        left: run(MateSide::Left)?,
        right: run(MateSide::Right)?,
    })
}

/// The square families with known exactness behaviour.
#[derive(Clone, Debug)]
pub enum SquareFamily {
    /// `(u/k)` square of Der4, down-left.
    Der4Left { u: FinFunctor, k: ObjId },
    /// `(k/u)` square of Der4, up-right.
    Der4Right { u: FinFunctor, k: ObjId },
    /// `(u1/u2)` with top `pr1`, left `pr2`, right `u1`, bottom `u2`.
    Comma { u1: FinFunctor, u2: FinFunctor },
    /// `l` on top, projections down, identity on `e` below; up-right.
    /// Requires `l` to be a left adjoint.
    AdjointLeft { l: FinFunctor },
    /// `r` on top, projections down, identity on `e` below; down-left.
    /// Requires `r` to be a right adjoint.
    AdjointRight { r: FinFunctor },
    /// Identities on top and left, `u` on bottom and right.
    FfUnit { u: FinFunctor },
    /// `C ×_D B` over `w: C -> D` and `q: B -> D`; requires `q` to be a
    /// Grothendieck opfibration.
    StrictPullback { w: FinFunctor, q: FinFunctor },
}

impl SquareFamily {
    pub fn name(&self) -> &'static str {
        match self {
            SquareFamily::Der4Left { .. } => "der4-left",
            SquareFamily::Der4Right { .. } => "der4-right",
            SquareFamily::Comma { .. } => "comma",
            SquareFamily::AdjointLeft { .. } => "adjoint-left",
            SquareFamily::AdjointRight { .. } => "adjoint-right",
            SquareFamily::FfUnit { .. } => "ff-unit",
            SquareFamily::StrictPullback { .. } => "strict-pullback",
        }
    }
}

/// Whether `l` has a right adjoint: every `(l/b)` has a final object.
pub fn is_left_adjoint(l: &FinFunctor) -> Result<bool> {
    let e = terminal();
    for b in l.target().objects() {
        let c = comma_category(l, &FinFunctor::classifier(&e, l.target(), b))?;
        if extremal_object(&c.category, Extremal::Final).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `r` has a left adjoint: every `(b/r)` has an initial object.
pub fn is_right_adjoint(r: &FinFunctor) -> Result<bool> {
    let e = terminal();
    for b in r.target().objects() {
        let c = comma_category(&FinFunctor::classifier(&e, r.target(), b), r)?;
        if extremal_object(&c.category, Extremal::Initial).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn build_named_square(family: &SquareFamily) -> Result<OrientedSquare> {
    let e = terminal();
    match family {
        SquareFamily::Der4Left { u, k } => der4_left_square(u, *k),
        SquareFamily::Der4Right { u, k } => der4_right_square(u, *k),
        SquareFamily::Comma { u1, u2 } => {
            let c = comma_category(u1, u2)?;
            OrientedSquare::new(c.pr1, c.pr2, u2.clone(), u1.clone(), c.cell, Orientation::DownLeft)
        }
        SquareFamily::AdjointLeft { l } => {
            if !is_left_adjoint(l)? {
                return Err(Error::Precondition("functor is not a left adjoint".into()));
            }
            OrientedSquare::commutative(
                l.clone(),
                FinFunctor::to_terminal(l.source(), &e),
                FinFunctor::identity(&e),
                FinFunctor::to_terminal(l.target(), &e),
                Orientation::UpRight,
            )
        }
        SquareFamily::AdjointRight { r } => {
            if !is_right_adjoint(r)? {
                return Err(Error::Precondition("functor is not a right adjoint".into()));
            }
            OrientedSquare::commutative(
                r.clone(),
                FinFunctor::to_terminal(r.source(), &e),
                FinFunctor::identity(&e),
                FinFunctor::to_terminal(r.target(), &e),
                Orientation::DownLeft,
            )
        }
        SquareFamily::FfUnit { u } => OrientedSquare::commutative(
            FinFunctor::identity(u.source()),
            FinFunctor::identity(u.source()),
            u.clone(),
            u.clone(),
            Orientation::DownLeft,
        ),
        SquareFamily::StrictPullback { w, q } => {
            if let Err(wit) = is_grothendieck_opfibration(q) {
                return Err(Error::Precondition(format!(
                    "right edge is not an opfibration: {}",
                    wit
                )));
            }
            let pb = strict_pullback(w, q)?;
            OrientedSquare::commutative(pb.v, pb.p, w.clone(), q.clone(), Orientation::DownLeft)
        }
    }
}

/// The comma square over `c ∈ C` whose right edge is the left edge of `s`.
pub fn comma_left_of(s: &OrientedSquare, c: ObjId) -> Result<OrientedSquare> {
    let p = &s.left;
    let cc = FinFunctor::classifier(&terminal(), p.target(), c);
    match s.orientation {
        Orientation::DownLeft => {
            let k = comma_category(p, &cc)?;
            OrientedSquare::new(k.pr1, k.pr2, cc, p.clone(), k.cell, Orientation::DownLeft)
        }
        Orientation::UpRight => {
            let k = comma_category(&cc, p)?;
            OrientedSquare::new(k.pr2, k.pr1, cc, p.clone(), k.cell, Orientation::UpRight)
        }
    }
}

/// The comma square under `b ∈ B` whose bottom edge is the top edge of `s`.
pub fn comma_above(s: &OrientedSquare, b: ObjId) -> Result<OrientedSquare> {
    let v = &s.top;
    let bb = FinFunctor::classifier(&terminal(), v.target(), b);
    match s.orientation {
        Orientation::DownLeft => {
            let k = comma_category(&bb, v)?;
            OrientedSquare::new(k.pr1, k.pr2, v.clone(), bb, k.cell, Orientation::DownLeft)
        }
        Orientation::UpRight => {
            let k = comma_category(v, &bb)?;
            OrientedSquare::new(k.pr2, k.pr1, v.clone(), bb, k.cell, Orientation::UpRight)
        }
    }
}

/// One pasted square in a cancellation report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PastedVerdict {
    /// The object of `C` (horizontal) or `B` (vertical) it is indexed by.
    pub at: String,
    pub verdict: ExactnessVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PastingReport {
    pub square: ExactnessVerdict,
    pub horizontal: Vec<PastedVerdict>,
    pub vertical: Vec<PastedVerdict>,
    /// `s` exact ⇔ all horizontal pastings exact ⇔ all vertical ones.
    pub equivalent: bool,
}

/// Compares the exactness of `s` with that of its pastings with comma
/// squares: one over every object of the bottom-left corner (horizontal)
/// and one under every object of the top-right corner (vertical).
pub fn pasting_cancellation_check(
    view: &DerivatorView,
    s: &OrientedSquare,
    policy: &Policy,
) -> Result<PastingReport> {
    let (c_cat, b_cat) = (s.left.target().clone(), s.top.target().clone());
    let (h_side, v_side) = match s.orientation {
        Orientation::DownLeft => (MateSide::Left, MateSide::Right),
        Orientation::UpRight => (MateSide::Right, MateSide::Left),
    };
    let own_side = if view.mate_available(h_side) { h_side } else { v_side };
    let square = check_exact(view, s, own_side, policy)?;

    let mut horizontal = Vec::new();
    if view.mate_available(h_side) {
        for c in c_cat.objects() {
            let t = comma_left_of(s, c)?;
            let pasted = t.paste(s, PasteDirection::Horizontal)?;
            horizontal.push(PastedVerdict {
                at: c_cat.object_label(c).to_string(),
                verdict: check_exact(view, &pasted, h_side, policy)?,
            });
        }
    }
    let mut vertical = Vec::new();
    if view.mate_available(v_side) {
        for b in b_cat.objects() {
            let t = comma_above(s, b)?;
            let pasted = t.paste(s, PasteDirection::Vertical)?;
            vertical.push(PastedVerdict {
                at: b_cat.object_label(b).to_string(),
                verdict: check_exact(view, &pasted, v_side, policy)?,
            });
        }
    }
    let all = |xs: &[PastedVerdict]| xs.iter().all(|x| x.verdict.exact);
    let mut equivalent = true;
    if view.mate_available(h_side) {
        equivalent &= all(&horizontal) == square.exact;
    }
    if view.mate_available(v_side) {
        equivalent &= all(&vertical) == square.exact;
    }
    Ok(PastingReport {
        square,
        horizontal,
        vertical,
        equivalent,
    })
}

/// Whether `u_!` and `u_*` are fully faithful on samples (unit resp.
/// counit invertible), next to the combinatorial answer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FfKanReport {
    pub fully_faithful: bool,
    pub lan_fully_faithful: bool,
    pub ran_fully_faithful: bool,
    pub ff_unit_square: ExactnessReport,
    /// Label of the first object where the unit (or counit) fails.
    pub witness: Option<String>,
}

impl FfKanReport {
    pub fn consistent(&self) -> bool {
        self.lan_fully_faithful == self.fully_faithful
            && self.ran_fully_faithful == self.fully_faithful
            && self.ff_unit_square.exact() == Some(self.fully_faithful)
    }
}

pub fn ff_kan_fully_faithful_check(
    view: &DerivatorView,
    u: &FinFunctor,
    policy: &Policy,
) -> Result<FfKanReport> {
    let lu = view.lift(u)?;
    let xs = policy.diagrams(lu.source());
    let mut witness = None;
    let mut lan_ff = true;
    let mut ran_ff = true;
    for x in &xs {
        let (_, eta) = lan_unit(&lu, x)?;
        if let Some(a) = eta.non_iso_witness() {
            lan_ff = false;
            witness.get_or_insert_with(|| lu.source().object_label(a).to_string());
        }
        let (_, eps) = ran_counit(&lu, x)?;
        if let Some(a) = eps.non_iso_witness() {
            ran_ff = false;
            witness.get_or_insert_with(|| lu.source().object_label(a).to_string());
        }
    }
    let sq = build_named_square(&SquareFamily::FfUnit { u: u.clone() })?;
    Ok(FfKanReport {
        fully_faithful: is_fully_faithful(u).is_ok(),
        lan_fully_faithful: lan_ff,
        ran_fully_faithful: ran_ff,
        ff_unit_square: check_exact_both(view, &sq, policy)?,
        witness,
    })
}

/// The adjunction `ℓ ⊣ r` between `(pr2/j2)` over the comma `(u1/u2)` and
/// `(u1/u2(j2))`.
#[derive(Clone, Debug)]
pub struct RlFixture {
    pub l: FinFunctor,
    pub r: FinFunctor,
    pub unit: FinNatTrans,
    pub counit: FinNatTrans,
    pub check: AdjunctionCheck,
}

pub fn rl_adjunction(u1: &FinFunctor, u2: &FinFunctor, j2: ObjId) -> Result<RlFixture> {
    let e = terminal();
    let outer = comma_category(u1, u2)?;
    let j2c = FinFunctor::classifier(&e, u2.source(), j2);
    let big = comma_category(&outer.pr2, &j2c)?;
    let small_target = FinFunctor::classifier(&e, u1.target(), u2.on_object(j2));
    let small = comma_category(u1, &small_target)?;
    let (a_cat, b_cat, k_cat) = (u1.source(), u2.source(), u1.target());
    let star = ObjId(0);
    let id_e = e.identity(star);
    let missing = || Error::Invariant("r/ℓ fixture: object or morphism missing".into());

    // ℓ: ((j1, j2', f), g) ↦ (j1, u2(g) ∘ f)
    let mut l_obj = Vec::new();
    for x in &big.objects {
        let inner = outer.object(x.left);
        let arrow = k_cat.compose(u2.on_morphism(x.arrow), inner.arrow);
        l_obj.push(
            small
                .find(CommaObject { left: inner.left, right: star, arrow })
                .ok_or_else(missing)?,
        );
    }
    let mut l_mor = Vec::new();
    for m in big.category.morphisms() {
        let m_outer = big.pr1.on_morphism(m);
        let m1 = outer.pr1.on_morphism(m_outer);
        let (s, t) = (big.category.source(m), big.category.target(m));
        l_mor.push(
            small
                .find_morphism(l_obj[s.0], l_obj[t.0], m1, id_e)
                .ok_or_else(missing)?,
        );
    }
    let l = FinFunctor::new(big.category.clone(), small.category.clone(), l_obj, l_mor)?;

    // r: (j1, h) ↦ ((j1, j2, h), id)
    let mut r_obj = Vec::new();
    let mut inner_of = Vec::new();
    for y in &small.objects {
        let inner = outer
            .find(CommaObject { left: y.left, right: j2, arrow: y.arrow })
            .ok_or_else(missing)?;
        inner_of.push(inner);
        r_obj.push(
            big.find(CommaObject { left: inner, right: star, arrow: b_cat.identity(j2) })
                .ok_or_else(missing)?,
        );
    }
    let mut r_mor = Vec::new();
    for m in small.category.morphisms() {
        let (s, t) = (small.category.source(m), small.category.target(m));
        let m1 = small.pr1.on_morphism(m);
        let mo = outer
            .find_morphism(inner_of[s.0], inner_of[t.0], m1, b_cat.identity(j2))
            .ok_or_else(missing)?;
        r_mor.push(big.find_morphism(r_obj[s.0], r_obj[t.0], mo, id_e).ok_or_else(missing)?);
    }
    let r = FinFunctor::new(small.category.clone(), big.category.clone(), r_obj, r_mor)?;

    // Unit at ((j1, j2', f), g): the morphism with components (id, g).
    let rl = r.after(&l)?;
    let mut unit_comp = Vec::new();
    for (i, x) in big.objects.iter().enumerate() {
        let src_outer = x.left;
        let tgt_big = rl.on_object(ObjId(i));
        let tgt_outer = big.object(tgt_big).left;
        let j1 = outer.object(src_outer).left;
        let mo = outer
            .find_morphism(src_outer, tgt_outer, a_cat.identity(j1), x.arrow)
            .ok_or_else(missing)?;
        unit_comp.push(big.find_morphism(ObjId(i), tgt_big, mo, id_e).ok_or_else(missing)?);
    }
    let unit = FinNatTrans::new(FinFunctor::identity(&big.category), rl, unit_comp)?;
    let lr = l.after(&r)?;
    let counit = FinNatTrans::new(
        lr.clone(),
        FinFunctor::identity(&small.category),
        small.category.objects().map(|y| small.category.identity(y)).collect(),
    )?;
    let check = check_adjunction(&l, &r, &unit, &counit)?;
    Ok(RlFixture {
        l,
        r,
        unit,
        counit,
        check,
    })
}

/// Shapes a verdict was sampled on, for reports.
pub fn mate_level_name(view: &DerivatorView, s: &OrientedSquare, side: MateSide) -> Result<String> {
    let l: Arc<_> = view.mate_input_level(s, side)?;
    Ok(l.name().to_string())
}

/// Mate calculus on one square, base view: mates invert back to the cell,
/// mates of comma pastings are composites of mates, and left and right
/// verdicts agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MateCalculusReport {
    pub double_mate: bool,
    pub pasting: bool,
    pub sides_agree: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl MateCalculusReport {
    pub fn passed(&self) -> bool {
        self.double_mate && self.pasting && self.sides_agree
    }
}

pub fn mate_calculus_check(s: &OrientedSquare, policy: &Policy) -> Result<MateCalculusReport> {
    let mut r = MateCalculusReport {
        double_mate: true,
        pasting: true,
        sides_agree: true,
        checks: 0,
        failures: Vec::new(),
    };
    let d = s.bottom.target().clone();
    for side in [MateSide::Left, MateSide::Right] {
        for (i, y) in policy.diagrams(&d).iter().enumerate() {
            r.checks += 1;
            if cell_from_mate(s, side, y)?.components() != pullback_cell(&s.cell, y)?.components() {
                r.double_mate = false;
                r.failures.push(format!("{side:?} double mate, sample {i}"));
            }
        }
    }
    // Strict pastings: comma squares on the left for one mate, on top for
    // the other.
    let (h_side, v_side) = match s.orientation {
        Orientation::DownLeft => (MateSide::Left, MateSide::Right),
        Orientation::UpRight => (MateSide::Right, MateSide::Left),
    };
    let mut pastings = Vec::new();
    for c in s.left.target().objects() {
        pastings.push((comma_left_of(s, c)?, PasteDirection::Horizontal, h_side));
    }
    for b in s.top.target().objects() {
        pastings.push((comma_above(s, b)?, PasteDirection::Vertical, v_side));
    }
    for (t, dir, side) in &pastings {
        let pasted = t.paste(s, *dir)?;
        let input = mate_input_shape(&pasted, *side).source().clone();
        for (i, y) in policy.diagrams_limited(&input, 3).iter().enumerate() {
            r.checks += 1;
            if !mate_pasting_check(t, s, *dir, *side, y)? {
                r.pasting = false;
                r.failures.push(format!("{side:?} mate of {dir:?} pasting, sample {i}"));
            }
        }
    }
    let both = check_exact_both(&DerivatorView::base(), s, policy)?;
    r.checks += 1;
    if !both.sides_agree() {
        r.sides_agree = false;
        r.failures.push("left and right verdicts differ".into());
    }
    r.failures.truncate(8);
    Ok(r)
}
