use serde::{Deserialize, Serialize};

use super::diagram::{Diagram, DiagramMap};
use super::kan::{
    lan_counit, lan_map, lan_unit, lan, pullback, pullback_cell, pullback_map, ran, ran_counit,
    ran_map, ran_unit,
};
use crate::error::{Error, Result};
use crate::fincat::{FinFunctor, FinNatTrans, Orientation, OrientedSquare, PasteDirection};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MateSide {
    Left,
    Right,
}

/// The functors a mate is built from, uniform in the orientation.
///
/// With `c: h∘g ⇒ k∘f` (left) the left mate is `f_! g* ⇒ k* h_!`; with
/// `c: k∘f ⇒ h∘g` (right) the right mate is `k* h_* ⇒ f_* g*`.
struct MateData<'a> {
    h: &'a FinFunctor,
    g: &'a FinFunctor,
    k: &'a FinFunctor,
    f: &'a FinFunctor,
}

/// Left mate: down-left squares read `h = q, g = v, k = w, f = p`;
/// up-right squares read `h = w, g = p, k = q, f = v`. Right mate:
/// down-left `h = w, k = q, f = v, g = p`; up-right `h = q, k = w, f = p,
/// g = v`.
fn data(s: &OrientedSquare, side: MateSide) -> MateData<'_> {
    let (v, p, w, q) = (&s.top, &s.left, &s.bottom, &s.right);
    match (s.orientation, side) {
        (Orientation::DownLeft, MateSide::Left) => MateData { h: q, g: v, k: w, f: p },
        (Orientation::UpRight, MateSide::Left) => MateData { h: w, g: p, k: q, f: v },
        (Orientation::DownLeft, MateSide::Right) => MateData { h: w, g: p, k: q, f: v },
        (Orientation::UpRight, MateSide::Right) => MateData { h: q, g: v, k: w, f: p },
    }
}

/// Component of the left or right mate of `s` at `y`.
///
/// Down-left: left `p_! v* ⇒ w* q_!` (at `Y ∈ D(B)`), right
/// `q* w_* ⇒ v_* p*` (at `X ∈ D(C)`). Up-right: left `v_! p* ⇒ q* w_!`
/// (at `D(C)`), right `w* q_* ⇒ p_* v*` (at `D(B)`).
pub fn mate_component(s: &OrientedSquare, side: MateSide, y: &Diagram) -> Result<DiagramMap> {
    let d = data(s, side);
    match side {
        MateSide::Left => left_mate(&d, &s.cell, y),
        MateSide::Right => right_mate(&d, &s.cell, y),
    }
}

fn left_mate(d: &MateData, cell: &FinNatTrans, y: &Diagram) -> Result<DiagramMap> {
    // Q = h_!Y, η: Y -> h*Q.
    let (q, eta) = lan_unit(d.h, y)?;
    let qd = &q.output;
    // ψ = c*_Q ∘ g*η : g*Y -> f*k*Q.
    let psi = pullback_cell(cell, qd)?.compose(&pullback_map(d.g, &eta)?.retype_source_of(cell, qd)?)?;
    let w = pullback(d.k, qd)?;
    let (l2, eps) = lan_counit(d.f, &w)?;
    let l1 = lan(d.f, &pullback(d.g, y)?)?;
    let psi = psi.retype(l1.input.clone(), l2.input.clone())?;
    eps.compose(&lan_map(&psi, &l1, &l2)?)
}

fn right_mate(d: &MateData, cell: &FinNatTrans, x: &Diagram) -> Result<DiagramMap> {
    // R = h_*X, ε: h*R -> X.
    let (r, eps) = ran_counit(d.h, x)?;
    let rd = &r.output;
    let z = pullback(d.k, rd)?;
    // χ = g*ε ∘ c*_R : f*k*R -> g*X.
    let chi = pullback_map(d.g, &eps)?.retype_target_of(cell, rd)?.compose(&pullback_cell(cell, rd)?)?;
    let (r1, eta) = ran_unit(d.f, &z)?;
    let r2 = ran(d.f, &pullback(d.g, x)?)?;
    let chi = chi.retype(r1.input.clone(), r2.input.clone())?;
    ran_map(&chi, &r1, &r2)?.compose(&eta)
}

impl DiagramMap {
    /// `g*η` with its target re-expressed as `(h∘g)*Q`, the source of the
    /// cell component.
    fn retype_source_of(&self, cell: &FinNatTrans, q: &Diagram) -> Result<DiagramMap> {
        let t = pullback(cell.source(), q)?;
        self.retype(self.source().clone(), t)
    }

    /// `g*ε` with its source re-expressed as `(h∘g)*R`.
    fn retype_target_of(&self, cell: &FinNatTrans, r: &Diagram) -> Result<DiagramMap> {
        let s = pullback(cell.target(), r)?;
        self.retype(s, self.target().clone())
    }
}

/// Rebuilds `c*_Y` from the mate, using the opposite unit and counit.
/// `y` lives on the common codomain `D`.
pub fn cell_from_mate(s: &OrientedSquare, side: MateSide, y: &Diagram) -> Result<DiagramMap> {
    let d = data(s, side);
    match side {
        MateSide::Left => {
            // f*k*ε^h ∘ f*(m_{h*Y}) ∘ η^f_{g*h*Y}
            let hy = pullback(d.h, y)?;
            let m = left_mate(&d, &s.cell, &hy)?;
            let ghy = pullback(d.g, &hy)?;
            let (_, eta) = lan_unit(d.f, &ghy)?;
            let (_, eps) = lan_counit(d.h, y)?;
            let last = pullback_map(d.f, &pullback_map(d.k, &eps)?)?;
            let mid = pullback_map(d.f, &m)?;
            let out = last.compose(&mid)?.compose(&eta)?;
            let want_s = pullback(s.cell.source(), y)?;
            let want_t = pullback(s.cell.target(), y)?;
            out.retype(want_s, want_t)
        }
        MateSide::Right => {
            // ε^f_{g*h*X} ∘ f*(n_{h*X}) ∘ f*k*η^h
            let hx = pullback(d.h, y)?;
            let n = right_mate(&d, &s.cell, &hx)?;
            let (_, eta) = ran_unit(d.h, y)?;
            let first = pullback_map(d.f, &pullback_map(d.k, &eta)?)?;
            let mid = pullback_map(d.f, &n)?;
            let ghx = pullback(d.g, &hx)?;
            let (_, eps) = ran_counit(d.f, &ghx)?;
            let out = eps.compose(&mid)?.compose(&first)?;
            let want_s = pullback(s.cell.source(), y)?;
            let want_t = pullback(s.cell.target(), y)?;
            out.retype(want_s, want_t)
        }
    }
}

/// Where the mate of `s` on `side` takes its input: the source of `h`
/// (the functor whose Kan extension is applied first).
pub fn mate_input_shape(s: &OrientedSquare, side: MateSide) -> &FinFunctor {
    data(s, side).h
}

pub(crate) fn no_mate(side: MateSide) -> Error {
    Error::MateUnavailable(format!("{side:?} mate needs {side:?} Kan extensions"))
}

/// Compares the mate of `first.paste(second)` at `y` with the composite of
/// the two mates. Only pastings along the edge shared by the `h` of one
/// square and the `f` of the other compose strictly; the others involve a
/// Kan extension along a composite and are refused.
///
/// Left: `m_P(Y) = k_F*(m_H(Y)) ∘ m_F(g_H* Y)`. Right:
/// `m_P(X) = m_F(g_H* X) ∘ k_F*(m_H(X))`, where `H` shares `h` with the
/// pasting and `F` shares `f`.
pub fn mate_pasting_check(
    first: &OrientedSquare,
    second: &OrientedSquare,
    direction: PasteDirection,
    side: MateSide,
    y: &Diagram,
) -> Result<bool> {
    let pasted = first.paste(second, direction)?;
    let dp = data(&pasted, side);
    let (hs, fs) = [(first, second), (second, first)]
        .into_iter()
        .find(|(a, b)| {
            let (da, db) = (data(a, side), data(b, side));
            da.h == dp.h && db.f == dp.f && db.h == da.f
        })
        .ok_or_else(|| {
            Error::Precondition(format!("{side:?} mates do not compose strictly along this pasting"))
        })?;
    let (dh, df) = (data(hs, side), data(fs, side));
    let whole = mate_component(&pasted, side, y)?;
    let mh = pullback_map(df.k, &mate_component(hs, side, y)?)?;
    let mf = mate_component(fs, side, &pullback(dh.g, y)?)?;
    let parts = match side {
        MateSide::Left => {
            let mf = mf.retype(mf.source().clone(), mh.source().clone())?;
            mh.compose(&mf)?
        }
        MateSide::Right => {
            let mh = mh.retype(mh.source().clone(), mf.source().clone())?;
            mf.compose(&mh)?
        }
    };
    Ok(parts.components() == whole.components())
}
