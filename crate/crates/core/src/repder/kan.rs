use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::diagram::{Diagram, DiagramMap};
use crate::error::{Error, Result};
use crate::fincat::{comma_category, terminal, Comma, CommaObject, FinCategory, FinFunctor, FinNatTrans, MorId, ObjId};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KanSide {
    Left,
    Right,
}

/// `u* Y`: precomposition.
pub fn pullback(u: &FinFunctor, y: &Diagram) -> Result<Diagram> {
    check_on(u.target(), y, "pullback")?;
    let j = u.source();
    Ok(Diagram::new_unchecked(
        j.clone(),
        j.objects().map(|a| y.dim(u.on_object(a))).collect(),
        j.morphisms().map(|f| y.mat(u.on_morphism(f)).clone()).collect(),
    ))
}

pub fn pullback_map(u: &FinFunctor, phi: &DiagramMap) -> Result<DiagramMap> {
    let s = pullback(u, phi.source())?;
    let t = pullback(u, phi.target())?;
    let comp = u
        .source()
        .objects()
        .map(|a| phi.component(u.on_object(a)).clone())
        .collect();
    Ok(DiagramMap::new_unchecked(s, t, comp))
}

/// `α*_Y : u*Y -> u'*Y` for `α: u ⇒ u'`.
pub fn pullback_cell(alpha: &FinNatTrans, y: &Diagram) -> Result<DiagramMap> {
    let s = pullback(alpha.source(), y)?;
    let t = pullback(alpha.target(), y)?;
    let comp = alpha
        .components()
        .iter()
        .map(|&f| y.mat(f).clone())
        .collect();
    Ok(DiagramMap::new_unchecked(s, t, comp))
}

fn check_on(k: &Arc<FinCategory>, y: &Diagram, what: &str) -> Result<()> {
    if Arc::ptr_eq(k, y.shape()) || **k == **y.shape() {
        Ok(())
    } else {
        Err(Error::Shape(format!(
            "{what}: diagram lives on {}, expected {}",
            y.shape().name(),
            k.name()
        )))
    }
}

/// Comma combinatorics for Kan extension along one functor, reusable across
/// input diagrams.
#[derive(Debug)]
pub struct KanPlan {
    u: FinFunctor,
    side: KanSide,
    /// `(u/k)` for the left side, `(k/u)` for the right side, per `k`.
    commas: Vec<Comma>,
    /// For the left side and `h: k -> k'`: the object of `(u/k')` that each
    /// object of `(u/k)` is sent to. For the right side: objects of
    /// `(k'/u)` to objects of `(k/u)`.
    transport: Vec<Vec<ObjId>>,
    /// Per object `j`: the position of `(j, id_{u j})` in the comma at `u j`.
    base: Vec<ObjId>,
    /// Comma morphisms imposing the relations, per `k`, as
    /// `(source, target, J-component)`.
    relations: Vec<Vec<(ObjId, ObjId, MorId)>>,
}

static PLANS: Mutex<Vec<Arc<KanPlan>>> = Mutex::new(Vec::new());
const PLAN_CACHE: usize = 256;

impl KanPlan {
    /// Cached per `(u, side)`.
    pub fn get(u: &FinFunctor, side: KanSide) -> Result<Arc<KanPlan>> {
        {
            let cache = PLANS.lock().expect("plan cache");
            if let Some(p) = cache.iter().find(|p| p.side == side && p.u == *u) {
                return Ok(p.clone());
            }
        }
        let plan = Arc::new(KanPlan::build(u, side)?);
        let mut cache = PLANS.lock().expect("plan cache");
        if cache.len() >= PLAN_CACHE {
            cache.clear();
        }
        cache.push(plan.clone());
        Ok(plan)
    }

    pub fn build(u: &FinFunctor, side: KanSide) -> Result<Self> {
        let (j, k) = (u.source(), u.target());
        let e = terminal();
        let mut commas = Vec::with_capacity(k.num_objects());
        for c in k.objects() {
            let kc = FinFunctor::classifier(&e, k, c);
            commas.push(match side {
                KanSide::Left => comma_category(u, &kc)?,
                KanSide::Right => comma_category(&kc, u)?,
            });
        }
        let mut transport = Vec::with_capacity(k.num_morphisms());
        for h in k.morphisms() {
            let (c, c2) = (k.source(h), k.target(h));
            let map = match side {
                KanSide::Left => commas[c.0]
                    .objects
                    .iter()
                    .map(|x| {
                        find(&commas[c2.0], CommaObject { arrow: k.compose(h, x.arrow), ..*x })
                    })
                    .collect::<Result<Vec<_>>>()?,
                KanSide::Right => commas[c2.0]
                    .objects
                    .iter()
                    .map(|x| {
                        find(&commas[c.0], CommaObject { arrow: k.compose(x.arrow, h), ..*x })
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            transport.push(map);
        }
        let mut base = Vec::with_capacity(j.num_objects());
        for a in j.objects() {
            let uc = u.on_object(a);
            let x = match side {
                KanSide::Left => CommaObject {
                    left: a,
                    right: ObjId(0),
                    arrow: k.identity(uc),
                },
                KanSide::Right => CommaObject {
                    left: ObjId(0),
                    right: a,
                    arrow: k.identity(uc),
                },
            };
            base.push(find(&commas[uc.0], x)?);
        }
        let relations = commas
            .iter()
            .map(|c| {
                let cat = &c.category;
                let proj = match side {
                    KanSide::Left => &c.pr1,
                    KanSide::Right => &c.pr2,
                };
                relation_morphisms(cat)
                    .into_iter()
                    .map(|g| (cat.source(g), cat.target(g), proj.on_morphism(g)))
                    .collect()
            })
            .collect();
        Ok(KanPlan {
            u: u.clone(),
            side,
            commas,
            transport,
            base,
            relations,
        })
    }

    pub fn functor(&self) -> &FinFunctor {
        &self.u
    }

    pub fn side(&self) -> KanSide {
        self.side
    }

    pub fn comma(&self, k: ObjId) -> &Comma {
        &self.commas[k.0]
    }
}

fn find(c: &Comma, x: CommaObject) -> Result<ObjId> {
    c.find(x)
        .ok_or_else(|| Error::Invariant("comma object missing after transport".into()))
}

/// Morphisms whose relations generate all the others: indecomposables when
/// the category is acyclic, every non-identity morphism otherwise.
fn relation_morphisms(c: &FinCategory) -> Vec<MorId> {
    let acyclic = c.objects().all(|a| c.hom(a, a).len() == 1) && c.topological_order().is_some();
    if acyclic {
        c.generators()
    } else {
        c.morphisms().filter(|&f| !c.is_identity(f)).collect()
    }
}

/// A computed Kan extension together with its universal cone data.
#[derive(Clone, Debug)]
pub struct KanResult {
    pub side: KanSide,
    pub functor: FinFunctor,
    pub input: Diagram,
    pub output: Diagram,
    /// Per object `k`: the cokernel projection `P_k` (left) or kernel
    /// inclusion `K_k` (right) of the pointwise presentation.
    pub presentations: Vec<Matrix>,
    offsets: Vec<Vec<usize>>,
    plan: Arc<KanPlan>,
}

impl KanResult {
    /// Leg at comma object `i` over `k`: `X(j_i) -> L(k)` (left) or
    /// `R(k) -> X(j_i)` (right).
    pub fn leg(&self, k: ObjId, i: ObjId) -> Matrix {
        let x = &self.plan.commas[k.0].objects[i.0];
        let j = match self.side {
            KanSide::Left => x.left,
            KanSide::Right => x.right,
        };
        let d = self.input.dim(j);
        let off = self.offsets[k.0][i.0];
        let p = &self.presentations[k.0];
        match self.side {
            KanSide::Left => p.block(0, off, p.rows(), d),
            KanSide::Right => p.block(off, 0, d, p.cols()),
        }
    }

    pub fn comma(&self, k: ObjId) -> &Comma {
        &self.plan.commas[k.0]
    }

    /// Left side: the unit `X -> u*u_!X`. Right side: the counit
    /// `u*u_*X -> X`.
    pub fn adjunction_map(&self) -> Result<DiagramMap> {
        let u = &self.plan.u;
        let j = u.source();
        let comp = j
            .objects()
            .map(|a| self.leg(u.on_object(a), self.plan.base[a.0]))
            .collect();
        let restricted = pullback(u, &self.output)?;
        let m = match self.side {
            KanSide::Left => DiagramMap::new_unchecked(self.input.clone(), restricted, comp),
            KanSide::Right => DiagramMap::new_unchecked(restricted, self.input.clone(), comp),
        };
        debug_check(&m)?;
        Ok(m)
    }
}

fn debug_check(m: &DiagramMap) -> Result<()> {
    if cfg!(debug_assertions) {
        if let Some(d) = m.defect() {
            return Err(Error::Invariant(d));
        }
    }
    Ok(())
}

/// Pointwise left Kan extension.
pub fn lan(u: &FinFunctor, x: &Diagram) -> Result<KanResult> {
    kan(&KanPlan::get(u, KanSide::Left)?, x)
}

/// Pointwise right Kan extension.
pub fn ran(u: &FinFunctor, x: &Diagram) -> Result<KanResult> {
    kan(&KanPlan::get(u, KanSide::Right)?, x)
}

pub fn kan(plan: &Arc<KanPlan>, x: &Diagram) -> Result<KanResult> {
    let u = &plan.u;
    check_on(u.source(), x, "Kan extension")?;
    let k = u.target();
    let side = plan.side;
    let mut offsets = Vec::with_capacity(k.num_objects());
    let mut presentations = Vec::with_capacity(k.num_objects());
    for c in k.objects() {
        let comma = &plan.commas[c.0];
        let dims: Vec<usize> = comma
            .objects
            .iter()
            .map(|o| x.dim(if side == KanSide::Left { o.left } else { o.right }))
            .collect();
        let mut off = Vec::with_capacity(dims.len());
        let mut total = 0;
        for &d in &dims {
            off.push(total);
            total += d;
        }
        let rels = &plan.relations[c.0];
        let blocks: usize = rels.iter().map(|&(s, _, _)| dims[s.0]).sum();
        match side {
            KanSide::Left => {
                // Columns ι_s - ι_t X(g), one block per relation.
                let mut m = Matrix::try_zeros(total, blocks)?;
                let mut col = 0;
                for &(s, t, g) in rels {
                    let ds = dims[s.0];
                    m.set_block(off[s.0], col, &Matrix::identity(ds));
                    let neg = x.mat(g).scale(&crate::linalg::rat(-1));
                    add_block(&mut m, off[t.0], col, &neg);
                    col += ds;
                }
                presentations.push(m.cokernel().0);
            }
            KanSide::Right => {
                // Rows π_t - X(g) π_s.
                let rows: usize = rels.iter().map(|&(_, t, _)| dims[t.0]).sum();
                let _ = blocks;
                let mut m = Matrix::try_zeros(rows, total)?;
                let mut row = 0;
                for &(s, t, g) in rels {
                    let dt = dims[t.0];
                    m.set_block(row, off[t.0], &Matrix::identity(dt));
                    let neg = x.mat(g).scale(&crate::linalg::rat(-1));
                    add_block(&mut m, row, off[s.0], &neg);
                    row += dt;
                }
                presentations.push(m.kernel_basis());
            }
        }
        offsets.push(off);
    }
    let mut partial = KanResult {
        side,
        functor: u.clone(),
        input: x.clone(),
        output: Diagram::zero(k),
        presentations,
        offsets,
        plan: plan.clone(),
    };
    let dims: Vec<usize> = k
        .objects()
        .map(|c| {
            let p = &partial.presentations[c.0];
            if side == KanSide::Left {
                p.rows()
            } else {
                p.cols()
            }
        })
        .collect();
    let mut mats = Vec::with_capacity(k.num_morphisms());
    for h in k.morphisms() {
        let (c, c2) = (k.source(h), k.target(h));
        let m = match side {
            KanSide::Left => {
                // L(h) P_c = [leg^{c'}_{h_*(i)}]_i
                let legs: Vec<Matrix> = (0..plan.commas[c.0].objects.len())
                    .map(|i| partial.leg(c2, plan.transport[h.0][i]))
                    .collect();
                let rhs = Matrix::hstack(&legs, dims[c2.0]);
                solve_right(&partial.presentations[c.0], &rhs)?
            }
            KanSide::Right => {
                // K_{c'} R(h) = [leg^c_{h^*(i')}]_{i'}
                let legs: Vec<Matrix> = (0..plan.commas[c2.0].objects.len())
                    .map(|i| partial.leg(c, plan.transport[h.0][i]))
                    .collect();
                let rhs = Matrix::vstack(&legs, dims[c.0]);
                solve_left(&partial.presentations[c2.0], &rhs)?
            }
        };
        mats.push(m);
    }
    let output = Diagram::new_unchecked(k.clone(), dims, mats);
    if cfg!(debug_assertions) {
        Diagram::new(k.clone(), output.dims().to_vec(), output.mats().to_vec())
            .map_err(|e| Error::Invariant(format!("Kan extension output: {e}")))?;
    }
    partial.output = output;
    Ok(partial)
}

fn add_block(m: &mut Matrix, r0: usize, c0: usize, b: &Matrix) {
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            let v = m.get(r0 + r, c0 + c) + b.get(r, c);
            m.set(r0 + r, c0 + c, v);
        }
    }
}

/// The unique `X` with `X p = rhs` (`p` surjective).
fn solve_right(p: &Matrix, rhs: &Matrix) -> Result<Matrix> {
    p.transpose()
        .solve(&rhs.transpose())?
        .map(|x| x.transpose())
        .ok_or_else(|| Error::Invariant("cocone does not factor through the colimit".into()))
}

/// The unique `X` with `k X = rhs` (`k` injective).
fn solve_left(k: &Matrix, rhs: &Matrix) -> Result<Matrix> {
    k.solve(rhs)?
        .ok_or_else(|| Error::Invariant("cone does not factor through the limit".into()))
}

/// `u_!φ` between two computed left Kan extensions.
pub fn lan_map(phi: &DiagramMap, from: &KanResult, to: &KanResult) -> Result<DiagramMap> {
    kan_map(phi, from, to, KanSide::Left)
}

/// `u_*φ` between two computed right Kan extensions.
pub fn ran_map(phi: &DiagramMap, from: &KanResult, to: &KanResult) -> Result<DiagramMap> {
    kan_map(phi, from, to, KanSide::Right)
}

fn kan_map(phi: &DiagramMap, from: &KanResult, to: &KanResult, side: KanSide) -> Result<DiagramMap> {
    if from.side != side || to.side != side || from.functor != to.functor {
        return Err(Error::Shape("Kan results do not match".into()));
    }
    if *phi.source() != from.input || *phi.target() != to.input {
        return Err(Error::Shape("map endpoints differ from the Kan inputs".into()));
    }
    let plan = &from.plan;
    let k = plan.u.target();
    let mut comp = Vec::with_capacity(k.num_objects());
    for c in k.objects() {
        let objs = &plan.commas[c.0].objects;
        let m = match side {
            KanSide::Left => {
                let legs: Vec<Matrix> = objs
                    .iter()
                    .enumerate()
                    .map(|(i, o)| to.leg(c, ObjId(i)).mul(phi.component(o.left)))
                    .collect();
                let rhs = Matrix::hstack(&legs, to.output.dim(c));
                solve_right(&from.presentations[c.0], &rhs)?
            }
            KanSide::Right => {
                let legs: Vec<Matrix> = objs
                    .iter()
                    .enumerate()
                    .map(|(i, o)| phi.component(o.right).mul(&from.leg(c, ObjId(i))))
                    .collect();
                let rhs = Matrix::vstack(&legs, from.output.dim(c));
                solve_left(&to.presentations[c.0], &rhs)?
            }
        };
        comp.push(m);
    }
    let m = DiagramMap::new_unchecked(from.output.clone(), to.output.clone(), comp);
    debug_check(&m)?;
    Ok(m)
}

/// The counit `u_!u*Y -> Y`, with the extension it starts from.
pub fn lan_counit(u: &FinFunctor, y: &Diagram) -> Result<(KanResult, DiagramMap)> {
    let l = lan(u, &pullback(u, y)?)?;
    let k = u.target();
    let mut comp = Vec::with_capacity(k.num_objects());
    for c in k.objects() {
        let parts: Vec<Matrix> = l.plan.commas[c.0]
            .objects
            .iter()
            .map(|o| y.mat(o.arrow).clone())
            .collect();
        let rhs = Matrix::hstack(&parts, y.dim(c));
        comp.push(solve_right(&l.presentations[c.0], &rhs)?);
    }
    let m = DiagramMap::new_unchecked(l.output.clone(), y.clone(), comp);
    debug_check(&m)?;
    Ok((l, m))
}

/// The unit `Y -> u_*u*Y`, with the extension it lands in.
pub fn ran_unit(u: &FinFunctor, y: &Diagram) -> Result<(KanResult, DiagramMap)> {
    let r = ran(u, &pullback(u, y)?)?;
    let k = u.target();
    let mut comp = Vec::with_capacity(k.num_objects());
    for c in k.objects() {
        let parts: Vec<Matrix> = r.plan.commas[c.0]
            .objects
            .iter()
            .map(|o| y.mat(o.arrow).clone())
            .collect();
        let rhs = Matrix::vstack(&parts, y.dim(c));
        comp.push(solve_left(&r.presentations[c.0], &rhs)?);
    }
    let m = DiagramMap::new_unchecked(y.clone(), r.output.clone(), comp);
    debug_check(&m)?;
    Ok((r, m))
}

/// Unit `X -> u*u_!X`.
pub fn lan_unit(u: &FinFunctor, x: &Diagram) -> Result<(KanResult, DiagramMap)> {
    let l = lan(u, x)?;
    let m = l.adjunction_map()?;
    Ok((l, m))
}

/// Counit `u*u_*X -> X`.
pub fn ran_counit(u: &FinFunctor, x: &Diagram) -> Result<(KanResult, DiagramMap)> {
    let r = ran(u, x)?;
    let m = r.adjunction_map()?;
    Ok((r, m))
}
