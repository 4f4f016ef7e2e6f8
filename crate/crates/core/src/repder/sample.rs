use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::diagram::{Diagram, DiagramMap};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, MorId};
use crate::linalg::{rat, Matrix};

/// How universally quantified checks are sampled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Policy {
    pub seed: u64,
    /// Random diagrams per shape, on top of the zero and constant ones.
    pub samples: usize,
    /// Largest dimension at any object of a random diagram.
    pub max_dim: usize,
}

impl Default for Policy {
    fn default() -> Self {
        Policy {
            seed: 7,
            samples: 25,
            max_dim: 4,
        }
    }
}

impl Policy {
    /// Generator for `shape`, a pure function of the seed and the shape.
    pub fn rng_for(&self, shape: &FinCategory, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(
            self.seed ^ shape.fingerprint().rotate_left(17) ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15),
        )
    }

    /// Zero diagram, constant `Q`, then `samples` random diagrams.
    pub fn diagrams(&self, shape: &Arc<FinCategory>) -> Vec<Diagram> {
        let mut rng = self.rng_for(shape, 0);
        let mut out = vec![Diagram::zero(shape), Diagram::constant(shape, 1)];
        for _ in 0..self.samples {
            out.push(random_diagram(shape, self.max_dim, &mut rng));
        }
        out
    }

    /// A few diagrams, for checks whose cost grows quickly.
    pub fn diagrams_limited(&self, shape: &Arc<FinCategory>, n: usize) -> Vec<Diagram> {
        let p = Policy {
            samples: n.min(self.samples),
            ..*self
        };
        p.diagrams(shape)
    }
}

fn entry(rng: &mut impl Rng) -> i64 {
    rng.gen_range(-3..=3)
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, rat(entry(rng)));
        }
    }
    m
}

/// Random invertible matrix; falls back to the identity after a few
/// singular draws.
pub fn random_invertible(n: usize, rng: &mut impl Rng) -> Matrix {
    for _ in 0..16 {
        let m = random_matrix(n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
    Matrix::identity(n)
}

/// A random functor `shape -> Vect_Q`.
///
/// Objects are visited in topological order; the matrices of the
/// generators into each object are unknowns constrained so that every
/// morphism into it gets a single well-defined value, and a random integer
/// combination of a basis of the solutions is taken. Shapes with cycles
/// get a constant diagram of random dimension.
pub fn random_diagram(shape: &Arc<FinCategory>, max_dim: usize, rng: &mut impl Rng) -> Diagram {
    let k = shape;
    let acyclic = k.objects().all(|a| k.hom(a, a).len() == 1);
    let order = match (acyclic, k.topological_order()) {
        (true, Some(o)) => o,
        _ => return Diagram::constant(shape, rng.gen_range(0..=max_dim)),
    };
    let dims: Vec<usize> = k.objects().map(|_| rng.gen_range(0..=max_dim)).collect();
    let gens = k.generators();
    let mut mats: Vec<Option<Matrix>> = vec![None; k.num_morphisms()];
    for a in k.objects() {
        mats[k.identity(a).0] = Some(Matrix::identity(dims[a.0]));
    }
    for &a in &order {
        let into: Vec<MorId> = gens.iter().copied().filter(|&g| k.target(g) == a).collect();
        let da = dims[a.0];
        // Unknown layout: generator blocks, row-major.
        let mut offs = Vec::new();
        let mut n = 0;
        for &g in &into {
            offs.push(n);
            n += da * dims[k.source(g).0];
        }
        // Constraints: for each morphism h into a, all factorizations
        // g ∘ h' (g a generator into a) agree.
        let mut rows: Vec<Vec<crate::linalg::Rational>> = Vec::new();
        for x in k.objects() {
            if x == a {
                continue;
            }
            for &h in k.hom(x, a) {
                let facts: Vec<(usize, MorId)> = into
                    .iter()
                    .enumerate()
                    .flat_map(|(gi, &g)| {
                        k.hom(x, k.source(g))
                            .iter()
                            .filter(move |&&h1| k.compose(g, h1) == h)
                            .map(move |&h1| (gi, h1))
                    })
                    .collect();
                for w in facts.windows(2) {
                    let (g0, h0) = w[0];
                    let (g1, h1) = w[1];
                    let m0 = mats[h0.0].clone().expect("earlier object");
                    let m1 = mats[h1.0].clone().expect("earlier object");
                    let dx = dims[x.0];
                    // (G0 m0 - G1 m1)[r][c] = 0
                    for r in 0..da {
                        for c in 0..dx {
                            let mut row = vec![rat(0); n];
                            let s0 = dims[k.source(into[g0]).0];
                            for t in 0..s0 {
                                let v = row[offs[g0] + r * s0 + t].clone() + m0.get(t, c);
                                row[offs[g0] + r * s0 + t] = v;
                            }
                            let s1 = dims[k.source(into[g1]).0];
                            for t in 0..s1 {
                                let v = row[offs[g1] + r * s1 + t].clone() - m1.get(t, c);
                                row[offs[g1] + r * s1 + t] = v;
                            }
                            rows.push(row);
                        }
                    }
                }
            }
        }
        let values = if n == 0 {
            Vec::new()
        } else {
            let nr = rows.len();
            let basis = if nr == 0 {
                Matrix::identity(n)
            } else {
                Matrix::from_rows(rows, n).expect("rows").kernel_basis()
            };
            let mut v = vec![rat(0); n];
            for b in 0..basis.cols() {
                let c = rat(entry(rng));
                for (i, slot) in v.iter_mut().enumerate() {
                    *slot += &c * basis.get(i, b);
                }
            }
            v
        };
        for (gi, &g) in into.iter().enumerate() {
            let s = dims[k.source(g).0];
            let mut m = Matrix::zeros(da, s);
            for r in 0..da {
                for c in 0..s {
                    m.set(r, c, values[offs[gi] + r * s + c].clone());
                }
            }
            mats[g.0] = Some(m);
        }
        // Every other morphism into a by composition.
        for x in k.objects() {
            if x == a {
                continue;
            }
            for &h in k.hom(x, a) {
                if mats[h.0].is_some() {
                    continue;
                }
                let (gi, h1) = into
                    .iter()
                    .enumerate()
                    .find_map(|(gi, &g)| {
                        k.hom(x, k.source(g))
                            .iter()
                            .find(|&&h1| k.compose(g, h1) == h)
                            .map(|&h1| (gi, h1))
                    })
                    .expect("every non-identity morphism factors through a generator");
                let m = mats[into[gi].0]
                    .as_ref()
                    .unwrap()
                    .mul(mats[h1.0].as_ref().expect("earlier object"));
                mats[h.0] = Some(m);
            }
        }
    }
    let mats = mats.into_iter().map(|m| m.expect("all assigned")).collect();
    Diagram::new(shape.clone(), dims, mats).expect("constraint solution is a functor")
}

/// Basis of `Hom(X, Y)` in the functor category.
pub fn hom_space(x: &Diagram, y: &Diagram) -> Result<Vec<DiagramMap>> {
    let k = x.shape();
    if !(Arc::ptr_eq(k, y.shape()) || **k == **y.shape()) {
        return Err(Error::Shape("hom between diagrams of different shapes".into()));
    }
    let mut offs = Vec::new();
    let mut n = 0;
    for a in k.objects() {
        offs.push(n);
        n += y.dim(a) * x.dim(a);
    }
    let mut rows: Vec<Vec<crate::linalg::Rational>> = Vec::new();
    for f in k.morphisms() {
        if k.is_identity(f) {
            continue;
        }
        let (a, b) = (k.source(f), k.target(f));
        let (xa, ya, yb) = (x.dim(a), y.dim(a), y.dim(b));
        // Y(f) φ_a - φ_b X(f) = 0, entry (r, c) with r < dim Y(b), c < dim X(a).
        for r in 0..yb {
            for c in 0..xa {
                let mut row = vec![rat(0); n];
                for t in 0..ya {
                    let i = offs[a.0] + t * xa + c;
                    row[i] = &row[i] + y.mat(f).get(r, t);
                }
                let xb = x.dim(b);
                for t in 0..xb {
                    let i = offs[b.0] + r * xb + t;
                    row[i] = &row[i] - x.mat(f).get(t, c);
                }
                rows.push(row);
            }
        }
    }
    if n > crate::linalg::MAX_DIM {
        return Err(Error::Guardrail(format!("hom space with {n} unknowns")));
    }
    let basis = if rows.is_empty() {
        Matrix::identity(n)
    } else {
        Matrix::from_rows(rows, n)?.kernel_basis()
    };
    let mut out = Vec::with_capacity(basis.cols());
    for b in 0..basis.cols() {
        let comp = k
            .objects()
            .map(|a| {
                let (ya, xa) = (y.dim(a), x.dim(a));
                let mut m = Matrix::zeros(ya, xa);
                for r in 0..ya {
                    for c in 0..xa {
                        m.set(r, c, basis.get(offs[a.0] + r * xa + c, b).clone());
                    }
                }
                m
            })
            .collect();
        out.push(DiagramMap::new_unchecked(x.clone(), y.clone(), comp));
    }
    Ok(out)
}

/// Random integer combination of a basis of `Hom(X, Y)`.
pub fn random_map(x: &Diagram, y: &Diagram, rng: &mut impl Rng) -> Result<DiagramMap> {
    let basis = hom_space(x, y)?;
    let mut m = DiagramMap::zero(x, y)?;
    for b in &basis {
        m = m.add(&b.scale(&rat(entry(rng))))?;
    }
    Ok(m)
}

/// Random objectwise-invertible conjugation of `x`, with the isomorphism
/// `x -> y` it induces.
pub fn random_isomorphic(x: &Diagram, rng: &mut impl Rng) -> Result<(Diagram, DiagramMap)> {
    let g: Vec<Matrix> = x
        .shape()
        .objects()
        .map(|a| random_invertible(x.dim(a), rng))
        .collect();
    let y = x.conjugate(&g)?;
    let phi = DiagramMap::new(x.clone(), y.clone(), g)?;
    Ok((y, phi))
}

