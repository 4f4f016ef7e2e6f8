use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, MorId, ObjId};
use crate::linalg::{Matrix, Rational};

fn same(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A functor `K -> Vect_Q`: a dimension per object, a matrix per morphism.
/// The matrix of `f: a -> b` is `dim(b) x dim(a)`.
#[derive(Clone)]
pub struct Diagram {
    shape: Arc<FinCategory>,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.dims == other.dims && self.mats == other.mats && same(&self.shape, &other.shape)
    }
}

impl Eq for Diagram {}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({}, dims {:?})", self.shape.name(), self.dims)
    }
}

impl Diagram {
    /// Checks shapes, identities and every composite.
    pub fn new(shape: Arc<FinCategory>, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        let d = Diagram { shape, dims, mats };
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn new_unchecked(shape: Arc<FinCategory>, dims: Vec<usize>, mats: Vec<Matrix>) -> Self {
        Diagram { shape, dims, mats }
    }

    fn validate(&self) -> Result<()> {
        let k = &self.shape;
        let bad = |m: String| Err(Error::InvalidDiagram(format!("on {}: {m}", k.name())));
        if self.dims.len() != k.num_objects() || self.mats.len() != k.num_morphisms() {
            return bad("wrong number of objects or morphisms".into());
        }
        for f in k.morphisms() {
            let want = (self.dims[k.target(f).0], self.dims[k.source(f).0]);
            if self.mats[f.0].shape() != want {
                return bad(format!(
                    "matrix of {} is {:?}, expected {:?}",
                    k.morphism_label(f),
                    self.mats[f.0].shape(),
                    want
                ));
            }
        }
        for a in k.objects() {
            if !self.mats[k.identity(a).0].is_identity() {
                return bad(format!("identity of {} is not sent to 1", k.object_label(a)));
            }
        }
        for f in k.morphisms() {
            let b = k.target(f);
            for c in k.objects() {
                for &g in k.hom(b, c) {
                    let gf = k.compose(g, f);
                    if self.mats[g.0].mul(&self.mats[f.0]) != self.mats[gf.0] {
                        return bad(format!(
                            "composite {} ∘ {} not preserved",
                            k.morphism_label(g),
                            k.morphism_label(f)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Assigns matrices to the generating morphisms and extends by
    /// composition. Identities need not be listed.
    pub fn from_generators(
        shape: Arc<FinCategory>,
        dims: Vec<usize>,
        given: &[(MorId, Matrix)],
    ) -> Result<Self> {
        let k = shape.clone();
        if dims.len() != k.num_objects() {
            return Err(Error::InvalidDiagram("wrong number of dimensions".into()));
        }
        let mut mats: Vec<Option<Matrix>> = vec![None; k.num_morphisms()];
        for a in k.objects() {
            mats[k.identity(a).0] = Some(Matrix::identity(dims[a.0]));
        }
        for (f, m) in given {
            if f.0 >= k.num_morphisms() {
                return Err(Error::InvalidDiagram(format!("morphism #{} out of range", f.0)));
            }
            mats[f.0] = Some(m.clone());
        }
        // Close under composition until nothing changes.
        loop {
            let mut changed = false;
            for f in k.morphisms() {
                let Some(mf) = mats[f.0].clone() else { continue };
                for c in k.objects() {
                    for &g in k.hom(k.target(f), c) {
                        let gf = k.compose(g, f);
                        if mats[gf.0].is_some() {
                            continue;
                        }
                        if let Some(mg) = &mats[g.0] {
                            mats[gf.0] = Some(mg.checked_mul(&mf)?);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut out = Vec::with_capacity(mats.len());
        for (i, m) in mats.into_iter().enumerate() {
            match m {
                Some(m) => out.push(m),
                None => {
                    return Err(Error::InvalidDiagram(format!(
                        "no matrix determined for {}",
                        k.morphism_label(MorId(i))
                    )))
                }
            }
        }
        Diagram::new(shape, dims, out)
    }

    pub fn zero(shape: &Arc<FinCategory>) -> Self {
        Self::constant(shape, 0)
    }

    /// The constant diagram at `Q^d`.
    pub fn constant(shape: &Arc<FinCategory>, d: usize) -> Self {
        Diagram {
            shape: shape.clone(),
            dims: vec![d; shape.num_objects()],
            mats: vec![Matrix::identity(d); shape.num_morphisms()],
        }
    }

    pub fn shape(&self) -> &Arc<FinCategory> {
        &self.shape
    }

    pub fn dim(&self, a: ObjId) -> usize {
        self.dims[a.0]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn mat(&self, f: MorId) -> &Matrix {
        &self.mats[f.0]
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero_object(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Same data on an identically indexed shape (e.g. a relabelled copy).
    pub fn rehome(&self, shape: &Arc<FinCategory>) -> Result<Self> {
        if shape.num_objects() != self.shape.num_objects()
            || shape.num_morphisms() != self.shape.num_morphisms()
        {
            return Err(Error::Shape("rehome onto a differently sized shape".into()));
        }
        Diagram::new(shape.clone(), self.dims.clone(), self.mats.clone())
    }

    /// `Y = g X g^{-1}` objectwise.
    pub fn conjugate(&self, g: &[Matrix]) -> Result<Self> {
        let mut mats = Vec::with_capacity(self.mats.len());
        for f in self.shape.morphisms() {
            let (a, b) = (self.shape.source(f), self.shape.target(f));
            let ginv = g[a.0]
                .inverse()
                .ok_or_else(|| Error::Precondition("conjugating matrix not invertible".into()))?;
            mats.push(g[b.0].mul(&self.mats[f.0]).mul(&ginv));
        }
        Diagram::new(self.shape.clone(), self.dims.clone(), mats)
    }
}

/// A natural transformation between diagrams of the same shape.
#[derive(Clone, PartialEq, Eq)]
pub struct DiagramMap {
    source: Diagram,
    target: Diagram,
    comp: Vec<Matrix>,
}

impl fmt::Debug for DiagramMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiagramMap({:?} -> {:?})", self.source, self.target)
    }
}

impl DiagramMap {
    pub fn new(source: Diagram, target: Diagram, comp: Vec<Matrix>) -> Result<Self> {
        let m = DiagramMap {
            source,
            target,
            comp,
        };
        if let Some(msg) = m.defect() {
            return Err(Error::InvalidTransformation(msg));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: Diagram, target: Diagram, comp: Vec<Matrix>) -> Self {
        DiagramMap {
            source,
            target,
            comp,
        }
    }

    /// First problem found with shapes or naturality, if any.
    pub fn defect(&self) -> Option<String> {
        let k = self.source.shape();
        if !same(k, self.target.shape()) {
            return Some("source and target diagrams have different shapes".into());
        }
        if self.comp.len() != k.num_objects() {
            return Some("wrong number of components".into());
        }
        for a in k.objects() {
            if self.comp[a.0].shape() != (self.target.dim(a), self.source.dim(a)) {
                return Some(format!("component at {} has the wrong size", k.object_label(a)));
            }
        }
        for f in k.morphisms() {
            if k.is_identity(f) {
                continue;
            }
            let (a, b) = (k.source(f), k.target(f));
            let lhs = self.target.mat(f).mul(&self.comp[a.0]);
            let rhs = self.comp[b.0].mul(self.source.mat(f));
            if lhs != rhs {
                return Some(format!("not natural at {}", k.morphism_label(f)));
            }
        }
        None
    }

    pub fn identity(x: &Diagram) -> Self {
        DiagramMap {
            source: x.clone(),
            target: x.clone(),
            comp: x.dims.iter().map(|&d| Matrix::identity(d)).collect(),
        }
    }

    pub fn zero(x: &Diagram, y: &Diagram) -> Result<Self> {
        if !same(x.shape(), y.shape()) {
            return Err(Error::Shape("zero map between different shapes".into()));
        }
        Ok(DiagramMap {
            source: x.clone(),
            target: y.clone(),
            comp: x
                .shape()
                .objects()
                .map(|a| Matrix::zeros(y.dim(a), x.dim(a)))
                .collect(),
        })
    }

    pub fn source(&self) -> &Diagram {
        &self.source
    }

    pub fn target(&self) -> &Diagram {
        &self.target
    }

    pub fn component(&self, a: ObjId) -> &Matrix {
        &self.comp[a.0]
    }

    pub fn components(&self) -> &[Matrix] {
        &self.comp
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiagramMap) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::Shape("maps are not composable".into()));
        }
        Ok(DiagramMap {
            source: other.source.clone(),
            target: self.target.clone(),
            comp: self
                .comp
                .iter()
                .zip(&other.comp)
                .map(|(a, b)| a.mul(b))
                .collect(),
        })
    }

    pub fn add(&self, other: &DiagramMap) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("adding maps with different endpoints".into()));
        }
        Ok(DiagramMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comp: self.comp.iter().zip(&other.comp).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        DiagramMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comp: self.comp.iter().map(|a| a.scale(s)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.comp.iter().all(Matrix::is_identity)
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().all(Matrix::is_zero)
    }

    /// Objectwise invertibility (which is invertibility in the functor
    /// category).
    pub fn is_iso(&self) -> bool {
        self.comp.iter().all(Matrix::is_invertible)
    }

    /// First object where the component is not invertible.
    pub fn non_iso_witness(&self) -> Option<ObjId> {
        self.comp
            .iter()
            .position(|m| !m.is_invertible())
            .map(ObjId)
    }

    pub fn inverse(&self) -> Option<Self> {
        let comp = self
            .comp
            .iter()
            .map(Matrix::inverse)
            .collect::<Option<Vec<_>>>()?;
        Some(DiagramMap {
            source: self.target.clone(),
            target: self.source.clone(),
            comp,
        })
    }

    /// Same components, endpoints replaced by equal diagrams.
    pub(crate) fn retype(&self, source: Diagram, target: Diagram) -> Result<Self> {
        DiagramMap::new(source, target, self.comp.clone())
    }
}
