use std::fmt;

use super::functor::same;
use super::{FinFunctor, MorId, ObjId};
use crate::error::{Error, Result};

/// A natural transformation `source ⇒ target` between parallel functors.
#[derive(Clone, PartialEq, Eq)]
pub struct FinNatTrans {
    source: FinFunctor,
    target: FinFunctor,
    comp: Vec<MorId>,
}

impl fmt::Debug for FinNatTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinNatTrans{:?}", self.comp)
    }
}

impl FinNatTrans {
    pub fn new(source: FinFunctor, target: FinFunctor, comp: Vec<MorId>) -> Result<Self> {
        if !same(source.source(), target.source()) || !same(source.target(), target.target()) {
            return Err(Error::InvalidTransformation(
                "source and target functors are not parallel".into(),
            ));
        }
        let (a, c) = (source.source().clone(), source.target().clone());
        if comp.len() != a.num_objects() {
            return Err(Error::InvalidTransformation(format!(
                "{} components given, {} needed",
                comp.len(),
                a.num_objects()
            )));
        }
        for x in a.objects() {
            let k = comp[x.0];
            if k.0 >= c.num_morphisms()
                || c.source(k) != source.on_object(x)
                || c.target(k) != target.on_object(x)
            {
                return Err(Error::InvalidTransformation(format!(
                    "component at {} has the wrong endpoints",
                    a.object_label(x)
                )));
            }
        }
        for f in a.morphisms() {
            let (x, y) = (a.source(f), a.target(f));
            let lhs = c.compose(target.on_morphism(f), comp[x.0]);
            let rhs = c.compose(comp[y.0], source.on_morphism(f));
            if lhs != rhs {
                return Err(Error::InvalidTransformation(format!(
                    "naturality square at {} does not commute",
                    a.morphism_label(f)
                )));
            }
        }
        Ok(FinNatTrans {
            source,
            target,
            comp,
        })
    }

    pub fn identity(u: &FinFunctor) -> Self {
        let c = u.target();
        FinNatTrans {
            source: u.clone(),
            target: u.clone(),
            comp: u.object_map().iter().map(|&a| c.identity(a)).collect(),
        }
    }

    pub fn source(&self) -> &FinFunctor {
        &self.source
    }

    pub fn target(&self) -> &FinFunctor {
        &self.target
    }

    pub fn component(&self, a: ObjId) -> MorId {
        self.comp[a.0]
    }

    pub fn components(&self) -> &[MorId] {
        &self.comp
    }

    pub fn is_identity(&self) -> bool {
        let c = self.source.target();
        self.comp.iter().all(|&k| c.is_identity(k))
    }

    /// Vertical composite `self ∘ alpha`.
    pub fn vcompose(&self, alpha: &FinNatTrans) -> Result<Self> {
        if alpha.target != self.source {
            return Err(Error::Shape("vertical composite of non-matching cells".into()));
        }
        let c = self.source.target();
        Ok(FinNatTrans {
            source: alpha.source.clone(),
            target: self.target.clone(),
            comp: alpha
                .comp
                .iter()
                .zip(&self.comp)
                .map(|(&a, &b)| c.compose(b, a))
                .collect(),
        })
    }

    /// `self · f`, components `self_{f(x)}`.
    pub fn whisker_right(&self, f: &FinFunctor) -> Result<Self> {
        Ok(FinNatTrans {
            source: self.source.after(f)?,
            target: self.target.after(f)?,
            comp: f.object_map().iter().map(|x| self.comp[x.0]).collect(),
        })
    }

    /// `g · self`, components `g(self_x)`.
    pub fn whisker_left(&self, g: &FinFunctor) -> Result<Self> {
        Ok(FinNatTrans {
            source: g.after(&self.source)?,
            target: g.after(&self.target)?,
            comp: self.comp.iter().map(|&k| g.on_morphism(k)).collect(),
        })
    }

    /// Horizontal composite `beta ∗ self : g∘u ⇒ h∘v` for `beta: g ⇒ h`.
    pub fn hcompose(&self, beta: &FinNatTrans) -> Result<Self> {
        beta.whisker_right(&self.target)?
            .vcompose(&self.whisker_left(&beta.source)?)
    }

    /// Rebuilds with different (but equal) functor handles.
    pub(crate) fn retype(&self, source: FinFunctor, target: FinFunctor) -> Self {
        debug_assert!(source == self.source && target == self.target);
        FinNatTrans {
            source,
            target,
            comp: self.comp.clone(),
        }
    }

    pub(crate) fn from_parts_unchecked(
        source: FinFunctor,
        target: FinFunctor,
        comp: Vec<MorId>,
    ) -> Self {
        FinNatTrans {
            source,
            target,
            comp,
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fincat::{construct_standard, StandardShape};

    #[test]
    fn classifier_cell_on_arrow() {
        let e = Arc::new(construct_standard(&StandardShape::Terminal).unwrap());
        let one = Arc::new(construct_standard(&StandardShape::Ordinal(1)).unwrap());
        let c0 = FinFunctor::classifier(&e, &one, ObjId(0));
        let c1 = FinFunctor::classifier(&e, &one, ObjId(1));
        let arrow = one.hom(ObjId(0), ObjId(1))[0];
        let a = FinNatTrans::new(c0.clone(), c1.clone(), vec![arrow]).unwrap();
        assert!(!a.is_identity());
        assert!(FinNatTrans::new(c1.clone(), c0.clone(), vec![arrow]).is_err());
        let id = FinNatTrans::identity(&c1);
        assert_eq!(id.vcompose(&a).unwrap(), a);
        let p = FinFunctor::to_terminal(&one, &e);
        let pa = a.whisker_left(&p).unwrap();
        assert!(pa.is_identity());
    }
}
