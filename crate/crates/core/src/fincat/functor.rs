use std::fmt;
use std::sync::Arc;

use super::{FinCategory, MorId, ObjId};
use crate::error::{Error, Result};

/// A functor between finite categories, stored as explicit maps.
#[derive(Clone)]
pub struct FinFunctor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj: Vec<ObjId>,
    mor: Vec<MorId>,
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj == other.obj
            && self.mor == other.mor
            && same(&self.source, &other.source)
            && same(&self.target, &other.target)
    }
}

impl Eq for FinFunctor {}

pub(crate) fn same(a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl fmt::Debug for FinFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinFunctor({} -> {})", self.source.name(), self.target.name())
    }
}

impl FinFunctor {
    /// Validates preservation of endpoints, identities and composites.
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj: Vec<ObjId>,
        mor: Vec<MorId>,
    ) -> Result<Self> {
        let bad = |msg: String| {
            Err(Error::InvalidFunctor(format!(
                "{} -> {}: {msg}",
                source.name(),
                target.name()
            )))
        };
        if obj.len() != source.num_objects() || mor.len() != source.num_morphisms() {
            return bad("map sizes do not match the source category".into());
        }
        if let Some(o) = obj.iter().find(|o| o.0 >= target.num_objects()) {
            return bad(format!("object #{} out of range", o.0));
        }
        if let Some(m) = mor.iter().find(|m| m.0 >= target.num_morphisms()) {
            return bad(format!("morphism #{} out of range", m.0));
        }
        for f in source.morphisms() {
            let g = mor[f.0];
            if target.source(g) != obj[source.source(f).0]
                || target.target(g) != obj[source.target(f).0]
            {
                return bad(format!(
                    "image of {} has the wrong endpoints",
                    source.morphism_label(f)
                ));
            }
        }
        for a in source.objects() {
            if mor[source.identity(a).0] != target.identity(obj[a.0]) {
                return bad(format!("identity of {} not preserved", source.object_label(a)));
            }
        }
        for f in source.morphisms() {
            for g in source.morphisms() {
                if let Some(gf) = source.try_compose(g, f) {
                    if target.compose(mor[g.0], mor[f.0]) != mor[gf.0] {
                        return bad(format!(
                            "composite {} ∘ {} not preserved",
                            source.morphism_label(g),
                            source.morphism_label(f)
                        ));
                    }
                }
            }
        }
        Ok(FinFunctor {
            source,
            target,
            obj,
            mor,
        })
    }

    /// Functor into a thin category, given on objects only.
    pub fn from_object_map(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj: Vec<ObjId>,
    ) -> Result<Self> {
        if obj.len() != source.num_objects() {
            return Err(Error::InvalidFunctor("object map size mismatch".into()));
        }
        let mut mor = Vec::with_capacity(source.num_morphisms());
        for f in source.morphisms() {
            let (a, b) = (obj[source.source(f).0], obj[source.target(f).0]);
            match target.hom(a, b) {
                [g] => mor.push(*g),
                [] => {
                    return Err(Error::InvalidFunctor(format!(
                        "no morphism for the image of {}",
                        source.morphism_label(f)
                    )))
                }
                _ => {
                    return Err(Error::InvalidFunctor(
                        "object map is ambiguous: target is not thin".into(),
                    ))
                }
            }
        }
        Self::new(source, target, obj, mor)
    }

    pub fn identity(c: &Arc<FinCategory>) -> Self {
        FinFunctor {
            source: c.clone(),
            target: c.clone(),
            obj: c.objects().collect(),
            mor: c.morphisms().collect(),
        }
    }

    /// The functor `e -> C` picking out `a`.
    pub fn classifier(terminal: &Arc<FinCategory>, c: &Arc<FinCategory>, a: ObjId) -> Self {
        assert_eq!(terminal.num_objects(), 1);
        FinFunctor {
            source: terminal.clone(),
            target: c.clone(),
            obj: vec![a],
            mor: vec![c.identity(a)],
        }
    }

    /// The unique functor `C -> e`.
    pub fn to_terminal(c: &Arc<FinCategory>, terminal: &Arc<FinCategory>) -> Self {
        assert_eq!(terminal.num_morphisms(), 1);
        FinFunctor {
            source: c.clone(),
            target: terminal.clone(),
            obj: vec![ObjId(0); c.num_objects()],
            mor: vec![MorId(0); c.num_morphisms()],
        }
    }

    /// The unique functor `∅ -> C`.
    pub fn from_empty(empty: &Arc<FinCategory>, c: &Arc<FinCategory>) -> Self {
        assert_eq!(empty.num_objects(), 0);
        FinFunctor {
            source: empty.clone(),
            target: c.clone(),
            obj: Vec::new(),
            mor: Vec::new(),
        }
    }

    /// `self ∘ u`.
    pub fn after(&self, u: &FinFunctor) -> Result<Self> {
        if !same(&u.target, &self.source) {
            return Err(Error::Shape(format!(
                "cannot compose {:?} after {:?}",
                self, u
            )));
        }
        Ok(FinFunctor {
            source: u.source.clone(),
            target: self.target.clone(),
            obj: u.obj.iter().map(|a| self.obj[a.0]).collect(),
            mor: u.mor.iter().map(|f| self.mor[f.0]).collect(),
        })
    }

    pub(crate) fn from_parts_unchecked(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj: Vec<ObjId>,
        mor: Vec<MorId>,
    ) -> Self {
        FinFunctor {
            source,
            target,
            obj,
            mor,
        }
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn on_object(&self, a: ObjId) -> ObjId {
        self.obj[a.0]
    }

    pub fn on_morphism(&self, f: MorId) -> MorId {
        self.mor[f.0]
    }

    pub fn object_map(&self) -> &[ObjId] {
        &self.obj
    }

    pub fn morphism_map(&self) -> &[MorId] {
        &self.mor
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.target.num_objects()];
        self.obj.iter().all(|o| !std::mem::replace(&mut seen[o.0], true))
    }
}

/// Every functor `t -> c`, in lexicographic order of object then morphism
/// assignments. Exhaustive; only meant for very small `t`.
pub fn enumerate_functors(t: &Arc<FinCategory>, c: &Arc<FinCategory>) -> Vec<FinFunctor> {
    let mut out = Vec::new();
    let n = t.num_objects();
    let mut obj = vec![ObjId(0); n];
    enumerate_objects(t, c, 0, &mut obj, &mut out);
    out
}

fn enumerate_objects(
    t: &Arc<FinCategory>,
    c: &Arc<FinCategory>,
    i: usize,
    obj: &mut Vec<ObjId>,
    out: &mut Vec<FinFunctor>,
) {
    if i == obj.len() {
        let mut mor = vec![MorId(0); t.num_morphisms()];
        enumerate_morphisms(t, c, 0, obj, &mut mor, out);
        return;
    }
    for a in c.objects() {
        obj[i] = a;
        enumerate_objects(t, c, i + 1, obj, out);
    }
}

fn enumerate_morphisms(
    t: &Arc<FinCategory>,
    c: &Arc<FinCategory>,
    i: usize,
    obj: &[ObjId],
    mor: &mut Vec<MorId>,
    out: &mut Vec<FinFunctor>,
) {
    if i == mor.len() {
        if let Ok(f) = FinFunctor::new(t.clone(), c.clone(), obj.to_vec(), mor.clone()) {
            out.push(f);
        }
        return;
    }
    let f = MorId(i);
    let (a, b) = (obj[t.source(f).0], obj[t.target(f).0]);
    if t.is_identity(f) {
        mor[i] = c.identity(a);
        enumerate_morphisms(t, c, i + 1, obj, mor, out);
        return;
    }
    for &g in c.hom(a, b) {
        mor[i] = g;
        enumerate_morphisms(t, c, i + 1, obj, mor, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{construct_standard, StandardShape};

    fn arc(s: StandardShape) -> Arc<FinCategory> {
        Arc::new(construct_standard(&s).unwrap())
    }

    #[test]
    fn functors_from_arrow_are_morphisms() {
        let one = arc(StandardShape::Ordinal(1));
        let two = arc(StandardShape::Ordinal(2));
        assert_eq!(enumerate_functors(&one, &two).len(), two.num_morphisms());
        let e = arc(StandardShape::Terminal);
        assert_eq!(enumerate_functors(&e, &two).len(), 3);
    }

    #[test]
    fn broken_composite_is_rejected() {
        let two = arc(StandardShape::Ordinal(2));
        let one = arc(StandardShape::Ordinal(1));
        // Send 0->1 to the identity of 0 while keeping objects apart.
        let obj = vec![ObjId(0), ObjId(1)];
        let mor: Vec<MorId> = one
            .morphisms()
            .map(|f| {
                if one.is_identity(f) {
                    two.identity(obj[one.source(f).0])
                } else {
                    two.identity(ObjId(0))
                }
            })
            .collect();
        assert!(FinFunctor::new(one, two, obj, mor).is_err());
    }

    #[test]
    fn composition_is_strict() {
        let one = arc(StandardShape::Ordinal(1));
        let two = arc(StandardShape::Ordinal(2));
        let e = arc(StandardShape::Terminal);
        let u = FinFunctor::from_object_map(one.clone(), two.clone(), vec![ObjId(0), ObjId(2)])
            .unwrap();
        let p = FinFunctor::to_terminal(&two, &e);
        assert_eq!(p.after(&u).unwrap(), FinFunctor::to_terminal(&one, &e));
        assert_eq!(FinFunctor::identity(&two).after(&u).unwrap(), u);
    }
}
