use std::collections::HashMap;
use std::sync::Arc;

use super::functor::same;
use super::standard::trusted;
use super::{CategoryTables, FinCategory, FinFunctor, FinNatTrans, MorId, Morphism, ObjId};
use crate::error::{Error, Result};

/// An object `(j1, j2, f: u(j1) -> v(j2))` of a comma category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommaObject {
    pub left: ObjId,
    pub right: ObjId,
    pub arrow: MorId,
}

/// `(u/v)` with its projections and the canonical cell `u∘pr1 ⇒ v∘pr2`.
#[derive(Clone, Debug)]
pub struct Comma {
    pub category: Arc<FinCategory>,
    pub pr1: FinFunctor,
    pub pr2: FinFunctor,
    pub cell: FinNatTrans,
    pub objects: Vec<CommaObject>,
    index: HashMap<CommaObject, ObjId>,
    mor_index: HashMap<(ObjId, ObjId, MorId, MorId), MorId>,
}

impl Comma {
    pub fn find(&self, x: CommaObject) -> Option<ObjId> {
        self.index.get(&x).copied()
    }

    pub fn object(&self, a: ObjId) -> CommaObject {
        self.objects[a.0]
    }

    /// The morphism `x -> y` with components `(g1, g2)`, if it exists.
    pub fn find_morphism(&self, x: ObjId, y: ObjId, g1: MorId, g2: MorId) -> Option<MorId> {
        self.mor_index.get(&(x, y, g1, g2)).copied()
    }
}

pub fn comma_category(u: &FinFunctor, v: &FinFunctor) -> Result<Comma> {
    if !same(u.target(), v.target()) {
        return Err(Error::Shape(format!(
            "comma of functors into {} and {}",
            u.target().name(),
            v.target().name()
        )));
    }
    let (a, b, k) = (u.source(), v.source(), u.target());
    let mut objects = Vec::new();
    for j1 in a.objects() {
        for j2 in b.objects() {
            for &f in k.hom(u.on_object(j1), v.on_object(j2)) {
                objects.push(CommaObject {
                    left: j1,
                    right: j2,
                    arrow: f,
                });
            }
        }
    }
    if objects.len() > super::MAX_OBJECTS {
        return Err(Error::Guardrail(format!(
            "comma category would have {} objects",
            objects.len()
        )));
    }
    let index: HashMap<CommaObject, ObjId> = objects
        .iter()
        .enumerate()
        .map(|(i, &x)| (x, ObjId(i)))
        .collect();

    let mut t = CategoryTables {
        name: format!("({}/{})", a.name(), b.name()),
        objects: objects
            .iter()
            .map(|x| {
                format!(
                    "({},{},{})",
                    a.object_label(x.left),
                    b.object_label(x.right),
                    k.morphism_label(x.arrow)
                )
            })
            .collect(),
        identity: vec![None; objects.len()],
        ..Default::default()
    };
    let mut parts: Vec<(MorId, MorId)> = Vec::new();
    let mut mor_index: HashMap<(ObjId, ObjId, MorId, MorId), MorId> = HashMap::new();
    for (s, x) in objects.iter().enumerate() {
        for (d, y) in objects.iter().enumerate() {
            for &g1 in a.hom(x.left, y.left) {
                for &g2 in b.hom(x.right, y.right) {
                    let lhs = k.compose(y.arrow, u.on_morphism(g1));
                    let rhs = k.compose(v.on_morphism(g2), x.arrow);
                    if lhs != rhs {
                        continue;
                    }
                    let id = MorId(t.morphisms.len());
                    if s == d && a.is_identity(g1) && b.is_identity(g2) {
                        t.identity[s] = Some(id);
                    }
                    mor_index.insert((ObjId(s), ObjId(d), g1, g2), id);
                    parts.push((g1, g2));
                    t.morphisms.push(Morphism {
                        label: format!("({},{})", a.morphism_label(g1), b.morphism_label(g2)),
                        source: ObjId(s),
                        target: ObjId(d),
                    });
                    if t.morphisms.len() > super::MAX_MORPHISMS {
                        return Err(Error::Guardrail(
                            "comma category exceeds the morphism cap".into(),
                        ));
                    }
                }
            }
        }
    }
    disambiguate_labels(&mut t);

    let mut outgoing = vec![Vec::new(); objects.len()];
    for (i, m) in t.morphisms.iter().enumerate() {
        outgoing[m.source.0].push(MorId(i));
    }
    for f in 0..t.morphisms.len() {
        let (x, y) = (t.morphisms[f].source, t.morphisms[f].target);
        for &g in &outgoing[y.0] {
            let z = t.morphisms[g.0].target;
            let g1 = a.compose(parts[g.0].0, parts[f].0);
            let g2 = b.compose(parts[g.0].1, parts[f].1);
            let h = mor_index[&(x, z, g1, g2)];
            t.compose.insert((g, MorId(f)), h);
        }
    }

    let cat = Arc::new(trusted(t)?);
    let pr1 = FinFunctor::from_parts_unchecked(
        cat.clone(),
        a.clone(),
        objects.iter().map(|x| x.left).collect(),
        parts.iter().map(|p| p.0).collect(),
    );
    let pr2 = FinFunctor::from_parts_unchecked(
        cat.clone(),
        b.clone(),
        objects.iter().map(|x| x.right).collect(),
        parts.iter().map(|p| p.1).collect(),
    );
    let cell = FinNatTrans::from_parts_unchecked(
        u.after(&pr1)?,
        v.after(&pr2)?,
        objects.iter().map(|x| x.arrow).collect(),
    );
    Ok(Comma {
        category: cat,
        pr1,
        pr2,
        cell,
        objects,
        index,
        mor_index,
    })
}

/// Output of [`strict_pullback`].
#[derive(Clone, Debug)]
pub struct StrictPullback {
    pub category: Arc<FinCategory>,
    /// Projection to the source of `w`.
    pub p: FinFunctor,
    /// Projection to the source of `q`.
    pub v: FinFunctor,
}

/// `C ×_D B` for `w: C -> D`, `q: B -> D`: pairs of objects and pairs of
/// morphisms with equal images.
pub fn strict_pullback(w: &FinFunctor, q: &FinFunctor) -> Result<StrictPullback> {
    if !same(w.target(), q.target()) {
        return Err(Error::Shape("pullback of functors with different codomains".into()));
    }
    let (c, b) = (w.source(), q.source());
    let mut objs = Vec::new();
    for x in c.objects() {
        for y in b.objects() {
            if w.on_object(x) == q.on_object(y) {
                objs.push((x, y));
            }
        }
    }
    if objs.len() > super::MAX_OBJECTS {
        return Err(Error::Guardrail(format!(
            "pullback would have {} objects",
            objs.len()
        )));
    }
    let mut t = CategoryTables {
        name: format!("{}×{}", c.name(), b.name()),
        objects: objs
            .iter()
            .map(|&(x, y)| format!("({},{})", c.object_label(x), b.object_label(y)))
            .collect(),
        identity: vec![None; objs.len()],
        ..Default::default()
    };
    let mut parts = Vec::new();
    let mut idx = HashMap::new();
    for (s, &(x, y)) in objs.iter().enumerate() {
        for (d, &(x2, y2)) in objs.iter().enumerate() {
            for &f in c.hom(x, x2) {
                for &g in b.hom(y, y2) {
                    if w.on_morphism(f) != q.on_morphism(g) {
                        continue;
                    }
                    let id = MorId(t.morphisms.len());
                    if s == d && c.is_identity(f) && b.is_identity(g) {
                        t.identity[s] = Some(id);
                    }
                    idx.insert((f, g), id);
                    parts.push((f, g));
                    t.morphisms.push(Morphism {
                        label: format!("({},{})", c.morphism_label(f), b.morphism_label(g)),
                        source: ObjId(s),
                        target: ObjId(d),
                    });
                    if t.morphisms.len() > super::MAX_MORPHISMS {
                        return Err(Error::Guardrail("pullback exceeds the morphism cap".into()));
                    }
                }
            }
        }
    }
    for (i, &(f1, g1)) in parts.iter().enumerate() {
        for (j, &(f2, g2)) in parts.iter().enumerate() {
            if t.morphisms[i].target == t.morphisms[j].source {
                let h = idx[&(c.compose(f2, f1), b.compose(g2, g1))];
                t.compose.insert((MorId(j), MorId(i)), h);
            }
        }
    }
    let cat = Arc::new(trusted(t)?);
    let p = FinFunctor::from_parts_unchecked(
        cat.clone(),
        c.clone(),
        objs.iter().map(|o| o.0).collect(),
        parts.iter().map(|m| m.0).collect(),
    );
    let v = FinFunctor::from_parts_unchecked(
        cat.clone(),
        b.clone(),
        objs.iter().map(|o| o.1).collect(),
        parts.iter().map(|m| m.1).collect(),
    );
    Ok(StrictPullback { category: cat, p, v })
}

/// Appends endpoint indices to morphism labels that would otherwise clash.
fn disambiguate_labels(t: &mut CategoryTables) {
    let mut count: HashMap<String, usize> = HashMap::new();
    for m in &t.morphisms {
        *count.entry(m.label.clone()).or_default() += 1;
    }
    for m in &mut t.morphisms {
        if count[&m.label] > 1 {
            m.label = format!("{}@{}>{}", m.label, m.source.0, m.target.0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{
        construct_standard, extremal_object, validate_category, Extremal, StandardShape,
    };

    fn arc(s: StandardShape) -> Arc<FinCategory> {
        Arc::new(construct_standard(&s).unwrap())
    }

    #[test]
    fn comma_of_one_over_zero_is_empty() {
        let e = arc(StandardShape::Terminal);
        let one = arc(StandardShape::Ordinal(1));
        let c1 = FinFunctor::classifier(&e, &one, ObjId(1));
        let c0 = FinFunctor::classifier(&e, &one, ObjId(0));
        let c = comma_category(&c1, &c0).unwrap();
        assert_eq!(c.category.num_objects(), 0);
    }

    #[test]
    fn identity_over_final_object_is_arrow() {
        let e = arc(StandardShape::Terminal);
        let one = arc(StandardShape::Ordinal(1));
        let c1 = FinFunctor::classifier(&e, &one, ObjId(1));
        let c = comma_category(&FinFunctor::identity(&one), &c1).unwrap();
        assert_eq!(c.category.num_objects(), 2);
        assert_eq!(c.category.num_morphisms(), 3);
        let fin = extremal_object(&c.category, Extremal::Final).unwrap();
        let x = c.object(fin);
        assert_eq!(x.left, ObjId(1));
        assert!(one.is_identity(x.arrow));
        assert!(validate_category(&c.category.to_tables()).is_empty());
    }

    #[test]
    fn comma_from_empty_is_empty() {
        let z = arc(StandardShape::Empty);
        let sq = arc(StandardShape::Square);
        let u = FinFunctor::from_empty(&z, &sq);
        let c = comma_category(&u, &FinFunctor::identity(&sq)).unwrap();
        assert_eq!(c.category.num_objects(), 0);
    }

    #[test]
    fn mismatched_codomains_rejected() {
        let e = arc(StandardShape::Terminal);
        let one = arc(StandardShape::Ordinal(1));
        let two = arc(StandardShape::Ordinal(2));
        let a = FinFunctor::classifier(&e, &one, ObjId(0));
        let b = FinFunctor::classifier(&e, &two, ObjId(0));
        assert!(comma_category(&a, &b).is_err());
    }

    #[test]
    fn non_thin_comma_validates() {
        // Comma of the identity of square against itself: the arrow category.
        let sq = arc(StandardShape::Square);
        let id = FinFunctor::identity(&sq);
        let c = comma_category(&id, &id).unwrap();
        assert_eq!(c.category.num_objects(), 9);
        assert!(validate_category(&c.category.to_tables()).is_empty());
    }
}
