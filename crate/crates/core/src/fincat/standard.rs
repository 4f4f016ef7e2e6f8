use std::sync::Arc;

use super::{
    fill_identity_composites, validate_category, CategoryTables, FinCategory, FinFunctor, MorId,
    Morphism, ObjId, Violation, MAX_MORPHISMS, MAX_OBJECTS,
};
use crate::error::{Error, Result};

/// The named constructions accepted by [`construct_standard`].
#[derive(Clone, Debug)]
pub enum StandardShape {
    Terminal,
    Empty,
    /// `[n] = {0 < 1 < ... < n}`.
    Ordinal(usize),
    /// `⌜`: the square without its final corner.
    Corner,
    /// `□ = [1] × [1]`.
    Square,
    Discrete(usize),
    /// A partial order given by labels and `a ≤ b` pairs; reflexive pairs
    /// may be omitted.
    Poset {
        objects: Vec<String>,
        relation: Vec<(String, String)>,
    },
    Product(Arc<FinCategory>, Arc<FinCategory>),
    Coproduct(Arc<FinCategory>, Arc<FinCategory>),
    Opposite(Arc<FinCategory>),
    /// `C` with a final object `top` adjoined.
    Cocone(Arc<FinCategory>),
}

pub fn construct_standard(shape: &StandardShape) -> Result<FinCategory> {
    match shape {
        StandardShape::Terminal => poset_from_leq("e", vec!["*".into()], |_, _| true),
        StandardShape::Empty => trusted(CategoryTables {
            name: "∅".into(),
            ..Default::default()
        }),
        StandardShape::Ordinal(n) => {
            guard(n + 1, 0)?;
            poset_from_leq(
                &format!("[{n}]"),
                (0..=*n).map(|i| i.to_string()).collect(),
                |a, b| a <= b,
            )
        }
        StandardShape::Square | StandardShape::Corner => {
            let all = ["(0,0)", "(0,1)", "(1,0)", "(1,1)"];
            let keep = if matches!(shape, StandardShape::Square) { 4 } else { 3 };
            let coords = [(0, 0), (0, 1), (1, 0), (1, 1)];
            poset_from_leq(
                if keep == 4 { "□" } else { "⌜" },
                all[..keep].iter().map(|s| s.to_string()).collect(),
                |a, b| coords[a].0 <= coords[b].0 && coords[a].1 <= coords[b].1,
            )
        }
        StandardShape::Discrete(n) => {
            guard(*n, 0)?;
            poset_from_leq(
                &format!("discrete({n})"),
                (0..*n).map(|i| i.to_string()).collect(),
                |a, b| a == b,
            )
        }
        StandardShape::Poset { objects, relation } => poset(objects, relation),
        StandardShape::Product(c, d) => product(c, d),
        StandardShape::Coproduct(c, d) => coproduct(c, d),
        StandardShape::Opposite(c) => Ok(opposite(c)),
        StandardShape::Cocone(c) => cocone(c),
    }
}

fn guard(objects: usize, morphisms: usize) -> Result<()> {
    if objects > MAX_OBJECTS || morphisms > MAX_MORPHISMS {
        return Err(Error::Guardrail(
            Violation::TooLarge {
                objects,
                morphisms,
            }
            .to_string(),
        ));
    }
    Ok(())
}

/// Builds from tables known to satisfy the laws; only the size cap is
/// enforced. Debug builds still run the full validation.
pub(crate) fn trusted(t: CategoryTables) -> Result<FinCategory> {
    guard(t.objects.len(), t.morphisms.len())?;
    debug_assert!(
        t.morphisms.len() > 300 || validate_category(&t).is_empty(),
        "{}: {:?}",
        t.name,
        validate_category(&t)
    );
    Ok(FinCategory::from_valid(t))
}

fn poset_from_leq(
    name: &str,
    labels: Vec<String>,
    leq: impl Fn(usize, usize) -> bool,
) -> Result<FinCategory> {
    let n = labels.len();
    guard(n, 0)?;
    let mut t = CategoryTables {
        name: name.into(),
        ..Default::default()
    };
    let mut index = vec![vec![None; n]; n];
    for a in 0..n {
        index[a][a] = Some(MorId(t.morphisms.len()));
        t.identity.push(Some(MorId(t.morphisms.len())));
        t.morphisms.push(Morphism {
            label: format!("id({})", labels[a]),
            source: ObjId(a),
            target: ObjId(a),
        });
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && leq(a, b) {
                index[a][b] = Some(MorId(t.morphisms.len()));
                t.morphisms.push(Morphism {
                    label: format!("{}->{}", labels[a], labels[b]),
                    source: ObjId(a),
                    target: ObjId(b),
                });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let Some(f) = index[a][b] else { continue };
            for (bc, ac) in index[b].iter().zip(&index[a]) {
                if let (Some(g), Some(h)) = (*bc, *ac) {
                    t.compose.insert((g, f), h);
                }
            }
        }
    }
    t.objects = labels;
    trusted(t)
}

fn poset(objects: &[String], relation: &[(String, String)]) -> Result<FinCategory> {
    let n = objects.len();
    guard(n, 0)?;
    let find = |l: &str| {
        objects
            .iter()
            .position(|o| o == l)
            .ok_or_else(|| Error::Dangling(l.to_string()))
    };
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for (a, b) in relation {
        leq[find(a)?][find(b)?] = true;
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && leq[a][b] && leq[b][a] {
                return Err(Error::NotAPartialOrder(format!(
                    "not antisymmetric: {} ≤ {} and {} ≤ {}",
                    objects[a], objects[b], objects[b], objects[a]
                )));
            }
            for c in 0..n {
                if leq[a][b] && leq[b][c] && !leq[a][c] {
                    return Err(Error::NotAPartialOrder(format!(
                        "not transitive: {} ≤ {} ≤ {} but not {} ≤ {}",
                        objects[a], objects[b], objects[c], objects[a], objects[c]
                    )));
                }
            }
        }
    }
    poset_from_leq("poset", objects.to_vec(), |a, b| leq[a][b])
}

/// Object `(i, j)` of `C × D` has id `i * |D| + j`; likewise morphisms.
pub(crate) fn product(c: &FinCategory, d: &FinCategory) -> Result<FinCategory> {
    let (nc, nd) = (c.num_objects(), d.num_objects());
    let (mc, md) = (c.num_morphisms(), d.num_morphisms());
    guard(nc * nd, mc * md)?;
    let mut t = CategoryTables {
        name: format!("{}×{}", c.name(), d.name()),
        ..Default::default()
    };
    for a in c.objects() {
        for b in d.objects() {
            t.objects
                .push(format!("({},{})", c.object_label(a), d.object_label(b)));
            t.identity
                .push(Some(MorId(c.identity(a).0 * md + d.identity(b).0)));
        }
    }
    for f in c.morphisms() {
        for g in d.morphisms() {
            t.morphisms.push(Morphism {
                label: format!("({},{})", c.morphism_label(f), d.morphism_label(g)),
                source: ObjId(c.source(f).0 * nd + d.source(g).0),
                target: ObjId(c.target(f).0 * nd + d.target(g).0),
            });
        }
    }
    for (&(f2, f1), &f) in &c.compose {
        for (&(g2, g1), &g) in &d.compose {
            t.compose.insert(
                (MorId(f2.0 * md + g2.0), MorId(f1.0 * md + g1.0)),
                MorId(f.0 * md + g.0),
            );
        }
    }
    trusted(t)
}

/// The two projections out of `cd = c × d` (as built by [`product`]).
pub fn product_projections(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    cd: &Arc<FinCategory>,
) -> (FinFunctor, FinFunctor) {
    let (nd, md) = (d.num_objects(), d.num_morphisms());
    let p1 = FinFunctor::from_parts_unchecked(
        cd.clone(),
        c.clone(),
        cd.objects().map(|x| ObjId(x.0 / nd.max(1))).collect(),
        cd.morphisms().map(|f| MorId(f.0 / md.max(1))).collect(),
    );
    let p2 = FinFunctor::from_parts_unchecked(
        cd.clone(),
        d.clone(),
        cd.objects().map(|x| ObjId(x.0 % nd.max(1))).collect(),
        cd.morphisms().map(|f| MorId(f.0 % md.max(1))).collect(),
    );
    (p1, p2)
}

/// `u × v : A × B -> C × D` between products built by [`product`].
pub fn product_functor(
    u: &FinFunctor,
    v: &FinFunctor,
    ab: &Arc<FinCategory>,
    cd: &Arc<FinCategory>,
) -> FinFunctor {
    let (nb, mb) = (v.source().num_objects(), v.source().num_morphisms());
    let (nd, md) = (v.target().num_objects(), v.target().num_morphisms());
    let obj = ab
        .objects()
        .map(|x| ObjId(u.on_object(ObjId(x.0 / nb)).0 * nd + v.on_object(ObjId(x.0 % nb)).0))
        .collect();
    let mor = ab
        .morphisms()
        .map(|f| {
            MorId(u.on_morphism(MorId(f.0 / mb)).0 * md + v.on_morphism(MorId(f.0 % mb)).0)
        })
        .collect();
    FinFunctor::from_parts_unchecked(ab.clone(), cd.clone(), obj, mor)
}

/// Objects of `C ⊔ D` list `C` first.
fn coproduct(c: &FinCategory, d: &FinCategory) -> Result<FinCategory> {
    let (nc, mc) = (c.num_objects(), c.num_morphisms());
    guard(nc + d.num_objects(), mc + d.num_morphisms())?;
    let mut t = CategoryTables {
        name: format!("{}⊔{}", c.name(), d.name()),
        ..Default::default()
    };
    for (tag, k, n0, m0) in [(1, c, 0, 0), (2, d, nc, mc)] {
        for a in k.objects() {
            t.objects.push(format!("in{tag}({})", k.object_label(a)));
            t.identity.push(Some(MorId(k.identity(a).0 + m0)));
        }
        for f in k.morphisms() {
            t.morphisms.push(Morphism {
                label: format!("in{tag}({})", k.morphism_label(f)),
                source: ObjId(k.source(f).0 + n0),
                target: ObjId(k.target(f).0 + n0),
            });
        }
        for (&(g, f), &h) in &k.compose {
            t.compose
                .insert((MorId(g.0 + m0), MorId(f.0 + m0)), MorId(h.0 + m0));
        }
    }
    trusted(t)
}

/// The inclusions into `cd = c ⊔ d` (as built by [`construct_standard`]).
pub fn coproduct_inclusions(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    cd: &Arc<FinCategory>,
) -> (FinFunctor, FinFunctor) {
    let (nc, mc) = (c.num_objects(), c.num_morphisms());
    let i1 = FinFunctor::from_parts_unchecked(
        c.clone(),
        cd.clone(),
        c.objects().collect(),
        c.morphisms().collect(),
    );
    let i2 = FinFunctor::from_parts_unchecked(
        d.clone(),
        cd.clone(),
        d.objects().map(|a| ObjId(a.0 + nc)).collect(),
        d.morphisms().map(|f| MorId(f.0 + mc)).collect(),
    );
    (i1, i2)
}

/// Same ids and labels, endpoints swapped.
pub(crate) fn opposite(c: &FinCategory) -> FinCategory {
    let mut t = c.to_tables();
    t.name = format!("{}^op", c.name());
    for m in &mut t.morphisms {
        std::mem::swap(&mut m.source, &mut m.target);
    }
    t.compose = c.compose.iter().map(|(&(g, f), &h)| ((f, g), h)).collect();
    FinCategory::from_valid(t)
}

/// `u^op`, between the opposites built by [`construct_standard`].
pub fn opposite_functor(
    u: &FinFunctor,
    src_op: &Arc<FinCategory>,
    tgt_op: &Arc<FinCategory>,
) -> FinFunctor {
    FinFunctor::from_parts_unchecked(
        src_op.clone(),
        tgt_op.clone(),
        u.object_map().to_vec(),
        u.morphism_map().to_vec(),
    )
}

fn cocone(c: &FinCategory) -> Result<FinCategory> {
    let (n, m) = (c.num_objects(), c.num_morphisms());
    guard(n + 1, m + n + 1)?;
    let mut t = c.to_tables();
    t.name = format!("{}^▷", c.name());
    let top = ObjId(n);
    t.objects.push("top".into());
    let id_top = MorId(m);
    t.morphisms.push(Morphism {
        label: "id(top)".into(),
        source: top,
        target: top,
    });
    t.identity.push(Some(id_top));
    let leg = |a: ObjId| MorId(m + 1 + a.0);
    for a in c.objects() {
        t.morphisms.push(Morphism {
            label: format!("{}->top", c.object_label(a)),
            source: a,
            target: top,
        });
    }
    for f in c.morphisms() {
        t.compose.insert((leg(c.target(f)), f), leg(c.source(f)));
    }
    fill_identity_composites(&mut t);
    trusted(t)
}

/// The full subcategory on `objects` (kept in the given order) and its
/// inclusion.
pub fn full_subcategory(
    c: &Arc<FinCategory>,
    objects: &[ObjId],
    name: &str,
) -> Result<(Arc<FinCategory>, FinFunctor)> {
    let mut new_obj = vec![None; c.num_objects()];
    for (i, a) in objects.iter().enumerate() {
        new_obj[a.0] = Some(ObjId(i));
    }
    let mut t = CategoryTables {
        name: name.into(),
        objects: objects.iter().map(|&a| c.object_label(a).to_string()).collect(),
        ..Default::default()
    };
    let mut new_mor = vec![None; c.num_morphisms()];
    let mut mor_map = Vec::new();
    for f in c.morphisms() {
        if let (Some(s), Some(d)) = (new_obj[c.source(f).0], new_obj[c.target(f).0]) {
            new_mor[f.0] = Some(MorId(t.morphisms.len()));
            mor_map.push(f);
            t.morphisms.push(Morphism {
                label: c.morphism_label(f).to_string(),
                source: s,
                target: d,
            });
        }
    }
    t.identity = objects.iter().map(|&a| new_mor[c.identity(a).0]).collect();
    for (&(g, f), &h) in &c.compose {
        if let (Some(g), Some(f), Some(h)) = (new_mor[g.0], new_mor[f.0], new_mor[h.0]) {
            t.compose.insert((g, f), h);
        }
    }
    let sub = Arc::new(trusted(t)?);
    let inc = FinFunctor::from_parts_unchecked(sub.clone(), c.clone(), objects.to_vec(), mor_map);
    Ok((sub, inc))
}

/// Object ids of a category by label, for tests and fixtures.
pub fn objects_by_label(c: &FinCategory, labels: &[&str]) -> Result<Vec<ObjId>> {
    labels
        .iter()
        .map(|l| c.object(l).ok_or_else(|| Error::Dangling(l.to_string())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(s: StandardShape) -> Arc<FinCategory> {
        Arc::new(construct_standard(&s).unwrap())
    }

    #[test]
    fn counts() {
        let one = arc(StandardShape::Ordinal(1));
        assert_eq!((one.num_objects(), one.num_morphisms()), (2, 3));
        let corner = arc(StandardShape::Corner);
        assert_eq!((corner.num_objects(), corner.num_morphisms()), (3, 5));
        let sq = arc(StandardShape::Square);
        assert_eq!((sq.num_objects(), sq.num_morphisms()), (4, 9));
        assert_eq!(arc(StandardShape::Empty).num_objects(), 0);
        assert_eq!(arc(StandardShape::Discrete(2)).num_morphisms(), 2);
    }

    #[test]
    fn derived_constructions_validate() {
        let sq = arc(StandardShape::Square);
        let one = arc(StandardShape::Ordinal(1));
        for c in [
            construct_standard(&StandardShape::Product(one.clone(), sq.clone())).unwrap(),
            construct_standard(&StandardShape::Coproduct(one.clone(), sq.clone())).unwrap(),
            construct_standard(&StandardShape::Opposite(sq.clone())).unwrap(),
            construct_standard(&StandardShape::Cocone(sq.clone())).unwrap(),
        ] {
            assert!(validate_category(&c.to_tables()).is_empty(), "{c:?}");
        }
    }

    #[test]
    fn product_with_terminal_is_isomorphic() {
        let e = arc(StandardShape::Terminal);
        let c = arc(StandardShape::Corner);
        let ec = Arc::new(construct_standard(&StandardShape::Product(e.clone(), c.clone())).unwrap());
        let (_, p2) = product_projections(&e, &c, &ec);
        let back = FinFunctor::from_parts_unchecked(
            c.clone(),
            ec.clone(),
            c.objects().collect(),
            c.morphisms().collect(),
        );
        assert_eq!(p2.after(&back).unwrap(), FinFunctor::identity(&c));
        assert_eq!(back.after(&p2).unwrap(), FinFunctor::identity(&ec));
    }

    #[test]
    fn poset_errors_name_the_pair() {
        let objs = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let r = |p: &[(&str, &str)]| {
            p.iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect::<Vec<_>>()
        };
        let e = poset(&objs, &r(&[("a", "b"), ("b", "a")])).unwrap_err();
        assert!(matches!(&e, Error::NotAPartialOrder(m) if m.contains("a ≤ b")));
        let e = poset(&objs, &r(&[("a", "b"), ("b", "c")])).unwrap_err();
        assert!(matches!(&e, Error::NotAPartialOrder(m) if m.contains("not a ≤ c")));
        let ok = poset(&objs, &r(&[("a", "b"), ("b", "c"), ("a", "c")])).unwrap();
        assert!(ok.is_poset());
    }

    #[test]
    fn opposite_is_involutive() {
        let sq = arc(StandardShape::Square);
        assert_eq!(opposite(&opposite(&sq)), *sq);
    }

    #[test]
    fn corner_is_full_subcategory_of_square() {
        let sq = arc(StandardShape::Square);
        let objs = objects_by_label(&sq, &["(0,0)", "(0,1)", "(1,0)"]).unwrap();
        let (sub, _) = full_subcategory(&sq, &objs, "⌜").unwrap();
        assert_eq!(*sub, construct_standard(&StandardShape::Corner).unwrap());
    }
}
