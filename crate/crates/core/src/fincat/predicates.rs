use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::functor::same;
use super::{FinCategory, FinFunctor, FinNatTrans, MorId, ObjId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SieveKind {
    Sieve,
    Cosieve,
    Both,
    Neither,
}

impl SieveKind {
    pub fn is_sieve(self) -> bool {
        matches!(self, SieveKind::Sieve | SieveKind::Both)
    }

    pub fn is_cosieve(self) -> bool {
        matches!(self, SieveKind::Cosieve | SieveKind::Both)
    }
}

/// Why a functor fails to be fully faithful (or injective on objects).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaithfulnessWitness {
    /// Two distinct parallel morphisms with the same image.
    NotFaithful { first: MorId, second: MorId },
    /// A morphism `u(a) -> u(b)` that is not the image of any `a -> b`.
    NotFull { a: ObjId, b: ObjId, missed: MorId },
    /// Two objects with the same image.
    NotInjectiveOnObjects { first: ObjId, second: ObjId },
}

impl FaithfulnessWitness {
    pub fn describe(&self, u: &FinFunctor) -> String {
        let (j, k) = (u.source(), u.target());
        match *self {
            FaithfulnessWitness::NotFaithful { first, second } => format!(
                "{} and {} have the same image",
                j.morphism_label(first),
                j.morphism_label(second)
            ),
            FaithfulnessWitness::NotFull { a, b, missed } => format!(
                "{} is not the image of a map {} -> {}",
                k.morphism_label(missed),
                j.object_label(a),
                j.object_label(b)
            ),
            FaithfulnessWitness::NotInjectiveOnObjects { first, second } => format!(
                "objects {} and {} have the same image",
                j.object_label(first),
                j.object_label(second)
            ),
        }
    }
}

/// `Ok(())` iff every hom-set maps bijectively.
pub fn is_fully_faithful(u: &FinFunctor) -> std::result::Result<(), FaithfulnessWitness> {
    let (j, k) = (u.source(), u.target());
    for a in j.objects() {
        for b in j.objects() {
            let hom = j.hom(a, b);
            let mut hit = vec![None; k.num_morphisms()];
            for &f in hom {
                let g = u.on_morphism(f);
                if let Some(prev) = hit[g.0] {
                    return Err(FaithfulnessWitness::NotFaithful {
                        first: prev,
                        second: f,
                    });
                }
                hit[g.0] = Some(f);
            }
            for &g in k.hom(u.on_object(a), u.on_object(b)) {
                if hit[g.0].is_none() {
                    return Err(FaithfulnessWitness::NotFull { a, b, missed: g });
                }
            }
        }
    }
    Ok(())
}

fn injective_on_objects(u: &FinFunctor) -> std::result::Result<(), FaithfulnessWitness> {
    let mut seen: Vec<Option<ObjId>> = vec![None; u.target().num_objects()];
    for a in u.source().objects() {
        let b = u.on_object(a);
        if let Some(prev) = seen[b.0] {
            return Err(FaithfulnessWitness::NotInjectiveOnObjects {
                first: prev,
                second: a,
            });
        }
        seen[b.0] = Some(a);
    }
    Ok(())
}

/// Classifies a fully faithful, injective-on-objects functor.
pub fn sieve_kind(u: &FinFunctor) -> Result<SieveKind> {
    if let Err(w) = injective_on_objects(u).and_then(|_| is_fully_faithful(u)) {
        return Err(Error::Precondition(format!(
            "sieve classification needs a fully faithful functor injective on objects: {}",
            w.describe(u)
        )));
    }
    let k = u.target();
    let mut image = vec![false; k.num_objects()];
    for &b in u.object_map() {
        image[b.0] = true;
    }
    let mut sieve = true;
    let mut cosieve = true;
    for f in k.morphisms() {
        let (s, t) = (k.source(f), k.target(f));
        if image[t.0] && !image[s.0] {
            sieve = false;
        }
        if image[s.0] && !image[t.0] {
            cosieve = false;
        }
    }
    Ok(match (sieve, cosieve) {
        (true, true) => SieveKind::Both,
        (true, false) => SieveKind::Sieve,
        (false, true) => SieveKind::Cosieve,
        (false, false) => SieveKind::Neither,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Extremal {
    Initial,
    Final,
}

/// The smallest-id object with exactly one map to (initial) or from
/// (final) every object.
pub fn extremal_object(c: &FinCategory, kind: Extremal) -> Option<ObjId> {
    c.objects().find(|&a| {
        c.objects().all(|x| match kind {
            Extremal::Initial => c.hom(a, x).len() == 1,
            Extremal::Final => c.hom(x, a).len() == 1,
        })
    })
}

/// Outcome of checking the triangle identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionCheck {
    pub holds: bool,
    /// Names the first failing triangle and the object where it fails.
    pub failure: Option<String>,
}

/// `l: B -> A`, `r: A -> B`, `unit: id_B ⇒ r∘l`, `counit: l∘r ⇒ id_A`.
pub fn check_adjunction(
    l: &FinFunctor,
    r: &FinFunctor,
    unit: &FinNatTrans,
    counit: &FinNatTrans,
) -> Result<AdjunctionCheck> {
    let (b, a) = (l.source(), l.target());
    if !same(r.source(), a) || !same(r.target(), b) {
        return Err(Error::Shape("l and r are not opposed".into()));
    }
    let rl = r.after(l)?;
    let lr = l.after(r)?;
    if *unit.source() != FinFunctor::identity(b) || *unit.target() != rl {
        return Err(Error::Shape("unit must have type id ⇒ r∘l".into()));
    }
    if *counit.source() != lr || *counit.target() != FinFunctor::identity(a) {
        return Err(Error::Shape("counit must have type l∘r ⇒ id".into()));
    }
    for y in b.objects() {
        let ly = l.on_object(y);
        let m = a.compose(counit.component(ly), l.on_morphism(unit.component(y)));
        if m != a.identity(ly) {
            return Ok(AdjunctionCheck {
                holds: false,
                failure: Some(format!(
                    "triangle εl ∘ lη ≠ id_l at {}",
                    b.object_label(y)
                )),
            });
        }
    }
    for x in a.objects() {
        let rx = r.on_object(x);
        let m = b.compose(r.on_morphism(counit.component(x)), unit.component(rx));
        if m != b.identity(rx) {
            return Ok(AdjunctionCheck {
                holds: false,
                failure: Some(format!(
                    "triangle rε ∘ ηr ≠ id_r at {}",
                    a.object_label(x)
                )),
            });
        }
    }
    Ok(AdjunctionCheck {
        holds: true,
        failure: None,
    })
}

/// The forced adjunction `π_B ⊣ (final object)`: returns `(l, r, unit,
/// counit)` with `l = π_B: B -> e`.
pub fn final_object_adjunction(
    b: &Arc<FinCategory>,
    e: &Arc<FinCategory>,
) -> Result<(FinFunctor, FinFunctor, FinNatTrans, FinNatTrans)> {
    let top = extremal_object(b, Extremal::Final)
        .ok_or_else(|| Error::Precondition(format!("{} has no final object", b.name())))?;
    let l = FinFunctor::to_terminal(b, e);
    let r = FinFunctor::classifier(e, b, top);
    let rl = r.after(&l)?;
    let unit = FinNatTrans::new(
        FinFunctor::identity(b),
        rl,
        b.objects().map(|x| b.hom(x, top)[0]).collect(),
    )?;
    let counit = FinNatTrans::identity(&FinFunctor::identity(e));
    Ok((l, r, unit, counit))
}

/// The forced adjunction `(initial object) ⊣ π_B`: `(l, r, unit, counit)`
/// with `r = π_B`.
pub fn initial_object_adjunction(
    b: &Arc<FinCategory>,
    e: &Arc<FinCategory>,
) -> Result<(FinFunctor, FinFunctor, FinNatTrans, FinNatTrans)> {
    let bot = extremal_object(b, Extremal::Initial)
        .ok_or_else(|| Error::Precondition(format!("{} has no initial object", b.name())))?;
    let l = FinFunctor::classifier(e, b, bot);
    let r = FinFunctor::to_terminal(b, e);
    let unit = FinNatTrans::identity(&FinFunctor::identity(e));
    let counit = FinNatTrans::new(
        l.after(&r)?,
        FinFunctor::identity(b),
        b.objects().map(|x| b.hom(bot, x)[0]).collect(),
    )?;
    Ok((l, r, unit, counit))
}

/// A pair `(a, g: u(a) -> b)` with no cocartesian lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpfibrationWitness {
    pub object: ObjId,
    pub morphism: MorId,
}

impl fmt::Display for OpfibrationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "no cocartesian lift of morphism #{} at object #{}",
            self.morphism.0, self.object.0
        )
    }
}

/// Exhaustive search for cocartesian lifts.
pub fn is_grothendieck_opfibration(u: &FinFunctor) -> std::result::Result<(), OpfibrationWitness> {
    let (a, b) = (u.source(), u.target());
    for x in a.objects() {
        for y in b.objects() {
            for &g in b.hom(u.on_object(x), y) {
                let lifted = a
                    .objects()
                    .filter(|&x1| u.on_object(x1) == y)
                    .flat_map(|x1| a.hom(x, x1).iter().copied())
                    .filter(|&phi| u.on_morphism(phi) == g)
                    .any(|phi| is_cocartesian_lift(u, phi, g));
                if !lifted {
                    return Err(OpfibrationWitness {
                        object: x,
                        morphism: g,
                    });
                }
            }
        }
    }
    Ok(())
}

fn is_cocartesian_lift(u: &FinFunctor, phi: MorId, g: MorId) -> bool {
    let (a, b) = (u.source(), u.target());
    let (x, x1) = (a.source(phi), a.target(phi));
    for x2 in a.objects() {
        for &psi in a.hom(x, x2) {
            for &h in b.hom(b.target(g), u.on_object(x2)) {
                if b.compose(h, g) != u.on_morphism(psi) {
                    continue;
                }
                let n = a
                    .hom(x1, x2)
                    .iter()
                    .filter(|&&chi| u.on_morphism(chi) == h && a.compose(chi, phi) == psi)
                    .count();
                if n != 1 {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::standard::{product_projections, objects_by_label, full_subcategory};
    use crate::fincat::{construct_standard, CategoryTables, Morphism, StandardShape};

    fn arc(s: StandardShape) -> Arc<FinCategory> {
        Arc::new(construct_standard(&s).unwrap())
    }

    fn i1() -> FinFunctor {
        let one = arc(StandardShape::Ordinal(1));
        let corner = arc(StandardShape::Corner);
        let obj = objects_by_label(&corner, &["(0,0)", "(1,0)"]).unwrap();
        FinFunctor::from_object_map(one, corner, obj).unwrap()
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(sieve_kind(&i1()).unwrap(), SieveKind::Sieve);
        let e = arc(StandardShape::Terminal);
        let one = arc(StandardShape::Ordinal(1));
        let c1 = FinFunctor::classifier(&e, &one, ObjId(1));
        assert_eq!(sieve_kind(&c1).unwrap(), SieveKind::Cosieve);
        let corner = arc(StandardShape::Corner);
        let iso = objects_by_label(&corner, &["(0,1)"]).unwrap();
        let (_, inc) = full_subcategory(&corner, &iso, "pt").unwrap();
        assert_eq!(sieve_kind(&inc).unwrap(), SieveKind::Cosieve);
        let p = FinFunctor::to_terminal(&one, &e);
        assert!(matches!(sieve_kind(&p), Err(Error::Precondition(_))));
    }

    #[test]
    fn fully_faithful_examples() {
        let sq = arc(StandardShape::Square);
        let objs = objects_by_label(&sq, &["(0,0)", "(0,1)", "(1,0)"]).unwrap();
        let (_, i_corner) = full_subcategory(&sq, &objs, "⌜").unwrap();
        assert!(is_fully_faithful(&i_corner).is_ok());
        let e = arc(StandardShape::Terminal);
        let one = arc(StandardShape::Ordinal(1));
        let p = FinFunctor::to_terminal(&one, &e);
        // [1] -> e is faithful on each hom-set but not full: e(*,*) is hit
        // from Hom(1,0) = ∅.
        assert!(matches!(
            is_fully_faithful(&p),
            Err(FaithfulnessWitness::NotFull { .. })
        ));
        assert!(is_fully_faithful(&FinFunctor::identity(&sq)).is_ok());
    }

    #[test]
    fn extremal_examples() {
        let sq = arc(StandardShape::Square);
        assert_eq!(
            extremal_object(&sq, Extremal::Final).map(|a| sq.object_label(a)),
            Some("(1,1)")
        );
        let c = arc(StandardShape::Corner);
        assert_eq!(
            extremal_object(&c, Extremal::Initial).map(|a| c.object_label(a)),
            Some("(0,0)")
        );
        let d = arc(StandardShape::Discrete(2));
        assert_eq!(extremal_object(&d, Extremal::Initial), None);
        assert_eq!(extremal_object(&d, Extremal::Final), None);
    }

    #[test]
    fn final_object_adjunction_holds() {
        let e = arc(StandardShape::Terminal);
        let one = arc(StandardShape::Ordinal(1));
        let (l, r, unit, counit) = final_object_adjunction(&one, &e).unwrap();
        assert!(check_adjunction(&l, &r, &unit, &counit).unwrap().holds);
        let (l, r, unit, counit) = initial_object_adjunction(&one, &e).unwrap();
        assert!(check_adjunction(&l, &r, &unit, &counit).unwrap().holds);
        let id = FinFunctor::identity(&one);
        let i = FinNatTrans::identity(&id);
        assert!(check_adjunction(&id, &id, &i, &i).unwrap().holds);
    }

    #[test]
    fn idempotent_unit_breaks_triangle() {
        let mut t = CategoryTables {
            name: "M".into(),
            objects: vec!["*".into()],
            morphisms: ["id", "k"]
                .iter()
                .map(|l| Morphism {
                    label: l.to_string(),
                    source: ObjId(0),
                    target: ObjId(0),
                })
                .collect(),
            identity: vec![Some(MorId(0))],
            ..Default::default()
        };
        crate::fincat::fill_identity_composites(&mut t);
        t.compose.insert((MorId(1), MorId(1)), MorId(1));
        let m = Arc::new(FinCategory::try_from(t).unwrap());
        let id = FinFunctor::identity(&m);
        let unit = FinNatTrans::new(id.clone(), id.clone(), vec![MorId(1)]).unwrap();
        let counit = FinNatTrans::identity(&id);
        let out = check_adjunction(&id, &id, &unit, &counit).unwrap();
        assert!(!out.holds);
        assert!(out.failure.unwrap().contains("εl ∘ lη"));
    }

    #[test]
    fn opfibration_examples() {
        let b = arc(StandardShape::Ordinal(1));
        let k = arc(StandardShape::Corner);
        let bk = arc(StandardShape::Product(b.clone(), k.clone()));
        let (p1, _) = product_projections(&b, &k, &bk);
        assert!(is_grothendieck_opfibration(&p1).is_ok());
        assert!(is_grothendieck_opfibration(&FinFunctor::identity(&k)).is_ok());
        let e = arc(StandardShape::Terminal);
        let c0 = FinFunctor::classifier(&e, &b, ObjId(0));
        let w = is_grothendieck_opfibration(&c0).unwrap_err();
        assert_eq!(b.morphism_label(w.morphism), "0->1");
        // Cosieves are opfibrations: the classifier of 1 lifts id_1 only.
        let c1 = FinFunctor::classifier(&e, &b, ObjId(1));
        assert!(is_grothendieck_opfibration(&c1).is_ok());
    }
}
