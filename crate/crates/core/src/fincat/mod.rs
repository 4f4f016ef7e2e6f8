//! Finite categories as explicit, validated tables.
//!
//! Objects and morphisms are addressed by dense ids ([`ObjId`], [`MorId`]);
//! their string labels are what the text format and reports show. Equality
//! of categories, functors and transformations is literal table equality.

mod comma;
mod functor;
mod nat;
mod predicates;
mod square;
mod standard;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use comma::{comma_category, strict_pullback, Comma, CommaObject, StrictPullback};
pub use functor::{enumerate_functors, FinFunctor};
pub use nat::FinNatTrans;
pub use predicates::{
    check_adjunction, extremal_object, final_object_adjunction, initial_object_adjunction,
    is_fully_faithful, is_grothendieck_opfibration, sieve_kind, AdjunctionCheck, Extremal,
    FaithfulnessWitness, OpfibrationWitness, SieveKind,
};
pub use square::{Orientation, OrientedSquare, PasteDirection};
pub use standard::{
    
    construct_standard, coproduct_inclusions, full_subcategory, objects_by_label,
    opposite_functor, product_functor, product_projections, StandardShape,
};

/// Largest object count accepted for a category.
pub const MAX_OBJECTS: usize = 64;
/// Largest morphism count accepted for a category.
pub const MAX_MORPHISMS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MorId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub label: String,
    pub source: ObjId,
    pub target: ObjId,
}

/// Unvalidated category data: what a parser or a hand-built fixture
/// produces before [`validate_category`] has looked at it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategoryTables {
    pub name: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    /// Identity morphism per object, `None` where the table omits one.
    pub identity: Vec<Option<MorId>>,
    /// `(g, f) -> g ∘ f`.
    pub compose: BTreeMap<(MorId, MorId), MorId>,
}

/// One failed category law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooLarge { objects: usize, morphisms: usize },
    DuplicateObjectLabel(String),
    DuplicateMorphismLabel(String),
    DanglingEndpoint(MorId),
    MissingIdentity(ObjId),
    IdentityNotEndo { object: ObjId, morphism: MorId },
    MissingComposite { g: MorId, f: MorId },
    NotComposable { g: MorId, f: MorId },
    CompositeEndpoints { g: MorId, f: MorId, composite: MorId },
    LeftIdentity(MorId),
    RightIdentity(MorId),
    Associativity { h: MorId, g: MorId, f: MorId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooLarge { objects, morphisms } => write!(
                f,
                "{objects} objects / {morphisms} morphisms exceed the {MAX_OBJECTS}/{MAX_MORPHISMS} cap"
            ),
            Violation::DuplicateObjectLabel(l) => write!(f, "duplicate object label {l:?}"),
            Violation::DuplicateMorphismLabel(l) => write!(f, "duplicate morphism label {l:?}"),
            Violation::DanglingEndpoint(m) => write!(f, "morphism #{} has a missing endpoint", m.0),
            Violation::MissingIdentity(o) => write!(f, "object #{} has no identity", o.0),
            Violation::IdentityNotEndo { object, morphism } => write!(
                f,
                "identity #{} of object #{} is not an endomorphism of it",
                morphism.0, object.0
            ),
            Violation::MissingComposite { g, f: ff } => {
                write!(f, "composable pair (#{}, #{}) has no composite", g.0, ff.0)
            }
            Violation::NotComposable { g, f: ff } => {
                write!(f, "composite given for non-composable pair (#{}, #{})", g.0, ff.0)
            }
            Violation::CompositeEndpoints { g, f: ff, composite } => write!(
                f,
                "composite #{} of (#{}, #{}) has the wrong endpoints",
                composite.0, g.0, ff.0
            ),
            Violation::LeftIdentity(m) => write!(f, "left identity law fails at #{}", m.0),
            Violation::RightIdentity(m) => write!(f, "right identity law fails at #{}", m.0),
            Violation::Associativity { h, g, f: ff } => write!(
                f,
                "associativity fails at (#{}, #{}, #{})",
                h.0, g.0, ff.0
            ),
        }
    }
}

/// Checks every category law; the report is empty iff the tables form a
/// category.
pub fn validate_category(t: &CategoryTables) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = t.objects.len();
    let m = t.morphisms.len();
    if n > MAX_OBJECTS || m > MAX_MORPHISMS {
        out.push(Violation::TooLarge {
            objects: n,
            morphisms: m,
        });
        return out;
    }
    let mut seen = HashMap::new();
    for l in &t.objects {
        if seen.insert(l.as_str(), ()).is_some() {
            out.push(Violation::DuplicateObjectLabel(l.clone()));
        }
    }
    let mut seen = HashMap::new();
    for mor in &t.morphisms {
        if seen.insert(mor.label.as_str(), ()).is_some() {
            out.push(Violation::DuplicateMorphismLabel(mor.label.clone()));
        }
    }
    for (i, mor) in t.morphisms.iter().enumerate() {
        if mor.source.0 >= n || mor.target.0 >= n {
            out.push(Violation::DanglingEndpoint(MorId(i)));
        }
    }
    if !out.is_empty() {
        return out;
    }

    let ends = |f: MorId| (t.morphisms[f.0].source, t.morphisms[f.0].target);
    let mut ids = vec![None; n];
    for (a, slot) in ids.iter_mut().enumerate() {
        match t.identity.get(a).copied().flatten() {
            Some(i) if i.0 < m && ends(i) == (ObjId(a), ObjId(a)) => *slot = Some(i),
            Some(i) => out.push(Violation::IdentityNotEndo {
                object: ObjId(a),
                morphism: i,
            }),
            None => out.push(Violation::MissingIdentity(ObjId(a))),
        }
    }

    for (&(g, f), &h) in &t.compose {
        if g.0 >= m || f.0 >= m || h.0 >= m {
            out.push(Violation::NotComposable { g, f });
            continue;
        }
        let (fs, ft) = ends(f);
        let (gs, gt) = ends(g);
        if ft != gs {
            out.push(Violation::NotComposable { g, f });
        } else if ends(h) != (fs, gt) {
            out.push(Violation::CompositeEndpoints { g, f, composite: h });
        }
    }

    for g in 0..m {
        for f in 0..m {
            let (g, f) = (MorId(g), MorId(f));
            if ends(f).1 == ends(g).0 && !t.compose.contains_key(&(g, f)) {
                out.push(Violation::MissingComposite { g, f });
            }
        }
    }
    if !out.is_empty() {
        // Identity and associativity checks need a total table.
        return out;
    }

    let comp = |g: MorId, f: MorId| t.compose[&(g, f)];
    for f in 0..m {
        let f = MorId(f);
        let (a, b) = ends(f);
        if let Some(ib) = ids[b.0] {
            if comp(ib, f) != f {
                out.push(Violation::LeftIdentity(f));
            }
        }
        if let Some(ia) = ids[a.0] {
            if comp(f, ia) != f {
                out.push(Violation::RightIdentity(f));
            }
        }
    }
    for f in 0..m {
        for g in 0..m {
            let (f, g) = (MorId(f), MorId(g));
            if ends(f).1 != ends(g).0 {
                continue;
            }
            let gf = comp(g, f);
            for h in 0..m {
                let h = MorId(h);
                if ends(g).1 != ends(h).0 {
                    continue;
                }
                if comp(h, gf) != comp(comp(h, g), f) {
                    out.push(Violation::Associativity { h, g, f });
                }
            }
        }
    }
    out
}

/// A validated finite category.
#[derive(Clone)]
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<MorId>,
    compose: HashMap<(MorId, MorId), MorId>,
    hom: Vec<Vec<Vec<MorId>>>,
    object_index: HashMap<String, ObjId>,
    morphism_index: HashMap<String, MorId>,
    fingerprint: u64,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.fingerprint == other.fingerprint
            && self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identity == other.identity
            && self.compose == other.compose
    }
}

impl Eq for FinCategory {}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinCategory({}: {} objects, {} morphisms)",
            self.name,
            self.objects.len(),
            self.morphisms.len()
        )
    }
}

impl TryFrom<CategoryTables> for FinCategory {
    type Error = Error;

    fn try_from(t: CategoryTables) -> Result<Self> {
        let report = validate_category(&t);
        if let Some(v) = report.first() {
            if let Violation::TooLarge { .. } = v {
                return Err(Error::Guardrail(v.to_string()));
            }
            let all: Vec<String> = report.iter().map(ToString::to_string).collect();
            return Err(Error::InvalidCategory(format!("{}: {}", t.name, all.join("; "))));
        }
        Ok(Self::from_valid(t))
    }
}

impl FinCategory {
    fn from_valid(t: CategoryTables) -> Self {
        let n = t.objects.len();
        let mut hom = vec![vec![Vec::new(); n]; n];
        for (i, m) in t.morphisms.iter().enumerate() {
            hom[m.source.0][m.target.0].push(MorId(i));
        }
        let object_index = t
            .objects
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), ObjId(i)))
            .collect();
        let morphism_index = t
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.label.clone(), MorId(i)))
            .collect();
        let fingerprint = table_fingerprint(&t);
        FinCategory {
            name: t.name,
            identity: t.identity.into_iter().map(|i| i.expect("validated")).collect(),
            compose: t.compose.into_iter().collect(),
            fingerprint,
            objects: t.objects,
            morphisms: t.morphisms,
            hom,
            object_index,
            morphism_index,
        }
    }

    /// Builds a category from objects and non-identity morphisms, adding
    /// identities labelled `id(<object>)` and all composites with them.
    /// `compose` lists `(g, f, g∘f)` by label for non-identity pairs.
    pub fn from_generators(
        name: &str,
        objects: &[&str],
        morphisms: &[(&str, &str, &str)],
        compose: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let mut t = CategoryTables {
            name: name.to_string(),
            objects: objects.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        };
        let obj = |l: &str| {
            objects
                .iter()
                .position(|o| *o == l)
                .map(ObjId)
                .ok_or_else(|| Error::Dangling(l.to_string()))
        };
        for (i, o) in objects.iter().enumerate() {
            t.morphisms.push(Morphism {
                label: format!("id({o})"),
                source: ObjId(i),
                target: ObjId(i),
            });
            t.identity.push(Some(MorId(i)));
        }
        for (label, s, d) in morphisms {
            t.morphisms.push(Morphism {
                label: label.to_string(),
                source: obj(s)?,
                target: obj(d)?,
            });
        }
        let mor = |l: &str| {
            t.morphisms
                .iter()
                .position(|m| m.label == l)
                .map(MorId)
                .ok_or_else(|| Error::Dangling(l.to_string()))
        };
        let mut table = BTreeMap::new();
        for (g, f, h) in compose {
            table.insert((mor(g)?, mor(f)?), mor(h)?);
        }
        t.compose = table;
        fill_identity_composites(&mut t);
        FinCategory::try_from(t)
    }

    /// Stable hash of the tables (labels included, name excluded).
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = ObjId> + Clone {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = MorId> + Clone {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn object_label(&self, a: ObjId) -> &str {
        &self.objects[a.0]
    }

    pub fn morphism_label(&self, f: MorId) -> &str {
        &self.morphisms[f.0].label
    }

    pub fn object(&self, label: &str) -> Option<ObjId> {
        self.object_index.get(label).copied()
    }

    pub fn morphism(&self, label: &str) -> Option<MorId> {
        self.morphism_index.get(label).copied()
    }

    pub fn source(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].source
    }

    pub fn target(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].target
    }

    pub fn identity(&self, a: ObjId) -> MorId {
        self.identity[a.0]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identity[self.source(f).0] == f
    }

    /// `g ∘ f`. Panics if the pair is not composable.
    pub fn compose(&self, g: MorId, f: MorId) -> MorId {
        match self.compose.get(&(g, f)) {
            Some(&h) => h,
            None => panic!(
                "{}: {} ∘ {} is not composable",
                self.name,
                self.morphism_label(g),
                self.morphism_label(f)
            ),
        }
    }

    pub fn try_compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.hom[a.0][b.0]
    }

    /// At most one morphism between any two objects.
    pub fn is_thin(&self) -> bool {
        self.hom.iter().flatten().all(|h| h.len() <= 1)
    }

    /// Thin, and isomorphic objects are equal.
    pub fn is_poset(&self) -> bool {
        self.is_thin()
            && self.objects().all(|a| {
                self.objects()
                    .all(|b| a == b || self.hom(a, b).is_empty() || self.hom(b, a).is_empty())
            })
    }

    /// Non-identity morphisms that do not factor through two non-identity
    /// morphisms.
    pub fn generators(&self) -> Vec<MorId> {
        let mut decomposable = vec![false; self.num_morphisms()];
        for (&(g, f), &h) in &self.compose {
            if !self.is_identity(g) && !self.is_identity(f) {
                decomposable[h.0] = true;
            }
        }
        self.morphisms()
            .filter(|&f| !self.is_identity(f) && !decomposable[f.0])
            .collect()
    }

    /// Objects in an order where every non-identity morphism between
    /// distinct objects goes forward, if such an order exists.
    pub fn topological_order(&self) -> Option<Vec<ObjId>> {
        let n = self.num_objects();
        let mut indeg = vec![0usize; n];
        for f in self.morphisms() {
            let (s, t) = (self.source(f), self.target(f));
            if s != t {
                indeg[t.0] += 1;
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        ready.reverse();
        while let Some(a) = ready.pop() {
            order.push(ObjId(a));
            let mut next = Vec::new();
            for (b, deg) in indeg.iter_mut().enumerate() {
                if b == a {
                    continue;
                }
                let k = self.hom[a][b].len();
                if k > 0 {
                    *deg -= k;
                    if *deg == 0 {
                        next.push(b);
                    }
                }
            }
            next.reverse();
            ready.extend(next);
            ready.sort_unstable_by(|x, y| y.cmp(x));
        }
        (order.len() == n).then_some(order)
    }

    /// Raw tables of this category.
    pub fn to_tables(&self) -> CategoryTables {
        CategoryTables {
            name: self.name.clone(),
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identity: self.identity.iter().copied().map(Some).collect(),
            compose: self.compose.iter().map(|(&k, &v)| (k, v)).collect(),
        }
    }
}

/// Adds `id ∘ f = f` and `f ∘ id = f` for every morphism where missing.
/// FNV-1a over the tables; independent of the std hasher so it is stable
/// across builds.
fn table_fingerprint(t: &CategoryTables) -> u64 {
    let mut h = Fnv::default();
    h.word(t.objects.len() as u64);
    for o in &t.objects {
        h.bytes(o.as_bytes());
    }
    h.word(t.morphisms.len() as u64);
    for m in &t.morphisms {
        h.bytes(m.label.as_bytes());
        h.word(m.source.0 as u64);
        h.word(m.target.0 as u64);
    }
    for (&(g, f), &c) in &t.compose {
        h.word(g.0 as u64);
        h.word(f.0 as u64);
        h.word(c.0 as u64);
    }
    h.0
}

pub(crate) struct Fnv(pub u64);

impl Default for Fnv {
    fn default() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }
}

impl Fnv {
    pub fn bytes(&mut self, b: &[u8]) {
        for &x in b {
            self.0 ^= x as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
        self.0 ^= 0xff;
        self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
    }

    pub fn word(&mut self, w: u64) {
        self.bytes(&w.to_le_bytes());
    }
}

/// Shared `e`.
pub fn terminal() -> std::sync::Arc<FinCategory> {
    static E: std::sync::OnceLock<std::sync::Arc<FinCategory>> = std::sync::OnceLock::new();
    E.get_or_init(|| std::sync::Arc::new(construct_standard(&StandardShape::Terminal).expect("e")))
        .clone()
}

/// Shared `∅`.
pub fn empty() -> std::sync::Arc<FinCategory> {
    static Z: std::sync::OnceLock<std::sync::Arc<FinCategory>> = std::sync::OnceLock::new();
    Z.get_or_init(|| std::sync::Arc::new(construct_standard(&StandardShape::Empty).expect("∅")))
        .clone()
}

pub fn fill_identity_composites(t: &mut CategoryTables) {
    for (i, mor) in t.morphisms.iter().enumerate() {
        let f = MorId(i);
        if let Some(Some(it)) = t.identity.get(mor.target.0) {
            t.compose.entry((*it, f)).or_insert(f);
        }
        if let Some(Some(is)) = t.identity.get(mor.source.0) {
            t.compose.entry((f, *is)).or_insert(f);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow_tables() -> CategoryTables {
        let mut t = CategoryTables {
            name: "[1]".into(),
            objects: vec!["0".into(), "1".into()],
            morphisms: vec![
                Morphism {
                    label: "id0".into(),
                    source: ObjId(0),
                    target: ObjId(0),
                },
                Morphism {
                    label: "id1".into(),
                    source: ObjId(1),
                    target: ObjId(1),
                },
                Morphism {
                    label: "f".into(),
                    source: ObjId(0),
                    target: ObjId(1),
                },
            ],
            identity: vec![Some(MorId(0)), Some(MorId(1))],
            compose: BTreeMap::new(),
        };
        fill_identity_composites(&mut t);
        t
    }

    #[test]
    fn well_formed_ordinal_has_empty_report() {
        let c = construct_standard(&StandardShape::Ordinal(2)).unwrap();
        assert!(validate_category(&c.to_tables()).is_empty());
        assert!(validate_category(&arrow_tables()).is_empty());
    }

    #[test]
    fn missing_identity_is_reported() {
        let mut t = arrow_tables();
        t.identity[1] = None;
        let report = validate_category(&t);
        assert!(report.contains(&Violation::MissingIdentity(ObjId(1))));
        assert!(FinCategory::try_from(t).is_err());
    }

    #[test]
    fn associativity_violation_is_reported() {
        // A total but non-associative table on one object:
        // (k∘k)∘k = e∘k = e while k∘(k∘k) = k∘e = k.
        let mut t = CategoryTables {
            name: "M".into(),
            objects: vec!["*".into()],
            morphisms: ["id", "e", "k"]
                .iter()
                .map(|l| Morphism {
                    label: l.to_string(),
                    source: ObjId(0),
                    target: ObjId(0),
                })
                .collect(),
            identity: vec![Some(MorId(0))],
            compose: BTreeMap::new(),
        };
        fill_identity_composites(&mut t);
        let (e, k) = (MorId(1), MorId(2));
        t.compose.insert((e, e), e);
        t.compose.insert((e, k), e);
        t.compose.insert((k, e), k);
        t.compose.insert((k, k), e);
        let report = validate_category(&t);
        assert!(
            report
                .iter()
                .any(|v| matches!(v, Violation::Associativity { .. })),
            "{report:?}"
        );
    }

    #[test]
    fn non_composable_entry_is_reported() {
        let mut t = arrow_tables();
        t.compose.insert((MorId(2), MorId(2)), MorId(2));
        let report = validate_category(&t);
        assert!(report.contains(&Violation::NotComposable {
            g: MorId(2),
            f: MorId(2)
        }));
    }

    #[test]
    fn guardrail_rejects_large_categories() {
        let c = construct_standard(&StandardShape::Discrete(MAX_OBJECTS + 1));
        assert!(matches!(c, Err(Error::Guardrail(_))));
    }

    #[test]
    fn generators_and_order_of_square() {
        let sq = construct_standard(&StandardShape::Square).unwrap();
        assert_eq!(sq.generators().len(), 4);
        let order = sq.topological_order().unwrap();
        assert_eq!(sq.object_label(order[0]), "(0,0)");
        assert_eq!(sq.object_label(order[3]), "(1,1)");
    }
}
