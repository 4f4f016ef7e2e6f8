//! Workspace files: named categories, functors, transformations, diagrams,
//! diagram maps, squares and derivator morphisms in TOML.
//!
//! ```toml
//! [category.one]
//! standard = "ordinal"
//! n = 1
//!
//! [category.c]
//! objects = ["x", "y"]
//! morphisms = [["f", "x", "y"]]
//!
//! [functor.i]
//! source = "one"
//! target = "c"
//! objects = ["x", "y"]
//!
//! [diagram.X]
//! shape = "one"
//! dims = [1, 2]
//! maps = [{ morphism = "0->1", matrix = [["1"], ["0/1"]] }]
//!
//! [morphism.T]
//! kind = "tensor"
//! n = 2
//!
//! [morphism.T1]
//! kind = "tensor"
//! n = 2
//! on = "one"
//! ```
//!
//! `on` moves a levelwise morphism to `Vect^one`.
//!
//! Printing always writes categories as full tables and functors with both
//! maps, so a printed workspace parses back to an equal one.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::derimorph::{DerMorphism, MorphismKind};
use crate::error::{Error, Result};
use crate::fincat::{
    construct_standard, fill_identity_composites, CategoryTables, FinCategory, FinFunctor,
    FinNatTrans, MorId, Morphism, ObjId, Orientation, OrientedSquare, StandardShape,
};
use crate::linalg::Matrix;
use crate::repder::{Diagram, DiagramMap};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub category: BTreeMap<String, CategoryDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functor: BTreeMap<String, FunctorDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub transformation: BTreeMap<String, TransformationDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub square: BTreeMap<String, SquareDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub diagram: BTreeMap<String, DiagramDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub map: BTreeMap<String, MapDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphism: BTreeMap<String, MorphismDoc>,
}

/// Either `standard` (with `n`, `of`, `relation` as needed) or explicit
/// tables. Without `identities`, `morphisms` lists non-identity morphisms
/// and identities `id(<object>)` are added in front; with it, `morphisms`
/// lists every morphism. `compose` gives `[g, f, g∘f]` for non-identity
/// pairs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub of: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphisms: Option<Vec<[String; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identities: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compose: Option<Vec<[String; 3]>>,
}

/// Images by label, in the source's object and morphism order. Without
/// `morphisms` the target must be thin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub source: String,
    pub target: String,
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphisms: Option<Vec<String>>,
}

/// Component labels in the order of the objects of the common source.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformationDoc {
    pub source: String,
    pub target: String,
    pub components: Vec<String>,
}

/// Without `cell` the square must commute and gets the identity cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareDoc {
    pub top: String,
    pub left: String,
    pub bottom: String,
    pub right: String,
    pub orientation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell: Option<Vec<String>>,
}

pub type MatrixDoc = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub morphism: String,
    pub matrix: MatrixDoc,
}

/// Dimensions in object order; matrices for a generating set of morphisms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramDoc {
    pub shape: String,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub maps: Vec<MapEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub source: String,
    pub target: String,
    pub components: Vec<MatrixDoc>,
}

/// `kind` is one of `identity`, `pullback`, `lan`, `ran` (with `functor`),
/// `tensor`, `direct-sum` (with `n`), `composite` (with `first`, `second`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functor: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<String>,
    /// Category `K`: run a levelwise kind on `Vect^K` instead of `Vect`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub on: Option<String>,
}

#[derive(Clone, Debug)]
pub enum Binding {
    Category(Arc<FinCategory>),
    Functor(FinFunctor),
    Transformation(FinNatTrans),
    Square(OrientedSquare),
    Diagram(Diagram),
    Map(DiagramMap),
    Morphism(DerMorphism, MorphismDoc),
}

impl Binding {
    pub fn kind(&self) -> &'static str {
        match self {
            Binding::Category(_) => "category",
            Binding::Functor(_) => "functor",
            Binding::Transformation(_) => "transformation",
            Binding::Square(_) => "square",
            Binding::Diagram(_) => "diagram",
            Binding::Map(_) => "map",
            Binding::Morphism(..) => "morphism",
        }
    }
}

/// Validated named bindings. Names are unique across kinds.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    bindings: BTreeMap<String, Binding>,
}

impl PartialEq for Workspace {
    fn eq(&self, other: &Self) -> bool {
        self.bindings.len() == other.bindings.len()
            && self.bindings.iter().zip(&other.bindings).all(|((n1, b1), (n2, b2))| {
                n1 == n2
                    && match (b1, b2) {
                        (Binding::Category(a), Binding::Category(b)) => a == b,
                        (Binding::Functor(a), Binding::Functor(b)) => a == b,
                        (Binding::Transformation(a), Binding::Transformation(b)) => a == b,
                        (Binding::Square(a), Binding::Square(b)) => a == b,
                        (Binding::Diagram(a), Binding::Diagram(b)) => a == b,
                        (Binding::Map(a), Binding::Map(b)) => {
                            a.source() == b.source()
                                && a.target() == b.target()
                                && a.components() == b.components()
                        }
                        (Binding::Morphism(_, a), Binding::Morphism(_, b)) => a == b,
                        _ => false,
                    }
            })
    }
}

fn matrix_doc(m: &Matrix) -> MatrixDoc {
    m.to_strings()
}

fn matrix_from(doc: &MatrixDoc, shape: (usize, usize)) -> Result<Matrix> {
    Matrix::from_strings(doc, shape)
}

fn orientation_name(o: Orientation) -> &'static str {
    match o {
        Orientation::DownLeft => "down-left",
        Orientation::UpRight => "up-right",
    }
}

fn parse_orientation(s: &str) -> Result<Orientation> {
    match s {
        "down-left" => Ok(Orientation::DownLeft),
        "up-right" => Ok(Orientation::UpRight),
        _ => Err(Error::Parse(format!("orientation {s:?}: expected down-left or up-right"))),
    }
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| e.context(&path.display().to_string()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Document = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn print(&self) -> Result<String> {
        toml::to_string(&self.to_document()?).map_err(|e| Error::Invariant(e.to_string()))
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.bindings.keys().map(String::as_str)
    }

    pub fn get(&self, name: &str) -> Result<&Binding> {
        self.bindings.get(name).ok_or_else(|| Error::Dangling(name.to_string()))
    }

    pub fn insert(&mut self, name: impl Into<String>, b: Binding) -> Result<()> {
        let name = name.into();
        if self.bindings.contains_key(&name) {
            return Err(Error::Parse(format!("name {name:?} bound twice")));
        }
        self.bindings.insert(name, b);
        Ok(())
    }

    fn wrong(name: &str, want: &str, b: &Binding) -> Error {
        Error::Shape(format!("{name} is a {}, expected a {want}", b.kind()))
    }

    pub fn category(&self, name: &str) -> Result<&Arc<FinCategory>> {
        match self.get(name)? {
            Binding::Category(c) => Ok(c),
            b => Err(Self::wrong(name, "category", b)),
        }
    }

    pub fn functor(&self, name: &str) -> Result<&FinFunctor> {
        match self.get(name)? {
            Binding::Functor(f) => Ok(f),
            b => Err(Self::wrong(name, "functor", b)),
        }
    }

    pub fn transformation(&self, name: &str) -> Result<&FinNatTrans> {
        match self.get(name)? {
            Binding::Transformation(t) => Ok(t),
            b => Err(Self::wrong(name, "transformation", b)),
        }
    }

    pub fn square(&self, name: &str) -> Result<&OrientedSquare> {
        match self.get(name)? {
            Binding::Square(s) => Ok(s),
            b => Err(Self::wrong(name, "square", b)),
        }
    }

    pub fn diagram(&self, name: &str) -> Result<&Diagram> {
        match self.get(name)? {
            Binding::Diagram(d) => Ok(d),
            b => Err(Self::wrong(name, "diagram", b)),
        }
    }

    pub fn map(&self, name: &str) -> Result<&DiagramMap> {
        match self.get(name)? {
            Binding::Map(m) => Ok(m),
            b => Err(Self::wrong(name, "map", b)),
        }
    }

    pub fn morphism(&self, name: &str) -> Result<&DerMorphism> {
        match self.get(name)? {
            Binding::Morphism(m, _) => Ok(m),
            b => Err(Self::wrong(name, "morphism", b)),
        }
    }

    pub fn from_document(doc: &Document) -> Result<Self> {
        let mut all = BTreeSet::new();
        let names = doc
            .category
            .keys()
            .chain(doc.functor.keys())
            .chain(doc.transformation.keys())
            .chain(doc.square.keys())
            .chain(doc.diagram.keys())
            .chain(doc.map.keys())
            .chain(doc.morphism.keys());
        for n in names {
            if !all.insert(n.clone()) {
                return Err(Error::Parse(format!("name {n:?} bound twice")));
            }
        }
        let mut ws = Workspace::new();
        let mut visiting = BTreeSet::new();
        for name in doc.category.keys() {
            ws.load_category(doc, name, &mut visiting)?;
        }
        for (name, f) in &doc.functor {
            let v = ws.build_functor(f).map_err(|e| e.context(&format!("functor {name}")))?;
            ws.insert(name, Binding::Functor(v))?;
        }
        for (name, t) in &doc.transformation {
            let v = ws
                .build_transformation(t)
                .map_err(|e| e.context(&format!("transformation {name}")))?;
            ws.insert(name, Binding::Transformation(v))?;
        }
        for (name, s) in &doc.square {
            let v = ws.build_square(s).map_err(|e| e.context(&format!("square {name}")))?;
            ws.insert(name, Binding::Square(v))?;
        }
        for (name, d) in &doc.diagram {
            let v = ws.build_diagram(d).map_err(|e| e.context(&format!("diagram {name}")))?;
            ws.insert(name, Binding::Diagram(v))?;
        }
        for (name, m) in &doc.map {
            let v = ws.build_map(m).map_err(|e| e.context(&format!("map {name}")))?;
            ws.insert(name, Binding::Map(v))?;
        }
        let mut visiting = BTreeSet::new();
        for name in doc.morphism.keys() {
            ws.load_morphism(doc, name, &mut visiting)?;
        }
        Ok(ws)
    }

    fn load_category(
        &mut self,
        doc: &Document,
        name: &str,
        visiting: &mut BTreeSet<String>,
    ) -> Result<Arc<FinCategory>> {
        if let Some(Binding::Category(c)) = self.bindings.get(name) {
            return Ok(c.clone());
        }
        let Some(cd) = doc.category.get(name) else {
            return Err(Error::Dangling(name.to_string()));
        };
        if !visiting.insert(name.to_string()) {
            return Err(Error::Parse(format!("category {name} refers to itself")));
        }
        let mut of = Vec::new();
        for dep in cd.of.iter().flatten() {
            of.push(
                self.load_category(doc, dep, visiting)
                    .map_err(|e| e.context(&format!("category {name}")))?,
            );
        }
        let c = build_category(name, cd, &of).map_err(|e| e.context(&format!("category {name}")))?;
        let c = Arc::new(c);
        self.insert(name, Binding::Category(c.clone()))?;
        visiting.remove(name);
        Ok(c)
    }

    fn build_functor(&self, f: &FunctorDoc) -> Result<FinFunctor> {
        let (s, t) = (self.category(&f.source)?, self.category(&f.target)?);
        if f.objects.len() != s.num_objects() {
            return Err(Error::InvalidFunctor(format!(
                "{} object images for {} objects",
                f.objects.len(),
                s.num_objects()
            )));
        }
        let obj = f
            .objects
            .iter()
            .map(|l| t.object(l).ok_or_else(|| Error::Dangling(l.clone())))
            .collect::<Result<Vec<_>>>()?;
        match &f.morphisms {
            None => FinFunctor::from_object_map(s.clone(), t.clone(), obj),
            Some(ms) => {
                let mor = ms
                    .iter()
                    .map(|l| t.morphism(l).ok_or_else(|| Error::Dangling(l.clone())))
                    .collect::<Result<Vec<_>>>()?;
                FinFunctor::new(s.clone(), t.clone(), obj, mor)
            }
        }
    }

    fn build_transformation(&self, t: &TransformationDoc) -> Result<FinNatTrans> {
        let (u, v) = (self.functor(&t.source)?, self.functor(&t.target)?);
        let comp = component_ids(v.target(), &t.components)?;
        FinNatTrans::new(u.clone(), v.clone(), comp)
    }

    fn build_square(&self, s: &SquareDoc) -> Result<OrientedSquare> {
        let (v, p, w, q) = (
            self.functor(&s.top)?.clone(),
            self.functor(&s.left)?.clone(),
            self.functor(&s.bottom)?.clone(),
            self.functor(&s.right)?.clone(),
        );
        let o = parse_orientation(&s.orientation)?;
        match &s.cell {
            None => OrientedSquare::commutative(v, p, w, q, o),
            Some(labels) => {
                let upper = q.after(&v)?;
                let lower = w.after(&p)?;
                let comp = component_ids(q.target(), labels)?;
                let cell = match o {
                    Orientation::DownLeft => FinNatTrans::new(upper, lower, comp)?,
                    Orientation::UpRight => FinNatTrans::new(lower, upper, comp)?,
                };
                OrientedSquare::new(v, p, w, q, cell, o)
            }
        }
    }

    fn build_diagram(&self, d: &DiagramDoc) -> Result<Diagram> {
        let k = self.category(&d.shape)?;
        if d.dims.len() != k.num_objects() {
            return Err(Error::InvalidDiagram(format!(
                "{} dimensions for {} objects",
                d.dims.len(),
                k.num_objects()
            )));
        }
        let mut gens = Vec::new();
        for e in &d.maps {
            let f = k.morphism(&e.morphism).ok_or_else(|| Error::Dangling(e.morphism.clone()))?;
            let shape = (d.dims[k.target(f).0], d.dims[k.source(f).0]);
            gens.push((f, matrix_from(&e.matrix, shape).map_err(|x| x.context(&e.morphism))?));
        }
        Diagram::from_generators(k.clone(), d.dims.clone(), &gens)
    }

    fn build_map(&self, m: &MapDoc) -> Result<DiagramMap> {
        let (x, y) = (self.diagram(&m.source)?, self.diagram(&m.target)?);
        let k = x.shape();
        if m.components.len() != k.num_objects() {
            return Err(Error::InvalidDiagram(format!(
                "{} components for {} objects",
                m.components.len(),
                k.num_objects()
            )));
        }
        let comp = k
            .objects()
            .zip(&m.components)
            .map(|(a, c)| matrix_from(c, (y.dim(a), x.dim(a))))
            .collect::<Result<Vec<_>>>()?;
        DiagramMap::new(x.clone(), y.clone(), comp)
    }

    fn load_morphism(
        &mut self,
        doc: &Document,
        name: &str,
        visiting: &mut BTreeSet<String>,
    ) -> Result<DerMorphism> {
        if let Some(Binding::Morphism(m, _)) = self.bindings.get(name) {
            return Ok(m.clone());
        }
        let Some(md) = doc.morphism.get(name) else {
            return Err(Error::Dangling(name.to_string()));
        };
        if !visiting.insert(name.to_string()) {
            return Err(Error::Parse(format!("morphism {name} refers to itself")));
        }
        let at = format!("morphism {name}");
        let need = |o: &Option<String>, what: &str| {
            o.clone()
                .ok_or_else(|| Error::Parse(format!("{at}: kind {} needs {what}", md.kind)))
        };
        let n = || md.n.ok_or_else(|| Error::Parse(format!("{at}: kind {} needs n", md.kind)));
        let m = match md.kind.as_str() {
            "identity" => DerMorphism::identity(crate::repder::DerivatorView::base()),
            "pullback" | "lan" | "ran" => {
                let u = self.functor(&need(&md.functor, "functor")?).map_err(|e| e.context(&at))?;
                match md.kind.as_str() {
                    "pullback" => DerMorphism::pullback_along(u),
                    "lan" => DerMorphism::lan_along(u),
                    _ => DerMorphism::ran_along(u),
                }
            }
            "tensor" => DerMorphism::tensor_with(n()?),
            "direct-sum" => DerMorphism::direct_sum_with_constant(n()?),
            "composite" => {
                let a = self.load_morphism(doc, &need(&md.first, "first")?, visiting)?;
                let b = self.load_morphism(doc, &need(&md.second, "second")?, visiting)?;
                a.then(b).map_err(|e| e.context(&at))?
            }
            k => return Err(Error::Parse(format!("{at}: unknown kind {k:?}"))),
        };
        let m = match &md.on {
            Some(k) => {
                let k = self.category(k).map_err(|e| e.context(&at))?.clone();
                m.on_view(crate::repder::DerivatorView::shifted(k)).map_err(|e| e.context(&at))?
            }
            None => m,
        };
        self.insert(name, Binding::Morphism(m.clone(), md.clone()))?;
        visiting.remove(name);
        Ok(m)
    }

    fn category_name(&self, c: &Arc<FinCategory>) -> Result<String> {
        self.bindings
            .iter()
            .find_map(|(n, b)| match b {
                Binding::Category(d) if Arc::ptr_eq(c, d) || **c == **d => Some(n.clone()),
                _ => None,
            })
            .ok_or_else(|| Error::Dangling(format!("category {}", c.name())))
    }

    fn functor_name(&self, u: &FinFunctor) -> Result<String> {
        self.bindings
            .iter()
            .find_map(|(n, b)| match b {
                Binding::Functor(v) if v == u => Some(n.clone()),
                _ => None,
            })
            .ok_or_else(|| Error::Dangling("unnamed functor".into()))
    }

    fn diagram_name(&self, x: &Diagram) -> Result<String> {
        self.bindings
            .iter()
            .find_map(|(n, b)| match b {
                Binding::Diagram(y) if y == x => Some(n.clone()),
                _ => None,
            })
            .ok_or_else(|| Error::Dangling("unnamed diagram".into()))
    }

    pub fn to_document(&self) -> Result<Document> {
        let mut doc = Document::default();
        for (name, b) in &self.bindings {
            match b {
                Binding::Category(c) => {
                    doc.category.insert(name.clone(), category_doc(c));
                }
                Binding::Functor(u) => {
                    doc.functor.insert(name.clone(), self.functor_doc(u)?);
                }
                Binding::Transformation(t) => {
                    doc.transformation.insert(
                        name.clone(),
                        TransformationDoc {
                            source: self.functor_name(t.source())?,
                            target: self.functor_name(t.target())?,
                            components: labels(t.target().target(), t.components()),
                        },
                    );
                }
                Binding::Square(s) => {
                    let cell = (!s.cell.is_identity())
                        .then(|| labels(s.right.target(), s.cell.components()));
                    doc.square.insert(
                        name.clone(),
                        SquareDoc {
                            top: self.functor_name(&s.top)?,
                            left: self.functor_name(&s.left)?,
                            bottom: self.functor_name(&s.bottom)?,
                            right: self.functor_name(&s.right)?,
                            orientation: orientation_name(s.orientation).into(),
                            cell,
                        },
                    );
                }
                Binding::Diagram(x) => {
                    let k = x.shape();
                    let maps = k
                        .generators()
                        .into_iter()
                        .map(|f| MapEntry {
                            morphism: k.morphism_label(f).to_string(),
                            matrix: matrix_doc(x.mat(f)),
                        })
                        .collect();
                    doc.diagram.insert(
                        name.clone(),
                        DiagramDoc {
                            shape: self.category_name(k)?,
                            dims: x.dims().to_vec(),
                            maps,
                        },
                    );
                }
                Binding::Map(m) => {
                    doc.map.insert(
                        name.clone(),
                        MapDoc {
                            source: self.diagram_name(m.source())?,
                            target: self.diagram_name(m.target())?,
                            components: m.components().iter().map(matrix_doc).collect(),
                        },
                    );
                }
                Binding::Morphism(_, md) => {
                    doc.morphism.insert(name.clone(), md.clone());
                }
            }
        }
        Ok(doc)
    }

    fn functor_doc(&self, u: &FinFunctor) -> Result<FunctorDoc> {
        let t = u.target();
        Ok(FunctorDoc {
            source: self.category_name(u.source())?,
            target: self.category_name(t)?,
            objects: u.object_map().iter().map(|a| t.object_label(*a).to_string()).collect(),
            morphisms: Some(labels(t, u.morphism_map())),
        })
    }

    /// The morphism kind of a binding, for reports.
    pub fn morphism_kind(&self, name: &str) -> Result<&MorphismKind> {
        Ok(&self.morphism(name)?.kind)
    }
}

fn labels(c: &FinCategory, ms: &[MorId]) -> Vec<String> {
    ms.iter().map(|m| c.morphism_label(*m).to_string()).collect()
}

fn component_ids(c: &FinCategory, ls: &[String]) -> Result<Vec<MorId>> {
    ls.iter()
        .map(|l| c.morphism(l).ok_or_else(|| Error::Dangling(l.clone())))
        .collect()
}

/// Explicit tables of `c`.
pub fn category_doc(c: &FinCategory) -> CategoryDoc {
    let t = c.to_tables();
    let ids: Vec<MorId> = t.identity.iter().map(|i| i.expect("validated")).collect();
    let label = |m: MorId| t.morphisms[m.0].label.clone();
    let compose = t
        .compose
        .iter()
        .filter(|((g, f), _)| !ids.contains(g) && !ids.contains(f))
        .map(|((g, f), h)| [label(*g), label(*f), label(*h)])
        .collect();
    CategoryDoc {
        name: Some(c.name().to_string()),
        objects: Some(t.objects.clone()),
        morphisms: Some(
            t.morphisms
                .iter()
                .map(|m| {
                    [
                        m.label.clone(),
                        t.objects[m.source.0].clone(),
                        t.objects[m.target.0].clone(),
                    ]
                })
                .collect(),
        ),
        identities: Some(ids.iter().map(|i| label(*i)).collect()),
        compose: Some(compose),
        ..Default::default()
    }
}

fn build_category(name: &str, cd: &CategoryDoc, of: &[Arc<FinCategory>]) -> Result<FinCategory> {
    let c = match cd.standard.as_deref() {
        Some(s) => {
            let arity = |k: usize| {
                if of.len() == k {
                    Ok(())
                } else {
                    Err(Error::Parse(format!("standard {s} takes {k} categories in `of`")))
                }
            };
            let n = || cd.n.ok_or_else(|| Error::Parse(format!("standard {s} needs n")));
            let shape = match s {
                "terminal" => StandardShape::Terminal,
                "empty" => StandardShape::Empty,
                "ordinal" => StandardShape::Ordinal(n()?),
                "corner" => StandardShape::Corner,
                "square" => StandardShape::Square,
                "discrete" => StandardShape::Discrete(n()?),
                "poset" => StandardShape::Poset {
                    objects: cd.objects.clone().unwrap_or_default(),
                    relation: cd
                        .relation
                        .iter()
                        .flatten()
                        .map(|[a, b]| (a.clone(), b.clone()))
                        .collect(),
                },
                "product" => {
                    arity(2)?;
                    StandardShape::Product(of[0].clone(), of[1].clone())
                }
                "coproduct" => {
                    arity(2)?;
                    StandardShape::Coproduct(of[0].clone(), of[1].clone())
                }
                "opposite" => {
                    arity(1)?;
                    StandardShape::Opposite(of[0].clone())
                }
                "cocone" => {
                    arity(1)?;
                    StandardShape::Cocone(of[0].clone())
                }
                other => return Err(Error::Parse(format!("unknown standard shape {other:?}"))),
            };
            let c = construct_standard(&shape)?;
            match &cd.name {
                Some(n) => c.with_name(n.clone()),
                None if s == "poset" => c.with_name(name),
                None => c,
            }
        }
        None => explicit_category(name, cd)?,
    };
    Ok(c)
}

fn explicit_category(name: &str, cd: &CategoryDoc) -> Result<FinCategory> {
    let objects = cd.objects.clone().unwrap_or_default();
    let obj = |l: &str| {
        objects
            .iter()
            .position(|o| o == l)
            .map(ObjId)
            .ok_or_else(|| Error::Dangling(l.to_string()))
    };
    let mut t = CategoryTables {
        name: cd.name.clone().unwrap_or_else(|| name.to_string()),
        objects: objects.clone(),
        ..Default::default()
    };
    if cd.identities.is_none() {
        for (i, o) in objects.iter().enumerate() {
            t.morphisms.push(Morphism {
                label: format!("id({o})"),
                source: ObjId(i),
                target: ObjId(i),
            });
            t.identity.push(Some(MorId(i)));
        }
    }
    for [l, s, d] in cd.morphisms.iter().flatten() {
        t.morphisms.push(Morphism {
            label: l.clone(),
            source: obj(s)?,
            target: obj(d)?,
        });
    }
    let mor = |t: &CategoryTables, l: &str| {
        t.morphisms
            .iter()
            .position(|m| m.label == l)
            .map(MorId)
            .ok_or_else(|| Error::Dangling(l.to_string()))
    };
    if let Some(ids) = &cd.identities {
        if ids.len() != objects.len() {
            return Err(Error::InvalidCategory(format!(
                "{} identities for {} objects",
                ids.len(),
                objects.len()
            )));
        }
        for l in ids {
            let i = mor(&t, l)?;
            t.identity.push(Some(i));
        }
    }
    for [g, f, h] in cd.compose.iter().flatten() {
        let key = (mor(&t, g)?, mor(&t, f)?);
        let v = mor(&t, h)?;
        t.compose.insert(key, v);
    }
    fill_identity_composites(&mut t);
    FinCategory::try_from(t)
}
