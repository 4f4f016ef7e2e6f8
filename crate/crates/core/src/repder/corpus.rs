use std::sync::{Arc, OnceLock};

use crate::fincat::{
    construct_standard, empty, objects_by_label, terminal, FinCategory, FinFunctor, ObjId,
    StandardShape,
};

/// The shapes every universally quantified check runs over.
pub struct Corpus {
    pub empty: Arc<FinCategory>,
    pub e: Arc<FinCategory>,
    pub one: Arc<FinCategory>,
    pub two: Arc<FinCategory>,
    pub corner: Arc<FinCategory>,
    pub square: Arc<FinCategory>,
    pub discrete2: Arc<FinCategory>,
    /// `a ≤ c`, `b ≤ c`, `b ≤ d`: a connected poset that is not a chain and
    /// has no final or initial object.
    pub zigzag: Arc<FinCategory>,
}

fn std_shape(s: StandardShape) -> Arc<FinCategory> {
    Arc::new(construct_standard(&s).expect("standard shape"))
}

impl Corpus {
    /// Shared instance, so that every caller sees the same `Arc`s.
    pub fn get() -> &'static Corpus {
        static C: OnceLock<Corpus> = OnceLock::new();
        C.get_or_init(|| Corpus {
            empty: empty(),
            e: terminal(),
            one: std_shape(StandardShape::Ordinal(1)),
            two: std_shape(StandardShape::Ordinal(2)),
            corner: std_shape(StandardShape::Corner),
            square: std_shape(StandardShape::Square),
            discrete2: std_shape(StandardShape::Discrete(2)),
            zigzag: Arc::new(
                construct_standard(&StandardShape::Poset {
                    objects: ["a", "b", "c", "d"].map(String::from).to_vec(),
                    relation: vec![
                        ("a".into(), "c".into()),
                        ("b".into(), "c".into()),
                        ("b".into(), "d".into()),
                    ],
                })
                .expect("zigzag poset")
                .with_name("N"),
            ),
        })
    }

    pub fn shapes(&self) -> Vec<Arc<FinCategory>> {
        vec![
            self.empty.clone(),
            self.e.clone(),
            self.one.clone(),
            self.two.clone(),
            self.corner.clone(),
            self.square.clone(),
            self.discrete2.clone(),
            self.zigzag.clone(),
        ]
    }

    /// `i_[1]: [1] -> ⌜`, `0 ↦ (0,0)`, `1 ↦ (1,0)`.
    pub fn i_one(&self) -> FinFunctor {
        let o = objects_by_label(&self.corner, &["(0,0)", "(1,0)"]).expect("corner labels");
        FinFunctor::from_object_map(self.one.clone(), self.corner.clone(), o).expect("i_[1]")
    }

    /// `i_⌜: ⌜ -> □`.
    pub fn i_corner(&self) -> FinFunctor {
        let o = objects_by_label(&self.square, &["(0,0)", "(0,1)", "(1,0)"]).expect("labels");
        FinFunctor::from_object_map(self.corner.clone(), self.square.clone(), o).expect("i_⌜")
    }

    /// Functors the axioms and exactness checks quantify over: projections,
    /// object classifiers, the empty inclusions, identities, and the named
    /// inclusions between the corpus shapes.
    pub fn functors(&self) -> Vec<FinFunctor> {
        let e = &self.e;
        let mut out = Vec::new();
        for k in self.shapes() {
            out.push(FinFunctor::to_terminal(&k, e));
            out.push(FinFunctor::from_empty(&self.empty, &k));
            out.push(FinFunctor::identity(&k));
            for a in k.objects() {
                out.push(FinFunctor::classifier(e, &k, a));
            }
        }
        out.push(self.i_one());
        out.push(self.i_corner());
        let diag = objects_by_label(&self.square, &["(0,0)", "(1,1)"]).unwrap();
        out.push(FinFunctor::from_object_map(self.one.clone(), self.square.clone(), diag).unwrap());
        out.push(
            FinFunctor::from_object_map(self.one.clone(), self.two.clone(), vec![ObjId(0), ObjId(2)])
                .unwrap(),
        );
        out.push(
            FinFunctor::from_object_map(self.two.clone(), self.one.clone(), vec![ObjId(0), ObjId(0), ObjId(1)])
                .unwrap(),
        );
        let d2 = &self.discrete2;
        out.push(
            FinFunctor::from_object_map(d2.clone(), self.one.clone(), vec![ObjId(0), ObjId(1)]).unwrap(),
        );
        let z = &self.zigzag;
        out.push(
            FinFunctor::from_object_map(d2.clone(), z.clone(), vec![ObjId(0), ObjId(1)]).unwrap(),
        );
        out.push(
            FinFunctor::from_object_map(
                z.clone(),
                self.one.clone(),
                vec![ObjId(0), ObjId(0), ObjId(1), ObjId(1)],
            )
            .unwrap(),
        );
        out
    }
}
