use std::sync::{Arc, Mutex};

use super::diagram::{Diagram, DiagramMap};
use super::kan::{self, KanResult};
use super::mate::{self, no_mate, MateSide};
use crate::error::{Error, Result};
use crate::fincat::{
    construct_standard, product_functor, FinCategory, FinFunctor, FinNatTrans, MorId,
    OrientedSquare, StandardShape,
};

/// Which derivator an operation runs in: the represented derivator of
/// `Vect_Q` itself, or its shift `D^I` with `D^I(K) = D(I × K)`.
/// Restricting the available Kan extensions gives a left or right half
/// derivator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivatorView {
    shift: Option<Arc<FinCategory>>,
    left: bool,
    right: bool,
}

impl Default for DerivatorView {
    fn default() -> Self {
        Self::base()
    }
}

/// `(I, K, I × K)`.
type ProductEntry = (Arc<FinCategory>, Arc<FinCategory>, Arc<FinCategory>);

static PRODUCTS: Mutex<Vec<ProductEntry>> =
    Mutex::new(Vec::new());

/// `I × K`, memoized so repeated levels share one `Arc`.
pub fn product_cached(i: &Arc<FinCategory>, k: &Arc<FinCategory>) -> Result<Arc<FinCategory>> {
    {
        let cache = PRODUCTS.lock().expect("product cache");
        if let Some((_, _, p)) = cache
            .iter()
            .find(|(a, b, _)| (Arc::ptr_eq(a, i) || a == i) && (Arc::ptr_eq(b, k) || b == k))
        {
            return Ok(p.clone());
        }
    }
    let p = Arc::new(construct_standard(&StandardShape::Product(i.clone(), k.clone()))?);
    let mut cache = PRODUCTS.lock().expect("product cache");
    if cache.len() > 512 {
        cache.clear();
    }
    cache.push((i.clone(), k.clone(), p.clone()));
    Ok(p)
}

impl DerivatorView {
    pub fn base() -> Self {
        DerivatorView {
            shift: None,
            left: true,
            right: true,
        }
    }

    pub fn shifted(i: Arc<FinCategory>) -> Self {
        DerivatorView {
            shift: Some(i),
            left: true,
            right: true,
        }
    }

    /// Only left Kan extensions (a left half derivator).
    pub fn left_only(self) -> Self {
        DerivatorView { right: false, ..self }
    }

    /// Only right Kan extensions (a right half derivator).
    pub fn right_only(self) -> Self {
        DerivatorView { left: false, ..self }
    }

    pub fn shift_of(&self) -> Option<&Arc<FinCategory>> {
        self.shift.as_ref()
    }

    pub fn has_left(&self) -> bool {
        self.left
    }

    pub fn has_right(&self) -> bool {
        self.right
    }

    pub fn describe(&self) -> String {
        let base = match &self.shift {
            None => "Vect".to_string(),
            Some(i) => format!("Vect^{}", i.name()),
        };
        match (self.left, self.right) {
            (true, true) => base,
            (true, false) => format!("{base} (left half)"),
            (false, true) => format!("{base} (right half)"),
            (false, false) => format!("{base} (no Kan extensions)"),
        }
    }

    /// The shape whose diagrams make up the value at `k`.
    pub fn level(&self, k: &Arc<FinCategory>) -> Result<Arc<FinCategory>> {
        match &self.shift {
            None => Ok(k.clone()),
            Some(i) => product_cached(i, k),
        }
    }

    /// `id_I × u`.
    pub fn lift(&self, u: &FinFunctor) -> Result<FinFunctor> {
        match &self.shift {
            None => Ok(u.clone()),
            Some(i) => {
                let a = self.level(u.source())?;
                let b = self.level(u.target())?;
                Ok(product_functor(&FinFunctor::identity(i), u, &a, &b))
            }
        }
    }

    /// `id_I × α`, with components `(id_i, α_a)`.
    pub fn lift_cell(&self, alpha: &FinNatTrans) -> Result<FinNatTrans> {
        match &self.shift {
            None => Ok(alpha.clone()),
            Some(i) => {
                let s = self.lift(alpha.source())?;
                let t = self.lift(alpha.target())?;
                let na = alpha.source().source().num_objects();
                let mk = alpha.source().target().num_morphisms();
                let comp = s
                    .source()
                    .objects()
                    .map(|x| {
                        let (ii, a) = (x.0 / na, x.0 % na);
                        let id = i.identity(crate::fincat::ObjId(ii));
                        MorId(id.0 * mk + alpha.component(crate::fincat::ObjId(a)).0)
                    })
                    .collect();
                FinNatTrans::new(s, t, comp)
            }
        }
    }

    pub fn lift_square(&self, s: &OrientedSquare) -> Result<OrientedSquare> {
        if self.shift.is_none() {
            return Ok(s.clone());
        }
        OrientedSquare::new(
            self.lift(&s.top)?,
            self.lift(&s.left)?,
            self.lift(&s.bottom)?,
            self.lift(&s.right)?,
            self.lift_cell(&s.cell)?,
            s.orientation,
        )
    }

    pub fn pullback(&self, u: &FinFunctor, x: &Diagram) -> Result<Diagram> {
        kan::pullback(&self.lift(u)?, x)
    }

    pub fn pullback_map(&self, u: &FinFunctor, phi: &DiagramMap) -> Result<DiagramMap> {
        kan::pullback_map(&self.lift(u)?, phi)
    }

    pub fn pullback_cell(&self, alpha: &FinNatTrans, x: &Diagram) -> Result<DiagramMap> {
        kan::pullback_cell(&self.lift_cell(alpha)?, x)
    }

    pub fn lan(&self, u: &FinFunctor, x: &Diagram) -> Result<KanResult> {
        if !self.left {
            return Err(Error::MateUnavailable(format!(
                "{} has no left Kan extensions",
                self.describe()
            )));
        }
        kan::lan(&self.lift(u)?, x)
    }

    pub fn ran(&self, u: &FinFunctor, x: &Diagram) -> Result<KanResult> {
        if !self.right {
            return Err(Error::MateUnavailable(format!(
                "{} has no right Kan extensions",
                self.describe()
            )));
        }
        kan::ran(&self.lift(u)?, x)
    }

    pub fn mate_available(&self, side: MateSide) -> bool {
        match side {
            MateSide::Left => self.left,
            MateSide::Right => self.right,
        }
    }

    pub fn mate_component(
        &self,
        s: &OrientedSquare,
        side: MateSide,
        x: &Diagram,
    ) -> Result<DiagramMap> {
        if !self.mate_available(side) {
            return Err(no_mate(side));
        }
        mate::mate_component(&self.lift_square(s)?, side, x)
    }

    /// Shape on which the mate of `s` takes its inputs, at this view.
    pub fn mate_input_level(&self, s: &OrientedSquare, side: MateSide) -> Result<Arc<FinCategory>> {
        self.level(mate::mate_input_shape(s, side).source())
    }
}
