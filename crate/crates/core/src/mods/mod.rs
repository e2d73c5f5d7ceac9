//! Modification series: degree-(-1) bodies with declared domain and codomain, their
//! constructors, and the boundary verifier.
//!
//! Every modification `Ξ: ξ ⇛ ξ'` satisfies `∂Ξ = ξ − ξ'`. Whiskering multiplies body,
//! domain and codomain by degree-0 series; vertical composition adds bodies.

mod bch;
mod commute;
mod debar;
mod exchange;
mod hexagon;
mod pentagon;
mod verify;

pub use bch::{bch_split, BchKind};
pub use commute::{phi_commute, CommuteKind};
pub use debar::{debar, debar_prime};
pub use exchange::{congruence_t12, congruence_t23, witnessed_exchange, ExchangeKind};
pub use hexagon::{breen_element, BreenOrder, breen_residues, hexagonator, hexagonator_ingredients, left_hexagonator, permuted_hexagonator};
pub use pentagon::{formal_m0, lneps_degree, pentagonator, pentagonator_ingredients};
pub use verify::{verify_boundary, BoundaryReport, OrderCheck};

use crate::coeffs::Coeff;
use crate::dkalg::{Element, StrandMap};
use crate::error::{Dk2Error, Result};
use crate::series::{series_exp, Series};

/// A modification between degree-0 series.
///
/// `formal` is an extra degree-0 contribution to the boundary, used for modifications known
/// only through their boundary (such as a 2-holonomy supplied from outside): the boundary of
/// the whole is `∂(body) + formal`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModSeries {
    body: Series,
    dom: Series,
    cod: Series,
    formal: Series,
}

impl ModSeries {
    pub fn new(body: Series, dom: Series, cod: Series) -> Result<Self> {
        let formal = Series::zero(body.ambient(), body.order());
        Self::with_formal(body, dom, cod, formal)
    }

    fn with_formal(body: Series, dom: Series, cod: Series, formal: Series) -> Result<Self> {
        for s in [&dom, &cod, &formal] {
            if s.ambient() != body.ambient() {
                return Err(Dk2Error::AmbientMismatch(body.ambient(), s.ambient()));
            }
            if s.order() != body.order() {
                return Err(Dk2Error::LengthMismatch(format!("orders {} and {}", body.order(), s.order())));
            }
            if s.coeffs().iter().any(|c| !c.is_deg0()) {
                return Err(Dk2Error::Degree("domain and codomain must have degree 0".into()));
            }
        }
        if body.coeffs().iter().any(|c| !c.is_degm1()) {
            return Err(Dk2Error::Degree("a modification body must have degree -1".into()));
        }
        Ok(ModSeries { body, dom, cod, formal })
    }

    /// A modification known only through its boundary `dom − cod`.
    pub fn formal(dom: Series, cod: Series) -> Result<Self> {
        let body = Series::zero(dom.ambient(), dom.order());
        let formal = dom.sub(&cod);
        Self::with_formal(body, dom, cod, formal)
    }

    /// Identity modification on `s`.
    pub fn identity(s: &Series) -> Self {
        let z = Series::zero(s.ambient(), s.order());
        ModSeries { body: z.clone(), dom: s.clone(), cod: s.clone(), formal: z }
    }

    pub fn body(&self) -> &Series {
        &self.body
    }

    pub fn dom(&self) -> &Series {
        &self.dom
    }

    pub fn cod(&self) -> &Series {
        &self.cod
    }

    pub fn formal_boundary(&self) -> &Series {
        &self.formal
    }

    pub fn has_formal_part(&self) -> bool {
        !self.formal.is_zero()
    }

    pub fn order(&self) -> usize {
        self.body.order()
    }

    pub fn ambient(&self) -> u8 {
        self.body.ambient()
    }

    /// `∂(body) + formal`.
    pub fn boundary(&self) -> Series {
        self.body.boundary().add(&self.formal)
    }

    /// `left · self · right`.
    pub fn whisker(&self, left: &Series, right: &Series) -> Self {
        let w = |s: &Series| left.mul(s).mul(right);
        ModSeries { body: w(&self.body), dom: w(&self.dom), cod: w(&self.cod), formal: w(&self.formal) }
    }

    pub fn whisker_left(&self, left: &Series) -> Self {
        self.whisker(left, &Series::one(self.ambient(), self.order()))
    }

    pub fn whisker_right(&self, right: &Series) -> Self {
        self.whisker(&Series::one(self.ambient(), self.order()), right)
    }

    /// Vertical composite: `self` followed by `next`. The codomain of `self` must equal the
    /// domain of `next` exactly.
    pub fn then(&self, next: &ModSeries) -> Result<Self> {
        if self.cod != next.dom {
            let diff = self.cod.sub(&next.dom);
            let m = (0..=diff.order()).find(|&m| !diff.coeff(m).is_zero()).unwrap_or(0);
            return Err(Dk2Error::Structural(format!(
                "composite mismatch at h^{m}: codomain and next domain differ by {}",
                diff.coeff(m)
            )));
        }
        Ok(ModSeries {
            body: self.body.add(&next.body),
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            formal: self.formal.add(&next.formal),
        })
    }

    /// The inverse-direction modification `-Ξ: ξ' ⇛ ξ`.
    pub fn reversed(&self) -> Self {
        ModSeries { body: self.body.neg(), dom: self.cod.clone(), cod: self.dom.clone(), formal: self.formal.neg() }
    }

    /// Relabels or cables strands in all four parts.
    pub fn apply_strand_map(&self, m: &StrandMap) -> Result<Self> {
        Ok(ModSeries {
            body: self.body.apply_strand_map(m)?,
            dom: self.dom.apply_strand_map(m)?,
            cod: self.cod.apply_strand_map(m)?,
            formal: self.formal.apply_strand_map(m)?,
        })
    }

    /// Drops every order above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        ModSeries {
            body: self.body.with_order(order),
            dom: self.dom.with_order(order),
            cod: self.cod.with_order(order),
            formal: self.formal.with_order(order),
        }
    }

    /// Replaces the body, keeping the declared source and target. Used for negative controls.
    pub fn with_body(&self, body: Series) -> Result<Self> {
        Self::with_formal(body, self.dom.clone(), self.cod.clone(), self.formal.clone())
    }
}

/// `exp(c·x)` as a series: the `ε^{x}`-type and `e^{iπx}`-type factors.
pub(crate) fn ex(c: &Coeff, x: &Element, order: usize) -> Series {
    series_exp(x, c, order).expect("degree-0 exponent")
}

/// Ordered product of series.
pub(crate) fn prod(n: u8, order: usize, factors: &[&Series]) -> Series {
    factors.iter().fold(Series::one(n, order), |acc, f| acc.mul(f))
}

/// `Λ` on the three given strands.
pub(crate) fn lam(n: u8, i: u8, j: u8, k: u8) -> Element {
    Element::a(n, i, j).add(&Element::a(n, i, k)).add(&Element::a(n, j, k))
}

/// The coefficient `λ = ln ε`, scaled by an integer.
pub(crate) fn lneps(k: i64) -> Coeff {
    Coeff::lneps().mul(&Coeff::from_int(k))
}
