//! ħ-truncated formal power series over algebra elements.
//!
//! The coefficient of `ħ^m` is homogeneous of weight `m`, where an a-letter weighs 1 and a
//! degree-(-1) generator weighs 2. Symbols such as `iπ` and `λ = ln ε` live in the scalar
//! coefficients and carry no weight.

mod phi;

pub use phi::{brw_residual, brw_sides, drinfeld_phi, phi_tuples, PhiVariant};
pub(crate) use phi::{boxes, Powers};

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::coeffs::{inv_factorial, Coeff, Scalar};
use crate::dkalg::{CoeffText, Elem, Element, StrandMap};
use crate::error::{Dk2Error, Result};

/// Series with coefficients `coeffs[m]` at `ħ^m`, `0 ≤ m ≤ order`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<C: Scalar = Coeff> {
    n: u8,
    coeffs: Vec<Elem<C>>,
}

/// Series with complex floating-point coefficients.
pub type NumSeries = Series<Complex64>;

/// Weight of a homogeneous monomial: letters count 1, generators 2.
fn weight_split<C: Scalar>(x: &Elem<C>, order: usize) -> Vec<Elem<C>> {
    let mut out = vec![Elem::zero(x.ambient()); order + 1];
    for (w, c) in x.deg0() {
        if w.len() <= order {
            out[w.len()].add_term_word(w.clone(), c.clone());
        }
    }
    for (m, c) in x.degm1() {
        let wt = m.degree() + 2;
        if wt <= order {
            out[wt].add_term_bmon(m.clone(), c.clone());
        }
    }
    out
}

impl<C: Scalar> Series<C> {
    pub fn zero(n: u8, order: usize) -> Self {
        Series { n, coeffs: vec![Elem::zero(n); order + 1] }
    }

    pub fn one(n: u8, order: usize) -> Self {
        let mut s = Self::zero(n, order);
        s.coeffs[0] = Elem::one(n);
        s
    }

    /// Places every monomial of `x` at the order given by its weight, dropping those above
    /// `order`.
    pub fn from_elem(x: &Elem<C>, order: usize) -> Self {
        Series { n: x.ambient(), coeffs: weight_split(x, order) }
    }

    /// Builds a series from per-order coefficients, checking homogeneity.
    pub fn from_coeffs(n: u8, coeffs: Vec<Elem<C>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Dk2Error::Degree("a series needs at least the order-0 coefficient".into()));
        }
        for (m, e) in coeffs.iter().enumerate() {
            if e.ambient() != n {
                return Err(Dk2Error::AmbientMismatch(n, e.ambient()));
            }
            if e.weight_part(m) != *e {
                return Err(Dk2Error::Degree(format!("coefficient of h^{m} is not homogeneous of weight {m}")));
            }
        }
        Ok(Series { n, coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ambient(&self) -> u8 {
        self.n
    }

    pub fn coeff(&self, m: usize) -> &Elem<C> {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[Elem<C>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Sum of all orders as a single element.
    pub fn total(&self) -> Elem<C> {
        self.coeffs.iter().fold(Elem::zero(self.n), |acc, c| acc.add(c))
    }

    /// Same series cut (or zero-padded) to `order`.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Elem::zero(self.n));
        Series { n: self.n, coeffs }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Dk2Error::AmbientMismatch(self.n, other.n));
        }
        if self.order() != other.order() {
            return Err(Dk2Error::LengthMismatch(format!("orders {} and {}", self.order(), other.order())));
        }
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(&Elem<C>, &Elem<C>) -> Elem<C>) -> Self {
        assert!(self.check(other).is_ok(), "series mismatch");
        Series { n: self.n, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        self.map(|e| e.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|e| e.scale(s))
    }

    /// Applies `f` to every coefficient; `f` must preserve weight.
    pub fn map(&self, f: impl Fn(&Elem<C>) -> Elem<C>) -> Self {
        Series { n: self.n, coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Fallible Cauchy product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    /// Cauchy product truncated at the common order.
    ///
    /// # Panics
    /// Panics on ambient or order mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.check(other).is_ok(), "series mismatch");
        let order = self.order();
        let mut out = Self::zero(self.n, order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j].add_assign(&a.mul(b));
                }
            }
        }
        out
    }

    /// Product of several series of equal order.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Self>) -> Option<Self>
    where
        C: 'a,
    {
        let mut it = factors.into_iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, f| acc.mul(f)))
    }

    pub fn boundary(&self) -> Self {
        self.map(|e| e.boundary())
    }

    pub fn deg0_part(&self) -> Self {
        self.map(|e| e.deg0_part())
    }

    pub fn degm1_part(&self) -> Self {
        self.map(|e| e.degm1_part())
    }

    /// `exp(self)` for a degree-0 series without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Dk2Error::Degree("exp needs a series without constant term".into()));
        }
        if self.coeffs.iter().any(|c| !c.is_deg0()) {
            return Err(Dk2Error::Degree("exp of a degree -1 series".into()));
        }
        let order = self.order();
        let mut out = Self::one(self.n, order);
        let mut power = Self::one(self.n, order);
        for k in 1..=order {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale(&C::from_rational(&inv_factorial(k as u32))));
        }
        Ok(out)
    }

    /// Cabling applied order by order.
    pub fn apply_strand_map(&self, m: &StrandMap) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|e| m.apply(e)).collect::<Result<Vec<_>>>()?;
        Ok(Series { n: m.target_n(), coeffs })
    }

    /// Largest coefficient magnitude over all orders.
    pub fn max_magnitude(&self) -> f64 {
        self.coeffs.iter().map(|c| c.max_magnitude()).fold(0.0, f64::max)
    }

    /// Same coefficients in a larger ambient.
    pub fn with_ambient(&self, n: u8) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|e| e.with_ambient(n)).collect::<Result<Vec<_>>>()?;
        Ok(Series { n, coeffs })
    }
}

impl Series<Coeff> {
    /// Numeric image, each coefficient evaluated with MZV tolerance `tol`.
    pub fn eval(&self, eps: Option<f64>, tol: f64) -> Result<NumSeries> {
        let coeffs = self.coeffs.iter().map(|e| e.eval(eps, tol)).collect::<Result<Vec<_>>>()?;
        Ok(Series { n: self.n, coeffs })
    }

    /// Per-order text dumps under keys `h^0 … h^N`.
    pub fn to_text_map(&self) -> BTreeMap<String, String> {
        self.coeffs.iter().enumerate().map(|(m, e)| (format!("h^{m}"), e.to_string())).collect()
    }

    /// Parses the per-order text dumps produced by [`Series::to_text_map`].
    pub fn from_text_map(n: u8, map: &BTreeMap<String, String>) -> Result<Self> {
        let mut coeffs = Vec::new();
        for m in 0..map.len() {
            let text = map.get(&format!("h^{m}")).ok_or_else(|| Dk2Error::Parse(format!("missing h^{m}")))?;
            coeffs.push(Element::parse(n, text)?);
        }
        Self::from_coeffs(n, coeffs)
    }
}

impl<C: Scalar + CoeffText> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, e) in self.coeffs.iter().enumerate() {
            writeln!(f, "h^{m}: {e}")?;
        }
        Ok(())
    }
}

/// `Σ_{m ≤ order} scale^m x^m / m!` for a degree-0 element `x`.
pub fn series_exp(x: &Element, scale: &Coeff, order: usize) -> Result<Series> {
    if !x.is_deg0() {
        return Err(Dk2Error::Degree("series_exp needs a degree-0 element".into()));
    }
    Series::from_elem(&x.scale(scale), order).exp()
}

/// Cauchy product with explicit mismatch errors.
pub fn series_mul(x: &Series, y: &Series) -> Result<Series> {
    x.checked_mul(y)
}

/// Cabling applied order by order.
pub fn apply_strand_map(m: &StrandMap, s: &Series) -> Result<Series> {
    s.apply_strand_map(m)
}
