//! Rational functions whose denominators are products of linear factors.
//!
//! Every function the 2-connection produces has this shape, which gives a canonical form for
//! free: normalized linear atoms in the denominator, none of which divides the numerator.

use std::collections::BTreeMap;

use num_traits::One;

use crate::coeffs::{Rational, Scalar};
use crate::dkalg::CoeffText;
use crate::error::{Dk2Error, Result};

use super::poly::Poly;

/// `num / ∏ atom^exp`.
#[derive(Debug, Clone, Eq, Default)]
pub struct RatFun {
    num: Poly,
    den: BTreeMap<Poly, u32>,
}

impl RatFun {
    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: BTreeMap::new() }
    }

    pub fn constant(r: Rational) -> Self {
        Self::from_poly(Poly::constant(r))
    }

    pub fn var(i: usize) -> Self {
        Self::from_poly(Poly::var(i))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator_atoms(&self) -> &BTreeMap<Poly, u32> {
        &self.den
    }

    pub fn denominator(&self) -> Poly {
        self.den.iter().fold(Poly::one(), |acc, (a, &e)| acc.mul(&a.pow(e)))
    }

    /// `1/p` for a polynomial that splits into linear factors, trying `candidates` first.
    pub fn inverse_of(p: &Poly, candidates: &[Poly]) -> Result<Self> {
        let (scalar, den) = factor_linear(p, candidates)?;
        Ok(RatFun { num: Poly::constant(scalar.recip()), den })
    }

    /// `1/self`, for functions whose numerator splits into linear factors.
    pub fn inverse(&self, candidates: &[Poly]) -> Result<Self> {
        let inv_num = Self::inverse_of(&self.num, candidates)?;
        Ok(inv_num.mul_rf(&RatFun::from_poly(self.denominator())))
    }

    fn canonical(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let atoms: Vec<Poly> = self.den.keys().cloned().collect();
        for a in atoms {
            while self.den.get(&a).copied().unwrap_or(0) > 0 {
                match self.num.div_exact(&a) {
                    Some(q) => {
                        self.num = q;
                        let e = self.den.get_mut(&a).expect("atom present");
                        *e -= 1;
                        if *e == 0 {
                            self.den.remove(&a);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    pub fn add_rf(&self, o: &RatFun) -> RatFun {
        let mut den = self.den.clone();
        for (a, &e) in &o.den {
            let s = den.entry(a.clone()).or_insert(0);
            *s = (*s).max(e);
        }
        let lift = |r: &RatFun| {
            den.iter().fold(r.num.clone(), |acc, (a, &e)| acc.mul(&a.pow(e - r.den.get(a).copied().unwrap_or(0))))
        };
        let num = lift(self).add(&lift(o));
        RatFun { num, den }.canonical()
    }

    pub fn mul_rf(&self, o: &RatFun) -> RatFun {
        let mut den = self.den.clone();
        for (a, &e) in &o.den {
            *den.entry(a.clone()).or_insert(0) += e;
        }
        RatFun { num: self.num.mul(&o.num), den }.canonical()
    }

    pub fn neg_rf(&self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, r: &Rational) -> RatFun {
        RatFun { num: self.num.scale(r), den: self.den.clone() }.canonical()
    }

    /// Partial derivative in variable `i`.
    pub fn deriv(&self, i: usize) -> RatFun {
        // d(N/∏aₖ^{eₖ}) = (N' − N Σ eₖ aₖ'/aₖ) / ∏aₖ^{eₖ}, with each aₖ' constant.
        let mut out = RatFun { num: self.num.deriv(i), den: self.den.clone() };
        for (a, &e) in &self.den {
            let da = a.deriv(i);
            if da.is_zero() {
                continue;
            }
            let mut den = self.den.clone();
            *den.get_mut(a).expect("atom present") += 1;
            let term = RatFun { num: self.num.mul(&da).scale(&Rational::from_integer((-(e as i64)).into())), den };
            out = out.add_rf(&term);
        }
        out.canonical()
    }

    /// Substitutes `images[i]` for variable `i`; denominators of the result are factored over
    /// `candidates` (or taken as new atoms when linear).
    pub fn substitute(&self, images: &[RatFun], candidates: &[Poly]) -> Result<RatFun> {
        let num = subst_poly(&self.num, images)?;
        let mut out = num;
        for (a, &e) in &self.den {
            let img = subst_poly(a, images)?;
            if img.num.is_zero() {
                return Err(Dk2Error::ChartMismatch(format!("denominator {} vanishes identically", a.text(&[]))));
            }
            let inv = img.inverse(candidates)?;
            for _ in 0..e {
                out = out.mul_rf(&inv);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let d: f64 = self.den.iter().map(|(a, &e)| a.eval(x).powi(e as i32)).product();
        self.num.eval(x) / d
    }

    pub fn text(&self, names: &[&str]) -> String {
        let num = self.num.text(names);
        if self.den.is_empty() {
            return num;
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(a, &e)| {
                let base = if a.terms().count() == 1 { a.text(names) } else { format!("({})", a.text(names)) };
                if e == 1 {
                    base
                } else {
                    format!("{base}^{e}")
                }
            })
            .collect();
        let num = if self.num.terms().count() > 1 { format!("({num})") } else { num };
        format!("{num}/({})", den.join("*"))
    }
}

fn subst_poly(p: &Poly, images: &[RatFun]) -> Result<RatFun> {
    let mut out = RatFun::default();
    for (e, c) in p.terms() {
        let mut t = RatFun::constant(c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let img = images
                .get(i)
                .ok_or_else(|| Dk2Error::ChartMismatch(format!("no image for variable {i}")))?;
            for _ in 0..k {
                t = t.mul_rf(img);
            }
        }
        out = out.add_rf(&t);
    }
    Ok(out)
}

/// Splits `p` as `scalar · ∏ atom^e` with normalized linear atoms.
fn factor_linear(p: &Poly, candidates: &[Poly]) -> Result<(Rational, BTreeMap<Poly, u32>)> {
    if p.is_zero() {
        return Err(Dk2Error::Structural("division by zero rational function".into()));
    }
    let mut rest = p.clone();
    let mut den = BTreeMap::new();
    // Besides the chart atoms, try the simple shapes xᵢ, xᵢ ± xⱼ and xᵢ ± 1.
    let w = p.width();
    let mut all: Vec<Poly> = candidates.to_vec();
    for i in 0..w {
        let xi = Poly::var(i);
        all.push(xi.clone());
        all.push(xi.sub(&Poly::one()));
        all.push(xi.add(&Poly::one()));
        for j in i + 1..w {
            all.push(xi.sub(&Poly::var(j)));
            all.push(xi.add(&Poly::var(j)));
        }
    }
    for c in &all {
        let (_, atom) = c.primitive();
        while let Some(q) = rest.div_exact(&atom) {
            if rest.total_degree() == 0 {
                break;
            }
            rest = q;
            *den.entry(atom.clone()).or_insert(0) += 1;
        }
    }
    if let Some(c) = rest.as_constant() {
        return Ok((c, den));
    }
    if rest.total_degree() == 1 {
        let (s, atom) = rest.primitive();
        *den.entry(atom).or_insert(0) += 1;
        return Ok((s, den));
    }
    Err(Dk2Error::Structural(format!("denominator factor {} is not a product of linear atoms", rest.text(&[]))))
}

impl PartialEq for RatFun {
    /// Cross-multiplied polynomial identity.
    fn eq(&self, o: &Self) -> bool {
        self.num.mul(&o.denominator()) == o.num.mul(&self.denominator())
    }
}

impl Scalar for RatFun {
    fn zero() -> Self {
        RatFun::default()
    }
    fn one() -> Self {
        RatFun::constant(<Rational as One>::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self.add_rf(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_rf(other)
    }
    fn neg(&self) -> Self {
        self.neg_rf()
    }
    fn from_rational(r: &Rational) -> Self {
        RatFun::constant(r.clone())
    }
    fn magnitude(&self) -> f64 {
        self.num.terms().map(|(_, c)| crate::coeffs::rational_to_f64(c).abs()).sum()
    }
}

impl CoeffText for RatFun {
    fn simple_text(&self) -> Option<String> {
        None
    }
    fn full_text(&self) -> String {
        self.text(&[])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;

    fn v(i: usize) -> Poly {
        Poly::var(i)
    }

    fn inv(p: Poly) -> RatFun {
        RatFun::inverse_of(&p, &[]).unwrap()
    }

    #[test]
    fn partial_fractions_combine_canonically() {
        // 1/(z(u−z)) − 1/(u(u−z)) = 1/(zu)
        let z = v(0);
        let u = v(1);
        let a = inv(z.mul(&u.sub(&z)));
        let b = inv(u.mul(&u.sub(&z)));
        let c = inv(z.mul(&u));
        let lhs = a.add_rf(&b.neg_rf());
        assert_eq!(lhs, c);
        assert_eq!(lhs.denominator_atoms(), c.denominator_atoms());
        assert_eq!(lhs.numerator(), c.numerator());
    }

    #[test]
    fn derivative_of_log_form() {
        // d/dz (1/(z−1)) = −1/(z−1)²
        let f = inv(v(0).sub(&Poly::one()));
        let d = f.deriv(0);
        assert_eq!(d, f.mul_rf(&f).neg_rf());
        assert!(f.deriv(1).num.is_zero());
    }

    #[test]
    fn substitution_factors_denominators() {
        // 1/(z1 − z2) under z1 = w, z2 = zv + w becomes −1/(zv).
        let f = inv(v(0).sub(&v(1)));
        let (z, vv, w) = (RatFun::var(0), RatFun::var(2), RatFun::var(3));
        let images = vec![w.clone(), z.mul_rf(&vv).add_rf(&w)];
        let g = f.substitute(&images, &[v(0), v(2)]).unwrap();
        assert_eq!(g, inv(v(0).mul(&v(2))).neg_rf());
        assert_eq!(g.denominator_atoms().len(), 2);
    }

    #[test]
    fn evaluation_and_text() {
        let f = RatFun::from_poly(Poly::constant(rat(2, 1))).mul_rf(&inv(v(0).mul(&v(1))));
        assert!((f.eval(&[0.5, 4.0]) - 1.0).abs() < 1e-15);
        assert_eq!(f.text(&["x", "y"]), "2/(y*x)");
    }
}
