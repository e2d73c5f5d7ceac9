//! Sparse multivariate polynomials with rational coefficients.
//!
//! Variables are numbered; names live on the chart. Exponent vectors carry no trailing zeros,
//! so a polynomial does not need to know how many variables its chart has.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coeffs::{rational_to_f64, rational_to_text, Rational};

/// Exponent vector without trailing zeros.
pub type Exps = Vec<u32>;

fn trim(mut e: Exps) -> Exps {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exps_mul(a: &Exps, b: &Exps) -> Exps {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

fn exps_div(a: &Exps, b: &Exps) -> Option<Exps> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = a.clone();
    for (i, &x) in b.iter().enumerate() {
        out[i] = out[i].checked_sub(x)?;
    }
    Some(trim(out))
}

fn degree(e: &Exps) -> u32 {
    e.iter().sum()
}

/// Graded lexicographic order with variable 0 largest.
pub fn grlex(a: &Exps, b: &Exps) -> Ordering {
    degree(a).cmp(&degree(b)).then_with(|| {
        let n = a.len().max(b.len());
        for i in 0..n {
            let (x, y) = (a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0));
            if x != y {
                return x.cmp(&y);
            }
        }
        Ordering::Equal
    })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Exps, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(r: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), r);
        p
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        let mut p = Poly::zero();
        p.add_term(e, Rational::one());
        p
    }

    fn add_term(&mut self, e: Exps, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(degree).max().unwrap_or(0)
    }

    /// Number of variables the polynomial actually mentions (largest index + 1).
    pub fn width(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Exps, &Rational)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, r: &Rational) -> Poly {
        if r.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(exps_mul(e1, e2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let k = e.get(i).copied().unwrap_or(0);
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * Rational::from_integer(k.into()));
        }
        out
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    ///
    /// With a single divisor the division algorithm leaves remainder zero exactly when the
    /// divisor divides, since `{d}` is a Gröbner basis of `(d)`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (de, dc) = d.leading()?;
        let (de, dc) = (de.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quo = Poly::zero();
        while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let qe = exps_div(&e, &de)?;
            let qc = c / &dc;
            let mut t = Poly::zero();
            t.add_term(qe, qc);
            rem = rem.sub(&t.mul(d));
            quo = quo.add(&t);
        }
        Some(quo)
    }

    /// `(s, p)` with `self = s·p`, where `p` has coprime integer coefficients and a positive
    /// leading coefficient.
    pub fn primitive(&self) -> (Rational, Poly) {
        if self.is_zero() {
            return (Rational::zero(), Poly::zero());
        }
        let mut num_gcd = num_bigint::BigInt::zero();
        let mut den_lcm = num_bigint::BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut s = Rational::new(num_gcd, den_lcm);
        if self.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            s = -s;
        }
        let inv = s.recip();
        (s, self.scale(&inv))
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().enumerate().fold(rational_to_f64(c), |acc, (i, &k)| acc * x[i].powi(k as i32)))
            .sum()
    }

    /// Human-readable text, terms in decreasing graded-lexicographic order.
    pub fn text(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| grlex(b.0, a.0));
        let mut out = String::new();
        for (k, (e, c)) in ts.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    let nm = names.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("x{i}"));
                    if p == 1 {
                        nm
                    } else {
                        format!("{nm}^{p}")
                    }
                })
                .collect();
            let neg = c.is_negative();
            let a = c.abs();
            let body = match (mono.is_empty(), a.is_one()) {
                (true, _) => rational_to_text(&a),
                (false, true) => mono.join("*"),
                (false, false) => format!("{}*{}", rational_to_text(&a), mono.join("*")),
            };
            match (k, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;

    fn x(i: usize) -> Poly {
        Poly::var(i)
    }

    #[test]
    fn arithmetic_and_text() {
        let p = x(0).sub(&Poly::one()).mul(&x(1).add(&x(0)));
        assert_eq!(p.text(&["z", "u"]), "z^2 + z*u - z - u");
        assert_eq!(p.deriv(0).text(&["z", "u"]), "2*z + u - 1");
        assert_eq!(p.total_degree(), 2);
    }

    #[test]
    fn exact_division() {
        let a = x(0).sub(&x(1));
        let b = x(2).add(&Poly::constant(rat(3, 2)));
        let p = a.mul(&b).mul(&a);
        assert_eq!(p.div_exact(&a).unwrap(), a.mul(&b));
        assert!(p.div_exact(&x(0)).is_none());
        assert!(Poly::one().div_exact(&a).is_none());
    }

    #[test]
    fn primitive_part() {
        let p = x(0).scale(&rat(-2, 3)).add(&Poly::constant(rat(4, 3)));
        let (s, q) = p.primitive();
        assert_eq!(s, rat(-2, 3));
        assert_eq!(q, x(0).sub(&Poly::constant(rat(2, 1))));
    }

    #[test]
    fn evaluation() {
        let p = x(0).mul(&x(1)).sub(&Poly::constant(rat(1, 2)));
        assert!((p.eval(&[2.0, 3.0]) - 5.5).abs() < 1e-15);
    }
}
