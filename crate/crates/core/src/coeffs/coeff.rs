use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::mzv::mzv_eval_with_bound;
use super::{binomial, rational_to_f64, sign, Rational};
use crate::error::{Dk2Error, Result};

/// Admissible index `(s₁,…,s_k)` of a multiple zeta value, `s₁ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MzvIndex(Vec<u32>);

impl MzvIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() || entries.contains(&0) {
            return Err(Dk2Error::InvalidIndex(format!("{entries:?} is not a valid MZV index")));
        }
        if entries[0] < 2 {
            return Err(Dk2Error::Divergent(entries));
        }
        Ok(MzvIndex(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// `(iπ)^ipi_pow · λ^lneps_pow · ∏ ζ(idx)` with the MZV multiset kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoeffMonomial {
    pub ipi_pow: u32,
    pub lneps_pow: u32,
    pub mzv_factors: Vec<MzvIndex>,
}

impl CoeffMonomial {
    pub fn unit() -> Self {
        CoeffMonomial { ipi_pow: 0, lneps_pow: 0, mzv_factors: Vec::new() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut mzv_factors = self.mzv_factors.clone();
        mzv_factors.extend(other.mzv_factors.iter().cloned());
        mzv_factors.sort();
        CoeffMonomial {
            ipi_pow: self.ipi_pow + other.ipi_pow,
            lneps_pow: self.lneps_pow + other.lneps_pow,
            mzv_factors,
        }
    }
}

/// Exact element of `Q[(iπ), λ = ln ε, MZV symbols]`; no MZV identity is ever applied.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Coeff {
    terms: BTreeMap<CoeffMonomial, Rational>,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::monomial(CoeffMonomial::unit(), r)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(super::rat_int(n))
    }

    pub fn monomial(m: CoeffMonomial, r: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(m, r);
        }
        Coeff { terms }
    }

    /// The symbol `iπ`.
    pub fn ipi() -> Self {
        Self::monomial(CoeffMonomial { ipi_pow: 1, ..CoeffMonomial::unit() }, BigRational::one())
    }

    /// The symbol `λ = ln ε`.
    pub fn lneps() -> Self {
        Self::monomial(CoeffMonomial { lneps_pow: 1, ..CoeffMonomial::unit() }, BigRational::one())
    }

    /// The symbol `ζ(idx)`.
    pub fn zeta(idx: MzvIndex) -> Self {
        Self::monomial(
            CoeffMonomial { mzv_factors: vec![idx], ..CoeffMonomial::unit() },
            BigRational::one(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CoeffMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value if this is a constant (possibly zero).
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, r) = self.terms.iter().next().expect("one term");
                (*m == CoeffMonomial::unit()).then(|| r.clone())
            }
            _ => None,
        }
    }

    /// True when no MZV symbol occurs, so equality checks need no MZV identity.
    pub fn is_mzv_free(&self) -> bool {
        self.terms.keys().all(|m| m.mzv_factors.is_empty())
    }

    pub fn max_lneps_pow(&self) -> u32 {
        self.terms.keys().map(|m| m.lneps_pow).max().unwrap_or(0)
    }

    /// Part of the coefficient carrying exactly `λ^k`.
    pub fn lneps_part(&self, k: u32) -> Coeff {
        Coeff {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.lneps_pow == k)
                .map(|(m, r)| (m.clone(), r.clone()))
                .collect(),
        }
    }

    /// Coefficient of `λ^k`, with the `λ` factor removed.
    pub fn lneps_coefficient(&self, k: u32) -> Coeff {
        Coeff {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.lneps_pow == k)
                .map(|(m, r)| (CoeffMonomial { lneps_pow: 0, ..m.clone() }, r.clone()))
                .collect(),
        }
    }

    fn insert_add(terms: &mut BTreeMap<CoeffMonomial, Rational>, m: CoeffMonomial, r: Rational) {
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(v) => {
                if !r.is_zero() {
                    v.insert(r);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + r;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        let mut terms = self.terms.clone();
        for (m, r) in &other.terms {
            Self::insert_add(&mut terms, m.clone(), r.clone());
        }
        Coeff { terms }
    }

    pub fn add_assign(&mut self, other: &Coeff) {
        for (m, r) in &other.terms {
            Self::insert_add(&mut self.terms, m.clone(), r.clone());
        }
    }

    pub fn neg(&self) -> Coeff {
        Coeff { terms: self.terms.iter().map(|(m, r)| (m.clone(), -r)).collect() }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        let mut terms = BTreeMap::new();
        for (m1, r1) in &self.terms {
            for (m2, r2) in &other.terms {
                Self::insert_add(&mut terms, m1.mul(m2), r1 * r2);
            }
        }
        Coeff { terms }
    }

    pub fn scale(&self, r: &Rational) -> Coeff {
        if r.is_zero() {
            return Coeff::zero();
        }
        Coeff { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * r)).collect() }
    }

    pub fn pow(&self, e: u32) -> Coeff {
        (0..e).fold(Coeff::one(), |acc, _| acc.mul(self))
    }

    /// Numeric value with `iπ ↦ i·π`, `λ ↦ ln eps` and each MZV evaluated within `tol`.
    pub fn eval(&self, eps: Option<f64>, tol: f64) -> Result<Complex64> {
        self.eval_with_bound(eps, tol).map(|(v, _)| v)
    }

    /// Numeric value and a bound on the error propagated from the MZV evaluations.
    pub fn eval_with_bound(&self, eps: Option<f64>, tol: f64) -> Result<(Complex64, f64)> {
        let lam = match eps {
            Some(e) if e > 0.0 => Some(e.ln()),
            Some(e) => {
                return Err(Dk2Error::InvalidIndex(format!("eps must be positive, got {e}")))
            }
            None => None,
        };
        let mut value = Complex64::new(0.0, 0.0);
        let mut bound = 0.0;
        for (m, r) in &self.terms {
            let mut base = Complex64::new(rational_to_f64(r), 0.0);
            base *= Complex64::new(0.0, std::f64::consts::PI).powu(m.ipi_pow);
            if m.lneps_pow > 0 {
                let l = lam.ok_or(Dk2Error::MissingEps)?;
                base *= l.powi(m.lneps_pow as i32);
            }
            let mut exact = 1.0;
            let mut upper = 1.0;
            for idx in &m.mzv_factors {
                let (z, b) = mzv_eval_with_bound(idx.entries(), tol)?;
                exact *= z;
                upper *= z.abs() + b;
            }
            value += base * exact;
            bound += base.norm() * (upper - exact.abs());
        }
        Ok((value, bound))
    }
}

/// Coefficient evaluation as a free function; see [`Coeff::eval`].
pub fn coeff_eval(c: &Coeff, eps: Option<f64>, tol: f64) -> Result<Complex64> {
    c.eval(eps, tol)
}

fn check_tuples(p: &[u32], q: &[u32], j: &[u32]) -> Result<()> {
    if p.len() != q.len() || p.len() != j.len() {
        return Err(Dk2Error::LengthMismatch(format!("p={p:?} q={q:?} j={j:?}")));
    }
    if p.is_empty() || p.contains(&0) || q.contains(&0) {
        return Err(Dk2Error::InvalidIndex(format!("p={p:?}, q={q:?} must be positive")));
    }
    if j.iter().zip(p).any(|(a, b)| a > b) {
        return Err(Dk2Error::InvalidIndex(format!("j={j:?} exceeds p={p:?}")));
    }
    Ok(())
}

/// `ζ_j^{p,q} = (-1)^{|j|+|p|} ζ(p₁+1,{1}^{q₁-1},…,p_k+1,{1}^{q_k-1}) ∏ C(p_l, j_l)`.
pub fn zeta_coeff(p: &[u32], q: &[u32], j: &[u32]) -> Result<Coeff> {
    check_tuples(p, q, j)?;
    let mut entries = Vec::new();
    for (&pl, &ql) in p.iter().zip(q) {
        entries.push(pl + 1);
        entries.extend(std::iter::repeat_n(1, (ql - 1) as usize));
    }
    let total: i64 = j.iter().chain(p).map(|&x| x as i64).sum();
    let mut r = sign(total);
    for (&pl, &jl) in p.iter().zip(j) {
        r *= BigRational::from_integer(binomial(pl, jl));
    }
    Ok(Coeff::zeta(MzvIndex::new(entries)?).scale(&r))
}

/// `ζ_{j,k}^{p,q} = ζ_j^{p,q} ∏ C(q_l, k_l)(-1)^{k_l}`.
pub fn zeta_coeff_full(p: &[u32], q: &[u32], j: &[u32], k: &[u32]) -> Result<Coeff> {
    if k.len() != q.len() {
        return Err(Dk2Error::LengthMismatch(format!("k={k:?} q={q:?}")));
    }
    if k.iter().zip(q).any(|(a, b)| a > b) {
        return Err(Dk2Error::InvalidIndex(format!("k={k:?} exceeds q={q:?}")));
    }
    let base = zeta_coeff(p, q, j)?;
    let mut r = BigRational::one();
    for (&ql, &kl) in q.iter().zip(k) {
        r *= BigRational::from_integer(binomial(ql, kl)) * sign(kl as i64);
    }
    Ok(base.scale(&r))
}

impl std::fmt::Display for Coeff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&super::text::coeff_to_text(self))
    }
}

impl Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl std::str::FromStr for Coeff {
    type Err = Dk2Error;
    fn from_str(s: &str) -> Result<Self> {
        super::text::coeff_from_text(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;
    use proptest::prelude::*;

    fn z(e: &[u32]) -> Coeff {
        Coeff::zeta(MzvIndex::new(e.to_vec()).unwrap())
    }

    #[test]
    fn zeta_coeff_examples() {
        assert_eq!(zeta_coeff(&[1], &[1], &[0]).unwrap(), z(&[2]).neg());
        assert_eq!(zeta_coeff(&[1], &[1], &[1]).unwrap(), z(&[2]));
        assert_eq!(zeta_coeff(&[1], &[2], &[0]).unwrap(), z(&[2, 1]).neg());
        assert!(zeta_coeff(&[1], &[1, 1], &[0]).is_err());
        assert!(zeta_coeff(&[1], &[1], &[2]).is_err());
    }

    #[test]
    fn zeta_coeff_full_examples() {
        assert_eq!(zeta_coeff_full(&[1], &[1], &[0], &[0]).unwrap(), z(&[2]).neg());
        assert_eq!(zeta_coeff_full(&[1], &[1], &[0], &[1]).unwrap(), z(&[2]));
        assert!(zeta_coeff_full(&[1], &[1], &[0], &[2]).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let ipi = Coeff::ipi();
        let sq = ipi.mul(&ipi);
        assert_eq!(sq.terms().next().unwrap().0.ipi_pow, 2);
        let prod = z(&[2]).mul(&z(&[3]));
        let (m, _) = prod.terms().next().unwrap();
        assert_eq!(m.mzv_factors.len(), 2);
        let x = ipi.add(&z(&[2]).scale(&rat(3, 4)));
        assert!(x.add(&x.neg()).is_zero());
    }

    #[test]
    fn eval_examples() {
        let v = z(&[2]).neg().eval(None, 1e-10).unwrap();
        assert!((v.re + 1.6449340668).abs() < 1e-9);
        let c = Coeff::ipi().pow(2).scale(&rat(1, 6)).add(&z(&[2]));
        assert!(c.eval(None, 1e-10).unwrap().norm() < 1e-9);
        let l = Coeff::lneps().eval(Some(0.1), 1e-10).unwrap();
        assert!((l.re - 0.1f64.ln()).abs() < 1e-15);
        assert_eq!(Coeff::lneps().eval(None, 1e-10), Err(Dk2Error::MissingEps));
    }

    fn arb_coeff() -> impl Strategy<Value = Coeff> {
        let mono = (0u32..3, 0u32..3, prop::collection::vec(2u32..4, 0..2), -5i64..6, 1i64..4);
        prop::collection::vec(mono, 0..4).prop_map(|ts| {
            let mut c = Coeff::zero();
            for (a, b, zs, n, d) in ts {
                let mzv: Vec<MzvIndex> =
                    zs.into_iter().map(|s| MzvIndex::new(vec![s]).unwrap()).collect();
                let mut m = CoeffMonomial { ipi_pow: a, lneps_pow: b, mzv_factors: mzv };
                m.mzv_factors.sort();
                c.add_assign(&Coeff::monomial(m, rat(n, d)));
            }
            c
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_coeff(), b in arb_coeff(), c in arb_coeff()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn eval_is_homomorphism(a in arb_coeff(), b in arb_coeff()) {
            let eps = Some(0.3);
            let (va, _) = a.eval_with_bound(eps, 1e-12).unwrap();
            let (vb, _) = b.eval_with_bound(eps, 1e-12).unwrap();
            let vab = a.mul(&b).eval(eps, 1e-12).unwrap();
            let scale = 1.0 + va.norm() * vb.norm();
            prop_assert!((vab - va * vb).norm() < 1e-9 * scale);
            let vsum = a.add(&b).eval(eps, 1e-12).unwrap();
            prop_assert!((vsum - va - vb).norm() < 1e-9 * (1.0 + va.norm() + vb.norm()));
        }

        #[test]
        fn text_round_trip(a in arb_coeff()) {
            let s = a.to_string();
            let back: Coeff = s.parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
