//! Drinfeld's KZ associator in three equivalent expansions, and the BRW functional relation.

use serde::Serialize;

use crate::coeffs::{zeta_coeff, zeta_coeff_full, Coeff};
use crate::dkalg::Element;
use crate::error::{Dk2Error, Result};

use super::{series_exp, Series};

/// Which expression of the associator to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PhiVariant {
    /// Nested sum over `j`, `k` with the explicit word `B^{|q|-|k|} A^{j₁}B^{k₁}⋯A^{|p|-|j|}`.
    Direct,
    /// Product form `∏_{l=0}^{p̃+1} A^{j_l}B^{k_l}` with `ζ_{j,k}^{p,q}`.
    CompactA,
    /// Nested `ad_B^{q_l} r_A^{j_l}` form.
    CompactB,
}

impl std::str::FromStr for PhiVariant {
    type Err = Dk2Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(PhiVariant::Direct),
            "compactA" | "compacta" | "compact-a" => Ok(PhiVariant::CompactA),
            "compactB" | "compactb" | "compact-b" => Ok(PhiVariant::CompactB),
            _ => Err(Dk2Error::Parse(format!("unknown variant `{s}`"))),
        }
    }
}

/// Compositions of `total` into `len` positive parts, lexicographically.
pub(crate) fn compositions(total: u32, len: usize) -> Vec<Vec<u32>> {
    if len == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(len as u32 - 1) {
        for mut rest in compositions(total - first, len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All `(p, q)` with `p, q > 0`, equal lengths and `|p| + |q| ≤ order`, ordered
/// lexicographically by `(|p|+|q|, p̃, p, q)`.
pub fn phi_tuples(order: usize) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for total in 2..=order as u32 {
        for len in 1..=(total / 2) as usize {
            let mut pairs = Vec::new();
            for sp in len as u32..=total - len as u32 {
                for p in compositions(sp, len) {
                    for q in compositions(total - sp, len) {
                        pairs.push((p.clone(), q));
                    }
                }
            }
            pairs.sort();
            out.extend(pairs);
        }
    }
    out
}

/// All tuples `0 ≤ j ≤ bound` componentwise, lexicographically.
pub(crate) fn boxes(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=b).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Cached powers of a degree-0 element.
pub(crate) struct Powers {
    pows: Vec<Element>,
}

impl Powers {
    pub(crate) fn new(x: &Element, max: usize) -> Self {
        let mut pows = vec![Element::one(x.ambient())];
        for k in 1..=max {
            let next = pows[k - 1].mul(x);
            pows.push(next);
        }
        Powers { pows }
    }

    pub(crate) fn get(&self, k: u32) -> &Element {
        &self.pows[k as usize]
    }
}

fn check_args(x: &Element, y: &Element) -> Result<()> {
    if x.ambient() != y.ambient() {
        return Err(Dk2Error::AmbientMismatch(x.ambient(), y.ambient()));
    }
    if !x.is_deg0() || !y.is_deg0() {
        return Err(Dk2Error::Degree("associator arguments must have degree 0".into()));
    }
    if x.deg0().keys().chain(y.deg0().keys()).any(|w| w.is_empty()) {
        return Err(Dk2Error::Degree("associator arguments must have no constant term".into()));
    }
    Ok(())
}

fn sum(v: &[u32]) -> u32 {
    v.iter().sum()
}

/// `Φ(x, y)` through `ħ^order`. The three variants are independent transcriptions of the
/// same series and agree term by term.
pub fn drinfeld_phi(x: &Element, y: &Element, order: usize, variant: PhiVariant) -> Result<Series> {
    check_args(x, y)?;
    let n = x.ambient();
    let xp = Powers::new(x, order);
    let yp = Powers::new(y, order);
    let mut total = Element::one(n);
    for (p, q) in phi_tuples(order) {
        let js = boxes(&p);
        match variant {
            PhiVariant::Direct => {
                for j in &js {
                    let zj = zeta_coeff(&p, &q, j)?;
                    for k in boxes(&q) {
                        let mut c = zj.clone();
                        for (&ql, &kl) in q.iter().zip(&k) {
                            let b = crate::coeffs::binomial(ql, kl);
                            c = c.scale(&(crate::coeffs::Rational::from_integer(b) * crate::coeffs::sign(kl as i64)));
                        }
                        let mut word = yp.get(sum(&q) - sum(&k)).clone();
                        for (&jl, &kl) in j.iter().zip(&k) {
                            word = word.mul(xp.get(jl)).mul(yp.get(kl));
                        }
                        word = word.mul(xp.get(sum(&p) - sum(j)));
                        total.add_assign(&word.scale(&c));
                    }
                }
            }
            PhiVariant::CompactA => {
                for j in &js {
                    for k in boxes(&q) {
                        let c = zeta_coeff_full(&p, &q, j, &k)?;
                        let mut jj = vec![0];
                        jj.extend_from_slice(j);
                        jj.push(sum(&p) - sum(j));
                        let mut kk = vec![sum(&q) - sum(&k)];
                        kk.extend_from_slice(&k);
                        kk.push(0);
                        let word = jj
                            .iter()
                            .zip(&kk)
                            .fold(Element::one(n), |acc, (&a, &b)| acc.mul(xp.get(a)).mul(yp.get(b)));
                        total.add_assign(&word.scale(&c));
                    }
                }
            }
            PhiVariant::CompactB => {
                for j in &js {
                    let c = zeta_coeff(&p, &q, j)?;
                    let mut u = Element::one(n);
                    for (&jl, &ql) in j.iter().zip(&q) {
                        u = u.mul(xp.get(jl));
                        for _ in 0..ql {
                            u = y.bracket(&u);
                        }
                    }
                    u = u.mul(xp.get(sum(&p) - sum(j)));
                    total.add_assign(&u.scale(&c));
                }
            }
        }
    }
    Ok(Series::from_elem(&total, order))
}

/// Both sides of `Φ(A,-A-B) e^{-iπħA} Φ(B,A) = e^{-iπħ(A+B)} Φ(B,-A-B) e^{iπħB}` on the free
/// letters `A = a12`, `B = a23`.
pub fn brw_sides(order: usize) -> Result<(Series, Series)> {
    let a = Element::a(2, 1, 2);
    let b = Element::a(2, 2, 3);
    let s = a.add(&b).neg();
    let ipi = Coeff::ipi();
    let v = PhiVariant::CompactA;
    let lhs = drinfeld_phi(&a, &s, order, v)?
        .mul(&series_exp(&a, &ipi.neg(), order)?)
        .mul(&drinfeld_phi(&b, &a, order, v)?);
    let rhs = series_exp(&a.add(&b), &ipi.neg(), order)?
        .mul(&drinfeld_phi(&b, &s, order, v)?)
        .mul(&series_exp(&b, &ipi, order)?);
    Ok((lhs, rhs))
}

/// Largest coefficient of the BRW difference through `ħ^order`, MZVs evaluated at `tol`.
pub fn brw_residual(order: usize, tol: f64) -> Result<f64> {
    let (lhs, rhs) = brw_sides(order)?;
    let diff = lhs.sub(&rhs);
    Ok(diff.eval(None, tol)?.max_magnitude())
}
