//! Replacing `t₁₃` by `t̄₁₃ = t₁₃ − Λ` in the second slot of an associator.

use crate::coeffs::{binomial, sign, zeta_coeff, Rational};
use crate::dkalg::{t, Element, StrandMap};
use crate::error::Result;
use crate::series::{boxes, drinfeld_phi, phi_tuples, PhiVariant, Powers, Series};

use super::ModSeries;

fn ad_pow(y: &Element, x: Element, k: u32) -> Element {
    (0..k).fold(x, |acc, _| y.bracket(&acc))
}

/// `Φ(t₁₂,t₁₃) ⇛ Φ(t₁₂,t̄₁₃)` on three strands, through `ħ^order`.
///
/// The sum runs over the adjoint form of the associator. Within the innermost bracket, words
/// in `t₁₂` and `t̄₁₃` carry one insertion of `ℒ+ℛ` (for a `t̄₁₃`) or `−ℒ` (for a `t₁₂`), with
/// the conventions `j₀ = 0` and `k₀ = m − k_l + Σ_{n<l}(q_n − k_n)`.
pub fn debar(order: usize) -> Result<ModSeries> {
    let n = 2;
    let t12 = t("12", n)?;
    let t13 = t("13", n)?;
    let tbar = t("12", n)?.add(&t("23", n)?).neg();
    let l = Element::l(n, 1, 2, 3);
    let lr = l.add(&Element::r(n, 1, 2, 3));
    let xp = Powers::new(&t12, order);
    let bp = Powers::new(&tbar, order);
    let ins = |pows: &Powers, omega: &Element, e: u32| -> Element {
        (1..=e).fold(Element::zero(n), |acc, r| acc.add(&pows.get(r - 1).mul(omega).mul(pows.get(e - r))))
    };
    let mut coeffs = vec![Element::zero(n); order + 1];
    for (p, q) in phi_tuples(order) {
        let wt = (p.iter().sum::<u32>() + q.iter().sum::<u32>()) as usize;
        let len = p.len();
        for j in boxes(&p) {
            let z = zeta_coeff(&p, &q, &j)?;
            let mut total = Element::zero(n);
            for lvl in 1..=len {
                for m in 0..q[lvl - 1] {
                    let mut inner = Element::zero(n);
                    for kpre in boxes(&q[..lvl - 1]) {
                        let mut cpre = Rational::from_integer(1.into());
                        for (&qi, &ki) in q.iter().zip(&kpre) {
                            cpre *= Rational::from_integer(binomial(qi, ki)) * sign(ki as i64);
                        }
                        for kl in 0..=m {
                            let c = &cpre * Rational::from_integer(binomial(m, kl)) * sign(kl as i64);
                            let k0 = m - kl + q.iter().zip(&kpre).map(|(a, b)| a - b).sum::<u32>();
                            let mut jj = vec![0];
                            jj.extend_from_slice(&j[..lvl]);
                            let mut kk = vec![k0];
                            kk.extend_from_slice(&kpre);
                            kk.push(kl);
                            let segs: Vec<Element> = jj.iter().zip(&kk).map(|(&a, &b)| xp.get(a).mul(bp.get(b))).collect();
                            let mut s = Element::zero(n);
                            for nn in 0..segs.len() {
                                let prefix = segs[..nn].iter().fold(Element::one(n), |acc, x| acc.mul(x));
                                let suffix = segs[nn + 1..].iter().fold(Element::one(n), |acc, x| acc.mul(x));
                                let bracket = xp
                                    .get(jj[nn])
                                    .mul(&ins(&bp, &lr, kk[nn]))
                                    .sub(&ins(&xp, &l, jj[nn]).mul(bp.get(kk[nn])));
                                s.add_assign(&prefix.mul(&bracket).mul(&suffix));
                            }
                            inner.add_assign(&s.scale_rational(&c));
                        }
                    }
                    let mut x = ad_pow(&t13, inner, q[lvl - 1] - m - 1);
                    for i in lvl..len {
                        x = ad_pow(&t13, x.mul(xp.get(j[i])), q[i]);
                    }
                    let rest = p.iter().sum::<u32>() - j.iter().sum::<u32>();
                    total.add_assign(&x.mul(xp.get(rest)));
                }
            }
            coeffs[wt].add_assign(&total.scale(&z));
        }
    }
    let body = Series::from_coeffs(n, coeffs)?;
    let v = PhiVariant::CompactA;
    ModSeries::new(body, drinfeld_phi(&t12, &t13, order, v)?, drinfeld_phi(&t12, &tbar, order, v)?)
}

/// `Φ(t₂₃,t̄₁₃) ⇛ Φ(t₂₃,t₁₃)`: [`debar`] with strands 1 and 3 exchanged, negated.
pub fn debar_prime(order: usize) -> Result<ModSeries> {
    let swap = StrandMap::permutation(&[3, 2, 1])?;
    Ok(debar(order)?.apply_strand_map(&swap)?.reversed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{Coeff, MzvIndex};
    use crate::mods::verify_boundary;

    fn zeta2() -> Coeff {
        Coeff::zeta(MzvIndex::new(vec![2]).unwrap())
    }

    #[test]
    fn vanishes_below_second_order() {
        assert!(debar(1).unwrap().body().is_zero());
    }

    #[test]
    fn second_order_terms() {
        let d = debar(2).unwrap();
        assert_eq!(d.body().coeff(2), &Element::l(2, 1, 2, 3).scale(&zeta2().neg()));
        let dp = debar_prime(2).unwrap();
        assert_eq!(dp.body().coeff(2), &Element::r(2, 1, 2, 3).scale(&zeta2()));
    }

    #[test]
    fn boundary_contracts_hold() {
        for m in [debar(4).unwrap(), debar_prime(4).unwrap()] {
            let r = verify_boundary(&m, 1e-8, 1e-10).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }
}
