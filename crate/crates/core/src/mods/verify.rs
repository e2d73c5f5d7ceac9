//! The universal check `∂(body) = domain − codomain`, order by order.

use serde::Serialize;

use crate::coeffs::Coeff;
use crate::dkalg::{Element, Monomial};
use crate::error::Result;

use super::ModSeries;

/// Verdict at one order of `ħ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderCheck {
    pub order: usize,
    /// `"exact"` when the residual vanishes identically or is nonzero without MZVs,
    /// `"numeric"` when MZV symbols force numeric evaluation.
    pub mode: &'static str,
    pub pass: bool,
    /// Largest evaluated residual coefficient over all powers of `λ` (0 for exact passes).
    pub residual: f64,
    /// Offending or worst monomial, with the power of `λ` it belongs to.
    pub worst: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryReport {
    pub pass: bool,
    pub exact: bool,
    pub max_residual: f64,
    /// First failing order, if any.
    pub first_failure: Option<usize>,
    pub orders: Vec<OrderCheck>,
}

fn monomial_text(n: u8, m: &Monomial) -> String {
    match m {
        Monomial::Word(w) => Element::from_word(n, w.clone(), Coeff::one()).to_string(),
        Monomial::Mon(b) => Element::from_bmon(n, b.clone(), Coeff::one()).to_string(),
    }
}

fn check_order(order: usize, r: &Element, tol: f64, mzv_tol: f64) -> Result<OrderCheck> {
    let terms: Vec<(Monomial, &Coeff)> = r
        .deg0()
        .iter()
        .map(|(w, c)| (Monomial::Word(w.clone()), c))
        .chain(r.degm1().iter().map(|(b, c)| (Monomial::Mon(b.clone()), c)))
        .collect();
    if terms.is_empty() {
        return Ok(OrderCheck { order, mode: "exact", pass: true, residual: 0.0, worst: None });
    }
    // A nonzero coefficient free of MZVs cannot vanish numerically: π is transcendental and λ
    // is a free symbol.
    if let Some((m, c)) = terms.iter().find(|(_, c)| c.is_mzv_free()) {
        let residual = (0..=c.max_lneps_pow())
            .map(|k| c.lneps_coefficient(k).eval(None, mzv_tol).map(|z| z.norm()))
            .try_fold(0.0f64, |acc, z| z.map(|z| acc.max(z)))?;
        return Ok(OrderCheck {
            order,
            mode: "exact",
            pass: false,
            residual,
            worst: Some(format!("{} with coefficient {c}", monomial_text(r.ambient(), m))),
        });
    }
    let mut worst = (0.0f64, String::new());
    for (m, c) in &terms {
        for k in 0..=c.max_lneps_pow() {
            let z = c.lneps_coefficient(k).eval(None, mzv_tol)?.norm();
            if z > worst.0 || worst.1.is_empty() {
                worst = (z, format!("{} at leps^{k}", monomial_text(r.ambient(), m)));
            }
        }
    }
    Ok(OrderCheck { order, mode: "numeric", pass: worst.0 <= tol, residual: worst.0, worst: Some(worst.1) })
}

/// Computes `∂(body) + formal − (dom − cod)` at every order and judges it: exactly where
/// possible, otherwise numerically per power of `λ` against `tol`.
pub fn verify_boundary(m: &ModSeries, tol: f64, mzv_tol: f64) -> Result<BoundaryReport> {
    let residual = m.boundary().sub(&m.dom().sub(m.cod()));
    let mut orders = Vec::with_capacity(residual.order() + 1);
    for k in 0..=residual.order() {
        orders.push(check_order(k, residual.coeff(k), tol, mzv_tol)?);
    }
    let pass = orders.iter().all(|o| o.pass);
    let exact = orders.iter().all(|o| o.mode == "exact");
    let max_residual = orders.iter().map(|o| o.residual).fold(0.0, f64::max);
    let first_failure = orders.iter().find(|o| !o.pass).map(|o| o.order);
    Ok(BoundaryReport { pass, exact, max_residual, first_failure, orders })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mods::{congruence_t12, phi_commute, CommuteKind};

    #[test]
    fn exchange_passes_exactly() {
        let r = verify_boundary(&congruence_t12(4).unwrap(), 1e-8, 1e-10).unwrap();
        assert!(r.pass && r.exact);
        assert_eq!(r.orders.len(), 5);
    }

    #[test]
    fn flipped_sign_fails_at_the_right_order() {
        let m = congruence_t12(4).unwrap();
        let mut coeffs = m.body().coeffs().to_vec();
        coeffs[3] = coeffs[3].neg();
        let bad = m.with_body(crate::series::Series::from_coeffs(2, coeffs).unwrap()).unwrap();
        let r = verify_boundary(&bad, 1e-8, 1e-10).unwrap();
        assert!(!r.pass);
        assert_eq!(r.first_failure, Some(3));
        assert_eq!(r.orders[3].mode, "exact");
        assert!(r.orders[3].worst.as_deref().unwrap().contains("a1"));
        assert!(r.orders[..3].iter().all(|o| o.pass));
    }

    #[test]
    fn corrupted_numeric_body_is_localized() {
        let m = phi_commute(CommuteKind::Hex, 3).unwrap();
        let mut coeffs = m.body().coeffs().to_vec();
        coeffs[3] = coeffs[3].scale(&Coeff::from_int(2));
        let bad = m.with_body(crate::series::Series::from_coeffs(2, coeffs).unwrap()).unwrap();
        let r = verify_boundary(&bad, 1e-8, 1e-10).unwrap();
        assert_eq!(r.first_failure, Some(3));
        assert_eq!(r.orders[3].mode, "numeric");
    }

    #[test]
    fn sign_convention_is_domain_minus_codomain() {
        let m = congruence_t12(3).unwrap();
        let swapped = ModSeries::new(m.body().clone(), m.cod().clone(), m.dom().clone()).unwrap();
        assert!(!verify_boundary(&swapped, 1e-8, 1e-10).unwrap().pass);
    }
}
