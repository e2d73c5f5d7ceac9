//! The right hexagonator `R`, its strand permutations, and the reduced Breen element.

use serde::Serialize;

use crate::coeffs::Coeff;
use crate::dkalg::{reduce_modulo_relations, t, Element, Quotient, StrandMap};
use crate::error::Result;
use crate::series::{drinfeld_phi, PhiVariant, Series};

use super::{bch_split, congruence_t12, congruence_t23, debar, debar_prime, ex, lam, phi_commute, prod};
use super::{BchKind, CommuteKind, ModSeries};

fn phi(x: &str, y: &str, order: usize) -> Result<Series> {
    drinfeld_phi(&t(x, 2)?, &t(y, 2)?, order, PhiVariant::CompactA)
}

fn e_ipi(x: &Element, order: usize) -> Series {
    ex(&Coeff::ipi(), x, order)
}

/// The five ingredient modifications of `R`, unwhiskered, in composition order.
pub fn hexagonator_ingredients(order: usize) -> Result<Vec<(&'static str, ModSeries)>> {
    Ok(vec![
        ("bch_hex1", bch_split(BchKind::Hex1, order)?),
        ("commute_hex", phi_commute(CommuteKind::Hex, order)?),
        ("debar", debar(order)?),
        ("debar_prime", debar_prime(order)?),
        ("bch_hex5", bch_split(BchKind::Hex5, order)?),
    ])
}

/// `R: Φ(t₁₂,t₁₃)e^{iπt_{(12)3}}Φ(t₂₃,t₁₂) ⇛ e^{iπt₁₃}Φ(t₂₃,t₁₃)e^{iπt₂₃}` on three strands.
///
/// The first three and last two steps are composed with exact domain checks. The step between
/// them is the BRW identity, which holds only after numeric MZV evaluation, so the two halves
/// are joined by adding bodies.
pub fn hexagonator(order: usize) -> Result<ModSeries> {
    let n = 2;
    let one = Series::one(n, order);
    let big = lam(n, 1, 2, 3);
    let tbar = t("12", n)?.add(&t("23", n)?).neg();
    let phi_a = phi("12", "13", order)?;
    let phi_b = phi("23", "12", order)?;
    let phi_c = phi("23", "13", order)?;
    let e_big = e_ipi(&big, order);
    let e_m12 = ex(&Coeff::ipi().neg(), &t("12", n)?, order);
    let e_23 = e_ipi(&t("23", n)?, order);
    let e_bar = e_ipi(&tbar, order);
    let tail = prod(n, order, &[&e_m12, &phi_b]);

    let first = bch_split(BchKind::Hex1, order)?
        .whisker(&phi_a, &phi_b)
        .then(&phi_commute(CommuteKind::Hex, order)?.whisker(&one, &tail))?
        .then(&debar(order)?.whisker(&e_big, &tail))?;
    let second = debar_prime(order)?
        .whisker(&prod(n, order, &[&e_big, &e_bar]), &e_23)
        .then(&bch_split(BchKind::Hex5, order)?.whisker(&one, &prod(n, order, &[&phi_c, &e_23])))?;
    ModSeries::new(first.body().add(second.body()), first.dom().clone(), second.cod().clone())
}

/// `R_{ijk}`: the hexagonator with strands relabelled `1 ↦ i, 2 ↦ j, 3 ↦ k`.
pub fn permuted_hexagonator(order: usize, perm: [u8; 3]) -> Result<ModSeries> {
    hexagonator(order)?.apply_strand_map(&StrandMap::permutation(&perm)?)
}

/// `L = R₃₂₁`.
pub fn left_hexagonator(order: usize) -> Result<ModSeries> {
    permuted_hexagonator(order, [3, 2, 1])
}

/// The reduced Breen combination, a modification `0 ⇛ 0` on three strands.
pub fn breen_element(order: usize) -> Result<ModSeries> {
    let n = 2;
    let r = hexagonator(order)?;
    let perm = |p: [u8; 3]| -> Result<Series> { r.body().apply_strand_map(&StrandMap::permutation(&p)?) };
    let r213 = perm([2, 1, 3])?;
    let r321 = perm([3, 2, 1])?;
    let r231 = perm([2, 3, 1])?;
    let e12 = e_ipi(&t("12", n)?, order);
    let e23 = e_ipi(&t("23", n)?, order);
    let phi_23_12 = phi("23", "12", order)?;
    let phi_12_23 = phi("12", "23", order)?;

    let inner = prod(n, order, &[&r213, &phi("12", "13", order)?, &e12])
        .sub(&prod(n, order, &[&e23, &phi("13", "23", order)?, &r321]))
        .add(&prod(n, order, &[congruence_t23(order)?.body(), &phi_12_23]));
    let outer = prod(n, order, &[&r231, &phi("23", "13", order)?, &e23])
        .sub(&prod(n, order, &[&e12, &phi("13", "12", order)?, r.body()]));
    let body = congruence_t12(order)?
        .body()
        .add(&phi_23_12.mul(&inner))
        .add(&outer.mul(&phi_12_23));
    let zero = Series::zero(n, order);
    ModSeries::new(body, zero.clone(), zero)
}

/// Per-order reduction of the Breen element modulo the relation span.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BreenOrder {
    pub order: usize,
    /// Largest evaluated coefficient of `∂(body)`.
    pub boundary_residual: f64,
    /// Whether the reduced coefficient vanishes identically, before any numeric evaluation.
    pub exact_zero: bool,
    /// Largest evaluated coefficient of the reduced body.
    pub reduced_residual: f64,
}

/// Reduces each coefficient of the Breen element modulo the relations and evaluates it.
pub fn breen_residues(order: usize, mzv_tol: f64) -> Result<Vec<BreenOrder>> {
    let b = breen_element(order)?;
    let boundary = b.boundary();
    let mut out = Vec::new();
    for m in 0..=order {
        let reduced = reduce_modulo_relations(b.body().coeff(m), Quotient::FULL)?;
        out.push(BreenOrder {
            order: m,
            boundary_residual: boundary.coeff(m).eval(None, mzv_tol)?.max_magnitude(),
            exact_zero: reduced.is_zero(),
            reduced_residual: reduced.eval(None, mzv_tol)?.max_magnitude(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mods::verify_boundary;
    use std::f64::consts::PI;

    #[test]
    fn starts_at_second_order() {
        let r = hexagonator(2).unwrap();
        assert!(r.body().coeff(0).is_zero() && r.body().coeff(1).is_zero());
    }

    #[test]
    fn second_order_matches_the_right_hexagonator() {
        let r = hexagonator(2).unwrap();
        let got = r.body().coeff(2).eval(None, 1e-12).unwrap();
        let l = Element::l(2, 1, 2, 3);
        let rr = Element::r(2, 1, 2, 3);
        let expected = l.add(&rr.scale(&Coeff::from_int(2))).eval(None, 1e-12).unwrap().scale(&(-PI * PI / 6.0).into());
        assert!(got.sub(&expected).max_magnitude() < 1e-9, "{got}");
    }

    #[test]
    fn boundary_contract_holds_numerically() {
        let r = verify_boundary(&hexagonator(3).unwrap(), 1e-8, 1e-10).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn left_hexagonator_is_a_relabelling() {
        let l = left_hexagonator(3).unwrap();
        assert!(verify_boundary(&l, 1e-8, 1e-10).unwrap().pass);
    }

    #[test]
    fn breen_boundary_vanishes() {
        for o in breen_residues(3, 1e-10).unwrap() {
            assert!(o.boundary_residual < 1e-8, "{o:?}");
        }
    }
}
