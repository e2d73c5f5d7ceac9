//! Congruence series exchanging two exponentials whose commutator has a relator witness.

use serde::Serialize;

use crate::coeffs::{inv_factorial, Coeff};
use crate::dkalg::{relator, t, BKind, Element};
use crate::error::{Dk2Error, Result};
use crate::series::{Powers, Series};

use super::{ex, lneps, prod, ModSeries};

/// `e^{c_u u} e^{c_v v} ⇛ e^{c_v v} e^{c_u u}` for degree-0 `u`, `v` with `∂ω = uv − vu`:
///
/// `Σ_{j,k≥1} c_u^j c_v^k/(j!k!) Σ_{l≤j, m≤k} v^{m-1} u^{l-1} ω u^{j-l} v^{k-m}`.
pub fn witnessed_exchange(
    c_u: &Coeff,
    u: &Element,
    c_v: &Coeff,
    v: &Element,
    omega: &Element,
    order: usize,
) -> Result<ModSeries> {
    if omega.boundary() != u.bracket(v) || !omega.is_degm1() {
        return Err(Dk2Error::WitnessMismatch);
    }
    let n = u.ambient();
    let up = Powers::new(u, order);
    let vp = Powers::new(v, order);
    let mut body = Element::zero(n);
    for j in 1..order as u32 {
        for k in 1..=(order as u32).saturating_sub(j) {
            let c = c_u.pow(j).mul(&c_v.pow(k)).scale(&(inv_factorial(j) * inv_factorial(k)));
            let mut inner = Element::zero(n);
            for l in 1..=j {
                for m in 1..=k {
                    let w = vp.get(m - 1).mul(up.get(l - 1)).mul(omega).mul(up.get(j - l)).mul(vp.get(k - m));
                    inner.add_assign(&w);
                }
            }
            body.add_assign(&inner.scale(&c));
        }
    }
    let eu = ex(c_u, u, order);
    let ev = ex(c_v, v, order);
    ModSeries::new(Series::from_elem(&body, order), prod(n, order, &[&eu, &ev]), prod(n, order, &[&ev, &eu]))
}

/// `(e^{iπt})_{e^{iπt₁₂}}: e^{iπt₁₂} e^{iπt_{(12)3}} ⇛ e^{iπt_{(12)3}} e^{iπt₁₂}`, witnessed by `ℒ`.
pub fn congruence_t12(order: usize) -> Result<ModSeries> {
    let ipi = Coeff::ipi();
    witnessed_exchange(&ipi, &t("12", 2)?, &ipi, &t("(12)3", 2)?, &Element::l(2, 1, 2, 3), order)
}

/// `(e^{iπt})_{e^{iπt₂₃}}: e^{iπt₂₃} e^{iπt_{1(23)}} ⇛ e^{iπt_{1(23)}} e^{iπt₂₃}`, witnessed by `ℛ`.
pub fn congruence_t23(order: usize) -> Result<ModSeries> {
    let ipi = Coeff::ipi();
    witnessed_exchange(&ipi, &t("23", 2)?, &ipi, &t("1(23)", 2)?, &Element::r(2, 1, 2, 3), order)
}

/// The four ε-decorated congruences used by the pentagonator (ambient 3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExchangeKind {
    /// `ε^{t₂₃}ε^{-t_{1(23)}} ⇛ ε^{-t_{1(23)}}ε^{t₂₃}`, witnessed by `ℛ₁₂₃`.
    R123,
    /// `ε^{t_{(23)4}}ε^{-t₂₃} ⇛ ε^{-t₂₃}ε^{t_{(23)4}}`, witnessed by `ℒ₂₃₄`.
    L234,
    /// `ε^{-t₁₂}ε^{-t_{(12)3}} ⇛ ε^{-t_{(12)3}}ε^{-t₁₂}`, witnessed by `ℒ₁₂₃`.
    L123,
    /// `ε^{-t₃₄}ε^{t_{2(34)}} ⇛ ε^{t_{2(34)}}ε^{-t₃₄}`, witnessed by `ℛ₂₃₄`.
    R234,
}

impl ExchangeKind {
    pub const ALL: [ExchangeKind; 4] = [ExchangeKind::R123, ExchangeKind::L234, ExchangeKind::L123, ExchangeKind::R234];

    pub fn name(self) -> &'static str {
        match self {
            ExchangeKind::R123 => "r123",
            ExchangeKind::L234 => "l234",
            ExchangeKind::L123 => "l123",
            ExchangeKind::R234 => "r234",
        }
    }

    pub fn build(self, order: usize) -> Result<ModSeries> {
        let n = 3;
        match self {
            ExchangeKind::R123 => {
                witnessed_exchange(&lneps(1), &t("23", n)?, &lneps(-1), &t("1(23)", n)?, &relator(BKind::R, "123", n)?, order)
            }
            ExchangeKind::L234 => Ok(witnessed_exchange(
                &lneps(-1),
                &t("23", n)?,
                &lneps(1),
                &t("(23)4", n)?,
                &relator(BKind::L, "234", n)?,
                order,
            )?
            .reversed()),
            ExchangeKind::L123 => witnessed_exchange(
                &lneps(-1),
                &t("12", n)?,
                &lneps(-1),
                &t("(12)3", n)?,
                &relator(BKind::L, "123", n)?,
                order,
            ),
            ExchangeKind::R234 => {
                witnessed_exchange(&lneps(-1), &t("34", n)?, &lneps(1), &t("2(34)", n)?, &relator(BKind::R, "234", n)?, order)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dkalg::StrandMap;

    #[test]
    fn lowest_term_of_the_t12_congruence() {
        let m = congruence_t12(4).unwrap();
        let expected = Element::l(2, 1, 2, 3).scale(&Coeff::ipi().pow(2));
        assert_eq!(m.body().coeff(2), &expected);
        assert!(m.body().coeff(0).is_zero() && m.body().coeff(1).is_zero());
    }

    #[test]
    fn boundary_contract_is_exact() {
        for m in [congruence_t12(4).unwrap(), congruence_t23(4).unwrap()] {
            assert_eq!(m.boundary(), m.dom().sub(m.cod()));
        }
        for kind in ExchangeKind::ALL {
            let m = kind.build(4).unwrap();
            assert_eq!(m.boundary(), m.dom().sub(m.cod()), "{kind:?}");
        }
    }

    #[test]
    fn pentagon_exchanges_have_the_reference_shapes() {
        let n = 3;
        let e = |c: i64, x: &str| super::ex(&lneps(c), &t(x, n).unwrap(), 3);
        let m = ExchangeKind::L234.build(3).unwrap();
        assert_eq!(m.dom(), &e(1, "(23)4").mul(&e(-1, "23")));
        assert_eq!(m.cod(), &e(-1, "23").mul(&e(1, "(23)4")));
        // Leading coefficient (-1)^{j+1} λ^{j+k}/(j!k!) at j = k = 1.
        assert_eq!(m.body().coeff(2), &relator(BKind::L, "234", n).unwrap().scale(&lneps(1).pow(2)));
    }

    #[test]
    fn commuting_letters_give_zero() {
        let m = witnessed_exchange(
            &Coeff::ipi(),
            &Element::a(3, 1, 2),
            &Coeff::ipi(),
            &Element::a(3, 3, 4),
            &Element::zero(3),
            4,
        )
        .unwrap();
        assert!(m.body().is_zero());
    }

    #[test]
    fn witness_is_checked() {
        let r = witnessed_exchange(&Coeff::ipi(), &t("12", 2).unwrap(), &Coeff::ipi(), &t("(12)3", 2).unwrap(), &Element::r(2, 1, 2, 3), 3);
        assert!(matches!(r, Err(Dk2Error::WitnessMismatch)));
    }

    #[test]
    fn construction_is_equivariant_under_relabelling() {
        let perm = StrandMap::permutation(&[3, 1, 2]).unwrap();
        let u = t("12", 2).unwrap();
        let v = t("(12)3", 2).unwrap();
        let w = Element::l(2, 1, 2, 3);
        let ipi = Coeff::ipi();
        let built = witnessed_exchange(&ipi, &u, &ipi, &v, &w, 4).unwrap().apply_strand_map(&perm).unwrap();
        let direct = witnessed_exchange(
            &ipi,
            &perm.apply(&u).unwrap(),
            &ipi,
            &perm.apply(&v).unwrap(),
            &perm.apply(&w).unwrap(),
            4,
        )
        .unwrap();
        assert_eq!(built, direct);
    }
}
