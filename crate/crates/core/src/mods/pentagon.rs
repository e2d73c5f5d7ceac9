//! The pentagonator on four strands, assembled from a supplied 2-holonomy `M₀`.

use crate::dkalg::{t, Element};
use crate::error::{Dk2Error, Result};
use crate::series::{drinfeld_phi, PhiVariant, Series};

use super::{bch_split, ex, lam, lneps, phi_commute, prod, BchKind, CommuteKind, ExchangeKind, ModSeries};

const N: u8 = 3;

/// Shorthand for the degree-0 factors of the pentagon on four strands at a fixed order.
struct Factors {
    order: usize,
}

impl Factors {
    /// `ε^{k·x}` for a strand notation such as `"(12)3"`, or `"L123"`/`"L234"` for `Λ`.
    fn e(&self, k: i64, x: &str) -> Result<Series> {
        let el = match x {
            "L123" => lam(N, 1, 2, 3),
            "L234" => lam(N, 2, 3, 4),
            _ => t(x, N)?,
        };
        Ok(ex(&lneps(k), &el, self.order))
    }

    fn phi(&self, x: &str, y: &str) -> Result<Series> {
        drinfeld_phi(&t(x, N)?, &t(y, N)?, self.order, PhiVariant::CompactA)
    }

    fn p(&self, fs: &[&Series]) -> Series {
        prod(N, self.order, fs)
    }
}

/// The exchanges, splittings and commutations entering the pentagonator.
pub fn pentagonator_ingredients(order: usize) -> Result<Vec<(String, ModSeries)>> {
    let mut out = Vec::new();
    for k in ExchangeKind::ALL {
        out.push((format!("exchange_{}", k.name()), k.build(order)?));
    }
    for k in [BchKind::Eps8a, BchKind::Eps8b, BchKind::Eps20a, BchKind::Eps20b] {
        out.push((format!("bch_{}", k.name()), bch_split(k, order)?));
    }
    for k in &CommuteKind::ALL[1..] {
        out.push((format!("commute_{}", k.name()), phi_commute(*k, order)?));
    }
    Ok(out)
}

/// The placeholder `M₀` known only through its boundary: the ε-decorated pentagon difference,
/// with the outer `ε^{t₃₄}` and `ε^{-t₁₂}` stripped.
pub fn formal_m0(order: usize) -> Result<ModSeries> {
    let f = Factors { order };
    let dom = f.p(&[
        &f.phi("23", "34")?,
        &f.e(-1, "23")?,
        &f.e(1, "(23)4")?,
        &f.phi("1(23)", "(23)4")?,
        &f.e(-1, "1(23)")?,
        &f.e(1, "23")?,
        &f.phi("12", "23")?,
    ]);
    let cod = f.p(&[
        &f.e(-1, "34")?,
        &f.e(1, "2(34)")?,
        &f.phi("12", "2(34)")?,
        &f.e(-2, "12")?,
        &f.e(2, "34")?,
        &f.phi("(12)3", "34")?,
        &f.e(-1, "(12)3")?,
        &f.e(1, "12")?,
    ]);
    ModSeries::formal(dom, cod)
}

/// `Π: Φ₂₃₄Φ_{1(23)4}Φ₁₂₃ ⇛ Φ_{12(34)}Φ_{(12)34}` through `ħ^order`.
///
/// Every step is a vertical composite whose domain is checked exactly against the previous
/// codomain, so a transcription slip surfaces as a structural error naming the order.
pub fn pentagonator(order: usize, m0: &ModSeries) -> Result<ModSeries> {
    if order > m0.order() {
        return Err(Dk2Error::UnsupportedOrder { order, max: m0.order() });
    }
    if m0.ambient() != N {
        return Err(Dk2Error::AmbientMismatch(N, m0.ambient()));
    }
    let m0 = m0.truncate(order);
    let f = Factors { order };
    let one = Series::one(N, order);
    let phi123 = f.phi("12", "23")?;
    let phi234 = f.phi("23", "34")?;
    let phi1_23_4 = f.phi("1(23)", "(23)4")?;
    let phi12_34 = f.phi("12", "2(34)")?;
    let phi_12_34 = f.phi("(12)3", "34")?;

    let x6a = ExchangeKind::R123.build(order)?;
    let x6b = ExchangeKind::L234.build(order)?;
    let x11a = ExchangeKind::L123.build(order)?;
    let x11b = ExchangeKind::R234.build(order)?;

    // M₁: the two congruences feeding into M₀.
    let n1 = x6a.whisker(&f.p(&[&phi234, &f.e(-1, "23")?, &f.e(1, "(23)4")?, &phi1_23_4]), &phi123);
    let n2 = x6b.whisker(&phi234, &f.p(&[&phi1_23_4, &f.e(1, "23")?, &f.e(-1, "1(23)")?, &phi123]));
    let m1 = n2.then(&n1)?.then(&m0)?;

    // M₂: the two splittings.
    let na = bch_split(BchKind::Eps8a, order)?
        .whisker(&phi234, &f.p(&[&f.e(-1, "23")?, &phi1_23_4, &f.e(1, "23")?, &f.e(-1, "1(23)")?, &phi123]));
    let nb = bch_split(BchKind::Eps8b, order)?
        .whisker(&f.p(&[&phi234, &f.e(1, "L234")?, &f.e(-2, "23")?, &phi1_23_4, &f.e(1, "23")?]), &phi123);
    let m2 = nb.then(&na)?.then(&m1)?;

    // M₃: the three commutations.
    let nc = phi_commute(CommuteKind::Eps12c, order)?.whisker(
        &f.p(&[&phi234, &f.e(1, "L234")?, &f.e(-2, "23")?]),
        &f.p(&[&f.e(-1, "L123")?, &phi123]),
    );
    let nb2 = phi_commute(CommuteKind::Eps12b, order)?.whisker(&one, &f.p(&[&phi1_23_4, &f.e(-1, "L123")?, &phi123]));
    let na2 = phi_commute(CommuteKind::Eps12a, order)?.whisker(&f.p(&[&f.e(1, "L234")?, &phi234, &phi1_23_4]), &one);
    let m3 = na2.then(&nb2)?.then(&nc)?.then(&m2)?;

    // M₄: strip the outer Λ-exponentials.
    let m4 = m3.whisker(&f.e(-1, "L234")?, &f.e(1, "L123")?);

    // M₅: commute the cabled associators past the doubled exponentials.
    let left = f.p(&[&f.e(-1, "L234")?, &f.e(-1, "34")?, &f.e(1, "2(34)")?]);
    let right = f.p(&[&f.e(-1, "(12)3")?, &f.e(1, "12")?, &f.e(1, "L123")?]);
    let k1 = phi_commute(CommuteKind::Eps15a, order)?
        .whisker(&f.p(&[&left, &phi12_34, &f.e(2, "34")?]), &right);
    let k2 = phi_commute(CommuteKind::Eps15b, order)?.whisker(&left, &f.p(&[&phi_12_34, &f.e(-2, "12")?, &right]));
    let m5 = m4.then(&k1)?.then(&k2)?;

    // M₆: the two remaining congruences.
    let k3 = x11b.whisker(
        &f.e(-1, "L234")?,
        &f.p(&[&f.e(2, "34")?, &phi12_34, &phi_12_34, &f.e(-2, "12")?, &right]),
    );
    let k4 = x11a.whisker(
        &f.p(&[&f.e(-1, "L234")?, &f.e(1, "2(34)")?, &f.e(1, "34")?, &phi12_34, &phi_12_34, &f.e(-1, "12")?]),
        &f.p(&[&f.e(1, "12")?, &f.e(1, "L123")?]),
    );
    let m6 = m5.then(&k3)?.then(&k4)?;

    // Π: merge the outer exponentials back into Λ.
    let k5 = bch_split(BchKind::Eps20b, order)?.whisker(
        &one,
        &f.p(&[
            &f.e(1, "2(34)")?,
            &f.e(1, "34")?,
            &phi12_34,
            &phi_12_34,
            &f.e(-1, "12")?,
            &f.e(-1, "(12)3")?,
            &f.e(1, "L123")?,
        ]),
    );
    let k6 = bch_split(BchKind::Eps20a, order)?
        .whisker(&f.p(&[&phi12_34, &phi_12_34, &f.e(-1, "12")?, &f.e(-1, "(12)3")?]), &one);
    m6.then(&k5)?.then(&k6)
}

/// `λ`-degree of the body of a series: the largest power of `ln ε` in any coefficient.
pub fn lneps_degree(s: &Series) -> u32 {
    s.coeffs()
        .iter()
        .flat_map(|e: &Element| e.deg0().values().chain(e.degm1().values()).map(|c| c.max_lneps_pow()).collect::<Vec<_>>())
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mods::verify_boundary;

    #[test]
    fn assembles_with_formal_m0() {
        let pi = pentagonator(2, &formal_m0(2).unwrap()).unwrap();
        let f = Factors { order: 2 };
        let dom = f.p(&[&f.phi("23", "34").unwrap(), &f.phi("1(23)", "(23)4").unwrap(), &f.phi("12", "23").unwrap()]);
        let cod = f.p(&[&f.phi("12", "2(34)").unwrap(), &f.phi("(12)3", "34").unwrap()]);
        assert_eq!(pi.dom(), &dom);
        assert_eq!(pi.cod(), &cod);
        let r = verify_boundary(&pi, 1e-8, 1e-10).unwrap();
        assert!(r.pass && r.exact, "{r:?}");
    }

    #[test]
    fn lneps_cancels_in_the_boundary() {
        let pi = pentagonator(2, &formal_m0(2).unwrap()).unwrap();
        let b = pi.boundary();
        assert_eq!(lneps_degree(&b), 0);
    }

    #[test]
    fn first_order_body_is_zero() {
        let pi = pentagonator(1, &formal_m0(1).unwrap()).unwrap();
        assert!(pi.body().is_zero());
    }

    #[test]
    fn order_beyond_m0_is_rejected() {
        assert!(matches!(pentagonator(3, &formal_m0(2).unwrap()), Err(Dk2Error::UnsupportedOrder { .. })));
    }

    #[test]
    fn ingredients_satisfy_their_contracts() {
        for (name, m) in pentagonator_ingredients(3).unwrap() {
            let r = verify_boundary(&m, 1e-8, 1e-10).unwrap();
            assert!(r.pass, "{name}: {r:?}");
        }
    }
}
