//! Commuting an associator past an exponential, one letter at a time.

use serde::Serialize;

use crate::coeffs::{inv_factorial, zeta_coeff_full, Coeff};
use crate::dkalg::{relator, t, BKind, Element};
use crate::error::Result;
use crate::series::{boxes, drinfeld_phi, phi_tuples, PhiVariant, Powers, Series};

use super::{ex, lam, lneps, prod, ModSeries};

/// The commutation shapes that occur.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CommuteKind {
    /// `Φ(t₁₂,t₁₃)e^{iπΛ} ⇛ e^{iπΛ}Φ(t₁₂,t₁₃)` on three strands.
    Hex,
    /// `Φ₁₂₃ε^{-Λ₁₂₃} ⇛ ε^{-Λ₁₂₃}Φ₁₂₃`.
    Eps12a,
    /// `ε^{Λ₂₃₄}Φ₂₃₄ ⇛ Φ₂₃₄ε^{Λ₂₃₄}`.
    Eps12b,
    /// `ε^{2t₂₃}Φ_{1(23)4} ⇛ Φ_{1(23)4}ε^{2t₂₃}`.
    Eps12c,
    /// `ε^{-2t₁₂}Φ_{(12)34} ⇛ Φ_{(12)34}ε^{-2t₁₂}`.
    Eps15a,
    /// `Φ_{12(34)}ε^{2t₃₄} ⇛ ε^{2t₃₄}Φ_{12(34)}`.
    Eps15b,
}

impl CommuteKind {
    pub const ALL: [CommuteKind; 6] = [
        CommuteKind::Hex,
        CommuteKind::Eps12a,
        CommuteKind::Eps12b,
        CommuteKind::Eps12c,
        CommuteKind::Eps15a,
        CommuteKind::Eps15b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CommuteKind::Hex => "hex",
            CommuteKind::Eps12a => "eps12a",
            CommuteKind::Eps12b => "eps12b",
            CommuteKind::Eps12c => "eps12c",
            CommuteKind::Eps15a => "eps15a",
            CommuteKind::Eps15b => "eps15b",
        }
    }

    pub fn ambient(self) -> u8 {
        if self == CommuteKind::Hex {
            2
        } else {
            3
        }
    }
}

struct Shape {
    c: Coeff,
    x: Element,
    a: Element,
    b: Element,
    omega_a: Element,
    omega_b: Element,
    negate: bool,
    /// Whether the domain is `e^{cX}Φ(A,B)` rather than `Φ(A,B)e^{cX}`.
    exp_first: bool,
}

fn sum(v: &[u32]) -> u32 {
    v.iter().sum()
}

/// The nested sum over Φ's words: every letter of every word is exchanged with `X^m`,
/// inserting the witness of that letter.
fn nested_sum(sh: &Shape, order: usize) -> Result<Series> {
    let n_amb = sh.x.ambient();
    let xp = Powers::new(&sh.x, order);
    let ap = Powers::new(&sh.a, order);
    let bp = Powers::new(&sh.b, order);
    let mut coeffs = vec![Element::zero(n_amb); order + 1];
    // Insertions of a witness into A^j (resp. B^k).
    let ins = |pows: &Powers, omega: &Element, e: u32| -> Element {
        (1..=e).fold(Element::zero(n_amb), |acc, r| acc.add(&pows.get(r - 1).mul(omega).mul(pows.get(e - r))))
    };
    for (p, q) in phi_tuples(order.saturating_sub(1)) {
        let wt = (sum(&p) + sum(&q)) as usize;
        for j in boxes(&p) {
            for k in boxes(&q) {
                let z = zeta_coeff_full(&p, &q, &j, &k)?;
                let mut jj = vec![0];
                jj.extend_from_slice(&j);
                jj.push(sum(&p) - sum(&j));
                let mut kk = vec![sum(&q) - sum(&k)];
                kk.extend_from_slice(&k);
                kk.push(0);
                let segs: Vec<Element> = jj.iter().zip(&kk).map(|(&a, &b)| ap.get(a).mul(bp.get(b))).collect();
                // derivative of the word: Σ_l prefix·(insertions in segment l)·suffix
                let mut deriv = Element::zero(n_amb);
                for l in 0..segs.len() {
                    let prefix = segs[..l].iter().fold(Element::one(n_amb), |acc, s| acc.mul(s));
                    let suffix = segs[l + 1..].iter().fold(Element::one(n_amb), |acc, s| acc.mul(s));
                    let mid = ins(&ap, &sh.omega_a, jj[l])
                        .mul(bp.get(kk[l]))
                        .add(&ap.get(jj[l]).mul(&ins(&bp, &sh.omega_b, kk[l])));
                    deriv.add_assign(&prefix.mul(&mid).mul(&suffix));
                }
                if deriv.is_zero() {
                    continue;
                }
                for m in 1..=(order - wt) as u32 {
                    let c = sh.c.pow(m).mul(&z).scale(&inv_factorial(m));
                    let term = (1..=m).fold(Element::zero(n_amb), |acc, nn| {
                        acc.add(&xp.get(nn - 1).mul(&deriv).mul(xp.get(m - nn)))
                    });
                    let slot = &mut coeffs[wt + m as usize];
                    slot.add_assign(&term.scale(&c));
                }
            }
        }
    }
    if sh.negate {
        coeffs.iter_mut().for_each(|c| *c = c.neg());
    }
    Series::from_coeffs(n_amb, coeffs)
}

fn shape(kind: CommuteKind) -> Result<Shape> {
    let n = kind.ambient();
    let ipi = Coeff::ipi();
    let sh = match kind {
        CommuteKind::Hex => Shape {
            c: ipi,
            x: lam(n, 1, 2, 3),
            a: t("12", n)?,
            b: t("13", n)?,
            omega_a: Element::l(n, 1, 2, 3),
            omega_b: Element::l(n, 1, 2, 3).add(&Element::r(n, 1, 2, 3)).neg(),
            negate: false,
            exp_first: false,
        },
        CommuteKind::Eps12a => Shape {
            c: lneps(-1),
            x: lam(n, 1, 2, 3),
            a: t("12", n)?,
            b: t("23", n)?,
            omega_a: relator(BKind::L, "123", n)?,
            omega_b: relator(BKind::R, "123", n)?,
            negate: false,
            exp_first: false,
        },
        CommuteKind::Eps12b => Shape {
            c: lneps(1),
            x: lam(n, 2, 3, 4),
            a: t("23", n)?,
            b: t("34", n)?,
            omega_a: relator(BKind::L, "234", n)?,
            omega_b: relator(BKind::R, "234", n)?,
            negate: true,
            exp_first: true,
        },
        CommuteKind::Eps12c => Shape {
            c: lneps(2),
            x: t("23", n)?,
            a: t("1(23)", n)?,
            b: t("(23)4", n)?,
            omega_a: relator(BKind::R, "123", n)?,
            omega_b: relator(BKind::L, "234", n)?,
            negate: false,
            exp_first: true,
        },
        CommuteKind::Eps15a => Shape {
            c: lneps(-2),
            x: t("12", n)?,
            a: t("(12)3", n)?,
            b: t("34", n)?,
            omega_a: relator(BKind::L, "123", n)?,
            omega_b: Element::zero(n),
            negate: false,
            exp_first: true,
        },
        CommuteKind::Eps15b => Shape {
            c: lneps(2),
            x: t("34", n)?,
            a: t("12", n)?,
            b: t("2(34)", n)?,
            omega_a: Element::zero(n),
            omega_b: relator(BKind::R, "234", n)?,
            negate: true,
            exp_first: false,
        },
    };
    Ok(sh)
}

/// Builds the commutation modification of the given kind through `ħ^order`.
pub fn phi_commute(kind: CommuteKind, order: usize) -> Result<ModSeries> {
    let sh = shape(kind)?;
    let n = kind.ambient();
    let phi = drinfeld_phi(&sh.a, &sh.b, order, PhiVariant::CompactA)?;
    let e = ex(&sh.c, &sh.x, order);
    let (ephi, phie) = (prod(n, order, &[&e, &phi]), prod(n, order, &[&phi, &e]));
    let (dom, cod) = if sh.exp_first { (ephi, phie) } else { (phie, ephi) };
    ModSeries::new(nested_sum(&sh, order)?, dom, cod)
}
