//! Splittings of one exponential into two (and their inverses), witnessed by a relator.

use serde::Serialize;

use crate::coeffs::{binomial, inv_factorial, sign, Coeff, Rational};
use crate::dkalg::{relator, t, BKind, Element};
use crate::error::Result;
use crate::series::{Powers, Series};

use super::{ex, lam, lneps, prod, ModSeries};

/// The splitting shapes that occur.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BchKind {
    /// `e^{iπt_{(12)3}} ⇛ e^{iπΛ}e^{-iπt₁₂}` on three strands.
    Hex1,
    /// `e^{iπΛ}e^{iπt̄₁₃} ⇛ e^{iπt₁₃}` on three strands.
    Hex5,
    /// `ε^{Λ₂₃₄}ε^{-t₂₃} ⇛ ε^{t_{(23)4}}` on four strands.
    Eps8a,
    /// `ε^{t₂₃}ε^{-Λ₁₂₃} ⇛ ε^{-t_{1(23)}}` on four strands.
    Eps8b,
    /// `ε^{Λ₁₂₃} ⇛ ε^{t_{(12)3}}ε^{t₁₂}` on four strands.
    Eps20a,
    /// `ε^{-Λ₂₃₄} ⇛ ε^{-t₃₄}ε^{-t_{2(34)}}` on four strands.
    Eps20b,
}

impl BchKind {
    pub const ALL: [BchKind; 6] =
        [BchKind::Hex1, BchKind::Hex5, BchKind::Eps8a, BchKind::Eps8b, BchKind::Eps20a, BchKind::Eps20b];

    pub fn name(self) -> &'static str {
        match self {
            BchKind::Hex1 => "hex1",
            BchKind::Hex5 => "hex5",
            BchKind::Eps8a => "eps8a",
            BchKind::Eps8b => "eps8b",
            BchKind::Eps20a => "eps20a",
            BchKind::Eps20b => "eps20b",
        }
    }

    pub fn ambient(self) -> u8 {
        match self {
            BchKind::Hex1 | BchKind::Hex5 => 2,
            _ => 3,
        }
    }
}

/// Sign pattern of the inner sum, as a function of `(k, l, m)`.
type SignFn = fn(u32, u32, u32) -> i64;

struct Shape {
    c: Coeff,
    p: Element,
    q: Element,
    omega: Element,
    s: Element,
    sign: SignFn,
}

/// `Σ_{k≥2} c^k/k! Σ_{l,m,n} C(k−l,m)·sign·P^{l−1} Q^n ω Q^{k−l−m−n−1} S^m`.
fn nested_sum(sh: &Shape, order: usize) -> Series {
    let n_amb = sh.p.ambient();
    let pp = Powers::new(&sh.p, order);
    let qp = Powers::new(&sh.q, order);
    let sp = Powers::new(&sh.s, order);
    let mut coeffs = vec![Element::zero(n_amb); order + 1];
    for k in 2..=order as u32 {
        let mut inner = Element::zero(n_amb);
        for l in 1..k {
            for m in 0..k - l {
                let r = Rational::from_integer(binomial(k - l, m)) * sign((sh.sign)(k, l, m));
                for n in 0..k - l - m {
                    let w = pp.get(l - 1).mul(qp.get(n)).mul(&sh.omega).mul(qp.get(k - l - m - n - 1)).mul(sp.get(m));
                    inner.add_assign(&w.scale_rational(&r));
                }
            }
        }
        coeffs[k as usize] = inner.scale(&sh.c.pow(k).scale(&inv_factorial(k)));
    }
    Series::from_coeffs(n_amb, coeffs).expect("homogeneous by construction")
}

/// Builds the splitting modification of the given kind through `ħ^order`.
pub fn bch_split(kind: BchKind, order: usize) -> Result<ModSeries> {
    let n = kind.ambient();
    let ipi = Coeff::ipi();
    let e = |c: &Coeff, x: &Element| ex(c, x, order);
    let (shape, dom, cod) = match kind {
        BchKind::Hex1 => {
            let big = lam(n, 1, 2, 3);
            let t12 = t("12", n)?;
            let sh = Shape {
                c: ipi.clone(),
                p: t("(12)3", n)?,
                q: big.clone(),
                omega: Element::l(n, 1, 2, 3),
                s: t12.clone(),
                sign: |_, _, m| m as i64 + 1,
            };
            let dom = e(&ipi, &sh.p);
            let cod = prod(n, order, &[&e(&ipi, &big), &e(&ipi.neg(), &t12)]);
            (sh, dom, cod)
        }
        BchKind::Hex5 => {
            let big = lam(n, 1, 2, 3);
            let t13 = t("13", n)?;
            let tbar = t13.sub(&big);
            let sh = Shape {
                c: ipi.clone(),
                p: t13.clone(),
                q: big.clone(),
                omega: Element::l(n, 1, 2, 3).add(&Element::r(n, 1, 2, 3)),
                s: tbar.clone(),
                sign: |_, _, _| 0,
            };
            let dom = prod(n, order, &[&e(&ipi, &big), &e(&ipi, &tbar)]);
            let cod = e(&ipi, &t13);
            (sh, dom, cod)
        }
        BchKind::Eps8a => {
            let c = lneps(1);
            let big = lam(n, 2, 3, 4);
            let t23 = t("23", n)?;
            let sh = Shape {
                c: c.clone(),
                p: t("(23)4", n)?,
                q: big.clone(),
                omega: relator(BKind::L, "234", n)?,
                s: t23.clone(),
                sign: |_, _, m| m as i64,
            };
            let dom = prod(n, order, &[&e(&c, &big), &e(&c.neg(), &t23)]);
            let cod = e(&c, &sh.p);
            (sh, dom, cod)
        }
        BchKind::Eps8b => {
            let c = lneps(1);
            let big = lam(n, 1, 2, 3);
            let t23 = t("23", n)?;
            let sh = Shape {
                c: c.clone(),
                p: t("1(23)", n)?,
                q: t23.clone(),
                omega: relator(BKind::R, "123", n)?,
                s: big.clone(),
                sign: |_, l, m| (l + m) as i64,
            };
            let dom = prod(n, order, &[&e(&c, &t23), &e(&c.neg(), &big)]);
            let cod = e(&c.neg(), &sh.p);
            (sh, dom, cod)
        }
        BchKind::Eps20a => {
            let c = lneps(1);
            let big = lam(n, 1, 2, 3);
            let t12 = t("12", n)?;
            let sh = Shape {
                c: c.clone(),
                p: big.clone(),
                q: t("(12)3", n)?,
                omega: relator(BKind::L, "123", n)?,
                s: t12.clone(),
                sign: |_, _, _| 0,
            };
            let dom = e(&c, &big);
            let cod = prod(n, order, &[&e(&c, &sh.q), &e(&c, &t12)]);
            (sh, dom, cod)
        }
        BchKind::Eps20b => {
            let c = lneps(1);
            let big = lam(n, 2, 3, 4);
            let t34 = t("34", n)?;
            let sh = Shape {
                c: c.clone(),
                p: big.clone(),
                q: t34.clone(),
                omega: relator(BKind::R, "234", n)?,
                s: t("2(34)", n)?,
                sign: |k, _, _| k as i64 - 1,
            };
            let dom = e(&c.neg(), &big);
            let cod = prod(n, order, &[&e(&c.neg(), &t34), &e(&c.neg(), &sh.s)]);
            (sh, dom, cod)
        }
    };
    ModSeries::new(nested_sum(&shape, order), dom, cod)
}
