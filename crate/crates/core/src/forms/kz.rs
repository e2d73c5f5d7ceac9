//! The Knizhnik-Zamolodchikov 2-connection on four points, its pullback along the birational
//! chart, the curvature checks, and the restriction to the open triangle.

use std::sync::Arc;

use serde::Serialize;

use crate::coeffs::{rat, rat_int};
use crate::dkalg::{reduce_modulo_relations, t, Element, Quotient};
use crate::error::{Dk2Error, Result};

use super::algform::{AlgForm, Chart, FormCoeff};
use super::poly::Poly;
use super::ratfun::RatFun;

const N: u8 = 3;

/// `Σ cᵢ·varᵢ + c₀` as a polynomial.
fn lin(terms: &[(usize, i64)], c0: i64) -> Poly {
    terms
        .iter()
        .fold(Poly::constant(rat_int(c0)), |acc, &(i, c)| acc.add(&Poly::var(i).scale(&rat_int(c))))
}

fn inv(p: &Poly) -> RatFun {
    RatFun::inverse_of(p, &[]).expect("linear factors")
}

fn recip(factors: &[Poly]) -> RatFun {
    inv(&factors.iter().fold(Poly::one(), |acc, f| acc.mul(f)))
}

fn ta(i: u8, j: u8) -> Element {
    Element::a(N, i, j)
}

fn ll(i: u8, j: u8, k: u8) -> Element {
    Element::l(N, i, j, k)
}

fn rr(i: u8, j: u8, k: u8) -> Element {
    Element::r(N, i, j, k)
}

/// The configuration chart `(z₁, z₂, z₃, z₄)`.
pub fn chart_y4() -> Arc<Chart> {
    let mut atoms = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            atoms.push(lin(&[(i, 1), (j, -1)], 0));
        }
    }
    Chart::new("y4", &["z1", "z2", "z3", "z4"], atoms)
}

/// The chart `(z, u, v, w)` of the birational parametrization.
pub fn chart_zuvw() -> Arc<Chart> {
    let atoms = vec![
        Poly::var(0),
        Poly::var(1),
        Poly::var(2),
        Poly::var(3),
        lin(&[(0, 1), (1, -1)], 0),
        lin(&[(0, 1)], -1),
        lin(&[(1, 1)], -1),
    ];
    Chart::new("zuvw", &["z", "u", "v", "w"], atoms)
}

/// The open triangle `0 < x < y < 1`.
pub fn chart_triangle() -> Arc<Chart> {
    let atoms = vec![Poly::var(0), Poly::var(1), lin(&[(0, 1), (1, -1)], 0), lin(&[(0, 1)], -1), lin(&[(1, 1)], -1)];
    Chart::new("triangle", &["x", "y"], atoms)
}

/// `(𝒜_KZ, ℬ_CM)` on `(z₁..z₄)`.
pub fn kz_connection() -> Result<(AlgForm, AlgForm)> {
    let c = chart_y4();
    let z = |i: u8| (i - 1) as usize;
    let mut a = AlgForm::zero(&c, N, 1);
    for i in 1..=4u8 {
        for j in i + 1..=4 {
            let f = inv(&lin(&[(z(i), 1), (z(j), -1)], 0));
            let x = super::algform::lift(&ta(i, j), &f);
            a.add_term(&[z(i)], &x)?;
            a.add_term(&[z(j)], &x.neg())?;
        }
    }
    let mut b = AlgForm::zero(&c, N, 2);
    for (i, j, k) in [(1u8, 2u8, 3u8), (1, 2, 4), (1, 3, 4), (2, 3, 4)] {
        let pre = inv(&lin(&[(z(k), 1), (z(i), -1)], 0)).scale(&rat_int(2));
        let fr = pre.mul_rf(&inv(&lin(&[(z(j), 1), (z(k), -1)], 0)));
        let fl = pre.mul_rf(&inv(&lin(&[(z(i), 1), (z(j), -1)], 0)));
        let x = super::algform::lift(&rr(i, j, k), &fr).sub(&super::algform::lift(&ll(i, j, k), &fl));
        for (p, q) in [(i, j), (j, k), (k, i)] {
            b.add_term(&[z(p), z(q)], &x)?;
        }
    }
    Ok((a, b))
}

/// Images of `z₁..z₄` under `φ(z,u,v,w) = (w, zv+w, uv+w, v+w)`.
pub fn phi_images() -> Vec<RatFun> {
    let (z, u, v, w) = (RatFun::var(0), RatFun::var(1), RatFun::var(2), RatFun::var(3));
    vec![w.clone(), z.mul_rf(&v).add_rf(&w), u.mul_rf(&v).add_rf(&w), v.add_rf(&w)]
}

/// Images of `z, u, v, w` under `φ⁻¹`, as functions of `z₁..z₄`.
pub fn phi_inverse_images() -> Vec<RatFun> {
    let d = inv(&lin(&[(3, 1), (0, -1)], 0));
    vec![
        RatFun::from_poly(lin(&[(1, 1), (0, -1)], 0)).mul_rf(&d),
        RatFun::from_poly(lin(&[(2, 1), (0, -1)], 0)).mul_rf(&d),
        RatFun::from_poly(lin(&[(3, 1), (0, -1)], 0)),
        RatFun::var(0),
    ]
}

pub fn pullback_phi(f: &AlgForm) -> Result<AlgForm> {
    f.pullback(&chart_zuvw(), &phi_images())
}

/// Restriction to `w = 0, v = 1, z = x, u = y`.
pub fn restrict_triangle(a: &AlgForm, b: &AlgForm) -> Result<(AlgForm, AlgForm)> {
    let tri = chart_triangle();
    let images = vec![RatFun::var(0), RatFun::var(1), RatFun::constant(rat_int(1)), RatFun::constant(rat_int(0))];
    Ok((a.pullback(&tri, &images)?, b.pullback(&tri, &images)?))
}

fn term(c: &Arc<Chart>, vars: &[&str], f: &RatFun, x: &Element) -> AlgForm {
    AlgForm::term(c, vars, f, x).expect("valid chart term")
}

fn sum(forms: Vec<AlgForm>) -> AlgForm {
    let mut it = forms.into_iter();
    let first = it.next().expect("nonempty");
    it.fold(first, |acc, f| acc.add(&f).expect("same chart"))
}

/// The pulled-back connection in closed form, written out by hand for comparison.
pub fn reference_pullback() -> (AlgForm, AlgForm) {
    let c = chart_zuvw();
    let (z, u, v) = (Poly::var(0), Poly::var(1), Poly::var(2));
    let z_u = z.sub(&u);
    let u_z = u.sub(&z);
    let z_1 = lin(&[(0, 1)], -1);
    let one_z = z_1.neg();
    let u_1 = lin(&[(1, 1)], -1);
    let all = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)].iter().fold(Element::zero(N), |acc, &(i, j)| acc.add(&ta(i, j)));
    let a = sum(vec![
        term(&c, &["z"], &inv(&z), &ta(1, 2)),
        term(&c, &["z"], &inv(&z_u), &ta(2, 3)),
        term(&c, &["z"], &inv(&z_1), &ta(2, 4)),
        term(&c, &["u"], &inv(&u), &ta(1, 3)),
        term(&c, &["u"], &inv(&u_z), &ta(2, 3)),
        term(&c, &["u"], &inv(&u_1), &ta(3, 4)),
        term(&c, &["v"], &inv(&v), &all),
    ]);
    let two = RatFun::constant(rat_int(2));
    let two_v = inv(&v).scale(&rat_int(2));
    let b = sum(vec![
        term(&c, &["z", "u"], &two.mul_rf(&recip(&[z.clone(), u.clone()])), &ll(1, 2, 3)),
        term(&c, &["z", "u"], &two.mul_rf(&recip(&[u.clone(), z_u.clone()])), &rr(1, 2, 3)),
        term(&c, &["z", "u"], &two.mul_rf(&recip(&[one_z.clone(), u_z.clone()])), &ll(2, 3, 4)),
        term(&c, &["z", "u"], &two.mul_rf(&recip(&[one_z.clone(), u_1.clone()])), &rr(2, 3, 4)),
        term(&c, &["v", "z"], &two_v.mul_rf(&inv(&u_z)), &rr(1, 2, 3).add(&ll(2, 3, 4))),
        term(&c, &["v", "z"], &two_v.mul_rf(&inv(&z)), &ll(1, 2, 3).add(&ll(1, 2, 4)).neg()),
        term(&c, &["v", "z"], &two_v.mul_rf(&inv(&one_z)), &rr(1, 2, 4).sub(&ll(2, 3, 4)).sub(&rr(2, 3, 4))),
        term(&c, &["u", "v"], &two_v.mul_rf(&inv(&u)), &ll(1, 3, 4).sub(&ll(1, 2, 3)).sub(&rr(1, 2, 3))),
        term(&c, &["u", "v"], &two_v.mul_rf(&inv(&u_z)), &ll(2, 3, 4).add(&rr(1, 2, 3))),
        term(&c, &["u", "v"], &two_v.mul_rf(&inv(&u_1)), &rr(1, 3, 4).add(&rr(2, 3, 4))),
    ]);
    (a, b)
}

/// The restriction to the triangle in closed form.
pub fn reference_restriction() -> (AlgForm, AlgForm) {
    let c = chart_triangle();
    let (x, y) = (Poly::var(0), Poly::var(1));
    let x_y = x.sub(&y);
    let y_x = y.sub(&x);
    let one_x = lin(&[(0, -1)], 1);
    let y_1 = lin(&[(1, 1)], -1);
    let a = sum(vec![
        term(&c, &["x"], &inv(&x), &ta(1, 2)),
        term(&c, &["x"], &inv(&x_y), &ta(2, 3)),
        term(&c, &["x"], &inv(&lin(&[(0, 1)], -1)), &ta(2, 4)),
        term(&c, &["y"], &inv(&y), &ta(1, 3)),
        term(&c, &["y"], &inv(&y_x), &ta(2, 3)),
        term(&c, &["y"], &inv(&y_1), &ta(3, 4)),
    ]);
    let two = RatFun::constant(rat_int(2));
    let b = sum(vec![
        term(&c, &["x", "y"], &two.mul_rf(&recip(&[x.clone(), y.clone()])), &ll(1, 2, 3)),
        term(&c, &["x", "y"], &two.mul_rf(&recip(&[y.clone(), x_y])), &rr(1, 2, 3)),
        term(&c, &["x", "y"], &two.mul_rf(&recip(&[one_x.clone(), y_x])), &ll(2, 3, 4)),
        term(&c, &["x", "y"], &two.mul_rf(&recip(&[one_x, y_1])), &rr(2, 3, 4)),
    ]);
    (a, b)
}

/// Outcome of the fake-flatness test `F = ±∂B` with `F = dA + A∧^{[·,·]}A`.
///
/// The bracket-wedge of a 1-form with itself is `2·A∧A`; the literal `dA + A∧A` equals `½∂B`
/// for this normalization of `B`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FakeFlatReport {
    pub chart: String,
    /// Whether `F − ∂B` vanishes identically.
    pub minus_zero: bool,
    /// Whether `F + ∂B` vanishes identically.
    pub plus_zero: bool,
    /// `"F = dB"` or `"F = -dB"` when one residual vanishes.
    pub convention: Option<String>,
    pub pass: bool,
    /// First component of the smaller residual when neither vanishes.
    pub offending: Option<String>,
}

pub fn fake_flatness(a: &AlgForm, b: &AlgForm) -> Result<FakeFlatReport> {
    let f = a.d().add(&a.bracket_wedge(a)?)?;
    let db = b.boundary();
    let minus = f.sub(&db)?;
    let plus = f.add(&db)?;
    let convention = if minus.is_zero() {
        Some("F = dB".to_string())
    } else if plus.is_zero() {
        Some("F = -dB".to_string())
    } else {
        None
    };
    let offending = convention.is_none().then(|| {
        let r = if minus.terms().len() <= plus.terms().len() { &minus } else { &plus };
        r.dump().lines().take(3).collect::<Vec<_>>().join(" ")
    });
    Ok(FakeFlatReport {
        chart: a.chart().name.clone(),
        minus_zero: minus.is_zero(),
        plus_zero: plus.is_zero(),
        pass: convention.is_some(),
        convention,
        offending,
    })
}

fn bracket(x: &Element, y: &Element) -> Element {
    x.bracket(y)
}

fn tn(s: &str) -> Element {
    t(s, N).expect("valid notation")
}

/// The eight closed-form blocks of `M`, each `1/(denominator) · (sum of brackets)`.
pub fn reference_m() -> FormCoeff {
    let (z, u) = (Poly::var(0), Poly::var(1));
    let u_1 = lin(&[(1, 1)], -1);
    let u_z = u.sub(&z);
    let one_z = lin(&[(0, -1)], 1);
    let blocks: Vec<(Vec<Poly>, Element)> = vec![
        (
            vec![z.clone(), u.clone()],
            bracket(&ta(1, 2), &ll(1, 3, 4).sub(&rr(1, 2, 3)))
                .sub(&bracket(&ta(1, 3), &ll(1, 2, 4)))
                .add(&bracket(&tn("(13)4").add(&tn("2(34)")), &ll(1, 2, 3))),
        ),
        (
            vec![z.clone(), u_1.clone()],
            bracket(&ta(1, 2), &rr(1, 3, 4).add(&rr(2, 3, 4))).sub(&bracket(&ta(3, 4), &ll(1, 2, 3).add(&ll(1, 2, 4)))),
        ),
        (
            vec![z.clone(), u_z.clone()],
            bracket(&ta(1, 2), &ll(2, 3, 4).add(&rr(1, 2, 3))).sub(&bracket(&ta(2, 3), &ll(1, 2, 3).add(&ll(1, 2, 4)))),
        ),
        (
            vec![u.clone(), u_z.clone()],
            bracket(&ta(2, 3), &ll(1, 2, 3).sub(&ll(1, 3, 4)))
                .add(&bracket(&ta(1, 3), &ll(2, 3, 4)))
                .sub(&bracket(&tn("1(24)").add(&tn("(23)4")), &rr(1, 2, 3))),
        ),
        (
            vec![u_z.clone(), u_1.clone()],
            bracket(&ta(3, 4), &rr(1, 2, 3).add(&ll(2, 3, 4))).sub(&bracket(&ta(2, 3), &rr(1, 3, 4).add(&rr(2, 3, 4)))),
        ),
        (
            vec![u.clone(), one_z.clone()],
            bracket(&ta(2, 4), &ll(1, 2, 3).add(&rr(1, 2, 3)).sub(&ll(1, 3, 4)))
                .add(&bracket(&ta(1, 3), &rr(1, 2, 4).sub(&ll(2, 3, 4)).sub(&rr(2, 3, 4)))),
        ),
        (
            vec![u_z.clone(), one_z.clone()],
            bracket(&ta(2, 3), &rr(1, 2, 4).sub(&rr(2, 3, 4)))
                .sub(&bracket(&ta(2, 4), &rr(1, 2, 3)))
                .add(&bracket(&tn("1(23)").add(&tn("(13)4")), &ll(2, 3, 4))),
        ),
        (
            vec![u_1, one_z],
            bracket(&ta(3, 4), &rr(1, 2, 4).sub(&ll(2, 3, 4)))
                .sub(&bracket(&ta(2, 4), &rr(1, 3, 4)))
                .add(&bracket(&tn("(12)3").add(&tn("1(24)")), &rr(2, 3, 4))),
        ),
    ];
    blocks
        .iter()
        .fold(FormCoeff::zero(N), |acc, (den, x)| acc.add(&super::algform::lift(x, &recip(den))))
}

/// Outcome of the 2-flatness analysis on the `(z,u,v,w)` chart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoFlatReport {
    /// `A ∧^{[·,·]} B` has no component other than `dz∧du∧dv`.
    pub single_component: bool,
    /// The constant `c` with `M = c·(reference blocks)`, when one exists.
    pub normalization: Option<String>,
    /// `M` equals the reference blocks with `c = 1`.
    pub matches_reference_exactly: bool,
    /// `M` is a single rational multiple of the reference blocks, term by term.
    pub matches_reference_up_to_normalization: bool,
    /// `M` vanishes modulo the six relations and the Peiffer quotient.
    pub reduces_to_zero: bool,
    /// Number of monomials of `M` that survive without any quotient (negative control).
    pub free_residue_terms: usize,
    /// Whether `dB` vanishes identically.
    pub db_zero: bool,
    pub pass: bool,
}

/// Extracts `M` from `A ∧^{[·,·]} B = (2³/v) M dz∧du∧dv`.
pub fn extract_m(a: &AlgForm, b: &AlgForm) -> Result<(FormCoeff, bool)> {
    let c = a.chart().clone();
    let idx = [c.var_index("z")?, c.var_index("u")?, c.var_index("v")?];
    let ab = a.bracket_wedge(b)?;
    let single = ab.terms().keys().all(|k| k.as_slice() == idx);
    let v_over_8 = RatFun::var(idx[2]).scale(&rat(1, 8));
    let m = ab.component(&idx).map_coeffs(|f| f.mul_rf(&v_over_8));
    Ok((m, single))
}

pub fn two_flatness(a: &AlgForm, b: &AlgForm) -> Result<(FormCoeff, TwoFlatReport)> {
    if a.chart().name != "zuvw" {
        return Err(Dk2Error::ChartMismatch(format!("two-flatness needs the zuvw chart, got {}", a.chart().name)));
    }
    let (m, single) = extract_m(a, b)?;
    let reference = reference_m();
    let scale = proportionality(&m, &reference);
    let reduces_to_zero = reduce_modulo_relations(&m, Quotient::FULL)?.is_zero();
    let free_residue_terms = reduce_modulo_relations(&m, Quotient::FREE)?.num_terms();
    let db_zero = b.d().is_zero();
    let matches_up_to = scale.is_some();
    let matches_exactly = scale.as_ref().map(|c| c == &rat_int(1)).unwrap_or(false);
    let pass = single && matches_up_to && reduces_to_zero && free_residue_terms > 0;
    Ok((
        m,
        TwoFlatReport {
            single_component: single,
            normalization: scale.map(|c| crate::coeffs::rational_to_text(&c)),
            matches_reference_exactly: matches_exactly,
            matches_reference_up_to_normalization: matches_up_to,
            reduces_to_zero,
            free_residue_terms,
            db_zero,
            pass,
        },
    ))
}

/// The constant `κ` with `∂B = κ·(dA + A∧A)` on every component, if there is one.
///
/// `dA + A∧A` is the curvature seen by the ordinary path-ordered transport, so `κ` is the factor
/// by which the 2-holonomy of `B` overshoots the transport difference around a disc.
pub fn curvature_normalization(a: &AlgForm, b: &AlgForm) -> Result<Option<crate::coeffs::Rational>> {
    let f = a.d().add(&a.wedge(a)?)?;
    let db = b.boundary();
    let keys: std::collections::BTreeSet<Vec<usize>> = f.terms().keys().chain(db.terms().keys()).cloned().collect();
    let mut kappa = None;
    for k in keys {
        let c = match proportionality(&db.component(&k), &f.component(&k)) {
            Some(c) => c,
            None => return Ok(None),
        };
        if *kappa.get_or_insert_with(|| c.clone()) != c {
            return Ok(None);
        }
    }
    Ok(kappa)
}

/// The rational `c` with `x = c·y` exactly, if there is one.
fn proportionality(x: &FormCoeff, y: &FormCoeff) -> Option<crate::coeffs::Rational> {
    let (f, g) = match y.deg0().iter().next() {
        Some((w, f)) => (f, x.deg0().get(w)?),
        None => {
            let (m, f) = y.degm1().iter().next()?;
            (f, x.degm1().get(m)?)
        }
    };
    let lead = |r: &RatFun| r.numerator().leading().map(|(_, c)| c.clone());
    // Both are canonical with the same denominator when proportional.
    let c = lead(g)? / lead(f)?;
    (x == &y.map_coeffs(|h| h.scale(&c))).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::Scalar;

    #[test]
    fn kz_one_form_has_the_reference_first_term() {
        let (a, b) = kz_connection().unwrap();
        let dz1 = a.component(&[0]);
        let f = &dz1.deg0()[ta(1, 2).deg0().keys().next().unwrap()];
        assert_eq!(f, &inv(&lin(&[(0, 1), (1, -1)], 0)));
        assert_eq!(b.degree(), 2);
    }

    #[test]
    fn kz_one_form_is_symmetric_under_relabelling() {
        // Swapping z1 ↔ z2 together with strands 1 ↔ 2 fixes A.
        let (a, _) = kz_connection().unwrap();
        let swap = vec![RatFun::var(1), RatFun::var(0), RatFun::var(2), RatFun::var(3)];
        let moved = a.pullback(&chart_y4(), &swap).unwrap();
        let perm = crate::dkalg::StrandMap::permutation(&[2, 1, 3, 4]).unwrap();
        let relabelled = moved.map(|x| perm.apply(x).unwrap());
        assert_eq!(relabelled, a);
    }

    #[test]
    fn pullback_matches_the_reference_forms() {
        let (a, b) = kz_connection().unwrap();
        let (pa, pb) = reference_pullback();
        assert_eq!(pullback_phi(&a).unwrap(), pa);
        assert_eq!(pullback_phi(&b).unwrap(), pb);
    }

    #[test]
    fn restriction_matches_the_reference_forms() {
        let (pa, pb) = reference_pullback();
        let (ra, rb) = restrict_triangle(&pa, &pb).unwrap();
        let (ea, eb) = reference_restriction();
        assert_eq!(ra, ea);
        assert_eq!(rb, eb);
    }

    #[test]
    fn fake_flat_with_one_sign_on_every_chart() {
        let (a, b) = kz_connection().unwrap();
        let r0 = fake_flatness(&a, &b).unwrap();
        assert!(r0.pass, "{r0:?}");
        let (pa, pb) = (pullback_phi(&a).unwrap(), pullback_phi(&b).unwrap());
        let r1 = fake_flatness(&pa, &pb).unwrap();
        let (ra, rb) = restrict_triangle(&pa, &pb).unwrap();
        let r2 = fake_flatness(&ra, &rb).unwrap();
        assert_eq!(r0.convention, r1.convention);
        assert_eq!(r0.convention, r2.convention);
    }

    #[test]
    fn two_flatness_verdict() {
        let (pa, pb) = reference_pullback();
        let (_, r) = two_flatness(&pa, &pb).unwrap();
        assert!(r.pass, "{r:?}");
        // Literal division by 2³/v leaves a quarter of the reference blocks.
        assert_eq!(r.normalization.as_deref(), Some("1/4"));
        assert!(r.db_zero);
    }

    #[test]
    fn transport_curvature_is_half_of_db() {
        let (a, b) = reference_restriction();
        assert_eq!(curvature_normalization(&a, &b).unwrap(), Some(rat_int(2)));
        let (pa, pb) = reference_pullback();
        assert_eq!(curvature_normalization(&pa, &pb).unwrap(), Some(rat_int(2)));
    }

    #[test]
    fn chart_map_inverts() {
        let inv_img = phi_inverse_images();
        let cands = chart_y4().atoms.clone();
        for (i, f) in phi_images().iter().enumerate() {
            assert_eq!(f.substitute(&inv_img, &cands).unwrap(), RatFun::var(i));
        }
        let _ = RatFun::one();
    }
}
