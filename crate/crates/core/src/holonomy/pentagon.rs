//! Globularity of the pentagon 2-holonomy and its order-2 comparison with the ε-dressed
//! associator products.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::{rational_to_f64, Coeff};
use crate::dkalg::{t, Elem};
use crate::error::{Dk2Error, Result};
use crate::forms::{curvature_normalization, reference_restriction};
use crate::mods::formal_m0;
use crate::series::{series_exp, NumSeries, Series};
use crate::verdict::Verdict;

use super::paths::{check_eps, BrwPath, SurfaceKind, SurfaceSpec};
use super::quad::QuadConfig;
use super::transport::{path_transport, surface_holonomy, Holonomy, TDegreeSeries, N};

/// Threshold on the extrapolated degree-2 residual.
pub const PENTAGON_THRESHOLD: f64 = 1e-3;

/// `κ` with `∂B = κ·(dA + A∧A)` on `U′`, computed exactly from the restricted 2-connection.
///
/// The 2-holonomy of `B` therefore satisfies `∂W^P = κ·(W_top − W_bottom)`; dividing by `κ`
/// gives the 2-holonomy whose boundary is the transport difference.
pub fn two_holonomy_normalization() -> Result<f64> {
    let (a, b) = reference_restriction();
    let k = curvature_normalization(&a, &b)?
        .ok_or_else(|| Dk2Error::Structural("dB is not a constant multiple of dA + A∧A".into()))?;
    Ok(rational_to_f64(&k))
}

/// Every transport and surface holonomy of the pentagon at one `ε`.
#[derive(Debug, Clone)]
pub struct PentagonPieces {
    pub eps: f64,
    pub transports: BTreeMap<&'static str, Holonomy>,
    pub p_one: Holonomy,
    pub p_two: Holonomy,
}

impl PentagonPieces {
    pub fn compute(eps: f64, cfg: &QuadConfig) -> Result<Self> {
        check_eps(eps)?;
        let mut transports = BTreeMap::new();
        for c in BrwPath::ALL {
            transports.insert(c.name(), path_transport(&c.spec(eps)?, cfg)?);
        }
        let p_one = surface_holonomy(&SurfaceSpec::new(SurfaceKind::PI, eps)?, cfg)?;
        let p_two = surface_holonomy(&SurfaceSpec::new(SurfaceKind::PII, eps)?, cfg)?;
        Ok(PentagonPieces { eps, transports, p_one, p_two })
    }

    fn w(&self, c: BrwPath) -> &Holonomy {
        &self.transports[c.name()]
    }

    /// `W^{c_III} W^{c_II} W^{c_I}`.
    pub fn top(&self) -> Holonomy {
        self.w(BrwPath::III).mul(self.w(BrwPath::II)).mul(self.w(BrwPath::I))
    }

    /// `W^{c_V} W^{c_IV}`.
    pub fn bottom(&self) -> Holonomy {
        self.w(BrwPath::V).mul(self.w(BrwPath::IV))
    }

    /// `W^P = W^{c_III}·W^{P_I} + W^{P_II}`, truncated at t-degree 2.
    pub fn w_p(&self) -> Holonomy {
        self.w(BrwPath::III).mul(&self.p_one).add(&self.p_two)
    }
}

/// The two sides of the ε-dressed pentagon: `ε^{t₃₄}·dom(M₀)·ε^{−t₁₂}` and `ε^{t₃₄}·cod(M₀)·ε^{−t₁₂}`,
/// as exact series in `λ = ln ε` through t-degree 2.
pub fn dressed_sides() -> Result<(Series, Series)> {
    let m0 = formal_m0(2)?;
    let l = Coeff::lneps();
    let left = series_exp(&t("34", N)?, &l, 2)?;
    let right = series_exp(&t("12", N)?, &l.neg(), 2)?;
    Ok((left.mul(m0.dom()).mul(&right), left.mul(m0.cod()).mul(&right)))
}

fn real_part(s: &NumSeries, tol: f64) -> Result<TDegreeSeries> {
    let mut coeffs = Vec::new();
    for e in s.coeffs() {
        if e.max_magnitude() > 0.0 {
            let imag = e.map_coeffs(|c| c.im).max_magnitude();
            if imag > tol {
                return Err(Dk2Error::Structural(format!("dressed side has imaginary part {imag:e}")));
            }
        }
        coeffs.push(e.map_coeffs(|c| c.re));
    }
    Series::from_coeffs(s.ambient(), coeffs)
}

fn per_degree(s: &TDegreeSeries) -> [f64; 3] {
    [s.coeff(0).max_magnitude(), s.coeff(1).max_magnitude(), s.coeff(2).max_magnitude()]
}

/// `∂(W^P/κ)` as a t-degree-2 series with zero degrees 0 and 1.
fn boundary_series(wp: &Holonomy, kappa: f64) -> Result<TDegreeSeries> {
    let d2 = wp.series.coeff(2).boundary().scale(&(1.0 / kappa));
    Series::from_coeffs(N, vec![Elem::zero(N), Elem::zero(N), d2])
}

/// One row of the globularity table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlobularityRow {
    pub eps: f64,
    /// `|∂W^P/κ − (W_top − W_bottom)|` per t-degree.
    pub transport_residual: [f64; 3],
    /// The same at degree 2 without the factor `1/κ`.
    pub literal_residual: f64,
    /// `|∂W^P/κ − (source − target)|` per t-degree, against the ε-dressed associator products.
    pub dressed_residual: [f64; 3],
    pub quad_error: f64,
}

/// Globularity `W^P : W_top ⇛ W_bottom` over a list of `ε`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlobularityReport {
    pub kappa: f64,
    pub rows: Vec<GlobularityRow>,
    /// Every transport residual is within the tolerance scaled by the quadrature error estimate.
    pub transport_pass: bool,
    /// The degree-2 dressed residual strictly decreases along the list.
    pub decreasing: bool,
    pub pass: bool,
}

fn globularity_row(p: &PentagonPieces, kappa: f64, sides: &(Series, Series), mzv_tol: f64) -> Result<GlobularityRow> {
    let wp = p.w_p();
    let d = boundary_series(&wp, kappa)?;
    let diff = p.top().sub(&p.bottom());
    let transport_residual = per_degree(&d.sub(&diff.series));
    let literal_residual = wp.series.coeff(2).boundary().sub(diff.series.coeff(2)).max_magnitude();
    let s = real_part(&sides.0.eval(Some(p.eps), mzv_tol)?, 1e-12)?;
    let tt = real_part(&sides.1.eval(Some(p.eps), mzv_tol)?, 1e-12)?;
    let dressed_residual = per_degree(&d.sub(&s.sub(&tt)));
    Ok(GlobularityRow { eps: p.eps, transport_residual, literal_residual, dressed_residual, quad_error: wp.error + diff.error })
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn check_list(eps: &[f64]) -> Result<()> {
    if eps.is_empty() {
        return Err(Dk2Error::OutsideDomain("empty eps list".into()));
    }
    if !strictly_decreasing(eps) {
        return Err(Dk2Error::OutsideDomain(format!("eps list {eps:?} must be strictly decreasing")));
    }
    eps.iter().try_for_each(|&e| check_eps(e))
}

fn globularity_with_pieces(eps: &[f64], cfg: &QuadConfig, mzv_tol: f64) -> Result<(GlobularityReport, Vec<PentagonPieces>)> {
    check_list(eps)?;
    let kappa = two_holonomy_normalization()?;
    let sides = dressed_sides()?;
    let pieces: Vec<PentagonPieces> = eps.par_iter().map(|&e| PentagonPieces::compute(e, cfg)).collect::<Result<_>>()?;
    let rows = pieces.iter().map(|p| globularity_row(p, kappa, &sides, mzv_tol)).collect::<Result<Vec<_>>>()?;
    let transport_pass = rows.iter().all(|r| {
        let bound = 100.0 * r.quad_error + cfg.tol;
        r.transport_residual[0] == 0.0 && r.transport_residual.iter().all(|&x| x <= bound)
    });
    let decreasing = strictly_decreasing(&rows.iter().map(|r| r.dressed_residual[2]).collect::<Vec<_>>());
    let report = GlobularityReport { kappa, rows, transport_pass, decreasing, pass: transport_pass && decreasing };
    Ok((report, pieces))
}

/// Compares `∂(W^P)` with the transport difference at each `ε`, and with the ε-dressed pentagon.
///
/// The transport residual is a quadrature-level identity (2-Stokes). The dressed residual
/// measures how far the transports are from their `ε → 0` asymptotics, and must shrink with `ε`.
pub fn globularity_check(eps: &[f64], cfg: &QuadConfig, mzv_tol: f64) -> Result<GlobularityReport> {
    Ok(globularity_with_pieces(eps, cfg, mzv_tol)?.0)
}

/// Basis functions for extrapolation in `ε`: `1, ε, ε·ln ε, ε², ε²·ln ε, …`.
fn basis(k: usize, e: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let p = k.div_ceil(2);
    let logp = if k.is_multiple_of(2) { e.ln() } else { 1.0 };
    e.powi(p as i32) * logp
}

/// Value at `ε = 0` of the interpolant through `(ε_i, v_i)` in the first `n` basis functions.
///
/// Corrections to the `ε → 0` limit come in powers of `ε` dressed with powers of `ln ε`, so the
/// interpolation space pairs each power with its logarithmic companion.
pub fn richardson(points: &[(f64, f64)]) -> Result<f64> {
    let n = points.len();
    let m = DMatrix::from_fn(n, n, |i, k| basis(k, points[i].0));
    let v = DVector::from_iterator(n, points.iter().map(|p| p.1));
    let sol = m.lu().solve(&v).ok_or_else(|| Dk2Error::Structural("singular extrapolation system".into()))?;
    Ok(sol[0])
}

/// Coefficient-wise [`richardson`] of degree-2 elements sampled at each `ε`.
fn extrapolate(eps: &[f64], xs: &[Elem<f64>]) -> Result<Elem<f64>> {
    let words: BTreeSet<_> = xs.iter().flat_map(|x| x.deg0().keys().cloned()).collect();
    let mons: BTreeSet<_> = xs.iter().flat_map(|x| x.degm1().keys().cloned()).collect();
    let mut out = Elem::zero(N);
    for w in words {
        let pts: Vec<_> = eps.iter().zip(xs).map(|(&e, x)| (e, x.deg0().get(&w).copied().unwrap_or(0.0))).collect();
        out.add_term_word(w, richardson(&pts)?);
    }
    for m in mons {
        let pts: Vec<_> = eps.iter().zip(xs).map(|(&e, x)| (e, x.degm1().get(&m).copied().unwrap_or(0.0))).collect();
        out.add_term_bmon(m, richardson(&pts)?);
    }
    Ok(out)
}

/// Least-squares-free fit `M₀(ε) ≈ Σ_k c_k λ^k` through the samples, one power per sample.
fn log_fit(eps: &[f64], xs: &[Elem<f64>]) -> Result<Vec<Elem<f64>>> {
    let n = eps.len();
    let m = DMatrix::from_fn(n, n, |i, k| eps[i].ln().powi(k as i32));
    let lu = m.lu();
    let mons: BTreeSet<_> = xs.iter().flat_map(|x| x.degm1().keys().cloned()).collect();
    let mut out = vec![Elem::zero(N); n];
    for mon in mons {
        let v = DVector::from_iterator(n, xs.iter().map(|x| x.degm1().get(&mon).copied().unwrap_or(0.0)));
        let c = lu.solve(&v).ok_or_else(|| Dk2Error::Structural("singular log fit".into()))?;
        for k in 0..n {
            out[k].add_term_bmon(mon.clone(), c[k]);
        }
    }
    Ok(out)
}

/// One `ε` of the pentagon comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PentagonRow {
    pub eps: f64,
    pub ln_eps: f64,
    /// `|∂(W^P/κ) − (source − target)|` per t-degree.
    pub residual: [f64; 3],
    /// `|∂(W^P/κ) − (W_top − W_bottom)|` at degree 2.
    pub globularity_residual: f64,
    pub quad_error: f64,
}

/// The order-2 pentagon comparison and the numeric `M₀` it implies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PentagonReport {
    pub kappa: f64,
    pub rows: Vec<PentagonRow>,
    pub decreasing: bool,
    /// Interpolation space used for the `ε → 0` extrapolation.
    pub extrapolation_basis: Vec<String>,
    /// Largest coefficient of the extrapolated degree-2 residual.
    pub extrapolated_residual: f64,
    pub threshold: f64,
    /// `pass` when decreasing and under the threshold, `finding` when decreasing but above it,
    /// `fail` when the residual does not shrink.
    pub verdict: Verdict,
    /// `M₀ = ε^{−t₃₄}·(W^P/κ)·ε^{t₁₂}` at degree 2 for each `ε`, as text.
    pub m0: Vec<String>,
    /// `M₀(ε) ≈ Σ_k c_k·(ln ε)^k` through the samples, `c_k` as text.
    pub m0_log_fit: Vec<String>,
}

impl PentagonReport {
    /// Per-`ε` residuals as CSV.
    pub fn csv(&self) -> String {
        let mut out = String::from("eps,ln_eps,residual_deg0,residual_deg1,residual_deg2,globularity_residual,quad_error\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{:e},{:e},{:e},{:e},{:e}",
                r.eps, r.ln_eps, r.residual[0], r.residual[1], r.residual[2], r.globularity_residual, r.quad_error
            );
        }
        out
    }
}

/// Compares the 2-holonomy of the pentagon with the ε-dressed associator products at t-degree 2.
///
/// At degree 2 the dressing `ε^{∓t}` around `W^P` acts trivially, so `M₀` is the degree-2 part
/// of `W^P/κ`. Its boundary is compared with `source − target`; the residual is extrapolated to
/// `ε = 0` with [`richardson`] over the supplied grid.
pub fn pentagon_order2(eps: &[f64], cfg: &QuadConfig, mzv_tol: f64) -> Result<PentagonReport> {
    let (g, pieces) = globularity_with_pieces(eps, cfg, mzv_tol)?;
    let kappa = g.kappa;
    let sides = dressed_sides()?;
    let mut residuals = Vec::new();
    let mut m0 = Vec::new();
    for p in &pieces {
        let wp = p.w_p();
        let d = boundary_series(&wp, kappa)?;
        let s = real_part(&sides.0.eval(Some(p.eps), mzv_tol)?, 1e-12)?;
        let tt = real_part(&sides.1.eval(Some(p.eps), mzv_tol)?, 1e-12)?;
        residuals.push(d.sub(&s.sub(&tt)).coeff(2).clone());
        m0.push(wp.series.coeff(2).scale(&(1.0 / kappa)));
    }
    let rows: Vec<PentagonRow> = g
        .rows
        .iter()
        .map(|r| PentagonRow {
            eps: r.eps,
            ln_eps: r.eps.ln(),
            residual: r.dressed_residual,
            globularity_residual: r.transport_residual[2],
            quad_error: r.quad_error,
        })
        .collect();
    let extrapolated_residual = extrapolate(eps, &residuals)?.max_magnitude();
    let decreasing = g.decreasing;
    let verdict = match (decreasing, extrapolated_residual <= PENTAGON_THRESHOLD) {
        (true, true) => Verdict::Pass,
        (true, false) => Verdict::Finding,
        (false, _) => Verdict::Fail,
    };
    let names = ["1", "eps", "eps*ln(eps)", "eps^2", "eps^2*ln(eps)", "eps^3", "eps^3*ln(eps)"];
    let extrapolation_basis = (0..eps.len()).map(|k| names.get(k).map_or(format!("b{k}"), |s| s.to_string())).collect();
    Ok(PentagonReport {
        kappa,
        rows,
        decreasing,
        extrapolation_basis,
        extrapolated_residual,
        threshold: PENTAGON_THRESHOLD,
        verdict,
        m0: m0.iter().map(|x| x.to_string()).collect(),
        m0_log_fit: log_fit(eps, &m0)?.iter().map(|x| x.to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::super::transport::polygon_integral;
    use super::*;

    fn cfg() -> QuadConfig {
        QuadConfig::with_tol(1e-10)
    }

    #[test]
    fn kappa_is_two() {
        assert_eq!(two_holonomy_normalization().unwrap(), 2.0);
    }

    #[test]
    fn richardson_removes_log_corrections() {
        let f = |e: f64| 0.25 + 3.0 * e - 2.0 * e * e.ln();
        let pts: Vec<_> = [0.1, 0.05, 0.025].iter().map(|&e| (e, f(e))).collect();
        assert!((richardson(&pts).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn functoriality_matches_direct_integral() {
        let e = 0.1;
        let p = PentagonPieces::compute(e, &cfg()).unwrap();
        let e2 = e * e;
        let pentagon = [[e2, e], [e - e2, e], [1.0 - e, 1.0 - e + e2], [1.0 - e, 1.0 - e2], [e2, 1.0 - e2]];
        let direct = polygon_integral(&pentagon, &QuadConfig::with_tol(1e-12)).unwrap();
        // Both 2-paths sweep clockwise in (x, y).
        let diff = p.w_p().series.add(&direct.series).max_magnitude();
        assert!(diff < 1e-7, "{diff:e}");
    }

    #[test]
    fn globularity_holds_and_dressed_residual_shrinks() {
        let g = globularity_check(&[0.1, 0.05, 0.025], &cfg(), 1e-12).unwrap();
        assert!(g.transport_pass, "{g:?}");
        assert!(g.decreasing, "{g:?}");
        for r in &g.rows {
            assert_eq!(r.transport_residual[0], 0.0);
            assert!(r.transport_residual[1] < 1e-9 && r.transport_residual[2] < 1e-8);
            assert!(r.dressed_residual[0] == 0.0 && r.dressed_residual[1] < 1e-9);
            // Without 1/κ the boundary overshoots by the full transport difference.
            assert!(r.literal_residual > 1.0);
        }
    }

    #[test]
    fn residual_extrapolates_to_zero_on_a_fine_grid() {
        let r = pentagon_order2(&[0.0125, 0.00625, 0.003125], &cfg(), 1e-12).unwrap();
        assert!(r.extrapolated_residual < PENTAGON_THRESHOLD, "{}", r.extrapolated_residual);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.m0.len(), 3);
        assert_eq!(r.m0_log_fit.len(), 3);
    }

    #[test]
    fn inadmissible_eps_is_rejected() {
        assert!(matches!(pentagon_order2(&[0.7], &cfg(), 1e-12), Err(Dk2Error::OutsideDomain(_))));
        assert!(pentagon_order2(&[0.05, 0.1], &cfg(), 1e-12).is_err());
    }

    #[test]
    fn csv_has_one_line_per_eps() {
        let r = pentagon_order2(&[0.1, 0.05], &cfg(), 1e-12).unwrap();
        assert_eq!(r.csv().lines().count(), 3);
        assert_eq!(r.extrapolation_basis, vec!["1", "eps"]);
    }
}
