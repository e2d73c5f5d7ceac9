//! Parallel transport and surface holonomy of the restricted 2-connection at t-degree ≤ 2.

use serde::Serialize;

use crate::dkalg::Elem;
use crate::error::Result;
use crate::series::Series;

use super::paths::{PathSpec, Point, SurfaceSpec};
use super::quad::{integrate, QuadConfig};

/// Ambient of the pentagon: four strands.
pub const N: u8 = 3;

/// A numeric series truncated at t-degree 2, where `ℓ`, `r` count as degree 2.
pub type TDegreeSeries = Series<f64>;

/// An affine function `c₀ + c₁x + c₂y` on the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Affine([f64; 3]);

impl Affine {
    fn at(&self, p: Point) -> f64 {
        self.0[0] + self.0[1] * p[0] + self.0[2] * p[1]
    }

    fn along(&self, v: Point) -> f64 {
        self.0[1] * v[0] + self.0[2] * v[1]
    }
}

/// `A|U′ = Σ t_ij · d log g_ij` with `g = x, y, x-y, x-1, y-1`.
const LOG_TERMS: [((u8, u8), Affine); 5] = [
    ((1, 2), Affine([0.0, 1.0, 0.0])),
    ((1, 3), Affine([0.0, 0.0, 1.0])),
    ((2, 3), Affine([0.0, 1.0, -1.0])),
    ((2, 4), Affine([-1.0, 1.0, 0.0])),
    ((3, 4), Affine([-1.0, 0.0, 1.0])),
];

/// Generators of `B|U′ = 2(ℓ₁₂₃/(xy) + r₁₂₃/(y(x-y)) + ℓ₂₃₄/((1-x)(y-x)) + r₂₃₄/((1-x)(y-1))) dx∧dy`.
const B_GENS: [(char, [u8; 3]); 4] = [('l', [1, 2, 3]), ('r', [1, 2, 3]), ('l', [2, 3, 4]), ('r', [2, 3, 4])];

/// The four `dx∧dy` coefficients of `B|U′` at `p`, in the order of `B_GENS`.
pub fn b_coefficients(p: Point) -> [f64; 4] {
    let (x, y) = (p[0], p[1]);
    [2.0 / (x * y), 2.0 / (y * (x - y)), 2.0 / ((1.0 - x) * (y - x)), 2.0 / ((1.0 - x) * (y - 1.0))]
}

/// The `dx` and `dy` coefficients of `A|U′` at `p` as `((i, j), [a_x, a_y])`.
pub fn a_coefficients(p: Point) -> Vec<((u8, u8), [f64; 2])> {
    LOG_TERMS.iter().map(|(ij, g)| (*ij, [g.0[1] / g.at(p), g.0[2] / g.at(p)])).collect()
}

fn t(i: u8, j: u8) -> Elem<f64> {
    Elem::a(N, i, j)
}

fn b_elem(idx: usize) -> Elem<f64> {
    let (kind, [i, j, k]) = B_GENS[idx];
    if kind == 'l' {
        Elem::l(N, i, j, k)
    } else {
        Elem::r(N, i, j, k)
    }
}

/// A numeric t-degree-2 series with the quadrature error estimate behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct Holonomy {
    pub series: TDegreeSeries,
    pub error: f64,
}

impl Holonomy {
    pub fn one() -> Self {
        Holonomy { series: Series::one(N, 2), error: 0.0 }
    }

    /// Product `self · other` (`other` acts first), errors added to first order.
    pub fn mul(&self, other: &Holonomy) -> Holonomy {
        let scale = 1.0 + self.series.max_magnitude() + other.series.max_magnitude();
        Holonomy { series: self.series.mul(&other.series), error: (self.error + other.error) * scale }
    }

    pub fn add(&self, other: &Holonomy) -> Holonomy {
        Holonomy { series: self.series.add(&other.series), error: self.error + other.error }
    }

    pub fn sub(&self, other: &Holonomy) -> Holonomy {
        Holonomy { series: self.series.sub(&other.series), error: self.error + other.error }
    }

    /// Coefficient of `t_ij` at t-degree 1.
    pub fn t_coefficient(&self, i: u8, j: u8) -> f64 {
        let e = t(i, j);
        let w = e.deg0().keys().next().expect("generator word");
        self.series.coeff(1).deg0().get(w).copied().unwrap_or(0.0)
    }
}

/// Transport along one affine segment: `1 + ∫A + ∫∫_{r₁<r₂} A(r₂)A(r₁)`.
///
/// Along an affine segment each `d log g` pulls back to `g′/g dr` with primitive `ln(g(r)/g(0))`,
/// so the inner integral of the ordered double integral is exact and only the outer one is
/// done by quadrature. The degree-1 terms are integrated numerically as well, which keeps the
/// closed-form endpoint logarithms available as an independent oracle.
fn segment_transport(start: Point, end: Point, cfg: &QuadConfig) -> Result<Holonomy> {
    let v = [end[0] - start[0], end[1] - start[1]];
    if v == [0.0, 0.0] {
        return Ok(Holonomy::one());
    }
    let g0: Vec<f64> = LOG_TERMS.iter().map(|(_, g)| g.at(start)).collect();
    let dg: Vec<f64> = LOG_TERMS.iter().map(|(_, g)| g.along(v)).collect();
    let f = |r: f64| -> Result<[f64; 30]> {
        let mut out = [0.0; 30];
        let mut fr = [0.0; 5];
        let mut prim = [0.0; 5];
        for k in 0..5 {
            fr[k] = dg[k] / (g0[k] + dg[k] * r);
            prim[k] = (dg[k] * r / g0[k]).ln_1p();
        }
        out[..5].copy_from_slice(&fr);
        for j in 0..5 {
            for k in 0..5 {
                out[5 + 5 * j + k] = fr[j] * prim[k];
            }
        }
        Ok(out)
    };
    let q = integrate(&f, &[0.0, 1.0], cfg, false)?;
    let mut d1 = Elem::zero(N);
    let mut d2 = Elem::zero(N);
    for j in 0..5 {
        let ((a, b), _) = LOG_TERMS[j];
        d1 = d1.add(&t(a, b).scale(&q.value[j]));
        for k in 0..5 {
            let ((c, d), _) = LOG_TERMS[k];
            d2 = d2.add(&t(a, b).mul(&t(c, d)).scale(&q.value[5 + 5 * j + k]));
        }
    }
    let series = Series::from_coeffs(N, vec![Elem::one(N), d1, d2])?;
    Ok(Holonomy { series, error: q.error })
}

/// Parallel transport `W` along `p` at t-degree ≤ 2; later pieces multiply on the left.
pub fn path_transport(p: &PathSpec, cfg: &QuadConfig) -> Result<Holonomy> {
    p.check_admissible()?;
    let mut w = Holonomy::one();
    for s in &p.pieces {
        w = segment_transport(s.start, s.end, cfg)?.mul(&w);
    }
    Ok(w)
}

/// Degree-2 surface holonomy `∫∫ B[∂P/∂s, ∂P/∂r] dr ds`.
///
/// At t-degree 2 the transports sandwiching `B` contribute only their constant term, so the
/// result is the plain double integral over the middle pieces. The inner `r`-integral is
/// adaptive for each outer node; the outer nodes are evaluated concurrently.
pub fn surface_holonomy(p: &SurfaceSpec, cfg: &QuadConfig) -> Result<Holonomy> {
    let inner_cfg = cfg.refined(10.0);
    let inner = |s: f64| -> Result<[f64; 5]> {
        let (lo, hi) = p.middle(s);
        let f = |r: f64| -> Result<[f64; 4]> {
            let q = p.at(s, r);
            let b = b_coefficients(q.p);
            Ok(b.map(|c| c * q.jacobian))
        };
        let q = integrate(&f, &[lo, hi], &inner_cfg, false)?;
        let v = q.value;
        Ok([v[0], v[1], v[2], v[3], q.error])
    };
    let q = integrate(&inner, &[0.0, 1.0], cfg, true)?;
    Ok(degree_two(&q.value[..4], q.error + q.value[4].abs()))
}

fn degree_two(v: &[f64], error: f64) -> Holonomy {
    let mut d2 = Elem::zero(N);
    for (idx, c) in v.iter().enumerate() {
        d2 = d2.add(&b_elem(idx).scale(c));
    }
    let series = Series::from_coeffs(N, vec![Elem::zero(N), Elem::zero(N), d2]).expect("weight 2");
    Holonomy { series, error }
}

/// Oriented integral of `B|U′` over a convex polygon given counter-clockwise, as a degree-2 series.
///
/// This does not go through any 2-path parametrization: each fan triangle `(p₀, pᵢ, pᵢ₊₁)` is
/// mapped from the unit square by `p₀ + u(pᵢ − p₀) + uv(pᵢ₊₁ − pᵢ)`.
pub fn polygon_integral(vertices: &[Point], cfg: &QuadConfig) -> Result<Holonomy> {
    let p0 = vertices[0];
    let mut total = [0.0; 4];
    let mut error = 0.0;
    for w in vertices[1..].windows(2) {
        let (a, b) = (w[0], w[1]);
        let e1 = [a[0] - p0[0], a[1] - p0[1]];
        let e2 = [b[0] - a[0], b[1] - a[1]];
        let det = e1[0] * e2[1] - e1[1] * e2[0];
        let inner_cfg = cfg.refined(10.0);
        let inner = |u: f64| -> Result<[f64; 5]> {
            let f = |v: f64| -> Result<[f64; 4]> {
                let p = [p0[0] + u * e1[0] + u * v * e2[0], p0[1] + u * e1[1] + u * v * e2[1]];
                Ok(b_coefficients(p).map(|c| c * u * det))
            };
            let q = integrate(&f, &[0.0, 1.0], &inner_cfg, false)?;
            let v = q.value;
            Ok([v[0], v[1], v[2], v[3], q.error])
        };
        let q = integrate(&inner, &[0.0, 1.0], cfg, true)?;
        for c in 0..4 {
            total[c] += q.value[c];
        }
        error += q.error + q.value[4].abs();
    }
    Ok(degree_two(&total, error))
}

/// Per-generator coefficients of a degree-2 surface holonomy, keyed by generator name.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceCoefficients {
    pub l123: f64,
    pub r123: f64,
    pub l234: f64,
    pub r234: f64,
}

pub fn surface_coefficients(h: &Holonomy) -> SurfaceCoefficients {
    let d2 = h.series.coeff(2);
    let get = |idx: usize| {
        let g = b_elem(idx);
        let m = g.degm1().keys().next().expect("generator");
        d2.degm1().get(m).copied().unwrap_or(0.0)
    };
    SurfaceCoefficients { l123: get(0), r123: get(1), l234: get(2), r234: get(3) }
}

#[cfg(test)]
mod tests {
    use super::super::paths::{BrwPath, SurfaceKind};
    use super::*;
    use crate::forms::{chart_triangle, reference_restriction};

    fn cfg() -> QuadConfig {
        QuadConfig::with_tol(1e-11)
    }

    #[test]
    fn connection_matches_exact_restriction() {
        let (a, b) = reference_restriction();
        let chart = chart_triangle();
        let (ix, iy) = (chart.var_index("x").unwrap(), chart.var_index("y").unwrap());
        for p in [[0.2, 0.7], [0.05, 0.1], [0.6, 0.61]] {
            let mut pt = vec![0.0; chart.dim()];
            pt[ix] = p[0];
            pt[iy] = p[1];
            for ((i, j), [ax, ay]) in a_coefficients(p) {
                let w = t(i, j);
                let w = w.deg0().keys().next().unwrap();
                let cx = a.component(&[ix]).deg0().get(w).map(|f| f.eval(&pt)).unwrap_or(0.0);
                let cy = a.component(&[iy]).deg0().get(w).map(|f| f.eval(&pt)).unwrap_or(0.0);
                assert!((cx - ax).abs() < 1e-12 && (cy - ay).abs() < 1e-12, "t{i}{j} at {p:?}");
            }
            let idx = if ix < iy { vec![ix, iy] } else { vec![iy, ix] };
            let sign = if ix < iy { 1.0 } else { -1.0 };
            let bc = b_coefficients(p);
            for (k, c) in bc.iter().enumerate() {
                let g = b_elem(k);
                let m = g.degm1().keys().next().unwrap();
                let exact = b.component(&idx).degm1().get(m).map(|f| f.eval(&pt)).unwrap_or(0.0);
                assert!((sign * exact - c).abs() < 1e-12 * c.abs().max(1.0), "B component {k} at {p:?}");
            }
        }
    }

    #[test]
    fn constant_path_is_one() {
        let w = path_transport(&PathSpec::constant([0.2, 0.5]), &cfg()).unwrap();
        assert_eq!(w.series, Series::one(N, 2));
    }

    #[test]
    fn c_one_t12_coefficient() {
        for e in [0.1, 0.05, 0.025] {
            let w = path_transport(&BrwPath::I.spec(e).unwrap(), &cfg()).unwrap();
            let exact = ((1.0 - e) / e).ln();
            assert!((w.t_coefficient(1, 2) - exact).abs() < 1e-10, "eps {e}");
        }
    }

    #[test]
    fn reversed_path_inverts() {
        let p = BrwPath::II.spec(0.05).unwrap();
        let w = path_transport(&p, &cfg()).unwrap();
        let v = path_transport(&p.reversed(), &cfg()).unwrap();
        let prod = w.mul(&v);
        assert!(prod.series.sub(&Series::one(N, 2)).max_magnitude() < 1e-9);
    }

    #[test]
    fn transport_is_multiplicative_under_subdivision() {
        let p = BrwPath::I.spec(0.1).unwrap().then(&BrwPath::II.spec(0.1).unwrap()).unwrap();
        let w = path_transport(&p, &cfg()).unwrap();
        for (k, r) in [(0, 0.3), (1, 0.01), (1, 0.77)] {
            let v = path_transport(&p.subdivided(k, r), &cfg()).unwrap();
            assert!(w.series.sub(&v.series).max_magnitude() < 1e-9, "split {k} at {r}");
        }
    }

    #[test]
    fn surfaces_start_at_degree_two() {
        let h = surface_holonomy(&SurfaceSpec::new(SurfaceKind::PI, 0.1).unwrap(), &cfg()).unwrap();
        assert!(h.series.coeff(0).is_zero() && h.series.coeff(1).is_zero());
        assert!(!h.series.coeff(2).is_zero());
    }

    #[test]
    fn surface_matches_polygon_oracle() {
        for kind in [SurfaceKind::PI, SurfaceKind::PII] {
            let sp = SurfaceSpec::new(kind, 0.1).unwrap();
            let h = surface_holonomy(&sp, &QuadConfig::with_tol(1e-9)).unwrap();
            let o = polygon_integral(&sp.region(), &QuadConfig::with_tol(1e-12)).unwrap();
            let mid = sp.middle(0.5);
            let orient = sp.at(0.5, 0.5 * (mid.0 + mid.1)).jacobian.signum();
            let diff = h.series.sub(&o.series.scale(&orient)).max_magnitude();
            assert!(diff < 1e-7 * (1.0 + o.series.max_magnitude()), "{kind:?}: {diff:e}");
        }
    }

    #[test]
    fn refinement_stays_within_error_estimate() {
        let p = BrwPath::II.spec(0.025).unwrap();
        let coarse = path_transport(&p, &QuadConfig::with_tol(1e-7)).unwrap();
        let fine = path_transport(&p, &QuadConfig::with_tol(1e-7).refined(2.0)).unwrap();
        let change = coarse.series.sub(&fine.series).max_magnitude();
        assert!(change <= coarse.error.max(1e-15), "{change:e} vs {:e}", coarse.error);
    }
}
