//! Adaptive Gauss-Kronrod quadrature for vector-valued integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Dk2Error, Result};

/// Tolerance and work limits for one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadConfig {
    /// Target for the summed panel error, absolute below magnitude 1 and relative above.
    pub tol: f64,
    /// Panel budget per one-dimensional integral.
    pub max_panels: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { tol: 1e-9, max_panels: 4000 }
    }
}

impl QuadConfig {
    pub fn with_tol(tol: f64) -> Self {
        QuadConfig { tol, ..Self::default() }
    }

    /// The same budget with a tolerance `factor` times tighter.
    pub fn refined(&self, factor: f64) -> Self {
        QuadConfig { tol: self.tol / factor, max_panels: self.max_panels * 2 }
    }
}

/// An integral together with its summed Kronrod error estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature<const K: usize> {
    pub value: [f64; K],
    pub error: f64,
    pub panels: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights live on the odd Kronrod nodes 1, 3, 5 and the centre.
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

struct Panel<const K: usize> {
    a: f64,
    b: f64,
    value: [f64; K],
    error: f64,
}

impl<const K: usize> PartialEq for Panel<K> {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl<const K: usize> Eq for Panel<K> {}
impl<const K: usize> PartialOrd for Panel<K> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl<const K: usize> Ord for Panel<K> {
    fn cmp(&self, o: &Self) -> Ordering {
        // Largest error first; ties broken by position so the refinement order is reproducible.
        self.error.total_cmp(&o.error).then_with(|| o.a.total_cmp(&self.a))
    }
}

fn nodes(a: f64, b: f64) -> [f64; 15] {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut xs = [c; 15];
    for i in 0..7 {
        xs[2 * i] = c - h * XGK[i];
        xs[2 * i + 1] = c + h * XGK[i];
    }
    xs
}

fn rule<const K: usize>(a: f64, b: f64, fx: &[[f64; K]]) -> Panel<K> {
    let h = 0.5 * (b - a);
    let mut kron = [0.0; K];
    let mut gauss = [0.0; K];
    for c in 0..K {
        let mut sk = WGK[7] * fx[14][c];
        let mut sg = WG[3] * fx[14][c];
        for i in 0..7 {
            let pair = fx[2 * i][c] + fx[2 * i + 1][c];
            sk += WGK[i] * pair;
            if i % 2 == 1 {
                sg += WG[i / 2] * pair;
            }
        }
        kron[c] = sk * h;
        gauss[c] = sg * h;
    }
    let error = kron.iter().zip(&gauss).map(|(k, g)| (k - g).abs()).fold(0.0, f64::max);
    Panel { a, b, value: kron, error }
}

fn eval_panel<const K: usize, F>(f: &F, a: f64, b: f64, parallel: bool) -> Result<Panel<K>>
where
    F: Fn(f64) -> Result<[f64; K]> + Sync,
{
    let xs = nodes(a, b);
    let fx: Vec<[f64; K]> = if parallel {
        xs.par_iter().map(|&x| f(x)).collect::<Result<_>>()?
    } else {
        xs.iter().map(|&x| f(x)).collect::<Result<_>>()?
    };
    if fx.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Dk2Error::Quadrature(format!("non-finite integrand on [{a}, {b}]")));
    }
    Ok(rule(a, b, &fx))
}

/// Globally adaptive G7/K15 integration of `f` over the consecutive pieces `breaks[i]..breaks[i+1]`.
///
/// Panels are bisected worst-first until the summed error estimate meets the tolerance. The result
/// is summed in left-to-right panel order, so it does not depend on how node evaluations were
/// scheduled. With `parallel` set the fifteen nodes of each panel are evaluated concurrently.
pub fn integrate<const K: usize, F>(f: &F, breaks: &[f64], cfg: &QuadConfig, parallel: bool) -> Result<Quadrature<K>>
where
    F: Fn(f64) -> Result<[f64; K]> + Sync,
{
    let mut heap = BinaryHeap::new();
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            heap.push(eval_panel(f, w[0], w[1], parallel)?);
        }
    }
    let total = |heap: &BinaryHeap<Panel<K>>| -> (f64, f64) {
        let err: f64 = heap.iter().map(|p| p.error).sum();
        let mag = (0..K).map(|c| heap.iter().map(|p| p.value[c]).sum::<f64>().abs()).fold(0.0, f64::max);
        (err, mag)
    };
    loop {
        let (err, mag) = total(&heap);
        if err <= cfg.tol * mag.max(1.0) {
            break;
        }
        if heap.len() >= cfg.max_panels {
            return Err(Dk2Error::Quadrature(format!(
                "error estimate {err:e} above tolerance {:e} after {} panels",
                cfg.tol,
                heap.len()
            )));
        }
        let worst = heap.pop().expect("at least one panel");
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            return Err(Dk2Error::Quadrature(format!("panel [{}, {}] cannot be split", worst.a, worst.b)));
        }
        heap.push(eval_panel(f, worst.a, m, parallel)?);
        heap.push(eval_panel(f, m, worst.b, parallel)?);
    }
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut value = [0.0; K];
    let mut error = 0.0;
    for p in &panels {
        for c in 0..K {
            value[c] += p.value[c];
        }
        error += p.error;
    }
    Ok(Quadrature { value, error, panels: panels.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let q = integrate(&|x: f64| Ok([x.powi(20), 1.0]), &[0.0, 1.0], &QuadConfig::default(), false).unwrap();
        assert!((q.value[0] - 1.0 / 21.0).abs() < 1e-14);
        assert!((q.value[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn near_singular_logarithm() {
        let e = 1e-6;
        let q = integrate(&|x: f64| Ok([1.0 / (x + e)]), &[0.0, 1.0], &QuadConfig::with_tol(1e-11), false).unwrap();
        let exact = ((1.0 + e) / e).ln();
        assert!((q.value[0] - exact).abs() < 1e-9, "{} vs {exact}", q.value[0]);
        assert!(q.error < 1e-9);
    }

    #[test]
    fn parallel_matches_serial_bitwise() {
        let f = |x: f64| Ok([(3.0 * x).sin() / (x + 1e-3), x.exp()]);
        let cfg = QuadConfig::with_tol(1e-12);
        let a = integrate(&f, &[0.0, 0.5, 2.0], &cfg, false).unwrap();
        let b = integrate(&f, &[0.0, 0.5, 2.0], &cfg, true).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let cfg = QuadConfig { tol: 1e-14, max_panels: 3 };
        let r = integrate(&|x: f64| Ok([1.0 / (x + 1e-9)]), &[0.0, 1.0], &cfg, false);
        assert!(matches!(r, Err(Dk2Error::Quadrature(_))));
    }
}
