//! The ε-regularized affine paths of the pentagon and the two 2-paths filling it.
//!
//! All points live in the open triangle `U′ = {0 < x < y < 1}`.

use serde::Serialize;

use crate::error::{Dk2Error, Result};

pub type Point = [f64; 2];

/// Whether `p` lies strictly inside `U′`.
pub fn in_triangle(p: Point) -> bool {
    0.0 < p[0] && p[0] < p[1] && p[1] < 1.0
}

fn lerp(p: Point, q: Point, r: f64) -> Point {
    [(1.0 - r) * p[0] + r * q[0], (1.0 - r) * p[1] + r * q[1]]
}

/// A straight segment traversed at constant speed for `r ∈ [0,1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
}

impl Segment {
    pub fn at(&self, r: f64) -> Point {
        lerp(self.start, self.end, r)
    }

    pub fn velocity(&self) -> Point {
        [self.end[0] - self.start[0], self.end[1] - self.start[1]]
    }
}

/// A piecewise affine 1-path; pieces are traversed first to last.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathSpec {
    pub name: String,
    pub pieces: Vec<Segment>,
}

impl PathSpec {
    pub fn segment(name: &str, start: Point, end: Point) -> Self {
        PathSpec { name: name.into(), pieces: vec![Segment { start, end }] }
    }

    pub fn constant(p: Point) -> Self {
        Self::segment("const", p, p)
    }

    pub fn start(&self) -> Point {
        self.pieces[0].start
    }

    pub fn end(&self) -> Point {
        self.pieces[self.pieces.len() - 1].end
    }

    /// The same curve run backwards.
    pub fn reversed(&self) -> Self {
        let pieces = self.pieces.iter().rev().map(|s| Segment { start: s.end, end: s.start }).collect();
        PathSpec { name: format!("{}^-1", self.name), pieces }
    }

    /// `self` followed by `next`; the endpoints must meet.
    pub fn then(&self, next: &PathSpec) -> Result<Self> {
        let (a, b) = (self.end(), next.start());
        if (a[0] - b[0]).abs() > 1e-14 || (a[1] - b[1]).abs() > 1e-14 {
            return Err(Dk2Error::Structural(format!("{} ends at {a:?} but {} starts at {b:?}", self.name, next.name)));
        }
        let mut pieces = self.pieces.clone();
        pieces.extend(next.pieces.iter().copied());
        Ok(PathSpec { name: format!("{}*{}", next.name, self.name), pieces })
    }

    /// Splits the piece `k` at parameter `r`, leaving the curve unchanged.
    pub fn subdivided(&self, k: usize, r: f64) -> Self {
        let mut pieces = self.pieces.clone();
        let s = pieces[k];
        let m = s.at(r);
        pieces.splice(k..=k, [Segment { start: s.start, end: m }, Segment { start: m, end: s.end }]);
        PathSpec { name: self.name.clone(), pieces }
    }

    /// Errors unless every piece stays inside `U′` (segments are convex, so endpoints suffice).
    pub fn check_admissible(&self) -> Result<()> {
        for s in &self.pieces {
            for p in [s.start, s.end] {
                if !in_triangle(p) {
                    return Err(Dk2Error::OutsideDomain(format!("{} reaches {p:?}", self.name)));
                }
            }
        }
        Ok(())
    }
}

/// The five boundary paths of the pentagon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BrwPath {
    I,
    II,
    III,
    IV,
    V,
}

impl BrwPath {
    pub const ALL: [BrwPath; 5] = [BrwPath::I, BrwPath::II, BrwPath::III, BrwPath::IV, BrwPath::V];

    pub fn name(self) -> &'static str {
        match self {
            BrwPath::I => "c_I",
            BrwPath::II => "c_II",
            BrwPath::III => "c_III",
            BrwPath::IV => "c_IV",
            BrwPath::V => "c_V",
        }
    }

    /// Endpoints at `ε`, without the admissibility check.
    fn ends(self, e: f64) -> (Point, Point) {
        let e2 = e * e;
        match self {
            BrwPath::I => ([e2, e], [e - e2, e]),
            BrwPath::II => ([e - e2, e], [1.0 - e, 1.0 - e + e2]),
            BrwPath::III => ([1.0 - e, 1.0 - e + e2], [1.0 - e, 1.0 - e2]),
            BrwPath::IV => ([e2, e], [e2, 1.0 - e2]),
            BrwPath::V => ([e2, 1.0 - e2], [1.0 - e, 1.0 - e2]),
        }
    }

    pub fn spec(self, eps: f64) -> Result<PathSpec> {
        check_eps(eps)?;
        let (p, q) = self.ends(eps);
        Ok(PathSpec::segment(self.name(), p, q))
    }
}

/// `c^s_II(r) = (1-r)·c_I(1-s) + r·c_III(s)`.
pub fn c2s(eps: f64, s: f64) -> Result<PathSpec> {
    check_eps(eps)?;
    let p = BrwPath::I.spec(eps)?.pieces[0].at(1.0 - s);
    let q = BrwPath::III.spec(eps)?.pieces[0].at(s);
    Ok(PathSpec::segment("c^s_II", p, q))
}

/// Whether the paths at `ε` sit in `U′` with the orientation of the pentagon: `c_I`, `c_II`
/// and `c_V` move right, `c_III` and `c_IV` move up.
fn shape_ok(e: f64) -> bool {
    if !(e > 0.0 && e < 1.0) {
        return false;
    }
    BrwPath::ALL.iter().all(|&c| {
        let (p, q) = c.ends(e);
        let dir_ok = match c {
            BrwPath::I | BrwPath::II | BrwPath::V => q[0] > p[0],
            BrwPath::III | BrwPath::IV => q[1] > p[1],
        };
        dir_ok && in_triangle(p) && in_triangle(q)
    })
}

/// The supremum of admissible `ε`, found by bisection on the path formulas.
pub fn eps_max() -> f64 {
    let (mut lo, mut hi) = (1e-6, 1.0);
    debug_assert!(shape_ok(lo));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if shape_ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

pub fn check_eps(eps: f64) -> Result<()> {
    if !shape_ok(eps) {
        return Err(Dk2Error::OutsideDomain(format!("eps = {eps} is not admissible (eps_max = {})", eps_max())));
    }
    Ok(())
}

/// Which filling 2-path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SurfaceKind {
    /// `P_I : c_II c_I ⇛ (c_III∘ι) c¹_II`.
    PI,
    /// `P_II : c¹_II ⇛ c_V c_IV`.
    PII,
}

/// A 2-path `P(s, r)` at fixed `ε`. Only the middle piece of each `s`-slice depends on `s`;
/// the outer pieces are reparametrized boundary paths and carry no area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceSpec {
    pub kind: SurfaceKind,
    pub eps: f64,
}

/// A point of a 2-path with its Jacobian `∂x/∂s·∂y/∂r − ∂x/∂r·∂y/∂s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    pub p: Point,
    pub jacobian: f64,
}

impl SurfaceSpec {
    pub fn new(kind: SurfaceKind, eps: f64) -> Result<Self> {
        check_eps(eps)?;
        Ok(SurfaceSpec { kind, eps })
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            SurfaceKind::PI => "P_I",
            SurfaceKind::PII => "P_II",
        }
    }

    /// The `r`-interval of the middle piece at `s`.
    pub fn middle(&self, s: f64) -> (f64, f64) {
        match self.kind {
            SurfaceKind::PI => ((1.0 - s) / 2.0, 1.0 - s / 2.0),
            SurfaceKind::PII => (s / 2.0, s),
        }
    }

    /// `P(s, r)` on the middle piece, with partial derivatives in closed form.
    pub fn at(&self, s: f64, r: f64) -> SurfacePoint {
        let e = self.eps;
        let e2 = e * e;
        match self.kind {
            SurfaceKind::PI => {
                // (1-ρ)·c_I(1-s) + ρ·c_III(s) with ρ = 2r + s - 1.
                let rho = 2.0 * r + s - 1.0;
                let a = [s * e2 + (1.0 - s) * (e - e2), e];
                let b = [1.0 - e, (1.0 - s) * (1.0 - e + e2) + s * (1.0 - e2)];
                let da = [e2 - (e - e2), 0.0];
                let db = [0.0, e - 2.0 * e2];
                let p = lerp(a, b, rho);
                let pr = [2.0 * (b[0] - a[0]), 2.0 * (b[1] - a[1])];
                let ps = [
                    (b[0] - a[0]) + (1.0 - rho) * da[0] + rho * db[0],
                    (b[1] - a[1]) + (1.0 - rho) * da[1] + rho * db[1],
                ];
                SurfacePoint { p, jacobian: ps[0] * pr[1] - pr[0] * ps[1] }
            }
            SurfaceKind::PII => {
                // c^s_V(ρ) with ρ = 2r - s: a horizontal segment at height y(s).
                let rho = 2.0 * r - s;
                let x = (1.0 - rho) * e2 + rho * (1.0 - e);
                let y = (1.0 - s) * e + s * (1.0 - e2);
                // y does not depend on r, so only ∂x/∂r·∂y/∂s survives.
                let xr = 2.0 * (1.0 - e - e2);
                let ys = 1.0 - e2 - e;
                SurfacePoint { p: [x, y], jacobian: -xr * ys }
            }
        }
    }

    /// Corners of the region swept by the middle pieces, counter-clockwise in `(x, y)`.
    pub fn region(&self) -> Vec<Point> {
        let e = self.eps;
        let e2 = e * e;
        match self.kind {
            SurfaceKind::PI => vec![[e2, e], [e - e2, e], [1.0 - e, 1.0 - e + e2], [1.0 - e, 1.0 - e2]],
            SurfaceKind::PII => vec![[e2, e], [1.0 - e, 1.0 - e2], [e2, 1.0 - e2]],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eps_max_is_one_half() {
        // c_I degenerates when ε² = ε - ε².
        assert!((eps_max() - 0.5).abs() < 1e-12);
        assert!(check_eps(0.49).is_ok());
        assert!(matches!(check_eps(0.6), Err(Dk2Error::OutsideDomain(_))));
        assert!(check_eps(0.0).is_err());
    }

    #[test]
    fn pentagon_closes() {
        let e = 0.1;
        let p = |c: BrwPath| c.spec(e).unwrap();
        let top = p(BrwPath::I).then(&p(BrwPath::II)).unwrap().then(&p(BrwPath::III)).unwrap();
        let bottom = p(BrwPath::IV).then(&p(BrwPath::V)).unwrap();
        assert_eq!(top.start(), bottom.start());
        assert_eq!(top.end(), bottom.end());
        top.check_admissible().unwrap();
        bottom.check_admissible().unwrap();
        assert!(p(BrwPath::II).then(&p(BrwPath::I)).is_err());
    }

    #[test]
    fn surfaces_match_their_boundaries() {
        let e = 0.1;
        let pi = SurfaceSpec::new(SurfaceKind::PI, e).unwrap();
        // s = 0: the middle piece is c_II.
        let (lo, hi) = pi.middle(0.0);
        let c2 = BrwPath::II.spec(e).unwrap().pieces[0];
        for (r, t) in [(lo, 0.0), (hi, 1.0), (0.5 * (lo + hi), 0.5)] {
            let q = pi.at(0.0, r).p;
            let w = c2.at(t);
            assert!((q[0] - w[0]).abs() < 1e-14 && (q[1] - w[1]).abs() < 1e-14);
        }
        // s = 1: the middle piece is c¹_II.
        let d = c2s(e, 1.0).unwrap().pieces[0];
        let (lo, hi) = pi.middle(1.0);
        assert!((pi.at(1.0, lo).p[0] - d.start[0]).abs() < 1e-14);
        assert!((pi.at(1.0, hi).p[1] - d.end[1]).abs() < 1e-14);
        let pii = SurfaceSpec::new(SurfaceKind::PII, e).unwrap();
        let (lo, hi) = pii.middle(1.0);
        let v = BrwPath::V.spec(e).unwrap().pieces[0];
        assert!((pii.at(1.0, lo).p[0] - v.start[0]).abs() < 1e-14);
        assert!((pii.at(1.0, hi).p[0] - v.end[0]).abs() < 1e-14);
    }

    #[test]
    fn jacobians_match_finite_differences() {
        for kind in [SurfaceKind::PI, SurfaceKind::PII] {
            let sp = SurfaceSpec::new(kind, 0.07).unwrap();
            let s = 0.37;
            let (lo, hi) = sp.middle(s);
            let r = 0.3 * lo + 0.7 * hi;
            let h = 1e-6;
            let d = |ds: f64, dr: f64| sp.at(s + ds, r + dr).p;
            let (sp_, sm, rp, rm) = (d(h, 0.0), d(-h, 0.0), d(0.0, h), d(0.0, -h));
            let xs = (sp_[0] - sm[0]) / (2.0 * h);
            let ys = (sp_[1] - sm[1]) / (2.0 * h);
            let xr = (rp[0] - rm[0]) / (2.0 * h);
            let yr = (rp[1] - rm[1]) / (2.0 * h);
            let fd = xs * yr - xr * ys;
            assert!((fd - sp.at(s, r).jacobian).abs() < 1e-7, "{kind:?}: {fd} vs {}", sp.at(s, r).jacobian);
        }
    }
}
