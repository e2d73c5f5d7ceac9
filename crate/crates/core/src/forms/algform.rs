//! Differential forms on a named chart with algebra-valued rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coeffs::Scalar;
use crate::dkalg::{Elem, Element};
use crate::error::{Dk2Error, Result};

use super::poly::Poly;
use super::ratfun::RatFun;

/// Algebra element with rational-function coefficients.
pub type FormCoeff = Elem<RatFun>;

/// A coordinate chart: variable names and the linear atoms its denominators factor over.
#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    pub name: String,
    pub vars: Vec<String>,
    pub atoms: Vec<Poly>,
}

impl Chart {
    pub fn new(name: &str, vars: &[&str], atoms: Vec<Poly>) -> Arc<Self> {
        Arc::new(Chart { name: name.into(), vars: vars.iter().map(|s| s.to_string()).collect(), atoms })
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Dk2Error::ChartMismatch(format!("no variable `{name}` on chart {}", self.name)))
    }

    fn names(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }
}

/// Lifts an exact element with rational coefficients, scaled by `f`.
pub fn lift(x: &Element, f: &RatFun) -> FormCoeff {
    x.map_coeffs(|c| {
        let r = c.as_rational().expect("form coefficients must be rational");
        f.scale(&r)
    })
}

/// Sorts a list of differential indices, returning the permutation sign, or `None` when an
/// index repeats.
fn sort_indices(idx: &[usize]) -> Option<(i64, Vec<usize>)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// A homogeneous `p`-form `Σ_I f_I dx_I` with `f_I` algebra-valued.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgForm {
    chart: Arc<Chart>,
    n: u8,
    degree: usize,
    terms: BTreeMap<Vec<usize>, FormCoeff>,
}

impl AlgForm {
    pub fn zero(chart: &Arc<Chart>, n: u8, degree: usize) -> Self {
        AlgForm { chart: chart.clone(), n, degree, terms: BTreeMap::new() }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient(&self) -> u8 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, FormCoeff> {
        &self.terms
    }

    /// Coefficient of `dx_I` for increasing `I`.
    pub fn component(&self, idx: &[usize]) -> FormCoeff {
        self.terms.get(idx).cloned().unwrap_or_else(|| Elem::zero(self.n))
    }

    /// Adds `x dx_{idx}` with `idx` in any order.
    pub fn add_term(&mut self, idx: &[usize], x: &FormCoeff) -> Result<()> {
        if idx.len() != self.degree {
            return Err(Dk2Error::Degree(format!("{}-form term on a {}-form", idx.len(), self.degree)));
        }
        if let Some(&i) = idx.iter().find(|&&i| i >= self.chart.dim()) {
            return Err(Dk2Error::ChartMismatch(format!("differential index {i} on chart {}", self.chart.name)));
        }
        let Some((sign, sorted)) = sort_indices(idx) else { return Ok(()) };
        let x = if sign < 0 { x.neg() } else { x.clone() };
        let slot = self.terms.entry(sorted.clone()).or_insert_with(|| Elem::zero(self.n));
        slot.add_assign(&x);
        if slot.is_zero() {
            self.terms.remove(&sorted);
        }
        Ok(())
    }

    /// `f·x·dv₁∧…` by variable names.
    pub fn term(chart: &Arc<Chart>, vars: &[&str], f: &RatFun, x: &Element) -> Result<Self> {
        let idx: Vec<usize> = vars.iter().map(|v| chart.var_index(v)).collect::<Result<_>>()?;
        let mut out = AlgForm::zero(chart, x.ambient(), idx.len());
        out.add_term(&idx, &lift(x, f))?;
        Ok(out)
    }

    fn check(&self, o: &AlgForm) -> Result<()> {
        if self.chart.name != o.chart.name {
            return Err(Dk2Error::ChartMismatch(format!("{} vs {}", self.chart.name, o.chart.name)));
        }
        if self.n != o.n {
            return Err(Dk2Error::AmbientMismatch(self.n, o.n));
        }
        Ok(())
    }

    pub fn add(&self, o: &AlgForm) -> Result<Self> {
        self.check(o)?;
        if self.degree != o.degree {
            return Err(Dk2Error::Degree(format!("adding a {}-form to a {}-form", o.degree, self.degree)));
        }
        let mut out = self.clone();
        for (i, x) in &o.terms {
            out.add_term(i, x)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn sub(&self, o: &AlgForm) -> Result<Self> {
        self.add(&o.neg())
    }

    /// Applies `f` to every algebra coefficient, dropping zeros.
    pub fn map(&self, f: impl Fn(&FormCoeff) -> FormCoeff) -> Self {
        let terms = self.terms.iter().map(|(i, x)| (i.clone(), f(x))).filter(|(_, x)| !x.is_zero()).collect();
        AlgForm { chart: self.chart.clone(), n: self.n, degree: self.degree, terms }
    }

    /// `∂` on the algebra parts.
    pub fn boundary(&self) -> Self {
        self.map(|x| x.boundary())
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = AlgForm::zero(&self.chart, self.n, self.degree + 1);
        for (idx, x) in &self.terms {
            for v in 0..self.chart.dim() {
                let dx = x.map_coeffs(|f| f.deriv(v));
                if dx.is_zero() {
                    continue;
                }
                let mut full = vec![v];
                full.extend_from_slice(idx);
                out.add_term(&full, &dx).expect("index within chart");
            }
        }
        out
    }

    fn combine(&self, o: &AlgForm, pair: impl Fn(&FormCoeff, &FormCoeff) -> FormCoeff) -> Result<Self> {
        self.check(o)?;
        let mut out = AlgForm::zero(&self.chart, self.n, self.degree + o.degree);
        for (i, x) in &self.terms {
            for (j, y) in &o.terms {
                let mut full = i.clone();
                full.extend_from_slice(j);
                if sort_indices(&full).is_none() {
                    continue;
                }
                out.add_term(&full, &pair(x, y))?;
            }
        }
        Ok(out)
    }

    /// `Σ (α∧β) ⊗ x·y`.
    pub fn wedge(&self, o: &AlgForm) -> Result<Self> {
        self.combine(o, |x, y| x.mul(y))
    }

    /// `Σ (α∧β) ⊗ [x, y]`, the bracket-wedge of a 1-form with a 2-form.
    pub fn bracket_wedge(&self, o: &AlgForm) -> Result<Self> {
        self.combine(o, |x, y| x.bracket(y))
    }

    /// Pulls back along `source var i ↦ images[i]`, where the images are functions on `target`.
    pub fn pullback(&self, target: &Arc<Chart>, images: &[RatFun]) -> Result<Self> {
        if images.len() != self.chart.dim() {
            return Err(Dk2Error::ChartMismatch(format!(
                "{} images for the {} variables of {}",
                images.len(),
                self.chart.dim(),
                self.chart.name
            )));
        }
        // dx_i ↦ Σ_j ∂_j(image_i) dy_j
        let differentials: Vec<Vec<(usize, RatFun)>> = images
            .iter()
            .map(|f| (0..target.dim()).map(|j| (j, f.deriv(j))).filter(|(_, g)| !Scalar::is_zero(g)).collect())
            .collect();
        let mut out = AlgForm::zero(target, self.n, self.degree);
        for (idx, x) in &self.terms {
            let mut coeff = Elem::zero(self.n);
            for (w, f) in x.deg0() {
                coeff.add_term_word(w.clone(), f.substitute(images, &target.atoms)?);
            }
            for (m, f) in x.degm1() {
                coeff.add_term_bmon(m.clone(), f.substitute(images, &target.atoms)?);
            }
            // Expand the wedge of the pulled-back differentials.
            let mut expansions: Vec<(Vec<usize>, RatFun)> = vec![(Vec::new(), RatFun::one())];
            for &i in idx {
                let mut next = Vec::new();
                for (prefix, g) in &expansions {
                    for (j, h) in &differentials[i] {
                        let mut p = prefix.clone();
                        p.push(*j);
                        next.push((p, g.mul_rf(h)));
                    }
                }
                expansions = next;
            }
            for (jdx, g) in expansions {
                out.add_term(&jdx, &coeff.map_coeffs(|f| f.mul_rf(&g)))?;
            }
        }
        Ok(out)
    }

    /// Block-by-block text dump with chart variable names.
    pub fn dump(&self) -> String {
        let names = self.chart.names();
        let mut lines = Vec::new();
        for (idx, x) in &self.terms {
            let diff: Vec<String> = idx.iter().map(|&i| format!("d{}", names[i])).collect();
            lines.push(format!("{}:", if diff.is_empty() { "1".into() } else { diff.join("^") }));
            for (w, f) in x.deg0() {
                let word = Element::from_word(self.n, w.clone(), crate::coeffs::Coeff::one());
                lines.push(format!("  ({}) * {}", f.text(&names), word));
            }
            for (m, f) in x.degm1() {
                lines.push(format!("  ({}) * {}", f.text(&names), m));
            }
        }
        lines.join("\n")
    }
}

impl fmt::Display for AlgForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}
