//! Relation spans in degree -1 and the kernel of the boundary map on the quotient.
//!
//! The free bimodule on `ℓ`, `r` does not satisfy the Peiffer identity by itself: the
//! elements `w₁(∂g·w·h − g·w·∂h)w₂` are nonzero there but vanish in the algebra. They start in
//! a-degree 2 and are quotiented together with the four-index relations.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::coeffs::{Rational, Scalar};
use crate::error::{Dk2Error, Result};

use super::basis::{bmon_basis_limited, generators, word_basis};
use super::element::{Elem, Element};
use super::gens::{AWord, BMon};
use super::linalg::{Echelon, Insert, SparseVec};
use super::relations::relation_set;

/// Largest degree-(-1) basis the exact linear algebra accepts.
pub const MAX_BASIS: usize = 200_000;
/// Largest number of spanning elements generated for one relation span.
pub const MAX_SPANNING: usize = 2_000_000;

/// Which families are quotiented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Quotient {
    /// The six four-index relation families.
    pub relations: bool,
    /// The Peiffer identity.
    pub peiffer: bool,
}

impl Quotient {
    pub const FULL: Quotient = Quotient { relations: true, peiffer: true };
    pub const FREE: Quotient = Quotient { relations: false, peiffer: false };
}

/// Column order used for elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisOrder {
    Forward,
    Reversed,
}

fn indexed<T: Ord + Clone>(items: Vec<T>, order: BasisOrder) -> (Vec<T>, BTreeMap<T, u32>) {
    let mut items = items;
    if order == BasisOrder::Reversed {
        items.reverse();
    }
    let index = items.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
    (items, index)
}

/// The relation span inside the degree-`d` piece of the free bimodule, in echelon form.
#[derive(Debug)]
pub struct DegreeSpan {
    n: u8,
    d: usize,
    basis: Vec<BMon>,
    index: BTreeMap<BMon, u32>,
    echelon: Echelon,
}

fn spanning_elements(n: u8, d: usize, q: Quotient) -> Result<Vec<Element>> {
    let mut out = Vec::new();
    let words: Vec<Vec<AWord>> = (0..=d).map(|k| word_basis(n, k)).collect();
    let as_elem = |w: &AWord| Element::from_word(n, w.clone(), Scalar::one());
    let guard = |len: usize| {
        if len > MAX_SPANNING {
            Err(Dk2Error::Overflow(format!("relation span at n={n}, degree {d} needs more than {MAX_SPANNING} elements")))
        } else {
            Ok(())
        }
    };
    if q.relations && d >= 1 {
        let rels = relation_set(n);
        for p in 0..d {
            for w1 in &words[p] {
                for w2 in &words[d - 1 - p] {
                    for r in &rels {
                        out.push(as_elem(w1).mul(r).mul(&as_elem(w2)));
                    }
                    guard(out.len())?;
                }
            }
        }
    }
    if q.peiffer && d >= 2 {
        let gens: Vec<Element> = generators(n).into_iter().map(|g| Element::gen(n, g)).collect();
        let bounds: Vec<Element> = gens.iter().map(|g| g.boundary()).collect();
        for p in 0..=d - 2 {
            for s in 0..=d - 2 - p {
                let mid = d - 2 - p - s;
                for w in &words[mid] {
                    let w = as_elem(w);
                    for (g, dg) in gens.iter().zip(&bounds) {
                        for (h, dh) in gens.iter().zip(&bounds) {
                            let core = dg.mul(&w).mul(h).sub(&g.mul(&w).mul(dh));
                            for w1 in &words[p] {
                                for w2 in &words[s] {
                                    let e = as_elem(w1).mul(&core).mul(&as_elem(w2));
                                    if !e.is_zero() {
                                        out.push(e);
                                    }
                                }
                            }
                            guard(out.len())?;
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn to_sparse<C: Scalar>(x: &Elem<C>, index: &BTreeMap<BMon, u32>, d: usize) -> Result<SparseVec<C>> {
    let mut v = SparseVec::new();
    for (m, c) in x.degm1() {
        if m.degree() != d {
            continue;
        }
        let col = index.get(m).ok_or_else(|| Dk2Error::InvalidIndex(format!("{m} outside the basis")))?;
        v.insert(*col, c.clone());
    }
    Ok(v)
}

impl DegreeSpan {
    pub fn build(n: u8, d: usize, q: Quotient, order: BasisOrder) -> Result<Self> {
        let basis = bmon_basis_limited(n, d, MAX_BASIS)?;
        let (basis, index) = indexed(basis, order);
        let mut echelon = Echelon::new();
        for (label, e) in spanning_elements(n, d, q)?.iter().enumerate() {
            let v: SparseVec<Rational> = to_sparse(e, &index, d)?
                .into_iter()
                .map(|(c, x)| (c, x.as_rational().expect("rational relation")))
                .collect();
            if !v.is_empty() {
                echelon.insert(v, label as u32);
            }
        }
        Ok(DegreeSpan { n, d, basis, index, echelon })
    }

    pub fn basis(&self) -> &[BMon] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Columns not hit by a pivot; their monomials represent a basis of the quotient.
    pub fn quotient_columns(&self) -> Vec<u32> {
        (0..self.basis.len() as u32).filter(|c| !self.echelon.is_pivot(*c)).collect()
    }

    /// Canonical representative of the degree-`d` part of `x` modulo the span.
    pub fn reduce<C: Scalar>(&self, x: &Elem<C>) -> Result<Elem<C>> {
        let v = self.echelon.reduce(to_sparse(x, &self.index, self.d)?);
        let mut out = Elem::zero(self.n);
        for (col, c) in v {
            out.add_term_bmon(self.basis[col as usize].clone(), c);
        }
        Ok(out)
    }
}

type SpanKey = (u8, usize, Quotient);

fn span_cache() -> &'static Mutex<HashMap<SpanKey, Arc<DegreeSpan>>> {
    static CACHE: OnceLock<Mutex<HashMap<SpanKey, Arc<DegreeSpan>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached relation span (forward order).
pub fn degree_span(n: u8, d: usize, q: Quotient) -> Result<Arc<DegreeSpan>> {
    let key = (n, d, q);
    if let Some(s) = span_cache().lock().expect("span cache").get(&key) {
        return Ok(s.clone());
    }
    let span = Arc::new(DegreeSpan::build(n, d, q, BasisOrder::Forward)?);
    span_cache().lock().expect("span cache").entry(key).or_insert(span.clone());
    Ok(span)
}

/// Canonical representative of the degree-(-1) part of `x` modulo the chosen families, one
/// a-degree at a time. The degree-0 part is returned unchanged.
pub fn reduce_modulo_relations<C: Scalar>(x: &Elem<C>, q: Quotient) -> Result<Elem<C>> {
    let mut out = x.deg0_part();
    let degrees: std::collections::BTreeSet<usize> = x.degm1().keys().map(|m| m.degree()).collect();
    for d in degrees {
        out.add_assign(&degree_span(x.ambient(), d, q)?.reduce(x)?);
    }
    Ok(out)
}

/// Result of a kernel computation.
#[derive(Debug, Clone, Serialize)]
pub struct KernelReport {
    pub n: u8,
    pub degree: usize,
    pub order: BasisOrder,
    pub free_dim: usize,
    pub relation_rank: usize,
    pub quotient_dim: usize,
    pub target_dim: usize,
    pub boundary_rank: usize,
    pub kernel_dim: usize,
    /// Kernel basis in text form, one element per entry.
    pub kernel: Vec<String>,
}

/// Kernel of `∂` on the degree-`d` piece of the quotient of the free bimodule.
pub fn kernel_of_boundary(n: u8, d: usize, order: BasisOrder) -> Result<KernelReport> {
    kernel_with_quotient(n, d, order, Quotient::FULL)
}

/// As [`kernel_of_boundary`] with an explicit choice of quotiented families.
pub fn kernel_with_quotient(n: u8, d: usize, order: BasisOrder, q: Quotient) -> Result<KernelReport> {
    let span = DegreeSpan::build(n, d, q, order)?;
    let (_, target) = indexed(word_basis(n, d + 2), order);
    let cols = span.quotient_columns();
    let mut ech = Echelon::tracking();
    let mut kernel = Vec::new();
    for &c in &cols {
        let image = Element::from_bmon(n, span.basis[c as usize].clone(), Scalar::one()).boundary();
        let mut v: SparseVec<Rational> = SparseVec::new();
        for (w, x) in image.deg0() {
            v.insert(target[w], x.as_rational().expect("rational boundary"));
        }
        if let Insert::Dependent(combo) = ech.insert(v, c) {
            let mut k = Element::zero(n);
            for (col, f) in combo {
                k.add_term_bmon(span.basis[col as usize].clone(), crate::coeffs::Coeff::from_rational(f));
            }
            kernel.push(k);
        }
    }
    debug_assert!(kernel.iter().all(|k| k.boundary().is_zero()));
    Ok(KernelReport {
        n,
        degree: d,
        order,
        free_dim: span.basis.len(),
        relation_rank: span.rank(),
        quotient_dim: cols.len(),
        target_dim: target.len(),
        boundary_rank: ech.rank(),
        kernel_dim: kernel.len(),
        kernel: kernel.iter().map(|k| k.to_string()).collect(),
    })
}

/// Whether `x` lies in the span of the chosen families (exact).
pub fn in_relation_span(x: &Element, q: Quotient) -> Result<bool> {
    Ok(reduce_modulo_relations(&x.degm1_part(), q)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_kernels_vanish() {
        for (n, d) in [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1)] {
            for order in [BasisOrder::Forward, BasisOrder::Reversed] {
                let rep = kernel_of_boundary(n, d, order).unwrap();
                assert_eq!(rep.kernel_dim, 0, "n={n} d={d} {order:?}: {:?}", rep.kernel);
            }
        }
    }

    #[test]
    fn peiffer_elements_are_kernel_without_quotient() {
        let q = Quotient { relations: true, peiffer: false };
        let rep = kernel_with_quotient(2, 2, BasisOrder::Forward, q).unwrap();
        assert!(rep.kernel_dim > 0);
    }

    #[test]
    fn relations_are_kernel_without_quotient() {
        let rep = kernel_with_quotient(3, 1, BasisOrder::Forward, Quotient::FREE).unwrap();
        assert_eq!(rep.kernel_dim, 6);
    }

    #[test]
    fn peiffer_product_orders_agree_modulo_span() {
        let l = Element::l(2, 1, 2, 3);
        let r = Element::r(2, 1, 2, 3).mul(&Element::a(2, 1, 3));
        let diff = l.boundary().mul(&r).sub(&l.mul(&r.boundary()));
        assert!(diff.boundary().is_zero());
        assert!(in_relation_span(&diff, Quotient::FULL).unwrap());
        assert!(!in_relation_span(&diff, Quotient::FREE).unwrap());
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(DegreeSpan::build(6, 9, Quotient::FULL, BasisOrder::Forward), Err(Dk2Error::Overflow(_))));
    }
}
