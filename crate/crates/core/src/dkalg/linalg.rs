//! Sparse exact row echelon forms over the rationals.
//!
//! Every stored row is scaled so that its pivot, the smallest column in its support, equals 1.
//! Reduction scans columns in ascending order, which terminates because eliminating with a row
//! only touches columns at or after its pivot.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::coeffs::{Rational, Scalar};

pub type SparseVec<C> = BTreeMap<u32, C>;

fn axpy<C: Scalar>(v: &mut SparseVec<C>, f: &C, row: &SparseVec<Rational>) {
    for (&col, x) in row {
        let delta = f.mul(&C::from_rational(x)).neg();
        let entry = v.entry(col).or_insert_with(C::zero);
        *entry = entry.add(&delta);
        if entry.is_zero() {
            v.remove(&col);
        }
    }
}

fn axpy_rat(v: &mut SparseVec<Rational>, f: &Rational, row: &SparseVec<Rational>) {
    for (&col, x) in row {
        let entry = v.entry(col).or_insert_with(<Rational as Zero>::zero);
        *entry -= f * x;
        if Zero::is_zero(entry) {
            v.remove(&col);
        }
    }
}

fn normalize(v: &mut SparseVec<Rational>) -> Option<u32> {
    let (&pivot, lead) = v.iter().next()?;
    let inv = lead.recip();
    for x in v.values_mut() {
        *x *= &inv;
    }
    Some(pivot)
}

/// Echelon basis of a row space, optionally tracking how each row combines the inserted
/// vectors.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<u32, (SparseVec<Rational>, SparseVec<Rational>)>,
    track: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Echelon form that records, for every row, its expression in the inserted vectors.
    pub fn tracking() -> Self {
        Echelon { rows: BTreeMap::new(), track: true }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.keys().copied()
    }

    /// Inserts `v` labelled `label` (the label is used only when tracking). Returns `None` if
    /// `v` was already in the span, together with the combination of earlier labels that
    /// reproduces it when tracking.
    pub fn insert(&mut self, mut v: SparseVec<Rational>, label: u32) -> Insert {
        let mut combo: SparseVec<Rational> = SparseVec::new();
        if self.track {
            combo.insert(label, <Rational as One>::one());
        }
        let mut cursor = 0u32;
        loop {
            let next = v.range(cursor..).next().map(|(&c, x)| (c, x.clone()));
            let Some((col, f)) = next else { break };
            match self.rows.get(&col) {
                Some((row, rc)) => {
                    axpy_rat(&mut v, &f, row);
                    if self.track {
                        axpy_rat(&mut combo, &f, rc);
                    }
                }
                None => break,
            }
            cursor = col + 1;
        }
        if v.is_empty() {
            return Insert::Dependent(combo);
        }
        let lead = v.values().next().unwrap().recip();
        if self.track {
            for x in combo.values_mut() {
                *x *= &lead;
            }
        }
        let pivot = normalize(&mut v).unwrap();
        self.rows.insert(pivot, (v, combo));
        Insert::Pivot(pivot)
    }

    /// Remainder of `v` after full reduction against the stored rows.
    pub fn reduce<C: Scalar>(&self, mut v: SparseVec<C>) -> SparseVec<C> {
        let mut cursor = 0u32;
        loop {
            let next = v.range(cursor..).next().map(|(&c, x)| (c, x.clone()));
            let Some((col, f)) = next else { break };
            if let Some((row, _)) = self.rows.get(&col) {
                axpy(&mut v, &f, row);
            }
            cursor = col + 1;
        }
        v
    }
}

/// Outcome of [`Echelon::insert`].
#[derive(Debug, Clone, PartialEq)]
pub enum Insert {
    Pivot(u32),
    /// The vector was in the span; with tracking, the combination of labels summing to zero.
    Dependent(SparseVec<Rational>),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;

    fn v(entries: &[(u32, i64)]) -> SparseVec<Rational> {
        entries.iter().map(|&(c, x)| (c, rat(x, 1))).collect()
    }

    #[test]
    fn rank_and_reduce() {
        let mut e = Echelon::new();
        assert_eq!(e.insert(v(&[(0, 1), (1, 1)]), 0), Insert::Pivot(0));
        assert_eq!(e.insert(v(&[(1, 2), (2, 2)]), 1), Insert::Pivot(1));
        assert!(matches!(e.insert(v(&[(0, 1), (2, -1)]), 2), Insert::Dependent(_)));
        assert_eq!(e.rank(), 2);
        let r = e.reduce(v(&[(0, 3), (2, 5)]));
        assert_eq!(r, v(&[(2, 8)]));
    }

    #[test]
    fn tracked_dependency_is_a_true_relation() {
        let vecs = [v(&[(0, 1), (1, 1)]), v(&[(1, 2), (2, 2)]), v(&[(0, 2), (2, -2)])];
        let mut e = Echelon::tracking();
        let mut dep = None;
        for (i, x) in vecs.iter().enumerate() {
            if let Insert::Dependent(c) = e.insert(x.clone(), i as u32) {
                dep = Some(c);
            }
        }
        let combo = dep.unwrap();
        let mut total: SparseVec<Rational> = SparseVec::new();
        for (&label, f) in &combo {
            axpy_rat(&mut total, &-f.clone(), &vecs[label as usize]);
        }
        assert!(total.is_empty());
        assert_eq!(combo.len(), 3);
    }
}
