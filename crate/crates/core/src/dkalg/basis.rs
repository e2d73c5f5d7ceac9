//! Enumeration of normal-form monomials by a-degree.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Dk2Error, Result};

use super::gens::{AGen, AWord, BGen, BMon};

/// Which graded piece to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Deg0,
    Degm1,
}

/// A monomial of either degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Monomial {
    Word(AWord),
    Mon(BMon),
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Monomial::Word(w) if w.is_empty() => f.write_str("1"),
            Monomial::Word(w) => write!(f, "{w}"),
            Monomial::Mon(m) => write!(f, "{m}"),
        }
    }
}

pub fn letters(n: u8) -> Vec<AGen> {
    let m = n + 1;
    (1..=m).flat_map(|i| (i + 1..=m).map(move |j| AGen { i, j })).collect()
}

pub fn generators(n: u8) -> Vec<BGen> {
    let m = n + 1;
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            for k in j + 1..=m {
                out.push(BGen::l(i, j, k));
                out.push(BGen::r(i, j, k));
            }
        }
    }
    out
}

/// Normal-form words of length `d`, in sorted order.
pub fn word_basis(n: u8, d: usize) -> Vec<AWord> {
    let alphabet = letters(n);
    let mut layer: BTreeSet<AWord> = BTreeSet::from([AWord::empty()]);
    for _ in 0..d {
        let mut next = BTreeSet::new();
        for w in &layer {
            for g in &alphabet {
                let mut v = w.letters().to_vec();
                v.push(*g);
                next.insert(AWord::from_letters(v));
            }
        }
        layer = next;
    }
    layer.into_iter().collect()
}

/// Normal-form degree-(-1) monomials with `|left| + |right| = d`, in sorted order.
pub fn bmon_basis(n: u8, d: usize) -> Vec<BMon> {
    bmon_basis_limited(n, d, usize::MAX).expect("no limit")
}

/// As [`bmon_basis`], failing with an overflow error once any layer exceeds `limit`.
pub fn bmon_basis_limited(n: u8, d: usize, limit: usize) -> Result<Vec<BMon>> {
    let alphabet = letters(n);
    let mut layer: BTreeSet<BMon> = generators(n).into_iter().map(BMon::generator).collect();
    for _ in 0..d {
        let mut next = BTreeSet::new();
        for m in &layer {
            for g in &alphabet {
                let mut right = m.right.letters().to_vec();
                right.push(*g);
                next.insert(BMon::normalize(m.left.letters().to_vec(), m.gen, right));
                let mut left = vec![*g];
                left.extend_from_slice(m.left.letters());
                next.insert(BMon::normalize(left, m.gen, m.right.letters().to_vec()));
            }
        }
        if next.len() > limit {
            return Err(Dk2Error::Overflow(format!("more than {limit} monomials at n={n}, degree {d}")));
        }
        layer = next;
    }
    Ok(layer.into_iter().collect())
}

/// Deterministically ordered basis of one graded piece.
pub fn graded_basis(n: u8, d: usize, part: Part) -> Vec<Monomial> {
    match part {
        Part::Deg0 => word_basis(n, d).into_iter().map(Monomial::Word).collect(),
        Part::Degm1 => bmon_basis(n, d).into_iter().map(Monomial::Mon).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let names: Vec<String> = graded_basis(2, 0, Part::Degm1).iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["[|l123|]", "[|r123|]"]);
        assert_eq!(graded_basis(2, 2, Part::Deg0).len(), 9);
        assert_eq!(graded_basis(3, 1, Part::Deg0).len(), 6);
        assert_eq!(graded_basis(2, 1, Part::Degm1).len(), 12);
    }

    #[test]
    fn word_count_matches_brute_force() {
        // Distinct normal forms of all 6^3 sequences.
        let alphabet = letters(3);
        let mut seen = BTreeSet::new();
        for a in &alphabet {
            for b in &alphabet {
                for c in &alphabet {
                    seen.insert(AWord::from_letters(vec![*a, *b, *c]));
                }
            }
        }
        assert_eq!(word_basis(3, 3).len(), seen.len());
    }

    #[test]
    fn bmon_count_matches_brute_force() {
        let alphabet = letters(3);
        let mut seen = BTreeSet::new();
        for g in generators(3) {
            for x in &alphabet {
                for y in &alphabet {
                    seen.insert(BMon::normalize(vec![*x, *y], g, vec![]));
                    seen.insert(BMon::normalize(vec![*x], g, vec![*y]));
                    seen.insert(BMon::normalize(vec![], g, vec![*x, *y]));
                }
            }
        }
        assert_eq!(bmon_basis(3, 2).len(), seen.len());
    }
}
