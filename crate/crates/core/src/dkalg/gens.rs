//! Generators and normalized monomials of the free Drinfeld-Kohno model.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Dk2Error, Result};

/// Degree-0 generator `a_ij`, stored with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AGen {
    pub i: u8,
    pub j: u8,
}

impl AGen {
    /// `a_ij` for distinct strands, reordering so that `i < j`.
    pub fn new(i: u8, j: u8) -> Result<Self> {
        if i == j || i == 0 || j == 0 {
            return Err(Dk2Error::InvalidIndex(format!("a{i}{j}")));
        }
        Ok(AGen { i: i.min(j), j: i.max(j) })
    }

    /// Two letters commute exactly when their index pairs are disjoint.
    pub fn commutes_with(&self, other: &AGen) -> bool {
        self.i != other.i && self.i != other.j && self.j != other.i && self.j != other.j
    }

    pub fn touches(&self, strand: u8) -> bool {
        self.i == strand || self.j == strand
    }

    pub fn max_index(&self) -> u8 {
        self.j
    }
}

impl fmt::Display for AGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}{}", self.i, self.j)
    }
}

/// Word in the `a_ij`, kept in trace normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct AWord(Vec<AGen>);

impl AWord {
    pub fn empty() -> Self {
        AWord(Vec::new())
    }

    pub fn letters(&self) -> &[AGen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Normal form of an arbitrary letter sequence; no range check.
    pub fn from_letters(letters: Vec<AGen>) -> Self {
        AWord(normal_form(letters))
    }

    /// Concatenation followed by normalization.
    pub fn concat(&self, other: &AWord) -> AWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        AWord::from_letters(v)
    }

}

impl fmt::Display for AWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

/// Lexicographically least word in the commutation class of `letters`.
///
/// Repeatedly emits the smallest letter that can be brought to the front through swaps with
/// disjoint letters only.
fn normal_form(mut rest: Vec<AGen>) -> Vec<AGen> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for p in 0..rest.len() {
            let free = rest[..p].iter().all(|x| x.commutes_with(&rest[p]));
            if free && best.is_none_or(|b| rest[p] < rest[b]) {
                best = Some(p);
            }
        }
        let b = best.expect("the first letter is always free");
        out.push(rest.remove(b));
    }
    out
}

/// Checks every index against the ambient `n` (strands `1..=n+1`) and normalizes.
pub fn aword_normalize(seq: &[AGen], n: u8) -> Result<AWord> {
    for g in seq {
        if g.j > n + 1 || g.i == 0 || g.i >= g.j {
            return Err(Dk2Error::InvalidIndex(format!("{g} is outside 1..={}", n + 1)));
        }
    }
    Ok(AWord::from_letters(seq.to_vec()))
}

/// Kind of a degree-(-1) generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BKind {
    L,
    R,
}

/// Degree-(-1) generator `ℓ_ijk` or `r_ijk` with `i < j < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BGen {
    pub i: u8,
    pub j: u8,
    pub k: u8,
    pub kind: BKind,
}

impl BGen {
    pub fn new(kind: BKind, i: u8, j: u8, k: u8) -> Result<Self> {
        if !(0 < i && i < j && j < k) {
            return Err(Dk2Error::InvalidIndex(format!("triple ({i},{j},{k}) must increase")));
        }
        Ok(BGen { i, j, k, kind })
    }

    pub fn l(i: u8, j: u8, k: u8) -> Self {
        Self::new(BKind::L, i, j, k).expect("increasing triple")
    }

    pub fn r(i: u8, j: u8, k: u8) -> Self {
        Self::new(BKind::R, i, j, k).expect("increasing triple")
    }

    /// Relation (iii): `a` commutes with the generator when disjoint from its triple.
    pub fn commutes_with(&self, a: &AGen) -> bool {
        ![self.i, self.j, self.k].iter().any(|&s| a.touches(s))
    }

    /// `∂ℓ_ijk = [a_ij, a_ik + a_jk]` and `∂r_ijk = [a_jk, a_ij + a_ik]` as signed two-letter words.
    pub fn boundary_words(&self) -> [(i64, [AGen; 2]); 4] {
        let a = |x: u8, y: u8| AGen { i: x, j: y };
        let (i, j, k) = (self.i, self.j, self.k);
        let (head, t1, t2) = match self.kind {
            BKind::L => (a(i, j), a(i, k), a(j, k)),
            BKind::R => (a(j, k), a(i, j), a(i, k)),
        };
        [(1, [head, t1]), (1, [head, t2]), (-1, [t1, head]), (-1, [t2, head])]
    }
}

impl fmt::Display for BGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            BKind::L => 'l',
            BKind::R => 'r',
        };
        write!(f, "{c}{}{}{}", self.i, self.j, self.k)
    }
}

/// Degree-(-1) monomial `left · gen · right`.
///
/// Letters of `left` that can be moved past the generator using relation (iii) live in `right`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BMon {
    pub left: AWord,
    pub gen: BGen,
    pub right: AWord,
}

impl BMon {
    pub fn generator(gen: BGen) -> Self {
        BMon { left: AWord::empty(), gen, right: AWord::empty() }
    }

    /// Normal form of `left · gen · right` for arbitrary letter sequences.
    pub fn normalize(left: Vec<AGen>, gen: BGen, right: Vec<AGen>) -> Self {
        // A letter must stay left of the generator if it fails to commute with the generator
        // or with a later letter that has to stay.
        let mut stay = vec![false; left.len()];
        for p in (0..left.len()).rev() {
            let x = &left[p];
            stay[p] = !gen.commutes_with(x)
                || ((p + 1)..left.len()).any(|q| stay[q] && !x.commutes_with(&left[q]));
        }
        let mut kept = Vec::new();
        let mut moved = Vec::new();
        for (x, s) in left.into_iter().zip(stay) {
            if s {
                kept.push(x);
            } else {
                moved.push(x);
            }
        }
        moved.extend(right);
        BMon { left: AWord::from_letters(kept), gen, right: AWord::from_letters(moved) }
    }

    pub fn degree(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn max_index(&self) -> u8 {
        let w = self.left.letters().iter().chain(self.right.letters()).map(|a| a.j);
        w.max().unwrap_or(0).max(self.gen.k)
    }
}

impl fmt::Display for BMon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}|{}|{}]", self.left, self.gen, self.right)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(i: u8, j: u8) -> AGen {
        AGen::new(i, j).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(aword_normalize(&[a(3, 4), a(1, 2)], 3).unwrap().letters(), &[a(1, 2), a(3, 4)]);
        assert_eq!(aword_normalize(&[a(1, 3), a(1, 2)], 3).unwrap().letters(), &[a(1, 3), a(1, 2)]);
        assert_eq!(
            aword_normalize(&[a(2, 3), a(1, 4), a(2, 3)], 3).unwrap().letters(),
            &[a(1, 4), a(2, 3), a(2, 3)]
        );
        assert!(aword_normalize(&[a(1, 5)], 3).is_err());
    }

    /// Brute-force oracle: the lexicographically least word reachable by disjoint swaps.
    fn brute_force(w: Vec<AGen>) -> Vec<AGen> {
        use std::collections::BTreeSet;
        let mut seen = BTreeSet::new();
        let mut stack = vec![w];
        while let Some(cur) = stack.pop() {
            if !seen.insert(cur.clone()) {
                continue;
            }
            for p in 0..cur.len().saturating_sub(1) {
                if cur[p].commutes_with(&cur[p + 1]) {
                    let mut nxt = cur.clone();
                    nxt.swap(p, p + 1);
                    stack.push(nxt);
                }
            }
        }
        seen.into_iter().next().unwrap()
    }

    #[test]
    fn bmon_slides_disjoint_letters_right() {
        let m = BMon::normalize(vec![a(4, 5), a(1, 2)], BGen::l(1, 2, 3), vec![]);
        assert_eq!(m.left.letters(), &[a(1, 2)]);
        assert_eq!(m.right.letters(), &[a(4, 5)]);
        // a45 cannot pass a15, which cannot pass l123.
        let m = BMon::normalize(vec![a(4, 5), a(1, 5)], BGen::l(1, 2, 3), vec![]);
        assert_eq!(m.left.letters(), &[a(4, 5), a(1, 5)]);
        assert!(m.right.is_empty());
    }

    fn arb_word(max: u8) -> impl Strategy<Value = Vec<AGen>> {
        prop::collection::vec((1..=max, 1..=max), 0..7).prop_map(|v| {
            v.into_iter().filter(|(i, j)| i != j).map(|(i, j)| AGen::new(i, j).unwrap()).collect()
        })
    }

    proptest! {
        #[test]
        fn normal_form_matches_brute_force(w in arb_word(5)) {
            prop_assert_eq!(AWord::from_letters(w.clone()).letters().to_vec(), brute_force(w));
        }

        #[test]
        fn normal_form_is_class_invariant(w in arb_word(5), swaps in prop::collection::vec(0usize..8, 0..10)) {
            let nf = AWord::from_letters(w.clone());
            prop_assert_eq!(AWord::from_letters(nf.letters().to_vec()), nf.clone());
            let mut v = w;
            for s in swaps {
                if s + 1 < v.len() && v[s].commutes_with(&v[s + 1]) {
                    v.swap(s, s + 1);
                }
            }
            prop_assert_eq!(AWord::from_letters(v), nf);
        }

        #[test]
        fn bmon_normal_form_is_class_invariant(l in arb_word(5), r in arb_word(5)) {
            let g = BGen::r(1, 3, 4);
            let base = BMon::normalize(l.clone(), g, r.clone());
            // Move one letter of the right word across the generator when relation (iii) allows.
            if let Some(x) = r.first() {
                if g.commutes_with(x) {
                    let mut l2 = l.clone();
                    l2.push(*x);
                    prop_assert_eq!(BMon::normalize(l2, g, r[1..].to_vec()), base.clone());
                }
            }
            prop_assert_eq!(BMon::normalize(base.left.letters().to_vec(), g, base.right.letters().to_vec()), base);
        }
    }
}
