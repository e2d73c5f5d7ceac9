//! Index notation: relators with permuted indices and strand cabling.

use std::collections::BTreeMap;
use std::fmt;

use crate::coeffs::Scalar;
use crate::error::{Dk2Error, Result};

use super::element::{Elem, Element};
use super::gens::{AGen, AWord, BGen, BKind};

/// `ℒ_{xyz}` or `ℛ_{xyz}` for three distinct strands in any order, written in terms of the
/// generators `ℓ`, `r` with increasing indices.
///
/// With `a < b < c` the sorted triple, `ℒ_{xyz}` is determined by the pair `{x, y}` and
/// `ℛ_{xyz}` by `{y, z}`: the pair `{a, b}` gives `ℓ_abc`, `{b, c}` gives `r_abc` and
/// `{a, c}` gives `-ℓ_abc - r_abc`.
pub fn perm_relator(kind: BKind, idx: [u8; 3], n: u8) -> Result<Element> {
    let [x, y, z] = idx;
    if x == y || y == z || x == z {
        return Err(Dk2Error::InvalidIndex(format!("repeated index in {x}{y}{z}")));
    }
    let mut s = idx;
    s.sort_unstable();
    if s[0] == 0 || s[2] > n + 1 {
        return Err(Dk2Error::InvalidIndex(format!("{x}{y}{z} outside ambient {n}")));
    }
    let [a, b, c] = s;
    let pair = match kind {
        BKind::L => (x.min(y), x.max(y)),
        BKind::R => (y.min(z), y.max(z)),
    };
    let l = Element::l(n, a, b, c);
    let r = Element::r(n, a, b, c);
    Ok(if pair == (a, b) {
        l
    } else if pair == (b, c) {
        r
    } else {
        l.add(&r).neg()
    })
}

/// Cabling and relabelling of strands: source strand `s` goes to the set `images[s-1]` of
/// target strands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandMap {
    images: Vec<Vec<u8>>,
    target_n: u8,
}

impl StrandMap {
    /// Validates that the image sets are nonempty, pairwise disjoint and lie in
    /// `1..=target_n+1`.
    pub fn new(images: Vec<Vec<u8>>, target_n: u8) -> Result<Self> {
        if images.len() < 2 {
            return Err(Dk2Error::InvalidStrandMap("need at least two source strands".into()));
        }
        let mut seen = vec![false; target_n as usize + 2];
        for set in &images {
            if set.is_empty() {
                return Err(Dk2Error::InvalidStrandMap("empty image set".into()));
            }
            for &t in set {
                if t == 0 || t > target_n + 1 {
                    return Err(Dk2Error::InvalidStrandMap(format!("strand {t} outside ambient {target_n}")));
                }
                if std::mem::replace(&mut seen[t as usize], true) {
                    return Err(Dk2Error::InvalidStrandMap(format!("strand {t} used twice")));
                }
            }
        }
        Ok(StrandMap { images, target_n })
    }

    pub fn identity(n: u8) -> Self {
        StrandMap { images: (1..=n + 1).map(|s| vec![s]).collect(), target_n: n }
    }

    /// Relabelling `s ↦ perm[s-1]`.
    pub fn permutation(perm: &[u8]) -> Result<Self> {
        let n = perm.len().checked_sub(1).ok_or_else(|| Dk2Error::InvalidStrandMap("empty".into()))?;
        Self::new(perm.iter().map(|&p| vec![p]).collect(), n as u8)
    }

    /// Parses index notation such as `1(23)4` or `(12)34`: each digit or parenthesized
    /// group is the image of the next source strand.
    pub fn parse(s: &str, target_n: u8) -> Result<Self> {
        let mut images = Vec::new();
        let mut group: Option<Vec<u8>> = None;
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            match ch {
                '(' if group.is_none() => group = Some(Vec::new()),
                ')' => images.push(group.take().ok_or_else(|| Dk2Error::Parse(format!("unbalanced `{s}`")))?),
                d if d.is_ascii_digit() => {
                    let v = d.to_digit(10).unwrap() as u8;
                    match group.as_mut() {
                        Some(g) => g.push(v),
                        None => images.push(vec![v]),
                    }
                }
                _ => return Err(Dk2Error::Parse(format!("bad strand notation `{s}`"))),
            }
        }
        if group.is_some() {
            return Err(Dk2Error::Parse(format!("unbalanced `{s}`")));
        }
        Self::new(images, target_n)
    }

    pub fn source_n(&self) -> u8 {
        (self.images.len() - 1) as u8
    }

    pub fn target_n(&self) -> u8 {
        self.target_n
    }

    pub fn images(&self) -> &[Vec<u8>] {
        &self.images
    }

    /// Inverse of a bijective relabelling.
    pub fn inverse(&self) -> Result<Self> {
        if self.images.iter().any(|s| s.len() != 1) || self.images.len() != self.target_n as usize + 1 {
            return Err(Dk2Error::InvalidStrandMap("only permutations are invertible".into()));
        }
        let mut inv = vec![0u8; self.images.len()];
        for (s, set) in self.images.iter().enumerate() {
            inv[set[0] as usize - 1] = s as u8 + 1;
        }
        Self::permutation(&inv)
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &StrandMap) -> Result<Self> {
        if first.target_n != self.source_n() {
            return Err(Dk2Error::InvalidStrandMap("composable maps need matching ambients".into()));
        }
        let images = first
            .images
            .iter()
            .map(|set| {
                let mut v: Vec<u8> = set.iter().flat_map(|&t| self.images[t as usize - 1].clone()).collect();
                v.sort_unstable();
                v
            })
            .collect();
        Self::new(images, self.target_n)
    }

    fn image(&self, s: u8) -> &[u8] {
        &self.images[s as usize - 1]
    }

    fn letter_image<C: Scalar>(&self, g: &AGen) -> Elem<C> {
        let mut out = Elem::zero(self.target_n);
        for &x in self.image(g.i) {
            for &y in self.image(g.j) {
                let w = AWord::from_letters(vec![AGen::new(x, y).expect("disjoint images")]);
                out.add_term_word(w, C::one());
            }
        }
        out
    }

    fn gen_image<C: Scalar>(&self, g: &BGen) -> Elem<C> {
        let mut out = Elem::zero(self.target_n);
        for &x in self.image(g.i) {
            for &y in self.image(g.j) {
                for &z in self.image(g.k) {
                    let e = perm_relator(g.kind, [x, y, z], self.target_n).expect("disjoint images");
                    out.add_assign(&e.map_coeffs(|c| C::from_rational(&c.as_rational().unwrap())));
                }
            }
        }
        out
    }

    fn word_image<C: Scalar>(&self, w: &AWord, cache: &mut BTreeMap<AGen, Elem<C>>) -> Elem<C> {
        let mut acc = Elem::one(self.target_n);
        for g in w.letters() {
            let img = cache.entry(*g).or_insert_with(|| self.letter_image(g));
            acc = acc.mul(img);
        }
        acc
    }

    /// Generator-wise substitution, extended multiplicatively.
    pub fn apply<C: Scalar>(&self, x: &Elem<C>) -> Result<Elem<C>> {
        if x.ambient() != self.source_n() {
            return Err(Dk2Error::InvalidStrandMap(format!(
                "map acts on ambient {}, element has ambient {}",
                self.source_n(),
                x.ambient()
            )));
        }
        let mut cache = BTreeMap::new();
        let mut out = Elem::zero(self.target_n);
        for (w, c) in x.deg0() {
            out.add_assign(&self.word_image(w, &mut cache).scale(c));
        }
        for (m, c) in x.degm1() {
            let left = self.word_image(&m.left, &mut cache);
            let right = self.word_image(&m.right, &mut cache);
            out.add_assign(&left.mul(&self.gen_image(&m.gen)).mul(&right).scale(c));
        }
        Ok(out)
    }
}

impl fmt::Display for StrandMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for set in &self.images {
            if set.len() == 1 {
                write!(f, "{}", set[0])?;
            } else {
                f.write_str("(")?;
                for t in set {
                    write!(f, "{t}")?;
                }
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

/// Exact cabling of an element.
pub fn cabling(m: &StrandMap, x: &Element) -> Result<Element> {
    m.apply(x)
}

/// `t_{XY}` in index notation, e.g. `t("1(23)", 3)` is `a12 + a13`.
pub fn t(notation: &str, n: u8) -> Result<Element> {
    let m = StrandMap::parse(notation, n)?;
    if m.source_n() != 1 {
        return Err(Dk2Error::Parse(format!("`{notation}` must name two strand groups")));
    }
    m.apply(&Element::a(1, 1, 2))
}

/// `ℒ_{XYZ}` or `ℛ_{XYZ}` in index notation, e.g. `relator(BKind::L, "1(23)4", 3)`.
pub fn relator(kind: BKind, notation: &str, n: u8) -> Result<Element> {
    let m = StrandMap::parse(notation, n)?;
    if m.source_n() != 2 {
        return Err(Dk2Error::Parse(format!("`{notation}` must name three strand groups")));
    }
    m.apply(&Element::gen(2, BGen { i: 1, j: 2, k: 3, kind }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(n: u8, s: &str) -> Element {
        Element::parse(n, s).unwrap()
    }

    #[test]
    fn symmetry_table() {
        let l = e(2, "[|l123|]");
        assert_eq!(perm_relator(BKind::L, [2, 1, 3], 2).unwrap(), l);
        assert_eq!(perm_relator(BKind::R, [3, 2, 1], 2).unwrap(), l);
        assert_eq!(perm_relator(BKind::R, [3, 1, 2], 2).unwrap(), l);
        assert_eq!(perm_relator(BKind::L, [1, 3, 2], 2).unwrap(), e(2, "(-1)*[|l123|] + (-1)*[|r123|]"));
        assert!(perm_relator(BKind::L, [1, 1, 2], 2).is_err());
    }

    #[test]
    fn coherence_sign_matches_boundary() {
        // ∂ℒ_{132} = [a13, a12 + a23].
        let lhs = perm_relator(BKind::L, [1, 3, 2], 2).unwrap().boundary();
        let a13 = Element::a(2, 1, 3);
        let rhs = a13.bracket(&Element::a(2, 1, 2).add(&Element::a(2, 2, 3)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn every_permuted_relator_has_the_expected_boundary() {
        let perms = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];
        let a = |i: u8, j: u8| Element::a(2, i, j);
        for [x, y, z] in perms {
            let l = perm_relator(BKind::L, [x, y, z], 2).unwrap();
            assert_eq!(l.boundary(), a(x, y).bracket(&a(x, z).add(&a(y, z))));
            let r = perm_relator(BKind::R, [x, y, z], 2).unwrap();
            assert_eq!(r.boundary(), a(y, z).bracket(&a(x, y).add(&a(x, z))));
        }
    }

    #[test]
    fn cabling_examples() {
        assert_eq!(t("(12)3", 2).unwrap(), e(2, "a13 + a23"));
        assert_eq!(relator(BKind::L, "1(23)4", 3).unwrap(), e(3, "[|l124|] + [|l134|]"));
        assert_eq!(relator(BKind::L, "12(34)", 3).unwrap(), e(3, "[|l123|] + [|l124|]"));
        let x = e(3, "3/2*a12.a34 + (-1)*[a12|l123|a23.a24]");
        assert_eq!(cabling(&StrandMap::identity(3), &x).unwrap(), x);
        assert!(StrandMap::new(vec![vec![1, 2], vec![2]], 2).is_err());
        assert_eq!(StrandMap::parse("1(23)4", 3).unwrap().to_string(), "1(23)4");
    }

    #[test]
    fn cabling_commutes_with_boundary_on_generators() {
        let maps = ["(12)34", "1(23)4", "12(34)", "(14)23", "(13)24", "4(12)3", "3(24)1"];
        for notation in maps {
            let m = StrandMap::parse(notation, 3).unwrap();
            for kind in [BKind::L, BKind::R] {
                let g = Element::gen(2, BGen { i: 1, j: 2, k: 3, kind });
                let lhs = m.apply(&g).unwrap().boundary();
                let rhs = m.apply(&g.boundary()).unwrap();
                assert_eq!(lhs, rhs, "{notation} {kind:?}");
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn permutation_then_inverse_is_identity(
            x in crate::dkalg::element::tests::arb_element(3, 4),
            perm in Just(vec![1u8, 2, 3, 4]).prop_shuffle(),
        ) {
            let m = StrandMap::permutation(&perm).unwrap();
            let back = m.inverse().unwrap().apply(&m.apply(&x).unwrap()).unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn permutation_commutes_with_boundary(
            x in crate::dkalg::element::tests::arb_element(3, 4),
            perm in Just(vec![1u8, 2, 3, 4]).prop_shuffle(),
        ) {
            let m = StrandMap::permutation(&perm).unwrap();
            prop_assert_eq!(m.apply(&x).unwrap().boundary(), m.apply(&x.boundary()).unwrap());
        }
    }
}
