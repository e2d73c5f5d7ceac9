//! Elements of the free 2-algebra with an arbitrary coefficient backend.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::coeffs::{Coeff, Scalar};
use crate::error::{Dk2Error, Result};

use super::gens::{AGen, AWord, BGen, BMon};

/// Element of `A ⊕ B`: a degree-0 part on normalized words and a degree-(-1) part on
/// normalized word-generator-word monomials. `n` is the ambient index (strands `1..=n+1`).
#[derive(Debug, Clone, PartialEq)]
pub struct Elem<C: Scalar> {
    n: u8,
    deg0: BTreeMap<AWord, C>,
    degm1: BTreeMap<BMon, C>,
}

/// Element with exact coefficients.
pub type Element = Elem<Coeff>;

fn add_into<K: Ord, C: Scalar>(map: &mut BTreeMap<K, C>, key: K, c: C) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().add(&c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl<C: Scalar> Elem<C> {
    pub fn zero(n: u8) -> Self {
        Elem { n, deg0: BTreeMap::new(), degm1: BTreeMap::new() }
    }

    pub fn one(n: u8) -> Self {
        Self::from_word(n, AWord::empty(), C::one())
    }

    pub fn scalar(n: u8, c: C) -> Self {
        Self::from_word(n, AWord::empty(), c)
    }

    pub fn from_word(n: u8, w: AWord, c: C) -> Self {
        let mut e = Self::zero(n);
        add_into(&mut e.deg0, w, c);
        e
    }

    pub fn from_bmon(n: u8, m: BMon, c: C) -> Self {
        let mut e = Self::zero(n);
        add_into(&mut e.degm1, m, c);
        e
    }

    /// The generator `a_ij` (indices in either order).
    pub fn a(n: u8, i: u8, j: u8) -> Self {
        let g = AGen::new(i, j).expect("distinct strands");
        assert!(g.j <= n + 1, "a{i}{j} outside ambient {n}");
        Self::from_word(n, AWord::from_letters(vec![g]), C::one())
    }

    pub fn gen(n: u8, g: BGen) -> Self {
        assert!(g.k <= n + 1, "{g} outside ambient {n}");
        Self::from_bmon(n, BMon::generator(g), C::one())
    }

    pub fn l(n: u8, i: u8, j: u8, k: u8) -> Self {
        Self::gen(n, BGen::l(i, j, k))
    }

    pub fn r(n: u8, i: u8, j: u8, k: u8) -> Self {
        Self::gen(n, BGen::r(i, j, k))
    }

    pub fn ambient(&self) -> u8 {
        self.n
    }

    pub fn deg0(&self) -> &BTreeMap<AWord, C> {
        &self.deg0
    }

    pub fn degm1(&self) -> &BTreeMap<BMon, C> {
        &self.degm1
    }

    pub fn is_zero(&self) -> bool {
        self.deg0.is_empty() && self.degm1.is_empty()
    }

    pub fn is_deg0(&self) -> bool {
        self.degm1.is_empty()
    }

    pub fn is_degm1(&self) -> bool {
        self.deg0.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.deg0.len() + self.degm1.len()
    }

    /// Projection onto the degree-0 part.
    pub fn deg0_part(&self) -> Self {
        Elem { n: self.n, deg0: self.deg0.clone(), degm1: BTreeMap::new() }
    }

    /// Projection onto the degree-(-1) part.
    pub fn degm1_part(&self) -> Self {
        Elem { n: self.n, deg0: BTreeMap::new(), degm1: self.degm1.clone() }
    }

    /// Same element viewed in a larger ambient.
    pub fn with_ambient(&self, n: u8) -> Result<Self> {
        let max = self.max_index();
        if max > n + 1 {
            return Err(Dk2Error::InvalidIndex(format!("index {max} exceeds ambient {n}")));
        }
        Ok(Elem { n, deg0: self.deg0.clone(), degm1: self.degm1.clone() })
    }

    pub fn max_index(&self) -> u8 {
        let a = self.deg0.keys().flat_map(|w| w.letters().iter().map(|g| g.j)).max().unwrap_or(0);
        let b = self.degm1.keys().map(|m| m.max_index()).max().unwrap_or(0);
        a.max(b)
    }

    pub fn add_term_word(&mut self, w: AWord, c: C) {
        add_into(&mut self.deg0, w, c);
    }

    pub fn add_term_bmon(&mut self, m: BMon, c: C) {
        add_into(&mut self.degm1, m, c);
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Dk2Error::AmbientMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.n, other.n, "ambient mismatch");
        for (w, c) in &other.deg0 {
            add_into(&mut self.deg0, w.clone(), c.clone());
        }
        for (m, c) in &other.degm1 {
            add_into(&mut self.degm1, m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.n);
        }
        self.map_coeffs(|c| c.mul(s))
    }

    /// Applies `f` to every coefficient, dropping those that become zero.
    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Elem<D> {
        let mut out = Elem::zero(self.n);
        for (w, c) in &self.deg0 {
            add_into(&mut out.deg0, w.clone(), f(c));
        }
        for (m, c) in &self.degm1 {
            add_into(&mut out.degm1, m.clone(), f(c));
        }
        out
    }

    /// Fallible version of [`Elem::mul`].
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    /// Product in the 2-algebra. Two degree-(-1) factors meet through the Peiffer rule
    /// `b'·b := ∂(b')·b`.
    ///
    /// # Panics
    /// Panics if the ambients differ; use [`Elem::checked_mul`] to get an error instead.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "ambient mismatch");
        let mut out = Self::zero(self.n);
        for (w1, c1) in &self.deg0 {
            for (w2, c2) in &other.deg0 {
                add_into(&mut out.deg0, w1.concat(w2), c1.mul(c2));
            }
            for (m, c2) in &other.degm1 {
                let mut left = w1.letters().to_vec();
                left.extend_from_slice(m.left.letters());
                let bm = BMon::normalize(left, m.gen, m.right.letters().to_vec());
                add_into(&mut out.degm1, bm, c1.mul(c2));
            }
        }
        for (m, c1) in &self.degm1 {
            for (w2, c2) in &other.deg0 {
                let mut right = m.right.letters().to_vec();
                right.extend_from_slice(w2.letters());
                let bm = BMon::normalize(m.left.letters().to_vec(), m.gen, right);
                add_into(&mut out.degm1, bm, c1.mul(c2));
            }
        }
        if !self.degm1.is_empty() && !other.degm1.is_empty() {
            let lhs = self.degm1_part().boundary();
            out.add_assign(&lhs.mul(&other.degm1_part()));
        }
        out
    }

    /// `x^k` for a degree-0 element.
    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| acc.mul(self))
    }

    /// Commutator `x·y - y·x` (bimodule action when one side has degree -1).
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// The differential: zero on degree 0, and `w₁·g·w₂ ↦ w₁·∂(g)·w₂` on degree -1.
    pub fn boundary(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.degm1 {
            for (s, [x, y]) in m.gen.boundary_words() {
                let mut letters = m.left.letters().to_vec();
                letters.push(x);
                letters.push(y);
                letters.extend_from_slice(m.right.letters());
                add_into(&mut out.deg0, AWord::from_letters(letters), c.mul(&C::from_i64(s)));
            }
        }
        out
    }

    /// Homogeneous component of total weight `m`, where letters weigh 1 and generators 2.
    pub fn weight_part(&self, m: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (w, c) in &self.deg0 {
            if w.len() == m {
                out.deg0.insert(w.clone(), c.clone());
            }
        }
        for (b, c) in &self.degm1 {
            if b.degree() + 2 == m {
                out.degm1.insert(b.clone(), c.clone());
            }
        }
        out
    }

    /// Largest coefficient magnitude, `0.0` for the zero element.
    pub fn max_magnitude(&self) -> f64 {
        self.deg0.values().chain(self.degm1.values()).map(|c| c.magnitude()).fold(0.0, f64::max)
    }
}

impl Element {
    /// Numeric image with every coefficient evaluated by [`Coeff::eval`].
    pub fn eval(&self, eps: Option<f64>, tol: f64) -> Result<Elem<num_complex::Complex64>> {
        let mut out = Elem::zero(self.n);
        for (w, c) in &self.deg0 {
            add_into(&mut out.deg0, w.clone(), c.eval(eps, tol)?);
        }
        for (m, c) in &self.degm1 {
            add_into(&mut out.degm1, m.clone(), c.eval(eps, tol)?);
        }
        Ok(out)
    }

    /// Scales by a rational.
    pub fn scale_rational(&self, r: &crate::coeffs::Rational) -> Self {
        self.scale(&Coeff::from_rational(r.clone()))
    }
}

fn coeff_prefix<C: Scalar + CoeffText>(c: &C) -> String {
    match c.simple_text() {
        Some(s) if s == "1" => String::new(),
        Some(s) => format!("{s}*"),
        None => format!("({})*", c.full_text()),
    }
}

/// Text rendering hooks for the element printer.
pub trait CoeffText {
    /// Bare text when the coefficient is a positive constant.
    fn simple_text(&self) -> Option<String>;
    fn full_text(&self) -> String;
}

impl CoeffText for Coeff {
    fn simple_text(&self) -> Option<String> {
        use num_traits::Signed;
        self.as_rational().filter(|r| r.is_positive()).map(|r| crate::coeffs::rational_to_text(&r))
    }
    fn full_text(&self) -> String {
        self.to_string()
    }
}

impl CoeffText for f64 {
    fn simple_text(&self) -> Option<String> {
        (*self > 0.0).then(|| format!("{self:e}"))
    }
    fn full_text(&self) -> String {
        format!("{self:e}")
    }
}

impl CoeffText for num_complex::Complex64 {
    fn simple_text(&self) -> Option<String> {
        None
    }
    fn full_text(&self) -> String {
        format!("{:e}{:+e}i", self.re, self.im)
    }
}

impl<C: Scalar + CoeffText> fmt::Display for Elem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (w, c) in &self.deg0 {
            let word = if w.is_empty() { "1".to_string() } else { w.to_string() };
            let pre = coeff_prefix(c);
            if w.is_empty() && !pre.is_empty() {
                parts.push(pre.trim_end_matches('*').to_string());
            } else {
                parts.push(format!("{pre}{word}"));
            }
        }
        for (m, c) in &self.degm1 {
            parts.push(format!("{}{m}", coeff_prefix(c)));
        }
        f.write_str(&parts.join(" + "))
    }
}

impl Element {
    /// Parses the text form `3/2*a12.a34 + (-1)*[a12|l123|a23.a24]`.
    pub fn parse(n: u8, s: &str) -> Result<Self> {
        super::text::parse_element(n, s)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::coeffs::rat;
    use proptest::prelude::*;

    type E = Element;

    fn word(n: u8, pairs: &[(u8, u8)]) -> E {
        pairs.iter().fold(E::one(n), |acc, &(i, j)| acc.mul(&E::a(n, i, j)))
    }

    #[test]
    fn left_action_example() {
        let x = E::a(2, 1, 2).mul(&E::l(2, 1, 2, 3));
        assert_eq!(x.to_string(), "[a12|l123|]");
    }

    #[test]
    fn boundary_examples() {
        let b = E::l(2, 1, 2, 3).boundary();
        let expected = word(2, &[(1, 2), (1, 3)])
            .add(&word(2, &[(1, 2), (2, 3)]))
            .sub(&word(2, &[(1, 3), (1, 2)]))
            .sub(&word(2, &[(2, 3), (1, 2)]));
        assert_eq!(b, expected);
        assert!(E::a(2, 1, 2).boundary().is_zero());
        assert!(E::l(2, 1, 2, 3).boundary().boundary().is_zero());
    }

    #[test]
    fn peiffer_product_example() {
        let l = E::l(2, 1, 2, 3);
        let r = E::r(2, 1, 2, 3);
        let prod = l.mul(&r);
        assert_eq!(prod, l.boundary().mul(&r));
        assert_eq!(prod.degm1().len(), 4);
        assert!(prod.is_degm1());
    }

    #[test]
    fn unit_and_ambient() {
        let x = E::l(3, 1, 2, 4).add(&E::a(3, 3, 4).scale_rational(&rat(3, 2)));
        assert_eq!(E::one(3).mul(&x), x);
        assert_eq!(x.mul(&E::one(3)), x);
        assert!(E::one(2).checked_mul(&x).is_err());
    }

    #[test]
    fn text_format() {
        let x = word(3, &[(3, 4), (1, 2)]).scale_rational(&rat(3, 2));
        let y = word(3, &[(1, 2)]).mul(&E::l(3, 1, 2, 3)).mul(&word(3, &[(2, 3), (2, 4)])).neg();
        let s = x.add(&y).to_string();
        assert_eq!(s, "3/2*a12.a34 + (-1)*[a12|l123|a23.a24]");
        assert_eq!(E::parse(3, &s).unwrap(), x.add(&y));
    }

    pub(crate) fn arb_element(n: u8, max_terms: usize) -> impl Strategy<Value = E> {
        let strands = n + 1;
        let letter = (1..=strands, 1..=strands).prop_filter("distinct", |(i, j)| i != j);
        let wordgen = prop::collection::vec(letter, 0..3);
        let triple = (1..=strands, 1..=strands, 1..=strands)
            .prop_filter("distinct", |(i, j, k)| i != j && j != k && i != k);
        let term = (wordgen.clone(), prop::option::of((any::<bool>(), triple, wordgen)), -3i64..4);
        prop::collection::vec(term, 0..max_terms).prop_map(move |terms| {
            let mut acc = E::zero(n);
            for (w1, g, c) in terms {
                let mut t = E::scalar(n, Coeff::from_int(c));
                for (i, j) in w1 {
                    t = t.mul(&E::a(n, i, j));
                }
                if let Some((is_l, (i, j, k), w2)) = g {
                    let mut s = [i, j, k];
                    s.sort();
                    let b = if is_l { E::l(n, s[0], s[1], s[2]) } else { E::r(n, s[0], s[1], s[2]) };
                    t = t.mul(&b);
                    for (i, j) in w2 {
                        t = t.mul(&E::a(n, i, j));
                    }
                }
                acc.add_assign(&t);
            }
            acc
        })
    }

    fn arb_word_elem(n: u8) -> impl Strategy<Value = E> {
        let strands = n + 1;
        let letter = (1..=strands, 1..=strands).prop_filter("distinct", |(i, j)| i != j);
        prop::collection::vec(letter, 0..4).prop_map(move |v| word(n, &v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn mul_is_associative(x in arb_element(3, 3), y in arb_element(3, 3), z in arb_element(3, 3)) {
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        }

        #[test]
        fn boundary_is_equivariant(w1 in arb_word_elem(3), w2 in arb_word_elem(3), x in arb_element(3, 3)) {
            let x = x.degm1_part();
            prop_assert_eq!(w1.mul(&x).mul(&w2).boundary(), w1.mul(&x.boundary()).mul(&w2));
        }

        #[test]
        fn boundary_is_multiplicative(x in arb_element(3, 3), y in arb_element(3, 3)) {
            // ∂ is an algebra map from B: ∂(b'b) = ∂(b')∂(b), and A-equivariant.
            let (x, y) = (x.degm1_part(), y.degm1_part());
            prop_assert_eq!(x.mul(&y).boundary(), x.boundary().mul(&y.boundary()));
        }

        #[test]
        fn text_round_trip(x in arb_element(3, 4)) {
            prop_assert_eq!(E::parse(3, &x.to_string()).unwrap(), x);
        }
    }
}
