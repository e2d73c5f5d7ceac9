//! The six four-index relation families, imposed in degree -1.

use super::element::Element;
use super::gens::BKind;
use super::relator::{relator, t};
use crate::error::Result;

fn br(x: &Element, y: &Element) -> Element {
    x.bracket(y)
}

/// The six relation elements for one 4-subset `i < j < k < l`, in a fixed order.
pub fn relations_for(n: u8, [i, j, k, l]: [u8; 4]) -> [Element; 6] {
    let a = |p: u8, q: u8| Element::a(n, p, q);
    let lg = |p: u8, q: u8, s: u8| Element::l(n, p, q, s);
    let rg = |p: u8, q: u8, s: u8| Element::r(n, p, q, s);
    let sum = |xs: &[Element]| xs.iter().skip(1).fold(xs[0].clone(), |acc, x| acc.add(x));

    let r1 = br(&sum(&[a(i, l), a(j, l), a(k, l)]), &rg(i, j, k))
        .sub(&br(&a(i, j).add(&a(i, k)), &lg(j, k, l)))
        .add(&br(&a(j, k), &lg(i, j, l).add(&lg(i, k, l))));
    let r2 = br(&sum(&[a(i, j), a(i, k), a(i, l)]), &rg(j, k, l))
        .add(&br(&a(k, l), &rg(i, j, k).add(&rg(i, j, l))))
        .sub(&br(&a(j, k).add(&a(j, l)), &rg(i, k, l)));
    let r3 = br(&sum(&[a(i, l), a(j, l), a(k, l)]), &lg(i, j, k))
        .add(&br(&a(i, j), &lg(i, k, l).add(&lg(j, k, l))))
        .sub(&br(&a(i, k).add(&a(j, k)), &lg(i, j, l)));
    let r4 = br(&sum(&[a(i, j), a(i, k), a(i, l)]), &lg(j, k, l))
        .add(&br(&a(j, k), &rg(i, j, l).add(&rg(i, k, l))))
        .sub(&br(&a(j, l).add(&a(k, l)), &rg(i, j, k)));
    let r5 = br(&a(i, j), &rg(i, k, l).add(&rg(j, k, l))).sub(&br(&a(k, l), &lg(i, j, k).add(&lg(i, j, l))));
    let r6 = br(&a(i, k), &rg(i, j, l).sub(&lg(j, k, l)).sub(&rg(j, k, l)))
        .add(&br(&a(j, l), &lg(i, j, k).add(&rg(i, j, k)).sub(&lg(i, k, l))));
    [r1, r2, r3, r4, r5, r6]
}

/// All four-index relations of the `n`-th algebra: six per 4-subset of `1..=n+1`,
/// subsets in lexicographic order.
pub fn relation_set(n: u8) -> Vec<Element> {
    let m = n + 1;
    let mut out = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            for k in j + 1..=m {
                for l in k + 1..=m {
                    out.extend(relations_for(n, [i, j, k, l]));
                }
            }
        }
    }
    out
}

/// One bracket `±[t_X, Σ ±𝒦_Y]` of a cabled relation, in index notation.
type Bracket<'a> = (i64, &'a str, &'a [(i64, BKind, &'a str)]);

fn cabled(n: u8, brackets: &[Bracket]) -> Result<Element> {
    let mut out = Element::zero(n);
    for &(sign, x, ys) in brackets {
        let mut y = Element::zero(n);
        for &(s, kind, idx) in ys {
            let g = relator(kind, idx, n)?;
            y = if s > 0 { y.add(&g) } else { y.sub(&g) };
        }
        let b = t(x, n)?.bracket(&y);
        out = if sign > 0 { out.add(&b) } else { out.sub(&b) };
    }
    Ok(out)
}

const L: BKind = BKind::L;
const R: BKind = BKind::R;

/// The five relations of an infinitesimal 2-braiding on four strands, written with cabled
/// indices such as `t_{(123)4}` and `ℒ_{1(23)4}`.
pub fn five_relations() -> Result<Vec<Element>> {
    let n = 3;
    [
        cabled(n, &[(1, "(123)4", &[(1, R, "123")]), (-1, "1(23)", &[(1, L, "234")]), (1, "23", &[(1, L, "1(23)4")])]),
        cabled(n, &[(1, "1(234)", &[(1, R, "234")]), (1, "34", &[(1, R, "12(34)")]), (-1, "2(34)", &[(1, R, "134")])]),
        cabled(n, &[(1, "(123)4", &[(1, L, "123")]), (1, "12", &[(1, L, "(12)34")]), (-1, "(12)3", &[(1, L, "124")])]),
        cabled(n, &[(1, "1(234)", &[(1, L, "234")]), (1, "23", &[(1, R, "1(23)4")]), (-1, "(23)4", &[(1, R, "123")])]),
        cabled(n, &[(1, "12", &[(1, R, "(12)34")]), (-1, "34", &[(1, L, "12(34)")])]),
    ]
    .into_iter()
    .collect()
}

/// The six relations of a coherent, totally symmetric infinitesimal 2-braiding: the five above
/// with the cablings expanded, and one more mixing `t₁₃` and `t₂₄`.
pub fn six_relations() -> Result<Vec<Element>> {
    let n = 3;
    [
        cabled(n, &[(1, "(123)4", &[(1, R, "123")]), (-1, "1(23)", &[(1, L, "234")]), (1, "23", &[(1, L, "124"), (1, L, "134")])]),
        cabled(n, &[(1, "1(234)", &[(1, R, "234")]), (1, "34", &[(1, R, "123"), (1, R, "124")]), (-1, "2(34)", &[(1, R, "134")])]),
        cabled(n, &[(1, "(123)4", &[(1, L, "123")]), (1, "12", &[(1, L, "134"), (1, L, "234")]), (-1, "(12)3", &[(1, L, "124")])]),
        cabled(n, &[(1, "1(234)", &[(1, L, "234")]), (1, "23", &[(1, R, "124"), (1, R, "134")]), (-1, "(23)4", &[(1, R, "123")])]),
        cabled(n, &[(1, "12", &[(1, R, "134"), (1, R, "234")]), (-1, "34", &[(1, L, "123"), (1, L, "124")])]),
        cabled(
            n,
            &[
                (1, "13", &[(1, R, "124"), (-1, L, "234"), (-1, R, "234")]),
                (1, "24", &[(1, L, "123"), (1, R, "123"), (-1, L, "134")]),
            ],
        ),
    ]
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dkalg::{in_relation_span, Quotient};

    #[test]
    fn five_and_six_are_cycles() {
        for r in five_relations().unwrap().iter().chain(&six_relations().unwrap()) {
            assert!(!r.is_zero());
            assert!(r.boundary().is_zero(), "{}", r.boundary());
        }
    }

    #[test]
    fn cabling_turns_five_into_the_first_five_of_six() {
        let five = five_relations().unwrap();
        let six = six_relations().unwrap();
        assert_eq!(five[..], six[..5]);
    }

    #[test]
    fn six_span_the_generator_families() {
        for r in six_relations().unwrap() {
            assert!(in_relation_span(&r, Quotient::FULL).unwrap());
        }
        let gens = relations_for(3, [1, 2, 3, 4]);
        let six = six_relations().unwrap();
        for g in &gens {
            let hit = six.iter().any(|r| r == g || r == &g.neg());
            assert!(hit, "{g} is not one of the six up to sign");
        }
    }

    #[test]
    fn counts() {
        assert!(relation_set(1).is_empty());
        assert!(relation_set(2).is_empty());
        assert_eq!(relation_set(3).len(), 6);
        assert_eq!(relation_set(4).len(), 30);
    }

    #[test]
    fn relations_are_cycles() {
        for n in [3, 4] {
            for (idx, r) in relation_set(n).iter().enumerate() {
                assert!(!r.is_zero());
                assert!(r.boundary().is_zero(), "relation {idx} at n={n}: {}", r.boundary());
            }
        }
    }
}
