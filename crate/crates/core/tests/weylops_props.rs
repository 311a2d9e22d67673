use std::collections::BTreeMap;

use dcech::scalar::{frac, q};
use dcech::weylops::{
    act_on_basis, formal_adjoint, invert_coordinate, reduce_in_cyclic, Coord, CyclicPresentation,
    Support,
};
use dcech::{DiffOp, Q};
use num_traits::{One, Zero};
use proptest::prelude::*;

// Word-rewriting normal order: letters are x, x⁻¹ and ∂, rewritten with
// ∂x = x∂ + 1, ∂x⁻¹ = x⁻¹∂ − x⁻², xx⁻¹ = x⁻¹x = 1 until every word is
// coordinate-left.

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Letter {
    X,
    Xinv,
    D,
}

fn word(a: i64, b: u32) -> Vec<Letter> {
    let mut w = Vec::new();
    let l = if a >= 0 { Letter::X } else { Letter::Xinv };
    w.extend(std::iter::repeat_n(l, a.unsigned_abs() as usize));
    w.extend(std::iter::repeat_n(Letter::D, b as usize));
    w
}

fn normal_order(words: Vec<(Vec<Letter>, Q)>) -> BTreeMap<(i64, u32), Q> {
    use Letter::*;
    let mut stack = words;
    let mut out: BTreeMap<(i64, u32), Q> = BTreeMap::new();
    while let Some((w, c)) = stack.pop() {
        if c.is_zero() {
            continue;
        }
        let pos = w
            .windows(2)
            .position(|p| matches!((p[0], p[1]), (D, X) | (D, Xinv) | (X, Xinv) | (Xinv, X)));
        let Some(i) = pos else {
            let a = w.iter().filter(|&&l| l == X).count() as i64
                - w.iter().filter(|&&l| l == Xinv).count() as i64;
            let b = w.iter().filter(|&&l| l == D).count() as u32;
            *out.entry((a, b)).or_insert_with(Q::zero) += c;
            continue;
        };
        let (head, tail) = (&w[..i], &w[i + 2..]);
        let splice = |mid: &[Letter]| -> Vec<Letter> {
            head.iter().chain(mid).chain(tail).copied().collect()
        };
        match (w[i], w[i + 1]) {
            (D, X) => {
                stack.push((splice(&[X, D]), c.clone()));
                stack.push((splice(&[]), c));
            }
            (D, Xinv) => {
                stack.push((splice(&[Xinv, D]), c.clone()));
                stack.push((splice(&[Xinv, Xinv]), -c));
            }
            _ => stack.push((splice(&[]), c)),
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn terms_of(p: &DiffOp) -> BTreeMap<(i64, u32), Q> {
    p.terms().map(|(a, b, c)| ((a, b), c.clone())).collect()
}

fn op_from(coord: Coord, laurent: bool, terms: &[(i64, u32, i64, i64)]) -> DiffOp {
    DiffOp::from_terms(
        coord,
        laurent,
        terms.iter().map(|&(a, b, n, d)| (a, b, frac(n, d))),
    )
    .unwrap()
}

fn arb_terms(laurent: bool) -> impl Strategy<Value = Vec<(i64, u32, i64, i64)>> {
    let lo = if laurent { -3 } else { 0 };
    prop::collection::vec((lo..4i64, 0..4u32, -5..6i64, 1..4i64), 0..4)
}

fn arb_op(laurent: bool) -> impl Strategy<Value = DiffOp> {
    arb_terms(laurent).prop_map(move |t| op_from(Coord::X, laurent, &t))
}

#[test]
fn monomial_products_match_word_rewriting() {
    for a in -3..=3 {
        for b in 0..=3 {
            for c in -3..=3 {
                for d in 0..=3 {
                    let p = DiffOp::monomial(Coord::X, a, b, q(1)).laurent();
                    let r = DiffOp::monomial(Coord::X, c, d, q(1)).laurent();
                    let mut w = word(a, b);
                    w.extend(word(c, d));
                    let expect = normal_order(vec![(w, Q::one())]);
                    assert_eq!(
                        terms_of(&p.mul(&r).unwrap()),
                        expect,
                        "x^{a}∂^{b}·x^{c}∂^{d}"
                    );
                }
            }
        }
    }
}

#[test]
fn polynomial_operators_reject_negative_powers() {
    let p = DiffOp::d(Coord::X);
    assert!(DiffOp::from_terms(Coord::X, false, [(-1, 0, q(1))]).is_err());
    assert!(invert_coordinate(&p).is_err());
}

#[test]
fn commutator_is_one() {
    let x = DiffOp::coord_power(Coord::Z, 1);
    let d = DiffOp::d(Coord::Z);
    let c = d.mul(&x).unwrap().sub(&x.mul(&d).unwrap()).unwrap();
    assert_eq!(c, DiffOp::constant(Coord::Z, q(1)));
}

#[test]
fn mixed_charts_do_not_multiply() {
    let p = DiffOp::d(Coord::X);
    let r = DiffOp::d(Coord::Z);
    assert!(p.mul(&r).is_err());
    assert!(p.add(&r).is_err());
}

fn apply_vector(v: &BTreeMap<i64, Q>, p: &DiffOp, pres: &CyclicPresentation) -> BTreeMap<i64, Q> {
    let mut out: BTreeMap<i64, Q> = BTreeMap::new();
    for (m, c) in v {
        for (k, e) in reduce_in_cyclic(p, pres, *m).unwrap() {
            *out.entry(k).or_insert_with(Q::zero) += c * e;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn presentations() -> Vec<(CyclicPresentation, bool)> {
    let mut v = vec![(CyclicPresentation::dpowers(Coord::X), false)];
    for c in [q(-1), frac(1, 2), q(3), frac(-7, 3)] {
        v.push((CyclicPresentation::mixed(Coord::X, c.clone()), false));
        v.push((
            CyclicPresentation::xpowers(Coord::X, c, Support::AllIntegers),
            true,
        ));
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_match_word_rewriting(t1 in arb_terms(true), t2 in arb_terms(true)) {
        let p = op_from(Coord::X, true, &t1);
        let r = op_from(Coord::X, true, &t2);
        let mut words = Vec::new();
        for &(a, b, n, d) in &t1 {
            for &(c, e, m, k) in &t2 {
                let mut w = word(a, b);
                w.extend(word(c, e));
                words.push((w, frac(n, d) * frac(m, k)));
            }
        }
        prop_assert_eq!(terms_of(&p.mul(&r).unwrap()), normal_order(words));
    }

    #[test]
    fn multiplication_is_associative(a in arb_op(true), b in arb_op(true), c in arb_op(true)) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_distributes(a in arb_op(true), b in arb_op(true), c in arb_op(true)) {
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn adjoint_reverses_products(a in arb_op(true), b in arb_op(true)) {
        let lhs = formal_adjoint(&a.mul(&b).unwrap());
        let rhs = formal_adjoint(&b).mul(&formal_adjoint(&a)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(formal_adjoint(&formal_adjoint(&a)), a);
    }

    #[test]
    fn inversion_is_multiplicative(a in arb_op(true), b in arb_op(true)) {
        let lhs = invert_coordinate(&a.mul(&b).unwrap()).unwrap();
        let rhs = invert_coordinate(&a).unwrap().mul(&invert_coordinate(&b).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs.coord(), Coord::Z);
        prop_assert_eq!(invert_coordinate(&invert_coordinate(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn reduction_is_a_right_action(
        which in 0usize..9,
        t1 in arb_terms(true),
        t2 in arb_terms(true),
        n in -6i64..7,
    ) {
        let (pres, laurent) = presentations().swap_remove(which);
        let clip = |t: &[(i64, u32, i64, i64)]| -> Vec<_> {
            t.iter().copied().filter(|&(a, ..)| laurent || a >= 0).collect()
        };
        let p = op_from(Coord::X, laurent, &clip(&t1));
        let r = op_from(Coord::X, laurent, &clip(&t2));
        let n = if pres.contains(n) { n } else { n.abs() };
        let direct = reduce_in_cyclic(&p.mul(&r).unwrap(), &pres, n).unwrap();
        let staged = apply_vector(&reduce_in_cyclic(&p, &pres, n).unwrap(), &r, &pres);
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn relator_annihilates_generator(which in 0usize..9, t in arb_terms(false)) {
        let (pres, laurent) = presentations().swap_remove(which);
        let rel = if laurent { pres.relator().laurent() } else { pres.relator() };
        let p = rel.mul(&op_from(Coord::X, laurent, &t)).unwrap();
        prop_assert!(reduce_in_cyclic(&p, &pres, 0).unwrap().is_empty());
    }

    #[test]
    fn closed_forms_agree_with_rewriting(which in 0usize..9, t in arb_terms(false), n in -8i64..9) {
        let (pres, laurent) = presentations().swap_remove(which);
        let first_order: Vec<_> = t.iter().map(|&(a, b, c, d)| (a, b % 2, c, d)).collect();
        let p = op_from(Coord::X, laurent, &first_order);
        let n = if pres.contains(n) { n } else { n.abs() };
        let fast: BTreeMap<i64, Q> = act_on_basis(&pres, &p)
            .unwrap()
            .apply(n)
            .unwrap()
            .into_iter()
            .fold(BTreeMap::new(), |mut acc, (k, c)| {
                *acc.entry(k).or_insert_with(Q::zero) += c;
                acc
            });
        let mut fast = fast;
        fast.retain(|_, c| !c.is_zero());
        prop_assert_eq!(fast, reduce_in_cyclic(&p, &pres, n).unwrap());
    }
}
