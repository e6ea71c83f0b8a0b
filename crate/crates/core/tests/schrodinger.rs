use std::collections::BTreeMap;

use proptest::prelude::*;
use twophoton::scalar::{frac, int, Rational};
use twophoton::schrodinger::{
    apply_and_recheck, casimir, discrete_derivative, exponential_solution, heat_polynomial, realize, symmetry_check,
    symmetry_outcome, verify_realization, verify_solutions, Direction, ExpPolyFunction, FnTerm, Monomial,
    RealizationParams, SchrodingerOperator as Op, GENERATORS,
};

fn matrix() -> Vec<RealizationParams> {
    let mut out = Vec::new();
    for z in [frac(1, 10), frac(1, 4)] {
        for m in [1, 2] {
            for a in [frac(-1, 2), int(0)] {
                out.push(RealizationParams::deformed(z.clone(), int(m), a));
            }
        }
    }
    out
}

#[test]
fn realization_satisfies_all_brackets() {
    for p in matrix() {
        let r = verify_realization(&p).unwrap();
        assert_eq!(r.len(), 15);
        assert!(r.all_passed(), "{}", r.render_text());
        let classical = RealizationParams::classical(p.m.clone(), p.a.clone());
        let r = verify_realization(&classical).unwrap();
        assert_eq!(r.len(), 15);
        assert!(r.all_passed(), "{}", r.render_text());
    }
}

#[test]
fn conformal_commutator_matches_unreduced_form() {
    // [E,C] = 2(t + 4z − 2z x∂x)E − 2z(m + 2(1−a))∂x² + m(1 + 2aT⁻¹) + m(m+2)(1 − T⁻¹)
    for a in [int(0), frac(1, 3), frac(-1, 2)] {
        let p = RealizationParams::deformed(frac(1, 4), int(2), a.clone());
        let z = &p.z;
        let m = &p.m;
        let e = casimir(&p).unwrap();
        let lhs = e.commutator(&realize("C", &p).unwrap());
        let x_dx = &Op::x(z) * &Op::dx(z);
        let pre = &(&Op::t(z) + &Op::scalar(z, int(4) * z)) - &x_dx.scale(&(int(2) * z));
        let dx2 = &Op::dx(z) * &Op::dx(z);
        let tinv = Op::shift(z, -1);
        let mut rhs = (&pre * &e).scale(&int(2));
        rhs = &rhs - &dx2.scale(&(int(2) * z * (m + int(2) * (int(1) - &a))));
        rhs = &rhs + &(&Op::one(z) + &tinv.scale(&(int(2) * &a))).scale(m);
        rhs = &rhs + &(&Op::one(z) - &tinv).scale(&(m * (m + int(2))));
        assert_eq!(lhs, rhs, "a = {a}");
    }
}

#[test]
fn conformal_commutator_matches_algebraic_form() {
    // [E,C] = −(KP + PK + 2MD T⁻¹) + M(M+2)(1 − T⁻¹) − z(DP² + 2PDP + P²D + 2P²M)
    let p = RealizationParams::deformed(frac(1, 10), int(1), int(0));
    let z = &p.z;
    let g = |n: &str| realize(n, &p).unwrap();
    let (pp, m, k, d) = (g("P"), g("M"), g("K"), g("D"));
    let tinv = Op::shift(z, -1);
    let p2 = &pp * &pp;
    let mut rhs = -&(&(&(&k * &pp) + &(&pp * &k)) + &(&(&m * &d) * &tinv).scale(&int(2)));
    rhs = &rhs + &(&(&m * &(&m + &Op::scalar(z, int(2)))) * &(&Op::one(z) - &tinv));
    let tail = &(&(&(&d * &p2) + &(&(&pp * &d) * &pp).scale(&int(2))) + &(&p2 * &d)) + &(&p2 * &m).scale(&int(2));
    rhs = &rhs - &tail.scale(z);
    assert_eq!(casimir(&p).unwrap().commutator(&g("C")), rhs);
}

#[test]
fn symmetry_checks() {
    for p in matrix() {
        for g in ["K", "H", "P", "M", "D"] {
            let e = symmetry_check(g, &p).unwrap();
            assert!(e.passed, "{g}: {}", e.residual);
        }
        let c = symmetry_check("C", &p).unwrap();
        assert_eq!(c.passed, p.a == frac(-1, 2), "{}", c.residual);
        let classical = RealizationParams::classical(p.m.clone(), p.a.clone());
        let c = symmetry_check("C", &classical).unwrap();
        assert_eq!(c.passed, p.a == frac(-1, 2), "{}", c.residual);
    }
    let p = RealizationParams::deformed(frac(1, 10), int(1), int(0));
    let out = symmetry_outcome("C", &p).unwrap();
    assert!(!out.remainder.is_zero());
    let dil = symmetry_outcome("D", &p).unwrap();
    assert!(dil.remainder.is_zero());
    assert_eq!(dil.commutator, casimir(&p).unwrap().scale(&int(2)));
}

fn poly(z: &Rational, terms: &[(u32, u32, Rational)]) -> ExpPolyFunction {
    ExpPolyFunction::from_terms(z, terms.iter().map(|(x, t, c)| (FnTerm::polynomial(*x, *t), c.clone()))).unwrap()
}

#[test]
fn casimir_kills_low_heat_polynomials() {
    let p = RealizationParams::deformed(frac(1, 10), int(3), frac(-1, 2));
    let e = casimir(&p).unwrap();
    let z = &p.z;
    assert!(poly(z, &[(0, 0, int(1))]).apply(&e).unwrap().is_zero());
    assert!(poly(z, &[(1, 0, int(1))]).apply(&e).unwrap().is_zero());
    let phi = poly(z, &[(2, 0, int(1)), (0, 1, frac(1, 3))]);
    assert!(phi.apply(&e).unwrap().is_zero());
    assert_eq!(heat_polynomial(2, &p).unwrap(), phi);
    let phi3 = poly(z, &[(3, 0, int(1)), (1, 1, int(1))]);
    assert_eq!(heat_polynomial(3, &p).unwrap(), phi3);
}

#[test]
fn difference_quotient_examples() {
    let z = frac(1, 10);
    let fwd = discrete_derivative(&z, Direction::Forward).unwrap();
    let bwd = discrete_derivative(&z, Direction::Backward).unwrap();
    assert_eq!(poly(&z, &[(0, 1, int(1))]).apply(&fwd).unwrap(), poly(&z, &[(0, 0, int(1))]));
    assert_eq!(poly(&z, &[(0, 2, int(1))]).apply(&fwd).unwrap(), poly(&z, &[(0, 1, int(2)), (0, 0, frac(2, 5))]));
    assert!(poly(&z, &[(0, 0, int(7))]).apply(&bwd).unwrap().is_zero());
}

#[test]
fn boost_maps_heat_polynomial_to_solution() {
    let p = RealizationParams::deformed(frac(1, 4), int(2), frac(-1, 2));
    let phi = heat_polynomial(2, &p).unwrap();
    let (image, residual) = apply_and_recheck("K", &phi, &p).unwrap();
    assert!(!image.is_zero());
    assert!(residual.is_zero(), "{}", residual.render());
    let (scaled, _) = apply_and_recheck("M", &phi, &p).unwrap();
    assert_eq!(scaled, phi.scale(&int(2)));
}

#[test]
fn conformal_image_of_exponential_solution() {
    let p = RealizationParams::deformed(frac(1, 10), int(1), frac(-1, 2));
    let phi = exponential_solution(&int(1), &p).unwrap();
    let (_, residual) = apply_and_recheck("C", &phi, &p).unwrap();
    assert!(residual.is_zero(), "{}", residual.render());
    let bad = RealizationParams::deformed(frac(1, 10), int(1), int(0));
    let (_, residual) = apply_and_recheck("C", &exponential_solution(&int(1), &bad).unwrap(), &bad).unwrap();
    assert!(!residual.is_zero());
}

#[test]
fn solution_suites_pass_at_minus_half() {
    let kappas = [int(1), frac(-1, 2), frac(2, 3)];
    for p in matrix().into_iter().filter(|p| p.a == frac(-1, 2)) {
        let r = verify_solutions(&p, 5, &kappas).unwrap();
        assert!(r.all_passed(), "{}", r.render_text());
        assert!(r.entries().iter().filter(|e| e.name.starts_with("solution/heat")).count() >= 5);
        assert_eq!(r.entries().iter().filter(|e| e.name.starts_with("solution/exponential")).count(), 3);
        let classical = RealizationParams::classical(p.m.clone(), p.a.clone());
        let r = verify_solutions(&classical, 5, &kappas).unwrap();
        assert!(r.all_passed(), "{}", r.render_text());
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    X,
    T,
    Shift,
    ShiftInv,
    Dx,
    Dt,
}

fn rank(l: Letter) -> u8 {
    match l {
        Letter::X => 0,
        Letter::T => 1,
        Letter::Shift | Letter::ShiftInv => 2,
        Letter::Dx => 3,
        Letter::Dt => 4,
    }
}

fn reducible(a: Letter, b: Letter) -> bool {
    rank(a) > rank(b) || matches!((a, b), (Letter::Shift, Letter::ShiftInv) | (Letter::ShiftInv, Letter::Shift))
}

/// One rewriting step at position `i` of `w`, as a list of `(word, factor)`.
fn rewrite(w: &[Letter], i: usize, z: &Rational) -> Vec<(Vec<Letter>, Rational)> {
    let (a, b) = (w[i], w[i + 1]);
    let splice = |mid: &[Letter]| [&w[..i], mid, &w[i + 2..]].concat();
    if matches!((a, b), (Letter::Shift, Letter::ShiftInv) | (Letter::ShiftInv, Letter::Shift)) {
        return vec![(splice(&[]), int(1))];
    }
    let mut out = vec![(splice(&[b, a]), int(1))];
    match (a, b) {
        (Letter::Dx, Letter::X) | (Letter::Dt, Letter::T) => out.push((splice(&[]), int(1))),
        (Letter::Shift, Letter::T) => out.push((splice(&[Letter::Shift]), int(4) * z)),
        (Letter::ShiftInv, Letter::T) => out.push((splice(&[Letter::ShiftInv]), int(-4) * z)),
        _ => {}
    }
    out
}

/// Reduces a word to normal form, picking the redex from `choices`.
fn naive_normal_form(word: Vec<Letter>, z: &Rational, choices: &[usize]) -> BTreeMap<Monomial, Rational> {
    let mut pending = vec![(word, int(1))];
    let mut done: BTreeMap<Monomial, Rational> = BTreeMap::new();
    let mut step = 0;
    while let Some((w, c)) = pending.pop() {
        let redexes: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| reducible(w[i], w[i + 1])).collect();
        if redexes.is_empty() {
            let mut m = Monomial::default();
            for l in w {
                match l {
                    Letter::X => m.x += 1,
                    Letter::T => m.t += 1,
                    Letter::Shift => m.shift += 1,
                    Letter::ShiftInv => m.shift -= 1,
                    Letter::Dx => m.dx += 1,
                    Letter::Dt => m.dt += 1,
                }
            }
            *done.entry(m).or_insert_with(|| int(0)) += c;
            continue;
        }
        let i = redexes[choices[step % choices.len()] % redexes.len()];
        step += 1;
        for (v, d) in rewrite(&w, i, z) {
            pending.push((v, &c * d));
        }
    }
    done.retain(|_, c| *c != int(0));
    done
}

fn letter_op(l: Letter, z: &Rational) -> Op {
    match l {
        Letter::X => Op::x(z),
        Letter::T => Op::t(z),
        Letter::Shift => Op::shift(z, 1),
        Letter::ShiftInv => Op::shift(z, -1),
        Letter::Dx => Op::dx(z),
        Letter::Dt => Op::dt(z),
    }
}

fn arb_letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        Just(Letter::X),
        Just(Letter::T),
        Just(Letter::Shift),
        Just(Letter::ShiftInv),
        Just(Letter::Dx),
        Just(Letter::Dt),
    ]
}

fn arb_function(z: Rational) -> impl Strategy<Value = ExpPolyFunction> {
    let term = (-2i64..3, 1i64..4, 1i64..4, -2i64..3, 0u32..3, 0u32..3, -3i64..4);
    prop::collection::vec(term, 1..4).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(k, rn, rd, w, x, t, c)| {
            (FnTerm { kappa: frac(k, 2), rho: frac(rn, rd), omega: int(w), x, t }, int(c))
        });
        ExpPolyFunction::from_terms(&z, terms).unwrap()
    })
}

proptest! {
    #[test]
    fn canonicalization_is_confluent(
        word in prop::collection::vec(arb_letter(), 0..=8),
        choices in prop::collection::vec(0usize..8, 1..6),
    ) {
        let z = frac(1, 10);
        let product = word.iter().fold(Op::one(&z), |acc, &l| &acc * &letter_op(l, &z));
        let leftmost = naive_normal_form(word.clone(), &z, &[0]);
        let chosen = naive_normal_form(word, &z, &choices);
        prop_assert_eq!(&leftmost, &chosen);
        prop_assert_eq!(product.terms(), &chosen);
    }

    #[test]
    fn function_action_is_a_representation(
        w1 in prop::collection::vec(arb_letter(), 0..=4),
        w2 in prop::collection::vec(arb_letter(), 0..=4),
        phi in arb_function(frac(1, 4)),
    ) {
        let z = frac(1, 4);
        let a = w1.iter().fold(Op::one(&z), |acc, &l| &acc * &letter_op(l, &z));
        let b = w2.iter().fold(Op::one(&z), |acc, &l| &acc * &letter_op(l, &z));
        let lhs = phi.apply(&(&a * &b)).unwrap();
        let rhs = phi.apply(&b).unwrap().apply(&a).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn backward_derivative_is_the_difference_quotient(
        phi in arb_function(frac(1, 10)),
        t0 in -3i64..4,
        n in -3i64..4,
    ) {
        let z = frac(1, 10);
        let t0 = frac(t0, 3);
        let d = phi.apply(&discrete_derivative(&z, Direction::Backward).unwrap()).unwrap();
        let lhs = d.at_lattice(&t0, n);
        let mut rhs = phi.at_lattice(&t0, n);
        for (k, v) in phi.at_lattice(&t0, n - 1) {
            *rhs.entry(k).or_insert_with(|| int(0)) -= v;
        }
        let h = (int(4) * &z).recip();
        let rhs: BTreeMap<_, _> = rhs.into_iter().map(|(k, v)| (k, v * &h)).filter(|(_, v)| *v != int(0)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn operator_and_function_commutators_agree(idx in 0usize..6, n in 0u32..5, a in prop_oneof![Just(frac(-1, 2)), Just(int(0))]) {
        let p = RealizationParams::deformed(frac(1, 4), int(2), a);
        let phi = heat_polynomial(n, &p).unwrap();
        let gap = twophoton::schrodinger::operator_function_gap(GENERATORS[idx], &phi, &p).unwrap();
        prop_assert!(gap.is_zero());
    }
}
