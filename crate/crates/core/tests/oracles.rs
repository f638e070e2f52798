//! Values checked against routes that share no code with the implementation:
//! periodic trapezoid quadrature for K, Euler's pentagonal series for the eta
//! product, printed closed-form radicals and direct solves.

use quintic_modulus::certify::{run_suite, IdentityReport};
use quintic_modulus::kernel::{agm, elliptic_k, eta_f, nome, solve_singular_modulus};
use quintic_modulus::ladder::{
    ascend_once, closed_forms, g_invariant, ladder, ladder_from_solver, p_map, verify_thm31,
};
use quintic_modulus::modular::{
    a_value, descend_a, descend_v, multiplier_m5, rrcf_closed, rrcf_converged, rrcf_truncated,
};
use quintic_modulus::precision::to_decimal;
use quintic_modulus::{BigReal, PosRational, PrecisionContext};
use rug::ops::Pow;
use rug::Float;

fn ctx() -> PrecisionContext {
    PrecisionContext::default()
}

fn rat(n: u64, d: u64) -> PosRational {
    PosRational::new(n, d).unwrap()
}

fn diff(a: &BigReal, b: &BigReal) -> BigReal {
    (a.clone() - b).abs()
}

fn ten_pow(e: i32) -> BigReal {
    Float::with_val(576, 10).pow(e)
}

/// `∫₀^{π/2} dt / √(1 - x² sin² t)` by the trapezoid rule over a full period
/// of the π-periodic integrand, doubling the node count until it settles.
fn k_quadrature(x: &BigReal, ctx: &PrecisionContext) -> BigReal {
    let x2 = x.clone().square();
    let integrand = |t: &BigReal| {
        (ctx.one() - x2.clone() * t.clone().sin().square())
            .sqrt()
            .recip()
    };
    let mut n = 16u32;
    let mut prev = ctx.zero();
    loop {
        let h = ctx.pi() / n;
        let mut sum = ctx.zero();
        for j in 0..n {
            sum += integrand(&(h.clone() * j));
        }
        let value = sum * h / 2u32;
        if diff(&value, &prev) < ten_pow(-160) {
            return value;
        }
        prev = value;
        n *= 2;
        assert!(n < 1 << 16, "quadrature did not settle");
    }
}

/// `f(-q) = Σ_k (-1)^k q^(k(3k-1)/2)` over all integers k.
fn eta_pentagonal(q: &BigReal, ctx: &PrecisionContext) -> BigReal {
    let mut sum = ctx.one();
    let cutoff = ctx.pow2(-(ctx.work_bits() as i64) - 8);
    for k in 1i64.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let e1 = k * (3 * k - 1) / 2;
        let e2 = k * (3 * k + 1) / 2;
        let t1 = q.clone().pow(e1 as i32);
        let t2 = q.clone().pow(e2 as i32);
        if t1 < cutoff {
            break;
        }
        sum += (t1 + t2) * sign;
    }
    sum
}

#[test]
fn k_matches_quadrature() {
    let c = ctx();
    for x in [c.real(0.5).sqrt(), c.real(0.1), c.real(0.5), c.real(0.9)] {
        let via_agm = elliptic_k(&x, &c).unwrap();
        assert!(
            diff(&via_agm, &k_quadrature(&x, &c)) < ten_pow(-150),
            "x = {}",
            x.to_f64()
        );
    }
}

#[test]
fn agm_at_lemniscate_point() {
    let c = ctx();
    let x = c.real(0.5).sqrt();
    let v = agm(&c.one(), &x, &c).unwrap();
    let k = c.pi() / (v * 2u32);
    assert!(diff(&k, &k_quadrature(&x, &c)) < ten_pow(-150));
    assert!((k.to_f64() - 1.854_074_677_3).abs() < 1e-10);
}

#[test]
fn eta_matches_pentagonal_series() {
    let c = ctx();
    for q in [nome(PosRational::ONE, &c), c.real(0.3), c.real(0.6)] {
        let prod = eta_f(&q, &c).unwrap();
        assert!(
            diff(&prod, &eta_pentagonal(&q, &c)) < c.tol(),
            "q = {}",
            q.to_f64()
        );
    }
}

#[test]
fn eta_elliptic_identities_at_one() {
    let c = ctx();
    let q = nome(PosRational::ONE, &c);
    let k = closed_forms::k1(&c);
    let big_k = elliptic_k(&k, &c).unwrap();

    // f(-q)⁸ = 2^(8/3) π⁻⁴ q^(-1/3) k^(2/3) k'^(8/3) K⁴ with k = k' = 1/√2
    let lhs = eta_pentagonal(&q, &c).pow(8u32);
    let rhs = c.real(2).pow(c.real(8) / 3u32) / c.pi().pow(4u32) / q.clone().root(3)
        * k.clone().pow(c.real(10) / 3u32)
        * big_k.clone().pow(4u32);
    assert!(diff(&lhs, &rhs) < c.tol());

    // f(-q²)⁶ = 2kk'K³ / (π³ q^(1/2)) with 2kk' = 1
    let lhs = eta_pentagonal(&q.clone().square(), &c).pow(6u32);
    let rhs = big_k.pow(3u32) / (c.pi().pow(3u32) * q.sqrt());
    assert!(diff(&lhs, &rhs) < c.tol());
}

#[test]
fn printed_seed_radicals() {
    let c = ctx();
    let tol = ten_pow(-120);
    let k1 = solve_singular_modulus(PosRational::ONE, &c).unwrap();
    assert!(diff(&k1.k, &closed_forms::k1(&c)) < tol);

    let k5 = solve_singular_modulus(rat(5, 1), &c).unwrap();
    assert!(diff(&k5.k, &closed_forms::k5(&c)) < tol);
    assert!((k5.k.to_f64() - 0.118_876_945_8).abs() < 1e-10);

    let k_fifth = solve_singular_modulus(rat(1, 5), &c).unwrap();
    assert!(diff(&k_fifth.k, &closed_forms::k_one_fifth(&c)) < tol);
    assert!(diff(&k_fifth.k, &k5.k_comp) < tol);

    let k25 = solve_singular_modulus(rat(25, 1), &c).unwrap();
    assert!(diff(&k25.k, &closed_forms::k25(&c)) < tol);
}

#[test]
fn solver_determinism() {
    let c = ctx();
    let a = solve_singular_modulus(rat(7, 3), &c).unwrap();
    let b = solve_singular_modulus(rat(7, 3), &c).unwrap();
    assert_eq!(to_decimal(&a.k), to_decimal(&b.k));
    assert_eq!(a, b);
}

#[test]
fn solver_samples_and_reciprocals() {
    let c = ctx();
    for r in [rat(1, 1), rat(3, 2), rat(2, 1), rat(5, 1), rat(7, 1)] {
        let rec = solve_singular_modulus(r, &c).unwrap();
        assert!(rec.residual < c.tol(), "r = {r}");
        let inv = solve_singular_modulus(r.recip(), &c).unwrap();
        assert!(diff(&inv.k, &rec.k_comp) < c.tol(), "reciprocal at r = {r}");
    }
}

#[test]
fn multiplier_at_one_from_radicals() {
    let c = ctx();
    let k25 = closed_forms::k25(&c);
    let expected = elliptic_k(&k25, &c).unwrap() / elliptic_k(&closed_forms::k1(&c), &c).unwrap();
    let rec = multiplier_m5(PosRational::ONE, &c).unwrap();
    assert!(diff(&rec.m5, &expected) < c.tol());
    assert!((rec.m5.to_f64() - 0.847).abs() < 1e-3);
}

#[test]
fn a_value_at_one_and_four() {
    let c = ctx();
    let rec = a_value(PosRational::ONE, &c).unwrap();
    let q = nome(PosRational::ONE, &c);
    let q5 = q.clone().pow(5u32);
    let oracle = eta_pentagonal(&q, &c).pow(6u32) / (q.clone() * eta_pentagonal(&q5, &c).pow(6u32));
    assert!(diff(&rec.via_eta, &oracle) < c.tol());
    assert!(rec.cross_residual < c.tol());

    // a_4 = A⁶ with A = f(-q²)/(q^(1/3) f(-q¹⁰)) at q = e^(-π)
    let q2 = q.clone().square();
    let q10 = q2.clone().pow(5u32);
    let big_a = eta_pentagonal(&q2, &c) / (q.root(3) * eta_pentagonal(&q10, &c));
    let a4 = a_value(rat(4, 1), &c).unwrap();
    assert!(diff(&a4.via_moduli, &big_a.pow(6u32)) < c.tol());
}

#[test]
fn rrcf_at_e_minus_two_pi() {
    let c = ctx();
    let s5 = c.real(5).sqrt();
    let exact = ((s5.clone() + 5u32) / 2u32).sqrt() - (s5 + 1u32) / 2u32;
    let q = nome(rat(4, 1), &c);
    let cf = rrcf_converged(&q, &c).unwrap();
    assert!(diff(&cf, &exact) < c.tol());
    assert!((cf.to_f64() - 0.284_079_0).abs() < 1e-7);
    assert!(diff(&rrcf_closed(rat(4, 1), &c).unwrap(), &exact) < c.tol());
    // shallow truncations are already close but not converged
    let shallow = rrcf_truncated(&q, 3, &c).unwrap();
    assert!(diff(&shallow, &exact) > c.tol());
}

#[test]
fn descents_match_direct_values() {
    let c = ctx();
    let v_at = |r| rrcf_converged(&nome(r, &c), &c).unwrap();
    assert!(
        diff(
            &descend_v(&v_at(rat(25, 1)), &c).unwrap(),
            &v_at(PosRational::ONE)
        ) < c.tol()
    );
    assert!(
        diff(
            &descend_v(&v_at(rat(100, 1)), &c).unwrap(),
            &v_at(rat(4, 1))
        ) < c.tol()
    );

    let a25 = a_value(rat(25, 1), &c).unwrap().a;
    let a1 = a_value(PosRational::ONE, &c).unwrap().a;
    assert!(diff(&descend_a(&a25, &c).unwrap(), &a1) < c.tol());
}

#[test]
fn class_invariant_at_25() {
    let c = ctx();
    let g = g_invariant(rat(25, 1), &c).unwrap().g;
    let s5 = c.real(5).sqrt();
    let expected = (c.real(161) - s5 * 72u32).recip().root(12);
    assert!(diff(&g, &expected) < c.tol());
}

#[test]
fn ascend_once_from_example_seeds() {
    let c = ctx();
    let kkp = |k: &BigReal| k.clone() * (c.one() - k.clone().square()).sqrt();

    let k5 = closed_forms::k5(&c);
    let k_fifth = closed_forms::k_one_fifth(&c);
    assert!(diff(&kkp(&k5), &kkp(&k_fifth)) < c.tol());
    let out = ascend_once(&kkp(&k5), &kkp(&k_fifth), &c).unwrap();
    let oracle = solve_singular_modulus(rat(125, 1), &c).unwrap().kkp();
    assert!(diff(&out, &oracle) < ten_pow(-140));

    let k25 = closed_forms::k25(&c);
    let k1 = closed_forms::k1(&c);
    let out = ascend_once(&kkp(&k25), &kkp(&k1), &c).unwrap();
    let oracle = solve_singular_modulus(rat(625, 1), &c).unwrap().kkp();
    assert!(diff(&out, &oracle) < ten_pow(-140));

    // from r = 1 (and 1/25) the product shrinks
    let k_25th = solve_singular_modulus(rat(1, 25), &c).unwrap().k;
    let out = ascend_once(&kkp(&k1), &kkp(&k_25th), &c).unwrap();
    assert!(out < kkp(&k1));
    assert!(diff(&out, &kkp(&k25)) < ten_pow(-140));
}

#[test]
fn p_of_one_enters_k125() {
    let c = ctx();
    let p1 = p_map(&c.one(), &c).unwrap();
    let kkp125 = solve_singular_modulus(rat(125, 1), &c).unwrap().kkp();
    let kkp5 = solve_singular_modulus(rat(5, 1), &c).unwrap().kkp();
    let expected = (kkp125 / kkp5).root(12);
    assert!(diff(&p1, &expected) < c.tol());
}

#[test]
fn ladders_from_radical_seeds() {
    let c = ctx();
    let t = ladder(
        rat(5, 1),
        &closed_forms::k5(&c),
        &closed_forms::k_one_fifth(&c),
        2,
        &c,
    )
    .unwrap();
    assert_eq!(t.steps.len(), 2);
    assert_eq!(t.steps[1].r, rat(3125, 1));
    assert!(t.steps[0].k > t.steps[1].k);
    for s in &t.steps {
        assert!(s.oracle_residual < ten_pow(-100));
        assert!(s.kkprime > 0 && s.kkprime <= 0.5);
    }

    let t = ladder(
        rat(25, 1),
        &closed_forms::k25(&c),
        &closed_forms::k1(&c),
        1,
        &c,
    )
    .unwrap();
    assert!(t.steps[0].oracle_residual < ten_pow(-100));
}

#[test]
fn ladder_from_sub_unit_start() {
    // r₀ = 1/5: first level is r = 5
    let c = ctx();
    let t = ladder_from_solver(rat(1, 5), 2, &c).unwrap();
    assert_eq!(t.steps[0].r, rat(5, 1));
    assert_eq!(t.steps[1].r, rat(125, 1));
}

#[test]
fn thm31_at_one_twenty_fifth() {
    let c = ctx();
    let rep = verify_thm31(rat(1, 25), &c).unwrap();
    assert!(rep.residual() < c.tol());
}

#[test]
fn residuals_shrink_with_precision() {
    let lo = ctx();
    let hi = PrecisionContext::with_precision(1024).unwrap();
    let a = verify_thm31(PosRational::ONE, &lo).unwrap().residual();
    let b = verify_thm31(PosRational::ONE, &hi).unwrap().residual();
    let floor = lo.pow2(-(lo.work_bits() as i64));
    assert!(b < a.max(&floor) * ten_pow(-50));
}

#[test]
fn report_json_round_trip() {
    let c = ctx();
    let rep = run_suite(rat(2, 1), Some(&["eq31-g-def", "eq6-eta8"]), &c).unwrap();
    let text = serde_json::to_string(&rep).unwrap();
    let back: IdentityReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, rep);
    for (orig, parsed) in rep.entries.iter().zip(&back.entries) {
        assert_eq!(
            orig.residual_value(&c).unwrap(),
            parsed.residual_value(&c).unwrap()
        );
    }
}
