//! Degree-5 modular quantities: the multiplier `M₅`, the eta quotient `a_r`,
//! the Rogers-Ramanujan continued fraction and the descent maps `r → r/25`.

use rug::ops::Pow;

use crate::error::{Error, Result};
use crate::kernel::{eta_f, nome, solve_singular_modulus, SingularModulusRecord};
use crate::precision::{root, BigReal, PrecisionContext};
use crate::rational::PosRational;

const MAX_RRCF_DEPTH: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq)]
pub struct M5Record {
    pub r: PosRational,
    /// `K(k_{25r}) / K(k_r)`
    pub m5: BigReal,
    /// `|(5M-1)⁵(1-M) - 256 (k k')² M|`
    pub poly_residual: BigReal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ARecord {
    pub r: PosRational,
    pub a: BigReal,
    /// `f(-q)⁶ / (q f(-q⁵)⁶)`
    pub via_eta: BigReal,
    /// `(k'_r/k'_{25r})² √(k_r/k_{25r}) M₅⁻³`
    pub via_moduli: BigReal,
    pub cross_residual: BigReal,
}

/// Multiplier of degree 5 from two solved moduli. The sextic it satisfies is
/// only used as a certificate; the root is never chosen blind.
pub fn multiplier_from(
    at_r: &SingularModulusRecord,
    at_25r: &SingularModulusRecord,
    ctx: &PrecisionContext,
) -> M5Record {
    let m5 = ctx.real(&at_25r.k_k) / &at_r.k_k;
    let poly_residual = m5_poly(&m5, &at_r.kkp(), ctx).abs();
    M5Record {
        r: at_r.r,
        m5,
        poly_residual,
    }
}

/// `(5M-1)⁵(1-M) - 256 (k k')² M`
pub fn m5_poly(m: &BigReal, kkp: &BigReal, ctx: &PrecisionContext) -> BigReal {
    let lhs = (ctx.real(m) * 5u32 - 1u32).pow(5u32) * (ctx.one() - m);
    let rhs = ctx.real(kkp).square() * 256u32 * m;
    lhs - rhs
}

pub fn multiplier_m5(r: PosRational, ctx: &PrecisionContext) -> Result<M5Record> {
    let at_r = solve_singular_modulus(r, ctx)?;
    let at_25r = solve_singular_modulus(r.times25()?, ctx)?;
    Ok(multiplier_from(&at_r, &at_25r, ctx))
}

/// Eta quotient `f(-q)⁶ / (q f(-q⁵)⁶)`.
pub fn a_from_eta(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let q5 = ctx.real(q).pow(5u32);
    let num = eta_f(q, ctx)?.pow(6u32);
    let den = eta_f(&q5, ctx)?.pow(6u32) * q;
    Ok(num / den)
}

/// `a_r` from the moduli at `r` and `25r`.
pub fn a_from_moduli(
    at_r: &SingularModulusRecord,
    at_25r: &SingularModulusRecord,
    ctx: &PrecisionContext,
) -> BigReal {
    let m5 = multiplier_from(at_r, at_25r, ctx).m5;
    let comp_ratio = (ctx.real(&at_r.k_comp) / &at_25r.k_comp).square();
    let k_ratio = (ctx.real(&at_r.k) / &at_25r.k).sqrt();
    comp_ratio * k_ratio / m5.pow(3u32)
}

pub fn a_value_from(
    at_r: &SingularModulusRecord,
    at_25r: &SingularModulusRecord,
    ctx: &PrecisionContext,
) -> Result<ARecord> {
    let via_eta = a_from_eta(&at_r.q, ctx)?;
    let via_moduli = a_from_moduli(at_r, at_25r, ctx);
    let cross_residual = (via_eta.clone() - &via_moduli).abs();
    Ok(ARecord {
        r: at_r.r,
        a: via_eta.clone(),
        via_eta,
        via_moduli,
        cross_residual,
    })
}

pub fn a_value(r: PosRational, ctx: &PrecisionContext) -> Result<ARecord> {
    let at_r = solve_singular_modulus(r, ctx)?;
    let at_25r = solve_singular_modulus(r.times25()?, ctx)?;
    a_value_from(&at_r, &at_25r, ctx)
}

fn check_nome(q: &BigReal) -> Result<()> {
    if *q <= 0 || *q >= 1 || q.is_nan() {
        return Err(Error::domain(format!("need 0 < q < 1, got {}", q.to_f64())));
    }
    Ok(())
}

/// `q^(1/5) / (1 + q/(1 + q²/(1 + … + q^depth)))` by backward recurrence.
pub fn rrcf_truncated(q: &BigReal, depth: usize, ctx: &PrecisionContext) -> Result<BigReal> {
    check_nome(q)?;
    if depth == 0 || depth > MAX_RRCF_DEPTH {
        return Err(Error::domain(format!(
            "continued fraction depth must be in 1..={MAX_RRCF_DEPTH}, got {depth}"
        )));
    }
    let depth_i32 = i32::try_from(depth).map_err(|_| Error::domain("depth overflow"))?;
    let mut qn = ctx.real(q).pow(depth_i32);
    let mut tail = ctx.one();
    for _ in 0..depth {
        tail = qn.clone() / &tail + 1u32;
        qn /= q;
    }
    Ok(root(q, 5) / tail)
}

/// Truncated continued fraction at increasing depth (starting at
/// `precision_bits`, doubling) until two successive values agree to the
/// context tolerance.
pub fn rrcf_converged(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let tol = ctx.tol();
    let mut depth = ctx.precision_bits() as usize;
    let mut prev = rrcf_truncated(q, depth, ctx)?;
    loop {
        depth *= 2;
        if depth > MAX_RRCF_DEPTH {
            return Err(Error::Convergence {
                what: "continued fraction",
                iterations: depth,
                lo: crate::precision::to_decimal(&prev),
                hi: crate::precision::to_decimal(&prev),
            });
        }
        let next = rrcf_truncated(q, depth, ctx)?;
        if (next.clone() - &prev).abs() < tol {
            return Ok(next);
        }
        prev = next;
    }
}

/// `R` from `a` through `R⁵ = -t + √(t² + 1)`, `t = (11 + a)/2`, using the
/// cancellation-free form `1/(t + √(t² + 1))`.
pub fn rrcf_from_a(a: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let t = (ctx.real(a) + 11u32) / 2u32;
    if t <= 0 {
        return Err(Error::Internal(format!(
            "closed form needs a > -11, got {}",
            a.to_f64()
        )));
    }
    let disc = t.clone().square() + 1u32;
    let r5 = (t + disc.sqrt()).recip();
    Ok(root(&r5, 5))
}

/// Closed-form Rogers-Ramanujan continued fraction at `q = e^(-π√r)`.
pub fn rrcf_closed(r: PosRational, ctx: &PrecisionContext) -> Result<BigReal> {
    let q = nome(r, ctx);
    let a = a_from_eta(&q, ctx)?;
    rrcf_from_a(&a, ctx)
}

/// `(y, R)` with `y = arcsinh((11 + a)/2)` and `R = e^(-y/5)`.
pub fn theta_form(a: &BigReal, ctx: &PrecisionContext) -> Result<(BigReal, BigReal)> {
    let t = (ctx.real(a) + 11u32) / 2u32;
    if t <= 0 {
        return Err(Error::domain(format!(
            "theta form needs a > -11, got {}",
            a.to_f64()
        )));
    }
    let y = t.asinh();
    let rr = (-(y.clone() / 5u32)).exp();
    Ok((y, rr))
}

/// `v_r ↦ v_{r/25}`: real positive fifth root of
/// `v (1 - 2v + 4v² - 3v³ + v⁴) / (1 + 3v + 4v² + 2v³ + v⁴)`.
pub fn descend_v(v: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if *v <= 0 || *v >= 1 || v.is_nan() {
        return Err(Error::domain(format!(
            "descend_v needs 0 < v < 1, got {}",
            v.to_f64()
        )));
    }
    let horner = |coeffs: &[i32]| {
        let mut acc = ctx.zero();
        for &c in coeffs.iter().rev() {
            acc = acc * v + c;
        }
        acc
    };
    let num = horner(&[1, -2, 4, -3, 1]);
    let den = horner(&[1, 3, 4, 2, 1]);
    if den == 0 {
        return Err(Error::domain("descend_v denominator vanished"));
    }
    let fifth = ctx.real(v) * num / den;
    if fifth <= 0 {
        return Err(Error::domain(
            "descend_v produced a non-positive fifth power",
        ));
    }
    Ok(root(&fifth, 5))
}

/// `a_r ↦ a_{r/25}`: the exponential form
///
/// `(-1 - e^(y/5) + e^(2y/5))⁵ / (e^(y/5) - e^(2y/5) + 2e^(3y/5) - 3e^(4y/5) + 5e^y
///  + 3e^(6y/5) + 2e^(7y/5) + e^(8y/5) + e^(9y/5))` with `y = arcsinh((11 + a)/2)`.
pub fn descend_a(a: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if *a <= -11 || a.is_nan() {
        return Err(Error::domain(format!(
            "descend_a needs a > -11, got {}",
            a.to_f64()
        )));
    }
    let y = ((ctx.real(a) + 11u32) / 2u32).asinh();
    let e = (y / 5u32).exp();
    let pows: Vec<BigReal> = (0..=9).map(|i| e.clone().pow(i as u32)).collect();
    let num = (ctx.real(&pows[2]) - &pows[1] - 1u32).pow(5u32);
    let coeffs = [0i32, 1, -1, 2, -3, 5, 3, 2, 1, 1];
    let mut den = ctx.zero();
    for (c, p) in coeffs.iter().zip(&pows) {
        den += ctx.real(p) * *c;
    }
    if den == 0 {
        return Err(Error::domain("descend_a denominator vanished"));
    }
    Ok(num / den)
}

/// Which assignment of `(u, v)` to the fourth roots of `(k_r, k_{25r})`
/// makes the depressed equation vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `u = k_r^(1/4)`, `v = k_{25r}^(1/4)`
    AsStated,
    /// `u = k_{25r}^(1/4)`, `v = k_r^(1/4)`
    Swapped,
    Neither,
}

impl Orientation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Orientation::AsStated => "u=k_r^(1/4), v=k_25r^(1/4)",
            Orientation::Swapped => "u=k_25r^(1/4), v=k_r^(1/4)",
            Orientation::Neither => "neither orientation vanishes",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Thm22Report {
    pub r: PosRational,
    /// closed expression in `k, k', w, w'` minus `a_r`
    pub eq13: BigReal,
    /// sextic in `w = √(k_r k_{25r})`
    pub eq14: BigReal,
    pub eq15_as_stated: BigReal,
    pub eq15_swapped: BigReal,
    pub orientation: Orientation,
}

impl Thm22Report {
    /// Residual of the depressed equation in its vanishing orientation.
    pub fn eq15(&self) -> BigReal {
        self.eq15_as_stated.clone().min(&self.eq15_swapped)
    }
}

fn depressed(u: &BigReal, v: &BigReal, ctx: &PrecisionContext) -> BigReal {
    let u2 = ctx.real(u).square();
    let v2 = ctx.real(v).square();
    let uv = ctx.real(u) * v;
    let term1 = u2.clone().pow(3u32) - v2.clone().pow(3u32);
    let term2 = u2.clone() * &v2 * (u2 - &v2) * 5u32;
    let term3 = uv.clone() * (ctx.one() - uv.pow(4u32)) * 4u32;
    term1 + term2 + term3
}

pub fn verify_thm22_from(
    at_r: &SingularModulusRecord,
    at_25r: &SingularModulusRecord,
    ctx: &PrecisionContext,
) -> Result<Thm22Report> {
    let k = ctx.real(&at_r.k);
    let kc = ctx.real(&at_r.k_comp);
    let w = (k.clone() * &at_25r.k).sqrt();
    let wc = (kc.clone() * &at_25r.k_comp).sqrt();

    let k2 = k.clone().square();
    let lead = k.clone().pow(3u32) * (k2.clone() - 1u32) / (w.clone().pow(5u32) - k2.clone() * &w);
    let inner = w.clone() / &k + wc.clone() / &kc - w.clone() * &wc / (k.clone() * &kc);
    let rhs = lead * inner.pow(3u32);
    let a = a_from_eta(&at_r.q, ctx)?;
    let eq13 = (rhs - a).abs();

    // k⁶ + k³(10k² - 16)w + 15k⁴w² - 20k³w³ + 15k²w⁴ + k(10 - 16k²)w⁵ + w⁶
    let coeffs = [
        k.clone().pow(6u32),
        k.clone().pow(3u32) * (k2.clone() * 10u32 - 16u32),
        k.clone().pow(4u32) * 15u32,
        k.clone().pow(3u32) * -20i32,
        k2.clone() * 15u32,
        k.clone() * (ctx.real(10) - k2.clone() * 16u32),
        ctx.one(),
    ];
    let mut eq14 = ctx.zero();
    for c in coeffs.iter().rev() {
        eq14 = eq14 * &w + c;
    }
    let eq14 = eq14.abs();

    let u = root(&k, 4);
    let v = root(&at_25r.k, 4);
    let eq15_as_stated = depressed(&u, &v, ctx).abs();
    let eq15_swapped = depressed(&v, &u, ctx).abs();
    let tol = ctx.tol();
    let orientation = if eq15_as_stated < tol {
        Orientation::AsStated
    } else if eq15_swapped < tol {
        Orientation::Swapped
    } else {
        Orientation::Neither
    };
    Ok(Thm22Report {
        r: at_r.r,
        eq13,
        eq14,
        eq15_as_stated,
        eq15_swapped,
        orientation,
    })
}

pub fn verify_thm22(r: PosRational, ctx: &PrecisionContext) -> Result<Thm22Report> {
    let at_r = solve_singular_modulus(r, ctx)?;
    let at_25r = solve_singular_modulus(r.times25()?, ctx)?;
    verify_thm22_from(&at_r, &at_25r, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    fn rat(n: u64, d: u64) -> PosRational {
        PosRational::new(n, d).unwrap()
    }

    fn diff(a: &BigReal, b: &BigReal) -> BigReal {
        (a.clone() - b).abs()
    }

    #[test]
    fn m5_at_one() {
        let c = ctx();
        let rec = multiplier_m5(PosRational::ONE, &c).unwrap();
        assert!((rec.m5.to_f64() - 0.847_213_595_499_958).abs() < 1e-14);
        assert!(rec.poly_residual < c.tol());
    }

    #[test]
    fn m5_stays_in_range() {
        let c = ctx();
        for r in [rat(1, 1), rat(2, 1), rat(5, 1)] {
            let m = multiplier_m5(r, &c).unwrap().m5;
            assert!(m > 0.2 && m < 1.0, "m5({r}) = {}", m.to_f64());
        }
    }

    #[test]
    fn a_routes_agree() {
        let c = ctx();
        for r in [rat(1, 1), rat(3, 2)] {
            let rec = a_value(r, &c).unwrap();
            assert!(rec.a > 0);
            assert!(rec.cross_residual < c.tol(), "r = {r}");
        }
    }

    #[test]
    fn truncated_cf_small_q() {
        let c = ctx();
        let q = c.real(1e-8);
        let v = rrcf_truncated(&q, 40, &c).unwrap();
        // q^(1/5)(1 - q + q² ...)
        let lead = root(&q, 5) * (c.one() - &q);
        assert!(diff(&v, &lead) < 1e-17);
    }

    #[test]
    fn truncated_cf_errors() {
        let c = ctx();
        assert!(rrcf_truncated(&c.real(0.5), 0, &c).is_err());
        assert!(rrcf_truncated(&c.real(0.5), MAX_RRCF_DEPTH + 1, &c).is_err());
        assert!(rrcf_truncated(&c.one(), 10, &c).is_err());
        assert!(rrcf_truncated(&c.zero(), 10, &c).is_err());
    }

    #[test]
    fn truncated_cf_tail_shrinks() {
        let c = ctx();
        let q = c.real(0.9);
        let at = |d| rrcf_truncated(&q, d, &c).unwrap();
        let mut prev_gap = diff(&at(14), &at(4));
        for d in (8..60).step_by(4) {
            let gap = diff(&at(d + 10), &at(d));
            assert!(gap <= prev_gap, "depth {d}");
            prev_gap = gap;
        }
    }

    #[test]
    fn closed_matches_truncated() {
        let c = ctx();
        for r in [rat(1, 1), rat(4, 1), rat(5, 1)] {
            let closed = rrcf_closed(r, &c).unwrap();
            let cf = rrcf_converged(&nome(r, &c), &c).unwrap();
            assert!(diff(&closed, &cf) < c.tol(), "r = {r}");
            assert!(closed > 0 && closed < 1);
        }
    }

    #[test]
    fn theta_inverse_pair() {
        let c = ctx();
        let y0 = c.real(2.75);
        let a = y0.clone().sinh() * 2u32 - 11u32;
        let (y, _) = theta_form(&a, &c).unwrap();
        assert!(diff(&y, &y0) < c.tol());
        assert!(theta_form(&c.real(-11), &c).is_err());
        let small = theta_form(&c.real(1e6), &c).unwrap().1;
        let smaller = theta_form(&c.real(1e8), &c).unwrap().1;
        assert!(smaller < small);
    }

    #[test]
    fn theta_matches_closed_form() {
        let c = ctx();
        let a = a_from_eta(&nome(PosRational::ONE, &c), &c).unwrap();
        let (_, rr) = theta_form(&a, &c).unwrap();
        let closed = rrcf_closed(PosRational::ONE, &c).unwrap();
        assert!(diff(&rr, &closed) < c.tol());
    }

    #[test]
    fn descend_v_range_and_small_v() {
        let c = ctx();
        for x in [1e-6, 0.1, 0.5, 0.9, 0.999] {
            let out = descend_v(&c.real(x), &c).unwrap();
            assert!(out > 0 && out < 1);
        }
        let v = c.real(1e-10);
        let out = descend_v(&v, &c).unwrap();
        let lead = root(&v, 5);
        assert!((out / lead - 1u32).abs() < 1e-9);
        assert!(descend_v(&c.one(), &c).is_err());
    }

    #[test]
    fn descend_v_maps_100_to_4() {
        let c = ctx();
        let v100 = rrcf_converged(&nome(rat(100, 1), &c), &c).unwrap();
        let v4 = rrcf_converged(&nome(rat(4, 1), &c), &c).unwrap();
        assert!(diff(&descend_v(&v100, &c).unwrap(), &v4) < c.tol());
    }

    #[test]
    fn descend_a_maps_25_to_1() {
        let c = ctx();
        let a25 = a_from_eta(&nome(rat(25, 1), &c), &c).unwrap();
        let a1 = a_from_eta(&nome(PosRational::ONE, &c), &c).unwrap();
        assert!(diff(&descend_a(&a25, &c).unwrap(), &a1) < c.tol());
        assert!(descend_a(&c.real(-11), &c).is_err());
    }

    #[test]
    fn descend_a_agrees_with_v_route() {
        let c = ctx();
        let a = c.real(1234.5);
        let v = rrcf_from_a(&a, &c).unwrap();
        let v_down = descend_v(&v, &c).unwrap();
        let v5 = v_down.pow(5u32);
        let a_down = v5.clone().recip() - 11u32 - v5;
        assert!(diff(&descend_a(&a, &c).unwrap(), &a_down) < c.tol_with_slack(20));
    }

    #[test]
    fn descend_a_growth() {
        let c = ctx();
        for x in [1e6, 1e8] {
            let a = c.real(x);
            let ratio = descend_a(&a, &c).unwrap() / root(&a, 5);
            assert!(
                ratio > 0.5 && ratio < 2.0,
                "Q(a)/a^(1/5) = {}",
                ratio.to_f64()
            );
        }
    }

    #[test]
    fn thm22_at_one_and_five() {
        let c = ctx();
        for r in [rat(1, 1), rat(5, 1)] {
            let rep = verify_thm22(r, &c).unwrap();
            assert!(rep.eq13 < c.tol(), "eq13 at {r}");
            assert!(rep.eq14 < c.tol(), "eq14 at {r}");
            assert!(rep.eq15() < c.tol(), "eq15 at {r}");
            assert_ne!(rep.orientation, Orientation::Neither);
        }
    }
}
