//! AGM-based elliptic integrals, the nome, the certified singular-modulus
//! solver and the eta product `f(-q) = ∏(1 - qⁿ)`.

use rug::Float;

use crate::error::{Error, Result};
use crate::precision::{to_decimal, BigReal, PrecisionContext};
use crate::rational::PosRational;

/// Arithmetic-geometric mean of two positive reals.
///
/// Iterates until `|a - b| < 2^(-precision_bits + guard_bits/2) * a` and
/// returns the next arithmetic mean.
pub fn agm(a: &BigReal, b: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if !a.is_finite() || !b.is_finite() || *a <= 0 || *b <= 0 {
        return Err(Error::domain(format!(
            "agm needs positive arguments, got ({}, {})",
            a.to_f64(),
            b.to_f64()
        )));
    }
    let stop_exp = -(ctx.precision_bits() as i64) + (ctx.guard_bits() / 2) as i64;
    let eps = ctx.pow2(stop_exp);
    let mut a = ctx.real(a);
    let mut b = ctx.real(b);
    for _ in 0..ctx.max_iter() {
        let diff = Float::with_val(ctx.work_bits(), &a - &b).abs();
        let next_a = Float::with_val(ctx.work_bits(), &a + &b) / 2u32;
        if diff < Float::with_val(ctx.work_bits(), &eps * &a) {
            return Ok(next_a);
        }
        b = Float::with_val(ctx.work_bits(), &a * &b).sqrt();
        a = next_a;
    }
    Err(Error::Convergence {
        what: "agm",
        iterations: ctx.max_iter(),
        lo: to_decimal(&a.clone().min(&b)),
        hi: to_decimal(&a.max(&b)),
    })
}

/// Complete elliptic integral of the first kind, `K(x) = π / (2 agm(1, √(1-x²)))`.
pub fn elliptic_k(x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if *x < 0 || *x >= 1 || x.is_nan() {
        return Err(Error::domain(format!(
            "elliptic_k needs 0 <= x < 1, got {}",
            x.to_f64()
        )));
    }
    let comp = complement(x, ctx);
    k_from_complement(&comp, ctx)
}

/// `K` evaluated from the complementary modulus `√(1-x²)` directly, which
/// keeps full relative accuracy when `x` is close to 1.
pub(crate) fn k_from_complement(comp: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let m = agm(&ctx.one(), comp, ctx)?;
    Ok(ctx.pi() / (m * 2u32))
}

/// `√(1-x²)` computed as `√((1-x)(1+x))`.
pub(crate) fn complement(x: &BigReal, ctx: &PrecisionContext) -> BigReal {
    let one = ctx.one();
    let lhs = Float::with_val(ctx.work_bits(), &one - x);
    let rhs = Float::with_val(ctx.work_bits(), &one + x);
    (lhs * rhs).sqrt()
}

/// Nome `q = e^(-π√r)`.
pub fn nome(r: PosRational, ctx: &PrecisionContext) -> BigReal {
    let e = -(ctx.pi() * r.sqrt(ctx));
    e.exp()
}

/// Convenience wrapper over [`nome`] for a raw numerator/denominator pair.
pub fn nome_of(r_num: u64, r_den: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(nome(PosRational::new(r_num, r_den)?, ctx))
}

/// Ramanujan's `f(-q) = ∏_{n≥1} (1 - qⁿ)`, truncated once `qⁿ` drops below
/// `2^-(precision_bits + guard_bits)`.
pub fn eta_f(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if *q <= 0 || *q >= 1 || q.is_nan() {
        return Err(Error::domain(format!(
            "eta_f needs 0 < q < 1, got {}",
            q.to_f64()
        )));
    }
    let cutoff = ctx.pow2(-(ctx.work_bits() as i64));
    let cap = ctx.max_iter().saturating_mul(1000);
    let mut prod = ctx.one();
    let mut qn = ctx.real(q);
    let mut n = 0usize;
    while qn >= cutoff {
        n += 1;
        if n > cap {
            return Err(Error::Convergence {
                what: "eta product",
                iterations: cap,
                lo: to_decimal(&prod),
                hi: to_decimal(&prod),
            });
        }
        prod *= Float::with_val(ctx.work_bits(), 1 - &qn);
        qn *= q;
    }
    Ok(prod)
}

/// Solved singular modulus `k_r` together with everything needed to certify it.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularModulusRecord {
    pub r: PosRational,
    pub k: BigReal,
    pub k_comp: BigReal,
    pub q: BigReal,
    /// `K(k_r)`
    pub k_k: BigReal,
    /// `K(k'_r)`
    pub k_kcomp: BigReal,
    /// `|K(k')/K(k) - √r|`
    pub residual: BigReal,
}

impl SingularModulusRecord {
    /// `k_r k'_r`
    pub fn kkp(&self) -> BigReal {
        Float::with_val(self.k.prec(), &self.k * &self.k_comp)
    }

    /// Rebuild the full record from a known modulus (e.g. a cached value).
    pub fn from_modulus(r: PosRational, k: BigReal, ctx: &PrecisionContext) -> Result<Self> {
        if k <= 0 || k >= 1 {
            return Err(Error::domain("modulus must lie in (0, 1)"));
        }
        let k = ctx.real(&k);
        let k_comp = complement(&k, ctx);
        let k_k = k_from_complement(&k_comp, ctx)?;
        let k_kcomp = k_from_complement(&k, ctx)?;
        let ratio = Float::with_val(ctx.work_bits(), &k_kcomp / &k_k);
        let residual = (ratio - r.sqrt(ctx)).abs();
        Ok(SingularModulusRecord {
            r,
            q: nome(r, ctx),
            k,
            k_comp,
            k_k,
            k_kcomp,
            residual,
        })
    }
}

/// `K(k')/K(k) - √r`, strictly decreasing in `k`.
fn ratio_gap(k: &BigReal, sqrt_r: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let comp = complement(k, ctx);
    let num = agm(&ctx.one(), &comp, ctx)?;
    let den = agm(&ctx.one(), k, ctx)?;
    Ok(num / den - sqrt_r)
}

/// Midpoint in logit space, so both `k` and `1-k` are halved geometrically.
fn logit_mid(lo: &BigReal, hi: &BigReal, ctx: &PrecisionContext) -> BigReal {
    let one = ctx.one();
    let lo_c = Float::with_val(ctx.work_bits(), &one - lo);
    let hi_c = Float::with_val(ctx.work_bits(), &one - hi);
    // k/(1-k) at the midpoint is the geometric mean of the endpoint odds
    let odds = (Float::with_val(ctx.work_bits(), lo / &lo_c)
        * Float::with_val(ctx.work_bits(), hi / &hi_c))
    .sqrt();
    let denom = Float::with_val(ctx.work_bits(), &odds + 1u32);
    odds / denom
}

/// Width of the bracket relative to the closer of `k` and `1-k`.
fn relative_width(lo: &BigReal, hi: &BigReal, ctx: &PrecisionContext) -> BigReal {
    let width = Float::with_val(ctx.work_bits(), hi - lo);
    let lo_c = Float::with_val(ctx.work_bits(), 1 - hi);
    let scale = ctx.real(lo).min(&lo_c);
    width / scale
}

/// Singular modulus `k_r`: the `k ∈ (0,1)` with `K(√(1-k²))/K(k) = √r`.
///
/// Brackets the root, bisects (in logit space) to 50 correct bits, then
/// finishes with Newton steps whose derivative is a central finite difference.
pub fn solve_singular_modulus(
    r: PosRational,
    ctx: &PrecisionContext,
) -> Result<SingularModulusRecord> {
    let sqrt_r = r.sqrt(ctx);
    let one = ctx.one();
    let max_iter = ctx.max_iter();
    let half_prec = (ctx.precision_bits() / 2) as i64;

    let fail = |iterations: usize, lo: &BigReal, hi: &BigReal| Error::Convergence {
        what: "singular modulus",
        iterations,
        lo: to_decimal(lo),
        hi: to_decimal(hi),
    };

    let mut lo = ctx.pow2(-half_prec);
    let mut hi = Float::with_val(ctx.work_bits(), &one - &lo);
    let mut iter = 0usize;

    // The map is decreasing: gap(lo) must be positive, gap(hi) negative.
    while ratio_gap(&lo, &sqrt_r, ctx)? <= 0 {
        iter += 1;
        if iter > max_iter || lo.get_exp().unwrap_or(0) < -(1 << 28) {
            return Err(fail(iter, &lo, &hi));
        }
        lo.square_mut();
    }
    while ratio_gap(&hi, &sqrt_r, ctx)? >= 0 {
        iter += 1;
        let gap = Float::with_val(ctx.work_bits(), &one - &hi);
        if iter > max_iter || gap.get_exp().unwrap_or(0) < -(ctx.work_bits() as i32) / 2 {
            return Err(fail(iter, &lo, &hi));
        }
        hi = Float::with_val(ctx.work_bits(), &one - gap.square());
    }

    let coarse = ctx.pow2(-50);
    while relative_width(&lo, &hi, ctx) > coarse {
        iter += 1;
        if iter > max_iter {
            return Err(fail(iter, &lo, &hi));
        }
        let mid = logit_mid(&lo, &hi, ctx);
        if ratio_gap(&mid, &sqrt_r, ctx)? > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let step_exp = -((ctx.precision_bits() / 3) as i64);
    let done_exp = -((ctx.work_bits() - 8) as i64);
    let mut k = logit_mid(&lo, &hi, ctx);
    loop {
        iter += 1;
        if iter > max_iter {
            return Err(fail(iter, &lo, &hi));
        }
        let g = ratio_gap(&k, &sqrt_r, ctx)?;
        if g == 0 {
            break;
        }
        if g > 0 {
            lo = k.clone();
        } else {
            hi = k.clone();
        }
        let k_c = Float::with_val(ctx.work_bits(), &one - &k);
        let scale = ctx.real(&k).min(&k_c);
        let h = Float::with_val(ctx.work_bits(), &scale * ctx.pow2(step_exp));
        let g_plus = ratio_gap(&Float::with_val(ctx.work_bits(), &k + &h), &sqrt_r, ctx)?;
        let g_minus = ratio_gap(&Float::with_val(ctx.work_bits(), &k - &h), &sqrt_r, ctx)?;
        let slope = (g_plus - g_minus) / (h.clone() * 2u32);
        let step = Float::with_val(ctx.work_bits(), &g / &slope);
        let mut next = Float::with_val(ctx.work_bits(), &k - &step);
        if next <= lo || next >= hi {
            next = logit_mid(&lo, &hi, ctx);
        }
        let moved = Float::with_val(ctx.work_bits(), &next - &k).abs();
        k = next;
        if moved <= Float::with_val(ctx.work_bits(), &scale * ctx.pow2(done_exp)) {
            break;
        }
    }

    let record = SingularModulusRecord::from_modulus(r, k, ctx)?;
    if record.residual >= ctx.tol() {
        return Err(fail(iter, &lo, &hi));
    }
    Ok(record)
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

    fn close(a: &BigReal, b: &BigReal, tol: &BigReal) -> bool {
        Float::with_val(a.prec(), a - b).abs() < *tol
    }

    #[test]
    fn agm_fixed_points() {
        let c = ctx();
        assert_eq!(agm(&c.one(), &c.one(), &c).unwrap(), 1);
        let x = c.real(3.25);
        assert_eq!(agm(&x, &x, &c).unwrap(), x);
    }

    #[test]
    fn agm_matches_mpfr() {
        let c = ctx();
        let b = c.real(0.5).sqrt();
        let ours = agm(&c.one(), &b, &c).unwrap();
        let reference = c.one().agm(&b);
        assert!(close(&ours, &reference, &c.pow2(-560)));
    }

    #[test]
    fn agm_rejects_non_positive() {
        let c = ctx();
        assert!(matches!(
            agm(&c.zero(), &c.one(), &c),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            agm(&c.one(), &c.real(-1), &c),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn agm_convergence_cap() {
        let c = PrecisionContext::default().with_max_iter(2).unwrap();
        assert!(matches!(
            agm(&c.one(), &c.real(1e-30), &c),
            Err(Error::Convergence { .. })
        ));
    }

    #[test]
    fn elliptic_k_basics() {
        let c = ctx();
        let k0 = elliptic_k(&c.zero(), &c).unwrap();
        assert!(close(&k0, &(c.pi() / 2u32), &c.pow2(-570)));
        let k1 = elliptic_k(&c.real(0.1), &c).unwrap();
        let k5 = elliptic_k(&c.real(0.5), &c).unwrap();
        let k9 = elliptic_k(&c.real(0.9), &c).unwrap();
        assert!(k9 > k5 && k5 > k1);
        assert!(elliptic_k(&c.one(), &c).is_err());
        assert!(elliptic_k(&c.real(-0.1), &c).is_err());
    }

    #[test]
    fn nome_relations() {
        let c = ctx();
        let q1 = nome(rat(1, 1), &c);
        assert!((q1.to_f64() - 0.043_213_918_263_772_25).abs() < 1e-15);
        let q4 = nome(rat(4, 1), &c);
        assert!(close(
            &q4,
            &Float::with_val(576, q1.square_ref()),
            &c.pow2(-570)
        ));
        let q_quarter = nome(rat(1, 4), &c);
        assert!(close(&q_quarter, &q1.clone().sqrt(), &c.pow2(-570)));
        assert!(nome_of(0, 1, &c).is_err());
    }

    #[test]
    fn eta_leading_terms() {
        let c = ctx();
        let q = c.real(1e-6);
        let f = eta_f(&q, &c).unwrap();
        // 1 - q - q² + q⁵ + ...
        let approx = c.one() - q.clone() - q.clone().square();
        let diff = (f - approx).abs();
        assert!(diff < c.real(2e-30));
        assert!(eta_f(&c.zero(), &c).is_err());
        assert!(eta_f(&c.one(), &c).is_err());
    }

    #[test]
    fn solver_r1_is_one_over_sqrt2() {
        let c = ctx();
        let rec = solve_singular_modulus(rat(1, 1), &c).unwrap();
        let expected = c.real(0.5).sqrt();
        assert!(close(&rec.k, &expected, &c.tol()));
        assert!(rec.residual < c.tol());
    }

    #[test]
    fn solver_orders_moduli_around_one() {
        let c = ctx();
        let threshold = c.real(0.5).sqrt();
        assert!(solve_singular_modulus(rat(3, 2), &c).unwrap().k < threshold);
        assert!(solve_singular_modulus(rat(2, 3), &c).unwrap().k > threshold);
    }

    #[test]
    fn solver_handles_large_r() {
        let c = ctx();
        let rec = solve_singular_modulus(rat(78125, 1), &c).unwrap();
        assert!(rec.residual < c.tol());
        // k ~ 4 sqrt(q) for tiny q
        let approx = rec.q.clone().sqrt() * 4u32;
        let rel = ((rec.k.clone() - &approx) / approx).abs();
        assert!(rel < 1e-100);
    }

    #[test]
    fn complement_of_pythagorean_pair() {
        let c = ctx();
        let rec = solve_singular_modulus(rat(7, 1), &c).unwrap();
        let sum = rec.k.clone().square() + rec.k_comp.clone().square();
        assert!(close(&sum, &c.one(), &c.tol()));
    }
}
