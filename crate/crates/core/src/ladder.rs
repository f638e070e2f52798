//! The radical pair `U`/`U*`, the composite `P = U ∘ Q^(1/6) ∘ U*⁶`, the class
//! invariant `G_r` and the ascent `k_{r₀} → k_{25ⁿ r₀}`.
//!
//! `U` is obtained from the cleared cubic `x²z³ + 5z² - x⁴z - x² = 0` in
//! `z = Y²`, which has exactly one positive root (one sign change), and is
//! certified against the defining relation
//! `X²/(√5 Y) - √5 Y/X² = (Y³ - Y⁻³)/√5`.

use rug::ops::Pow;
use rug::Complex;

use crate::error::{Error, Result};
use crate::kernel::{eta_f, nome, solve_singular_modulus, SingularModulusRecord};
use crate::modular::{a_from_moduli, descend_a};
use crate::precision::{root, to_decimal, BigComplex, BigReal, PrecisionContext};
use crate::rational::PosRational;

fn require_positive(x: &BigReal, what: &str) -> Result<()> {
    if *x <= 0 || !x.is_finite() {
        return Err(Error::domain(format!(
            "{what} needs a positive argument, got {}",
            x.to_f64()
        )));
    }
    Ok(())
}

/// `X²/(√5 Y) - √5 Y/X² - (Y³ - Y⁻³)/√5`
pub fn defining_residual(x: &BigReal, y: &BigReal, ctx: &PrecisionContext) -> BigReal {
    let s5 = ctx.real(5).sqrt();
    let x2 = ctx.real(x).square();
    let lhs = x2.clone() / (s5.clone() * y) - s5.clone() * y / &x2;
    let y3 = ctx.real(y).pow(3u32);
    let rhs = (y3.clone() - y3.recip()) / &s5;
    lhs - rhs
}

fn cubic(x2: &BigReal, x4: &BigReal, z: &BigReal, ctx: &PrecisionContext) -> (BigReal, BigReal) {
    // p(z) = x²z³ + 5z² - x⁴z - x², p'(z) = 3x²z² + 10z - x⁴
    let z2 = ctx.real(z).square();
    let p = ctx.real(x2) * z2.clone() * z + z2.clone() * 5u32 - ctx.real(x4) * z - x2;
    let dp = ctx.real(x2) * z2 * 3u32 + ctx.real(z) * 10u32 - x4;
    (p, dp)
}

/// The other two roots of the cubic after deflating by `z0`, for diagnostics.
fn deflated_roots(
    x2: &BigReal,
    x4: &BigReal,
    z0: &BigReal,
    ctx: &PrecisionContext,
) -> [BigComplex; 2] {
    let b2 = ctx.real(x2);
    let b1 = b2.clone() * z0 + 5u32;
    let b0 = b1.clone() * z0 - x4;
    let disc = b1.clone().square() - b2.clone() * &b0 * 4u32;
    let sq = Complex::with_val(ctx.work_bits(), (disc, 0)).sqrt();
    let two_a = b2 * 2u32;
    let minus_b = Complex::with_val(ctx.work_bits(), (-b1, 0));
    [(minus_b.clone() + &sq) / &two_a, (minus_b - &sq) / &two_a]
}

/// `Y = U(X)`: the positive solution of the defining relation.
pub fn u_map(x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    require_positive(x, "u_map")?;
    let x2 = ctx.real(x).square();
    let x4 = x2.clone().square();
    // Cauchy bound of the monic cubic
    let mut hi = ctx.real(5) / &x2;
    hi = hi.max(&x2).max(&ctx.one()) + 1u32;
    let mut lo = ctx.zero();
    let done = ctx.pow2(-((ctx.work_bits() - 4) as i64));
    let mut z = (lo.clone() + &hi) / 2u32;
    let mut converged = false;
    for _ in 0..ctx.max_iter() {
        let (p, dp) = cubic(&x2, &x4, &z, ctx);
        if p == 0 {
            converged = true;
            break;
        }
        if p < 0 {
            lo = z.clone();
        } else {
            hi = z.clone();
        }
        let mut next = if dp > 0 {
            z.clone() - p / dp
        } else {
            lo.clone()
        };
        if next <= lo || next >= hi {
            next = (lo.clone() + &hi) / 2u32;
        }
        let moved = (next.clone() - &z).abs();
        z = next;
        if moved <= done.clone() * &z {
            converged = true;
            break;
        }
    }
    let y = z.clone().sqrt();
    let residual = defining_residual(x, &y, ctx).abs();
    if !converged || residual >= ctx.tol() || z <= 0 {
        let others = deflated_roots(&x2, &x4, &z, ctx);
        return Err(Error::Branch(format!(
            "u_map({}): no certified positive root; candidate z = {} (residual {}), other roots {} and {}",
            x.to_f64(),
            z.to_f64(),
            residual.to_f64(),
            others[0],
            others[1],
        )));
    }
    Ok(y)
}

/// `h(x) = (-125 - 9x⁶ + 3√3 √(-125x⁶ - 22x¹² - x¹⁸))^(1/3)` with principal
/// square and cube roots.
fn radical_h(x: &BigReal, ctx: &PrecisionContext) -> BigComplex {
    let x6 = ctx.real(x).pow(6u32);
    let x12 = x6.clone().square();
    let x18 = x12.clone() * &x6;
    let inner = -(x6.clone() * 125u32) - x12 * 22u32 - x18;
    let inner = Complex::with_val(ctx.work_bits(), (inner, 0)).sqrt();
    let s3 = ctx.real(3).sqrt() * 3u32;
    let base = inner * s3 + (-(x6 * 9u32) - 125u32);
    (base.ln() / 3u32).exp()
}

/// `U(X)` through the printed complex radical (principal branches).
pub fn u_radical(x: &BigReal, ctx: &PrecisionContext) -> Result<BigComplex> {
    require_positive(x, "u_radical")?;
    let h = radical_h(x, ctx);
    let x2 = ctx.real(x).square();
    let x4 = x2.clone().square();
    let three_x2 = x2 * 3u32;
    let t1 = Complex::with_val(ctx.work_bits(), (-(ctx.real(5) / &three_x2), 0));
    let t2 = (h.clone() * &three_x2).recip() * 25u32;
    let t3 = h.clone().recip() * &x4;
    let t4 = h / &three_x2;
    Ok((t1 + t2 + t3 + t4).sqrt())
}

/// Cubic-root route vs. printed radical for one `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct UCrossCheck {
    pub y: BigReal,
    pub radical: BigComplex,
    /// `|radical - y|`
    pub gap: BigReal,
}

pub fn u_cross_check(x: &BigReal, ctx: &PrecisionContext) -> Result<UCrossCheck> {
    let y = u_map(x, ctx)?;
    let radical = u_radical(x, ctx)?;
    let gap = Complex::with_val(ctx.work_bits(), &radical - &y)
        .abs()
        .real()
        .clone();
    Ok(UCrossCheck { y, radical, gap })
}

/// `X = U*(Y) = √(-1/(2Y²) + Y⁴/2 + √(1 + 18Y⁶ + Y¹²)/(2Y²))`
pub fn u_star(y: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    require_positive(y, "u_star")?;
    let y2 = ctx.real(y).square();
    let y6 = y2.clone().pow(3u32);
    let disc = (y6.clone() * 18u32 + y6.clone().square() + 1u32).sqrt();
    let two_y2 = y2.clone() * 2u32;
    let x2 = (disc - 1u32) / &two_y2 + y2.square() / 2u32;
    Ok(x2.sqrt())
}

/// `P(x) = U(Q(U*(x)⁶)^(1/6))`
pub fn p_map(x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let s = u_star(x, ctx)?.pow(6u32);
    let a = descend_a(&s, ctx)?;
    if a <= 0 {
        return Err(Error::Branch(format!(
            "p_map({}): descent produced non-positive a = {}",
            x.to_f64(),
            a.to_f64()
        )));
    }
    u_map(&root(&a, 6), ctx)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GRecord {
    pub r: PosRational,
    pub g: BigReal,
}

/// `G = 2^(-1/12) (k k')^(-1/12)`
pub fn g_from_kkp(kkp: &BigReal, ctx: &PrecisionContext) -> BigReal {
    (ctx.real(kkp) * 2u32).recip().root(12)
}

pub fn g_from_record(rec: &SingularModulusRecord, ctx: &PrecisionContext) -> GRecord {
    GRecord {
        r: rec.r,
        g: g_from_kkp(&rec.kkp(), ctx),
    }
}

pub fn g_invariant(r: PosRational, ctx: &PrecisionContext) -> Result<GRecord> {
    Ok(g_from_record(&solve_singular_modulus(r, ctx)?, ctx))
}

/// `G` from the product side: `2^(-1/4) q^(-1/24) f(-q²)² / (f(-q) f(-q⁴))`.
pub fn g_from_products(r: PosRational, ctx: &PrecisionContext) -> Result<BigReal> {
    let q = nome(r, ctx);
    let q2 = q.clone().square();
    let q4 = q2.clone().square();
    let chi = eta_f(&q2, ctx)?.square() / (eta_f(&q, ctx)? * eta_f(&q4, ctx)?);
    let scale = (ctx.real(2).root(4) * q.root(24)).recip();
    Ok(scale * chi)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Thm31Report {
    pub r: PosRational,
    /// `A = f(-q²)/(q^(1/3) f(-q¹⁰))`
    pub a_quotient: BigReal,
    /// `V' = G_{25r}/G_r`
    pub v_ratio: BigReal,
    /// `|A⁶ - a_{4r}|` with `a_{4r}` from the moduli at `4r`, `100r`
    pub a6_residual: BigReal,
    /// defining relation at `(A, V')`
    pub relation_residual: BigReal,
}

impl Thm31Report {
    pub fn residual(&self) -> BigReal {
        self.a6_residual.clone().max(&self.relation_residual)
    }
}

pub fn verify_thm31(r: PosRational, ctx: &PrecisionContext) -> Result<Thm31Report> {
    let q = nome(r, ctx);
    let q2 = q.clone().square();
    let q10 = q2.clone().pow(5u32);
    let a_quotient = eta_f(&q2, ctx)? / (q.root(3) * eta_f(&q10, ctx)?);

    let at_r = solve_singular_modulus(r, ctx)?;
    let at_25r = solve_singular_modulus(r.times25()?, ctx)?;
    let v_ratio = g_from_record(&at_25r, ctx).g / g_from_record(&at_r, ctx).g;

    let r4 = r.scale(4, 1)?;
    let at_4r = solve_singular_modulus(r4, ctx)?;
    let at_100r = solve_singular_modulus(r4.times25()?, ctx)?;
    let a4r = a_from_moduli(&at_4r, &at_100r, ctx);

    let a6_residual = (a_quotient.clone().pow(6u32) - a4r).abs();
    let relation_residual = defining_residual(&a_quotient, &v_ratio, ctx).abs();
    Ok(Thm31Report {
        r,
        a_quotient,
        v_ratio,
        a6_residual,
        relation_residual,
    })
}

/// Two sides of `G_r/G_{r/25} = P(G_{25r}/G_r)` from three solved moduli.
pub fn thm32_sides(
    below: &SingularModulusRecord,
    at_r: &SingularModulusRecord,
    above: &SingularModulusRecord,
    ctx: &PrecisionContext,
) -> Result<(BigReal, BigReal)> {
    let g_lo = g_from_record(below, ctx).g;
    let g_mid = g_from_record(at_r, ctx).g;
    let g_hi = g_from_record(above, ctx).g;
    let lhs = g_mid.clone() / g_lo;
    let rhs = p_map(&(g_hi / g_mid), ctx)?;
    Ok((lhs, rhs))
}

pub fn verify_thm32(r: PosRational, ctx: &PrecisionContext) -> Result<BigReal> {
    let below = solve_singular_modulus(r.over25()?, ctx)?;
    let at_r = solve_singular_modulus(r, ctx)?;
    let above = solve_singular_modulus(r.times25()?, ctx)?;
    let (lhs, rhs) = thm32_sides(&below, &at_r, &above, ctx)?;
    Ok((lhs - rhs).abs())
}

/// `(x/y)^(1/12)`
fn twelfth_root_ratio(x: &BigReal, y: &BigReal, ctx: &PrecisionContext) -> BigReal {
    (ctx.real(x) / y).root(12)
}

/// Two sides of `(kk'_{25r}/kk'_r)^(1/12) = P((kk'_r/kk'_{r/25})^(1/12))`.
pub fn thm33_sides(
    below: &SingularModulusRecord,
    at_r: &SingularModulusRecord,
    above: &SingularModulusRecord,
    ctx: &PrecisionContext,
) -> Result<(BigReal, BigReal)> {
    let lhs = twelfth_root_ratio(&above.kkp(), &at_r.kkp(), ctx);
    let rhs = p_map(&twelfth_root_ratio(&at_r.kkp(), &below.kkp(), ctx), ctx)?;
    Ok((lhs, rhs))
}

pub fn verify_thm33(r: PosRational, ctx: &PrecisionContext) -> Result<BigReal> {
    let below = solve_singular_modulus(r.over25()?, ctx)?;
    let at_r = solve_singular_modulus(r, ctx)?;
    let above = solve_singular_modulus(r.times25()?, ctx)?;
    let (lhs, rhs) = thm33_sides(&below, &at_r, &above, ctx)?;
    Ok((lhs - rhs).abs())
}

fn check_kkp(x: &BigReal, what: &str, ctx: &PrecisionContext) -> Result<()> {
    let slack = ctx.pow2(-(ctx.precision_bits() as i64));
    let upper = ctx.real(0.5) + slack;
    if *x <= 0 || *x > upper || x.is_nan() {
        return Err(Error::domain(format!(
            "{what} must lie in (0, 1/2], got {}",
            x.to_f64()
        )));
    }
    Ok(())
}

/// One ascent step: `kk'_{25r} = kk'_r · P((kk'_r / kk'_{r/25})^(1/12))¹²`.
pub fn ascend_once(
    kkp_r: &BigReal,
    kkp_r_over_25: &BigReal,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    Ok(ascend_step(kkp_r, kkp_r_over_25, ctx)?.2)
}

/// `(argument, P(argument), kk'_{25r})`
fn ascend_step(
    kkp_r: &BigReal,
    kkp_r_over_25: &BigReal,
    ctx: &PrecisionContext,
) -> Result<(BigReal, BigReal, BigReal)> {
    check_kkp(kkp_r, "k_r k'_r", ctx)?;
    check_kkp(kkp_r_over_25, "k_(r/25) k'_(r/25)", ctx)?;
    let arg = twelfth_root_ratio(kkp_r, kkp_r_over_25, ctx);
    let p = p_map(&arg, ctx)?;
    let out = ctx.real(kkp_r) * p.clone().pow(12u32);
    if out <= 0 || out >= 0.5 {
        return Err(Error::Branch(format!(
            "ascent produced k k' = {} outside (0, 1/2)",
            out.to_f64()
        )));
    }
    Ok((arg, p, out))
}

/// `k` from `P = k k'` on the branch `k ≤ 1/√2`:
/// `k² = 1/2 - √(1 - 4P²)/2 = 2P² / (1 + √(1 - 4P²))`.
pub fn modulus_from_kkp(kkp: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let p2 = ctx.real(kkp).square();
    let mut radicand = ctx.one() - p2.clone() * 4u32;
    if radicand < 0 {
        let floor = -ctx.pow2(-(ctx.precision_bits() as i64) + ctx.guard_bits() as i64);
        if radicand < floor {
            return Err(Error::Branch(format!(
                "1 - 4(kk')² = {} is negative beyond rounding",
                radicand.to_f64()
            )));
        }
        radicand = ctx.zero();
    }
    let k2 = p2 * 2u32 / (radicand.sqrt() + 1u32);
    Ok(k2.sqrt())
}

fn kkp_of(k: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    if *k <= 0 || *k >= 1 || k.is_nan() {
        return Err(Error::domain(format!(
            "modulus must lie in (0, 1), got {}",
            k.to_f64()
        )));
    }
    Ok(ctx.real(k) * crate::kernel::complement(k, ctx))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LadderStep {
    pub level: usize,
    pub r: PosRational,
    /// argument fed to `P` at this level
    pub argument: BigReal,
    pub p_value: BigReal,
    /// `k k'` at `25^level · r₀`
    pub kkprime: BigReal,
    pub k: BigReal,
    pub oracle_k: BigReal,
    pub oracle_residual: BigReal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LadderTrace {
    pub r0: PosRational,
    pub n: usize,
    pub steps: Vec<LadderStep>,
}

/// Slack (in decimal digits) allowed for error accumulated along the ladder.
pub const LADDER_SLACK_DIGITS: u32 = 20;

/// Run `n` ascent steps from `k_{r₀}` and `k_{r₀/25}`, certifying every level
/// against a fresh solve at `25^j r₀`.
pub fn ladder(
    r0: PosRational,
    k_r0: &BigReal,
    k_r0_over_25: &BigReal,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<LadderTrace> {
    if n == 0 {
        return Err(Error::domain("ladder needs n >= 1"));
    }
    let mut kkp_prev = kkp_of(k_r0_over_25, ctx)?;
    let mut kkp_cur = kkp_of(k_r0, ctx)?;
    let mut r = r0;
    let mut steps = Vec::with_capacity(n);
    for level in 1..=n {
        r = r.times25()?;
        if !r.at_least_one() {
            return Err(Error::Branch(format!(
                "level {level} has r = {r} < 1; the k <= 1/sqrt(2) branch does not apply, \
                 ladder from the reciprocal and take complements"
            )));
        }
        let (argument, p_value, kkp_next) = ascend_step(&kkp_cur, &kkp_prev, ctx)?;
        let k = modulus_from_kkp(&kkp_next, ctx)?;
        let oracle = solve_singular_modulus(r, ctx)?;
        let oracle_residual = (k.clone() - &oracle.k).abs();
        steps.push(LadderStep {
            level,
            r,
            argument,
            p_value,
            kkprime: kkp_next.clone(),
            k,
            oracle_k: oracle.k,
            oracle_residual,
        });
        kkp_prev = kkp_cur;
        kkp_cur = kkp_next;
    }
    let trace = LadderTrace { r0, n, steps };
    let tol = ctx.tol_with_slack(LADDER_SLACK_DIGITS);
    if let Some(bad) = trace.steps.iter().find(|s| s.oracle_residual >= tol) {
        return Err(Error::Certification {
            level: bad.level,
            residual: to_decimal(&bad.oracle_residual),
            trace: Box::new(trace),
        });
    }
    Ok(trace)
}

/// Ladder seeded by solving `k_{r₀}` and `k_{r₀/25}` directly.
pub fn ladder_from_solver(
    r0: PosRational,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<LadderTrace> {
    let seed = solve_singular_modulus(r0, ctx)?;
    let below = solve_singular_modulus(r0.over25()?, ctx)?;
    ladder(r0, &seed.k, &below.k, n, ctx)
}

/// Closed radicals for the seed moduli.
pub mod closed_forms {
    use super::*;

    fn sqrt5(ctx: &PrecisionContext) -> BigReal {
        ctx.real(5).sqrt()
    }

    /// `k₁ = 1/√2`
    pub fn k1(ctx: &PrecisionContext) -> BigReal {
        ctx.real(0.5).sqrt()
    }

    fn k5_family(sign: i32, ctx: &PrecisionContext) -> BigReal {
        let s5 = sqrt5(ctx);
        let inner = (s5.clone() * 17u32 + 38u32).sqrt() * 2u32 * sign;
        let num = s5.clone() * 4u32 + 9u32 + inner;
        let den = s5 * 8u32 + 18u32;
        (num / den).sqrt()
    }

    /// `k₅ = √((9 + 4√5 - 2√(38 + 17√5)) / (18 + 8√5))`
    pub fn k5(ctx: &PrecisionContext) -> BigReal {
        k5_family(-1, ctx)
    }

    /// `k_{1/5} = √((9 + 4√5 + 2√(38 + 17√5)) / (18 + 8√5))`
    pub fn k_one_fifth(ctx: &PrecisionContext) -> BigReal {
        k5_family(1, ctx)
    }

    /// `k₂₅ = 1/√(2(51841 + 23184√5 + 12√(37325880 + 16692641√5)))`
    pub fn k25(ctx: &PrecisionContext) -> BigReal {
        let s5 = sqrt5(ctx);
        let inner = (s5.clone() * 16_692_641u32 + 37_325_880u32).sqrt() * 12u32;
        let total = s5 * 23_184u32 + 51_841u32 + inner;
        (total * 2u32).sqrt().recip()
    }
}

/// One printed example compared against its canonical ascent form.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleCheck {
    pub id: &'static str,
    pub r: PosRational,
    pub oracle_k: BigReal,
    pub canonical_form: &'static str,
    pub canonical_k: BigReal,
    pub canonical_residual: BigReal,
    pub canonical_pass: bool,
    pub verbatim_form: &'static str,
    /// `None` when the printed form cannot be evaluated (branch/domain failure)
    pub verbatim_k: Option<BigReal>,
    pub verbatim_residual: Option<BigReal>,
    pub verbatim_holds: bool,
}

/// `√(1/2 - √(1 - s)/2)` for `s = 4(kk')²`, or `None` if `s ∉ [0, 1]`.
fn printed_minus_branch(s: &BigReal, ctx: &PrecisionContext) -> Option<BigReal> {
    let radicand = ctx.one() - s;
    if radicand < 0 || *s < 0 {
        return None;
    }
    let k2 = (ctx.one() - radicand.sqrt()) / 2u32;
    Some(k2.sqrt())
}

fn example_check(
    id: &'static str,
    r: PosRational,
    canonical_form: &'static str,
    canonical_s: BigReal,
    verbatim_form: &'static str,
    verbatim_s: Option<BigReal>,
    ctx: &PrecisionContext,
) -> Result<ExampleCheck> {
    let oracle_k = solve_singular_modulus(r, ctx)?.k;
    let tol = ctx.tol_with_slack(LADDER_SLACK_DIGITS);
    let canonical_k = printed_minus_branch(&canonical_s, ctx)
        .ok_or_else(|| Error::Branch(format!("{id}: canonical radicand out of range")))?;
    let canonical_residual = (canonical_k.clone() - &oracle_k).abs();
    let verbatim_k = verbatim_s.and_then(|s| printed_minus_branch(&s, ctx));
    let verbatim_residual = verbatim_k.as_ref().map(|k| (k.clone() - &oracle_k).abs());
    Ok(ExampleCheck {
        id,
        r,
        canonical_pass: canonical_residual < tol,
        verbatim_holds: verbatim_residual.as_ref().is_some_and(|res| *res < tol),
        oracle_k,
        canonical_form,
        canonical_k,
        canonical_residual,
        verbatim_form,
        verbatim_k,
        verbatim_residual,
    })
}

/// Evaluate the two worked examples as printed and in their canonical ascent
/// form, each against a direct solve.
pub fn audit_examples(ctx: &PrecisionContext) -> Result<Vec<ExampleCheck>> {
    let s5 = ctx.real(5).sqrt();

    // k₁₂₅ from (k₅, k_{1/5}): 4(k₅k'₅)² = 9 - 4√5, argument 1
    let c125 = ctx.real(9) - s5.clone() * 4u32;
    let p1 = p_map(&ctx.one(), ctx)?;
    let eq37 = example_check(
        "eq37",
        PosRational::integer(125)?,
        "sqrt(1/2 - 1/2 sqrt(1 - (9-4sqrt5) P[1]^24))",
        c125.clone() * p1.clone().pow(24u32),
        "sqrt(1/2 - 1/2 sqrt(1 - (9-4sqrt5) P[1]^2))",
        Some(c125 * p1.square()),
        ctx,
    )?;

    // k₆₂₅ from (k₂₅, k₁): 2k₂₅k'₂₅ = 1/(161 + 72√5), argument (161 - 72√5)^(1/12)
    let plus = s5.clone() * 72u32 + 161u32;
    let minus = ctx.real(161) - s5 * 72u32;
    let canonical = p_map(&minus.clone().root(12), ctx)?.pow(12u32) / &plus;
    let verbatim = p_map(&minus, ctx).ok().map(|p| (p / &plus).square());
    let eq38 = example_check(
        "eq38",
        PosRational::integer(625)?,
        "sqrt(1/2 - 1/2 sqrt(1 - (P[(161-72sqrt5)^(1/12)]^12 / (161+72sqrt5))^2))",
        canonical.square(),
        "sqrt(1/2 - 1/2 sqrt(1 - (P[161-72sqrt5] / (161+72sqrt5))^2))",
        verbatim,
        ctx,
    )?;
    Ok(vec![eq37, eq38])
}
