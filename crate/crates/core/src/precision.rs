//! Working precision and tolerance threaded through every numeric operation.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Assign, Float};

use crate::error::{Error, Result};

/// Real value at context precision.
pub type BigReal = rug::Float;
/// Complex value at context precision.
pub type BigComplex = rug::Complex;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Immutable numeric settings. All arithmetic runs at
/// `precision_bits + guard_bits`; results are accepted when their residual is
/// below `10^-tol_exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    precision_bits: u32,
    tol_exp: u32,
    guard_bits: u32,
    max_iter: usize,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            precision_bits: 512,
            tol_exp: 120,
            guard_bits: 64,
            max_iter: 10_000,
        }
    }
}

impl PrecisionContext {
    pub fn new(
        precision_bits: u32,
        tol_exp: u32,
        guard_bits: u32,
        max_iter: usize,
    ) -> Result<Self> {
        if precision_bits < 64 {
            return Err(Error::Precision(format!(
                "precision_bits must be at least 64, got {precision_bits}"
            )));
        }
        if tol_exp == 0 || max_iter == 0 {
            return Err(Error::Precision(
                "tol_exp and max_iter must be positive".into(),
            ));
        }
        let needed = f64::from(tol_exp) * LOG2_10 + f64::from(guard_bits);
        if needed >= f64::from(precision_bits) {
            return Err(Error::Precision(format!(
                "tolerance 1e-{tol_exp} plus {guard_bits} guard bits needs more than {precision_bits} bits"
            )));
        }
        Ok(PrecisionContext {
            precision_bits,
            tol_exp,
            guard_bits,
            max_iter,
        })
    }

    /// Default tolerance and guard settings at the given precision.
    pub fn with_precision(precision_bits: u32) -> Result<Self> {
        let d = Self::default();
        Self::new(precision_bits, d.tol_exp, d.guard_bits, d.max_iter)
    }

    pub fn with_tol_exp(self, tol_exp: u32) -> Result<Self> {
        Self::new(self.precision_bits, tol_exp, self.guard_bits, self.max_iter)
    }

    pub fn with_max_iter(self, max_iter: usize) -> Result<Self> {
        Self::new(self.precision_bits, self.tol_exp, self.guard_bits, max_iter)
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn tol_exp(&self) -> u32 {
        self.tol_exp
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    pub fn max_iter(&self) -> usize {
        self.max_iter
    }

    /// Mantissa bits used for every intermediate value.
    pub fn work_bits(&self) -> u32 {
        self.precision_bits + self.guard_bits
    }

    pub fn real<T>(&self, v: T) -> BigReal
    where
        Float: Assign<T>,
    {
        Float::with_val(self.work_bits(), v)
    }

    pub fn zero(&self) -> BigReal {
        Float::new(self.work_bits())
    }

    pub fn one(&self) -> BigReal {
        self.real(1)
    }

    pub fn pi(&self) -> BigReal {
        Float::with_val(self.work_bits(), Constant::Pi)
    }

    /// Acceptance threshold `10^-tol_exp`.
    pub fn tol(&self) -> BigReal {
        self.tol_with_slack(0)
    }

    /// `10^-(tol_exp - slack)`, used where error accumulates across compositions.
    pub fn tol_with_slack(&self, slack: u32) -> BigReal {
        let e = self.tol_exp.saturating_sub(slack);
        self.pow10(-(e as i32))
    }

    /// `10^exp` at working precision.
    pub fn pow10(&self, exp: i32) -> BigReal {
        self.real(10).pow(exp)
    }

    /// `2^exp` at working precision.
    pub fn pow2(&self, exp: i64) -> BigReal {
        let mut x = self.one();
        x <<= exp as i32;
        x
    }

    /// Parse a decimal string at working precision.
    pub fn parse(&self, s: &str) -> Result<BigReal> {
        Float::parse(s)
            .map(|p| Float::with_val(self.work_bits(), p))
            .map_err(|e| Error::domain(format!("cannot parse `{s}` as a number: {e}")))
    }
}

/// Round-trip decimal rendering of a value (re-parses to the same bits at the
/// value's precision).
pub fn to_decimal(x: &BigReal) -> String {
    x.to_string_radix(10, None)
}

/// Rendering with at most `digits` significant digits.
pub fn to_digits(x: &BigReal, digits: usize) -> String {
    x.to_string_radix(10, Some(digits.max(1)))
}

/// Real positive `n`-th root; `x` must be non-negative.
pub(crate) fn root(x: &BigReal, n: u32) -> BigReal {
    x.clone().root(n)
}
