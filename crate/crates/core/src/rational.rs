use std::fmt;
use std::str::FromStr;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::precision::{BigReal, PrecisionContext};

/// Exact positive rational `num/den`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PosRational {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl PosRational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::domain(format!(
                "r must be positive, got {num}/{den}"
            )));
        }
        let g = gcd(num, den);
        Ok(PosRational {
            num: num / g,
            den: den / g,
        })
    }

    pub fn integer(n: u64) -> Result<Self> {
        Self::new(n, 1)
    }

    pub const ONE: PosRational = PosRational { num: 1, den: 1 };

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn recip(&self) -> Self {
        PosRational {
            num: self.den,
            den: self.num,
        }
    }

    /// `self * num / den`
    pub fn scale(&self, num: u64, den: u64) -> Result<Self> {
        let n = self
            .num
            .checked_mul(num)
            .ok_or_else(|| Error::domain("rational overflow"))?;
        let d = self
            .den
            .checked_mul(den)
            .ok_or_else(|| Error::domain("rational overflow"))?;
        Self::new(n, d)
    }

    pub fn times25(&self) -> Result<Self> {
        self.scale(25, 1)
    }

    pub fn over25(&self) -> Result<Self> {
        self.scale(1, 25)
    }

    pub fn is_one(&self) -> bool {
        self.num == 1 && self.den == 1
    }

    /// `r >= 1`
    pub fn at_least_one(&self) -> bool {
        self.num >= self.den
    }

    /// Value at working precision.
    pub fn to_real(&self, ctx: &PrecisionContext) -> BigReal {
        let mut v = Float::with_val(ctx.work_bits(), self.num);
        v /= self.den;
        v
    }

    /// `√r` computed fresh at working precision.
    pub fn sqrt(&self, ctx: &PrecisionContext) -> BigReal {
        self.to_real(ctx).sqrt()
    }
}

impl fmt::Display for PosRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for PosRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::domain(format!("cannot parse `{s}` as a positive rational p/q"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: u64 = n.parse().map_err(|_| bad())?;
        let den: u64 = d.parse().map_err(|_| bad())?;
        PosRational::new(num, den)
    }
}
