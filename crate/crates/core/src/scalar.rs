//! Exact rational scalars.
//!
//! Every coefficient in the engine is a [`Scalar`], an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. The text form is
//! `p/q`, with `/1` omitted for integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// The rational `n/d`. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `p`, `-p` or `p/q`. Surrounding whitespace is ignored.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::Parse {
        input: text.to_string(),
        position: 0,
        message: "expected a rational number of the form p or p/q".into(),
    };
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse {
            input: text.to_string(),
            position: t.find('/').unwrap_or(0),
            message: "zero denominator".into(),
        });
    }
    Ok(BigRational::new(n, d))
}

/// Canonical text form (`p/q`, or `p` when the denominator is one).
pub fn fmt_scalar(c: &Scalar) -> String {
    c.to_string()
}

/// `c^k` for any integer `k`; `None` when `c = 0` and `k < 0`.
pub fn pow(c: &Scalar, k: i64) -> Option<Scalar> {
    if k >= 0 {
        Some(num_traits::pow(c.clone(), k as usize))
    } else if c.is_zero() {
        None
    } else {
        Some(num_traits::pow(c.recip(), k.unsigned_abs() as usize))
    }
}

/// Binomial coefficient `C(n, k)` as a scalar.
pub fn binomial(n: u32, k: u32) -> Scalar {
    if k > n {
        return zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    BigRational::from_integer(acc)
}

/// Falling factorial `n (n-1) ... (n-k+1)`.
pub fn falling(n: u32, k: u32) -> Scalar {
    if k > n {
        return zero();
    }
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= BigInt::from(n - t);
    }
    BigRational::from_integer(acc)
}

pub fn factorial(n: u32) -> Scalar {
    falling(n, n)
}

/// True when `c` is an integer `>= 0`; returns that integer if it fits.
pub fn as_nonneg_int(c: &Scalar) -> Option<u32> {
    if !c.is_integer() || c.is_negative() {
        return None;
    }
    u32::try_from(c.to_integer()).ok()
}
