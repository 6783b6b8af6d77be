//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `Some(k)` when `x` is an integer that fits in `i64`.
pub fn as_integer(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn is_nonneg_integer(x: &Q) -> bool {
    x.is_integer() && !x.is_negative()
}

/// True when `x` is an even integer.
pub fn is_even_integer(x: &Q) -> bool {
    x.is_integer() && x.to_integer().is_even()
}

/// sl₂ dot reflection `t ↦ -t - 2`.
pub fn dot_flip(x: &Q) -> Q {
    -x - q(2)
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `-3`, `1/2`, `+7`, `-5/4`. `offset` shifts reported positions.
pub fn parse_q(s: &str, offset: usize) -> Result<Q> {
    let t = s.trim();
    let lead = s.len() - s.trim_start().len();
    if t.is_empty() {
        return Err(Error::parse(
            offset + lead,
            "rational number",
            "end of input",
        ));
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (t, None),
    };
    let parse_int = |piece: &str, at: usize| -> Result<BigInt> {
        let body = piece.strip_prefix('+').unwrap_or(piece);
        let digits = body.strip_prefix('-').unwrap_or(body);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::parse(at, "integer", format!("{piece:?}")));
        }
        body.parse::<BigInt>()
            .map_err(|_| Error::parse(at, "integer", format!("{piece:?}")))
    };
    let n = parse_int(num, offset + lead)?;
    match den {
        None => Ok(Q::from_integer(n)),
        Some(d) => {
            let at = offset + lead + num.len() + 1;
            let d = parse_int(d, at)?;
            if d.is_zero() {
                return Err(Error::parse(at, "nonzero denominator", "0"));
            }
            Ok(Q::new(n, d))
        }
    }
}

pub fn one() -> Q {
    Q::one()
}
