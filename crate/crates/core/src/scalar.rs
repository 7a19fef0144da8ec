//! Exact rational scalars and small combinatorial helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact scalar field used throughout.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Product that skips the gcd reduction when both factors are integers.
pub fn qmul(a: &Q, b: &Q) -> Q {
    if a.is_integer() && b.is_integer() {
        Q::new_raw(a.numer() * b.numer(), BigInt::one())
    } else {
        a * b
    }
}

/// `*a += b`, skipping the gcd reduction for integers.
pub fn qadd_assign(a: &mut Q, b: Q) {
    if a.is_integer() && b.is_integer() {
        let n = a.numer() + b.numer();
        *a = Q::new_raw(n, BigInt::one());
    } else {
        *a += b;
    }
}

/// Generalized binomial coefficient `top choose k` for any integer `top`.
pub fn binomial(top: i64, k: i64) -> Q {
    if k < 0 {
        return Q::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(top - i);
        den *= BigInt::from(i + 1);
    }
    Q::new(num, den)
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k as u64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `(-1)^k` as a scalar.
pub fn sign(k: i64) -> Q {
    if k.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Formats a scalar as `n` or `n/d`.
pub fn fmt_q(c: &Q) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad scalar `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn is_negative(c: &Q) -> bool {
    c.is_negative()
}
