//! Exact rational helpers.
//!
//! Every weight, threshold and objective value in the crate is a
//! [`Rational`]; there is no floating point anywhere in the solver path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Builds `p/q` from machine integers. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `p` or `p/q` with optional leading `-` on `p`, decimal digits only.
/// Decimal points and exponents are rejected on purpose.
pub fn parse_rational(s: &str) -> Option<Rational> {
    fn integer(s: &str, allow_sign: bool) -> Option<BigInt> {
        let digits = if allow_sign {
            s.strip_prefix('-').unwrap_or(s)
        } else {
            s
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok()
    }
    match s.split_once('/') {
        None => integer(s, true).map(Rational::from_integer),
        Some((p, q)) => {
            let p = integer(p, true)?;
            let q = integer(q, false)?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty list).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Smallest integer `t` with `2^t >= x`; `None` when `x <= 0`.
pub fn ceil_log2(x: &Rational) -> Option<i64> {
    if !x.is_positive() {
        return None;
    }
    let two = int(2);
    let mut t = 0i64;
    let mut p = Rational::one();
    if &p >= x {
        while &(&p / &two) >= x {
            p /= &two;
            t -= 1;
        }
    } else {
        while &p < x {
            p *= &two;
            t += 1;
        }
    }
    Some(t)
}

pub fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}
