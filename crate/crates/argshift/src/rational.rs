//! Thin helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The ground field everywhere in this crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qq(num: i64, den: i64) -> Q {
    assert!(den != 0, "zero denominator");
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_zero(x: &Q) -> bool {
    x.is_zero()
}

pub fn is_one(x: &Q) -> bool {
    x.is_one()
}

/// Renders `p/q`, or just `p` for integers. This is the wire format used in
/// JSON reports, so it must stay stable.
pub fn q_to_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses the output of [`q_to_string`].
pub fn q_from_string(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Q::from_integer(n))
        }
    }
}

/// `k!` as a rational, for the Taylor coefficients of directional derivatives.
pub fn factorial(k: usize) -> Q {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    Q::from_integer(acc)
}

/// Exact integer extraction; `None` when the value is not an integer.
pub fn to_integer(x: &Q) -> Option<BigInt> {
    if x.denom().is_one() {
        Some(x.numer().clone())
    } else {
        None
    }
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for (n, d) in [(1, 1), (-3, 7), (22, 4), (0, 5), (-9, 1)] {
            let x = qq(n, d);
            assert_eq!(q_from_string(&q_to_string(&x)).unwrap(), x);
        }
        assert_eq!(q_to_string(&qq(22, 4)), "11/2");
        assert_eq!(q_to_string(&q(-5)), "-5");
        assert!(q_from_string("1/0").is_none());
        assert!(q_from_string("x").is_none());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), q(1));
        assert_eq!(factorial(1), q(1));
        assert_eq!(factorial(5), q(120));
    }
}
