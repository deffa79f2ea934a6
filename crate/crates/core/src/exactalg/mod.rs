//! Exact scalars and the sparse multivariate polynomial engine.
//!
//! Coefficients are arbitrary-precision rationals throughout; elements of an
//! imaginary quadratic field only appear when a polynomial is evaluated at a
//! point (Hermitian matrices, randomized checks).

mod linalg;
mod poly;
mod quad;
mod text;

pub use linalg::{det_bareiss, rank_bareiss};
pub use poly::{poly_arith, ArithOp, Family, Monomial, MultiPoly, VarId};
pub use quad::QuadFieldElement;
pub use text::{JsonTerm, JsonVar};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("variable {0} has no assigned value")]
    Unassigned(VarId),
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error("cannot parse polynomial: {0}")]
    BadPolynomial(String),
    #[error("field parameters differ: d={0} vs d={1}")]
    FieldMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` (optional leading sign) into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational, AlgError> {
    let bad = || AlgError::BadRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Binomial coefficient as a big integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["0", "-3", "3/2", "-7/10"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("6/-4").unwrap()), "-3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn canonical_form_after_ops() {
        let a = rat_frac(6, 8);
        assert_eq!(a.numer(), &BigInt::from(3));
        assert_eq!(a.denom(), &BigInt::from(4));
        let b = rat_frac(1, -3);
        assert!(b.denom() > &BigInt::zero());
        let z = &a - &a;
        assert_eq!(z.denom(), &BigInt::one());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }
}
