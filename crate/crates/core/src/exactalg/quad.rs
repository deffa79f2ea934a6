use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{format_rational, AlgError, Rational};

/// An element `re + co·√(−d)` of the imaginary quadratic field `Q(√−d)`.
///
/// `d` travels with the value; mixing elements of different fields is a
/// programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadFieldElement {
    pub re: Rational,
    pub co: Rational,
    pub d: u64,
}

impl QuadFieldElement {
    pub fn new(re: Rational, co: Rational, d: u64) -> Self {
        Self { re, co, d }
    }

    pub fn from_rational(re: Rational, d: u64) -> Self {
        Self { re, co: Rational::zero(), d }
    }

    pub fn zero(d: u64) -> Self {
        Self::from_rational(Rational::zero(), d)
    }

    pub fn one(d: u64) -> Self {
        Self::from_rational(Rational::one(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.co.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.co.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), co: -&self.co, d: self.d }
    }

    /// `x · conj(x) = re² + d·co²`, always a nonnegative rational.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + Rational::from_integer(self.d.into()) * &self.co * &self.co
    }

    pub fn inv(&self) -> Result<Self, AlgError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Ok(Self { re: &self.re / &n, co: -&self.co / &n, d: self.d })
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.d);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.d, other.d, "mixed quadratic fields");
    }
}

impl fmt::Display for QuadFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.co.is_zero() {
            write!(f, "{}", format_rational(&self.re))
        } else {
            write!(f, "{} + {}*sqrt(-{})", format_rational(&self.re), format_rational(&self.co), self.d)
        }
    }
}

impl Add for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn add(self, rhs: &QuadFieldElement) -> QuadFieldElement {
        self.check(rhs);
        QuadFieldElement { re: &self.re + &rhs.re, co: &self.co + &rhs.co, d: self.d }
    }
}

impl Sub for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn sub(self, rhs: &QuadFieldElement) -> QuadFieldElement {
        self.check(rhs);
        QuadFieldElement { re: &self.re - &rhs.re, co: &self.co - &rhs.co, d: self.d }
    }
}

impl Mul for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn mul(self, rhs: &QuadFieldElement) -> QuadFieldElement {
        self.check(rhs);
        let d = Rational::from_integer(self.d.into());
        QuadFieldElement {
            re: &self.re * &rhs.re - d * &self.co * &rhs.co,
            co: &self.re * &rhs.co + &self.co * &rhs.re,
            d: self.d,
        }
    }
}

impl Neg for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn neg(self) -> QuadFieldElement {
        QuadFieldElement { re: -&self.re, co: -&self.co, d: self.d }
    }
}

impl Add for QuadFieldElement {
    type Output = QuadFieldElement;
    fn add(self, rhs: QuadFieldElement) -> QuadFieldElement {
        &self + &rhs
    }
}

impl Sub for QuadFieldElement {
    type Output = QuadFieldElement;
    fn sub(self, rhs: QuadFieldElement) -> QuadFieldElement {
        &self - &rhs
    }
}

impl Mul for QuadFieldElement {
    type Output = QuadFieldElement;
    fn mul(self, rhs: QuadFieldElement) -> QuadFieldElement {
        &self * &rhs
    }
}
