use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::field::Field;
use crate::error::{Error, Result};

/// Arbitrary-precision integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Integer(BigInt);

impl Integer {
    pub fn zero() -> Self {
        Integer(BigInt::zero())
    }

    pub fn one() -> Self {
        Integer(BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Integer(self.0.abs())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        Integer(self.0.gcd(&other.0))
    }

    pub fn pow(&self, e: u32) -> Self {
        Integer(num_traits::pow(self.0.clone(), e as usize))
    }

    /// Least nonnegative residue modulo `m > 0`.
    pub fn rem_u64(&self, m: u64) -> u64 {
        let r = self.0.mod_floor(&BigInt::from(m));
        u64::try_from(r).expect("residue fits below the modulus")
    }

    /// `C(n, k)` exactly.
    pub fn binomial(n: u64, k: u64) -> Self {
        if k > n {
            return Self::zero();
        }
        let k = k.min(n - k);
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        Integer(acc)
    }

    /// Divides exactly; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        let (q, r) = self.0.div_rem(&other.0);
        r.is_zero().then_some(Integer(q))
    }

    pub fn to_i64(&self) -> Option<i64> {
        num_traits::ToPrimitive::to_i64(&self.0)
    }

    pub fn as_bigint(&self) -> &BigInt {
        &self.0
    }
}

impl From<i64> for Integer {
    fn from(n: i64) -> Self {
        Integer(BigInt::from(n))
    }
}

impl From<BigInt> for Integer {
    fn from(n: BigInt) -> Self {
        Integer(n)
    }
}

impl FromStr for Integer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BigInt::from_str(s.trim()).map(Integer).map_err(|e| Error::Parse {
            line: 1,
            col: 1,
            msg: format!("invalid integer {s:?}: {e}"),
        })
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

macro_rules! integer_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for &Integer {
            type Output = Integer;
            fn $m(self, rhs: &Integer) -> Integer {
                Integer((&self.0).$m(&rhs.0))
            }
        }
        impl $tr for Integer {
            type Output = Integer;
            fn $m(self, rhs: Integer) -> Integer {
                Integer(self.0.$m(rhs.0))
            }
        }
    };
}
integer_binop!(Add, add);
integer_binop!(Sub, sub);
integer_binop!(Mul, mul);

impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        Integer(-self.0)
    }
}

/// Reduced fraction with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` in lowest terms; a zero denominator is an error.
    pub fn new(num: Integer, den: Integer) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.0, den.0)))
    }

    pub fn from_integer(n: Integer) -> Self {
        Rational(BigRational::from_integer(n.0))
    }

    pub fn numer(&self) -> Integer {
        Integer(self.0.numer().clone())
    }

    pub fn denom(&self) -> Integer {
        Integer(self.0.denom().clone())
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            self.0.numer().fmt(f)
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// The field ℚ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational(BigRational::zero())
    }
    fn one(&self) -> Rational {
        Rational(BigRational::one())
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.0.is_zero()
    }
    fn is_one(&self, a: &Rational) -> bool {
        a.0.is_one()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        Rational(&a.0 + &b.0)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        Rational(&a.0 - &b.0)
    }
    fn neg(&self, a: &Rational) -> Rational {
        Rational(-&a.0)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        Rational(&a.0 * &b.0)
    }
    fn inv(&self, a: &Rational) -> Result<Rational> {
        if a.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(a.0.recip()))
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from(n)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn cardinality(&self) -> Option<u64> {
        None
    }
    fn pth_root(&self, a: &Rational) -> Rational {
        a.clone()
    }
    fn format_elem(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<Rational> {
        let s = s.trim();
        let err = || Error::Parse {
            line: 1,
            col: 1,
            msg: format!("invalid rational {s:?}"),
        };
        let int = |t: &str| -> Result<Integer> {
            let t = t.trim();
            let body = t.strip_prefix(['-', '+']).unwrap_or(t);
            if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            t.parse()
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(int(n)?, int(d)?),
            None => Ok(Rational::from_integer(int(s)?)),
        }
    }
    fn is_negative(&self, a: &Rational) -> bool {
        a.0.is_negative()
    }
    fn name(&self) -> String {
        "QQ".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into()).unwrap()
    }

    #[test]
    fn canonical_form() {
        let a = q(6, -4);
        assert_eq!(a.numer(), Integer::from(-3));
        assert_eq!(a.denom(), Integer::from(2));
        assert_eq!(q(0, -7).denom(), Integer::from(1));
        assert!(Rational::new(1.into(), 0.into()).is_err());
        assert!(!Integer::from(0).is_negative());
    }

    #[test]
    fn exact_binomials() {
        assert_eq!(Integer::binomial(6, 3), Integer::from(20));
        assert_eq!(Integer::binomial(3, 5), Integer::zero());
        assert_eq!(
            Integer::binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
        assert_eq!(Integer::binomial(6, 3).rem_u64(7), 6);
        assert_eq!(Integer::from(-3).rem_u64(5), 2);
    }

    #[test]
    fn parse_and_print() {
        let f = RationalField;
        for s in ["0", "-3", "7/2", "-1/3"] {
            assert_eq!(f.format_elem(&f.parse_elem(s).unwrap()), s);
        }
        assert!(f.parse_elem("1/0").is_err());
        assert!(f.parse_elem("x").is_err());
    }

    proptest! {
        #[test]
        fn field_axioms(a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30, e in -50i64..50) {
            let f = RationalField;
            let (x, y, z) = (q(a, b), q(c, d), q(e, 7));
            prop_assert_eq!(f.mul(&f.mul(&x, &y), &z), f.mul(&x, &f.mul(&y, &z)));
            prop_assert_eq!(f.mul(&x, &f.add(&y, &z)), f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
            if !f.is_zero(&x) {
                prop_assert!(f.is_one(&f.mul(&x, &f.inv(&x).unwrap())));
            }
            let num = x.numer().abs();
            prop_assert!(num.gcd(&x.denom()).0.is_one() || num.is_zero());
        }

        #[test]
        fn integer_ring_axioms(a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
            let (x, y, z) = (Integer::from(a), Integer::from(b), Integer::from(c));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x + &y) - &y, x);
        }
    }
}
