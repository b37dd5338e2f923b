//! Exact field arithmetic over the rationals and prime fields.
//!
//! Rationals use a machine-word fast path (`i128` numerator and denominator)
//! and fall back to arbitrary precision when an operation would overflow.
//! The representation is canonical: a value is stored in the small form
//! whenever it fits, always reduced, with a positive denominator.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field of every structure in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("prime {p} is not below 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(Rational::from_integer(v as i128)),
            FieldSpec::PrimeField(p) => Scalar::Fp(Fp::new(v, *p)),
        }
    }

    /// Parses a scalar literal: `"3"`, `"-5/7"`; over 𝔽_p a fraction means
    /// numerator times the inverse of the denominator.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad scalar literal {s:?}")))?;
        let den = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad scalar literal {s:?}")))?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Q(Rational::from_big(BigRational::new(num, den)))),
            FieldSpec::PrimeField(p) => {
                let pb = BigInt::from(*p);
                let n = num.mod_floor(&pb).to_u32().unwrap();
                let d = den.mod_floor(&pb).to_u32().unwrap();
                let d = Fp { v: d, p: *p }.inv()?;
                Ok(Scalar::Fp(Fp { v: n, p: *p }.mul(d)))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    // reduced, den > 0, neither component is i128::MIN
    Small(i128, i128),
    // only used when the value does not fit the small form
    Big(Box<BigRational>),
}

/// An exact rational number in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

impl Rational {
    pub fn from_integer(n: i128) -> Self {
        if n == i128::MIN {
            return Self::from_big(BigRational::from_integer(BigInt::from(n)));
        }
        Rational(Repr::Small(n, 1))
    }

    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::small_or_big(num, den))
    }

    fn small_or_big(num: i128, den: i128) -> Self {
        match Self::normalize_small(num, den) {
            Some(r) => r,
            None => Self::from_big(BigRational::new(BigInt::from(num), BigInt::from(den))),
        }
    }

    fn normalize_small(num: i128, den: i128) -> Option<Self> {
        if num == i128::MIN || den == i128::MIN {
            return None;
        }
        if num == 0 {
            return Some(Rational(Repr::Small(0, 1)));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Some(Rational(Repr::Small(n, d)))
    }

    pub fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i128(), r.denom().to_i128()) {
            (Some(n), Some(d)) if n != i128::MIN && d != i128::MIN => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new(r))),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_small(&self) -> bool {
        matches!(self.0, Repr::Small(..))
    }

    pub fn add(&self, other: &Self) -> Self {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    if s != i128::MIN {
                        return Rational(Repr::Small(s, 1));
                    }
                }
            } else if let Some(r) = (|| {
                let num = a.checked_mul(*d)?.checked_add(c.checked_mul(*b)?)?;
                let den = b.checked_mul(*d)?;
                Self::normalize_small(num, den)
            })() {
                return r;
            }
        }
        Self::from_big(self.to_big() + other.to_big())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    if p != i128::MIN {
                        return Rational(Repr::Small(p, 1));
                    }
                }
            } else if let Some(r) = (|| {
                let g1 = a.gcd(d).max(1);
                let g2 = c.gcd(b).max(1);
                let num = (a / g1).checked_mul(c / g2)?;
                let den = (b / g2).checked_mul(d / g1)?;
                Self::normalize_small(num, den)
            })() {
                return r;
            }
        }
        Self::from_big(self.to_big() * other.to_big())
    }

    pub fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(b) => Self::from_big(-(**b).clone()),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.0 {
            Repr::Small(0, _) => Err(Error::DivisionByZero),
            Repr::Small(n, d) => Ok(Self::small_or_big(*d, *n)),
            Repr::Big(b) => Ok(Self::from_big(b.recip())),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

/// A residue modulo a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u32,
    p: u32,
}

impl Fp {
    pub fn new(v: i64, p: u32) -> Self {
        Fp { v: v.rem_euclid(p as i64) as u32, p }
    }

    pub fn value(&self) -> u32 {
        self.v
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn add(self, o: Self) -> Self {
        Fp { v: ((self.v as u64 + o.v as u64) % self.p as u64) as u32, p: self.p }
    }

    fn mul(self, o: Self) -> Self {
        Fp { v: ((self.v as u64 * o.v as u64) % self.p as u64) as u32, p: self.p }
    }

    fn neg(self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inv(self) -> Result<Self> {
        if self.v == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i64, self.v as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(Fp::new(t0, self.p))
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp { v: 1 % self.p, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }
}

/// An element of a [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp(Fp),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarResult {
    Value(Scalar),
    Bool(bool),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Rationals,
            Scalar::Fp(x) => FieldSpec::PrimeField(x.p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(x) => x.v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.0 == Repr::Small(1, 1),
            Scalar::Fp(x) => x.v == 1,
        }
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field().to_string(), other.field().to_string()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(a.add(*b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(a.mul(*b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn neg_ref(&self) -> Self {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp(a) => Scalar::Fp(a.neg()),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(match self {
            Scalar::Q(a) => Scalar::Q(a.inv()?),
            Scalar::Fp(a) => Scalar::Fp(a.inv()?),
        })
    }

    /// Single entry point for the elementary operations; `b` is ignored by
    /// the unary ones.
    pub fn arith(a: &Scalar, b: &Scalar, op: ScalarOp) -> Result<ScalarResult> {
        Ok(match op {
            ScalarOp::Add => ScalarResult::Value(a.checked_add(b)?),
            ScalarOp::Sub => ScalarResult::Value(a.checked_sub(b)?),
            ScalarOp::Mul => ScalarResult::Value(a.checked_mul(b)?),
            ScalarOp::Div => ScalarResult::Value(a.checked_div(b)?),
            ScalarOp::Neg => ScalarResult::Value(a.neg_ref()),
            ScalarOp::Inv => ScalarResult::Value(a.inv()?),
            ScalarOp::Eq => {
                a.same_field(b)?;
                ScalarResult::Bool(a == b)
            }
        })
    }

    /// `self += a * b`, the inner loop of every bilinear expansion.
    pub fn add_product(&mut self, a: &Scalar, b: &Scalar) {
        *self += &(a * b);
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp(x) => write!(f, "{}", x.v),
        }
    }
}

// Operator impls panic on mixed fields; all structures validate the field
// once at construction, so mixing here is a programming error.
impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar field mismatch")
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar field mismatch")
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i128, d: i128) -> Scalar {
        Scalar::Q(Rational::new(n, d).unwrap())
    }

    #[test]
    fn fraction_addition() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
        assert_eq!((&q(1, 2) + &q(1, 3)).to_string(), "5/6");
    }

    #[test]
    fn inverse_of_one_is_one() {
        assert!(FieldSpec::Rationals.one().inv().unwrap().is_one());
        let f7 = FieldSpec::prime(7).unwrap();
        assert!(f7.one().inv().unwrap().is_one());
    }

    #[test]
    fn inverse_mod_seven() {
        let f7 = FieldSpec::prime(7).unwrap();
        let three = f7.from_i64(3);
        assert_eq!(three.inv().unwrap(), f7.from_i64(5));
        assert!((&three * &f7.from_i64(5)).is_one());
    }

    #[test]
    fn errors() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert!(matches!(f7.zero().inv(), Err(Error::DivisionByZero)));
        assert!(matches!(FieldSpec::Rationals.zero().inv(), Err(Error::DivisionByZero)));
        assert!(matches!(
            f7.one().checked_add(&FieldSpec::Rationals.one()),
            Err(Error::FieldMismatch(..))
        ));
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::prime(2147483659).is_err());
        assert!(matches!(
            Scalar::arith(&q(1, 1), &q(0, 1), ScalarOp::Div),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn parse_and_print() {
        let f = FieldSpec::Rationals;
        assert_eq!(f.parse("-5/7").unwrap(), q(-5, 7));
        assert_eq!(f.parse("10/-4").unwrap().to_string(), "-5/2");
        assert!(f.parse("1/0").is_err());
        assert!(f.parse("abc").is_err());
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.parse("-1").unwrap(), f5.from_i64(4));
        assert_eq!(f5.parse("1/2").unwrap(), f5.from_i64(3));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Scalar::Q(Rational::from_integer(i128::MAX));
        let s = &big + &big;
        match &s {
            Scalar::Q(r) => assert!(!r.is_small()),
            _ => unreachable!(),
        }
        let back = &s - &big;
        assert_eq!(back, big);
        match &back {
            Scalar::Q(r) => assert!(r.is_small()),
            _ => unreachable!(),
        }
        let sq = &big * &big;
        let r = match &sq {
            Scalar::Q(r) => r.clone(),
            _ => unreachable!(),
        };
        assert_eq!(r.numer(), BigInt::from(i128::MAX) * BigInt::from(i128::MAX));
        let tiny = &Scalar::Q(Rational::from_integer(1)).checked_div(&sq).unwrap() * &sq;
        assert!(tiny.is_one());
    }

    #[test]
    fn arith_dispatch() {
        assert_eq!(
            Scalar::arith(&q(1, 2), &q(1, 2), ScalarOp::Eq).unwrap(),
            ScalarResult::Bool(true)
        );
        assert_eq!(
            Scalar::arith(&q(2, 3), &q(0, 1), ScalarOp::Inv).unwrap(),
            ScalarResult::Value(q(3, 2))
        );
    }

    fn any_rational() -> impl Strategy<Value = Scalar> {
        prop_oneof![
            (-1000i128..1000, 1i128..50).prop_map(|(n, d)| q(n, d)),
            (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| q(n as i128 * 7919, d as i128)),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms_q(a in any_rational(), b in any_rational(), c in any_rational()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            let parsed = FieldSpec::Rationals.parse(&a.to_string()).unwrap();
            prop_assert_eq!(parsed, a);
        }

        #[test]
        fn field_axioms_fp(a in 0i64..1_000_003, b in 0i64..1_000_003, c in 0i64..1_000_003) {
            let f = FieldSpec::prime(1_000_003).unwrap();
            let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn canonical_form_unique(n in -500i128..500, d in 1i128..500, k in 1i128..50) {
            let x = q(n, d);
            let y = q(n * k, d * k);
            prop_assert_eq!(&x, &y);
            prop_assert_eq!(x.to_string(), y.to_string());
        }
    }
}
