//! Exact scalars over a prime field GF(p) or the rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field: GF(p) for a prime `p`, or ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Prime(u64),
    Rationals,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// GF(p); fails unless `p` is a prime below 2^32.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) && p < (1 << 32) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.int(0)
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod {
                value: v.rem_euclid(*p as i64) as u64,
                p: *p,
            },
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// `(-1)^k` as a field element.
    pub fn sign(&self, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.int(-1)
        }
    }

    /// n/d; panics if d is zero in the field.
    pub fn ratio(&self, n: i64, d: i64) -> Scalar {
        self.int(n) * self.int(d).inv().expect("zero denominator")
    }

    /// All elements of a prime field, `None` over ℚ.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Prime(p) => Some((0..*p).map(|v| Scalar::Mod { value: v, p: *p }).collect()),
            Field::Rationals => None,
        }
    }

    /// A uniformly random element of GF(p), or a small random integer over ℚ.
    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod {
                value: rng.gen_range(0..*p),
                p: *p,
            },
            Field::Rationals => self.int(rng.gen_range(-3..=3)),
        }
    }

    pub fn random_vec<R: rand::Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| self.random(rng)).collect()
    }

    /// Parses `q` or `p:<prime>`.
    pub fn parse(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rationals);
        }
        let rest = s
            .strip_prefix("p:")
            .ok_or_else(|| Error::Parse(format!("field must be `q` or `p:<prime>`, got `{s}`")))?;
        let p: u64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime `{rest}`")))?;
        Field::prime(p)
    }

    /// Parses `3/7`, `-2`, or `5 mod 11` into this field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        if let Some((v, m)) = s.split_once("mod") {
            let m: u64 = m
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus in `{s}`")))?;
            if *self != Field::Prime(m) {
                return Err(Error::FieldMismatch(Field::Prime(m), *self));
            }
            let v: i64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad residue in `{s}`")))?;
            return Ok(self.int(v));
        }
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
        let d: BigInt = d
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        match self {
            Field::Rationals => Ok(Scalar::Rat(BigRational::new(n, d))),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let nv = n.mod_floor(&pb).to_u64().unwrap();
                let dv = d.mod_floor(&pb).to_u64().unwrap();
                let num = Scalar::Mod { value: nv, p: *p };
                let den = Scalar::Mod { value: dv, p: *p };
                let inv = den
                    .inv()
                    .ok_or_else(|| Error::Parse(format!("denominator vanishes mod {p} in `{s}`")))?;
                Ok(num * inv)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "p:{p}"),
            Field::Rationals => write!(f, "q"),
        }
    }
}

/// An exact field element. Arithmetic between different fields panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod { value: u64, p: u64 },
    Rat(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod { p, .. } => Field::Prime(*p),
            Scalar::Rat(_) => Field::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Mod { value, p } => Some(Scalar::Mod {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            }),
            Scalar::Rat(r) => Some(Scalar::Rat(r.recip())),
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Residue in `0..p` for GF(p) elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rat(_) => None,
        }
    }

    /// Exact rational value for ℚ elements.
    pub fn rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    /// Integer value when the element is an integer of ℚ that fits in i64,
    /// or the residue for GF(p).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value as i64),
            Scalar::Rat(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Rat(_) => None,
        }
    }

    /// Positive for ℚ elements > 0; `None` over GF(p).
    pub fn is_positive(&self) -> Option<bool> {
        self.rational().map(|r| r.is_positive())
    }

    fn check(&self, other: &Scalar) {
        if let (Scalar::Mod { p: a, .. }, Scalar::Mod { p: b, .. }) = (self, other) {
            assert_eq!(a, b, "scalars from different prime fields");
        } else if self.field() != other.field() {
            panic!("scalars from different fields: {} and {}", self.field(), other.field());
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { value, p } => write!(f, "{value} mod {p}"),
            Scalar::Rat(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod { value, p } => Scalar::Mod {
                value: (p - value) % p,
                p: *p,
            },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = &*self - &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Sum of a sequence of scalars, starting from zero of `field`.
pub fn sum<'a, I: IntoIterator<Item = &'a Scalar>>(field: Field, items: I) -> Scalar {
    let mut acc = field.zero();
    for s in items {
        acc += s;
    }
    acc
}

/// Dot product of equal-length vectors.
pub fn dot(field: Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Field, D::Error> {
        let s = String::deserialize(d)?;
        Field::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.int(3);
        let b = f.int(5);
        assert_eq!(&a + &b, f.int(1));
        assert_eq!(&a * &b, f.int(1));
        assert_eq!(a.inv().unwrap(), f.int(5));
        assert_eq!(-&a, f.int(4));
        assert_eq!(f.int(-1), f.int(6));
    }

    #[test]
    fn rational_arithmetic() {
        let q = Field::Rationals;
        let a = q.ratio(1, 2);
        let b = q.ratio(1, 3);
        assert_eq!(&a + &b, q.ratio(5, 6));
        assert_eq!((&a / &b).to_string(), "3/2");
        assert_eq!(q.int(4).to_string(), "4");
    }

    #[test]
    fn parsing_round_trips() {
        let f = Field::parse("p:11").unwrap();
        assert_eq!(f, Field::Prime(11));
        let s = f.parse_scalar("5 mod 11").unwrap();
        assert_eq!(s.to_string(), "5 mod 11");
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.int(6));
        let q = Field::parse("q").unwrap();
        assert_eq!(q.parse_scalar("-6/4").unwrap().to_string(), "-3/2");
        assert!(Field::parse("p:12").is_err());
        assert!(f.parse_scalar("1 mod 7").is_err());
    }

    #[test]
    fn powers_and_signs() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.int(2).pow(4), f.one());
        assert_eq!(f.sign(3), f.int(-1));
        assert_eq!(Field::Rationals.sign(-2), Field::Rationals.one());
    }
}
