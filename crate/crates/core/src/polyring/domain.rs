//! Coefficient domains: the rationals, prime fields and the integers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The base ring of a polynomial ring.
///
/// Prime-field moduli are checked for primality when constructed through
/// [`CoefficientDomain::prime_field`] or parsed from text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientDomain {
    Rational,
    PrimeField(u32),
    Integer,
}

/// A single coefficient. The variant always agrees with the owning ring's
/// domain: `Int` for ℤ, `Rat` for ℚ and `Mod` (canonical residue in `0..p`)
/// for 𝔽_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Int(BigInt),
    Rat(BigRational),
    Mod(u32),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl CoefficientDomain {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        Ok(CoefficientDomain::PrimeField(p as u32))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, CoefficientDomain::Integer)
    }

    /// 0 for ℚ and ℤ, p for 𝔽_p.
    pub fn characteristic(self) -> u32 {
        match self {
            CoefficientDomain::PrimeField(p) => p,
            _ => 0,
        }
    }

    pub fn zero(self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Coeff {
        match self {
            CoefficientDomain::Integer => Coeff::Int(BigInt::from(v)),
            CoefficientDomain::Rational => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
            CoefficientDomain::PrimeField(p) => Coeff::Mod(v.rem_euclid(p as i64) as u32),
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Coeff {
        match self {
            CoefficientDomain::Integer => Coeff::Int(v.clone()),
            CoefficientDomain::Rational => Coeff::Rat(BigRational::from_integer(v.clone())),
            CoefficientDomain::PrimeField(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Coeff::Mod(r.to_u32().expect("residue fits in u32"))
            }
        }
    }

    /// Maps a rational number into the domain. Fails when the value is not
    /// an integer (over ℤ) or its denominator is divisible by p (over 𝔽_p).
    pub fn from_rational(self, v: &BigRational) -> Option<Coeff> {
        match self {
            CoefficientDomain::Rational => Some(Coeff::Rat(v.clone())),
            CoefficientDomain::Integer => v.is_integer().then(|| Coeff::Int(v.to_integer())),
            CoefficientDomain::PrimeField(_) => {
                let num = self.from_bigint(v.numer());
                let den = self.from_bigint(v.denom());
                self.inv(&den).map(|d| self.mul(&num, &d))
            }
        }
    }

    /// Moves a coefficient of `from` into this domain (ℤ→anything,
    /// ℚ→𝔽_p when the denominator is invertible, identity otherwise).
    pub fn convert(self, c: &Coeff) -> Option<Coeff> {
        match c {
            Coeff::Int(v) => Some(self.from_bigint(v)),
            Coeff::Rat(v) => self.from_rational(v),
            Coeff::Mod(v) => match self {
                CoefficientDomain::PrimeField(_) => Some(Coeff::Mod(*v)),
                _ => None,
            },
        }
    }

    pub fn is_zero(self, c: &Coeff) -> bool {
        match c {
            Coeff::Int(v) => v.is_zero(),
            Coeff::Rat(v) => v.is_zero(),
            Coeff::Mod(v) => *v == 0,
        }
    }

    pub fn is_one(self, c: &Coeff) -> bool {
        match c {
            Coeff::Int(v) => v.is_one(),
            Coeff::Rat(v) => v.is_one(),
            Coeff::Mod(v) => *v == 1,
        }
    }

    pub fn add(self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x + y),
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (Coeff::Mod(x), Coeff::Mod(y)) => {
                let p = self.characteristic() as u64;
                Coeff::Mod(((*x as u64 + *y as u64) % p) as u32)
            }
            _ => panic!("coefficient kinds disagree: {a:?} vs {b:?}"),
        }
    }

    pub fn neg(self, a: &Coeff) -> Coeff {
        match a {
            Coeff::Int(x) => Coeff::Int(-x),
            Coeff::Rat(x) => Coeff::Rat(-x),
            Coeff::Mod(x) => {
                let p = self.characteristic();
                Coeff::Mod(if *x == 0 { 0 } else { p - x })
            }
        }
    }

    pub fn sub(self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x * y),
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (Coeff::Mod(x), Coeff::Mod(y)) => {
                let p = self.characteristic() as u64;
                Coeff::Mod(((*x as u64 * *y as u64) % p) as u32)
            }
            _ => panic!("coefficient kinds disagree: {a:?} vs {b:?}"),
        }
    }

    /// Multiplicative inverse; `None` for zero and for non-units of ℤ.
    pub fn inv(self, a: &Coeff) -> Option<Coeff> {
        if self.is_zero(a) {
            return None;
        }
        match a {
            Coeff::Int(x) => (x.abs().is_one()).then(|| Coeff::Int(x.clone())),
            Coeff::Rat(x) => Some(Coeff::Rat(x.recip())),
            Coeff::Mod(x) => {
                let p = self.characteristic() as u64;
                Some(Coeff::Mod(pow_mod(*x as u64, p - 2, p) as u32))
            }
        }
    }

    pub fn pow(self, a: &Coeff, mut e: u64) -> Coeff {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// The coefficient as an exact rational, when that makes sense (ℤ and ℚ).
    pub fn to_rational(self, c: &Coeff) -> Option<BigRational> {
        match c {
            Coeff::Int(v) => Some(BigRational::from_integer(v.clone())),
            Coeff::Rat(v) => Some(v.clone()),
            Coeff::Mod(_) => None,
        }
    }

    pub fn to_f64(self, c: &Coeff) -> Option<f64> {
        match c {
            Coeff::Int(v) => v.to_f64(),
            Coeff::Rat(v) => Some(v.numer().to_f64()? / v.denom().to_f64()?),
            Coeff::Mod(_) => None,
        }
    }

    /// True when the printed form of `c` starts with a minus sign.
    pub fn is_negative(self, c: &Coeff) -> bool {
        match c {
            Coeff::Int(v) => v.is_negative(),
            Coeff::Rat(v) => v.is_negative(),
            Coeff::Mod(_) => false,
        }
    }

    pub fn format(self, c: &Coeff) -> String {
        match c {
            Coeff::Int(v) => v.to_string(),
            Coeff::Rat(v) => v.to_string(),
            Coeff::Mod(v) => v.to_string(),
        }
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientDomain::Rational => write!(f, "QQ"),
            CoefficientDomain::Integer => write!(f, "ZZ"),
            CoefficientDomain::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for CoefficientDomain {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "QQ" => Ok(CoefficientDomain::Rational),
            "ZZ" => Ok(CoefficientDomain::Integer),
            _ => {
                let inner = s
                    .strip_prefix("GF(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown domain `{s}`")))?;
                let p: u64 = inner
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad modulus in `{s}`")))?;
                CoefficientDomain::prime_field(p)
            }
        }
    }
}

impl Serialize for CoefficientDomain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CoefficientDomain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(CoefficientDomain::prime_field(4).is_err());
        assert!(CoefficientDomain::prime_field(1).is_err());
        assert_eq!(
            CoefficientDomain::prime_field(101).unwrap(),
            CoefficientDomain::PrimeField(101)
        );
    }

    #[test]
    fn field_inverse() {
        let d = CoefficientDomain::PrimeField(7);
        let three = d.from_i64(3);
        assert_eq!(d.mul(&three, &d.inv(&three).unwrap()), d.one());
        assert_eq!(d.from_i64(-1), Coeff::Mod(6));
    }

    #[test]
    fn rational_into_prime_field() {
        let d = CoefficientDomain::PrimeField(5);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(d.from_rational(&half), Some(Coeff::Mod(3)));
        let fifth = BigRational::new(1.into(), 5.into());
        assert_eq!(d.from_rational(&fifth), None);
    }

    #[test]
    fn domain_text_round_trip() {
        for d in [
            CoefficientDomain::Rational,
            CoefficientDomain::Integer,
            CoefficientDomain::PrimeField(13),
        ] {
            assert_eq!(d.to_string().parse::<CoefficientDomain>().unwrap(), d);
        }
        assert!("GF(9)".parse::<CoefficientDomain>().is_err());
    }
}
