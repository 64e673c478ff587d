use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// A field with exact arithmetic.
///
/// Elements are plain values; every operation goes through the field so that
/// runtime parameters such as the characteristic of a prime field stay out of
/// the element representation.
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Parses a decimal string, optionally a fraction `"p/q"`.
    fn parse(&self, s: &str) -> Result<Self::Elem, AlgebraError>;
    /// Decimal string form; round-trips through [`Field::parse`].
    fn format(&self, a: &Self::Elem) -> String;
    /// Checks that a raw element is a valid representative.
    fn validate(&self, a: &Self::Elem) -> Result<(), AlgebraError>;
    /// `p` for GF(p), `0` for the rationals.
    fn characteristic(&self) -> u64;
    fn spec(&self) -> FieldSpec;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
}

/// Serializable description of a field, used by instance files and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Prime { p: u64 },
    Rational,
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "GF({p})"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = AlgebraError;

    /// Accepts `Q`, `GF(p)`, `GFp` or a bare prime.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rational") {
            return Ok(FieldSpec::Rational);
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("GF"))
            .unwrap_or(t);
        let p: u64 = digits
            .parse()
            .map_err(|_| AlgebraError::BadField(s.to_string()))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime { p })
    }
}

/// The prime field GF(p), elements stored as residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        // keeps products below 2^64 before reduction via u128
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_big(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = ((v % &m) + &m) % &m;
        u64::try_from(r).expect("residue fits in u64")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if (*a).is_multiple_of(self.p) {
            return None;
        }
        // Fermat: a^(p-2)
        let mut base = *a % self.p;
        let mut exp = self.p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        Some(acc)
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn parse(&self, s: &str) -> Result<u64, AlgebraError> {
        let q = parse_rational(s)?;
        let num = self.reduce_big(q.numer());
        let den = self.reduce_big(q.denom());
        let den_inv = self
            .inv(&den)
            .ok_or_else(|| AlgebraError::NotReducible { value: s.to_string(), p: self.p })?;
        Ok(self.mul(&num, &den_inv))
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn validate(&self, a: &u64) -> Result<(), AlgebraError> {
        if *a < self.p {
            Ok(())
        } else {
            Err(AlgebraError::NotReducible { value: a.to_string(), p: self.p })
        }
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }
}

/// The rational numbers, arbitrary precision and always reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn parse(&self, s: &str) -> Result<BigRational, AlgebraError> {
        parse_rational(s)
    }

    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn validate(&self, a: &BigRational) -> Result<(), AlgebraError> {
        // BigRational normalizes on construction; a raw value could still
        // carry a negative denominator if built with new_raw.
        if a.denom().is_positive() {
            Ok(())
        } else {
            Err(AlgebraError::Malformed(format!("{a}")))
        }
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rational
    }
}

fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let bad = || AlgebraError::Malformed(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(7).is_ok());
        assert!(matches!(PrimeField::new(1), Err(AlgebraError::NotPrime(1))));
        assert!(matches!(PrimeField::new(9), Err(AlgebraError::NotPrime(9))));
    }

    #[test]
    fn prime_arithmetic() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.add(&3, &4), 2);
        assert_eq!(f.sub(&1, &3), 3);
        assert_eq!(f.mul(&3, &4), 2);
        for a in 1..5 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 4);
    }

    #[test]
    fn parse_prime_fractions() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(f.parse("2").unwrap(), 2);
        assert_eq!(f.parse("-1").unwrap(), 2);
        // 1/2 = 2 in GF(3)
        assert_eq!(f.parse("1/2").unwrap(), 2);
        assert!(matches!(f.parse("1/3"), Err(AlgebraError::NotReducible { .. })));
        assert!(f.parse("x").is_err());
        assert!(f.validate(&3).is_err());
    }

    #[test]
    fn rationals_are_reduced() {
        let q = Rationals;
        let a = q.parse("2/-4").unwrap();
        assert_eq!(q.format(&a), "-1/2");
        assert_eq!(q.format(&q.add(&a, &q.parse("1/2").unwrap())), "0");
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn field_spec_strings() {
        assert_eq!("GF(3)".parse::<FieldSpec>().unwrap(), FieldSpec::Prime { p: 3 });
        assert_eq!("2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime { p: 2 });
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert!("GF(4)".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime { p: 2 }.to_string(), "GF(2)");
    }
}
