//! Coefficient domains.
//!
//! Every coefficient is stored as a reduced [`BigRational`]. Over the
//! rationals that is the value itself; over a prime field the value is the
//! canonical residue `0 <= v < p` with denominator one.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An exact coefficient: either a rational number or a residue mod `p`.
pub type Scalar = BigRational;

/// The arithmetic a polynomial's coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    /// Characteristic zero, exact rationals (also used for integer rings).
    Rational,
    /// The prime field `F_p`.
    Prime(u64),
}

impl Domain {
    /// Builds a prime-field domain, rejecting composite or tiny moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Contract(format!("{p} is not prime")));
        }
        Ok(Domain::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Domain::Rational => 0,
            Domain::Prime(p) => *p,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, Domain::Prime(_))
    }

    /// Brings a value into canonical form for this domain.
    pub fn normalize(&self, v: BigRational) -> BigRational {
        match self {
            Domain::Rational => v,
            Domain::Prime(p) => {
                let p = BigInt::from(*p);
                if v.denom().is_one() {
                    return BigRational::from_integer(v.numer().mod_floor(&p));
                }
                let num = v.numer().mod_floor(&p);
                let den = v.denom().mod_floor(&p);
                assert!(!den.is_zero(), "denominator divisible by the characteristic");
                let inv = mod_inverse(&den, &p).expect("nonzero residue is invertible");
                BigRational::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.normalize(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero(&self) -> Scalar {
        BigRational::zero()
    }

    pub fn one(&self) -> Scalar {
        BigRational::one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.normalize(-a)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        Some(self.normalize(a.recip()))
    }

    pub fn pow(&self, a: &Scalar, mut e: u32) -> Scalar {
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

    /// Residue of a scalar as a machine integer. Panics outside prime mode.
    pub fn residue(&self, a: &Scalar) -> u64 {
        match self {
            Domain::Prime(_) => {
                let n = a.numer();
                u64::try_from(n.clone()).expect("canonical residue fits in u64")
            }
            Domain::Rational => panic!("residue requested in rational mode"),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => write!(f, "Q"),
            Domain::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

/// Formats a scalar the way the text formats expect: `n` or `n/d`.
pub fn format_scalar(v: &Scalar) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `n` or `n/d` into a reduced rational.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed number `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// True when the scalar is an integer.
pub fn is_integral(v: &Scalar) -> bool {
    v.denom().is_one()
}
