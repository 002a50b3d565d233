use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{MultiPoly, Var};
use super::scalar::{is_prime, parse_scalar, Domain, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

/// The base ring `R`, and `L = Frac(R)(alpha)` via the monic minimal
/// polynomial of `alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct RingDescriptor {
    base: BaseRing,
    /// Ascending coefficients, monic; length `n + 1`.
    alpha_minpoly: Vec<Scalar>,
}

impl RingDescriptor {
    pub fn integers() -> Self {
        Self::trivial(BaseRing::Integers)
    }

    pub fn rationals() -> Self {
        Self::trivial(BaseRing::Rationals)
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Contract(format!("{p} is not prime")));
        }
        Ok(Self::trivial(BaseRing::PrimeField(p)))
    }

    /// `Q(alpha)` for `alpha` a root of the monic integer polynomial given
    /// by its ascending coefficients.
    pub fn number_field(ascending: Vec<Scalar>) -> Result<Self> {
        if ascending.len() < 2 || !ascending.last().is_some_and(One::is_one) {
            return Err(Error::Contract(
                "minimal polynomial must be monic of degree >= 1".into(),
            ));
        }
        Ok(RingDescriptor {
            base: BaseRing::Rationals,
            alpha_minpoly: ascending,
        })
    }

    fn trivial(base: BaseRing) -> Self {
        RingDescriptor {
            base,
            alpha_minpoly: vec![Scalar::zero(), Scalar::one()],
        }
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn domain(&self) -> Domain {
        match self.base {
            BaseRing::PrimeField(p) => Domain::Prime(p),
            _ => Domain::Rational,
        }
    }

    /// `[L:K]`.
    pub fn extension_degree(&self) -> usize {
        self.alpha_minpoly.len() - 1
    }

    /// Whether every nonzero element of the base ring is invertible.
    pub fn is_field(&self) -> bool {
        !matches!(self.base, BaseRing::Integers)
    }

    pub fn alpha_minpoly_coeffs(&self) -> &[Scalar] {
        &self.alpha_minpoly
    }

    pub fn alpha_minpoly(&self, alpha: Var) -> MultiPoly {
        MultiPoly::univariate(self.domain(), alpha, &self.alpha_minpoly)
    }

    /// Parses `Q`, `Z`, `Fp p=<prime>` or
    /// `numberfield minpoly=<coefficients, leading first>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let mut words = spec.split_whitespace();
        let head = words.next().unwrap_or("");
        let arg = words.next();
        if words.next().is_some() {
            return Err(Error::Parse(format!("trailing input in ring spec `{spec}`")));
        }
        match (head, arg) {
            ("Q", None) => Ok(Self::rationals()),
            ("Z", None) => Ok(Self::integers()),
            ("Fp", Some(a)) => {
                let p = a
                    .strip_prefix("p=")
                    .and_then(|v| v.parse::<u64>().ok())
                    .ok_or_else(|| Error::Parse(format!("expected p=<prime>, got `{a}`")))?;
                Self::prime_field(p)
            }
            ("numberfield", Some(a)) => {
                let list = a
                    .strip_prefix("minpoly=")
                    .ok_or_else(|| Error::Parse(format!("expected minpoly=..., got `{a}`")))?;
                let mut coeffs = list
                    .split(',')
                    .map(|c| {
                        let v = parse_scalar(c)?;
                        if !v.denom().is_one() {
                            return Err(Error::Parse(format!("non-integer coefficient `{c}`")));
                        }
                        Ok(v)
                    })
                    .collect::<Result<Vec<_>>>()?;
                coeffs.reverse();
                Self::number_field(coeffs)
            }
            _ => Err(Error::Parse(format!("unrecognized ring spec `{spec}`"))),
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::PrimeField(p) => write!(f, "Fp p={p}"),
            BaseRing::Rationals if self.extension_degree() == 1 && self.alpha_minpoly[0].is_zero() => {
                write!(f, "Q")
            }
            BaseRing::Rationals => {
                let list: Vec<String> = self
                    .alpha_minpoly
                    .iter()
                    .rev()
                    .map(|c: &BigRational| c.numer().to_string())
                    .collect();
                write!(f, "numberfield minpoly={}", list.join(","))
            }
        }
    }
}
