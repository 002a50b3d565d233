//! Arithmetic in `A[x]/f(x)` for a monic `f` whose coefficients may be
//! polynomials in other variables. The same engine serves the tower
//! `R[alpha]` and the root-level quotient `R[alpha][x]/f(x)`.

use std::sync::Arc;

use num_integer::Integer;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{MultiPoly, Var};
use super::scalar::{Domain, Scalar};
use crate::error::{Error, Result};

/// A monic modulus `x^d + c_{d-1} x^{d-1} + ... + c_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Modulus {
    var: Var,
    /// `c_0 .. c_{d-1}`; the leading one is implicit.
    low: Vec<MultiPoly>,
    domain: Domain,
}

impl Modulus {
    pub fn new(f: &MultiPoly, x: Var) -> Result<Self> {
        let coeffs = f.coefficients_in(x);
        let d = coeffs.len() - 1;
        if d == 0 || !f.leading_is_one_in(x) {
            return Err(Error::Contract(format!(
                "modulus must be monic of positive degree in variable #{}",
                x.0
            )));
        }
        Ok(Modulus {
            var: x,
            low: coeffs[..d].to_vec(),
            domain: f.domain(),
        })
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn degree(&self) -> usize {
        self.low.len()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn low_coefficients(&self) -> &[MultiPoly] {
        &self.low
    }

    pub fn to_poly(&self) -> MultiPoly {
        let mut all = self.low.clone();
        all.push(MultiPoly::one(self.domain));
        from_coeffs(self.domain, self.var, &all)
    }

    /// Divides a coefficient vector (in the modulus variable) in place.
    /// Returns the quotient coefficients; `coeffs` is truncated to the
    /// remainder of length `degree()`.
    fn divide(&self, coeffs: &mut Vec<MultiPoly>) -> Vec<MultiPoly> {
        let d = self.degree();
        let zero = MultiPoly::zero(self.domain);
        if coeffs.len() <= d {
            coeffs.resize(d, zero);
            return Vec::new();
        }
        let mut quot = vec![zero.clone(); coeffs.len() - d];
        for k in (d..coeffs.len()).rev() {
            let c = std::mem::replace(&mut coeffs[k], zero.clone());
            if c.is_zero() {
                continue;
            }
            for (i, fi) in self.low.iter().enumerate() {
                if !fi.is_zero() {
                    coeffs[k - d + i] = &coeffs[k - d + i] - &(&c * fi);
                }
            }
            quot[k - d] = c;
        }
        coeffs.truncate(d);
        quot
    }

    /// Reduces a coefficient vector to length `degree()`.
    pub fn reduce_coeffs(&self, mut coeffs: Vec<MultiPoly>) -> Vec<MultiPoly> {
        self.divide(&mut coeffs);
        coeffs
    }

    pub fn mul_coeffs(&self, a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
        let mut prod = vec![MultiPoly::zero(self.domain); a.len() + b.len().max(1) - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] = &prod[i + j] + &(x * y);
                }
            }
        }
        self.reduce_coeffs(prod)
    }
}

fn from_coeffs(domain: Domain, x: Var, coeffs: &[MultiPoly]) -> MultiPoly {
    let xp = MultiPoly::var(domain, x);
    let mut out = MultiPoly::zero(domain);
    for c in coeffs.iter().rev() {
        out = &(&out * &xp) + c;
    }
    out
}

/// Division by a monic polynomial in `x`: returns `(q, r)` with
/// `p = q*f + r` and `deg_x r < deg_x f`.
pub fn divide_monic(p: &MultiPoly, f: &MultiPoly, x: Var) -> Result<(MultiPoly, MultiPoly)> {
    let m = Modulus::new(f, x)?;
    let mut coeffs = p.coefficients_in(x);
    let q = m.divide(&mut coeffs);
    Ok((from_coeffs(p.domain(), x, &q), from_coeffs(p.domain(), x, &coeffs)))
}

/// Remainder of `p` modulo the monic `f` in variable `x`.
pub fn reduce_mod_monic(p: &MultiPoly, f: &MultiPoly, x: Var) -> Result<MultiPoly> {
    divide_monic(p, f, x).map(|(_, r)| r)
}

/// Residue of `sum coords[j] x^j` in `A[x]/f(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientElement {
    coords: Vec<MultiPoly>,
    modulus: Arc<Modulus>,
}

impl QuotientElement {
    pub fn from_poly(p: &MultiPoly, modulus: &Arc<Modulus>) -> Self {
        let coords = modulus.reduce_coeffs(p.coefficients_in(modulus.var));
        QuotientElement {
            coords,
            modulus: Arc::clone(modulus),
        }
    }

    pub fn from_coords(coords: Vec<MultiPoly>, modulus: &Arc<Modulus>) -> Self {
        QuotientElement {
            coords: modulus.reduce_coeffs(coords),
            modulus: Arc::clone(modulus),
        }
    }

    pub fn constant(c: MultiPoly, modulus: &Arc<Modulus>) -> Self {
        Self::from_coords(vec![c], modulus)
    }

    /// The residue of the modulus variable itself.
    pub fn generator(modulus: &Arc<Modulus>) -> Self {
        let d = modulus.domain;
        Self::from_coords(vec![MultiPoly::zero(d), MultiPoly::one(d)], modulus)
    }

    pub fn coords(&self) -> &[MultiPoly] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<MultiPoly> {
        self.coords
    }

    pub fn modulus(&self) -> &Arc<Modulus> {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(MultiPoly::is_zero)
    }

    pub fn to_poly(&self) -> MultiPoly {
        from_coeffs(self.modulus.domain, self.modulus.var, &self.coords)
    }

    pub fn add(&self, o: &Self) -> Self {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        QuotientElement {
            coords,
            modulus: Arc::clone(&self.modulus),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect();
        QuotientElement {
            coords,
            modulus: Arc::clone(&self.modulus),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        QuotientElement {
            coords: self.modulus.mul_coeffs(&self.coords, &o.coords),
            modulus: Arc::clone(&self.modulus),
        }
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        QuotientElement {
            coords: self.coords.iter().map(|a| a * c).collect(),
            modulus: Arc::clone(&self.modulus),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let d = self.modulus.domain;
        let mut acc = Self::constant(MultiPoly::one(d), &self.modulus);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Evaluates a polynomial with the given coefficients (in ascending
    /// order) at this element, by Horner's rule.
    pub fn eval_poly(&self, coeffs: &[MultiPoly]) -> Self {
        let d = self.modulus.domain;
        let mut acc = Self::constant(MultiPoly::zero(d), &self.modulus);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add(&Self::constant(c.clone(), &self.modulus));
        }
        acc
    }
}

/// Coefficients `A_0..A_{d-1}` of `f(h(x)) mod f(x)`.
pub fn compose_mod(f: &MultiPoly, h: &MultiPoly, x: Var) -> Result<Vec<MultiPoly>> {
    let m = Arc::new(Modulus::new(f, x)?);
    let he = QuotientElement::from_poly(h, &m);
    let mut all = m.low.clone();
    all.push(MultiPoly::one(f.domain()));
    Ok(he.eval_poly(&all).into_coords())
}

/// Homogenized composition with a common denominator: for `h = num / t`,
/// returns the residue of `t^d f(num/t) = sum_k c_k num^k t^(d-k)`.
pub fn compose_mod_scaled(m: &Arc<Modulus>, num: &QuotientElement, t: &MultiPoly) -> QuotientElement {
    eval_homogeneous(&m.low, num, t)
}

/// For the monic polynomial `y^k + low[k-1] y^(k-1) + ... + low[0]`,
/// returns `den^k g(num/den) = sum_i low_i num^i den^(k-i)` in the
/// quotient that holds `num`.
pub fn eval_homogeneous(low: &[MultiPoly], num: &QuotientElement, den: &MultiPoly) -> QuotientElement {
    let k = low.len();
    let m = num.modulus();
    let dom = m.domain();
    let mut acc = QuotientElement::constant(MultiPoly::one(dom), m);
    let mut den_pow = MultiPoly::one(dom);
    for i in (0..k).rev() {
        den_pow = &den_pow * den;
        let w = &den_pow * &low[i];
        acc = acc.mul(num).add(&QuotientElement::constant(w, m));
    }
    acc
}

/// Clears denominators of a monic polynomial in `x` over the rationals
/// (coefficients may involve other variables). Returns `(r, b)` with `r`
/// monic, integral, and `r(b*x) = b^d q(x)`.
pub fn clear_denominators(q: &MultiPoly, x: Var) -> Result<(MultiPoly, Scalar)> {
    if !q.leading_is_one_in(x) {
        return Err(Error::Contract("clear_denominators needs a monic input".into()));
    }
    let dom = q.domain();
    let b = q
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let coeffs = q.coefficients_in(x);
    let d = coeffs.len() - 1;
    let bq = BigRational::from_integer(b.clone());
    let scaled: Vec<MultiPoly> = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c.scale(&num_traits::pow(bq.clone(), d - i)))
        .collect();
    let r = from_coeffs(dom, x, &scaled);
    debug_assert!(r.terms().all(|(_, c)| c.denom().is_one()) || !b.is_zero());
    Ok((r, bq))
}
