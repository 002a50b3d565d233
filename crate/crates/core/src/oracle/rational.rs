//! Irreducibility over the rationals for small degrees: rational roots,
//! then Kronecker's interpolation search for factors of degree two and up.
//! Integer polynomials are coefficient vectors, constant term first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{MultiPoly, Scalar};
use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 6;
/// Upper bound on divisor combinations tried for one factor degree.
pub const MAX_COMBINATIONS: u128 = 50_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum RationalFactorization {
    Irreducible,
    /// `factor * cofactor == f`, both monic with integer coefficients.
    Reducible { factor: Vec<BigInt>, cofactor: Vec<BigInt> },
}

impl RationalFactorization {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, RationalFactorization::Irreducible)
    }
}

/// Coefficients of a univariate polynomial, constant term first.
pub fn univariate_coefficients(f: &MultiPoly) -> Result<Vec<Scalar>> {
    let vars = f.vars();
    if vars.len() > 1 {
        return Err(Error::Contract("expected a univariate polynomial".into()));
    }
    let Some(&x) = vars.iter().next() else {
        return Ok(f.as_constant().into_iter().filter(|c| !c.is_zero()).collect());
    };
    Ok(f.coefficients_in(x)
        .iter()
        .map(|c| c.as_constant().expect("univariate coefficient"))
        .collect())
}

pub fn rational_factor_smalldeg(f: &MultiPoly) -> Result<RationalFactorization> {
    let c = univariate_coefficients(f)?;
    if c.is_empty() || !c.last().unwrap().is_one() {
        return Err(Error::Contract("expected a monic polynomial".into()));
    }
    if c.iter().any(|x| !x.is_integer()) {
        return Err(Error::Contract("expected integer coefficients".into()));
    }
    let d = c.len() - 1;
    if d > MAX_DEGREE {
        return Err(Error::Cap { what: "rational factoring degree".into(), required: d as u128, cap: MAX_DEGREE as u128 });
    }
    let ints: Vec<BigInt> = c.iter().map(|x| x.to_integer()).collect();
    factor_monic_integer(&ints)
}

/// Rescales a monic rational polynomial `f` to the monic integer
/// polynomial `D^d f(x/D)`, which is irreducible exactly when `f` is.
pub fn integral_rescaling(f: &[Scalar]) -> Vec<BigInt> {
    let d = f.len() - 1;
    let den = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    (0..=d)
        .map(|i| (&f[i] * BigRational::from_integer(num_traits::pow(den.clone(), d - i))).to_integer())
        .collect()
}

pub fn factor_monic_integer(f: &[BigInt]) -> Result<RationalFactorization> {
    let d = f.len() - 1;
    if d <= 1 {
        return Ok(RationalFactorization::Irreducible);
    }
    if let Some(r) = integer_root(f)? {
        let g = vec![-r, BigInt::one()];
        let (q, _) = divide_monic(f, &g);
        return Ok(RationalFactorization::Reducible { factor: g, cofactor: q });
    }
    for k in 2..=d / 2 {
        if let Some(g) = kronecker_factor(f, k)? {
            let (q, _) = divide_monic(f, &g);
            return Ok(RationalFactorization::Reducible { factor: g, cofactor: q });
        }
    }
    Ok(RationalFactorization::Irreducible)
}

pub fn eval_int(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Quotient and remainder by a monic divisor.
pub fn divide_monic(f: &[BigInt], g: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    if r.len() <= dg {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dg];
    for i in (0..q.len()).rev() {
        let c = r[i + dg].clone();
        for (j, gj) in g.iter().enumerate() {
            r[i + j] -= &c * gj;
        }
        q[i] = c;
    }
    r.truncate(dg);
    (q, r)
}

fn divisors(n: &BigInt) -> Result<Vec<i128>> {
    let n = n
        .abs()
        .to_i128()
        .ok_or_else(|| Error::Cap { what: "value size for divisor enumeration".into(), required: u128::MAX, cap: i128::MAX as u128 })?;
    let mut out = Vec::new();
    let mut k = 1i128;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            if k * k != n {
                out.push(n / k);
            }
        }
        k += 1;
        if k > 10_000_000 {
            return Err(Error::Cap { what: "divisor trial bound".into(), required: n as u128, cap: 100_000_000_000_000 });
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn integer_root(f: &[BigInt]) -> Result<Option<BigInt>> {
    if f[0].is_zero() {
        return Ok(Some(BigInt::zero()));
    }
    for k in divisors(&f[0])? {
        for r in [BigInt::from(k), BigInt::from(-k)] {
            if eval_int(f, &r).is_zero() {
                return Ok(Some(r));
            }
        }
    }
    Ok(None)
}

/// Small integer sample points `0, 1, -1, 2, -2, ...`.
fn sample_points(n: usize) -> Vec<BigInt> {
    (0..n as i64)
        .map(|i| if i % 2 == 0 { -(i / 2) } else { i / 2 + 1 })
        .map(BigInt::from)
        .collect()
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Vec<BigRational> {
    let n = xs.len();
    let mut out = vec![BigRational::zero(); n];
    for i in 0..n {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * BigRational::from_integer(xs[j].clone());
            }
            basis = next;
            denom *= BigRational::from_integer(&xs[i] - &xs[j]);
        }
        let scale = BigRational::from_integer(ys[i].clone()) / denom;
        for (k, b) in basis.iter().enumerate() {
            out[k] += b * &scale;
        }
    }
    out
}

/// A monic integer factor of degree exactly `k`, if one exists.
fn kronecker_factor(f: &[BigInt], k: usize) -> Result<Option<Vec<BigInt>>> {
    let xs = sample_points(k + 1);
    let vals: Vec<BigInt> = xs.iter().map(|x| eval_int(f, x)).collect();
    let mut choices: Vec<Vec<BigInt>> = Vec::with_capacity(k + 1);
    for v in &vals {
        let ds = divisors(v)?;
        choices.push(ds.iter().flat_map(|&d| [BigInt::from(d), BigInt::from(-d)]).collect());
    }
    let total = choices.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if total > MAX_COMBINATIONS {
        return Err(Error::Cap { what: "Kronecker divisor combinations".into(), required: total, cap: MAX_COMBINATIONS });
    }
    let mut idx = vec![0usize; k + 1];
    loop {
        let ys: Vec<BigInt> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        let g = interpolate(&xs, &ys);
        if g[k].is_one() && g.iter().all(|c| c.is_integer()) {
            let g: Vec<BigInt> = g.iter().map(|c| c.to_integer()).collect();
            let (_, r) = divide_monic(f, &g);
            if r.iter().all(Zero::is_zero) {
                return Ok(Some(g));
            }
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

type RatPoly = Vec<BigRational>;

fn rat_trim(mut a: RatPoly) -> RatPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn rat_rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let db = b.len() - 1;
    let mut r = a.clone();
    while r.len() > db {
        let c = r.last().unwrap() / &b[db];
        let shift = r.len() - 1 - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        r = rat_trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Number of distinct real roots, by a Sturm sequence.
pub fn real_root_count(f: &[BigInt]) -> usize {
    let p0: RatPoly = rat_trim(f.iter().cloned().map(BigRational::from_integer).collect());
    if p0.len() <= 1 {
        return 0;
    }
    let p1: RatPoly = rat_trim(
        (1..p0.len())
            .map(|i| &p0[i] * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    );
    let mut seq = vec![p0, p1];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let r: RatPoly = rat_rem(&seq[n - 2], &seq[n - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        seq.push(r);
    }
    let sgn = |c: &BigRational| if c.is_positive() { 1i8 } else if c.is_negative() { -1 } else { 0 };
    let at_pos = sign_changes(seq.iter().map(|p| sgn(p.last().unwrap())));
    let at_neg = sign_changes(seq.iter().map(|p| {
        let s = sgn(p.last().unwrap());
        if (p.len() - 1) % 2 == 1 { -s } else { s }
    }));
    at_neg - at_pos
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        assert!(factor_monic_integer(&ints(&[-2, 0, 1])).unwrap().is_irreducible());
        assert!(factor_monic_integer(&ints(&[-1, -3, 0, 1])).unwrap().is_irreducible());
        assert_eq!(
            factor_monic_integer(&ints(&[-1, 0, 0, 0, 1])).unwrap(),
            RationalFactorization::Reducible { factor: ints(&[-1, 1]), cofactor: ints(&[1, 1, 1, 1]) }
        );
    }

    #[test]
    fn kronecker_finds_quadratic_factors() {
        // (x^2 + 1)(x^2 + x + 2)
        let f = ints(&[2, 1, 3, 1, 1]);
        match factor_monic_integer(&f).unwrap() {
            RationalFactorization::Reducible { factor, cofactor } => {
                assert_eq!(factor.len(), 3);
                assert_eq!(cofactor.len(), 3);
            }
            other => panic!("expected a factorization, got {other:?}"),
        }
        assert!(factor_monic_integer(&ints(&[1, 1, 1, 1, 1])).unwrap().is_irreducible());
        assert!(factor_monic_integer(&ints(&[-2, 0, 0, 0, 1])).unwrap().is_irreducible());
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(real_root_count(&ints(&[-2, 0, 0, 1])), 1);
        assert_eq!(real_root_count(&ints(&[-1, -3, 0, 1])), 3);
        assert_eq!(real_root_count(&ints(&[1, 1, 1, 1, 1])), 0);
        assert_eq!(real_root_count(&ints(&[-2, 0, 1])), 2);
    }

    #[test]
    fn rescaling_keeps_roots_scaled() {
        let half = BigRational::new(1.into(), 2.into());
        // x^2 - 1/4 with D = 4 becomes x^2 - 4
        let f = vec![-(&half * &half), BigRational::zero(), BigRational::one()];
        assert_eq!(integral_rescaling(&f), ints(&[-4, 0, 1]));
    }
}
