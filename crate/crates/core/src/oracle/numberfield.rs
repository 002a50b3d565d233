//! Irreducibility over a number field `Q(alpha)` through norms.
//!
//! For monic `g` over `L` and a rational `k`, the norm
//! `N_k(x) = Norm_{L/Q} g(x + k alpha)` is a monic rational polynomial of
//! degree `deg g * [L:Q]`. When `N_k` is squarefree, `g` is irreducible
//! over `L` exactly when `N_k` is irreducible over `Q` (Trager).

use num_traits::{One, Zero};

use crate::algebra::Scalar;
use crate::error::{Error, Result};

use super::rational::{factor_monic_integer, integral_rescaling, MAX_DEGREE};

type Elem = Vec<Scalar>;

/// Shifts tried before giving up on a squarefree norm.
pub const MAX_SHIFTS: i64 = 16;

fn reduce(mut a: Vec<Scalar>, mu: &[Scalar]) -> Elem {
    let n = mu.len() - 1;
    while a.len() > n {
        let c = a.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let shift = a.len() - n;
        for (j, m) in mu[..n].iter().enumerate() {
            a[shift + j] -= &c * m;
        }
    }
    a.resize(n, Scalar::zero());
    a
}

fn mul(a: &Elem, b: &Elem, mu: &[Scalar]) -> Elem {
    let mut out = vec![Scalar::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(out, mu)
}

/// Determinant by Gaussian elimination over `Q`.
fn determinant(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            let (top, rest) = m.split_at_mut(r);
            for (x, y) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= &f * y;
            }
        }
    }
    det
}

/// Norm of `y`: the determinant of multiplication by `y` on the basis
/// `1, alpha, ..., alpha^(n-1)`.
fn norm(y: &Elem, mu: &[Scalar]) -> Scalar {
    let n = mu.len() - 1;
    let cols: Vec<Elem> = (0..n)
        .map(|j| {
            let mut e = vec![Scalar::zero(); n];
            e[j] = Scalar::one();
            mul(y, &e, mu)
        })
        .collect();
    let rows = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    determinant(rows)
}

fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> Vec<Scalar> {
    let n = xs.len();
    let mut out = vec![Scalar::zero(); n];
    for i in 0..n {
        let mut basis = vec![Scalar::one()];
        let mut denom = Scalar::one();
        for j in (0..n).filter(|&j| j != i) {
            let mut next = vec![Scalar::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &xs[j];
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let scale = &ys[i] / denom;
        for (k, b) in basis.iter().enumerate() {
            out[k] += b * &scale;
        }
    }
    out
}

fn trim(mut a: Vec<Scalar>) -> Vec<Scalar> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    while r.len() > db {
        let c = r.last().unwrap() / &b[db];
        let shift = r.len() - 1 - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        r = trim(r);
    }
    r
}

fn is_squarefree(f: &[Scalar]) -> bool {
    let df: Vec<Scalar> = trim(f.iter().enumerate().skip(1).map(|(i, c)| c * Scalar::from_integer(i.into())).collect());
    let (mut a, mut b) = (f.to_vec(), df);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a.len() <= 1
}

/// `Norm g(x + k alpha)` as coefficients, constant first.
fn shifted_norm(g: &[Elem], mu: &[Scalar], k: i64) -> Vec<Scalar> {
    let n = mu.len() - 1;
    let total = (g.len() - 1) * n;
    let xs: Vec<Scalar> = (0..=total as i64).map(|i| Scalar::from_integer(i.into())).collect();
    let ys: Vec<Scalar> = xs
        .iter()
        .map(|x0| {
            let mut y = vec![Scalar::zero(); n];
            y[0] = x0.clone();
            if n > 1 {
                y[1] = Scalar::from_integer(k.into());
            } else {
                y[0] -= Scalar::from_integer(k.into()) * &mu[0];
            }
            let mut acc = vec![Scalar::zero(); n];
            for c in g.iter().rev() {
                acc = mul(&acc, &y, mu);
                for (a, b) in acc.iter_mut().zip(c) {
                    *a += b;
                }
            }
            norm(&acc, mu)
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Decides irreducibility of the monic `g = sum_i g[i] x^i` over
/// `Q[alpha]/mu`, where each `g[i]` holds `alpha`-coordinates and the
/// leading entry is one. `None` when no squarefree norm turned up.
pub fn irreducible_over_number_field(g: &[Elem], mu: &[Scalar]) -> Result<Option<bool>> {
    let d = g.len() - 1;
    let n = mu.len() - 1;
    if d <= 1 {
        return Ok(Some(true));
    }
    if d * n > MAX_DEGREE {
        return Err(Error::Cap {
            what: "norm degree for number-field irreducibility".into(),
            required: (d * n) as u128,
            cap: MAX_DEGREE as u128,
        });
    }
    for k in 0..MAX_SHIFTS {
        let nk = shifted_norm(g, mu, k);
        if !nk[d * n].is_one() {
            return Err(Error::Contract("norm of a monic polynomial must be monic".into()));
        }
        if is_squarefree(&nk) {
            return Ok(Some(factor_monic_integer(&integral_rescaling(&nk))?.is_irreducible()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Scalar::from_integer(v.into())
    }

    fn poly(coeffs: &[&[i64]]) -> Vec<Elem> {
        coeffs.iter().map(|c| c.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn gaussian_rationals() {
        let mu = [q(1), q(0), q(1)];
        // x^2 - 2 stays irreducible over Q(i); x^2 + 1 splits.
        assert_eq!(irreducible_over_number_field(&poly(&[&[-2, 0], &[0, 0], &[1, 0]]), &mu).unwrap(), Some(true));
        assert_eq!(irreducible_over_number_field(&poly(&[&[1, 0], &[0, 0], &[1, 0]]), &mu).unwrap(), Some(false));
        // x^2 + 2i x - 1 = (x + i)^2 is not squarefree.
        assert_eq!(irreducible_over_number_field(&poly(&[&[-1, 0], &[0, 2], &[1, 0]]), &mu).unwrap(), None);
    }

    #[test]
    fn sqrt_two_field() {
        let mu = [q(-2), q(0), q(1)];
        assert_eq!(irreducible_over_number_field(&poly(&[&[-2, 0], &[0, 0], &[1, 0]]), &mu).unwrap(), Some(false));
        assert_eq!(irreducible_over_number_field(&poly(&[&[-3, 0], &[0, 0], &[1, 0]]), &mu).unwrap(), Some(true));
        // x^3 - 2 over Q(sqrt 2) has degree-6 norm and stays irreducible.
        assert_eq!(
            irreducible_over_number_field(&poly(&[&[-2, 0], &[0, 0], &[0, 0], &[1, 0]]), &mu).unwrap(),
            Some(true)
        );
    }

    #[test]
    fn norms() {
        let mu = [q(1), q(0), q(1)];
        assert_eq!(norm(&vec![q(3), q(4)], &mu), q(25));
        assert!(is_squarefree(&[q(-1), q(0), q(1)]));
        assert!(!is_squarefree(&[q(1), q(2), q(1)]));
    }
}
