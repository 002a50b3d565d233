//! Dense univariate arithmetic over `F_p`. Coefficients run from the
//! constant term upward; the zero polynomial is the empty vector.

use crate::algebra::{Domain, MultiPoly, Var};
use crate::error::{Error, Result};

pub const MAX_FACTOR_DEGREE: usize = 12;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u128, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow_mod(a, (p - 2) as u128, p))
    }
}

pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0) % p) % p)
            .collect(),
    )
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], p).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mul_mod(r[dr], lead_inv, p);
        q[dr - db] = c;
        for (i, &bi) in b[..=db].iter().enumerate() {
            let k = dr - db + i;
            r[k] = (r[k] + p - mul_mod(c, bi, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

/// Product modulo `f`.
pub fn mul_rem(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), f, p)
}

pub fn pow_rem(a: &[u64], mut e: u128, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], f, p);
    let mut base = rem(a, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_rem(&acc, &base, f, p);
        }
        e >>= 1;
        if e > 0 {
            base = mul_rem(&base, &base, f, p);
        }
    }
    acc
}

/// Evaluates `g` (coefficients in `F_p`) at the residue `y` modulo `f`.
pub fn eval_at_residue(g: &[u64], y: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = Vec::new();
    for &c in g.iter().rev() {
        acc = add(&mul_rem(&acc, y, f, p), &[c], p);
    }
    acc
}

/// Pads a residue to exactly `d` coordinates.
pub fn coords(a: &[u64], d: usize) -> Vec<u64> {
    let mut v = a.to_vec();
    v.resize(d, 0);
    v
}

/// The `k`-th monic polynomial of degree `d` in lexicographic order of
/// its low coefficients read as base-`p` digits, constant term first.
pub fn monic_from_index(mut k: u128, d: usize, p: u64) -> Vec<u64> {
    let mut v = Vec::with_capacity(d + 1);
    for _ in 0..d {
        v.push((k % p as u128) as u64);
        k /= p as u128;
    }
    v.push(1);
    v
}

pub fn monic_count(d: usize, p: u64) -> Option<u128> {
    (p as u128).checked_pow(d as u32)
}

/// Complete factorization of a monic polynomial by trial division with
/// monic divisors of increasing degree. Factors come out in ascending
/// degree, then in enumeration order, each with its multiplicity.
pub fn factor(f: &[u64], p: u64) -> Vec<(Vec<u64>, u32)> {
    let mut rest = trim(f.iter().map(|c| c % p).collect());
    let mut out: Vec<(Vec<u64>, u32)> = Vec::new();
    let mut k = 1;
    while let Some(dr) = degree(&rest) {
        if 2 * k > dr {
            break;
        }
        let n = monic_count(k, p).expect("small degree");
        for idx in 0..n {
            let g = monic_from_index(idx, k, p);
            let mut mult = 0;
            loop {
                let (q, r) = divrem(&rest, &g, p);
                if !r.is_empty() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
            if degree(&rest).is_none_or(|dr| 2 * k > dr) {
                break;
            }
        }
        k += 1;
    }
    if degree(&rest).is_some_and(|d| d > 0) {
        if let Some(pos) = out.iter().position(|(g, _)| *g == rest) {
            out[pos].1 += 1;
        } else {
            out.push((rest, 1));
            out.sort_by_key(|(g, _)| g.len());
        }
    }
    out
}

pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(d) = degree(f) else { return false };
    if d == 0 {
        return false;
    }
    let fs = factor(f, p);
    fs.len() == 1 && fs[0].1 == 1
}

/// Factorization of a monic univariate polynomial with coefficients
/// read modulo `p`.
pub fn factor_over_prime_field(f: &MultiPoly, p: u64) -> Result<Vec<(MultiPoly, u32)>> {
    let dom = Domain::prime(p)?;
    let vars = f.vars();
    if vars.len() > 1 {
        return Err(Error::Contract("expected a univariate polynomial".into()));
    }
    let x = vars.iter().next().copied().unwrap_or(Var(0));
    let coeffs: Vec<u64> = f
        .to_domain(dom)
        .coefficients_in(x)
        .iter()
        .map(|c| c.as_constant().map_or(0, |c| dom.residue(&c)))
        .collect();
    if coeffs.last() != Some(&1) {
        return Err(Error::Contract("expected a monic polynomial".into()));
    }
    if coeffs.len() - 1 > MAX_FACTOR_DEGREE {
        return Err(Error::Contract(format!("degree above {MAX_FACTOR_DEGREE}")));
    }
    Ok(factor(&coeffs, p)
        .into_iter()
        .map(|(g, m)| {
            let cs: Vec<_> = g.iter().map(|&c| dom.from_i64(c as i64)).collect();
            (MultiPoly::univariate(dom, x, &cs), m)
        })
        .collect())
}

/// All monic irreducible polynomials of degree `d` over `F_p`, in
/// enumeration order. Refuses when `p^d` exceeds `cap`.
pub fn irreducible_monic(p: u64, d: usize, cap: u128) -> Result<Vec<Vec<u64>>> {
    let n = monic_count(d, p).unwrap_or(u128::MAX);
    if n > cap {
        return Err(Error::Cap { what: format!("monic polynomials of degree {d} over F_{p}"), required: n, cap });
    }
    Ok((0..n)
        .map(|k| monic_from_index(k, d, p))
        .filter(|f| is_irreducible(f, p))
        .collect())
}

/// First irreducible monic polynomial of degree `d` in enumeration order.
pub fn first_irreducible(p: u64, d: usize) -> Vec<u64> {
    (0..)
        .map(|k| monic_from_index(k, d, p))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// The roots `x^(p^k)`, `k = 0..d`, of an irreducible `f` inside
/// `F_p[x]/f`, as coordinate vectors.
pub fn frobenius_roots(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let d = degree(f).expect("nonzero modulus");
    let mut out = Vec::with_capacity(d);
    let mut y = rem(&[0, 1], f, p);
    for _ in 0..d {
        out.push(coords(&y, d));
        y = pow_rem(&y, p as u128, f, p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorizations() {
        assert_eq!(factor(&[1, 0, 1], 2), vec![(vec![1, 1], 2)]);
        assert_eq!(factor(&[1, 1, 1], 2), vec![(vec![1, 1, 1], 1)]);
        assert!(is_irreducible(&[1, 1, 1, 1, 1], 2));
        // x^4 - 1 over F_5 splits into linear factors
        let fs = factor(&[4, 0, 0, 0, 1], 5);
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().all(|(g, m)| g.len() == 2 && *m == 1));
    }

    #[test]
    fn factors_multiply_back() {
        for k in 0..5u128.pow(4) {
            let f = monic_from_index(k, 4, 5);
            let prod = factor(&f, 5).iter().fold(vec![1u64], |acc, (g, m)| {
                (0..*m).fold(acc, |a, _| mul(&a, g, 5))
            });
            assert_eq!(prod, f);
        }
    }

    #[test]
    fn frobenius_orbit_of_x3_x_1() {
        let f = [1, 1, 0, 1];
        let roots = frobenius_roots(&f, 2);
        assert_eq!(roots.len(), 3);
        for r in &roots {
            assert!(eval_at_residue(&f, r, &f, 2).is_empty());
        }
        assert_eq!(pow_rem(&roots[2], 2, &f, 2), vec![0, 1]);
    }

    #[test]
    fn first_irreducibles() {
        assert_eq!(first_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(first_irreducible(5, 2), vec![2, 0, 1]);
    }
}
