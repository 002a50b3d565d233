//! Guess conjugation polynomials numerically, then accept only those that
//! compose to zero exactly modulo `f`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{compose_mod, Domain, MultiPoly, Scalar, Var};
use crate::error::{Error, Result};

use super::permutations;
use super::rational::{factor_monic_integer, real_root_count, univariate_coefficients};

pub const MAX_PROBE_DEGREE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeSettings {
    /// Mantissa bits of the root finder's floating point type.
    pub precision_bits: u32,
    pub max_denominator: u64,
    pub max_iterations: usize,
}

impl Default for ProbeSettings {
    fn default() -> Self {
        ProbeSettings { precision_bits: f64::MANTISSA_DIGITS, max_denominator: 10_000, max_iterations: 1_000 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProbeVerdict {
    /// Exactly verified conjugations `h_2..h_d`, identity excluded.
    GaloisWithWitness(Vec<MultiPoly>),
    NotGaloisCertified(String),
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub verdict: ProbeVerdict,
    pub settings: ProbeSettings,
}

pub fn galois_probe_rationals(f: &MultiPoly) -> Result<ProbeReport> {
    galois_probe_with(f, ProbeSettings::default())
}

pub fn galois_probe_with(f: &MultiPoly, settings: ProbeSettings) -> Result<ProbeReport> {
    let c = univariate_coefficients(f)?;
    if c.is_empty() || !c.last().unwrap().is_one() || c.iter().any(|x| !x.is_integer()) {
        return Err(Error::Contract("expected a monic integer polynomial".into()));
    }
    let d = c.len() - 1;
    if d > MAX_PROBE_DEGREE {
        return Err(Error::Cap { what: "probe degree".into(), required: d as u128, cap: MAX_PROBE_DEGREE as u128 });
    }
    let ints: Vec<BigInt> = c.iter().map(|x| x.to_integer()).collect();
    if !factor_monic_integer(&ints)?.is_irreducible() {
        return Err(Error::Contract("probe input must be irreducible".into()));
    }
    let x = f.vars().into_iter().next().unwrap_or(Var(0));
    let report = |verdict| Ok(ProbeReport { verdict, settings });
    if d == 1 {
        return report(ProbeVerdict::GaloisWithWitness(Vec::new()));
    }
    let real = real_root_count(&ints);
    if real > 0 && real < d {
        return report(ProbeVerdict::NotGaloisCertified(format!(
            "{real} of {d} roots are real, so the field generated by one root misses a conjugate"
        )));
    }
    if d == 3 && !is_square(&cubic_discriminant(&ints)) {
        return report(ProbeVerdict::NotGaloisCertified("cubic discriminant is not a square".into()));
    }
    let Some(roots) = durand_kerner(&ints, settings.max_iterations) else {
        return report(ProbeVerdict::Unknown("root finder did not converge".into()));
    };
    let mut found: Vec<MultiPoly> = Vec::new();
    for perm in permutations(d) {
        if perm[0] == 0 {
            continue;
        }
        let targets: Vec<Complex64> = perm.iter().map(|&k| roots[k]).collect();
        let coeffs = interpolate(&roots, &targets);
        let Some(h) = round_poly(&coeffs, settings.max_denominator, x) else { continue };
        if found.contains(&h) {
            continue;
        }
        if compose_mod(f, &h, x)?.iter().all(MultiPoly::is_zero) {
            found.push(h);
        }
    }
    if found.len() == d - 1 {
        found.sort_by_key(|h| h.to_text(|_| "x"));
        report(ProbeVerdict::GaloisWithWitness(found))
    } else {
        report(ProbeVerdict::Unknown(format!(
            "{} of {} conjugations verified at denominator bound {}",
            found.len(),
            d - 1,
            settings.max_denominator
        )))
    }
}

fn cubic_discriminant(f: &[BigInt]) -> BigInt {
    // x^3 + a x^2 + b x + c
    let (c, b, a) = (&f[0], &f[1], &f[2]);
    let four = BigInt::from(4);
    let a2 = a * a;
    &a2 * b * b - &four * b * b * b - &four * &a2 * a * c - BigInt::from(27) * c * c + BigInt::from(18) * a * b * c
}

fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

fn durand_kerner(f: &[BigInt], max_iter: usize) -> Option<Vec<Complex64>> {
    let d = f.len() - 1;
    let coeffs: Vec<f64> = f.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let eval = |z: Complex64| coeffs.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c);
    let bound = 1.0 + coeffs[..d].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32) * bound.min(2.0)).collect();
    for _ in 0..max_iter {
        let mut delta = 0.0f64;
        for i in 0..d {
            let mut den = Complex64::one();
            for j in 0..d {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                return None;
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 * bound {
            break;
        }
    }
    // Newton polish
    let deriv: Vec<f64> = (1..=d).map(|i| coeffs[i] * i as f64).collect();
    let deval = |z: Complex64| deriv.iter().rev().fold(Complex64::zero(), |acc, &c| acc * z + c);
    for r in z.iter_mut() {
        for _ in 0..5 {
            let dv = deval(*r);
            if dv.norm() == 0.0 {
                break;
            }
            *r -= eval(*r) / dv;
        }
    }
    let ok = z.iter().all(|r| eval(*r).norm() < 1e-6 * bound.powi(d as i32));
    ok.then_some(z)
}

/// Coefficients (constant first) of the polynomial of degree `< n` through
/// the `n` points.
fn interpolate(xs: &[Complex64], ys: &[Complex64]) -> Vec<Complex64> {
    let n = xs.len();
    let mut out = vec![Complex64::zero(); n];
    for i in 0..n {
        let mut basis = vec![Complex64::one()];
        let mut den = Complex64::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![Complex64::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xs[j];
            }
            basis = next;
            den *= xs[i] - xs[j];
        }
        let s = ys[i] / den;
        for (k, b) in basis.iter().enumerate() {
            out[k] += b * s;
        }
    }
    out
}

/// Best rational approximation with bounded denominator (continued
/// fractions), provided it lies within tolerance.
pub fn round_rational(v: f64, max_den: u64) -> Option<Scalar> {
    if !v.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut x = v;
    for _ in 0..64 {
        let a = x.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let (p2, q2) = (ai * p1 + p0, ai * q1 + q0);
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = x - a;
        if frac.abs() < 1e-12 {
            break;
        }
        x = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    let approx = p1 as f64 / q1 as f64;
    ((approx - v).abs() < 1e-6 * v.abs().max(1.0))
        .then(|| BigRational::new(BigInt::from(p1), BigInt::from(q1)))
}

fn round_poly(coeffs: &[Complex64], max_den: u64, x: Var) -> Option<MultiPoly> {
    let scale = coeffs.iter().fold(1.0f64, |m, c| m.max(c.norm()));
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        if c.im.abs() > 1e-6 * scale {
            return None;
        }
        out.push(round_rational(c.re, max_den)?);
    }
    Some(MultiPoly::univariate(Domain::Rational, x, &out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> MultiPoly {
        let v: Vec<Scalar> = c.iter().map(|&k| Scalar::from_integer(k.into())).collect();
        MultiPoly::univariate(Domain::Rational, Var(0), &v)
    }

    #[test]
    fn quadratic_conjugation_is_negation() {
        let r = galois_probe_rationals(&poly(&[-2, 0, 1])).unwrap();
        assert_eq!(r.verdict, ProbeVerdict::GaloisWithWitness(vec![poly(&[0, -1])]));
    }

    #[test]
    fn cyclic_cubics() {
        match galois_probe_rationals(&poly(&[-1, -3, 0, 1])).unwrap().verdict {
            ProbeVerdict::GaloisWithWitness(hs) => {
                assert_eq!(hs.len(), 2);
                assert!(hs.contains(&poly(&[2, 0, -1])));
                assert!(hs.contains(&poly(&[-2, -1, 1])));
            }
            other => panic!("{other:?}"),
        }
        match galois_probe_rationals(&poly(&[1, -3, 0, 1])).unwrap().verdict {
            ProbeVerdict::GaloisWithWitness(hs) => assert!(hs.contains(&poly(&[-2, 0, 1]))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn pure_cubic_is_not_galois() {
        assert!(matches!(
            galois_probe_rationals(&poly(&[-2, 0, 0, 1])).unwrap().verdict,
            ProbeVerdict::NotGaloisCertified(_)
        ));
    }

    #[test]
    fn cyclotomic_quartic() {
        match galois_probe_rationals(&poly(&[1, 1, 1, 1, 1])).unwrap().verdict {
            ProbeVerdict::GaloisWithWitness(hs) => {
                assert_eq!(hs.len(), 3);
                assert!(hs.contains(&poly(&[0, 0, 1])));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(round_rational(-0.5, 100), Some(BigRational::new((-1).into(), 2.into())));
        assert_eq!(round_rational(1.0 / 3.0, 10_000), Some(BigRational::new(1.into(), 3.into())));
        assert_eq!(round_rational(std::f64::consts::PI, 10), None);
    }

    #[test]
    fn reducible_input_is_rejected() {
        assert!(matches!(galois_probe_rationals(&poly(&[-1, 0, 1])), Err(Error::Contract(_))));
    }
}
