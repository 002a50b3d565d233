//! Sparse multivariate polynomials with exact coefficients.
//!
//! Variables are indices into an external registry; the registry order is
//! the variable order used by the graded-lexicographic monomial order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::scalar::{format_scalar, Domain, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Power product `prod x_v^e`, stored sparsely as `(var, exponent)` pairs
/// sorted by variable index with every exponent positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v.0, e)])
        }
    }

    /// Builds a monomial from arbitrary pairs, merging duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v.0).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v.0, |(x, _)| *x)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|&(v, e)| (Var(v), e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Removes `v` and returns its former exponent.
    pub fn split_off(&self, v: Var) -> (u32, Monomial) {
        let mut rest = self.0.clone();
        match rest.binary_search_by_key(&v.0, |(x, _)| *x) {
            Ok(i) => {
                let (_, e) = rest.remove(i);
                (e, Monomial(rest))
            }
            Err(_) => (0, Monomial(rest)),
        }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order; lower variable indices weigh more.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
}

/// Polynomial with nonzero coefficients keyed by monomial, kept in
/// graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    domain: Domain,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(domain: Domain) -> Self {
        MultiPoly {
            domain,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(domain: Domain, c: Scalar) -> Self {
        let c = domain.normalize(c);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { domain, terms }
    }

    pub fn from_i64(domain: Domain, c: i64) -> Self {
        Self::constant(domain, domain.from_i64(c))
    }

    pub fn one(domain: Domain) -> Self {
        Self::from_i64(domain, 1)
    }

    pub fn var(domain: Domain, v: Var) -> Self {
        Self::monomial(domain, Monomial::var_pow(v, 1), domain.one())
    }

    pub fn monomial(domain: Domain, m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(domain);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(domain: Domain, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(domain);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Univariate polynomial `sum coeffs[k] * v^k`.
    pub fn univariate(domain: Domain, v: Var, coeffs: &[Scalar]) -> Self {
        Self::from_terms(
            domain,
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var_pow(v, k as u32), c.clone())),
        )
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the leading (largest) monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// The constant term, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        let c = self.domain.normalize(c);
        if c.is_zero() {
            return;
        }
        let d = self.domain;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = d.add(e.get(), &c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &MultiPoly) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::Structural(format!(
                "coefficient domain mismatch: {} vs {}",
                self.domain, other.domain
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero(self.domain));
        }
        let d = self.domain;
        let mut acc: HashMap<Monomial, Scalar> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                acc.entry(m)
                    .and_modify(|s| *s += &c)
                    .or_insert(c);
            }
        }
        let terms = acc
            .into_iter()
            .map(|(m, c)| (m, d.normalize(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(MultiPoly { domain: d, terms })
    }

    fn neg_ref(&self) -> MultiPoly {
        let d = self.domain;
        MultiPoly {
            domain: d,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), d.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        let d = self.domain;
        let c = d.normalize(c.clone());
        if c.is_zero() {
            return MultiPoly::zero(d);
        }
        MultiPoly {
            domain: d,
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), d.mul(x, &c)))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(self.domain);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Variables that occur with positive exponent.
    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().map(|(v, _)| v))
            .collect()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Coefficients with respect to `v`: entry `k` is the coefficient of `v^k`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MultiPoly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![MultiPoly::zero(self.domain); deg + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn substitute(&self, bindings: &HashMap<Var, MultiPoly>) -> MultiPoly {
        let d = self.domain;
        let mut out = MultiPoly::zero(d);
        let mut pow_cache: HashMap<(Var, u32), MultiPoly> = HashMap::new();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = MultiPoly::constant(d, c.clone());
            for (v, e) in m.pairs() {
                match bindings.get(&v) {
                    Some(b) => {
                        let pw = pow_cache.entry((v, e)).or_insert_with(|| b.pow(e));
                        factor = &factor * pw;
                    }
                    None => kept.push((v, e)),
                }
            }
            let rest = MultiPoly::monomial(d, Monomial::from_pairs(kept), d.one());
            out = &out + &(&factor * &rest);
        }
        out
    }

    /// Renames variables through `map`; variables mapped to `None` must not
    /// occur.
    pub fn remap(&self, map: &[Option<Var>]) -> MultiPoly {
        MultiPoly::from_terms(
            self.domain,
            self.terms.iter().map(|(m, c)| {
                let pairs = m.pairs().map(|(v, e)| {
                    let nv = map
                        .get(v.index())
                        .copied()
                        .flatten()
                        .expect("remap target for occurring variable");
                    (nv, e)
                });
                (Monomial::from_pairs(pairs), c.clone())
            }),
        )
    }

    /// Exact evaluation; every occurring variable must be assigned.
    pub fn eval(&self, value: impl Fn(Var) -> Option<Scalar>) -> Result<Scalar> {
        let d = self.domain;
        let mut cache: HashMap<Var, Scalar> = HashMap::new();
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.pairs() {
                let x = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = d.normalize(value(v).ok_or_else(|| {
                            Error::Structural(format!("no value for variable #{}", v.0))
                        })?);
                        cache.insert(v, x.clone());
                        x
                    }
                };
                t = d.mul(&t, &d.pow(&x, e));
            }
            acc += t;
        }
        Ok(d.normalize(acc))
    }

    /// Moves the polynomial into another domain, reducing coefficients.
    pub fn to_domain(&self, domain: Domain) -> MultiPoly {
        MultiPoly::from_terms(domain, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Canonical text: graded-lex order, leading term first, explicit
    /// coefficients, `^` powers and `*` products.
    pub fn to_text<'a>(&self, name: impl Fn(Var) -> &'a str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, false) => {}
                (0, true) => s.push('-'),
                (_, false) => s.push_str(" + "),
                (_, true) => s.push_str(" - "),
            }
            s.push_str(&format_scalar(&mag));
            for (v, e) in m.pairs() {
                s.push('*');
                s.push_str(name(v));
                if e > 1 {
                    let _ = write!(s, "^{e}");
                }
            }
        }
        s
    }

    pub fn leading_is_one_in(&self, v: Var) -> bool {
        let coeffs = self.coefficients_in(v);
        coeffs
            .last()
            .and_then(MultiPoly::as_constant)
            .is_some_and(|c| c.is_one())
    }
}

/// Exact ring arithmetic on two polynomials sharing a domain. `Neg`
/// ignores `b`.
pub fn poly_arith(op: ArithOp, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Neg => Ok(a.neg_ref()),
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("domain mismatch")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("domain mismatch")
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("domain mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.neg_ref()
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: Var = Var(0);
    const Y: Var = Var(1);
    const T: Var = Var(2);

    fn names(v: Var) -> &'static str {
        ["x", "y", "t"][v.index()]
    }

    fn q() -> Domain {
        Domain::Rational
    }

    #[test]
    fn additive_inverse_vanishes() {
        let x = MultiPoly::var(q(), X);
        let r = poly_arith(ArithOp::Add, &x, &-&x).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let x = MultiPoly::var(q(), X);
        let one = MultiPoly::one(q());
        let r = &(&x + &one) * &(&x - &one);
        assert_eq!(r.to_text(names), "1*x^2 - 1");
    }

    #[test]
    fn frobenius_square_in_characteristic_two() {
        let f2 = Domain::Prime(2);
        let x = MultiPoly::var(f2, X);
        let s = &x + &MultiPoly::one(f2);
        assert_eq!((&s * &s).to_text(names), "1*x^2 + 1");
    }

    #[test]
    fn domain_mismatch_is_structural() {
        let a = MultiPoly::var(q(), X);
        let b = MultiPoly::var(Domain::Prime(3), X);
        assert!(matches!(
            poly_arith(ArithOp::Mul, &a, &b),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn substitute_examples() {
        let x = MultiPoly::var(q(), X);
        let y = MultiPoly::var(q(), Y);
        let t = MultiPoly::var(q(), T);
        let p = &(&x * &x) + &y;
        let b = HashMap::from([(X, &t + &MultiPoly::one(q()))]);
        assert_eq!(p.substitute(&b).to_text(names), "1*t^2 + 1*y + 2*t + 1");
        let id = HashMap::from([(X, x.clone())]);
        assert_eq!(x.substitute(&id), x);
        let zero = HashMap::from([(X, MultiPoly::zero(q()))]);
        assert!((&x * &y).substitute(&zero).is_zero());
    }

    #[test]
    fn grlex_orders_by_degree_then_registry() {
        let m = |pairs: &[(u32, u32)]| Monomial::from_pairs(pairs.iter().map(|&(v, e)| (Var(v), e)));
        assert!(m(&[(1, 2)]) > m(&[(0, 1)]));
        assert!(m(&[(0, 1), (2, 1)]) > m(&[(1, 2)]));
        assert!(m(&[(0, 1)]) > m(&[(1, 1)]));
        assert!(m(&[]) < m(&[(2, 1)]));
    }

    #[test]
    fn coefficients_in_splits_by_power() {
        let x = MultiPoly::var(q(), X);
        let y = MultiPoly::var(q(), Y);
        let p = &(&(&x * &x) * &y) + &(&x + &MultiPoly::from_i64(q(), 3));
        let cs = p.coefficients_in(X);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], y);
        assert_eq!(cs[1], MultiPoly::one(q()));
        assert_eq!(cs[0], MultiPoly::from_i64(q(), 3));
    }
}
