//! Rewriting passes on emitted systems.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::algebra::{BaseRing, Domain, Modulus, MultiPoly, RingDescriptor, Scalar, Var};
use crate::error::{Error, Result};

use super::logic::{field_nonzero_equation, lower_formula, Formula, LowerCaps};
use super::system::{DiophSystem, PredicateConstraint, Role};

fn split_by(p: &MultiPoly, m: &Modulus) -> Vec<MultiPoly> {
    m.reduce_coeffs(p.coefficients_in(m.var()))
}

/// Replaces each equation `sum_j E_j gen^j` (reduced modulo `modulus`) by
/// the equations `E_j = 0`, and each disequation coordinate by its
/// `gen`-coordinates. `gen` is then dropped from the registry.
pub fn eliminate_generator(system: &DiophSystem, gen: Var, modulus: &MultiPoly) -> Result<DiophSystem> {
    if system.registry.role(gen) != Role::Generator {
        return Err(Error::Contract(format!(
            "`{}` is not a generator",
            system.registry.name(gen)
        )));
    }
    let m = Modulus::new(modulus, gen)?;
    if system.predicates.iter().any(|p| match p {
        PredicateConstraint::Irreducible { args, .. } => args.contains(&gen),
        PredicateConstraint::Nonzero { expr } => expr.vars().contains(&gen),
    }) {
        return Err(Error::Contract("a predicate mentions the generator".into()));
    }
    let mut out = system.clone();
    out.equations = system
        .equations
        .iter()
        .flat_map(|e| split_by(e, &m))
        .filter(|e| !e.is_zero())
        .collect();
    for d in &mut out.disequations {
        d.lhs = d.lhs.iter().flat_map(|p| split_by(p, &m)).collect();
        d.rhs = d.rhs.iter().flat_map(|p| split_by(p, &m)).collect();
    }
    for l in &mut out.links {
        if l.diffs.iter().any(|p| p.vars().contains(&gen)) {
            return Err(Error::Contract("inverse witnesses attached to generator terms".into()));
        }
    }
    out.drop_variables(&[gen])?;
    out.provenance.push(format!("eliminate({})", system.registry.name(gen)));
    Ok(out)
}

/// Turns every disequation into equations. Over a field a bundle
/// `a != b` becomes `prod_j (w_j (a_j - b_j) - 1) = 0` with fresh inverse
/// witnesses; over the integers a `nonzero` predicate on
/// `sum_j (a_j - b_j)^2` is emitted instead.
pub fn encode_disequation(system: &DiophSystem) -> DiophSystem {
    let mut out = system.clone();
    let dom = out.domain();
    let diseqs = std::mem::take(&mut out.disequations);
    for d in diseqs {
        let diffs = d.differences();
        if out.ring.is_field() {
            if let Some(e) = field_nonzero_equation(&mut out, diffs) {
                out.equations.push(e);
            }
        } else {
            let x = super::logic::sum_of_squares(dom, &diffs);
            if x.is_zero() {
                out.equations.push(MultiPoly::one(dom));
            } else if x.as_constant().is_none() {
                out.predicates.push(PredicateConstraint::Nonzero { expr: x });
            }
        }
    }
    out.provenance.push("encode-disequation".into());
    out
}

/// An anisotropic binary quadratic form `c0 u^2 + c1 u v + c2 v^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroForm {
    coeffs: [Scalar; 3],
    domain: Domain,
}

impl ZeroForm {
    /// Checks anisotropy: exhaustively over a prime field, through the
    /// discriminant over the rationals.
    pub fn new(domain: Domain, coeffs: [Scalar; 3]) -> Result<Self> {
        let coeffs = coeffs.map(|c| domain.normalize(c));
        let z = ZeroForm { coeffs, domain };
        let ok = match domain {
            Domain::Prime(p) => (0..p)
                .flat_map(|u| (0..p).map(move |v| (u, v)))
                .filter(|&(u, v)| (u, v) != (0, 0))
                .all(|(u, v)| !z.eval(&domain.from_i64(u as i64), &domain.from_i64(v as i64)).is_zero()),
            Domain::Rational => {
                let [a, b, c] = &z.coeffs;
                let disc = b * b - Scalar::from_integer(4.into()) * a * c;
                !a.is_zero() && !is_rational_square(&disc)
            }
        };
        if !ok {
            return Err(Error::Contract("form is isotropic".into()));
        }
        Ok(z)
    }

    /// `u^2 + v^2` over the rationals and integers, `u^2 - g v^2` with `g`
    /// the least non-residue modulo an odd prime, `u^2 + uv + v^2` over F_2.
    pub fn default_for(ring: &RingDescriptor) -> Self {
        let dom = ring.domain();
        let one = Scalar::one();
        let coeffs = match ring.base() {
            BaseRing::PrimeField(2) => [one.clone(), one.clone(), one],
            BaseRing::PrimeField(p) => {
                let g = (2..p).find(|&g| !is_residue(g, p)).expect("odd prime has a non-residue");
                [one, Scalar::zero(), dom.neg(&dom.from_i64(g as i64))]
            }
            _ => [one.clone(), Scalar::zero(), one],
        };
        ZeroForm::new(dom, coeffs).expect("default forms are anisotropic")
    }

    pub fn coefficients(&self) -> &[Scalar; 3] {
        &self.coeffs
    }

    fn eval(&self, u: &Scalar, v: &Scalar) -> Scalar {
        let d = self.domain;
        let [a, b, c] = &self.coeffs;
        let t = d.add(&d.mul(a, &d.mul(u, u)), &d.mul(b, &d.mul(u, v)));
        d.add(&t, &d.mul(c, &d.mul(v, v)))
    }

    pub fn apply(&self, u: &MultiPoly, v: &MultiPoly) -> MultiPoly {
        let [a, b, c] = &self.coeffs;
        let uu = (u * u).scale(a);
        let uv = (u * v).scale(b);
        let vv = (v * v).scale(c);
        &(&uu + &uv) + &vv
    }
}

fn is_residue(g: u64, p: u64) -> bool {
    (1..p).any(|x| x * x % p == g % p)
}

fn is_rational_square(q: &Scalar) -> bool {
    if q.is_negative() {
        return false;
    }
    let sq = |n: &num_bigint::BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    sq(q.numer()) && sq(q.denom())
}

use num_traits::Signed;

/// Folds the equation list into one polynomial with the same zero set by
/// combining neighbours with `Z` in rounds. Predicates must be waived
/// explicitly; disequations must already be encoded.
pub fn conjoin_single(system: &DiophSystem, z: &ZeroForm, waive_predicates: bool) -> Result<MultiPoly> {
    if !system.disequations.is_empty() {
        return Err(Error::Contract("disequations must be encoded first".into()));
    }
    if !system.predicates.is_empty() && !waive_predicates {
        return Err(Error::Contract(format!(
            "{} unresolved predicate(s)",
            system.predicates.len()
        )));
    }
    if system.equations.is_empty() {
        return Ok(MultiPoly::zero(system.domain()));
    }
    let mut level = system.equations.clone();
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        for c in level.chunks(2) {
            match c {
                [u, v] => {
                    let (m, n) = (u.num_terms(), v.num_terms());
                    let bound = m * (m + 1) / 2 + m * n + n * (n + 1) / 2;
                    if bound > MAX_SINGLE_TERMS {
                        return Err(Error::Cap {
                            what: "terms in the combined equation".into(),
                            required: bound as u128,
                            cap: MAX_SINGLE_TERMS as u128,
                        });
                    }
                    next.push(z.apply(u, v));
                }
                [u] => next.push(u.clone()),
                _ => unreachable!(),
            }
        }
        level = next;
    }
    Ok(level.pop().unwrap())
}

/// Upper bound on the term count of any intermediate polynomial built by
/// `conjoin_single`.
pub const MAX_SINGLE_TERMS: usize = 2_000_000;

pub(crate) fn conjoin_polys(polys: &[MultiPoly], z: &ZeroForm, dom: Domain) -> MultiPoly {
    if polys.is_empty() {
        return MultiPoly::zero(dom);
    }
    // Pairwise rounds keep the degree linear in the number of equations.
    let mut level: Vec<MultiPoly> = polys.to_vec();
    while level.len() > 1 {
        level = level
            .chunks(2)
            .map(|c| match c {
                [u, v] => z.apply(u, v),
                [u] => u.clone(),
                _ => unreachable!(),
            })
            .collect();
    }
    level.pop().unwrap()
}

/// The product of the inputs: vanishes iff some factor does.
pub fn disjoin(polys: &[MultiPoly]) -> Result<MultiPoly> {
    let (first, rest) = polys
        .split_first()
        .ok_or_else(|| Error::Contract("disjoin of an empty list".into()))?;
    Ok(rest.iter().fold(first.clone(), |acc, p| &acc * p))
}

/// Replaces the predicate at `target` by the equations of `definition`.
/// Parameter variables of the definition are bound to the predicate's
/// arguments in order; every other definition variable becomes a fresh
/// `aux[p][k]`.
pub fn splice_definition(outer: &DiophSystem, target: usize, definition: &DiophSystem) -> Result<DiophSystem> {
    let pred = outer
        .predicates
        .get(target)
        .ok_or_else(|| Error::Structural(format!("no predicate #{target}")))?;
    if !definition.disequations.is_empty() || !definition.predicates.is_empty() {
        return Err(Error::Contract("definitions must be plain equation lists".into()));
    }
    if definition.domain() != outer.domain() {
        return Err(Error::Structural("definition over a different ring".into()));
    }
    let args = pred.arguments(outer.domain());
    let params = definition.variables_with_role(Role::Parameter);
    if params.len() != args.len() {
        return Err(Error::Structural(format!(
            "definition takes {} parameter(s), predicate has {} argument(s)",
            params.len(),
            args.len()
        )));
    }
    let mut out = outer.clone();
    let p = outer.provenance.iter().filter(|l| l.starts_with("splice(")).count();
    let mut bind: HashMap<Var, MultiPoly> = params.iter().copied().zip(args).collect();
    let mut k = 0;
    for (v, _) in definition.registry.iter() {
        if bind.contains_key(&v) {
            continue;
        }
        let nv = out.registry.add(format!("aux[{p}][{k}]"), Role::Auxiliary)?;
        k += 1;
        bind.insert(v, out.var(nv));
    }
    for e in &definition.equations {
        out.push_equation(e.substitute(&bind));
    }
    let kind = match pred {
        PredicateConstraint::Irreducible { degree, .. } => format!("irreducible-{degree}"),
        PredicateConstraint::Nonzero { .. } => "nonzero".to_string(),
    };
    out.predicates.remove(target);
    out.provenance.push(format!("splice({kind})"));
    Ok(out)
}

/// `nonzero(x)` over a field: `w x - 1 = 0`.
pub fn field_nonzero_definition(ring: &RingDescriptor) -> DiophSystem {
    let mut s = DiophSystem::new(ring.clone());
    let x = s.registry.add("x", Role::Parameter).expect("fresh");
    let w = s.registry.add("w", Role::InverseWitness).expect("fresh");
    s.equations.push(&(&s.var(w) * &s.var(x)) - &s.constant(1));
    s
}

/// `nonzero(x)` over the integers: `x y = (2z - 1)(3w - 1)`.
pub fn integer_nonzero_definition() -> DiophSystem {
    let mut s = DiophSystem::new(RingDescriptor::integers());
    let x = s.registry.add("x", Role::Parameter).expect("fresh");
    let e = super::logic::integer_nonzero_equation(&mut s, &MultiPoly::var(Domain::Rational, x));
    s.equations.push(e);
    s
}

/// `nonzero` definition matching the ring.
pub fn nonzero_definition(ring: &RingDescriptor) -> DiophSystem {
    if ring.is_field() {
        field_nonzero_definition(ring)
    } else {
        integer_nonzero_definition()
    }
}

/// `irreducible(d)` over `F_p` by exhaustion: the coefficient tuple equals
/// one of the irreducible monic polynomials of degree `d`, each pin set
/// folded with the default form, then disjoined.
pub fn exhaustive_irreducible_definition(ring: &RingDescriptor, d: usize, caps: &LowerCaps) -> Result<DiophSystem> {
    let BaseRing::PrimeField(p) = ring.base() else {
        return Err(Error::Contract("exhaustive irreducibility needs a prime field".into()));
    };
    let candidates = crate::oracle::fp::irreducible_monic(p, d, caps.max_terms as u128)?;
    let mut s = DiophSystem::new(ring.clone());
    let params: Vec<Var> = (0..d)
        .map(|i| s.registry.add(format!("c[{i}]"), Role::Parameter))
        .collect::<Result<_>>()?;
    let z = ZeroForm::default_for(ring);
    let branches = candidates.iter().map(|f| {
        let pins: Vec<MultiPoly> = params
            .iter()
            .zip(f)
            .map(|(&v, &c)| &s.var(v) - &s.constant(c as i64))
            .collect();
        Formula::eq(conjoin_polys(&pins, &z, s.domain()))
    });
    let formula = Formula::or(branches.collect::<Vec<_>>());
    let eqs = lower_formula(&mut s, &formula, caps)?;
    s.equations.extend(eqs);
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::system::Disequation;

    fn f5() -> RingDescriptor {
        RingDescriptor::prime_field(5).unwrap()
    }

    #[test]
    fn constant_in_generator_leaves_one_equation() {
        let mut s = DiophSystem::new(RingDescriptor::rationals());
        let g = s.registry.add("gamma", Role::Generator).unwrap();
        let x = s.registry.add("x", Role::Auxiliary).unwrap();
        s.equations.push(&s.var(x) - &s.constant(7));
        let gm = &s.var(g).pow(2) - &s.constant(2);
        let out = eliminate_generator(&s, g, &gm).unwrap();
        assert_eq!(out.equations.len(), 1);
        assert_eq!(out.equations[0].to_text(|v| out.registry.name(v)), "1*x - 7");
    }

    #[test]
    fn one_reduction_step() {
        let mut s = DiophSystem::new(RingDescriptor::rationals());
        let g = s.registry.add("gamma", Role::Generator).unwrap();
        let u = s.registry.add("u", Role::Auxiliary).unwrap();
        let v = s.registry.add("v", Role::Auxiliary).unwrap();
        s.equations.push(&(&s.var(g) * &s.var(u)) + &(&s.var(g).pow(2) * &s.var(v)));
        let gm = &s.var(g).pow(2) - &s.constant(2);
        let out = eliminate_generator(&s, g, &gm).unwrap();
        let text: Vec<String> = out.equations.iter().map(|e| e.to_text(|w| out.registry.name(w))).collect();
        assert_eq!(text, ["2*v", "1*u"]);
    }

    #[test]
    fn nonmonic_modulus_is_a_contract_violation() {
        let mut s = DiophSystem::new(RingDescriptor::rationals());
        let g = s.registry.add("gamma", Role::Generator).unwrap();
        let gm = &s.var(g).pow(2).scale(&Scalar::from_integer(2.into())) - &s.constant(1);
        assert!(matches!(eliminate_generator(&s, g, &gm), Err(Error::Contract(_))));
    }

    #[test]
    fn field_disequation_gets_inverse_witness() {
        let mut s = DiophSystem::new(RingDescriptor::rationals());
        let x = s.registry.add("x", Role::Auxiliary).unwrap();
        s.disequations.push(Disequation::single(s.var(x), s.constant(0)));
        let out = encode_disequation(&s);
        assert!(out.disequations.is_empty());
        assert_eq!(out.equations[0].to_text(|v| out.registry.name(v)), "1*x*w[0] - 1");
        let half = Scalar::new(1.into(), 2.into());
        let val = |v: Var| Some(if v == x { Scalar::from_integer(2.into()) } else { half.clone() });
        assert!(out.equations[0].eval(val).unwrap().is_zero());
    }

    #[test]
    fn integer_disequation_becomes_predicate() {
        let mut s = DiophSystem::new(RingDescriptor::integers());
        let x = s.registry.add("x", Role::Auxiliary).unwrap();
        s.disequations.push(Disequation::single(s.var(x), s.constant(0)));
        let out = encode_disequation(&s);
        assert!(out.equations.is_empty());
        assert!(matches!(out.predicates[0], PredicateConstraint::Nonzero { .. }));
    }

    #[test]
    fn bundle_disequation_witness_by_exhaustion() {
        // (a0, a1) != (b0, b1) at a = (1, 0), b = (1, 3) over F_5.
        let mut s = DiophSystem::new(f5());
        let v: Vec<Var> = ["a0", "a1", "b0", "b1"]
            .iter()
            .map(|n| s.registry.add(*n, Role::Auxiliary).unwrap())
            .collect();
        s.disequations.push(Disequation {
            lhs: vec![s.var(v[0]), s.var(v[1])],
            rhs: vec![s.var(v[2]), s.var(v[3])],
        });
        let out = encode_disequation(&s);
        let fixed = [1u64, 0, 1, 3];
        let mut sols = Vec::new();
        for w0 in 0..5u64 {
            for w1 in 0..5u64 {
                let val = |x: Var| {
                    let i = x.index();
                    Some(Scalar::from_integer(if i < 4 { fixed[i] } else { [w0, w1][i - 4] }.into()))
                };
                if out.equations[0].eval(val).unwrap().is_zero() {
                    sols.push((w0, w1));
                }
            }
        }
        // the coordinate-1 factor vanishes exactly when w1 * (0 - 3) = 1
        assert_eq!(sols, (0..5).map(|w0| (w0, 3)).collect::<Vec<_>>());
    }

    #[test]
    fn zero_forms() {
        for p in [2u64, 3, 5, 7, 11] {
            let z = ZeroForm::default_for(&RingDescriptor::prime_field(p).unwrap());
            assert!(ZeroForm::new(Domain::Prime(p), z.coefficients().clone()).is_ok());
        }
        let five = ZeroForm::default_for(&f5());
        assert_eq!(five.coefficients()[2], Scalar::from_integer(3.into()));
        assert!(ZeroForm::new(Domain::Prime(5), [Scalar::one(), Scalar::zero(), Scalar::one()]).is_err());
        let one = Scalar::one();
        assert!(ZeroForm::new(Domain::Rational, [one.clone(), Scalar::zero(), -one]).is_err());
    }

    #[test]
    fn conjoin_examples() {
        for (ring, text) in [
            (RingDescriptor::rationals(), "1*x^2 + 1*y^2"),
            (f5(), "1*x^2 + 3*y^2"),
            (RingDescriptor::prime_field(2).unwrap(), "1*x^2 + 1*x*y + 1*y^2"),
        ] {
            let mut s = DiophSystem::new(ring.clone());
            let x = s.registry.add("x", Role::Auxiliary).unwrap();
            let y = s.registry.add("y", Role::Auxiliary).unwrap();
            s.equations = vec![s.var(x), s.var(y)];
            let g = conjoin_single(&s, &ZeroForm::default_for(&ring), false).unwrap();
            assert_eq!(g.to_text(|v| s.registry.name(v)), text);
        }
    }

    #[test]
    fn conjoin_refuses_open_constraints() {
        let mut s = DiophSystem::new(f5());
        let x = s.registry.add("x", Role::Auxiliary).unwrap();
        s.predicates.push(PredicateConstraint::Irreducible { degree: 1, args: vec![x] });
        let z = ZeroForm::default_for(&f5());
        assert!(matches!(conjoin_single(&s, &z, false), Err(Error::Contract(_))));
        assert!(conjoin_single(&s, &z, true).is_ok());
        s.disequations.push(Disequation::single(s.var(x), s.constant(1)));
        assert!(matches!(conjoin_single(&s, &z, true), Err(Error::Contract(_))));
    }

    #[test]
    fn disjoin_examples() {
        let f2 = Domain::Prime(2);
        let (x, y) = (MultiPoly::var(f2, Var(0)), MultiPoly::var(f2, Var(1)));
        assert_eq!(disjoin(&[x.clone(), y.clone()]).unwrap(), &x * &y);
        let p = disjoin(&[x.clone(), &x + &MultiPoly::one(f2)]).unwrap();
        assert_eq!(p, &x.pow(2) + &x);
        assert!(matches!(disjoin(&[]), Err(Error::Contract(_))));
    }

    #[test]
    fn splice_nonzero() {
        let ring = RingDescriptor::rationals();
        let mut s = DiophSystem::new(ring.clone());
        let x = s.registry.add("x", Role::Auxiliary).unwrap();
        s.predicates.push(PredicateConstraint::Nonzero { expr: s.var(x) });
        let out = splice_definition(&s, 0, &field_nonzero_definition(&ring)).unwrap();
        assert!(out.predicates.is_empty());
        assert_eq!(out.equations[0].to_text(|v| out.registry.name(v)), "1*x*aux[0][0] - 1");
    }

    #[test]
    fn splice_arity_mismatch() {
        let ring = RingDescriptor::rationals();
        let mut s = DiophSystem::new(ring.clone());
        let x = s.registry.add("x", Role::Auxiliary).unwrap();
        s.predicates.push(PredicateConstraint::Irreducible { degree: 1, args: vec![x, x] });
        assert!(matches!(
            splice_definition(&s, 0, &field_nonzero_definition(&ring)),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn splice_without_auxiliaries_concatenates() {
        let ring = f5();
        let mut s = DiophSystem::new(ring.clone());
        let x = s.registry.add("x", Role::Auxiliary).unwrap();
        s.equations.push(&s.var(x) - &s.constant(1));
        s.predicates.push(PredicateConstraint::Nonzero { expr: s.var(x) });
        let mut def = DiophSystem::new(ring);
        let p = def.registry.add("p", Role::Parameter).unwrap();
        def.equations.push(&def.var(p).pow(4) - &def.constant(1));
        let out = splice_definition(&s, 0, &def).unwrap();
        assert_eq!(out.registry, s.registry);
        assert_eq!(out.equations, vec![s.equations[0].clone(), &s.var(x).pow(4) - &s.constant(1)]);
    }

    #[test]
    fn exhaustive_quadratic_over_f2_pins_x2_x_1() {
        let ring = RingDescriptor::prime_field(2).unwrap();
        let mut s = DiophSystem::new(ring.clone());
        let a0 = s.registry.add("a[0][0]", Role::PolyCoefficient).unwrap();
        let a1 = s.registry.add("a[1][0]", Role::PolyCoefficient).unwrap();
        s.predicates.push(PredicateConstraint::Irreducible { degree: 2, args: vec![a0, a1] });
        let def = exhaustive_irreducible_definition(&ring, 2, &LowerCaps::default()).unwrap();
        let out = splice_definition(&s, 0, &def).unwrap();
        let mut sols = Vec::new();
        for (u, v) in [(0u64, 0u64), (0, 1), (1, 0), (1, 1)] {
            let val = |x: Var| Some(Scalar::from_integer(if x == a0 { u } else { v }.into()));
            if out.equations.iter().all(|e| e.eval(val).unwrap().is_zero()) {
                sols.push((u, v));
            }
        }
        assert_eq!(sols, [(1, 1)]);
    }
}
