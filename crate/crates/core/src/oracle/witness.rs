//! Exact witness verification.

use std::fmt;

use num_traits::{One, Zero};

use crate::algebra::scalar::format_scalar;
use crate::algebra::{Domain, Scalar, Var};
use crate::encoder::{DiophSystem, PredicateConstraint, Witness};
use crate::error::{Error, Result};

use super::eval::CompiledPoly;
use super::fp;
use super::numberfield::irreducible_over_number_field;
use super::rational::{factor_monic_integer, integral_rescaling, MAX_DEGREE};

#[derive(Clone, Debug, PartialEq)]
pub enum PredicateVerdict {
    Holds,
    Fails(String),
    /// The oracle cannot decide this predicate in this ring.
    Undecided(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub residuals: Vec<Scalar>,
    pub disequations: Vec<bool>,
    pub predicates: Vec<(String, PredicateVerdict)>,
    pub accepted: bool,
}

impl VerifyReport {
    pub fn all_residuals_zero(&self) -> bool {
        self.residuals.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.residuals.iter().enumerate() {
            writeln!(f, "residual eq[{i}] = {}", format_scalar(r))?;
        }
        for (i, ok) in self.disequations.iter().enumerate() {
            writeln!(f, "neq[{i}] {}", if *ok { "holds" } else { "FAILS" })?;
        }
        for (name, v) in &self.predicates {
            match v {
                PredicateVerdict::Holds => writeln!(f, "pred {name} holds")?,
                PredicateVerdict::Fails(why) => writeln!(f, "pred {name} FAILS: {why}")?,
                PredicateVerdict::Undecided(why) => writeln!(f, "pred {name} UNDECIDED: {why}")?,
            }
        }
        writeln!(f, "verdict {}", if self.accepted { "accepted" } else { "rejected" })
    }
}

/// Values for every registry variable, normalized into the system's domain.
pub fn assignment(sys: &DiophSystem, w: &Witness) -> Result<Vec<Scalar>> {
    let dom = sys.domain();
    sys.registry
        .iter()
        .map(|(_, v)| {
            let x = w
                .get(&v.name)
                .ok_or_else(|| Error::Structural(format!("witness misses variable `{}`", v.name)))?;
            if let Domain::Prime(p) = dom {
                if (x.denom() % p).is_zero() {
                    return Err(Error::Structural(format!("value of `{}` has denominator divisible by {p}", v.name)));
                }
            }
            Ok(dom.normalize(x.clone()))
        })
        .collect()
}

/// Residuals are exact: rational arithmetic over `Q`, machine residues
/// over `F_p`.
pub fn verify_witness(sys: &DiophSystem, w: &Witness) -> Result<VerifyReport> {
    let vals = assignment(sys, w)?;
    let value = |v: Var| vals.get(v.index()).cloned();
    let residuals = match sys.domain() {
        Domain::Prime(p) => {
            let words: Vec<u64> = vals.iter().map(|x| sys.domain().residue(x)).collect();
            sys.equations
                .iter()
                .map(|e| Scalar::from_integer(CompiledPoly::new(e, p).eval(&words).into()))
                .collect()
        }
        Domain::Rational => sys.equations.iter().map(|e| e.eval(value)).collect::<Result<Vec<_>>>()?,
    };
    let mut disequations = Vec::with_capacity(sys.disequations.len());
    for d in &sys.disequations {
        let mut any = false;
        for q in d.differences() {
            if !q.eval(value)?.is_zero() {
                any = true;
                break;
            }
        }
        disequations.push(any);
    }
    let mut predicates = Vec::with_capacity(sys.predicates.len());
    for pr in &sys.predicates {
        predicates.push(check_predicate(sys, pr, &vals)?);
    }
    let accepted = residuals.iter().all(Zero::is_zero)
        && disequations.iter().all(|&b| b)
        && predicates.iter().all(|(_, v)| *v == PredicateVerdict::Holds);
    Ok(VerifyReport { residuals, disequations, predicates, accepted })
}

fn check_predicate(sys: &DiophSystem, pr: &PredicateConstraint, vals: &[Scalar]) -> Result<(String, PredicateVerdict)> {
    let dom = sys.domain();
    match pr {
        PredicateConstraint::Irreducible { degree, args } => {
            let name = format!("irreducible({degree})");
            let n = sys.ring.extension_degree();
            if args.len() != degree * n {
                return Err(Error::Structural(format!("{name} has {} arguments", args.len())));
            }
            if n > 1 {
                let mut g: Vec<Vec<Scalar>> =
                    args.chunks(n).map(|c| c.iter().map(|v| vals[v.index()].clone()).collect()).collect();
                let mut lead = vec![Scalar::zero(); n];
                lead[0] = Scalar::one();
                g.push(lead);
                let verdict = match irreducible_over_number_field(&g, sys.ring.alpha_minpoly_coeffs()) {
                    Ok(Some(true)) => PredicateVerdict::Holds,
                    Ok(Some(false)) => PredicateVerdict::Fails("has a factor over the number field".into()),
                    Ok(None) => PredicateVerdict::Undecided("no squarefree shifted norm".into()),
                    Err(e) => PredicateVerdict::Undecided(e.to_string()),
                };
                return Ok((name, verdict));
            }
            let mut coeffs: Vec<Scalar> = args.iter().map(|v| vals[v.index()].clone()).collect();
            coeffs.push(Scalar::one());
            let verdict = match dom {
                Domain::Prime(p) => {
                    let f: Vec<u64> = coeffs.iter().map(|c| dom.residue(c)).collect();
                    let fs = fp::factor(&f, p);
                    if fs.len() == 1 && fs[0].1 == 1 {
                        PredicateVerdict::Holds
                    } else {
                        PredicateVerdict::Fails(format!("{} irreducible factors with multiplicity", fs.iter().map(|x| x.1).sum::<u32>()))
                    }
                }
                Domain::Rational if *degree > MAX_DEGREE => {
                    PredicateVerdict::Undecided(format!("degree above {MAX_DEGREE}"))
                }
                Domain::Rational => match factor_monic_integer(&integral_rescaling(&coeffs)) {
                    Ok(r) if r.is_irreducible() => PredicateVerdict::Holds,
                    Ok(_) => PredicateVerdict::Fails("has a rational factor".into()),
                    Err(e) => PredicateVerdict::Undecided(e.to_string()),
                },
            };
            Ok((name, verdict))
        }
        PredicateConstraint::Nonzero { expr } => {
            let v = expr.eval(|x| vals.get(x.index()).cloned())?;
            let verdict = if v.is_zero() {
                PredicateVerdict::Fails("expression vanishes".into())
            } else {
                PredicateVerdict::Holds
            };
            Ok(("nonzero".into(), verdict))
        }
    }
}

/// Fills selector and inverse-witness variables that `partial` leaves
/// open: every one-hot selector choice is tried, and each inverse witness
/// is the inverse of the first nonzero difference it certifies. Returns
/// the first completion that verifies.
pub fn complete_witness(sys: &DiophSystem, partial: &Witness, max_combinations: u128) -> Result<Option<Witness>> {
    let dom = sys.domain();
    let groups = sys.selector_groups();
    let links = sys.inverse_links();
    let open: std::collections::HashSet<Var> =
        groups.iter().flatten().chain(links.iter().flat_map(|l| l.witnesses.iter())).copied().collect();
    for (v, var) in sys.registry.iter() {
        if !open.contains(&v) && partial.get(&var.name).is_none() {
            return Err(Error::Structural(format!("witness misses variable `{}`", var.name)));
        }
    }
    if sys.registry.iter().all(|(_, v)| partial.get(&v.name).is_some()) && verify_witness(sys, partial)?.accepted {
        return Ok(Some(partial.clone()));
    }
    let combos = groups.iter().fold(1u128, |acc, g| acc.saturating_mul(g.len() as u128));
    if combos > max_combinations {
        return Err(Error::Cap { what: "selector combinations".into(), required: combos, cap: max_combinations });
    }
    let mut vals: Vec<Scalar> = sys
        .registry
        .iter()
        .map(|(_, v)| partial.get(&v.name).map(|x| dom.normalize(x.clone())).unwrap_or_default())
        .collect();
    for combo in 0..combos {
        let mut c = combo;
        for g in groups {
            let pick = (c % g.len() as u128) as usize;
            c /= g.len() as u128;
            for (i, v) in g.iter().enumerate() {
                vals[v.index()] = if i == pick { Scalar::one() } else { Scalar::zero() };
            }
        }
        for l in links {
            let mut done = false;
            for (w, q) in l.witnesses.iter().zip(&l.diffs) {
                let x = q.eval(|u| vals.get(u.index()).cloned())?;
                vals[w.index()] = if !done && !x.is_zero() {
                    done = true;
                    dom.normalize(x.recip())
                } else {
                    Scalar::zero()
                };
            }
        }
        let mut w = Witness::new();
        for (v, var) in sys.registry.iter() {
            w.set(var.name.clone(), vals[v.index()].clone());
        }
        if verify_witness(sys, &w)?.accepted {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
