//! Boolean combinations of polynomial conditions and their lowering to a
//! flat equation list.

use num_traits::Zero;

use crate::algebra::{Domain, MultiPoly, Scalar, Var};
use crate::error::{Error, Result};

use super::system::{Disequation, DiophSystem, InverseLink, Role};

#[derive(Clone, Debug, PartialEq)]
pub enum Formula {
    /// All listed polynomials vanish.
    Eqs(Vec<MultiPoly>),
    /// The two tuples differ in some coordinate.
    Neq(Disequation),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn truth() -> Self {
        Formula::And(Vec::new())
    }

    pub fn falsity() -> Self {
        Formula::Or(Vec::new())
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Formula::And(c) if c.is_empty())
    }

    pub fn is_false(&self) -> bool {
        matches!(self, Formula::Or(c) if c.is_empty())
    }

    /// Drops zero polynomials; a nonzero constant makes the atom false.
    pub fn eqs(polys: impl IntoIterator<Item = MultiPoly>) -> Self {
        let mut kept = Vec::new();
        for p in polys {
            if p.is_zero() {
                continue;
            }
            if p.as_constant().is_some() {
                return Formula::falsity();
            }
            kept.push(p);
        }
        if kept.is_empty() {
            Formula::truth()
        } else {
            Formula::Eqs(kept)
        }
    }

    pub fn eq(p: MultiPoly) -> Self {
        Formula::eqs([p])
    }

    /// Coordinates with identically zero difference are dropped; a
    /// nonzero constant difference makes the atom true.
    pub fn neq(d: Disequation) -> Self {
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for (a, b) in d.lhs.into_iter().zip(d.rhs) {
            let diff = &a - &b;
            if diff.is_zero() {
                continue;
            }
            if diff.as_constant().is_some() {
                return Formula::truth();
            }
            lhs.push(a);
            rhs.push(b);
        }
        if lhs.is_empty() {
            Formula::falsity()
        } else {
            Formula::Neq(Disequation { lhs, rhs })
        }
    }

    pub fn and(children: impl IntoIterator<Item = Formula>) -> Self {
        let mut eqs: Vec<MultiPoly> = Vec::new();
        let mut eq_slot: Option<usize> = None;
        let mut out = Vec::new();
        for c in children {
            match c {
                Formula::Or(ref k) if k.is_empty() => return Formula::falsity(),
                Formula::And(k) => {
                    for g in k {
                        match g {
                            Formula::Eqs(v) => {
                                eq_slot.get_or_insert(out.len());
                                eqs.extend(v);
                            }
                            other => out.push(other),
                        }
                    }
                }
                Formula::Eqs(v) => {
                    eq_slot.get_or_insert(out.len());
                    eqs.extend(v);
                }
                other => out.push(other),
            }
        }
        if let Some(at) = eq_slot {
            out.insert(at, Formula::Eqs(eqs));
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Formula::And(out)
        }
    }

    pub fn or(children: impl IntoIterator<Item = Formula>) -> Self {
        let mut out = Vec::new();
        for c in children {
            match c {
                Formula::And(ref k) if k.is_empty() => return Formula::truth(),
                Formula::Or(k) => out.extend(k),
                other => out.push(other),
            }
        }
        if out.len() == 1 {
            out.pop().unwrap()
        } else {
            Formula::Or(out)
        }
    }

    /// Number of atoms.
    pub fn size(&self) -> usize {
        match self {
            Formula::Eqs(_) | Formula::Neq(_) => 1,
            Formula::And(c) | Formula::Or(c) => c.iter().map(Formula::size).sum(),
        }
    }

    /// Decides a formula over exact values; `value` supplies every
    /// occurring variable.
    pub fn evaluate(&self, value: &dyn Fn(Var) -> Option<Scalar>) -> Result<bool> {
        Ok(match self {
            Formula::Eqs(v) => {
                for p in v {
                    if !p.eval(value)?.is_zero() {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Neq(d) => {
                for diff in d.differences() {
                    if !diff.eval(value)?.is_zero() {
                        return Ok(true);
                    }
                }
                false
            }
            Formula::And(c) => {
                for f in c {
                    if !f.evaluate(value)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(c) => {
                for f in c {
                    if f.evaluate(value)? {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LowerCaps {
    /// Upper bound on the stored terms of the lowered equations.
    pub max_terms: usize,
}

impl Default for LowerCaps {
    fn default() -> Self {
        LowerCaps { max_terms: 4_000_000 }
    }
}

fn terms(v: &[MultiPoly]) -> usize {
    v.iter().map(MultiPoly::num_terms).sum()
}

fn check_cap(what: &str, required: usize, caps: &LowerCaps) -> Result<()> {
    if required > caps.max_terms {
        return Err(Error::Cap {
            what: what.to_string(),
            required: required as u128,
            cap: caps.max_terms as u128,
        });
    }
    Ok(())
}

/// Inverse-witness equation for a disequation over a field:
/// `prod_j (w_j (a_j - b_j) - 1)`. Returns `None` when the disequation
/// holds identically; an empty difference list yields the constant `-1`.
pub(crate) fn field_nonzero_equation(
    sys: &mut DiophSystem,
    diffs: Vec<MultiPoly>,
) -> Option<MultiPoly> {
    let dom = sys.domain();
    let mut prod = MultiPoly::one(dom);
    if diffs.iter().any(|q| !q.is_zero() && q.as_constant().is_some()) {
        return None;
    }
    let mut link = InverseLink { witnesses: Vec::new(), diffs: Vec::new() };
    for diff in diffs {
        if diff.is_zero() {
            continue;
        }
        let w = sys.registry.fresh("w", Role::InverseWitness);
        let factor = &(&MultiPoly::var(dom, w) * &diff) - &MultiPoly::one(dom);
        prod = &prod * &factor;
        link.witnesses.push(w);
        link.diffs.push(diff);
    }
    if link.witnesses.is_empty() {
        return Some(MultiPoly::from_i64(dom, -1));
    }
    sys.links.push(link);
    Some(prod)
}

/// `x != 0` over the integers: `x*y = (2z-1)(3w-1)` for some `y, z, w`.
pub(crate) fn integer_nonzero_equation(sys: &mut DiophSystem, x: &MultiPoly) -> MultiPoly {
    let dom = sys.domain();
    let y = sys.registry.fresh("aux", Role::Auxiliary);
    let z = sys.registry.fresh("aux", Role::Auxiliary);
    let w = sys.registry.fresh("aux", Role::Auxiliary);
    let c = |v| MultiPoly::from_i64(dom, v);
    let odd = &(&c(2) * &MultiPoly::var(dom, z)) - &c(1);
    let two_mod_three = &(&c(3) * &MultiPoly::var(dom, w)) - &c(1);
    &(x * &MultiPoly::var(dom, y)) - &(&odd * &two_mod_three)
}

pub(crate) fn sum_of_squares(dom: Domain, diffs: &[MultiPoly]) -> MultiPoly {
    diffs.iter().fold(MultiPoly::zero(dom), |acc, d| &acc + &(d * d))
}

/// Lowers a formula to equations, registering witness and selector
/// variables in `sys`. Disjunctions whose branches are single equations
/// become products; others get one-hot selector bits `u[k]` with
/// `u^2 = u`, pairwise `u_b u_c = 0`, `sum u = 1`, and each branch
/// equation multiplied by its selector.
pub fn lower_formula(sys: &mut DiophSystem, f: &Formula, caps: &LowerCaps) -> Result<Vec<MultiPoly>> {
    let dom = sys.domain();
    match f {
        Formula::Eqs(v) => Ok(v.clone()),
        Formula::Neq(d) => {
            let diffs = d.differences();
            if sys.ring.is_field() {
                Ok(field_nonzero_equation(sys, diffs).into_iter().collect())
            } else {
                let x = sum_of_squares(dom, &diffs);
                Ok(vec![integer_nonzero_equation(sys, &x)])
            }
        }
        Formula::And(children) => {
            let mut out = Vec::new();
            for c in children {
                out.extend(lower_formula(sys, c, caps)?);
                check_cap("lowered conjunction terms", terms(&out), caps)?;
            }
            Ok(out)
        }
        Formula::Or(children) => {
            if children.is_empty() {
                return Ok(vec![MultiPoly::one(dom)]);
            }
            let mut lowered = Vec::with_capacity(children.len());
            for c in children {
                lowered.push(lower_formula(sys, c, caps)?);
            }
            let b = lowered.len();
            let sum: usize = lowered.iter().map(|l| terms(l)).sum();
            if lowered.iter().all(|l| l.len() == 1) {
                let product_estimate = lowered
                    .iter()
                    .fold(1usize, |acc, l| acc.saturating_mul(l[0].num_terms()));
                if product_estimate <= 4 * (sum + b * b) {
                    let mut prod = MultiPoly::one(dom);
                    for l in &lowered {
                        prod = &prod * &l[0];
                    }
                    check_cap("lowered disjunction terms", prod.num_terms(), caps)?;
                    return Ok(vec![prod]);
                }
            }
            check_cap("lowered disjunction terms", sum + b * b, caps)?;
            let sel: Vec<Var> = (0..b).map(|_| sys.registry.fresh("u", Role::Selector)).collect();
            sys.selectors.push(sel.clone());
            let u = |k: usize| MultiPoly::var(dom, sel[k]);
            let mut out = Vec::new();
            for k in 0..b {
                out.push(&(&u(k) * &u(k)) - &u(k));
            }
            for k in 0..b {
                for l in k + 1..b {
                    out.push(&u(k) * &u(l));
                }
            }
            let total = (0..b).fold(MultiPoly::zero(dom), |acc, k| &acc + &u(k));
            out.push(&total - &MultiPoly::one(dom));
            for (k, l) in lowered.iter().enumerate() {
                for e in l {
                    out.push(&u(k) * e);
                }
            }
            Ok(out)
        }
    }
}
