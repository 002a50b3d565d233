//! End-to-end encoding requests and the bundled demo scenarios.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{BaseRing, RingDescriptor, Scalar};
use crate::encoder::{
    conjoin_single, encode_automorphism_problem, encode_disequation, encode_group_realization,
    encode_subgroup_problem, exhaustive_irreducible_definition, AutomorphismEncoding, nonzero_definition, splice_definition,
    AutomorphismCaps, DiophSystem, LowerCaps, PredicateConstraint, SubgroupCaps, Witness, ZeroForm,
};
use crate::error::{Error, Result};
use crate::group::{library, GroupTable};
use crate::oracle::{
    complete_witness, structured_solve_automorphism, structured_solve_system, SolveStatus, StructuredCaps,
};
use crate::par::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    /// Inverse Galois problem for one group.
    Igp,
    Subgroup,
    Automorphism,
}

impl Problem {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "igp" => Ok(Problem::Igp),
            "subgroup" => Ok(Problem::Subgroup),
            "automorphism" => Ok(Problem::Automorphism),
            _ => Err(Error::Parse(format!("unknown problem `{s}`"))),
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Igp => "igp",
            Problem::Subgroup => "subgroup",
            Problem::Automorphism => "automorphism",
        })
    }
}

#[derive(Clone, Debug)]
pub struct EncodeRequest {
    pub problem: Problem,
    pub ring: RingDescriptor,
    pub groups: Vec<GroupTable>,
    /// Extension degree `n` for the automorphism problem.
    pub degree: Option<usize>,
    pub single_equation: bool,
    /// Replace predicates by explicit definitions where one is available.
    pub splice: bool,
}

pub fn run_encode(req: &EncodeRequest) -> Result<DiophSystem> {
    let want = match req.problem {
        Problem::Igp | Problem::Automorphism => 1,
        Problem::Subgroup => 2,
    };
    if req.groups.len() != want {
        return Err(Error::Structural(format!(
            "problem {} takes {want} group table(s), got {}",
            req.problem,
            req.groups.len()
        )));
    }
    let sys = match req.problem {
        Problem::Igp => encode_group_realization(&req.ring, &req.groups[0])?,
        Problem::Subgroup => encode_subgroup_problem(&req.ring, &req.groups[0], &req.groups[1], &SubgroupCaps::default())?,
        Problem::Automorphism => {
            let n = req
                .degree
                .ok_or_else(|| Error::Structural("automorphism problem needs --degree".into()))?;
            encode_automorphism_problem(&req.ring, &req.groups[0], n, &AutomorphismCaps::default())?
        }
    };
    if req.single_equation {
        single_equation(&sys, req.splice)
    } else {
        Ok(sys)
    }
}

/// Encodes disequations, optionally splices predicate definitions, and
/// appends the conjunction of all equations as one final equation.
pub fn single_equation(sys: &DiophSystem, splice: bool) -> Result<DiophSystem> {
    let mut out = encode_disequation(sys);
    if splice {
        let caps = LowerCaps::default();
        while let Some((idx, def)) = next_splice(&out, &caps)? {
            out = splice_definition(&out, idx, &def)?;
        }
    }
    let z = ZeroForm::default_for(&out.ring);
    let single = conjoin_single(&out, &z, true)?;
    out.equations.push(single);
    out.provenance.push("conjoin-single".into());
    Ok(out)
}

fn next_splice(sys: &DiophSystem, caps: &LowerCaps) -> Result<Option<(usize, DiophSystem)>> {
    for (i, p) in sys.predicates.iter().enumerate() {
        match p {
            PredicateConstraint::Irreducible { degree, .. } if matches!(sys.ring.base(), BaseRing::PrimeField(_)) => {
                return Ok(Some((i, exhaustive_irreducible_definition(&sys.ring, *degree, caps)?)));
            }
            PredicateConstraint::Nonzero { .. } => return Ok(Some((i, nonzero_definition(&sys.ring)))),
            _ => {}
        }
    }
    Ok(None)
}

/// A bundled encoding with an optional witness known to satisfy it.
pub struct Scenario {
    pub name: &'static str,
    pub request: EncodeRequest,
    pub witness: WitnessSource,
}

pub enum WitnessSource {
    /// Core values; selectors and inverse witnesses are completed.
    Fixed(Witness),
    /// Found by the structured finite-field solver on the given degree.
    Structured(usize),
    /// Found by the structured automorphism solver.
    Automorphism,
    /// No solution exists: either the system contains a nonzero constant
    /// equation, or the structured solver on the given degree proves it.
    Unsolvable(Option<usize>),
}

fn int(k: i64) -> Scalar {
    Scalar::from_integer(k.into())
}

/// Witness for a realization block with `t = 1`: low coefficients of `f`
/// and the coordinates of each non-trivial conjugate `h_2, h_3, ...`, all
/// rational. `n` is the extension degree of the base ring; higher
/// `alpha`-coordinates are zero.
pub fn realization_witness(n: usize, a: &[i64], h: &[&[i64]]) -> Witness {
    let mut w = Witness::new();
    let pad = |w: &mut Witness, stem: String, c: i64| {
        for r in 0..n {
            w.set(format!("{stem}[{r}]"), int(if r == 0 { c } else { 0 }));
        }
    };
    for (i, &c) in a.iter().enumerate() {
        pad(&mut w, format!("a[{i}]"), c);
    }
    for (k, hk) in h.iter().enumerate() {
        for (j, &c) in hk.iter().enumerate() {
            pad(&mut w, format!("b[{}][{j}]", k + 2), c);
        }
    }
    if !h.is_empty() {
        w.set("t", int(1));
    }
    w
}

fn request(problem: Problem, ring: &str, groups: &[&str], degree: Option<usize>, single: bool) -> EncodeRequest {
    EncodeRequest {
        problem,
        ring: RingDescriptor::parse(ring).expect("bundled ring spec"),
        groups: groups.iter().map(|g| library::group(g).expect("bundled group")).collect(),
        degree,
        single_equation: single,
        splice: single,
    }
}

pub fn scenarios() -> Vec<Scenario> {
    use Problem::*;
    use WitnessSource as W;
    let s = |name, request, witness| Scenario { name, request, witness };
    let rw = |a: &[i64], h: &[&[i64]]| W::Fixed(realization_witness(1, a, h));
    let c2 = || rw(&[-2, 0], &[&[0, -1]]);
    vec![
        s("igp-q-c1", request(Igp, "Q", &["C1"], None, false), rw(&[0], &[])),
        s("igp-q-c2", request(Igp, "Q", &["C2"], None, false), c2()),
        s("igp-q-c3", request(Igp, "Q", &["C3"], None, false), rw(&[1, -3, 0], &[&[-2, 0, 1], &[2, -1, -1]])),
        s("igp-q-c3-alt", request(Igp, "Q", &["C3"], None, false), rw(&[-1, -3, 0], &[&[2, 0, -1], &[-2, -1, 1]])),
        s(
            "igp-q-c4",
            request(Igp, "Q", &["C4"], None, false),
            rw(&[1, 1, 1, 1], &[&[0, 0, 1, 0], &[-1, -1, -1, -1], &[0, 0, 0, 1]]),
        ),
        s("igp-z-c2", request(Igp, "Z", &["C2"], None, false), c2()),
        s("igp-f5-c2", request(Igp, "Fp p=5", &["C2"], None, false), rw(&[2, 0], &[&[0, 4]])),
        s("igp-f2-c3", request(Igp, "Fp p=2", &["C3"], None, false), W::Structured(3)),
        s("igp-f3-c4", request(Igp, "Fp p=3", &["C4"], None, false), W::Structured(4)),
        s("igp-f3-c2xc2", request(Igp, "Fp p=3", &["C2xC2"], None, false), W::Unsolvable(Some(4))),
        s(
            "igp-numberfield-c2",
            request(Igp, "numberfield minpoly=1,0,1", &["C2"], None, false),
            W::Fixed(realization_witness(2, &[-2, 0], &[&[0, -1]])),
        ),
        s("subgroup-q-c4-c3", request(Subgroup, "Q", &["C4", "C3"], None, false), W::Unsolvable(None)),
        s("subgroup-f3-c4-c2", request(Subgroup, "Fp p=3", &["C4", "C2"], None, false), W::Structured(4)),
        s("automorphism-f3-c2-n2", request(Automorphism, "Fp p=3", &["C2"], Some(2), false), W::Automorphism),
        s(
            "igp-f5-c2-single",
            EncodeRequest { splice: false, ..request(Igp, "Fp p=5", &["C2"], None, true) },
            rw(&[2, 0], &[&[0, 4]]),
        ),
        s("igp-q-c2-single", request(Igp, "Q", &["C2"], None, true), c2()),
    ]
}

pub fn scenario(name: &str) -> Option<Scenario> {
    scenarios().into_iter().find(|s| s.name == name)
}

/// Outcome of checking a scenario against its expectation.
#[derive(Clone, Debug, PartialEq)]
pub enum ScenarioCheck {
    /// A complete witness; the caller verifies it.
    Witness(Witness),
    /// Unsolvability was confirmed.
    ProvenUnsolvable(String),
    /// The expectation could not be met.
    Failed(String),
}

/// Produces the scenario's witness, or confirms it has none.
pub fn check_scenario(sc: &Scenario, sys: &DiophSystem) -> Result<ScenarioCheck> {
    let caps = StructuredCaps::default();
    let partial = match &sc.witness {
        WitnessSource::Fixed(w) => Some(w.clone()),
        WitnessSource::Structured(d) => {
            let r = structured_solve_system(&encode_disequation(sys), *d, &caps, Exec::Auto)?;
            r.witnesses.into_iter().next()
        }
        WitnessSource::Automorphism => {
            let req = &sc.request;
            let n = req.degree.ok_or_else(|| Error::Structural("automorphism scenario needs a degree".into()))?;
            let enc = AutomorphismEncoding::new(&req.ring, &req.groups[0], n, &AutomorphismCaps::default())?;
            structured_solve_automorphism(&enc, &caps, Exec::Auto)?.witnesses.into_iter().next()
        }
        WitnessSource::Unsolvable(d) => {
            if sys.equations.iter().any(|e| e.as_constant().is_some_and(|c| !c.is_zero())) {
                return Ok(ScenarioCheck::ProvenUnsolvable("nonzero constant equation".into()));
            }
            let Some(d) = d else {
                return Ok(ScenarioCheck::Failed("no constant contradiction".into()));
            };
            let r = structured_solve_system(&encode_disequation(sys), *d, &caps, Exec::Auto)?;
            return Ok(if r.status == SolveStatus::UnsolvableProven {
                ScenarioCheck::ProvenUnsolvable(format!("structured search over {} candidates", r.search_space))
            } else {
                ScenarioCheck::Failed(format!("expected unsolvable, solver says {}", r.status))
            });
        }
    };
    let Some(partial) = partial else {
        return Ok(ScenarioCheck::Failed("solver found no witness".into()));
    };
    Ok(match complete_witness(sys, &partial, caps.max_selector_combinations)? {
        Some(w) => ScenarioCheck::Witness(w),
        None => ScenarioCheck::Failed("no completion of the witness verifies".into()),
    })
}
