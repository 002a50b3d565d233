use std::collections::HashMap;
use std::fmt;

use crate::algebra::{Domain, MultiPoly, RingDescriptor, Var};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// `a[i][j]`: alpha-coordinate `j` of the coefficient of `x^i`.
    PolyCoefficient,
    /// `b[i][j][r]`: alpha-coordinate `r` of `s_{i,j}`.
    ConjugateCoordinate,
    /// `t`: the common denominator of the conjugate coordinates.
    Denominator,
    /// `w[k]`: inverse witness introduced for a disequation.
    InverseWitness,
    /// `aux[p][k]`: auxiliary variable of a spliced definition.
    Auxiliary,
    /// `u[k]`: 0/1 selector bit of a lowered disjunction.
    Selector,
    /// Parameter of a definition system, replaced on splicing.
    Parameter,
    /// `alpha` or `beta`; only present before elimination.
    Generator,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::PolyCoefficient => "poly-coefficient",
            Role::ConjugateCoordinate => "conjugate-coordinate",
            Role::Denominator => "denominator",
            Role::InverseWitness => "inverse-witness",
            Role::Auxiliary => "auxiliary",
            Role::Selector => "selector",
            Role::Parameter => "parameter",
            Role::Generator => "generator",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "poly-coefficient" => Role::PolyCoefficient,
            "conjugate-coordinate" => Role::ConjugateCoordinate,
            "denominator" => Role::Denominator,
            "inverse-witness" => Role::InverseWitness,
            "auxiliary" => Role::Auxiliary,
            "selector" => Role::Selector,
            "parameter" => Role::Parameter,
            "generator" => Role::Generator,
            _ => return Err(Error::Parse(format!("unknown variable role `{s}`"))),
        })
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub role: Role,
}

/// Ordered variable list. The order is the monomial order's variable order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Registry {
    vars: Vec<Variable>,
    index: HashMap<String, Var>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: impl Into<String>, role: Role) -> Result<Var> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || "+-*^,;|=".contains(c)) {
            return Err(Error::Structural(format!("invalid variable name `{name}`")));
        }
        if self.index.contains_key(&name) {
            return Err(Error::Structural(format!("duplicate variable `{name}`")));
        }
        let v = Var(self.vars.len() as u32);
        self.index.insert(name.clone(), v);
        self.vars.push(Variable { name, role });
        Ok(v)
    }

    /// Adds a fresh variable `<stem>[k]` with the first unused `k`.
    pub fn fresh(&mut self, stem: &str, role: Role) -> Var {
        let mut k = self.vars.iter().filter(|v| v.role == role).count();
        loop {
            let name = format!("{stem}[{k}]");
            if !self.index.contains_key(&name) {
                return self.add(name, role).expect("fresh name is unique");
            }
            k += 1;
        }
    }

    pub fn get(&self, name: &str) -> Option<Var> {
        self.index.get(name).copied()
    }

    pub fn name(&self, v: Var) -> &str {
        &self.vars[v.index()].name
    }

    pub fn role(&self, v: Var) -> Role {
        self.vars[v.index()].role
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &Variable)> {
        self.vars.iter().enumerate().map(|(i, v)| (Var(i as u32), v))
    }

    /// Drops `victims` and returns the old-index to new-index map.
    pub(crate) fn remove(&mut self, victims: &[Var]) -> Vec<Option<Var>> {
        let mut map = Vec::with_capacity(self.vars.len());
        let mut kept = Vec::new();
        for (i, v) in self.vars.drain(..).enumerate() {
            if victims.contains(&Var(i as u32)) {
                map.push(None);
            } else {
                map.push(Some(Var(kept.len() as u32)));
                kept.push(v);
            }
        }
        self.vars = kept;
        self.index = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name.clone(), Var(i as u32)))
            .collect();
        map
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PredicateConstraint {
    /// The coefficient tuple, `d*n` variables ordered by power of `x` then
    /// power of `alpha`, describes an irreducible monic degree-`d`
    /// polynomial over `L`.
    Irreducible { degree: usize, args: Vec<Var> },
    /// The expression is nonzero.
    Nonzero { expr: MultiPoly },
}

impl PredicateConstraint {
    /// Arguments as polynomials, in order.
    pub fn arguments(&self, domain: Domain) -> Vec<MultiPoly> {
        match self {
            PredicateConstraint::Irreducible { args, .. } => {
                args.iter().map(|&v| MultiPoly::var(domain, v)).collect()
            }
            PredicateConstraint::Nonzero { expr } => vec![expr.clone()],
        }
    }

    fn remap(&self, map: &[Option<Var>]) -> Self {
        match self {
            PredicateConstraint::Irreducible { degree, args } => PredicateConstraint::Irreducible {
                degree: *degree,
                args: args.iter().map(|v| map[v.index()].expect("predicate argument kept")).collect(),
            },
            PredicateConstraint::Nonzero { expr } => PredicateConstraint::Nonzero { expr: expr.remap(map) },
        }
    }
}

/// `lhs != rhs` as tuples: satisfied when some coordinate differs.
#[derive(Clone, Debug, PartialEq)]
pub struct Disequation {
    pub lhs: Vec<MultiPoly>,
    pub rhs: Vec<MultiPoly>,
}

impl Disequation {
    pub fn single(lhs: MultiPoly, rhs: MultiPoly) -> Self {
        Disequation { lhs: vec![lhs], rhs: vec![rhs] }
    }

    pub fn differences(&self) -> Vec<MultiPoly> {
        self.lhs.iter().zip(&self.rhs).map(|(a, b)| a - b).collect()
    }
}

/// Records which inverse witnesses certify which differences, so a solver
/// that already knows the core variables can fill in the witnesses.
#[derive(Clone, Debug, PartialEq)]
pub struct InverseLink {
    pub witnesses: Vec<Var>,
    pub diffs: Vec<MultiPoly>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiophSystem {
    pub registry: Registry,
    /// Each asserted `= 0`.
    pub equations: Vec<MultiPoly>,
    pub disequations: Vec<Disequation>,
    pub predicates: Vec<PredicateConstraint>,
    pub ring: RingDescriptor,
    pub provenance: Vec<String>,
    pub(crate) links: Vec<InverseLink>,
    /// One-hot selector groups introduced by disjunction lowering.
    pub(crate) selectors: Vec<Vec<Var>>,
}

impl DiophSystem {
    pub fn new(ring: RingDescriptor) -> Self {
        DiophSystem {
            registry: Registry::new(),
            equations: Vec::new(),
            disequations: Vec::new(),
            predicates: Vec::new(),
            ring,
            provenance: Vec::new(),
            links: Vec::new(),
            selectors: Vec::new(),
        }
    }

    /// The canonical unsolvable system `{1 = 0}`.
    pub fn unsolvable(ring: RingDescriptor, reason: &str) -> Self {
        let mut s = DiophSystem::new(ring);
        s.equations.push(MultiPoly::one(s.domain()));
        s.provenance.push(format!("unsolvable({reason})"));
        s
    }

    pub fn domain(&self) -> Domain {
        self.ring.domain()
    }

    pub fn var(&self, v: Var) -> MultiPoly {
        MultiPoly::var(self.domain(), v)
    }

    pub fn constant(&self, c: i64) -> MultiPoly {
        MultiPoly::from_i64(self.domain(), c)
    }

    pub fn inverse_links(&self) -> &[InverseLink] {
        &self.links
    }

    pub fn selector_groups(&self) -> &[Vec<Var>] {
        &self.selectors
    }

    /// Appends an equation unless it is identically zero.
    pub fn push_equation(&mut self, e: MultiPoly) {
        if !e.is_zero() {
            self.equations.push(e);
        }
    }

    /// Every polynomial stored in the system.
    pub fn polynomials(&self) -> impl Iterator<Item = &MultiPoly> {
        self.equations
            .iter()
            .chain(self.disequations.iter().flat_map(|d| d.lhs.iter().chain(&d.rhs)))
            .chain(self.predicates.iter().filter_map(|p| match p {
                PredicateConstraint::Nonzero { expr } => Some(expr),
                _ => None,
            }))
    }

    /// Checks that every variable occurring anywhere is registered.
    pub fn check_registry(&self) -> Result<()> {
        let n = self.registry.len();
        for p in self.polynomials() {
            if let Some(v) = p.vars().into_iter().find(|v| v.index() >= n) {
                return Err(Error::Structural(format!("variable #{} is not registered", v.0)));
            }
        }
        for p in &self.predicates {
            if let PredicateConstraint::Irreducible { args, .. } = p {
                if args.iter().any(|v| v.index() >= n) {
                    return Err(Error::Structural("predicate argument not registered".into()));
                }
            }
        }
        Ok(())
    }

    /// Removes variables that must no longer occur, renumbering the rest.
    pub(crate) fn drop_variables(&mut self, victims: &[Var]) -> Result<()> {
        for p in self.polynomials() {
            if let Some(v) = p.vars().into_iter().find(|v| victims.contains(v)) {
                return Err(Error::Contract(format!(
                    "variable `{}` still occurs",
                    self.registry.name(v)
                )));
            }
        }
        let map = self.registry.remove(victims);
        self.equations = self.equations.iter().map(|e| e.remap(&map)).collect();
        for d in &mut self.disequations {
            d.lhs = d.lhs.iter().map(|e| e.remap(&map)).collect();
            d.rhs = d.rhs.iter().map(|e| e.remap(&map)).collect();
        }
        self.predicates = self.predicates.iter().map(|p| p.remap(&map)).collect();
        for l in &mut self.links {
            l.witnesses = l.witnesses.iter().map(|w| map[w.index()].expect("witness kept")).collect();
            l.diffs = l.diffs.iter().map(|e| e.remap(&map)).collect();
        }
        for g in &mut self.selectors {
            *g = g.iter().map(|u| map[u.index()].expect("selector kept")).collect();
        }
        Ok(())
    }

    pub fn variables_with_role(&self, role: Role) -> Vec<Var> {
        self.registry.iter().filter(|(_, v)| v.role == role).map(|(i, _)| i).collect()
    }

    /// Total stored terms; the size measure used by the caps.
    pub fn term_count(&self) -> usize {
        self.polynomials().map(MultiPoly::num_terms).sum()
    }
}
