//! Text formats for emitted systems and witnesses.
//!
//! ```text
//! diophsys v1
//! ring Fp p=5
//! var a[0][0] poly-coefficient
//! eq 1*a[0][0]^2 + 3
//! neq 1*t ; 0 | 1*b[2][1][0] ; 1*b[2][0][0]
//! pred irreducible d=2 vars=a[0][0],a[1][0]
//! pred nonzero poly=1*x^2 + 1*y^2
//! provenance encode-galois-set(d=2) eliminate(beta)
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::algebra::scalar::parse_scalar;
use crate::algebra::{Domain, Monomial, MultiPoly, RingDescriptor, Scalar, Var};
use crate::error::{Error, Result};

use super::system::{Disequation, DiophSystem, PredicateConstraint, Registry, Role};

pub const SYSTEM_HEADER: &str = "diophsys v1";
pub const WITNESS_HEADER: &str = "witness v1";

pub fn system_to_text(sys: &DiophSystem) -> String {
    let name = |v: Var| sys.registry.name(v);
    let mut s = String::new();
    let _ = writeln!(s, "{SYSTEM_HEADER}");
    let _ = writeln!(s, "ring {}", sys.ring);
    for (_, v) in sys.registry.iter() {
        let _ = writeln!(s, "var {} {}", v.name, v.role);
    }
    for e in &sys.equations {
        let _ = writeln!(s, "eq {}", e.to_text(name));
    }
    for d in &sys.disequations {
        let side = |ps: &[MultiPoly]| ps.iter().map(|p| p.to_text(name)).collect::<Vec<_>>().join(" ; ");
        let _ = writeln!(s, "neq {} | {}", side(&d.lhs), side(&d.rhs));
    }
    for p in &sys.predicates {
        match p {
            PredicateConstraint::Irreducible { degree, args } => {
                let list: Vec<&str> = args.iter().map(|&v| name(v)).collect();
                let _ = writeln!(s, "pred irreducible d={degree} vars={}", list.join(","));
            }
            PredicateConstraint::Nonzero { expr } => {
                let _ = writeln!(s, "pred nonzero poly={}", expr.to_text(name));
            }
        }
    }
    let _ = writeln!(s, "provenance {}", sys.provenance.join(" "));
    s
}

/// Parses canonical polynomial text against a registry.
pub fn parse_poly(text: &str, registry: &Registry, domain: Domain) -> Result<MultiPoly> {
    let text = text.trim();
    if text == "0" {
        return Ok(MultiPoly::zero(domain));
    }
    let mut out = MultiPoly::zero(domain);
    let mut sign = 1i32;
    let mut expect_term = true;
    for tok in text.split_whitespace() {
        if !expect_term {
            sign = match tok {
                "+" => 1,
                "-" => -1,
                _ => return Err(Error::Parse(format!("expected `+` or `-`, found `{tok}`"))),
            };
            expect_term = true;
            continue;
        }
        let (neg, body) = match tok.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, tok),
        };
        let mut parts = body.split('*');
        let coeff_text = parts.next().unwrap_or_default();
        let mut c = parse_scalar(coeff_text)?;
        if neg != (sign < 0) {
            c = -c;
        }
        let mut pairs = Vec::new();
        for f in parts {
            let (vname, e) = match f.split_once('^') {
                Some((v, e)) => (
                    v,
                    e.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{f}`")))?,
                ),
                None => (f, 1),
            };
            let v = registry
                .get(vname)
                .ok_or_else(|| Error::Structural(format!("unknown variable `{vname}`")))?;
            pairs.push((v, e));
        }
        out.add_term(Monomial::from_pairs(pairs), c);
        expect_term = false;
        sign = 1;
    }
    if expect_term {
        return Err(Error::Parse(format!("dangling operator in `{text}`")));
    }
    Ok(out)
}

pub fn system_from_text(text: &str) -> Result<DiophSystem> {
    let mut lines = text.lines().map(str::trim_end).filter(|l| !l.trim().is_empty());
    if lines.next() != Some(SYSTEM_HEADER) {
        return Err(Error::Parse(format!("missing `{SYSTEM_HEADER}` header")));
    }
    let ring_line = lines.next().ok_or_else(|| Error::Parse("missing ring line".into()))?;
    let spec = ring_line
        .strip_prefix("ring ")
        .ok_or_else(|| Error::Parse("missing ring line".into()))?;
    let mut sys = DiophSystem::new(RingDescriptor::parse(spec)?);
    let dom = sys.domain();
    let mut saw_provenance = false;
    for line in lines {
        if saw_provenance {
            return Err(Error::Parse("content after provenance line".into()));
        }
        let (kw, rest) = line.split_once(' ').unwrap_or((line, ""));
        match kw {
            "var" => {
                let (name, role) = rest
                    .split_once(' ')
                    .ok_or_else(|| Error::Parse(format!("bad var line `{line}`")))?;
                sys.registry.add(name, Role::parse(role)?)?;
            }
            "eq" => {
                let p = parse_poly(rest, &sys.registry, dom)?;
                sys.equations.push(p);
            }
            "neq" => {
                let (l, r) = rest
                    .split_once(" | ")
                    .ok_or_else(|| Error::Parse(format!("bad neq line `{line}`")))?;
                let side = |s: &str| -> Result<Vec<MultiPoly>> {
                    s.split(" ; ").map(|p| parse_poly(p, &sys.registry, dom)).collect()
                };
                let d = Disequation { lhs: side(l)?, rhs: side(r)? };
                if d.lhs.len() != d.rhs.len() {
                    return Err(Error::Parse("neq sides differ in length".into()));
                }
                sys.disequations.push(d);
            }
            "pred" => sys.predicates.push(parse_predicate(rest, &sys.registry, dom)?),
            "provenance" => {
                sys.provenance = rest.split_whitespace().map(String::from).collect();
                saw_provenance = true;
            }
            _ => return Err(Error::Parse(format!("unknown line `{line}`"))),
        }
    }
    if !saw_provenance {
        return Err(Error::Parse("missing provenance line".into()));
    }
    Ok(sys)
}

fn parse_predicate(rest: &str, registry: &Registry, dom: Domain) -> Result<PredicateConstraint> {
    if let Some(body) = rest.strip_prefix("irreducible ") {
        let (d, vars) = body
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("bad predicate `{rest}`")))?;
        let degree = d
            .strip_prefix("d=")
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad degree in `{rest}`")))?;
        let list = vars
            .strip_prefix("vars=")
            .ok_or_else(|| Error::Parse(format!("bad vars in `{rest}`")))?;
        let args = list
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|n| registry.get(n).ok_or_else(|| Error::Structural(format!("unknown variable `{n}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(PredicateConstraint::Irreducible { degree, args })
    } else if let Some(poly) = rest.strip_prefix("nonzero poly=") {
        Ok(PredicateConstraint::Nonzero { expr: parse_poly(poly, registry, dom)? })
    } else {
        Err(Error::Parse(format!("unknown predicate `{rest}`")))
    }
}

/// Assignment of exact values to variable names.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Witness {
    pub assignment: BTreeMap<String, Scalar>,
}

impl Witness {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: impl Into<String>, value: Scalar) {
        self.assignment.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<&Scalar> {
        self.assignment.get(name)
    }

    /// Orders lines by the registry when one is given, else by name.
    pub fn to_text(&self, registry: Option<&Registry>) -> String {
        let mut s = String::from(WITNESS_HEADER);
        s.push('\n');
        let line = |s: &mut String, n: &str, v: &Scalar| {
            let _ = writeln!(s, "{n} = {}/{}", v.numer(), v.denom());
        };
        match registry {
            Some(r) => {
                for (_, v) in r.iter() {
                    if let Some(x) = self.assignment.get(&v.name) {
                        line(&mut s, &v.name, x);
                    }
                }
                for (n, x) in &self.assignment {
                    if r.get(n).is_none() {
                        line(&mut s, n, x);
                    }
                }
            }
            None => {
                for (n, x) in &self.assignment {
                    line(&mut s, n, x);
                }
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        if lines.next() != Some(WITNESS_HEADER) {
            return Err(Error::Parse(format!("missing `{WITNESS_HEADER}` header")));
        }
        let mut w = Witness::new();
        for l in lines {
            let (n, v) = l
                .split_once(" = ")
                .ok_or_else(|| Error::Parse(format!("bad witness line `{l}`")))?;
            if w.assignment.insert(n.trim().to_string(), parse_scalar(v.trim())?).is_some() {
                return Err(Error::Parse(format!("variable `{n}` assigned twice")));
            }
        }
        Ok(w)
    }
}
