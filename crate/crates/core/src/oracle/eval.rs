//! Polynomials compiled to machine-word evaluation over `F_p`.

use crate::algebra::{Domain, MultiPoly};
use crate::encoder::{DiophSystem, PredicateConstraint};
use crate::error::{Error, Result};

use super::fp;

#[derive(Clone, Debug)]
pub struct CompiledPoly {
    p: u64,
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    pub fn new(poly: &MultiPoly, p: u64) -> Self {
        let dom = Domain::Prime(p);
        let terms = poly
            .terms()
            .map(|(m, c)| {
                let c = dom.residue(&dom.normalize(c.clone()));
                (c, m.pairs().map(|(v, e)| (v.index(), e)).collect())
            })
            .collect();
        CompiledPoly { p, terms }
    }

    pub fn eval(&self, vals: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for (c, mono) in &self.terms {
            let mut t = *c;
            for &(v, e) in mono {
                let x = vals[v];
                let mut y = x;
                for _ in 1..e {
                    y = fp::mul_mod(y, x, p);
                }
                t = fp::mul_mod(t, y, p);
                if t == 0 {
                    break;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }
}

#[derive(Clone, Debug)]
enum CompiledPredicate {
    Irreducible(Vec<usize>),
    Nonzero(CompiledPoly),
}

/// Every constraint of a prime-field system, compiled.
#[derive(Clone, Debug)]
pub struct CompiledSystem {
    pub p: u64,
    pub equations: Vec<CompiledPoly>,
    disequations: Vec<Vec<CompiledPoly>>,
    predicates: Vec<CompiledPredicate>,
}

impl CompiledSystem {
    pub fn new(sys: &DiophSystem) -> Result<Self> {
        let Domain::Prime(p) = sys.domain() else {
            return Err(Error::Contract("compiled evaluation needs a prime field".into()));
        };
        let c = |q: &MultiPoly| CompiledPoly::new(q, p);
        Ok(CompiledSystem {
            p,
            equations: sys.equations.iter().map(c).collect(),
            disequations: sys.disequations.iter().map(|d| d.differences().iter().map(c).collect()).collect(),
            predicates: sys
                .predicates
                .iter()
                .map(|pr| match pr {
                    PredicateConstraint::Irreducible { args, .. } => {
                        CompiledPredicate::Irreducible(args.iter().map(|v| v.index()).collect())
                    }
                    PredicateConstraint::Nonzero { expr } => CompiledPredicate::Nonzero(c(expr)),
                })
                .collect(),
        })
    }

    pub fn equations_hold(&self, vals: &[u64]) -> bool {
        self.equations.iter().all(|e| e.eval(vals) == 0)
    }

    pub fn disequations_hold(&self, vals: &[u64]) -> bool {
        self.disequations.iter().all(|d| d.iter().any(|q| q.eval(vals) != 0))
    }

    pub fn predicates_hold(&self, vals: &[u64]) -> bool {
        self.predicates.iter().all(|pr| match pr {
            CompiledPredicate::Irreducible(args) => {
                let mut f: Vec<u64> = args.iter().map(|&i| vals[i]).collect();
                f.push(1);
                fp::is_irreducible(&f, self.p)
            }
            CompiledPredicate::Nonzero(q) => q.eval(vals) != 0,
        })
    }

    pub fn holds(&self, vals: &[u64]) -> bool {
        self.equations_hold(vals) && self.disequations_hold(vals) && self.predicates_hold(vals)
    }
}
