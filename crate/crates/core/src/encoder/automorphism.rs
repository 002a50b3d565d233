//! Degree-`n` extensions `M/L` with `Aut(M/L)` isomorphic to a given `H`.
//!
//! For each candidate degree `l` of a Galois closure `N`, a Galois-set
//! block of degree `l` ranges over all groups of order `l` at once. Inside
//! `N` a subgroup `S` of order `l/n` is selected whose conjugates are
//! covered by `n/m` representatives, and an irreducible `h` of degree `n`
//! whose roots `rho_k = E_k / q` lie in `N` is required to have exactly
//! `m` roots fixed by `S`, on which `H`'s table is imposed.

use crate::algebra::{MultiPoly, QuotientElement, RingDescriptor};
use crate::error::{Error, Result};
use crate::group::subgroups::combinations;
use crate::group::GroupTable;

use super::galois::{CoreVars, GaloisCore, Tower, BETA};
use super::logic::{lower_formula, Formula, LowerCaps};
use super::passes::eliminate_generator;
use super::system::{Disequation, DiophSystem, PredicateConstraint, Role};

#[derive(Clone, Copy, Debug)]
pub struct AutomorphismCaps {
    pub max_degree: usize,
    /// Largest Galois-set degree built with symbolic coefficients.
    pub max_symbolic_degree: usize,
    pub lower: LowerCaps,
}

impl Default for AutomorphismCaps {
    fn default() -> Self {
        AutomorphismCaps {
            max_degree: 4,
            max_symbolic_degree: 4,
            lower: LowerCaps::default(),
        }
    }
}

/// The encoding as a plan: branch degrees and clause builders. Lowering
/// to a single system is only feasible for small branch degrees; oracles
/// evaluate the clauses directly on concrete values.
#[derive(Clone, Debug)]
pub struct AutomorphismEncoding {
    ring: RingDescriptor,
    h: GroupTable,
    n: usize,
    degrees: Vec<usize>,
}

/// Values for the root part of a branch: `h`'s low coefficients (as
/// elements of `L`), the numerators `E_k` and their common denominator.
#[derive(Clone, Debug)]
pub(crate) struct RootValues {
    pub h_low: Vec<MultiPoly>,
    pub roots: Vec<QuotientElement>,
    pub q: MultiPoly,
}

impl AutomorphismEncoding {
    pub fn new(ring: &RingDescriptor, h: &GroupTable, n: usize, caps: &AutomorphismCaps) -> Result<Self> {
        let m = h.order();
        if n == 0 || !n.is_multiple_of(m) {
            return Err(Error::Contract(format!("|H| = {m} must divide n = {n}")));
        }
        if n > caps.max_degree {
            return Err(Error::Cap {
                what: "extension degree".into(),
                required: n as u128,
                cap: caps.max_degree as u128,
            });
        }
        let fact: usize = (1..=n).product();
        let degrees = (1..=fact / n).map(|k| k * n).collect();
        Ok(AutomorphismEncoding { ring: ring.clone(), h: h.clone(), n, degrees })
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn h(&self) -> &GroupTable {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Candidate degrees `l` of the Galois closure: multiples of `n` up to `n!`.
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Index sets (0-based, containing the identity 0) of size `l/n`.
    pub fn subgroup_candidates(&self, l: usize) -> Vec<Vec<usize>> {
        let rest: Vec<usize> = (1..l).collect();
        combinations(&rest, l / self.n - 1)
            .into_iter()
            .map(|c| std::iter::once(0).chain(c).collect())
            .collect()
    }

    fn representative_sets(&self, l: usize) -> Vec<Vec<usize>> {
        let k = self.n / self.h.order();
        let rest: Vec<usize> = (1..l).collect();
        combinations(&rest, k - 1)
            .into_iter()
            .map(|c| std::iter::once(0).chain(c).collect())
            .collect()
    }

    /// Root conditions and pairwise distinctness of the Galois-set block.
    pub(crate) fn galois_clause(&self, core: &GaloisCore) -> Formula {
        let mut parts = Vec::new();
        for i in 1..core.d {
            parts.push(Formula::eqs(core.flatten(&core.root_condition(i))));
        }
        for i in 0..core.d {
            for k in i + 1..core.d {
                parts.push(Formula::neq(Disequation {
                    lhs: core.flatten(core.conjugate(i)),
                    rhs: core.flatten(core.conjugate(k)),
                }));
            }
        }
        Formula::and(parts)
    }

    /// `S = U` is a subgroup whose conjugates are covered by `n/m` of the
    /// sets `S_tau`: for every `pi` there is a representative `tau` and
    /// for each `a` in `S` some `b` in `S` with `tau pi a = b tau pi`.
    pub(crate) fn subgroup_clause(&self, core: &mut GaloisCore, u: &[usize]) -> Formula {
        let l = core.d;
        let nonid: Vec<usize> = u.iter().copied().filter(|&x| x != 0).collect();
        let eq = |core: &mut GaloisCore, lw: &[usize], rw: &[usize]| match core.word_eq(lw, rw) {
            None => Formula::truth(),
            Some(q) => Formula::eqs(core.flatten(&q)),
        };
        let mut parts = Vec::new();
        for &j in &nonid {
            parts.push(Formula::or(nonid.iter().map(|&r| eq(core, &[j, r], &[])).collect::<Vec<_>>()));
        }
        for &a in &nonid {
            for &b in &nonid {
                parts.push(Formula::or(u.iter().map(|&c| eq(core, &[a, b], &[c])).collect::<Vec<_>>()));
            }
        }
        let mut cover = Vec::new();
        for reps in self.representative_sets(l) {
            let mut all_pi = Vec::new();
            for pi in 0..l {
                let mut some_tau = Vec::new();
                for &tau in &reps {
                    let mut each_a = Vec::new();
                    for &a in u {
                        let opts: Vec<Formula> =
                            u.iter().map(|&b| eq(core, &[tau, pi, a], &[b, tau, pi])).collect();
                        each_a.push(Formula::or(opts));
                    }
                    some_tau.push(Formula::and(each_a));
                }
                all_pi.push(Formula::or(some_tau));
            }
            cover.push(Formula::and(all_pi));
        }
        parts.push(Formula::or(cover));
        Formula::and(parts)
    }

    /// `sigma_c(rho_i) = rho_k`, cleared by `q t^(l-1)`.
    fn root_map(&self, core: &mut GaloisCore, rv: &RootValues, c: usize, i: usize, k: usize) -> Formula {
        let r = root_map_residue(core, rv, c, i, k);
        Formula::eqs(core.flatten(&r))
    }

    /// `h` vanishes at every `rho_k`, the roots are distinct, and `q != 0`
    /// when `n = 1`.
    pub(crate) fn root_base_clause(&self, core: &GaloisCore, rv: &RootValues) -> Formula {
        let mut parts = Vec::new();
        for e in &rv.roots {
            parts.push(Formula::eqs(core.flatten(&core.monic_at(&rv.h_low, e, &rv.q))));
        }
        for i in 0..rv.roots.len() {
            for k in i + 1..rv.roots.len() {
                parts.push(Formula::neq(Disequation {
                    lhs: core.flatten(&rv.roots[i]),
                    rhs: core.flatten(&rv.roots[k]),
                }));
            }
        }
        if self.n == 1 {
            let dom = core.dom();
            parts.push(Formula::neq(Disequation {
                lhs: core.tower.split(&rv.q),
                rhs: vec![MultiPoly::zero(dom); core.tower.n],
            }));
        }
        Formula::and(parts)
    }

    /// The first `m` roots are fixed by every element of `U`, the others
    /// are moved by some element, and `H`'s table holds on the fixed roots
    /// through elements `c_i` with `sigma_{c_i}(rho_0) = rho_i`.
    pub(crate) fn root_clause(&self, core: &mut GaloisCore, rv: &RootValues, u: &[usize]) -> Formula {
        let m = self.h.order();
        let l = core.d;
        let mut parts = Vec::new();
        for &s in u {
            for k in 0..m {
                parts.push(self.root_map(core, rv, s, k, k));
            }
        }
        for k in m..self.n {
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for &s in u {
                let (img, e) = core.eval_at(rv.roots[k].coords(), &word_of(s), u32::from(s != 0));
                lhs.extend(core.flatten(&img));
                rhs.extend(core.flatten(&rv.roots[k].scale(&core.t.pow(e))));
            }
            parts.push(Formula::neq(Disequation { lhs, rhs }));
        }
        let mut tables = Vec::new();
        let pick: Vec<usize> = (0..l).collect();
        for c in cartesian(&pick, m - 1) {
            let image = |i: usize| if i == 0 { 0 } else { c[i - 1] };
            let mut conds = Vec::new();
            for i in 1..m {
                conds.push(self.root_map(core, rv, image(i), 0, i));
                for j in 1..m {
                    conds.push(self.root_map(core, rv, image(i), j, self.h.mul(i, j)));
                }
            }
            let f = Formula::and(conds);
            let done = f.is_true();
            tables.push(f);
            if done {
                break;
            }
        }
        parts.push(Formula::or(tables));
        Formula::and(parts)
    }

    /// Lowers every branch to one system. Branch degrees above
    /// `max_symbolic_degree` are refused.
    pub fn lower(&self, caps: &AutomorphismCaps) -> Result<DiophSystem> {
        let top = *self.degrees.last().expect("at least one degree");
        if top > caps.max_symbolic_degree {
            return Err(Error::Cap {
                what: "symbolic Galois-set degree".into(),
                required: top as u128,
                cap: caps.max_symbolic_degree as u128,
            });
        }
        let ring = &self.ring;
        let nalpha = ring.extension_degree();
        let mut sys = DiophSystem::new(ring.clone());
        sys.registry.add("beta", Role::Generator)?;
        if nalpha > 1 {
            sys.registry.add("alpha", Role::Generator)?;
        }
        let dom = sys.domain();
        let mut branches = Vec::new();
        for &l in &self.degrees {
            let prefix = format!("L{l}:");
            let vars = CoreVars::register(&mut sys, &prefix, l, nalpha)?;
            let mut core = GaloisCore::new(Tower::new(ring)?, &vars.values(dom))?;
            let mut hv = Vec::new();
            for i in 0..self.n {
                for j in 0..nalpha {
                    hv.push(sys.registry.add(format!("{prefix}h[{i}][{j}]"), Role::PolyCoefficient)?);
                }
            }
            let mut roots = Vec::new();
            for k in 0..self.n {
                let mut coords = Vec::new();
                for j in 0..l {
                    let mut c = Vec::new();
                    for r in 0..nalpha {
                        let v = sys.registry.add(format!("{prefix}e[{k}][{j}][{r}]"), Role::ConjugateCoordinate)?;
                        c.push(MultiPoly::var(dom, v));
                    }
                    coords.push(core.tower.element(&c));
                }
                roots.push(QuotientElement::from_coords(coords, &core.fmod));
            }
            let q = MultiPoly::var(dom, sys.registry.add(format!("{prefix}q"), Role::Denominator)?);
            let h_low = hv
                .chunks(nalpha)
                .map(|c| core.tower.element(&c.iter().map(|&v| MultiPoly::var(dom, v)).collect::<Vec<_>>()))
                .collect();
            let rv = RootValues { h_low, roots, q };
            sys.predicates.push(PredicateConstraint::Irreducible {
                degree: l,
                args: vars.coefficient_args(),
            });
            sys.predicates.push(PredicateConstraint::Irreducible { degree: self.n, args: hv });
            branches.push(self.branch_formula(&mut core, &rv, l));
        }
        let formula = Formula::or(branches);
        let eqs = lower_formula(&mut sys, &formula, &caps.lower)?;
        sys.equations.extend(eqs);
        sys.provenance.push(format!("encode-automorphism({},n={})", self.h.name(), self.n));
        sys.provenance.push("lower-disjunction".into());
        let beta = MultiPoly::var(dom, BETA);
        let mut out = eliminate_generator(&sys, BETA, &beta)?;
        if nalpha > 1 {
            let alpha = out.registry.get("alpha").expect("alpha registered");
            let mu = out.ring.alpha_minpoly(alpha);
            out = eliminate_generator(&out, alpha, &mu)?;
        }
        Ok(out)
    }

    pub(crate) fn branch_formula(&self, core: &mut GaloisCore, rv: &RootValues, l: usize) -> Formula {
        let mut per_u = Vec::new();
        for u in self.subgroup_candidates(l) {
            let sub = self.subgroup_clause(core, &u);
            if sub.is_false() {
                continue;
            }
            per_u.push(Formula::and([sub, self.root_clause(core, rv, &u)]));
        }
        Formula::and([self.galois_clause(core), self.root_base_clause(core, rv), Formula::or(per_u)])
    }
}

fn word_of(s: usize) -> Vec<usize> {
    if s == 0 {
        Vec::new()
    } else {
        vec![s]
    }
}

/// Residue of `sum_j e_{i,j} H_c^j t^(l-1-j) - t^(l-1) E_k`.
pub(crate) fn root_map_residue(core: &mut GaloisCore, rv: &RootValues, c: usize, i: usize, k: usize) -> QuotientElement {
    let coeffs = rv.roots[i].coords().to_vec();
    let (img, e) = core.eval_at(&coeffs, &word_of(c), u32::from(c != 0));
    img.sub(&rv.roots[k].scale(&core.t.pow(e)))
}

fn cartesian(items: &[usize], len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                items.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Lowers the plan to one system; see [`AutomorphismEncoding::lower`].
pub fn encode_automorphism_problem(
    ring: &RingDescriptor,
    h: &GroupTable,
    n: usize,
    caps: &AutomorphismCaps,
) -> Result<DiophSystem> {
    AutomorphismEncoding::new(ring, h, n, caps)?.lower(caps)
}
