//! Search that uses the Frobenius structure of finite fields instead of
//! blind enumeration.
//!
//! For a realization-type system of degree `d`, every solution has an
//! irreducible `f` and numerators `H_i = t * h_i(beta)` whose quotients are
//! the roots of `f`, i.e. Frobenius iterates of `beta`. Scaling `t` to 1
//! and the inverse witnesses by `t` maps solutions to solutions, so it is
//! enough to try `t = 1`, every irreducible `f` and every labeling of the
//! non-trivial iterates. Inverse witnesses are completed from their
//! differences and one-hot selectors are tried exhaustively.

use num_traits::One;

use crate::algebra::{Domain, MultiPoly, QuotientElement, RingDescriptor, Scalar};
use crate::encoder::automorphism::RootValues;
use crate::encoder::galois::{CoreValues, GaloisCore, Tower};
use crate::encoder::{
    encode_disequation, encode_group_realization, encode_subgroup_problem, AutomorphismEncoding, DiophSystem,
    SubgroupCaps, Witness,
};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::par::{self, Exec};

use super::brute::witness_from_values;
use super::eval::{CompiledPoly, CompiledSystem};
use super::{fp, permutations, SolveMethod, SolveReport};

#[derive(Clone, Copy, Debug)]
pub struct StructuredCaps {
    /// Bound on `p^d`, the number of monic polynomials enumerated.
    pub max_polynomials: u128,
    pub max_selector_combinations: u128,
}

impl Default for StructuredCaps {
    fn default() -> Self {
        StructuredCaps { max_polynomials: 1_000_000, max_selector_combinations: 100_000 }
    }
}

fn prime_of(dom: Domain) -> Result<u64> {
    match dom {
        Domain::Prime(p) => Ok(p),
        Domain::Rational => Err(Error::Contract("structured search needs a prime field".into())),
    }
}

/// Solves a system whose variables are a degree-`d` Galois-set block
/// (`a[i][0]`, `b[i][j][0]`, `t`), inverse witnesses recorded as links,
/// and selector groups. Systems read back from text carry no links and
/// are refused.
pub fn structured_solve_system(sys: &DiophSystem, d: usize, caps: &StructuredCaps, exec: Exec) -> Result<SolveReport> {
    let p = prime_of(sys.domain())?;
    let compiled = CompiledSystem::new(sys)?;
    let nvars = sys.registry.len();
    if nvars == 0 {
        let w = compiled.holds(&[]).then(Witness::new);
        return Ok(SolveReport::from_witnesses(w.into_iter().collect(), 1, SolveMethod::Structured));
    }
    let index = |name: String| {
        sys.registry
            .get(&name)
            .map(|v| v.index())
            .ok_or_else(|| Error::Structural(format!("missing core variable `{name}`")))
    };
    let a = (0..d).map(|i| index(format!("a[{i}][0]"))).collect::<Result<Vec<_>>>()?;
    let b = (2..=d)
        .map(|i| (0..d).map(|j| index(format!("b[{i}][{j}][0]"))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let t = if d >= 2 { Some(index("t".into())?) } else { None };

    let mut covered = vec![false; nvars];
    for &k in a.iter().chain(b.iter().flatten()).chain(t.iter()) {
        covered[k] = true;
    }
    let links: Vec<(Vec<usize>, Vec<CompiledPoly>)> = sys
        .inverse_links()
        .iter()
        .map(|l| {
            (
                l.witnesses.iter().map(|v| v.index()).collect(),
                l.diffs.iter().map(|q| CompiledPoly::new(q, p)).collect(),
            )
        })
        .collect();
    let groups: Vec<Vec<usize>> =
        sys.selector_groups().iter().map(|g| g.iter().map(|v| v.index()).collect()).collect();
    for k in links.iter().flat_map(|l| l.0.iter()).chain(groups.iter().flatten()) {
        covered[*k] = true;
    }
    if let Some(k) = covered.iter().position(|c| !c) {
        return Err(Error::Contract(format!(
            "variable `{}` is outside the structured search",
            sys.registry.name(crate::algebra::Var(k as u32))
        )));
    }
    let combos = groups.iter().fold(1u128, |acc, g| acc.saturating_mul(g.len() as u128));
    if combos > caps.max_selector_combinations {
        return Err(Error::Cap { what: "selector combinations".into(), required: combos, cap: caps.max_selector_combinations });
    }

    let polys = fp::irreducible_monic(p, d, caps.max_polynomials)?;
    let labelings = permutations(d.saturating_sub(1));
    let witnesses = par::filter_map(&polys, exec, |f| {
        let roots = fp::frobenius_roots(f, p);
        let mut vals = vec![0u64; nvars];
        for (i, &k) in a.iter().enumerate() {
            vals[k] = f[i];
        }
        if let Some(t) = t {
            vals[t] = 1;
        }
        for perm in &labelings {
            for (k, bi) in b.iter().enumerate() {
                let root = &roots[1 + perm[k]];
                for (j, &v) in bi.iter().enumerate() {
                    vals[v] = root[j];
                }
            }
            for combo in 0..combos {
                let mut c = combo;
                for g in &groups {
                    let pick = (c % g.len() as u128) as usize;
                    c /= g.len() as u128;
                    for (i, &v) in g.iter().enumerate() {
                        vals[v] = u64::from(i == pick);
                    }
                }
                for (ws, diffs) in &links {
                    let mut done = false;
                    for (&w, q) in ws.iter().zip(diffs) {
                        let x = q.eval(&vals);
                        vals[w] = if !done && x != 0 {
                            done = true;
                            fp::inv_mod(x, p).expect("nonzero")
                        } else {
                            0
                        };
                    }
                }
                if compiled.holds(&vals) {
                    return Some(witness_from_values(sys, &vals));
                }
            }
        }
        None
    });
    let mut report = SolveReport::from_witnesses(
        witnesses,
        polys.len() as u128 * labelings.len() as u128 * combos,
        SolveMethod::Structured,
    );
    report.notes.push(format!("{} irreducible monic polynomials of degree {d} over F_{p}", polys.len()));
    Ok(report)
}

/// Inverse Galois problem for `g` over `F_p`, on the realization system
/// with its disequations encoded.
pub fn structured_solve_finite_field(
    ring: &RingDescriptor,
    g: &GroupTable,
    caps: &StructuredCaps,
    exec: Exec,
) -> Result<SolveReport> {
    let sys = encode_disequation(&encode_group_realization(ring, g)?);
    structured_solve_system(&sys, g.order(), caps, exec)
}

pub fn structured_solve_subgroup(
    ring: &RingDescriptor,
    g: &GroupTable,
    h: &GroupTable,
    subgroup_caps: &SubgroupCaps,
    caps: &StructuredCaps,
    exec: Exec,
) -> Result<SolveReport> {
    let sys = encode_disequation(&encode_subgroup_problem(ring, g, h, subgroup_caps)?);
    structured_solve_system(&sys, g.order(), caps, exec)
}

fn constant(dom: Domain, x: u64) -> MultiPoly {
    MultiPoly::constant(dom, Scalar::from_integer(x.into()))
}

/// Decides the automorphism problem over `F_p` by evaluating the branch
/// clauses on concrete values. Each branch degree `l` uses one fixed
/// irreducible `f` with its Frobenius labeling and `t = 1`: every clause
/// quantifies over all index sets, tuples and elements, so it is
/// invariant under relabeling, and all Galois extensions of degree `l`
/// are isomorphic. `h` ranges over all monic irreducibles of degree `n`,
/// its roots over all orderings, and `q = 1`.
pub fn structured_solve_automorphism(enc: &AutomorphismEncoding, caps: &StructuredCaps, exec: Exec) -> Result<SolveReport> {
    let ring = enc.ring();
    let dom = ring.domain();
    let p = prime_of(dom)?;
    let n = enc.n();
    let mut witnesses = Vec::new();
    let mut space = 0u128;
    let mut notes = Vec::new();
    for &l in enc.degrees() {
        let size = fp::monic_count(l, p).unwrap_or(u128::MAX);
        if size > caps.max_polynomials {
            return Err(Error::Cap { what: format!("field of degree {l} over F_{p}"), required: size, cap: caps.max_polynomials });
        }
        let f = fp::first_irreducible(p, l);
        let roots = fp::frobenius_roots(&f, p);
        let values = CoreValues {
            a: f[..l].iter().map(|&x| vec![constant(dom, x)]).collect(),
            b: std::iter::once(Vec::new())
                .chain(roots[1..].iter().map(|r| r.iter().map(|&x| vec![constant(dom, x)]).collect()))
                .collect(),
            t: MultiPoly::one(dom),
        };
        let mut core = GaloisCore::new(Tower::new(ring)?, &values)?;
        if !enc.galois_clause(&core).is_true() {
            return Err(Error::Contract(format!("Frobenius block of degree {l} fails its own clause")));
        }
        let subs: Vec<Vec<usize>> = enc
            .subgroup_candidates(l)
            .into_iter()
            .filter(|u| enc.subgroup_clause(&mut core, u).is_true())
            .collect();
        let pn = (p as u128).pow(n as u32);
        let subfield: Vec<Vec<u64>> = par::filter_map_range(size as u64, exec, |idx| {
            let y = fp::trim(fp::monic_from_index(idx as u128, l, p)[..l].to_vec());
            (fp::pow_rem(&y, pn, &f, p) == y).then_some(y)
        });
        let hs = fp::irreducible_monic(p, n, caps.max_polynomials)?;
        let orders = permutations(n);
        space += hs.len() as u128 * orders.len() as u128 * subs.len() as u128;
        notes.push(format!(
            "degree {l}: {} of {} index sets pass the subgroup clause, {} candidate h",
            subs.len(),
            enc.subgroup_candidates(l).len(),
            hs.len()
        ));
        if subs.is_empty() {
            continue;
        }
        let found = par::filter_map(&hs, exec, |h| {
            let h_roots: Vec<&Vec<u64>> =
                subfield.iter().filter(|y| fp::eval_at_residue(h, y, &f, p).is_empty()).collect();
            if h_roots.len() != n {
                return None;
            }
            let mut core = GaloisCore::new(Tower::new(ring).ok()?, &values).ok()?;
            let h_low: Vec<MultiPoly> = h[..n].iter().map(|&x| constant(dom, x)).collect();
            for order in &orders {
                let rv = RootValues {
                    h_low: h_low.clone(),
                    roots: order
                        .iter()
                        .map(|&k| {
                            let c = fp::coords(h_roots[k], l).iter().map(|&x| constant(dom, x)).collect();
                            QuotientElement::from_coords(c, &core.fmod)
                        })
                        .collect(),
                    q: MultiPoly::one(dom),
                };
                if !enc.root_base_clause(&core, &rv).is_true() {
                    continue;
                }
                for u in &subs {
                    if enc.root_clause(&mut core, &rv, u).is_true() {
                        return Some(branch_witness(l, &f, &roots, h, order, &h_roots));
                    }
                }
            }
            None
        });
        witnesses.extend(found);
    }
    let mut report = SolveReport::from_witnesses(witnesses, space, SolveMethod::Structured);
    report.notes = notes;
    Ok(report)
}

fn branch_witness(
    l: usize,
    f: &[u64],
    roots: &[Vec<u64>],
    h: &[u64],
    order: &[usize],
    h_roots: &[&Vec<u64>],
) -> Witness {
    let int = |x: u64| Scalar::from_integer(x.into());
    let pre = format!("L{l}:");
    let mut w = Witness::new();
    for (i, &c) in f[..l].iter().enumerate() {
        w.set(format!("{pre}a[{i}][0]"), int(c));
    }
    for i in 2..=l {
        for (j, &c) in roots[i - 1].iter().enumerate() {
            w.set(format!("{pre}b[{i}][{j}][0]"), int(c));
        }
    }
    w.set(format!("{pre}t"), Scalar::one());
    for (i, &c) in h[..h.len() - 1].iter().enumerate() {
        w.set(format!("{pre}h[{i}][0]"), int(c));
    }
    for (k, &r) in order.iter().enumerate() {
        for (j, c) in fp::coords(h_roots[r], l).into_iter().enumerate() {
            w.set(format!("{pre}e[{k}][{j}][0]"), int(c));
        }
    }
    w.set(format!("{pre}q"), Scalar::one());
    w
}
