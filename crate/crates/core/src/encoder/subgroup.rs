use crate::algebra::RingDescriptor;
use crate::error::{Error, Result};
use crate::group::GroupTable;

use super::galois::{eliminate_all, realization_presystem};
use super::logic::{lower_formula, Formula, LowerCaps};
use super::system::DiophSystem;

#[derive(Clone, Copy, Debug)]
pub struct SubgroupCaps {
    pub max_group_order: usize,
    pub max_subgroup_order: usize,
    /// Upper bound on the number of candidate image tuples.
    pub max_candidates: u128,
    pub lower: LowerCaps,
}

impl Default for SubgroupCaps {
    fn default() -> Self {
        SubgroupCaps {
            max_group_order: 12,
            max_subgroup_order: 6,
            max_candidates: 5_000,
            lower: LowerCaps::default(),
        }
    }
}

/// Ordered tuples of distinct non-identity indices of `G` (0-based), one
/// entry per non-identity element of `H`.
pub fn candidate_tuples(g: &GroupTable, h: &GroupTable) -> Vec<Vec<usize>> {
    fn extend(d: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 1..d {
            if !cur.contains(&i) {
                cur.push(i);
                extend(d, len, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(g.order(), h.order() - 1, &mut Vec::new(), &mut out);
    out
}

fn tuple_count(d: usize, r: usize) -> u128 {
    (0..r as u128).fold(1u128, |acc, k| acc.saturating_mul((d as u128 - 1).saturating_sub(k)))
}

/// Solvable iff `L` has a Galois extension with group `G` containing a
/// subgroup isomorphic to `H`. The realization system for `G` is extended
/// by a disjunction, over image tuples for `H`, of `H`'s table equations
/// read through the tuple.
pub fn encode_subgroup_problem(
    ring: &RingDescriptor,
    g: &GroupTable,
    h: &GroupTable,
    caps: &SubgroupCaps,
) -> Result<DiophSystem> {
    if g.order() > caps.max_group_order {
        return Err(Error::Cap {
            what: "group order".into(),
            required: g.order() as u128,
            cap: caps.max_group_order as u128,
        });
    }
    if h.order() > caps.max_subgroup_order {
        return Err(Error::Cap {
            what: "subgroup order".into(),
            required: h.order() as u128,
            cap: caps.max_subgroup_order as u128,
        });
    }
    if !g.order().is_multiple_of(h.order()) {
        return Ok(DiophSystem::unsolvable(ring.clone(), "lagrange"));
    }
    let count = tuple_count(g.order(), h.order() - 1);
    if count > caps.max_candidates {
        return Err(Error::Cap {
            what: "candidate image tuples".into(),
            required: count,
            cap: caps.max_candidates,
        });
    }
    let mut pre = realization_presystem(ring, g)?;
    let r = h.order();
    let mut branches = Vec::new();
    for tuple in candidate_tuples(g, h) {
        let image = |k: usize| if k == 0 { 0 } else { tuple[k - 1] };
        let mut atoms = Vec::new();
        for u in 1..r {
            for s in 1..r {
                if let Some(q) = pre.core.table_condition(image(u), image(s), image(h.mul(u, s))) {
                    atoms.push(Formula::eqs(pre.core.flatten(&q)));
                }
            }
        }
        branches.push(Formula::and(atoms));
    }
    let formula = Formula::or(branches);
    let eqs = lower_formula(&mut pre.sys, &formula, &caps.lower)?;
    pre.sys.equations.extend(eqs);
    pre.sys.provenance.push(format!("encode-subgroup({})", h.name()));
    pre.sys.provenance.push("lower-disjunction".into());
    eliminate_all(&pre)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::encode_group_realization;
    use crate::group::library;
    use crate::algebra::Scalar;
    use num_traits::One;

    #[test]
    fn trivial_subgroup_adds_nothing() {
        let ring = RingDescriptor::prime_field(3).unwrap();
        let g = library::group("C3").unwrap();
        let a = encode_subgroup_problem(&ring, &g, &library::group("C1").unwrap(), &SubgroupCaps::default())
            .unwrap();
        let b = encode_group_realization(&ring, &g).unwrap();
        assert_eq!(a.registry, b.registry);
        assert_eq!(a.equations, b.equations);
    }

    #[test]
    fn lagrange_sentinel() {
        let ring = RingDescriptor::rationals();
        let s = encode_subgroup_problem(
            &ring,
            &library::group("C4").unwrap(),
            &library::group("C3").unwrap(),
            &SubgroupCaps::default(),
        )
        .unwrap();
        assert!(s.registry.is_empty());
        assert_eq!(s.equations.len(), 1);
        assert_eq!(s.equations[0].as_constant(), Some(Scalar::one()));
    }

    #[test]
    fn tuple_enumeration() {
        let g = library::group("C4").unwrap();
        let h = library::group("C2").unwrap();
        assert_eq!(candidate_tuples(&g, &h), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(tuple_count(4, 1), 3);
        assert_eq!(candidate_tuples(&g, &library::group("C1").unwrap()), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn caps_are_explicit() {
        let ring = RingDescriptor::rationals();
        let err = encode_subgroup_problem(
            &ring,
            &library::group("C12").unwrap(),
            &library::group("C6").unwrap(),
            &SubgroupCaps::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Cap { required: 55440, .. }));
    }
}
