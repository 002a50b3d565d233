use std::collections::BTreeSet;

use super::table::GroupTable;
use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Limits on the exhaustive subset searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetCaps {
    pub max_group_order: usize,
    pub max_subset_size: usize,
}

impl Default for SubsetCaps {
    fn default() -> Self {
        SubsetCaps {
            max_group_order: 24,
            max_subset_size: 12,
        }
    }
}

/// A subgroup of a parent table: sorted 0-based indices containing 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupRef {
    elements: Vec<usize>,
}

impl SubgroupRef {
    /// Checks closure under products and inverses.
    pub fn new(g: &GroupTable, mut elements: Vec<usize>) -> Option<Self> {
        elements.sort_unstable();
        elements.dedup();
        is_subgroup(g, &elements).then_some(SubgroupRef { elements })
    }

    pub fn whole(g: &GroupTable) -> Self {
        SubgroupRef {
            elements: (0..g.order()).collect(),
        }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elements.binary_search(&i).is_ok()
    }
}

fn is_subgroup(g: &GroupTable, set: &[usize]) -> bool {
    let has = |x: usize| set.binary_search(&x).is_ok();
    has(0)
        && set.iter().all(|&a| has(g.inverse(a)))
        && set.iter().all(|&a| set.iter().all(|&b| has(g.mul(a, b))))
}

/// All `k`-subsets of `items`, lexicographic.
pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let n = items.len();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Subgroups of order `m`, found by scanning every `m`-subset containing
/// the identity. Empty when `m` does not divide the group order.
pub fn subgroups_of_order(g: &GroupTable, m: usize, caps: SubsetCaps, exec: Exec) -> Result<Vec<SubgroupRef>> {
    let d = g.order();
    if m == 0 || !d.is_multiple_of(m) {
        return Ok(Vec::new());
    }
    if d > caps.max_group_order {
        return Err(Error::Cap {
            what: "group order for subset enumeration".into(),
            required: d as u128,
            cap: caps.max_group_order as u128,
        });
    }
    if m > caps.max_subset_size {
        return Err(Error::Cap {
            what: format!("subset size ({} candidate subsets)", binomial(d - 1, m - 1)),
            required: m as u128,
            cap: caps.max_subset_size as u128,
        });
    }
    let rest: Vec<usize> = (1..d).collect();
    let candidates = combinations(&rest, m - 1);
    Ok(par::filter_map(&candidates, exec, |c| {
        let mut set = Vec::with_capacity(m);
        set.push(0);
        set.extend_from_slice(c);
        is_subgroup(g, &set).then_some(SubgroupRef { elements: set })
    }))
}

/// Every subgroup, ordered by size then lexicographically.
pub fn all_subgroups(g: &GroupTable, caps: SubsetCaps, exec: Exec) -> Result<Vec<SubgroupRef>> {
    let mut out = Vec::new();
    for m in 1..=g.order() {
        if g.order().is_multiple_of(m) {
            if m == g.order() {
                out.push(SubgroupRef::whole(g));
            } else {
                out.extend(subgroups_of_order(g, m, caps, exec)?);
            }
        }
    }
    Ok(out)
}

/// `tau^{-1} S tau`.
pub fn conjugate_by(g: &GroupTable, s: &SubgroupRef, tau: usize) -> SubgroupRef {
    let ti = g.inverse(tau);
    let mut elements: Vec<usize> = s.elements.iter().map(|&x| g.mul(g.mul(ti, x), tau)).collect();
    elements.sort_unstable();
    SubgroupRef { elements }
}

/// The conjugacy orbit of `s`, deduplicated and sorted, with its size.
pub fn conjugates_of_subgroup(g: &GroupTable, s: &SubgroupRef) -> (usize, Vec<SubgroupRef>) {
    let orbit: BTreeSet<SubgroupRef> = (0..g.order()).map(|t| conjugate_by(g, s, t)).collect();
    (orbit.len(), orbit.into_iter().collect())
}

/// `N_G(S)` by brute force.
pub fn normalizer(g: &GroupTable, s: &SubgroupRef) -> SubgroupRef {
    let elements = (0..g.order()).filter(|&t| conjugate_by(g, s, t) == *s).collect();
    SubgroupRef { elements }
}

/// All injective homomorphisms `H -> G`, each given as the images of
/// `tau_2 .. tau_r` (0-based indices into `g`), in lexicographic order.
pub fn enumerate_injections(h: &GroupTable, g: &GroupTable) -> Vec<Vec<usize>> {
    let r = h.order();
    if !g.order().is_multiple_of(r) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut img = vec![0usize; r];
    let mut used = vec![false; g.order()];
    used[0] = true;
    extend(h, g, 1, &mut img, &mut used, &mut out);
    out
}

fn extend(h: &GroupTable, g: &GroupTable, k: usize, img: &mut [usize], used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if k == h.order() {
        out.push(img[1..].to_vec());
        return;
    }
    for cand in 1..g.order() {
        if used[cand] {
            continue;
        }
        img[k] = cand;
        let consistent = (0..=k).all(|a| {
            (0..=k).all(|b| {
                let c = h.mul(a, b);
                c > k || g.mul(img[a], img[b]) == img[c]
            })
        });
        if consistent {
            used[cand] = true;
            extend(h, g, k + 1, img, used, out);
            used[cand] = false;
        }
    }
}

/// Number of ordered tuples of distinct non-identity elements of `g` of
/// length `h.order() - 1`: the candidate maps before any homomorphism
/// check.
pub fn candidate_tuple_count(h: &GroupTable, g: &GroupTable) -> u128 {
    let n = g.order().saturating_sub(1) as u128;
    let k = h.order().saturating_sub(1) as u128;
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i))
}
