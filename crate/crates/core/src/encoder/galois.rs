//! Galois-set and group-realization systems.
//!
//! A monic `f = x^d + sum c_i x^i` with `c_i = sum_j a[i][j] alpha^j`
//! generates a Galois extension iff every conjugate of a root `beta` can
//! be written `(1/t) sum_j s_{i,j} beta^j` with `s_{i,j} = sum_r b[i][j][r]
//! alpha^r`. Equations are built in `R[alpha][beta]/f(beta)`, then both
//! generators are eliminated coordinate by coordinate.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{
    compose_mod_scaled, eval_homogeneous, Domain, Modulus, MultiPoly, QuotientElement, RingDescriptor, Var,
};
use crate::error::{Error, Result};
use crate::group::GroupTable;

use super::passes::eliminate_generator;
use super::system::{Disequation, DiophSystem, PredicateConstraint, Role};

pub(crate) const BETA: Var = Var(0);
pub(crate) const ALPHA: Var = Var(1);

/// The level `L = K(alpha)`: elements are polynomials in `alpha` of degree
/// below `n`. With `n = 1` no `alpha` variable is used.
#[derive(Clone, Debug)]
pub(crate) struct Tower {
    pub dom: Domain,
    pub n: usize,
    alpha: Option<Arc<Modulus>>,
}

impl Tower {
    pub fn new(ring: &RingDescriptor) -> Result<Self> {
        let n = ring.extension_degree();
        let alpha = if n > 1 {
            Some(Arc::new(Modulus::new(&ring.alpha_minpoly(ALPHA), ALPHA)?))
        } else {
            None
        };
        Ok(Tower { dom: ring.domain(), n, alpha })
    }

    /// `sum coords[j] alpha^j`.
    pub fn element(&self, coords: &[MultiPoly]) -> MultiPoly {
        match &self.alpha {
            None => coords[0].clone(),
            Some(m) => QuotientElement::from_coords(coords.to_vec(), m).to_poly(),
        }
    }

    /// Reduces modulo the minimal polynomial and returns the `n`
    /// coordinates.
    pub fn split(&self, p: &MultiPoly) -> Vec<MultiPoly> {
        match &self.alpha {
            None => vec![p.clone()],
            Some(m) => QuotientElement::from_poly(p, m).into_coords(),
        }
    }

    /// Coordinates over the base ring of a residue in `L[beta]/f`.
    pub fn flatten(&self, q: &QuotientElement) -> Vec<MultiPoly> {
        q.coords().iter().flat_map(|c| self.split(c)).collect()
    }
}

/// Variables of one Galois-set block.
#[derive(Clone, Debug)]
pub(crate) struct CoreVars {
    pub a: Vec<Vec<Var>>,
    /// `b[i][j][r]` for conjugates `i = 1..d-1` (0-based; `b[0]` is empty).
    pub b: Vec<Vec<Vec<Var>>>,
    pub t: Option<Var>,
}

impl CoreVars {
    pub fn register(sys: &mut DiophSystem, prefix: &str, d: usize, n: usize) -> Result<Self> {
        let mut a = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                row.push(sys.registry.add(format!("{prefix}a[{i}][{j}]"), Role::PolyCoefficient)?);
            }
            a.push(row);
        }
        let mut b = vec![Vec::new()];
        for i in 2..=d {
            let mut bi = Vec::with_capacity(d);
            for j in 0..d {
                let mut r_row = Vec::with_capacity(n);
                for r in 0..n {
                    r_row.push(
                        sys.registry
                            .add(format!("{prefix}b[{i}][{j}][{r}]"), Role::ConjugateCoordinate)?,
                    );
                }
                bi.push(r_row);
            }
            b.push(bi);
        }
        let t = if d >= 2 {
            Some(sys.registry.add(format!("{prefix}t"), Role::Denominator)?)
        } else {
            None
        };
        Ok(CoreVars { a, b, t })
    }

    pub fn coefficient_args(&self) -> Vec<Var> {
        self.a.iter().flatten().copied().collect()
    }

    pub fn values(&self, dom: Domain) -> CoreValues {
        let v = |x: &Var| MultiPoly::var(dom, *x);
        CoreValues {
            a: self.a.iter().map(|r| r.iter().map(v).collect()).collect(),
            b: self
                .b
                .iter()
                .map(|bi| bi.iter().map(|bj| bj.iter().map(v).collect()).collect())
                .collect(),
            t: self.t.map_or_else(|| MultiPoly::one(dom), |t| MultiPoly::var(dom, t)),
        }
    }
}

/// Values (symbolic or concrete) for one Galois-set block.
#[derive(Clone, Debug)]
pub(crate) struct CoreValues {
    pub a: Vec<Vec<MultiPoly>>,
    pub b: Vec<Vec<Vec<MultiPoly>>>,
    pub t: MultiPoly,
}

/// The quotient `L[beta]/f(beta)` together with the conjugate numerators
/// `H_i = t * h_i(beta)`; caches powers and word numerators.
pub(crate) struct GaloisCore {
    pub d: usize,
    pub tower: Tower,
    pub fmod: Arc<Modulus>,
    /// `s[i][j]` as elements of `L`.
    pub s: Vec<Vec<MultiPoly>>,
    pub t: MultiPoly,
    conj: Vec<QuotientElement>,
    powers: HashMap<Vec<usize>, Vec<QuotientElement>>,
    words: HashMap<Vec<usize>, (QuotientElement, u32)>,
}

impl GaloisCore {
    pub fn new(tower: Tower, values: &CoreValues) -> Result<Self> {
        let dom = tower.dom;
        let d = values.a.len();
        let mut f = MultiPoly::var(dom, BETA).pow(d as u32);
        for (i, ai) in values.a.iter().enumerate() {
            f = &f + &(&tower.element(ai) * &MultiPoly::var(dom, BETA).pow(i as u32));
        }
        let fmod = Arc::new(Modulus::new(&f, BETA)?);
        let t = values.t.clone();
        let mut s = Vec::with_capacity(d);
        let mut conj = Vec::with_capacity(d);
        let pinned = QuotientElement::generator(&fmod).scale(&t);
        s.push(pinned.coords().to_vec());
        conj.push(pinned);
        for bi in values.b.iter().skip(1) {
            let si: Vec<MultiPoly> = bi.iter().map(|bj| tower.element(bj)).collect();
            conj.push(QuotientElement::from_coords(si.clone(), &fmod));
            s.push(si);
        }
        Ok(GaloisCore {
            d,
            tower,
            fmod,
            s,
            t,
            conj,
            powers: HashMap::new(),
            words: HashMap::new(),
        })
    }

    pub fn dom(&self) -> Domain {
        self.tower.dom
    }

    /// `H_i`, the numerator of the `i`-th conjugate (0-based, `H_0 = t beta`).
    pub fn conjugate(&self, i: usize) -> &QuotientElement {
        &self.conj[i]
    }

    /// `t^d f(H_i / t)`, zero iff `H_i / t` is a root of `f`.
    pub fn root_condition(&self, i: usize) -> QuotientElement {
        compose_mod_scaled(&self.fmod, &self.conj[i], &self.t)
    }

    /// Numerator and `t`-exponent of the image of `beta` under the word
    /// `w = [w_1, .., w_k]`, read as `h_{w_1}(h_{w_2}(... h_{w_k}(beta)))`.
    /// Identity letters must already be removed.
    pub fn word(&mut self, w: &[usize]) -> (QuotientElement, u32) {
        if let Some(hit) = self.words.get(w) {
            return hit.clone();
        }
        let out = match w {
            [] => (QuotientElement::generator(&self.fmod), 0),
            [k] => (self.conj[*k].clone(), 1),
            [first, rest @ ..] => {
                let (_, e) = self.word(rest);
                let s = self.s[*first].clone();
                let (num, e_out) = self.eval_at(&s, rest, e);
                (num, e_out + 1)
            }
        };
        self.words.insert(w.to_vec(), out.clone());
        out
    }

    /// `sum_m coeffs[m] N^m t^{e(d-1-m)}` for the numerator `N` of `word`
    /// (with exponent `e`), together with the exponent `e(d-1)`.
    pub fn eval_at(&mut self, coeffs: &[MultiPoly], word: &[usize], e: u32) -> (QuotientElement, u32) {
        let d = self.d;
        let pw = self.powers_of(word);
        let mut acc = QuotientElement::constant(MultiPoly::zero(self.dom()), &self.fmod);
        for (m, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scale = c * &self.t.pow(e * (d - 1 - m) as u32);
            acc = acc.add(&pw[m].scale(&scale));
        }
        (acc, e * (d as u32 - 1))
    }

    fn powers_of(&mut self, word: &[usize]) -> Vec<QuotientElement> {
        if let Some(p) = self.powers.get(word) {
            return p.clone();
        }
        let (num, _) = self.word(word);
        let mut out = Vec::with_capacity(self.d);
        out.push(QuotientElement::constant(MultiPoly::one(self.dom()), &self.fmod));
        for m in 1..self.d {
            let next = out[m - 1].mul(&num);
            out.push(next);
        }
        self.powers.insert(word.to_vec(), out.clone());
        out
    }

    /// Cleared difference of two words, or `None` when they coincide
    /// after dropping identity letters (index 0).
    pub fn word_eq(&mut self, l: &[usize], r: &[usize]) -> Option<QuotientElement> {
        let l: Vec<usize> = l.iter().copied().filter(|&k| k != 0).collect();
        let r: Vec<usize> = r.iter().copied().filter(|&k| k != 0).collect();
        if l == r {
            return None;
        }
        let (nl, el) = self.word(&l);
        let (nr, er) = self.word(&r);
        let e = el.max(er);
        Some(nl.scale(&self.t.pow(e - el)).sub(&nr.scale(&self.t.pow(e - er))))
    }

    /// `h_i(h_j(beta)) = h_r(beta)`, cleared by `t^d`.
    pub fn table_condition(&mut self, i: usize, j: usize, r: usize) -> Option<QuotientElement> {
        self.word_eq(&[i, j], &[r])
    }

    /// `den^k g(num/den)` for a monic `g` given by its low coefficients.
    pub fn monic_at(&self, low: &[MultiPoly], num: &QuotientElement, den: &MultiPoly) -> QuotientElement {
        eval_homogeneous(low, num, den)
    }

    pub fn flatten(&self, q: &QuotientElement) -> Vec<MultiPoly> {
        self.tower.flatten(q)
    }
}

pub(crate) struct Presystem {
    pub sys: DiophSystem,
    pub core: GaloisCore,
}

fn register_generators(sys: &mut DiophSystem) -> Result<()> {
    let beta = sys.registry.add("beta", Role::Generator)?;
    debug_assert_eq!(beta, BETA);
    if sys.ring.extension_degree() > 1 {
        let alpha = sys.registry.add("alpha", Role::Generator)?;
        debug_assert_eq!(alpha, ALPHA);
    }
    Ok(())
}

/// The Galois-set system of degree `d` before elimination: equations and
/// disequations still carry `beta` (and `alpha`).
pub(crate) fn galois_presystem(ring: &RingDescriptor, d: usize) -> Result<Presystem> {
    if d == 0 {
        return Err(Error::Contract("Galois-set degree must be positive".into()));
    }
    let mut sys = DiophSystem::new(ring.clone());
    register_generators(&mut sys)?;
    let tower = Tower::new(ring)?;
    let vars = CoreVars::register(&mut sys, "", d, tower.n)?;
    let core = GaloisCore::new(tower, &vars.values(sys.domain()))?;
    for i in 1..d {
        sys.push_equation(core.root_condition(i).to_poly());
    }
    for i in 0..d {
        for k in i + 1..d {
            sys.disequations.push(Disequation::single(
                core.conjugate(i).to_poly(),
                core.conjugate(k).to_poly(),
            ));
        }
    }
    sys.predicates.push(PredicateConstraint::Irreducible {
        degree: d,
        args: vars.coefficient_args(),
    });
    sys.provenance.push(format!("encode-galois-set(d={d})"));
    Ok(Presystem { sys, core })
}

/// Removes `beta`, then `alpha` when present.
pub(crate) fn eliminate_all(pre: &Presystem) -> Result<DiophSystem> {
    let f = pre.core.fmod.to_poly();
    let mut sys = eliminate_generator(&pre.sys, BETA, &f)?;
    if sys.ring.extension_degree() > 1 {
        let alpha = sys
            .registry
            .get("alpha")
            .ok_or_else(|| Error::Structural("alpha generator missing".into()))?;
        let mu = sys.ring.alpha_minpoly(alpha);
        sys = eliminate_generator(&sys, alpha, &mu)?;
    }
    Ok(sys)
}

/// Coefficient tuples of monic degree-`d` polynomials generating a Galois
/// extension of `L`, with conjugate coordinates as witnesses.
pub fn encode_galois_set(ring: &RingDescriptor, d: usize) -> Result<DiophSystem> {
    eliminate_all(&galois_presystem(ring, d)?)
}

pub(crate) fn realization_presystem(ring: &RingDescriptor, g: &GroupTable) -> Result<Presystem> {
    let mut pre = galois_presystem(ring, g.order())?;
    let d = g.order();
    for i in 1..d {
        for j in 1..d {
            if let Some(q) = pre.core.table_condition(i, j, g.mul(i, j)) {
                pre.sys.push_equation(q.to_poly());
            }
        }
    }
    pre.sys.provenance.push(format!("encode-group-realization({})", g.name()));
    Ok(pre)
}

/// Galois-set system for `|G|` plus the multiplication-table equations:
/// solvable iff `L` has a Galois extension with group isomorphic to `G`.
pub fn encode_group_realization(ring: &RingDescriptor, g: &GroupTable) -> Result<DiophSystem> {
    eliminate_all(&realization_presystem(ring, g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::library;

    #[test]
    fn degree_one_has_only_the_predicate() {
        let s = encode_galois_set(&RingDescriptor::rationals(), 1).unwrap();
        assert!(s.equations.is_empty());
        assert!(s.disequations.is_empty());
        assert_eq!(s.predicates.len(), 1);
        assert_eq!(s.registry.len(), 1);
    }

    #[test]
    fn quadratic_shape() {
        let s = encode_galois_set(&RingDescriptor::prime_field(2).unwrap(), 2).unwrap();
        let names: Vec<&str> = s.registry.iter().map(|(_, v)| v.name.as_str()).collect();
        assert_eq!(names, ["a[0][0]", "a[1][0]", "b[2][0][0]", "b[2][1][0]", "t"]);
        assert_eq!(s.disequations.len(), 1);
        assert_eq!(s.disequations[0].lhs.len(), 2);
        assert_eq!(s.provenance, ["encode-galois-set(d=2)", "eliminate(beta)"]);
    }

    #[test]
    fn trivial_group_matches_degree_one() {
        let ring = RingDescriptor::rationals();
        let a = encode_group_realization(&ring, &library::group("C1").unwrap()).unwrap();
        let b = encode_galois_set(&ring, 1).unwrap();
        assert_eq!(a.registry, b.registry);
        assert_eq!(a.equations, b.equations);
        assert_eq!(a.predicates, b.predicates);
    }

    #[test]
    fn realization_extends_galois_set() {
        let ring = RingDescriptor::rationals();
        for name in ["C2", "C3", "C2xC2"] {
            let g = library::group(name).unwrap();
            let a = encode_group_realization(&ring, &g).unwrap();
            let b = encode_galois_set(&ring, g.order()).unwrap();
            assert_eq!(&a.equations[..b.equations.len()], &b.equations[..]);
        }
    }

    #[test]
    fn number_field_eliminates_alpha() {
        let ring = RingDescriptor::parse("numberfield minpoly=1,0,-2").unwrap();
        let s = encode_galois_set(&ring, 2).unwrap();
        assert!(s.registry.get("alpha").is_none());
        assert_eq!(s.registry.len(), 2 * 2 + 2 * 2 + 1);
        assert_eq!(s.disequations[0].lhs.len(), 4);
        assert_eq!(s.provenance.last().unwrap(), "eliminate(alpha)");
    }
}
