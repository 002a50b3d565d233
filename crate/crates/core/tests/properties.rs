use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use galdioph::algebra::{
    clear_denominators, compose_mod, divide_monic, Domain, Monomial, MultiPoly, RingDescriptor, Scalar, Var,
};
use galdioph::encoder::{
    conjoin_single, encode_disequation, encode_galois_set, encode_group_realization, system_from_text,
    system_to_text, DiophSystem, Role, Witness, ZeroForm,
};
use galdioph::group::{
    all_subgroups, conjugates_of_subgroup, enumerate_injections, library, GroupTable, SubsetCaps,
};
use galdioph::oracle::{
    brute_force_enumerate, factor_over_prime_field, galois_probe_rationals, structured_solve_system,
    verify_witness, ProbeVerdict, SolveStatus, StructuredCaps,
};
use galdioph::par::Exec;

const X: Var = Var(0);
const Y: Var = Var(1);

fn q(v: i64) -> Scalar {
    Scalar::from_integer(v.into())
}

fn integral_strategy(nvars: u32, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    strategy(Domain::Rational, true, nvars, max_exp, max_terms)
}

fn poly_strategy(dom: Domain, nvars: u32, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    strategy(dom, dom.is_prime_field(), nvars, max_exp, max_terms)
}

fn strategy(dom: Domain, integral: bool, nvars: u32, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars as usize), -6i64..=6, 1i64..=3), 0..=max_terms)
        .prop_map(move |terms| {
            MultiPoly::from_terms(
                dom,
                terms.into_iter().map(|(exps, n, d)| {
                    let m = Monomial::from_pairs(exps.into_iter().enumerate().map(|(i, e)| (Var(i as u32), e)));
                    let c = if integral { q(n) } else { Scalar::new(n.into(), d.into()) };
                    (m, dom.normalize(c))
                }),
            )
        })
}

fn canonical(p: &MultiPoly) -> bool {
    let dom = p.domain();
    let terms: Vec<_> = p.terms().collect();
    let distinct = terms.windows(2).all(|w| w[0].0 != w[1].0);
    let nonzero = terms.iter().all(|(_, c)| !c.is_zero());
    let reduced = terms.iter().all(|(_, c)| match dom {
        Domain::Prime(m) => c.denom().is_one() && !c.is_negative() && *c.numer() < m.into(),
        Domain::Rational => true,
    });
    distinct && nonzero && reduced
}

fn ring_axioms(a: &MultiPoly, b: &MultiPoly, c: &MultiPoly) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(a + b), &(b + a));
    prop_assert_eq!(&(a * b), &(b * a));
    prop_assert_eq!(&(&(a + b) + c), &(a + &(b + c)));
    prop_assert_eq!(&(&(a * b) * c), &(a * &(b * c)));
    prop_assert_eq!(&(a * &(b + c)), &(&(a * b) + &(a * c)));
    prop_assert!((a + &(-a)).is_zero());
    prop_assert_eq!(&(a - b), &(a + &(-b)));
    prop_assert_eq!(&(a * &MultiPoly::one(a.domain())), a);
    for p in [a + b, a * b, a * &(b + c)] {
        prop_assert!(canonical(&p));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms_over_rationals(
        a in poly_strategy(Domain::Rational, 3, 2, 4),
        b in poly_strategy(Domain::Rational, 3, 2, 4),
        c in poly_strategy(Domain::Rational, 3, 2, 4),
    ) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn ring_axioms_over_f2(
        a in poly_strategy(Domain::Prime(2), 3, 2, 4),
        b in poly_strategy(Domain::Prime(2), 3, 2, 4),
        c in poly_strategy(Domain::Prime(2), 3, 2, 4),
    ) {
        ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn ring_axioms_over_f5(
        a in poly_strategy(Domain::Prime(5), 3, 2, 4),
        b in poly_strategy(Domain::Prime(5), 3, 2, 4),
        c in poly_strategy(Domain::Prime(5), 3, 2, 4),
    ) {
        ring_axioms(&a, &b, &c)?;
    }
}

fn monic_in_x(dom: Domain, deg: u32, low: &MultiPoly) -> MultiPoly {
    // low has no x; the result is x^deg + low * (1 + x)
    let lead = MultiPoly::monomial(dom, Monomial::var_pow(X, deg), Scalar::one());
    let tail = low * &(&MultiPoly::one(dom) + &MultiPoly::var(dom, X));
    if deg <= 1 {
        &lead + low
    } else {
        &lead + &tail
    }
}

fn substitute_x(p: &MultiPoly, by: &MultiPoly) -> MultiPoly {
    let mut b = HashMap::new();
    b.insert(X, by.clone());
    p.substitute(&b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn division_identity(
        p in poly_strategy(Domain::Rational, 3, 4, 6),
        low in poly_strategy(Domain::Rational, 1, 0, 1).prop_map(|c| substitute_x(&c, &MultiPoly::var(Domain::Rational, Y))),
        deg in 1u32..4,
    ) {
        let f = monic_in_x(Domain::Rational, deg, &low);
        let (quot, r) = divide_monic(&p, &f, X).unwrap();
        prop_assert_eq!(&(&(&quot * &f) + &r), &p);
        prop_assert!(r.is_zero() || r.degree_in(X) < f.degree_in(X));
    }

    #[test]
    fn division_identity_mod_p(
        p in poly_strategy(Domain::Prime(3), 2, 5, 6),
        c0 in 0i64..3, c1 in 0i64..3,
    ) {
        let dom = Domain::Prime(3);
        let f = MultiPoly::univariate(dom, X, &[q(c0), q(c1), q(0), q(1)]);
        let (quot, r) = divide_monic(&p, &f, X).unwrap();
        prop_assert_eq!(&(&(&quot * &f) + &r), &p);
        prop_assert!(r.is_zero() || r.degree_in(X) < 3);
    }

    #[test]
    fn composing_with_identity_vanishes(coeffs in prop::collection::vec(-9i64..=9, 1..6)) {
        let mut c: Vec<Scalar> = coeffs.into_iter().map(q).collect();
        c.push(Scalar::one());
        let f = MultiPoly::univariate(Domain::Rational, X, &c);
        let a = compose_mod(&f, &MultiPoly::var(Domain::Rational, X), X).unwrap();
        prop_assert_eq!(a.len(), c.len() - 1);
        prop_assert!(a.iter().all(MultiPoly::is_zero));
    }

    #[test]
    fn clearing_denominators(coeffs in prop::collection::vec((-9i64..=9, 1i64..=6), 1..5)) {
        let mut c: Vec<Scalar> = coeffs.into_iter().map(|(n, d)| Scalar::new(n.into(), d.into())).collect();
        c.push(Scalar::one());
        let d = (c.len() - 1) as u32;
        let f = MultiPoly::univariate(Domain::Rational, X, &c);
        let (r, b) = clear_denominators(&f, X).unwrap();
        prop_assert!(r.terms().all(|(_, c)| c.denom().is_one()));
        prop_assert!(r.leading_is_one_in(X));
        let bx = MultiPoly::monomial(Domain::Rational, Monomial::var_pow(X, 1), b.clone());
        let lhs = substitute_x(&r, &bx);
        let rhs = f.scale(&num_traits::pow(b, d as usize));
        prop_assert_eq!(lhs, rhs);
    }
}

fn zero_set(polys: &[&MultiPoly], p: u64, nvars: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let total = p.pow(nvars as u32);
    for k in 0..total {
        let pt: Vec<u64> = (0..nvars).map(|i| k / p.pow(i as u32) % p).collect();
        let val = |v: Var| pt.get(v.index()).map(|&x| q(x as i64));
        if polys.iter().all(|f| f.eval(val).unwrap().is_zero()) {
            out.push(pt);
        }
    }
    out
}

fn system_with(ring: &RingDescriptor, nvars: usize, eqs: Vec<MultiPoly>) -> DiophSystem {
    let mut sys = DiophSystem::new(ring.clone());
    for i in 0..nvars {
        sys.registry.add(format!("x{i}"), Role::PolyCoefficient).unwrap();
    }
    sys.equations = eqs;
    sys
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn conjunction_keeps_zero_sets(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        seed_f in integral_strategy(3, 2, 4),
        seed_g in integral_strategy(3, 2, 4),
        seed_h in integral_strategy(3, 2, 3),
    ) {
        let dom = Domain::Prime(p);
        let ring = RingDescriptor::prime_field(p).unwrap();
        let polys: Vec<MultiPoly> = [seed_f, seed_g, seed_h].iter().map(|f| f.to_domain(dom)).collect();
        let sys = system_with(&ring, 3, polys.clone());
        let single = conjoin_single(&sys, &ZeroForm::default_for(&ring), false).unwrap();
        let refs: Vec<&MultiPoly> = polys.iter().collect();
        prop_assert_eq!(zero_set(&refs, p, 3), zero_set(&[&single], p, 3));
    }

    #[test]
    fn zero_form_is_anisotropic(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
        let ring = RingDescriptor::prime_field(p).unwrap();
        let z = ZeroForm::default_for(&ring);
        let dom = Domain::Prime(p);
        let form = z.apply(&MultiPoly::var(dom, X), &MultiPoly::var(dom, Y));
        prop_assert_eq!(zero_set(&[&form], p, 2), vec![vec![0, 0]]);
    }
}

fn naive_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = (1..p).find(|x| x * b[db] % p == 1).unwrap();
    while r.len() > db {
        let c = r.last().unwrap() * inv % p;
        let shift = r.len() - 1 - db;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p * p - c * bj % p) % p;
        }
        while r.last() == Some(&0) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

fn coeffs_of(f: &MultiPoly, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; f.degree_in(X) as usize + 1];
    for (m, c) in f.terms() {
        out[m.exponent(X) as usize] = (c.numer() % num_bigint::BigInt::from(p)).try_into().unwrap();
    }
    out
}

fn has_proper_divisor(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    for k in 1..=d / 2 {
        for idx in 0..p.pow(k as u32) {
            let mut g: Vec<u64> = (0..k).map(|i| idx / p.pow(i as u32) % p).collect();
            g.push(1);
            if naive_rem(f, &g, p).is_empty() {
                return true;
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn prime_field_factorization(
        p in prop::sample::select(vec![2u64, 3, 5]),
        low in prop::collection::vec(0u64..5, 1..7),
    ) {
        let dom = Domain::Prime(p);
        let mut c: Vec<Scalar> = low.iter().map(|&x| q((x % p) as i64)).collect();
        c.push(Scalar::one());
        let f = MultiPoly::univariate(dom, X, &c);
        let factors = factor_over_prime_field(&f, p).unwrap();
        let mut prod = MultiPoly::one(dom);
        for (g, e) in &factors {
            prop_assert!(g.leading_is_one_in(X));
            prop_assert!(!has_proper_divisor(&coeffs_of(g, p), p));
            prod = &prod * &g.pow(*e);
        }
        prop_assert_eq!(prod, f);
    }

    #[test]
    fn probe_claims_pass_the_exact_gate(a in -6i64..=6, b in -6i64..=6, c in -3i64..=3) {
        let f = MultiPoly::univariate(Domain::Rational, X, &[q(b), q(a), q(c), q(1)]);
        if let Ok(report) = galois_probe_rationals(&f) {
            if let ProbeVerdict::GaloisWithWitness(hs) = report.verdict {
                prop_assert_eq!(hs.len(), 2);
                for h in &hs {
                    let residue = compose_mod(&f, h, X).unwrap();
                    prop_assert!(residue.iter().all(MultiPoly::is_zero));
                }
            }
        }
    }
}

fn corrupt(g: &GroupTable, r: usize, c: usize, shift: usize) -> Vec<Vec<usize>> {
    let mut rows = g.rows();
    let d = g.order();
    let old = rows[r][c];
    rows[r][c] = (old - 1 + shift) % d + 1;
    rows
}

#[test]
fn bundled_tables_validate() {
    let all = library::all();
    let names: Vec<&str> = all.iter().map(GroupTable::name).collect();
    let mut expected: Vec<String> = (1..=12).map(|k| format!("C{k}")).collect();
    expected.extend(["S3", "D4", "Q8", "C2xC2", "A4", "D6"].map(String::from));
    assert_eq!(names, expected);
    for g in &all {
        let again = GroupTable::validate(g.name(), &g.rows()).unwrap();
        assert_eq!(&again, g);
        assert_eq!(GroupTable::parse(&g.to_text()).unwrap(), *g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn single_entry_corruption_is_rejected(gi in 0usize..18, r in 0usize..24, c in 0usize..24, s in 1usize..24) {
        let g = &library::all()[gi];
        let d = g.order();
        prop_assume!(d > 1);
        let (r, c, s) = (r % d, c % d, 1 + (s - 1) % (d - 1));
        prop_assert!(GroupTable::validate(g.name(), &corrupt(g, r, c, s)).is_err());
    }
}

#[test]
fn subgroup_orbit_identity_and_lagrange() {
    for g in library::all().iter().filter(|g| g.order() <= 12) {
        for s in all_subgroups(g, SubsetCaps::default(), Exec::Sequential).unwrap() {
            assert_eq!(g.order() % s.order(), 0, "{}", g.name());
            let elems = s.elements();
            let conj = |t: usize| {
                let mut v: Vec<usize> = elems.iter().map(|&x| g.mul(g.mul(t, x), g.inverse(t))).collect();
                v.sort_unstable();
                v
            };
            let normalizer = (0..g.order()).filter(|&t| conj(t) == elems).count();
            let (count, _) = conjugates_of_subgroup(g, &s);
            assert_eq!(count * normalizer / s.order(), g.order() / s.order(), "{}", g.name());
        }
    }
}

#[test]
fn injections_are_injective_homomorphisms() {
    let small: Vec<GroupTable> = library::all().into_iter().filter(|g| g.order() <= 8).collect();
    for h in &small {
        for g in &small {
            for tail in enumerate_injections(h, g) {
                let map: Vec<usize> = std::iter::once(0).chain(tail).collect();
                let mut image = map.clone();
                image.sort_unstable();
                image.dedup();
                assert_eq!(image.len(), h.order());
                for i in 0..h.order() {
                    for j in 0..h.order() {
                        assert_eq!(map[h.mul(i, j)], g.mul(map[i], map[j]));
                    }
                }
            }
        }
    }
}

#[test]
fn brute_and_structured_agree() {
    for p in [2u64, 3, 5] {
        for name in ["C1", "C2"] {
            let ring = RingDescriptor::prime_field(p).unwrap();
            let g = library::group(name).unwrap();
            let sys = encode_disequation(&encode_group_realization(&ring, &g).unwrap());
            let brute = brute_force_enumerate(&sys, 1_000_000, Exec::Auto).unwrap();
            let fast = structured_solve_system(&sys, g.order(), &StructuredCaps::default(), Exec::Auto).unwrap();
            assert_eq!(brute.status, fast.status, "F_{p} {name}");
            assert_eq!(brute.status, SolveStatus::SolvableWithWitness);
            for w in brute.witnesses.iter().chain(&fast.witnesses) {
                assert!(verify_witness(&sys, w).unwrap().accepted);
            }
            // the structured search fixes t = 1 and covers that slice completely
            let first = &brute.witnesses[0];
            if first.get("t").is_none_or(|t| t.is_one()) {
                let text = first.to_text(Some(&sys.registry));
                assert!(fast.witnesses.iter().any(|w| w.to_text(Some(&sys.registry)) == text), "F_{p} {name}");
            }
        }
    }
    let ring = RingDescriptor::prime_field(2).unwrap();
    let g = library::group("C2xC2").unwrap();
    let sys = encode_disequation(&encode_group_realization(&ring, &g).unwrap());
    let fast = structured_solve_system(&sys, 4, &StructuredCaps::default(), Exec::Auto).unwrap();
    assert_eq!(fast.status, SolveStatus::UnsolvableProven);
}

#[test]
fn witnesses_survive_serialization() {
    for (p, name) in [(3u64, "C2"), (5, "C3"), (3, "C4")] {
        let ring = RingDescriptor::prime_field(p).unwrap();
        let g = library::group(name).unwrap();
        let sys = encode_disequation(&encode_group_realization(&ring, &g).unwrap());
        let back = system_from_text(&system_to_text(&sys)).unwrap();
        let r = structured_solve_system(&sys, g.order(), &StructuredCaps::default(), Exec::Auto).unwrap();
        assert!(!r.witnesses.is_empty());
        for w in &r.witnesses {
            let text = w.to_text(Some(&sys.registry));
            let w2 = Witness::from_text(&text).unwrap();
            assert!(verify_witness(&back, &w2).unwrap().accepted, "F_{p} {name}");
        }
    }
}

#[test]
fn encodings_are_deterministic_and_extend_the_galois_set() {
    let cases: [(&str, &[&str]); 4] = [
        ("Q", &["C1", "C2", "C3", "C4", "C2xC2"]),
        ("Z", &["C2", "C3"]),
        ("Fp p=3", &["C1", "C2", "C3", "C4", "C2xC2"]),
        ("numberfield minpoly=1,0,1", &["C1", "C2", "C3"]),
    ];
    for (ring, groups) in cases {
        let ring = RingDescriptor::parse(ring).unwrap();
        for &name in groups {
            let g = library::group(name).unwrap();
            let a = system_to_text(&encode_group_realization(&ring, &g).unwrap());
            let b = system_to_text(&encode_group_realization(&ring, &g).unwrap());
            assert_eq!(a, b);
            let full = encode_group_realization(&ring, &g).unwrap();
            let base = encode_galois_set(&ring, g.order()).unwrap();
            for e in &base.equations {
                let text = e.to_text(|v| base.registry.name(v));
                assert!(
                    full.equations.iter().any(|f| f.to_text(|v| full.registry.name(v)) == text),
                    "{name}: Galois-set equation missing"
                );
            }
            assert_eq!(system_to_text(&system_from_text(&a).unwrap()), a);
        }
    }
}

#[test]
fn elimination_leaves_no_generator() {
    let ring = RingDescriptor::prime_field(3).unwrap();
    for d in 1..=3 {
        let sys = encode_galois_set(&ring, d).unwrap();
        assert!(sys.registry.iter().all(|(_, v)| v.role != Role::Generator));
        assert!(sys.polynomials().all(|e| e.vars().iter().all(|v| v.index() < sys.registry.len())));
    }
}
