//! Exhaustive search over every assignment in `F_p`.

use crate::algebra::{Domain, Scalar};
use crate::encoder::{DiophSystem, Witness};
use crate::error::{Error, Result};
use crate::par::{find_first_in_range, Exec};

use super::eval::CompiledSystem;
use super::{SolveMethod, SolveReport};

pub const DEFAULT_BRUTE_CAP: u128 = 1_000_000;

pub(crate) fn witness_from_values(sys: &DiophSystem, vals: &[u64]) -> Witness {
    let mut w = Witness::new();
    for ((_, v), &x) in sys.registry.iter().zip(vals) {
        w.set(v.name.clone(), Scalar::from_integer(x.into()));
    }
    w
}

/// Returns the first solution in enumeration order (the last registry
/// variable varies fastest), or proves there is none.
pub fn brute_force_enumerate(sys: &DiophSystem, cap: u128, exec: Exec) -> Result<SolveReport> {
    let Domain::Prime(p) = sys.domain() else {
        return Err(Error::Contract("brute force needs a prime field".into()));
    };
    let nvars = sys.registry.len();
    let total = (p as u128)
        .checked_pow(nvars as u32)
        .filter(|&n| n <= cap)
        .ok_or_else(|| Error::Cap {
            what: format!("assignments of {nvars} variables over F_{p}"),
            required: (p as u128).checked_pow(nvars as u32).unwrap_or(u128::MAX),
            cap,
        })?;
    let compiled = CompiledSystem::new(sys)?;
    let found = find_first_in_range(total as u64, exec, |idx| {
        let mut vals = vec![0u64; nvars];
        let mut k = idx;
        for slot in vals.iter_mut().rev() {
            *slot = k % p;
            k /= p;
        }
        compiled.holds(&vals).then_some(vals)
    });
    let witnesses = found.map(|v| witness_from_values(sys, &v)).into_iter().collect();
    Ok(SolveReport::from_witnesses(witnesses, total, SolveMethod::Raw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MultiPoly, RingDescriptor, Var};
    use crate::encoder::Role;

    #[test]
    fn inverse_of_two() {
        let mut sys = DiophSystem::new(RingDescriptor::prime_field(5).unwrap());
        let x = sys.registry.add("x", Role::Auxiliary).unwrap();
        let w = sys.registry.add("w", Role::InverseWitness).unwrap();
        sys.equations.push(&(&sys.var(w) * &sys.var(x)) - &sys.constant(1));
        sys.equations.push(&sys.var(x) - &sys.constant(2));
        let r = brute_force_enumerate(&sys, DEFAULT_BRUTE_CAP, Exec::Auto).unwrap();
        assert!(r.is_solvable());
        assert_eq!(r.witnesses[0].get("w"), Some(&Scalar::from_integer(3.into())));
        assert_eq!(r.search_space, 25);
    }

    #[test]
    fn no_root_of_x2_x_1_over_f2() {
        let mut sys = DiophSystem::new(RingDescriptor::prime_field(2).unwrap());
        sys.registry.add("x", Role::Auxiliary).unwrap();
        let x = MultiPoly::var(sys.domain(), Var(0));
        sys.equations.push(&(&x.pow(2) + &x) + &sys.constant(1));
        let r = brute_force_enumerate(&sys, DEFAULT_BRUTE_CAP, Exec::Sequential).unwrap();
        assert_eq!(r.status, super::super::SolveStatus::UnsolvableProven);
    }

    #[test]
    fn cap_refusal() {
        let mut sys = DiophSystem::new(RingDescriptor::prime_field(5).unwrap());
        for k in 0..9 {
            sys.registry.add(format!("x{k}"), Role::Auxiliary).unwrap();
        }
        let err = brute_force_enumerate(&sys, DEFAULT_BRUTE_CAP, Exec::Auto).unwrap_err();
        assert_eq!(err, Error::Cap { what: "assignments of 9 variables over F_5".into(), required: 1_953_125, cap: DEFAULT_BRUTE_CAP });
    }
}
