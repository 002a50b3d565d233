//! Independent checks for emitted systems: exact witness evaluation,
//! exhaustive and Frobenius-structured search over small prime fields,
//! and irreducibility and Galois probes over the rationals.

pub mod brute;
pub mod eval;
pub mod fp;
pub mod galois_probe;
pub mod numberfield;
pub mod rational;
pub mod structured;
pub mod witness;

use std::fmt;

pub use crate::encoder::Witness;
pub use brute::{brute_force_enumerate, DEFAULT_BRUTE_CAP};
pub use fp::factor_over_prime_field;
pub use galois_probe::{galois_probe_rationals, ProbeReport, ProbeSettings, ProbeVerdict};
pub use rational::{rational_factor_smalldeg, RationalFactorization};
pub use structured::{
    structured_solve_automorphism, structured_solve_finite_field, structured_solve_subgroup, structured_solve_system,
    StructuredCaps,
};
pub use witness::{complete_witness, verify_witness, PredicateVerdict, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    SolvableWithWitness,
    UnsolvableProven,
    Unknown,
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::SolvableWithWitness => "solvable-with-witness",
            SolveStatus::UnsolvableProven => "unsolvable-proven",
            SolveStatus::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    Raw,
    Structured,
}

impl fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveMethod::Raw => "raw",
            SolveMethod::Structured => "structured",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub status: SolveStatus,
    /// Sorted by their serialization.
    pub witnesses: Vec<Witness>,
    pub search_space: u128,
    pub method: SolveMethod,
    pub notes: Vec<String>,
}

impl SolveReport {
    pub(crate) fn from_witnesses(mut witnesses: Vec<Witness>, search_space: u128, method: SolveMethod) -> Self {
        witnesses.sort_by_cached_key(|w| w.to_text(None));
        witnesses.dedup();
        let status = if witnesses.is_empty() {
            SolveStatus::UnsolvableProven
        } else {
            SolveStatus::SolvableWithWitness
        };
        SolveReport { status, witnesses, search_space, method, notes: Vec::new() }
    }

    pub fn is_solvable(&self) -> bool {
        self.status == SolveStatus::SolvableWithWitness
    }
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "status {}", self.status)?;
        writeln!(f, "method {}", self.method)?;
        writeln!(f, "search-space {}", self.search_space)?;
        writeln!(f, "witnesses {}", self.witnesses.len())?;
        for n in &self.notes {
            writeln!(f, "note {n}")?;
        }
        Ok(())
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { return out };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(permutations(5).len(), 120);
    }
}
