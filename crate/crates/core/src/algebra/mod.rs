//! Exact scalar, polynomial and quotient-ring arithmetic.

pub mod poly;
pub mod quotient;
pub mod ring;
pub mod scalar;

pub use poly::{poly_arith, ArithOp, Monomial, MultiPoly, Var};
pub use quotient::{
    clear_denominators, compose_mod, compose_mod_scaled, divide_monic, eval_homogeneous, reduce_mod_monic, Modulus,
    QuotientElement,
};
pub use ring::{BaseRing, RingDescriptor};
pub use scalar::{Domain, Scalar};
