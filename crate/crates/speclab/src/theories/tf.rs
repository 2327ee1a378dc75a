//! The unary-function theory parameterized by a fixpoint-count table f:
//! a finite model of size n must have exactly f1(n) fixpoints of s,
//! where f1(n) counts the ones in the table's first n entries.
//!
//! Quantifier-free satisfiability turns out not to depend on f at all:
//! a cube is satisfiable exactly when it is satisfiable with s left
//! uninterpreted, which congruence closure decides directly.

use crate::cc;
use crate::error::Result;
use crate::interp::FiniteInterpretation;
use crate::logic::Cube;
use crate::params::FTable;

use super::Verdict;

/// Decides a cube over the one-unary-function signature. The table is
/// deliberately absent from the signature of this function.
pub fn decide(cube: &Cube) -> Result<Verdict> {
    Ok(Verdict::from_bool(cc::close(cube)?.sat))
}

/// Finite-model membership: the interpretation's fixpoint count under
/// s must equal f1 at its size. Errors when the size falls outside the
/// stored table prefix.
pub fn member(interp: &FiniteInterpretation, f: &FTable) -> Result<bool> {
    let want = f.f1(interp.domain_size)?;
    Ok(interp.fixpoint_count("s")? == want)
}
