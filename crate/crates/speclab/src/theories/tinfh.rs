//! The h-indexed variant of the infinite theory: P_1 pins the domain to
//! a single element, and for every n with h(n)=1 the axiom P_1 → ¬P_n
//! links the indices. Satisfiability turns out not to depend on h: a
//! cube is satisfiable iff its equality part is, its predicate
//! polarities are consistent, and a positive P_1 comes with a size-1
//! equality part and no other positive predicate.

use crate::error::Result;
use crate::logic::Cube;
use crate::search::min_eq_model_size;

use super::{split_pred_cube, Verdict};

/// Decides a cube. The h table is deliberately not a parameter: the
/// satisfiability conditions are h-free.
pub fn decide(cube: &Cube) -> Result<Verdict> {
    let split = split_pred_cube(cube)?;
    let m = match min_eq_model_size(&split.eq_part)? {
        Some(m) => m,
        None => return Ok(Verdict::Unsat),
    };
    if !split.polarity_consistent() {
        return Ok(Verdict::Unsat);
    }
    if split.positives.contains(&1) && (m != 1 || split.positives.len() > 1) {
        return Ok(Verdict::Unsat);
    }
    Ok(Verdict::Sat)
}

/// Whether the cube is satisfiable in an infinite model: satisfiable
/// without a positive P_1 (P_1 forces size one).
pub fn infinitely_decidable(cube: &Cube) -> Result<Verdict> {
    if !decide(cube)?.is_sat() {
        return Ok(Verdict::Unsat);
    }
    let split = split_pred_cube(cube)?;
    Ok(Verdict::from_bool(!split.positives.contains(&1)))
}
