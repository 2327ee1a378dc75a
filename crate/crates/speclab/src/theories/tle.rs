//! The theory whose axiom for each predicate index n caps the domain at
//! F(n) elements, for a configured partial table F mapping indices to
//! bounds or to the infinite marker.

use crate::error::Result;
use crate::logic::Cube;
use crate::params::FRelation;
use crate::search::min_eq_model_size;
use crate::spectra::Card;

use super::{split_pred_cube, Verdict};

/// Decides a cube: unsatisfiable when the equality part is, or when
/// some predicate occurs with both polarities; otherwise satisfiable
/// iff every positive P_n leaves room for the m elements the equality
/// part forces, i.e. F(n) >= m.
pub fn decide(cube: &Cube, frel: &FRelation) -> Result<Verdict> {
    let split = split_pred_cube(cube)?;
    let m = match min_eq_model_size(&split.eq_part)? {
        Some(m) => m,
        None => return Ok(Verdict::Unsat),
    };
    if !split.polarity_consistent() {
        return Ok(Verdict::Unsat);
    }
    for &n in &split.positives {
        if !frel.geq(n, m)? {
            return Ok(Verdict::Unsat);
        }
    }
    Ok(Verdict::Sat)
}

/// Exact finite-spectrum membership: size k fits iff the equality part
/// admits it and every positive P_n has F(n) >= k.
pub fn contains_finite(cube: &Cube, k: u32, frel: &FRelation) -> Result<bool> {
    let split = split_pred_cube(cube)?;
    let m = match min_eq_model_size(&split.eq_part)? {
        Some(m) => m,
        None => return Ok(false),
    };
    if k < m || !split.polarity_consistent() {
        return Ok(false);
    }
    for &n in &split.positives {
        if !frel.geq(n, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the cube has an infinite model: satisfiable with every
/// positive index having an infinite bound. Requires explicit table
/// rows for the positive indices.
pub fn has_infinite_model(cube: &Cube, frel: &FRelation) -> Result<bool> {
    let split = split_pred_cube(cube)?;
    if min_eq_model_size(&split.eq_part)?.is_none() || !split.polarity_consistent() {
        return Ok(false);
    }
    for &n in &split.positives {
        if frel.row(n)? != Card::Aleph0 {
            return Ok(false);
        }
    }
    Ok(true)
}
