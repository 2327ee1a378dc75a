//! The orbit-bounded theory over one unary function t and one constant
//! a: whenever the orbit of a under t has exactly n elements, the
//! domain has at most F(n) + n elements, for a configured table F.

use std::ops::ControlFlow;

use crate::error::Result;
use crate::logic::Cube;
use crate::params::FRelation;

use super::orbflat::{flatten, for_each_consistent_partition};
use super::Verdict;

/// Decides a cube by enumerating the literal-satisfying, successor-
/// consistent partitions of its flattened chain variables. A partition
/// with n classes whose constant orbit closes into b classes admits a
/// model iff F(b) >= n - b (room for the classes outside the orbit);
/// that holds without consulting the table when n - b <= 1, and a
/// partition whose orbit runs off a chain end always admits models,
/// because the dangling orbit extends to any length needed.
///
/// When no partition is satisfiable but some could not consult the
/// table (missing row), the missing-row error is reported rather than
/// a verdict.
pub fn decide(cube: &Cube, frel: &FRelation) -> Result<Verdict> {
    let ff = flatten(cube)?;
    let mut sat = false;
    let mut first_err = None;
    let mut buf = Vec::new();
    for_each_consistent_partition(&ff, |view| {
        let (b0, total) = view.orbit_from_const(&mut buf);
        if !total {
            sat = true;
            return Ok(ControlFlow::Break(()));
        }
        let gap = (view.n_classes - b0) as u32;
        match frel.geq(b0 as u32, gap) {
            Ok(true) => {
                sat = true;
                return Ok(ControlFlow::Break(()));
            }
            Ok(false) => {}
            Err(e) => {
                if first_err.is_none() {
                    first_err = Some(e);
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    })?;
    if sat {
        return Ok(Verdict::Sat);
    }
    match first_err {
        Some(e) => Err(e),
        None => Ok(Verdict::Unsat),
    }
}

/// Whether the cube has an infinite model: some consistent partition
/// either lets the constant's orbit run off a chain end (the orbit then
/// extends to an infinite one, voiding every finite cap) or closes the
/// orbit at a width whose table row is the infinite marker.
pub fn has_infinite_model(cube: &Cube, frel: &FRelation) -> Result<bool> {
    let ff = flatten(cube)?;
    let mut found = false;
    let mut first_err = None;
    let mut buf = Vec::new();
    for_each_consistent_partition(&ff, |view| {
        let (b0, total) = view.orbit_from_const(&mut buf);
        if !total {
            found = true;
            return Ok(ControlFlow::Break(()));
        }
        match frel.row(b0 as u32) {
            Ok(crate::spectra::Card::Aleph0) => {
                found = true;
                return Ok(ControlFlow::Break(()));
            }
            Ok(crate::spectra::Card::Fin(_)) => {}
            Err(e) => {
                if first_err.is_none() {
                    first_err = Some(e);
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    })?;
    if found {
        return Ok(true);
    }
    match first_err {
        Some(e) => Err(e),
        None => Ok(false),
    }
}
