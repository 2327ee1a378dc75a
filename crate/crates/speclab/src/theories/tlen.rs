//! The pure-equality theory with one axiom: the domain has at most n
//! elements, for a fixed parameter n. Its spectra are the integer
//! intervals [m, n].

use crate::error::{Error, Result};
use crate::logic::Cube;
use crate::search::min_eq_model_size;
use crate::spectra::{Card, Spectrum};

use super::Verdict;

pub fn check_bound(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Param("the size bound must be at least 1".into()));
    }
    Ok(())
}

/// Spectrum of a pure-equality cube under the size-n cap: {m,…,n} with
/// m the least size the cube's equalities admit, empty when the cube is
/// unsatisfiable or needs more than n elements.
pub fn spectrum(cube: &Cube, n: u32) -> Result<Spectrum> {
    check_bound(n)?;
    match min_eq_model_size(cube)? {
        Some(m) if m <= n => Ok(Spectrum::finite(m..=n)),
        _ => Ok(Spectrum::empty()),
    }
}

pub fn decide(cube: &Cube, n: u32) -> Result<Verdict> {
    Ok(Verdict::from_bool(!spectrum(cube, n)?.is_empty()))
}

pub fn contains_finite(cube: &Cube, k: u32, n: u32) -> Result<bool> {
    Ok(spectrum(cube, n)?.contains(Card::Fin(k)))
}
