//! The pure-equality theory whose only models are infinite. Every
//! equality-satisfiable cube is satisfiable here (in an infinite
//! model), no cube has a finite model, and the minimal model of a
//! satisfiable cube is always the infinite one.

use crate::error::{Error, Result};
use crate::logic::Cube;
use crate::search::min_eq_model_size;
use crate::spectra::{Card, Spectrum};

use super::Verdict;

pub fn decide(cube: &Cube) -> Result<Verdict> {
    Ok(Verdict::from_bool(min_eq_model_size(cube)?.is_some()))
}

pub fn minmod(cube: &Cube) -> Result<Card> {
    if decide(cube)?.is_sat() {
        Ok(Card::Aleph0)
    } else {
        Err(Error::Domain(
            "minimal model requested for an unsatisfiable cube".into(),
        ))
    }
}

pub fn infinitely_decidable(cube: &Cube) -> Result<Verdict> {
    decide(cube)
}

pub fn spectrum(cube: &Cube) -> Result<Spectrum> {
    Ok(if decide(cube)?.is_sat() {
        Spectrum::InfinityOnly
    } else {
        Spectrum::empty()
    })
}
