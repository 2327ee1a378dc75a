//! The theory catalogue: decision procedures, spectra, witnesses, and
//! related functions for each of the parametric theories this crate
//! ships, plus the shared plumbing they lean on.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::logic::{Atom, Cube, Literal, Term};

pub mod orbflat;
pub mod teq;
pub mod tf;
pub mod tinf;
pub mod tinfh;
pub mod tle;
pub mod tlen;
pub mod tleorb;
pub mod torb2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Sat,
    Unsat,
}

impl Verdict {
    pub fn from_bool(sat: bool) -> Verdict {
        if sat {
            Verdict::Sat
        } else {
            Verdict::Unsat
        }
    }

    pub fn is_sat(self) -> bool {
        self == Verdict::Sat
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Sat => write!(f, "sat"),
            Verdict::Unsat => write!(f, "unsat"),
        }
    }
}

/// A witness cube together with the fresh variables it introduced.
#[derive(Debug, Clone)]
pub struct Witness {
    pub cube: Cube,
    pub fresh: Vec<String>,
}

/// A cube over the indexed-predicate signature, split into its equality
/// part and its predicate polarities.
#[derive(Debug, Clone)]
pub struct PredSplit {
    pub eq_part: Cube,
    pub positives: BTreeSet<u32>,
    pub negatives: BTreeSet<u32>,
}

impl PredSplit {
    pub fn polarity_consistent(&self) -> bool {
        self.positives.is_disjoint(&self.negatives)
    }
}

/// Splits a cube into variable equalities and predicate literals,
/// rejecting any term that is not a variable (the indexed-predicate
/// signature has no functions or constants).
pub fn split_pred_cube(cube: &Cube) -> Result<PredSplit> {
    let mut eq_part = Cube::default();
    let mut positives = BTreeSet::new();
    let mut negatives = BTreeSet::new();
    for lit in cube.iter() {
        match &lit.atom {
            Atom::Pred(k) => {
                if lit.positive {
                    positives.insert(*k);
                } else {
                    negatives.insert(*k);
                }
            }
            Atom::Eq(l, r) => {
                for side in [l, r] {
                    if !matches!(side, Term::Var(_)) {
                        return Err(Error::Signature(format!(
                            "term '{side}' is not a variable; this signature has no \
                             functions or constants"
                        )));
                    }
                }
                eq_part.push(lit.clone());
            }
        }
    }
    Ok(PredSplit { eq_part, positives, negatives })
}

/// Rejects cubes containing generated (underscore-prefixed) variables.
/// Witness builders call this so chains are never stacked on top of a
/// cube that already carries chain variables.
pub fn reject_generated_vars(cube: &Cube) -> Result<()> {
    if let Some(v) = cube.vars().into_iter().find(|v| v.starts_with('_')) {
        return Err(Error::Domain(format!(
            "cube already contains the generated variable '{v}'"
        )));
    }
    Ok(())
}

pub(crate) fn var_literal(positive: bool, a: &str, b: &str) -> Literal {
    Literal { positive, atom: Atom::Eq(Term::var(a), Term::var(b)) }
}
