//! Sets of model cardinalities and the intersection-emptiness decisions
//! the combination procedures are built on.
//!
//! A spectrum collects the countable cardinalities (finite sizes and
//! ℵ₀) of the theory models of a formula. The shapes that actually
//! arise here are finite sets, cofinite sets (which always contain ℵ₀),
//! and the ℵ₀-only spectrum of theories without finite models.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A countable cardinality: a positive integer or ℵ₀.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Card {
    Fin(u32),
    Aleph0,
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Card::Fin(n) => write!(f, "{n}"),
            Card::Aleph0 => write!(f, "ℵ0"),
        }
    }
}

/// An interval of finite cardinalities, or a tail extending through all
/// finite cardinalities from `lo` up and including ℵ₀.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalPiece {
    pub lo: u32,
    /// `None` marks the infinite tail.
    pub hi: Option<u32>,
}

impl IntervalPiece {
    pub fn bounded(lo: u32, hi: u32) -> Self {
        assert!(lo >= 1 && lo <= hi);
        IntervalPiece { lo, hi: Some(hi) }
    }

    pub fn tail(lo: u32) -> Self {
        assert!(lo >= 1);
        IntervalPiece { lo, hi: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Spectrum {
    /// Exactly the listed finite cardinalities; never contains ℵ₀.
    Finite(BTreeSet<u32>),
    /// Everything (finite and ℵ₀) except the listed finite
    /// cardinalities. The stored exclusion set is kept minimal.
    CoFinite(BTreeSet<u32>),
    /// Only ℵ₀: the theory satisfies the formula but has no finite
    /// models of it. This shape never comes out of a gentle adapter.
    InfinityOnly,
}

impl Spectrum {
    pub fn empty() -> Spectrum {
        Spectrum::Finite(BTreeSet::new())
    }

    pub fn finite<I: IntoIterator<Item = u32>>(members: I) -> Spectrum {
        Spectrum::Finite(members.into_iter().inspect(|&k| assert!(k >= 1)).collect())
    }

    pub fn cofinite<I: IntoIterator<Item = u32>>(excluded: I) -> Spectrum {
        Spectrum::CoFinite(excluded.into_iter().inspect(|&k| assert!(k >= 1)).collect())
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Spectrum::Finite(s) if s.is_empty())
    }

    pub fn contains(&self, card: Card) -> bool {
        match (self, card) {
            (Spectrum::Finite(s), Card::Fin(k)) => s.contains(&k),
            (Spectrum::Finite(_), Card::Aleph0) => false,
            (Spectrum::CoFinite(s), Card::Fin(k)) => !s.contains(&k),
            (Spectrum::CoFinite(_), Card::Aleph0) => true,
            (Spectrum::InfinityOnly, Card::Fin(_)) => false,
            (Spectrum::InfinityOnly, Card::Aleph0) => true,
        }
    }

    /// The finite members in `[1, max_k]`.
    pub fn finite_members_upto(&self, max_k: u32) -> BTreeSet<u32> {
        (1..=max_k).filter(|&k| self.contains(Card::Fin(k))).collect()
    }

    /// For a cofinite spectrum, the smallest `n` with the whole tail
    /// `[n, ∞)` inside the spectrum.
    pub fn tail_start(&self) -> Option<u32> {
        match self {
            Spectrum::CoFinite(s) => Some(s.iter().next_back().map_or(1, |&m| m + 1)),
            _ => None,
        }
    }

    /// Union of two spectra. Errors on the one shape mixture that the
    /// representation cannot express (ℵ₀ plus a nonempty finite set
    /// without a tail); the catalogue never produces it.
    pub fn union(&self, other: &Spectrum) -> Result<Spectrum> {
        use Spectrum::*;
        Ok(match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.union(b).copied().collect()),
            (Finite(a), CoFinite(b)) | (CoFinite(b), Finite(a)) => {
                CoFinite(b.difference(a).copied().collect())
            }
            (CoFinite(a), CoFinite(b)) => CoFinite(a.intersection(b).copied().collect()),
            (InfinityOnly, InfinityOnly) => InfinityOnly,
            (InfinityOnly, Finite(s)) | (Finite(s), InfinityOnly) if s.is_empty() => InfinityOnly,
            (InfinityOnly, CoFinite(s)) | (CoFinite(s), InfinityOnly) => CoFinite(s.clone()),
            (InfinityOnly, Finite(_)) | (Finite(_), InfinityOnly) => {
                return Err(Error::Domain(
                    "union of an ℵ0-only spectrum with a nonempty finite spectrum \
                     is not representable"
                        .into(),
                ))
            }
        })
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn set(f: &mut fmt::Formatter<'_>, s: &BTreeSet<u32>) -> fmt::Result {
            write!(f, "{{")?;
            for (i, k) in s.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{k}")?;
            }
            write!(f, "}}")
        }
        match self {
            Spectrum::Finite(s) => set(f, s),
            Spectrum::CoFinite(s) => {
                write!(f, "co")?;
                set(f, s)
            }
            Spectrum::InfinityOnly => write!(f, "{{ℵ0}}"),
        }
    }
}

/// Collapses a union of interval pieces into a normalized spectrum:
/// finite when no piece carries the infinite tail, cofinite otherwise
/// (the exclusion set is then the finite complement of the union).
pub fn normalize(pieces: &[IntervalPiece]) -> Spectrum {
    let tail_lo = pieces.iter().filter(|p| p.hi.is_none()).map(|p| p.lo).min();
    match tail_lo {
        None => {
            let mut members = BTreeSet::new();
            for p in pieces {
                for k in p.lo..=p.hi.unwrap() {
                    members.insert(k);
                }
            }
            Spectrum::Finite(members)
        }
        Some(tail_lo) => {
            // Everything at or past tail_lo is in; below it, a finite
            // cardinal is excluded unless some piece covers it.
            let mut excluded = BTreeSet::new();
            for k in 1..tail_lo {
                let covered = pieces.iter().any(|p| p.lo <= k && p.hi.map_or(true, |hi| k <= hi));
                if !covered {
                    excluded.insert(k);
                }
            }
            Spectrum::CoFinite(excluded)
        }
    }
}

/// Whether two spectra denote disjoint sets of cardinalities.
pub fn intersect_empty(a: &Spectrum, b: &Spectrum) -> bool {
    use Spectrum::*;
    match (a, b) {
        (Finite(x), Finite(y)) => x.is_disjoint(y),
        (Finite(x), CoFinite(y)) | (CoFinite(y), Finite(x)) => x.is_subset(y),
        // Both contain ℵ₀ and all large enough finite cardinalities.
        (CoFinite(_), CoFinite(_)) => false,
        (InfinityOnly, Finite(_)) | (Finite(_), InfinityOnly) => true,
        (InfinityOnly, CoFinite(_)) | (CoFinite(_), InfinityOnly) => false,
        (InfinityOnly, InfinityOnly) => false,
    }
}

/// Disjointness of a gentle spectrum against a theory reached only
/// through membership probes: `probe(k)` answers whether k is in the
/// other spectrum, and `inf_tail(n)` whether the other theory has a
/// model of size at least n (possibly infinite). The tail probe is
/// required exactly when `a` is cofinite.
pub fn intersect_empty_vs_cfs(
    a: &Spectrum,
    probe: &mut dyn FnMut(u32) -> Result<bool>,
    inf_tail: Option<&mut dyn FnMut(u32) -> Result<bool>>,
) -> Result<bool> {
    match a {
        Spectrum::Finite(s) => {
            for &k in s {
                if probe(k)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Spectrum::CoFinite(excluded) => {
            let inf_tail = inf_tail.ok_or_else(|| {
                Error::Domain(
                    "a cofinite spectrum needs the large-model probe to decide disjointness"
                        .into(),
                )
            })?;
            let tail = a.tail_start().unwrap();
            for k in 1..tail {
                if !excluded.contains(&k) && probe(k)? {
                    return Ok(false);
                }
            }
            Ok(!inf_tail(tail)?)
        }
        Spectrum::InfinityOnly => Err(Error::Domain(
            "an ℵ0-only spectrum has no gentle shape; use the minimal-model combiner".into(),
        )),
    }
}
