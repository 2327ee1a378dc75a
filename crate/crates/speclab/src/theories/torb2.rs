//! The orbit-cover theory over one unary function t and one constant a:
//! whenever the orbit of a under t has exactly n elements, the domain
//! has at most 2n elements. Its spectrum is computable piecewise from
//! the flattened-arrangement analysis, and that makes it decidable.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::cc;
use crate::error::Result;
use crate::logic::{Atom, Cube, Literal, Term};
use crate::spectra::{normalize, Card, IntervalPiece, Spectrum};

use super::orbflat::{flatten, for_each_consistent_partition};
use super::{Verdict, Witness};

/// Computes the exact cardinality spectrum of a cube.
///
/// Every literal-satisfying, successor-consistent partition E of the
/// flattened chain variables contributes sizes: with n the number of
/// classes and b the orbit of the constant's class, a closed orbit
/// contributes the interval [n, 2b] (kept only when 2b >= n), and an
/// orbit that runs off a chain end contributes every size from n up,
/// infinite models included, since the dangling chain can be extended
/// freely. The union of the pieces is the spectrum.
pub fn spectrum(cube: &Cube) -> Result<Spectrum> {
    let ff = flatten(cube)?;
    let mut pieces = Vec::new();
    let mut buf = Vec::new();
    for_each_consistent_partition(&ff, |view| {
        let (b0, total) = view.orbit_from_const(&mut buf);
        let n = view.n_classes;
        if 2 * b0 >= n {
            pieces.push(if total {
                IntervalPiece::bounded(n as u32, 2 * b0 as u32)
            } else {
                IntervalPiece::tail(n as u32)
            });
        }
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(normalize(&pieces))
}

pub fn decide(cube: &Cube) -> Result<Verdict> {
    if let Some(sat) = pinned_verdict(cube)? {
        return Ok(Verdict::from_bool(sat));
    }
    Ok(Verdict::from_bool(!spectrum(cube)?.is_empty()))
}

pub fn contains_finite(cube: &Cube, k: u32) -> Result<bool> {
    Ok(spectrum(cube)?.contains(Card::Fin(k)))
}

/// Decides a fully pinned cube without enumerating partitions.
///
/// Applies when the cube mentions the constant, relates every pair of
/// its variables by an equality literal of some polarity, and its
/// congruence closure names every term class by a variable. Then the
/// classes are exactly the distinct elements any model realizes among
/// named points, so the orbit condition can be read off the closure: an
/// orbit that closes into a cycle of b classes over n classes total is
/// satisfiable iff 2b >= n, and an orbit that leaves the pinned terms
/// can always be extended far enough to cover any needed domain.
///
/// Witness cubes conjoined with an arrangement always take this path,
/// which matters because their chain variables re-flatten far past the
/// enumeration limit.
pub fn pinned_verdict(cube: &Cube) -> Result<Option<bool>> {
    let mut mentions_const = false;
    let mut vars = BTreeSet::new();
    let mut pinned_pairs = BTreeSet::new();
    for lit in cube.iter() {
        let (l, r) = match &lit.atom {
            Atom::Eq(l, r) => (l, r),
            Atom::Pred(_) => return Ok(None),
        };
        for side in [l, r] {
            side.vars_into(&mut vars);
            if side.mentions_constant("a") {
                mentions_const = true;
            }
        }
        if let (Term::Var(u), Term::Var(v)) = (l, r) {
            pinned_pairs.insert((u.clone().min(v.clone()), u.clone().max(v.clone())));
        }
    }
    if !mentions_const {
        return Ok(None);
    }
    let vars: Vec<&String> = vars.iter().collect();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            if !pinned_pairs.contains(&(vars[i].clone(), vars[j].clone())) {
                return Ok(None);
            }
        }
    }
    let closure = cc::close(cube)?;
    if !closure.sat {
        return Ok(Some(false));
    }
    for root in closure.roots() {
        if !closure.class_has_var(root) {
            return Ok(None);
        }
    }
    let start = closure
        .root_of_term(&Term::constant("a"))
        .expect("constant occurs in the cube");
    let mut visited = BTreeSet::new();
    let mut cur = start;
    loop {
        if !visited.insert(cur) {
            // Orbit closed: its length is pinned, so the axiom caps the
            // domain at twice the cycle while the classes force at least
            // one element each.
            return Ok(Some(2 * visited.len() >= closure.n_classes()));
        }
        match closure.succ_of(cur, "t") {
            Some(next) => cur = next,
            // Orbit leaves the pinned terms: extend it with fresh
            // elements until the cap is met.
            None => return Ok(Some(true)),
        }
    }
}

/// Builds the strong finite witness of a cube: every applied power of
/// every variable gets a chain variable equated to it, and the constant
/// gets a chain long enough to outrun any merge of the variable chains.
/// Chain variables are named so they sort before user variables.
pub fn witness(cube: &Cube) -> Result<Witness> {
    super::reject_generated_vars(cube)?;
    let ff = flatten(cube)?;
    let mut fresh = Vec::new();
    let mut lits = Vec::new();
    let mut chain = |chain_no: usize, base: Term, len: usize, out: &mut Vec<Literal>| {
        for j in 0..len {
            let name = format!("_c{chain_no}_{j}");
            out.push(Literal::eq(
                Term::var(&name),
                Term::iterate("t", base.clone(), j as u32),
            ));
            fresh.push(name);
        }
    };
    for (i, v) in ff.var_names.iter().enumerate() {
        chain(i + 1, Term::var(v), ff.chain_lens[i + 1], &mut lits);
    }
    chain(0, Term::constant("a"), ff.chain_lens[0], &mut lits);
    Ok(Witness { cube: cube.and(&Cube(lits)), fresh })
}
