//! Variable abstraction: splits a cube over a union of two disjoint
//! signatures into two pure cubes that are jointly equisatisfiable with
//! the original. Alien subterms are replaced by fresh variables whose
//! defining equations go to the component that owns the subterm's head.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::logic::{Atom, Cube, Literal, Signature, Term, fresh_var};

#[derive(Debug, Clone)]
pub struct PurifyOutcome {
    pub cube1: Cube,
    pub cube2: Cube,
    /// Variables occurring in both output cubes.
    pub shared: BTreeSet<String>,
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    One,
    Two,
}

impl Side {
    fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }
}

struct Splitter<'a> {
    sig1: &'a Signature,
    sig2: &'a Signature,
    cube1: Cube,
    cube2: Cube,
}

impl<'a> Splitter<'a> {
    fn owner_symbol(&self, sym: &str) -> Result<Side> {
        if self.sig1.has_function(sym) || self.sig1.has_constant(sym) {
            Ok(Side::One)
        } else if self.sig2.has_function(sym) || self.sig2.has_constant(sym) {
            Ok(Side::Two)
        } else {
            Err(Error::Signature(format!("symbol '{sym}' belongs to neither signature")))
        }
    }

    fn owner_term(&self, t: &Term) -> Result<Option<Side>> {
        match t {
            Term::Var(_) => Ok(None),
            Term::Const(c) => self.owner_symbol(c).map(Some),
            Term::App(f, _) => self.owner_symbol(f).map(Some),
        }
    }

    fn out(&mut self, side: Side) -> &mut Cube {
        match side {
            Side::One => &mut self.cube1,
            Side::Two => &mut self.cube2,
        }
    }

    /// Rewrites `t` so that it only uses symbols of `home`, emitting a
    /// defining equation to the other component for each maximal alien
    /// subterm.
    fn place(&mut self, t: &Term, home: Side) -> Result<Term> {
        match self.owner_term(t)? {
            None => Ok(t.clone()),
            Some(side) if side == home => match t {
                Term::App(f, arg) => {
                    let placed = self.place(arg, home)?;
                    Ok(Term::app(f.clone(), placed))
                }
                other => Ok(other.clone()),
            },
            Some(alien_side) => {
                let rewritten = self.place(t, alien_side)?;
                let v = fresh_var();
                self.out(alien_side).push(Literal::eq(Term::var(v.clone()), rewritten));
                debug_assert!(alien_side == home.other());
                Ok(Term::var(v))
            }
        }
    }

    fn literal(&mut self, lit: &Literal) -> Result<()> {
        match &lit.atom {
            Atom::Pred(k) => {
                let side = match (&self.sig1.predicate_family, &self.sig2.predicate_family) {
                    (Some(_), _) => Side::One,
                    (None, Some(_)) => Side::Two,
                    (None, None) => {
                        return Err(Error::Signature(
                            "indexed predicate used but neither signature declares the family"
                                .into(),
                        ))
                    }
                };
                self.out(side).push(Literal { positive: lit.positive, atom: Atom::Pred(*k) });
                Ok(())
            }
            Atom::Eq(l, r) => {
                // An equality lives where its topmost symbols live;
                // variable-only equalities go to component 1 by
                // convention (the combination procedures conjoin the
                // shared arrangement to both sides, so the choice does
                // not matter).
                let home = match self.owner_term(l)? {
                    Some(s) => s,
                    None => self.owner_term(r)?.unwrap_or(Side::One),
                };
                let l = self.place(l, home)?;
                let r = self.place(r, home)?;
                self.out(home).push(Literal { positive: lit.positive, atom: Atom::Eq(l, r) });
                Ok(())
            }
        }
    }
}

pub fn purify(mixed: &Cube, sig1: &Signature, sig2: &Signature) -> Result<PurifyOutcome> {
    if !sig1.is_disjoint_from(sig2) {
        return Err(Error::Signature(format!(
            "signatures {} and {} are not disjoint",
            sig1.name, sig2.name
        )));
    }
    let mut sp = Splitter { sig1, sig2, cube1: Cube::default(), cube2: Cube::default() };
    for lit in mixed.iter() {
        sp.literal(lit)?;
    }
    let v1 = sp.cube1.vars();
    let v2 = sp.cube2.vars();
    let shared = v1.intersection(&v2).cloned().collect();
    Ok(PurifyOutcome { cube1: sp.cube1, cube2: sp.cube2, shared })
}
