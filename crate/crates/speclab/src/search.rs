//! Exhaustive finite model search: the ground-truth oracle the rest of
//! the crate is tested against.
//!
//! The search enumerates candidate interpretations in one fixed order:
//! constant values first, then function tables (lexicographic,
//! concatenated in symbol order), then predicate valuations (ascending
//! index, false before true), then variable assignments (sorted names,
//! ascending values). The first model in that order is canonical, so
//! equal inputs always produce byte-equal outputs. Membership is
//! checked before assignments are explored, which the membership layer
//! justifies by never reading assignments.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::interp::FiniteInterpretation;
use crate::logic::{Atom, Cube, Literal, QFFormula, Signature};
use crate::member::TheoryMembership;

#[derive(Debug, Clone, Copy)]
pub struct SearchOpts {
    /// Hard cap on the candidate size k.
    pub size_limit: u32,
    /// Fix the first constant (in symbol order) to element 0. Sound
    /// for satisfiability because domains can be relabeled.
    pub prune_isomorphic: bool,
    /// Accept only models whose variable values cover the whole
    /// domain.
    pub require_named_domain: bool,
}

impl Default for SearchOpts {
    fn default() -> Self {
        SearchOpts { size_limit: 7, prune_isomorphic: false, require_named_domain: false }
    }
}

impl SearchOpts {
    /// Defaults plus isomorphism pruning: what the spectrum oracle uses.
    pub fn pruned() -> Self {
        SearchOpts { prune_isomorphic: true, ..Default::default() }
    }

    pub fn with_limit(mut self, limit: u32) -> Self {
        self.size_limit = limit;
        self
    }

    pub fn named_domain(mut self) -> Self {
        self.require_named_domain = true;
        self
    }
}

/// A multi-digit counter in lexicographic order (last digit fastest).
struct Odometer {
    digits: Vec<u32>,
    radix: u32,
    fixed_prefix: usize,
    fresh: bool,
}

impl Odometer {
    fn new(len: usize, radix: u32, fixed_prefix: usize) -> Odometer {
        Odometer { digits: vec![0; len], radix, fixed_prefix, fresh: true }
    }

    fn next(&mut self) -> Option<&[u32]> {
        if self.fresh {
            self.fresh = false;
            return Some(&self.digits);
        }
        let mut i = self.digits.len();
        while i > self.fixed_prefix {
            i -= 1;
            if self.digits[i] + 1 < self.radix {
                self.digits[i] += 1;
                for d in self.digits[i + 1..].iter_mut() {
                    *d = 0;
                }
                return Some(&self.digits);
            }
        }
        None
    }
}

fn pred_indices(f: &QFFormula, out: &mut BTreeSet<u32>) {
    match f {
        QFFormula::Lit(Literal { atom: Atom::Pred(k), .. }) => {
            out.insert(*k);
        }
        QFFormula::Lit(_) => {}
        QFFormula::Not(inner) => pred_indices(inner, out),
        QFFormula::And(fs) | QFFormula::Or(fs) => {
            for f in fs {
                pred_indices(f, out);
            }
        }
    }
}

enum Body {
    /// Literals bucketed by the assignment depth at which they become
    /// ground: bucket 0 needs no variables, bucket d needs the first d
    /// variables in sorted order.
    Cube(Vec<Vec<Literal>>),
    Tree(QFFormula),
}

/// Searches for a size-`k` model of `formula` that the membership check
/// accepts. Returns the canonical (first-in-order) model, or `None`.
pub fn find_model(
    formula: &QFFormula,
    sig: &Signature,
    k: u32,
    member: &TheoryMembership,
    opts: &SearchOpts,
) -> Result<Option<FiniteInterpretation>> {
    if k == 0 {
        return Err(Error::Domain("domains are nonempty; size 0 makes no sense".into()));
    }
    if k > opts.size_limit {
        return Err(Error::Limit(format!(
            "model search at size {k} exceeds the configured ceiling {}",
            opts.size_limit
        )));
    }

    let vars: Vec<String> = formula.vars().into_iter().collect();
    if opts.require_named_domain && (vars.len() as u32) < k {
        return Ok(None);
    }

    let mut preds = BTreeSet::new();
    pred_indices(formula, &mut preds);
    let preds: Vec<u32> = preds.into_iter().collect();

    let consts: Vec<String> = sig.constants.iter().cloned().collect();
    let funcs: Vec<String> = sig.unary_functions.iter().cloned().collect();

    let body = match formula.as_cube() {
        Some(cube) => {
            let mut buckets: Vec<Vec<Literal>> = vec![Vec::new(); vars.len() + 1];
            for lit in cube.0 {
                let mut lv = BTreeSet::new();
                lit.vars_into(&mut lv);
                let depth = lv
                    .iter()
                    .map(|v| vars.iter().position(|w| w == v).unwrap() + 1)
                    .max()
                    .unwrap_or(0);
                buckets[depth].push(lit);
            }
            Body::Cube(buckets)
        }
        None => Body::Tree(formula.clone()),
    };

    // The maps are built once and updated in place: the enumeration
    // below touches millions of candidates, and rebuilding keyed maps
    // per candidate would dominate the runtime.
    let mut interp = FiniteInterpretation::new(k);
    for c in &consts {
        interp.const_values.insert(c.clone(), 0);
    }
    for f in &funcs {
        interp.func_tables.insert(f.clone(), vec![0; k as usize]);
    }
    for p in &preds {
        interp.pred_values.insert(*p, false);
    }
    for v in &vars {
        interp.var_assign.insert(v.clone(), 0);
    }

    let fixed = if opts.prune_isomorphic && !consts.is_empty() { 1 } else { 0 };
    let mut const_odo = Odometer::new(consts.len(), k, fixed);
    while let Some(cvals) = const_odo.next() {
        for (c, &v) in consts.iter().zip(cvals) {
            *interp.const_values.get_mut(c).unwrap() = v;
        }

        let mut table_odo = Odometer::new(funcs.len() * k as usize, k, 0);
        while let Some(cells) = table_odo.next() {
            for (i, f) in funcs.iter().enumerate() {
                interp
                    .func_tables
                    .get_mut(f)
                    .unwrap()
                    .copy_from_slice(&cells[i * k as usize..(i + 1) * k as usize]);
            }

            let mut pred_odo = Odometer::new(preds.len(), 2, 0);
            while let Some(pvals) = pred_odo.next() {
                for (p, &b) in preds.iter().zip(pvals) {
                    *interp.pred_values.get_mut(p).unwrap() = b == 1;
                }

                if !member.accepts(&interp)? {
                    continue;
                }
                match &body {
                    Body::Cube(buckets) => {
                        if !eval_bucket(&interp, &buckets[0])? {
                            continue;
                        }
                        if assign_cube(&mut interp, &vars, buckets, 0, k, opts)? {
                            return Ok(Some(interp));
                        }
                    }
                    Body::Tree(tree) => {
                        if assign_tree(&mut interp, &vars, tree, 0, k, opts)? {
                            return Ok(Some(interp));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn eval_bucket(m: &FiniteInterpretation, lits: &[Literal]) -> Result<bool> {
    for lit in lits {
        if !m.eval_literal(lit)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn covers_domain(m: &FiniteInterpretation, k: u32) -> bool {
    let mut seen = vec![false; k as usize];
    for &v in m.var_assign.values() {
        seen[v as usize] = true;
    }
    seen.into_iter().all(|b| b)
}

fn assign_cube(
    m: &mut FiniteInterpretation,
    vars: &[String],
    buckets: &[Vec<Literal>],
    depth: usize,
    k: u32,
    opts: &SearchOpts,
) -> Result<bool> {
    if depth == vars.len() {
        return Ok(!opts.require_named_domain || covers_domain(m, k));
    }
    for v in 0..k {
        // The key is pre-seeded; stale values from abandoned branches
        // are harmless because the buckets only expose a literal once
        // all its variables sit at the current depth or above.
        *m.var_assign.get_mut(&vars[depth]).unwrap() = v;
        if eval_bucket(m, &buckets[depth + 1])?
            && assign_cube(m, vars, buckets, depth + 1, k, opts)?
        {
            return Ok(true);
        }
    }
    Ok(false)
}

fn assign_tree(
    m: &mut FiniteInterpretation,
    vars: &[String],
    tree: &QFFormula,
    depth: usize,
    k: u32,
    opts: &SearchOpts,
) -> Result<bool> {
    if depth == vars.len() {
        let named_ok = !opts.require_named_domain || covers_domain(m, k);
        return Ok(named_ok && m.eval(tree)?);
    }
    for v in 0..k {
        *m.var_assign.get_mut(&vars[depth]).unwrap() = v;
        if assign_tree(m, vars, tree, depth + 1, k, opts)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The finite part of a spectrum by brute force: every `k` in
/// `[1, max_k]` admitting a model of `formula` under `member`.
pub fn brute_spectrum(
    formula: &QFFormula,
    sig: &Signature,
    member: &TheoryMembership,
    max_k: u32,
    opts: &SearchOpts,
) -> Result<BTreeSet<u32>> {
    let mut out = BTreeSet::new();
    for k in 1..=max_k {
        if find_model(formula, sig, k, member, opts)?.is_some() {
            out.insert(k);
        }
    }
    Ok(out)
}

/// Convenience form of [`brute_spectrum`] with pruning on and the size
/// ceiling stretched to `max_k`.
pub fn brute_spectrum_pruned(
    formula: &QFFormula,
    sig: &Signature,
    member: &TheoryMembership,
    max_k: u32,
) -> Result<BTreeSet<u32>> {
    let opts = SearchOpts::pruned().with_limit(max_k.max(7));
    brute_spectrum(formula, sig, member, max_k, &opts)
}

/// Smallest size of an equality-logic model of a cube of (dis)equalities
/// between variables, or `None` when unsatisfiable. Tries k = 1, 2, …
/// up to the number of variables.
pub fn min_eq_model_size(cube: &Cube) -> Result<Option<u32>> {
    for lit in cube.iter() {
        match &lit.atom {
            Atom::Eq(l, r) => {
                if !matches!(l, crate::logic::Term::Var(_))
                    || !matches!(r, crate::logic::Term::Var(_))
                {
                    return Err(Error::Domain(format!(
                        "expected equalities between variables, found '{lit}'"
                    )));
                }
            }
            Atom::Pred(_) => {
                return Err(Error::Domain(format!(
                    "expected equalities between variables, found '{lit}'"
                )));
            }
        }
    }
    let n = cube.vars().len() as u32;
    let top = n.max(1);
    let sig = Signature::empty();
    let formula = QFFormula::from_cube(cube);
    let opts = SearchOpts::default().with_limit(top.max(7));
    for k in 1..=top {
        if find_model(&formula, &sig, k, &TheoryMembership::Free, &opts)?.is_some() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Reference search with no staging or pruning: every candidate is
/// built in full and evaluated at the leaves. Only sensible for tiny
/// sizes; the test suite uses it to cross-check [`find_model`].
pub fn slow_model_exists(
    formula: &QFFormula,
    sig: &Signature,
    k: u32,
    member: &TheoryMembership,
) -> Result<bool> {
    let vars: Vec<String> = formula.vars().into_iter().collect();
    let mut preds = BTreeSet::new();
    pred_indices(formula, &mut preds);
    let preds: Vec<u32> = preds.into_iter().collect();
    let consts: Vec<String> = sig.constants.iter().cloned().collect();
    let funcs: Vec<String> = sig.unary_functions.iter().cloned().collect();

    let slots = consts.len() + funcs.len() * k as usize + vars.len();
    let mut odo = Odometer::new(slots, k, 0);
    'outer: while let Some(digits) = odo.next() {
        let mut m = FiniteInterpretation::new(k);
        let mut i = 0;
        for c in &consts {
            m.const_values.insert(c.clone(), digits[i]);
            i += 1;
        }
        for f in &funcs {
            m.func_tables.insert(f.clone(), digits[i..i + k as usize].to_vec());
            i += k as usize;
        }
        for v in &vars {
            m.var_assign.insert(v.clone(), digits[i]);
            i += 1;
        }
        let mut pred_odo = Odometer::new(preds.len(), 2, 0);
        while let Some(pvals) = pred_odo.next() {
            m.pred_values = preds.iter().copied().zip(pvals.iter().map(|&b| b == 1)).collect();
            if member.accepts(&m)? && m.eval(formula)? {
                return Ok(true);
            }
            if preds.is_empty() {
                continue 'outer;
            }
        }
    }
    Ok(false)
}
