//! Flattening and arrangement enumeration for the orbit signature (one
//! unary function t, one constant a).
//!
//! A cube is flattened to chain variables x_{i,j} standing for tʲ(xᵢ),
//! with index 0 reserved for the constant: chain i covers powers 0..=M_i
//! where M_i is the largest power applied to xᵢ in the cube, and the
//! constant chain runs to M₀ = M₀′ + Σ(M_i+1) so that it outruns any
//! merge of the variable chains. Satisfiability questions then reduce to
//! enumerating equivalence relations over the flat variables that (a)
//! satisfy the rewritten literals and (b) admit a well-defined successor
//! on classes. The enumerator below builds exactly those partitions by
//! depth-first search: once a class's successor is fixed, every later
//! chain continuation out of that class is forced, which prunes the
//! Bell-number blowup to the consistent partitions only.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::logic::{Atom, Cube, Term};

/// Ceiling on the flattened variable count; beyond it the partition
/// enumeration is refused rather than left to run for minutes.
pub const FLAT_LIMIT: usize = 14;

const UNASSIGNED: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlatLit {
    pub positive: bool,
    pub left: usize,
    pub right: usize,
}

/// A cube flattened over the orbit signature.
#[derive(Debug, Clone)]
pub struct FlatForm {
    /// Original variables in sorted order; chain i+1 belongs to var i.
    pub var_names: Vec<String>,
    /// Largest power applied to each variable, aligned with `var_names`.
    pub var_power: Vec<u32>,
    /// Largest power applied directly to the constant.
    pub const_power: u32,
    /// Length of the constant chain minus one.
    pub m0: u32,
    /// chain_lens[0] is the constant chain, then one entry per variable.
    pub chain_lens: Vec<usize>,
    /// Starting flat index of each chain.
    pub offsets: Vec<usize>,
    pub flat_count: usize,
    /// The cube's literals over flat indices.
    pub lits: Vec<FlatLit>,
}

impl FlatForm {
    pub fn idx(&self, chain: usize, power: u32) -> usize {
        debug_assert!((power as usize) < self.chain_lens[chain]);
        self.offsets[chain] + power as usize
    }

    /// The previous element of `flat`'s chain, if `flat` is not a head.
    pub fn prev_in_chain(&self, flat: usize) -> Option<usize> {
        let chain = match self.offsets.binary_search(&flat) {
            Ok(_) => return None,
            Err(i) => i - 1,
        };
        debug_assert!(flat > self.offsets[chain]);
        debug_assert!(flat < self.offsets[chain] + self.chain_lens[chain]);
        Some(flat - 1)
    }
}

fn spine_of(term: &Term, func: &str, konst: &str) -> Result<(Option<String>, u32)> {
    let (base, syms) = term.app_spine();
    for sym in &syms {
        if *sym != func {
            return Err(Error::Signature(format!(
                "function symbol '{sym}' does not belong to the orbit signature"
            )));
        }
    }
    let power = syms.len() as u32;
    match base {
        Term::Var(v) => Ok((Some(v.clone()), power)),
        Term::Const(c) if c == konst => Ok((None, power)),
        Term::Const(c) => Err(Error::Signature(format!(
            "constant '{c}' does not belong to the orbit signature"
        ))),
        Term::App(..) => unreachable!("app_spine returns a non-application base"),
    }
}

/// Flattens a cube over the orbit signature into chain variables.
pub fn flatten(cube: &Cube) -> Result<FlatForm> {
    let func = "t";
    let konst = "a";
    let mut var_power: BTreeMap<String, u32> = BTreeMap::new();
    let mut const_power = 0u32;
    let mut sides = Vec::new();
    for lit in cube.iter() {
        let (l, r) = match &lit.atom {
            Atom::Eq(l, r) => (l, r),
            Atom::Pred(_) => {
                return Err(Error::Signature(
                    "the orbit signature has no predicate family".into(),
                ))
            }
        };
        let ls = spine_of(l, func, konst)?;
        let rs = spine_of(r, func, konst)?;
        for (base, power) in [&ls, &rs] {
            match base {
                Some(v) => {
                    let e = var_power.entry(v.clone()).or_insert(0);
                    *e = (*e).max(*power);
                }
                None => const_power = const_power.max(*power),
            }
        }
        sides.push((lit.positive, ls, rs));
    }

    let var_names: Vec<String> = var_power.keys().cloned().collect();
    let var_power: Vec<u32> = var_names.iter().map(|v| var_power[v]).collect();
    let m0 = const_power + var_power.iter().map(|&m| m + 1).sum::<u32>();
    let mut chain_lens = vec![m0 as usize + 1];
    chain_lens.extend(var_power.iter().map(|&m| m as usize + 1));
    let mut offsets = Vec::with_capacity(chain_lens.len());
    let mut acc = 0usize;
    for &len in &chain_lens {
        offsets.push(acc);
        acc += len;
    }
    let flat_count = acc;
    if flat_count > FLAT_LIMIT {
        return Err(Error::Limit(format!(
            "flattening needs {flat_count} chain variables, above the supported {FLAT_LIMIT}"
        )));
    }

    let ff = FlatForm {
        var_names,
        var_power,
        const_power,
        m0,
        chain_lens,
        offsets,
        flat_count,
        lits: Vec::new(),
    };
    let chain_of = |base: &Option<String>| match base {
        None => 0usize,
        Some(v) => 1 + ff.var_names.binary_search(v).expect("collected above"),
    };
    let mut lits = Vec::new();
    for (positive, l, r) in sides {
        lits.push(FlatLit {
            positive,
            left: ff.idx(chain_of(&l.0), l.1),
            right: ff.idx(chain_of(&r.0), r.1),
        });
    }
    Ok(FlatForm { lits, ..ff })
}

/// A partition of the flat variables that satisfies the cube's literals
/// and has a well-defined successor on classes, as handed to the
/// enumeration callback. Class ids are restricted-growth canonical.
pub struct ClassView<'a> {
    pub class_of: &'a [usize],
    pub class_succ: &'a [Option<usize>],
    pub n_classes: usize,
}

impl ClassView<'_> {
    /// Walks the successor orbit from the class of the constant-chain
    /// head. Returns the number of distinct classes reached and whether
    /// the walk closed into a cycle (true) or fell off a chain end
    /// (false).
    pub fn orbit_from_const(&self, visited: &mut Vec<bool>) -> (usize, bool) {
        visited.clear();
        visited.resize(self.n_classes, false);
        let mut cur = self.class_of[0];
        let mut b0 = 0usize;
        loop {
            if visited[cur] {
                return (b0, true);
            }
            visited[cur] = true;
            b0 += 1;
            match self.class_succ[cur] {
                Some(next) => cur = next,
                None => return (b0, false),
            }
        }
    }
}

struct Dfs<'a, F> {
    ff: &'a FlatForm,
    /// Literals indexed by their larger flat var; (positive, other side).
    lits_at: Vec<Vec<(bool, usize)>>,
    class_of: Vec<usize>,
    class_succ: Vec<Option<usize>>,
    visit: F,
    stopped: bool,
}

impl<F> Dfs<'_, F>
where
    F: FnMut(ClassView<'_>) -> Result<ControlFlow<()>>,
{
    fn run(&mut self, q: usize, n_classes: usize) -> Result<()> {
        if self.stopped {
            return Ok(());
        }
        if q == self.ff.flat_count {
            let view = ClassView {
                class_of: &self.class_of,
                class_succ: &self.class_succ,
                n_classes,
            };
            if (self.visit)(view)?.is_break() {
                self.stopped = true;
            }
            return Ok(());
        }
        match self.forced_class(q) {
            Some(c) => self.place(q, c, n_classes),
            None => {
                for c in 0..=n_classes {
                    self.place(q, c, n_classes)?;
                    if self.stopped {
                        break;
                    }
                }
                Ok(())
            }
        }
    }

    /// If q continues a chain out of a class whose successor is already
    /// fixed, q's class is determined.
    fn forced_class(&self, q: usize) -> Option<usize> {
        let p = self.ff.prev_in_chain(q)?;
        self.class_succ[self.class_of[p]]
    }

    fn place(&mut self, q: usize, c: usize, n_classes: usize) -> Result<()> {
        for &(positive, other) in &self.lits_at[q] {
            debug_assert!(other < q);
            if positive != (self.class_of[other] == c) {
                return Ok(());
            }
        }
        self.class_of[q] = c;
        let mut succ_set_on = None;
        if let Some(p) = self.ff.prev_in_chain(q) {
            let pc = self.class_of[p];
            match self.class_succ[pc] {
                None => {
                    self.class_succ[pc] = Some(c);
                    succ_set_on = Some(pc);
                }
                Some(s) => debug_assert_eq!(s, c, "forced placement missed"),
            }
        }
        let grown = if c == n_classes { n_classes + 1 } else { n_classes };
        self.run(q + 1, grown)?;
        if let Some(pc) = succ_set_on {
            self.class_succ[pc] = None;
        }
        self.class_of[q] = UNASSIGNED;
        Ok(())
    }
}

/// Enumerates, in restricted-growth order, every partition of the flat
/// variables that satisfies the flattened literals and keeps the chain
/// successor well defined on classes. The callback may stop the
/// enumeration early by returning `ControlFlow::Break`.
pub fn for_each_consistent_partition<F>(ff: &FlatForm, visit: F) -> Result<()>
where
    F: FnMut(ClassView<'_>) -> Result<ControlFlow<()>>,
{
    let mut lits_at: Vec<Vec<(bool, usize)>> = vec![Vec::new(); ff.flat_count];
    for lit in &ff.lits {
        if lit.left == lit.right {
            if lit.positive {
                continue;
            }
            return Ok(());
        }
        let (lo, hi) = (lit.left.min(lit.right), lit.left.max(lit.right));
        lits_at[hi].push((lit.positive, lo));
    }
    let mut dfs = Dfs {
        ff,
        lits_at,
        class_of: vec![UNASSIGNED; ff.flat_count],
        class_succ: vec![None; ff.flat_count],
        visit,
        stopped: false,
    };
    dfs.run(0, 0)
}
