//! Core syntax: signatures, terms, literals, cubes, quantifier-free
//! formulas, and equivalence-class arrangements over variable sets.
//!
//! Everything here is deliberately small and concrete. The languages we
//! work with have at most one unary function symbol, at most one constant,
//! and an indexed family of nullary predicates, so terms are chains like
//! `t(t(a))` and atoms are either equalities or `(P k)`. Printing is
//! canonical (lowercase, single spaces) and round-trips with the parser.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// A first-order signature restricted to the shapes this crate uses:
/// unary function symbols, constants, and optionally one indexed family
/// of nullary predicate symbols (`P 1`, `P 2`, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub name: String,
    pub unary_functions: BTreeSet<String>,
    pub constants: BTreeSet<String>,
    /// Name of the indexed predicate family, if the signature has one.
    pub predicate_family: Option<String>,
}

impl Signature {
    /// The empty signature: equality only.
    pub fn empty() -> Self {
        Signature {
            name: "empty".into(),
            unary_functions: BTreeSet::new(),
            constants: BTreeSet::new(),
            predicate_family: None,
        }
    }

    /// Equality plus the indexed predicate family `P`.
    pub fn indexed_preds() -> Self {
        Signature { name: "preds".into(), predicate_family: Some("P".into()), ..Signature::empty() }
    }

    /// One unary function symbol `s`.
    pub fn unary_s() -> Self {
        let mut sig = Signature::empty();
        sig.name = "unary-s".into();
        sig.unary_functions.insert("s".into());
        sig
    }

    /// One unary function symbol `t` and one constant `a`.
    pub fn orbit_t() -> Self {
        let mut sig = Signature::empty();
        sig.name = "orbit-t".into();
        sig.unary_functions.insert("t".into());
        sig.constants.insert("a".into());
        sig
    }

    /// All non-logical symbols, for disjointness checks.
    pub fn symbols(&self) -> BTreeSet<String> {
        let mut s: BTreeSet<String> =
            self.unary_functions.union(&self.constants).cloned().collect();
        if let Some(p) = &self.predicate_family {
            s.insert(p.clone());
        }
        s
    }

    pub fn is_disjoint_from(&self, other: &Signature) -> bool {
        self.symbols().is_disjoint(&other.symbols())
    }

    /// Union of two signatures. Fails if they share a symbol.
    pub fn union(&self, other: &Signature) -> Result<Signature> {
        if !self.is_disjoint_from(other) {
            return Err(Error::Signature(format!(
                "signatures {} and {} share symbols",
                self.name, other.name
            )));
        }
        let family = match (&self.predicate_family, &other.predicate_family) {
            (Some(p), None) | (None, Some(p)) => Some(p.clone()),
            (None, None) => None,
            (Some(_), Some(_)) => unreachable!("caught by symbol disjointness"),
        };
        Ok(Signature {
            name: format!("{}+{}", self.name, other.name),
            unary_functions: self.unary_functions.union(&other.unary_functions).cloned().collect(),
            constants: self.constants.union(&other.constants).cloned().collect(),
            predicate_family: family,
        })
    }

    pub fn has_function(&self, f: &str) -> bool {
        self.unary_functions.contains(f)
    }

    pub fn has_constant(&self, c: &str) -> bool {
        self.constants.contains(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
    /// Application of a unary function symbol.
    App(String, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::Const(name.into())
    }

    pub fn app(f: impl Into<String>, arg: Term) -> Term {
        Term::App(f.into(), Box::new(arg))
    }

    /// `f` applied `k` times to `base`.
    pub fn iterate(f: &str, base: Term, k: u32) -> Term {
        let mut t = base;
        for _ in 0..k {
            t = Term::app(f, t);
        }
        t
    }

    /// Splits an application chain into its base and the applied symbols,
    /// innermost first. `t(t(a))` gives `(a, ["t", "t"])`.
    pub fn app_spine(&self) -> (&Term, Vec<&str>) {
        let mut syms = Vec::new();
        let mut cur = self;
        while let Term::App(f, arg) = cur {
            syms.push(f.as_str());
            cur = arg;
        }
        syms.reverse();
        (cur, syms)
    }

    pub fn mentions_constant(&self, name: &str) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(c) => c == name,
            Term::App(_, arg) => arg.mentions_constant(name),
        }
    }

    pub fn vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::App(_, arg) => arg.vars_into(out),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(c) => write!(f, "{c}"),
            Term::App(g, arg) => write!(f, "({g} {arg})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Eq(Term, Term),
    /// Member `k` of the indexed predicate family.
    Pred(u32),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Eq(l, r) => write!(f, "(= {l} {r})"),
            Atom::Pred(k) => write!(f, "(P {k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn eq(l: Term, r: Term) -> Literal {
        Literal { positive: true, atom: Atom::Eq(l, r) }
    }

    pub fn neq(l: Term, r: Term) -> Literal {
        Literal { positive: false, atom: Atom::Eq(l, r) }
    }

    pub fn pred(k: u32) -> Literal {
        Literal { positive: true, atom: Atom::Pred(k) }
    }

    pub fn npred(k: u32) -> Literal {
        Literal { positive: false, atom: Atom::Pred(k) }
    }

    pub fn negate(&self) -> Literal {
        Literal { positive: !self.positive, atom: self.atom.clone() }
    }

    pub fn vars_into(&self, out: &mut BTreeSet<String>) {
        if let Atom::Eq(l, r) = &self.atom {
            l.vars_into(out);
            r.vars_into(out);
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.atom)
        } else {
            write!(f, "(not {})", self.atom)
        }
    }
}

/// A conjunction of literals. The empty cube is the true formula.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Cube(pub Vec<Literal>);

impl Cube {
    pub fn new(lits: Vec<Literal>) -> Cube {
        Cube(lits)
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for lit in &self.0 {
            lit.vars_into(&mut out);
        }
        out
    }

    /// Concatenation of two cubes.
    pub fn and(&self, other: &Cube) -> Cube {
        let mut lits = self.0.clone();
        lits.extend(other.0.iter().cloned());
        Cube(lits)
    }

    pub fn push(&mut self, lit: Literal) {
        self.0.push(lit);
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Literal> {
        self.0.iter()
    }

    /// Every term occurring on either side of an equality literal.
    pub fn eq_terms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        for lit in &self.0 {
            if let Atom::Eq(l, r) = &lit.atom {
                out.push(l);
                out.push(r);
            }
        }
        out
    }

    /// True when some atom occurs both positively and negatively, up to
    /// the symmetry of equality. Such a cube is unsatisfiable outright;
    /// the converse does not hold.
    pub fn has_direct_contradiction(&self) -> bool {
        fn same_atom(x: &Atom, y: &Atom) -> bool {
            match (x, y) {
                (Atom::Pred(m), Atom::Pred(n)) => m == n,
                (Atom::Eq(a, b), Atom::Eq(c, d)) => (a == c && b == d) || (a == d && b == c),
                _ => false,
            }
        }
        for (i, a) in self.0.iter().enumerate() {
            for b in &self.0[i + 1..] {
                if a.positive != b.positive && same_atom(&a.atom, &b.atom) {
                    return true;
                }
            }
        }
        false
    }
}

impl fmt::Display for Cube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(and")?;
        for lit in &self.0 {
            write!(f, " {lit}")?;
        }
        write!(f, ")")
    }
}

/// Quantifier-free formula over a single signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QFFormula {
    Lit(Literal),
    Not(Box<QFFormula>),
    And(Vec<QFFormula>),
    Or(Vec<QFFormula>),
}

impl QFFormula {
    pub fn from_cube(cube: &Cube) -> QFFormula {
        QFFormula::And(cube.0.iter().cloned().map(QFFormula::Lit).collect())
    }

    /// Views the formula as a cube if it is one: a literal, or a
    /// conjunction of literals (possibly under single negations).
    pub fn as_cube(&self) -> Option<Cube> {
        fn literal_of(f: &QFFormula) -> Option<Literal> {
            match f {
                QFFormula::Lit(l) => Some(l.clone()),
                QFFormula::Not(inner) => literal_of(inner).map(|l| l.negate()),
                _ => None,
            }
        }
        match self {
            QFFormula::And(parts) => {
                let mut lits = Vec::with_capacity(parts.len());
                for p in parts {
                    lits.push(literal_of(p)?);
                }
                Some(Cube(lits))
            }
            other => literal_of(other).map(|l| Cube(vec![l])),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.vars_into(&mut out);
        out
    }

    fn vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            QFFormula::Lit(l) => l.vars_into(out),
            QFFormula::Not(f) => f.vars_into(out),
            QFFormula::And(fs) | QFFormula::Or(fs) => {
                for f in fs {
                    f.vars_into(out);
                }
            }
        }
    }

    /// Disjunctive normal form as a list of cubes. `limit` bounds the
    /// number of cubes produced; exceeding it is an error rather than a
    /// silent truncation.
    pub fn dnf_cubes(&self, limit: usize) -> Result<Vec<Cube>> {
        fn go(f: &QFFormula, negated: bool, limit: usize) -> Result<Vec<Cube>> {
            let check = |cubes: Vec<Cube>| {
                if cubes.len() > limit {
                    Err(Error::Limit(format!(
                        "disjunctive normal form exceeds {limit} cubes"
                    )))
                } else {
                    Ok(cubes)
                }
            };
            match f {
                QFFormula::Lit(l) => {
                    let l = if negated { l.negate() } else { l.clone() };
                    Ok(vec![Cube(vec![l])])
                }
                QFFormula::Not(inner) => go(inner, !negated, limit),
                QFFormula::And(parts) if !negated => {
                    let mut acc = vec![Cube::default()];
                    for p in parts {
                        let ds = go(p, false, limit)?;
                        let mut next = Vec::new();
                        for c in &acc {
                            for d in &ds {
                                next.push(c.and(d));
                            }
                        }
                        acc = check(next)?;
                    }
                    Ok(acc)
                }
                QFFormula::Or(parts) if !negated => {
                    let mut acc = Vec::new();
                    for p in parts {
                        acc.extend(go(p, false, limit)?);
                    }
                    check(acc)
                }
                // De Morgan: push the negation one level down.
                QFFormula::And(parts) => {
                    let flipped: Vec<QFFormula> =
                        parts.iter().cloned().map(|p| QFFormula::Not(Box::new(p))).collect();
                    go(&QFFormula::Or(flipped), false, limit)
                }
                QFFormula::Or(parts) => {
                    let flipped: Vec<QFFormula> =
                        parts.iter().cloned().map(|p| QFFormula::Not(Box::new(p))).collect();
                    go(&QFFormula::And(flipped), false, limit)
                }
            }
        }
        go(self, false, limit)
    }
}

impl fmt::Display for QFFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QFFormula::Lit(l) => write!(f, "{l}"),
            QFFormula::Not(inner) => write!(f, "(not {inner})"),
            QFFormula::And(parts) => {
                write!(f, "(and")?;
                for p in parts {
                    write!(f, " {p}")?;
                }
                write!(f, ")")
            }
            QFFormula::Or(parts) => {
                write!(f, "(or")?;
                for p in parts {
                    write!(f, " {p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Default cap on cubes produced by DNF expansion.
pub const DNF_LIMIT: usize = 4096;

static FRESH: AtomicU64 = AtomicU64::new(0);

/// Returns a variable name no user formula can contain (the parser
/// rejects leading underscores), unique for the life of the process.
pub fn fresh_var() -> String {
    format!("_v{}", FRESH.fetch_add(1, Ordering::Relaxed))
}

pub fn fresh_vars(n: usize) -> Vec<String> {
    (0..n).map(|_| fresh_var()).collect()
}

/// Pairwise disequalities over `vars`, one literal per pair in index
/// order. Zero or one variable gives the empty cube.
pub fn build_distinct(vars: &[String]) -> Cube {
    let mut lits = Vec::new();
    for i in 0..vars.len() {
        for j in (i + 1)..vars.len() {
            lits.push(Literal::neq(Term::var(vars[i].clone()), Term::var(vars[j].clone())));
        }
    }
    Cube(lits)
}

/// A cube asserting that `n` fresh pairwise-distinct variables are all
/// fixpoints of `func`: the distinctness literals followed by one
/// `func(x) = x` equation per variable.
pub fn build_fixpoint_count(n: u32, func: &str) -> Cube {
    let vars = fresh_vars(n as usize);
    let mut cube = build_distinct(&vars);
    for v in &vars {
        cube.push(Literal::eq(Term::app(func, Term::var(v.clone())), Term::var(v.clone())));
    }
    cube
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    /// The first `n` iterates of the base are pairwise distinct.
    Dif,
    /// The orbit of the base has size exactly `n`.
    Orb,
}

/// Formulas about the orbit of `base` under the function symbol `func`.
///
/// `dif` with `n >= 2` is the conjunction of `t^i(base) != t^j(base)`
/// over `0 <= i < j < n` (a bare literal when there is one pair). An
/// orbit of size 1 is the single loop equation `t(base) = base`; for
/// `n >= 2` the orbit formula is `dif_n` and not `dif_{n+1}`.
pub fn build_orbit_formula(kind: OrbitKind, n: u32, func: &str, base: &Term) -> Result<QFFormula> {
    fn dif(n: u32, func: &str, base: &Term) -> QFFormula {
        let mut lits = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                lits.push(QFFormula::Lit(Literal::neq(
                    Term::iterate(func, base.clone(), i),
                    Term::iterate(func, base.clone(), j),
                )));
            }
        }
        if lits.len() == 1 {
            lits.pop().unwrap()
        } else {
            QFFormula::And(lits)
        }
    }
    match kind {
        OrbitKind::Dif => {
            if n < 2 {
                return Err(Error::Domain(format!(
                    "dif is defined for n >= 2 iterates, got n = {n}"
                )));
            }
            Ok(dif(n, func, base))
        }
        OrbitKind::Orb => {
            if n == 0 {
                return Err(Error::Domain("orbit size must be at least 1".into()));
            }
            if n == 1 {
                return Ok(QFFormula::Lit(Literal::eq(
                    Term::app(func, base.clone()),
                    base.clone(),
                )));
            }
            let cap = QFFormula::Not(Box::new(dif(n + 1, func, base)));
            Ok(QFFormula::And(vec![dif(n, func, base), cap]))
        }
    }
}

/// Default cap on the number of variables an arrangement enumeration
/// will partition.
pub const ARRANGEMENT_LIMIT: usize = 8;

/// A partition of a finite variable set into equivalence classes,
/// stored as a restricted growth string over the sorted variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    vars: Vec<String>,
    rgs: Vec<usize>,
}

impl Arrangement {
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn n_blocks(&self) -> usize {
        self.rgs.iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn block_of(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var).map(|i| self.rgs[i])
    }

    pub fn blocks(&self) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = vec![Vec::new(); self.n_blocks()];
        for (v, &b) in self.vars.iter().zip(&self.rgs) {
            out[b].push(v.clone());
        }
        out
    }

    /// The cube with one equality or disequality literal per variable
    /// pair, pairs in sorted order, equal when the pair shares a block.
    pub fn to_cube(&self) -> Cube {
        let mut lits = Vec::new();
        for i in 0..self.vars.len() {
            for j in (i + 1)..self.vars.len() {
                let l = Term::var(self.vars[i].clone());
                let r = Term::var(self.vars[j].clone());
                if self.rgs[i] == self.rgs[j] {
                    lits.push(Literal::eq(l, r));
                } else {
                    lits.push(Literal::neq(l, r));
                }
            }
        }
        Cube(lits)
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{{}}}", block.join(","))?;
        }
        write!(f, "}}")
    }
}

/// All partitions of `vars` in restricted-growth-string order (the
/// all-in-one-block partition first, all-singletons last). Errors when
/// `vars` has more than `limit` elements.
pub fn enumerate_arrangements(
    vars: &BTreeSet<String>,
    limit: usize,
) -> Result<Vec<Arrangement>> {
    if vars.len() > limit {
        return Err(Error::Limit(format!(
            "arrangement enumeration over {} variables exceeds the limit of {limit}",
            vars.len()
        )));
    }
    let vars: Vec<String> = vars.iter().cloned().collect();
    let n = vars.len();
    let mut out = Vec::new();
    if n == 0 {
        out.push(Arrangement { vars, rgs: Vec::new() });
        return Ok(out);
    }
    let mut rgs = vec![0usize; n];
    loop {
        out.push(Arrangement { vars: vars.clone(), rgs: rgs.clone() });
        // Advance to the next restricted growth string: rightmost digit
        // that can still grow ticks up, everything after it resets to 0.
        let mut i = n;
        loop {
            if i == 1 {
                return Ok(out);
            }
            i -= 1;
            let max_prefix = rgs[..i].iter().copied().max().unwrap();
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for d in rgs.iter_mut().skip(i + 1) {
                    *d = 0;
                }
                break;
            }
        }
    }
}
