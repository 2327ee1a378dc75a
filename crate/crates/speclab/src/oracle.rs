//! Combined-satisfiability oracles for the four fixed theory pairs the
//! recovery harnesses query. Three tiers answer the same questions:
//!
//! * analytic: evaluates the per-family satisfiability characterization
//!   directly from the parameter table, after strictly recognizing the
//!   query shape;
//! * bruteforce: purifies the query and searches for a common finite
//!   model size with both membership checks, valid only for the two
//!   families whose queries force finite sizes;
//! * engine: delegates to a combination engine whose prerequisites the
//!   pair satisfies, which exists only for the two infinite families.
//!
//! That the engine tier is constructible exactly for the families where
//! recovery is uninteresting, and never for the two families the
//! recovery harnesses target, is the point of the whole exercise.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::combine::{run_engine, CombinationProblem, Engine};
use crate::error::{Error, Result};
use crate::logic::{Atom, Cube, Literal, QFFormula, Term, DNF_LIMIT};
use crate::params::{FRelation, FTable, GTable, ParamSet};
use crate::purify::purify;
use crate::search::{find_model, SearchOpts};
use crate::spectra::Card;
use crate::theories::Verdict;
use crate::theory::{teq_handle, tf_handle, tg_handle, tinf_handle, tle_handle, tleorb_handle,
    torb2_handle, TheoryHandle};

/// Largest model size the brute-force tier searches. Query families
/// admitted to that tier force sizes within this cap by construction.
pub const BRUTE_SIZE_CAP: u32 = 8;

/// What a recovery harness is allowed to see: yes/no answers to
/// satisfiability queries, nothing else. Keeping the harnesses generic
/// over this trait is what makes them faithful reductions; they cannot
/// peek at the parameter tables brute-force or analytic backends hold.
pub trait Oracle {
    fn ask_cube(&self, cube: &Cube) -> Result<Verdict>;

    /// Formula-level queries, satisfied when some cube of the
    /// disjunctive normal form is.
    fn ask(&self, formula: &QFFormula) -> Result<Verdict> {
        for cube in formula.dnf_cubes(DNF_LIMIT)? {
            if self.ask_cube(&cube)?.is_sat() {
                return Ok(Verdict::Sat);
            }
        }
        Ok(Verdict::Unsat)
    }
}

impl Oracle for CombinedOracle {
    fn ask_cube(&self, cube: &Cube) -> Result<Verdict> {
        CombinedOracle::ask_cube(self, cube)
    }

    fn ask(&self, formula: &QFFormula) -> Result<Verdict> {
        CombinedOracle::ask(self, formula)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleFamily {
    /// Fixpoint-counting theory against exact-size predicates.
    TfTeq,
    /// Paired fixpoint-counting theory against bounded orbits.
    TgTorb2,
    /// Infinite-only theory against table-bounded predicates.
    TinfTle,
    /// Infinite-only theory against orbit-bounded sizes.
    TinfTleorb,
}

impl OracleFamily {
    pub const ALL: [OracleFamily; 4] =
        [OracleFamily::TfTeq, OracleFamily::TgTorb2, OracleFamily::TinfTle, OracleFamily::TinfTleorb];

    pub fn cli_name(self) -> &'static str {
        match self {
            OracleFamily::TfTeq => "tf-teq",
            OracleFamily::TgTorb2 => "tg-torb2",
            OracleFamily::TinfTle => "tinf-tle",
            OracleFamily::TinfTleorb => "tinf-tleorb",
        }
    }
}

impl fmt::Display for OracleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for OracleFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<OracleFamily> {
        match s {
            "tf-teq" => Ok(OracleFamily::TfTeq),
            "tg-torb2" => Ok(OracleFamily::TgTorb2),
            "tinf-tle" => Ok(OracleFamily::TinfTle),
            "tinf-tleorb" => Ok(OracleFamily::TinfTleorb),
            other => Err(Error::Usage(format!(
                "unknown oracle family '{other}' \
                 (expected tf-teq, tg-torb2, tinf-tle or tinf-tleorb)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Bruteforce,
    Analytic,
    Engine,
}

impl Provenance {
    pub fn cli_name(self) -> &'static str {
        match self {
            Provenance::Bruteforce => "bruteforce",
            Provenance::Analytic => "analytic",
            Provenance::Engine => "engine",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Provenance> {
        match s {
            "bruteforce" => Ok(Provenance::Bruteforce),
            "analytic" => Ok(Provenance::Analytic),
            "engine" => Ok(Provenance::Engine),
            other => Err(Error::Usage(format!(
                "unknown oracle provenance '{other}' (expected analytic, bruteforce or engine)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
enum Backend {
    AnalyticF(FTable),
    AnalyticG(GTable),
    AnalyticFrel(FRelation),
    Brute { t1: TheoryHandle, t2: TheoryHandle, cap: u32 },
    Engine { engine: Engine, t1: TheoryHandle, t2: TheoryHandle },
}

/// A decision oracle for mixed cubes of one query family.
#[derive(Debug, Clone)]
pub struct CombinedOracle {
    family: OracleFamily,
    provenance: Provenance,
    backend: Backend,
}

/// Builds the analytic oracle: table lookups through the proved
/// satisfiability characterization of the family's query formulas.
pub fn make_analytic_oracle(family: OracleFamily, params: &ParamSet) -> Result<CombinedOracle> {
    let backend = match family {
        OracleFamily::TfTeq => Backend::AnalyticF(params.require_f()?.clone()),
        OracleFamily::TgTorb2 => Backend::AnalyticG(params.require_g()?.clone()),
        OracleFamily::TinfTle | OracleFamily::TinfTleorb => {
            Backend::AnalyticFrel(params.require_frel()?.clone())
        }
    };
    Ok(CombinedOracle { family, provenance: Provenance::Analytic, backend })
}

/// Builds the brute-force oracle: equal-size model search on the two
/// purified components. Only the fixpoint-counting families force
/// finite model sizes, so only those are constructible.
pub fn make_bruteforce_oracle(family: OracleFamily, params: &ParamSet) -> Result<CombinedOracle> {
    let (t1, t2) = match family {
        OracleFamily::TfTeq => (tf_handle(params.require_f()?.clone()), teq_handle()),
        OracleFamily::TgTorb2 => (tg_handle(params.require_g()?.clone()), torb2_handle()),
        OracleFamily::TinfTle | OracleFamily::TinfTleorb => {
            return Err(Error::Capability(format!(
                "family '{family}' admits no finite models on the first component; \
                 brute-force search cannot decide it"
            )));
        }
    };
    Ok(CombinedOracle {
        family,
        provenance: Provenance::Bruteforce,
        backend: Backend::Brute { t1, t2, cap: BRUTE_SIZE_CAP },
    })
}

/// Builds the engine-backed oracle for the families some combination
/// engine covers. The fixpoint-counting families are refused: no
/// engine's prerequisites hold for them, which is exactly why their
/// recovery harnesses demonstrate something.
pub fn make_engine_oracle(family: OracleFamily, params: &ParamSet) -> Result<CombinedOracle> {
    let (engine, t1, t2) = match family {
        OracleFamily::TinfTle => (
            Engine::MinmodInfdec,
            tinf_handle(),
            tle_handle(params.require_frel()?.clone()),
        ),
        OracleFamily::TinfTleorb => (
            Engine::MinmodInfdec,
            tinf_handle(),
            tleorb_handle(params.require_frel()?.clone()),
        ),
        OracleFamily::TfTeq | OracleFamily::TgTorb2 => {
            return Err(Error::Capability(format!(
                "no combination engine's prerequisites cover the '{family}' family"
            )));
        }
    };
    Ok(CombinedOracle {
        family,
        provenance: Provenance::Engine,
        backend: Backend::Engine { engine, t1, t2 },
    })
}

/// Constructor dispatch by provenance, for the command line.
pub fn make_oracle(
    family: OracleFamily,
    provenance: Provenance,
    params: &ParamSet,
) -> Result<CombinedOracle> {
    match provenance {
        Provenance::Analytic => make_analytic_oracle(family, params),
        Provenance::Bruteforce => make_bruteforce_oracle(family, params),
        Provenance::Engine => make_engine_oracle(family, params),
    }
}

impl CombinedOracle {
    pub fn family(&self) -> OracleFamily {
        self.family
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Overrides the size ceiling of the brute-force tier; no effect on
    /// the other tiers. A ceiling below what the family's queries can
    /// force turns unreached sat answers into unsat, so lowering it is
    /// only sound when the caller knows the forced sizes.
    pub fn with_brute_cap(mut self, cap: u32) -> CombinedOracle {
        if let Backend::Brute { cap: c, .. } = &mut self.backend {
            *c = cap;
        }
        self
    }

    /// Decides one mixed cube of the oracle's query family.
    pub fn ask_cube(&self, cube: &Cube) -> Result<Verdict> {
        match &self.backend {
            Backend::AnalyticF(f) => {
                let q = QueryShape::read(cube)?;
                let (n, k) = q.expect_pred_with_fixcount(self.family)?;
                Ok(Verdict::from_bool(f.f1(n)? >= k))
            }
            Backend::AnalyticG(g) => {
                let q = QueryShape::read(cube)?;
                match q.expect_orbit_with_fixcount(self.family)? {
                    OrbitQuery::Contradictory => Ok(Verdict::Unsat),
                    OrbitQuery::Orbit { size, fixpoints } => {
                        Ok(Verdict::from_bool(g.g1(2 * size)? >= fixpoints))
                    }
                }
            }
            Backend::AnalyticFrel(frel) => match self.family {
                OracleFamily::TinfTle => {
                    let q = QueryShape::read(cube)?;
                    let n = q.expect_bare_pred(self.family)?;
                    Ok(Verdict::from_bool(frel.row(n)? == Card::Aleph0))
                }
                OracleFamily::TinfTleorb => {
                    let q = QueryShape::read(cube)?;
                    match q.expect_bare_orbit(self.family)? {
                        OrbitQuery::Contradictory => Ok(Verdict::Unsat),
                        OrbitQuery::Orbit { size, .. } => {
                            Ok(Verdict::from_bool(frel.row(size)? == Card::Aleph0))
                        }
                    }
                }
                _ => unreachable!("frel backend is built only for the two table families"),
            },
            Backend::Brute { t1, t2, cap } => brute_combined(cube, t1, t2, *cap),
            Backend::Engine { engine, t1, t2 } => {
                let p = CombinationProblem {
                    t1: t1.clone(),
                    t2: t2.clone(),
                    mixed: cube.clone(),
                };
                Ok(run_engine(*engine, &p)?.verdict)
            }
        }
    }

    /// Formula-level queries, satisfied when some cube of the
    /// disjunctive normal form is.
    pub fn ask(&self, formula: &QFFormula) -> Result<Verdict> {
        for cube in formula.dnf_cubes(DNF_LIMIT)? {
            if self.ask_cube(&cube)?.is_sat() {
                return Ok(Verdict::Sat);
            }
        }
        Ok(Verdict::Unsat)
    }
}

/// Exhaustive equal-size search: the query is split into its two pure
/// components (which must not share variables; no family query does)
/// and each candidate size up to the cap is tried on both sides with
/// the full membership checks.
fn brute_combined(cube: &Cube, t1: &TheoryHandle, t2: &TheoryHandle, cap: u32) -> Result<Verdict> {
    // Orbit queries expand into many cubes that pair an equality with
    // its own negation; settling those without a search keeps the sweep
    // budget for the cubes that need it.
    if cube.has_direct_contradiction() {
        return Ok(Verdict::Unsat);
    }
    let pure = purify(cube, t1.sig(), t2.sig())?;
    if !pure.shared.is_empty() {
        return Err(Error::Domain(format!(
            "brute-force oracle expects components without shared variables, found {:?}",
            pure.shared
        )));
    }
    let f1 = QFFormula::from_cube(&pure.cube1);
    let f2 = QFFormula::from_cube(&pure.cube2);
    let m1 = t1.member();
    let m2 = t2.member();
    let opts = SearchOpts::pruned().with_limit(cap.max(7));
    for k in 1..=cap {
        // The second component constrains sizes harder in both admitted
        // families; checking it first short-circuits most sizes.
        if find_model(&f2, t2.sig(), k, &m2, &opts)?.is_some()
            && find_model(&f1, t1.sig(), k, &m1, &opts)?.is_some()
        {
            return Ok(Verdict::Sat);
        }
    }
    Ok(Verdict::Unsat)
}

/// A query cube sorted into the three literal groups the family
/// grammars use: indexed predicates, equalities over plain variables
/// and unary-function applications to them, and ground equalities over
/// iterates of a constant.
struct QueryShape {
    preds: Vec<(bool, u32)>,
    /// Negative variable pairs, sorted within the pair.
    var_pairs: BTreeSet<(String, String)>,
    /// Variables asserted to be fixpoints of a unary function, with the
    /// function name.
    fixpoints: BTreeSet<String>,
    fix_funcs: BTreeSet<String>,
    /// Ground literals `t^i(c) (= / !=) t^j(c)` with i < j, as
    /// (positive, i, j), plus the constant and function names seen.
    ground: Vec<(bool, u32, u32)>,
    ground_syms: BTreeSet<(String, String)>,
}

fn out_of_family(what: impl fmt::Display) -> Error {
    Error::OutOfFamily(format!("query literal '{what}' is outside the oracle's family"))
}

/// Reads a term as `f^i(c)` or `f^i(v)`, returning the iteration count
/// and the base.
fn spine(t: &Term) -> (u32, &Term) {
    let mut depth = 0;
    let mut cur = t;
    while let Term::App(_, arg) = cur {
        depth += 1;
        cur = arg;
    }
    (depth, cur)
}

fn spine_func(t: &Term) -> Option<&str> {
    match t {
        Term::App(f, _) => Some(f),
        _ => None,
    }
}

impl QueryShape {
    fn read(cube: &Cube) -> Result<QueryShape> {
        let mut q = QueryShape {
            preds: Vec::new(),
            var_pairs: BTreeSet::new(),
            fixpoints: BTreeSet::new(),
            fix_funcs: BTreeSet::new(),
            ground: Vec::new(),
            ground_syms: BTreeSet::new(),
        };
        for lit in cube.iter() {
            match &lit.atom {
                Atom::Pred(n) => q.preds.push((lit.positive, *n)),
                Atom::Eq(l, r) => q.read_eq(lit, l, r)?,
            }
        }
        Ok(q)
    }

    fn read_eq(&mut self, lit: &Literal, l: &Term, r: &Term) -> Result<()> {
        let (dl, bl) = spine(l);
        let (dr, br) = spine(r);
        match (bl, br) {
            (Term::Var(u), Term::Var(v)) => {
                if !lit.positive && dl == 0 && dr == 0 {
                    if u == v {
                        return Err(out_of_family(lit));
                    }
                    let pair =
                        if u < v { (u.clone(), v.clone()) } else { (v.clone(), u.clone()) };
                    self.var_pairs.insert(pair);
                    Ok(())
                } else if lit.positive && u == v && dl + dr == 1 {
                    let func = spine_func(if dl == 1 { l } else { r }).unwrap();
                    self.fixpoints.insert(u.clone());
                    self.fix_funcs.insert(func.to_string());
                    Ok(())
                } else {
                    Err(out_of_family(lit))
                }
            }
            (Term::Const(cl), Term::Const(cr)) if cl == cr => {
                let fl = spine_func(l);
                let fr = spine_func(r);
                let func = match (fl, fr) {
                    (Some(f), Some(g)) if f != g => return Err(out_of_family(lit)),
                    (Some(f), _) | (_, Some(f)) => f.to_string(),
                    (None, None) => return Err(out_of_family(lit)),
                };
                self.ground_syms.insert((func, cl.clone()));
                let (i, j) = if dl <= dr { (dl, dr) } else { (dr, dl) };
                if i == j {
                    return Err(out_of_family(lit));
                }
                self.ground.push((lit.positive, i, j));
                Ok(())
            }
            _ => Err(out_of_family(lit)),
        }
    }

    /// The fixpoint-forcing part: all of `var_pairs` must be exactly
    /// the pairs over the fixpoint variables of a single function.
    /// Returns the forced count.
    fn fixcount(&self, family: OracleFamily) -> Result<u32> {
        if self.fix_funcs.len() > 1 {
            return Err(Error::OutOfFamily(format!(
                "query mixes fixpoints of several functions; not in family '{family}'"
            )));
        }
        let vars: Vec<&String> = self.fixpoints.iter().collect();
        let mut wanted = BTreeSet::new();
        for i in 0..vars.len() {
            for j in (i + 1)..vars.len() {
                wanted.insert((vars[i].clone(), vars[j].clone()));
            }
        }
        if self.var_pairs != wanted {
            return Err(Error::OutOfFamily(format!(
                "query's distinctness literals do not exactly cover its fixpoint variables; \
                 not in family '{family}'"
            )));
        }
        Ok(vars.len() as u32)
    }

    /// The ground orbit part: the negative pairs must be exactly all
    /// pairs below some m, with exactly one positive equation closing
    /// the orbit at m (or contradicting the distinctness, in which
    /// case the cube is plainly unsat).
    fn orbit(&self, family: OracleFamily) -> Result<OrbitQuery> {
        if self.ground_syms.len() > 1 {
            return Err(Error::OutOfFamily(format!(
                "query mixes several ground constants or functions; not in family '{family}'"
            )));
        }
        let mut negatives = BTreeSet::new();
        let mut positives = Vec::new();
        for &(positive, i, j) in &self.ground {
            if positive {
                positives.push((i, j));
            } else {
                negatives.insert((i, j));
            }
        }
        if positives.len() != 1 {
            return Err(Error::OutOfFamily(format!(
                "expected exactly one positive orbit-closing equation, found {}; \
                 not in family '{family}'",
                positives.len()
            )));
        }
        let (i, j) = positives[0];
        let m = match negatives.iter().map(|&(_, j)| j).max() {
            None => 1,
            Some(top) => top + 1,
        };
        let mut wanted = BTreeSet::new();
        for x in 0..m {
            for y in (x + 1)..m {
                wanted.insert((x, y));
            }
        }
        if negatives != wanted {
            return Err(Error::OutOfFamily(format!(
                "negative orbit literals are not the full distinctness of an iterate prefix; \
                 not in family '{family}'"
            )));
        }
        if negatives.contains(&(i, j)) {
            return Ok(OrbitQuery::Contradictory);
        }
        if j != m || i >= m {
            return Err(Error::OutOfFamily(format!(
                "positive orbit equation t^{i} = t^{j} does not close a prefix of {m} iterates; \
                 not in family '{family}'"
            )));
        }
        Ok(OrbitQuery::Orbit { size: m, fixpoints: 0 })
    }

    fn expect_pred_with_fixcount(&self, family: OracleFamily) -> Result<(u32, u32)> {
        if !self.ground.is_empty() {
            return Err(Error::OutOfFamily(format!(
                "ground orbit literals are not in family '{family}'"
            )));
        }
        let n = match self.preds[..] {
            [(true, n)] => n,
            _ => {
                return Err(Error::OutOfFamily(format!(
                    "expected exactly one positive indexed predicate; not in family '{family}'"
                )))
            }
        };
        let k = self.fixcount(family)?;
        Ok((n, k))
    }

    fn expect_orbit_with_fixcount(&self, family: OracleFamily) -> Result<OrbitQuery> {
        if !self.preds.is_empty() {
            return Err(Error::OutOfFamily(format!(
                "indexed predicates are not in family '{family}'"
            )));
        }
        let k = self.fixcount(family)?;
        match self.orbit(family)? {
            OrbitQuery::Contradictory => Ok(OrbitQuery::Contradictory),
            OrbitQuery::Orbit { size, .. } => Ok(OrbitQuery::Orbit { size, fixpoints: k }),
        }
    }

    fn expect_bare_pred(&self, family: OracleFamily) -> Result<u32> {
        if !self.ground.is_empty() || !self.var_pairs.is_empty() || !self.fixpoints.is_empty() {
            return Err(Error::OutOfFamily(format!(
                "expected a bare indexed predicate; not in family '{family}'"
            )));
        }
        match self.preds[..] {
            [(true, n)] => Ok(n),
            _ => Err(Error::OutOfFamily(format!(
                "expected exactly one positive indexed predicate; not in family '{family}'"
            ))),
        }
    }

    fn expect_bare_orbit(&self, family: OracleFamily) -> Result<OrbitQuery> {
        if !self.preds.is_empty() || !self.var_pairs.is_empty() || !self.fixpoints.is_empty() {
            return Err(Error::OutOfFamily(format!(
                "expected a pure orbit cube; not in family '{family}'"
            )));
        }
        self.orbit(family)
    }
}

enum OrbitQuery {
    /// The cube contradicts itself (an artifact of expanding the orbit
    /// formula to cubes); unsat without consulting any table.
    Contradictory,
    Orbit {
        /// Number of distinct iterates the cube forces.
        size: u32,
        /// Forced fixpoint count on the function side, when present.
        fixpoints: u32,
    },
}
