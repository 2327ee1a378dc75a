//! Satisfiability of mixed cubes over two disjoint-signature theories.
//!
//! Every engine runs the same pipeline: purify the mixed cube into two
//! pure components, then guess an arrangement of the shared variables
//! and hand each component plus the arrangement to the machinery the
//! engine's prerequisites provide. The engines differ only in how they
//! certify that the two components admit a common model size under a
//! given arrangement.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::logic::{
    build_distinct, enumerate_arrangements, fresh_vars, Arrangement, Cube, QFFormula,
    ARRANGEMENT_LIMIT, DNF_LIMIT,
};
use crate::minmod::{minmod_of, MinmodOutcome};
use crate::purify::{purify, PurifyOutcome};
use crate::spectra::{intersect_empty, intersect_empty_vs_cfs, Card};
use crate::theories::Verdict;
use crate::theory::{Flag, TheoryHandle};

/// A mixed satisfiability question: a cube over the union of two
/// disjoint signatures.
#[derive(Debug, Clone)]
pub struct CombinationProblem {
    pub t1: TheoryHandle,
    pub t2: TheoryHandle,
    pub mixed: Cube,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Arrangement guessing over two stably infinite theories.
    NelsonOppen,
    /// A gentle first theory against computable finite spectra.
    GentleCfs,
    /// A smooth first theory with a least-model function against an
    /// infinitely decidable second theory.
    MinmodInfdec,
    /// Both theories gentle: direct spectrum intersection.
    BothGentle,
}

impl Engine {
    pub const ALL: [Engine; 4] =
        [Engine::NelsonOppen, Engine::GentleCfs, Engine::MinmodInfdec, Engine::BothGentle];

    pub fn cli_name(self) -> &'static str {
        match self {
            Engine::NelsonOppen => "no",
            Engine::GentleCfs => "gentle-cfs",
            Engine::MinmodInfdec => "minmod-infdec",
            Engine::BothGentle => "both-gentle",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Engine> {
        match s {
            "no" => Ok(Engine::NelsonOppen),
            "gentle-cfs" => Ok(Engine::GentleCfs),
            "minmod-infdec" => Ok(Engine::MinmodInfdec),
            "both-gentle" => Ok(Engine::BothGentle),
            other => Err(Error::Usage(format!(
                "unknown engine '{other}' (expected no, gentle-cfs, minmod-infdec or both-gentle)"
            ))),
        }
    }
}

/// The verdict plus enough detail to explain it: the first arrangement
/// that succeeded (when sat) and printable per-engine notes.
#[derive(Debug, Clone)]
pub struct CombineReport {
    pub verdict: Verdict,
    pub arrangement: Option<Arrangement>,
    pub details: Vec<String>,
}

impl CombineReport {
    fn unsat() -> CombineReport {
        CombineReport { verdict: Verdict::Unsat, arrangement: None, details: Vec::new() }
    }

    fn sat(arrangement: Arrangement, details: Vec<String>) -> CombineReport {
        CombineReport { verdict: Verdict::Sat, arrangement: Some(arrangement), details }
    }
}

fn conjoin(base: &Cube, extra: &Cube) -> Cube {
    let mut out = base.clone();
    out.0.extend(extra.0.iter().cloned());
    out
}

fn require(cond: bool, what: &str, theory: &TheoryHandle) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Capability(format!("theory '{}' {what}", theory.name())))
    }
}

/// Purifies the mixed cube and enumerates arrangements of the shared
/// variables, after checking signature disjointness.
fn split(p: &CombinationProblem) -> Result<(PurifyOutcome, Vec<Arrangement>)> {
    if !p.t1.sig().is_disjoint_from(p.t2.sig()) {
        return Err(Error::Signature(format!(
            "theories '{}' and '{}' share symbols; combination needs disjoint signatures",
            p.t1.name(),
            p.t2.name()
        )));
    }
    let pure = purify(&p.mixed, p.t1.sig(), p.t2.sig())?;
    let arrangements = enumerate_arrangements(&pure.shared, ARRANGEMENT_LIMIT)?;
    Ok((pure, arrangements))
}

/// Classic arrangement guessing: sat iff some arrangement of the
/// shared variables keeps both pure components satisfiable. Sound for
/// stably infinite theories, which both handles must declare.
pub fn combine_nelson_oppen(p: &CombinationProblem) -> Result<CombineReport> {
    require(p.t1.has_flag(Flag::StablyInfinite), "does not declare stable infiniteness", &p.t1)?;
    require(p.t2.has_flag(Flag::StablyInfinite), "does not declare stable infiniteness", &p.t2)?;
    let (pure, arrangements) = split(p)?;
    for arr in arrangements {
        let delta = arr.to_cube();
        if p.t1.decide(&conjoin(&pure.cube1, &delta))?.is_sat()
            && p.t2.decide(&conjoin(&pure.cube2, &delta))?.is_sat()
        {
            return Ok(CombineReport::sat(arr, vec!["both components sat".into()]));
        }
    }
    Ok(CombineReport::unsat())
}

/// Gentle against computable finite spectra: per arrangement, the
/// first component's spectrum is intersected with the second theory
/// through finite-membership probes, plus a fresh-distinct tail test
/// when the spectrum is cofinite.
pub fn combine_gentle_cfs(p: &CombinationProblem) -> Result<CombineReport> {
    require(p.t1.has_gentle_spectrum(), "has no gentle spectrum function", &p.t1)?;
    require(p.t2.has_contains_finite(), "cannot answer finite spectrum membership", &p.t2)?;
    let (pure, arrangements) = split(p)?;
    for arr in arrangements {
        let delta = arr.to_cube();
        let c1 = conjoin(&pure.cube1, &delta);
        let c2 = conjoin(&pure.cube2, &delta);
        let spectrum = p.t1.gentle_spectrum(&c1)?;
        let mut probe = |k: u32| p.t2.contains_finite(&c2, k);
        let mut inf_tail = |n: u32| -> Result<bool> {
            let tail = conjoin(&c2, &build_distinct(&fresh_vars(n as usize)));
            Ok(p.t2.decide(&tail)?.is_sat())
        };
        if !intersect_empty_vs_cfs(&spectrum, &mut probe, Some(&mut inf_tail))? {
            return Ok(CombineReport::sat(
                arr,
                vec![format!("gentle spectrum {spectrum} meets the second theory")],
            ));
        }
    }
    Ok(CombineReport::unsat())
}

/// Smooth least-model against infinite decidability: per arrangement,
/// a finite least size n on the first side is matched by asking the
/// second side for a model with n pairwise distinct fresh elements;
/// an infinite least size is matched by the second theory's
/// infinite-model decision.
pub fn combine_minmod_infdec(p: &CombinationProblem) -> Result<CombineReport> {
    require(p.t1.has_flag(Flag::Smooth), "does not declare smoothness", &p.t1)?;
    require(
        p.t1.has_direct_minmod() || (p.t1.has_witness() && p.t1.witness_is_strong()),
        "supports no least-model computation",
        &p.t1,
    )?;
    require(p.t2.has_infinitely_decidable(), "cannot decide infinite satisfiability", &p.t2)?;
    let (pure, arrangements) = split(p)?;
    for arr in arrangements {
        let delta = arr.to_cube();
        let c1 = conjoin(&pure.cube1, &delta);
        let c2 = conjoin(&pure.cube2, &delta);
        if !p.t1.decide(&c1)?.is_sat() {
            continue;
        }
        match minmod_of(&p.t1, &c1)? {
            MinmodOutcome::Unsat => continue,
            MinmodOutcome::Model(r) => match r.value {
                Card::Fin(n) => {
                    let test = conjoin(&c2, &build_distinct(&fresh_vars(n as usize)));
                    if p.t2.decide(&test)?.is_sat() {
                        return Ok(CombineReport::sat(
                            arr,
                            vec![format!("least size {n} accepted by the second theory")],
                        ));
                    }
                }
                Card::Aleph0 => {
                    if p.t2.infinitely_decidable(&c2)?.is_sat() {
                        return Ok(CombineReport::sat(
                            arr,
                            vec!["both components have infinite models".into()],
                        ));
                    }
                }
            },
        }
    }
    Ok(CombineReport::unsat())
}

/// Both theories gentle: sat iff some arrangement makes the two
/// component spectra intersect.
pub fn combine_both_gentle(p: &CombinationProblem) -> Result<CombineReport> {
    require(p.t1.has_gentle_spectrum(), "has no gentle spectrum function", &p.t1)?;
    require(p.t2.has_gentle_spectrum(), "has no gentle spectrum function", &p.t2)?;
    let (pure, arrangements) = split(p)?;
    for arr in arrangements {
        let delta = arr.to_cube();
        let s1 = p.t1.gentle_spectrum(&conjoin(&pure.cube1, &delta))?;
        let s2 = p.t2.gentle_spectrum(&conjoin(&pure.cube2, &delta))?;
        if !intersect_empty(&s1, &s2) {
            return Ok(CombineReport::sat(
                arr,
                vec![format!("component spectra {s1} and {s2} intersect")],
            ));
        }
    }
    Ok(CombineReport::unsat())
}

/// Runs the selected engine on the problem.
pub fn run_engine(engine: Engine, p: &CombinationProblem) -> Result<CombineReport> {
    match engine {
        Engine::NelsonOppen => combine_nelson_oppen(p),
        Engine::GentleCfs => combine_gentle_cfs(p),
        Engine::MinmodInfdec => combine_minmod_infdec(p),
        Engine::BothGentle => combine_both_gentle(p),
    }
}

/// Formula-level combination: expands the mixed formula to disjunctive
/// normal form and reports sat iff some disjunct cube is sat, carrying
/// the first successful report through.
pub fn run_engine_qf(
    engine: Engine,
    t1: &TheoryHandle,
    t2: &TheoryHandle,
    mixed: &QFFormula,
) -> Result<CombineReport> {
    for cube in mixed.dnf_cubes(DNF_LIMIT)? {
        let p = CombinationProblem { t1: t1.clone(), t2: t2.clone(), mixed: cube };
        let report = run_engine(engine, &p)?;
        if report.verdict.is_sat() {
            return Ok(report);
        }
    }
    Ok(CombineReport::unsat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{build_orbit_formula, OrbitKind, Term};
    use crate::params::samples;
    use crate::parse::parse_cube;
    use crate::theory::{
        teq_handle, tf_handle, tinf_handle, tinfh_handle, tle_handle, tlen_handle, torb2_handle,
    };

    fn problem(t1: TheoryHandle, t2: TheoryHandle, text: &str) -> CombinationProblem {
        let sig = t1.sig().union(t2.sig()).unwrap();
        let mixed = parse_cube(text, &sig).unwrap();
        CombinationProblem { t1, t2, mixed }
    }

    #[test]
    fn stably_infinite_pair_finds_a_shared_arrangement() {
        let p = problem(
            tf_handle(samples::f16()),
            tinf_handle(),
            "(and (not (= (s x) x)) (not (= x y)))",
        );
        let report = combine_nelson_oppen(&p).unwrap();
        assert!(report.verdict.is_sat());
        assert!(report.arrangement.is_some());
    }

    #[test]
    fn reflexive_disequality_is_unsat_under_every_engine() {
        let cases = [
            (Engine::NelsonOppen, tf_handle(samples::f16()), tinf_handle()),
            (Engine::GentleCfs, tlen_handle(3).unwrap(), tle_handle(samples::frel10())),
            (Engine::MinmodInfdec, tinf_handle(), tinfh_handle(samples::h5())),
            (Engine::BothGentle, teq_handle(), tlen_handle(3).unwrap()),
        ];
        for (engine, t1, t2) in cases {
            let p = problem(t1, t2, "(not (= x x))");
            let report = run_engine(engine, &p).unwrap();
            assert_eq!(report.verdict, Verdict::Unsat, "engine {engine}");
        }
    }

    #[test]
    fn clashing_polarities_are_unsat() {
        let p = problem(tf_handle(samples::f16()), tinf_handle(), "(and (= x y) (not (= y x)))");
        assert_eq!(combine_nelson_oppen(&p).unwrap().verdict, Verdict::Unsat);
    }

    #[test]
    fn undeclared_stable_infiniteness_is_refused() {
        let p = problem(teq_handle(), tinf_handle(), "(= x x)");
        assert!(matches!(combine_nelson_oppen(&p), Err(Error::Capability(_))));
    }

    #[test]
    fn overlapping_signatures_are_refused() {
        let t1 = teq_handle();
        let t2 = teq_handle();
        let mixed = parse_cube("(P 2)", t1.sig()).unwrap();
        let p = CombinationProblem { t1, t2, mixed };
        assert!(matches!(combine_both_gentle(&p), Err(Error::Signature(_))));
    }

    #[test]
    fn bounded_size_meets_table_bound() {
        let p = problem(
            tlen_handle(3).unwrap(),
            tle_handle(samples::frel10()),
            "(and (P 5) (not (= x y)))",
        );
        let report = combine_gentle_cfs(&p).unwrap();
        assert!(report.verdict.is_sat());
    }

    #[test]
    fn three_distinct_elements_overshoot_the_table_bound() {
        let p = problem(
            tlen_handle(3).unwrap(),
            tle_handle(samples::frel10()),
            "(and (P 5) (not (= x y)) (not (= x z)) (not (= y z)))",
        );
        assert_eq!(combine_gentle_cfs(&p).unwrap().verdict, Verdict::Unsat);
    }

    #[test]
    fn infinite_side_accepts_a_large_predicate() {
        let p = problem(
            tinf_handle(),
            tinfh_handle(samples::h5()),
            "(and (P 4) (not (= x y)))",
        );
        let report = combine_minmod_infdec(&p).unwrap();
        assert!(report.verdict.is_sat());
    }

    #[test]
    fn size_one_predicate_clashes_with_the_infinite_side() {
        let p = problem(tinf_handle(), tinfh_handle(samples::h5()), "(P 1)");
        assert_eq!(combine_minmod_infdec(&p).unwrap().verdict, Verdict::Unsat);
    }

    #[test]
    fn exact_size_meets_orbit_spectrum() {
        let t1 = teq_handle();
        let t2 = torb2_handle();
        let orb = build_orbit_formula(OrbitKind::Orb, 2, "t", &Term::constant("a")).unwrap();
        let mixed =
            QFFormula::And(vec![QFFormula::Lit(crate::logic::Literal::pred(3)), orb]);
        let report = run_engine_qf(Engine::BothGentle, &t1, &t2, &mixed).unwrap();
        assert!(report.verdict.is_sat());
        let detail = report.details.join("; ");
        assert!(detail.contains("{3}") && detail.contains("{2,3,4}"), "{detail}");
    }

    #[test]
    fn exact_size_five_misses_the_bound_of_three() {
        let p = problem(teq_handle(), tlen_handle(3).unwrap(), "(P 5)");
        assert_eq!(combine_both_gentle(&p).unwrap().verdict, Verdict::Unsat);
    }

    #[test]
    fn gentle_engines_agree_on_shared_prerequisites() {
        let texts = [
            "(P 5)",
            "(and (P 2) (not (= x y)))",
            "(and (P 3) (not (= x y)) (not (= x z)) (not (= y z)))",
            "(and (P 4) (= x y))",
            "(not (= x y))",
        ];
        for text in texts {
            let p = problem(teq_handle(), tlen_handle(3).unwrap(), text);
            let a = combine_both_gentle(&p).unwrap().verdict;
            let b = combine_gentle_cfs(&p).unwrap().verdict;
            assert_eq!(a, b, "on {text}");
        }
    }

    #[test]
    fn adding_a_literal_never_recovers_satisfiability() {
        let base = problem(
            tlen_handle(3).unwrap(),
            tle_handle(samples::frel10()),
            "(and (P 5) (not (= x y)) (not (= x z)) (not (= y z)))",
        );
        assert_eq!(combine_gentle_cfs(&base).unwrap().verdict, Verdict::Unsat);
        let mut tightened = base.clone();
        tightened.mixed.push(crate::logic::Literal::pred(2));
        assert_eq!(combine_gentle_cfs(&tightened).unwrap().verdict, Verdict::Unsat);
    }
}

