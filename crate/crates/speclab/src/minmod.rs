//! Least-model-size computation: from a strong witness, enumerate
//! arrangements of the witness variables and take the smallest block
//! count whose instantiation the theory decides satisfiable.
//!
//! The size of a model of the witness form is pinned by which witness
//! variables share values, so the minimum over arrangements is the
//! minimum over all models. Theories without a witness can still
//! supply a least size directly (the infinite-only theory reports ℵ₀);
//! [`minmod_of`] picks whichever route the handle supports.

use crate::error::{Error, Result};
use crate::logic::{
    enumerate_arrangements, fresh_var, Arrangement, Cube, Literal, QFFormula, Term, DNF_LIMIT,
};
use crate::spectra::Card;
use crate::theory::TheoryHandle;

/// Cap on the number of witness variables the extractor will
/// partition. Partition counts grow as Bell numbers, so this is a hard
/// feasibility line, not a tunable.
pub const MINMOD_VAR_LIMIT: usize = 9;

/// The least model size of a satisfiable cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinmodResult {
    pub value: Card,
    /// The arrangement attaining the minimum; present exactly when the
    /// value is finite.
    pub witness_arrangement: Option<Arrangement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinmodOutcome {
    Unsat,
    Model(MinmodResult),
}

impl MinmodOutcome {
    pub fn value(&self) -> Option<Card> {
        match self {
            MinmodOutcome::Unsat => None,
            MinmodOutcome::Model(r) => Some(r.value),
        }
    }
}

/// Computes the least model size of `cube` through the handle's strong
/// witness: the minimum block count over all arrangements of the
/// witness variables whose instantiation is decided sat. Reports unsat
/// when no arrangement survives and the input itself is unsat; a
/// satisfiable input with no surviving arrangement is a broken witness
/// and comes back as a contract error.
pub fn minmod_from_strong_witness(
    handle: &TheoryHandle,
    cube: &Cube,
) -> Result<MinmodOutcome> {
    if !handle.has_witness() || !handle.witness_is_strong() {
        return Err(Error::Capability(format!(
            "theory '{}' has no strong witness function",
            handle.name()
        )));
    }
    let wit = handle.witness(cube)?;
    let mut base = wit.cube;
    let mut vars = base.vars();
    if vars.is_empty() {
        // A variable-free witness cube constrains sizes without naming
        // any element. One reflexive equation over a fresh variable
        // gives the arrangement loop something to partition without
        // changing the models.
        let w = fresh_var();
        base.push(Literal::eq(Term::var(w.clone()), Term::var(w.clone())));
        vars.insert(w);
    }
    if vars.len() > MINMOD_VAR_LIMIT {
        return Err(Error::Limit(format!(
            "least-model search over {} witness variables exceeds the cap of {MINMOD_VAR_LIMIT}",
            vars.len()
        )));
    }

    let mut best: Option<(u32, Arrangement)> = None;
    for arr in enumerate_arrangements(&vars, MINMOD_VAR_LIMIT)? {
        let blocks = arr.n_blocks() as u32;
        if best.as_ref().is_some_and(|(b, _)| blocks >= *b) {
            continue;
        }
        let mut inst = base.clone();
        inst.0.extend(arr.to_cube().0);
        if handle.decide(&inst)?.is_sat() {
            best = Some((blocks, arr));
        }
    }
    match best {
        Some((value, arr)) => Ok(MinmodOutcome::Model(MinmodResult {
            value: Card::Fin(value),
            witness_arrangement: Some(arr),
        })),
        None => {
            if handle.decide(cube)?.is_sat() {
                Err(Error::Contract(format!(
                    "strong witness for '{}' left no satisfiable arrangement \
                     although the input is satisfiable",
                    handle.name()
                )))
            } else {
                Ok(MinmodOutcome::Unsat)
            }
        }
    }
}

/// Least model size by whatever route the handle supports: the strong
/// witness extractor when a witness is present, otherwise the handle's
/// own direct least-model function.
pub fn minmod_of(handle: &TheoryHandle, cube: &Cube) -> Result<MinmodOutcome> {
    if handle.has_witness() && handle.witness_is_strong() {
        return minmod_from_strong_witness(handle, cube);
    }
    if handle.has_direct_minmod() {
        if !handle.decide(cube)?.is_sat() {
            return Ok(MinmodOutcome::Unsat);
        }
        let value = handle.direct_minmod(cube)?;
        return Ok(MinmodOutcome::Model(MinmodResult { value, witness_arrangement: None }));
    }
    Err(Error::Capability(format!(
        "theory '{}' supports no least-model computation",
        handle.name()
    )))
}

/// Formula-level least model size: the minimum of [`minmod_of`] over
/// the disjuncts of the disjunctive normal form, unsat disjuncts
/// skipped.
pub fn minmod_qf(handle: &TheoryHandle, formula: &QFFormula) -> Result<MinmodOutcome> {
    let mut best: Option<MinmodResult> = None;
    for cube in formula.dnf_cubes(DNF_LIMIT)? {
        if let MinmodOutcome::Model(r) = minmod_of(handle, &cube)? {
            if best.as_ref().is_none_or(|b| r.value < b.value) {
                best = Some(r);
            }
        }
    }
    Ok(match best {
        Some(r) => MinmodOutcome::Model(r),
        None => MinmodOutcome::Unsat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{build_distinct, build_orbit_formula, OrbitKind};
    use crate::parse::parse_cube;
    use crate::search::{brute_spectrum_pruned, find_model, SearchOpts};
    use crate::theory::{teq_handle, tinf_handle, tle_handle, torb2_handle};

    fn extractor_value(handle: &TheoryHandle, cube: &Cube) -> u32 {
        match minmod_from_strong_witness(handle, cube).unwrap() {
            MinmodOutcome::Model(MinmodResult { value: Card::Fin(n), witness_arrangement }) => {
                assert!(witness_arrangement.is_some());
                n
            }
            other => panic!("expected a finite least model, got {other:?}"),
        }
    }

    fn check_reproduces(handle: &TheoryHandle, cube: &Cube) {
        let out = minmod_from_strong_witness(handle, cube).unwrap();
        let MinmodOutcome::Model(r) = out else { panic!("expected sat") };
        let Card::Fin(k) = r.value else { panic!("expected finite") };
        let wit = handle.witness(cube).unwrap();
        let mut inst = wit.cube;
        inst.0.extend(r.witness_arrangement.unwrap().to_cube().0);
        let opts = SearchOpts::pruned().with_limit(k.max(7));
        let m = find_model(
            &QFFormula::from_cube(&inst),
            handle.sig(),
            k,
            &handle.member(),
            &opts,
        )
        .unwrap();
        let m = m.expect("arrangement must reproduce a model at exactly its block count");
        assert!(m.eval_cube(cube).unwrap());
    }

    #[test]
    fn exact_predicate_forces_three() {
        let h = teq_handle();
        let cube = parse_cube("(P 3)", h.sig()).unwrap();
        assert_eq!(extractor_value(&h, &cube), 3);
        let brute =
            brute_spectrum_pruned(&QFFormula::from_cube(&cube), h.sig(), &h.member(), 6).unwrap();
        assert_eq!(brute.first().copied(), Some(3));
        check_reproduces(&h, &cube);
    }

    #[test]
    fn one_disequality_forces_two() {
        let h = teq_handle();
        let cube = parse_cube("(not (= x y))", h.sig()).unwrap();
        assert_eq!(extractor_value(&h, &cube), 2);
        check_reproduces(&h, &cube);
    }

    #[test]
    fn variable_free_predicate_forces_one() {
        let h = teq_handle();
        let cube = parse_cube("(P 1)", h.sig()).unwrap();
        assert_eq!(extractor_value(&h, &cube), 1);
        check_reproduces(&h, &cube);
    }

    #[test]
    fn orbit_of_size_two_starts_at_two() {
        let h = torb2_handle();
        let orb = build_orbit_formula(OrbitKind::Orb, 2, "t", &Term::constant("a")).unwrap();
        match minmod_qf(&h, &orb).unwrap() {
            MinmodOutcome::Model(r) => assert_eq!(r.value, Card::Fin(2)),
            other => panic!("expected sat, got {other:?}"),
        }
        for cube in orb.dnf_cubes(64).unwrap() {
            if h.decide(&cube).unwrap().is_sat() {
                assert_eq!(extractor_value(&h, &cube), 2);
                check_reproduces(&h, &cube);
            }
        }
    }

    #[test]
    fn fixed_point_loop_starts_at_one() {
        let h = torb2_handle();
        let cube = parse_cube("(= (t a) a)", h.sig()).unwrap();
        assert_eq!(extractor_value(&h, &cube), 1);
        check_reproduces(&h, &cube);
    }

    #[test]
    fn unsat_input_reports_unsat() {
        let h = teq_handle();
        let cube = parse_cube("(not (= x x))", h.sig()).unwrap();
        assert_eq!(minmod_from_strong_witness(&h, &cube).unwrap(), MinmodOutcome::Unsat);
    }

    #[test]
    fn infinite_theory_routes_through_direct_minmod() {
        let h = tinf_handle();
        let sat = parse_cube("(= x x)", h.sig()).unwrap();
        match minmod_of(&h, &sat).unwrap() {
            MinmodOutcome::Model(r) => {
                assert_eq!(r.value, Card::Aleph0);
                assert!(r.witness_arrangement.is_none());
            }
            other => panic!("expected sat, got {other:?}"),
        }
        let unsat = parse_cube("(not (= x x))", h.sig()).unwrap();
        assert_eq!(minmod_of(&h, &unsat).unwrap(), MinmodOutcome::Unsat);
    }

    #[test]
    fn theory_without_any_route_is_refused() {
        let h = tle_handle(crate::params::samples::frel10());
        let cube = parse_cube("(= x x)", h.sig()).unwrap();
        assert!(matches!(minmod_of(&h, &cube), Err(Error::Capability(_))));
    }

    #[test]
    fn variable_cap_is_enforced() {
        let h = teq_handle();
        let vars: Vec<String> = (1..=9).map(|i| format!("x{i}")).collect();
        let cube = build_distinct(&vars);
        assert!(matches!(
            minmod_from_strong_witness(&h, &cube),
            Err(Error::Limit(_))
        ));
    }
}
