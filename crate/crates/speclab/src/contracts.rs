//! Sampled runtime checks of the promises a theory handle declares
//! about its witness function and its smoothness flag.
//!
//! Both checks are finite-scale: they exercise model sizes up to a
//! caller-chosen bound and report every violation found rather than
//! stopping at the first. A clean report at desk scale is evidence,
//! not proof; the point is to catch broken witness implementations
//! early and mechanically.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::logic::{enumerate_arrangements, fresh_vars, Cube, QFFormula, ARRANGEMENT_LIMIT};
use crate::search::{find_model, SearchOpts};
use crate::theory::{Flag, TheoryHandle};

/// Outcome of [`check_witness_contract`]: counters for what was
/// exercised plus one printable line per violation.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub theory: String,
    /// Sizes 1..=this were checked for sat-equivalence of the input
    /// and its witness form.
    pub max_size: u32,
    /// Arrangements whose instantiation was decided (strong check).
    pub arrangements_checked: usize,
    /// Arrangements skipped because the instantiated formula had no
    /// variables at all, leaving no named domain to ask for.
    pub arrangements_skipped: usize,
    pub violations: Vec<String>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the two witness conditions on `cube` at model sizes up to
/// `max_size`:
///
/// 1. at every size, the input has a model exactly when its witness
///    form does, and each witness model found also satisfies the
///    input;
/// 2. if the witness is flagged strong: for every arrangement over the
///    witness variables whose instantiation the handle decides sat,
///    a model exists whose whole domain is named by those variables,
///    of size equal to the arrangement's block count.
pub fn check_witness_contract(
    handle: &TheoryHandle,
    cube: &Cube,
    max_size: u32,
) -> Result<WitnessReport> {
    check_witness_contract_with_extras(handle, cube, max_size, 0)
}

/// Like [`check_witness_contract`], but the arrangement check runs
/// over the witness variables plus `extra` fresh variables, probing
/// arrangements that identify fresh names with witness names or with
/// each other.
pub fn check_witness_contract_with_extras(
    handle: &TheoryHandle,
    cube: &Cube,
    max_size: u32,
    extra: usize,
) -> Result<WitnessReport> {
    if !handle.has_witness() {
        return Err(Error::Capability(format!(
            "theory '{}' has no witness function",
            handle.name()
        )));
    }
    let wit = handle.witness(cube)?;
    let member = handle.member();
    let mut report = WitnessReport {
        theory: handle.name().to_string(),
        max_size,
        arrangements_checked: 0,
        arrangements_skipped: 0,
        violations: Vec::new(),
    };

    let phi = QFFormula::from_cube(cube);
    let psi = QFFormula::from_cube(&wit.cube);
    let opts = SearchOpts::pruned().with_limit(max_size.max(7));
    for k in 1..=max_size {
        let phi_model = find_model(&phi, handle.sig(), k, &member, &opts)?;
        let wit_model = find_model(&psi, handle.sig(), k, &member, &opts)?;
        if phi_model.is_some() != wit_model.is_some() {
            report.violations.push(format!(
                "size {k}: input {} a model but witness form {}",
                if phi_model.is_some() { "has" } else { "lacks" },
                if wit_model.is_some() { "has one" } else { "lacks one" },
            ));
        }
        if let Some(m) = &wit_model {
            if !m.eval_cube(cube)? {
                report
                    .violations
                    .push(format!("size {k}: witness model does not satisfy the input"));
            }
        }
    }

    if handle.witness_is_strong() {
        let mut vars: BTreeSet<String> = wit.cube.vars();
        vars.extend(fresh_vars(extra));
        for arr in enumerate_arrangements(&vars, ARRANGEMENT_LIMIT)? {
            let mut inst = wit.cube.clone();
            inst.0.extend(arr.to_cube().0);
            if !handle.decide(&inst)?.is_sat() {
                continue;
            }
            let blocks = arr.n_blocks() as u32;
            if blocks == 0 {
                report.arrangements_skipped += 1;
                continue;
            }
            report.arrangements_checked += 1;
            let named = SearchOpts::pruned().with_limit(blocks.max(7)).named_domain();
            let inst_f = QFFormula::from_cube(&inst);
            match find_model(&inst_f, handle.sig(), blocks, &member, &named)? {
                Some(m) => {
                    if !m.eval_cube(cube)? {
                        report.violations.push(format!(
                            "arrangement {arr}: named-domain model does not satisfy the input"
                        ));
                    }
                }
                None => report.violations.push(format!(
                    "arrangement {arr}: decided sat but no size-{blocks} model \
                     with a fully named domain"
                )),
            }
        }
    }

    Ok(report)
}

/// Largest base size the smoothness sampler starts a probe from.
pub const SMOOTH_CEILING: u32 = 5;

/// Outcome of [`check_smoothness_sample`].
#[derive(Debug, Clone)]
pub struct SmoothnessReport {
    pub theory: String,
    pub window: u32,
    /// Sizes up to [`SMOOTH_CEILING`] at which the cube had a model.
    pub sizes_with_model: Vec<u32>,
    pub violations: Vec<String>,
}

impl SmoothnessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples the declared smoothness of a theory: wherever `cube` has a
/// model of size `k <= SMOOTH_CEILING`, models must also exist at every
/// size in `k+1 ..= k+window`. Refuses theories that do not declare the
/// smooth flag. A cube with no small models passes vacuously.
pub fn check_smoothness_sample(
    handle: &TheoryHandle,
    cube: &Cube,
    window: u32,
) -> Result<SmoothnessReport> {
    if !handle.has_flag(Flag::Smooth) {
        return Err(Error::Capability(format!(
            "theory '{}' does not declare smoothness",
            handle.name()
        )));
    }
    let member = handle.member();
    let phi = QFFormula::from_cube(cube);
    let top = SMOOTH_CEILING + window;
    let opts = SearchOpts::pruned().with_limit(top.max(7));
    let mut has_model = vec![false; top as usize + 1];
    for k in 1..=top {
        has_model[k as usize] = find_model(&phi, handle.sig(), k, &member, &opts)?.is_some();
    }

    let mut report = SmoothnessReport {
        theory: handle.name().to_string(),
        window,
        sizes_with_model: (1..=SMOOTH_CEILING).filter(|&k| has_model[k as usize]).collect(),
        violations: Vec::new(),
    };
    for k in 1..=SMOOTH_CEILING {
        if !has_model[k as usize] {
            continue;
        }
        for j in k + 1..=k + window {
            if !has_model[j as usize] {
                report
                    .violations
                    .push(format!("model at size {k} but none at size {j}"));
            }
        }
    }
    Ok(report)
}
