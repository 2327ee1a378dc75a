//! Helpers shared by the integration suites: generator presets per
//! theory, seeded cube streams, the engine/pair matchups, and an
//! engine-free ground truth for combined satisfiability.
#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use speclab::combine::Engine;
use speclab::gen::{random_cube, GenConfig};
use speclab::logic::{Cube, QFFormula};
use speclab::member::TheoryMembership;
use speclab::params::{samples, ParamSet};
use speclab::search::brute_spectrum_pruned;
use speclab::theory::{theory_by_name, TheoryHandle};
use speclab::Result;

pub fn params() -> ParamSet {
    samples::param_set()
}

pub fn handle(name: &str) -> TheoryHandle {
    theory_by_name(name, &params()).unwrap()
}

/// The cube generator whose shapes stay inside the named theory's
/// decision procedures.
pub fn preset(name: &str) -> GenConfig {
    match name {
        "teq" => GenConfig::pred_theory(1, 7),
        "tle" => GenConfig::pred_theory(1, 10),
        "tinfh" => GenConfig::pred_theory(1, 6),
        "tlen:3" | "tinf" => GenConfig::equality_only(),
        "tf" | "tg" => GenConfig::unary_fixpoint(),
        "torb2" | "tleorb" => GenConfig::orbit(),
        other => panic!("no generator preset for theory '{other}'"),
    }
}

/// Like [`preset`], but tuned so witness instantiations stay small:
/// the witness-backed suites sweep arrangements of the witness
/// variables, and chain or index depth directly controls how many of
/// those variables a cube can demand.
pub fn shallow(name: &str) -> GenConfig {
    match name {
        "teq" => GenConfig::pred_theory(1, 4),
        "torb2" => GenConfig { max_const_depth: 2, max_lits: 4, ..GenConfig::orbit() },
        other => panic!("no shallow preset for theory '{other}'"),
    }
}

pub fn cubes(seed: u64, cfg: &GenConfig, n: usize) -> Vec<Cube> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_cube(&mut rng, cfg)).collect()
}

/// The four engine/pair matchups the combination suites exercise, each
/// pair ordered to satisfy its engine's capability prerequisites.
pub const PAIRS: [(Engine, &str, &str); 4] = [
    (Engine::NelsonOppen, "tf", "tinf"),
    (Engine::BothGentle, "teq", "tlen:3"),
    (Engine::GentleCfs, "tlen:3", "tle"),
    (Engine::MinmodInfdec, "tinf", "tinfh"),
];

/// Combined satisfiability decided without any combination engine.
/// Pairs containing the infinite-only theory admit no finite combined
/// model, so the other side's infinite-model characterization answers;
/// every other catalogue pair forces sizes well under 6, where search
/// over the union signature with both membership checks is complete.
pub fn ground_truth(t1: &TheoryHandle, t2: &TheoryHandle, cube: &Cube) -> Result<bool> {
    if t1.name() == "tinf" || t2.name() == "tinf" {
        let other = if t1.name() == "tinf" { t2 } else { t1 };
        return other.has_infinite_model(cube);
    }
    let sig = t1.sig().union(t2.sig())?;
    let member = TheoryMembership::Both(Box::new(t1.member()), Box::new(t2.member()));
    let spectrum = brute_spectrum_pruned(&QFFormula::from_cube(cube), &sig, &member, 6)?;
    Ok(!spectrum.is_empty())
}
