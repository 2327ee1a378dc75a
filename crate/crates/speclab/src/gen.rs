//! Seeded random cube generation for differential testing. Each
//! configuration describes the literal shapes one theory's procedures
//! accept, so the fuzz loops can hammer a procedure and its brute-force
//! counterpart with the same streams of inputs. All draws go through a
//! caller-provided RNG; fixing the seed fixes the cubes.

use rand::Rng;

use crate::logic::{Atom, Cube, Literal, Term};

/// Shape limits for one stream of random cubes.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub vars: Vec<String>,
    pub consts: Vec<String>,
    pub funcs: Vec<String>,
    /// Inclusive index range of the predicate family, when present.
    pub preds: Option<(u32, u32)>,
    /// Probability of drawing a predicate literal when both kinds are
    /// available.
    pub pred_bias: f64,
    pub min_lits: usize,
    pub max_lits: usize,
    /// Deepest function application chain over a variable base.
    pub max_var_depth: u32,
    /// Deepest function application chain over a constant base.
    pub max_const_depth: u32,
}

impl GenConfig {
    /// Disequality/equality cubes over plain variables: the shape the
    /// pure-equality theories decide.
    pub fn equality_only() -> GenConfig {
        GenConfig {
            vars: names(&["x", "y", "z", "w"]),
            consts: Vec::new(),
            funcs: Vec::new(),
            preds: None,
            pred_bias: 0.0,
            min_lits: 1,
            max_lits: 5,
            max_var_depth: 0,
            max_const_depth: 0,
        }
    }

    /// Indexed predicates mixed with variable equalities.
    pub fn pred_theory(lo: u32, hi: u32) -> GenConfig {
        GenConfig {
            vars: names(&["x", "y", "z"]),
            preds: Some((lo, hi)),
            pred_bias: 0.5,
            ..GenConfig::equality_only()
        }
    }

    /// Equalities over `s`-chains on two variables: the fixpoint-profile
    /// theories.
    pub fn unary_fixpoint() -> GenConfig {
        GenConfig {
            vars: names(&["x", "y"]),
            funcs: names(&["s"]),
            min_lits: 1,
            max_lits: 4,
            max_var_depth: 2,
            ..GenConfig::equality_only()
        }
    }

    /// Equalities over `t`-iterates of the constant `a`, plus shallow
    /// variable terms: the orbit theories.
    pub fn orbit() -> GenConfig {
        GenConfig {
            vars: names(&["x", "y"]),
            consts: names(&["a"]),
            funcs: names(&["t"]),
            min_lits: 1,
            max_lits: 5,
            max_var_depth: 1,
            max_const_depth: 4,
            ..GenConfig::equality_only()
        }
    }

    /// Union of two configurations, for mixed-signature cubes. The
    /// variable pools are merged, so the two signatures' literals share
    /// variables and purification has something to do.
    pub fn merge(&self, other: &GenConfig) -> GenConfig {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        let mut consts = self.consts.clone();
        for c in &other.consts {
            if !consts.contains(c) {
                consts.push(c.clone());
            }
        }
        let mut funcs = self.funcs.clone();
        for f in &other.funcs {
            if !funcs.contains(f) {
                funcs.push(f.clone());
            }
        }
        let preds = self.preds.or(other.preds);
        GenConfig {
            vars,
            consts,
            funcs,
            preds,
            pred_bias: if preds.is_some() { self.pred_bias.max(other.pred_bias).max(0.4) } else { 0.0 },
            min_lits: self.min_lits.min(other.min_lits),
            max_lits: self.max_lits.max(other.max_lits),
            max_var_depth: self.max_var_depth.max(other.max_var_depth),
            max_const_depth: self.max_const_depth.max(other.max_const_depth),
        }
    }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn random_term<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Term {
    let const_choices = if cfg.consts.is_empty() { 0 } else { 1 };
    let pick_const = const_choices == 1 && (cfg.vars.is_empty() || rng.gen_bool(0.5));
    let (base, depth_cap) = if pick_const {
        let c = &cfg.consts[rng.gen_range(0..cfg.consts.len())];
        (Term::constant(c.clone()), cfg.max_const_depth)
    } else {
        let v = &cfg.vars[rng.gen_range(0..cfg.vars.len())];
        (Term::var(v.clone()), cfg.max_var_depth)
    };
    if cfg.funcs.is_empty() || depth_cap == 0 {
        return base;
    }
    let f = &cfg.funcs[rng.gen_range(0..cfg.funcs.len())];
    let depth = rng.gen_range(0..=depth_cap);
    Term::iterate(f, base, depth)
}

fn random_literal<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Literal {
    let positive = rng.gen_bool(0.5);
    if let Some((lo, hi)) = cfg.preds {
        if rng.gen_bool(cfg.pred_bias) {
            return Literal { positive, atom: Atom::Pred(rng.gen_range(lo..=hi)) };
        }
    }
    let l = random_term(rng, cfg);
    let r = random_term(rng, cfg);
    Literal { positive, atom: Atom::Eq(l, r) }
}

/// One random cube within the configuration's shape limits.
pub fn random_cube<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Cube {
    let n = rng.gen_range(cfg.min_lits..=cfg.max_lits);
    Cube((0..n).map(|_| random_literal(rng, cfg)).collect())
}
