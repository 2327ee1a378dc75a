//! Uniform theory handles: each catalogue theory bundled with whichever
//! of the algorithmic capabilities it implements (decision, spectrum,
//! finite-membership, witness, minimal model, infinite decidability)
//! plus declared metadata the combination engines rely on.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{Cube, QFFormula, Signature, DNF_LIMIT};
use crate::member::TheoryMembership;
use crate::params::{FRelation, FTable, GTable, HTable, ParamSet};
use crate::spectra::{Card, Spectrum};
use crate::theories::{teq, tf, tinf, tinfh, tle, tlen, tleorb, torb2, Verdict, Witness};

/// Declared, non-algorithmic properties a theory claims. Combination
/// engines trust these exactly as their theorems assume them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Flag {
    StablyInfinite,
    Smooth,
    FiniteModelProperty,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flag::StablyInfinite => write!(f, "stably-infinite"),
            Flag::Smooth => write!(f, "smooth"),
            Flag::FiniteModelProperty => write!(f, "finite-model-property"),
        }
    }
}

#[derive(Debug, Clone)]
enum Kind {
    Teq,
    Tle(FRelation),
    Tinf,
    Tf(FTable),
    Tg(GTable),
    Torb2,
    Tleorb(FRelation),
    Tinfh(HTable),
    Tlen(u32),
}

/// A capability record for one catalogue theory. Optional capabilities
/// return a capability error when the theory does not implement them.
#[derive(Debug, Clone)]
pub struct TheoryHandle {
    name: String,
    kind: Kind,
    sig: Signature,
    flags: BTreeSet<Flag>,
}

fn missing(handle: &TheoryHandle, what: &str) -> Error {
    Error::Capability(format!("theory '{}' does not implement {what}", handle.name))
}

impl TheoryHandle {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn flags(&self) -> &BTreeSet<Flag> {
        &self.flags
    }

    pub fn has_flag(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }

    /// The finite-model membership semantics of the theory, as used by
    /// brute-force search.
    pub fn member(&self) -> TheoryMembership {
        match &self.kind {
            Kind::Teq => TheoryMembership::ExactSize,
            Kind::Tle(f) => TheoryMembership::TableBoundedSize(f.clone()),
            Kind::Tinf => TheoryMembership::InfiniteOnly,
            Kind::Tf(f) => TheoryMembership::FixpointProfile(f.clone()),
            Kind::Tg(g) => TheoryMembership::FixpointProfile(g.as_ftable().clone()),
            Kind::Torb2 => TheoryMembership::OrbitHalf,
            Kind::Tleorb(f) => TheoryMembership::OrbitTableBounded(f.clone()),
            Kind::Tinfh(h) => TheoryMembership::SizeOnePinned(h.clone()),
            Kind::Tlen(n) => TheoryMembership::BoundedSize(*n),
        }
    }

    /// Decides satisfiability of a cube over this theory's signature.
    pub fn decide(&self, cube: &Cube) -> Result<Verdict> {
        match &self.kind {
            Kind::Teq => teq::decide(cube),
            Kind::Tle(f) => tle::decide(cube, f),
            Kind::Tinf => tinf::decide(cube),
            // Satisfiability is independent of the fixpoint tables.
            Kind::Tf(_) | Kind::Tg(_) => tf::decide(cube),
            Kind::Torb2 => torb2::decide(cube),
            Kind::Tleorb(f) => tleorb::decide(cube, f),
            // Satisfiability is independent of h.
            Kind::Tinfh(_) => tinfh::decide(cube),
            Kind::Tlen(n) => tlen::decide(cube, *n),
        }
    }

    /// Decides a general quantifier-free formula by expanding it to
    /// disjunctive normal form and deciding each disjunct cube.
    pub fn decide_qf(&self, formula: &QFFormula) -> Result<Verdict> {
        for cube in formula.dnf_cubes(DNF_LIMIT)? {
            if self.decide(&cube)?.is_sat() {
                return Ok(Verdict::Sat);
            }
        }
        Ok(Verdict::Unsat)
    }

    pub fn has_gentle_spectrum(&self) -> bool {
        matches!(self.kind, Kind::Teq | Kind::Torb2 | Kind::Tlen(_))
    }

    /// The exact cardinality spectrum of a cube, for the theories whose
    /// spectra have the computable finite/co-finite shape.
    pub fn gentle_spectrum(&self, cube: &Cube) -> Result<Spectrum> {
        match &self.kind {
            Kind::Teq => teq::spectrum(cube),
            Kind::Torb2 => torb2::spectrum(cube),
            Kind::Tlen(n) => tlen::spectrum(cube, *n),
            _ => Err(missing(self, "a gentle spectrum")),
        }
    }

    /// Spectrum for display purposes: the gentle theories expose their
    /// exact spectra, and the infinite theory exposes its one-point
    /// spectrum, which has no finite/co-finite shape.
    pub fn display_spectrum(&self, cube: &Cube) -> Result<Spectrum> {
        match &self.kind {
            Kind::Tinf => tinf::spectrum(cube),
            _ => self.gentle_spectrum(cube),
        }
    }

    /// Per-disjunct union of `display_spectrum` over a QF formula.
    pub fn display_spectrum_qf(&self, formula: &QFFormula) -> Result<Spectrum> {
        let mut acc = Spectrum::empty();
        for cube in formula.dnf_cubes(DNF_LIMIT)? {
            acc = acc.union(&self.display_spectrum(&cube)?)?;
        }
        Ok(acc)
    }

    pub fn has_contains_finite(&self) -> bool {
        matches!(
            self.kind,
            Kind::Teq | Kind::Tle(_) | Kind::Torb2 | Kind::Tlen(_)
        )
    }

    /// Whether size k belongs to the spectrum of the cube.
    pub fn contains_finite(&self, cube: &Cube, k: u32) -> Result<bool> {
        match &self.kind {
            Kind::Teq => teq::contains_finite(cube, k),
            Kind::Tle(f) => tle::contains_finite(cube, k, f),
            Kind::Torb2 => torb2::contains_finite(cube, k),
            Kind::Tlen(n) => tlen::contains_finite(cube, k, *n),
            _ => Err(missing(self, "finite-spectrum membership")),
        }
    }

    pub fn has_witness(&self) -> bool {
        matches!(self.kind, Kind::Teq | Kind::Torb2)
    }

    /// Both implemented witnesses satisfy the strong property: models
    /// of the witness conjoined with an arrangement restrict to models
    /// on the named elements.
    pub fn witness_is_strong(&self) -> bool {
        self.has_witness()
    }

    pub fn witness(&self, cube: &Cube) -> Result<Witness> {
        match &self.kind {
            Kind::Teq => teq::witness(cube),
            Kind::Torb2 => torb2::witness(cube),
            _ => Err(missing(self, "a finite witness")),
        }
    }

    pub fn has_direct_minmod(&self) -> bool {
        matches!(self.kind, Kind::Tinf)
    }

    /// The minimal-model capability supplied directly by the handle
    /// (only the infinite theory, whose satisfiable cubes all have the
    /// infinite minimal model). The witness-backed theories compute
    /// minimal models through the generic extractor instead.
    pub fn direct_minmod(&self, cube: &Cube) -> Result<Card> {
        match &self.kind {
            Kind::Tinf => tinf::minmod(cube),
            _ => Err(missing(self, "a direct minimal-model function")),
        }
    }

    pub fn has_infinitely_decidable(&self) -> bool {
        matches!(
            self.kind,
            Kind::Tinf | Kind::Tinfh(_) | Kind::Tle(_) | Kind::Tleorb(_)
        )
    }

    /// Whether the cube is satisfiable in an infinite model, for the
    /// theories where that is decidable. The table-backed theories
    /// need explicit rows for the indices the cube mentions.
    pub fn infinitely_decidable(&self, cube: &Cube) -> Result<Verdict> {
        match &self.kind {
            Kind::Tinf => tinf::infinitely_decidable(cube),
            Kind::Tinfh(_) => tinfh::infinitely_decidable(cube),
            Kind::Tle(f) => Ok(Verdict::from_bool(tle::has_infinite_model(cube, f)?)),
            Kind::Tleorb(f) => Ok(Verdict::from_bool(tleorb::has_infinite_model(cube, f)?)),
            _ => Err(missing(self, "infinite-model decidability")),
        }
    }

    /// Analytic infinite-model characterization, available for every
    /// catalogue theory. Test harnesses use it as the infinite half of
    /// ground-truth checks.
    pub fn has_infinite_model(&self, cube: &Cube) -> Result<bool> {
        match &self.kind {
            Kind::Teq => Ok(teq::spectrum(cube)?.contains(Card::Aleph0)),
            Kind::Tle(f) => tle::has_infinite_model(cube, f),
            Kind::Tinf => Ok(tinf::decide(cube)?.is_sat()),
            // Stably infinite: satisfiable cubes always extend to
            // infinite models.
            Kind::Tf(_) | Kind::Tg(_) => Ok(tf::decide(cube)?.is_sat()),
            Kind::Torb2 => Ok(torb2::spectrum(cube)?.contains(Card::Aleph0)),
            Kind::Tleorb(f) => tleorb::has_infinite_model(cube, f),
            Kind::Tinfh(_) => Ok(tinfh::infinitely_decidable(cube)?.is_sat()),
            Kind::Tlen(_) => Ok(false),
        }
    }
}

fn flags(list: &[Flag]) -> BTreeSet<Flag> {
    list.iter().copied().collect()
}

pub fn teq_handle() -> TheoryHandle {
    TheoryHandle {
        name: "teq".into(),
        kind: Kind::Teq,
        sig: Signature::indexed_preds(),
        flags: flags(&[Flag::FiniteModelProperty]),
    }
}

pub fn tle_handle(frel: FRelation) -> TheoryHandle {
    TheoryHandle {
        name: "tle".into(),
        kind: Kind::Tle(frel),
        sig: Signature::indexed_preds(),
        flags: flags(&[Flag::FiniteModelProperty]),
    }
}

pub fn tinf_handle() -> TheoryHandle {
    TheoryHandle {
        name: "tinf".into(),
        kind: Kind::Tinf,
        sig: Signature::empty(),
        flags: flags(&[Flag::StablyInfinite, Flag::Smooth]),
    }
}

pub fn tf_handle(f: FTable) -> TheoryHandle {
    TheoryHandle {
        name: "tf".into(),
        kind: Kind::Tf(f),
        sig: Signature::unary_s(),
        flags: flags(&[Flag::StablyInfinite, Flag::Smooth, Flag::FiniteModelProperty]),
    }
}

pub fn tg_handle(g: GTable) -> TheoryHandle {
    TheoryHandle {
        name: "tg".into(),
        kind: Kind::Tg(g),
        sig: Signature::unary_s(),
        flags: flags(&[Flag::StablyInfinite, Flag::Smooth, Flag::FiniteModelProperty]),
    }
}

pub fn torb2_handle() -> TheoryHandle {
    TheoryHandle {
        name: "torb2".into(),
        kind: Kind::Torb2,
        sig: Signature::orbit_t(),
        flags: flags(&[Flag::FiniteModelProperty]),
    }
}

pub fn tleorb_handle(frel: FRelation) -> TheoryHandle {
    TheoryHandle {
        name: "tleorb".into(),
        kind: Kind::Tleorb(frel),
        sig: Signature::orbit_t(),
        flags: flags(&[]),
    }
}

pub fn tinfh_handle(h: HTable) -> TheoryHandle {
    TheoryHandle {
        name: "tinfh".into(),
        kind: Kind::Tinfh(h),
        sig: Signature::indexed_preds(),
        flags: flags(&[]),
    }
}

pub fn tlen_handle(n: u32) -> Result<TheoryHandle> {
    tlen::check_bound(n)?;
    Ok(TheoryHandle {
        name: format!("tlen:{n}"),
        kind: Kind::Tlen(n),
        sig: Signature::empty(),
        flags: flags(&[Flag::FiniteModelProperty]),
    })
}

/// The theory names the registry accepts.
pub const THEORY_NAMES: [&str; 9] =
    ["teq", "tle", "tinf", "tf", "tg", "torb2", "tleorb", "tinfh", "tlen:<n>"];

/// Looks a theory up by registry name, drawing any parameter tables it
/// needs from `params`.
pub fn theory_by_name(name: &str, params: &ParamSet) -> Result<TheoryHandle> {
    if let Some(arg) = name.strip_prefix("tlen:") {
        let n: u32 = arg.parse().map_err(|_| {
            Error::Usage(format!("'{arg}' is not a valid size bound in '{name}'"))
        })?;
        return tlen_handle(n);
    }
    match name {
        "teq" => Ok(teq_handle()),
        "tle" => Ok(tle_handle(params.require_frel()?.clone())),
        "tinf" => Ok(tinf_handle()),
        "tf" => Ok(tf_handle(params.require_f()?.clone())),
        "tg" => Ok(tg_handle(params.require_g()?.clone())),
        "torb2" => Ok(torb2_handle()),
        "tleorb" => Ok(tleorb_handle(params.require_frel()?.clone())),
        "tinfh" => Ok(tinfh_handle(params.require_h()?.clone())),
        _ => Err(Error::Usage(format!(
            "unknown theory '{name}'; expected one of {}",
            THEORY_NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::samples;
    use crate::parse::{parse_cube, parse_formula};

    #[test]
    fn registry_resolves_every_name() {
        let params = samples::param_set();
        for name in ["teq", "tle", "tinf", "tf", "tg", "torb2", "tleorb", "tinfh", "tlen:3"] {
            let h = theory_by_name(name, &params).unwrap();
            assert_eq!(h.name(), name);
        }
        assert!(theory_by_name("unknown", &params).is_err());
        assert!(theory_by_name("tlen:0", &params).is_err());
        assert!(theory_by_name("tlen:x", &params).is_err());
    }

    #[test]
    fn registry_reports_missing_tables() {
        let empty = ParamSet::default();
        assert!(theory_by_name("tle", &empty).is_err());
        assert!(theory_by_name("teq", &empty).is_ok());
    }

    #[test]
    fn qf_decision_goes_through_disjuncts() {
        let h = teq_handle();
        let f = parse_formula("(or (P 3) (and (P 2) (P 3)))", h.sig()).unwrap();
        assert_eq!(h.decide_qf(&f).unwrap(), Verdict::Sat);
        let f = parse_formula("(and (P 2) (P 3))", h.sig()).unwrap();
        assert_eq!(h.decide_qf(&f).unwrap(), Verdict::Unsat);
        let f = parse_formula("(= x x)", h.sig()).unwrap();
        assert_eq!(h.decide_qf(&f).unwrap(), Verdict::Sat);
        let f = parse_formula("(not (= x x))", h.sig()).unwrap();
        assert_eq!(h.decide_qf(&f).unwrap(), Verdict::Unsat);
    }

    #[test]
    fn capability_queries_match_availability() {
        let params = samples::param_set();
        let teq = theory_by_name("teq", &params).unwrap();
        assert!(teq.has_gentle_spectrum() && teq.has_witness() && teq.has_contains_finite());
        assert!(!teq.has_direct_minmod() && !teq.has_infinitely_decidable());
        let tinf = theory_by_name("tinf", &params).unwrap();
        assert!(tinf.has_direct_minmod() && tinf.has_infinitely_decidable());
        assert!(!tinf.has_gentle_spectrum() && !tinf.has_witness());
        let tf = theory_by_name("tf", &params).unwrap();
        assert!(tf.has_flag(Flag::Smooth) && tf.has_flag(Flag::StablyInfinite));
        assert!(!tf.has_gentle_spectrum());
        let cube = parse_cube("(= x x)", tf.sig()).unwrap();
        assert!(matches!(tf.gentle_spectrum(&cube), Err(Error::Capability(_))));
    }

    #[test]
    fn display_spectrum_covers_the_infinite_theory() {
        let h = tinf_handle();
        let sat = parse_cube("(= x y)", h.sig()).unwrap();
        assert_eq!(h.display_spectrum(&sat).unwrap().to_string(), "{ℵ0}");
        let f = parse_formula("(or (= x y) (not (= x x)))", h.sig()).unwrap();
        assert_eq!(h.display_spectrum_qf(&f).unwrap().to_string(), "{ℵ0}");
    }

    #[test]
    fn table_swaps_do_not_change_tf_or_tinfh_decisions() {
        let params = samples::param_set();
        let tf1 = theory_by_name("tf", &params).unwrap();
        let tf2 = tg_handle(samples::g12());
        for text in [
            "(= (s x) x)",
            "(not (= (s x) x))",
            "(and (= (s x) y) (= (s y) x) (not (= x y)))",
            "(and (= (s x) x) (not (= (s x) x)))",
        ] {
            let c = parse_cube(text, tf1.sig()).unwrap();
            assert_eq!(tf1.decide(&c).unwrap(), tf2.decide(&c).unwrap());
        }
        let h1 = tinfh_handle(samples::h5());
        let h2 = tinfh_handle(HTable::new(vec![true; 9]));
        for text in ["(P 1)", "(and (P 1) (P 2))", "(and (P 4) (not (= x y)))"] {
            let c = parse_cube(text, h1.sig()).unwrap();
            assert_eq!(h1.decide(&c).unwrap(), h2.decide(&c).unwrap());
        }
    }

    #[test]
    fn analytic_infinite_characterizations() {
        let params = samples::param_set();
        let cases: Vec<(&str, &str, bool)> = vec![
            ("teq", "(not (P 3))", true),
            ("teq", "(P 3)", false),
            ("tle", "(P 1)", true),
            ("tle", "(P 5)", false),
            ("tinf", "(= x y)", true),
            ("tf", "(= (s x) x)", true),
            ("torb2", "(= (t a) a)", false),
            ("torb2", "(not (= x y))", true),
            ("tleorb", "(= (t a) a)", true),
            ("tinfh", "(P 1)", false),
            ("tinfh", "(P 4)", true),
            ("tlen:3", "(= x x)", false),
        ];
        for (name, text, want) in cases {
            let h = theory_by_name(name, &params).unwrap();
            let c = parse_cube(text, h.sig()).unwrap();
            assert_eq!(h.has_infinite_model(&c).unwrap(), want, "{name} on {text}");
        }
    }
}
