//! The theory whose axiom for each predicate index n pins the domain to
//! exactly n elements: models making P_n true have size n, models making
//! no P_n true can have any size, and no model makes two distinct P_n
//! true at once.

use crate::error::Result;
use crate::logic::{Cube, Literal, Term};
use crate::search::min_eq_model_size;
use crate::spectra::{Card, Spectrum};

use super::{split_pred_cube, Verdict, Witness};

/// Computes the exact cardinality spectrum of a cube.
///
/// With m the minimum size forced by the equality part: no positive
/// predicate gives every size from m up (co-finite), a single positive
/// P_n gives {n} when n >= m, and two or more positives (or a polarity
/// clash, or an unsatisfiable equality part) give the empty spectrum.
pub fn spectrum(cube: &Cube) -> Result<Spectrum> {
    let split = split_pred_cube(cube)?;
    let m = match min_eq_model_size(&split.eq_part)? {
        Some(m) => m,
        None => return Ok(Spectrum::empty()),
    };
    if !split.polarity_consistent() {
        return Ok(Spectrum::empty());
    }
    let mut positives = split.positives.iter();
    match (positives.next(), positives.next()) {
        (None, _) => Ok(Spectrum::cofinite(1..m)),
        (Some(&n), None) => {
            if n >= m {
                Ok(Spectrum::finite([n]))
            } else {
                Ok(Spectrum::empty())
            }
        }
        (Some(_), Some(_)) => Ok(Spectrum::empty()),
    }
}

pub fn decide(cube: &Cube) -> Result<Verdict> {
    Ok(Verdict::from_bool(!spectrum(cube)?.is_empty()))
}

pub fn contains_finite(cube: &Cube, k: u32) -> Result<bool> {
    Ok(spectrum(cube)?.contains(Card::Fin(k)))
}

/// Builds the strong finite witness of a cube.
///
/// A cube with no positive predicate gets one fresh variable w equated
/// to itself, so the witness names at least one domain element. A cube
/// whose largest positive index is n gets n fresh pairwise-distinct
/// variables, forcing every satisfying size to realize n named
/// elements. For n = 1 that contributes zero distinctness pairs, so the
/// cube is returned unchanged.
pub fn witness(cube: &Cube) -> Result<Witness> {
    super::reject_generated_vars(cube)?;
    let split = split_pred_cube(cube)?;
    let n = split.positives.iter().next_back().copied();
    match n {
        None => {
            let w = crate::logic::fresh_var();
            let lit = Literal::eq(Term::var(&w), Term::var(&w));
            Ok(Witness { cube: cube.and(&Cube(vec![lit])), fresh: vec![w] })
        }
        Some(n) => {
            let ws = crate::logic::fresh_vars(n as usize);
            let mut lits = Vec::new();
            for i in 0..ws.len() {
                for j in i + 1..ws.len() {
                    lits.push(super::var_literal(false, &ws[i], &ws[j]));
                }
            }
            Ok(Witness { cube: cube.and(&Cube(lits)), fresh: ws })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Signature;
    use crate::parse::parse_cube;

    fn cube(text: &str) -> Cube {
        parse_cube(text, &Signature::indexed_preds()).unwrap()
    }

    #[test]
    fn single_positive_pins_the_size() {
        assert_eq!(spectrum(&cube("(P 3)")).unwrap().to_string(), "{3}");
        assert_eq!(decide(&cube("(P 3)")).unwrap(), Verdict::Sat);
    }

    #[test]
    fn no_positive_gives_a_cofinite_spectrum() {
        assert_eq!(spectrum(&cube("(not (= x y))")).unwrap().to_string(), "co{1}");
        assert_eq!(spectrum(&cube("(not (P 4))")).unwrap().to_string(), "co{}");
    }

    #[test]
    fn conflicting_positives_are_unsatisfiable() {
        assert_eq!(spectrum(&cube("(and (P 2) (P 3))")).unwrap().to_string(), "{}");
        assert_eq!(decide(&cube("(and (P 2) (P 3))")).unwrap(), Verdict::Unsat);
    }

    #[test]
    fn polarity_clash_is_unsatisfiable() {
        assert_eq!(spectrum(&cube("(and (P 2) (not (P 2)))")).unwrap().to_string(), "{}");
    }

    #[test]
    fn positive_below_the_equality_floor_is_unsatisfiable() {
        let c = cube("(and (P 2) (not (= x y)) (not (= y z)) (not (= x z)))");
        assert_eq!(spectrum(&c).unwrap().to_string(), "{}");
    }

    #[test]
    fn unsatisfiable_equalities_empty_the_spectrum() {
        let c = cube("(and (= x y) (not (= y x)))");
        assert_eq!(spectrum(&c).unwrap().to_string(), "{}");
    }

    #[test]
    fn membership_tracks_the_spectrum() {
        assert!(contains_finite(&cube("(P 3)"), 3).unwrap());
        assert!(!contains_finite(&cube("(P 3)"), 4).unwrap());
        assert!(contains_finite(&cube("(not (= x y))"), 2).unwrap());
        assert!(!contains_finite(&cube("(not (= x y))"), 1).unwrap());
    }

    #[test]
    fn witness_without_positives_adds_one_reflexive_variable() {
        let w = witness(&cube("(not (= x y))")).unwrap();
        assert_eq!(w.fresh.len(), 1);
        assert_eq!(w.cube.0.len(), 2);
        let last = w.cube.0.last().unwrap().to_string();
        assert_eq!(last, format!("(= {0} {0})", w.fresh[0]));
    }

    #[test]
    fn witness_with_positive_adds_distinctness_over_the_largest_index() {
        let w = witness(&cube("(and (P 3) (not (P 5)))")).unwrap();
        assert_eq!(w.fresh.len(), 3);
        // Three fresh variables contribute three distinctness pairs.
        assert_eq!(w.cube.0.len(), 2 + 3);
    }

    #[test]
    fn witness_for_index_one_is_the_cube_itself() {
        let c = cube("(P 1)");
        let w = witness(&c).unwrap();
        assert_eq!(w.fresh.len(), 1);
        assert_eq!(w.cube, c);
    }

    #[test]
    fn witness_refuses_generated_variables() {
        use crate::logic::{Cube, Literal, Term};
        let c = Cube(vec![Literal::eq(Term::var("_v0"), Term::var("_v0"))]);
        assert!(witness(&c).is_err());
    }
}
