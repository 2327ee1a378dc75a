//! Congruence closure over the subterms of a cube of equality
//! literals. Term count stays tiny here, so the closure uses a plain
//! union-find with a propagate-to-fixpoint loop instead of anything
//! fancier.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::logic::{Atom, Cube, Term};

pub struct Congruence {
    terms: Vec<Term>,
    index: HashMap<Term, usize>,
    class: Vec<usize>,
    /// No positive literal is contradicted by a negative one.
    pub sat: bool,
    succ: BTreeMap<(usize, String), usize>,
}

impl Congruence {
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn term(&self, id: usize) -> &Term {
        &self.terms[id]
    }

    pub fn id_of(&self, t: &Term) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Canonical class representative of a term id.
    pub fn root(&self, id: usize) -> usize {
        self.class[id]
    }

    pub fn root_of_term(&self, t: &Term) -> Option<usize> {
        self.id_of(t).map(|id| self.root(id))
    }

    pub fn roots(&self) -> BTreeSet<usize> {
        self.class.iter().copied().collect()
    }

    pub fn n_classes(&self) -> usize {
        self.roots().len()
    }

    /// The class reached from `root` by applying `sym`, when some
    /// application term witnesses it. Well defined after closure.
    pub fn succ_of(&self, root: usize, sym: &str) -> Option<usize> {
        self.succ.get(&(root, sym.to_string())).copied()
    }

    pub fn class_has_var(&self, root: usize) -> bool {
        self.terms
            .iter()
            .enumerate()
            .any(|(id, t)| self.class[id] == root && matches!(t, Term::Var(_)))
    }
}

fn intern(terms: &mut Vec<Term>, index: &mut HashMap<Term, usize>, t: &Term) -> usize {
    if let Some(&id) = index.get(t) {
        return id;
    }
    if let Term::App(_, arg) = t {
        intern(terms, index, arg);
    }
    let id = terms.len();
    terms.push(t.clone());
    index.insert(t.clone(), id);
    id
}

/// Closes the equalities of `cube` under congruence and checks the
/// disequalities. Rejects predicate literals: this analysis only makes
/// sense for equational cubes.
pub fn close(cube: &Cube) -> Result<Congruence> {
    let mut terms = Vec::new();
    let mut index = HashMap::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for lit in cube.iter() {
        match &lit.atom {
            Atom::Pred(_) => {
                return Err(Error::Signature(format!(
                    "predicate literal '{lit}' in an equality-only cube"
                )))
            }
            Atom::Eq(l, r) => {
                let li = intern(&mut terms, &mut index, l);
                let ri = intern(&mut terms, &mut index, r);
                if lit.positive {
                    pos.push((li, ri));
                } else {
                    neg.push((li, ri));
                }
            }
        }
    }

    let n = terms.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    fn union(parent: &mut Vec<usize>, a: usize, b: usize) -> bool {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra == rb {
            return false;
        }
        // Smaller index wins so representatives are deterministic.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
        true
    }

    for &(a, b) in &pos {
        union(&mut parent, a, b);
    }

    // Applications, for the congruence rule.
    let apps: Vec<(usize, String, usize)> = terms
        .iter()
        .enumerate()
        .filter_map(|(id, t)| match t {
            Term::App(f, arg) => Some((id, f.clone(), index[arg.as_ref()])),
            _ => None,
        })
        .collect();

    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..apps.len() {
            for j in (i + 1)..apps.len() {
                let (ai, ref fi, ci) = apps[i];
                let (aj, ref fj, cj) = apps[j];
                if fi == fj
                    && find(&mut parent, ci) == find(&mut parent, cj)
                    && union(&mut parent, ai, aj)
                {
                    changed = true;
                }
            }
        }
    }

    let class: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let sat = neg.iter().all(|&(a, b)| class[a] != class[b]);

    let mut succ = BTreeMap::new();
    for (app_id, f, child_id) in &apps {
        let prev = succ.insert((class[*child_id], f.clone()), class[*app_id]);
        debug_assert!(
            prev.is_none() || prev == Some(class[*app_id]),
            "congruence closure left an ambiguous successor"
        );
    }

    Ok(Congruence { terms, index, class, sat, succ })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Signature;
    use crate::parse::parse_cube;

    fn s_cube(text: &str) -> Cube {
        parse_cube(text, &Signature::unary_s()).unwrap()
    }

    fn t_cube(text: &str) -> Cube {
        parse_cube(text, &Signature::orbit_t()).unwrap()
    }

    #[test]
    fn direct_contradiction_is_unsat() {
        let c = close(&s_cube("(and (= (s x) x) (not (= (s x) x)))")).unwrap();
        assert!(!c.sat);
    }

    #[test]
    fn negated_fixpoint_is_sat() {
        let c = close(&s_cube("(not (= (s x) x))")).unwrap();
        assert!(c.sat);
    }

    #[test]
    fn two_cycle_is_sat() {
        let c = close(&s_cube("(and (= (s x) y) (= (s y) x) (not (= x y)))")).unwrap();
        assert!(c.sat);
    }

    #[test]
    fn congruence_propagates_through_applications() {
        let c = close(&s_cube("(and (= x y) (not (= (s x) (s y))))")).unwrap();
        assert!(!c.sat);
    }

    #[test]
    fn closure_is_local_to_present_subterms() {
        let c = close(&t_cube("(and (= (t (t a)) a) (not (= (t a) a)))")).unwrap();
        assert!(c.sat);
        assert_eq!(c.n_classes(), 2);
        let a = c.root_of_term(&Term::constant("a")).unwrap();
        let ta = c.root_of_term(&Term::app("t", Term::constant("a"))).unwrap();
        assert_ne!(a, ta);
        assert_eq!(c.succ_of(a, "t"), Some(ta));
        assert_eq!(c.succ_of(ta, "t"), Some(a));
    }

    #[test]
    fn predicate_literals_are_rejected() {
        let sig = Signature::indexed_preds();
        let cube = parse_cube("(P 2)", &sig).unwrap();
        assert!(close(&cube).is_err());
    }

    #[test]
    fn variable_classes_are_tracked() {
        let c = close(&t_cube("(and (= x (t a)) (not (= y a)))")).unwrap();
        assert!(c.sat);
        let x_root = c.root_of_term(&Term::var("x")).unwrap();
        assert!(c.class_has_var(x_root));
        let a_root = c.root_of_term(&Term::constant("a")).unwrap();
        assert!(!c.class_has_var(a_root));
        assert_eq!(c.succ_of(a_root, "t"), Some(x_root));
    }
}
