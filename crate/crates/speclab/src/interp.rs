//! Explicit finite interpretations over the domain `{0, …, k-1}` and
//! Tarskian evaluation of quantifier-free formulas in them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{Atom, Cube, Literal, QFFormula, Term};

/// A finite interpretation: domain `{0, …, domain_size-1}`, one value
/// table per unary function symbol, values for constants, truth values
/// for finitely many indexed predicates (everything else is false), and
/// an assignment for the free variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInterpretation {
    pub domain_size: u32,
    pub func_tables: BTreeMap<String, Vec<u32>>,
    pub const_values: BTreeMap<String, u32>,
    pub pred_values: BTreeMap<u32, bool>,
    pub var_assign: BTreeMap<String, u32>,
}

impl FiniteInterpretation {
    pub fn new(domain_size: u32) -> Self {
        assert!(domain_size >= 1, "domains are nonempty");
        FiniteInterpretation {
            domain_size,
            func_tables: BTreeMap::new(),
            const_values: BTreeMap::new(),
            pred_values: BTreeMap::new(),
            var_assign: BTreeMap::new(),
        }
    }

    pub fn eval_term(&self, t: &Term) -> Result<u32> {
        match t {
            Term::Var(v) => self
                .var_assign
                .get(v)
                .copied()
                .ok_or_else(|| Error::Uninterpreted(format!("variable '{v}'"))),
            Term::Const(c) => self
                .const_values
                .get(c)
                .copied()
                .ok_or_else(|| Error::Uninterpreted(format!("constant '{c}'"))),
            Term::App(f, arg) => {
                let table = self
                    .func_tables
                    .get(f)
                    .ok_or_else(|| Error::Uninterpreted(format!("function '{f}'")))?;
                let v = self.eval_term(arg)?;
                Ok(table[v as usize])
            }
        }
    }

    pub fn eval_literal(&self, lit: &Literal) -> Result<bool> {
        let atom_true = match &lit.atom {
            Atom::Eq(l, r) => self.eval_term(l)? == self.eval_term(r)?,
            // Predicates not explicitly materialized are false.
            Atom::Pred(k) => self.pred_values.get(k).copied().unwrap_or(false),
        };
        Ok(atom_true == lit.positive)
    }

    pub fn eval_cube(&self, cube: &Cube) -> Result<bool> {
        for lit in cube.iter() {
            if !self.eval_literal(lit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn eval(&self, formula: &QFFormula) -> Result<bool> {
        match formula {
            QFFormula::Lit(l) => self.eval_literal(l),
            QFFormula::Not(f) => Ok(!self.eval(f)?),
            QFFormula::And(fs) => {
                for f in fs {
                    if !self.eval(f)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            QFFormula::Or(fs) => {
                for f in fs {
                    if self.eval(f)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// Orbit of `start` under the function `f`: the elements reached by
    /// repeated application, in visit order. Always terminates since the
    /// domain is finite.
    pub fn orbit(&self, f: &str, start: u32) -> Result<Vec<u32>> {
        let table = self
            .func_tables
            .get(f)
            .ok_or_else(|| Error::Uninterpreted(format!("function '{f}'")))?;
        let mut seen = vec![false; self.domain_size as usize];
        let mut order = Vec::new();
        let mut cur = start;
        while !seen[cur as usize] {
            seen[cur as usize] = true;
            order.push(cur);
            cur = table[cur as usize];
        }
        Ok(order)
    }

    /// Number of fixpoints of the function `f`.
    pub fn fixpoint_count(&self, f: &str) -> Result<u32> {
        let table = self
            .func_tables
            .get(f)
            .ok_or_else(|| Error::Uninterpreted(format!("function '{f}'")))?;
        Ok(table.iter().enumerate().filter(|(i, &v)| *i as u32 == v).count() as u32)
    }

    /// Value of the constant `c`; the allocation-free form of
    /// [`eval_term`](Self::eval_term) that membership checks run once per
    /// candidate interpretation.
    pub fn const_value(&self, c: &str) -> Result<u32> {
        self.const_values
            .get(c)
            .copied()
            .ok_or_else(|| Error::Uninterpreted(format!("constant '{c}'")))
    }

    /// Length of the orbit of `start` under `f`, without materializing
    /// the visit order.
    pub fn orbit_len(&self, f: &str, start: u32) -> Result<u32> {
        let table = self
            .func_tables
            .get(f)
            .ok_or_else(|| Error::Uninterpreted(format!("function '{f}'")))?;
        if self.domain_size as usize <= u128::BITS as usize {
            let mut seen = 0u128;
            let mut len = 0u32;
            let mut cur = start;
            while seen & (1 << cur) == 0 {
                seen |= 1 << cur;
                len += 1;
                cur = table[cur as usize];
            }
            Ok(len)
        } else {
            Ok(self.orbit(f, start)?.len() as u32)
        }
    }
}

impl fmt::Display for FiniteInterpretation {
    /// One-line rendering with a stable field order: size, constants,
    /// function tables, predicates, variables.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "size {}", self.domain_size)?;
        for (c, v) in &self.const_values {
            write!(f, "; {c}={v}")?;
        }
        for (name, table) in &self.func_tables {
            let cells: Vec<String> = table.iter().map(|v| v.to_string()).collect();
            write!(f, "; {name}: [{}]", cells.join(","))?;
        }
        for (idx, val) in &self.pred_values {
            write!(f, "; P{idx}={val}")?;
        }
        for (v, e) in &self.var_assign {
            write!(f, "; {v}={e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{OrbitKind, build_orbit_formula};

    #[test]
    fn single_fixpoint_satisfies_the_loop_orbit() {
        let mut m = FiniteInterpretation::new(1);
        m.func_tables.insert("t".into(), vec![0]);
        m.const_values.insert("a".into(), 0);
        let orb1 =
            build_orbit_formula(OrbitKind::Orb, 1, "t", &Term::constant("a")).unwrap();
        assert!(m.eval(&orb1).unwrap());
    }

    #[test]
    fn distinct_assignment_falsifies_equality() {
        let mut m = FiniteInterpretation::new(2);
        m.var_assign.insert("x".into(), 0);
        m.var_assign.insert("y".into(), 1);
        let eq = QFFormula::Lit(Literal::eq(Term::var("x"), Term::var("y")));
        assert!(!m.eval(&eq).unwrap());
    }

    #[test]
    fn three_cycle_satisfies_orbit_three() {
        let mut m = FiniteInterpretation::new(3);
        m.func_tables.insert("t".into(), vec![1, 2, 0]);
        m.const_values.insert("a".into(), 0);
        let orb3 =
            build_orbit_formula(OrbitKind::Orb, 3, "t", &Term::constant("a")).unwrap();
        assert!(m.eval(&orb3).unwrap());
        let orb2 =
            build_orbit_formula(OrbitKind::Orb, 2, "t", &Term::constant("a")).unwrap();
        assert!(!m.eval(&orb2).unwrap());
        assert_eq!(m.orbit("t", 0).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn unmaterialized_predicates_default_to_false() {
        let m = FiniteInterpretation::new(1);
        let p = QFFormula::Lit(Literal::pred(5));
        assert!(!m.eval(&p).unwrap());
        assert!(m.eval(&QFFormula::Not(Box::new(p))).unwrap());
    }

    #[test]
    fn uninterpreted_symbols_are_reported() {
        let m = FiniteInterpretation::new(2);
        let f = QFFormula::Lit(Literal::eq(Term::var("x"), Term::var("x")));
        assert!(matches!(m.eval(&f), Err(Error::Uninterpreted(_))));
    }

    #[test]
    fn display_has_stable_field_order() {
        let mut m = FiniteInterpretation::new(3);
        m.const_values.insert("a".into(), 0);
        m.func_tables.insert("t".into(), vec![1, 2, 0]);
        m.pred_values.insert(3, true);
        m.var_assign.insert("x".into(), 2);
        assert_eq!(m.to_string(), "size 3; a=0; t: [1,2,0]; P3=true; x=2");
    }

    #[test]
    fn fixpoints_are_counted_from_the_table() {
        let mut m = FiniteInterpretation::new(4);
        m.func_tables.insert("s".into(), vec![0, 1, 3, 2]);
        assert_eq!(m.fixpoint_count("s").unwrap(), 2);
    }
}
