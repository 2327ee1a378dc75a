//! Membership checks: which finite interpretations belong to which
//! theory.
//!
//! Each catalogue theory is axiomatized by sentences without free
//! variables, so membership never looks at the variable assignment;
//! the model search relies on that to hoist the check out of the
//! assignment loop. Predicates not materialized in the interpretation
//! are false and make their guarding axioms vacuous.

use crate::error::Result;
use crate::interp::FiniteInterpretation;
use crate::params::{FRelation, FTable, HTable};

#[derive(Debug, Clone)]
pub enum TheoryMembership {
    /// No axioms: every interpretation belongs.
    Free,
    /// A true `P_n` pins the domain size to exactly n.
    ExactSize,
    /// Domain size at most n.
    BoundedSize(u32),
    /// A true `P_n` bounds the domain size by F(n).
    TableBoundedSize(FRelation),
    /// No finite interpretation belongs.
    InfiniteOnly,
    /// The unary function `s` has exactly f₁(k) fixpoints at size k.
    FixpointProfile(FTable),
    /// The orbit of the constant `a` under `t` covers at least half the
    /// domain: size ≤ 2·|orbit|.
    OrbitHalf,
    /// Size ≤ F(|orbit|) + |orbit| for the orbit of `a` under `t`.
    OrbitTableBounded(FRelation),
    /// A true `P_1` pins size 1 and excludes every other positive
    /// predicate; a true `P_n` (n ≥ 2) with h(n)=1 forbids finite
    /// interpretations altogether.
    SizeOnePinned(HTable),
    /// Both components' axioms, over a union signature.
    Both(Box<TheoryMembership>, Box<TheoryMembership>),
}

impl TheoryMembership {
    /// Whether the interpretation is a model of the theory's axioms.
    /// Never inspects `var_assign`.
    pub fn accepts(&self, m: &FiniteInterpretation) -> Result<bool> {
        let k = m.domain_size;
        match self {
            TheoryMembership::Free => Ok(true),
            TheoryMembership::ExactSize => {
                Ok(true_preds(m).all(|idx| idx == k))
            }
            TheoryMembership::BoundedSize(n) => Ok(k <= *n),
            TheoryMembership::TableBoundedSize(frel) => {
                for idx in true_preds(m) {
                    if !frel.geq(idx, k)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            TheoryMembership::InfiniteOnly => Ok(false),
            TheoryMembership::FixpointProfile(f) => {
                Ok(m.fixpoint_count("s")? == f.f1(k)?)
            }
            TheoryMembership::OrbitHalf => {
                let a = m.const_value("a")?;
                Ok(k <= 2 * m.orbit_len("t", a)?)
            }
            TheoryMembership::OrbitTableBounded(frel) => {
                let a = m.const_value("a")?;
                let rho = m.orbit_len("t", a)?;
                // size ≤ F(ρ) + ρ, i.e. F(ρ) ≥ k − ρ; trivially true
                // when k ≤ ρ + 1.
                frel.geq(rho, k.saturating_sub(rho))
            }
            TheoryMembership::SizeOnePinned(h) => {
                let positives: Vec<u32> = true_preds(m).collect();
                for &idx in &positives {
                    if idx == 1 {
                        if k != 1 || positives.len() > 1 {
                            return Ok(false);
                        }
                    } else if h.value(idx) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            TheoryMembership::Both(a, b) => Ok(a.accepts(m)? && b.accepts(m)?),
        }
    }
}

fn true_preds(m: &FiniteInterpretation) -> impl Iterator<Item = u32> + '_ {
    m.pred_values.iter().filter(|(_, &v)| v).map(|(&idx, _)| idx)
}
