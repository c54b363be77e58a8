//! The two excess-preserving reduction rules and the kernel-size certificate.
//!
//! * Merge: equations with the same support collapse into one whose signed
//!   coefficient is the sum of theirs; a zero sum deletes the support.
//! * Rank: variables outside a GF(2) column basis of the incidence matrix are
//!   deleted from every equation. Indices are not renumbered.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::gf2::greedy_column_basis;
use super::{Lin2Equation, Lin2System};
use crate::error::{Error, Result};

/// One productive rule application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    /// `merged` equations sharing `support` were replaced by `result`
    /// (`(rhs, weight)`), or deleted when `result` is `None`.
    Merge { support: Vec<u32>, merged: usize, result: Option<(i8, BigUint)> },
    /// The incidence matrix had rank `rank`; `basis` was kept and `deleted`
    /// (live, non-basis variables) was removed from all supports.
    Rank { rank: usize, basis: Vec<u32>, deleted: Vec<u32> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn merge_steps(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, TraceStep::Merge { .. })).count()
    }

    pub fn rank_steps(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, TraceStep::Rank { .. })).count()
    }

    /// Variables deleted by rank steps, ascending.
    pub fn deleted_vars(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .steps
            .iter()
            .flat_map(|s| match s {
                TraceStep::Rank { deleted, .. } => deleted.clone(),
                TraceStep::Merge { .. } => Vec::new(),
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Applies the recorded steps to `s`, one at a time.
    pub fn replay(&self, s: &Lin2System) -> Lin2System {
        let mut eqs = s.equations.clone();
        for step in &self.steps {
            match step {
                TraceStep::Merge { support, result, .. } => {
                    let first = eqs.iter().position(|e| &e.support == support);
                    eqs.retain(|e| &e.support != support);
                    if let (Some(pos), Some((rhs, weight))) = (first, result) {
                        let e = Lin2Equation::new(support.clone(), *rhs, weight.clone())
                            .expect("recorded merge result is valid");
                        eqs.insert(pos, e);
                    }
                }
                TraceStep::Rank { deleted, .. } => {
                    for e in &mut eqs {
                        e.support.retain(|v| deleted.binary_search(v).is_err());
                    }
                }
            }
        }
        Lin2System { num_vars: s.num_vars, equations: eqs }
    }
}

/// Collapses equations with equal supports. Output order follows the first
/// occurrence of each support in the input.
pub fn merge_rule(s: &Lin2System) -> (Lin2System, ReductionTrace) {
    let mut index: HashMap<&[u32], usize> = HashMap::new();
    let mut groups: Vec<(&[u32], BigInt, usize)> = Vec::new();
    for e in &s.equations {
        let slot = *index.entry(e.support()).or_insert_with(|| {
            groups.push((e.support(), BigInt::zero(), 0));
            groups.len() - 1
        });
        groups[slot].1 += e.coefficient();
        groups[slot].2 += 1;
    }
    if groups.len() == s.equations.len() {
        return (s.clone(), ReductionTrace::default());
    }

    let mut trace = ReductionTrace::default();
    let mut equations = Vec::with_capacity(groups.len());
    for (support, coeff, count) in groups {
        let merged = Lin2Equation::from_coefficient(support.to_vec(), &coeff)
            .expect("support came from a valid equation");
        if count > 1 {
            trace.steps.push(TraceStep::Merge {
                support: support.to_vec(),
                merged: count,
                result: merged.as_ref().map(|e| (e.rhs, e.weight.clone())),
            });
        }
        equations.extend(merged);
    }
    (Lin2System { num_vars: s.num_vars, equations }, trace)
}

/// Deletes every live variable outside the greedy lowest-index column basis.
pub fn rank_rule(s: &Lin2System) -> (Lin2System, ReductionTrace) {
    let basis = greedy_column_basis(s);
    let live = s.live_vars();
    if basis.len() == live.len() {
        return (s.clone(), ReductionTrace::default());
    }
    let deleted: Vec<u32> = live.into_iter().filter(|v| basis.binary_search(v).is_err()).collect();
    let equations = s
        .equations
        .iter()
        .map(|e| {
            let support: Vec<u32> =
                e.support.iter().copied().filter(|v| basis.binary_search(v).is_ok()).collect();
            // A row with no basis entries would be a zero row of the matrix.
            debug_assert!(!support.is_empty());
            Lin2Equation { support, rhs: e.rhs, weight: e.weight.clone() }
        })
        .collect();
    let trace = ReductionTrace {
        steps: vec![TraceStep::Rank { rank: basis.len(), basis, deleted }],
    };
    (Lin2System { num_vars: s.num_vars, equations }, trace)
}

/// Alternates the merge and rank rules until neither applies.
pub fn reduce_fixpoint(s: &Lin2System) -> (Lin2System, ReductionTrace) {
    let mut current = s.clone();
    let mut trace = ReductionTrace::default();
    loop {
        let (merged, t1) = merge_rule(&current);
        let (ranked, t2) = rank_rule(&merged);
        let done = t1.is_empty() && t2.is_empty();
        trace.steps.extend(t1.steps);
        trace.steps.extend(t2.steps);
        current = ranked;
        if done {
            return (current, trace);
        }
    }
}

/// The kernel certificate: a rule-stable system with `n'` live variables and
/// maximum arity `r` has maximum excess at least `k2` whenever
/// `n' >= (2·k2 - 1)·r + 1`.
pub fn threshold_yes(s: &Lin2System, k2: &BigUint) -> Result<bool> {
    if k2.is_zero() {
        return Err(Error::InvalidArgument("threshold parameter must be positive".into()));
    }
    if !s.is_rule_stable() {
        return Err(Error::NotRuleStable);
    }
    let live = BigUint::from(s.live_vars().len());
    let r = BigUint::from(s.max_arity());
    let bound = (k2 * 2u32 - BigUint::one()) * r + BigUint::one();
    Ok(live >= bound)
}
