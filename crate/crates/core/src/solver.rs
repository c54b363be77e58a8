//! User-facing algorithms: the derandomized assignment reaching `asat`, the
//! exhaustive MaxSat oracle, the above-average decision pipeline and the
//! width-regime classifier.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::formula::{Assignment, CnfFormula};
use crate::lin2::{brute_force_max_excess, reduce_fixpoint, threshold_yes};
use crate::reduction::{cnf_to_lin2, width_bound};
use crate::search::{argmax, MAX_SEARCH_BITS};

/// Widest clause the decision pipeline will expand; a clause of width `r`
/// contributes `2^r - 1` terms.
pub const MAX_EXPANSION_WIDTH: u32 = 24;

/// Expected number of satisfied clauses when variables `1..=prefix.len()` are
/// fixed by `prefix` (`true` = TRUE) and the rest are uniform.
pub fn conditional_expectation(f: &CnfFormula, prefix: &[bool]) -> Result<Dyadic> {
    if prefix.len() > f.num_vars() {
        return Err(Error::LengthMismatch { expected: f.num_vars(), found: prefix.len() });
    }
    let t = prefix.len() as u32;
    let mut total = Dyadic::zero();
    let mut settled = 0i64;
    for c in f.clauses() {
        let mut unassigned = 0;
        let mut satisfied = false;
        for l in c.literals() {
            if l.var() > t {
                unassigned += 1;
            } else if prefix[l.var() as usize - 1] != l.is_negated() {
                satisfied = true;
                break;
            }
        }
        if satisfied {
            settled += 1;
        } else if unassigned > 0 {
            total += Dyadic::one_minus_pow2_neg(unassigned);
        }
    }
    Ok(total + Dyadic::from(settled))
}

/// Method of conditional expectations in ascending variable order; ties go to
/// TRUE. The result satisfies at least `asat(f)` clauses.
pub fn derandomized_assignment(f: &CnfFormula) -> Assignment {
    let mut prefix = Vec::with_capacity(f.num_vars());
    for _ in 0..f.num_vars() {
        prefix.push(true);
        let if_true = conditional_expectation(f, &prefix).expect("prefix within range");
        *prefix.last_mut().unwrap() = false;
        let if_false = conditional_expectation(f, &prefix).expect("prefix within range");
        *prefix.last_mut().unwrap() = if_true >= if_false;
    }
    Assignment::from_truth(prefix)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub max_satisfied: usize,
    /// Lexicographically least maximizer (FALSE < TRUE, variable 1 first).
    pub witness: Assignment,
}

/// Exact MaxSat by enumerating all `2^n` assignments.
pub fn oracle_max_sat(f: &CnfFormula, budget: usize) -> Result<OracleResult> {
    let n = f.num_vars();
    if n > budget.min(MAX_SEARCH_BITS) {
        return Err(Error::BudgetExceeded { vars: n, budget });
    }
    let clauses: Vec<(u64, u64)> = f
        .clauses()
        .iter()
        .map(|c| {
            c.literals().iter().fold((0, 0), |(pos, neg), l| {
                let bit = 1u64 << (n - l.var() as usize);
                if l.is_negated() {
                    (pos, neg | bit)
                } else {
                    (pos | bit, neg)
                }
            })
        })
        .collect();
    let (best, mask) = argmax(n, |m| {
        clauses.iter().filter(|&&(pos, neg)| m & pos != 0 || !m & neg != 0).count()
    });
    Ok(OracleResult { max_satisfied: best, witness: Assignment::from_mask(n, mask) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mechanism {
    TrivialK0,
    ThresholdCertificate,
    KernelExhaustion,
    BudgetExceeded,
}

/// Which variables a witness is meaningful for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessScope {
    /// A CNF assignment reaching `asat + k`.
    Cnf,
    /// Maximizer of the reduced parity system only; it is not transported
    /// back through the rank rule.
    KernelOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecisionOutcome {
    pub answer: Answer,
    pub mechanism: Mechanism,
    /// Live variables of the reduced system, when it was built.
    pub kernel_vars: Option<usize>,
    pub k2: BigUint,
    pub r_used: Option<u32>,
    pub twice_excess_max: Option<BigInt>,
    pub witness: Option<Assignment>,
    pub witness_scope: Option<WitnessScope>,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
            Answer::Unknown => "UNKNOWN",
        })
    }
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mechanism::TrivialK0 => "trivial-k0",
            Mechanism::ThresholdCertificate => "threshold-certificate",
            Mechanism::KernelExhaustion => "kernel-exhaustion",
            Mechanism::BudgetExceeded => "budget-exceeded",
        })
    }
}

impl fmt::Display for WitnessScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessScope::Cnf => "cnf",
            WitnessScope::KernelOnly => "kernel-only",
        })
    }
}

/// Decides whether some assignment satisfies at least `asat(f) + k` clauses.
///
/// 1. `k = 0` is always YES.
/// 2. Reduce to a parity system with parameter `k2 = k·2^(r-1)` and run both
///    rules to a fixpoint.
/// 3. A large enough kernel is YES by the threshold certificate.
/// 4. A kernel within `budget` live variables is searched exhaustively.
/// 5. Anything else is UNKNOWN.
pub fn decide_above_average(f: &CnfFormula, k: u64, budget: usize) -> DecisionOutcome {
    let mut out = DecisionOutcome {
        answer: Answer::Unknown,
        mechanism: Mechanism::BudgetExceeded,
        kernel_vars: None,
        k2: BigUint::default(),
        r_used: None,
        twice_excess_max: None,
        witness: None,
        witness_scope: None,
    };
    if k == 0 {
        out.answer = Answer::Yes;
        out.mechanism = Mechanism::TrivialK0;
        out.witness = Some(derandomized_assignment(f));
        out.witness_scope = Some(WitnessScope::Cnf);
        return out;
    }
    let r = width_bound(f);
    out.r_used = Some(r);
    out.k2 = BigUint::from(k) << (r - 1);
    if r > MAX_EXPANSION_WIDTH {
        return out;
    }

    let reduction = cnf_to_lin2(f, k);
    let (kernel, _) = reduce_fixpoint(&reduction.system);
    let live = kernel.live_vars().len();
    out.kernel_vars = Some(live);

    if threshold_yes(&kernel, &reduction.k2).expect("fixpoint output is rule-stable") {
        out.answer = Answer::Yes;
        out.mechanism = Mechanism::ThresholdCertificate;
        return out;
    }
    let Ok(best) = brute_force_max_excess(&kernel, budget) else {
        return out;
    };
    out.mechanism = Mechanism::KernelExhaustion;
    let reached = best.twice_excess >= BigInt::from(reduction.twice_target());
    out.twice_excess_max = Some(best.twice_excess);
    if !reached {
        out.answer = Answer::No;
        return out;
    }
    out.answer = Answer::Yes;
    match oracle_max_sat(f, budget) {
        Ok(o) => {
            out.witness = Some(o.witness);
            out.witness_scope = Some(WitnessScope::Cnf);
        }
        Err(_) => {
            out.witness = Some(best.witness);
            out.witness_scope = Some(WitnessScope::KernelOnly);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    FptXp,
    Hard,
    Intermediate,
    SmallN,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::FptXp => "fpt-xp",
            Regime::Hard => "hard",
            Regime::Intermediate => "intermediate",
            Regime::SmallN => "small-n",
        })
    }
}

/// Where the instance's clause width sits relative to the `log n` and
/// `log log n` thresholds (base 2). Bounds are `None` where undefined.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegimeReport {
    pub r_max: usize,
    pub n: usize,
    pub ceil_log_n: Option<u32>,
    pub log_log_n: Option<f64>,
    /// `log log n - log log log n`.
    pub xp_bound: Option<f64>,
    pub regime: Regime,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub fn classify_regime(f: &CnfFormula) -> RegimeReport {
    let n = f.num_vars();
    let r_max = f.max_width();
    let ceil_log_n = (n >= 1).then(|| n.next_power_of_two().trailing_zeros());
    let log_log = finite((n as f64).log2().log2());
    let xp_bound = log_log.and_then(|ll| finite(ll - ll.log2()));
    let regime = match (log_log, xp_bound) {
        _ if n < 16 => Regime::SmallN,
        (Some(ll), Some(xp)) => {
            let r = r_max as f64;
            if r <= xp {
                Regime::FptXp
            } else if r >= ll {
                Regime::Hard
            } else {
                Regime::Intermediate
            }
        }
        _ => unreachable!("iterated logarithms are finite for n >= 16"),
    };
    RegimeReport { r_max, n, ceil_log_n, log_log_n: log_log, xp_bound, regime }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{complete_set, Clause, Literal};
    use crate::lin2::DEFAULT_BUDGET;

    fn f(n: usize, clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_dimacs_clauses(n, clauses).unwrap()
    }

    #[test]
    fn conditional_expectation_examples() {
        let or2 = f(2, &[&[1, 2]]);
        assert_eq!(conditional_expectation(&or2, &[]).unwrap(), Dyadic::new(3, 2));
        assert_eq!(conditional_expectation(&or2, &[true]).unwrap(), Dyadic::from(1));
        assert_eq!(conditional_expectation(&or2, &[false]).unwrap(), Dyadic::new(1, 1));
        assert_eq!(conditional_expectation(&or2, &[false, false]).unwrap(), Dyadic::zero());
        assert!(conditional_expectation(&or2, &[true, true, true]).is_err());
    }

    #[test]
    fn derandomized_examples() {
        let cs = complete_set(&[1, 2]).unwrap();
        assert_eq!(cs.count_satisfied(&derandomized_assignment(&cs)).unwrap(), 3);

        let or2 = f(2, &[&[1, 2]]);
        assert_eq!(or2.count_satisfied(&derandomized_assignment(&or2)).unwrap(), 1);

        let g = f(2, &[&[1], &[-1], &[2]]);
        assert_eq!(g.asat(), Dyadic::new(3, 1));
        let a = derandomized_assignment(&g);
        assert!(a.is_true(2));
        assert_eq!(g.count_satisfied(&a).unwrap(), 2);
    }

    #[test]
    fn oracle_examples() {
        let pair = f(1, &[&[1], &[-1]]);
        assert_eq!(oracle_max_sat(&pair, 24).unwrap().max_satisfied, 1);
        // Least maximizer is FALSE.
        assert_eq!(oracle_max_sat(&pair, 24).unwrap().witness.spins(), vec![1]);
        let cs3 = complete_set(&[1, 2, 3]).unwrap();
        assert_eq!(oracle_max_sat(&cs3, 24).unwrap().max_satisfied, 7);
        let empty = oracle_max_sat(&CnfFormula::empty(3), 24).unwrap();
        assert_eq!(empty.max_satisfied, 0);
        assert_eq!(empty.witness, Assignment::all_false(3));
        assert!(matches!(oracle_max_sat(&CnfFormula::empty(30), 24), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn decide_examples() {
        let cs = complete_set(&[1, 2]).unwrap();
        let out = decide_above_average(&cs, 1, DEFAULT_BUDGET);
        assert_eq!(out.answer, Answer::No);
        assert_eq!(out.mechanism, Mechanism::KernelExhaustion);
        assert_eq!(out.kernel_vars, Some(0));
        assert_eq!(out.twice_excess_max, Some(BigInt::from(0)));

        let units = f(2, &[&[1], &[2]]);
        let out = decide_above_average(&units, 1, DEFAULT_BUDGET);
        assert_eq!(out.answer, Answer::Yes);
        // Kernel {x1 = -1, x2 = -1} with r = 1 meets n' >= (2·1 - 1)·1 + 1.
        assert_eq!(out.mechanism, Mechanism::ThresholdCertificate);
        assert_eq!(oracle_max_sat(&units, 24).unwrap().max_satisfied, 2);

        let out = decide_above_average(&cs, 0, DEFAULT_BUDGET);
        assert_eq!(out.answer, Answer::Yes);
        assert_eq!(out.mechanism, Mechanism::TrivialK0);
        assert!(out.witness.is_some());
    }

    #[test]
    fn decide_threshold_path_has_no_witness() {
        // Eight independent unit clauses: kernel of 8 unit equations, r = 1,
        // k2 = 1 needs n' >= 2.
        let clauses: Vec<Vec<i64>> = (1..=8).map(|v| vec![v]).collect();
        let refs: Vec<&[i64]> = clauses.iter().map(Vec::as_slice).collect();
        let g = f(8, &refs);
        let out = decide_above_average(&g, 1, DEFAULT_BUDGET);
        assert_eq!(out.answer, Answer::Yes);
        assert_eq!(out.mechanism, Mechanism::ThresholdCertificate);
        assert!(out.witness.is_none());
        assert!(out.twice_excess_max.is_none());
    }

    #[test]
    fn decide_budget_exhaustion() {
        // Complete sets on disjoint pairs cancel; a 3-clause chain keeps a
        // kernel bigger than a budget of 1 but below the threshold.
        let g = f(3, &[&[1, 2], &[-2, 3], &[-1, -3]]);
        let out = decide_above_average(&g, 3, 1);
        assert_eq!(out.answer, Answer::Unknown);
        assert_eq!(out.mechanism, Mechanism::BudgetExceeded);
        assert!(out.kernel_vars.unwrap() > 1);
    }

    #[test]
    fn decide_kernel_only_witness_when_formula_exceeds_budget() {
        // (x1) three times; 29 contradicting unit pairs push n past the budget.
        let mut clauses = vec![Clause::new(vec![Literal::positive(1)]).unwrap(); 3];
        for v in 2..=30 {
            clauses.push(Clause::new(vec![Literal::positive(v)]).unwrap());
            clauses.push(Clause::new(vec![Literal::negative(v)]).unwrap());
        }
        let g = CnfFormula::new(30, clauses).unwrap();
        let out = decide_above_average(&g, 1, 24);
        // Kernel {x1 = -1, w = 3}: one live variable, below the threshold of 2.
        assert_eq!(out.kernel_vars, Some(1));
        assert_eq!(out.mechanism, Mechanism::KernelExhaustion);
        assert_eq!(out.answer, Answer::Yes);
        assert_eq!(out.twice_excess_max, Some(BigInt::from(3)));
        assert_eq!(out.witness_scope, Some(WitnessScope::KernelOnly));
        assert!(out.witness.unwrap().is_true(1));

        let out = decide_above_average(&g, 2, 24);
        assert_eq!(out.answer, Answer::No);
    }

    #[test]
    fn regime_examples() {
        let wide = |n: usize, r: usize| {
            let lits: Vec<i64> = (1..=r as i64).collect();
            CnfFormula::from_dimacs_clauses(n, &[&lits]).unwrap()
        };
        let rep = classify_regime(&wide(1 << 16, 2));
        assert_eq!(rep.regime, Regime::FptXp);
        assert_eq!(rep.xp_bound, Some(2.0));
        assert_eq!(rep.ceil_log_n, Some(16));
        let rep = classify_regime(&wide(16, 4));
        assert_eq!(rep.regime, Regime::Hard);
        assert_eq!(rep.ceil_log_n, Some(4));
        assert_eq!(classify_regime(&wide(8, 2)).regime, Regime::SmallN);
        assert_eq!(classify_regime(&CnfFormula::empty(0)).regime, Regime::SmallN);
        // log log 2^16 = 4 > r = 3 > 2.
        assert_eq!(classify_regime(&wide(1 << 16, 3)).regime, Regime::Intermediate);
    }
}
