//! MaxSat parameterized above the average number of satisfied clauses.
//!
//! A CNF formula with clause widths `r_1..r_m` has `asat(F) = Σ (1 - 2^-r_i)`
//! satisfied clauses in expectation under a uniform assignment, and some
//! assignment always reaches it. This crate computes `asat` exactly, finds
//! such an assignment, and decides whether `asat(F) + k` is reachable by
//! reducing to a weighted parity system, kernelizing it, and either
//! certifying YES from the kernel size or searching the kernel exhaustively.
//!
//! Truth values are ±1 throughout: TRUE is `-1`, FALSE is `+1`.

pub mod dimacs;
pub mod dyadic;
pub mod error;
pub mod formula;
pub mod generator;
pub mod lin2;
pub mod reduction;
mod search;
pub mod solver;

pub use dimacs::{parse_dimacs, parse_dimacs_with, serialize_dimacs, Diagnostic, ParseOptions};
pub use dyadic::Dyadic;
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use formula::{complete_set, Assignment, Clause, CnfFormula, Literal};
pub use generator::{
    gen_random_cnf, gen_random_lin2, gen_theorem1, pad_contradicting_units, Theorem1Meta,
};
pub use lin2::{
    brute_force_max_excess, merge_rule, parse_lin2, rank_rule, reduce_fixpoint, serialize_lin2,
    threshold_yes, Lin2Equation, Lin2System, MaxExcess, ReductionTrace, TraceStep, DEFAULT_BUDGET,
};
pub use reduction::{build_h, cnf_to_lin2, eval_h, expand_clause, Lin2Reduction, TermMap};
pub use search::MAX_SEARCH_BITS;
pub use solver::{
    classify_regime, conditional_expectation, decide_above_average, derandomized_assignment,
    oracle_max_sat, Answer, DecisionOutcome, Mechanism, OracleResult, Regime, RegimeReport,
    WitnessScope,
};
