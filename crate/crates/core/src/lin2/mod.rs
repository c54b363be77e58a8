//! Weighted systems of parity equations `∏_{i∈I} x_i = b` over `x_i ∈ {-1,+1}`.
//!
//! The excess of an assignment is half the satisfied weight minus the
//! unsatisfied weight; everything here works with twice the excess so values
//! stay integral.

mod exhaust;
mod gf2;
mod rules;
mod text;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::formula::Assignment;

pub use exhaust::{brute_force_max_excess, MaxExcess, DEFAULT_BUDGET};
pub use gf2::{greedy_column_basis, rank};
pub use rules::{
    merge_rule, rank_rule, reduce_fixpoint, threshold_yes, ReductionTrace, TraceStep,
};
pub use text::{parse_lin2, serialize_lin2};

/// One weighted equation. The support is sorted, nonempty and duplicate free;
/// the right-hand side is `+1` or `-1`; the weight is at least 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Lin2Equation {
    support: Vec<u32>,
    rhs: i8,
    weight: BigUint,
}

impl Lin2Equation {
    pub fn new(mut support: Vec<u32>, rhs: i8, weight: impl Into<BigUint>) -> Result<Self> {
        let weight = weight.into();
        if support.is_empty() {
            return Err(Error::InvalidEquation("empty support".into()));
        }
        if rhs != 1 && rhs != -1 {
            return Err(Error::InvalidEquation(format!("rhs {rhs} is not ±1")));
        }
        if weight.is_zero() {
            return Err(Error::InvalidEquation("weight must be positive".into()));
        }
        support.sort_unstable();
        if support[0] == 0 {
            return Err(Error::InvalidEquation("variables are 1-based".into()));
        }
        if let Some(w) = support.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidEquation(format!("duplicate variable x{}", w[0])));
        }
        Ok(Self { support, rhs, weight })
    }

    /// Builds the equation whose signed coefficient `w·b` is `coeff`, or
    /// `None` when `coeff` is zero.
    pub fn from_coefficient(support: Vec<u32>, coeff: &BigInt) -> Result<Option<Self>> {
        let (sign, magnitude) = (coeff.sign(), coeff.magnitude().clone());
        match sign {
            num_bigint::Sign::NoSign => Ok(None),
            num_bigint::Sign::Plus => Self::new(support, 1, magnitude).map(Some),
            num_bigint::Sign::Minus => Self::new(support, -1, magnitude).map(Some),
        }
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    pub fn rhs(&self) -> i8 {
        self.rhs
    }

    pub fn weight(&self) -> &BigUint {
        &self.weight
    }

    /// The signed coefficient `c = w·b`.
    pub fn coefficient(&self) -> BigInt {
        let w = BigInt::from(self.weight.clone());
        if self.rhs < 0 {
            -w
        } else {
            w
        }
    }

    pub fn arity(&self) -> usize {
        self.support.len()
    }

    /// `∏ x_i` under `a`, as ±1.
    pub fn product(&self, a: &Assignment) -> i8 {
        let trues = self.support.iter().filter(|&&v| a.is_true(v)).count();
        if trues % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.product(a) == self.rhs
    }
}

/// A weighted system over variables `1..=num_vars`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Lin2System {
    num_vars: usize,
    equations: Vec<Lin2Equation>,
}

impl Lin2System {
    pub fn new(num_vars: usize, equations: Vec<Lin2Equation>) -> Result<Self> {
        if let Some(e) = equations.iter().find(|e| *e.support.last().unwrap() as usize > num_vars) {
            return Err(Error::InvalidEquation(format!(
                "variable x{} exceeds declared count {num_vars}",
                e.support.last().unwrap()
            )));
        }
        Ok(Self { num_vars, equations })
    }

    pub fn empty(num_vars: usize) -> Self {
        Self { num_vars, equations: Vec::new() }
    }

    /// Convenience constructor from `(support, rhs, weight)` triples.
    pub fn from_triples(num_vars: usize, eqs: &[(&[u32], i8, u64)]) -> Result<Self> {
        let equations = eqs
            .iter()
            .map(|(s, b, w)| Lin2Equation::new(s.to_vec(), *b, *w))
            .collect::<Result<_>>()?;
        Self::new(num_vars, equations)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_equations(&self) -> usize {
        self.equations.len()
    }

    pub fn equations(&self) -> &[Lin2Equation] {
        &self.equations
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// `W`, the sum of all weights.
    pub fn total_weight(&self) -> BigUint {
        self.equations.iter().map(|e| &e.weight).sum()
    }

    /// Variables occurring in at least one support, ascending.
    pub fn live_vars(&self) -> Vec<u32> {
        let mut seen = vec![false; self.num_vars + 1];
        for e in &self.equations {
            for &v in &e.support {
                seen[v as usize] = true;
            }
        }
        (1..=self.num_vars as u32).filter(|&v| seen[v as usize]).collect()
    }

    /// Largest support size, 0 for an empty system.
    pub fn max_arity(&self) -> usize {
        self.equations.iter().map(Lin2Equation::arity).max().unwrap_or(0)
    }

    /// True when no two equations share a support.
    pub fn is_merge_stable(&self) -> bool {
        let mut supports: Vec<&[u32]> = self.equations.iter().map(|e| e.support()).collect();
        supports.sort_unstable();
        supports.windows(2).all(|w| w[0] != w[1])
    }

    /// Stable under both rules: distinct supports and as many live variables
    /// as the rank of the incidence matrix.
    pub fn is_rule_stable(&self) -> bool {
        self.is_merge_stable() && rank(self) == self.live_vars().len()
    }

    /// Twice the excess, `Σ c_j ∏_{i∈I_j} a_i`: satisfied weight minus
    /// unsatisfied weight.
    pub fn twice_excess(&self, a: &Assignment) -> Result<BigInt> {
        if a.len() != self.num_vars {
            return Err(Error::LengthMismatch { expected: self.num_vars, found: a.len() });
        }
        let mut total = BigInt::zero();
        for e in &self.equations {
            let w = BigInt::from(e.weight.clone());
            if i32::from(e.product(a)) * i32::from(e.rhs) > 0 {
                total += w;
            } else {
                total -= w;
            }
        }
        Ok(total)
    }
}
