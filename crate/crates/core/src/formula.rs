//! The CNF model: literals, clauses, formulas and total assignments, plus the
//! exact average `asat` and the excess of an assignment above it.
//!
//! Truth values follow the ±1 convention used throughout the crate:
//! TRUE is `-1` and FALSE is `+1`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

/// A variable (1-based) with a polarity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    var: u32,
    negated: bool,
}

impl Literal {
    pub fn positive(var: u32) -> Self {
        assert!(var >= 1, "variables are 1-based");
        Self { var, negated: false }
    }

    pub fn negative(var: u32) -> Self {
        assert!(var >= 1, "variables are 1-based");
        Self { var, negated: true }
    }

    /// Parses the signed DIMACS encoding (`3` is x3, `-3` is ¬x3).
    pub fn from_dimacs(lit: i64) -> Result<Self> {
        if lit == 0 || lit.unsigned_abs() > u64::from(u32::MAX) {
            return Err(Error::InvalidLiteral(lit.to_string()));
        }
        Ok(Self { var: lit.unsigned_abs() as u32, negated: lit < 0 })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.var);
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn is_negated(self) -> bool {
        self.negated
    }

    /// `+1` for a positive literal, `-1` for a negative one.
    pub fn polarity(self) -> i8 {
        if self.negated {
            -1
        } else {
            1
        }
    }

    pub fn is_satisfied_by(self, a: &Assignment) -> bool {
        a.is_true(self.var) != self.negated
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A nonempty disjunction of literals over pairwise distinct variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Clause {
    lits: Vec<Literal>,
}

impl Clause {
    pub fn new(lits: Vec<Literal>) -> Result<Self> {
        if lits.is_empty() {
            return Err(Error::InvalidClause("empty clause".into()));
        }
        let mut vars: Vec<u32> = lits.iter().map(|l| l.var).collect();
        vars.sort_unstable();
        if let Some(w) = vars.windows(2).find(|w| w[0] == w[1]) {
            let v = w[0];
            let both = lits.iter().any(|l| l.var == v && l.negated)
                && lits.iter().any(|l| l.var == v && !l.negated);
            let what = if both { "tautological" } else { "duplicate variable" };
            return Err(Error::InvalidClause(format!("{what} x{v}")));
        }
        Ok(Self { lits })
    }

    pub fn from_dimacs(lits: &[i64]) -> Result<Self> {
        Self::new(lits.iter().map(|&l| Literal::from_dimacs(l)).collect::<Result<_>>()?)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn width(&self) -> usize {
        self.lits.len()
    }

    pub fn max_var(&self) -> u32 {
        self.lits.iter().map(|l| l.var).max().unwrap_or(0)
    }

    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.lits.iter().any(|l| l.is_satisfied_by(a))
    }

    /// The clause's literals as a sorted set, for distinctness checks.
    pub(crate) fn canonical(&self) -> Vec<Literal> {
        let mut v = self.lits.clone();
        v.sort_unstable();
        v
    }
}

/// A CNF formula over variables `1..=num_vars`. Duplicate clauses are allowed
/// and counted separately.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self> {
        if let Some(c) = clauses.iter().find(|c| c.max_var() as usize > num_vars) {
            return Err(Error::InvalidClause(format!(
                "variable x{} exceeds declared count {num_vars}",
                c.max_var()
            )));
        }
        Ok(Self { num_vars, clauses })
    }

    pub fn empty(num_vars: usize) -> Self {
        Self { num_vars, clauses: Vec::new() }
    }

    /// Builds a formula from DIMACS-style literal lists.
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i64]]) -> Result<Self> {
        let clauses = clauses.iter().map(|c| Clause::from_dimacs(c)).collect::<Result<_>>()?;
        Self::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn into_clauses(self) -> Vec<Clause> {
        self.clauses
    }

    /// Largest clause width, 0 for an empty formula.
    pub fn max_width(&self) -> usize {
        self.clauses.iter().map(Clause::width).max().unwrap_or(0)
    }

    /// Expected number of clauses satisfied by a uniformly random assignment,
    /// `Σ (1 - 2^-r_i)`.
    pub fn asat(&self) -> Dyadic {
        self.clauses
            .iter()
            .map(|c| Dyadic::one_minus_pow2_neg(c.width() as u32))
            .sum()
    }

    pub fn count_satisfied(&self, a: &Assignment) -> Result<usize> {
        self.check_len(a)?;
        Ok(self.clauses.iter().filter(|c| c.is_satisfied_by(a)).count())
    }

    /// Satisfied clauses minus `asat`, exactly.
    pub fn excess(&self, a: &Assignment) -> Result<Dyadic> {
        let sat = self.count_satisfied(a)?;
        Ok(Dyadic::from(sat as i64) - self.asat())
    }

    fn check_len(&self, a: &Assignment) -> Result<()> {
        if a.len() != self.num_vars {
            return Err(Error::LengthMismatch { expected: self.num_vars, found: a.len() });
        }
        Ok(())
    }
}

/// All `2^t` sign patterns over `vars`, one clause each.
///
/// Clause `p` negates the `i`-th variable iff bit `t-1-i` of `p` is set, so the
/// all-positive clause comes first and the all-negative one last.
pub fn complete_set(vars: &[u32]) -> Result<CnfFormula> {
    if vars.is_empty() {
        return Err(Error::InvalidArgument("complete set needs at least one variable".into()));
    }
    if vars.len() > 24 {
        return Err(Error::InvalidArgument("complete set over more than 24 variables".into()));
    }
    let mut sorted = vars.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("duplicate variable in complete set".into()));
    }
    if sorted[0] == 0 {
        return Err(Error::InvalidArgument("variables are 1-based".into()));
    }
    let t = vars.len();
    let clauses = (0u32..1 << t)
        .map(|p| {
            let lits = vars
                .iter()
                .enumerate()
                .map(|(i, &v)| Literal { var: v, negated: p >> (t - 1 - i) & 1 == 1 })
                .collect();
            Clause { lits }
        })
        .collect();
    Ok(CnfFormula { num_vars: *sorted.last().unwrap() as usize, clauses })
}

/// A total truth assignment to variables `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Assignment {
    truth: Vec<bool>,
}

impl Assignment {
    /// Every variable FALSE (`+1`).
    pub fn all_false(n: usize) -> Self {
        Self { truth: vec![false; n] }
    }

    pub fn from_truth(truth: Vec<bool>) -> Self {
        Self { truth }
    }

    /// From ±1 values, `-1` meaning TRUE.
    pub fn from_spins(spins: &[i8]) -> Result<Self> {
        spins
            .iter()
            .map(|&s| match s {
                -1 => Ok(true),
                1 => Ok(false),
                other => Err(Error::InvalidArgument(format!("assignment value {other} is not ±1"))),
            })
            .collect::<Result<_>>()
            .map(|truth| Self { truth })
    }

    /// Decodes a search mask: variable 1 is the most significant of the `n`
    /// bits and a set bit means TRUE. Increasing masks are therefore
    /// lexicographically increasing assignments with FALSE < TRUE.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self { truth: (0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect() }
    }

    pub fn len(&self) -> usize {
        self.truth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.truth.is_empty()
    }

    pub fn is_true(&self, var: u32) -> bool {
        self.truth[var as usize - 1]
    }

    pub fn set(&mut self, var: u32, value: bool) {
        self.truth[var as usize - 1] = value;
    }

    /// `-1` for TRUE, `+1` for FALSE.
    pub fn spin(&self, var: u32) -> i8 {
        if self.is_true(var) {
            -1
        } else {
            1
        }
    }

    pub fn spins(&self) -> Vec<i8> {
        (1..=self.truth.len() as u32).map(|v| self.spin(v)).collect()
    }

    pub fn truth(&self) -> &[bool] {
        &self.truth
    }

    /// Extends with `extra` FALSE variables.
    pub fn extended(&self, extra: usize) -> Self {
        let mut truth = self.truth.clone();
        truth.resize(truth.len() + extra, false);
        Self { truth }
    }

    /// DIMACS-style model line body: `1 -2 3` with positive meaning TRUE.
    pub fn to_dimacs_literals(&self) -> Vec<i64> {
        self.truth
            .iter()
            .enumerate()
            .map(|(i, &t)| if t { i as i64 + 1 } else { -(i as i64 + 1) })
            .collect()
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.spins()).finish()
    }
}

impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.spins().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: usize, clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_dimacs_clauses(n, clauses).unwrap()
    }

    fn spins(v: &[i8]) -> Assignment {
        Assignment::from_spins(v).unwrap()
    }

    #[test]
    fn clause_rejects_tautology_and_duplicates() {
        assert!(Clause::from_dimacs(&[1, -1]).is_err());
        assert!(Clause::from_dimacs(&[2, 2]).is_err());
        assert!(Clause::from_dimacs(&[]).is_err());
        assert!(Literal::from_dimacs(0).is_err());
    }

    #[test]
    fn formula_rejects_out_of_range() {
        assert!(CnfFormula::from_dimacs_clauses(1, &[&[2]]).is_err());
    }

    #[test]
    fn asat_examples() {
        assert_eq!(f(3, &[&[1, 2, 3]]).asat(), Dyadic::new(7, 3));
        assert_eq!(complete_set(&[1, 2]).unwrap().asat(), Dyadic::from(3));
        assert_eq!(CnfFormula::empty(4).asat(), Dyadic::zero());
    }

    #[test]
    fn count_satisfied_examples() {
        assert_eq!(f(1, &[&[1]]).count_satisfied(&spins(&[-1])).unwrap(), 1);
        let pair = f(1, &[&[1], &[-1]]);
        for a in [spins(&[-1]), spins(&[1])] {
            assert_eq!(pair.count_satisfied(&a).unwrap(), 1);
        }
        let cs = complete_set(&[1, 2]).unwrap();
        for mask in 0..4 {
            assert_eq!(cs.count_satisfied(&Assignment::from_mask(2, mask)).unwrap(), 3);
        }
        assert_eq!(
            pair.count_satisfied(&spins(&[1, 1])),
            Err(Error::LengthMismatch { expected: 1, found: 2 })
        );
    }

    #[test]
    fn excess_examples() {
        let unit = f(1, &[&[1]]);
        assert_eq!(unit.excess(&spins(&[-1])).unwrap(), Dyadic::new(1, 1));
        assert_eq!(unit.excess(&spins(&[1])).unwrap(), Dyadic::new(-1, 1));
        let cs = complete_set(&[1, 2]).unwrap();
        for mask in 0..4 {
            assert!(cs.excess(&Assignment::from_mask(2, mask)).unwrap().is_zero());
        }
    }

    #[test]
    fn complete_set_shapes() {
        let one = complete_set(&[1]).unwrap();
        assert_eq!(one, f(1, &[&[1], &[-1]]));
        let two = complete_set(&[1, 2]).unwrap();
        assert_eq!(two, f(2, &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]));
        assert!(complete_set(&[1, 1]).is_err());
        assert!(complete_set(&[]).is_err());
    }

    #[test]
    fn complete_set_three_by_exhaustion() {
        let cs = complete_set(&[1, 2, 3]).unwrap();
        assert_eq!(cs.num_clauses(), 8);
        assert_eq!(cs.asat(), Dyadic::from(7));
        let best = (0..8)
            .map(|m| cs.count_satisfied(&Assignment::from_mask(3, m)).unwrap())
            .max()
            .unwrap();
        assert_eq!(best, 7);
    }

    #[test]
    fn mask_order_is_lexicographic_with_var1_first() {
        let a = Assignment::from_mask(3, 0b100);
        assert!(a.is_true(1));
        assert!(!a.is_true(3));
        assert_eq!(a.spins(), vec![-1, 1, 1]);
        assert_eq!(a.to_dimacs_literals(), vec![1, -2, -3]);
    }
}
