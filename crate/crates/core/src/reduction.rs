//! CNF to weighted parity system, via the multilinear expansion of
//!
//! ```text
//! h_j(x) = 2^(r - r_j) · [1 - ∏_{i ∈ var(c_j)} (1 + d_ij·x_i)]
//! ```
//!
//! where `d_ij` is `+1` for a positive and `-1` for a negative literal. With
//! TRUE = -1, `∏(1 + d_ij x_i)` is `2^r_j` exactly when the clause is falsified
//! and 0 otherwise, so `H = Σ h_j` equals `2^r` times the excess.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::formula::{Assignment, Clause, CnfFormula};
use crate::lin2::{Lin2Equation, Lin2System};

/// Multilinear polynomial `Σ_S c_S ∏_{i∈S} x_i` with no constant term and no
/// zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TermMap {
    entries: BTreeMap<Vec<u32>, BigInt>,
    r_used: u32,
}

impl TermMap {
    pub fn r_used(&self) -> u32 {
        self.r_used
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, support: &[u32]) -> Option<&BigInt> {
        self.entries.get(support)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    fn add_term(&mut self, support: Vec<u32>, coeff: BigInt) {
        use std::collections::btree_map::Entry;
        match self.entries.entry(support) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Coefficient-wise sum, dropping cancelled terms.
    pub fn absorb(&mut self, other: TermMap) {
        self.r_used = self.r_used.max(other.r_used);
        for (s, c) in other.entries {
            self.add_term(s, c);
        }
    }

    /// `Σ c_S ∏_{i∈S} a_i`.
    pub fn eval(&self, a: &Assignment) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (support, c) in &self.entries {
            if let Some(&v) = support.iter().find(|&&v| v as usize > a.len()) {
                return Err(Error::LengthMismatch { expected: v as usize, found: a.len() });
            }
            let trues = support.iter().filter(|&&v| a.is_true(v)).count();
            if trues % 2 == 0 {
                total += c;
            } else {
                total -= c;
            }
        }
        Ok(total)
    }
}

/// Expands `h_j` for one clause under width bound `r`: every nonempty subset
/// `S` of the clause's variables gets `-2^(r - r_j) · ∏_{i∈S} d_ij`.
pub fn expand_clause(c: &Clause, r: u32) -> Result<TermMap> {
    let width = c.width() as u32;
    if r < width {
        return Err(Error::InvalidArgument(format!(
            "width bound {r} is below clause width {width}"
        )));
    }
    let scale = BigInt::from(1u8) << (r - width);
    let lits = c.literals();
    let mut entries = BTreeMap::new();
    for subset in 1u64..1 << width {
        let mut support = Vec::with_capacity(subset.count_ones() as usize);
        let mut negatives = 0;
        for (i, l) in lits.iter().enumerate() {
            if subset >> i & 1 == 1 {
                support.push(l.var());
                negatives += usize::from(l.is_negated());
            }
        }
        support.sort_unstable();
        // -∏ d_ij: negative unless an odd number of the chosen literals are negated.
        let coeff = if negatives % 2 == 1 { scale.clone() } else { -scale.clone() };
        entries.insert(support, coeff);
    }
    Ok(TermMap { entries, r_used: r })
}

/// Width bound used for a formula: its maximum clause width, at least 1.
pub fn width_bound(f: &CnfFormula) -> u32 {
    (f.max_width() as u32).max(1)
}

/// `H = Σ_j h_j` with `r` set to [`width_bound`].
pub fn build_h(f: &CnfFormula) -> TermMap {
    let r = width_bound(f);
    let mut h = TermMap { entries: BTreeMap::new(), r_used: r };
    for c in f.clauses() {
        h.absorb(expand_clause(c, r).expect("r is at least every clause width"));
    }
    h
}

pub fn eval_h(t: &TermMap, a: &Assignment) -> Result<BigInt> {
    t.eval(a)
}

/// The parity system equivalent to a CNF instance with parameter `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lin2Reduction {
    pub system: Lin2System,
    /// `k · 2^(r_used - 1)`.
    pub k2: BigUint,
    pub r_used: u32,
}

impl Lin2Reduction {
    /// The bound `k · 2^r_used` that twice the excess must reach.
    pub fn twice_target(&self) -> BigUint {
        &self.k2 * 2u32
    }
}

/// One equation per term of `H`: support `S`, weight `|c_S|`, rhs the sign of
/// `c_S`. Equations are ordered by support size, then lexicographically.
pub fn cnf_to_lin2(f: &CnfFormula, k: u64) -> Lin2Reduction {
    let h = build_h(f);
    let mut terms: Vec<(Vec<u32>, BigInt)> = h.entries.into_iter().collect();
    terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    let equations = terms
        .into_iter()
        .map(|(s, c)| {
            Lin2Equation::from_coefficient(s, &c)
                .expect("valid support")
                .expect("zero coefficients are never stored")
        })
        .collect();
    let system = Lin2System::new(f.num_vars(), equations).expect("supports come from the formula");
    let k2 = BigUint::from(k) << (h.r_used - 1);
    Lin2Reduction { system, k2, r_used: h.r_used }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Dyadic;
    use crate::formula::complete_set;

    fn f(n: usize, clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::from_dimacs_clauses(n, clauses).unwrap()
    }

    fn terms(t: &TermMap) -> Vec<(Vec<u32>, i64)> {
        t.iter().map(|(s, c)| (s.to_vec(), c.try_into().unwrap())).collect()
    }

    /// `h_j` evaluated straight from its definition, as an oracle.
    fn h_direct(c: &Clause, r: u32, a: &Assignment) -> BigInt {
        let prod: i64 = c
            .literals()
            .iter()
            .map(|l| 1 + i64::from(l.polarity()) * i64::from(a.spin(l.var())))
            .product();
        BigInt::from(1i64 << (r - c.width() as u32)) * (1 - prod)
    }

    #[test]
    fn expand_unit_clauses() {
        let pos = Clause::from_dimacs(&[1]).unwrap();
        assert_eq!(terms(&expand_clause(&pos, 1).unwrap()), vec![(vec![1], -1)]);
        let neg = Clause::from_dimacs(&[-1]).unwrap();
        assert_eq!(terms(&expand_clause(&neg, 1).unwrap()), vec![(vec![1], 1)]);
    }

    #[test]
    fn expand_binary_clause_matches_definition() {
        let c = Clause::from_dimacs(&[1, 2]).unwrap();
        let t = expand_clause(&c, 2).unwrap();
        assert_eq!(terms(&t), vec![(vec![1], -1), (vec![1, 2], -1), (vec![2], -1)]);
        for m in 0..4 {
            let a = Assignment::from_mask(2, m);
            assert_eq!(t.eval(&a).unwrap(), h_direct(&c, 2, &a));
        }
    }

    #[test]
    fn expand_scales_and_rejects_narrow_bound() {
        let c = Clause::from_dimacs(&[2, -3]).unwrap();
        let t = expand_clause(&c, 4).unwrap();
        assert_eq!(terms(&t), vec![(vec![2], -4), (vec![2, 3], 4), (vec![3], 4)]);
        assert!(expand_clause(&c, 1).is_err());
    }

    #[test]
    fn build_h_examples() {
        assert!(build_h(&complete_set(&[1, 2]).unwrap()).is_empty());
        assert_eq!(terms(&build_h(&f(1, &[&[1]]))), vec![(vec![1], -1)]);
        let pair = build_h(&f(1, &[&[1], &[-1]]));
        assert!(pair.is_empty());
        assert_eq!(pair.r_used(), 1);
    }

    #[test]
    fn eval_h_examples() {
        let t = build_h(&f(1, &[&[1]]));
        let t_true = t.eval(&Assignment::from_spins(&[-1]).unwrap()).unwrap();
        assert_eq!(t_true, BigInt::from(1));
        let t_false = t.eval(&Assignment::from_spins(&[1]).unwrap()).unwrap();
        assert_eq!(t_false, BigInt::from(-1));
        assert!(TermMap::default().eval(&Assignment::all_false(3)).unwrap().is_zero());
        assert!(t.eval(&Assignment::all_false(0)).is_err());
    }

    #[test]
    fn cnf_to_lin2_examples() {
        let r = cnf_to_lin2(&f(2, &[&[1, 2]]), 1);
        let expected =
            Lin2System::from_triples(2, &[(&[1], -1, 1), (&[2], -1, 1), (&[1, 2], -1, 1)]).unwrap();
        assert_eq!(r.system, expected);
        assert_eq!(r.k2, BigUint::from(2u32));
        for m in 0..4 {
            let a = Assignment::from_mask(2, m);
            let twice_j = Dyadic::from(r.system.twice_excess(&a).unwrap());
            let eps_i = f(2, &[&[1, 2]]).excess(&a).unwrap();
            // ε_J = ε_I · 2^(r-1), i.e. 2ε_J = ε_I · 2^r.
            assert_eq!(twice_j, eps_i.mul_pow2(2));
        }

        let r = cnf_to_lin2(&complete_set(&[1, 2]).unwrap(), 1);
        assert!(r.system.is_empty());
        assert_eq!(r.k2, BigUint::from(2u32));

        let r = cnf_to_lin2(&f(1, &[&[-1]]), 0);
        assert_eq!(r.system, Lin2System::from_triples(1, &[(&[1], 1, 1)]).unwrap());
        assert!(r.k2.is_zero());
    }

    #[test]
    fn empty_formula_uses_unit_width() {
        let r = cnf_to_lin2(&CnfFormula::empty(2), 3);
        assert_eq!(r.r_used, 1);
        assert_eq!(r.k2, BigUint::from(3u32));
        assert!(r.system.is_empty());
    }
}
