//! Instance constructions: the width-`⌈log n'⌉` hardness gadget built from a
//! 3-CNF, contradicting-unit padding, and seeded random instances.
//!
//! Random generators use ChaCha8 seeded through `SeedableRng::seed_from_u64`,
//! so a seed always produces the same instance.

use std::collections::HashSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{complete_set, Clause, CnfFormula, Literal};
use crate::lin2::{Lin2Equation, Lin2System};

/// Sizes and layout of a [`gen_theorem1`] instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Meta {
    pub n_input: usize,
    pub m_input: usize,
    pub c: usize,
    /// `2·c·n`.
    pub n_prime: usize,
    /// `⌈log2 n'⌉`, the width of every output clause.
    #[serde(rename = "L")]
    pub width: u32,
    /// `2^(L+1)`.
    pub m_prime: usize,
    pub c1_size: usize,
    pub c2_size: usize,
    pub c3_size: usize,
    /// Inclusive variable ranges: `x_1..x_n`, then `y_1..y_(n'-n)`.
    pub x_block: (usize, usize),
    pub y_block: (usize, usize),
}

fn ceil_log2(n: usize) -> u32 {
    n.next_power_of_two().trailing_zeros()
}

/// `C(n, k)`, saturating at `u128::MAX`.
fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic
/// order; returns false after the last one.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// Positive width-`width` clauses over `tail` variables, as offsets: first
/// cyclic windows starting at `0, width, 2·width, …` (these cover every tail
/// variable), then lexicographic combinations not already used.
fn positive_tail_clauses(tail: usize, width: usize, count: usize) -> Vec<Vec<usize>> {
    let mut chosen: Vec<Vec<usize>> = Vec::with_capacity(count);
    let mut seen = HashSet::new();
    for start in (0..tail).step_by(width) {
        let mut w: Vec<usize> = (start..start + width).map(|o| o % tail).collect();
        w.sort_unstable();
        if seen.insert(w.clone()) {
            chosen.push(w);
        }
    }
    let mut idx: Vec<usize> = (0..width).collect();
    while chosen.len() < count {
        if seen.insert(idx.clone()) {
            chosen.push(idx.clone());
        }
        if !next_combination(&mut idx, tail) {
            break;
        }
    }
    chosen.truncate(count);
    chosen
}

/// Builds `F'` from a 3-CNF `f` with `m <= c·n`: on `n' = 2cn` variables with
/// `m' = 2^(L+1)` clauses of width `L = ⌈log2 n'⌉`,
///
/// * C1: the complete set on `y_1..y_L` without the all-negative clause,
/// * C2: `c_i ∨ ¬y_4 ∨ … ∨ ¬y_L` for every input clause,
/// * C3: all-positive clauses on `y_(L+1)..y_(n'-n)` covering each of them.
///
/// `asat(F') = m' - 2`, and `f` is satisfiable iff all of `F'` is.
pub fn gen_theorem1(f: &CnfFormula, c: usize) -> Result<(CnfFormula, Theorem1Meta)> {
    let (n, m) = (f.num_vars(), f.num_clauses());
    if let Some((i, cl)) = f.clauses().iter().enumerate().find(|(_, cl)| cl.width() != 3) {
        return Err(Error::InvalidArgument(format!(
            "every input clause must have exactly 3 literals; clause {} has {}",
            i + 1,
            cl.width()
        )));
    }
    let mut distinct = HashSet::new();
    if let Some(i) = f.clauses().iter().position(|cl| !distinct.insert(cl.canonical())) {
        return Err(Error::InvalidArgument(format!("input clause {} is a duplicate", i + 1)));
    }
    if c == 0 || n == 0 {
        return Err(Error::Infeasible("need c >= 1 and n >= 1".into()));
    }
    if m > c * n {
        return Err(Error::Infeasible(format!("m <= c·n violated: {m} > {c}·{n}")));
    }
    let n_prime = 2 * c * n;
    let width = ceil_log2(n_prime);
    let l = width as usize;
    if l < 3 {
        return Err(Error::Infeasible(format!("L >= 3 violated: L = ⌈log2 {n_prime}⌉ = {l}")));
    }
    if l > 24 {
        return Err(Error::Infeasible(format!("L <= 24 violated: L = {l}")));
    }
    if m > (1 << l) + 1 {
        return Err(Error::Infeasible(format!("m <= 2^L + 1 violated: {m} > {}", (1 << l) + 1)));
    }
    let tail = n_prime - n - l;
    if n_prime < n + 2 * l {
        return Err(Error::Infeasible(format!(
            "n' - n - L >= L violated: {n_prime} - {n} - {l} < {l}"
        )));
    }
    let m_prime = 1usize << (l + 1);
    let c1_size = (1 << l) - 1;
    let c3_size = m_prime - c1_size - m;
    if binomial(tail, l) < c3_size as u128 {
        return Err(Error::Infeasible(format!(
            "C(n' - n - L, L) >= |C3| violated: C({tail}, {l}) < {c3_size}"
        )));
    }
    if c3_size < tail.div_ceil(l) {
        return Err(Error::Infeasible(format!(
            "|C3| >= ⌈(n' - n - L)/L⌉ violated: {c3_size} < ⌈{tail}/{l}⌉"
        )));
    }

    let y = |i: usize| (n + i) as u32;
    let mut clauses = Vec::with_capacity(m_prime);

    let ys: Vec<u32> = (1..=l).map(y).collect();
    let mut c1 = complete_set(&ys)?.into_clauses();
    c1.pop(); // all-negative clause comes last
    clauses.extend(c1);

    for cl in f.clauses() {
        let mut lits = cl.literals().to_vec();
        lits.extend((4..=l).map(|i| Literal::negative(y(i))));
        clauses.push(Clause::new(lits)?);
    }

    for offsets in positive_tail_clauses(tail, l, c3_size) {
        let lits = offsets.iter().map(|&o| Literal::positive(y(l + 1 + o))).collect();
        clauses.push(Clause::new(lits)?);
    }

    debug_assert_eq!(clauses.len(), m_prime);
    let meta = Theorem1Meta {
        n_input: n,
        m_input: m,
        c,
        n_prime,
        width,
        m_prime,
        c1_size,
        c2_size: m,
        c3_size,
        x_block: (1, n),
        y_block: (n + 1, n_prime),
    };
    Ok((CnfFormula::new(n_prime, clauses)?, meta))
}

/// Appends `extra_vars` fresh variables, each with clauses `(x)` and `(¬x)`.
pub fn pad_contradicting_units(f: &CnfFormula, extra_vars: usize) -> CnfFormula {
    let n = f.num_vars();
    let mut clauses = f.clauses().to_vec();
    for v in n + 1..=n + extra_vars {
        clauses.push(Clause::new(vec![Literal::positive(v as u32)]).unwrap());
        clauses.push(Clause::new(vec![Literal::negative(v as u32)]).unwrap());
    }
    CnfFormula::new(n + extra_vars, clauses).expect("fresh variables are declared")
}

/// `m` clauses with widths uniform in `1..=width_max`, distinct variables per
/// clause (listed ascending) and uniform signs.
pub fn gen_random_cnf(n: usize, m: usize, width_max: usize, seed: u64) -> Result<CnfFormula> {
    if width_max == 0 || width_max > n {
        return Err(Error::Infeasible(format!(
            "1 <= width_max <= n violated: width_max = {width_max}, n = {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..m)
        .map(|_| {
            let width = rng.random_range(1..=width_max);
            let mut vars = sample(&mut rng, n, width).into_vec();
            vars.sort_unstable();
            let lits = vars
                .into_iter()
                .map(|v| {
                    let v = v as u32 + 1;
                    if rng.random_bool(0.5) {
                        Literal::negative(v)
                    } else {
                        Literal::positive(v)
                    }
                })
                .collect();
            Clause::new(lits).expect("distinct variables")
        })
        .collect();
    CnfFormula::new(n, clauses)
}

/// `m` equations with arity uniform in `1..=arity_max`, uniform rhs, weights
/// uniform in `1..=weight_max`.
pub fn gen_random_lin2(
    n: usize,
    m: usize,
    arity_max: usize,
    weight_max: u64,
    seed: u64,
) -> Result<Lin2System> {
    if arity_max == 0 || arity_max > n {
        return Err(Error::Infeasible(format!(
            "1 <= arity_max <= n violated: arity_max = {arity_max}, n = {n}"
        )));
    }
    if weight_max == 0 {
        return Err(Error::Infeasible("weight_max >= 1 violated".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let equations = (0..m)
        .map(|_| {
            let arity = rng.random_range(1..=arity_max);
            let support: Vec<u32> =
                sample(&mut rng, n, arity).into_iter().map(|v| v as u32 + 1).collect();
            let rhs = if rng.random_bool(0.5) { -1 } else { 1 };
            let weight = rng.random_range(1..=weight_max);
            Lin2Equation::new(support, rhs, weight).expect("valid random equation")
        })
        .collect();
    Lin2System::new(n, equations)
}
