//! GF(2) elimination on the equation/variable incidence matrix, with columns
//! packed into `u64` words.

use super::Lin2System;

struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    fn zeros(bits: usize) -> Self {
        Self { words: vec![0; bits.div_ceil(64)] }
    }

    fn set(&mut self, bit: usize) {
        self.words[bit / 64] |= 1 << (bit % 64);
    }

    fn highest(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    fn xor_with(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }
}

/// Incremental column basis: each stored vector owns a distinct leading bit.
struct Basis {
    by_lead: Vec<Option<BitVec>>,
}

impl Basis {
    fn new(rows: usize) -> Self {
        Self { by_lead: (0..rows).map(|_| None).collect() }
    }

    /// Inserts `v` if it is independent of the stored vectors.
    fn insert(&mut self, mut v: BitVec) -> bool {
        while let Some(lead) = v.highest() {
            match &self.by_lead[lead] {
                Some(b) => v.xor_with(b),
                None => {
                    self.by_lead[lead] = Some(v);
                    return true;
                }
            }
        }
        false
    }
}

fn columns(s: &Lin2System) -> Vec<BitVec> {
    let rows = s.num_equations();
    let mut cols: Vec<BitVec> = (0..=s.num_vars()).map(|_| BitVec::zeros(rows)).collect();
    for (j, e) in s.equations().iter().enumerate() {
        for &v in e.support() {
            cols[v as usize].set(j);
        }
    }
    cols
}

/// The lexicographically first maximal set of independent columns, found by
/// scanning variables in ascending order and keeping each column that is not
/// spanned by the ones kept so far.
pub fn greedy_column_basis(s: &Lin2System) -> Vec<u32> {
    let mut basis = Basis::new(s.num_equations());
    columns(s)
        .into_iter()
        .enumerate()
        .skip(1)
        .filter_map(|(v, col)| basis.insert(col).then_some(v as u32))
        .collect()
}

/// GF(2) rank of the incidence matrix.
pub fn rank(s: &Lin2System) -> usize {
    greedy_column_basis(s).len()
}
