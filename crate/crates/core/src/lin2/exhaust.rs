use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use super::Lin2System;
use crate::error::{Error, Result};
use crate::formula::Assignment;
use crate::search::{argmax, MAX_SEARCH_BITS};

/// Default cap on the number of live variables searched exhaustively.
pub const DEFAULT_BUDGET: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxExcess {
    /// Twice the maximum excess.
    pub twice_excess: BigInt,
    /// A maximizer over all `num_vars` variables; variables outside every
    /// support are FALSE. Lexicographically least (FALSE < TRUE, variable 1
    /// first) among maximizers.
    pub witness: Assignment,
}

/// Exhausts all assignments of the live variables.
pub fn brute_force_max_excess(s: &Lin2System, budget: usize) -> Result<MaxExcess> {
    let live = s.live_vars();
    let bits = live.len();
    if bits > budget.min(MAX_SEARCH_BITS) {
        return Err(Error::BudgetExceeded { vars: bits, budget });
    }
    // Live variable `live[i]` sits at bit `bits-1-i`, so mask order is
    // lexicographic order over the live variables.
    let mut bit_of = vec![0u64; s.num_vars() + 1];
    for (i, &v) in live.iter().enumerate() {
        bit_of[v as usize] = 1 << (bits - 1 - i);
    }
    let masks: Vec<u64> = s
        .equations()
        .iter()
        .map(|e| e.support().iter().fold(0, |m, &v| m | bit_of[v as usize]))
        .collect();

    let (best, mask) = if s.total_weight() <= BigUint::from(i128::MAX as u128) {
        let coeffs: Vec<i128> =
            s.equations().iter().map(|e| e.coefficient().to_i128().unwrap()).collect();
        let (v, mask) = argmax(bits, |m| {
            masks
                .iter()
                .zip(&coeffs)
                .map(|(&sup, &c)| if (m & sup).count_ones() % 2 == 0 { c } else { -c })
                .sum::<i128>()
        });
        (BigInt::from(v), mask)
    } else {
        let coeffs: Vec<BigInt> = s.equations().iter().map(|e| e.coefficient()).collect();
        argmax(bits, |m| {
            masks.iter().zip(&coeffs).fold(BigInt::zero(), |acc, (&sup, c)| {
                if (m & sup).count_ones() % 2 == 0 {
                    acc + c
                } else {
                    acc - c
                }
            })
        })
    };

    let mut witness = Assignment::all_false(s.num_vars());
    for (i, &v) in live.iter().enumerate() {
        witness.set(v, mask >> (bits - 1 - i) & 1 == 1);
    }
    Ok(MaxExcess { twice_excess: best, witness })
}
