//! Seeded fixtures shared by the benchmarks.

use maxsat_aa::{gen_random_cnf, gen_random_lin2, CnfFormula, Lin2System};

pub const SEED: u64 = 0xbe4c;

/// Random formula with widths up to `width`.
pub fn cnf(n: usize, m: usize, width: usize) -> CnfFormula {
    gen_random_cnf(n, m, width, SEED).expect("valid fixture parameters")
}

/// Random parity system with arities up to 3 and weights up to 4.
pub fn lin2(n: usize, m: usize) -> Lin2System {
    gen_random_lin2(n, m, 3, 4, SEED).expect("valid fixture parameters")
}
