//! Exhaustive maximization over `{0,1}^bits`, shared by the CNF oracle and the
//! lin2 kernel search.

use rayon::prelude::*;

const PARALLEL_BITS: usize = 14;
const CHUNK_BITS: usize = 12;

/// Largest supported search width; masks are `u64`.
pub const MAX_SEARCH_BITS: usize = 63;

fn pick<V: Ord>(a: (V, u64), b: (V, u64)) -> (V, u64) {
    // Higher value wins; equal values keep the smaller mask.
    match a.0.cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => {
            if a.1 <= b.1 {
                a
            } else {
                b
            }
        }
    }
}

fn scan<V: Ord>(lo: u64, hi: u64, eval: &impl Fn(u64) -> V) -> (V, u64) {
    let mut best = (eval(lo), lo);
    for mask in lo + 1..hi {
        let v = eval(mask);
        if v > best.0 {
            best = (v, mask);
        }
    }
    best
}

/// Returns the maximum of `eval` over all masks in `0..2^bits` together with
/// the least mask attaining it. The answer does not depend on how the work is
/// split across threads.
pub(crate) fn argmax<V, F>(bits: usize, eval: F) -> (V, u64)
where
    V: Ord + Send,
    F: Fn(u64) -> V + Sync,
{
    assert!(bits <= MAX_SEARCH_BITS);
    let total = 1u64 << bits;
    if bits < PARALLEL_BITS {
        return scan(0, total, &eval);
    }
    let chunk = 1u64 << CHUNK_BITS;
    (0..total / chunk)
        .into_par_iter()
        .map(|c| scan(c * chunk, (c + 1) * chunk, &eval))
        .reduce_with(pick)
        .expect("at least one chunk")
}
