//! Invariants checked on seeded random instances. Oracles here enumerate
//! assignments directly through `count_satisfied` / `twice_excess` and never
//! go through the crate's search routines.

use maxsat_aa::*;
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn all_assignments(n: usize) -> impl Iterator<Item = Assignment> {
    (0..1u64 << n).map(move |m| Assignment::from_mask(n, m))
}

fn naive_max_sat(f: &CnfFormula) -> usize {
    all_assignments(f.num_vars()).map(|a| f.count_satisfied(&a).unwrap()).max().unwrap()
}

fn naive_max_twice_excess(s: &Lin2System) -> BigInt {
    all_assignments(s.num_vars()).map(|a| s.twice_excess(&a).unwrap()).max().unwrap()
}

prop_compose! {
    fn small_cnf(max_n: usize, max_m: usize, max_w: usize)
        (n in 1..=max_n, m in 0..=max_m, seed in any::<u64>())
        (f in Just(gen_random_cnf(n, m, max_w.min(n), seed).unwrap()))
        -> CnfFormula { f }
}

prop_compose! {
    fn small_lin2(max_n: usize, max_m: usize)
        (n in 1..=max_n, m in 0..=max_m, arity in 1..=3usize, wmax in 1..=4u64, seed in any::<u64>())
        (s in Just(gen_random_lin2(n, m, arity.min(n), wmax, seed).unwrap()))
        -> Lin2System { s }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn asat_is_the_average(f in small_cnf(10, 20, 4)) {
        let n = f.num_vars();
        let total: usize = all_assignments(n).map(|a| f.count_satisfied(&a).unwrap()).sum();
        let mean = Dyadic::new(total as i64, n as u32);
        prop_assert_eq!(mean, f.asat());
    }

    #[test]
    fn dimacs_round_trip(f in small_cnf(12, 30, 5)) {
        let text = serialize_dimacs(&f);
        let back = parse_dimacs(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(serialize_dimacs(&back), text);
    }

    #[test]
    fn lin2_round_trip(s in small_lin2(12, 20)) {
        let text = serialize_lin2(&s);
        prop_assert_eq!(parse_lin2(&text).unwrap(), s);
    }

    #[test]
    fn complete_sets_have_zero_excess(t in 1usize..=4, copies in 1usize..=3, offset in 0u32..3) {
        let mut clauses = Vec::new();
        let vars: Vec<u32> = (1..=t as u32).map(|v| v + offset).collect();
        for _ in 0..copies {
            clauses.extend(complete_set(&vars).unwrap().into_clauses());
        }
        let f = CnfFormula::new(t + offset as usize, clauses).unwrap();
        for a in all_assignments(f.num_vars()) {
            prop_assert!(f.excess(&a).unwrap().is_zero());
        }
    }

    #[test]
    fn merge_is_pointwise_invariant(s in small_lin2(8, 16)) {
        let (merged, trace) = merge_rule(&s);
        prop_assert!(merged.is_merge_stable());
        prop_assert_eq!(trace.replay(&s), merged.clone());
        for a in all_assignments(s.num_vars()) {
            prop_assert_eq!(s.twice_excess(&a).unwrap(), merged.twice_excess(&a).unwrap());
        }
    }

    #[test]
    fn rank_rule_keeps_rank_many_live_vars(s in small_lin2(10, 16)) {
        let (merged, _) = merge_rule(&s);
        let rank = lin2::rank(&merged);
        let (out, trace) = rank_rule(&merged);
        prop_assert_eq!(out.live_vars().len(), rank);
        prop_assert!(out.equations().iter().all(|e| e.arity() >= 1));
        prop_assert_eq!(out.num_equations(), merged.num_equations());
        prop_assert_eq!(trace.replay(&merged), out.clone());
        prop_assert_eq!(naive_max_twice_excess(&out), naive_max_twice_excess(&merged));
    }

    #[test]
    fn fixpoint_preserves_max_excess(s in small_lin2(10, 20)) {
        let (out, trace) = reduce_fixpoint(&s);
        prop_assert!(out.is_rule_stable());
        prop_assert!(out.live_vars().len() <= s.num_vars().min(s.num_equations()));
        prop_assert_eq!(trace.replay(&s), out.clone());
        let before = naive_max_twice_excess(&s);
        prop_assert_eq!(brute_force_max_excess(&out, 24).unwrap().twice_excess, before);
    }

    #[test]
    fn twice_excess_parity_matches_total_weight(s in small_lin2(8, 12), mask in any::<u64>()) {
        let a = Assignment::from_mask(s.num_vars(), mask & ((1 << s.num_vars()) - 1));
        let te = s.twice_excess(&a).unwrap();
        let w = BigInt::from(s.total_weight());
        prop_assert_eq!((te - w) % 2, BigInt::from(0));
    }

    #[test]
    fn brute_force_matches_naive(s in small_lin2(10, 14)) {
        let r = brute_force_max_excess(&s, 24).unwrap();
        prop_assert_eq!(&r.twice_excess, &naive_max_twice_excess(&s));
        prop_assert_eq!(s.twice_excess(&r.witness).unwrap(), r.twice_excess);
    }

    #[test]
    fn expansion_identity(f in small_cnf(8, 20, 4)) {
        let h = build_h(&f);
        let red = cnf_to_lin2(&f, 1);
        prop_assert!(red.system.is_merge_stable());
        let bound: usize = f.clauses().iter().map(|c| (1usize << c.width()) - 1).sum();
        prop_assert!(h.len() <= bound);
        for a in all_assignments(f.num_vars()) {
            let hv = eval_h(&h, &a).unwrap();
            prop_assert_eq!(Dyadic::from(hv.clone()), f.excess(&a).unwrap().mul_pow2(h.r_used()));
            prop_assert_eq!(red.system.twice_excess(&a).unwrap(), hv);
        }
    }

    #[test]
    fn derandomization_reaches_asat(f in small_cnf(14, 40, 4)) {
        let a = derandomized_assignment(&f);
        prop_assert!(Dyadic::from(f.count_satisfied(&a).unwrap() as i64) >= f.asat());
        // Greedy never lowers the conditional expectation.
        let mut prev = conditional_expectation(&f, &[]).unwrap();
        for t in 1..=f.num_vars() {
            let cur = conditional_expectation(&f, &a.truth()[..t]).unwrap();
            prop_assert!(cur >= prev);
            prev = cur;
        }
    }

    #[test]
    fn decide_matches_oracle(f in small_cnf(9, 20, 4), k in 0u64..=3) {
        let out = decide_above_average(&f, k, DEFAULT_BUDGET);
        let best = naive_max_sat(&f);
        let truth = Dyadic::from(best as i64) >= &f.asat() + &Dyadic::from(k as i64);
        prop_assert_ne!(out.answer, Answer::Unknown);
        prop_assert_eq!(out.answer == Answer::Yes, truth);
        if let (Some(w), Some(WitnessScope::Cnf)) = (&out.witness, out.witness_scope) {
            let reached = Dyadic::from(f.count_satisfied(w).unwrap() as i64);
            prop_assert!(reached >= &f.asat() + &Dyadic::from(k as i64));
        }
        prop_assert_eq!(decide_above_average(&f, k, DEFAULT_BUDGET), out);
    }

    #[test]
    fn padding_keeps_excess(f in small_cnf(6, 12, 3), extra in 0usize..=3, mask in any::<u64>()) {
        let p = pad_contradicting_units(&f, extra);
        prop_assert_eq!(p.asat(), &f.asat() + &Dyadic::from(extra as i64));
        let base = Assignment::from_mask(f.num_vars(), mask & ((1 << f.num_vars()) - 1));
        for tail in 0..1u64 << extra {
            let mut a = base.extended(extra);
            for i in 0..extra {
                a.set((f.num_vars() + 1 + i) as u32, tail >> i & 1 == 1);
            }
            prop_assert_eq!(p.excess(&a).unwrap(), f.excess(&base).unwrap());
        }
    }
}

#[test]
fn threshold_certificate_is_sound_on_random_kernels() {
    let mut fired = 0;
    for seed in 0..400u64 {
        let n = 3 + (seed % 12) as usize;
        let s = gen_random_lin2(n, 2 * n, 2.min(n), 3, seed).unwrap();
        let (kernel, _) = reduce_fixpoint(&s);
        for k2 in 1u32..=2 {
            if threshold_yes(&kernel, &BigUint::from(k2)).unwrap() {
                fired += 1;
                let best = naive_max_twice_excess(&kernel);
                assert!(best >= BigInt::from(2 * k2), "seed {seed}, k2 {k2}");
            }
        }
    }
    assert!(fired > 100, "only {fired} certificates fired");
}
