//! Exact results checked against independent brute-force definitions.

use num_bigint::BigInt;

use hypereuler::coeff_engine::{a_table, b_table, eval_t, t_oracle};
use hypereuler::exact_arith::{binomial, power_sum};
use hypereuler::hyperharmonic::{conway_guy, h_closed, h_def};
use hypereuler::Rational;

#[test]
fn chain_counts_three_ways() {
    for r in 1..=6u32 {
        for n in 1..=12u64 {
            for t in 1..=n {
                let oracle = t_oracle(r, n, t).unwrap();
                let closed = binomial(n - t + r as u64 - 1, r as i64 - 1);
                assert_eq!(oracle, closed, "r={r} n={n} t={t}");
                assert_eq!(eval_t(r, n, t).unwrap(), Rational::from_integer(closed));
            }
        }
    }
}

#[test]
fn both_routes_agree() {
    for r in 1..=12 {
        assert!(a_table(r).unwrap().same_entries(&b_table(r).unwrap()), "r = {r}");
    }
}

#[test]
fn closed_form_matches_nested_sums() {
    for p in 1..=4 {
        for r in 1..=5 {
            for n in 0..=50 {
                assert_eq!(h_closed(p, r, n).unwrap(), h_def(p, r, n).unwrap(), "p={p} r={r} n={n}");
            }
        }
    }
}

#[test]
fn conway_guy_matches_definition() {
    for r in 1..=6 {
        for n in 1..=50 {
            assert_eq!(conway_guy(r, n).unwrap(), h_def(1, r, n).unwrap());
        }
    }
}

#[test]
fn power_sums_large_n() {
    let n = 10_000u64;
    for k in 0..=6u32 {
        let brute: BigInt = (1..=n).map(|i| num_traits::pow(BigInt::from(i), k as usize)).sum();
        assert_eq!(power_sum(n, k).unwrap(), brute);
    }
}
