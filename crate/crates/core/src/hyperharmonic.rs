//! Generalized harmonic and hyperharmonic numbers, exact.
//!
//! `H_n^{(p)} = sum_{x=1}^n x^{-p}`; for `p <= 0` this is the power sum
//! `sum x^{-p}`. `H_n^{(p,1)} = H_n^{(p)}` and
//! `H_n^{(p,r)} = sum_{j=1}^n H_j^{(p,r-1)}`. Every function returns `0`
//! for `n = 0`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coeff_engine::a_table;
use crate::error::{Error, Result};
use crate::exact_arith::{binomial_q, pow_int, power_sum, Rational};

/// Default cap on `n * r` for [`h_def`].
pub const H_DEF_CAP: u64 = 1_000_000;

/// `H_n^{(p)}` for any integer order `p`.
pub fn gen_harmonic(p: i64, n: u64) -> Rational {
    if p <= 0 {
        let k = u32::try_from(-p).expect("order too large");
        // power_sum only fails on an internal Bernoulli inconsistency.
        return Rational::from_integer(power_sum(n, k).expect("Faulhaber evaluation"));
    }
    (1..=n).map(|x| pow_int(x, -p)).sum()
}

/// Classical harmonic number `H_n`.
pub fn harmonic(n: u64) -> Rational {
    gen_harmonic(1, n)
}

/// `H_n^{(p,r)}` by the defining iterated sums.
pub fn h_def(p: u32, r: u32, n: u64) -> Result<Rational> {
    h_def_with_cap(p, r, n, H_DEF_CAP)
}

pub fn h_def_with_cap(p: u32, r: u32, n: u64, cap: u64) -> Result<Rational> {
    check_pr(p, r)?;
    let size = n.saturating_mul(r as u64);
    if size > cap {
        return Err(Error::ResourceGuard { what: "n*r", value: size, cap });
    }
    Ok(h_def_grid(p, r, n).pop().unwrap_or_else(Rational::zero))
}

/// Row `H_0^{(p,r)}, ..., H_n^{(p,r)}` via running prefix sums.
fn h_def_grid(p: u32, r: u32, n: u64) -> Vec<Rational> {
    // Level 0: x^{-p}; each further level is a prefix sum of the previous.
    let mut row: Vec<Rational> = std::iter::once(Rational::zero())
        .chain((1..=n).map(|x| pow_int(x, -(p as i64))))
        .collect();
    for _ in 0..r {
        let mut acc = Rational::zero();
        for v in row.iter_mut() {
            acc += &*v;
            *v = acc.clone();
        }
    }
    row
}

/// `H_n^{(p,r)} = sum_{m,j} a(r, m, j) n^j H_n^{(p-m)}`.
pub fn h_closed(p: u32, r: u32, n: u64) -> Result<Rational> {
    check_pr(p, r)?;
    if n == 0 {
        return Ok(Rational::zero());
    }
    let table = a_table(r)?;
    let nq = Rational::from_integer(BigInt::from(n));
    let mut acc = Rational::zero();
    for m in 0..r as usize {
        let mut poly = Rational::zero();
        for c in table.row(m).iter().rev() {
            poly = poly * &nq + c;
        }
        if !poly.is_zero() {
            acc += poly * gen_harmonic(p as i64 - m as i64, n);
        }
    }
    Ok(acc)
}

/// `h_n^{(r)} = C(n+r-1, r-1) (H_{n+r-1} - H_{r-1})`.
pub fn conway_guy(r: u32, n: u64) -> Result<Rational> {
    check_pr(1, r)?;
    if n == 0 {
        return Err(Error::Domain("n must be >= 1".into()));
    }
    let top = n + r as u64 - 1;
    Ok(binomial_q(top, r as i64 - 1) * (harmonic(top) - harmonic(r as u64 - 1)))
}

fn check_pr(p: u32, r: u32) -> Result<()> {
    if p == 0 || r == 0 {
        return Err(Error::Domain(format!("p and r must be >= 1 (got p = {p}, r = {r})")));
    }
    Ok(())
}
