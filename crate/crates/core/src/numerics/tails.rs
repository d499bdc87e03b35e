//! Certified tails of `sum_{n > N} H_n^{(p,r)} / n^s`.
//!
//! Two ingredients:
//!
//! * Euler–Maclaurin for the Hurwitz tail `Z(s, a) = sum_{n >= a} n^{-s}`:
//!
//!   ```text
//!   Z(s, a) = a^{1-s}/(s-1) + a^{-s}/2 + sum_{k=1}^{K} c_k(s) a^{-(s+2k-1)} + R_K,
//!   c_k(s) = B_{2k} / (2k)! * s (s+1) ... (s+2k-2),
//!   ```
//!
//!   `|R_K| <= |c_K(s)| a^{-(s+2k-1)}`: the remainder integral has
//!   `|B_{2K}({x})| <= |B_{2K}|` and `f^{(2K)}(x) = (s)_{2K} x^{-s-2K}` has
//!   constant sign, so it integrates to `|f^{(2K-1)}(a)|`.
//!
//! * Abel summation over the defining recursion
//!   `H_n^{(p,r)} = H_N^{(p,r)} + sum_{k=N+1}^{n} H_k^{(p,r-1)}`, with
//!   `H_k^{(p,0)} = k^{-p}`:
//!
//!   ```text
//!   sum_{n>N} H_n^{(p,r)} n^{-s} = H_N^{(p,r)} Z(s, N+1) + sum_{k>N} H_k^{(p,r-1)} Z(s, k)
//!   ```
//!
//!   and expanding `Z(s, k)` in powers of `k` turns the last sum into tails of
//!   level `r - 1`. Level 0 is a Hurwitz tail again.
//!
//! No coefficient table from the decomposition enters here.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::exact_arith::{bernoulli_plus, pow_int, rat, Rational};

/// Largest Euler–Maclaurin order tried.
const MAX_EM_TERMS: u32 = 60;

/// `B_{2k}/(2k)! * s (s+1) ... (s+2k-2)`.
pub(crate) fn em_coefficient(s: u32, k: u32) -> Rational {
    let mut c = bernoulli_plus(2 * k as usize);
    for i in 0..(2 * k - 1) {
        c *= rat(s as i64 + i as i64);
    }
    for i in 1..=(2 * k) {
        c /= rat(i as i64);
    }
    c
}

/// One term `coef * k^{-exponent}` of the large-`k` expansion of `Z(s, k)`.
#[derive(Debug, Clone)]
struct ExpansionTerm {
    exponent: u32,
    coef: Rational,
}

fn expansion(s: u32, k_terms: u32) -> Vec<ExpansionTerm> {
    let mut out = vec![
        ExpansionTerm { exponent: s - 1, coef: Rational::new(1.into(), (s as i64 - 1).into()) },
        ExpansionTerm { exponent: s, coef: Rational::new(1.into(), 2.into()) },
    ];
    for k in 1..=k_terms {
        out.push(ExpansionTerm { exponent: s + 2 * k - 1, coef: em_coefficient(s, k) });
    }
    out
}

/// `Z(s, a) = sum_{n >= a} n^{-s}` as `(value, error bound)`, `s >= 2`, `a >= 1`.
///
/// Adds correction terms until one drops to `tol` or they stop decreasing.
pub(crate) fn hurwitz_tail(s: u32, a: u64, tol: &Rational) -> (Rational, Rational) {
    debug_assert!(s >= 2 && a >= 1);
    let mut value = pow_int(a, 1 - s as i64) / rat(s as i64 - 1) + pow_int(a, -(s as i64)) / rat(2);
    let mut last: Option<Rational> = None;
    for k in 1..=MAX_EM_TERMS {
        let term = em_coefficient(s, k) * pow_int(a, -((s + 2 * k - 1) as i64));
        let mag = term.abs();
        if let Some(prev) = &last {
            if &mag >= prev {
                break;
            }
        }
        value += term;
        let done = &mag <= tol;
        last = Some(mag);
        if done {
            break;
        }
    }
    (value, last.expect("at least one correction term"))
}

/// Upper bound for `ln n`, from the platform logarithm with slack.
fn ln_upper(n: u64) -> Rational {
    let x = (n as f64).ln();
    Rational::from_float(x * (1.0 + 1e-12) + 1e-12).expect("finite logarithm")
}

/// Elementary upper bound for `sum_{n > N} H_n^{(p,r)} n^{-s}`, or `None`
/// when the series diverges.
///
/// Uses `H_n^{(p,r)} <= C(n+r-2, r-1) H_n^{(p)}`, `H_n^{(p)} <= p/(p-1)` for
/// `p >= 2`, `H_n <= 1 + ln n`, and integral comparison for the decreasing
/// summand.
pub(crate) fn crude_tail_upper(p: u32, r: u32, s: u32, n: u64) -> Option<Rational> {
    let nq = n.max(1);
    if r == 0 {
        let e = p + s;
        if e < 2 {
            return None;
        }
        return Some(pow_int(nq, 1 - e as i64) / rat(e as i64 - 1));
    }
    if s < r + 1 {
        return None;
    }
    // C(k+r-2, r-1) <= kappa k^{r-1} for k >= N+1.
    let mut kappa = Rational::one();
    for i in 1..r as u64 {
        kappa *= Rational::new((nq + i).into(), (i * (nq + 1)).into());
    }
    let e = (s - r + 1) as i64;
    let base = pow_int(nq, 1 - e);
    let bound = if p >= 2 {
        Rational::new((p as i64).into(), (p as i64 - 1).into()) * base / rat(e - 1)
    } else {
        let lead = (Rational::one() + ln_upper(nq)) / rat(e - 1);
        (lead + Rational::new(1.into(), ((e - 1) * (e - 1)).into())) * base
    };
    Some(kappa * bound)
}

/// Exact `H_N^{(p,j)}` for `j = 0..=r` (index 0 is `N^{-p}`) and the partial
/// sum `sum_{n=1}^{N} H_n^{(p,r)} n^{-s}`.
pub(crate) fn exact_partial(p: u32, r: u32, s: u32, n: u64) -> (Vec<Rational>, Rational) {
    let mut levels = vec![Rational::zero(); r as usize + 1];
    let mut partial = Rational::zero();
    for k in 1..=n {
        levels[0] = pow_int(k, -(p as i64));
        for j in 1..=r as usize {
            let below = levels[j - 1].clone();
            levels[j] += below;
        }
        partial += &levels[r as usize] * pow_int(k, -(s as i64));
    }
    if n == 0 {
        levels[0] = Rational::zero();
    }
    (levels, partial)
}

/// Memoized evaluation of the level-`r` tails past a fixed cut `N`.
pub(crate) struct AbelTail {
    p: u32,
    cut: u64,
    at_cut: Vec<Rational>,
    tol: Rational,
    memo: HashMap<(u32, u32), (Rational, Rational)>,
}

impl AbelTail {
    /// `at_cut[j] = H_N^{(p,j)}` as returned by [`exact_partial`].
    pub(crate) fn new(p: u32, cut: u64, at_cut: Vec<Rational>, tol: Rational) -> Self {
        AbelTail { p, cut, at_cut, tol, memo: HashMap::new() }
    }

    /// `sum_{n > N} H_n^{(p,r)} n^{-s}` as `(value, error bound)`.
    pub(crate) fn tail(&mut self, r: u32, s: u32) -> (Rational, Rational) {
        if let Some(hit) = self.memo.get(&(r, s)) {
            return hit.clone();
        }
        let out = self.compute(r, s);
        self.memo.insert((r, s), out.clone());
        out
    }

    fn compute(&mut self, r: u32, s: u32) -> (Rational, Rational) {
        let a = self.cut + 1;
        if r == 0 {
            return hurwitz_tail(self.p + s, a, &self.tol);
        }
        let crude = crude_tail_upper(self.p, r, s, self.cut).expect("convergent tail");
        // Negligible tails: the whole interval [0, crude] is one ulp-sized ball.
        if crude <= &self.tol / rat(1000) {
            let half = crude / rat(2);
            return (half.clone(), half);
        }

        let (z_val, z_err) = hurwitz_tail(s, a, &self.tol);
        let h = self.at_cut[r as usize].clone();
        let mut value = &h * z_val;
        let mut err = h.abs() * z_err;

        // Pick the expansion length: stop once the remainder bound
        // |c_J| * crude(r-1, s+2J-1) reaches tol, or stops shrinking.
        let mut k_terms = 1;
        let mut rem = self.remainder(r, s, 1);
        while rem > self.tol && k_terms < MAX_EM_TERMS {
            let next = self.remainder(r, s, k_terms + 1);
            if next >= rem {
                break;
            }
            rem = next;
            k_terms += 1;
        }
        err += rem;

        for term in expansion(s, k_terms) {
            let (v, e) = self.tail(r - 1, term.exponent);
            value += &term.coef * v;
            err += term.coef.abs() * e;
        }
        (value, err)
    }

    fn remainder(&self, r: u32, s: u32, k: u32) -> Rational {
        let bound = crude_tail_upper(self.p, r - 1, s + 2 * k - 1, self.cut).expect("convergent tail");
        em_coefficient(s, k).abs() * bound
    }
}
