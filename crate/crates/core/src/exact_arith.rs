//! Exact rational arithmetic helpers: binomials, Bernoulli numbers and
//! Faulhaber power sums.
//!
//! Bernoulli numbers use the *plus* convention, `B_1^+ = +1/2`, i.e. the
//! generating function `t / (1 - e^{-t})`. They are fixed by
//!
//! ```text
//! sum_{j=0}^{k} C(k+1, j) B_j^+ = k + 1      (k >= 0)
//! ```
//!
//! which is what [`bernoulli_plus`] iterates. Most other libraries use
//! `B_1 = -1/2`; every coefficient in this crate depends on the plus sign.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`. Panics on `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders as `"num/den"`, or `"num"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses the `"num/den"` (or `"num"`) form produced by [`format_rational`].
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// LaTeX form: `\frac{n}{d}` with the sign pulled out front.
pub fn latex_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        return q.numer().to_string();
    }
    let sign = if q.is_negative() { "-" } else { "" };
    format!("{}\\frac{{{}}}{{{}}}", sign, q.numer().abs(), q.denom())
}

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Same as [`binomial`] but lifted to a [`Rational`].
pub fn binomial_q(n: u64, k: i64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// Memo of `B_0^+ .. B_{len-1}^+`. Entries are written once and never change.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    fn new() -> Self {
        BernoulliTable { values: vec![Rational::one()] }
    }

    /// Number of cached entries.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    /// Extends the table so that index `n` exists.
    fn fill_to(&mut self, n: usize) {
        while self.values.len() <= n {
            let k = self.values.len() - 1;
            // Solve sum_{j=0}^{k+1} C(k+2, j) B_j = k+2 for B_{k+1}.
            let next = k + 1;
            let mut acc = rat(next as i64 + 1);
            for (j, b) in self.values.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc -= binomial_q(next as u64 + 1, j as i64) * b;
            }
            let lead = binomial_q(next as u64 + 1, next as i64);
            self.values.push(acc / lead);
        }
    }
}

fn bernoulli_memo() -> &'static RwLock<BernoulliTable> {
    static MEMO: OnceLock<RwLock<BernoulliTable>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(BernoulliTable::new()))
}

/// `B_n^+` under the plus convention (`B_1^+ = 1/2`).
pub fn bernoulli_plus(n: usize) -> Rational {
    {
        let table = bernoulli_memo().read().expect("bernoulli memo poisoned");
        if let Some(b) = table.get(n) {
            return b.clone();
        }
    }
    let mut table = bernoulli_memo().write().expect("bernoulli memo poisoned");
    table.fill_to(n);
    table.values[n].clone()
}

/// Snapshot of `B_0^+ .. B_n^+`.
pub fn bernoulli_range(n: usize) -> Vec<Rational> {
    bernoulli_plus(n);
    let table = bernoulli_memo().read().expect("bernoulli memo poisoned");
    table.values[..=n].to_vec()
}

/// Coefficients `c_j = C(k+1, j) B_j^+ / (k+1)`, `j = 0..=k`, so that
/// `sum_{l=1}^{n} l^k = sum_j c_j n^{k+1-j}`.
pub fn faulhaber_coeffs(k: u32) -> Vec<Rational> {
    let bern = bernoulli_range(k as usize);
    let scale = rat(k as i64 + 1);
    bern.iter()
        .enumerate()
        .map(|(j, b)| binomial_q(k as u64 + 1, j as i64) * b / &scale)
        .collect()
}

/// `sum_{l=1}^{n} l^k`, evaluated through Faulhaber's coefficients.
pub fn power_sum(n: u64, k: u32) -> Result<BigInt> {
    if n == 0 {
        return Ok(BigInt::zero());
    }
    let nq = Rational::from_integer(BigInt::from(n));
    let coeffs = faulhaber_coeffs(k);
    // Horner in n over the exponents k+1, k, ..., 1.
    let mut acc = Rational::zero();
    for c in &coeffs {
        acc = (acc + c) * &nq;
    }
    if !acc.denom().is_one() {
        return Err(Error::Consistency(format!(
            "power sum ({n}, {k}) evaluated to non-integer {}",
            format_rational(&acc)
        )));
    }
    Ok(acc.to_integer())
}

/// `q^e` for a possibly negative exponent. Panics on `0^e` with `e < 0`.
pub fn pow_q(q: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), (-e) as usize)
    }
}

/// Integer `n^e` as a [`Rational`], `e` possibly negative.
pub fn pow_int(n: u64, e: i64) -> Rational {
    pow_q(&Rational::from_integer(BigInt::from(n)), e)
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(7, 0), BigInt::from(1));
        assert_eq!(binomial(4, 7), BigInt::from(0));
        assert_eq!(binomial(4, -1), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(60, 30), "118264581564861424".parse::<BigInt>().unwrap());
    }

    #[test]
    fn bernoulli_small() {
        assert_eq!(bernoulli_plus(0), rat(1));
        assert_eq!(bernoulli_plus(1), ratio(1, 2));
        assert_eq!(bernoulli_plus(2), ratio(1, 6));
        assert_eq!(bernoulli_plus(3), rat(0));
        assert_eq!(bernoulli_plus(4), ratio(-1, 30));
        assert_eq!(bernoulli_plus(12), ratio(-691, 2730));
    }

    #[test]
    fn bernoulli_recurrence_holds() {
        let b = bernoulli_range(61);
        for k in 0..=60u64 {
            let s: Rational = (0..=k)
                .map(|j| binomial_q(k + 1, j as i64) * &b[j as usize])
                .sum();
            assert_eq!(s, rat(k as i64 + 1), "k = {k}");
        }
        for k in 1..=30 {
            assert!(b[2 * k + 1].is_zero());
        }
    }

    #[test]
    fn faulhaber_examples() {
        assert_eq!(faulhaber_coeffs(0), vec![rat(1)]);
        assert_eq!(faulhaber_coeffs(1), vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(faulhaber_coeffs(2), vec![ratio(1, 3), ratio(1, 2), ratio(1, 6)]);
        for k in 0..40 {
            let s: Rational = faulhaber_coeffs(k).into_iter().sum();
            assert_eq!(s, rat(1), "k = {k}");
        }
    }

    #[test]
    fn power_sum_matches_loop() {
        assert_eq!(power_sum(3, 2).unwrap(), BigInt::from(14));
        assert_eq!(power_sum(10, 1).unwrap(), BigInt::from(55));
        assert_eq!(power_sum(0, 5).unwrap(), BigInt::from(0));
        for k in 0..=12u32 {
            let mut brute = BigInt::zero();
            for n in 0..=200u64 {
                if n > 0 {
                    brute += num_traits::pow(BigInt::from(n), k as usize);
                }
                assert_eq!(power_sum(n, k).unwrap(), brute, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn rational_text_roundtrip() {
        for q in [ratio(-3, 2), rat(0), rat(7), ratio(1, 24)] {
            assert_eq!(parse_rational(&format_rational(&q)), Some(q));
        }
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(latex_rational(&ratio(-11, 6)), "-\\frac{11}{6}");
    }

    #[test]
    fn bernoulli_concurrent_fill_is_consistent() {
        let handles: Vec<_> = (0..8)
            .map(|i| std::thread::spawn(move || bernoulli_plus(20 + i)))
            .collect();
        for (i, h) in handles.into_iter().enumerate() {
            assert_eq!(h.join().unwrap(), bernoulli_range(20 + i)[20 + i]);
        }
    }
}
