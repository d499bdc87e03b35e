//! Numerical values with certified absolute error bounds.
//!
//! Every result is an [`ApproxValue`]: a fixed-point midpoint with
//! `digits + guard` fractional digits and a radius that provably encloses
//! the true value. Two tail strategies are available:
//!
//! * [`TailMethod::EulerMaclaurin`] (default): short exact partial sums plus
//!   Euler–Maclaurin / Abel-summation tails (see [`tails`]). Reaches dozens of
//!   digits with a few dozen terms.
//! * [`TailMethod::Comparison`]: long fixed-point partial sums plus
//!   elementary integral-comparison tail bounds. Only practical for a handful
//!   of digits; kept as an independent cross-check.

mod ball;
mod tails;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

pub use ball::{parse_decimal, Ball};

use crate::decomposer::{check_hypothesis, decompose_normalized};
use crate::error::{Error, Result};
use crate::eulersum_algebra::EulerSumExpr;
use crate::exact_arith::{pow_int, rat, Rational};

/// How series tails are bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TailMethod {
    #[default]
    EulerMaclaurin,
    Comparison,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericConfig {
    /// Extra fractional digits carried beyond the requested accuracy.
    pub guard_digits: u32,
    /// Upper limit on the number of explicitly summed terms.
    pub max_terms: u64,
    pub method: TailMethod,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig { guard_digits: 10, max_terms: 10_000_000, method: TailMethod::EulerMaclaurin }
    }
}

impl NumericConfig {
    fn scale(&self, digits: u32) -> u32 {
        digits + self.guard_digits.max(1)
    }
}

/// A value together with a certified absolute error bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxValue {
    ball: Ball,
    digits: u32,
}

impl ApproxValue {
    fn new(ball: Ball, digits: u32) -> Self {
        ApproxValue { ball, digits }
    }

    /// Accuracy the value was requested at.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn value(&self) -> Rational {
        self.ball.midpoint()
    }

    pub fn error_bound(&self) -> Rational {
        self.ball.radius()
    }

    pub fn value_string(&self) -> String {
        self.ball.mid_decimal()
    }

    pub fn bound_string(&self) -> String {
        self.ball.rad_scientific()
    }

    pub fn value_f64(&self) -> f64 {
        self.value_string().parse().unwrap_or(f64::NAN)
    }

    /// Whether `x` lies in `[value - bound, value + bound]`.
    pub fn contains(&self, x: &Rational) -> bool {
        self.ball.contains(x)
    }

    /// Whether the two enclosures intersect.
    pub fn overlaps(&self, other: &ApproxValue) -> bool {
        (self.value() - other.value()).abs() <= self.error_bound() + other.error_bound()
    }

    pub fn to_json(&self) -> ApproxJson {
        ApproxJson { value: self.value_string(), bound: self.bound_string() }
    }
}

impl std::fmt::Display for ApproxValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} +/- {}", self.value_string(), self.bound_string())
    }
}

/// `{"value": str, "bound": str}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxJson {
    pub value: String,
    pub bound: String,
}

fn target(digits: u32) -> Rational {
    Rational::new(BigInt::from(1), ball::pow10(digits))
}

fn check_digits(digits: u32) -> Result<()> {
    if digits == 0 {
        return Err(Error::Domain("digits must be >= 1".into()));
    }
    Ok(())
}

/// Runs `attempt(N)` with a growing cut until the bound meets `digits`.
fn with_growing_cut(
    digits: u32,
    cfg: &NumericConfig,
    mut attempt: impl FnMut(u64) -> Ball,
) -> Result<ApproxValue> {
    let scale = cfg.scale(digits);
    let goal = target(digits);
    let mut cut = (2 * scale as u64 + 8).min(cfg.max_terms);
    loop {
        let ball = attempt(cut);
        if ball.radius() <= goal {
            return Ok(ApproxValue::new(ball, digits));
        }
        if cut >= cfg.max_terms {
            return Err(Error::IterationCap { needed: cut.saturating_mul(2), cap: cfg.max_terms });
        }
        cut = (cut * 2).min(cfg.max_terms);
    }
}

/// Smallest `N` (by doubling then bisection) with `bound(N) <= goal`.
fn comparison_cut(goal: &Rational, cfg: &NumericConfig, bound: impl Fn(u64) -> Rational) -> Result<u64> {
    let mut hi = 1u64;
    while &bound(hi) > goal {
        if hi >= cfg.max_terms {
            return Err(Error::IterationCap { needed: hi.saturating_mul(2), cap: cfg.max_terms });
        }
        hi = hi.saturating_mul(2);
    }
    if hi > cfg.max_terms {
        return Err(Error::IterationCap { needed: hi, cap: cfg.max_terms });
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if &bound(mid) <= goal {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Fixed-point partial sum `sum_{n=1}^{N} H_n^{(p,r)} n^{-s}`, running the
/// defining prefix sums incrementally (`r = 0` gives `sum n^{-p-s}`).
fn ball_partial(p: u32, r: u32, s: u32, cut: u64, scale: u32) -> Ball {
    let mut levels = vec![Ball::zero(scale); r as usize + 1];
    let mut total = Ball::zero(scale);
    for n in 1..=cut {
        levels[0] = Ball::exact(&pow_int(n, -(p as i64)), scale);
        for j in 1..=r as usize {
            let below = levels[j - 1].clone();
            levels[j].add_assign(&below);
        }
        total.add_assign(&levels[r as usize].mul_rational(&pow_int(n, -(s as i64))));
    }
    total
}

/// Comparison route: long partial sum, tail in `[0, U]` folded into the ball.
fn comparison_series(p: u32, r: u32, s: u32, digits: u32, cfg: &NumericConfig) -> Result<ApproxValue> {
    let scale = cfg.scale(digits);
    let goal = target(digits) / rat(2);
    let upper = |n: u64| tails::crude_tail_upper(p, r, s, n).expect("convergent series");
    let cut = comparison_cut(&goal, cfg, upper)?;
    let mut ball = ball_partial(p, r, s, cut, scale);
    let half = upper(cut) / rat(2);
    ball.shift(&half);
    ball.add_error(&half);
    if ball.radius() > target(digits) {
        return Err(Error::IterationCap { needed: cut, cap: cfg.max_terms });
    }
    Ok(ApproxValue::new(ball, digits))
}

/// Euler–Maclaurin route for `sum_n H_n^{(p,r)} n^{-s}`.
fn accelerated_series(p: u32, r: u32, s: u32, digits: u32, cfg: &NumericConfig) -> Result<ApproxValue> {
    let scale = cfg.scale(digits);
    let tol = target(scale);
    with_growing_cut(digits, cfg, |cut| {
        let (at_cut, partial) = tails::exact_partial(p, r, s, cut);
        let (tail, err) = if r == 0 {
            tails::hurwitz_tail(p + s, cut + 1, &tol)
        } else {
            tails::AbelTail::new(p, cut, at_cut, tol.clone()).tail(r, s)
        };
        Ball::from_rational(&(partial + tail), &err, scale)
    })
}

fn series(p: u32, r: u32, s: u32, digits: u32, cfg: &NumericConfig) -> Result<ApproxValue> {
    check_digits(digits)?;
    match cfg.method {
        TailMethod::EulerMaclaurin => accelerated_series(p, r, s, digits, cfg),
        TailMethod::Comparison => comparison_series(p, r, s, digits, cfg),
    }
}

/// `zeta(s)` for integer `s >= 2`.
pub fn zeta_value(s: u32, digits: u32) -> Result<ApproxValue> {
    zeta_value_with(s, digits, &NumericConfig::default())
}

pub fn zeta_value_with(s: u32, digits: u32, cfg: &NumericConfig) -> Result<ApproxValue> {
    if s < 2 {
        return Err(Error::Domain(format!("zeta({s}) needs s >= 2")));
    }
    // sum_n H_n^{(s,0)} n^0 = sum_n n^{-s}
    series(s, 0, 0, digits, cfg)
}

/// Classical Euler sum `S_{p,q} = sum_n H_n^{(p)} / n^q`, `p >= 1`, `q >= 2`.
pub fn euler_sum_value(p: i64, q: i64, digits: u32) -> Result<ApproxValue> {
    euler_sum_value_with(p, q, digits, &NumericConfig::default())
}

pub fn euler_sum_value_with(p: i64, q: i64, digits: u32, cfg: &NumericConfig) -> Result<ApproxValue> {
    if p < 1 || q < 2 {
        return Err(Error::Domain(format!("S({p},{q}) needs p >= 1 and q >= 2")));
    }
    let p = u32::try_from(p).map_err(|_| Error::Domain("p too large".into()))?;
    let q = u32::try_from(q).map_err(|_| Error::Domain("q too large".into()))?;
    series(p, 1, q, digits, cfg)
}

/// `zeta_{H^{(p,r)}}(m) = sum_n H_n^{(p,r)} / n^m` summed directly, `m >= r + 1`.
pub fn zeta_h_direct(p: u32, r: u32, m: i64, digits: u32) -> Result<ApproxValue> {
    zeta_h_direct_with(p, r, m, digits, &NumericConfig::default())
}

pub fn zeta_h_direct_with(p: u32, r: u32, m: i64, digits: u32, cfg: &NumericConfig) -> Result<ApproxValue> {
    check_hypothesis(p, r, m)?;
    let m = u32::try_from(m).map_err(|_| Error::Domain("m too large".into()))?;
    series(p, r, m, digits, cfg)
}

/// Evaluates an expression whose Euler sums all have `p >= 1`.
///
/// Components are computed a few digits tighter so that the weighted sum of
/// their bounds still meets `digits`.
pub fn evaluate_expr(e: &EulerSumExpr, digits: u32) -> Result<ApproxValue> {
    evaluate_expr_with(e, digits, &NumericConfig::default())
}

pub fn evaluate_expr_with(e: &EulerSumExpr, digits: u32, cfg: &NumericConfig) -> Result<ApproxValue> {
    check_digits(digits)?;
    if let Some(p) = e.min_order().filter(|&p| p < 1) {
        return Err(Error::Structure(format!(
            "S({p},.) has non-positive order; normalize the expression first"
        )));
    }
    // Products of two zetas contribute at most about 4x their coefficient.
    let weight: Rational = e.terms().map(|(_, c)| c.abs()).sum::<Rational>()
        + e.zeta_part().terms().map(|(_, c)| c.abs() * rat(4)).sum::<Rational>();
    let extra = weight.ceil().to_integer().to_string().len() as u32 + 1;
    let inner = digits + extra;
    let scale = cfg.scale(inner);

    let mut total = Ball::exact(e.zeta_part().constant(), scale);
    for (s, c) in e.terms() {
        let v = euler_sum_value_with(s.p(), s.q(), inner, cfg)?;
        total.add_assign(&v.ball.mul_rational(c));
    }
    let mut zetas: HashMap<u32, Ball> = HashMap::new();
    for (mono, c) in e.zeta_part().terms() {
        let mut factors = Vec::with_capacity(2);
        for &a in mono.args() {
            if !zetas.contains_key(&a) {
                zetas.insert(a, zeta_value_with(a, inner, cfg)?.ball);
            }
            factors.push(zetas[&a].clone());
        }
        let product = match factors.as_slice() {
            [x] => x.clone(),
            [x, y] => x.mul(y),
            _ => unreachable!("zeta monomials have degree 1 or 2"),
        };
        total.add_assign(&product.mul_rational(c));
    }
    Ok(ApproxValue::new(total, digits))
}

/// Direct summation against the evaluated decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub p: u32,
    pub r: u32,
    pub m: i64,
    pub digits: u32,
    pub expression: EulerSumExpr,
    pub direct: ApproxValue,
    pub decomposed: ApproxValue,
    /// `direct - decomposed` (midpoints, exact).
    pub difference: Rational,
    pub pass: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> VerifyJson {
        let scale = self.direct.ball.scale().max(self.decomposed.ball.scale());
        VerifyJson {
            p: self.p,
            r: self.r,
            m: self.m,
            direct: self.direct.to_json(),
            decomposed: self.decomposed.to_json(),
            difference: Ball::exact(&self.difference, scale).mid_decimal(),
            pass: self.pass,
        }
    }

    pub fn to_text(&self) -> String {
        let diff = Ball::exact(&self.difference, self.direct.ball.scale()).mid_decimal();
        format!(
            "zeta_H(p={}, r={}, m={})\n  decomposition: {}\n  direct:        {}\n  decomposed:    {}\n  difference:    {}\n  {}\n",
            self.p,
            self.r,
            self.m,
            self.expression,
            self.direct,
            self.decomposed,
            diff,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

/// `{"p", "r", "m", "direct", "decomposed", "difference", "pass"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub p: u32,
    pub r: u32,
    pub m: i64,
    pub direct: ApproxJson,
    pub decomposed: ApproxJson,
    pub difference: String,
    pub pass: bool,
}

pub fn verify(p: u32, r: u32, m: i64, digits: u32) -> Result<VerifyReport> {
    verify_with(p, r, m, digits, &NumericConfig::default())
}

pub fn verify_with(p: u32, r: u32, m: i64, digits: u32, cfg: &NumericConfig) -> Result<VerifyReport> {
    let expression = decompose_normalized(p, r, m, false)?;
    let direct = zeta_h_direct_with(p, r, m, digits, cfg)?;
    let decomposed = evaluate_expr_with(&expression, digits, cfg)?;
    let difference = direct.value() - decomposed.value();
    let pass = difference.abs() <= direct.error_bound() + decomposed.error_bound();
    Ok(VerifyReport { p, r, m, digits, expression, direct, decomposed, difference, pass })
}
