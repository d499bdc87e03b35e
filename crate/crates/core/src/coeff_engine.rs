//! Coefficient tables for the chain-count polynomial
//!
//! ```text
//! T(r, n, t) = #{ t <= k_{r-1} <= ... <= k_1 <= n }
//!            = sum_{m=0}^{r-1} sum_{j=0}^{r-1-m} a(r, m, j) n^j t^m
//! ```
//!
//! Two independent recurrences build the triangle `a(r, ., .)` from level
//! `r` to `r + 1`: one over `b(r, m, j) = a(r, j, m)` ([`b_table`]) and one
//! directly over `a` ([`a_table`]). Both start at `a(1, 0, 0) = 1`.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{
    bernoulli_plus, binomial, binomial_q, format_rational, latex_rational, parse_rational, pow_int,
    rat, Rational,
};

/// Which recurrence produced a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Recurrence over `b(r, m, j)`, written through the transposition.
    B,
    /// Direct recurrence over `a(r, m, j)`.
    A,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::A => f.write_str("a"),
            Route::B => f.write_str("b"),
        }
    }
}

/// Triangle `a(r, m, j)` for `0 <= m <= r-1`, `0 <= j <= r-1-m`.
///
/// Row `m` holds exactly `r - m` entries; anything outside the triangle is
/// absent rather than zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    r: u32,
    rows: Vec<Vec<Rational>>,
    route: Route,
}

impl CoeffTable {
    fn zeros(r: u32, route: Route) -> Self {
        let rows = (0..r).map(|m| vec![Rational::zero(); (r - m) as usize]).collect();
        CoeffTable { r, rows, route }
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn route(&self) -> Route {
        self.route
    }

    /// `a(r, m, j)`, or `None` outside the triangle.
    pub fn a(&self, m: i64, j: i64) -> Option<&Rational> {
        if m < 0 || j < 0 {
            return None;
        }
        self.rows.get(m as usize)?.get(j as usize)
    }

    /// `b(r, m, j) = a(r, j, m)`.
    pub fn b(&self, m: i64, j: i64) -> Option<&Rational> {
        self.a(j, m)
    }

    fn a_mut(&mut self, m: usize, j: usize) -> &mut Rational {
        &mut self.rows[m][j]
    }

    /// Row `m` of the `a` orientation: `a(r, m, 0..=r-1-m)`.
    pub fn row(&self, m: usize) -> &[Rational] {
        &self.rows[m]
    }

    /// Iterates `(m, j, a(r, m, j))` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(m, row)| row.iter().enumerate().map(move |(j, v)| (m as u32, j as u32, v)))
    }

    /// Number of stored entries, `r (r + 1) / 2`.
    pub fn len(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Same entries, ignoring provenance.
    pub fn same_entries(&self, other: &CoeffTable) -> bool {
        self.r == other.r && self.rows == other.rows
    }

    /// First entry where the two tables disagree.
    pub fn first_mismatch(&self, other: &CoeffTable) -> Option<(u32, u32, Rational, Rational)> {
        self.entries()
            .zip(other.entries())
            .find(|((_, _, x), (_, _, y))| x != y)
            .map(|((m, j, x), (_, _, y))| (m, j, x.clone(), y.clone()))
    }

    /// `T(r, n, t)` as a polynomial in `n` and `t`.
    pub fn eval_t(&self, n: &Rational, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        let mut t_pow = Rational::one();
        for row in &self.rows {
            // Horner in n over the row.
            let mut inner = Rational::zero();
            for c in row.iter().rev() {
                inner = inner * n + c;
            }
            acc += inner * &t_pow;
            t_pow *= t;
        }
        acc
    }

    /// For each `m`, the largest `j` with `b(r, m, j) != 0`, i.e. the observed
    /// degree of the `t`-polynomial `B(r, t, m)`. `None` for the zero polynomial.
    pub fn observed_degrees(&self) -> Vec<Option<u32>> {
        (0..self.r as i64)
            .map(|m| {
                (0..self.r as i64 - m)
                    .rev()
                    .find(|&j| self.b(m, j).is_some_and(|v| !v.is_zero()))
                    .map(|j| j as u32)
            })
            .collect()
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            r: self.r,
            entries: self
                .entries()
                .map(|(m, j, v)| EntryJson { m, j, value: format_rational(v) })
                .collect(),
        }
    }

    /// Rebuilds a table from its JSON form. Entries must cover the triangle exactly.
    pub fn from_json(json: &TableJson, route: Route) -> Result<Self> {
        if json.r == 0 {
            return Err(Error::Domain("r must be >= 1".into()));
        }
        let mut table = CoeffTable::zeros(json.r, route);
        let mut seen = 0usize;
        for e in &json.entries {
            if e.m >= json.r || e.j >= json.r - e.m {
                return Err(Error::Structure(format!("entry ({}, {}) outside triangle", e.m, e.j)));
            }
            let v = parse_rational(&e.value)
                .ok_or_else(|| Error::Structure(format!("bad rational {:?}", e.value)))?;
            *table.a_mut(e.m as usize, e.j as usize) = v;
            seen += 1;
        }
        if seen != table.len() {
            return Err(Error::Structure(format!("expected {} entries, got {seen}", table.len())));
        }
        Ok(table)
    }

    /// Text layout: one line per row, highest `m` first.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for m in (0..self.r as usize).rev() {
            let line: Vec<String> = self.rows[m]
                .iter()
                .enumerate()
                .map(|(j, v)| format!("a({},{},{}) = {}", self.r, m, j, format_rational(v)))
                .collect();
            out.push_str(&line.join(", "));
            out.push('\n');
        }
        out
    }

    /// LaTeX `align*` block, highest `m` first.
    pub fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{align*}\n");
        for m in (0..self.r as usize).rev() {
            let line: Vec<String> = self.rows[m]
                .iter()
                .enumerate()
                .map(|(j, v)| format!("a({},{},{})={}", self.r, m, j, latex_rational(v)))
                .collect();
            let sep = if m == 0 { ".\\\\" } else { ",\\\\" };
            out.push('&');
            out.push_str(&line.join(", \\quad "));
            out.push_str(sep);
            out.push('\n');
        }
        out.push_str("\\end{align*}\n");
        out
    }
}

/// JSON form: `{"r": int, "entries": [{"m": int, "j": int, "value": "num/den"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub r: u32,
    pub entries: Vec<EntryJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub m: u32,
    pub j: u32,
    pub value: String,
}

fn seed(route: Route) -> CoeffTable {
    let mut t = CoeffTable::zeros(1, route);
    *t.a_mut(0, 0) = Rational::one();
    t
}

/// `C(n, k) B_k^+ / n`, the recurring Faulhaber weight.
fn weight(n: u64, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    binomial_q(n, k) * bernoulli_plus(k as usize) / rat(n as i64)
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// One step of the `b` recurrence: level `r` to `r + 1`.
fn step_b(prev: &CoeffTable) -> CoeffTable {
    let r = prev.r as i64;
    let mut next = CoeffTable::zeros(prev.r + 1, Route::B);
    let b = |m: i64, j: i64| prev.b(m, j).cloned().unwrap_or_else(Rational::zero);

    // b(r+1, l, j) for 1 <= l <= r, 0 <= j <= r - l.
    for l in 1..=r {
        for j in 0..=(r - l) {
            let mut acc = Rational::zero();
            for m in (l - 1)..=(r - 1 - j) {
                acc += b(m, j) * weight((m + 1) as u64, m - l + 1);
            }
            *next.a_mut(j as usize, l as usize) = acc;
        }
    }

    // b(r+1, 0, p) for 0 <= p <= r.
    for p in 0..=r {
        let mut acc = Rational::zero();
        for j in 0..=(r - 1) {
            let lo = 0.max(p + 1 + j - r);
            let hi = (1 + j).min(p);
            for l in lo..=hi {
                let mut inner = Rational::zero();
                for m in j..=(r - 1 - p + l) {
                    inner += b(m, p - l) * weight((m + 1) as u64, m - j);
                }
                acc += Rational::from_integer(binomial((1 + j) as u64, l)) * sign(1 + j - l) * inner;
            }
        }
        *next.a_mut(p as usize, 0) = -acc;
    }
    next
}

/// One step of the direct `a` recurrence: level `r` to `r + 1`.
fn step_a(prev: &CoeffTable) -> CoeffTable {
    let r = prev.r as i64;
    let mut next = CoeffTable::zeros(prev.r + 1, Route::A);
    let a = |m: i64, j: i64| prev.a(m, j).cloned().unwrap_or_else(Rational::zero);

    // a(r+1, r, 0)
    let mut top = Rational::zero();
    for m in 0..r {
        top += a(m, r - m - 1) / rat(r - m);
    }
    *next.a_mut(r as usize, 0) = -top;

    // a(r+1, m, l) for 0 <= m <= r-1, 1 <= l <= r-m.
    for m in 0..r {
        for l in 1..=(r - m) {
            let mut acc = Rational::zero();
            for j in (l - 1)..=(r - 1 - m) {
                acc += a(m, j) * weight((j + 1) as u64, j - l + 1);
            }
            *next.a_mut(m as usize, l as usize) = acc;
        }
    }

    // a(r+1, m, 0) for 0 <= m <= r-1.
    for m in 0..r {
        let mut acc = Rational::zero();
        for y in 0..=m {
            for j in 0.max(m - y - 1)..=(r - 1 - y) {
                acc += a(y, j) * d_coeff(m, j, y);
            }
        }
        *next.a_mut(m as usize, 0) = -acc;
    }
    next
}

/// Inner weight of the `a(r+1, m, 0)` relation; independent of `r`.
fn d_coeff(m: i64, j: i64, y: i64) -> Rational {
    let mut acc = Rational::zero();
    for l in 0.max(m - y - 1)..=j {
        acc += weight((j + 1) as u64, j - l)
            * Rational::from_integer(binomial((l + 1) as u64, m - y))
            * sign(1 + l - m + y);
    }
    acc
}

/// Per-route cache of levels `1..=len`; each level is built once.
struct Cache {
    levels: Mutex<Vec<Arc<CoeffTable>>>,
}

impl Cache {
    fn get(&self, r: u32, route: Route) -> Arc<CoeffTable> {
        let mut levels = self.levels.lock().expect("coefficient cache poisoned");
        if levels.is_empty() {
            levels.push(Arc::new(seed(route)));
        }
        while levels.len() < r as usize {
            let last = levels.last().expect("non-empty");
            let next = match route {
                Route::A => step_a(last),
                Route::B => step_b(last),
            };
            levels.push(Arc::new(next));
        }
        Arc::clone(&levels[r as usize - 1])
    }
}

fn cache(route: Route) -> &'static Cache {
    static A: OnceLock<Cache> = OnceLock::new();
    static B: OnceLock<Cache> = OnceLock::new();
    let cell = match route {
        Route::A => &A,
        Route::B => &B,
    };
    cell.get_or_init(|| Cache { levels: Mutex::new(Vec::new()) })
}

fn check_r(r: u32) -> Result<()> {
    if r == 0 {
        Err(Error::Domain("r must be >= 1".into()))
    } else {
        Ok(())
    }
}

/// Triangle built by the `b` recurrence, stored as `a(r, m, j) = b(r, j, m)`.
pub fn b_table(r: u32) -> Result<Arc<CoeffTable>> {
    check_r(r)?;
    Ok(cache(Route::B).get(r, Route::B))
}

/// Triangle built by the direct `a` recurrence.
pub fn a_table(r: u32) -> Result<Arc<CoeffTable>> {
    check_r(r)?;
    Ok(cache(Route::A).get(r, Route::A))
}

/// Builds a table without touching the shared cache.
pub fn build_uncached(r: u32, route: Route) -> Result<CoeffTable> {
    check_r(r)?;
    let mut t = seed(route);
    for _ in 1..r {
        t = match route {
            Route::A => step_a(&t),
            Route::B => step_b(&t),
        };
    }
    Ok(t)
}

/// `T(r, n, t)` through the `a` table. Defined for `t > n` as well
/// (polynomial extrapolation, no integrality claimed there).
pub fn eval_t(r: u32, n: u64, t: u64) -> Result<Rational> {
    if n == 0 || t == 0 {
        return Err(Error::Domain("n and t must be >= 1".into()));
    }
    let table = a_table(r)?;
    Ok(table.eval_t(&pow_int(n, 1), &pow_int(t, 1)))
}

/// Default cap on `r * n` for [`t_oracle`].
pub const T_ORACLE_CAP: u64 = 128;

/// Literal count of chains `t <= k_{r-1} <= ... <= k_1 <= n`.
pub fn t_oracle(r: u32, n: u64, t: u64) -> Result<BigInt> {
    t_oracle_with_cap(r, n, t, T_ORACLE_CAP)
}

pub fn t_oracle_with_cap(r: u32, n: u64, t: u64, cap: u64) -> Result<BigInt> {
    check_r(r)?;
    if n == 0 || t == 0 {
        return Err(Error::Domain("n and t must be >= 1".into()));
    }
    let size = r as u64 * n;
    if size > cap {
        return Err(Error::ResourceGuard { what: "r*n", value: size, cap });
    }
    fn count(depth: u32, upper: u64, t: u64) -> u64 {
        if depth == 0 {
            return 1;
        }
        (t..=upper).map(|k| count(depth - 1, k, t)).sum()
    }
    Ok(BigInt::from(count(r - 1, n, t)))
}
