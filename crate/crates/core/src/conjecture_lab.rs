//! Exact checks of four observed identities of the `a(r, m, l)` triangle:
//!
//! 1. signed symmetry `a(r, m, l) = (-1)^{m+l} a(r, l, m)`;
//! 2. anti-diagonals `sum_{l=0}^{n} a(r, n-l, l) = [n = 0]`;
//! 3. row/column sums `sum_l a(r, 0, l) = r` and `sum_l a(r, l, 0) = 0` (r >= 2);
//! 4. signs `sgn a(r, m, l) = (-1)^m`, in particular no entry vanishes.
//!
//! A violation is data, not a failure: the reports carry the exact witnesses.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff_engine::{a_table, CoeffTable};
use crate::error::{Error, Result};
use crate::exact_arith::{format_rational, parse_rational, rat, signum, Rational};

/// Default upper end of the checked range.
pub const DEFAULT_R_MAX: u32 = 20;

/// Which identity a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjecture {
    Symmetry = 1,
    AntiDiagonal = 2,
    RowSums = 3,
    Signs = 4,
}

impl Conjecture {
    pub const ALL: [Conjecture; 4] =
        [Conjecture::Symmetry, Conjecture::AntiDiagonal, Conjecture::RowSums, Conjecture::Signs];

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Conjecture::Symmetry => "signed symmetry",
            Conjecture::AntiDiagonal => "anti-diagonal sums",
            Conjecture::RowSums => "row and column sums",
            Conjecture::Signs => "sign pattern",
        }
    }
}

/// One failed instance. For identities that sum over an index, that index
/// is reported as `-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub r: u32,
    pub m: i64,
    pub l: i64,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub conjecture: Conjecture,
    pub r_checked: Vec<u32>,
    pub violations: Vec<Violation>,
    /// Smallest `|a(r, m, l)|` per `r`; only filled for the sign check.
    pub min_abs_entries: Option<Vec<(u32, Rational)>>,
}

impl ConjectureReport {
    pub fn all_pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn to_json(&self) -> ReportJson {
        ReportJson {
            conjecture: self.conjecture.number(),
            r_checked: self.r_checked.clone(),
            all_pass: self.all_pass(),
            violations: self
                .violations
                .iter()
                .map(|v| ViolationJson {
                    r: v.r,
                    m: v.m,
                    l: v.l,
                    lhs: format_rational(&v.lhs),
                    rhs: format_rational(&v.rhs),
                })
                .collect(),
            min_abs_entries: self.min_abs_entries.as_ref().map(|v| {
                v.iter().map(|(r, q)| MinAbsJson { r: *r, value: format_rational(q) }).collect()
            }),
        }
    }
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let range = match (self.r_checked.first(), self.r_checked.last()) {
            (Some(a), Some(b)) => format!("r = {a}..{b}"),
            _ => "no r".to_string(),
        };
        let verdict = if self.all_pass() { "holds" } else { "VIOLATED" };
        write!(
            f,
            "conjecture {} ({}): {} for {}",
            self.conjecture.number(),
            self.conjecture.name(),
            verdict,
            range
        )?;
        if let Some(v) = self.first_violation() {
            write!(
                f,
                "; {} violation(s), first at r={} m={} l={}: {} != {}",
                self.violations.len(),
                v.r,
                v.m,
                v.l,
                format_rational(&v.lhs),
                format_rational(&v.rhs)
            )?;
        }
        Ok(())
    }
}

/// `{"conjecture", "r_checked", "all_pass", "violations"}`; the sign check
/// also carries `"min_abs_entries"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub conjecture: u8,
    pub r_checked: Vec<u32>,
    pub all_pass: bool,
    pub violations: Vec<ViolationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_abs_entries: Option<Vec<MinAbsJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationJson {
    pub r: u32,
    pub m: i64,
    pub l: i64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinAbsJson {
    pub r: u32,
    pub value: String,
}

impl ReportJson {
    /// Exact witnesses back from their string form.
    pub fn violations_exact(&self) -> Result<Vec<Violation>> {
        self.violations
            .iter()
            .map(|v| {
                let parse = |s: &str| {
                    parse_rational(s).ok_or_else(|| Error::Structure(format!("bad rational {s:?}")))
                };
                Ok(Violation { r: v.r, m: v.m, l: v.l, lhs: parse(&v.lhs)?, rhs: parse(&v.rhs)? })
            })
            .collect()
    }
}

fn entry(t: &CoeffTable, m: i64, l: i64) -> Rational {
    t.a(m, l).cloned().expect("index inside triangle")
}

fn parity(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

fn run(
    conjecture: Conjecture,
    r_max: u32,
    mut check: impl FnMut(&CoeffTable, &mut Vec<Violation>),
) -> Result<ConjectureReport> {
    if r_max == 0 {
        return Err(Error::Domain("r_max must be >= 1".into()));
    }
    let mut violations = Vec::new();
    for r in 1..=r_max {
        let table = a_table(r)?;
        check(&table, &mut violations);
    }
    Ok(ConjectureReport { conjecture, r_checked: (1..=r_max).collect(), violations, min_abs_entries: None })
}

/// `a(r, m, l) = (-1)^{m+l} a(r, l, m)` for every valid `(m, l)`.
pub fn check_symmetry(r_max: u32) -> Result<ConjectureReport> {
    run(Conjecture::Symmetry, r_max, |t, out| {
        let r = t.r() as i64;
        for m in 0..r {
            for l in 0..(r - m) {
                let lhs = entry(t, m, l);
                let rhs = parity(m + l) * entry(t, l, m);
                if lhs != rhs {
                    out.push(Violation { r: t.r(), m, l, lhs, rhs });
                }
            }
        }
    })
}

/// `sum_{l=0}^{n} a(r, n-l, l) = [n = 0]` for `0 <= n <= r-1`.
/// Violations report `n` in the `m` field and `l = -1`.
pub fn check_antidiagonal(r_max: u32) -> Result<ConjectureReport> {
    run(Conjecture::AntiDiagonal, r_max, |t, out| {
        for n in 0..t.r() as i64 {
            let lhs: Rational = (0..=n).map(|l| entry(t, n - l, l)).sum();
            let rhs = if n == 0 { rat(1) } else { rat(0) };
            if lhs != rhs {
                out.push(Violation { r: t.r(), m: n, l: -1, lhs, rhs });
            }
        }
    })
}

/// `sum_l a(r, 0, l) = r` (reported as `m = 0, l = -1`) and, for `r >= 2`,
/// `sum_l a(r, l, 0) = 0` (reported as `m = -1, l = 0`).
pub fn check_row_sums(r_max: u32) -> Result<ConjectureReport> {
    run(Conjecture::RowSums, r_max, |t, out| {
        let r = t.r() as i64;
        let row: Rational = t.row(0).iter().sum();
        if row != rat(r) {
            out.push(Violation { r: t.r(), m: 0, l: -1, lhs: row, rhs: rat(r) });
        }
        if r >= 2 {
            let col: Rational = (0..r).map(|l| entry(t, l, 0)).sum();
            if !col.is_zero() {
                out.push(Violation { r: t.r(), m: -1, l: 0, lhs: col, rhs: rat(0) });
            }
        }
    })
}

/// `sgn a(r, m, l) = (-1)^m`. Violations carry the entry as `lhs` and the
/// expected sign as `rhs`. Also records the smallest `|a|` per `r`.
pub fn check_signs(r_max: u32) -> Result<ConjectureReport> {
    let mut mins = Vec::new();
    let mut report = run(Conjecture::Signs, r_max, |t, out| {
        let r = t.r() as i64;
        let mut min: Option<Rational> = None;
        for m in 0..r {
            for l in 0..(r - m) {
                let v = entry(t, m, l);
                let want = parity(m);
                if rat(signum(&v) as i64) != want {
                    out.push(Violation { r: t.r(), m, l, lhs: v.clone(), rhs: want });
                }
                if min.as_ref().is_none_or(|cur| &v.abs() < cur) {
                    min = Some(v.abs());
                }
            }
        }
        mins.push((t.r(), min.expect("non-empty triangle")));
    })?;
    report.min_abs_entries = Some(mins);
    Ok(report)
}

/// All four checks, in order.
pub fn check_all(r_max: u32) -> Result<Vec<ConjectureReport>> {
    Ok(vec![check_symmetry(r_max)?, check_antidiagonal(r_max)?, check_row_sums(r_max)?, check_signs(r_max)?])
}
