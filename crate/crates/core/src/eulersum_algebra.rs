//! Formal rational combinations of Euler sums `S_{p,q} = sum_n H_n^{(p)} / n^q`
//! and zeta monomials `zeta(a)` / `zeta(a) zeta(b)`.
//!
//! Both expression types keep a canonical sparse form: zero coefficients are
//! never stored, so structural equality is mathematical equality of formal
//! combinations.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{faulhaber_coeffs, format_rational, latex_rational, parse_rational, ratio, Rational};

/// Unordered product of one or two zeta values, each argument `>= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZetaMonomial(Vec<u32>);

impl ZetaMonomial {
    pub fn new(args: &[u32]) -> Result<Self> {
        if args.is_empty() || args.len() > 2 {
            return Err(Error::Structure(format!(
                "zeta monomials have degree 1 or 2, got {}",
                args.len()
            )));
        }
        if let Some(bad) = args.iter().find(|&&a| a < 2) {
            return Err(Error::Divergence(format!("zeta({bad})")));
        }
        let mut v = args.to_vec();
        v.sort_unstable();
        Ok(ZetaMonomial(v))
    }

    pub fn args(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    fn sort_key(&self) -> (Reverse<u32>, usize, &[u32]) {
        (Reverse(self.weight()), self.0.len(), &self.0)
    }

    fn text(&self) -> String {
        match self.0.as_slice() {
            [a] => format!("zeta({a})"),
            [a, b] if a == b => format!("zeta({a})^2"),
            [a, b] => format!("zeta({a})*zeta({b})"),
            _ => unreachable!("degree checked on construction"),
        }
    }

    fn latex(&self) -> String {
        match self.0.as_slice() {
            [a] => format!("\\zeta({a})"),
            [a, b] if a == b => format!("\\zeta({a})^{{2}}"),
            [a, b] => format!("\\zeta({a})\\zeta({b})"),
            _ => unreachable!("degree checked on construction"),
        }
    }
}

// Display order: heavier weight first, then single before product.
impl Ord for ZetaMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for ZetaMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `constant + sum c_i * monomial_i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZetaExpr {
    terms: BTreeMap<ZetaMonomial, Rational>,
    constant: Rational,
}

impl ZetaExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant_term(c: Rational) -> Self {
        ZetaExpr { terms: BTreeMap::new(), constant: c }
    }

    /// `c * zeta(args...)`.
    pub fn monomial(c: Rational, args: &[u32]) -> Result<Self> {
        let mut e = Self::zero();
        e.add_monomial(ZetaMonomial::new(args)?, c);
        Ok(e)
    }

    pub fn zeta(s: u32) -> Result<Self> {
        Self::monomial(Rational::one(), &[s])
    }

    pub fn add_monomial(&mut self, mono: ZetaMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_constant(&mut self, c: &Rational) {
        self.constant += c;
    }

    /// `self + c * other`.
    pub fn combine(&self, c: &Rational, other: &ZetaExpr) -> ZetaExpr {
        let mut out = self.clone();
        out.add_scaled(c, other);
        out
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &ZetaExpr) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_monomial(m.clone(), v * c);
        }
        self.constant += &other.constant * c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ZetaMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, args: &[u32]) -> Rational {
        ZetaMonomial::new(args)
            .ok()
            .and_then(|m| self.terms.get(&m).cloned())
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    fn text_terms(&self) -> Vec<(Rational, String)> {
        let mut out: Vec<_> = self.terms.iter().map(|(m, c)| (c.clone(), m.text())).collect();
        if !self.constant.is_zero() {
            out.push((self.constant.clone(), String::new()));
        }
        out
    }

    fn latex_terms(&self) -> Vec<(Rational, String)> {
        let mut out: Vec<_> = self.terms.iter().map(|(m, c)| (c.clone(), m.latex())).collect();
        if !self.constant.is_zero() {
            out.push((self.constant.clone(), String::new()));
        }
        out
    }

    pub fn to_latex(&self) -> String {
        join_latex(&self.latex_terms())
    }

    fn json_parts(&self) -> (Vec<ZetaTermJson>, String) {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| ZetaTermJson { args: m.0.clone(), coef: format_rational(c) })
            .collect();
        (terms, format_rational(&self.constant))
    }

    fn from_json_parts(terms: &[ZetaTermJson], constant: &str) -> Result<Self> {
        let mut e = ZetaExpr::constant_term(parse_coef(constant)?);
        for t in terms {
            e.add_monomial(ZetaMonomial::new(&t.args)?, parse_coef(&t.coef)?);
        }
        Ok(e)
    }
}

impl fmt::Display for ZetaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_text(&self.text_terms()))
    }
}

/// The symbol `S_{p,q}`. `q >= 2` always; `p` may be non-positive before
/// normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EulerSum {
    p: i64,
    q: i64,
}

impl EulerSum {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if q < 2 {
            return Err(Error::Divergence(format!("S({p},{q}) needs q >= 2")));
        }
        Ok(EulerSum { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

// Display order: descending p, then descending q.
impl Ord for EulerSum {
    fn cmp(&self, other: &Self) -> Ordering {
        (Reverse(self.p), Reverse(self.q)).cmp(&(Reverse(other.p), Reverse(other.q)))
    }
}

impl PartialOrd for EulerSum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `sum c_{p,q} S_{p,q} + zeta_part`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EulerSumExpr {
    terms: BTreeMap<EulerSum, Rational>,
    zeta: ZetaExpr,
}

impl EulerSumExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c * S_{p,q}`.
    pub fn sum(c: Rational, p: i64, q: i64) -> Result<Self> {
        let mut e = Self::zero();
        e.add_sum(EulerSum::new(p, q)?, c);
        Ok(e)
    }

    pub fn from_zeta(zeta: ZetaExpr) -> Self {
        EulerSumExpr { terms: BTreeMap::new(), zeta }
    }

    pub fn add_sum(&mut self, s: EulerSum, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(s).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&EulerSum, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, p: i64, q: i64) -> Rational {
        self.terms.get(&EulerSum { p, q }).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn zeta_part(&self) -> &ZetaExpr {
        &self.zeta
    }

    pub fn zeta_part_mut(&mut self) -> &mut ZetaExpr {
        &mut self.zeta
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.zeta.is_zero()
    }

    /// Smallest `p` among the stored Euler-sum symbols.
    pub fn min_order(&self) -> Option<i64> {
        self.terms.keys().map(|s| s.p).min()
    }

    pub fn to_json(&self) -> ExprJson {
        let (zeta_terms, constant) = self.zeta.json_parts();
        ExprJson {
            euler_terms: self
                .terms
                .iter()
                .map(|(s, c)| EulerTermJson { p: s.p, q: s.q, coef: format_rational(c) })
                .collect(),
            zeta_terms,
            constant,
        }
    }

    pub fn from_json(json: &ExprJson) -> Result<Self> {
        let mut e = EulerSumExpr::from_zeta(ZetaExpr::from_json_parts(&json.zeta_terms, &json.constant)?);
        for t in &json.euler_terms {
            e.add_sum(EulerSum::new(t.p, t.q)?, parse_coef(&t.coef)?);
        }
        Ok(e)
    }

    pub fn to_latex(&self) -> String {
        let mut parts: Vec<(Rational, String)> = self
            .terms
            .iter()
            .map(|(s, c)| (c.clone(), format!("S^{{+,+}}_{{{},{}}}", s.p, s.q)))
            .collect();
        parts.extend(self.zeta.latex_terms());
        join_latex(&parts)
    }
}

impl fmt::Display for EulerSumExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(Rational, String)> = self
            .terms
            .iter()
            .map(|(s, c)| (c.clone(), format!("S({},{})", s.p, s.q)))
            .collect();
        parts.extend(self.zeta.text_terms());
        f.write_str(&join_text(&parts))
    }
}

/// JSON form of an [`EulerSumExpr`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExprJson {
    pub euler_terms: Vec<EulerTermJson>,
    pub zeta_terms: Vec<ZetaTermJson>,
    pub constant: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerTermJson {
    pub p: i64,
    pub q: i64,
    pub coef: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaTermJson {
    pub args: Vec<u32>,
    pub coef: String,
}

fn parse_coef(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::Structure(format!("bad rational {s:?}")))
}

fn join_text(parts: &[(Rational, String)]) -> String {
    join(parts, |c| format_rational(c), "*")
}

fn join_latex(parts: &[(Rational, String)]) -> String {
    join(parts, latex_rational, "")
}

fn join(parts: &[(Rational, String)], fmt_coef: impl Fn(&Rational) -> String, mul: &str) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, sym)) in parts.iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        if sym.is_empty() {
            out.push_str(&fmt_coef(&mag));
        } else if mag.is_one() {
            out.push_str(sym);
        } else {
            out.push_str(&fmt_coef(&mag));
            out.push_str(mul);
            out.push_str(sym);
        }
    }
    out
}

/// `e1 + c * e2` in canonical form.
pub fn expr_combine(e1: &EulerSumExpr, c: &Rational, e2: &EulerSumExpr) -> EulerSumExpr {
    let mut out = e1.clone();
    if c.is_zero() {
        return out;
    }
    for (s, v) in &e2.terms {
        out.add_sum(*s, v * c);
    }
    out.zeta.add_scaled(c, &e2.zeta);
    out
}

/// `S_{p,q}` for `p <= 0` as zeta values: with `k = -p`,
/// `S_{p,q} = sum_j c_j zeta(q - k - 1 + j)` where `c_j` are the Faulhaber
/// coefficients of `sum x^k`.
pub fn nonpositive_to_zeta(p: i64, q: i64) -> Result<ZetaExpr> {
    if p > 0 {
        return Err(Error::Domain(format!("S({p},{q}) has positive order")));
    }
    let k = -p;
    if q - k - 1 < 2 {
        return Err(Error::Divergence(format!(
            "S({p},{q}) expands to zeta({}), needs q + p >= 3",
            q - k - 1
        )));
    }
    let k32 = u32::try_from(k).map_err(|_| Error::Domain(format!("order {p} too large")))?;
    let mut out = ZetaExpr::zero();
    for (j, c) in faulhaber_coeffs(k32).into_iter().enumerate() {
        let arg = q - k - 1 + j as i64;
        let arg = u32::try_from(arg).map_err(|_| Error::Domain(format!("zeta({arg}) too large")))?;
        out.add_monomial(ZetaMonomial::new(&[arg])?, c);
    }
    Ok(out)
}

/// Replaces every `S_{p,q}` with `p <= 0` by its zeta expansion.
pub fn normalize_nonpositive(e: &EulerSumExpr) -> Result<EulerSumExpr> {
    let mut out = EulerSumExpr::from_zeta(e.zeta.clone());
    for (s, c) in &e.terms {
        if s.p <= 0 {
            out.zeta.add_scaled(c, &nonpositive_to_zeta(s.p, s.q)?);
        } else {
            out.add_sum(*s, c.clone());
        }
    }
    Ok(out)
}

/// Euler's reduction
/// `S_{1,m} = (m+2)/2 zeta(m+1) - 1/2 sum_{n=1}^{m-2} zeta(m-n) zeta(n+1)`.
pub fn euler_reduce_s1(m: i64) -> Result<ZetaExpr> {
    if m < 2 {
        return Err(Error::Domain(format!("S(1,{m}) needs m >= 2")));
    }
    let mu = u32::try_from(m).map_err(|_| Error::Domain(format!("m = {m} too large")))?;
    let mut out = ZetaExpr::monomial(ratio(m + 2, 2), &[mu + 1])?;
    for n in 1..=(mu - 2) {
        out.add_monomial(ZetaMonomial::new(&[mu - n, n + 1])?, ratio(-1, 2));
    }
    Ok(out)
}

/// Replaces every `S_{1,q}` by [`euler_reduce_s1`].
pub fn reduce_s1_terms(e: &EulerSumExpr) -> Result<EulerSumExpr> {
    let mut out = EulerSumExpr::from_zeta(e.zeta.clone());
    for (s, c) in &e.terms {
        if s.p == 1 {
            out.zeta.add_scaled(c, &euler_reduce_s1(s.q)?);
        } else {
            out.add_sum(*s, c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;
    use proptest::prelude::*;

    fn s(c: Rational, p: i64, q: i64) -> EulerSumExpr {
        EulerSumExpr::sum(c, p, q).unwrap()
    }

    fn z(c: Rational, args: &[u32]) -> ZetaExpr {
        ZetaExpr::monomial(c, args).unwrap()
    }

    #[test]
    fn combine_examples() {
        let e = s(rat(1), 1, 3);
        assert_eq!(expr_combine(&e, &rat(1), &EulerSumExpr::zero()), e);
        assert!(expr_combine(&e, &rat(-1), &e).is_zero());
        let merged = expr_combine(&e, &rat(2), &s(ratio(1, 2), 1, 3));
        assert_eq!(merged, s(rat(2), 1, 3));
    }

    #[test]
    fn structural_guards() {
        assert!(EulerSum::new(1, 1).is_err());
        assert!(ZetaMonomial::new(&[1]).is_err());
        assert!(ZetaMonomial::new(&[2, 3, 4]).is_err());
        assert_eq!(ZetaMonomial::new(&[3, 2]).unwrap(), ZetaMonomial::new(&[2, 3]).unwrap());
    }

    #[test]
    fn normalize_examples() {
        let e = normalize_nonpositive(&s(rat(1), 0, 4)).unwrap();
        assert_eq!(e, EulerSumExpr::from_zeta(z(rat(1), &[3])));

        let e = normalize_nonpositive(&s(rat(1), -1, 5)).unwrap();
        let want = z(ratio(1, 2), &[3]).combine(&rat(1), &z(ratio(1, 2), &[4]));
        assert_eq!(e, EulerSumExpr::from_zeta(want));

        let e = s(rat(1), 2, 3);
        assert_eq!(normalize_nonpositive(&e).unwrap(), e);

        assert!(matches!(
            normalize_nonpositive(&s(rat(1), -1, 3)),
            Err(Error::Divergence(_))
        ));
    }

    #[test]
    fn euler_reduction_examples() {
        assert_eq!(euler_reduce_s1(2).unwrap(), z(rat(2), &[3]));
        let m3 = z(ratio(5, 2), &[4]).combine(&rat(1), &z(ratio(-1, 2), &[2, 2]));
        assert_eq!(euler_reduce_s1(3).unwrap(), m3);
        let m4 = z(rat(3), &[5]).combine(&rat(1), &z(rat(-1), &[2, 3]));
        assert_eq!(euler_reduce_s1(4).unwrap(), m4);
        assert!(euler_reduce_s1(1).is_err());
    }

    #[test]
    fn text_and_latex() {
        let mut e = s(rat(1), 2, 4);
        e = expr_combine(&e, &rat(1), &s(rat(1), 2, 3));
        e = expr_combine(&e, &rat(-1), &s(rat(1), 1, 4));
        assert_eq!(e.to_string(), "S(2,4) + S(2,3) - S(1,4)");
        assert_eq!(e.to_latex(), "S^{+,+}_{2,4} + S^{+,+}_{2,3} - S^{+,+}_{1,4}");

        let r = reduce_s1_terms(&s(rat(1), 1, 3)).unwrap();
        assert_eq!(r.to_string(), "5/2*zeta(4) - 1/2*zeta(2)^2");
        assert_eq!(r.to_latex(), "\\frac{5}{2}\\zeta(4) - \\frac{1}{2}\\zeta(2)^{2}");
        assert_eq!(EulerSumExpr::zero().to_string(), "0");
        let mut c = ZetaExpr::constant_term(ratio(-1, 3));
        c.add_monomial(ZetaMonomial::new(&[2, 5]).unwrap(), rat(1));
        assert_eq!(c.to_string(), "zeta(2)*zeta(5) - 1/3");
    }

    #[test]
    fn json_shape() {
        let mut e = s(ratio(3, 2), -1, 5);
        e.zeta_part_mut().add_monomial(ZetaMonomial::new(&[2, 2]).unwrap(), ratio(-1, 2));
        let v = serde_json::to_value(e.to_json()).unwrap();
        assert_eq!(v["euler_terms"][0]["p"], -1);
        assert_eq!(v["euler_terms"][0]["coef"], "3/2");
        assert_eq!(v["zeta_terms"][0]["args"], serde_json::json!([2, 2]));
        assert_eq!(v["constant"], "0");
        let back: ExprJson = serde_json::from_value(v).unwrap();
        assert_eq!(EulerSumExpr::from_json(&back).unwrap(), e);
    }

    fn arb_expr() -> impl Strategy<Value = EulerSumExpr> {
        let term = (-3i64..4, 2i64..7, -6i64..7, 1i64..5);
        let zt = (2u32..7, proptest::option::of(2u32..7), -6i64..7, 1i64..5);
        (proptest::collection::vec(term, 0..6), proptest::collection::vec(zt, 0..4), -3i64..4).prop_map(
            |(ts, zs, k)| {
                let mut e = EulerSumExpr::zero();
                for (p, q, n, d) in ts {
                    // keep p <= 0 terms convergent: q + p >= 3
                    e.add_sum(EulerSum::new(p, (q + 1).max(3 - p)).unwrap(), ratio(n, d));
                }
                for (a, b, n, d) in zs {
                    let args: Vec<u32> = std::iter::once(a).chain(b).collect();
                    e.zeta_part_mut().add_monomial(ZetaMonomial::new(&args).unwrap(), ratio(n, d));
                }
                e.zeta_part_mut().add_constant(&rat(k));
                e
            },
        )
    }

    proptest! {
        #[test]
        fn combine_is_commutative_and_associative(a in arb_expr(), b in arb_expr(), c in arb_expr()) {
            let one = rat(1);
            prop_assert_eq!(expr_combine(&a, &one, &b), expr_combine(&b, &one, &a));
            let left = expr_combine(&expr_combine(&a, &one, &b), &one, &c);
            let right = expr_combine(&a, &one, &expr_combine(&b, &one, &c));
            prop_assert_eq!(left, right);
            prop_assert!(expr_combine(&a, &rat(-1), &a).is_zero());
        }

        #[test]
        fn normalize_is_idempotent(a in arb_expr()) {
            let once = normalize_nonpositive(&a).unwrap();
            prop_assert!(once.min_order().map_or(true, |p| p >= 1));
            prop_assert_eq!(normalize_nonpositive(&once).unwrap(), once);
        }

        #[test]
        fn json_roundtrip(a in arb_expr()) {
            let text = serde_json::to_string(&a.to_json()).unwrap();
            let back: ExprJson = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(EulerSumExpr::from_json(&back).unwrap(), a);
        }
    }
}
