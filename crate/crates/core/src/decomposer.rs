//! `zeta_{H^{(p,r)}}(m) = sum_n H_n^{(p,r)} / n^m` as a rational combination
//! of classical Euler sums:
//!
//! ```text
//! zeta_{H^{(p,r)}}(m) = sum_{l=0}^{r-1} sum_{j=0}^{r-1-l} a(r, l, j) S_{p-l, m-j},   m >= r + 1
//! ```
//!
//! [`decompose`] returns that double sum verbatim; [`decompose_normalized`]
//! rewrites the non-positive orders through Faulhaber and, optionally, the
//! `S_{1,q}` terms through Euler's reduction.

use crate::coeff_engine::a_table;
use crate::error::{Error, Result};
use crate::eulersum_algebra::{normalize_nonpositive, reduce_s1_terms, EulerSum, EulerSumExpr};

pub(crate) fn check_hypothesis(p: u32, r: u32, m: i64) -> Result<()> {
    if p == 0 || r == 0 {
        return Err(Error::Domain(format!("p and r must be >= 1 (got p = {p}, r = {r})")));
    }
    if m < r as i64 + 1 {
        return Err(Error::Hypothesis { r, m });
    }
    Ok(())
}

/// Raw double sum over the `a(r, ., .)` triangle.
pub fn decompose(p: u32, r: u32, m: i64) -> Result<EulerSumExpr> {
    check_hypothesis(p, r, m)?;
    let table = a_table(r)?;
    let mut out = EulerSumExpr::zero();
    for (l, j, c) in table.entries() {
        let order = p as i64 - l as i64;
        let weight = m - j as i64;
        // m >= r+1 and l + j <= r-1 keep every symbol convergent.
        debug_assert!(weight >= 2);
        debug_assert!(order >= 1 || weight + order >= 3);
        out.add_sum(EulerSum::new(order, weight)?, c.clone());
    }
    Ok(out)
}

/// [`decompose`], then Faulhaber normalization; with `reduce_s1` also Euler's
/// reduction of every `S_{1,q}`.
pub fn decompose_normalized(p: u32, r: u32, m: i64, reduce_s1: bool) -> Result<EulerSumExpr> {
    let raw = normalize_nonpositive(&decompose(p, r, m)?)?;
    if reduce_s1 {
        reduce_s1_terms(&raw)
    } else {
        Ok(raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eulersum_algebra::{ZetaExpr, ZetaMonomial};
    use crate::exact_arith::{rat, ratio, Rational};

    fn sums(terms: &[(i64, i64, i64)]) -> EulerSumExpr {
        let mut e = EulerSumExpr::zero();
        for &(c, p, q) in terms {
            e.add_sum(EulerSum::new(p, q).unwrap(), rat(c));
        }
        e
    }

    fn zeta(terms: &[(Rational, &[u32])]) -> ZetaExpr {
        let mut z = ZetaExpr::zero();
        for (c, args) in terms {
            z.add_monomial(ZetaMonomial::new(args).unwrap(), c.clone());
        }
        z
    }

    #[test]
    fn raw_examples() {
        assert_eq!(decompose(2, 1, 3).unwrap(), sums(&[(1, 2, 3)]));
        assert_eq!(decompose(2, 2, 4).unwrap(), sums(&[(1, 2, 4), (1, 2, 3), (-1, 1, 4)]));
        assert_eq!(decompose(1, 2, 4).unwrap(), sums(&[(1, 1, 4), (1, 1, 3), (-1, 0, 4)]));
    }

    #[test]
    fn hypothesis_enforced() {
        assert!(matches!(decompose(1, 3, 3), Err(Error::Hypothesis { r: 3, m: 3 })));
        assert!(decompose(1, 3, 4).is_ok());
        assert!(decompose(0, 3, 5).is_err());
        let msg = decompose(2, 2, 2).unwrap_err().to_string();
        assert!(msg.contains("m >= r+1"), "{msg}");
    }

    #[test]
    fn normalized_examples() {
        let mut want = sums(&[(1, 1, 4), (1, 1, 3)]);
        want.zeta_part_mut().add_monomial(ZetaMonomial::new(&[3]).unwrap(), rat(-1));
        assert_eq!(decompose_normalized(1, 2, 4, false).unwrap(), want);

        let z = zeta(&[
            (rat(3), &[5]),
            (rat(-1), &[2, 3]),
            (ratio(5, 2), &[4]),
            (ratio(-1, 2), &[2, 2]),
            (rat(-1), &[3]),
        ]);
        assert_eq!(decompose_normalized(1, 2, 4, true).unwrap(), EulerSumExpr::from_zeta(z));

        let z = zeta(&[(rat(2), &[3])]);
        assert_eq!(decompose_normalized(1, 1, 2, true).unwrap(), EulerSumExpr::from_zeta(z));
    }

    #[test]
    fn r_one_is_classical() {
        for p in 1..=6 {
            for m in 2..=9 {
                assert_eq!(decompose(p, 1, m).unwrap(), sums(&[(1, p as i64, m)]));
            }
        }
    }

    #[test]
    fn convergence_safety_grid() {
        for p in 1..=5u32 {
            for r in 1..=8u32 {
                for m in (r as i64 + 1)..=(r as i64 + 6) {
                    let raw = decompose(p, r, m).unwrap();
                    for (s, _) in raw.terms() {
                        if s.p() >= 1 {
                            assert!(s.q() >= 2);
                        } else {
                            assert!(s.q() + s.p() >= 3);
                        }
                    }
                    for flag in [false, true] {
                        let n = decompose_normalized(p, r, m, flag).unwrap();
                        let floor = if flag { 2 } else { 1 };
                        assert!(n.min_order().is_none_or(|o| o >= floor));
                        for (mono, _) in n.zeta_part().terms() {
                            assert!(mono.args().iter().all(|&a| a >= 2));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn raw_term_count_is_triangle_size() {
        // Distinct (l, j) map to distinct (p - l, m - j), so no merging occurs.
        for r in 1..=8u32 {
            let e = decompose(3, r, r as i64 + 2).unwrap();
            assert_eq!(e.num_terms(), (r * (r + 1) / 2) as usize);
        }
    }
}
