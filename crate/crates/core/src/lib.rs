//! Exact coefficient tables, generalized hyperharmonic numbers and Euler-sum
//! decompositions with certified numerical checks.
//!
//! The central identity expresses
//! `zeta_{H^{(p,r)}}(m) = sum_n H_n^{(p,r)} / n^m` (for `m >= r + 1`) as a
//! rational combination of classical Euler sums `S_{p,q}`, with weights
//! `a(r, m, j)` from [`coeff_engine`]. Everything symbolic is exact; the
//! [`numerics`] module checks decompositions against direct summation with
//! certified error bounds.
//!
//! Bernoulli numbers follow the `B_1 = +1/2` convention throughout.

pub mod coeff_engine;
pub mod conjecture_lab;
pub mod decomposer;
pub mod error;
pub mod eulersum_algebra;
pub mod exact_arith;
pub mod hyperharmonic;
pub mod numerics;

pub use coeff_engine::{a_table, b_table, eval_t, t_oracle, CoeffTable, Route};
pub use decomposer::{decompose, decompose_normalized};
pub use error::{Error, Result};
pub use eulersum_algebra::{
    euler_reduce_s1, expr_combine, normalize_nonpositive, EulerSum, EulerSumExpr, ZetaExpr, ZetaMonomial,
};
pub use exact_arith::{bernoulli_plus, binomial, faulhaber_coeffs, power_sum, Rational};
pub use hyperharmonic::{conway_guy, gen_harmonic, h_closed, h_def};
pub use numerics::{
    euler_sum_value, evaluate_expr, verify, zeta_h_direct, zeta_value, ApproxValue, NumericConfig, TailMethod,
    VerifyReport,
};
