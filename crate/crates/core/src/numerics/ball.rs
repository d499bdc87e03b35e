//! Fixed-point midpoint/radius arithmetic.
//!
//! A [`Ball`] at scale `w` stores integers `mid` and `rad` and denotes the
//! interval `[(mid - rad) 10^-w, (mid + rad) 10^-w]`. Every operation widens
//! `rad` enough to keep the true value inside.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exact_arith::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigInt,
    scale: u32,
}

pub(crate) fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e as usize)
}

/// Nearest integer to `num / den`, ties away from zero. `den > 0`.
fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    let twice = r.abs() * 2u32;
    if &twice >= den {
        if num.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// `ceil(num / den)` for `num >= 0`, `den > 0`.
fn ceil_div(num: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

impl Ball {
    pub fn zero(scale: u32) -> Self {
        Ball { mid: BigInt::zero(), rad: BigInt::zero(), scale }
    }

    /// Ball around `q` with an extra absolute error `err >= 0`.
    pub fn from_rational(q: &Rational, err: &Rational, scale: u32) -> Self {
        let unit = pow10(scale);
        let num = q.numer() * &unit;
        let mid = round_div(&num, q.denom());
        let exact = (&num % q.denom()).is_zero();
        let mut rad = ceil_div(&(err.numer().abs() * &unit), err.denom());
        if !exact {
            rad += 1;
        }
        Ball { mid, rad, scale }
    }

    pub fn exact(q: &Rational, scale: u32) -> Self {
        Self::from_rational(q, &Rational::zero(), scale)
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn mid_units(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad_units(&self) -> &BigInt {
        &self.rad
    }

    pub fn midpoint(&self) -> Rational {
        Rational::new(self.mid.clone(), pow10(self.scale))
    }

    pub fn radius(&self) -> Rational {
        Rational::new(self.rad.clone(), pow10(self.scale))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        (x - self.midpoint()).abs() <= self.radius()
    }

    /// Widens the radius by `err >= 0`.
    pub fn add_error(&mut self, err: &Rational) {
        let unit = pow10(self.scale);
        self.rad += ceil_div(&(err.numer().abs() * unit), err.denom());
    }

    /// Shifts the midpoint by the exact rational `q`.
    pub fn shift(&mut self, q: &Rational) {
        let other = Ball::exact(q, self.scale);
        self.mid += other.mid;
        self.rad += other.rad;
    }

    pub fn add(&self, other: &Ball) -> Ball {
        assert_eq!(self.scale, other.scale, "ball scales differ");
        Ball { mid: &self.mid + &other.mid, rad: &self.rad + &other.rad, scale: self.scale }
    }

    pub fn add_assign(&mut self, other: &Ball) {
        assert_eq!(self.scale, other.scale, "ball scales differ");
        self.mid += &other.mid;
        self.rad += &other.rad;
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        assert_eq!(self.scale, other.scale, "ball scales differ");
        let unit = pow10(self.scale);
        let mid = round_div(&(&self.mid * &other.mid), &unit);
        let spread = self.mid.abs() * &other.rad + other.mid.abs() * &self.rad + &self.rad * &other.rad;
        let rad = ceil_div(&spread, &unit) + 1;
        Ball { mid, rad, scale: self.scale }
    }

    /// Multiplication by an exact rational.
    pub fn mul_rational(&self, q: &Rational) -> Ball {
        let num = &self.mid * q.numer();
        let mid = round_div(&num, q.denom());
        let rounded = !(&num % q.denom()).is_zero();
        let mut rad = ceil_div(&(&self.rad * q.numer().abs()), q.denom());
        if rounded {
            rad += 1;
        }
        Ball { mid, rad, scale: self.scale }
    }

    /// Same interval (or a superset) at another scale.
    pub fn rescale(&self, scale: u32) -> Ball {
        if scale >= self.scale {
            let f = pow10(scale - self.scale);
            return Ball { mid: &self.mid * &f, rad: &self.rad * &f, scale };
        }
        let f = pow10(self.scale - scale);
        let mid = round_div(&self.mid, &f);
        let rad = ceil_div(&self.rad, &f) + 1;
        Ball { mid, rad, scale }
    }

    /// Midpoint as a plain decimal, all `scale` fractional digits.
    pub fn mid_decimal(&self) -> String {
        fixed_decimal(&self.mid, self.scale)
    }

    /// Radius as exact scientific notation, e.g. `"1.7e-27"`.
    pub fn rad_scientific(&self) -> String {
        if self.rad.is_zero() {
            return "0".to_string();
        }
        let digits = self.rad.to_string();
        let exp = digits.len() as i64 - 1 - self.scale as i64;
        let (head, tail) = digits.split_at(1);
        let tail = tail.trim_end_matches('0');
        if tail.is_empty() {
            format!("{head}e{exp}")
        } else {
            format!("{head}.{tail}e{exp}")
        }
    }
}

/// `units * 10^-scale` written out in fixed notation.
pub(crate) fn fixed_decimal(units: &BigInt, scale: u32) -> String {
    let neg = units.sign() == Sign::Minus;
    let mut digits = units.abs().to_string();
    let scale = scale as usize;
    if digits.len() <= scale {
        digits = "0".repeat(scale + 1 - digits.len()) + &digits;
    }
    let (int, frac) = digits.split_at(digits.len() - scale);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(int);
    if scale > 0 {
        out.push('.');
        out.push_str(frac);
    }
    out
}

/// Parses a decimal or scientific string exactly (`"-1.25"`, `"3.1e-12"`).
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    let all: String = format!("{int}{frac}");
    if !all.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut value = Rational::from_integer(all.parse::<BigInt>().ok()?);
    let shift = exp - frac.len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, (-shift) as usize);
    }
    if neg {
        value = -value;
    }
    Some(value)
}

impl Default for Ball {
    fn default() -> Self {
        Ball::zero(0)
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn decimal_rendering() {
        let b = Ball::exact(&ratio(-1, 8), 4);
        assert_eq!(b.mid_decimal(), "-0.1250");
        assert_eq!(b.rad_scientific(), "0");
        let b = Ball::from_rational(&ratio(1, 3), &rat(0), 5);
        assert_eq!(b.mid_decimal(), "0.33333");
        assert_eq!(b.rad_scientific(), "1e-5");
        assert_eq!(parse_decimal("1.7e-27"), Some(ratio(17, 1) / num_traits::pow(rat(10), 28)));
        assert_eq!(parse_decimal("-0.1250"), Some(ratio(-1, 8)));
        assert_eq!(parse_decimal("x"), None);
    }

    #[test]
    fn rescale_keeps_enclosure() {
        let q = ratio(22, 7);
        let b = Ball::from_rational(&q, &rat(0), 20);
        let down = b.rescale(6);
        assert!(down.contains(&q));
        assert!(down.rescale(20).contains(&q));
    }

    fn small_q() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn ops_enclose_exact_results(a in small_q(), b in small_q(), c in small_q(), scale in 0u32..12) {
            let ba = Ball::exact(&a, scale);
            let bb = Ball::exact(&b, scale);
            prop_assert!(ba.contains(&a));
            prop_assert!(ba.add(&bb).contains(&(&a + &b)));
            prop_assert!(ba.mul(&bb).contains(&(&a * &b)));
            prop_assert!(ba.mul(&bb).mul_rational(&c).contains(&(&a * &b * &c)));
            let mut w = ba.clone();
            w.add_error(&ratio(1, 7));
            w.shift(&c);
            prop_assert!(w.contains(&(&a + &c + ratio(1, 8))));
        }
    }
}
