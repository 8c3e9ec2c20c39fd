//! Arbitrary-precision rationals and the handful of helpers the rest of the
//! crate needs on top of `num-rational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `"p/q"`, with the denominator omitted when it is 1.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    if let Some(x) = r.to_f64() {
        if x.is_finite() && (x != 0.0 || r.is_zero()) {
            return x;
        }
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * ln_abs(r).exp()
}

fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap().abs().ln();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of `|r|`, robust to huge numerators and denominators.
pub fn ln_abs(r: &Rational) -> f64 {
    ln_big(r.numer()) - ln_big(r.denom())
}

/// Nearest integer, ties rounded away from zero.
pub fn round(r: &Rational) -> BigInt {
    r.round().to_integer()
}

/// Representative of `r` modulo 1 in `[0, 1)` together with `floor(r)`.
pub fn split_mod_one(r: &Rational) -> (BigInt, Rational) {
    let fl = r.floor();
    let frac = r - &fl;
    (fl.to_integer(), frac)
}

/// Best rational approximation of `r` with denominator at most `max_den`,
/// by continued-fraction convergents and the final semiconvergent.
pub fn approximate(r: &Rational, max_den: &BigInt) -> Rational {
    if r.denom() <= max_den {
        return r.clone();
    }
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut x = r.clone();
    loop {
        let a = x.floor().to_integer();
        let q2 = &q0 + &a * &q1;
        if &q2 > max_den {
            // semiconvergent p0 + k p1 over q0 + k q1 with the largest admissible k
            let k = (max_den - &q0).div_floor(&q1);
            let semi = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
            let conv = Rational::new(p1.clone(), q1.clone());
            let d_semi = (&semi - r).abs();
            let d_conv = (&conv - r).abs();
            return if d_semi < d_conv { semi } else { conv };
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = &x - Rational::from_integer(a);
        if frac.is_zero() {
            return Rational::new(p1, q1);
        }
        x = frac.recip();
    }
}

/// Exact value of a finite float, then snapped to denominator `max_den`.
pub fn from_f64_approx(x: f64, max_den: &BigInt) -> Rational {
    let exact = Rational::from_float(x).unwrap_or_else(Rational::zero);
    approximate(&exact, max_den)
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}
