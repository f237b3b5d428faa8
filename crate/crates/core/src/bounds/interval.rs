//! Rational interval enclosures with outward dyadic rounding.

use std::fmt;

use num_bigint::Sign;
use num_traits::{One, Signed, Zero};

use crate::model::{Int, Rat};

/// Significant bits kept after each rounding step.
pub const PRECISION_BITS: u64 = 256;

/// Fifty decimals of pi, truncated; pi lies in `[PI_DIGITS, PI_DIGITS + 10^-50]`.
const PI_DIGITS: &str = "314159265358979323846264338327950288419716939937510";

/// Closed interval `[lo, hi]` that contains the exact value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

fn pow2(e: u64) -> Int {
    Int::one() << e
}

/// Rounds toward minus infinity (`up = false`) or plus infinity to
/// `PRECISION_BITS` significant bits.
fn round_dyadic(v: &Rat, up: bool) -> Rat {
    if v.is_zero() {
        return v.clone();
    }
    let num_bits = v.numer().bits() as i64;
    let den_bits = v.denom().bits() as i64;
    // Scale so that the integer part carries about PRECISION_BITS bits.
    let shift = PRECISION_BITS as i64 - (num_bits - den_bits);
    let scale = if shift >= 0 {
        Rat::from_integer(pow2(shift as u64))
    } else {
        Rat::new(Int::one(), pow2((-shift) as u64))
    };
    let scaled = v * &scale;
    let r = if up { scaled.ceil() } else { scaled.floor() };
    r / scale
}

impl Interval {
    pub fn exact(v: Rat) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rat) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    fn rounded(lo: Rat, hi: Rat) -> Self {
        Interval {
            lo: round_dyadic(&lo, false),
            hi: round_dyadic(&hi, true),
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Self::rounded(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::rounded(lo, hi)
    }

    pub fn mul_rat(&self, r: &Rat) -> Interval {
        self.mul(&Interval::exact(r.clone()))
    }

    /// Reciprocal of an interval that excludes zero.
    pub fn recip(&self) -> Interval {
        assert!(self.lo.is_positive() || self.hi.is_negative(), "interval contains zero");
        Self::rounded(self.hi.recip(), self.lo.recip())
    }

    pub fn powi(&self, e: usize) -> Interval {
        let mut acc = Interval::exact(Rat::one());
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Square root of a nonnegative interval.
    pub fn sqrt(&self) -> Interval {
        assert!(!self.lo.is_negative(), "square root of a negative interval");
        Interval {
            lo: sqrt_bound(&self.lo, false),
            hi: sqrt_bound(&self.hi, true),
        }
    }

    /// `e^x` for an exact rational `0 <= x <= 1` by its Taylor series; the
    /// tail after the term `x^k/k!` is at most twice that term once `k >= 2`.
    pub fn exp_small(x: &Rat) -> Interval {
        assert!(!x.is_negative() && *x <= Rat::one());
        let tol = Rat::new(Int::one(), pow2(PRECISION_BITS + 8));
        let mut term = Rat::one();
        let mut sum = Rat::one();
        let mut k = 0u64;
        loop {
            k += 1;
            term = round_dyadic(&(term * x / Rat::from_integer(Int::from(k))), true);
            sum += &term;
            if k >= 2 && term <= tol {
                break;
            }
        }
        // Lower end: partial sums of positive terms rounded down.
        let mut lo_term = Rat::one();
        let mut lo = Rat::one();
        for j in 1..=k {
            lo_term = round_dyadic(&(lo_term * x / Rat::from_integer(Int::from(j))), false);
            lo += &lo_term;
        }
        let hi = sum + Rat::from_integer(Int::from(2)) * term;
        Self::rounded(lo, hi)
    }

    pub fn pi() -> Interval {
        let num: Int = PI_DIGITS.parse().expect("digits");
        let den = num_traits::pow(Int::from(10), PI_DIGITS.len() - 1);
        let lo = Rat::new(num.clone(), den.clone());
        let hi = Rat::new(num + Int::one(), den);
        Interval { lo, hi }
    }

    pub fn e() -> Interval {
        Self::exp_small(&Rat::one())
    }

    /// Decimal rendering of the upper end, rounded up to `digits` places.
    pub fn upper_decimal(&self, digits: usize) -> String {
        decimal(&self.hi, digits, true)
    }

    pub fn lower_decimal(&self, digits: usize) -> String {
        decimal(&self.lo, digits, false)
    }

    pub fn to_f64(&self) -> f64 {
        self.upper_decimal(17).parse().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower_decimal(6), self.upper_decimal(6))
    }
}

fn sqrt_bound(v: &Rat, up: bool) -> Rat {
    if v.is_zero() {
        return Rat::zero();
    }
    // sqrt(v) = sqrt(v * 4^k) / 2^k with enough integer bits in v * 4^k.
    let mag = v.numer().bits() as i64 - v.denom().bits() as i64;
    let k = ((2 * PRECISION_BITS as i64 - mag) / 2).max(0) as u64;
    let scaled = v * Rat::from_integer(pow2(2 * k));
    let s = if up {
        let c = scaled.ceil().to_integer();
        let r = c.sqrt();
        if &r * &r == c { r } else { r + Int::one() }
    } else {
        scaled.floor().to_integer().sqrt()
    };
    Rat::new(s, pow2(k))
}

/// Fixed-point decimal string of a rational, directed rounding.
pub fn decimal(v: &Rat, digits: usize, up: bool) -> String {
    let scale = num_traits::pow(Int::from(10), digits);
    let scaled = v * Rat::from_integer(scale.clone());
    let r = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let neg = r.sign() == Sign::Minus;
    let mag = r.abs();
    let int_part = &mag / &scale;
    let frac = (&mag % &scale).to_string();
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{}{frac}", "0".repeat(digits - frac.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{rat, rat_frac};

    #[test]
    fn constants_enclose_known_values() {
        let pi = Interval::pi();
        assert!(pi.lo() > &rat_frac(3141592653589793, 1000000000000000));
        assert!(pi.hi() < &rat_frac(3141592653589794, 1000000000000000));
        let e = Interval::e();
        assert!(e.lo() > &rat_frac(2718281828459045, 1000000000000000));
        assert!(e.hi() < &rat_frac(2718281828459046, 1000000000000000));
        assert!(e.width() < Rat::new(Int::one(), pow2(200)));
    }

    #[test]
    fn sqrt_and_powers() {
        let two = Interval::exact(rat(2)).sqrt();
        assert!(two.lo() * two.lo() <= rat(2) && two.hi() * two.hi() >= rat(2));
        assert_eq!(Interval::exact(rat(4)).sqrt(), Interval::exact(rat(2)));
        let p = Interval::exact(rat_frac(3, 2)).powi(5);
        assert!(p.contains(&rat_frac(243, 32)));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal(&rat_frac(1, 3), 3, false), "0.333");
        assert_eq!(decimal(&rat_frac(1, 3), 3, true), "0.334");
        assert_eq!(decimal(&rat_frac(-5, 4), 1, false), "-1.3");
        assert_eq!(decimal(&rat(7), 0, true), "7");
        assert_eq!(decimal(&rat_frac(1, 100), 3, true), "0.010");
    }
}
