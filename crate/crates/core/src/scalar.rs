//! Scalar abstraction for the chain-level linear algebra.
//!
//! The torsion engine runs over any field implementing [`Scalar`]. Three
//! backends are provided:
//!
//! * [`Rat`] (`num_rational::BigRational`) — exact rational arithmetic,
//!   the default for every chain-level test;
//! * [`crate::sqrtext::SqrtExt`] — exact elements of `Q(sqrt(d_1), ...)`,
//!   for homology bases whose entries are rational multiples of square
//!   roots of rationals;
//! * `f64` — for bases with transcendental entries (`sqrt(pi sin a)` and
//!   friends), where pivoting uses a relative threshold.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// Field operations required by the torsion engine.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    /// Exact backends report zero exactly; `f64` reports true for
    /// magnitudes below `ZERO_EPS`.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;

    /// Pivot selection key; the elimination picks the entry with the
    /// largest key in the current column.
    fn pivot_size(&self) -> f64 {
        self.to_f64().abs()
    }

    /// `ln |self|`, robust against overflow of the f64 conversion.
    fn ln_abs(&self) -> f64 {
        self.to_f64().abs().ln()
    }
}

/// Zero threshold for the `f64` backend. The complexes handled here are
/// tiny and well conditioned; entries of honest zeros are exact or below
/// 1e-13 after a handful of operations.
pub const ZERO_EPS: f64 = 1e-9;

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        self.abs() < ZERO_EPS
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        rat_to_f64(self)
    }
    fn ln_abs(&self) -> f64 {
        big_ln(self.numer()) - big_ln(self.denom())
    }
}

/// Lossy conversion that stays finite for moderately large ratios.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let s = big_ln(r.numer()) - big_ln(r.denom());
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        sign * s.exp()
    })
}

/// `ln |n|` for a big integer, via the top 64 bits of the magnitude.
pub fn big_ln(n: &BigInt) -> f64 {
    let mag = n.magnitude();
    if mag.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = mag.bits();
    if bits <= 53 {
        return mag.to_f64().expect("small magnitude fits f64").ln();
    }
    let shift = bits - 53;
    let top = (mag >> shift).to_f64().expect("53-bit mantissa fits f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Parse `"p/q"` or `"p"` into an exact rational.
pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if Zero::is_zero(&q) {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(p))
        }
    }
}

/// Render a rational as `"p/q"` (or `"p"` when the denominator is one).
pub fn rat_to_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn big_ln_matches_f64_in_range() {
        for n in [1i64, 2, 720, 1 << 40] {
            let b = BigInt::from(n);
            assert!((big_ln(&b) - (n as f64).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn big_ln_survives_huge_values() {
        let b = BigInt::from(10).pow(400);
        let expected = 400.0 * std::f64::consts::LN_10;
        assert!((big_ln(&b) - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn rat_string_round_trip() {
        for s in ["3/4", "-7/2", "5", "0"] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_to_str(&r), s);
        }
        assert!(rat_from_str("1/0").is_none());
        assert!(rat_from_str("x").is_none());
    }

    #[test]
    fn rat_ln_abs_huge() {
        let r = Rat::new(BigInt::from(10).pow(500), BigInt::from(3));
        let expected = 500.0 * std::f64::consts::LN_10 - 3f64.ln();
        assert!((Scalar::ln_abs(&r) - expected).abs() < 1e-6);
    }
}
