//! Exact arithmetic in `Q(sqrt(d_1), ..., sqrt(d_k))`.
//!
//! An element is a finite sum `sum_d c_d * sqrt(d)` with rational
//! coefficients and squarefree positive integer radicands `d`. Products
//! reduce with `sqrt(d1) sqrt(d2) = g sqrt(d1 d2 / g^2)`, `g = gcd`, which
//! keeps radicands squarefree without any factoring. Inversion conjugates
//! away one prime at a time, so the full field operations stay exact.
//!
//! This covers the homology bases that arise here: rational cycle vectors
//! scaled by square roots of rationals. Transcendental scales (`sqrt(pi
//! sin a)` etc.) go through the `f64` backend instead.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{Rat, Scalar};

/// Element of a multi-quadratic extension of the rationals.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SqrtExt {
    /// squarefree radicand -> coefficient; no zero coefficients stored,
    /// radicand 1 holds the rational part.
    terms: BTreeMap<u64, Rat>,
}

impl SqrtExt {
    pub fn from_rat(r: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&r) {
            terms.insert(1, r);
        }
        SqrtExt { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// `c * sqrt(d)` with `d` an arbitrary positive integer; the square
    /// part of `d` is folded into the coefficient.
    pub fn sqrt_term(c: Rat, d: u64) -> Self {
        assert!(d > 0, "radicand must be positive");
        let (square, free) = split_square(d);
        let coeff = c * Rat::from_integer(BigInt::from(square));
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&coeff) {
            terms.insert(free, coeff);
        }
        SqrtExt { terms }
    }

    /// `sqrt(p/q)` for a positive rational, as `sqrt(p q) / q`.
    pub fn sqrt_of_rat(r: &Rat) -> Self {
        assert!(r.is_positive(), "radicand must be positive");
        let p = r.numer().to_u64().expect("radicand numerator fits u64");
        let q = r.denom().to_u64().expect("radicand denominator fits u64");
        Self::sqrt_term(Rat::new(BigInt::one(), BigInt::from(q)), p * q)
    }

    pub fn rational_part(&self) -> Rat {
        self.terms.get(&1).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&d| d == 1)
    }

    fn insert(terms: &mut BTreeMap<u64, Rat>, d: u64, c: Rat) {
        if Zero::is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(d) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if Zero::is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Smallest prime dividing any radicand, if one exists.
    fn some_prime(&self) -> Option<u64> {
        let mut best: Option<u64> = None;
        for &d in self.terms.keys() {
            if d > 1 {
                let p = smallest_prime_factor(d);
                best = Some(best.map_or(p, |b| b.min(p)));
            }
        }
        best
    }

    /// Conjugate with respect to `sqrt(p)`: negate every term whose
    /// radicand is divisible by the prime `p`.
    fn conjugate(&self, p: u64) -> Self {
        let mut terms = BTreeMap::new();
        for (&d, c) in &self.terms {
            let c = if d % p == 0 { -c.clone() } else { c.clone() };
            terms.insert(d, c);
        }
        SqrtExt { terms }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.terms.is_empty(), "division by zero in SqrtExt");
        let mut num = SqrtExt::from_int(1);
        let mut den = self.clone();
        while let Some(p) = den.some_prime() {
            let conj = den.conjugate(p);
            num = num.mul(&conj);
            den = den.mul(&conj);
        }
        let r = den.rational_part();
        num.scale(&r.recip())
    }

    fn scale(&self, r: &Rat) -> Self {
        let mut terms = BTreeMap::new();
        for (&d, c) in &self.terms {
            Self::insert(&mut terms, d, c * r);
        }
        SqrtExt { terms }
    }
}

/// `(s, f)` with `d = s^2 f`, `f` squarefree. Trial division; radicands in
/// practice stay tiny.
fn split_square(d: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut free = 1u64;
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0u32;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    free *= n;
    (square, free)
}

fn smallest_prime_factor(d: u64) -> u64 {
    if d % 2 == 0 {
        return 2;
    }
    let mut p = 3u64;
    while p * p <= d {
        if d % p == 0 {
            return p;
        }
        p += 2;
    }
    d
}

impl Scalar for SqrtExt {
    const EXACT: bool = true;

    fn zero() -> Self {
        SqrtExt::default()
    }
    fn one() -> Self {
        SqrtExt::from_int(1)
    }
    fn from_i64(n: i64) -> Self {
        SqrtExt::from_int(n)
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&d, c) in &rhs.terms {
            Self::insert(&mut terms, d, c.clone());
        }
        SqrtExt { terms }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (&d1, c1) in &self.terms {
            for (&d2, c2) in &rhs.terms {
                let g = d1.gcd(&d2);
                let rad = (d1 / g) * (d2 / g);
                let coeff = c1 * c2 * Rat::from_integer(BigInt::from(g));
                Self::insert(&mut terms, rad, coeff);
            }
        }
        SqrtExt { terms }
    }

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(&d, c)| (d, -c.clone())).collect();
        SqrtExt { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&d, c)| crate::scalar::rat_to_f64(c) * (d as f64).sqrt())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(d: u64) -> SqrtExt {
        SqrtExt::sqrt_term(Rat::from_integer(BigInt::one()), d)
    }

    #[test]
    fn products_stay_squarefree() {
        let x = sq(6).mul(&sq(10));
        // sqrt(6) sqrt(10) = 2 sqrt(15)
        assert_eq!(x, SqrtExt::sqrt_term(Rat::from_integer(BigInt::from(2)), 15));
        assert_eq!(sq(8), SqrtExt::sqrt_term(Rat::from_integer(BigInt::from(2)), 2));
        assert_eq!(sq(2).mul(&sq(2)), SqrtExt::from_int(2));
    }

    #[test]
    fn inverse_of_mixed_radical_sum() {
        // x = 1 + sqrt(2) + sqrt(3)
        let x = SqrtExt::from_int(1).add(&sq(2)).add(&sq(3));
        let y = x.inv();
        assert_eq!(x.mul(&y), SqrtExt::from_int(1));
        let numeric = 1.0 / (1.0 + 2f64.sqrt() + 3f64.sqrt());
        assert!((y.to_f64() - numeric).abs() < 1e-14);
    }

    #[test]
    fn field_axioms_on_samples() {
        let a = sq(2).add(&SqrtExt::from_int(3));
        let b = sq(6).sub(&sq(3));
        let c = SqrtExt::from_rat(Rat::new(BigInt::from(2), BigInt::from(5)));
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        assert_eq!(lhs, rhs);
        assert_eq!(a.div(&b).mul(&b), a);
    }

    #[test]
    fn sqrt_of_rational() {
        let r = Rat::new(BigInt::from(3), BigInt::from(2));
        let x = SqrtExt::sqrt_of_rat(&r);
        assert!((x.to_f64() - 1.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(x.mul(&x), SqrtExt::from_rat(r));
    }
}
