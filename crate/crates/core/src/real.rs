//! Scalar abstraction shared by the double-precision and extended-precision
//! code paths.
//!
//! Every transcendental routine in the crate (Lambert W, the mod-phi limit
//! functions, log-MGFs) is written once against [`Real`] and instantiated
//! with `f64` for speed or with [`crate::ext::Ext`] when the caller asks for
//! a configurable mantissa.

use core::fmt::Debug;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigUint;

pub trait Real:
    Clone
    + PartialOrd
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// A constant carrying the same working precision as `self`.
    fn lit(&self, v: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Mantissa width in bits.
    fn precision(&self) -> usize;
    /// Unit roundoff `2^-precision`.
    fn epsilon(&self) -> Self;
    fn pi(&self) -> Self;

    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan2(&self, x: &Self) -> Self;
    fn abs(&self) -> Self;
    fn is_finite(&self) -> bool;

    /// `n` rounded to the working precision (may overflow to infinity for `f64`).
    fn from_biguint(&self, n: &BigUint) -> Self;
    /// `self * 2^k`.
    fn mul_pow2(&self, k: i64) -> Self;

    fn zero(&self) -> Self {
        self.lit(0.0)
    }
    fn one(&self) -> Self {
        self.lit(1.0)
    }
    fn is_zero(&self) -> bool {
        *self == self.zero()
    }
    fn e(&self) -> Self {
        self.one().exp()
    }
    fn sqr(&self) -> Self {
        self.clone() * self.clone()
    }
    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
    fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Real for f64 {
    fn lit(&self, v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn precision(&self) -> usize {
        53
    }
    fn epsilon(&self) -> Self {
        f64::EPSILON / 2.0
    }
    fn pi(&self) -> Self {
        core::f64::consts::PI
    }
    fn exp(&self) -> Self {
        libm::exp(*self)
    }
    fn ln(&self) -> Self {
        libm::log(*self)
    }
    fn sqrt(&self) -> Self {
        libm::sqrt(*self)
    }
    fn sin(&self) -> Self {
        libm::sin(*self)
    }
    fn cos(&self) -> Self {
        libm::cos(*self)
    }
    fn atan2(&self, x: &Self) -> Self {
        libm::atan2(*self, *x)
    }
    fn abs(&self) -> Self {
        libm::fabs(*self)
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn from_biguint(&self, n: &BigUint) -> Self {
        biguint_to_f64(n)
    }
    fn mul_pow2(&self, k: i64) -> Self {
        libm::scalbn(*self, k.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }
}

/// Correctly truncated conversion of a big integer to `f64` (infinity on overflow).
pub fn biguint_to_f64(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        let d = n.iter_u64_digits().next().unwrap_or(0);
        return d as f64;
    }
    let shift = bits - 64;
    let top: u64 = (n >> shift).iter_u64_digits().next().unwrap_or(0);
    libm::scalbn(top as f64, shift.min(i32::MAX as u64) as i32)
}

/// Natural logarithm of a positive big integer at the precision of `like`.
///
/// Only the leading `precision + 64` bits are converted, so the result never
/// overflows even when the integer has millions of bits.
pub fn ln_biguint<R: Real>(like: &R, n: &BigUint) -> R {
    let keep = like.precision() as u64 + 64;
    let bits = n.bits();
    if bits <= keep {
        return like.from_biguint(n).ln();
    }
    let shift = bits - keep;
    let top = n >> shift;
    let ln2 = like.lit(2.0).ln();
    like.from_biguint(&top).ln() + ln2 * like.lit(shift as f64)
}

/// Ratio `a / b` of two big integers as an `f64`, without intermediate overflow.
pub fn ratio_to_f64(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> f64 {
    use num_bigint::Sign;
    if a.sign() == Sign::NoSign {
        return 0.0;
    }
    let neg = (a.sign() == Sign::Minus) != (b.sign() == Sign::Minus);
    let (am, bm) = (a.magnitude(), b.magnitude());
    // Scale so the quotient carries 64 significant bits.
    let shift = bm.bits() as i64 - am.bits() as i64 + 64;
    let q = if shift >= 0 {
        (am << (shift as u64)) / bm
    } else {
        (am >> ((-shift) as u64)) / bm
    };
    let v = libm::scalbn(biguint_to_f64(&q), (-shift).clamp(-1_000_000, 1_000_000) as i32);
    if neg {
        -v
    } else {
        v
    }
}
