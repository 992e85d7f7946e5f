//! Extended-precision reals backed by `astro-float`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigUint;

use crate::real::Real;

const RM: RoundingMode = RoundingMode::ToEven;

/// Default mantissa width used by the extended-precision code paths.
pub const DEFAULT_BITS: usize = 256;

static CONSTS: spin::Mutex<Vec<Consts>> = spin::Mutex::new(Vec::new());

/// Runs `f` with a constants cache borrowed from a shared pool.
fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    let cached = CONSTS.lock().pop();
    let mut cc = match cached {
        Some(cc) => cc,
        None => Consts::new().expect("allocating astro-float constants cache"),
    };
    let out = f(&mut cc);
    CONSTS.lock().push(cc);
    out
}

/// A binary floating-point number with a caller-chosen mantissa width.
///
/// Exponents span the full `i32` range, so values such as `e^{10^6}` are
/// representable without scaling.
#[derive(Clone)]
pub struct Ext {
    v: BigFloat,
    p: usize,
}

impl Ext {
    pub fn new(v: f64, bits: usize) -> Self {
        Ext {
            v: BigFloat::from_f64(v, bits),
            p: bits,
        }
    }

    pub fn from_i64(v: i64, bits: usize) -> Self {
        Ext {
            v: BigFloat::from_i64(v, bits),
            p: bits,
        }
    }

    pub fn from_biguint_bits(n: &BigUint, bits: usize) -> Self {
        let digits: Vec<u64> = n.iter_u64_digits().collect();
        if digits.is_empty() {
            return Ext::new(0.0, bits);
        }
        // Only the leading words influence a `bits`-wide rounding.
        let keep = bits / 64 + 2;
        let start = digits.len().saturating_sub(keep);
        let top = &digits[start..];
        let e = 64 * digits.len() as i64;
        let mut v = BigFloat::from_words(top, Sign::Pos, e as i32);
        if v.set_precision(bits, RM).is_err() {
            v = BigFloat::from_f64(f64::NAN, bits);
        }
        Ext { v, p: bits }
    }

    /// Exact big rational `a / b` rounded to `bits`.
    pub fn from_ratio(a: &num_bigint::BigInt, b: &num_bigint::BigInt, bits: usize) -> Self {
        let sa = a.sign() == num_bigint::Sign::Minus;
        let sb = b.sign() == num_bigint::Sign::Minus;
        let x = Ext::from_biguint_bits(a.magnitude(), bits + 8)
            / Ext::from_biguint_bits(b.magnitude(), bits + 8);
        let x = x.with_bits(bits);
        if sa != sb {
            -x
        } else {
            x
        }
    }

    pub fn bits(&self) -> usize {
        self.p
    }

    pub fn with_bits(mut self, bits: usize) -> Self {
        let _ = self.v.set_precision(bits, RM);
        self.p = bits;
        self
    }

    pub fn inner(&self) -> &BigFloat {
        &self.v
    }

    /// Binary exponent `e` with `2^(e-1) <= |self| < 2^e`; `None` for zero or non-finite.
    pub fn exponent(&self) -> Option<i64> {
        if self.v.is_zero() {
            return None;
        }
        self.v.exponent().map(|e| e as i64)
    }

    fn wrap(&self, v: BigFloat) -> Self {
        Ext { v, p: self.p }
    }
}

fn prec(a: &Ext, b: &Ext) -> usize {
    a.p.max(b.p)
}

impl Add for Ext {
    type Output = Ext;
    fn add(self, rhs: Ext) -> Ext {
        let p = prec(&self, &rhs);
        Ext {
            v: self.v.add(&rhs.v, p, RM),
            p,
        }
    }
}

impl Sub for Ext {
    type Output = Ext;
    fn sub(self, rhs: Ext) -> Ext {
        let p = prec(&self, &rhs);
        Ext {
            v: self.v.sub(&rhs.v, p, RM),
            p,
        }
    }
}

impl Mul for Ext {
    type Output = Ext;
    fn mul(self, rhs: Ext) -> Ext {
        let p = prec(&self, &rhs);
        Ext {
            v: self.v.mul(&rhs.v, p, RM),
            p,
        }
    }
}

impl Div for Ext {
    type Output = Ext;
    fn div(self, rhs: Ext) -> Ext {
        let p = prec(&self, &rhs);
        Ext {
            v: self.v.div(&rhs.v, p, RM),
            p,
        }
    }
}

impl Neg for Ext {
    type Output = Ext;
    fn neg(self) -> Ext {
        Ext {
            v: self.v.neg(),
            p: self.p,
        }
    }
}

impl PartialEq for Ext {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.partial_cmp(&other.v)
    }
}

impl fmt::Debug for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ext({:e}, {} bits)", self.to_f64(), self.p)
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match with_consts(|cc| self.v.format(astro_float::Radix::Dec, RM, cc)) {
            Ok(s) => f.write_str(&s),
            Err(_) => write!(f, "{}", self.to_f64()),
        }
    }
}

impl Real for Ext {
    fn lit(&self, v: f64) -> Self {
        Ext::new(v, self.p)
    }

    fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.v.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if self.v.is_zero() {
            return 0.0;
        }
        let (words, _, sign, e, _) = match self.v.as_raw_parts() {
            Some(parts) => parts,
            None => return f64::NAN,
        };
        let top = *words.last().unwrap_or(&0);
        // The mantissa is normalized to [1/2, 1) with the leading word holding the top bits.
        let m = libm::scalbn(top as f64, -64);
        let e = (e as i64).clamp(-2_000, 2_000) as i32;
        let v = libm::scalbn(m, e);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    fn precision(&self) -> usize {
        self.p
    }

    fn epsilon(&self) -> Self {
        let mut one = BigFloat::from_u8(1, self.p);
        one.set_exponent(1 - self.p as i32);
        self.wrap(one)
    }

    fn pi(&self) -> Self {
        let p = self.p;
        self.wrap(with_consts(|cc| cc.pi(p, RM)))
    }

    fn exp(&self) -> Self {
        let p = self.p;
        self.wrap(with_consts(|cc| self.v.exp(p, RM, cc)))
    }

    fn ln(&self) -> Self {
        let p = self.p;
        self.wrap(with_consts(|cc| self.v.ln(p, RM, cc)))
    }

    fn sqrt(&self) -> Self {
        self.wrap(self.v.sqrt(self.p, RM))
    }

    fn sin(&self) -> Self {
        let p = self.p;
        self.wrap(with_consts(|cc| self.v.sin(p, RM, cc)))
    }

    fn cos(&self) -> Self {
        let p = self.p;
        self.wrap(with_consts(|cc| self.v.cos(p, RM, cc)))
    }

    fn atan2(&self, x: &Self) -> Self {
        let p = self.p.max(x.p);
        let y = self;
        if x.v.is_zero() {
            if y.v.is_zero() {
                return self.zero();
            }
            let half_pi = self.pi() / self.lit(2.0);
            return if y.v.is_negative() { -half_pi } else { half_pi };
        }
        let base = with_consts(|cc| y.v.div(&x.v, p + 8, RM).atan(p, RM, cc));
        let base = Ext { v: base, p };
        if x.v.is_positive() {
            base
        } else if y.v.is_negative() {
            base - self.pi()
        } else {
            base + self.pi()
        }
    }

    fn abs(&self) -> Self {
        self.wrap(self.v.abs())
    }

    fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    fn from_biguint(&self, n: &BigUint) -> Self {
        Ext::from_biguint_bits(n, self.p)
    }

    fn mul_pow2(&self, k: i64) -> Self {
        let mut v = self.v.clone();
        if let Some(e) = v.exponent() {
            if !v.is_zero() {
                let ne = (e as i64 + k).clamp(i32::MIN as i64 / 2, i32::MAX as i64 / 2);
                v.set_exponent(ne as i32);
            }
        }
        self.wrap(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_doubles() {
        for &x in &[1.0, -2.5, 1e-300, core::f64::consts::PI, 1e300, -7.0e-5] {
            assert_eq!(Ext::new(x, 128).to_f64(), x);
        }
    }

    #[test]
    fn big_integers_convert_exactly_when_they_fit() {
        let n = (BigUint::from(1u8) << 300u32) + BigUint::from(5u8);
        let x = Ext::from_biguint_bits(&n, 512);
        let back = x - Ext::new(libm::scalbn(1.0, 300), 512);
        assert_eq!(back.to_f64(), 5.0);
    }

    #[test]
    fn huge_integers_keep_leading_bits() {
        let n = BigUint::from(3u8).pow(10_000);
        let x = Ext::from_biguint_bits(&n, 128);
        let l = x.ln().to_f64();
        assert!((l - 10_000.0 * libm::log(3.0)).abs() < 1e-9);
    }

    #[test]
    fn transcendental_values() {
        let one = Ext::new(1.0, 256);
        assert!((one.exp().to_f64() - core::f64::consts::E).abs() < 1e-15);
        let y = Ext::new(-1.0, 256);
        let x = Ext::new(-1.0, 256);
        assert!((y.atan2(&x).to_f64() + 0.75 * core::f64::consts::PI).abs() < 1e-15);
        assert!((one.mul_pow2(-3).to_f64() - 0.125).abs() == 0.0);
    }

    #[test]
    fn ratio_conversion() {
        use num_bigint::BigInt;
        let r = Ext::from_ratio(&BigInt::from(-1), &BigInt::from(3), 200);
        assert!((r.to_f64() + 1.0 / 3.0).abs() < 1e-16);
    }
}
