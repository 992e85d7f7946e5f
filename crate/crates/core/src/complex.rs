use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::real::Real;

/// A complex number over any [`Real`] scalar.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Complex<R> {
    pub re: R,
    pub im: R,
}

pub type C64 = Complex<f64>;

impl<R: Real> Complex<R> {
    pub fn new(re: R, im: R) -> Self {
        Complex { re, im }
    }

    pub fn real(re: R) -> Self {
        let im = re.zero();
        Complex { re, im }
    }

    pub fn lit(&self, re: f64, im: f64) -> Self {
        Complex::new(self.re.lit(re), self.re.lit(im))
    }

    pub fn zero_like(&self) -> Self {
        self.lit(0.0, 0.0)
    }

    pub fn one_like(&self) -> Self {
        self.lit(1.0, 0.0)
    }

    pub fn i_like(&self) -> Self {
        self.lit(0.0, 1.0)
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> R {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(&self) -> R {
        let (a, b) = (self.re.abs(), self.im.abs());
        let (big, small) = if a > b { (a, b) } else { (b, a) };
        if big.is_zero() {
            return big;
        }
        let r = small / big.clone();
        big * (r.one() + r.sqr()).sqrt()
    }

    pub fn arg(&self) -> R {
        self.im.atan2(&self.re)
    }

    pub fn scale(&self, k: R) -> Self {
        Complex::new(self.re.clone() * k.clone(), self.im.clone() * k)
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        Complex::new(m.clone() * self.im.cos(), m * self.im.sin())
    }

    /// Principal logarithm, `Im` in `(-pi, pi]`.
    pub fn ln(&self) -> Self {
        Complex::new(self.abs().ln(), self.arg())
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let r = self.abs();
        if r.is_zero() {
            return self.zero_like();
        }
        let half = self.re.lit(0.5);
        let a = ((r.clone() + self.re.abs()) * half).sqrt();
        let b = self.im.abs() / (a.clone() + a.clone());
        let neg_im = self.im < self.re.zero();
        if self.re >= self.re.zero() {
            Complex::new(a, if neg_im { -b } else { b })
        } else {
            Complex::new(b, if neg_im { -a } else { a })
        }
    }

    pub fn recip(&self) -> Self {
        self.one_like() / self.clone()
    }

    pub fn powi(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            n >>= 1;
        }
        acc
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_c64(&self) -> C64 {
        Complex::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add_re(&self, x: R) -> Self {
        Complex::new(self.re.clone() + x, self.im.clone())
    }
}

impl C64 {
    pub const fn c(re: f64, im: f64) -> Self {
        Complex { re, im }
    }
}

impl<R: Real> Add for Complex<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Complex::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<R: Real> Sub for Complex<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Complex::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<R: Real> Mul for Complex<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Complex::new(re, im)
    }
}

impl<R: Real> Div for Complex<R> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        // Smith's algorithm keeps intermediate magnitudes bounded.
        let (c, d) = (rhs.re, rhs.im);
        if c.abs() >= d.abs() {
            let r = d.clone() / c.clone();
            let den = c + d * r.clone();
            Complex::new(
                (self.re.clone() + self.im.clone() * r.clone()) / den.clone(),
                (self.im - self.re * r) / den,
            )
        } else {
            let r = c.clone() / d.clone();
            let den = c * r.clone() + d;
            Complex::new(
                (self.re.clone() * r.clone() + self.im.clone()) / den.clone(),
                (self.im * r - self.re) / den,
            )
        }
    }
}

impl<R: Real> Neg for Complex<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Complex::new(-self.re, -self.im)
    }
}
