use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense polynomial with exact rational coefficients, `coeffs[k]` multiplying `x^k`.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExactPolynomial {
    coeffs: Vec<BigRational>,
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        ExactPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn from_ints<I: Into<BigInt>>(c: impl IntoIterator<Item = I>) -> Self {
        Self::new(c.into_iter().map(|v| rat_int(v.into())).collect())
    }

    /// Monic polynomial with the given rational roots.
    pub fn from_roots(roots: &[BigRational]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            acc * Self::new(vec![-r.clone(), BigRational::one()])
        })
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `x -> p(c x)`.
    pub fn compose_scale(&self, c: &BigRational) -> Self {
        let mut pow = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Self::new(out)
    }

    /// `x -> p(-x)`.
    pub fn reflect(&self) -> Self {
        self.compose_scale(&-BigRational::one())
    }

    /// `x^n p(1/x)` for `n >= deg p`.
    pub fn reverse(&self, n: usize) -> Self {
        let mut out = vec![BigRational::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[n - k] = c.clone();
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat_int(k as i64))
                .collect(),
        )
    }

    /// Sum of the coefficients, i.e. `p(1)`.
    pub fn coeff_sum(&self) -> BigRational {
        self.coeffs.iter().sum()
    }

    /// Primitive integer polynomial with the same roots: coefficients are
    /// coprime integers with a positive leading coefficient.
    pub fn primitive(&self) -> Vec<BigInt> {
        if self.coeffs.is_empty() {
            return Vec::new();
        }
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * rat_int(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let neg = ints.last().is_some_and(|c| c.is_negative());
        for c in ints.iter_mut() {
            *c /= &g;
            if neg {
                *c = -core::mem::take(c);
            }
        }
        ints
    }
}

/// Generalized binomial coefficient `C(a, k)` for rational `a`.
pub fn binom_rat(a: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    for j in 0..k {
        acc = acc * (a - rat_int(j as i64)) / rat_int(j as i64 + 1);
    }
    acc
}

pub fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * BigUint::from(n - j) / BigUint::from(j + 1);
    }
    acc
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn add(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn sub(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn mul(self, rhs: &ExactPolynomial) -> ExactPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ExactPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPolynomial::new(out)
    }
}

impl Add for ExactPolynomial {
    type Output = ExactPolynomial;
    fn add(self, rhs: ExactPolynomial) -> ExactPolynomial {
        &self + &rhs
    }
}

impl Sub for ExactPolynomial {
    type Output = ExactPolynomial;
    fn sub(self, rhs: ExactPolynomial) -> ExactPolynomial {
        &self - &rhs
    }
}

impl Mul for ExactPolynomial {
    type Output = ExactPolynomial;
    fn mul(self, rhs: ExactPolynomial) -> ExactPolynomial {
        &self * &rhs
    }
}

impl Neg for ExactPolynomial {
    type Output = ExactPolynomial;
    fn neg(self) -> ExactPolynomial {
        ExactPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = String::new();
            let (neg, mag) = (c.is_negative(), c.abs());
            if !first {
                term.push_str(if neg { " - " } else { " + " });
            } else if neg {
                term.push('-');
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    term.push_str(&alloc::format!("{}", mag.numer()));
                } else {
                    term.push_str(&alloc::format!("({})", mag));
                }
            }
            match k {
                0 => {}
                1 => term.push('x'),
                _ => term.push_str(&alloc::format!("x^{k}")),
            }
            f.write_str(&term)?;
        }
        Ok(())
    }
}
