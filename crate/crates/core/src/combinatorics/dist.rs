use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{rat_int, ExactPolynomial};
use super::triangle::{triangle, Kind};
use crate::complex::Complex;
use crate::error::{domain, Error, Result};
use crate::ext::Ext;
use crate::family::Family;
use crate::real::{ln_biguint, Real};

/// Exact law of `X^{(i)}_{n,theta}` on `{1..deg}`.
///
/// Probabilities are stored as integer weights over one positive common
/// denominator, so `pmf(k) = weights[k] / denom` and the weights sum to
/// `denom` exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteDist {
    family: Family,
    n: usize,
    theta: BigRational,
    relaxed: bool,
    weights: Vec<BigInt>,
    denom: BigInt,
}

fn check_theta(family: Family, n: usize, theta: &BigRational, relaxed: bool) -> Result<()> {
    if n < 1 {
        return Err(domain!("n must be at least 1"));
    }
    if !theta.is_positive() {
        return Err(domain!("theta must be positive, got {theta}"));
    }
    if family == Family::Third && !relaxed && !theta.is_integer() {
        let lower = rat_int(n as i64 - 1);
        if *theta <= lower {
            return Err(domain!(
                "family 3 needs integer theta or theta > n - 1 = {}, got {theta} (use relaxed mode)",
                n - 1
            ));
        }
    }
    Ok(())
}

fn powers(b: &BigInt, n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = BigInt::one();
    for _ in 0..=n {
        out.push(acc.clone());
        acc *= b;
    }
    out
}

impl DiscreteDist {
    /// Builds the law; `relaxed` admits family-3 parameters whose weights may be signed.
    pub fn new(family: Family, n: usize, theta: &BigRational, relaxed: bool) -> Result<Self> {
        check_theta(family, n, theta, relaxed)?;
        let p = theta.numer().clone();
        let q = theta.denom().clone();
        let pp = powers(&p, n);
        let qp = powers(&q, n);
        let mut weights: Vec<BigInt> = Vec::with_capacity(n + 1);
        weights.push(BigInt::zero());
        let denom;
        match family {
            Family::First | Family::Second => {
                let kind = if family == Family::First {
                    Kind::First
                } else {
                    Kind::Second
                };
                let row = triangle(kind).row(n)?;
                let mut total = BigInt::zero();
                for k in 1..=n {
                    let w = BigInt::from(row[k].clone()) * &pp[k] * &qp[n - k];
                    total += &w;
                    weights.push(w);
                }
                denom = total;
            }
            Family::Third => {
                let row = triangle(Kind::Second).row(n)?;
                let mut falling = BigInt::one();
                for k in 1..=n {
                    falling *= &p - &q * BigInt::from(k - 1);
                    weights.push(BigInt::from(row[k].clone()) * &falling * &qp[n - k]);
                }
                denom = pp[n].clone();
            }
        }
        while weights.len() > 1 && weights.last().is_some_and(|w| w.is_zero()) {
            weights.pop();
        }
        Ok(DiscreteDist {
            family,
            n,
            theta: theta.clone(),
            relaxed,
            weights,
            denom,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> &BigRational {
        &self.theta
    }

    pub fn relaxed(&self) -> bool {
        self.relaxed
    }

    /// Largest `k` with nonzero mass.
    pub fn degree(&self) -> usize {
        self.weights.len() - 1
    }

    /// Integer weights indexed by `k` (entry 0 is zero).
    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn pmf(&self, k: usize) -> BigRational {
        match self.weights.get(k) {
            Some(w) => BigRational::new(w.clone(), self.denom.clone()),
            None => BigRational::zero(),
        }
    }

    pub fn pmf_f64(&self, k: usize) -> f64 {
        match self.weights.get(k) {
            Some(w) => crate::real::ratio_to_f64(w, &self.denom),
            None => 0.0,
        }
    }

    /// `pmf(k)` for every `k` in `0..=degree`, as doubles.
    pub fn pmf_vec_f64(&self) -> Vec<f64> {
        (0..=self.degree()).map(|k| self.pmf_f64(k)).collect()
    }

    /// The generating polynomial `sum_k pmf(k) t^k`.
    pub fn gen_poly(&self) -> ExactPolynomial {
        ExactPolynomial::new((0..=self.degree()).map(|k| self.pmf(k)).collect())
    }

    /// Exact mean and variance.
    pub fn moments(&self) -> (BigRational, BigRational) {
        let mut s1 = BigInt::zero();
        let mut s2 = BigInt::zero();
        for (k, w) in self.weights.iter().enumerate() {
            let kb = BigInt::from(k);
            let t = w * &kb;
            s2 += &t * &kb;
            s1 += t;
        }
        let mean = BigRational::new(s1, self.denom.clone());
        let second = BigRational::new(s2, self.denom.clone());
        let var = second - &mean * &mean;
        (mean, var)
    }

    /// Natural log of `pmf(k)` at `bits` of precision.
    pub fn log_pmf(&self, k: usize, bits: usize) -> Result<Ext> {
        let w = self.weights.get(k).filter(|w| w.is_positive()).ok_or_else(|| {
            domain!("k = {k} is outside the support of the law")
        })?;
        let like = Ext::new(0.0, bits);
        Ok(ln_biguint(&like, w.magnitude()) - ln_biguint(&like, self.denom.magnitude()))
    }

    /// Principal log of `E e^{zX}` at `bits` of precision.
    ///
    /// The sum is evaluated by Horner's rule in extended-exponent arithmetic,
    /// so it never overflows; a precision error is returned when cancellation
    /// between terms consumes the working mantissa.
    pub fn log_mgf(&self, z: &Complex<Ext>, bits: usize) -> Result<Complex<Ext>> {
        if bits < 64 {
            return Err(domain!("precision must be at least 64 bits, got {bits}"));
        }
        if z.re.is_zero() && z.im.is_zero() {
            let zero = Ext::new(0.0, bits);
            return Ok(Complex::new(zero.clone(), zero));
        }
        let guard = bits + 32;
        let z = Complex::new(z.re.clone().with_bits(guard), z.im.clone().with_bits(guard));
        let t = z.exp();
        let rt = z.re.exp();
        let like = Ext::new(0.0, guard);
        let mut acc = z.zero_like();
        let mut mag = like.clone();
        for w in self.weights.iter().rev() {
            let c = like.from_biguint(w.magnitude());
            let c = if w.sign() == Sign::Minus { -c } else { c };
            acc = acc * t.clone();
            acc.re = acc.re + c.clone();
            mag = mag * rt.clone() + c.abs();
        }
        let modulus = acc.abs();
        if modulus.is_zero() {
            return Err(Error::Precision(alloc::format!(
                "moment generating function vanished at {} bits",
                bits
            )));
        }
        let lost = (mag.clone() / modulus.clone()).ln().to_f64() / core::f64::consts::LN_2;
        if !(lost < bits as f64 - 24.0) {
            return Err(Error::Precision(alloc::format!(
                "cancellation of about {lost:.0} bits in the moment generating function at {bits} bits"
            )));
        }
        let denom = like.from_biguint(self.denom.magnitude());
        let l = (acc / Complex::real(denom)).ln();
        Ok(Complex::new(l.re.with_bits(bits), l.im.with_bits(bits)))
    }

    /// [`Self::log_mgf`] for a double-precision argument.
    pub fn log_mgf_c64(&self, z: crate::C64, bits: usize) -> Result<Complex<Ext>> {
        let z = Complex::new(Ext::new(z.re, bits), Ext::new(z.im, bits));
        self.log_mgf(&z, bits)
    }
}

/// `DiscreteDist::new` in probabilistic mode.
pub fn dist(family: Family, n: usize, theta: &BigRational) -> Result<DiscreteDist> {
    DiscreteDist::new(family, n, theta, false)
}

/// The generating polynomial of the law.
pub fn gen_poly(family: Family, n: usize, theta: &BigRational, relaxed: bool) -> Result<ExactPolynomial> {
    Ok(DiscreteDist::new(family, n, theta, relaxed)?.gen_poly())
}

fn stirling_poly(kind: Kind, n: usize) -> Result<ExactPolynomial> {
    let row = triangle(kind).row(n)?;
    Ok(ExactPolynomial::new(
        row.iter().map(|c| rat_int(BigInt::from(c.clone()))).collect(),
    ))
}

/// `S_n(x) = x (x+1) ... (x+n-1)`, the first-kind generating polynomial.
pub fn rising_poly(n: usize) -> Result<ExactPolynomial> {
    stirling_poly(Kind::First, n)
}

/// Touchard polynomial `T_n(x) = sum_k S2(n,k) x^k`.
pub fn touchard(n: usize) -> Result<ExactPolynomial> {
    stirling_poly(Kind::Second, n)
}

/// `T_n(x)` at a rational point.
pub fn touchard_eval(n: usize, x: &BigRational) -> Result<BigRational> {
    Ok(touchard(n)?.eval(x))
}

/// `n` with `n * theta` an integer, as a rational.
pub fn tilted(n: usize, vartheta: &BigRational) -> BigRational {
    vartheta * rat_int(n as i64)
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"0.25"` as an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || domain!("cannot parse {s:?} as a rational number");
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(a, b));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int, frac) = match mant.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mant, ""),
    };
    if frac.chars().any(|c| !c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = alloc::format!("{int}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let pow = num_traits::pow(ten, shift.unsigned_abs() as usize);
    Ok(if shift >= 0 {
        BigRational::from_integer(num * pow)
    } else {
        BigRational::new(num, pow)
    })
}

/// Nearest double to an exact rational.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    crate::real::ratio_to_f64(r.numer(), r.denom())
}

/// `theta` as a machine integer when it is one.
pub fn as_usize(r: &BigRational) -> Option<usize> {
    if r.is_integer() {
        r.to_integer().to_usize()
    } else {
        None
    }
}
