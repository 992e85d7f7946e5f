use alloc::vec::Vec;

use num_rational::BigRational;

use super::roots::real_roots;
use crate::combinatorics::{gen_poly, rational_to_f64, rising_poly, touchard, ExactPolynomial};
use crate::complex::C64;
use crate::error::{domain, Error, Result};
use crate::family::Family;

/// Empirical zero measure `(1/w_n) sum_x delta_{-x}` over the roots `x` of a polynomial.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RootMeasure {
    points: Vec<f64>,
    weight: f64,
}

impl RootMeasure {
    /// Measure with the given atoms (sorted here) each of mass `1 / w_n`.
    pub fn new(mut points: Vec<f64>, w_n: f64) -> Result<Self> {
        if !(w_n > 0.0 && w_n.is_finite()) {
            return Err(domain!("w_n must be positive, got {w_n}"));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(domain!("atoms must be finite"));
        }
        points.sort_by(|a, b| a.total_cmp(b));
        Ok(RootMeasure { points, weight: 1.0 / w_n })
    }

    /// Negates nonpositive roots; a root above `tol` is an integrity error.
    pub fn from_roots(roots: &[f64], w_n: f64, tol: f64) -> Result<Self> {
        if let Some(r) = roots.iter().find(|&&r| r > tol) {
            return Err(Error::Integrity(alloc::format!("positive root {r:e} in a nonpositive-rooted polynomial")));
        }
        Self::new(roots.iter().map(|&r| (-r).max(0.0)).collect(), w_n)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.points.len() as f64 * self.weight
    }

    /// Largest atom.
    pub fn max(&self) -> Option<f64> {
        self.points.last().copied()
    }

    /// Mass of `[0, x]`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.points.partition_point(|&p| p <= x) as f64 * self.weight
    }

    /// `int m(dx) / (z - x)`.
    pub fn stieltjes(&self, z: C64) -> Result<C64> {
        stieltjes_empirical(self, z)
    }
}

/// `int m(dx) / (z - x)` as the finite sum `(1/w_n) sum_j 1/(z - x_j)`.
pub fn stieltjes_empirical(m: &RootMeasure, z: C64) -> Result<C64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(domain!("z must be finite"));
    }
    let (mut re, mut im) = (0.0, 0.0);
    for &x in &m.points {
        let d = C64::c(z.re - x, z.im);
        if d.abs() <= 1e-12 {
            return Err(domain!("z = {} + {}i sits on the atom {x}", z.re, z.im));
        }
        let r = d.recip();
        re += r.re;
        im += r.im;
    }
    Ok(C64::c(re * m.weight, im * m.weight))
}

/// Zero measure of a nonpositive-rooted polynomial with weight `1 / w_n`.
pub fn empirical_measure(p: &ExactPolynomial, w_n: f64) -> Result<RootMeasure> {
    let roots = real_roots(p)?;
    let scale = roots.iter().fold(1.0f64, |m, r| m.max(r.abs()));
    RootMeasure::from_roots(&roots, w_n, 1e-10 * scale)
}

/// Zero measure of the generating function of `X^{(i)}_{n,theta}` with `w_n = n`.
///
/// For the first two families the roots are those of `S_n` and `T_n` divided
/// by `theta`, which keeps the integer coefficients small.
pub fn family_zero_measure(family: Family, n: usize, theta: &BigRational, relaxed: bool) -> Result<RootMeasure> {
    let th = rational_to_f64(theta);
    if !(th > 0.0) {
        return Err(domain!("theta must be positive"));
    }
    let (p, scale) = match family {
        Family::First => (rising_poly(n)?, th),
        Family::Second => (touchard(n)?, th),
        Family::Third => (gen_poly(family, n, theta, relaxed)?, 1.0),
    };
    let roots = real_roots(&p)?;
    let big = roots.iter().fold(1.0f64, |m, r| m.max(r.abs()));
    let scaled: Vec<f64> = roots.iter().map(|r| r / scale).collect();
    RootMeasure::from_roots(&scaled, n as f64, 1e-10 * big / scale)
}

/// `|smallest root|` of the family-3 generating polynomial at `theta = n`
/// for each `n`, with the fitted log-log growth exponent (expected near 2).
pub fn g3_smallest_root_growth(n_values: &[usize]) -> Result<(Vec<f64>, f64)> {
    let mut out = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let p = gen_poly(Family::Third, n, &BigRational::from_integer(n.into()), false)?;
        let roots = real_roots(&p)?;
        let smallest = roots.first().copied().ok_or_else(|| domain!("no roots at n = {n}"))?;
        out.push(smallest.abs());
    }
    let slope = crate::verify::fit_slope(n_values, &out);
    Ok((out, slope))
}
