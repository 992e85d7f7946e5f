//! Numerical checks of the limit theorems against exact finite-`n` values:
//! mod-phi and mod-Poisson convergence, the local limit theorem, the large
//! deviation exponents, linear growth of the moments, and Cauchy integrals
//! on the saddle-point circle.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::combinatorics::{factorial, rat_int, rational_to_f64, tilted, touchard_eval, DiscreteDist};
use crate::complex::{Complex, C64};
use crate::error::{domain, Error, Result};
use crate::ext::Ext;
use crate::family::Family;
use crate::gamma::rgamma;
use crate::lambert::w0_real;
use crate::modphi::{l3, mu, phi, psi, rate, sigma2};
use crate::real::{ln_biguint, Real};

/// An error sequence over an `n`-grid with its fitted log-log slope.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RateReport {
    pub check: String,
    pub family: Family,
    pub theta: f64,
    pub z_or_t: C64,
    pub n_values: Vec<usize>,
    pub errors: Vec<f64>,
    pub fitted_slope: f64,
    pub passed: bool,
}

impl RateReport {
    /// Fits the slope and sets `passed` when it lies in `[lo, hi]`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        check: &str,
        family: Family,
        theta: f64,
        z_or_t: C64,
        n_values: Vec<usize>,
        errors: Vec<f64>,
        band: (f64, f64),
    ) -> Result<Self> {
        if n_values.len() != errors.len() {
            return Err(domain!("{} n values but {} errors", n_values.len(), errors.len()));
        }
        if n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(domain!("n values must be strictly increasing"));
        }
        if errors.iter().any(|e| !(*e >= 0.0)) {
            return Err(domain!("errors must be nonnegative"));
        }
        let fitted_slope = fit_slope(&n_values, &errors);
        let passed = fitted_slope >= band.0 && fitted_slope <= band.1;
        Ok(RateReport {
            check: check.into(),
            family,
            theta,
            z_or_t,
            n_values,
            errors,
            fitted_slope,
            passed,
        })
    }
}

/// Least-squares slope of `log e` against `log n`; NaN with fewer than two
/// points or when an error is zero or not finite.
pub fn fit_slope(n_values: &[usize], errors: &[f64]) -> f64 {
    let m = n_values.len().min(errors.len());
    if m < 2 || errors[..m].iter().any(|e| !(*e > 0.0 && e.is_finite())) {
        return f64::NAN;
    }
    let xs: Vec<f64> = n_values[..m].iter().map(|&n| libm::log(n as f64)).collect();
    let ys: Vec<f64> = errors[..m].iter().map(|&e| libm::log(e)).collect();
    let mx = xs.iter().sum::<f64>() / m as f64;
    let my = ys.iter().sum::<f64>() / m as f64;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(&ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

/// Decreasing apart from at most one non-monotone step, and ending below its start.
pub fn eventually_decreasing(errors: &[f64]) -> bool {
    if errors.len() < 2 {
        return true;
    }
    let ups = errors.windows(2).filter(|w| !(w[1] < w[0])).count();
    ups <= 1 && errors[errors.len() - 1] < errors[0]
}

fn ext_c(z: C64, bits: usize) -> Complex<Ext> {
    Complex::new(Ext::new(z.re, bits), Ext::new(z.im, bits))
}

fn law(fam: Family, n: usize, vartheta: &BigRational, relaxed: bool) -> Result<DiscreteDist> {
    DiscreteDist::new(fam, n, &tilted(n, vartheta), relaxed)
}

/// `|E e^{zX}/e^{n phi_i(z)} - Psi_i(z)|` for the law with `theta = vartheta n`,
/// computed with `bits` of working precision.
pub fn mod_phi_error(
    fam: Family,
    n: usize,
    vartheta: &BigRational,
    z: C64,
    bits: usize,
    relaxed: bool,
) -> Result<f64> {
    let d = law(fam, n, vartheta, relaxed)?;
    let lm = d.log_mgf_c64(z, bits)?;
    let zx = ext_c(z, bits);
    let th = rational_to_f64(vartheta);
    let ph = phi(fam, &zx, th)?;
    let ps = psi(fam, &zx, th)?;
    let ratio = (lm - ph.scale(Ext::from_i64(n as i64, bits))).exp();
    let err = (ratio - ps).abs().to_f64();
    if !err.is_finite() {
        return Err(Error::Precision(alloc::format!("non-finite mod-phi error at n = {n}")));
    }
    Ok(err)
}

/// One row of the local limit comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LltRow {
    pub k: usize,
    pub pmf: f64,
    pub gaussian: f64,
}

/// `pmf(k)` next to the Gaussian density with mean `mu_i n` and variance
/// `sigma_i^2 n`, for `k = 0..=n`.
pub fn llt_profile(fam: Family, n: usize, vartheta: &BigRational, relaxed: bool) -> Result<Vec<LltRow>> {
    let d = law(fam, n, vartheta, relaxed)?;
    let th = rational_to_f64(vartheta);
    let m = mu(fam, th)? * n as f64;
    let v = sigma2(fam, th)? * n as f64;
    if !(v > 0.0) {
        return Err(domain!("limiting variance underflows at theta = {th}"));
    }
    let c = 1.0 / libm::sqrt(2.0 * PI * v);
    Ok((0..=n)
        .map(|k| {
            let x = k as f64 - m;
            LltRow {
                k,
                pmf: d.pmf_f64(k),
                gaussian: c * libm::exp(-x * x / (2.0 * v)),
            }
        })
        .collect())
}

/// `sqrt(n) max_k |pmf(k) - gaussian(k)|`.
pub fn llt_sup_error(fam: Family, n: usize, vartheta: &BigRational) -> Result<f64> {
    let rows = llt_profile(fam, n, vartheta, false)?;
    let sup = rows.iter().fold(0.0f64, |s, r| s.max((r.pmf - r.gaussian).abs()));
    Ok(libm::sqrt(n as f64) * sup)
}

/// `|-(1/n) log pmf(floor(t n)) - I_i(t; vartheta)|`.
pub fn ldp_error(fam: Family, n: usize, vartheta: &BigRational, t: f64, bits: usize) -> Result<f64> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(domain!("t must lie in (0, 1], got {t}"));
    }
    let d = law(fam, n, vartheta, false)?;
    let k = libm::floor(t * n as f64 + 1e-9) as usize;
    let lp = d.log_pmf(k, bits)?;
    let i = rate(fam, t, rational_to_f64(vartheta))?;
    if !i.is_finite() {
        return Err(domain!("t = {t} lies outside the domain of the rate function"));
    }
    Ok((-lp.to_f64() / n as f64 - i).abs())
}

/// `|E e^{z eta_n} / e^{(log n)(e^z - 1)} - 1/Gamma(e^z)|` for the cycle
/// count `eta_n` of a uniform permutation.
pub fn mod_poisson_error(n: usize, z: C64) -> Result<f64> {
    let d = DiscreteDist::new(Family::First, n, &BigRational::one(), false)?;
    let lm = d.log_mgf_c64(z, 128)?.to_c64();
    let ez = z.exp();
    let ln_n = libm::log(n as f64);
    let lhs = (lm - ez.add_re(-1.0).scale(ln_n)).exp();
    Ok((lhs - rgamma(ez)).abs())
}

/// The two linear-growth errors of the moments over an `n`-grid.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MomentGrowth {
    pub mean: RateReport,
    pub variance: RateReport,
}

impl MomentGrowth {
    pub fn passed(&self) -> bool {
        self.mean.passed && self.variance.passed
    }
}

/// `|E X/n - mu_i|` and `|Var X/n - sigma_i^2|` from exact moments; each passes
/// when its fitted slope is at most `-0.8`.
pub fn moment_growth_check(
    fam: Family,
    vartheta: &BigRational,
    n_values: &[usize],
    relaxed: bool,
) -> Result<MomentGrowth> {
    let th = rational_to_f64(vartheta);
    let (m, s2) = (mu(fam, th)?, sigma2(fam, th)?);
    let mut em = Vec::with_capacity(n_values.len());
    let mut ev = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let d = law(fam, n, vartheta, relaxed)?;
        let (mean, var) = d.moments();
        let nr = rat_int(n as i64);
        em.push((rational_to_f64(&(mean / &nr)) - m).abs());
        ev.push((rational_to_f64(&(var / &nr)) - s2).abs());
    }
    let band = (f64::NEG_INFINITY, -0.8);
    let z = C64::c(0.0, 0.0);
    Ok(MomentGrowth {
        mean: RateReport::new("moment_mean", fam, th, z, n_values.to_vec(), em, band)?,
        variance: RateReport::new("moment_variance", fam, th, z, n_values.to_vec(), ev, band)?,
    })
}

/// Which Cauchy integral to evaluate on its saddle-point circle.
#[derive(Clone, Debug, PartialEq)]
pub enum ContourKind {
    /// `T_n(n z)/n! = (1/2 pi i) oint s^{-n-1} e^{n z (e^s - 1)} ds`, radius `W0(1/z)`.
    Touchard { z: f64 },
    /// The moment generating function of `X^{(3)}_{n, vartheta n}` at `z`, radius `L3(z; vartheta)`.
    G3 { vartheta: BigRational, z: f64, relaxed: bool },
}

/// Outcome of [`contour_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ContourCheck {
    pub radius: f64,
    pub points: usize,
    pub rel_error: f64,
    pub converged: bool,
}

struct Contour {
    radius: f64,
    /// `log` of the exact value minus the log-scale `M` factored out of the sum.
    offset: f64,
    n: usize,
    integrand: IntegrandKind,
}

enum IntegrandKind {
    Touchard { z: f64 },
    G3 { ez: f64, theta: f64, integer: bool },
}

const CONTOUR_BITS: usize = 192;
const MAX_CONTOUR_N: usize = 60;
const MAX_POINTS: usize = 1 << 22;

fn ln_rational(r: &BigRational, bits: usize) -> Result<Ext> {
    if !r.is_positive() {
        return Err(domain!("exact value is not positive"));
    }
    Ok(Ext::from_ratio(r.numer(), r.denom(), bits).ln())
}

fn setup(kind: &ContourKind, n: usize) -> Result<Contour> {
    let like = Ext::new(0.0, CONTOUR_BITS);
    let nf = n as f64;
    match kind {
        ContourKind::Touchard { z } => {
            let z = *z;
            if !(z > 0.0 && z.is_finite()) {
                return Err(domain!("the Touchard contour needs z > 0, got {z}"));
            }
            let r = w0_real(&(1.0 / z))?;
            let zr = BigRational::from_float(z).ok_or_else(|| domain!("z is not finite"))?;
            let exact = touchard_eval(n, &(zr * rat_int(n as i64)))?;
            let ln_exact = ln_rational(&exact, CONTOUR_BITS)? - ln_biguint(&like, &factorial(n));
            let m = nf * z * libm::expm1(r) - nf * libm::log(r);
            Ok(Contour {
                radius: r,
                offset: (Ext::new(m, CONTOUR_BITS) - ln_exact).to_f64(),
                n,
                integrand: IntegrandKind::Touchard { z },
            })
        }
        ContourKind::G3 { vartheta, z, relaxed } => {
            let z = *z;
            let theta_r = tilted(n, vartheta);
            let d = DiscreteDist::new(Family::Third, n, &theta_r, *relaxed)?;
            let th = rational_to_f64(vartheta);
            let theta = rational_to_f64(&theta_r);
            let r = l3(&C64::c(z, 0.0), &th)?.re;
            if !(r > 0.0) {
                return Err(domain!("saddle radius {r} is not positive"));
            }
            let ez = libm::exp(z);
            let integer = theta_r.is_integer();
            if !integer {
                // Branch points of (1 + e^z (e^x - 1))^theta: e^x = 1 - e^{-z}.
                let b = 1.0 - 1.0 / ez;
                let dist = if b > 0.0 {
                    libm::log(b).abs()
                } else if b < 0.0 {
                    libm::hypot(libm::log(-b), PI)
                } else {
                    f64::INFINITY
                };
                if r >= dist {
                    return Err(domain!("saddle radius {r} reaches the branch point at distance {dist}"));
                }
            }
            let ln_exact = d.log_mgf_c64(C64::c(z, 0.0), CONTOUR_BITS)?.re;
            let m = theta * libm::log1p(ez * libm::expm1(r)) - nf * libm::log(r);
            let ln_pre = ln_biguint(&like, &factorial(n))
                - ln_rational(&theta_r, CONTOUR_BITS)? * Ext::from_i64(n as i64, CONTOUR_BITS);
            Ok(Contour {
                radius: r,
                offset: (ln_pre + Ext::new(m, CONTOUR_BITS) - ln_exact).to_f64(),
                n,
                integrand: IntegrandKind::G3 { ez, theta, integer },
            })
        }
    }
}

impl Contour {
    /// `(1/N) sum_j f(x_j) x_j^{-n} e^{-M}` over `N` equispaced points on the circle.
    fn scaled_sum(&self, points: usize) -> Result<f64> {
        let nf = self.n as f64;
        let r = self.radius;
        let m = match self.integrand {
            IntegrandKind::Touchard { z } => nf * z * libm::expm1(r) - nf * libm::log(r),
            IntegrandKind::G3 { ez, theta, .. } => {
                theta * libm::log1p(ez * libm::expm1(r)) - nf * libm::log(r)
            }
        };
        let mut acc = 0.0;
        for j in 0..points {
            let a = 2.0 * PI * j as f64 / points as f64;
            let x = C64::c(r * libm::cos(a), r * libm::sin(a));
            let ex1 = C64::c(libm::expm1(x.re), 0.0) * C64::c(libm::cos(x.im), libm::sin(x.im))
                + C64::c(libm::cos(x.im) - 1.0, libm::sin(x.im));
            let logf = match self.integrand {
                IntegrandKind::Touchard { z } => ex1.scale(nf * z),
                IntegrandKind::G3 { ez, theta, integer } => {
                    let u = ex1.scale(ez).add_re(1.0);
                    if !integer && !(u.re > 0.0) {
                        return Err(domain!("contour crosses the branch cut of the power"));
                    }
                    u.ln().scale(theta)
                }
            };
            // x^{-n} = r^{-n} e^{-i n a}; the r^{-n} factor lives in M.
            let ph = logf.im - nf * a;
            acc += libm::exp(logf.re - nf * libm::log(r) - m) * libm::cos(ph);
        }
        Ok(acc / points as f64)
    }

    fn rel_error(&self, s: f64) -> f64 {
        (libm::exp(self.offset) * s - 1.0).abs()
    }
}

/// Relative error of the trapezoid rule with exactly `points` nodes.
pub fn contour_trapezoid(kind: &ContourKind, n: usize, points: usize) -> Result<f64> {
    if points == 0 {
        return Err(domain!("need at least one node"));
    }
    let c = setup(kind, n)?;
    Ok(c.rel_error(c.scaled_sum(points)?))
}

/// Cauchy integral on the saddle circle by the trapezoid rule, doubling the
/// node count from `num_points` until two passes agree to `1e-12`, and its
/// relative error against the exact value.
pub fn contour_check(kind: &ContourKind, n: usize, num_points: usize) -> Result<ContourCheck> {
    if n == 0 || n > MAX_CONTOUR_N {
        return Err(domain!("contour checks need 1 <= n <= {MAX_CONTOUR_N}, got {n}"));
    }
    if num_points < 1 << 10 {
        return Err(domain!("contour checks need at least 2^10 nodes, got {num_points}"));
    }
    let c = setup(kind, n)?;
    let mut points = num_points;
    let mut prev = c.scaled_sum(points)?;
    let mut converged = false;
    while points < MAX_POINTS {
        points *= 2;
        let next = c.scaled_sum(points)?;
        let done = (next - prev).abs() <= 1e-12 * next.abs();
        prev = next;
        if done {
            converged = true;
            break;
        }
    }
    Ok(ContourCheck {
        radius: c.radius,
        points,
        rel_error: c.rel_error(prev),
        converged,
    })
}
