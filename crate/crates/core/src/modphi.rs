//! Closed-form limit objects of the mod-phi convergence of the three Stirling
//! laws: the exponents `phi_i`, limit functions `Psi_i`, asymptotic mean and
//! variance `mu_i`, `sigma_i^2`, their inverses and the large deviation rate
//! functions `I_i`.

use crate::complex::{Complex, C64};
use crate::error::{domain, Result};
use crate::family::Family;
use crate::lambert::{w0_complex, w0_real, wm1_real};
use crate::real::Real;

/// A family together with its tilting parameter `theta > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Params {
    pub family: Family,
    pub theta: f64,
}

impl Params {
    pub fn new(family: Family, theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(domain!("theta must be positive and finite, got {theta}"));
        }
        Ok(Params { family, theta })
    }
}

fn cut_check<R: Real>(z: &Complex<R>, what: &str) -> Result<()> {
    if z.im.is_zero() && z.re <= z.re.zero() {
        return Err(domain!("{what}: argument {:e} lies on (-inf, 0]", z.re.to_f64()));
    }
    Ok(())
}

/// `L1(z) = (z+1) log(z+1) - z log z`.
pub fn l1<R: Real>(z: &Complex<R>) -> Result<Complex<R>> {
    cut_check(z, "L1")?;
    let zp1 = z.add_re(z.re.one());
    Ok(zp1.clone() * zp1.ln() - z.clone() * z.ln())
}

/// `L2(z) = W0(1/z) + 1/W0(1/z) - z + log z`.
pub fn l2<R: Real>(z: &Complex<R>) -> Result<Complex<R>> {
    cut_check(z, "L2")?;
    let w = w0_complex(&z.recip())?;
    Ok(w.clone() + w.recip() - z.clone() + z.ln())
}

/// Argument `theta^{-1} (e^{-z} - 1) e^{-1/theta}` of `W0` inside `L3`.
fn l3_arg<R: Real>(z: &Complex<R>, theta: &R) -> Complex<R> {
    let one = theta.one();
    let k = (-(one.clone() / theta.clone())).exp() / theta.clone();
    (-z.clone()).exp().add_re(-one).scale(k)
}

/// `L3(z; theta) = 1/theta + W0(theta^{-1} (e^{-z} - 1) e^{-1/theta})`.
pub fn l3<R: Real>(z: &Complex<R>, theta: &R) -> Result<Complex<R>> {
    let w = w0_complex(&l3_arg(z, theta))?;
    Ok(w.add_re(theta.one() / theta.clone()))
}

/// Largest strip half-width probed when locating the guaranteed domain.
const H_MAX: f64 = 1.0;
const MARGIN: f64 = 0.9;
const THETA_GRID: [f64; 9] = [0.01, 0.1, 0.2, 0.3, 0.5, 1.0, 2.0, 5.0, 10.0];

/// Whether every `W0` (and logarithm) argument for family `fam` stays off its cut at `z`.
fn off_cut(fam: Family, z: &C64, theta: f64) -> bool {
    let on_cut = |u: &C64, edge: f64| u.im.abs() <= 1e-12 * u.abs().max(1.0) && u.re <= edge;
    let bp = -1.0 / core::f64::consts::E;
    let tz = z.exp().scale(theta);
    match fam {
        Family::First => !on_cut(&tz, 0.0) && !on_cut(&tz.add_re(1.0), 0.0),
        Family::Second => !on_cut(&tz, 0.0) && !on_cut(&tz.recip(), bp),
        Family::Third => {
            let u = l3_arg(z, &theta);
            if on_cut(&u, bp) {
                return false;
            }
            match w0_complex(&u) {
                Ok(w) => {
                    let l = w.add_re(1.0 / theta);
                    !on_cut(&l, 0.0) && !on_cut(&w.add_re(1.0), 0.0)
                }
                Err(_) => false,
            }
        }
    }
}

fn probe_halfwidth(fam: Family) -> f64 {
    let mut h = H_MAX;
    while h > 0.0 {
        let mut ok = true;
        'scan: for &theta in &THETA_GRID {
            for i in 0..=40 {
                let re = -10.0 + 0.5 * i as f64;
                for j in 0..=10 {
                    let im = h * j as f64 / 10.0;
                    if !off_cut(fam, &C64::c(re, im), theta) || !off_cut(fam, &C64::c(re, -im), theta) {
                        ok = false;
                        break 'scan;
                    }
                }
            }
        }
        if ok {
            return MARGIN * h;
        }
        h -= 0.05;
    }
    0.0
}

static HALFWIDTH: spin::Lazy<[f64; 3]> = spin::Lazy::new(|| {
    [
        probe_halfwidth(Family::First),
        probe_halfwidth(Family::Second),
        probe_halfwidth(Family::Third),
    ]
});

/// Half-width `h` of the strip `|Im z| < h` on which `phi` and `Psi` are evaluated.
pub fn domain_halfwidth(fam: Family) -> f64 {
    HALFWIDTH[fam.index() as usize - 1]
}

fn strip_check<R: Real>(fam: Family, z: &Complex<R>) -> Result<()> {
    let h = domain_halfwidth(fam);
    let im = z.im.to_f64();
    if !(im.abs() < h) || !z.re.is_finite() {
        return Err(domain!(
            "z = {} + {}i is outside the strip |Im z| < {h} of family {fam}",
            z.re.to_f64(),
            im
        ));
    }
    Ok(())
}

fn theta_check(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(domain!("theta must be positive, got {theta}"));
    }
    Ok(())
}

/// `theta e^z` at the precision of `z`.
fn tilt<R: Real>(z: &Complex<R>, theta: &R) -> Complex<R> {
    z.exp().scale(theta.clone())
}

/// The mod-phi exponent `phi_i(z; theta)`.
pub fn phi<R: Real>(fam: Family, z: &Complex<R>, theta: f64) -> Result<Complex<R>> {
    theta_check(theta)?;
    strip_check(fam, z)?;
    let th = z.re.lit(theta);
    let th_c = Complex::real(th.clone());
    match fam {
        Family::First => Ok(l1(&tilt(z, &th))? - l1(&th_c)?),
        Family::Second => Ok(l2(&tilt(z, &th))? - l2(&th_c)?),
        Family::Third => {
            let l = l3(z, &th)?;
            let one = th.one();
            let tm1 = th.clone() - one.clone();
            let lt = th.ln();
            let base = tm1.clone() * lt - one;
            Ok((l.ln().scale(tm1) + (z.clone() + l).scale(th)).add_re(base))
        }
    }
}

/// The limit function `Psi_i(z; theta)`.
pub fn psi<R: Real>(fam: Family, z: &Complex<R>, theta: f64) -> Result<Complex<R>> {
    theta_check(theta)?;
    strip_check(fam, z)?;
    let th = z.re.lit(theta);
    let one = th.one();
    match fam {
        Family::First => {
            let num = th.clone() + one.clone();
            let den = tilt(z, &th).add_re(one.clone());
            let half = z.scale(th.lit(0.5)).exp();
            Ok(half * (Complex::real(num) / den).sqrt())
        }
        Family::Second => {
            let a = w0_real(&(one.clone() / th.clone()))? + one.clone();
            let b = w0_complex(&(-z.clone()).exp().scale(one.clone() / th))?.add_re(one);
            Ok((Complex::real(a) / b).sqrt())
        }
        Family::Third => {
            let l = l3(z, &th)?;
            let den = l.scale(th.clone()).add_re(th.clone() - one);
            Ok((Complex::real(th) / den).sqrt())
        }
    }
}

/// `(phi_i', phi_i'')` at `z`, evaluated on the strip of the family.
pub fn phi_derivs<R: Real>(fam: Family, z: &Complex<R>, theta: f64) -> Result<(Complex<R>, Complex<R>)> {
    theta_check(theta)?;
    strip_check(fam, z)?;
    phi_derivs_wide(fam, z, theta)
}

/// `(phi_i', phi_i'')` continued to the whole strip `|Im z| < pi`.
pub fn phi_derivs_wide<R: Real>(
    fam: Family,
    z: &Complex<R>,
    theta: f64,
) -> Result<(Complex<R>, Complex<R>)> {
    theta_check(theta)?;
    let pi = z.re.pi().to_f64();
    if !(z.im.to_f64().abs() < pi) {
        return Err(domain!("phi derivatives need |Im z| < pi"));
    }
    let th = z.re.lit(theta);
    let one = th.one();
    match fam {
        Family::First => {
            // a = 1 + theta^{-1} e^{-z}
            let tz = tilt(z, &th);
            let a = tz.recip().add_re(one);
            let d1 = tz * a.ln();
            let d2 = d1.clone() - a.recip();
            Ok((d1, d2))
        }
        Family::Second => {
            let tz = tilt(z, &th);
            let w = w0_complex(&tz.recip())?;
            let d1 = w.recip() - tz.clone();
            let d2 = (w.clone() * w.add_re(one)).recip() - tz;
            Ok((d1, d2))
        }
        Family::Third => {
            // With W = W0(u), E = e^{-W - 1/theta - z} = theta W / (e^{-z} - 1) e^{-z}:
            // phi' = theta - theta E / (1 + theta W), free of the removable singularity at z = 0.
            let w = w0_complex(&l3_arg(z, &th))?;
            let e = (-(w.clone() + z.clone())).add_re(-(one.clone() / th.clone())).exp();
            let b = w.scale(th.clone()).add_re(one.clone());
            let d1 = Complex::real(th.clone()) - e.scale(th.clone()) / b.clone();
            let wz = -(e.clone() / w.add_re(one.clone()).scale(th.clone()));
            let inner = (-wz.clone()).add_re(-one) * b.clone() - wz.scale(th.clone());
            let d2 = -(e.scale(th) * inner) / (b.clone() * b);
            Ok((d1, d2))
        }
    }
}

/// Asymptotic mean `mu_i(theta) = phi_i'(0; theta)`.
pub fn mu(fam: Family, theta: f64) -> Result<f64> {
    theta_check(theta)?;
    Ok(match fam {
        Family::First => theta * libm::log1p(1.0 / theta),
        Family::Second => 1.0 / w0_real(&(1.0 / theta))? - theta,
        Family::Third => -theta * libm::expm1(-1.0 / theta),
    })
}

/// Asymptotic variance `sigma_i^2(theta) = phi_i''(0; theta)`.
pub fn sigma2(fam: Family, theta: f64) -> Result<f64> {
    theta_check(theta)?;
    Ok(match fam {
        Family::First => theta * log1p_minus_ratio(1.0 / theta),
        Family::Second => {
            // theta = e^{-w} / w, so sigma^2 = (1 - (1 + w) e^{-w}) / (w (1 + w)).
            let w = w0_real(&(1.0 / theta))?;
            one_minus_exp_poly(w) / (w * (1.0 + w))
        }
        Family::Third => {
            let u = 1.0 / theta;
            theta * libm::exp(-u) * one_minus_exp_poly(u)
        }
    })
}

/// `log(1 + u) - u / (1 + u)` for `u > 0`.
fn log1p_minus_ratio(u: f64) -> f64 {
    if u > 0.1 {
        return libm::log1p(u) - u / (1.0 + u);
    }
    // sum_{k >= 2} (-1)^k (k - 1) u^k / k
    let mut sum = 0.0;
    let mut p = -u;
    for k in 2..40 {
        p *= -u;
        let term = p * (k - 1) as f64 / k as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `1 - (1 + u) e^{-u}` for `u >= 0`.
fn one_minus_exp_poly(u: f64) -> f64 {
    if u > 0.5 {
        return -libm::expm1(-u) - u * libm::exp(-u);
    }
    // sum_{k >= 2} (-1)^k (k - 1) u^k / k!
    let mut sum = 0.0;
    let mut p = -u;
    for k in 2..40 {
        p *= -u / k as f64;
        let term = p * (k - 1) as f64;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// The inverse `mu_i^{<-}(t)` for `i in {1, 2}` and `t in (0, 1)`.
pub fn mu_inverse(fam: Family, t: f64) -> Result<f64> {
    Ok(mu_inverse_log(fam, t)?.0)
}

/// `(mu_i^{<-}(t), log mu_i^{<-}(t))`; the logarithm stays finite where the value underflows.
fn mu_inverse_log(fam: Family, t: f64) -> Result<(f64, f64)> {
    if !(t > 0.0 && t < 1.0) {
        return Err(domain!("mu_inverse needs t in (0, 1), got {t}"));
    }
    match fam {
        Family::First => {
            let w = wm1_real(&(-t * libm::exp(-t)))?;
            let m = -t / (t + w);
            Ok((m, libm::log(m)))
        }
        Family::Second => {
            // t / (1 + t W) - t rewritten as -t^2 W / (1 + t W), using W e^W = -e^{-1/t} / t.
            let w = w0_real(&(-libm::exp(-1.0 / t) / t))?;
            let m = -t * t * w / (1.0 + t * w);
            let lm = libm::log(t) - 1.0 / t - w - libm::log1p(t * w);
            Ok((m, lm))
        }
        Family::Third => Err(domain!("mu_inverse is defined for families 1 and 2 only")),
    }
}

fn l_real(fam: Family, x: f64) -> Result<f64> {
    let z = C64::c(x, 0.0);
    Ok(match fam {
        Family::First => l1(&z)?.re,
        _ => l2(&z)?.re,
    })
}

/// `x log x` with the convention `0 log 0 = 0`.
fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * libm::log(x)
    }
}

/// Large deviation rate function `I_i(t; theta)`; `+inf` off its effective domain.
///
/// Family 3 uses the `theta >= 1` corollary and, for `theta < 1`, its variant
/// on `(0, theta]`.
pub fn rate(fam: Family, t: f64, theta: f64) -> Result<f64> {
    theta_check(theta)?;
    if t.is_nan() {
        return Err(domain!("rate: t is NaN"));
    }
    let lt = libm::log(theta);
    match fam {
        Family::First | Family::Second => {
            if t > 0.0 && t < 1.0 {
                // L_i(mu_i^{<-}(t)) simplifies through mu_i(m) = t:
                // L1(m) = t + log(1 + m) and L2(m) = 1/(t + m) + t + log m.
                let (m, lm) = mu_inverse_log(fam, t)?;
                let lm_at = match fam {
                    Family::First => t + libm::log1p(m),
                    _ => 1.0 / (t + m) + t + lm,
                };
                Ok(t * lm - lm_at - (t * lt - l_real(fam, theta)?))
            } else if t == 0.0 {
                Ok(match fam {
                    Family::First => l_real(fam, theta)?,
                    _ => f64::INFINITY,
                })
            } else if t == 1.0 {
                Ok(l_real(fam, theta)? - 1.0 - lt)
            } else {
                Ok(f64::INFINITY)
            }
        }
        Family::Third => {
            let interior = |t: f64| -> Result<f64> {
                let (m, lm) = mu_inverse_log(Family::Second, t)?;
                Ok((t - 1.0) * lm - 1.0 / (t + m) + xlogx(theta - t) + 1.0
                    - (theta - 1.0) * lt)
            };
            if theta >= 1.0 {
                if t > 0.0 && t < 1.0 {
                    interior(t)
                } else if t == 1.0 {
                    Ok(xlogx(theta - 1.0) + 1.0 - (theta - 1.0) * lt)
                } else {
                    Ok(f64::INFINITY)
                }
            } else if t > 0.0 && t <= theta {
                interior(t)
            } else {
                Ok(f64::INFINITY)
            }
        }
    }
}

/// `sigma_i(theta)`.
pub fn sigma(fam: Family, theta: f64) -> Result<f64> {
    Ok(libm::sqrt(sigma2(fam, theta)?))
}

/// Location of the maximum of `theta -> sigma_i(theta)`: a coarse logarithmic
/// scan brackets it, then golden-section search refines to `tol`.
pub fn sigma_argmax(fam: Family, tol: f64) -> Result<f64> {
    let grid: alloc::vec::Vec<f64> = (0..=200).map(|i| libm::pow(10.0, -3.0 + 6.0 * i as f64 / 200.0)).collect();
    let mut best = 0;
    let mut best_v = f64::NEG_INFINITY;
    for (i, &t) in grid.iter().enumerate() {
        let v = sigma(fam, t)?;
        if v > best_v {
            best_v = v;
            best = i;
        }
    }
    let mut a = grid[best.saturating_sub(1)];
    let mut b = grid[(best + 1).min(grid.len() - 1)];
    let g = (libm::sqrt(5.0) - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = sigma(fam, c)?;
    let mut fd = sigma(fam, d)?;
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = sigma(fam, c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = sigma(fam, d)?;
        }
    }
    Ok(0.5 * (a + b))
}

/// The limit objects of one family at fixed `theta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModPhiLimit {
    pub params: Params,
    pub domain_halfwidth: f64,
}

impl ModPhiLimit {
    pub fn new(family: Family, theta: f64) -> Result<Self> {
        Ok(ModPhiLimit {
            params: Params::new(family, theta)?,
            domain_halfwidth: domain_halfwidth(family),
        })
    }

    pub fn phi<R: Real>(&self, z: &Complex<R>) -> Result<Complex<R>> {
        phi(self.params.family, z, self.params.theta)
    }

    pub fn psi<R: Real>(&self, z: &Complex<R>) -> Result<Complex<R>> {
        psi(self.params.family, z, self.params.theta)
    }

    pub fn mu(&self) -> f64 {
        mu(self.params.family, self.params.theta).unwrap_or(f64::NAN)
    }

    pub fn sigma2(&self) -> f64 {
        sigma2(self.params.family, self.params.theta).unwrap_or(f64::NAN)
    }
}
