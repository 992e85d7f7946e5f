//! Limit zero measures: the uniform law of the first family, Elbert's
//! measure `rho` for Touchard zeros, the measures `Z^theta` of the third
//! family and the Marchenko-Pastur law.
//!
//! Densities come from Stieltjes inversion with the boundary values of `W0`
//! on its cut. Integrals of the densities split the support so that the
//! `1/(t log^2 t)` singularity at the origin, the square-root edge and (for
//! `theta = 1`) the `t^{-3/2}` tail each get their own substitution.

use core::cell::RefCell;
use core::f64::consts::{E, PI};

use crate::complex::C64;
use crate::error::{domain, Result};
use crate::family::Family;
use crate::lambert::{w0_boundary_delta, w0_boundary_log, w0_complex, CutSide};
use crate::modphi::phi_derivs_wide;
use crate::quad::tanh_sinh;

/// A limit measure on `[0, inf)` given by its Stieltjes transform and density.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LimitSpec {
    /// Density `theta` on `[0, 1/theta]`: zeros of `S_n(theta n x)`.
    Uniform { theta: f64 },
    /// Elbert's measure dilated by `1/theta`: zeros of `T_n(theta n x)`.
    Elbert { theta: f64 },
    /// `Z^theta`, zeros of the third family's generating function.
    Allocation { theta: f64 },
    /// Marchenko-Pastur law without its atom at the origin.
    MarchenkoPastur { theta: f64 },
}

impl LimitSpec {
    /// The zero limit of family `i` with `theta_n = theta n`.
    pub fn for_family(family: Family, theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(domain!("theta must be positive, got {theta}"));
        }
        Ok(match family {
            Family::First => LimitSpec::Uniform { theta },
            Family::Second => LimitSpec::Elbert { theta },
            Family::Third => LimitSpec::Allocation { theta },
        })
    }

    pub fn parameter(&self) -> f64 {
        match *self {
            LimitSpec::Uniform { theta }
            | LimitSpec::Elbert { theta }
            | LimitSpec::Allocation { theta }
            | LimitSpec::MarchenkoPastur { theta } => theta,
        }
    }

    pub fn support_upper(&self) -> f64 {
        match *self {
            LimitSpec::Uniform { theta } => 1.0 / theta,
            LimitSpec::Elbert { theta } => E / theta,
            LimitSpec::Allocation { theta } => m_theta(theta),
            LimitSpec::MarchenkoPastur { theta } => (libm::sqrt(theta) + 1.0).powi(2),
        }
    }

    pub fn total_mass(&self) -> f64 {
        match *self {
            LimitSpec::Allocation { theta } | LimitSpec::MarchenkoPastur { theta } if theta < 1.0 => theta,
            _ => 1.0,
        }
    }

    /// `int mu(dx) / (z - x)`.
    pub fn stieltjes(&self, z: C64) -> Result<C64> {
        match *self {
            LimitSpec::Uniform { theta } => {
                if z.im == 0.0 && z.re >= 0.0 && z.re <= 1.0 / theta {
                    return Err(domain!("z = {} lies on the support [0, 1/theta]", z.re));
                }
                // theta log(z / (z - 1/theta))
                Ok((z / z.add_re(-1.0 / theta)).ln().scale(theta))
            }
            LimitSpec::Elbert { theta } => Ok(stieltjes_limit_elbert(z.scale(theta))?.scale(theta)),
            LimitSpec::Allocation { theta } => stieltjes_limit_z3(z, theta),
            LimitSpec::MarchenkoPastur { theta } => {
                if z.im == 0.0 && z.re >= 0.0 {
                    return Err(domain!("z must avoid [0, inf)"));
                }
                // (z + 1 - theta - sqrt((z - a)(z - b))) / (2z) minus the atom term, branch ~ 1/z at infinity.
                let (a, b) = mp_support(theta);
                let r = (z.add_re(-a)).sqrt() * (z.add_re(-b)).sqrt();
                let full = (z.add_re(1.0 - theta) - r) / z.scale(2.0);
                let atom = (1.0 - theta).max(0.0);
                Ok(full - z.recip().scale(atom))
            }
        }
    }

    /// Density at `t > 0`.
    pub fn density(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(domain!("density needs t > 0, got {t}"));
        }
        match *self {
            LimitSpec::Uniform { theta } => Ok(if t <= 1.0 / theta { theta } else { 0.0 }),
            LimitSpec::Elbert { theta } => Ok(theta * elbert_density(theta * t)?),
            LimitSpec::Allocation { theta } => density_g(theta, t),
            LimitSpec::MarchenkoPastur { theta } => Ok(mp_density(theta, t)),
        }
    }

    /// `t * density(t)` at `t = e^{log_t}`, finite for arbitrarily small `t`.
    fn t_density_log(&self, log_t: f64) -> Result<f64> {
        match *self {
            LimitSpec::Elbert { theta } => elbert_t_density_log(log_t + libm::log(theta)),
            LimitSpec::Allocation { theta } => g_t_density_log(theta, log_t, None),
            _ => {
                let t = libm::exp(log_t);
                Ok(t * self.density(t)?)
            }
        }
    }

    /// Density at `t = upper - dist`, accurate for small `dist`.
    fn density_near_edge(&self, t: f64, dist: f64) -> Result<f64> {
        match *self {
            LimitSpec::Elbert { theta } => {
                let s = theta * t;
                // -1/s + 1/e = (e - s) / (e s)
                let delta = theta * dist / (E * s);
                Ok(theta * elbert_from_delta(s, delta)?)
            }
            LimitSpec::Allocation { theta } => {
                let m = m_theta(theta);
                let k = theta * libm::exp(1.0 / theta);
                let delta = dist / (t * m * k);
                Ok(g_from_w(theta, t, w0_boundary_delta(&delta, CutSide::Above)?))
            }
            LimitSpec::MarchenkoPastur { theta } => {
                let (a, _) = mp_support(theta);
                Ok(libm::sqrt(dist * (t - a)) / (2.0 * PI * t))
            }
            LimitSpec::Uniform { .. } => self.density(t),
        }
    }

    /// `int density(t) f(t) dt` over the support, to roughly `tol` relative accuracy.
    pub fn integrate_density<F: Fn(f64) -> f64>(&self, f: F, tol: f64) -> Result<f64> {
        let err: RefCell<Option<crate::Error>> = RefCell::new(None);
        let guard = |r: Result<f64>| -> f64 {
            r.unwrap_or_else(|e| {
                err.borrow_mut().get_or_insert(e);
                0.0
            })
        };
        let upper = self.support_upper();
        let total = match *self {
            LimitSpec::Uniform { theta } => {
                tanh_sinh(|t, _, _| theta * f(t), 0.0, upper, tol).value
            }
            LimitSpec::MarchenkoPastur { theta } => {
                let (a, b) = mp_support(theta);
                tanh_sinh(
                    |t, dl, dr| libm::sqrt(dl * dr) / (2.0 * PI * t) * f(t),
                    a,
                    b,
                    tol,
                )
                .value
            }
            LimitSpec::Elbert { .. } | LimitSpec::Allocation { .. } => {
                let t0 = if upper.is_finite() { (0.5 * upper).min(0.5) } else { 0.5 };
                // (0, t0] through t = exp(-1/u): dt = t du / u^2, t g(t) ~ u^2.
                let s0 = -libm::log(t0);
                let near0 = tanh_sinh(
                    |u, _, _| {
                        let lt = -1.0 / u;
                        guard(self.t_density_log(lt)) * f(libm::exp(lt)) / (u * u)
                    },
                    0.0,
                    1.0 / s0,
                    tol,
                )
                .value;
                let body = if upper.is_finite() {
                    tanh_sinh(
                        |t, _, dr| guard(self.density_near_edge(t, dr)) * f(t),
                        t0,
                        upper,
                        tol,
                    )
                    .value
                } else {
                    // [t0, 1] directly, then t = 1/v^2 on (0, 1]: dt = 2 dv / v^3.
                    let mid = tanh_sinh(|t, _, _| guard(self.density(t)) * f(t), t0, 1.0, tol).value;
                    let tail = tanh_sinh(
                        |v, _, _| {
                            let t = 1.0 / (v * v);
                            guard(self.density(t)) * f(t) * 2.0 / (v * v * v)
                        },
                        0.0,
                        1.0,
                        tol,
                    )
                    .value;
                    mid + tail
                };
                near0 + body
            }
        };
        match err.into_inner() {
            Some(e) => Err(e),
            None => Ok(total),
        }
    }

    /// `int density(t) / (z - t) dt` by quadrature, an oracle for [`Self::stieltjes`] off the axis.
    pub fn stieltjes_by_quadrature(&self, z: C64, tol: f64) -> Result<C64> {
        let re = self.integrate_density(|t| C64::c(z.re - t, z.im).recip().re, tol)?;
        let im = self.integrate_density(|t| C64::c(z.re - t, z.im).recip().im, tol)?;
        Ok(C64::c(re, im))
    }

    pub fn name(&self) -> &'static str {
        match self {
            LimitSpec::Uniform { .. } => "uniform",
            LimitSpec::Elbert { .. } => "elbert",
            LimitSpec::Allocation { .. } => "allocation",
            LimitSpec::MarchenkoPastur { .. } => "marchenko-pastur",
        }
    }
}

/// Elbert's transform `1 - exp(W0(-1/z))`.
pub fn stieltjes_limit_elbert(z: C64) -> Result<C64> {
    if z.im == 0.0 && z.re >= 0.0 && z.re <= E {
        return Err(domain!("z = {} lies on [0, e]", z.re));
    }
    let w = w0_complex(&(-z.recip()))?;
    Ok(C64::c(1.0, 0.0) - w.exp())
}

/// Stieltjes transform of `Z^theta`,
/// `theta/z - theta^2 W / (z (z+1) (1 + theta W))` with `W = W0((-1/z - 1) / (theta e^{1/theta}))`.
///
/// `W / (z + 1)` is rewritten as `-e^{-W} / (z K)` so the removable point `z = -1` is harmless.
pub fn stieltjes_limit_z3(z: C64, theta: f64) -> Result<C64> {
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(domain!("theta must be positive, got {theta}"));
    }
    if z.im == 0.0 && z.re >= 0.0 {
        return Err(domain!("z = {} lies on [0, inf)", z.re));
    }
    let k = theta * libm::exp(1.0 / theta);
    let u = (-z.recip()).add_re(-1.0).scale(1.0 / k);
    let w = w0_complex(&u)?;
    let b = w.scale(theta).add_re(1.0);
    let second = (-w).exp() / (z * z * b).scale(k);
    Ok(z.recip().scale(theta) + second.scale(theta * theta))
}

/// The same transform as `phi_3'(log(-z); theta) / z`, from the mod-phi exponent.
pub fn stieltjes_via_phi(family: Family, z: C64, theta: f64) -> Result<C64> {
    if z.im == 0.0 && z.re >= 0.0 {
        return Err(domain!("z = {} lies on [0, inf)", z.re));
    }
    let (d1, _) = phi_derivs_wide(family, &(-z).ln(), theta)?;
    Ok(d1 / z)
}

/// Right end `m_theta = 1 / (theta e^{1/theta - 1} - 1)` of the support of `Z^theta`; infinite at `theta = 1`.
pub fn m_theta(theta: f64) -> f64 {
    if theta == 1.0 {
        return f64::INFINITY;
    }
    1.0 / libm::expm1(1.0 / theta - 1.0 + libm::log(theta))
}

/// `1/m_theta`, exact zero at `theta = 1`.
fn inv_m(theta: f64) -> f64 {
    libm::expm1(1.0 / theta - 1.0 + libm::log(theta))
}

fn g_from_w(theta: f64, t: f64, w: C64) -> f64 {
    let b = w.scale(theta).add_re(1.0);
    theta * theta / (PI * t * (t + 1.0)) * w.im / b.norm_sqr()
}

/// `t g_theta(t)` at `t = e^{log_t}`; `dist` is the distance to `m_theta` when known.
fn g_t_density_log(theta: f64, log_t: f64, dist: Option<f64>) -> Result<f64> {
    let k = theta * libm::exp(1.0 / theta);
    let t = libm::exp(log_t);
    // -u = (1/t + 1) / K; beyond e^40 use the logarithmic form of the boundary value.
    let log_r = libm::log1p(t) - log_t - libm::log(k);
    let w = if log_r > 40.0 {
        w0_boundary_log(&log_r, CutSide::Above)?
    } else {
        let inv = inv_m(theta);
        let delta = match dist {
            Some(d) => d / (t * m_theta(theta) * k),
            None => (1.0 / t - inv) / k,
        };
        if delta <= 0.0 {
            return Ok(0.0);
        }
        w0_boundary_delta(&delta, CutSide::Above)?
    };
    let b = w.scale(theta).add_re(1.0);
    Ok(theta * theta / (PI * (t + 1.0)) * w.im / b.norm_sqr())
}

/// The density `g_theta(t)` of `Z^theta`, zero for `t >= m_theta`.
pub fn density_g(theta: f64, t: f64) -> Result<f64> {
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(domain!("theta must be positive, got {theta}"));
    }
    if !(t > 0.0) {
        return Err(domain!("density_g needs t > 0, got {t}"));
    }
    if t >= m_theta(theta) {
        return Ok(0.0);
    }
    Ok(g_t_density_log(theta, libm::log(t), None)? / t)
}

/// `t f(t) = Im(-1/W) / pi = Im W / (pi |W|^2)` with `W = W0(-1/t + i0)`, using `e^W = -1/(t W)`.
fn elbert_tf_from_w(w: C64) -> f64 {
    w.im / (PI * w.norm_sqr())
}

fn elbert_from_delta(t: f64, delta: f64) -> Result<f64> {
    if delta <= 0.0 {
        return Ok(0.0);
    }
    Ok(elbert_tf_from_w(w0_boundary_delta(&delta, CutSide::Above)?) / t)
}

/// `t f(t)` for Elbert's density at `t = e^{log_t}`.
fn elbert_t_density_log(log_t: f64) -> Result<f64> {
    if log_t >= 1.0 {
        return Ok(0.0);
    }
    if -log_t > 40.0 {
        return Ok(elbert_tf_from_w(w0_boundary_log(&(-log_t), CutSide::Above)?));
    }
    let t = libm::exp(log_t);
    Ok(t * elbert_from_delta(t, 1.0 / t - 1.0 / E)?)
}

/// Density `(1/pi) Im exp(W0(-1/t + i0))` of Elbert's measure on `(0, e)`.
pub fn elbert_density(t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(domain!("elbert_density needs t > 0, got {t}"));
    }
    if t >= E {
        return Ok(0.0);
    }
    Ok(elbert_t_density_log(libm::log(t))? / t)
}

fn mp_support(theta: f64) -> (f64, f64) {
    let r = libm::sqrt(theta);
    ((r - 1.0).powi(2), (r + 1.0).powi(2))
}

/// Absolutely continuous part of the Marchenko-Pastur law with parameter `theta`.
pub fn mp_density(theta: f64, x: f64) -> f64 {
    let (a, b) = mp_support(theta);
    if !(x > a && x < b) || x <= 0.0 {
        return 0.0;
    }
    libm::sqrt((b - x) * (x - a)) / (2.0 * PI * x)
}

/// Weight `1 - theta` of the atom at the origin for `theta < 1`, else 0.
pub fn mp_atom(theta: f64) -> f64 {
    (1.0 - theta).max(0.0)
}

/// Support `[(sqrt(theta) - 1)^2, (sqrt(theta) + 1)^2]` of the continuous part.
pub fn mp_support_endpoints(theta: f64) -> (f64, f64) {
    mp_support(theta)
}

/// Distribution function of the Marchenko-Pastur law, atom included.
pub fn mp_cdf(theta: f64, x: f64) -> f64 {
    let (a, b) = mp_support(theta);
    let atom = if x >= 0.0 { mp_atom(theta) } else { 0.0 };
    if x <= a {
        return atom;
    }
    let hi = x.min(b);
    let q = tanh_sinh(
        |t, dl, _| libm::sqrt(dl * (b - t).max(0.0)) / (2.0 * PI * t),
        a,
        hi,
        1e-12,
    );
    atom + q.value
}
