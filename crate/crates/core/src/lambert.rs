//! The Lambert W function: real branches `W0` and `W-1`, the principal branch
//! on the slit plane `C \ (-inf, -1/e]`, and its one-sided limits on the cut.
//!
//! Every routine is generic over [`Real`], so the same iteration runs in
//! double precision or at any extended mantissa width. Initial guesses are
//! taken from the series at 0, the Puiseux series at `-1/e`, a Padé
//! approximant in between and the `log z - log log z` asymptotics; they are
//! then polished by Halley's method. Near the branch point the residual
//! `w e^w + 1/e` is evaluated through a series in `w + 1` so the iteration does
//! not drown in cancellation.

use crate::complex::Complex;
use crate::error::{domain, Error, Result};
use crate::real::Real;

/// Which side of the cut `(-inf, -1/e]` a boundary value is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CutSide {
    /// `W0(x + i0)`, imaginary part in `(0, pi)`.
    Above,
    /// `W0(x - i0)`, the complex conjugate of the value above.
    Below,
}

/// Position relative to the branch point used by the Puiseux expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PuiseuxSide {
    /// `x = -1/e + delta`, on the real domain of `W0`.
    Inside,
    /// `x = -1/e - delta` approached from the upper half-plane.
    AboveCut,
    /// `x = -1/e - delta` approached from the lower half-plane.
    BelowCut,
}

/// The branch point `-1/e` at the working precision of `like`.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchPoint<R> {
    pub value: R,
}

impl<R: Real> BranchPoint<R> {
    pub fn new(like: &R) -> Self {
        BranchPoint {
            value: -(like.one().exp().recip_r()),
        }
    }
}

trait Recip {
    fn recip_r(self) -> Self;
}

impl<R: Real> Recip for R {
    fn recip_r(self) -> Self {
        self.one() / self
    }
}

/// `-1/e` at the precision of `like`.
pub fn branch_point<R: Real>(like: &R) -> R {
    BranchPoint::new(like).value
}

/// Puiseux coefficients of `W0(-1/e + p^2 / (2e))` in powers of `p`.
const PUISEUX: [f64; 8] = [
    -1.0,
    1.0,
    -1.0 / 3.0,
    11.0 / 72.0,
    -43.0 / 540.0,
    769.0 / 17280.0,
    -221.0 / 8505.0,
    680863.0 / 43545600.0,
];

fn puiseux_eval<R: Real>(p: &Complex<R>, terms: usize) -> Complex<R> {
    let mut acc = p.zero_like();
    for c in PUISEUX[..terms].iter().rev() {
        acc = acc * p.clone();
        acc.re = acc.re + p.re.lit(*c);
    }
    acc
}

/// `h(v) = (v - 1) e^v + 1 = e (w e^w + 1/e)` with `v = w + 1`, accurate for small `|v|`.
fn h_near_branch<R: Real>(v: &Complex<R>) -> Complex<R> {
    if v.abs().to_f64() > 0.25 {
        let e = v.exp();
        return (v.clone() - v.one_like()) * e + v.one_like();
    }
    // sum_{k >= 2} (k - 1) v^k / k!
    let eps = v.re.epsilon().to_f64();
    let mut term = v.clone() * v.clone() * v.lit(0.5, 0.0);
    let mut acc = term.scale(v.re.lit(1.0));
    let mut k = 2u32;
    loop {
        term = (term * v.clone()).scale(v.re.one() / v.re.lit(k as f64 + 1.0));
        k += 1;
        let add = term.scale(v.re.lit((k - 1) as f64));
        acc = acc + add.clone();
        if add.abs().to_f64() <= eps * acc.abs().to_f64() || k > 400 {
            break;
        }
    }
    acc
}

/// Target value of `w e^w`, stored as an offset from the branch point when that matters.
#[derive(Clone)]
enum Target<R> {
    /// `w e^w = z`.
    Plain(Complex<R>),
    /// `w e^w = -1/e + s`.
    Offset(Complex<R>),
}

fn max_iter<R: Real>(like: &R) -> usize {
    20 + like.precision() / 8
}

/// Halley's method on `w e^w = target`.
fn halley<R: Real>(mut w: Complex<R>, target: &Target<R>) -> Complex<R> {
    let eps = w.re.epsilon().to_f64();
    let inv_e = w.re.one().exp().recip_r();
    let mut last_step = f64::INFINITY;
    for _ in 0..max_iter(&w.re) {
        let ew = w.exp();
        let f = match target {
            Target::Plain(z) => w.clone() * ew.clone() - z.clone(),
            Target::Offset(s) => {
                let v = w.add_re(w.re.one());
                h_near_branch(&v).scale(inv_e.clone()) - s.clone()
            }
        };
        let wp1 = w.add_re(w.re.one());
        let fp = ew.clone() * wp1.clone();
        if fp.abs().is_zero() {
            break;
        }
        let two = w.lit(2.0, 0.0);
        let corr = (w.add_re(w.re.lit(2.0))) * f.clone() / (two * wp1);
        let den = fp - corr;
        if den.abs().is_zero() {
            break;
        }
        let step = f / den;
        w = w - step.clone();
        let s = step.abs().to_f64();
        let scale = w.abs().to_f64().max(1e-300);
        if s <= 4.0 * eps * scale {
            break;
        }
        // Rounding noise: the step stopped shrinking once the iterate was already close.
        if s >= last_step && last_step < 1e-6 * scale {
            break;
        }
        last_step = s;
    }
    w
}

/// Newton's method on `w + log(w) = lz`, used for large `|z|` where `e^w` could overflow.
fn newton_log<R: Real>(mut w: Complex<R>, lz: &Complex<R>) -> Complex<R> {
    let eps = w.re.epsilon().to_f64();
    for _ in 0..max_iter(&w.re) {
        let g = w.clone() + w.ln() - lz.clone();
        let gp = w.one_like() + w.recip();
        let step = g / gp;
        w = w - step.clone();
        if step.abs().to_f64() <= 4.0 * eps * w.abs().to_f64().max(1.0) {
            break;
        }
    }
    w
}

/// Asymptotic guess `L1 - L2 + L2/L1` from `L1 = log z`.
fn asymptotic_guess<R: Real>(l1: &Complex<R>) -> Complex<R> {
    let l2 = l1.ln();
    l1.clone() - l2.clone() + l2 / l1.clone()
}

fn c<R: Real>(re: R) -> Complex<R> {
    Complex::real(re)
}

/// `W0(x)` for real `x >= -1/e`.
pub fn w0_real<R: Real>(x: &R) -> Result<R> {
    let bp = branch_point(x);
    if !x.is_finite() {
        return Err(domain!("w0_real: argument is not finite"));
    }
    if *x < bp {
        return Err(domain!("w0_real: argument {:e} is below -1/e", x.to_f64()));
    }
    let s = x.clone() - bp.clone();
    Ok(w0_real_offset(x, &s))
}

/// `W0(-1/e + s)` for `s >= 0`, with `x` the same point (either may carry the accuracy).
fn w0_real_offset<R: Real>(x: &R, s: &R) -> R {
    if x.is_zero() {
        return x.zero();
    }
    let xf = x.to_f64();
    let sf = s.to_f64();
    if sf < 0.3 {
        let p = (s.clone() * x.lit(2.0) * x.one().exp()).sqrt();
        let seed = puiseux_eval(&c(p), 8);
        if sf == 0.0 {
            return x.lit(-1.0);
        }
        return halley(seed, &Target::Offset(c(s.clone()))).re;
    }
    if !xf.is_finite() || xf > 1e20 {
        let l1 = c(x.ln());
        let seed = asymptotic_guess(&l1);
        return newton_log(seed, &l1).re;
    }
    let seed = if xf.abs() < 0.3 {
        xf * (1.0 - xf * (1.0 - 1.5 * xf))
    } else if xf < 3.0 {
        xf * (3.0 + 6.0 * xf + xf * xf) / (3.0 + 9.0 * xf + 5.0 * xf * xf)
    } else {
        let l1 = libm::log(xf);
        let l2 = libm::log(l1);
        l1 - l2 + l2 / l1
    };
    halley(c(x.lit(seed)), &Target::Plain(c(x.clone()))).re
}

/// `W-1(x)` for real `x` in `[-1/e, 0)`.
pub fn wm1_real<R: Real>(x: &R) -> Result<R> {
    let bp = branch_point(x);
    if !x.is_finite() || *x < bp || *x >= x.zero() {
        return Err(domain!("wm1_real: argument {:e} is outside [-1/e, 0)", x.to_f64()));
    }
    let s = x.clone() - bp;
    let sf = s.to_f64();
    if sf == 0.0 {
        return Ok(x.lit(-1.0));
    }
    if sf < 0.25 {
        let p = -(s.clone() * x.lit(2.0) * x.one().exp()).sqrt();
        let seed = puiseux_eval(&c(p), 8);
        return Ok(halley(seed, &Target::Offset(c(s))).re);
    }
    // Log form: w + log(-w) = log(-x), with w < -1.
    let lx = (-x.clone()).ln();
    let lf = lx.to_f64();
    let mut w = x.lit(lf - libm::log(-lf) + libm::log(-lf) / lf);
    if !(w.to_f64() < -1.0) {
        w = x.lit(-1.5);
    }
    let eps = x.epsilon().to_f64();
    for _ in 0..max_iter(x) {
        let g = w.clone() + (-w.clone()).ln() - lx.clone();
        let gp = w.one() + w.one() / w.clone();
        let step = g / gp;
        w = w - step.clone();
        if step.abs().to_f64() <= 4.0 * eps * w.abs().to_f64() {
            break;
        }
    }
    Ok(w)
}

/// Whether `w = a + ib` lies in the image of the principal branch.
fn in_principal_range<R: Real>(w: &Complex<R>) -> bool {
    let a = w.re.to_f64();
    let b = w.im.to_f64();
    if !(a.is_finite() && b.is_finite()) || b.abs() >= core::f64::consts::PI {
        return false;
    }
    if b.abs() < 1e-300 {
        return a >= -1.0 - 1e-6;
    }
    // a > -b cot b, written without dividing by sin b.
    let tol = 1e-9 * (1.0 + a.abs());
    a * libm::sin(b.abs()) + b.abs() * libm::cos(b) > -tol
}

/// `W0(z)` on the slit plane `C \ (-inf, -1/e]`.
pub fn w0_complex<R: Real>(z: &Complex<R>) -> Result<Complex<R>> {
    if !z.is_finite() {
        return Err(domain!("w0_complex: argument is not finite"));
    }
    let bp = branch_point(&z.re);
    if z.im.is_zero() {
        if z.re <= bp {
            return Err(domain!(
                "w0_complex: {:e} lies on the branch cut; use w0_boundary",
                z.re.to_f64()
            ));
        }
        return Ok(c(w0_real(&z.re)?));
    }
    let zf = z.to_c64();
    let az = zf.abs();
    let s = z.add_re(-bp);
    let sf = s.to_c64().abs();
    let mut candidates: [Option<Complex<R>>; 3] = [None, None, None];
    if sf < 0.3 {
        let p = (s.scale(z.re.lit(2.0) * z.re.one().exp())).sqrt();
        let seed = puiseux_eval(&p, 8);
        candidates[0] = Some(halley(seed, &Target::Offset(s.clone())));
    }
    if !az.is_finite() || az > 20.0 {
        let l1 = z.ln();
        candidates[1] = Some(newton_log(asymptotic_guess(&l1), &l1));
    } else {
        let seed = if az < 0.3 {
            zf * (C1 - zf * (C1 - zf.clone().scale(1.5)))
        } else if az < 3.0 {
            let z2 = zf * zf;
            zf * (C3 + zf.scale(6.0) + z2) / (C3 + zf.scale(9.0) + z2.scale(5.0))
        } else {
            asymptotic_guess(&zf.ln())
        };
        let seed = z.lit(seed.re, seed.im);
        candidates[1] = Some(halley(seed, &Target::Plain(z.clone())));
    }
    if az > 0.3 {
        let seed = asymptotic_guess(&zf.ln());
        let seed = z.lit(seed.re, seed.im);
        candidates[2] = Some(halley(seed, &Target::Plain(z.clone())));
    }
    for w in candidates.into_iter().flatten() {
        if in_principal_range(&w) && residual_ok(&w, z) {
            return Ok(w);
        }
    }
    Err(Error::Integrity(alloc::format!(
        "w0_complex failed to converge at {:?}",
        zf
    )))
}

const C1: crate::C64 = crate::C64::c(1.0, 0.0);
const C3: crate::C64 = crate::C64::c(3.0, 0.0);

fn residual_ok<R: Real>(w: &Complex<R>, z: &Complex<R>) -> bool {
    let zf = z.to_c64();
    let az = zf.abs();
    if !(az < 1e150) {
        // Check the log form instead, where w e^w would overflow the double mirror.
        let r = (w.clone() + w.ln() - z.ln()).to_c64().abs();
        return r <= 1e-8 * w.to_c64().abs().max(1.0);
    }
    let wf = w.to_c64();
    let r = (wf * wf.exp() - zf).abs();
    r <= 1e-8 * az.max(1.0)
}

fn conj_if<R: Real>(w: Complex<R>, side: CutSide) -> Complex<R> {
    match side {
        CutSide::Above => w,
        CutSide::Below => w.conj(),
    }
}

/// The one-sided limit `W0(x +- i0)` for `x < -1/e`.
pub fn w0_boundary<R: Real>(x: &R, side: CutSide) -> Result<Complex<R>> {
    let bp = branch_point(x);
    if !x.is_finite() || *x >= bp {
        return Err(domain!(
            "w0_boundary: {:e} is not below the branch point -1/e",
            x.to_f64()
        ));
    }
    let delta = bp - x.clone();
    Ok(conj_if(boundary_above(x, &delta), side))
}

/// `W0(-1/e - delta +- i0)` for `delta > 0`, accurate even when `delta` is tiny.
pub fn w0_boundary_delta<R: Real>(delta: &R, side: CutSide) -> Result<Complex<R>> {
    if !delta.is_finite() || *delta <= delta.zero() {
        return Err(domain!("w0_boundary_delta: delta must be positive"));
    }
    let x = branch_point(delta) - delta.clone();
    Ok(conj_if(boundary_above(&x, delta), side))
}

/// `W0(-R + i0)` (or its conjugate) given `log R`, for `R` beyond floating range.
pub fn w0_boundary_log<R: Real>(log_r: &R, side: CutSide) -> Result<Complex<R>> {
    if !log_r.is_finite() || log_r.to_f64() < 3.0 {
        return Err(domain!("w0_boundary_log: log R must be at least 3"));
    }
    let lz = Complex::new(log_r.clone(), log_r.pi());
    let w = newton_log(asymptotic_guess(&lz), &lz);
    Ok(conj_if(w, side))
}

fn boundary_above<R: Real>(x: &R, delta: &R) -> Complex<R> {
    let df = delta.to_f64();
    let xf = x.to_f64();
    if df < 1e-3 {
        let p = Complex::new(x.zero(), (delta.clone() * x.lit(2.0) * x.one().exp()).sqrt());
        let seed = puiseux_eval(&p, 8);
        let s = c(-delta.clone());
        return halley(seed, &Target::Offset(s));
    }
    if !xf.is_finite() || xf < -20.0 {
        let lz = Complex::new((-x.clone()).ln(), x.pi());
        return newton_log(asymptotic_guess(&lz), &lz);
    }
    let seed = richardson_seed(xf);
    let seed = Complex::new(x.lit(seed.re), x.lit(seed.im));
    let target = if df < 0.3 {
        Target::Offset(c(-delta.clone()))
    } else {
        Target::Plain(c(x.clone()))
    };
    halley(seed, &target)
}

/// Richardson extrapolation of `W0(x + i eps)` to `eps = 0` from `eps = 1e-6, 1e-7, 1e-8`.
fn richardson_seed(x: f64) -> crate::C64 {
    let f = |eps: f64| {
        w0_complex(&crate::C64::c(x, eps)).unwrap_or_else(|_| crate::C64::c(f64::NAN, f64::NAN))
    };
    let (a, b, cc) = (f(1e-6), f(1e-7), f(1e-8));
    // Eliminate the O(eps) and O(eps^2) terms with ratio 10.
    let r1 = (b.scale(10.0) - a).scale(1.0 / 9.0);
    let r2 = (cc.scale(10.0) - b).scale(1.0 / 9.0);
    (r2.scale(100.0) - r1).scale(1.0 / 99.0)
}

/// Derivative `W0(z) / (z (1 + W0(z)))`, equal to 1 at `z = 0`.
pub fn w0_derivative<R: Real>(z: &Complex<R>) -> Result<Complex<R>> {
    if z.re.is_zero() && z.im.is_zero() {
        return Ok(z.one_like());
    }
    let w = w0_complex(z)?;
    Ok(w.clone() / (z.clone() * w.add_re(z.re.one())))
}

/// Two-term Puiseux approximation of `W0` at distance `delta` from `-1/e`.
pub fn w0_puiseux<R: Real>(delta: &R, side: PuiseuxSide) -> Result<Complex<R>> {
    let df = delta.to_f64();
    if !(df > 0.0 && df < 0.1) {
        return Err(domain!("w0_puiseux: delta must lie in (0, 0.1), got {df:e}"));
    }
    let r = (delta.clone() * delta.lit(2.0) * delta.one().exp()).sqrt();
    let m1 = delta.lit(-1.0);
    Ok(match side {
        PuiseuxSide::Inside => Complex::new(m1 + r, delta.zero()),
        PuiseuxSide::AboveCut => Complex::new(m1, r),
        PuiseuxSide::BelowCut => Complex::new(m1, -r),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::Ext;
    use crate::C64;

    const E: f64 = core::f64::consts::E;

    fn resid(w: &C64, z: &C64) -> f64 {
        (*w * w.exp() - *z).abs() / z.abs().max(1.0)
    }

    #[test]
    fn real_principal_branch() {
        assert_eq!(w0_real(&0.0).unwrap(), 0.0);
        assert!((w0_real(&E).unwrap() - 1.0).abs() < 1e-15);
        assert!((w0_real(&branch_point(&0.0)).unwrap() + 1.0).abs() < 1e-7);
        assert!(w0_real(&-0.4).is_err());
        for &x in &[-0.3678, -0.2, 1e-10, 0.5, 2.0, 10.0, 1e5, 1e300] {
            let w = w0_real(&x).unwrap();
            assert!((w * libm::exp(w) - x).abs() <= 1e-14 * x.abs().max(1.0), "x = {x}");
        }
    }

    #[test]
    fn lower_real_branch() {
        assert!((wm1_real(&(-2.0 * libm::exp(-2.0))).unwrap() + 2.0).abs() < 1e-14);
        assert_eq!(wm1_real(&branch_point(&0.0)).unwrap(), -1.0);
        assert!(wm1_real(&0.0).is_err());
        let w = wm1_real(&-1e-300).unwrap();
        assert!(w < -600.0);
        for &x in &[-0.36, -0.3, -0.1, -1e-5] {
            let w = wm1_real(&x).unwrap();
            assert!(w <= -1.0);
            assert!((w * libm::exp(w) - x).abs() <= 1e-15, "x = {x}");
        }
    }

    #[test]
    fn complex_principal_branch() {
        for &(re, im) in &[(1.0, 1.0), (-0.3, 0.01), (-5.0, 1e-9), (-1e6, -3.0), (0.1, -0.2), (-0.36, 1e-5)] {
            let z = C64::c(re, im);
            let w = w0_complex(&z).unwrap();
            assert!(resid(&w, &z) < 1e-14, "z = {re} + {im}i, resid {}", resid(&w, &z));
            assert!(w.im.abs() < core::f64::consts::PI);
            let wc = w0_complex(&z.conj()).unwrap();
            assert!((wc - w.conj()).abs() < 1e-14);
        }
        assert!(w0_complex(&C64::c(-1.0, 0.0)).is_err());
    }

    #[test]
    fn boundary_values() {
        let a = w0_boundary(&-1.0, CutSide::Above).unwrap();
        let b = w0_boundary(&-1.0, CutSide::Below).unwrap();
        assert!((a - b.conj()).abs() < 1e-15);
        assert!(a.im > 0.0 && a.im < core::f64::consts::PI);
        assert!(resid(&a, &C64::c(-1.0, 0.0)) < 1e-15);
        let w = w0_boundary(&-1e12, CutSide::Above).unwrap();
        assert!(core::f64::consts::PI - w.im < 0.2);
        assert!(w0_boundary(&0.0, CutSide::Above).is_err());
    }

    #[test]
    fn boundary_matches_nearby_complex_values() {
        for &x in &[-0.5, -1.0, -3.0, -15.0, -50.0] {
            let a = w0_boundary(&x, CutSide::Above).unwrap();
            let near = w0_complex(&C64::c(x, 1e-12)).unwrap();
            assert!((a - near).abs() < 1e-9, "x = {x}");
        }
    }

    #[test]
    fn puiseux_agrees_to_first_order() {
        for &d in &[1e-4, 1e-6, 1e-8] {
            let inside = w0_real(&(branch_point(&0.0) + d)).unwrap();
            let p = w0_puiseux(&d, PuiseuxSide::Inside).unwrap();
            assert!((inside - p.re).abs() <= 10.0 * d + 1e-9);
            let above = w0_boundary_delta(&d, CutSide::Above).unwrap();
            let p = w0_puiseux(&d, PuiseuxSide::AboveCut).unwrap();
            assert!((above - p).abs() <= 10.0 * d);
        }
    }

    #[test]
    fn derivative() {
        let d = w0_derivative(&C64::c(E, 0.0)).unwrap();
        assert!((d.re - 1.0 / (2.0 * E)).abs() < 1e-15);
        assert_eq!(w0_derivative(&C64::c(0.0, 0.0)).unwrap(), C64::c(1.0, 0.0));
    }

    #[test]
    fn extended_precision() {
        let x = Ext::new(1.0, 256);
        let w = w0_real(&x).unwrap();
        let r = w.clone() * w.exp() - x;
        assert!(r.abs().to_f64() < 1e-70);
        let z = Complex::new(Ext::new(-2.0, 256), Ext::new(0.5, 256));
        let w = w0_complex(&z).unwrap();
        let r = (w.clone() * w.exp() - z).abs();
        assert!(r.to_f64() < 1e-70);
        let d = Ext::new(1e-30, 256);
        let w = w0_boundary_delta(&d, CutSide::Above).unwrap();
        let target = branch_point(&d) - d;
        let r = (w.clone() * w.exp()).add_re(-target).abs();
        assert!(r.to_f64() < 1e-70, "{:?} {:?}", r, w);
    }
}
