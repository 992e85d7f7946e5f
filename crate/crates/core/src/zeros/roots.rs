//! Real-root isolation for real-rooted polynomials with exact coefficients.
//!
//! Approximations come from Laguerre's method with implicit (Maehly)
//! deflation, sweeping from the left Fujiwara bound. The iterates are
//! doubles, but `p`, `p'` and `p''` are evaluated exactly at each dyadic
//! iterate, so huge or wildly scaled coefficients cost bits rather than
//! accuracy. Every root is then certified by exact sign changes of `p` at the
//! ends of pairwise disjoint intervals of radius at most the tolerance; `d`
//! such intervals for a degree-`d` polynomial pin down each root exactly once.
//! When the certificate fails the roots are isolated again with an exact
//! Sturm sequence.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::ExactPolynomial;
use crate::error::{domain, Error, Result};
use crate::real::{ln_biguint, ratio_to_f64};

/// Largest degree accepted by [`real_roots`].
pub const MAX_DEGREE: usize = 1000;

/// Tuning of [`real_roots_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootOptions {
    /// Certified absolute accuracy, relative to the largest root magnitude.
    pub rel_tol: f64,
    /// Largest degree for which the exact Sturm fallback is attempted.
    pub sturm_max_degree: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            rel_tol: 1e-10,
            sturm_max_degree: 400,
        }
    }
}

/// A polynomial with integer coefficients, `c[k]` multiplying `x^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

/// `x = m * 2^-s` with `s >= 0`.
#[derive(Clone, Debug)]
struct Dyadic {
    m: BigInt,
    s: u64,
}

fn dyadic(x: f64) -> Dyadic {
    if x == 0.0 {
        return Dyadic { m: BigInt::zero(), s: 0 };
    }
    let bits = x.to_bits();
    let neg = bits >> 63 == 1;
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mut mant, mut e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    let tz = mant.trailing_zeros().min(63) as i64;
    mant >>= tz;
    e += tz;
    let mut m = BigInt::from(mant);
    if neg {
        m = -m;
    }
    if e >= 0 {
        Dyadic { m: m << (e as u64), s: 0 }
    } else {
        Dyadic { m, s: (-e) as u64 }
    }
}

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|v| v.is_zero()) {
            c.pop();
        }
        IntPoly { c }
    }

    /// Primitive integer multiple of a rational polynomial.
    pub fn from_exact(p: &ExactPolynomial) -> Self {
        IntPoly::new(p.primitive())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, v)| v * BigInt::from(k))
                .collect(),
        )
    }

    /// `2^{s d} p(m 2^-s)` for `d` the degree.
    fn eval_scaled(&self, x: &Dyadic) -> BigInt {
        let Some(d) = self.degree() else {
            return BigInt::zero();
        };
        let mut r = self.c[d].clone();
        for k in (0..d).rev() {
            r *= &x.m;
            if !self.c[k].is_zero() {
                r += &self.c[k] << (x.s * (d - k) as u64);
            }
        }
        r
    }

    /// Exact sign of `p(x)`.
    pub fn sign_at(&self, x: f64) -> i8 {
        sign_of(&self.eval_scaled(&dyadic(x)))
    }

    /// Number of roots equal to zero and the polynomial with them divided out.
    fn split_zero(&self) -> (usize, IntPoly) {
        let z = self.c.iter().take_while(|v| v.is_zero()).count();
        (z, IntPoly::new(self.c[z..].to_vec()))
    }

    fn content_free(mut self) -> Self {
        let g = self.c.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if !g.is_zero() && !g.is_one() {
            for v in self.c.iter_mut() {
                *v /= &g;
            }
        }
        self
    }

    /// Pseudo-remainder of `self` modulo `b`, scaled by a positive constant.
    fn positive_prem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("nonzero divisor");
        let lb = b.c[db].clone();
        let mut r = self.c.clone();
        let mut flips = 0usize;
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for v in r.iter_mut() {
                *v *= &lb;
            }
            flips += 1;
            for k in 0..=db {
                r[dr - db + k] -= &lr * &b.c[k];
            }
            while r.last().is_some_and(|v| v.is_zero()) {
                r.pop();
            }
        }
        let mut out = IntPoly::new(r).content_free();
        if lb.is_negative() && flips % 2 == 1 {
            for v in out.c.iter_mut() {
                *v = -core::mem::take(v);
            }
        }
        out
    }

    /// Upper bound on the magnitude of every root (Fujiwara).
    fn root_bound(&self) -> f64 {
        let d = match self.degree() {
            Some(d) if d > 0 => d,
            _ => return 0.0,
        };
        let ln_lead = ln_biguint(&0.0f64, self.c[d].magnitude());
        let mut best = f64::NEG_INFINITY;
        for k in 1..=d {
            let c = &self.c[d - k];
            if c.is_zero() {
                continue;
            }
            let mut l = ln_biguint(&0.0f64, c.magnitude()) - ln_lead;
            if k == d {
                l -= core::f64::consts::LN_2;
            }
            best = best.max(l / k as f64);
        }
        2.0 * libm::exp(best)
    }
}

fn sign_of(v: &BigInt) -> i8 {
    match v.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Exact Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &IntPoly) -> Self {
        let mut seq = vec![p.clone(), p.derivative().content_free()];
        loop {
            let n = seq.len();
            if seq[n - 1].degree().is_none_or(|d| d == 0) {
                break;
            }
            let r = seq[n - 2].positive_prem(&seq[n - 1]);
            if r.degree().is_none() {
                break;
            }
            let neg = IntPoly::new(r.c.iter().map(|v| -v).collect());
            seq.push(neg);
        }
        SturmSequence { seq }
    }

    fn variations(&self, x: f64) -> usize {
        let xd = dyadic(x);
        let mut last = 0i8;
        let mut v = 0;
        for p in &self.seq {
            let s = sign_of(&p.eval_scaled(&xd));
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count(&self, a: f64, b: f64) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Number of distinct real roots of `p` in `(a, b]`, by an exact Sturm sequence.
pub fn sturm_count(p: &ExactPolynomial, a: f64, b: f64) -> Result<usize> {
    let ip = IntPoly::from_exact(p);
    if ip.degree().is_none() {
        return Err(domain!("the zero polynomial has no finite root count"));
    }
    Ok(SturmSequence::new(&ip).count(a, b))
}

/// All real roots of a real-rooted polynomial, ascending, certified to `1e-10` times the largest magnitude.
pub fn real_roots(p: &ExactPolynomial) -> Result<Vec<f64>> {
    real_roots_with(p, &RootOptions::default())
}

pub fn real_roots_with(p: &ExactPolynomial, opts: &RootOptions) -> Result<Vec<f64>> {
    let ip = IntPoly::from_exact(p);
    let Some(d) = ip.degree() else {
        return Err(domain!("the zero polynomial has no isolated roots"));
    };
    if d > MAX_DEGREE {
        return Err(domain!("degree {d} exceeds the supported maximum {MAX_DEGREE}"));
    }
    let (zeros, q) = ip.split_zero();
    let mut roots = vec![0.0; zeros];
    if q.degree().unwrap_or(0) > 0 {
        let found = match laguerre_sweep(&q).and_then(|r| certify(&q, r, opts.rel_tol)) {
            Ok(r) => r,
            Err(_) if q.degree().unwrap_or(0) <= opts.sturm_max_degree => sturm_roots(&q, opts.rel_tol)?,
            Err(e) => return Err(e),
        };
        roots.extend(found);
    }
    roots.sort_by(|a, b| a.total_cmp(b));
    if roots.len() != d {
        return Err(Error::Integrity(alloc::format!(
            "found {} real roots for a polynomial of degree {d}",
            roots.len()
        )));
    }
    Ok(roots)
}

struct Derivs {
    p: IntPoly,
    d1: IntPoly,
    d2: IntPoly,
}

impl Derivs {
    fn new(p: &IntPoly) -> Self {
        let d1 = p.derivative();
        let d2 = d1.derivative();
        Derivs { p: p.clone(), d1, d2 }
    }

    /// `(p'/p, p''/p)` at `x`, or `None` when `x` is an exact root.
    fn ratios(&self, x: f64) -> Option<(f64, f64)> {
        let xd = dyadic(x);
        let p0 = self.p.eval_scaled(&xd);
        if p0.is_zero() {
            return None;
        }
        let p1 = self.d1.eval_scaled(&xd) << xd.s;
        let g = ratio_to_f64(&p1, &p0);
        let p2 = if self.d2.degree().is_some() {
            self.d2.eval_scaled(&xd) << (2 * xd.s)
        } else {
            BigInt::zero()
        };
        Some((g, ratio_to_f64(&p2, &p0)))
    }
}

/// One root of `p / prod (x - r_j)` starting from `x0`, left of the wanted root.
fn laguerre_root(dv: &Derivs, found: &[f64], m: usize, x0: f64) -> Option<f64> {
    let mf = m as f64;
    let mut x = x0;
    let mut last_step = f64::INFINITY;
    for _ in 0..200 {
        let Some((g0, h0)) = dv.ratios(x) else {
            return Some(x);
        };
        let (mut g, mut h) = (g0, g0 * g0 - h0);
        for &r in found {
            let u = 1.0 / (x - r);
            g -= u;
            h -= u * u;
        }
        if m == 1 {
            let step = 1.0 / g;
            x -= step;
            if step.abs() <= 4.0 * f64::EPSILON * x.abs() {
                return Some(x);
            }
            continue;
        }
        let disc = ((mf - 1.0) * (mf * h - g * g)).max(0.0);
        let sq = libm::sqrt(disc);
        let den = if g >= 0.0 { g + sq } else { g - sq };
        if den == 0.0 || !den.is_finite() {
            return None;
        }
        let step = mf / den;
        if !step.is_finite() {
            return None;
        }
        let next = x - step;
        let tiny = 4.0 * f64::EPSILON * next.abs().max(f64::MIN_POSITIVE);
        if step.abs() <= tiny || (step.abs() >= last_step && step.abs() < 1e-9 * x.abs().max(1e-300)) {
            return Some(next);
        }
        last_step = step.abs();
        x = next;
    }
    None
}

fn laguerre_sweep(p: &IntPoly) -> Result<Vec<f64>> {
    let d = p.degree().unwrap_or(0);
    let dv = Derivs::new(p);
    let bound = p.root_bound();
    if !bound.is_finite() {
        return Err(Error::Precision("root bound overflows double range".into()));
    }
    let start = -1.01 * bound - 1.0;
    let mut found: Vec<f64> = Vec::with_capacity(d);
    let mut x0 = start;
    let mut restarts = 0;
    while found.len() < d {
        let m = d - found.len();
        match laguerre_root(&dv, &found, m, x0) {
            Some(r) if r.is_finite() && !found.contains(&r) => {
                found.push(r);
                x0 = r + 1e-6 * r.abs().max(1e-300);
            }
            _ => {
                // Restart from the far left, where convergence to the smallest remaining root is monotone.
                restarts += 1;
                if restarts > d + 4 || x0 == start {
                    return Err(Error::Integrity("Laguerre iteration did not converge".into()));
                }
                x0 = start;
            }
        }
    }
    Ok(found)
}

fn certify(p: &IntPoly, mut roots: Vec<f64>, rel_tol: f64) -> Result<Vec<f64>> {
    roots.sort_by(|a, b| a.total_cmp(b));
    let scale = roots.iter().fold(0.0f64, |m, r| m.max(r.abs())).max(f64::MIN_POSITIVE);
    let tol = rel_tol * scale;
    let n = roots.len();
    for j in 0..n {
        let r = roots[j];
        let mut rad = tol;
        if j > 0 {
            rad = rad.min(0.25 * (r - roots[j - 1]));
        }
        if j + 1 < n {
            rad = rad.min(0.25 * (roots[j + 1] - r));
        }
        let ulp = 4.0 * f64::EPSILON * r.abs().max(f64::MIN_POSITIVE);
        rad = rad.max(ulp);
        let (a, b) = (r - rad, r + rad);
        if (j > 0 && a <= roots[j - 1] + rad) || !(a < r && r < b) {
            return Err(Error::Integrity(alloc::format!("roots near {r:e} are not separated in double precision")));
        }
        let (sa, sb) = (p.sign_at(a), p.sign_at(b));
        if sa * sb > 0 {
            return Err(Error::Integrity(alloc::format!("no sign change certifies the root near {r:e}")));
        }
    }
    Ok(roots)
}

fn sturm_roots(p: &IntPoly, rel_tol: f64) -> Result<Vec<f64>> {
    let sturm = SturmSequence::new(p);
    let bound = p.root_bound() * 1.01 + 1.0;
    let total = sturm.count(-bound, bound);
    let d = p.degree().unwrap_or(0);
    if total != d {
        return Err(Error::Integrity(alloc::format!(
            "Sturm sequence reports {total} distinct real roots for degree {d}"
        )));
    }
    let mut isolated = Vec::with_capacity(d);
    let mut stack = vec![(-bound, bound, total)];
    while let Some((a, b, k)) = stack.pop() {
        if k == 0 {
            continue;
        }
        if k == 1 {
            isolated.push((a, b));
            continue;
        }
        let mid = 0.5 * (a + b);
        if !(a < mid && mid < b) {
            return Err(Error::Integrity("roots are not separated in double precision".into()));
        }
        let left = sturm.count(a, mid);
        stack.push((a, mid, left));
        stack.push((mid, b, k - left));
    }
    let scale = bound;
    let mut out = Vec::with_capacity(d);
    for (mut a, mut b) in isolated {
        // The single root lies in (a, b]; p may vanish at b.
        if p.sign_at(b) == 0 {
            out.push(b);
            continue;
        }
        let sb = p.sign_at(b);
        while b - a > rel_tol * scale.min(b.abs().max(a.abs())).max(f64::MIN_POSITIVE) {
            let mid = 0.5 * (a + b);
            if !(a < mid && mid < b) {
                break;
            }
            let s = p.sign_at(mid);
            if s == 0 {
                a = mid;
                b = mid;
                break;
            }
            if s == sb {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}
