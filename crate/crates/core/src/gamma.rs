//! Complex Gamma function by the Lanczos approximation (g = 7, nine terms)
//! with the reflection formula on the left half-plane.

use core::f64::consts::PI;

use crate::complex::C64;

const G: f64 = 7.0;
const COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Gamma(z)` for `Re z >= 1/2` (principal branch of the Lanczos form).
fn ln_gamma_right(z: C64) -> C64 {
    let z = z.add_re(-1.0);
    let mut a = C64::c(COEF[0], 0.0);
    for (k, &c) in COEF.iter().enumerate().skip(1) {
        a = a + C64::c(c, 0.0) / z.add_re(k as f64);
    }
    let t = z.add_re(G + 0.5);
    let half_ln_2pi = 0.5 * libm::log(2.0 * PI);
    z.add_re(0.5) * t.ln() - t + a.ln() + C64::c(half_ln_2pi, 0.0)
}

fn sin_pi(z: C64) -> C64 {
    // sin(pi z) with the real part reduced mod 2 to keep the argument small.
    let re = z.re - 2.0 * libm::round(z.re / 2.0);
    let (x, y) = (PI * re, PI * z.im);
    C64::c(libm::sin(x) * libm::cosh(y), libm::cos(x) * libm::sinh(y))
}

/// `Gamma(z)`; infinite at the poles `0, -1, -2, ...`.
pub fn gamma(z: C64) -> C64 {
    let r = rgamma(z);
    if r.re == 0.0 && r.im == 0.0 {
        return C64::c(f64::INFINITY, 0.0);
    }
    r.recip()
}

/// `1 / Gamma(z)`, an entire function (exactly zero at the poles of Gamma).
pub fn rgamma(z: C64) -> C64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re == libm::round(z.re) {
        return C64::c(0.0, 0.0);
    }
    if z.re < 0.5 {
        // 1/Gamma(z) = Gamma(1 - z) sin(pi z) / pi
        let g = ln_gamma_right(C64::c(1.0 - z.re, -z.im)).exp();
        return (g * sin_pi(z)).scale(1.0 / PI);
    }
    (-ln_gamma_right(z)).exp()
}
