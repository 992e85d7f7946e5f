use std::f64::consts::{E, PI};

use modphi_core::combinatorics::{
    gen_poly, rat, rat_int, rising_poly, touchard, ExactPolynomial,
};
use modphi_core::modphi::phi_derivs_wide;
use modphi_core::zeros::*;
use modphi_core::{Error, Family, C64};
use num_rational::BigRational;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::c(re, im)
}

#[test]
fn rising_factorial_zeros_are_the_lattice() {
    let n = 50;
    let m = family_zero_measure(Family::First, n, &rat(n as i64, 1), false).unwrap();
    for (k, &x) in m.points().iter().enumerate() {
        assert!((x - k as f64 / n as f64).abs() < 1e-12, "{k}: {x}");
    }
    assert!((m.total_mass() - 1.0).abs() < 1e-15);
}

#[test]
fn second_touchard_polynomial() {
    let r = real_roots(&touchard(2).unwrap()).unwrap();
    assert_eq!(r, vec![-1.0, 0.0]);
}

#[test]
fn smallest_scaled_touchard_zero_moves_towards_minus_e() {
    let mut last = 0.0;
    for n in [40usize, 80, 160] {
        let m = family_zero_measure(Family::Second, n, &rat(n as i64, 1), false).unwrap();
        let top = m.max().unwrap();
        assert!(top < E && top > last, "n = {n}: {top}");
        last = top;
    }
}

fn vieta_check(p: &ExactPolynomial) {
    let roots = real_roots(p).unwrap();
    let d = p.degree().unwrap();
    assert_eq!(roots.len(), d);
    let lead = p.coeff(d);
    let sum: f64 = roots.iter().sum();
    let exact = -modphi_core::combinatorics::rational_to_f64(&(p.coeff(d - 1) / lead));
    assert!((sum - exact).abs() <= 1e-8 * exact.abs().max(1.0), "sum {sum} vs {exact}");
}

#[test]
fn root_sums_match_vieta() {
    vieta_check(&touchard(60).unwrap());
    vieta_check(&rising_poly(40).unwrap());
    vieta_check(&gen_poly(Family::Third, 40, &rat(80, 1), false).unwrap());
    vieta_check(&gen_poly(Family::Third, 30, &rat(61, 2), false).unwrap());
}

#[test]
fn sturm_counts_confirm_the_isolation() {
    let p = touchard(30).unwrap();
    let roots = real_roots(&p).unwrap();
    assert_eq!(sturm_count(&p, -1e6, 1.0).unwrap(), 30);
    for w in roots.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let right = sturm_count(&p, mid, 1.0).unwrap();
        let below = roots.iter().filter(|&&r| r > mid).count();
        assert_eq!(right, below);
    }
}

#[test]
fn generating_functions_are_real_rooted() {
    for n in [10usize, 60, 200] {
        let p2 = gen_poly(Family::Second, n, &rat(2 * n as i64, 1), false).unwrap();
        let r2 = real_roots(&p2).unwrap();
        assert!(r2.iter().all(|&r| r <= 0.0));
        let p3 = gen_poly(Family::Third, n, &rat(2 * n as i64, 1), false).unwrap();
        let r3 = real_roots(&p3).unwrap();
        assert_eq!(r3.len(), n);
        assert!(r3.iter().all(|&r| r <= 1e-12));
    }
    // Non-integer theta above n - 1.
    let p = gen_poly(Family::Third, 25, &rat(49, 2), false).unwrap();
    assert_eq!(real_roots(&p).unwrap().len(), 25);
}

#[test]
fn nonreal_roots_raise_integrity() {
    let p = ExactPolynomial::from_ints([2, -2, 1]);
    assert!(matches!(real_roots(&p), Err(Error::Integrity(_))));
    assert!(matches!(empirical_measure(&ExactPolynomial::from_ints([-1, 1]), 1.0), Err(Error::Integrity(_))));
}

#[test]
fn empirical_stieltjes_basics() {
    let m = RootMeasure::new(vec![1.0], 1.0).unwrap();
    assert_eq!(stieltjes_empirical(&m, c(2.0, 0.0)).unwrap(), c(1.0, 0.0));
    assert!(stieltjes_empirical(&m, c(1.0, 0.0)).is_err());
    let m = empirical_measure(&touchard(20).unwrap(), 20.0).unwrap();
    assert!((m.total_mass() - 1.0).abs() < 1e-15);
    assert!(m.stieltjes(c(0.3, 0.5)).unwrap().im < 0.0);
}

#[test]
fn elbert_transform() {
    let z = c(1e6, 0.0);
    let s = stieltjes_limit_elbert(z).unwrap();
    assert!((s.re * 1e6 - 1.0).abs() < 1e-5);
    let s = stieltjes_limit_elbert(c(-1.0, 0.0)).unwrap();
    assert_eq!(s.im, 0.0);
    assert!(stieltjes_limit_elbert(c(1.0, 0.0)).is_err());
    let total = LimitSpec::Elbert { theta: 1.0 }.integrate_density(|_| 1.0, 1e-10).unwrap();
    assert!((total - 1.0).abs() < 1e-6);
}

#[test]
fn elbert_density_is_decreasing() {
    let mut last = f64::INFINITY;
    for i in 1..400 {
        let t = E * i as f64 / 400.0;
        let f = elbert_density(t).unwrap();
        assert!(f < last && f > 0.0, "t = {t}");
        last = f;
    }
    assert_eq!(elbert_density(3.0).unwrap(), 0.0);
}

#[test]
fn allocation_transform_mass_and_phi_identity() {
    for &theta in &[0.3, 0.7, 1.0, 1.5, 2.0, 5.0] {
        // The t^{-3/2} tail at theta = 1 makes s G(s) approach the mass like |s|^{-1/2}.
        let s = if theta == 1.0 { -1e10 } else { -1e7 };
        let v = stieltjes_limit_z3(c(s, 0.0), theta).unwrap();
        let mass = LimitSpec::Allocation { theta }.total_mass();
        assert!((s * v.re - mass).abs() < 1e-4, "theta {theta}: {}", s * v.re);
        assert_eq!(v.im, 0.0);
        let nearer = stieltjes_limit_z3(c(s / 100.0, 0.0), theta).unwrap();
        assert!((s * v.re - mass).abs() <= (s / 100.0 * nearer.re - mass).abs() + 1e-12);
        for &(re, im) in &[(-2.0, 0.0), (-0.5, 0.0), (-1.0, 0.0), (1.0, 1.0), (3.0, -0.4), (-0.2, 2.0)] {
            let z = c(re, im);
            let a = stieltjes_limit_z3(z, theta).unwrap();
            let (d1, _) = phi_derivs_wide(Family::Third, &(-z).ln(), theta).unwrap();
            let b = d1 / z;
            assert!((a - b).abs() <= 1e-10 * b.abs().max(1.0), "theta {theta} z {z:?}");
        }
    }
    assert!(stieltjes_limit_z3(c(2.0, 0.0), 2.0).is_err());
}

#[test]
fn density_g_spot_values_and_asymptotics() {
    assert!((m_theta(2.0) - 1.0 / (2.0 * (-0.5f64).exp() - 1.0)).abs() < 1e-12);
    assert!((m_theta(2.0) - 4.6935).abs() < 1e-4);
    assert!(m_theta(1.0).is_infinite());
    assert_eq!(density_g(2.0, 5.0).unwrap(), 0.0);
    assert!(density_g(2.0, 0.0).is_err());
    // Tail at theta = 1.
    let t = 1e6;
    let r = density_g(1.0, t).unwrap() * 2f64.sqrt() * PI * t.powf(1.5);
    assert!((r - 1.0).abs() < 1e-3, "{r}");
    // Square-root edge at m_theta.
    for &theta in &[0.5, 2.0, 3.0] {
        let m = m_theta(theta);
        let k = theta.powf(1.5) * (2.0 * (1.0 - 1.0 / theta).exp()).sqrt()
            / (PI * m * m * (m + 1.0) * (theta - 1.0).powi(2));
        let eps = 1e-6 * m;
        let r = density_g(theta, m - eps).unwrap() / (k * eps.sqrt());
        assert!((r - 1.0).abs() < 1e-3, "theta {theta}: {r}");
    }
    // Near zero the ratio g t log^2 t tends to 1 only logarithmically.
    let ratio = |t: f64| density_g(2.0, t).unwrap() * t * t.ln().powi(2);
    let (a, b) = (ratio(1e-6), ratio(1e-100));
    assert!((b - 1.0).abs() < (a - 1.0).abs());
}

#[test]
fn density_totals() {
    for &theta in &[0.3, 0.7, 1.0, 1.5, 2.0, 5.0] {
        let spec = LimitSpec::Allocation { theta };
        let total = spec.integrate_density(|_| 1.0, 1e-10).unwrap();
        assert!((total - spec.total_mass()).abs() < 1e-4, "theta {theta}: {total}");
    }
}

#[test]
fn density_reproduces_the_transform() {
    let pts = [c(-1.0, 1.0), c(2.0, 0.5), c(0.5, -1.0), c(-3.0, 0.2), c(10.0, 3.0)];
    for &theta in &[0.5, 1.0, 2.0] {
        let spec = LimitSpec::Allocation { theta };
        for &z in &pts {
            let a = spec.stieltjes(z).unwrap();
            let b = spec.stieltjes_by_quadrature(z, 1e-10).unwrap();
            assert!((a - b).abs() < 1e-4, "theta {theta} z {z:?}");
        }
    }
}

#[test]
fn laguerre_basics_and_duality() {
    assert_eq!(laguerre(0, &rat(7, 3)), ExactPolynomial::one());
    // L_1^{(a)}(x) = 1 + a - x
    assert_eq!(laguerre(1, &rat(1, 2)), ExactPolynomial::new(vec![rat(3, 2), rat(-1, 1)]));
    for n in 1..=12usize {
        for i in 0..n {
            let xi = |k: usize| {
                let mut mono = ExactPolynomial::monomial(rat(1, 1), k);
                if k % 2 == 1 {
                    mono = -mono;
                }
                mono.scale(&(rat(1, 1) / rat_int(modphi_core::combinatorics::factorial(k))))
            };
            let lhs = &xi(i) * &laguerre(n, &rat_int(i as i64 - n as i64));
            let rhs = &xi(n) * &laguerre(i, &rat_int(n as i64 - i as i64));
            assert_eq!(lhs, rhs, "n {n} i {i}");
        }
    }
}

#[test]
fn laguerre_zeros_are_positive() {
    for n in [5usize, 12, 20] {
        for alpha in [rat(-1, 2), rat(0, 1), rat(5, 3), rat(10, 1)] {
            let r = real_roots(&laguerre(n, &alpha)).unwrap();
            assert_eq!(r.len(), n);
            assert!(r.iter().all(|&x| x > 0.0));
        }
    }
}

#[test]
fn free_convolution_unit_and_scaling() {
    let p = ExactPolynomial::new(vec![rat(3, 7), rat(-2, 1), rat(0, 1), rat(5, 2)]);
    let q = ExactPolynomial::new(vec![rat(1, 1), rat(1, 3), rat(-4, 5), rat(2, 9), rat(1, 1)]);
    for n in 4..=10 {
        assert_eq!(finite_free_mult_conv(&free_unit(n), &p, n).unwrap(), p);
        let c3 = rat(3, 1);
        let lhs = finite_free_mult_conv(&p.compose_scale(&c3), &q.compose_scale(&(rat(1, 1) / &c3)), n).unwrap();
        assert_eq!(lhs, finite_free_mult_conv(&p, &q, n).unwrap());
    }
    assert!(finite_free_mult_conv(&q, &p, 3).is_err());
}

/// `T_n(-x)`.
fn touchard_reflected(n: usize) -> ExactPolynomial {
    touchard(n).unwrap().reflect()
}

#[test]
fn third_generating_function_as_free_convolution() {
    for n in 1..=15usize {
        let thetas: Vec<BigRational> = vec![rat(3, 1), rat(n as i64 + 2, 1), rat(7 * n as i64, 2)];
        for theta in thetas {
            let g = gen_poly(Family::Third, n, &theta, true).unwrap().reflect();
            let pow = (0..n).fold(rat(1, 1), |acc, _| acc * &theta);
            let lhs = g.scale(&pow);
            let rhs = finite_free_mult_conv(&touchard_reflected(n), &laguerre_reversed(n, &theta), n).unwrap();
            assert_eq!(lhs, rhs, "n {n} theta {theta}");
        }
    }
}

#[test]
fn marchenko_pastur() {
    let spec = LimitSpec::MarchenkoPastur { theta: 2.0 };
    let total = spec.integrate_density(|_| 1.0, 1e-10).unwrap();
    assert!((total - 1.0).abs() < 1e-6);
    let (a, b) = mp_support_endpoints(4.0);
    assert_eq!((a, b), (1.0, 9.0));
    assert_eq!(mp_density(4.0, 0.999), 0.0);
    assert!(mp_density(4.0, 1.001) > 0.0);
    assert_eq!(mp_atom(0.25), 0.75);
    assert!((mp_cdf(0.25, 1e9) - 1.0).abs() < 1e-8);
}

#[test]
fn laguerre_zeros_follow_marchenko_pastur() {
    let (n, theta) = (100usize, 4.0);
    let p = laguerre(n, &rat_int(3 * n as i64)).compose_scale(&rat_int(n as i64));
    let roots = real_roots(&p).unwrap();
    let m = RootMeasure::new(roots, n as f64).unwrap();
    let mut ks = 0.0f64;
    for (j, &x) in m.points().iter().enumerate() {
        let f = mp_cdf(theta, x);
        ks = ks.max((f - j as f64 / n as f64).abs()).max((f - (j + 1) as f64 / n as f64).abs());
    }
    assert!(ks < 0.1, "KS distance {ks}");
}

proptest! {
    #[test]
    fn unit_is_neutral(c in proptest::collection::vec((-20i64..20, 1i64..9), 1..8)) {
        let p = ExactPolynomial::new(c.iter().map(|&(a, b)| rat(a, b)).collect());
        let n = 8;
        prop_assert_eq!(finite_free_mult_conv(&free_unit(n), &p, n).unwrap(), p);
    }

    #[test]
    fn herglotz_sign(pts in proptest::collection::vec(0.0f64..10.0, 1..30), re in -5.0f64..15.0, im in 0.01f64..5.0) {
        let m = RootMeasure::new(pts, 3.0).unwrap();
        prop_assert!(m.stieltjes(c(re, im)).unwrap().im < 0.0);
    }

    #[test]
    fn limit_transforms_are_herglotz(theta in 0.2f64..6.0, re in -5.0f64..8.0, im in 0.01f64..5.0) {
        for spec in [LimitSpec::Allocation { theta }, LimitSpec::Elbert { theta }, LimitSpec::Uniform { theta }] {
            prop_assert!(spec.stieltjes(c(re, im)).unwrap().im < 0.0);
        }
    }
}
