use std::time::Instant;

use modphi_core::combinatorics::{
    bell, dist, factorial, gen_poly, rat, rat_int, stirling, touchard_eval, triangle, DiscreteDist, ExactPolynomial,
    Kind,
};
use modphi_core::{Error, Family, C64};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn cycle_count(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut cycles = 0;
    for s in 0..p.len() {
        if !seen[s] {
            cycles += 1;
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
            }
        }
    }
    cycles
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Counts by cycle number over all permutations of `n` points.
fn permutation_counts(n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n + 1];
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        counts[cycle_count(&p)] += 1;
        if !next_permutation(&mut p) {
            break;
        }
    }
    counts
}

/// Counts by block number over all set partitions of `n` points (restricted growth strings).
fn partition_counts(n: usize) -> Vec<u64> {
    fn rec(a: &mut Vec<usize>, n: usize, max: usize, counts: &mut [u64]) {
        if a.len() == n {
            counts[max] += 1;
            return;
        }
        for b in 0..=max {
            a.push(b);
            rec(a, n, max.max(b + 1), counts);
            a.pop();
        }
    }
    let mut counts = vec![0u64; n + 1];
    rec(&mut Vec::new(), n, 0, &mut counts);
    counts
}

/// Counts by number of occupied boxes over all `theta^n` placements.
fn occupancy_counts(n: usize, theta: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n + 1];
    let total = theta.pow(n as u32);
    for mut code in 0..total {
        let mut used = vec![false; theta];
        for _ in 0..n {
            used[code % theta] = true;
            code /= theta;
        }
        counts[used.iter().filter(|&&u| u).count()] += 1;
    }
    counts
}

#[test]
fn stirling_numbers_match_enumeration() {
    let start = Instant::now();
    for n in 1..=8 {
        let perms = permutation_counts(n);
        let parts = partition_counts(n);
        for k in 1..=n {
            assert_eq!(stirling(Kind::First, n, k).unwrap(), BigUint::from(perms[k]), "first ({n},{k})");
            assert_eq!(stirling(Kind::Second, n, k).unwrap(), BigUint::from(parts[k]), "second ({n},{k})");
        }
    }
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn spot_values() {
    assert_eq!(stirling(Kind::First, 4, 2).unwrap(), BigUint::from(11u32));
    assert_eq!(stirling(Kind::Second, 4, 2).unwrap(), BigUint::from(7u32));
    assert_eq!(bell(1).unwrap(), BigUint::one());
    assert_eq!(bell(5).unwrap(), BigUint::from(52u32));
    for n in 1..40 {
        assert_eq!(stirling(Kind::Second, n, n).unwrap(), BigUint::one());
        assert_eq!(stirling(Kind::First, n, 1).unwrap(), factorial(n - 1));
    }
}

#[test]
fn out_of_range_arguments() {
    assert!(matches!(stirling(Kind::First, 3, 4), Err(Error::Domain(_))));
    assert!(matches!(stirling(Kind::Second, 3, 0), Err(Error::Domain(_))));
    assert!(matches!(stirling(Kind::Second, 0, 0), Err(Error::Domain(_))));
    assert!(matches!(bell(0), Err(Error::Domain(_))));
}

#[test]
fn bell_is_touchard_at_one() {
    for n in 1..=20 {
        let t = touchard_eval(n, &BigRational::one()).unwrap();
        assert_eq!(t, BigRational::from_integer(BigInt::from(bell(n).unwrap())));
    }
}

#[test]
fn row_identities_and_recurrences() {
    let first = triangle(Kind::First);
    let second = triangle(Kind::Second);
    for n in 1..=120 {
        let r1 = first.row(n).unwrap();
        let r2 = second.row(n).unwrap();
        let s1: BigUint = r1.iter().sum();
        let s2: BigUint = r2.iter().sum();
        assert_eq!(s1, factorial(n));
        assert_eq!(s2, bell(n).unwrap());
        let n1 = first.row(n + 1).unwrap();
        let n2 = second.row(n + 1).unwrap();
        let at = |r: &[BigUint], k: usize| r.get(k).cloned().unwrap_or_else(BigUint::zero);
        for k in 1..=n + 1 {
            assert_eq!(at(&n1, k), BigUint::from(n) * at(&r1, k) + at(&r1, k - 1));
            assert_eq!(at(&n2, k), BigUint::from(k) * at(&r2, k) + at(&r2, k - 1));
        }
    }
}

#[test]
fn powers_expand_in_falling_factorials() {
    // x^n = sum_k S2(n,k) x (x-1) ... (x-k+1)
    for n in 1..=30 {
        let mut falling = ExactPolynomial::one();
        let mut sum = ExactPolynomial::zero();
        for k in 1..=n {
            falling = &falling * &ExactPolynomial::from_roots(&[rat_int(k as i64 - 1)]);
            let c = BigRational::from_integer(BigInt::from(stirling(Kind::Second, n, k).unwrap()));
            sum = &sum + &falling.scale(&c);
        }
        assert_eq!(sum, ExactPolynomial::monomial(BigRational::one(), n));
    }
}

#[test]
fn small_laws() {
    let d = dist(Family::First, 2, &rat(1, 1)).unwrap();
    assert_eq!(d.pmf(1), rat(1, 2));
    assert_eq!(d.pmf(2), rat(1, 2));
    let g = gen_poly(Family::Second, 3, &rat(1, 1), false).unwrap();
    assert_eq!(g, ExactPolynomial::new(vec![rat(0, 1), rat(1, 5), rat(3, 5), rat(1, 5)]));
    for n in 1..10 {
        let d = dist(Family::Third, n, &rat(1, 1)).unwrap();
        assert_eq!(d.pmf(1), rat(1, 1));
        assert_eq!(d.degree(), 1);
    }
}

#[test]
fn occupancy_law_matches_enumeration() {
    for n in 1..=6 {
        for theta in 1..=5 {
            let counts = occupancy_counts(n, theta);
            let total = theta.pow(n as u32) as i64;
            let d = dist(Family::Third, n, &rat(theta as i64, 1)).unwrap();
            for k in 1..=n {
                assert_eq!(d.pmf(k), rat(counts[k] as i64, total), "n={n} theta={theta} k={k}");
            }
        }
    }
}

#[test]
fn family_three_degree_and_support() {
    for n in [5usize, 12, 30] {
        for theta in 1..=n {
            let d = dist(Family::Third, n, &rat(theta as i64, 1)).unwrap();
            assert_eq!(d.degree(), theta);
            for k in 1..=theta {
                assert!(d.pmf(k) > BigRational::zero());
            }
        }
        let g = gen_poly(Family::Third, n, &rat(2 * n as i64 + 1, 2), false).unwrap();
        assert_eq!(g.degree(), Some(n));
    }
    assert!(matches!(DiscreteDist::new(Family::Third, 10, &rat(7, 2), false), Err(Error::Domain(_))));
    let relaxed = DiscreteDist::new(Family::Third, 10, &rat(7, 2), true).unwrap();
    assert_eq!(relaxed.gen_poly().coeff_sum(), BigRational::one());
    assert!(relaxed.weights().iter().any(|w| *w < BigInt::zero()));
}

#[test]
fn cycle_count_moments() {
    for n in [1usize, 2, 7, 40, 150] {
        let d = dist(Family::First, n, &rat(1, 1)).unwrap();
        let (mean, var) = d.moments();
        let mut h = BigRational::zero();
        let mut h2 = BigRational::zero();
        for k in 1..=n {
            let r = rat(1, k as i64);
            h2 += &r * &r;
            h += r;
        }
        assert_eq!(mean, h);
        assert_eq!(var, &h - h2);
    }
    for theta in 1..6 {
        let (m, v) = dist(Family::Third, 1, &rat(theta, 1)).unwrap().moments();
        assert_eq!((m, v), (BigRational::one(), BigRational::zero()));
    }
}

#[test]
fn log_mgf_spot_values() {
    let d = dist(Family::First, 2, &rat(1, 1)).unwrap();
    let l = d.log_mgf_c64(C64::c(std::f64::consts::LN_2, 0.0), 128).unwrap().to_c64();
    assert!((l.re - 3f64.ln()).abs() < 1e-15 && l.im.abs() < 1e-15);
    for fam in Family::ALL {
        let d = dist(fam, 30, &rat(30, 1)).unwrap();
        let l = d.log_mgf_c64(C64::c(0.0, 0.0), 128).unwrap().to_c64();
        assert_eq!((l.re, l.im), (0.0, 0.0));
        // symmetric difference quotient of the log-MGF against the exact mean
        let h = 1e-6;
        let up = d.log_mgf_c64(C64::c(h, 0.0), 128).unwrap().to_c64().re;
        let dn = d.log_mgf_c64(C64::c(-h, 0.0), 128).unwrap().to_c64().re;
        let mean = modphi_core::combinatorics::rational_to_f64(&d.moments().0);
        assert!(((up - dn) / (2.0 * h) - mean).abs() < 1e-7 * mean);
    }
}

#[test]
fn log_mgf_survives_large_n() {
    let d = dist(Family::Second, 1200, &rat(1200, 1)).unwrap();
    let l = d.log_mgf_c64(C64::c(1.5, 0.3), 256).unwrap().to_c64();
    assert!(l.re.is_finite() && l.re > 1000.0);
}

#[test]
fn log_mgf_rejects_low_precision() {
    let d = dist(Family::First, 5, &rat(1, 1)).unwrap();
    assert!(matches!(d.log_mgf_c64(C64::c(0.1, 0.0), 32), Err(Error::Domain(_))));
}

proptest! {
    #[test]
    fn pmf_sums_to_one(fam in 1u8..=3, n in 1usize..60, p in 1i64..200, q in 1i64..20) {
        let fam = Family::from_index(fam).unwrap();
        let theta = rat(p, q);
        let d = match DiscreteDist::new(fam, n, &theta, false) {
            Ok(d) => d,
            Err(_) => return Ok(()),
        };
        let total: BigInt = d.weights().iter().sum();
        prop_assert_eq!(&total, d.denom());
        prop_assert!(d.weights().iter().all(|w| *w >= BigInt::zero()));
    }

    #[test]
    fn second_kind_coefficients_are_tilted_touchard(n in 1usize..40, p in 1i64..50, q in 1i64..10) {
        let theta = rat(p, q);
        let g = gen_poly(Family::Second, n, &theta, false).unwrap();
        let t = touchard_eval(n, &theta).unwrap();
        let mut pow = BigRational::one();
        for k in 1..=n {
            pow *= &theta;
            let s = BigRational::from_integer(BigInt::from(stirling(Kind::Second, n, k).unwrap()));
            prop_assert_eq!(g.coeff(k), s * &pow / &t);
        }
        prop_assert_eq!(g.eval(&BigRational::one()), BigRational::one());
    }
}
