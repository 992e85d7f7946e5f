use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{binom, binom_rat, factorial, rat_int, ExactPolynomial};
use crate::error::{domain, Result};

/// Generalized Laguerre polynomial `L_n^{(alpha)}(x) = sum_k (-1)^k C(n + alpha, n - k) x^k / k!`.
pub fn laguerre(n: usize, alpha: &BigRational) -> ExactPolynomial {
    let top = alpha + rat_int(n as i64);
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut c = binom_rat(&top, n - k) / rat_int(factorial(k));
        if k % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
    }
    ExactPolynomial::new(coeffs)
}

/// `n! x^n L_n^{(theta - n)}(1/x) = sum_k (-1)^{n-k} theta^{(k)} C(n, k) x^k`, with `theta^{(k)}` falling.
pub fn laguerre_reversed(n: usize, theta: &BigRational) -> ExactPolynomial {
    let alpha = theta - rat_int(n as i64);
    laguerre(n, &alpha).reverse(n).scale(&rat_int(factorial(n)))
}

/// Finite free multiplicative convolution `p ⊠_n q = sum_k (-1)^{n-k} a_k b_k / C(n, k) x^k`.
pub fn finite_free_mult_conv(p: &ExactPolynomial, q: &ExactPolynomial, n: usize) -> Result<ExactPolynomial> {
    for (name, f) in [("p", p), ("q", q)] {
        if f.degree().is_some_and(|d| d > n) {
            return Err(domain!("deg {name} = {} exceeds n = {n}", f.degree().unwrap_or(0)));
        }
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let a = p.coeff(k);
        let b = q.coeff(k);
        if a.is_zero() || b.is_zero() {
            coeffs.push(BigRational::zero());
            continue;
        }
        let mut c = a * b / rat_int(binom(n, k));
        if (n - k) % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
    }
    Ok(ExactPolynomial::new(coeffs))
}

/// The unit `(x - 1)^n` of `⊠_n`.
pub fn free_unit(n: usize) -> ExactPolynomial {
    let roots: Vec<BigRational> = (0..n).map(|_| BigRational::one()).collect();
    ExactPolynomial::from_roots(&roots)
}
