use modphi_core::lambert::{
    branch_point, w0_boundary, w0_complex, w0_derivative, w0_real, wm1_real, CutSide,
};
use modphi_core::C64;
use proptest::prelude::*;

fn rel_resid(w: &C64, z: &C64) -> f64 {
    (*w * w.exp() - *z).abs() / z.abs().max(1.0)
}

fn signed_log_grid(n: usize) -> Vec<f64> {
    let mut v = vec![0.0];
    for i in 0..n {
        let m = 10f64.powf(-8.0 + 14.0 * i as f64 / (n - 1) as f64);
        v.push(m);
        v.push(-m);
    }
    v
}

#[test]
fn complex_grid_identity() {
    let g = signed_log_grid(40);
    let mut worst = 0.0f64;
    for &re in &g {
        for &im in &g {
            if im == 0.0 {
                continue;
            }
            let z = C64::c(re, im);
            let w = w0_complex(&z).unwrap_or_else(|e| panic!("{z:?}: {e}"));
            let r = rel_resid(&w, &z);
            worst = worst.max(r);
            assert!(r <= 1e-14, "z = {z:?}, residual {r:e}");
            assert!(w.im.abs() < std::f64::consts::PI);
        }
    }
    assert!(worst <= 1e-14);
}

#[test]
fn boundary_grid_identity_and_monotone_imaginary_part() {
    let bp = branch_point(&0.0);
    let mut last_im = f64::INFINITY;
    // x from -1e6 up towards the branch point.
    for i in 0..2000 {
        let t = i as f64 / 1999.0;
        let x = bp - 10f64.powf(6.0 - 15.0 * t);
        let w = w0_boundary(&x, CutSide::Above).unwrap();
        let r = rel_resid(&w, &C64::c(x, 0.0));
        assert!(r <= 1e-14, "x = {x:e}, residual {r:e}");
        assert!(w.im > 0.0 && w.im < std::f64::consts::PI);
        assert!(w.im < last_im, "imaginary part not decreasing at x = {x:e}");
        last_im = w.im;
        let b = w0_boundary(&x, CutSide::Below).unwrap();
        assert_eq!(b, w.conj());
    }
}

#[test]
fn real_branches_monotone() {
    let bp = branch_point(&0.0);
    let mut last = f64::NEG_INFINITY;
    for i in 0..3000 {
        let t = i as f64 / 2999.0;
        let x = bp + 1e-9 * (1e15f64).powf(t);
        let w = w0_real(&x).unwrap();
        assert!(w > last, "not increasing at {x:e}");
        last = w;
    }
    let mut last = f64::INFINITY;
    for i in 1..2000 {
        let x = bp * (1.0 - i as f64 / 2000.0);
        let w = wm1_real(&x).unwrap();
        assert!(w <= -1.0 && w < last);
        last = w;
    }
}

#[test]
fn derivative_against_central_differences() {
    for &(re, im) in &[(1.0, 0.0), (0.5, 0.5), (-0.2, 1.0), (3.0, -2.0), (10.0, 0.1)] {
        let z = C64::c(re, im);
        let h = 1e-5;
        let fd = (w0_complex(&C64::c(re + h, im)).unwrap() - w0_complex(&C64::c(re - h, im)).unwrap())
            .scale(0.5 / h);
        let d = w0_derivative(&z).unwrap();
        assert!((fd - d).abs() <= 1e-6 * d.abs(), "z = {z:?}");
    }
}

proptest! {
    #[test]
    fn schwarz_reflection(re in -50.0f64..50.0, im in 1e-6f64..50.0) {
        let z = C64::c(re, im);
        let a = w0_complex(&z).unwrap();
        let b = w0_complex(&z.conj()).unwrap();
        prop_assert!((a.conj() - b).abs() <= 1e-14 * a.abs().max(1.0));
    }

    #[test]
    fn real_and_complex_agree(x in -0.3678f64..1e4) {
        let a = w0_real(&x).unwrap();
        let b = w0_complex(&C64::c(x, 0.0)).unwrap();
        prop_assert!((a - b.re).abs() <= 1e-15 * a.abs().max(1.0));
    }

    #[test]
    fn lower_branch_identity(u in 0.0f64..1.0) {
        let x = branch_point(&0.0) * (1.0 - u).max(1e-300);
        prop_assume!(x < 0.0);
        let w = wm1_real(&x).unwrap();
        prop_assert!(w <= -1.0);
        prop_assert!((w * w.exp() - x).abs() <= 1e-14 * x.abs().max(1.0) + 1e-300);
    }
}
