//! Plot and table data as [`Table`]s, computed straight from the library.

use modphi_core::combinatorics::{rational_to_f64, triangle, Kind};
use modphi_core::modphi::{mu, rate, sigma2};
use modphi_core::verify::{llt_profile, mod_phi_error};
use modphi_core::zeros::{family_zero_measure, LimitSpec};
use modphi_core::{Family, C64};
use num_rational::BigRational;

use crate::output::{Cell, Table};

/// Rows `n, k, value` of a Stirling triangle for `1 <= k <= n <= n_max`.
pub fn table(kind: Kind, n_max: usize) -> anyhow::Result<Table> {
    let mut t = Table::new(&["n", "k", "value"]);
    let tri = triangle(kind);
    for n in 1..=n_max {
        let row = tri.row(n)?;
        for (k, v) in row.iter().enumerate().skip(1) {
            t.push(vec![n.into(), k.into(), Cell::Exact(v.to_string())]);
        }
    }
    Ok(t)
}

/// Exact pmf and the local-limit Gaussian for `k = 1..=n`, one block per `vartheta`.
pub fn llt(fam: Family, n: usize, thetas: &[BigRational], relaxed: bool) -> anyhow::Result<Table> {
    let mut t = Table::new(&["theta", "k", "pmf", "gaussian"]);
    for th in thetas {
        for r in llt_profile(fam, n, th, relaxed)?.into_iter().skip(1) {
            t.push(vec![Cell::Exact(th.to_string()), r.k.into(), r.pmf.into(), r.gaussian.into()]);
        }
    }
    Ok(t)
}

/// Limit density of the zero measure sampled at `grid` interior points.
fn density_samples(spec: &LimitSpec, upper: f64, grid: usize) -> anyhow::Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(grid);
    for j in 1..=grid {
        let x = upper * j as f64 / (grid + 1) as f64;
        out.push((x, spec.density(x)?));
    }
    Ok(out)
}

/// Negated zeros of the generating function (weight `1/n` each), then the
/// limit density on a grid: `series, x, value`.
pub fn zeros(fam: Family, n: usize, vartheta: &BigRational, grid: usize, relaxed: bool) -> anyhow::Result<Table> {
    let theta = vartheta * BigRational::from_integer(n.into());
    let m = family_zero_measure(fam, n, &theta, relaxed)?;
    let mut t = Table::new(&["series", "x", "value"]);
    for &x in m.points() {
        t.push(vec!["zero".into(), x.into(), m.weight().into()]);
    }
    let spec = LimitSpec::for_family(fam, rational_to_f64(vartheta))?;
    let mut upper = spec.support_upper();
    if !upper.is_finite() {
        upper = 1.25 * m.max().unwrap_or(1.0).max(1.0);
    }
    for (x, d) in density_samples(&spec, upper, grid)? {
        t.push(vec!["density".into(), x.into(), d.into()]);
    }
    Ok(t)
}

/// Rate function `I_i(t; vartheta)` on a grid of `t`.
pub fn rate_curve(fam: Family, vartheta: f64, ts: &[f64]) -> anyhow::Result<Table> {
    let mut t = Table::new(&["t", "rate"]);
    for &x in ts {
        t.push(vec![x.into(), rate(fam, x, vartheta)?.into()]);
    }
    Ok(t)
}

/// `mu_i`, `sigma_i^2` and `sigma_i` on a grid of `vartheta`.
pub fn musigma(fam: Family, thetas: &[f64]) -> anyhow::Result<Table> {
    let mut t = Table::new(&["theta", "mu", "sigma2", "sigma"]);
    for &th in thetas {
        let s2 = sigma2(fam, th)?;
        t.push(vec![th.into(), mu(fam, th)?.into(), s2.into(), s2.sqrt().into()]);
    }
    Ok(t)
}

/// `|MGF / e^{n phi} - Psi|` over `n` and `z`.
pub fn modphi_errors(
    fam: Family,
    ns: &[usize],
    vartheta: &BigRational,
    zs: &[C64],
    bits: usize,
    relaxed: bool,
) -> anyhow::Result<Table> {
    let mut t = Table::new(&["n", "z_re", "z_im", "error"]);
    for &z in zs {
        for &n in ns {
            let e = mod_phi_error(fam, n, vartheta, z, bits, relaxed)?;
            t.push(vec![n.into(), z.re.into(), z.im.into(), e.into()]);
        }
    }
    Ok(t)
}
