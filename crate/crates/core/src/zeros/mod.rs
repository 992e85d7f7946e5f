//! Zeros of the generating polynomials and their limit measures.

mod free;
mod limits;
mod measure;
mod roots;

pub use free::{finite_free_mult_conv, free_unit, laguerre, laguerre_reversed};
pub use limits::{
    density_g, elbert_density, m_theta, mp_atom, mp_cdf, mp_density, mp_support_endpoints, stieltjes_limit_elbert,
    stieltjes_limit_z3, stieltjes_via_phi, LimitSpec,
};
pub use measure::{empirical_measure, family_zero_measure, g3_smallest_root_growth, stieltjes_empirical, RootMeasure};
pub use roots::{real_roots, real_roots_with, sturm_count, IntPoly, RootOptions, SturmSequence, MAX_DEGREE};
