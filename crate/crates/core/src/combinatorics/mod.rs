//! Exact Stirling numbers, the three Stirling laws and their generating polynomials.

pub mod dist;
pub mod poly;
pub mod triangle;

pub use dist::{
    as_usize, dist, gen_poly, parse_rational, rational_to_f64, rising_poly, tilted, touchard,
    touchard_eval, DiscreteDist,
};
pub use poly::{binom, binom_rat, rat, rat_int, ExactPolynomial};
pub use triangle::{bell, factorial, set_n_max, stirling, triangle, Kind, StirlingTriangle};
