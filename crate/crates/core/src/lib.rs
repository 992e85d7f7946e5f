#![no_std]

extern crate alloc;

pub mod combinatorics;
pub mod complex;
pub mod error;
pub mod ext;
pub mod family;
pub mod gamma;
pub mod lambert;
pub mod modphi;
pub mod quad;
pub mod real;
pub mod verify;
pub mod zeros;

pub use complex::{Complex, C64};
pub use error::{Error, Result};
pub use ext::Ext;
pub use family::Family;
pub use real::Real;
