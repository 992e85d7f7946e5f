use core::fmt;

use crate::error::{domain, Result};

/// The three Stirling laws: cycle counts (first kind), block counts (second
/// kind), and occupied boxes when `n` balls fall into `theta` boxes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Family {
    First,
    Second,
    Third,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::First, Family::Second, Family::Third];

    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Family::First),
            2 => Ok(Family::Second),
            3 => Ok(Family::Third),
            _ => Err(domain!("family must be 1, 2 or 3, got {i}")),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Family::First => 1,
            Family::Second => 2,
            Family::Third => 3,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}
