use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Which equivalence relation identifies two biadjacency matrices.
///
/// All four allow arbitrary permutations of both vertex sides. `X` additionally
/// requires the set of non-isolated left vertices to coincide, `Y` the set of
/// non-isolated right vertices, and `XY` both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    U,
    X,
    Y,
    XY,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::U, Family::X, Family::Y, Family::XY];

    /// The family obtained by exchanging the two vertex sides.
    pub fn mirror(self) -> Family {
        match self {
            Family::X => Family::Y,
            Family::Y => Family::X,
            f => f,
        }
    }

    pub fn fixes_left_support(self) -> bool {
        matches!(self, Family::X | Family::XY)
    }

    pub fn fixes_right_support(self) -> bool {
        matches!(self, Family::Y | Family::XY)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::U => "u",
            Family::X => "x",
            Family::Y => "y",
            Family::XY => "xy",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "u" => Ok(Family::U),
            "x" => Ok(Family::X),
            "y" => Ok(Family::Y),
            "xy" => Ok(Family::XY),
            other => Err(format!("unknown family '{other}' (expected u, x, y or xy)")),
        }
    }
}
