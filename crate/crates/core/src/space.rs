use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The sequence spaces that appear as domains or targets of matrix maps.
///
/// `N0`, `N` and `Ninf` are the weighted-mean domains: all `x` whose
/// transform `tau(x)` lies in `c0`, `c` or `linf` respectively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    #[serde(rename = "c0")]
    C0,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "linf")]
    Linf,
    N0,
    N,
    Ninf,
}

impl Space {
    pub fn is_weighted_domain(self) -> bool {
        matches!(self, Space::N0 | Space::N | Space::Ninf)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Space::C0 => "c0",
            Space::C => "c",
            Space::Linf => "linf",
            Space::N0 => "N0",
            Space::N => "N",
            Space::Ninf => "Ninf",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Space {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "c0" => Space::C0,
            "c" => Space::C,
            "linf" => Space::Linf,
            "N0" => Space::N0,
            "N" => Space::N,
            "Ninf" => Space::Ninf,
            _ => return Err(format!("unknown space {s:?}")),
        })
    }
}
