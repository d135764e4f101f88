//! Canonical models of arithmetic once-punctured tori: exact arithmetic,
//! quaternion orders, coset enumeration, Belyi maps, q-expansions and
//! modularity checks.

pub mod exact;
pub mod fuchsian;
pub mod quatalg;
pub mod perm;
pub mod cosets;
pub mod belyi;
pub mod qexp;
pub mod modular;

use std::fmt;
use std::str::FromStr;

/// The four commensurability classes of arithmetic once-punctured tori.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Case {
    I,
    II,
    III,
    IV,
}

impl Case {
    pub const ALL: [Case; 4] = [Case::I, Case::II, Case::III, Case::IV];

    pub fn name(self) -> &'static str {
        match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
            Case::IV => "IV",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown case '{0}' (expected I, II, III or IV)")]
pub struct UnknownCase(pub String);

impl FromStr for Case {
    type Err = UnknownCase;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(Case::I),
            "II" | "2" => Ok(Case::II),
            "III" | "3" => Ok(Case::III),
            "IV" | "4" => Ok(Case::IV),
            _ => Err(UnknownCase(s.to_string())),
        }
    }
}
