use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::HarnessError;

/// Per-tree property checked by `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// `m[0, avg) >= ceil(n/2)`.
    Conjecture,
    /// `m[0, 1) <= gamma`.
    Theorem5,
    /// `m[0, 2) >= ceil(n/2)`.
    Below2,
    /// `m(2, n] >= floor(diam/2)`.
    Above2Diameter,
    /// `mu_1 >= ceil(n/gamma)`, with `mu_1` from the oracle.
    Theorem4,
    /// At least `diam + 1` distinct adjacency eigenvalues, from the oracle.
    Theorem1,
    /// Laplacian energy computed two ways agrees within `2 n tol`.
    Energy,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Conjecture,
        Check::Theorem5,
        Check::Below2,
        Check::Above2Diameter,
        Check::Theorem4,
        Check::Theorem1,
        Check::Energy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Conjecture => "conjecture",
            Check::Theorem5 => "theorem5",
            Check::Below2 => "below2",
            Check::Above2Diameter => "above2-diameter",
            Check::Theorem4 => "theorem4",
            Check::Theorem1 => "theorem1",
            Check::Energy => "energy",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| HarnessError::UnknownCheck(s.to_string()))
    }
}

/// Ordered set of checks; displays as a sorted comma list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct CheckSet(BTreeSet<Check>);

impl CheckSet {
    pub fn all() -> Self {
        CheckSet(Check::ALL.into_iter().collect())
    }

    pub fn only(checks: &[Check]) -> Self {
        CheckSet(checks.iter().copied().collect())
    }

    pub fn contains(&self, c: Check) -> bool {
        self.0.contains(&c)
    }

    pub fn iter(&self) -> impl Iterator<Item = Check> + '_ {
        self.0.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CheckSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|c| c.name()).collect();
        f.write_str(&names.join(","))
    }
}

impl FromStr for CheckSet {
    type Err = HarnessError;

    /// Parses a comma list; `all` selects every check.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut set = BTreeSet::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                set.extend(Check::ALL);
            } else {
                set.insert(part.parse()?);
            }
        }
        if set.is_empty() {
            return Err(HarnessError::UnknownCheck(s.to_string()));
        }
        Ok(CheckSet(set))
    }
}

impl From<CheckSet> for String {
    fn from(c: CheckSet) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for CheckSet {
    type Error = HarnessError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}
