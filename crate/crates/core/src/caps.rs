//! Size caps shared by every module. The defaults cover all desk-scale
//! targets; `RACKFORGE_CAPS` (a JSON object) overrides individual fields.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    /// Maximum number of elements in an enumerated permutation group.
    pub group_elements: usize,
    /// Maximum size of a dense rack table.
    pub rack_size: usize,
    /// Maximum size of an implicitly indexed rack (twisted homogeneous racks).
    pub implicit_rack: usize,
    /// Maximum size for isomorphism backtracking.
    pub iso_size: usize,
    /// Maximum size for exhaustive subrack enumeration.
    pub subrack_exhaustive: usize,
    /// Maximum number of maximal cliques reported by `abelian_subracks`.
    pub clique_count: usize,
    /// Maximum number of points for matrix-group permutation realizations.
    pub matrix_points: usize,
    /// Maximum rack size for homology in degrees ≤ 2.
    pub homology_rack: usize,
    /// Maximum number of basis tuples in one chain group.
    pub chain_basis: usize,
    /// Maximum rack size for cocycle spaces.
    pub cocycle_rack: usize,
    /// Maximum dimension of a tensor power for the symmetrizer oracle.
    pub oracle_tensor: usize,
    /// Maximum dimension of one graded Nichols component.
    pub nichols_dim: usize,
    /// Maximum Nichols degree.
    pub nichols_degree: usize,
    /// Maximum dimension of a quadratic-cover component.
    pub quadratic_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group_elements: 10_000_000,
            rack_size: 4096,
            implicit_rack: 2_000_000,
            iso_size: 64,
            subrack_exhaustive: 16,
            clique_count: 100_000,
            matrix_points: 1_000_000,
            homology_rack: 64,
            chain_basis: 300_000,
            cocycle_rack: 64,
            oracle_tensor: 10_000,
            nichols_dim: 20_000,
            nichols_degree: 40,
            quadratic_dim: 20_000,
        }
    }
}

impl Caps {
    /// Defaults overridden by the `RACKFORGE_CAPS` environment variable.
    pub fn from_env() -> Result<Self> {
        match std::env::var("RACKFORGE_CAPS") {
            Ok(s) if !s.trim().is_empty() => serde_json::from_str(&s)
                .map_err(|e| Error::Parse(format!("RACKFORGE_CAPS: {e}"))),
            _ => Ok(Caps::default()),
        }
    }

    pub(crate) fn check(&self, what: &'static str, size: usize, cap: usize) -> Result<()> {
        if size > cap {
            Err(Error::CapExceeded { what, size, cap })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_override_keeps_defaults() {
        let caps: Caps = serde_json::from_str(r#"{"rack_size": 10}"#).unwrap();
        assert_eq!(caps.rack_size, 10);
        assert_eq!(caps.iso_size, 64);
    }
}
