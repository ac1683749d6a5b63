//! Exact combinatorial calculus of ℒ-modules over the poset of standard
//! parabolic subgroups of a split semisimple group.
//!
//! The linear algebra in [`linalg`] is generic over any exact field type;
//! the rest of the crate fixes the scalar to [`Rat`] through the aliases
//! below.

pub mod ce_oracle;
pub mod error;
pub mod graded;
pub mod io;
pub mod kostant;
pub mod linalg;
pub mod lmodule;
pub mod microsupport;
pub mod parabolics;
pub mod root_data;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use error::{Error, Result};
pub use graded::{ComplexObject, GradedModule, GradedMorphism, Isotype, WeightProfile};
pub use lmodule::{Construction, LModule, Perversity};
pub use parabolics::ParabolicIndex;
pub use root_data::{CartanType, RootSystem, Weight, WeylElement};

/// Exact rational scalar used throughout the engine.
pub type Rat = BigRational;
/// Dense matrix over [`Rat`].
pub type QMatrix = linalg::Matrix<Rat>;
/// Rational vector, usually a weight in fundamental-weight coordinates.
pub type QVector = Vec<Rat>;

pub(crate) fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Resource limits for the enumerations and brute-force computations.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Caps {
    /// Largest Weyl group order that may be enumerated.
    pub weyl_order: usize,
    /// Largest rank for which the parabolic poset is materialized.
    pub rank: usize,
    /// Largest irreducible module the oracle may construct.
    pub irrep_dim: usize,
    /// Largest Chevalley–Eilenberg cochain space.
    pub ce_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            weyl_order: 100_000,
            rank: 8,
            irrep_dim: 2000,
            ce_dim: 40_000,
        }
    }
}

impl Caps {
    /// Applies overrides of the form `weyl_order=5000,irrep_dim=300`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("cap override `{item}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("cap `{key}` needs a non-negative integer")))?;
            match key.trim() {
                "weyl_order" => self.weyl_order = value,
                "rank" => self.rank = value,
                "irrep_dim" => self.irrep_dim = value,
                "ce_dim" => self.ce_dim = value,
                other => return Err(Error::Input(format!("unknown cap `{other}`"))),
            }
        }
        Ok(self)
    }

    /// Reads overrides from the `LML_CAPS` environment variable.
    pub fn from_env() -> Result<Self> {
        match std::env::var("LML_CAPS") {
            Ok(s) => Caps::default().with_overrides(&s),
            Err(_) => Ok(Caps::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_overrides() {
        let c = Caps::default().with_overrides("irrep_dim=10, rank=3").unwrap();
        assert_eq!(c.irrep_dim, 10);
        assert_eq!(c.rank, 3);
        assert!(Caps::default().with_overrides("bogus=1").is_err());
        assert!(Caps::default().with_overrides("rank").is_err());
    }
}
