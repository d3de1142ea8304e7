use std::fmt;

use serde::{Deserialize, Serialize};

use crate::species::SpeciesId;

/// Lifetime-unique fish identifier. Ids are handed out in increasing order
/// and never reused, released and sold fish included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FishId(pub u64);

impl fmt::Display for FishId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// One individual. The length is the only heritable trait.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fish {
    pub id: FishId,
    pub species: SpeciesId,
    pub length: f64,
}

/// Snap a length onto the micro-inch grid.
///
/// Every length the simulation creates goes through this, which makes the
/// six-decimal canonical serialization lossless.
pub fn quantize_length(length: f64) -> f64 {
    (length * 1e6).round() / 1e6
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn quantized_lengths_survive_six_decimal_text(x in 0.001f64..10_000.0) {
            let q = quantize_length(x);
            prop_assert_eq!(quantize_length(q), q);
            let parsed: f64 = format!("{q:.6}").parse().unwrap();
            prop_assert_eq!(parsed, q);
        }
    }
}
