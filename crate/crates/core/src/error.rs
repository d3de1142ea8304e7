use thiserror::Error;

use crate::fish::FishId;
use crate::species::SpeciesId;

pub type Result<T> = std::result::Result<T, FisheryError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FisheryError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("fish {0} is not in any population")]
    NotInPopulation(FishId),
    #[error("fish {0} is already in a population")]
    DuplicateFish(FishId),
    #[error("fish {0} was never issued by this fishery")]
    ForeignFish(FishId),
    #[error("population of species `{0}` is already at its cap")]
    CapExceeded(SpeciesId),
    #[error("unknown species `{0}`")]
    UnknownSpecies(SpeciesId),
    #[error("malformed snapshot: {0}")]
    Snapshot(String),
}
