//! The single seeded generator that drives a simulation.
//!
//! Draw order is part of the reproducibility contract: initial lengths in
//! species order, then per cast, then per birth (parent pick, mutation gate,
//! mutation delta).

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{FisheryError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimRng(ChaCha8Rng);

/// Serializable position of a [`SimRng`]; restoring it resumes the exact
/// stream of draws.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RngState {
    /// 32-byte ChaCha key, lowercase hex.
    pub seed: String,
    pub stream: u64,
    /// Word position as a decimal string (it is a 128-bit counter).
    pub word_pos: String,
}

impl SimRng {
    pub fn from_seed(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn state(&self) -> RngState {
        RngState {
            seed: hex::encode(self.0.get_seed()),
            stream: self.0.get_stream(),
            word_pos: self.0.get_word_pos().to_string(),
        }
    }

    pub fn from_state(state: &RngState) -> Result<Self> {
        let bad = |what: &str| FisheryError::Snapshot(format!("rng_state: invalid {what}"));
        let bytes = hex::decode(&state.seed).map_err(|_| bad("seed"))?;
        let key: [u8; 32] = bytes.try_into().map_err(|_| bad("seed length"))?;
        let word_pos: u128 = state.word_pos.parse().map_err(|_| bad("word_pos"))?;
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(state.stream);
        rng.set_word_pos(word_pos);
        Ok(Self(rng))
    }
}

impl RngCore for SimRng {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.0.fill_bytes(dst)
    }
}
