use serde::{Deserialize, Serialize};

/// Sample statistics of a species' lengths. Moments are `None` for an empty
/// population; `sd` is the population standard deviation (divisor n).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LengthStats {
    pub count: usize,
    pub mean: Option<f64>,
    pub sd: Option<f64>,
    pub min: Option<f64>,
    pub max: Option<f64>,
}

impl LengthStats {
    pub fn empty() -> Self {
        Self { count: 0, mean: None, sd: None, min: None, max: None }
    }

    /// Single pass (Welford).
    pub fn from_lengths<I: IntoIterator<Item = f64>>(lengths: I) -> Self {
        let mut count = 0usize;
        let mut mean = 0.0;
        let mut m2 = 0.0;
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for x in lengths {
            count += 1;
            let d = x - mean;
            mean += d / count as f64;
            m2 += d * (x - mean);
            min = min.min(x);
            max = max.max(x);
        }
        if count == 0 {
            return Self::empty();
        }
        Self {
            count,
            mean: Some(mean),
            sd: Some((m2 / count as f64).max(0.0).sqrt()),
            min: Some(min),
            max: Some(max),
        }
    }
}
