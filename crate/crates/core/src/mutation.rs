//! Offspring length kernel: parent length plus a normal perturbation,
//! clamped to the species bounds.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::fish::quantize_length;
use crate::species::SpeciesSpec;

/// Outcome of one mutation event. `delta` is the raw (pre-clamp) draw, or
/// `None` when the mutation gate did not fire.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mutation {
    pub delta: Option<f64>,
    pub child: f64,
}

/// Draw a pre-clamp perturbation from `Normal(0, sd^2)`.
pub fn mutation_delta<R: Rng + ?Sized>(sd: f64, rng: &mut R) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    sd * z
}

/// Child length for a known perturbation. Values past a bound are set to that
/// bound exactly.
pub fn apply_delta(parent_length: f64, delta: f64, spec: &SpeciesSpec) -> f64 {
    spec.clamp_length(quantize_length(parent_length + delta))
}

/// Like [`mutate_length`] but also reports the raw perturbation.
pub fn mutate_traced<R: Rng + ?Sized>(parent_length: f64, spec: &SpeciesSpec, rng: &mut R) -> Mutation {
    // the gate always consumes one draw so the stream layout does not depend on mutation_prob
    let gate: f64 = rng.random();
    if gate >= spec.mutation_prob {
        return Mutation { delta: None, child: parent_length };
    }
    let delta = mutation_delta(spec.mutation_sd, rng);
    Mutation { delta: Some(delta), child: apply_delta(parent_length, delta, spec) }
}

pub fn mutate_length<R: Rng + ?Sized>(parent_length: f64, spec: &SpeciesSpec, rng: &mut R) -> f64 {
    mutate_traced(parent_length, spec, rng).child
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SimRng;

    fn spec() -> SpeciesSpec {
        SpeciesSpec::new("carp", "Carp", 30, (12.0, 48.0), 100, 50)
    }

    #[test]
    fn zero_probability_copies_parent() {
        let mut spec = spec();
        spec.mutation_prob = 0.0;
        let mut rng = SimRng::from_seed(3);
        for _ in 0..1000 {
            let m = mutate_traced(31.234567, &spec, &mut rng);
            assert_eq!(m.child, 31.234567);
            assert_eq!(m.delta, None);
        }
    }

    #[test]
    fn forced_delta_past_max_lands_on_max() {
        assert_eq!(apply_delta(47.5, 4.0, &spec()), 48.0);
        assert_eq!(apply_delta(12.5, -4.0, &spec()), 12.0);
        assert_eq!(apply_delta(30.0, 1.5, &spec()), 31.5);
    }

    #[test]
    fn zero_sd_is_exact_copy() {
        let mut spec = spec();
        spec.mutation_sd = 0.0;
        let mut rng = SimRng::from_seed(11);
        for _ in 0..100 {
            assert_eq!(mutate_length(20.125, &spec, &mut rng), 20.125);
        }
    }

    #[test]
    fn delta_moments_match_kernel() {
        // sample-statistics oracle: mean and sd of raw draws
        let mut rng = SimRng::from_seed(2024);
        let n = 100_000;
        let draws: Vec<f64> = (0..n).map(|_| mutation_delta(2.0, &mut rng)).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!(mean.abs() < 0.02, "mean {mean}");
        assert!((var.sqrt() - 2.0).abs() < 0.02, "sd {}", var.sqrt());
    }
}
