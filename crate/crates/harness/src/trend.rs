//! Trend statistics over mean-length time series.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

/// Least-squares slope of `y` on `x`. `None` with fewer than two distinct x.
pub fn ols_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// Two-sided one-sample t-test of per-seed slopes against zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrendTest {
    pub n: usize,
    pub mean_slope: f64,
    pub sd_slope: f64,
    pub t: f64,
    pub p_value: f64,
}

impl TrendTest {
    pub fn rejects_zero_slope(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

pub fn slope_t_test(slopes: &[f64]) -> Option<TrendTest> {
    let n = slopes.len();
    if n < 2 {
        return None;
    }
    let nf = n as f64;
    let mean = slopes.iter().sum::<f64>() / nf;
    let sd = (slopes.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (nf - 1.0)).sqrt();
    let (t, p_value) = if sd == 0.0 {
        if mean == 0.0 {
            (0.0, 1.0)
        } else {
            (f64::INFINITY.copysign(mean), 0.0)
        }
    } else {
        let t = mean / (sd / nf.sqrt());
        let dist = StudentsT::new(0.0, 1.0, nf - 1.0).expect("df >= 1");
        (t, 2.0 * (1.0 - dist.cdf(t.abs())))
    };
    Some(TrendTest { n, mean_slope: mean, sd_slope: sd, t, p_value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_a_line() {
        let pts: Vec<(f64, f64)> = (0..10).map(|x| (x as f64, 3.0 - 0.5 * x as f64)).collect();
        assert!((ols_slope(&pts).unwrap() + 0.5).abs() < 1e-12);
        assert_eq!(ols_slope(&pts[..1]), None);
        assert_eq!(ols_slope(&[(1.0, 2.0), (1.0, 3.0)]), None);
    }

    #[test]
    fn t_test_against_hand_values() {
        // slopes {1, 2, 3}: mean 2, sd 1, t = 2 / (1/sqrt 3) = 3.4641; df 2 -> p = 0.07418
        let t = slope_t_test(&[1.0, 2.0, 3.0]).unwrap();
        assert!((t.t - 3.464_101_6).abs() < 1e-6);
        assert!((t.p_value - 0.074_180).abs() < 1e-5, "{}", t.p_value);
    }

    #[test]
    fn degenerate_slopes() {
        assert_eq!(slope_t_test(&[0.0, 0.0]).unwrap().p_value, 1.0);
        assert_eq!(slope_t_test(&[-1.0, -1.0]).unwrap().p_value, 0.0);
        assert!(slope_t_test(&[1.0]).is_none());
    }
}
