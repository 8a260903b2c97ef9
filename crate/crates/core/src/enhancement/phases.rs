use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::EnhancementError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSumEstimate {
    /// Mean of `|sum_l exp(i dk . r_l)|^2` over trials.
    pub mean: f64,
    pub stderr: f64,
    pub trials: u32,
    pub seed: u64,
}

/// Monte-Carlo estimate of the collective scattering sum for emitters placed
/// uniformly in an axis-aligned box.
///
/// Trial `t` draws from stream `t` of a generator keyed by `seed`, so the
/// result does not depend on thread scheduling.
pub fn random_phase_sum(
    emitters: usize,
    dk: [f64; 3],
    box_size: [f64; 3],
    seed: u64,
    trials: u32,
) -> Result<PhaseSumEstimate, EnhancementError> {
    if trials == 0 {
        return Err(EnhancementError::NoTrials);
    }
    if box_size.iter().any(|&b| !(b > 0.0)) {
        return Err(EnhancementError::BoxSize);
    }
    let samples: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let mut acc = Complex64::new(0.0, 0.0);
            for _ in 0..emitters {
                let phase: f64 = (0..3).map(|a| dk[a] * rng.random::<f64>() * box_size[a]).sum();
                acc += Complex64::from_polar(1.0, phase);
            }
            acc.norm_sqr()
        })
        .collect();
    let n = trials as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = if trials > 1 { samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
    Ok(PhaseSumEstimate { mean, stderr: (var / n).sqrt(), trials, seed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_direction_is_coherent() {
        let e = random_phase_sum(500, [0.0; 3], [1.0; 3], 7, 5).unwrap();
        assert!((e.mean - 250_000.0).abs() < 1e-6);
        assert_eq!(e.stderr, 0.0);
    }

    #[test]
    fn single_emitter() {
        let e = random_phase_sum(1, [3.0, 1.0, 2.0], [5.0; 3], 1, 20).unwrap();
        assert!((e.mean - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_walk_scaling() {
        let s = 2000;
        let e = random_phase_sum(s, [40.0, 25.0, 10.0], [1.0; 3], 3, 200).unwrap();
        assert!((e.mean - s as f64).abs() < 5.0 * e.stderr, "{e:?}");
    }

    #[test]
    fn deterministic_for_seed() {
        let a = random_phase_sum(300, [9.0, 0.0, 1.0], [2.0; 3], 42, 16).unwrap();
        let b = random_phase_sum(300, [9.0, 0.0, 1.0], [2.0; 3], 42, 16).unwrap();
        assert_eq!(a, b);
        let c = random_phase_sum(300, [9.0, 0.0, 1.0], [2.0; 3], 43, 16).unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn approaches_peak_near_forward() {
        let s = 1000;
        let box_size = [1.0; 3];
        let dk = [0.005, 0.0, 0.0];
        let e = random_phase_sum(s, dk, box_size, 0, 10).unwrap();
        assert!(e.mean / (s * s) as f64 > 0.999);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(random_phase_sum(1, [0.0; 3], [1.0; 3], 0, 0), Err(EnhancementError::NoTrials));
        assert_eq!(random_phase_sum(1, [0.0; 3], [1.0, 0.0, 1.0], 0, 1), Err(EnhancementError::BoxSize));
    }
}
