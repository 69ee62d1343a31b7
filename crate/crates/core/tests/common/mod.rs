//! Random class members shared by the integration suites.

#![allow(dead_code)]

use harmonic_qc::conditions::{check_sigma_condition, weighted_sum, WeightProfile};
use harmonic_qc::{Complex64, ExteriorMap64, InteriorMap64};
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const MAX_INDEX: usize = 8;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.1..1.0), rng.gen_range(0.0..std::f64::consts::TAU))
}

fn sparse_terms(rng: &mut ChaCha8Rng, min_index: usize) -> Vec<(usize, Complex64)> {
    let span = MAX_INDEX - min_index + 1;
    let count = rng.gen_range(0..=3.min(span));
    let mut idx: Vec<usize> = sample(rng, span, count).into_iter().map(|i| i + min_index).collect();
    idx.sort_unstable();
    idx.into_iter().map(|n| (n, unit_complex(rng))).collect()
}

/// Disk map with sparse support up to `MAX_INDEX`, scaled so that its
/// weighted sum for `profile` is uniform in `[lo, hi]`.
pub fn interior_member(rng: &mut ChaCha8Rng, profile: &WeightProfile<f64>, lo: f64, hi: f64) -> InteriorMap64 {
    loop {
        let f = InteriorMap64::new(sparse_terms(rng, 2), sparse_terms(rng, 1)).unwrap();
        let s = weighted_sum(&f, profile).unwrap();
        if s == 0.0 {
            continue;
        }
        let target = rng.gen_range(lo..=hi);
        return f.scaled(target / s);
    }
}

/// Exterior map with minimal sigma constant uniform in `[lo, hi]`.
pub fn exterior_member(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> ExteriorMap64 {
    loop {
        let alpha = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let beta = if rng.gen_bool(0.7) {
            unit_complex(rng)
        } else {
            Complex64::default()
        };
        let log_coeff = if rng.gen_bool(0.5) {
            unit_complex(rng)
        } else {
            Complex64::default()
        };
        let a = sparse_terms(rng, 1);
        let b = sparse_terms(rng, 1);
        // keep |beta| < |alpha| before rescaling
        let Ok(f) = ExteriorMap64::new(alpha, beta * 0.1, a, b, log_coeff) else {
            continue;
        };
        let k = check_sigma_condition(&f).unwrap().minimal_k;
        if k == 0.0 {
            continue;
        }
        let target = rng.gen_range(lo..=hi);
        return f.scaled_tail(target / k);
    }
}

/// The worked exterior example `z - (i/6) conj z + (i/4) ln|z| - (i/8) z^-4`.
pub fn worked_example() -> ExteriorMap64 {
    ExteriorMap64::new(
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, -1.0 / 6.0),
        vec![(4, Complex64::new(0.0, -0.125))],
        vec![],
        Complex64::new(0.0, 0.25),
    )
    .unwrap()
}

pub const WORKED_EXAMPLE_JSON: &str = r#"{
  "kind": "exterior",
  "label": "worked example",
  "alpha": [1.0, 0.0],
  "beta": [0.0, -0.16666666666666666],
  "A": [0.0, 0.25],
  "a": [[4, 0.0, -0.125]],
  "b": []
}
"#;

pub fn starlike_profiles() -> Vec<WeightProfile<f64>> {
    vec![WeightProfile::starlike(), WeightProfile::convex()]
}
