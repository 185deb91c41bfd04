//! Fixtures shared by the criterion benchmarks.

use qkonc_core::{generate_dataset, Dataset, FeatureMapSpec};

/// Full phase period used for all benchmark datasets.
pub const TAU: f64 = 2.0 * std::f64::consts::PI;

pub fn dataset(m: usize, n: usize) -> Dataset {
    generate_dataset(m, n, 0x5eed ^ n as u64, 0.0, TAU).expect("valid dataset parameters")
}

pub fn spec(n: usize) -> FeatureMapSpec {
    FeatureMapSpec::single(n).expect("n >= 1")
}
