//! Simulation toolkit for studying exponential concentration of fidelity
//! quantum kernels under the ZZ feature map, together with the shot-budget
//! and runtime models that turn concentration into estimated quantum
//! execution time.

pub mod error;
pub mod feature_map;
pub mod fit;
pub mod kernel;
pub mod runtime;
pub mod shots;
pub mod sim;

#[cfg(any(test, feature = "dense-oracle"))]
pub mod dense;

pub use error::{Error, Result};
pub use feature_map::{
    build_feature_map, build_kernel_circuit, embed, kernel_circuit_layer_count, CircuitLayers,
    FeatureMapSpec, Layer,
};
pub use fit::{fit_exponential, ExpFit};
pub use kernel::{
    concentration_stats, concentration_sweep, dataset_seed, fidelity_kernel, generate_dataset,
    gram_matrix, gram_matrix_parallel, ConcentrationPoint, Dataset, GramMatrix,
};
pub use runtime::{
    benchmark_classical, circuit_time, quantum_runtime, runtime_comparison, BenchmarkResult,
    MachineDescriptor, RuntimeCurve, RuntimeParams, RuntimeRecord, Scope,
};
pub use shots::{estimator_std, required_shots, sample_kernel_estimate, ShotPlan};
pub use sim::{inner_product, Statevector};
