//! Linearly entangled ZZ feature map.
//!
//! One repetition of the map on `n` qubits is
//!
//! ```text
//! H⊗n · P(2x_0) ⊗ … ⊗ P(2x_{n-1}) · Π_{i=0}^{n-2} CNOT(i,i+1) P_{i+1}(2(π−x_i)(π−x_{i+1})) CNOT(i,i+1)
//! ```
//!
//! counted as 2 + 3(n−1) layers: the Hadamard sweep and the single-qubit
//! phase sweep are one layer each, and each entangling block is three.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::sim::Statevector;

/// Shape of the feature map: qubit count (equal to the data dimension) and
/// number of repetitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureMapSpec {
    pub n: usize,
    pub reps: usize,
}

impl FeatureMapSpec {
    pub fn new(n: usize, reps: usize) -> Result<Self> {
        let spec = Self { n, reps };
        spec.validate()?;
        Ok(spec)
    }

    /// Single repetition, the setting under which the kernel circuit has
    /// 4 + 6(n−1) layers.
    pub fn single(n: usize) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Argument(
                "feature map needs at least one qubit".into(),
            ));
        }
        if self.reps == 0 {
            return Err(Error::Argument(
                "feature map needs at least one repetition".into(),
            ));
        }
        Ok(())
    }

    pub fn with_n(self, n: usize) -> Self {
        Self { n, ..self }
    }
}

/// Single-qubit data angle φ_i(x) = 2·x_i.
pub fn single_angle(xi: f64) -> f64 {
    2.0 * xi
}

/// Pair data angle φ_ij(x) = 2·(π − x_i)(π − x_j).
pub fn pair_angle(xi: f64, xj: f64) -> f64 {
    2.0 * (PI - xi) * (PI - xj)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Layer {
    HadamardAll,
    /// Simultaneous phase gates, one per listed `(qubit, angle)`.
    Phase(Vec<(usize, f64)>),
    Cnot {
        control: usize,
        target: usize,
    },
}

impl Layer {
    fn inverse(&self) -> Layer {
        match self {
            Layer::Phase(gates) => Layer::Phase(gates.iter().map(|&(q, t)| (q, -t)).collect()),
            other => other.clone(),
        }
    }

    fn apply(&self, state: &mut Statevector) -> Result<()> {
        match self {
            Layer::HadamardAll => state.apply_hadamard_all(),
            Layer::Phase(gates) => {
                for &(q, theta) in gates {
                    state.apply_phase(q, theta)?;
                }
            }
            Layer::Cnot { control, target } => state.apply_cnot(*control, *target)?,
        }
        Ok(())
    }
}

/// Ordered gate layers acting on an `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitLayers {
    pub n: usize,
    pub layers: Vec<Layer>,
}

impl CircuitLayers {
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// U† for this circuit U: layers reversed, phase angles negated.
    pub fn inverse(&self) -> CircuitLayers {
        CircuitLayers {
            n: self.n,
            layers: self.layers.iter().rev().map(Layer::inverse).collect(),
        }
    }

    /// This circuit followed by `next`.
    pub fn then(mut self, next: CircuitLayers) -> Result<CircuitLayers> {
        if self.n != next.n {
            return Err(Error::Size(format!(
                "cannot compose {}-qubit and {}-qubit circuits",
                self.n, next.n
            )));
        }
        self.layers.extend(next.layers);
        Ok(self)
    }

    pub fn apply(&self, state: &mut Statevector) -> Result<()> {
        if state.num_qubits() != self.n {
            return Err(Error::Size(format!(
                "{}-qubit circuit applied to {}-qubit state",
                self.n,
                state.num_qubits()
            )));
        }
        self.layers.iter().try_for_each(|layer| layer.apply(state))
    }
}

fn check_point(x: &[f64], spec: &FeatureMapSpec) -> Result<()> {
    spec.validate()?;
    if x.len() != spec.n {
        return Err(Error::Argument(format!(
            "data point has {} features but the map has {} qubits",
            x.len(),
            spec.n
        )));
    }
    if let Some(bad) = x.iter().find(|v| !v.is_finite()) {
        return Err(Error::Argument(format!("non-finite feature value {bad}")));
    }
    Ok(())
}

/// Circuit U(x) of the ZZ feature map for data point `x`.
pub fn build_feature_map(x: &[f64], spec: &FeatureMapSpec) -> Result<CircuitLayers> {
    check_point(x, spec)?;
    let n = spec.n;
    let mut layers = Vec::with_capacity(spec.reps * (2 + 3 * (n - 1)));
    for _ in 0..spec.reps {
        layers.push(Layer::HadamardAll);
        layers.push(Layer::Phase(
            x.iter()
                .enumerate()
                .map(|(q, &xi)| (q, single_angle(xi)))
                .collect(),
        ));
        for i in 0..n - 1 {
            layers.push(Layer::Cnot {
                control: i,
                target: i + 1,
            });
            layers.push(Layer::Phase(vec![(i + 1, pair_angle(x[i], x[i + 1]))]));
            layers.push(Layer::Cnot {
                control: i,
                target: i + 1,
            });
        }
    }
    Ok(CircuitLayers { n, layers })
}

/// Kernel-estimating circuit U†(y)·U(x); measuring |0…0⟩ on its output has
/// probability K(x, y).
pub fn build_kernel_circuit(x: &[f64], y: &[f64], spec: &FeatureMapSpec) -> Result<CircuitLayers> {
    build_feature_map(x, spec)?.then(build_feature_map(y, spec)?.inverse())
}

/// Layers in the kernel-estimating circuit of a single-repetition map:
/// 4 + 6(n−1).
pub fn kernel_circuit_layer_count(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::Argument("layer count needs n >= 1".into()));
    }
    Ok(4 + 6 * (n - 1))
}

/// |φ(x)⟩ = U(x)|0…0⟩.
pub fn embed(x: &[f64], spec: &FeatureMapSpec) -> Result<Statevector> {
    let circuit = build_feature_map(x, spec)?;
    let mut state = Statevector::zero_state(spec.n)?;
    circuit.apply(&mut state)?;
    Ok(state)
}
