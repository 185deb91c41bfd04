//! Fidelity kernels, Gram matrices and concentration statistics.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feature_map::{embed, FeatureMapSpec};
use crate::sim::{inner_product, Statevector};

/// `m` points of dimension `n`, i.i.d. uniform per coordinate on `[low, high)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub n: usize,
    pub seed: u64,
    pub low: f64,
    pub high: f64,
    pub points: Vec<Vec<f64>>,
}

impl Dataset {
    pub fn m(&self) -> usize {
        self.points.len()
    }
}

/// Draws a dataset from a ChaCha8 stream seeded with `seed`; points are drawn
/// in order, coordinates within a point in qubit order.
pub fn generate_dataset(m: usize, n: usize, seed: u64, low: f64, high: f64) -> Result<Dataset> {
    if m < 2 {
        return Err(Error::Argument(format!(
            "dataset needs at least 2 points, got {m}"
        )));
    }
    if n == 0 {
        return Err(Error::Argument(
            "dataset dimension must be at least 1".into(),
        ));
    }
    if !(low.is_finite() && high.is_finite() && low < high) {
        return Err(Error::Argument(format!(
            "invalid sampling interval [{low}, {high})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..m)
        .map(|_| (0..n).map(|_| rng.gen_range(low..high)).collect())
        .collect();
    Ok(Dataset {
        n,
        seed,
        low,
        high,
        points,
    })
}

/// Seed of the dataset drawn for qubit count `n` in a sweep: `seed XOR n`.
pub fn dataset_seed(seed: u64, n: usize) -> u64 {
    seed ^ n as u64
}

fn overlap(a: &Statevector, b: &Statevector) -> Result<f64> {
    Ok(inner_product(b, a)?.norm_sqr())
}

/// K(x, y) = |⟨φ(y)|φ(x)⟩|², clamped to [0, 1].
pub fn fidelity_kernel(x: &[f64], y: &[f64], spec: &FeatureMapSpec) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Argument(format!(
            "kernel arguments have dimensions {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(overlap(&embed(x, spec)?, &embed(y, spec)?)?.clamp(0.0, 1.0))
}

/// Symmetric matrix of kernel values over a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    m: usize,
    values: Vec<f64>,
}

impl GramMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Size(
                "Gram matrix rows must form a square matrix".into(),
            ));
        }
        Ok(Self {
            m,
            values: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.m + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.m..(i + 1) * self.m]
    }

    /// Strict upper-triangle entries, row by row.
    pub fn off_diagonal(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.m).flat_map(move |i| ((i + 1)..self.m).map(move |j| self.get(i, j)))
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.m {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn max_diagonal_deviation(&self) -> f64 {
        (0..self.m)
            .map(|i| (self.get(i, i) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Smallest eigenvalue from a dense symmetric eigensolve.
    pub fn min_eigenvalue(&self) -> f64 {
        let matrix = DMatrix::from_row_slice(self.m, self.m, &self.values);
        SymmetricEigen::new(matrix)
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

fn embed_all(ds: &Dataset, spec: &FeatureMapSpec) -> Result<Vec<Statevector>> {
    check_dataset(ds, spec)?;
    ds.points.iter().map(|x| embed(x, spec)).collect()
}

fn check_dataset(ds: &Dataset, spec: &FeatureMapSpec) -> Result<()> {
    spec.validate()?;
    if ds.n != spec.n {
        return Err(Error::Argument(format!(
            "dataset dimension {} does not match {}-qubit feature map",
            ds.n, spec.n
        )));
    }
    Ok(())
}

fn assemble(m: usize, upper: Vec<f64>, diagonal: Vec<f64>) -> GramMatrix {
    let mut values = vec![0.0; m * m];
    let mut it = upper.into_iter();
    for i in 0..m {
        values[i * m + i] = diagonal[i];
        for j in (i + 1)..m {
            let k = it.next().expect("upper triangle length");
            values[i * m + j] = k;
            values[j * m + i] = k;
        }
    }
    GramMatrix { m, values }
}

/// Gram matrix over `ds`: each point is embedded once, then the upper
/// triangle is filled from pairwise overlaps and mirrored. Single-threaded.
pub fn gram_matrix(ds: &Dataset, spec: &FeatureMapSpec) -> Result<GramMatrix> {
    let states = embed_all(ds, spec)?;
    let m = states.len();
    let diagonal = states
        .iter()
        .map(|s| overlap(s, s))
        .collect::<Result<Vec<_>>>()?;
    let mut upper = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in (i + 1)..m {
            upper.push(overlap(&states[i], &states[j])?);
        }
    }
    Ok(assemble(m, upper, diagonal))
}

/// Same result as [`gram_matrix`], bit for bit, with embeddings and rows
/// spread over the rayon pool. Every entry is still a single sequential sum.
pub fn gram_matrix_parallel(ds: &Dataset, spec: &FeatureMapSpec) -> Result<GramMatrix> {
    check_dataset(ds, spec)?;
    let states = ds
        .points
        .par_iter()
        .map(|x| embed(x, spec))
        .collect::<Result<Vec<_>>>()?;
    let m = states.len();
    let diagonal = states
        .par_iter()
        .map(|s| overlap(s, s))
        .collect::<Result<Vec<_>>>()?;
    let rows = (0..m)
        .into_par_iter()
        .map(|i| {
            ((i + 1)..m)
                .map(|j| overlap(&states[i], &states[j]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(m, rows.into_iter().flatten().collect(), diagonal))
}

/// Mean ⟨K⟩ = 2/(m(m−1)) Σ_{i>j} K_ij and population standard deviation of
/// the same m(m−1)/2 independent entries.
pub fn concentration_stats(g: &GramMatrix) -> Result<(f64, f64)> {
    if g.m() < 2 {
        return Err(Error::Argument(format!(
            "concentration statistics need m >= 2, got {}",
            g.m()
        )));
    }
    let entries: Vec<f64> = g.off_diagonal().collect();
    let first = entries[0];
    if entries.iter().all(|&v| v == first) {
        return Ok((first, 0.0));
    }
    let count = entries.len() as f64;
    let (lo, hi) = entries
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let mean = (entries.iter().sum::<f64>() / count).clamp(lo, hi);
    let var = entries.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / count;
    Ok((mean, var.sqrt()))
}

/// One point of a concentration sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationPoint {
    pub n: usize,
    pub m: usize,
    /// Seed of the dataset actually drawn for this `n`.
    pub seed: u64,
    pub mean: f64,
    pub std: f64,
}

/// For each qubit count, draws a fresh dataset seeded by [`dataset_seed`],
/// builds its Gram matrix and records the concentration statistics.
pub fn concentration_sweep(
    qubits: &[usize],
    m: usize,
    seed: u64,
    low: f64,
    high: f64,
    template: &FeatureMapSpec,
) -> Result<Vec<ConcentrationPoint>> {
    check_qubit_list(qubits)?;
    qubits
        .iter()
        .map(|&n| {
            let point_seed = dataset_seed(seed, n);
            let ds = generate_dataset(m, n, point_seed, low, high)?;
            let g = gram_matrix(&ds, &template.with_n(n))?;
            let (mean, std) = concentration_stats(&g)?;
            Ok(ConcentrationPoint {
                n,
                m,
                seed: point_seed,
                mean,
                std,
            })
        })
        .collect()
}

pub(crate) fn check_qubit_list(qubits: &[usize]) -> Result<()> {
    if qubits.is_empty() {
        return Err(Error::Argument("qubit list is empty".into()));
    }
    if qubits[0] == 0 {
        return Err(Error::Argument("qubit counts must be at least 1".into()));
    }
    if qubits.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Argument(format!(
            "qubit list must be strictly ascending: {qubits:?}"
        )));
    }
    Ok(())
}
