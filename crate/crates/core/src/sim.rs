//! Dense statevector simulation for the gate set used by the ZZ feature map.
//!
//! Qubit ordering is little-endian throughout the crate: qubit `q` is bit `q`
//! of the basis index, so qubit 0 is the least significant bit. Gates are
//! applied in place by walking bit-indexed strides of the amplitude vector;
//! no gate matrix is ever materialized.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};

/// Largest register the simulator will allocate (2^24 amplitudes, 256 MiB).
pub const MAX_QUBITS: usize = 24;

/// Pure state of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl Statevector {
    /// The all-zeros basis state |0…0⟩.
    pub fn zero_state(n: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&n) {
            return Err(Error::Size(format!(
                "qubit count {n} outside supported range 1..={MAX_QUBITS}"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amplitudes })
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Size(format!(
                "amplitude vector length {len} is not 2^n for n >= 1"
            )));
        }
        let n = len.trailing_zeros() as usize;
        if n > MAX_QUBITS {
            return Err(Error::Size(format!("{n} qubits exceeds {MAX_QUBITS}")));
        }
        Ok(Self { n, amplitudes })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// Σ |a_k|².
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            Err(Error::Index {
                index: q,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Hadamard on qubit `q`: each pair (a, b) differing only in bit `q`
    /// becomes ((a+b)/√2, (a−b)/√2).
    pub fn apply_hadamard(&mut self, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        let stride = 1usize << q;
        for block in self.amplitudes.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = (x + y) * FRAC_1_SQRT_2;
                *b = (x - y) * FRAC_1_SQRT_2;
            }
        }
        Ok(())
    }

    /// Hadamard on every qubit.
    pub fn apply_hadamard_all(&mut self) {
        for q in 0..self.n {
            // q < n by construction
            let _ = self.apply_hadamard(q);
        }
    }

    /// Phase gate diag(1, e^{iθ}) on qubit `q`.
    pub fn apply_phase(&mut self, q: usize, theta: f64) -> Result<()> {
        self.check_qubit(q)?;
        if !theta.is_finite() {
            return Err(Error::Argument(format!(
                "phase angle {theta} is not finite"
            )));
        }
        if theta == 0.0 {
            return Ok(());
        }
        let factor = Complex64::cis(theta);
        let stride = 1usize << q;
        for block in self.amplitudes.chunks_exact_mut(stride << 1) {
            for amp in &mut block[stride..] {
                *amp *= factor;
            }
        }
        Ok(())
    }

    /// CNOT: swaps the target bit's amplitude pairs wherever the control bit is set.
    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::Argument(format!(
                "CNOT control and target are both qubit {control}"
            )));
        }
        let cbit = 1usize << control;
        let tbit = 1usize << target;
        for i in 0..self.amplitudes.len() {
            // visit each pair once, from its target-clear member
            if i & cbit != 0 && i & tbit == 0 {
                self.amplitudes.swap(i, i | tbit);
            }
        }
        Ok(())
    }
}

/// ⟨a|b⟩ = Σ conj(a_k)·b_k.
pub fn inner_product(a: &Statevector, b: &Statevector) -> Result<Complex64> {
    if a.n != b.n {
        return Err(Error::Size(format!(
            "inner product of {}-qubit and {}-qubit states",
            a.n, b.n
        )));
    }
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .fold(Complex64::new(0.0, 0.0), |acc, (x, y)| acc + x.conj() * y))
}
