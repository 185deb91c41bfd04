//! Reference simulator built from explicit 2^n × 2^n unitaries.
//!
//! Every gate is expanded to a full matrix with identity tensor factors and
//! applied by dense matrix-vector product. Exponentially slower than
//! [`crate::sim`], and intentionally shares none of its code, so it can serve
//! as an independent oracle for small registers.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn identity(dim: usize) -> DMatrix<Complex64> {
    DMatrix::identity(dim, dim)
}

/// Lifts a 2×2 operator on qubit `q` to the full register (qubit 0 is the
/// rightmost tensor factor).
pub fn lift(n: usize, q: usize, op: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let high = identity(1 << (n - q - 1));
    let low = identity(1 << q);
    high.kronecker(op).kronecker(&low)
}

pub fn hadamard(n: usize, q: usize) -> DMatrix<Complex64> {
    let h = DMatrix::from_row_slice(
        2,
        2,
        &[
            c(FRAC_1_SQRT_2),
            c(FRAC_1_SQRT_2),
            c(FRAC_1_SQRT_2),
            c(-FRAC_1_SQRT_2),
        ],
    );
    lift(n, q, &h)
}

pub fn phase(n: usize, q: usize, theta: f64) -> DMatrix<Complex64> {
    let p = DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), Complex64::cis(theta)]);
    lift(n, q, &p)
}

/// |0⟩⟨0|_c ⊗ I + |1⟩⟨1|_c ⊗ X_t.
pub fn cnot(n: usize, control: usize, target: usize) -> DMatrix<Complex64> {
    let p0 = DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(0.0)]);
    let p1 = DMatrix::from_row_slice(2, 2, &[c(0.0), c(0.0), c(0.0), c(1.0)]);
    let x = DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
    let mut flip = lift(n, control, &p1);
    flip = lift(n, target, &x) * flip;
    lift(n, control, &p0) + flip
}

/// Full unitary of the linearly entangled ZZ feature map, assembled gate by
/// gate from the data angles 2x_i and 2(π−x_i)(π−x_j).
pub fn zz_feature_map_unitary(x: &[f64], reps: usize) -> DMatrix<Complex64> {
    let n = x.len();
    let dim = 1 << n;
    let mut u = identity(dim);
    for _ in 0..reps {
        for q in 0..n {
            u = hadamard(n, q) * u;
        }
        for (q, &xq) in x.iter().enumerate() {
            u = phase(n, q, 2.0 * xq) * u;
        }
        for i in 0..n.saturating_sub(1) {
            let angle = 2.0 * (PI - x[i]) * (PI - x[i + 1]);
            u = cnot(n, i, i + 1) * u;
            u = phase(n, i + 1, angle) * u;
            u = cnot(n, i, i + 1) * u;
        }
    }
    u
}

/// U(x)|0…0⟩ via the dense unitary.
pub fn zz_feature_map_state(x: &[f64], reps: usize) -> Vec<Complex64> {
    let u = zz_feature_map_unitary(x, reps);
    let mut zero = DVector::from_element(u.nrows(), c(0.0));
    zero[0] = c(1.0);
    (u * zero).iter().copied().collect()
}
