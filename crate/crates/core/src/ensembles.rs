//! Seeded random states, unitaries, Hamiltonians and generators.
//!
//! Every trial of an experiment draws from its own ChaCha stream, selected
//! by `(master_seed, trial)`. Streams do not depend on how trials are
//! scheduled, so parallel runs are reproducible.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::dynamics::{Channel, JointModel, LindbladModel};
use crate::error::{QslError, Result};
use crate::linalg::{self, c, ComplexMatrix};
use crate::state::DensityMatrix;
use num_complex::Complex64;

/// Source of independent per-trial random streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeededRng {
    master_seed: u64,
}

impl SeededRng {
    pub fn new(master_seed: u64) -> Self {
        Self { master_seed }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// Stream for `trial`. Identical inputs give identical sequences on
    /// every platform.
    pub fn stream(&self, trial: u64) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.master_seed);
        rng.set_stream(trial);
        rng
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(QslError::InvalidDimension(d));
    }
    Ok(())
}

/// Complex normal with `E|z|^2 = 1`.
fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `rows x cols` matrix of i.i.d. standard complex normals.
pub fn ginibre_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    // Fill row by row so the draw order is fixed and readable.
    let mut m = ComplexMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = complex_normal(rng);
        }
    }
    m
}

/// Haar-distributed unitary from the QR decomposition of a Ginibre matrix,
/// with the phases of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<ComplexMatrix> {
    check_dim(d)?;
    let qr = ginibre_matrix(d, d, rng).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        let diag = r[(j, j)];
        let phase = if diag.norm() > 0.0 { diag / diag.norm() } else { c(1.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    Ok(q)
}

/// Uniformly random pure state.
pub fn haar_pure_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DensityMatrix> {
    check_dim(d)?;
    let v: Vec<Complex64> = (0..d).map(|_| complex_normal(rng)).collect();
    DensityMatrix::pure(&v)
}

fn normalized_gram(a: &ComplexMatrix) -> Result<DensityMatrix> {
    let w = a * a.adjoint();
    let tr = w.trace().re;
    DensityMatrix::new(w * c(1.0 / tr))
}

/// `G G^dagger / tr` with `G` a `d x rank` Ginibre matrix. Full rank gives
/// the Hilbert-Schmidt measure.
pub fn ginibre_state<R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> Result<DensityMatrix> {
    check_dim(d)?;
    if rank == 0 || rank > d {
        return Err(QslError::InvalidRank { rank, dim: d });
    }
    normalized_gram(&ginibre_matrix(d, rank, rng))
}

/// Bures-measure state `(1 + U) G G^dagger (1 + U^dagger) / tr`.
pub fn bures_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DensityMatrix> {
    check_dim(d)?;
    let u = haar_unitary(d, rng)?;
    let g = ginibre_matrix(d, d, rng);
    normalized_gram(&((linalg::identity(d) + u) * g))
}

/// GUE matrix: unit-variance real diagonal, unit-variance complex
/// off-diagonal entries.
pub fn gue_hamiltonian<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<ComplexMatrix> {
    check_dim(d)?;
    let mut h = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        let x: f64 = rng.sample(StandardNormal);
        h[(i, i)] = c(x);
        for j in i + 1..d {
            let z = complex_normal(rng);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    Ok(h)
}

fn remove_trace(m: &mut ComplexMatrix) {
    let d = m.nrows();
    let shift = m.trace() / c(d as f64);
    for i in 0..d {
        m[(i, i)] -= shift;
    }
}

/// Gram-Schmidt in the Hilbert-Schmidt inner product.
fn orthonormalize(mut ops: Vec<ComplexMatrix>) -> Vec<ComplexMatrix> {
    for k in 0..ops.len() {
        for l in 0..k {
            let proj = linalg::trace_product(&ops[l].adjoint(), &ops[k]);
            let prev = ops[l].clone();
            ops[k] -= prev * proj;
        }
        let n = linalg::hs_norm(&ops[k]);
        ops[k] /= c(n);
    }
    ops
}

fn check_channel_count(d: usize, channels: usize) -> Result<()> {
    if channels > d * d - 1 {
        return Err(QslError::OutOfRange {
            name: "channels",
            value: channels as f64,
            expected: "at most d^2 - 1 orthonormal traceless operators",
        });
    }
    Ok(())
}

fn random_rates<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    // 1 - U[0, 1) lies in (0, 1].
    (0..n).map(|_| 1.0 - rng.gen::<f64>()).collect()
}

/// GUE Hamiltonian plus `channels` orthonormal traceless jump operators
/// with rates uniform in `(0, 1]`.
pub fn random_lindblad_model<R: Rng + ?Sized>(
    d: usize,
    channels: usize,
    rng: &mut R,
) -> Result<LindbladModel> {
    check_dim(d)?;
    check_channel_count(d, channels)?;
    let h = gue_hamiltonian(d, rng)?;
    let raw = (0..channels)
        .map(|_| {
            let mut m = ginibre_matrix(d, d, rng);
            remove_trace(&mut m);
            m
        })
        .collect();
    build_model(h, orthonormalize(raw), rng)
}

/// As [`random_lindblad_model`] but with Hermitian jump operators, so the
/// dynamics is unital.
pub fn random_unital_lindblad_model<R: Rng + ?Sized>(
    d: usize,
    channels: usize,
    rng: &mut R,
) -> Result<LindbladModel> {
    check_dim(d)?;
    check_channel_count(d, channels)?;
    let h = gue_hamiltonian(d, rng)?;
    let mut raw = Vec::with_capacity(channels);
    for _ in 0..channels {
        let mut m = gue_hamiltonian(d, rng)?;
        remove_trace(&mut m);
        raw.push(m);
    }
    build_model(h, orthonormalize(raw), rng)
}

fn build_model<R: Rng + ?Sized>(h: ComplexMatrix, ops: Vec<ComplexMatrix>, rng: &mut R) -> Result<LindbladModel> {
    let rates = random_rates(ops.len(), rng);
    let channels = ops
        .into_iter()
        .zip(rates)
        .map(|(operator, rate)| Channel { rate, operator })
        .collect();
    LindbladModel::new(h, channels)
}

/// GUE system, environment and interaction Hamiltonians with a
/// full-rank Ginibre environment state.
pub fn random_joint_model<R: Rng + ?Sized>(d_s: usize, d_e: usize, rng: &mut R) -> Result<JointModel> {
    check_dim(d_s)?;
    check_dim(d_e)?;
    let h_s = gue_hamiltonian(d_s, rng)?;
    let h_e = gue_hamiltonian(d_e, rng)?;
    let h_int = gue_hamiltonian(d_s * d_e, rng)?;
    let gamma_e = ginibre_state(d_e, d_e, rng)?;
    JointModel::new(h_s, h_e, h_int, gamma_e)
}
