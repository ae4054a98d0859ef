//! Distances and overlap functionals between pairs of states.

use crate::bloch::{gell_mann_basis, to_bloch};
use crate::error::{QslError, Result};
use crate::linalg;
use crate::state::DensityMatrix;

/// Norm below which a Bloch vector has no direction.
pub const ANGLE_NORM_TOL: f64 = 1e-12;

fn clamp_unit(x: f64) -> f64 {
    x.clamp(-1.0, 1.0)
}

/// `||rho - sigma||` in the Hilbert-Schmidt norm.
pub fn hs_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    rho.check_same_dim(sigma)?;
    Ok(linalg::hs_norm(&(rho.matrix() - sigma.matrix())))
}

/// Euclidean length of `r - s` between generalized Bloch vectors.
pub fn gbv_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let d = rho.check_same_dim(sigma)? as f64;
    Ok((d / (d - 1.0)).sqrt() * hs_distance(rho, sigma)?)
}

/// Angle between the generalized Bloch vectors of two states, in `[0, pi]`.
///
/// Undefined if either state is maximally mixed.
pub fn bloch_angle(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    let d = rho.check_same_dim(sigma)?;
    let basis = gell_mann_basis(d)?;
    let r = to_bloch(rho, &basis)?;
    let s = to_bloch(sigma, &basis)?;
    let (nr, ns) = (r.norm(), s.norm());
    for n in [nr, ns] {
        if n < ANGLE_NORM_TOL {
            return Err(QslError::UndefinedAngle(n));
        }
    }
    Ok(clamp_unit(r.dot(&s) / (nr * ns)).acos())
}

/// Uhlmann fidelity `tr sqrt(sqrt(rho) sigma sqrt(rho))`.
///
/// Evaluated from the spectrum of the Hermitian product. Rounding-level
/// eigenvalues are dropped so rank-deficient pairs keep full precision.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    rho.check_same_dim(sigma)?;
    let sr = rho.sqrt();
    let inner = &sr * sigma.matrix() * &sr;
    let spectrum = linalg::eigvalsh(&inner);
    let largest = spectrum.last().copied().unwrap_or(0.0);
    Ok(spectrum.into_iter().map(|l| linalg::denoise(l, largest).sqrt()).sum())
}

/// Bures angle `arccos F`.
pub fn bures_angle(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(clamp_unit(fidelity(rho, sigma)?).acos())
}

/// Sub-fidelity `E = sqrt(z + sqrt(2 (z^2 - beta)))`, a lower bound on the
/// fidelity that needs only overlaps.
pub fn sub_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(state_pair_parameters(rho, sigma)?.sub_fidelity())
}

/// Affinity `tr[sqrt(rho) sqrt(sigma)]`.
pub fn affinity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    rho.check_same_dim(sigma)?;
    Ok(linalg::trace_product(&rho.sqrt(), &sigma.sqrt()).re)
}

/// The four overlaps that the overlap-based bounds depend on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StatePairParams {
    /// `tr[rho^2]`
    pub x: f64,
    /// `tr[sigma^2]`
    pub y: f64,
    /// `tr[rho sigma]`
    pub z: f64,
    /// `tr[rho sigma rho sigma]`
    pub beta: f64,
}

impl StatePairParams {
    /// Sub-fidelity from the stored overlaps. Rounding in `z^2 - beta` is of
    /// order `eps * z`, so values under the noise floor relative to `z` count
    /// as zero and a pure endpoint gives `E = F` to rounding.
    pub fn sub_fidelity(&self) -> f64 {
        let inner = (2.0 * linalg::denoise(self.z * self.z - self.beta, self.z)).sqrt();
        (self.z + inner).max(0.0).sqrt()
    }

    /// `||rho - sigma||^2 = x + y - 2z`, clamped at zero.
    pub fn hs_distance_sq(&self) -> f64 {
        (self.x + self.y - 2.0 * self.z).max(0.0)
    }

    /// Parameters with the roles of the two states exchanged.
    pub fn swapped(&self) -> StatePairParams {
        StatePairParams {
            x: self.y,
            y: self.x,
            ..*self
        }
    }
}

pub fn state_pair_parameters(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<StatePairParams> {
    rho.check_same_dim(sigma)?;
    let prod = rho.matrix() * sigma.matrix();
    Ok(StatePairParams {
        x: rho.purity(),
        y: sigma.purity(),
        z: prod.trace().re,
        beta: linalg::trace_product(&prod, &prod).re,
    })
}
