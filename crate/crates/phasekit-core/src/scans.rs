//! Parameter scans built on the statistics layer: number-phase
//! uncertainty products for coherent states, value complementarity of
//! geometric states as the amplitude grows, and convergence of the
//! half-circle effect norm toward one with the truncation dimension.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::arcs::ArcSet;
use crate::effects::build_effect;
use crate::eigen::opnorm;
use crate::error::{CoreError, Result};
use crate::family::{PhaseFamily, PhaseSequence};
use crate::stats::{
    coherent_min_dim, coherent_state, geometric_min_dim, geometric_state,
    min_variance, number_stats, phase_density, VAR_UNIFORM,
};

/// Joint number and phase spread of a single state: the minimum phase
/// variance with its optimizing angles, the number variance, and their
/// product.
#[derive(Clone, Copy, Debug)]
pub struct VarianceReport {
    pub var: f64,
    pub alpha_star: f64,
    pub beta_star: f64,
    pub number_var: f64,
    pub product: f64,
}

/// Uncertainty product of a coherent state of amplitude `z` under the
/// canonical phase observable, on a density grid of `m` angles at
/// truncation `dim`.
///
/// The vacuum has uniform phase, so its report carries the uniform
/// variance and a zero product.
pub fn uncertainty_product(z: f64, m: usize, dim: usize) -> Result<VarianceReport> {
    if z < 0.0 {
        return Err(CoreError::NegativeAmplitude { amplitude: z });
    }
    let required = coherent_min_dim(z);
    if dim < required {
        return Err(CoreError::TailRequiresDim { required, got: dim });
    }
    let psi = coherent_state(z, dim)?;
    let (_, number_var) = number_stats(&psi);
    if z == 0.0 {
        return Ok(VarianceReport {
            var: VAR_UNIFORM,
            alpha_star: 0.0,
            beta_star: 0.0,
            number_var,
            product: 0.0,
        });
    }
    let dist = phase_density(&PhaseFamily::Canonical, &psi, m)?;
    let mv = min_variance(&dist)?;
    Ok(VarianceReport {
        var: mv.var,
        alpha_star: mv.alpha_star,
        beta_star: mv.beta_star,
        number_var,
        product: mv.var * number_var,
    })
}

/// One row of a value-complementarity scan.
#[derive(Clone, Copy, Debug)]
pub struct ValueCompRow {
    pub r: f64,
    pub dim: usize,
    /// Number mass on `{0, ..., p}`.
    pub head_mass: f64,
    /// The same mass from the closed form `1 - r^{2(p+1)}`.
    pub head_mass_closed: f64,
    /// Phase mass of the arc `[-delta, delta]`.
    pub concentration: f64,
}

/// Scan geometric states of increasing amplitude: number localization
/// on the first `p + 1` levels decays while phase mass concentrates on
/// a small arc around the peak.
pub fn value_comp_scan(
    family: &PhaseFamily,
    rs: &[f64],
    p: usize,
    delta: f64,
    min_dim: usize,
) -> Result<Vec<ValueCompRow>> {
    let window = ArcSet::new([(-delta, delta)]);
    let mut rows = Vec::with_capacity(rs.len());
    for &r in rs {
        if r.abs() >= 1.0 {
            return Err(CoreError::RadiusOutOfRange { radius: r });
        }
        let dim = geometric_min_dim(r).max(min_dim);
        let psi = geometric_state(r, &PhaseSequence::zero(), dim)?;
        let head_mass: f64 = psi.coeffs()[..=p.min(dim - 1)]
            .iter()
            .map(|z| z.norm_sqr())
            .sum();
        let head_mass_closed = 1.0 - r.powi(2 * (p as i32 + 1));
        let dist = phase_density(family, &psi, (2 * dim).next_power_of_two())?;
        let concentration = dist.mass(&window);
        rows.push(ValueCompRow {
            r,
            dim,
            head_mass,
            head_mass_closed,
            concentration,
        });
    }
    Ok(rows)
}

/// One row of an effect-norm scan.
#[derive(Clone, Copy, Debug)]
pub struct NormScanRow {
    pub dim: usize,
    pub norm: f64,
    /// Distance to one, `1 - norm`. Convergence can be fast enough
    /// that the true gap falls below machine epsilon, in which case
    /// the computed value sits at the roundoff floor and may come out
    /// a few ulps negative.
    pub gap: f64,
}

/// Operator norm of `E(X)` across truncation dimensions. The norm of
/// a proper non-empty arc set tends to one from below as the dimension
/// grows, without reaching it.
pub fn norm_scan(family: &PhaseFamily, x: &ArcSet, dims: &[usize]) -> Result<Vec<NormScanRow>> {
    if x.is_empty() {
        return Err(CoreError::ZeroMeasure);
    }
    let mut rows = Vec::with_capacity(dims.len());
    for &dim in dims {
        let effect = build_effect(family, x, dim)?;
        let norm = opnorm(&effect.matrix)?;
        rows.push(NormScanRow {
            dim,
            norm,
            gap: 1.0 - norm,
        });
    }
    Ok(rows)
}
