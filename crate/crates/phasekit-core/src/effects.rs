//! Effect operators of covariant phase observables on arc sets.
//!
//! The effect of the family `c` on an arc set `X` in dimension `D` is
//! `E(X)[n][m] = c[n][m] * K_X(n - m)` with the kernel integral
//! `K_X(k) = (1/2pi) integral_X e^{ik theta} d theta`. Everything else
//! here is derived from that matrix: covariance residuals, the
//! three-point spectrum of elementary families, the infimum of an
//! effect against a number projection, and the mixture lower bound.

use alloc::vec::Vec;
use core::f64::consts::TAU;

#[allow(unused_imports)]
use num_traits::Float;

use crate::arcs::ArcSet;
use crate::cmatrix::{ComplexMatrix, StateVector};
use crate::eigen::{eigh, opnorm, validated_effect_spectrum, wedge_from_eigen};
use crate::error::{CoreError, Result};
use crate::family::PhaseFamily;
use crate::C64;

/// Largest admissible phase-matrix violation before effect
/// construction refuses the family.
pub const GRAM_TOL: f64 = 1e-10;

/// Effects below this operator norm (or closer than this to the
/// identity) count as degenerate for the infimum probe.
pub const DEGENERATE_TOL: f64 = 1e-10;

/// Built effect operator together with what generated it.
#[derive(Clone, Debug)]
pub struct Effect {
    pub matrix: ComplexMatrix,
    pub family: PhaseFamily,
    pub arcs: ArcSet,
}

impl Effect {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Outcome probability `<psi, E psi>` for a unit state.
    pub fn expectation(&self, psi: &StateVector) -> Result<f64> {
        Ok(self.matrix.quad_form(psi)?.re)
    }
}

/// Kernel integral `K_X(k) = (1/2pi) integral_X e^{ik theta} d theta`.
///
/// Evaluated through the antiderivative at the arc endpoints, summed
/// termwise in endpoint order into a single accumulator. The
/// antiderivative vanishes exactly at both seam values `0` and `2pi`,
/// which makes the sum over a complement set the exact negation of the
/// sum over the set itself for `k != 0`.
pub fn kernel_integral(x: &ArcSet, k: i64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for &(a, b) in x.arcs() {
        acc += -endpoint_prefix(k, a);
        acc += endpoint_prefix(k, b);
    }
    acc
}

/// Antiderivative `(1/2pi) integral_0^t e^{ik theta} d theta`.
fn endpoint_prefix(k: i64, t: f64) -> C64 {
    if k == 0 {
        return C64::new(t / TAU, 0.0);
    }
    if t == 0.0 || t == TAU {
        return C64::new(0.0, 0.0);
    }
    let kf = k as f64;
    (C64::cis(kf * t) - 1.0) / C64::new(0.0, TAU * kf)
}

/// Build the effect `E(X)` of `family` on `x` in dimension `dim`.
///
/// The family's leading `dim` block is validated against [`GRAM_TOL`]
/// first, so ill-formed phase matrices are rejected rather than turned
/// into indefinite operators.
pub fn build_effect(family: &PhaseFamily, x: &ArcSet, dim: usize) -> Result<Effect> {
    let violation = family.validate_gram(dim);
    // negated form so that a NaN violation also lands in the error arm
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(violation <= GRAM_TOL) {
        return Err(CoreError::GramViolation { violation });
    }
    // kernel values for every index difference, k = -(dim-1) ..= dim-1
    let offset = dim as i64 - 1;
    let kernels: Vec<C64> = (-offset..=offset).map(|k| kernel_integral(x, k)).collect();
    let matrix = ComplexMatrix::from_fn(dim, |n, m| {
        let k = n as i64 - m as i64;
        family.entry(n, m) * kernels[(k + offset) as usize]
    });
    Ok(Effect {
        matrix,
        family: family.clone(),
        arcs: x.clone(),
    })
}

/// Covariance defect `|U_x E(X) U_x^* - E(X + x)|` in operator norm,
/// with `U_x = diag(e^{i n x})` the number-shift unitary.
pub fn covariance_residual(family: &PhaseFamily, x: &ArcSet, shift: f64, dim: usize) -> Result<f64> {
    let e1 = build_effect(family, x, dim)?;
    let e2 = build_effect(family, &x.translate(shift), dim)?;
    let rotated = ComplexMatrix::from_fn(dim, |n, m| {
        C64::cis(n as f64 * shift) * e1.matrix[(n, m)] * C64::cis(-(m as f64) * shift)
    });
    opnorm(&rotated.sub(&e2.matrix)?)
}

/// Closed-form spectrum `(e_minus, e_zero, e_plus)` of an elementary
/// effect: `e_{-+} = measure/2pi -+ |w| |K_X(s - t)|` on the coupled
/// pair, `e_zero = measure/2pi` with multiplicity `dim - 2` elsewhere.
pub fn elementary_spectrum_closed(
    s: usize,
    t: usize,
    w: C64,
    x: &ArcSet,
) -> Result<(f64, f64, f64)> {
    if s == t {
        return Err(CoreError::IndicesEqual { index: s });
    }
    let modulus = w.norm();
    if modulus > 1.0 {
        return Err(CoreError::WeightTooLarge { modulus });
    }
    let mu = x.measure() / TAU;
    let amp = modulus * kernel_integral(x, s as i64 - t as i64).norm();
    Ok((mu - amp, mu, mu + amp))
}

/// Largest `lambda` with `lambda P <= E(X)` for the number projection
/// `P` onto `span{ |n> : n in numbers }`.
///
/// For a single index this is the rank-one infimum coefficient; for
/// several it is `1 / lambda_max(P E^{-1} P)` on the range part, with
/// the same kernel-mass gate as the rank-one case: if the projection
/// leaks more than `range_tol` onto the numerical kernel of `E(X)`,
/// the infimum is zero.
pub fn complementarity_probe(
    family: &PhaseFamily,
    x: &ArcSet,
    numbers: &[usize],
    dim: usize,
    range_tol: f64,
) -> Result<f64> {
    if numbers.is_empty() {
        return Err(CoreError::EmptyIndexSet);
    }
    let mut idx: Vec<usize> = numbers.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if let Some(&bad) = idx.iter().find(|&&n| n >= dim) {
        return Err(CoreError::IndexOutOfRange { index: bad, dim });
    }
    let effect = build_effect(family, x, dim)?;
    let eig = eigh(&effect.matrix)?;
    let values = validated_effect_spectrum(&eig.values)?;
    let e_max = values.last().copied().unwrap_or(0.0);
    let c_max = 1.0 - values.first().copied().unwrap_or(0.0);
    if e_max <= DEGENERATE_TOL || c_max <= DEGENERATE_TOL {
        return Err(CoreError::DegenerateEffect {
            norm: e_max,
            complement_norm: c_max,
        });
    }
    if idx.len() == 1 {
        let phi = StateVector::basis(dim, idx[0])?;
        return Ok(wedge_from_eigen(&values, &eig.vectors, &phi, range_tol));
    }
    let cutoff = range_tol * e_max;
    let k = idx.len();
    let mut kernel_gram = ComplexMatrix::zeros(k);
    let mut range_gram = ComplexMatrix::zeros(k);
    for (j, &aj) in values.iter().enumerate() {
        for p in 0..k {
            let vp = eig.vectors[(idx[p], j)];
            for q in 0..k {
                let term = vp * eig.vectors[(idx[q], j)].conj();
                if aj <= cutoff {
                    kernel_gram[(p, q)] += term;
                } else {
                    range_gram[(p, q)] += term / aj;
                }
            }
        }
    }
    let kernel_mass = eigh(&kernel_gram)?.values.last().copied().unwrap_or(0.0);
    if kernel_mass >= range_tol {
        return Ok(0.0);
    }
    let top = eigh(&range_gram)?.values.last().copied().unwrap_or(0.0);
    if top <= 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / top)
}

/// Result of the mixture lower-bound check against
/// `epsilon * measure / 2pi`.
#[derive(Clone, Copy, Debug)]
pub struct MixtureBound {
    /// Infimum coefficient `lambda(P_k /\ E_epsilon(X))`.
    pub lambda: f64,
    /// Guaranteed lower bound `epsilon * measure(X) / 2pi`.
    pub bound: f64,
}

impl MixtureBound {
    /// Whether the computed infimum respects the bound within `slack`.
    pub fn holds(&self, slack: f64) -> bool {
        self.lambda >= self.bound - slack
    }
}

/// Infimum of a mixture effect against `|k><k|`, with the analytic
/// lower bound it must dominate: mixing in the trivial observable with
/// weight `epsilon` keeps `E(X) >= epsilon * measure/2pi * I`, so no
/// number state can be excluded by the mixture.
pub fn mixture_bound_check(
    epsilon: f64,
    inner: &PhaseFamily,
    x: &ArcSet,
    k: usize,
    dim: usize,
    range_tol: f64,
) -> Result<MixtureBound> {
    let family = PhaseFamily::mixture(epsilon, inner.clone())?;
    let lambda = complementarity_probe(&family, x, &[k], dim, range_tol)?;
    let bound = epsilon * x.measure() / TAU;
    Ok(MixtureBound { lambda, bound })
}
