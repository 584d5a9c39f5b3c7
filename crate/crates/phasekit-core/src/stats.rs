//! Phase statistics: outcome probabilities, densities on the circle,
//! Fourier coefficients, circular minimum variance and number moments.
//!
//! Densities of truncated states are trigonometric polynomials of
//! degree `D - 1`, so everything downstream of the coefficient vector
//! (arc masses, window moments for the minimum variance) is evaluated
//! through closed-form Fourier sums rather than quadrature; the
//! uniform grid samples exist for inspection, CSV dumps and the
//! normalization check.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;

use crate::arcs::ArcSet;
use crate::cmatrix::StateVector;
use crate::effects::{build_effect, kernel_integral};
use crate::error::{CoreError, Result};
use crate::family::{PhaseFamily, PhaseSequence};
use crate::special::ln_factorial;
use crate::C64;

/// Truncation tail budget for geometric and coherent states.
pub const TAIL_TOL: f64 = 1e-12;

/// Minimum variance of the uniform distribution, `pi^2 / 3`.
pub const VAR_UNIFORM: f64 = PI * PI / 3.0;

/// Smallest dimension at which a geometric state with parameter `r`
/// meets the tail budget `r^{2D} <= 1e-12`.
pub fn geometric_min_dim(r: f64) -> usize {
    let a = r.abs();
    if a == 0.0 {
        return 1;
    }
    let mut d = (TAIL_TOL.ln() / (2.0 * a.ln())).ceil() as usize;
    d = d.max(1);
    while a.powi(2 * d as i32) > TAIL_TOL {
        d += 1;
    }
    d
}

/// Truncated geometric state `psi_n ~ e^{i phi_n} r^n`, normalized.
pub fn geometric_state(r: f64, phases: &PhaseSequence, dim: usize) -> Result<StateVector> {
    if r.abs() >= 1.0 {
        return Err(CoreError::RadiusOutOfRange { radius: r });
    }
    let required = geometric_min_dim(r);
    if dim < required {
        return Err(CoreError::TailRequiresDim { required, got: dim });
    }
    let mut coeffs = Vec::with_capacity(dim);
    let mut rn = 1.0;
    for n in 0..dim {
        coeffs.push(C64::cis(phases.value(n)) * rn);
        rn *= r;
    }
    StateVector::from_coeffs(coeffs).normalized()
}

/// Dimension rule for coherent states: `D >= z^2 + 10 z + 20` keeps
/// the Poisson tail under the budget.
pub fn coherent_min_dim(z: f64) -> usize {
    (z * z + 10.0 * z + 20.0).ceil() as usize
}

/// Truncated coherent state with coefficients
/// `e^{-z^2/2} z^n / sqrt(n!)`, normalized after truncation.
pub fn coherent_state(z: f64, dim: usize) -> Result<StateVector> {
    if z < 0.0 {
        return Err(CoreError::NegativeAmplitude { amplitude: z });
    }
    if z == 0.0 {
        return StateVector::basis(dim.max(1), 0);
    }
    let required = coherent_min_dim(z);
    if dim < required {
        return Err(CoreError::TailRequiresDim { required, got: dim });
    }
    let lz = z.ln();
    let half_z2 = 0.5 * z * z;
    let mut coeffs = Vec::with_capacity(dim);
    for n in 0..dim {
        let ln_c = -half_z2 + n as f64 * lz - 0.5 * ln_factorial(n);
        coeffs.push(C64::new(ln_c.exp(), 0.0));
    }
    StateVector::from_coeffs(coeffs).normalized()
}

/// Number mean and variance of a unit state.
pub fn number_stats(psi: &StateVector) -> (f64, f64) {
    let total: f64 = psi.coeffs().iter().map(|z| z.norm_sqr()).sum();
    let mut mean = 0.0;
    let mut second = 0.0;
    for (n, z) in psi.coeffs().iter().enumerate() {
        let p = z.norm_sqr() / total;
        mean += n as f64 * p;
        second += (n as f64) * (n as f64) * p;
    }
    (mean, second - mean * mean)
}

/// Outcome probability `<psi, E(X) psi>` of the phase observable on an
/// arc set.
pub fn phase_prob(family: &PhaseFamily, psi: &StateVector, x: &ArcSet) -> Result<f64> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(CoreError::NotUnit { norm });
    }
    let effect = build_effect(family, x, psi.dim())?;
    effect.expectation(psi)
}

/// Phase density of a state on a uniform angular grid, together with
/// its Fourier coefficients `c_k` for `k = 0 ..= K`.
///
/// The density is the trigonometric polynomial
/// `g(theta) = sum_k c_k e^{i k theta}` with `c_{-k} = conj(c_k)`.
#[derive(Clone, Debug)]
pub struct PhaseDistribution {
    grid: usize,
    /// Samples `g(theta_j)` at `theta_j = 2 pi j / M`.
    pub density: Vec<f64>,
    /// Coefficients `c_k`, index `k` from `0` to `K`.
    pub fourier: Vec<C64>,
}

impl PhaseDistribution {
    /// Number of grid points `M`.
    pub fn grid(&self) -> usize {
        self.grid
    }

    /// Angle of grid point `j`.
    pub fn theta(&self, j: usize) -> f64 {
        TAU * j as f64 / self.grid as f64
    }

    /// Arithmetic mean of the samples; `1` for a normalized density.
    pub fn mean(&self) -> f64 {
        if self.density.is_empty() {
            return 0.0;
        }
        self.density.iter().sum::<f64>() / self.density.len() as f64
    }

    /// Build from density samples alone; coefficients come from the
    /// discrete Fourier transform up to `K = M/2 - 1`.
    pub fn from_samples(density: Vec<f64>) -> PhaseDistribution {
        let m = density.len();
        let k_max = if m >= 4 { m / 2 - 1 } else { 0 };
        let mut fourier = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            let mut acc = C64::new(0.0, 0.0);
            for (j, &g) in density.iter().enumerate() {
                acc += g * C64::cis(-(k as f64) * TAU * j as f64 / m as f64);
            }
            fourier.push(acc / m as f64);
        }
        PhaseDistribution {
            grid: m,
            density,
            fourier,
        }
    }

    /// Synthesize the density value at an arbitrary angle from the
    /// coefficient vector.
    pub fn density_at(&self, theta: f64) -> f64 {
        let mut g = self.fourier.first().map(|z| z.re).unwrap_or(0.0);
        for (k, ck) in self.fourier.iter().enumerate().skip(1) {
            g += 2.0 * (ck * C64::cis(k as f64 * theta)).re;
        }
        g
    }

    /// Probability mass of an arc set, `(1/2pi) integral_X g`.
    ///
    /// Exact for the trigonometric polynomial the distribution stores:
    /// the integral reduces to kernel integrals of the arcs.
    pub fn mass(&self, x: &ArcSet) -> f64 {
        let mut p = self.fourier.first().map(|z| z.re).unwrap_or(0.0) * x.measure() / TAU;
        for (k, ck) in self.fourier.iter().enumerate().skip(1) {
            p += 2.0 * (ck * kernel_integral(x, k as i64)).re;
        }
        p
    }

    /// The same distribution rotated so the density moves by `phi`:
    /// `g'(theta) = g(theta - phi)`.
    pub fn rotate(&self, phi: f64) -> PhaseDistribution {
        let fourier: Vec<C64> = self
            .fourier
            .iter()
            .enumerate()
            .map(|(k, ck)| ck * C64::cis(-(k as f64) * phi))
            .collect();
        let mut out = PhaseDistribution {
            grid: self.grid,
            density: Vec::new(),
            fourier,
        };
        out.density = (0..self.grid).map(|j| out.density_at(out.theta(j))).collect();
        out
    }
}

/// Phase density of `psi` under `family` on `grid` equispaced angles.
///
/// The grid must oversample the polynomial degree: `grid >= 2 dim`.
/// Canonical families use the squared modulus of the Fourier synthesis
/// of the coefficients; every other family goes through the
/// coefficient sums directly.
pub fn phase_density(
    family: &PhaseFamily,
    psi: &StateVector,
    grid: usize,
) -> Result<PhaseDistribution> {
    let dim = psi.dim();
    if grid < 2 * dim {
        return Err(CoreError::GridTooCoarse { grid, dim });
    }
    let norm = psi.norm();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(CoreError::NotUnit { norm });
    }
    let k_max = (dim - 1).min(grid / 2 - 1);
    let mut fourier = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let mut acc = C64::new(0.0, 0.0);
        for n in 0..dim - k {
            acc += family.entry(n + k, n) * psi.coeffs()[n + k].conj() * psi.coeffs()[n];
        }
        fourier.push(acc);
    }
    let density: Vec<f64> = if matches!(family, PhaseFamily::Canonical) {
        (0..grid)
            .map(|j| {
                let theta = TAU * j as f64 / grid as f64;
                let amp: C64 = psi
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(n, c)| c * C64::cis(-(n as f64) * theta))
                    .sum();
                amp.norm_sqr()
            })
            .collect()
    } else {
        let tmp = PhaseDistribution {
            grid,
            density: Vec::new(),
            fourier: fourier.clone(),
        };
        (0..grid).map(|j| tmp.density_at(tmp.theta(j))).collect()
    };
    Ok(PhaseDistribution {
        grid,
        density,
        fourier,
    })
}

/// Poisson kernel: the phase density of a geometric state under the
/// canonical observable, `(1 - r^2) / (1 - 2 r cos(theta) + r^2)`.
pub fn density_canonical_geometric(r: f64, theta: f64) -> Result<f64> {
    if r.abs() >= 1.0 {
        return Err(CoreError::RadiusOutOfRange { radius: r });
    }
    Ok((1.0 - r * r) / (1.0 - 2.0 * r * theta.cos() + r * r))
}

/// Phase density of a coherent state of amplitude `r >= 0` under the
/// ground-state phase-space observable:
/// `e^{-r^2} + e^{-r^2 sin^2 theta} 2 r cos(theta) (sqrt(pi)/2)(1 + erf(r cos theta))`.
pub fn density_groundstate_coherent(r: f64, theta: f64) -> f64 {
    let c = theta.cos();
    let s = theta.sin();
    (-r * r).exp()
        + (-r * r * s * s).exp()
            * 2.0
            * r
            * c
            * (PI.sqrt() / 2.0)
            * (1.0 + crate::special::erf(r * c))
}

/// Fourier coefficient `c_k` of the phase density of a geometric state
/// with amplitude `r` and phase profile `phases`:
/// `c_k = r^k (1 - r^2) sum_n c[n+k][n] e^{-i(phi_{n+k} - phi_n)} r^{2n}`.
pub fn fourier_coeff(
    family: &PhaseFamily,
    r: f64,
    phases: &PhaseSequence,
    k: usize,
    dim: usize,
) -> Result<C64> {
    if r.abs() >= 1.0 {
        return Err(CoreError::RadiusOutOfRange { radius: r });
    }
    let required = geometric_min_dim(r);
    if dim < required {
        return Err(CoreError::TailRequiresDim { required, got: dim });
    }
    let r2 = r * r;
    let mut rn = 1.0;
    let mut acc = C64::new(0.0, 0.0);
    for n in 0..dim {
        acc += family.entry(n + k, n) * C64::cis(phases.value(n) - phases.value(n + k)) * rn;
        rn *= r2;
    }
    Ok(acc * r.powi(k as i32) * (1.0 - r2))
}

/// Minimum variance of a circular distribution with the optimizing
/// window center `beta_star` and reference angle `alpha_star`.
#[derive(Clone, Copy, Debug)]
pub struct MinVariance {
    pub var: f64,
    pub alpha_star: f64,
    pub beta_star: f64,
}

/// Minimum variance over all window placements:
/// `min over alpha, beta of (1/2pi) integral over [beta-pi, beta+pi) of
/// (theta - alpha)^2 g(theta) d theta`.
///
/// For a full-mass window the optimal `alpha` is the window first
/// moment, so only `beta` is searched: a coarse pass over the grid
/// followed by golden-section refinement to `1e-10`. The window
/// moments are closed-form sums over the Fourier coefficients.
pub fn min_variance(dist: &PhaseDistribution) -> Result<MinVariance> {
    let c0 = dist.fourier.first().map(|z| z.re).unwrap_or(0.0);
    if (c0 - 1.0).abs() > 1e-8 {
        return Err(CoreError::NotNormalized { mean: c0 });
    }
    // centered window moments about beta:
    //   m1 = sum_k 2 (-1)^k Im(c_k e^{ik beta}) / k
    //   m2 = c0 pi^2/3 + sum_k 4 (-1)^k Re(c_k e^{ik beta}) / k^2
    // and VAR(beta) = m2 - m1^2 at the optimal alpha = beta + m1.
    let moments = |beta: f64| -> (f64, f64) {
        let mut m1 = 0.0;
        let mut m2 = c0 * PI * PI / 3.0;
        for (k, ck) in dist.fourier.iter().enumerate().skip(1) {
            let kf = k as f64;
            let z = ck * C64::cis(kf * beta);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            m1 += 2.0 * sign * z.im / kf;
            m2 += 4.0 * sign * z.re / (kf * kf);
        }
        (m1, m2)
    };
    let var_at = |beta: f64| -> f64 {
        let (m1, m2) = moments(beta);
        m2 - m1 * m1
    };

    let m = dist.grid.max(64);
    let step = TAU / m as f64;
    let mut best_j = 0usize;
    let mut best = f64::INFINITY;
    for j in 0..m {
        let v = var_at(j as f64 * step);
        if v < best {
            best = v;
            best_j = j;
        }
    }
    let mut a = best_j as f64 * step - step;
    let mut b = best_j as f64 * step + step;
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut c1 = b - INVPHI * (b - a);
    let mut c2 = a + INVPHI * (b - a);
    let mut f1 = var_at(c1);
    let mut f2 = var_at(c2);
    while b - a > 1e-10 {
        if f1 <= f2 {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - INVPHI * (b - a);
            f1 = var_at(c1);
        } else {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + INVPHI * (b - a);
            f2 = var_at(c2);
        }
    }
    let beta = 0.5 * (a + b);
    let (m1, m2) = moments(beta);
    Ok(MinVariance {
        var: m2 - m1 * m1,
        alpha_star: wrap_angle(beta + m1),
        beta_star: wrap_angle(beta),
    })
}

fn wrap_angle(t: f64) -> f64 {
    let mut x = t % TAU;
    if x < 0.0 {
        x += TAU;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn half() -> ArcSet {
        ArcSet::new([(0.0, PI)])
    }

    #[test]
    fn geometric_state_moments_and_guards() {
        let dim = geometric_min_dim(0.5);
        assert!(0.5f64.powi(2 * dim as i32) <= TAIL_TOL);
        let psi = geometric_state(0.5, &PhaseSequence::zero(), dim).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-14);
        let (mean, _) = number_stats(&psi);
        // geometric mean r^2 / (1 - r^2) = 1/3
        assert!((mean - 1.0 / 3.0).abs() < 1e-9);

        assert!(matches!(
            geometric_state(1.0, &PhaseSequence::zero(), 64),
            Err(CoreError::RadiusOutOfRange { .. })
        ));
        match geometric_state(0.999, &PhaseSequence::zero(), 100) {
            Err(CoreError::TailRequiresDim { required, got }) => {
                assert_eq!(got, 100);
                assert!(required > 13_000 && required < 14_500, "required {required}");
            }
            other => panic!("expected tail guard, got {other:?}"),
        }
        // vacuum at r = 0
        let v = geometric_state(0.0, &PhaseSequence::zero(), 1).unwrap();
        assert_eq!(v.coeffs(), &[c(1.0, 0.0)]);
    }

    #[test]
    fn coherent_state_moments_and_guards() {
        let z = 3.0;
        let dim = coherent_min_dim(z);
        assert_eq!(dim, 59);
        let psi = coherent_state(z, dim).unwrap();
        let (mean, var) = number_stats(&psi);
        assert!((mean - 9.0).abs() < 1e-8, "mean {mean}");
        assert!((var - 9.0).abs() < 1e-8, "variance {var}");
        assert!(matches!(
            coherent_state(z, 40),
            Err(CoreError::TailRequiresDim { required: 59, got: 40 })
        ));
        assert!(coherent_state(-1.0, 8).is_err());
        let v = coherent_state(0.0, 5).unwrap();
        assert_eq!(v.coeffs()[0], c(1.0, 0.0));
    }

    #[test]
    fn number_stats_on_eigenstates() {
        let e4 = StateVector::basis(9, 4).unwrap();
        assert_eq!(number_stats(&e4), (4.0, 0.0));
    }

    #[test]
    fn phase_prob_reference_values() {
        // uniform in every number state
        let e3 = StateVector::basis(12, 3).unwrap();
        for fam in [
            PhaseFamily::Canonical,
            PhaseFamily::GroundState,
            PhaseFamily::Trivial,
        ] {
            let p = phase_prob(&fam, &e3, &half()).unwrap();
            assert!((p - 0.5).abs() < 1e-14, "family {fam:?}: {p}");
            let full = phase_prob(&fam, &e3, &ArcSet::full_circle()).unwrap();
            assert!((full - 1.0).abs() < 1e-14);
        }
        // the norm-attaining superposition of the 2x2 canonical effect
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let attaining = StateVector::from_coeffs(vec![c(s, 0.0), c(0.0, s)]);
        let p = phase_prob(&PhaseFamily::Canonical, &attaining, &half()).unwrap();
        assert!((p - (0.5 + 1.0 / PI)).abs() < 1e-14, "p = {p}");
        // the real equal superposition sits at exactly one half
        let plus = StateVector::from_coeffs(vec![c(s, 0.0), c(s, 0.0)]);
        let p = phase_prob(&PhaseFamily::Canonical, &plus, &half()).unwrap();
        assert!((p - 0.5).abs() < 1e-14, "p = {p}");
    }

    #[test]
    fn density_is_uniform_for_trivial_family_and_number_states() {
        let psi = geometric_state(0.4, &PhaseSequence::zero(), 32).unwrap();
        let d = phase_density(&PhaseFamily::Trivial, &psi, 64).unwrap();
        for &g in &d.density {
            assert!((g - 1.0).abs() < 1e-12);
        }
        let e7 = StateVector::basis(16, 7).unwrap();
        let d = phase_density(&PhaseFamily::GroundState, &e7, 48).unwrap();
        for &g in &d.density {
            assert!((g - 1.0).abs() < 1e-12);
        }
        assert!(matches!(
            phase_density(&PhaseFamily::Canonical, &e7, 31),
            Err(CoreError::GridTooCoarse { grid: 31, dim: 16 })
        ));
    }

    #[test]
    fn canonical_geometric_density_matches_poisson_kernel() {
        let r = 0.5;
        let dim = 200;
        let psi = geometric_state(r, &PhaseSequence::zero(), dim).unwrap();
        let d = phase_density(&PhaseFamily::Canonical, &psi, 1024).unwrap();
        assert!((d.density[0] - 3.0).abs() < 1e-10);
        assert!((d.density[512] - 1.0 / 3.0).abs() < 1e-10);
        for j in (0..1024).step_by(37) {
            let want = density_canonical_geometric(r, d.theta(j)).unwrap();
            assert!((d.density[j] - want).abs() < 1e-10);
        }
        assert!((d.mean() - 1.0).abs() < 1e-10);
        assert!((d.fourier[0].re - 1.0).abs() < 1e-10);
        assert!(d.density.iter().all(|&g| g >= -1e-9));
    }

    #[test]
    fn poisson_kernel_reference_values() {
        assert_eq!(density_canonical_geometric(0.0, 1.234).unwrap(), 1.0);
        assert!((density_canonical_geometric(0.5, 0.0).unwrap() - 3.0).abs() < 1e-15);
        assert!((density_canonical_geometric(0.5, PI).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(density_canonical_geometric(1.0, 0.0).is_err());
    }

    #[test]
    fn ground_state_coherent_density_closed_form() {
        // vacuum is phase-uniform
        for theta in [0.0, 1.0, 2.5] {
            assert!((density_groundstate_coherent(0.0, theta) - 1.0).abs() < 1e-14);
        }
        // at theta = pi/2 only the isotropic term survives
        let g = density_groundstate_coherent(2.0, PI / 2.0);
        assert!((g - (-4.0f64).exp()).abs() < 1e-12);
        // against the truncated matrix density at D = 80
        let psi = coherent_state(2.0, 80).unwrap();
        let d = phase_density(&PhaseFamily::GroundState, &psi, 256).unwrap();
        let mut worst = 0.0f64;
        for j in 0..256 {
            let want = density_groundstate_coherent(2.0, d.theta(j));
            worst = worst.max((d.density[j] - want).abs());
        }
        assert!(worst <= 1e-6, "matrix vs closed form deviates by {worst}");
        // the forward peak; value pinned by the matrix oracle above
        let peak = density_groundstate_coherent(2.0, 0.0);
        assert!((peak - 7.091549).abs() < 1e-5, "peak {peak}");
    }

    #[test]
    fn fourier_coefficients_of_geometric_states() {
        let c2 = fourier_coeff(&PhaseFamily::Canonical, 0.5, &PhaseSequence::zero(), 2, 24)
            .unwrap();
        assert!((c2 - c(0.25, 0.0)).norm() < 1e-10);
        let c0 = fourier_coeff(&PhaseFamily::GroundState, 0.5, &PhaseSequence::zero(), 0, 24)
            .unwrap();
        assert!((c0 - c(1.0, 0.0)).norm() < 1e-10);
        assert!(matches!(
            fourier_coeff(&PhaseFamily::Canonical, 0.999, &PhaseSequence::zero(), 1, 100),
            Err(CoreError::TailRequiresDim { .. })
        ));
        // ground-state first coefficient: strictly inside the disc,
        // growing with r
        let lo = fourier_coeff(&PhaseFamily::GroundState, 0.5, &PhaseSequence::zero(), 1, 24)
            .unwrap()
            .norm();
        let hi = fourier_coeff(&PhaseFamily::GroundState, 0.9, &PhaseSequence::zero(), 1, 140)
            .unwrap()
            .norm();
        assert!(lo < hi && hi < 1.0, "lo {lo}, hi {hi}");
    }

    #[test]
    fn density_matches_fourier_quadrature() {
        let r = 0.6;
        let dim = geometric_min_dim(r);
        let psi = geometric_state(r, &PhaseSequence::zero(), dim).unwrap();
        let d = phase_density(&PhaseFamily::GroundState, &psi, 2 * dim.next_power_of_two())
            .unwrap();
        // DFT of the samples reproduces the attached coefficients
        let m = d.grid();
        for k in [0usize, 1, 3, 7] {
            let mut acc = c(0.0, 0.0);
            for j in 0..m {
                acc += d.density[j] * C64::cis(-(k as f64) * d.theta(j));
            }
            acc /= m as f64;
            let want = fourier_coeff(&PhaseFamily::GroundState, r, &PhaseSequence::zero(), k, dim)
                .unwrap();
            assert!((acc - want).norm() < 1e-8, "k = {k}");
        }
    }

    #[test]
    fn arc_mass_agrees_with_probability() {
        let r = 0.5;
        let dim = geometric_min_dim(r);
        let psi = geometric_state(r, &PhaseSequence::zero(), dim).unwrap();
        let d = phase_density(&PhaseFamily::GroundState, &psi, 64).unwrap();
        for x in [
            half(),
            ArcSet::new([(0.3, 1.7), (4.0, 4.9)]),
            ArcSet::new([(5.9, 0.4)]),
        ] {
            let lhs = d.mass(&x);
            let rhs = phase_prob(&PhaseFamily::GroundState, &psi, &x).unwrap();
            assert!((lhs - rhs).abs() < 1e-8, "mass {lhs} vs prob {rhs}");
        }
    }

    #[test]
    fn minimum_variance_of_uniform_density() {
        let d = PhaseDistribution::from_samples(vec![1.0; 256]);
        let mv = min_variance(&d).unwrap();
        assert!((mv.var - VAR_UNIFORM).abs() < 1e-12, "var {}", mv.var);

        let bad = PhaseDistribution::from_samples(vec![0.7; 256]);
        assert!(matches!(
            min_variance(&bad),
            Err(CoreError::NotNormalized { .. })
        ));
    }

    #[test]
    fn minimum_variance_of_peaked_density() {
        // reference value from direct quadrature of the Poisson
        // kernel on a 200001-point grid
        let r = 0.99;
        let dim = geometric_min_dim(r);
        let psi = geometric_state(r, &PhaseSequence::zero(), dim).unwrap();
        let d = phase_density(&PhaseFamily::Canonical, &psi, 4096).unwrap();
        let mv = min_variance(&d).unwrap();
        assert!((mv.var - 0.027764607788).abs() < 1e-9, "var {}", mv.var);
        // peak sits at angle zero
        assert!(mv.alpha_star < 0.05 || mv.alpha_star > TAU - 0.05);
        // sharper as r grows
        let loose = geometric_state(0.9, &PhaseSequence::zero(), geometric_min_dim(0.9)).unwrap();
        let dl = phase_density(&PhaseFamily::Canonical, &loose, 512).unwrap();
        let mvl = min_variance(&dl).unwrap();
        assert!((mvl.var - 0.281215).abs() < 1e-5, "var {}", mvl.var);
        assert!(mv.var < mvl.var);
    }

    #[test]
    fn minimum_variance_is_rotation_invariant() {
        let s = 0.5f64.sqrt();
        let psi = StateVector::from_coeffs(vec![c(s, 0.0), c(0.0, 0.0), c(s, 0.0)]);
        let d = phase_density(&PhaseFamily::Canonical, &psi, 128).unwrap();
        let base = min_variance(&d).unwrap();
        for phi in [0.7, 2.9, 4.4] {
            // rotate the distribution directly
            let rot = min_variance(&d.rotate(phi)).unwrap();
            assert!((rot.var - base.var).abs() < 1e-9, "phi {phi}");
            // and rotate the state instead
            let rotated_state = StateVector::from_coeffs(
                psi.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(n, z)| z * C64::cis(n as f64 * phi))
                    .collect(),
            );
            let d2 = phase_density(&PhaseFamily::Canonical, &rotated_state, 128).unwrap();
            let mv2 = min_variance(&d2).unwrap();
            assert!((mv2.var - base.var).abs() < 1e-9, "state rotation {phi}");
        }
    }

    #[test]
    fn variance_stays_in_range_and_alpha_tracks_peak() {
        let r = 0.7;
        let dim = geometric_min_dim(r);
        let phases = PhaseSequence::List {
            values: vec![0.0, 1.0, -0.4, 2.2],
        };
        let psi = geometric_state(r, &phases, dim).unwrap();
        let d = phase_density(&PhaseFamily::GroundState, &psi, 512).unwrap();
        let mv = min_variance(&d).unwrap();
        assert!(mv.var >= 0.0 && mv.var <= VAR_UNIFORM + 1e-9);
        assert!((0.0..TAU).contains(&mv.alpha_star));
        assert!((0.0..TAU).contains(&mv.beta_star));
    }
}
