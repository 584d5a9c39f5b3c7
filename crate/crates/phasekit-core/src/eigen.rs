//! Dense Hermitian eigendecomposition and the operator infimum against
//! a rank-one projection.
//!
//! The solver is the classical two-stage scheme: unitary Householder
//! reflections reduce the matrix to Hermitian tridiagonal form, a
//! diagonal phase similarity makes the subdiagonal real and nonnegative,
//! and an implicit-shift QL iteration finishes the job while the
//! rotations are accumulated into the (complex) eigenvector columns.
//! Matrices here are effect operators of side a few hundred at most,
//! so an O(n^3) dense method with no blocking is the right size.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::cmatrix::{ComplexMatrix, StateVector};
use crate::error::{CoreError, Result};
use crate::C64;

/// Absolute tolerance on `max |a[n][m] - conj(a[m][n])|` before a
/// matrix is rejected as non-Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Default relative cutoff separating numerical kernel from range when
/// an effect spectrum is consumed by an infimum computation.
pub const DEFAULT_RANGE_TOL: f64 = 1e-10;

/// Slack allowed on effect spectra around the unit interval.
pub const EFFECT_RANGE_SLACK: f64 = 1e-10;

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Unitary matrix whose column `j` is the eigenvector of
    /// `values[j]`.
    pub vectors: ComplexMatrix,
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// The input is checked against [`HERMITIAN_TOL`] and symmetrized
/// before reduction, so the decomposition always refers to the
/// Hermitian part `(A + A*) / 2`.
pub fn eigh(a: &ComplexMatrix) -> Result<HermitianEigen> {
    let n = a.dim();
    let asym = a.hermitian_asymmetry();
    if asym > HERMITIAN_TOL {
        return Err(CoreError::NotHermitian {
            max_asymmetry: asym,
        });
    }
    if n == 0 {
        return Ok(HermitianEigen {
            values: Vec::new(),
            vectors: ComplexMatrix::zeros(0),
        });
    }
    let mut w = ComplexMatrix::from_fn(n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * 0.5);
    let mut q = ComplexMatrix::identity(n);
    tridiagonalize(&mut w, &mut q);
    let (mut d, mut e) = realize_tridiagonal(&w, &mut q);
    ql_implicit(&mut d, &mut e, &mut q)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, j| q[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

/// Operator norm (largest eigenvalue modulus) of a Hermitian matrix.
pub fn opnorm(a: &ComplexMatrix) -> Result<f64> {
    let eig = eigh(a)?;
    match (eig.values.first(), eig.values.last()) {
        (Some(lo), Some(hi)) => Ok(lo.abs().max(hi.abs())),
        _ => Ok(0.0),
    }
}

/// Largest `t` such that `t |phi><phi| <= A`, for an effect `A`.
///
/// The infimum of the pair is `t |phi><phi|`; `t` is positive exactly
/// when `phi` lies in the range of `sqrt(A)`, and then equals the
/// reciprocal of `|A^{-1/2} phi|^2`. Numerically the spectrum is split
/// at `range_tol * max_eigenvalue`: eigenvalue mass of `phi` below the
/// cutoff counts as kernel mass, and any kernel mass at least
/// `range_tol` forces the answer to zero.
pub fn rank_one_wedge(a: &ComplexMatrix, phi: &StateVector, range_tol: f64) -> Result<f64> {
    if phi.dim() != a.dim() {
        return Err(CoreError::DimensionMismatch {
            expected: a.dim(),
            got: phi.dim(),
        });
    }
    let norm = phi.norm();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(CoreError::NotUnit { norm });
    }
    let eig = eigh(a)?;
    let values = validated_effect_spectrum(&eig.values)?;
    Ok(wedge_from_eigen(&values, &eig.vectors, phi, range_tol))
}

/// Clamp an already-validated effect spectrum onto `[0, 1]`.
///
/// Rejects the spectrum if it leaves the unit interval by more than
/// [`EFFECT_RANGE_SLACK`].
pub(crate) fn validated_effect_spectrum(values: &[f64]) -> Result<Vec<f64>> {
    if let (Some(&lo), Some(&hi)) = (values.first(), values.last()) {
        if lo < -EFFECT_RANGE_SLACK || hi > 1.0 + EFFECT_RANGE_SLACK {
            return Err(CoreError::EffectRange {
                min_eig: lo,
                max_eig: hi,
            });
        }
    }
    Ok(values.iter().map(|v| v.clamp(0.0, 1.0)).collect())
}

/// Infimum coefficient from a precomputed effect eigendecomposition.
pub(crate) fn wedge_from_eigen(
    values: &[f64],
    vectors: &ComplexMatrix,
    phi: &StateVector,
    range_tol: f64,
) -> f64 {
    let a_max = values.last().copied().unwrap_or(0.0);
    if a_max <= 0.0 {
        return 0.0;
    }
    let cutoff = range_tol * a_max;
    let mut kernel_mass = 0.0;
    let mut inv_mass = 0.0;
    for (j, &aj) in values.iter().enumerate() {
        let overlap = vectors.column(j).inner(phi).norm_sqr();
        if aj <= cutoff {
            kernel_mass += overlap;
        } else {
            inv_mass += overlap / aj;
        }
    }
    if kernel_mass >= range_tol || inv_mass == 0.0 {
        return 0.0;
    }
    1.0 / inv_mass
}

/// Householder reduction of a Hermitian matrix to tridiagonal form,
/// accumulating the reflections into `q`.
fn tridiagonalize(w: &mut ComplexMatrix, q: &mut ComplexMatrix) {
    let n = w.dim();
    if n < 3 {
        return;
    }
    let zero = C64::new(0.0, 0.0);
    let mut v = vec![zero; n];
    let mut p = vec![zero; n];
    let mut u = vec![zero; n];
    for k in 0..(n - 2) {
        let mut tail2 = 0.0;
        for i in (k + 2)..n {
            tail2 += w[(i, k)].norm_sqr();
        }
        if tail2 == 0.0 {
            // Column already tridiagonal; nothing to reflect.
            continue;
        }
        let x0 = w[(k + 1, k)];
        let x0n = x0.norm();
        let sigma = (x0.norm_sqr() + tail2).sqrt();
        let phase = if x0n > 0.0 {
            x0 / x0n
        } else {
            C64::new(1.0, 0.0)
        };
        // Reflector v = (x + phase * sigma * e1) / |..|; the norm has
        // the cancellation-free closed form 2 sigma (sigma + |x0|).
        let unorm = (2.0 * sigma * (sigma + x0n)).sqrt();
        for item in v.iter_mut().take(k + 1) {
            *item = zero;
        }
        v[k + 1] = (x0 + phase * sigma) / unorm;
        for i in (k + 2)..n {
            v[i] = w[(i, k)] / unorm;
        }
        // p = W v; rows strictly above k are already reduced, so their
        // entries in columns > k vanish and contribute nothing.
        for i in k..n {
            let mut acc = zero;
            for j in (k + 1)..n {
                acc += w[(i, j)] * v[j];
            }
            p[i] = acc;
        }
        let mut beta = 0.0;
        for i in (k + 1)..n {
            beta += (v[i].conj() * p[i]).re;
        }
        for i in k..n {
            u[i] = p[i] - beta * v[i];
        }
        // W <- W - 2 v u* - 2 u v* (the Hermitian rank-two form of
        // H W H with H = I - 2 v v*).
        for i in k..n {
            let vi = v[i];
            let ui = u[i];
            for j in k..n {
                let delta = vi * u[j].conj() + ui * v[j].conj();
                w[(i, j)] -= 2.0 * delta;
            }
        }
        // Q <- Q H.
        for r in 0..n {
            let mut tau = zero;
            for j in (k + 1)..n {
                tau += q[(r, j)] * v[j];
            }
            if tau != zero {
                for j in (k + 1)..n {
                    q[(r, j)] -= 2.0 * tau * v[j].conj();
                }
            }
        }
    }
}

/// Absorb subdiagonal phases into the basis so the tridiagonal matrix
/// becomes real symmetric with nonnegative subdiagonal. Returns the
/// diagonal and subdiagonal (`e[i]` couples `i` and `i + 1`).
fn realize_tridiagonal(w: &ComplexMatrix, q: &mut ComplexMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = w.dim();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    for i in 0..n {
        d[i] = w[(i, i)].re;
    }
    let mut s = C64::new(1.0, 0.0);
    for i in 0..n.saturating_sub(1) {
        let b = w[(i + 1, i)];
        let m = b.norm();
        e[i] = m;
        if m > 0.0 {
            s *= b / m;
        }
        if s != C64::new(1.0, 0.0) {
            for r in 0..n {
                q[(r, i + 1)] *= s;
            }
        }
    }
    (d, e)
}

/// Implicit-shift QL iteration on a real symmetric tridiagonal matrix,
/// rotations accumulated into the complex columns of `q`.
fn ql_implicit(d: &mut [f64], e: &mut [f64], q: &mut ComplexMatrix) -> Result<()> {
    let n = d.len();
    if n < 2 {
        return Ok(());
    }
    // Absolute deflation floor. Rank-deficient inputs leave a graded
    // chain of subdiagonal dust (each level orders of magnitude below
    // the last) on which the relative test alone never splits, and the
    // sweep then deflates one element per iteration. Splitting at
    // eps * |T| is a backward-stable perturbation and breaks the chain.
    let mut anorm = 0.0f64;
    for i in 0..n {
        let mut row = d[i].abs();
        if i > 0 {
            row += e[i - 1].abs();
        }
        if i + 1 < n {
            row += e[i].abs();
        }
        anorm = anorm.max(row);
    }
    let floor = f64::EPSILON * anorm;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(CoreError::NoConvergence { iterations: 50 });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..n {
                    let fk = q[(k, i + 1)];
                    q[(k, i + 1)] = s * q[(k, i)] + c * fk;
                    q[(k, i)] = c * q[(k, i)] - s * fk;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
