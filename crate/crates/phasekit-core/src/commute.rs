//! Commutation structure of a phase observable: the exact set of
//! number states on which the observable commutes with the number
//! operator, a numerical estimate of the common commutation domain of
//! the effects themselves, and joint probabilities on the commutative
//! part.

use alloc::vec::Vec;
use core::f64::consts::TAU;

#[allow(unused_imports)]
use num_traits::Float;

use crate::arcs::ArcSet;
use crate::cmatrix::{ComplexMatrix, StateVector};
use crate::effects::build_effect;
use crate::eigen::{eigh, opnorm};
use crate::error::{CoreError, Result};
use crate::family::PhaseFamily;
use crate::C64;

/// Indices whose number projections commute with every effect of the
/// family at truncation `dim`: those `n` with `c[n][m] = 0` for every
/// `m != n` below `dim`.
pub fn com_ne_set(family: &PhaseFamily, dim: usize, tol: f64) -> Vec<usize> {
    (0..dim)
        .filter(|&n| (0..dim).all(|m| m == n || family.entry(n, m).norm() <= tol))
        .collect()
}

/// Numerical estimate of the common commutation domain of the effects.
#[derive(Clone, Debug)]
pub struct ComReport {
    /// Indices commuting with the number operator (the exact part).
    pub a_set: Vec<usize>,
    /// Size of `a_set`.
    pub pa_dim: usize,
    /// Dimension of the joint numerical null space of the commutators.
    pub com_estimate_dim: usize,
    /// Unit vector inside the null space with (numerically) no mass on
    /// `a_set`; present exactly when the estimate exceeds the span of
    /// the number indices.
    pub witness: Option<StateVector>,
    /// Singular values within a decade above the rank threshold; a
    /// nonzero count flags a borderline rank decision.
    pub borderline: usize,
    /// Ascending singular values of the stacked commutators.
    pub singular_values: Vec<f64>,
}

/// Operator norm of the commutator `[E(X), E(Y)]` at truncation `dim`.
pub fn pairwise_commutator_norm(
    family: &PhaseFamily,
    x: &ArcSet,
    y: &ArcSet,
    dim: usize,
) -> Result<f64> {
    let ex = build_effect(family, x, dim)?;
    let ey = build_effect(family, y, dim)?;
    let c = commutator(&ex.matrix, &ey.matrix)?;
    // the commutator of Hermitian operators is anti-Hermitian; rotate
    // it into a Hermitian one with the same singular values
    opnorm(&c.scale(C64::new(0.0, 1.0)))
}

fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Estimate the common commutation domain from a battery of arc-set
/// pairs.
///
/// Commutators are formed at dimension `d_big` and their leading
/// `d_eval` blocks stacked; the estimate is the joint null space at
/// relative singular-value tolerance `tol`. The guard
/// `d_big >= 2 d_eval + 8` keeps truncation leakage out of the
/// evaluated block.
pub fn com_e_estimate(
    family: &PhaseFamily,
    d_big: usize,
    d_eval: usize,
    pairs: &[(ArcSet, ArcSet)],
    tol: f64,
) -> Result<ComReport> {
    if d_big < 2 * d_eval + 8 {
        return Err(CoreError::TruncationGuard { d_big, d_eval });
    }
    if pairs.len() < 8 {
        return Err(CoreError::TooFewTestSets { got: pairs.len() });
    }
    let a_set = com_ne_set(family, d_eval, tol);
    let pa_dim = a_set.len();

    // normal matrix of the stacked commutator blocks
    let mut stacked = ComplexMatrix::zeros(d_eval);
    for (x, y) in pairs {
        let ex = build_effect(family, x, d_big)?;
        let ey = build_effect(family, y, d_big)?;
        let block = commutator(&ex.matrix, &ey.matrix)?.leading_block(d_eval)?;
        stacked = stacked.add(&block.adjoint().mul(&block)?)?;
    }
    let eig = eigh(&stacked)?;
    let singular_values: Vec<f64> = eig.values.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let s_max = singular_values.last().copied().unwrap_or(0.0);
    let thresh = tol * s_max;
    let null_idx: Vec<usize> = (0..d_eval)
        .filter(|&j| singular_values[j] <= thresh)
        .collect();
    let com_estimate_dim = null_idx.len();
    let borderline = singular_values
        .iter()
        .filter(|&&s| s > thresh && s <= 10.0 * thresh)
        .count();

    // when the null space outgrows the exact part it contains a unit
    // vector supported off the A-set; recover it as the top direction
    // of the off-A Gram matrix of the null basis
    let witness = if com_estimate_dim > pa_dim && com_estimate_dim > 0 {
        let mut in_a = alloc::vec![false; d_eval];
        for &n in &a_set {
            in_a[n] = true;
        }
        let basis: Vec<StateVector> = null_idx.iter().map(|&j| eig.vectors.column(j)).collect();
        let nv = com_estimate_dim;
        let gram = ComplexMatrix::from_fn(nv, |p, q| {
            (0..d_eval)
                .filter(|&n| !in_a[n])
                .map(|n| basis[p].coeffs()[n].conj() * basis[q].coeffs()[n])
                .sum()
        });
        let geig = eigh(&gram)?;
        let alpha = geig.vectors.column(nv - 1);
        let mut w = alloc::vec![C64::new(0.0, 0.0); d_eval];
        for (q, &aq) in alpha.coeffs().iter().enumerate() {
            for (wn, &bn) in w.iter_mut().zip(basis[q].coeffs()) {
                *wn += aq * bn;
            }
        }
        Some(StateVector::from_coeffs(w).normalized()?)
    } else {
        None
    };

    Ok(ComReport {
        a_set,
        pa_dim,
        com_estimate_dim,
        witness,
        borderline,
        singular_values,
    })
}

/// Joint number-and-phase probability in product form, defined on
/// states supported in the commuting index set:
/// `|phi_n|^2 * measure(X) / 2 pi`.
pub fn joint_prob(
    family: &PhaseFamily,
    phi: &StateVector,
    n: usize,
    x: &ArcSet,
    tol: f64,
) -> Result<f64> {
    let dim = phi.dim();
    if n >= dim {
        return Err(CoreError::IndexOutOfRange { index: n, dim });
    }
    let norm = phi.norm();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(CoreError::NotUnit { norm });
    }
    let a = com_ne_set(family, dim, tol);
    let mut in_a = alloc::vec![false; dim];
    for &idx in &a {
        in_a[idx] = true;
    }
    for (m, z) in phi.coeffs().iter().enumerate() {
        let mass = z.norm_sqr();
        if mass > tol && !in_a[m] {
            return Err(CoreError::OutsideCommutant { index: m, mass });
        }
    }
    Ok(phi.coeffs()[n].norm_sqr() * x.measure() / TAU)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::PhaseSequence;
    use core::f64::consts::PI;

    fn battery() -> Vec<(ArcSet, ArcSet)> {
        let prefix: Vec<ArcSet> = (1..=7)
            .map(|j| ArcSet::new([(0.0, TAU * j as f64 / 8.0)]))
            .collect();
        let mut pairs: Vec<(ArcSet, ArcSet)> = (0..7)
            .map(|j| (prefix[j].clone(), prefix[(j + 1) % 7].clone()))
            .collect();
        pairs.push((ArcSet::new([(0.3, 1.1), (2.0, 2.9)]), ArcSet::new([(1.0, 4.2)])));
        pairs.push((ArcSet::new([(5.0, 0.7)]), ArcSet::new([(0.2, 3.3)])));
        pairs
    }

    #[test]
    fn commuting_index_sets_of_builtins() {
        assert_eq!(com_ne_set(&PhaseFamily::Trivial, 16, 1e-12), (0..16).collect::<Vec<_>>());
        assert!(com_ne_set(&PhaseFamily::Canonical, 16, 1e-12).is_empty());
        assert!(com_ne_set(&PhaseFamily::GroundState, 16, 1e-12).is_empty());
        let elem = PhaseFamily::elementary(0, 2, C64::new(0.4, 0.1)).unwrap();
        let mut want: Vec<usize> = alloc::vec![1];
        want.extend(3..16);
        assert_eq!(com_ne_set(&elem, 16, 1e-12), want);
    }

    #[test]
    fn trivial_commutators_vanish_identically() {
        let x = ArcSet::new([(0.2, 2.0)]);
        let y = ArcSet::new([(1.0, 5.5)]);
        let norm = pairwise_commutator_norm(&PhaseFamily::Trivial, &x, &y, 24).unwrap();
        assert_eq!(norm, 0.0);
        // everything commutes with the identity effect
        let full = ArcSet::full_circle();
        for fam in [PhaseFamily::Canonical, PhaseFamily::GroundState] {
            let n = pairwise_commutator_norm(&fam, &x, &full, 24).unwrap();
            assert!(n <= 1e-12, "norm {n}");
        }
    }

    #[test]
    fn canonical_half_and_quarter_circle_do_not_commute() {
        let x = ArcSet::new([(0.0, PI)]);
        let y = ArcSet::new([(0.0, PI / 2.0)]);
        let norm = pairwise_commutator_norm(&PhaseFamily::Canonical, &x, &y, 64).unwrap();
        assert!(norm > 1e-3, "norm {norm}");
        assert!(norm < 0.5, "norm {norm}");
    }

    #[test]
    fn estimate_guards() {
        assert!(matches!(
            com_e_estimate(&PhaseFamily::Canonical, 30, 16, &battery(), 1e-8),
            Err(CoreError::TruncationGuard { d_big: 30, d_eval: 16 })
        ));
        assert!(matches!(
            com_e_estimate(&PhaseFamily::Canonical, 48, 16, &battery()[..5], 1e-8),
            Err(CoreError::TooFewTestSets { got: 5 })
        ));
    }

    #[test]
    fn estimates_match_exact_commutant_for_strong_families() {
        let rep = com_e_estimate(&PhaseFamily::Trivial, 48, 16, &battery(), 1e-8).unwrap();
        assert_eq!(rep.pa_dim, 16);
        assert_eq!(rep.com_estimate_dim, 16);
        assert!(rep.witness.is_none());

        for fam in [PhaseFamily::Canonical, PhaseFamily::GroundState] {
            let rep = com_e_estimate(&fam, 48, 16, &battery(), 1e-8).unwrap();
            assert_eq!(rep.pa_dim, 0, "{fam:?}");
            assert_eq!(rep.com_estimate_dim, 0, "{fam:?}");
            assert!(rep.witness.is_none());
            assert!(rep.pa_dim <= rep.com_estimate_dim);
        }
    }

    #[test]
    fn two_step_boundary_estimate_exceeds_exact_part() {
        let w = 1.0 / 2.0f64.sqrt();
        let fam = PhaseFamily::two_step(C64::new(w, 0.0)).unwrap();
        let rep = com_e_estimate(&fam, 48, 16, &battery(), 1e-8).unwrap();
        // indices 0, 1, 2 couple; the rest commute with number
        assert_eq!(rep.pa_dim, 13);
        assert_eq!(rep.com_estimate_dim, 14);
        let witness = rep.witness.expect("estimate exceeds the exact part");
        // the extra direction is the middle level of the coupled block
        let overlap = witness.coeffs()[1].norm();
        assert!(overlap > 0.999, "overlap {overlap}");
        assert!((witness.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn joint_probability_product_form() {
        let e5 = StateVector::basis(16, 5).unwrap();
        let half = ArcSet::new([(0.0, PI)]);
        let p = joint_prob(&PhaseFamily::Trivial, &e5, 5, &half, 1e-10).unwrap();
        assert!((p - 0.5).abs() < 1e-15);
        let quarter = ArcSet::new([(0.0, PI / 2.0)]);
        let elem = PhaseFamily::elementary(0, 2, C64::new(0.7, 0.0)).unwrap();
        let e1 = StateVector::basis(16, 1).unwrap();
        let p = joint_prob(&elem, &e1, 1, &quarter, 1e-10).unwrap();
        assert!((p - 0.25).abs() < 1e-15);
        // off the coupled pair the probability vanishes
        let p = joint_prob(&elem, &e1, 4, &quarter, 1e-10).unwrap();
        assert_eq!(p, 0.0);

        assert!(matches!(
            joint_prob(&PhaseFamily::Canonical, &e5, 5, &half, 1e-10),
            Err(CoreError::OutsideCommutant { index: 5, .. })
        ));
        assert!(matches!(
            joint_prob(&PhaseFamily::Trivial, &e5, 16, &half, 1e-10),
            Err(CoreError::IndexOutOfRange { index: 16, dim: 16 })
        ));
    }

    #[test]
    fn joint_probabilities_sum_to_phase_probability() {
        let s = 0.5f64.sqrt();
        let phi = StateVector::from_coeffs(alloc::vec![
            C64::new(0.0, 0.0),
            C64::new(s, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, s),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ]);
        let elem = PhaseFamily::elementary(0, 2, C64::new(0.5, 0.2)).unwrap();
        let x = ArcSet::new([(0.4, 2.6)]);
        let total: f64 = (0..6)
            .map(|n| joint_prob(&elem, &phi, n, &x, 1e-10).unwrap())
            .sum();
        let prob = crate::stats::phase_prob(&elem, &phi, &x).unwrap();
        assert!((total - prob).abs() < 1e-12, "{total} vs {prob}");
    }

    #[test]
    fn phase_sequences_do_not_change_commutation_sets() {
        let seq = PhaseSequence::Linear { slope: 0.8 };
        let conj = PhaseFamily::conjugated(seq, PhaseFamily::Trivial);
        assert_eq!(com_ne_set(&conj, 12, 1e-12).len(), 12);
    }
}
