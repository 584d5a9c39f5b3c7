//! Structural properties of the built-in phase-matrix families:
//! positive semidefiniteness of leading blocks, the chain identity of
//! strong families, mixture linearity and conjugation invariants.

use num_complex::Complex64 as C64;
use phasekit_core::family::{PhaseFamily, PhaseSequence, TailRule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn family_pool() -> Vec<PhaseFamily> {
    vec![
        PhaseFamily::Canonical,
        PhaseFamily::Trivial,
        PhaseFamily::GroundState,
        PhaseFamily::elementary(1, 4, C64::new(0.6, 0.3)).unwrap(),
        PhaseFamily::mixture(0.3, PhaseFamily::Canonical).unwrap(),
        PhaseFamily::mixture(0.85, PhaseFamily::GroundState).unwrap(),
        PhaseFamily::two_step(C64::new(0.5, -0.2)).unwrap(),
        PhaseFamily::conjugated(
            PhaseSequence::Linear { slope: 0.7 },
            PhaseFamily::GroundState,
        ),
        PhaseFamily::from_vectors(
            vec![
                vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                vec![C64::new(0.6, 0.0), C64::new(0.8, 0.0)],
                vec![C64::new(0.0, 0.6), C64::new(0.8, 0.0)],
            ],
            TailRule::RepeatLast,
        )
        .unwrap(),
        PhaseFamily::from_vectors(
            vec![
                vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                vec![C64::new(0.6, 0.0), C64::new(0.8, 0.0)],
            ],
            TailRule::ExtendCanonical,
        )
        .unwrap(),
        PhaseFamily::from_vectors(
            vec![
                vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                vec![C64::new(0.48, 0.36), C64::new(0.0, 0.8)],
            ],
            TailRule::ExtendOrthogonal,
        )
        .unwrap(),
    ]
}

#[test]
fn every_builtin_family_has_admissible_phase_matrices() {
    for family in family_pool() {
        for &dim in &[4usize, 16, 64] {
            let violation = family.validate_gram(dim);
            assert!(
                violation <= 1e-10,
                "{family:?} at dim {dim}: violation {violation:.3e}"
            );
        }
        family.validate().unwrap();
        // unit diagonal and Hermitian symmetry, spot-checked entrywise
        for n in 0..12 {
            assert!((family.entry(n, n) - C64::new(1.0, 0.0)).norm() <= 1e-14);
            for m in 0..12 {
                let asym = (family.entry(n, m) - family.entry(m, n).conj()).norm();
                assert!(asym <= 1e-14, "{family:?} at ({n},{m})");
            }
        }
    }
}

#[test]
fn strong_families_satisfy_the_chain_identity() {
    let strong = [
        PhaseFamily::Canonical,
        PhaseFamily::Trivial,
        PhaseFamily::conjugated(PhaseSequence::Linear { slope: -1.3 }, PhaseFamily::Canonical),
    ];
    for family in strong {
        let flags = family.structure_flags(24, 1e-12);
        assert!(flags.is_strong, "{family:?}");
        for n in 0..20 {
            for k in 2..4 {
                let mut chain = C64::new(1.0, 0.0);
                for j in 0..k {
                    chain *= family.entry(n + j, n + j + 1);
                }
                let direct = family.entry(n, n + k);
                assert!((chain - direct).norm() <= 1e-12);
            }
        }
    }
    // the phase-space family fails the identity already at (0, 2)
    let flags = PhaseFamily::GroundState.structure_flags(24, 1e-12);
    assert!(!flags.is_strong);
}

#[test]
fn cyclic_moments_of_strong_families_are_powers_of_the_first() {
    let dim = 10;
    for family in [
        PhaseFamily::Canonical,
        PhaseFamily::Trivial,
        PhaseFamily::conjugated(PhaseSequence::Linear { slope: 0.9 }, PhaseFamily::Canonical),
    ] {
        let v1 = family.cyclic_moment(1, dim).unwrap();
        let mut power = v1.clone();
        for k in 2..dim {
            power = power.mul(&v1).unwrap();
            let vk = family.cyclic_moment(k, dim).unwrap();
            // powers of the truncated shift agree with the truncated
            // moment wherever the product has support
            let diff = power.sub(&vk).unwrap().max_abs();
            assert!(diff <= 1e-12, "{family:?} at k = {k}: {diff:.3e}");
        }
    }
}

#[test]
fn mixtures_scale_off_diagonal_entries_linearly() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let eps = rng.gen::<f64>();
        let inner = PhaseFamily::GroundState;
        let mixed = PhaseFamily::mixture(eps, inner.clone()).unwrap();
        for n in 0..10 {
            for m in 0..10 {
                let want = if n == m {
                    C64::new(1.0, 0.0)
                } else {
                    (1.0 - eps) * inner.entry(n, m)
                };
                assert!((mixed.entry(n, m) - want).norm() <= 1e-15);
            }
        }
    }
    assert!(PhaseFamily::mixture(1.2, PhaseFamily::Canonical).is_err());
    assert!(PhaseFamily::mixture(-0.1, PhaseFamily::Canonical).is_err());
}

#[test]
fn conjugation_preserves_moduli_and_admissibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let slope = 4.0 * rng.gen::<f64>() - 2.0;
        let inner = PhaseFamily::GroundState;
        let conj = PhaseFamily::conjugated(PhaseSequence::Linear { slope }, inner.clone());
        for n in 0..12 {
            for m in 0..12 {
                let a = conj.entry(n, m).norm();
                let b = inner.entry(n, m).norm();
                assert!((a - b).abs() <= 1e-15);
            }
        }
        assert!(conj.validate_gram(24) <= 1e-10);
    }
}

#[test]
fn modulus_one_families_carry_the_extremality_certificate() {
    let canonical = PhaseFamily::Canonical.structure_flags(16, 1e-12);
    assert!(canonical.is_modulus_one && canonical.is_extremal_certified);
    let rotated = PhaseFamily::conjugated(
        PhaseSequence::Linear { slope: 2.4 },
        PhaseFamily::Canonical,
    )
    .structure_flags(16, 1e-12);
    assert!(rotated.is_modulus_one && rotated.is_extremal_certified);
    let ground = PhaseFamily::GroundState.structure_flags(16, 1e-12);
    assert!(!ground.is_modulus_one && !ground.is_extremal_certified);
    let mixed = PhaseFamily::mixture(0.4, PhaseFamily::Canonical)
        .unwrap()
        .structure_flags(16, 1e-12);
    assert!(!mixed.is_modulus_one);
}
