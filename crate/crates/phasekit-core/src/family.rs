//! Phase-matrix families.
//!
//! A phase-shift covariant observable is fixed by a matrix `c[n][m]`
//! with unit diagonal, Hermitian symmetry and positive semidefinite
//! leading blocks; equivalently `c[n][m] = <xi_n, xi_m>` for a sequence
//! of unit vectors. This module holds the built-in families, entry
//! evaluation, Gram validation, the strongness / modulus-one structure
//! flags and the cyclic moment matrices.

use alloc::boxed::Box;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::cmatrix::ComplexMatrix;
use crate::eigen::eigh;
use crate::error::{CoreError, Result};
use crate::special::{ln_factorial, ln_gamma};
use crate::C64;

/// Continuation rule for generating vectors past the explicit list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TailRule {
    /// Keep using the last explicit vector.
    RepeatLast,
    /// Continue with a fixed unit vector (the first coordinate axis of
    /// the ambient space), so the tail block is all ones.
    ExtendCanonical,
    /// Continue with pairwise orthogonal directions, also orthogonal to
    /// everything explicit: the tail block is the identity and all
    /// cross entries vanish.
    ExtendOrthogonal,
}

/// Real sequence `n -> theta_n` used for conjugation phases and state
/// phase profiles.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "variant", rename_all = "snake_case"))]
pub enum PhaseSequence {
    /// `theta_n = slope * n`.
    Linear { slope: f64 },
    /// Explicit values, repeating the last one past the end.
    List { values: Vec<f64> },
}

impl PhaseSequence {
    /// The zero sequence.
    pub fn zero() -> Self {
        PhaseSequence::Linear { slope: 0.0 }
    }

    pub fn value(&self, n: usize) -> f64 {
        match self {
            PhaseSequence::Linear { slope } => slope * n as f64,
            PhaseSequence::List { values } => match values.len() {
                0 => 0.0,
                len => values[n.min(len - 1)],
            },
        }
    }
}

/// A family of phase matrices, one for every truncation dimension.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "variant", rename_all = "snake_case"))]
pub enum PhaseFamily {
    /// All entries one: the canonical phase observable.
    Canonical,
    /// Identity matrix: the trivial (commutative) observable.
    Trivial,
    /// Identity plus a single off-diagonal pair `c[s][t] = w`.
    Elementary { s: usize, t: usize, w: C64 },
    /// `c[n][m] = Gamma((n+m)/2 + 1) / sqrt(n! m!)`, the phase matrix
    /// of the phase-space observable generated by the oscillator
    /// ground state.
    GroundState,
    /// Explicit generating vectors with a tail rule.
    FromVectors {
        vectors: Vec<Vec<C64>>,
        tail: TailRule,
    },
    /// Convex mixture with the trivial observable:
    /// diagonal stays one, off-diagonal scales by `1 - epsilon`.
    Mixture { epsilon: f64, inner: Box<PhaseFamily> },
    /// Entrywise conjugation `c[n][m] -> e^{i(theta_n - theta_m)} c[n][m]`,
    /// a unitary rotation of the generating vectors.
    Conjugated {
        phases: PhaseSequence,
        inner: Box<PhaseFamily>,
    },
}

/// Structure classification of a family at a fixed dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    /// Whether every higher moment is the matching power of the first:
    /// `c[n][n+k] = prod_j c[n+j][n+j+1]` within tolerance.
    pub is_strong: bool,
    /// Whether every off-diagonal entry has unit modulus within
    /// tolerance (then the observable is unitarily equivalent to the
    /// canonical one).
    pub is_modulus_one: bool,
    /// Extremality certificate: set only via the modulus-one
    /// sufficient condition.
    pub is_extremal_certified: bool,
    /// Dimension the flags were evaluated at.
    pub dim: usize,
    /// Largest deviation from the moment chain identity.
    pub max_chain_violation: f64,
    /// Largest deviation of an off-diagonal modulus from one.
    pub max_modulus_deviation: f64,
}

impl PhaseFamily {
    /// Elementary family with `c[s][t] = w`; needs `s != t`, `|w| <= 1`.
    pub fn elementary(s: usize, t: usize, w: C64) -> Result<Self> {
        if s == t {
            return Err(CoreError::IndicesEqual { index: s });
        }
        let modulus = w.norm();
        if modulus > 1.0 {
            return Err(CoreError::WeightTooLarge { modulus });
        }
        Ok(PhaseFamily::Elementary { s, t, w })
    }

    /// Convex mixture with the trivial observable; needs `epsilon` in
    /// `[0, 1]`.
    pub fn mixture(epsilon: f64, inner: PhaseFamily) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(CoreError::EpsilonOutOfRange { epsilon});
        }
        Ok(PhaseFamily::Mixture {
            epsilon,
            inner: Box::new(inner),
        })
    }

    /// Family from explicit generating vectors.
    pub fn from_vectors(vectors: Vec<Vec<C64>>, tail: TailRule) -> Result<Self> {
        if vectors.is_empty() || vectors.iter().any(|v| v.len() != vectors[0].len()) {
            return Err(CoreError::BadGeneratingVectors);
        }
        if vectors[0].is_empty() {
            return Err(CoreError::BadGeneratingVectors);
        }
        Ok(PhaseFamily::FromVectors { vectors, tail })
    }

    /// Entrywise phase conjugation of another family.
    pub fn conjugated(phases: PhaseSequence, inner: PhaseFamily) -> Self {
        PhaseFamily::Conjugated {
            phases,
            inner: Box::new(inner),
        }
    }

    /// The family with `c[0][1] = c[1][2] = w` and every other
    /// off-diagonal entry zero, realized by three explicit generating
    /// vectors and an orthogonal tail. Needs `0 < |w| <= 1/sqrt(2)`
    /// for positive semidefiniteness.
    pub fn two_step(w: C64) -> Result<Self> {
        let m = w.norm();
        if m == 0.0 || m > core::f64::consts::FRAC_1_SQRT_2 + 1e-12 {
            return Err(CoreError::WeightOutsideTwoStepDisc { modulus: m });
        }
        let zero = C64::new(0.0, 0.0);
        let s = (1.0 - m * m).sqrt();
        let c2 = ((1.0 - 2.0 * m * m) / (1.0 - m * m)).max(0.0);
        let c = c2.sqrt();
        let vectors = alloc::vec![
            alloc::vec![w.conj(), C64::new(s, 0.0), zero],
            alloc::vec![C64::new(1.0, 0.0), zero, zero],
            alloc::vec![w, -w * w / s, C64::new(c, 0.0)],
        ];
        Self::from_vectors(vectors, TailRule::ExtendOrthogonal)
    }

    /// Re-run the constructor checks (useful after deserialization).
    pub fn validate(&self) -> Result<()> {
        match self {
            PhaseFamily::Canonical | PhaseFamily::Trivial | PhaseFamily::GroundState => Ok(()),
            PhaseFamily::Elementary { s, t, w } => {
                if s == t {
                    return Err(CoreError::IndicesEqual { index: *s });
                }
                let modulus = w.norm();
                if modulus > 1.0 {
                    return Err(CoreError::WeightTooLarge { modulus });
                }
                Ok(())
            }
            PhaseFamily::FromVectors { vectors, tail: _ } => {
                if vectors.is_empty()
                    || vectors[0].is_empty()
                    || vectors.iter().any(|v| v.len() != vectors[0].len())
                {
                    return Err(CoreError::BadGeneratingVectors);
                }
                Ok(())
            }
            PhaseFamily::Mixture { epsilon, inner } => {
                if !(0.0..=1.0).contains(epsilon) {
                    return Err(CoreError::EpsilonOutOfRange { epsilon: *epsilon });
                }
                inner.validate()
            }
            PhaseFamily::Conjugated { phases: _, inner } => inner.validate(),
        }
    }

    /// Phase-matrix entry `c[n][m]`.
    pub fn entry(&self, n: usize, m: usize) -> C64 {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        if n == m {
            return match self {
                // Unit diagonal holds for every well-formed family, but
                // explicit vectors may be handed in non-normalized;
                // report their true diagonal so validation can see it.
                PhaseFamily::FromVectors { .. } => self.raw_entry(n, m),
                _ => one,
            };
        }
        match self {
            PhaseFamily::Canonical => one,
            PhaseFamily::Trivial => zero,
            PhaseFamily::Elementary { s, t, w } => {
                if (n, m) == (*s, *t) {
                    *w
                } else if (n, m) == (*t, *s) {
                    w.conj()
                } else {
                    zero
                }
            }
            PhaseFamily::GroundState => {
                let ln = ln_gamma((n + m) as f64 / 2.0 + 1.0)
                    - 0.5 * (ln_factorial(n) + ln_factorial(m));
                C64::new(ln.exp(), 0.0)
            }
            PhaseFamily::FromVectors { .. } => self.raw_entry(n, m),
            PhaseFamily::Mixture { epsilon, inner } => (1.0 - epsilon) * inner.entry(n, m),
            PhaseFamily::Conjugated { phases, inner } => {
                C64::cis(phases.value(n) - phases.value(m)) * inner.entry(n, m)
            }
        }
    }

    fn raw_entry(&self, n: usize, m: usize) -> C64 {
        let PhaseFamily::FromVectors { vectors, tail } = self else {
            unreachable!("raw_entry is only used for explicit vectors");
        };
        let k = vectors.len();
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let inner = |a: &[C64], b: &[C64]| -> C64 {
            a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
        };
        match tail {
            TailRule::RepeatLast => {
                let a = &vectors[n.min(k - 1)];
                let b = &vectors[m.min(k - 1)];
                inner(a, b)
            }
            TailRule::ExtendCanonical => match (n < k, m < k) {
                (true, true) => inner(&vectors[n], &vectors[m]),
                (true, false) => vectors[n][0].conj(),
                (false, true) => vectors[m][0],
                (false, false) => one,
            },
            TailRule::ExtendOrthogonal => match (n < k, m < k) {
                (true, true) => inner(&vectors[n], &vectors[m]),
                (true, false) | (false, true) => zero,
                (false, false) => {
                    if n == m {
                        one
                    } else {
                        zero
                    }
                }
            },
        }
    }

    /// Largest violation of the phase-matrix axioms on the leading
    /// `dim` block: deviation from unit diagonal, from Hermitian
    /// symmetry, and from positive semidefiniteness (the negative part
    /// of the smallest eigenvalue).
    pub fn validate_gram(&self, dim: usize) -> f64 {
        let mut violation = 0.0f64;
        for n in 0..dim {
            violation = violation.max((self.entry(n, n) - C64::new(1.0, 0.0)).norm());
            for m in (n + 1)..dim {
                violation = violation.max((self.entry(n, m) - self.entry(m, n).conj()).norm());
            }
        }
        let g = ComplexMatrix::from_fn(dim, |n, m| {
            (self.entry(n, m) + self.entry(m, n).conj()) * 0.5
        });
        match eigh(&g) {
            Ok(eig) => {
                if let Some(&lo) = eig.values.first() {
                    violation = violation.max(-lo.min(0.0));
                }
            }
            Err(_) => violation = f64::INFINITY,
        }
        violation
    }

    /// Strongness and modulus-one flags on the leading `dim` block.
    ///
    /// Strongness is the moment chain identity
    /// `c[n][n+k] = prod_{j<k} c[n+j][n+j+1]`; when every off-diagonal
    /// modulus is one the family is unitarily equivalent to the
    /// canonical one, which also certifies extremality.
    pub fn structure_flags(&self, dim: usize, tol: f64) -> StructureReport {
        let mut max_chain = 0.0f64;
        for n in 0..dim {
            let mut chain = C64::new(1.0, 0.0);
            for k in 1..(dim - n) {
                chain *= self.entry(n + k - 1, n + k);
                if k >= 2 {
                    let dev = (self.entry(n, n + k) - chain).norm();
                    max_chain = max_chain.max(dev);
                }
            }
        }
        let mut max_modulus = 0.0f64;
        for n in 0..dim {
            for m in (n + 1)..dim {
                max_modulus = max_modulus.max((self.entry(n, m).norm() - 1.0).abs());
            }
        }
        let is_modulus_one = max_modulus <= tol;
        StructureReport {
            is_strong: max_chain <= tol,
            is_modulus_one,
            is_extremal_certified: is_modulus_one,
            dim,
            max_chain_violation: max_chain,
            max_modulus_deviation: max_modulus,
        }
    }

    /// Cyclic moment matrix of order `k` on dimension `dim`:
    /// the matrix with `c[n][n+k]` on the `k`-th superdiagonal, the
    /// truncation of the operator sending `|n+k>` to `c[n][n+k] |n>`.
    pub fn cyclic_moment(&self, k: usize, dim: usize) -> Result<ComplexMatrix> {
        if k >= dim {
            return Err(CoreError::MomentOrder { order: k, dim });
        }
        let mut v = ComplexMatrix::zeros(dim);
        for n in 0..(dim - k) {
            v[(n, n + k)] = self.entry(n, n + k);
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn canonical_and_trivial_entries() {
        assert_eq!(PhaseFamily::Canonical.entry(3, 17), c(1.0, 0.0));
        assert_eq!(PhaseFamily::Trivial.entry(2, 2), c(1.0, 0.0));
        assert_eq!(PhaseFamily::Trivial.entry(2, 5), c(0.0, 0.0));
    }

    #[test]
    fn ground_state_reference_entries() {
        // c[0][1] = Gamma(3/2) = sqrt(pi)/2
        let g = PhaseFamily::GroundState;
        assert!((g.entry(0, 1).re - 0.886226925452758).abs() < 1e-12);
        // c[0][2] = Gamma(2)/sqrt(2) = 1/sqrt(2)
        assert!((g.entry(0, 2).re - core::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert_eq!(g.entry(4, 4), c(1.0, 0.0));
        // entries approach one along the first superdiagonal
        let lo = g.entry(1, 2).re;
        let hi = g.entry(40, 41).re;
        assert!(lo < hi && hi < 1.0);
    }

    #[test]
    fn elementary_constructor_guards() {
        assert!(matches!(
            PhaseFamily::elementary(3, 3, c(0.5, 0.0)),
            Err(CoreError::IndicesEqual { index: 3 })
        ));
        assert!(matches!(
            PhaseFamily::elementary(0, 1, c(1.2, 0.0)),
            Err(CoreError::WeightTooLarge { .. })
        ));
        let e = PhaseFamily::elementary(0, 2, c(0.0, 0.8)).unwrap();
        assert_eq!(e.entry(0, 2), c(0.0, 0.8));
        assert_eq!(e.entry(2, 0), c(0.0, -0.8));
        assert_eq!(e.entry(0, 1), c(0.0, 0.0));
    }

    #[test]
    fn mixture_scales_off_diagonal_exactly() {
        let m = PhaseFamily::mixture(0.3, PhaseFamily::GroundState).unwrap();
        let inner = PhaseFamily::GroundState;
        for (n, mm) in [(0usize, 1usize), (2, 5), (1, 7)] {
            assert_eq!(m.entry(n, mm), 0.7 * inner.entry(n, mm));
        }
        assert_eq!(m.entry(4, 4), c(1.0, 0.0));
        assert!(PhaseFamily::mixture(1.5, PhaseFamily::Canonical).is_err());
        // epsilon = 1 is the trivial observable
        let t = PhaseFamily::mixture(1.0, PhaseFamily::Canonical).unwrap();
        assert_eq!(t.entry(0, 1), c(0.0, 0.0));
    }

    #[test]
    fn conjugation_preserves_moduli() {
        let f = PhaseFamily::conjugated(
            PhaseSequence::Linear { slope: 0.7 },
            PhaseFamily::GroundState,
        );
        let g = PhaseFamily::GroundState;
        for (n, m) in [(0usize, 1usize), (3, 8), (2, 4)] {
            assert!((f.entry(n, m).norm() - g.entry(n, m).norm()).abs() < 1e-14);
        }
        // linear conjugation rotates c[0][1] by slope * (0 - 1)
        let want = C64::cis(-0.7) * g.entry(0, 1);
        assert!((f.entry(0, 1) - want).norm() < 1e-15);
    }

    #[test]
    fn vector_tails() {
        let v = alloc::vec![
            alloc::vec![c(1.0, 0.0), c(0.0, 0.0)],
            alloc::vec![c(0.6, 0.0), c(0.8, 0.0)],
        ];
        let repeat = PhaseFamily::from_vectors(v.clone(), TailRule::RepeatLast).unwrap();
        assert_eq!(repeat.entry(5, 9), c(1.0, 0.0));
        assert_eq!(repeat.entry(0, 9), c(0.6, 0.0));

        let canon = PhaseFamily::from_vectors(v.clone(), TailRule::ExtendCanonical).unwrap();
        assert_eq!(canon.entry(5, 9), c(1.0, 0.0));
        assert_eq!(canon.entry(1, 9), c(0.6, 0.0));
        assert_eq!(canon.entry(9, 1), c(0.6, 0.0));

        let orth = PhaseFamily::from_vectors(v, TailRule::ExtendOrthogonal).unwrap();
        assert_eq!(orth.entry(5, 9), c(0.0, 0.0));
        assert_eq!(orth.entry(9, 9), c(1.0, 0.0));
        assert_eq!(orth.entry(1, 9), c(0.0, 0.0));

        assert!(PhaseFamily::from_vectors(alloc::vec![], TailRule::RepeatLast).is_err());
        assert!(PhaseFamily::from_vectors(
            alloc::vec![alloc::vec![c(1.0, 0.0)], alloc::vec![]],
            TailRule::RepeatLast
        )
        .is_err());
    }

    #[test]
    fn gram_validation_flags_bad_vectors() {
        // A deliberately non-unit generating vector shows up as a
        // diagonal violation.
        let bad = PhaseFamily::from_vectors(
            alloc::vec![alloc::vec![c(1.0, 0.0)], alloc::vec![c(1.3, 0.0)]],
            TailRule::RepeatLast,
        )
        .unwrap();
        assert!(bad.validate_gram(4) > 1e-6);

        for fam in [
            PhaseFamily::Canonical,
            PhaseFamily::Trivial,
            PhaseFamily::GroundState,
            PhaseFamily::elementary(0, 1, c(0.6, 0.3)).unwrap(),
            PhaseFamily::mixture(0.25, PhaseFamily::GroundState).unwrap(),
            PhaseFamily::two_step(c(0.5, 0.0)).unwrap(),
        ] {
            assert!(fam.validate_gram(12) <= 1e-10, "family {fam:?}");
        }
        // the two-step family stays admissible at the boundary weight
        let boundary = PhaseFamily::two_step(c(core::f64::consts::FRAC_1_SQRT_2, 0.0)).unwrap();
        assert!(boundary.validate_gram(12) <= 1e-10);
    }

    #[test]
    fn two_step_has_exactly_two_couplings() {
        let w = c(0.4, 0.2);
        let f = PhaseFamily::two_step(w).unwrap();
        assert!((f.entry(0, 1) - w).norm() < 1e-15);
        assert!((f.entry(1, 2) - w).norm() < 1e-15);
        assert!(f.entry(0, 2).norm() < 1e-15);
        for (n, m) in [(0usize, 3usize), (1, 5), (2, 9), (3, 4)] {
            assert!(f.entry(n, m).norm() < 1e-15);
        }
        assert!(PhaseFamily::two_step(c(0.0, 0.0)).is_err());
        assert!(PhaseFamily::two_step(c(0.8, 0.0)).is_err());
    }

    #[test]
    fn structure_flags_classify_builtins() {
        let tol = 1e-9;
        let canonical = PhaseFamily::Canonical.structure_flags(32, tol);
        assert!(canonical.is_strong && canonical.is_modulus_one);
        assert!(canonical.is_extremal_certified);

        let trivial = PhaseFamily::Trivial.structure_flags(32, tol);
        assert!(trivial.is_strong);
        assert!(!trivial.is_modulus_one && !trivial.is_extremal_certified);

        // single nearest-neighbour coupling: every longer chain hits a
        // zero link and matches the zero entry, so still strong
        let near = PhaseFamily::elementary(0, 1, c(1.0, 0.0)).unwrap();
        let flags = near.structure_flags(8, tol);
        assert!(flags.is_strong && !flags.is_modulus_one);

        // skipping coupling breaks the chain identity
        let skip = PhaseFamily::elementary(0, 2, c(1.0, 0.0)).unwrap();
        let flags = skip.structure_flags(8, tol);
        assert!(!flags.is_strong);
        assert!((flags.max_chain_violation - 1.0).abs() < 1e-12);

        // the ground-state family is not strong: its second moment
        // differs from the square of the first
        let gs = PhaseFamily::GroundState.structure_flags(64, tol);
        assert!(!gs.is_strong);
        let expect = PhaseFamily::GroundState.entry(0, 2).re
            - (PhaseFamily::GroundState.entry(0, 1).re * PhaseFamily::GroundState.entry(1, 2).re);
        assert!(gs.max_chain_violation >= expect.abs() - 1e-12);
        assert!(!gs.is_modulus_one);
    }

    #[test]
    fn cyclic_moment_shapes() {
        let v1 = PhaseFamily::Canonical.cyclic_moment(1, 4).unwrap();
        for n in 0..3 {
            assert_eq!(v1[(n, n + 1)], c(1.0, 0.0));
        }
        assert_eq!(v1[(3, 3)], c(0.0, 0.0));
        let v0 = PhaseFamily::GroundState.cyclic_moment(0, 4).unwrap();
        assert_eq!(v0, ComplexMatrix::identity(4));
        assert!(matches!(
            PhaseFamily::Canonical.cyclic_moment(4, 4),
            Err(CoreError::MomentOrder { order: 4, dim: 4 })
        ));
        // moment matrix acts as |n+k> -> c[n][n+k] |n>
        let g = PhaseFamily::GroundState;
        let v2 = g.cyclic_moment(2, 6).unwrap();
        let e5 = crate::cmatrix::StateVector::basis(6, 5).unwrap();
        let out = v2.apply(&e5).unwrap();
        assert!((out.coeffs()[3] - g.entry(3, 5)).norm() < 1e-15);
        assert!(out.coeffs().iter().enumerate().all(|(i, z)| i == 3 || z.norm() == 0.0));
    }

    #[test]
    fn strong_families_satisfy_power_identity() {
        // ||V_k - V_1^k|| small for strong families, violated otherwise
        let dim = 24;
        for fam in [PhaseFamily::Canonical, PhaseFamily::Trivial] {
            let v1 = fam.cyclic_moment(1, dim).unwrap();
            let mut p = ComplexMatrix::identity(dim);
            for k in 1..5 {
                p = p.mul(&v1).unwrap();
                let vk = fam.cyclic_moment(k, dim).unwrap();
                assert!(vk.sub(&p).unwrap().max_abs() < 1e-12);
            }
        }
        let gs = PhaseFamily::GroundState;
        let v1 = gs.cyclic_moment(1, dim).unwrap();
        let v2 = gs.cyclic_moment(2, dim).unwrap();
        let dev = v2.sub(&v1.mul(&v1).unwrap()).unwrap().max_abs();
        assert!(dev > 0.1);
    }
}
