//! Finite unions of half-open arcs on the circle, the sets a phase
//! observable is evaluated on.
//!
//! Arc sets are kept in a canonical form: endpoints inside `[0, 2pi]`,
//! arcs sorted, pairwise disjoint and non-adjacent. Input arcs may
//! overlap, touch, start anywhere on the real line, or wrap past the
//! top of the circle; canonicalization reduces them modulo `2pi`,
//! splits wrap-arounds at the seam and merges what touches.

use alloc::vec::Vec;
use core::f64::consts::TAU;

#[allow(unused_imports)]
use num_traits::Float;

/// Union of half-open arcs `[a, b)` of the circle, in canonical form.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcSet {
    arcs: Vec<(f64, f64)>,
}

impl ArcSet {
    /// Canonicalize a list of raw arcs.
    ///
    /// Each input pair `(a, b)` denotes the arc swept from `a` towards
    /// increasing angle until `b`; when `b < a` the sweep passes the
    /// seam (a wrap-around arc), and `b - a >= 2pi` covers the whole
    /// circle. Zero-length arcs are dropped.
    pub fn new(raw: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut pieces: Vec<(f64, f64)> = Vec::new();
        for (a, b) in raw {
            debug_assert!(a.is_finite() && b.is_finite());
            let mut len = b - a;
            if len < 0.0 && len > -TAU {
                len += TAU;
            }
            if len <= 0.0 {
                continue;
            }
            if len >= TAU {
                return ArcSet::full_circle();
            }
            let mut start = a % TAU;
            if start < 0.0 {
                start += TAU;
            }
            if start >= TAU {
                start = 0.0;
            }
            let end = start + len;
            if end > TAU {
                pieces.push((start, TAU));
                pieces.push((0.0, end - TAU));
            } else {
                pieces.push((start, end));
            }
        }
        pieces.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
        let mut arcs: Vec<(f64, f64)> = Vec::with_capacity(pieces.len());
        for (a, b) in pieces {
            match arcs.last_mut() {
                Some(last) if a <= last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => arcs.push((a, b)),
            }
        }
        ArcSet { arcs }
    }

    /// The whole circle `[0, 2pi)`.
    pub fn full_circle() -> Self {
        ArcSet {
            arcs: alloc::vec![(0.0, TAU)],
        }
    }

    /// The empty set.
    pub fn empty() -> Self {
        ArcSet { arcs: Vec::new() }
    }

    /// Canonical arcs, sorted and disjoint.
    pub fn arcs(&self) -> &[(f64, f64)] {
        &self.arcs
    }

    /// Total length.
    pub fn measure(&self) -> f64 {
        self.arcs.iter().map(|(a, b)| b - a).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.arcs == [(0.0, TAU)]
    }

    /// Complement within the circle. Gap endpoints reuse the stored
    /// endpoint values bit for bit.
    pub fn complement(&self) -> Self {
        if self.arcs.is_empty() {
            return ArcSet::full_circle();
        }
        let mut gaps = Vec::with_capacity(self.arcs.len() + 1);
        let mut cursor = 0.0;
        for &(a, b) in &self.arcs {
            if a > cursor {
                gaps.push((cursor, a));
            }
            cursor = b;
        }
        if cursor < TAU {
            gaps.push((cursor, TAU));
        }
        ArcSet { arcs: gaps }
    }

    /// Shift every arc by `x` and re-canonicalize (splitting at the
    /// seam when an arc wraps).
    pub fn translate(&self, x: f64) -> Self {
        ArcSet::new(self.arcs.iter().map(|&(a, b)| (a + x, b + x)))
    }

    /// Set union.
    pub fn union(&self, other: &ArcSet) -> Self {
        ArcSet::new(self.arcs.iter().chain(other.arcs.iter()).copied())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn canonicalizes_overlap_and_adjacency() {
        let x = ArcSet::new([(0.0, 1.0), (0.5, 2.0), (2.0, 3.0)]);
        assert_eq!(x.arcs(), &[(0.0, 3.0)]);
        assert!((x.measure() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn splits_wraparound_at_seam() {
        let x = ArcSet::new([(6.0, 7.0)]);
        assert_eq!(x.arcs().len(), 2);
        assert_eq!(x.arcs()[0].0, 0.0);
        assert!((x.arcs()[0].1 - (7.0 - TAU)).abs() < 1e-15);
        assert_eq!(x.arcs()[1], (6.0, TAU));
        assert!((x.measure() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn negative_start_is_reduced() {
        let x = ArcSet::new([(-1.0, 1.0)]);
        assert_eq!(x.arcs().len(), 2);
        assert!((x.measure() - 2.0).abs() < 1e-14);
        assert_eq!(x.arcs()[0], (0.0, 1.0));
    }

    #[test]
    fn full_circle_detection_and_complement() {
        assert!(ArcSet::new([(0.0, TAU)]).is_full());
        assert!(ArcSet::new([(1.0, 1.0 + TAU)]).is_full());
        assert!(ArcSet::full_circle().complement().is_empty());
        assert!(ArcSet::empty().complement().is_full());

        let x = ArcSet::new([(1.0, 2.0), (4.0, 5.0)]);
        let xc = x.complement();
        assert_eq!(xc.arcs(), &[(0.0, 1.0), (2.0, 4.0), (5.0, TAU)]);
        assert!((x.measure() + xc.measure() - TAU).abs() < 1e-15);
        assert!(x.union(&xc).is_full());
    }

    #[test]
    fn adjacent_halves_merge_to_full() {
        let x = ArcSet::new([(0.0, PI), (PI, TAU)]);
        assert!(x.is_full());
    }

    #[test]
    fn translate_wraps_and_preserves_measure() {
        let x = ArcSet::new([(1.0, 2.0)]);
        let y = x.translate(5.0);
        assert_eq!(y.arcs().len(), 2);
        assert!((y.measure() - 1.0).abs() < 1e-14);
        // translating back and forth keeps the measure
        let z = y.translate(TAU - 5.0);
        assert!((z.measure() - 1.0).abs() < 1e-14);
        // zero-length input is dropped
        assert!(ArcSet::new([(1.0, 1.0)]).is_empty());
    }

    #[test]
    fn reversed_endpoints_mean_wraparound() {
        let x = ArcSet::new([(5.5, 1.0)]);
        assert_eq!(x.arcs().len(), 2);
        assert!((x.measure() - (1.0 - 5.5 + TAU)).abs() < 1e-14);
        assert_eq!(x.arcs()[0], (0.0, 1.0));
        assert_eq!(x.arcs()[1], (5.5, TAU));
    }
}
