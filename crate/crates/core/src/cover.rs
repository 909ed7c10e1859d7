//! Exact upper-half-plane realization of the (punctured) polygon.
//!
//! Boundary vertex `v` lifts to the integers `v + k m`; the puncture lifts to
//! the point at infinity. Arcs become semicircles or vertical rays, so
//! crossings reduce to endpoint interleaving and crossing order to rational
//! comparisons.

use std::cmp::Ordering;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Ideal {
    At(i64),
    Inf,
}

impl Ideal {
    pub(crate) fn shift(self, by: i64) -> Ideal {
        match self {
            Ideal::At(x) => Ideal::At(x + by),
            Ideal::Inf => Ideal::Inf,
        }
    }
}

/// A geodesic with ordered ideal endpoints `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Geodesic {
    pub lo: Ideal,
    pub hi: Ideal,
}

impl Geodesic {
    pub(crate) fn new(x: Ideal, y: Ideal) -> Geodesic {
        debug_assert_ne!(x, y);
        if x < y {
            Geodesic { lo: x, hi: y }
        } else {
            Geodesic { lo: y, hi: x }
        }
    }

    pub(crate) fn finite(p: i64, q: i64) -> Geodesic {
        Geodesic::new(Ideal::At(p), Ideal::At(q))
    }

    pub(crate) fn shift(self, by: i64) -> Geodesic {
        Geodesic { lo: self.lo.shift(by), hi: self.hi.shift(by) }
    }

    pub(crate) fn has(self, v: Ideal) -> bool {
        self.lo == v || self.hi == v
    }

    pub(crate) fn other(self, v: Ideal) -> Ideal {
        if self.lo == v {
            self.hi
        } else {
            debug_assert_eq!(self.hi, v);
            self.lo
        }
    }

    fn bounds(self) -> (i64, Option<i64>) {
        let Ideal::At(p) = self.lo else { unreachable!("lo is finite") };
        match self.hi {
            Ideal::At(q) => (p, Some(q)),
            Ideal::Inf => (p, None),
        }
    }

    /// Strict interior crossing.
    pub(crate) fn crosses(self, other: Geodesic) -> bool {
        match (self.bounds(), other.bounds()) {
            ((p, Some(q)), (r, Some(s))) => (p < r && r < q && q < s) || (r < p && p < s && s < q),
            ((p, Some(q)), (r, None)) | ((r, None), (p, Some(q))) => p < r && r < q,
            _ => false,
        }
    }

    /// Position of the crossing with `other` along `self`, as a key that
    /// increases from `lo` to `hi`.
    fn crossing_key(self, other: Geodesic) -> Frac {
        match (self.bounds(), other.bounds()) {
            ((p, Some(q)), (r, Some(s))) => {
                let (p, q, r, s) = (p as i128, q as i128, r as i128, s as i128);
                Frac::new(r * s - p * q, r + s - p - q)
            }
            ((_, Some(_)), (r, None)) => Frac::new(r as i128, 1),
            ((p, None), (r, Some(s))) => {
                let (p, r, s) = (p as i128, r as i128, s as i128);
                Frac::new((p - r) * (s - p), 1)
            }
            _ => unreachable!("parallel verticals never cross"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn new(num: i128, den: i128) -> Frac {
        assert_ne!(den, 0, "crossing geodesics are never concentric");
        if den < 0 {
            Frac { num: -num, den: -den }
        } else {
            Frac { num, den }
        }
    }

    fn cmp(&self, other: &Frac) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// Orders `crossed` along `path`, walking from `from`.
pub(crate) fn order_crossings(path: Geodesic, from: Ideal, crossed: &mut [Geodesic]) {
    crossed.sort_by(|a, b| path.crossing_key(*a).cmp(&path.crossing_key(*b)));
    if from != path.lo {
        crossed.reverse();
    }
}

/// Whether `(a, b, c)` is in counterclockwise order on the boundary circle of
/// the upper half-plane.
pub(crate) fn ccw(a: Ideal, b: Ideal, c: Ideal) -> bool {
    (a < b && b < c) || (b < c && c < a) || (c < a && a < b)
}
