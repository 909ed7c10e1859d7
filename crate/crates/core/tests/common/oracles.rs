//! Independent reference implementations used as test oracles.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use snakepoly::lp::{feasible, Q};
use snakepoly::{IdealTriangulation, MarkedSurface, Side, SnakeGraph, TaggedArc};

/// Perfect matchings as sorted edge-id sets, by include/exclude recursion
/// over the edge list.
pub fn brute_force_matchings(g: &SnakeGraph) -> BTreeSet<Vec<usize>> {
    fn go(
        g: &SnakeGraph,
        i: usize,
        used: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        need: usize,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        if chosen.len() == need {
            out.insert(chosen.clone());
            return;
        }
        if i == g.edges().len() || g.edges().len() - i < need - chosen.len() {
            return;
        }
        let [a, b] = g.edges()[i].ends;
        if !used[a] && !used[b] {
            used[a] = true;
            used[b] = true;
            chosen.push(i);
            go(g, i + 1, used, chosen, need, out);
            chosen.pop();
            used[a] = false;
            used[b] = false;
        }
        go(g, i + 1, used, chosen, need, out);
    }
    let n = g.vertices().len();
    let mut out = BTreeSet::new();
    go(g, 0, &mut vec![false; n], &mut Vec::new(), n / 2, &mut out);
    out
}

fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// `p` is a convex combination of `points`.
pub fn in_hull(points: &[Vec<i64>], p: &[i64]) -> bool {
    let d = p.len();
    let mut a: Vec<Vec<Q>> = (0..d).map(|i| points.iter().map(|v| q(v[i])).collect()).collect();
    a.push(vec![q(1); points.len()]);
    let mut b: Vec<Q> = p.iter().map(|&x| q(x)).collect();
    b.push(q(1));
    feasible(&a, &b, points.len())
}

/// Lattice points of the hull of `points` by testing every point of the
/// bounding box.
pub fn box_lattice_points(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = points[0].len();
    let lo: Vec<i64> = (0..d).map(|i| points.iter().map(|v| v[i]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|i| points.iter().map(|v| v[i]).max().unwrap()).collect();
    let mut out = Vec::new();
    let mut p = lo.clone();
    loop {
        if in_hull(points, &p) {
            out.push(p.clone());
        }
        let mut i = d;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            if p[i] < hi[i] {
                p[i] += 1;
                break;
            }
            p[i] = lo[i];
        }
    }
}

/// Boundary interval `[lo, hi]` cut off from the puncture by an arc, in
/// lifted vertex coordinates.
fn interval(m: i64, a: &TaggedArc) -> (i64, i64) {
    match *a {
        TaggedArc::Chord { a, b, side: Side::PunctureLeft } => (a as i64, b as i64),
        TaggedArc::Chord { a, b, side: Side::PunctureRight } => (b as i64, a as i64 + m),
        TaggedArc::Loop { base } => (base as i64, base as i64 + m),
        TaggedArc::Radius { .. } => unreachable!("radii have no interval"),
    }
}

/// Translate of `(lo, hi)` inside `[from, to]`, if any.
fn fit(m: i64, (lo, hi): (i64, i64), from: i64, to: i64) -> Option<(i64, i64)> {
    let t = (from - lo).div_euclid(m) + if (from - lo).rem_euclid(m) == 0 { 0 } else { 1 };
    let (l, h) = (lo + t * m, hi + t * m);
    (l >= from && h <= to).then_some((l, h))
}

/// Parameter along `p → q` of the crossing with `r → s`, vertices placed on
/// the parabola `(x, x²)`.
fn crossing_param(p: i64, q: i64, r: i64, s: i64) -> (i128, i128) {
    let pt = |x: i64| (x as i128, (x as i128) * (x as i128));
    let (p, q, r, s) = (pt(p), pt(q), pt(r), pt(s));
    let cross = |a: (i128, i128), b: (i128, i128)| a.0 * b.1 - a.1 * b.0;
    let d = (q.0 - p.0, q.1 - p.1);
    let e = (s.0 - r.0, s.1 - r.1);
    let num = cross((r.0 - p.0, r.1 - p.1), e);
    let den = cross(d, e);
    if den < 0 {
        (-num, -den)
    } else {
        (num, den)
    }
}

/// Arcs among `arcs` (with intervals inside a convex polygon) crossed by the
/// chord `lo → hi`, in order.
fn convex_crossings(lo: i64, hi: i64, arcs: &[(TaggedArc, (i64, i64))]) -> Vec<TaggedArc> {
    let (a, b) = (lo.min(hi), lo.max(hi));
    let mut hits: Vec<((i128, i128), TaggedArc)> = arcs
        .iter()
        .filter(|(_, (l, h))| (a < *l && *l < b && *h > b) || (a < *h && *h < b && *l < a))
        .map(|(arc, (l, h))| (crossing_param(lo, hi, *l, *h), *arc))
        .collect();
    hits.sort_by(|(x, _), (y, _)| (x.0 * y.1).cmp(&(y.0 * x.1)));
    hits.into_iter().map(|(_, a)| a).collect()
}

/// Crossing sequence in a polygon from straight chords in convex position.
pub fn polygon_crossings(t: &IdealTriangulation, gamma: &TaggedArc) -> Vec<TaggedArc> {
    let TaggedArc::Chord { a, b, .. } = *gamma else { panic!("polygon arcs are chords") };
    let arcs: Vec<(TaggedArc, (i64, i64))> = t
        .arcs()
        .iter()
        .map(|x| match *x {
            TaggedArc::Chord { a, b, .. } => (*x, (a as i64, b as i64)),
            _ => unreachable!(),
        })
        .collect();
    convex_crossings(a as i64, b as i64, &arcs)
}

/// Crossing sequence in a punctured polygon assembled from the radial
/// decomposition: a fan walk out to `ε`, the radii around the puncture, and
/// a fan walk back in.
pub fn radial_crossings(t: &IdealTriangulation, gamma: &TaggedArc) -> Vec<TaggedArc> {
    let s: MarkedSurface = t.surface();
    let m = s.m() as i64;
    let mut base: Vec<i64> = t
        .arcs()
        .iter()
        .filter_map(|a| match *a {
            TaggedArc::Radius { base, .. } => Some(base as i64),
            _ => None,
        })
        .collect();
    base.sort();
    let k = base.len();
    let fans: Vec<(i64, i64)> = (0..k)
        .map(|i| {
            let lo = base[i];
            let hi = if k == 1 { lo + m } else { lo + (base[(i + 1) % k] - lo).rem_euclid(m) };
            (lo, hi)
        })
        .collect();
    let others: Vec<(TaggedArc, (i64, i64))> =
        t.arcs().iter().filter(|a| !a.is_radius()).map(|a| (*a, interval(m, a))).collect();
    // arcs of T inside fan i, in the fan's coordinates; ε_i is the one spanning it
    let in_fan = |i: usize| -> Vec<(TaggedArc, (i64, i64))> {
        let (from, to) = fans[i];
        others.iter().filter_map(|(a, iv)| fit(m, *iv, from, to).map(|f| (*a, f))).collect()
    };
    let epsilon =
        |i: usize| -> Option<TaggedArc> { in_fan(i).into_iter().find(|(_, iv)| *iv == fans[i]).map(|(a, _)| a) };
    // fan containing lifted point x in its interior, with x shifted into it
    let fan_of = |x: i64| -> (usize, i64) {
        (0..k)
            .find_map(|i| {
                let (lo, hi) = fans[i];
                let y = lo + (x - lo).rem_euclid(m);
                (y > lo && y < hi).then_some((i, y))
            })
            .expect("non-basepoint lies inside a fan")
    };
    let is_base = |x: i64| base.contains(&x.rem_euclid(m));
    // arcs of fan i strictly containing y, innermost first
    let around = |i: usize, y: i64| -> Vec<TaggedArc> {
        let mut v: Vec<(i64, TaggedArc)> = in_fan(i)
            .into_iter()
            .filter(|(_, (l, h))| *l < y && y < *h && (*l, *h) != fans[i])
            .map(|(a, (l, h))| (h - l, a))
            .collect();
        v.sort();
        v.into_iter().map(|(_, a)| a).collect()
    };
    let walk_out = |x: i64| -> Vec<TaggedArc> {
        if is_base(x) {
            return Vec::new();
        }
        let (i, y) = fan_of(x);
        let mut v = around(i, y);
        v.extend(epsilon(i));
        v
    };

    if let TaggedArc::Radius { base: p, .. } = *gamma {
        return if is_base(p as i64) { Vec::new() } else { walk_out(p as i64) };
    }
    let (lo, hi) = interval(m, gamma);
    for (i, &(from, to)) in fans.iter().enumerate() {
        if let Some((l, h)) = fit(m, (lo, hi), from, to) {
            if (l, h) != (from, to) {
                let arcs: Vec<_> = in_fan(i).into_iter().filter(|(_, iv)| *iv != (from, to)).collect();
                let mut v = convex_crossings(l, h, &arcs);
                if matches!(gamma, TaggedArc::Chord { side: Side::PunctureRight, .. }) {
                    v.reverse();
                }
                return v;
            }
        }
    }
    let mut v = walk_out(lo);
    for x in lo + 1..hi {
        if is_base(x) {
            v.push(TaggedArc::radius(x.rem_euclid(m) as usize));
        }
    }
    let mut back = walk_out(hi);
    back.reverse();
    v.extend(back);
    if matches!(gamma, TaggedArc::Chord { side: Side::PunctureRight, .. }) {
        v.reverse();
    }
    v
}

pub fn catalan(n: u64) -> u64 {
    (0..n).fold(1u64, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}
