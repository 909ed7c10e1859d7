//! Polygons and once-punctured polygons: tagged arcs, triangulations,
//! crossing sequences and the radial decomposition of a punctured
//! triangulation.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cover::{order_crossings, Geodesic, Ideal};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Polygon,
    Punctured,
}

/// A disk with `m` marked boundary vertices `0..m` (counterclockwise), with or
/// without a single interior puncture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SurfaceJson", into = "SurfaceJson")]
pub struct MarkedSurface {
    kind: SurfaceKind,
    m: usize,
}

#[derive(Serialize, Deserialize)]
struct SurfaceJson {
    kind: SurfaceKind,
    m: usize,
}

impl TryFrom<SurfaceJson> for MarkedSurface {
    type Error = Error;
    fn try_from(j: SurfaceJson) -> Result<Self> {
        MarkedSurface::new(j.kind, j.m)
    }
}

impl From<MarkedSurface> for SurfaceJson {
    fn from(s: MarkedSurface) -> Self {
        SurfaceJson { kind: s.kind, m: s.m }
    }
}

impl fmt::Display for MarkedSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SurfaceKind::Polygon => write!(f, "polygon:{}", self.m),
            SurfaceKind::Punctured => write!(f, "punctured:{}", self.m),
        }
    }
}

/// Parses `polygon:6` or `punctured:4`.
impl std::str::FromStr for MarkedSurface {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSurface(format!("expected polygon:<m> or punctured:<m>, got {s:?}"));
        let (kind, m) = s.split_once(':').ok_or_else(bad)?;
        let m: usize = m.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "polygon" => MarkedSurface::polygon(m),
            "punctured" => MarkedSurface::punctured(m),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// Walking from the lower endpoint to the higher one, the puncture is on
    /// the left. Polygon chords always use this side.
    PunctureLeft,
    PunctureRight,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::PunctureLeft => Side::PunctureRight,
            Side::PunctureRight => Side::PunctureLeft,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Plain,
    Notched,
}

/// A tagged arc, or the ordinary loop `Loop` which only appears inside
/// self-folded triangles and in notched expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ArcJson", into = "ArcJson")]
pub enum TaggedArc {
    Chord { a: usize, b: usize, side: Side },
    Radius { base: usize, tag: Tag },
    Loop { base: usize },
}

impl TaggedArc {
    /// A polygon chord (or punctured chord with the puncture on the left of
    /// `min(a,b) -> max(a,b)`).
    pub fn chord(a: usize, b: usize) -> TaggedArc {
        TaggedArc::routed_chord(a, b, Side::PunctureLeft)
    }

    /// Chord from `a` to `b` with the puncture on `side` when walking from
    /// `a` to `b`.
    pub fn routed_chord(a: usize, b: usize, side: Side) -> TaggedArc {
        if a <= b {
            TaggedArc::Chord { a, b, side }
        } else {
            TaggedArc::Chord { a: b, b: a, side: side.flip() }
        }
    }

    pub fn radius(base: usize) -> TaggedArc {
        TaggedArc::Radius { base, tag: Tag::Plain }
    }

    pub fn notched(base: usize) -> TaggedArc {
        TaggedArc::Radius { base, tag: Tag::Notched }
    }

    pub fn is_radius(&self) -> bool {
        matches!(self, TaggedArc::Radius { .. })
    }

    pub fn is_notched(&self) -> bool {
        matches!(self, TaggedArc::Radius { tag: Tag::Notched, .. })
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, TaggedArc::Loop { .. })
    }

    /// The underlying ordinary arc (all tags plain).
    pub fn underlying(&self) -> TaggedArc {
        match *self {
            TaggedArc::Radius { base, .. } => TaggedArc::radius(base),
            other => other,
        }
    }

    /// Swaps the tag of a radius; identity elsewhere.
    pub fn flip_tagging(&self) -> TaggedArc {
        match *self {
            TaggedArc::Radius { base, tag: Tag::Plain } => TaggedArc::notched(base),
            TaggedArc::Radius { base, tag: Tag::Notched } => TaggedArc::radius(base),
            other => other,
        }
    }

    /// The loop tightly enclosing the puncture at the radius's basepoint.
    pub fn loop_around(&self) -> Result<TaggedArc> {
        match *self {
            TaggedArc::Radius { base, .. } => Ok(TaggedArc::Loop { base }),
            other => Err(Error::NotARadius(other.to_string())),
        }
    }
}

impl fmt::Display for TaggedArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TaggedArc::Chord { a, b, side: Side::PunctureLeft } => write!(f, "{a}-{b}"),
            TaggedArc::Chord { a, b, side: Side::PunctureRight } => write!(f, "{a}-{b}:R"),
            TaggedArc::Radius { base, tag: Tag::Plain } => write!(f, "r{base}"),
            TaggedArc::Radius { base, tag: Tag::Notched } => write!(f, "r{base}*"),
            TaggedArc::Loop { base } => write!(f, "l{base}"),
        }
    }
}

/// Parses the display form: `2-5`, `2-5:R`, `r3`, `r3*`, `l3`.
impl std::str::FromStr for TaggedArc {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArc { arc: s.to_string(), reason: "unrecognized arc name".into() };
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('r') {
            return Ok(match rest.strip_suffix('*') {
                Some(b) => TaggedArc::notched(num(b)?),
                None => TaggedArc::radius(num(rest)?),
            });
        }
        if let Some(rest) = s.strip_prefix('l') {
            return Ok(TaggedArc::Loop { base: num(rest)? });
        }
        let (body, side) = match s.strip_suffix(":R") {
            Some(b) => (b, Side::PunctureRight),
            None => (s.strip_suffix(":L").unwrap_or(s), Side::PunctureLeft),
        };
        let (a, b) = body.split_once('-').ok_or_else(bad)?;
        Ok(TaggedArc::routed_chord(num(a)?, num(b)?, side))
    }
}

#[derive(Serialize, Deserialize)]
struct ArcJson {
    variant: String,
    a: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    side: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tag: Option<String>,
}

impl TryFrom<ArcJson> for TaggedArc {
    type Error = Error;
    fn try_from(j: ArcJson) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidArc { arc: j.variant.clone(), reason: reason.into() };
        match j.variant.as_str() {
            "chord" => {
                let b = j.b.ok_or_else(|| bad("chord needs field b"))?;
                let side = match j.side.as_deref() {
                    None | Some("L") => Side::PunctureLeft,
                    Some("R") => Side::PunctureRight,
                    Some(_) => return Err(bad("side must be L or R")),
                };
                Ok(TaggedArc::routed_chord(j.a, b, side))
            }
            "radius" => match j.tag.as_deref() {
                None | Some("plain") => Ok(TaggedArc::radius(j.a)),
                Some("notched") => Ok(TaggedArc::notched(j.a)),
                Some(_) => Err(bad("tag must be plain or notched")),
            },
            "loop" => Ok(TaggedArc::Loop { base: j.a }),
            _ => Err(bad("variant must be chord, radius or loop")),
        }
    }
}

impl From<TaggedArc> for ArcJson {
    fn from(arc: TaggedArc) -> Self {
        match arc {
            TaggedArc::Chord { a, b, side } => ArcJson {
                variant: "chord".into(),
                a,
                b: Some(b),
                side: Some(if side == Side::PunctureLeft { "L" } else { "R" }.into()),
                tag: None,
            },
            TaggedArc::Radius { base, tag } => ArcJson {
                variant: "radius".into(),
                a: base,
                b: None,
                side: None,
                tag: Some(if tag == Tag::Plain { "plain" } else { "notched" }.into()),
            },
            TaggedArc::Loop { base } => ArcJson { variant: "loop".into(), a: base, b: None, side: None, tag: None },
        }
    }
}

/// An arc of a triangulation or a boundary segment `ζ_i = (i, i+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    Arc(TaggedArc),
    Boundary(usize),
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Arc(a) => a.fmt(f),
            EdgeLabel::Boundary(i) => write!(f, "z{i}"),
        }
    }
}

impl MarkedSurface {
    pub fn new(kind: SurfaceKind, m: usize) -> Result<MarkedSurface> {
        if m < 3 {
            return Err(Error::InvalidSurface(format!("need at least 3 boundary vertices, got {m}")));
        }
        Ok(MarkedSurface { kind, m })
    }

    pub fn polygon(m: usize) -> Result<MarkedSurface> {
        MarkedSurface::new(SurfaceKind::Polygon, m)
    }

    pub fn punctured(m: usize) -> Result<MarkedSurface> {
        MarkedSurface::new(SurfaceKind::Punctured, m)
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_punctured(&self) -> bool {
        self.kind == SurfaceKind::Punctured
    }

    /// Number of arcs in a triangulation: `m-3` for the polygon, `m` for the
    /// punctured polygon.
    pub fn rank(&self) -> usize {
        match self.kind {
            SurfaceKind::Polygon => self.m - 3,
            SurfaceKind::Punctured => self.m,
        }
    }

    /// Boundary segments `ζ_i = (i, i+1 mod m)`.
    pub fn boundary_segments(&self) -> Vec<(usize, usize)> {
        (0..self.m).map(|i| (i, (i + 1) % self.m)).collect()
    }

    pub fn validate_arc(&self, arc: &TaggedArc) -> Result<()> {
        let bad = |reason: String| Error::InvalidArc { arc: arc.to_string(), reason };
        let m = self.m;
        match *arc {
            TaggedArc::Chord { a, b, side } => {
                if b >= m {
                    return Err(bad(format!("vertex out of range 0..{m}")));
                }
                if a >= b {
                    return Err(bad("chord endpoints must be distinct and ordered".into()));
                }
                match self.kind {
                    SurfaceKind::Polygon => {
                        if side != Side::PunctureLeft {
                            return Err(bad("polygon chords carry no routing".into()));
                        }
                        if b - a < 2 || b - a > m - 2 {
                            return Err(bad("polygon chord joins adjacent vertices".into()));
                        }
                    }
                    SurfaceKind::Punctured => {
                        let len = self.free_side_len(a, b, side);
                        if len < 2 {
                            return Err(bad("chord is isotopic to a boundary segment".into()));
                        }
                    }
                }
                Ok(())
            }
            TaggedArc::Radius { base, .. } | TaggedArc::Loop { base } => {
                if self.kind == SurfaceKind::Polygon {
                    return Err(bad("radii and loops need a puncture".into()));
                }
                if base >= m {
                    return Err(bad(format!("vertex out of range 0..{m}")));
                }
                Ok(())
            }
        }
    }

    fn free_side_len(&self, a: usize, b: usize, side: Side) -> usize {
        match side {
            Side::PunctureLeft => b - a,
            Side::PunctureRight => a + self.m - b,
        }
    }

    /// All tagged arcs in canonical order.
    pub fn tagged_arcs(&self) -> Vec<TaggedArc> {
        let mut out = self.chords();
        if self.is_punctured() {
            out.extend((0..self.m).map(TaggedArc::radius));
            out.extend((0..self.m).map(TaggedArc::notched));
        }
        out.sort();
        out
    }

    /// All ordinary arcs (chords, plain radii, and loops around the puncture).
    pub fn ordinary_arcs(&self) -> Vec<TaggedArc> {
        let mut out = self.chords();
        if self.is_punctured() {
            out.extend((0..self.m).map(TaggedArc::radius));
            out.extend((0..self.m).map(|base| TaggedArc::Loop { base }));
        }
        out.sort();
        out
    }

    fn chords(&self) -> Vec<TaggedArc> {
        let mut out = Vec::new();
        for a in 0..self.m {
            for b in a + 1..self.m {
                for side in [Side::PunctureLeft, Side::PunctureRight] {
                    let arc = TaggedArc::Chord { a, b, side };
                    if self.validate_arc(&arc).is_ok() {
                        out.push(arc);
                    }
                }
            }
        }
        out
    }

    /// Canonical lift to the upper half-plane.
    pub(crate) fn lift(&self, arc: &TaggedArc) -> Geodesic {
        let m = self.m as i64;
        match *arc {
            TaggedArc::Chord { a, b, side: Side::PunctureLeft } => Geodesic::finite(a as i64, b as i64),
            TaggedArc::Chord { a, b, side: Side::PunctureRight } => Geodesic::finite(b as i64, a as i64 + m),
            TaggedArc::Radius { base, .. } => Geodesic::new(Ideal::At(base as i64), Ideal::Inf),
            TaggedArc::Loop { base } => Geodesic::finite(base as i64, base as i64 + m),
        }
    }

    /// Lift of a boundary segment.
    pub(crate) fn lift_boundary(&self, i: usize) -> Geodesic {
        if !self.is_punctured() && i == self.m - 1 {
            Geodesic::finite(0, self.m as i64 - 1)
        } else {
            Geodesic::finite(i as i64, i as i64 + 1)
        }
    }

    /// Oriented canonical lift: `(start, end)`.
    pub(crate) fn oriented_lift(&self, arc: &TaggedArc) -> (Ideal, Ideal) {
        let g = self.lift(arc);
        match arc {
            TaggedArc::Chord { side: Side::PunctureRight, .. } => (g.hi, g.lo),
            _ => (g.lo, g.hi),
        }
    }

    /// All translates of `g` relevant to a window around the canonical lifts.
    fn translates(&self, g: Geodesic) -> Vec<Geodesic> {
        match self.kind {
            SurfaceKind::Polygon => vec![g],
            SurfaceKind::Punctured => {
                let m = self.m as i64;
                (-2..=2).map(|k| g.shift(k * m)).collect()
            }
        }
    }

    /// Projects a lifted geodesic back to an ordinary arc or boundary segment.
    pub(crate) fn descend(&self, g: Geodesic) -> Option<EdgeLabel> {
        let m = self.m as i64;
        let Ideal::At(x) = g.lo else { return None };
        match self.kind {
            SurfaceKind::Polygon => {
                let Ideal::At(y) = g.hi else { return None };
                if x < 0 || y >= m {
                    return None;
                }
                if y - x == 1 {
                    Some(EdgeLabel::Boundary(x as usize))
                } else if x == 0 && y == m - 1 {
                    Some(EdgeLabel::Boundary(m as usize - 1))
                } else {
                    Some(EdgeLabel::Arc(TaggedArc::chord(x as usize, y as usize)))
                }
            }
            SurfaceKind::Punctured => {
                let a = x.rem_euclid(m) as usize;
                match g.hi {
                    Ideal::Inf => Some(EdgeLabel::Arc(TaggedArc::radius(a))),
                    Ideal::At(y) => {
                        let len = y - x;
                        if len == 1 {
                            Some(EdgeLabel::Boundary(a))
                        } else if len == m {
                            Some(EdgeLabel::Arc(TaggedArc::Loop { base: a }))
                        } else if len < m {
                            let b = y.rem_euclid(m) as usize;
                            Some(EdgeLabel::Arc(TaggedArc::routed_chord(a, b, Side::PunctureLeft)))
                        } else {
                            None
                        }
                    }
                }
            }
        }
    }

    fn check_all(&self, arcs: &[&TaggedArc]) -> Result<()> {
        for a in arcs {
            if self.validate_arc(a).is_err() {
                return Err(Error::DomainMismatch(a.to_string()));
            }
        }
        Ok(())
    }

    /// Minimal number of interior crossings between the underlying ordinary
    /// arcs.
    pub fn intersection_number(&self, alpha: &TaggedArc, beta: &TaggedArc) -> Result<usize> {
        self.check_all(&[alpha, beta])?;
        Ok(self.intersection_unchecked(alpha, beta))
    }

    fn intersection_unchecked(&self, alpha: &TaggedArc, beta: &TaggedArc) -> usize {
        let g = self.lift(alpha);
        self.translates(self.lift(beta)).into_iter().filter(|h| g.crosses(*h)).count()
    }

    /// Compatibility of tagged arcs: underlying arcs do not cross, and two
    /// distinct radii carry the same tag.
    pub fn arcs_compatible(&self, alpha: &TaggedArc, beta: &TaggedArc) -> Result<bool> {
        self.check_all(&[alpha, beta])?;
        Ok(self.compatible_unchecked(alpha, beta))
    }

    fn compatible_unchecked(&self, alpha: &TaggedArc, beta: &TaggedArc) -> bool {
        if let (TaggedArc::Radius { base: p, tag: s }, TaggedArc::Radius { base: q, tag: t }) = (alpha, beta) {
            if p != q && s != t {
                return false;
            }
        }
        self.intersection_unchecked(alpha, beta) == 0
    }

    fn maximal_sets(&self, pool: &[TaggedArc], compat: impl Fn(&TaggedArc, &TaggedArc) -> bool) -> Vec<Vec<TaggedArc>> {
        let n = pool.len();
        let table: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| compat(&pool[i], &pool[j])).collect()).collect();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        fn rec(start: usize, table: &[Vec<bool>], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let n = table.len();
            let ok = |j: usize, chosen: &[usize]| chosen.iter().all(|&c| table[c][j]);
            let mut extended = false;
            for j in start..n {
                if ok(j, chosen) {
                    extended = true;
                    chosen.push(j);
                    rec(j + 1, table, chosen, out);
                    chosen.pop();
                }
            }
            if !extended && (0..start).all(|j| chosen.contains(&j) || !ok(j, chosen)) {
                out.push(chosen.clone());
            }
        }
        let mut idx = Vec::new();
        rec(0, &table, &mut chosen, &mut idx);
        for set in idx {
            out.push(set.into_iter().map(|i| pool[i]).collect());
        }
        out
    }

    /// All tagged triangulations, each with arcs in canonical order.
    pub fn tagged_triangulations(&self) -> Vec<TaggedTriangulation> {
        let pool = self.tagged_arcs();
        self.maximal_sets(&pool, |a, b| self.compatible_unchecked(a, b))
            .into_iter()
            .map(|arcs| TaggedTriangulation { surface: *self, arcs })
            .collect()
    }

    /// All ideal triangulations (possibly with a self-folded triangle).
    pub fn ideal_triangulations(&self) -> Vec<IdealTriangulation> {
        let pool = self.ordinary_arcs();
        self.maximal_sets(&pool, |a, b| self.intersection_unchecked(a, b) == 0)
            .into_iter()
            .map(|arcs| IdealTriangulation { surface: *self, arcs })
            .collect()
    }
}

/// A maximal collection of pairwise compatible tagged arcs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaggedTriangulation {
    surface: MarkedSurface,
    arcs: Vec<TaggedArc>,
}

impl TaggedTriangulation {
    pub fn new(surface: MarkedSurface, arcs: impl IntoIterator<Item = TaggedArc>) -> Result<Self> {
        let set: BTreeSet<TaggedArc> = arcs.into_iter().collect();
        for a in &set {
            surface.validate_arc(a)?;
            if a.is_loop() {
                return Err(Error::InvalidTriangulation(format!("loop {a} is not a tagged arc")));
            }
        }
        let arcs: Vec<TaggedArc> = set.into_iter().collect();
        check_maximal(&surface, &arcs, &surface.tagged_arcs(), |x, y| surface.compatible_unchecked(x, y))?;
        Ok(TaggedTriangulation { surface, arcs })
    }

    pub fn surface(&self) -> MarkedSurface {
        self.surface
    }

    pub fn arcs(&self) -> &[TaggedArc] {
        &self.arcs
    }

    pub fn contains(&self, arc: &TaggedArc) -> bool {
        self.arcs.binary_search(arc).is_ok()
    }

    /// Basepoint of the plain/notched radius pair, if present.
    pub fn radius_pair(&self) -> Option<usize> {
        self.arcs.iter().find_map(|a| match *a {
            TaggedArc::Radius { base, tag: Tag::Notched } if self.contains(&TaggedArc::radius(base)) => Some(base),
            _ => None,
        })
    }

    /// Whether the triangulation corresponds directly to an ideal one: no
    /// notched radius without its plain partner.
    pub fn is_ideal_corresponding(&self) -> bool {
        self.arcs.iter().all(|a| match *a {
            TaggedArc::Radius { base, tag: Tag::Notched } => self.contains(&TaggedArc::radius(base)),
            _ => true,
        })
    }

    pub fn flip_tagging(&self) -> TaggedTriangulation {
        let mut arcs: Vec<TaggedArc> = self.arcs.iter().map(|a| a.flip_tagging()).collect();
        arcs.sort();
        TaggedTriangulation { surface: self.surface, arcs }
    }

    /// Replaces a notched radius by the loop enclosing its plain partner.
    pub fn to_ideal(&self) -> Result<IdealTriangulation> {
        if !self.is_ideal_corresponding() {
            return Err(Error::NotIdealCorresponding);
        }
        let mut arcs: Vec<TaggedArc> = self
            .arcs
            .iter()
            .map(|a| match *a {
                TaggedArc::Radius { base, tag: Tag::Notched } => TaggedArc::Loop { base },
                other => other,
            })
            .collect();
        arcs.sort();
        Ok(IdealTriangulation { surface: self.surface, arcs })
    }
}

impl Serialize for TaggedTriangulation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.arcs.serialize(s)
    }
}

fn check_maximal(
    surface: &MarkedSurface,
    arcs: &[TaggedArc],
    pool: &[TaggedArc],
    compat: impl Fn(&TaggedArc, &TaggedArc) -> bool,
) -> Result<()> {
    if arcs.len() != surface.rank() {
        return Err(Error::InvalidTriangulation(format!("expected {} arcs, got {}", surface.rank(), arcs.len())));
    }
    for (i, x) in arcs.iter().enumerate() {
        for y in &arcs[i + 1..] {
            if !compat(x, y) {
                return Err(Error::InvalidTriangulation(format!("{x} and {y} are not compatible")));
            }
        }
    }
    if let Some(extra) = pool.iter().find(|p| !arcs.contains(p) && arcs.iter().all(|a| compat(a, p))) {
        return Err(Error::InvalidTriangulation(format!("not maximal: {extra} can be added")));
    }
    Ok(())
}

/// A maximal collection of pairwise compatible ordinary arcs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealTriangulation {
    surface: MarkedSurface,
    arcs: Vec<TaggedArc>,
}

impl Serialize for IdealTriangulation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.arcs.serialize(s)
    }
}

/// The oriented path of a lift of an arc through the lifted triangulation.
#[derive(Clone, Debug)]
pub(crate) struct Walk {
    pub start: Ideal,
    pub end: Ideal,
    pub crossed: Vec<Geodesic>,
}

impl IdealTriangulation {
    pub fn new(surface: MarkedSurface, arcs: impl IntoIterator<Item = TaggedArc>) -> Result<Self> {
        let set: BTreeSet<TaggedArc> = arcs.into_iter().collect();
        for a in &set {
            surface.validate_arc(a)?;
            if a.is_notched() {
                return Err(Error::InvalidTriangulation(format!("{a} is not an ordinary arc")));
            }
        }
        let arcs: Vec<TaggedArc> = set.into_iter().collect();
        check_maximal(&surface, &arcs, &surface.ordinary_arcs(), |x, y| surface.intersection_unchecked(x, y) == 0)?;
        Ok(IdealTriangulation { surface, arcs })
    }

    pub fn surface(&self) -> MarkedSurface {
        self.surface
    }

    pub fn arcs(&self) -> &[TaggedArc] {
        &self.arcs
    }

    pub fn contains(&self, arc: &TaggedArc) -> bool {
        self.arcs.binary_search(arc).is_ok()
    }

    /// Basepoint of the self-folded triangle, if any.
    pub fn self_folded(&self) -> Option<usize> {
        self.arcs.iter().find_map(|a| match *a {
            TaggedArc::Loop { base } => Some(base),
            _ => None,
        })
    }

    pub fn to_tagged(&self) -> TaggedTriangulation {
        let mut arcs: Vec<TaggedArc> = self
            .arcs
            .iter()
            .map(|a| match *a {
                TaggedArc::Loop { base } => TaggedArc::notched(base),
                other => other,
            })
            .collect();
        arcs.sort();
        TaggedTriangulation { surface: self.surface, arcs }
    }

    /// Lifts of every arc of the triangulation near the canonical window.
    fn lifted_arcs(&self) -> Vec<Geodesic> {
        let mut out: Vec<Geodesic> =
            self.arcs.iter().flat_map(|a| self.surface.translates(self.surface.lift(a))).collect();
        out.sort();
        out.dedup();
        out
    }

    pub(crate) fn walk(&self, gamma: &TaggedArc) -> Result<Walk> {
        let surface = &self.surface;
        if surface.validate_arc(gamma).is_err() {
            return Err(Error::DomainMismatch(gamma.to_string()));
        }
        let path = surface.lift(gamma);
        let (start, end) = surface.oriented_lift(gamma);
        let mut crossed: Vec<Geodesic> = self.lifted_arcs().into_iter().filter(|h| path.crosses(*h)).collect();
        order_crossings(path, start, &mut crossed);
        Ok(Walk { start, end, crossed })
    }

    /// Label of a lifted geodesic, which must be an arc of this triangulation
    /// or a boundary segment.
    pub(crate) fn label_of(&self, g: Geodesic) -> Result<EdgeLabel> {
        match self.surface.descend(g) {
            Some(EdgeLabel::Arc(a)) if self.contains(&a) => Ok(EdgeLabel::Arc(a)),
            Some(b @ EdgeLabel::Boundary(_)) => Ok(b),
            other => Err(Error::Integrity(format!("geodesic {g:?} descends to {other:?}, not a side of T"))),
        }
    }

    /// Arcs of the triangulation crossed by `gamma`, in order along its
    /// canonical orientation. Empty when `gamma` belongs to the triangulation.
    pub fn crossing_sequence(&self, gamma: &TaggedArc) -> Result<Vec<TaggedArc>> {
        let walk = self.walk(&gamma.underlying())?;
        walk.crossed
            .into_iter()
            .map(|g| match self.label_of(g)? {
                EdgeLabel::Arc(a) => Ok(a),
                EdgeLabel::Boundary(i) => Err(Error::Integrity(format!("crossed boundary segment z{i}"))),
            })
            .collect()
    }

    /// The decomposition into a central punctured `k`-gon cut out by the
    /// radii, and triangulated fans glued along each `ε_i`.
    pub fn radial_decomposition(&self) -> Result<RadialDecomposition> {
        if !self.surface.is_punctured() {
            return Err(Error::WrongSurface { expected: "punctured" });
        }
        let m = self.surface.m as i64;
        let basepoints: Vec<usize> = self
            .arcs
            .iter()
            .filter_map(|a| match *a {
                TaggedArc::Radius { base, .. } => Some(base),
                _ => None,
            })
            .collect();
        let k = basepoints.len();
        let mut epsilon = Vec::with_capacity(k);
        let mut fans = Vec::with_capacity(k);
        for i in 0..k {
            let lo = basepoints[i] as i64;
            let len = if k == 1 { m } else { (basepoints[(i + 1) % k] as i64 - lo).rem_euclid(m) };
            let eps = self
                .surface
                .descend(if len == 1 {
                    self.surface.lift_boundary(lo as usize)
                } else {
                    Geodesic::finite(lo, lo + len)
                })
                .expect("interval between basepoints descends");
            if let EdgeLabel::Arc(a) = eps {
                if !self.contains(&a) {
                    return Err(Error::Integrity(format!("{a} bounds the central region but is not in T")));
                }
            }
            let arcs = self
                .arcs
                .iter()
                .filter(|a| matches!(a, TaggedArc::Chord { .. }))
                .filter(|a| EdgeLabel::Arc(**a) != eps)
                .filter(|a| {
                    self.surface
                        .translates(self.surface.lift(a))
                        .into_iter()
                        .any(|g| g.lo >= Ideal::At(lo) && g.hi <= Ideal::At(lo + len))
                })
                .copied()
                .collect();
            let vertices = (0..=len).map(|j| ((lo + j).rem_euclid(m)) as usize).collect();
            epsilon.push(eps);
            fans.push(Fan { vertices, arcs });
        }
        let rho = basepoints.iter().map(|&b| TaggedArc::radius(b)).collect();
        Ok(RadialDecomposition { k, rho, basepoints, epsilon, fans })
    }
}

/// The triangulated sub-polygon `S_i` between consecutive radii.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fan {
    /// Boundary vertices `b_i, ..., b_{i+1}` in counterclockwise order.
    pub vertices: Vec<usize>,
    /// Arcs of the triangulation strictly inside the fan.
    pub arcs: Vec<TaggedArc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadialDecomposition {
    pub k: usize,
    pub rho: Vec<TaggedArc>,
    pub basepoints: Vec<usize>,
    #[serde(serialize_with = "labels_as_strings")]
    pub epsilon: Vec<EdgeLabel>,
    pub fans: Vec<Fan>,
}

fn labels_as_strings<S: serde::Serializer>(v: &[EdgeLabel], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|l| l.to_string()))
}
