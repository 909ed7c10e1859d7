//! Batch verification: per-instance verdicts, corpus sweeps, the lifted
//! polytope sweep, counterexample graphs and diagnostic dumps.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::laurent::expand;
use crate::matching::{enumerate_matchings, lifted_vector, weight_coordinates, weight_vector, Mode};
use crate::polytope::{lifted_matching_polytope, newton_polytope, project_pi, to_q, RationalPolytope};
use crate::predicates::expectation;
use crate::snake::{build_snake_graph, RawSnakeGraph, SnakeGraph};
use crate::surface::{MarkedSurface, SurfaceKind, TaggedArc, TaggedTriangulation};

/// Largest polygon and punctured polygon swept by default.
pub const DESK_POLYGON_MAX: usize = 8;
pub const DESK_PUNCTURED_MAX: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub surface: String,
    pub triangulation: Vec<String>,
    pub gamma: String,
    pub mode: Mode,
    pub rule: String,
    pub saturated: bool,
    pub empty: bool,
    pub expected_saturated: Option<bool>,
    pub expected_empty: Option<bool>,
    pub terms: usize,
    /// Sum of the coefficients, i.e. the number of matchings in the formula.
    pub matching_count: i64,
    pub lattice_point_count: usize,
    /// Lattice points of the Newton polytope outside the support.
    pub missing: Vec<Vec<i64>>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn names(t: &TaggedTriangulation) -> Vec<String> {
    t.arcs().iter().map(|a| a.to_string()).collect()
}

/// Checks one instance. Theorem violations and internal errors produce a
/// failing verdict rather than an `Err`.
pub fn check_instance(t: &TaggedTriangulation, gamma: &TaggedArc, mode: Mode, timed: bool) -> Verdict {
    let start = Instant::now();
    let mut v = Verdict {
        surface: t.surface().to_string(),
        triangulation: names(t),
        gamma: gamma.to_string(),
        mode,
        rule: String::new(),
        saturated: false,
        empty: false,
        expected_saturated: None,
        expected_empty: None,
        terms: 0,
        matching_count: 0,
        lattice_point_count: 0,
        missing: Vec::new(),
        pass: false,
        elapsed_ms: None,
        error: None,
    };
    let run = |v: &mut Verdict| -> Result<()> {
        let e = expectation(t, gamma, mode)?;
        v.rule = e.rule.to_string();
        v.expected_saturated = e.saturated;
        v.expected_empty = e.empty;
        let l = expand(t, gamma, mode)?;
        v.terms = l.len();
        v.matching_count = l.terms().map(|(_, c)| c).sum();
        let n = newton_polytope(&l)?;
        v.lattice_point_count = n.lattice_points().len();
        v.missing = n.missing_lattice_points(&l.support())?;
        v.saturated = v.missing.is_empty();
        v.empty = n.is_empty_polytope();
        Ok(())
    };
    match run(&mut v) {
        Ok(()) => {
            v.pass =
                v.expected_saturated.is_none_or(|s| s == v.saturated) && v.expected_empty.is_none_or(|e| e == v.empty);
        }
        Err(e) => v.error = Some(e.to_string()),
    }
    if timed {
        v.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    v
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub surfaces: Vec<MarkedSurface>,
    pub modes: Vec<Mode>,
    #[serde(default)]
    pub jobs: Option<usize>,
    /// Records per-instance wall time; makes reports non-reproducible.
    #[serde(default)]
    pub timings: bool,
}

impl CorpusConfig {
    /// Polygons 5..=8 and punctured polygons 3..=5 in every mode.
    pub fn desk_scale() -> CorpusConfig {
        let mut surfaces: Vec<MarkedSurface> =
            (5..=DESK_POLYGON_MAX).map(|m| MarkedSurface::polygon(m).unwrap()).collect();
        surfaces.extend((3..=DESK_PUNCTURED_MAX).map(|m| MarkedSurface::punctured(m).unwrap()));
        CorpusConfig { surfaces, modes: Mode::ALL.to_vec(), jobs: None, timings: false }
    }

    /// Warnings for surfaces beyond the desk-scale bounds.
    pub fn warnings(&self) -> Vec<String> {
        self.surfaces
            .iter()
            .filter(|s| match s.kind() {
                SurfaceKind::Polygon => s.m() > DESK_POLYGON_MAX,
                SurfaceKind::Punctured => s.m() > DESK_PUNCTURED_MAX,
            })
            .map(|s| format!("{s} is above the desk-scale bound; the sweep may take very long"))
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RuleCount {
    pub instances: usize,
    pub failed: usize,
    pub empty: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub saturated: usize,
    pub empty: usize,
    pub by_rule: BTreeMap<String, RuleCount>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub verdicts: Vec<Verdict>,
    pub summary: Summary,
}

impl Report {
    pub fn from_verdicts(verdicts: Vec<Verdict>) -> Report {
        let mut s = Summary::default();
        for v in &verdicts {
            s.instances += 1;
            if v.pass {
                s.passed += 1;
            } else {
                s.failed += 1;
            }
            s.errors += v.error.is_some() as usize;
            s.saturated += v.saturated as usize;
            s.empty += v.empty as usize;
            let r = s.by_rule.entry(v.rule.clone()).or_default();
            r.instances += 1;
            r.failed += !v.pass as usize;
            r.empty += v.empty as usize;
        }
        Report { verdicts, summary: s }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    /// One verdict per line followed by a `{"summary": ...}` footer.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            out.push_str(&serde_json::to_string(v).expect("verdicts serialize"));
            out.push('\n');
        }
        out.push_str(&json!({ "summary": self.summary }).to_string());
        out.push('\n');
        out
    }
}

pub(crate) fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Contract(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Every `(T, γ ∉ T)` of a surface in enumeration order.
pub fn instances(surface: MarkedSurface) -> Vec<(TaggedTriangulation, TaggedArc)> {
    let arcs = surface.tagged_arcs();
    let mut out = Vec::new();
    for t in surface.tagged_triangulations() {
        for a in &arcs {
            if !t.contains(a) {
                out.push((t.clone(), *a));
            }
        }
    }
    out
}

/// Sweeps every instance of every configured surface and mode. The report
/// order is the enumeration order, independent of scheduling.
pub fn run_corpus(config: &CorpusConfig) -> Result<Report> {
    let mut work = Vec::new();
    for s in &config.surfaces {
        for (t, g) in instances(*s) {
            for &mode in &config.modes {
                work.push((t.clone(), g, mode));
            }
        }
    }
    let timed = config.timings;
    let verdicts =
        with_jobs(config.jobs, || work.par_iter().map(|(t, g, mode)| check_instance(t, g, *mode, timed)).collect())?;
    Ok(Report::from_verdicts(verdicts))
}

/// Checks on the lifted polytopes of one snake graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftedVerdict {
    pub surface: String,
    pub triangulation: Vec<String>,
    pub arc: String,
    pub tiles: usize,
    pub matchings: usize,
    /// Lattice points of the lifted polytope are exactly the matching vectors.
    pub lattice_is_matchings: bool,
    pub lattice_is_matchings_pc: bool,
    /// Every matching vector satisfies the H-relations.
    pub h_relations: bool,
    /// `π` maps lifted matching vectors to weight vectors in every mode.
    pub projection: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Every distinct snake graph the expansions of a surface use: `G_{T°,γ}`
/// for ideal-corresponding `T` and ordinary `γ ∉ T°`.
pub fn surface_graphs(surface: MarkedSurface) -> Result<Vec<(TaggedTriangulation, TaggedArc, SnakeGraph)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let arcs = surface.ordinary_arcs();
    for t in surface.tagged_triangulations() {
        if !t.is_ideal_corresponding() {
            continue;
        }
        let ideal = t.to_ideal()?;
        for a in &arcs {
            if ideal.contains(a) {
                continue;
            }
            let g = build_snake_graph(&ideal, a)?;
            let key = serde_json::to_string(&g.to_raw())?;
            if seen.insert(key) {
                out.push((t.clone(), *a, g));
            }
        }
    }
    Ok(out)
}

pub fn check_lifted(t: &TaggedTriangulation, arc: &TaggedArc, g: &SnakeGraph) -> LiftedVerdict {
    let mut v = LiftedVerdict {
        surface: t.surface().to_string(),
        triangulation: names(t),
        arc: arc.to_string(),
        tiles: g.tile_count(),
        matchings: 0,
        lattice_is_matchings: false,
        lattice_is_matchings_pc: false,
        h_relations: false,
        projection: false,
        pass: false,
        error: None,
    };
    let run = |v: &mut LiftedVerdict| -> Result<()> {
        let matchings = enumerate_matchings(g);
        v.matchings = matchings.len();
        let mut h = true;
        let mut proj = true;
        for pc in [false, true] {
            let lp = lifted_matching_polytope(g, pc)?;
            let mut vectors: Vec<Vec<i64>> = matchings.iter().map(|m| lifted_vector(g, m, pc).to_vec()).collect();
            vectors.sort();
            let same = lp.polytope.lattice_points() == vectors.as_slice();
            if pc {
                v.lattice_is_matchings_pc = same;
            } else {
                v.lattice_is_matchings = same;
            }
            h &= vectors.iter().all(|x| lp.satisfies(&to_q(x)));
            for m in &matchings {
                let x = to_q(&lifted_vector(g, m, pc).to_vec());
                let modes: &[Mode] = if pc { &[Mode::Pc] } else { &[Mode::Bd, Mode::Nf] };
                for &mode in modes {
                    proj &= project_pi(&x, g, mode)? == to_q(&weight_vector(g, m, mode).coords);
                }
            }
        }
        v.h_relations = h;
        v.projection = proj;
        Ok(())
    };
    match run(&mut v) {
        Ok(()) => v.pass = v.lattice_is_matchings && v.lattice_is_matchings_pc && v.h_relations && v.projection,
        Err(e) => v.error = Some(e.to_string()),
    }
    v
}

/// Lifted-polytope checks over every snake graph of the given surfaces.
pub fn run_lifted_sweep(surfaces: &[MarkedSurface], jobs: Option<usize>) -> Result<Vec<LiftedVerdict>> {
    let mut graphs = Vec::new();
    for s in surfaces {
        graphs.extend(surface_graphs(*s)?);
    }
    with_jobs(jobs, || graphs.par_iter().map(|(t, a, g)| check_lifted(t, a, g)).collect())
}

/// Outcome of a raw counterexample graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    pub mode: Mode,
    pub coordinates: Vec<String>,
    pub matching_count: usize,
    /// Distinct weight vectors, sorted.
    pub weight_vectors: Vec<Vec<i64>>,
    pub lattice_point_count: usize,
    pub saturated: bool,
    /// Lattice points of `P(G)` that are no matching's weight vector.
    pub witnesses: Vec<Vec<i64>>,
    /// Every coordinate of every weight vector is even.
    pub all_even: bool,
    /// First pair of weight vectors (in sorted order) whose midpoint is a
    /// lattice point but not a weight vector, with that midpoint.
    pub midpoint_witness: Option<[Vec<i64>; 3]>,
}

pub fn run_counterexample(raw: &RawSnakeGraph, mode: Mode) -> Result<CounterexampleReport> {
    let g = SnakeGraph::from_raw(raw)?;
    let matchings = enumerate_matchings(&g);
    let vectors: BTreeSet<Vec<i64>> = matchings.iter().map(|m| weight_vector(&g, m, mode).coords).collect();
    let weight_vectors: Vec<Vec<i64>> = vectors.iter().cloned().collect();
    let p = RationalPolytope::from_integer_points(&weight_vectors)?;
    let witnesses = p.missing_lattice_points(&weight_vectors)?;
    let all_even = weight_vectors.iter().flatten().all(|x| x % 2 == 0);
    let mut midpoint_witness = None;
    'outer: for (i, a) in weight_vectors.iter().enumerate() {
        for b in &weight_vectors[i + 1..] {
            if a.iter().zip(b).all(|(x, y)| (x + y) % 2 == 0) {
                let mid: Vec<i64> = a.iter().zip(b).map(|(x, y)| (x + y) / 2).collect();
                if !vectors.contains(&mid) {
                    midpoint_witness = Some([a.clone(), b.clone(), mid]);
                    break 'outer;
                }
            }
        }
    }
    Ok(CounterexampleReport {
        mode,
        coordinates: weight_coordinates(&g, mode),
        matching_count: matchings.len(),
        lattice_point_count: p.lattice_points().len(),
        saturated: witnesses.is_empty(),
        weight_vectors,
        witnesses,
        all_even,
        midpoint_witness,
    })
}

/// The ordinary arc whose snake graph (in the ideal triangulation of `t` or
/// of its flip) underlies the expansion of `gamma`, if there is one.
pub fn instance_graph(t: &TaggedTriangulation, gamma: &TaggedArc) -> Result<Option<(TaggedArc, SnakeGraph)>> {
    let (t, gamma) =
        if t.is_ideal_corresponding() { (t.clone(), *gamma) } else { (t.flip_tagging(), gamma.flip_tagging()) };
    let ideal = t.to_ideal()?;
    let arc = match gamma {
        TaggedArc::Radius { base, .. } if gamma.is_notched() => TaggedArc::Loop { base },
        other => other,
    };
    if ideal.contains(&arc) || t.contains(&gamma) {
        return Ok(None);
    }
    Ok(Some((arc, build_snake_graph(&ideal, &arc)?)))
}

/// Diagnostic dump of one instance in every mode.
pub fn explain_instance(t: &TaggedTriangulation, gamma: &TaggedArc) -> Result<Value> {
    let surface = t.surface();
    surface.validate_arc(gamma)?;
    let mut out = json!({
        "surface": surface.to_string(),
        "triangulation": names(t),
        "gamma": gamma.to_string(),
    });
    if let Some((arc, g)) = instance_graph(t, gamma)? {
        let ideal = if t.is_ideal_corresponding() { t.to_ideal()? } else { t.flip_tagging().to_ideal()? };
        let crossings: Vec<String> = ideal.crossing_sequence(&arc)?.iter().map(|a| a.to_string()).collect();
        let matchings = enumerate_matchings(&g);
        let listed: Vec<Value> = matchings
            .iter()
            .map(|m| {
                let sides: Vec<String> = m.sides(&g).iter().map(|(j, s)| format!("{j}{}", s.letter())).collect();
                json!({ "edges": sides, "enclosed": m.enclosed_tiles() })
            })
            .collect();
        let mut weights = serde_json::Map::new();
        for mode in Mode::ALL {
            weights.insert(
                mode.to_string(),
                json!({
                    "coordinates": weight_coordinates(&g, mode),
                    "vectors": matchings.iter().map(|m| weight_vector(&g, m, mode).coords).collect::<Vec<_>>(),
                }),
            );
        }
        out["graph_arc"] = json!(arc.to_string());
        out["crossings"] = json!(crossings);
        out["snake_graph"] = serde_json::to_value(g.to_raw())?;
        out["matchings"] = json!(listed);
        out["weights"] = Value::Object(weights);
    }
    let mut modes = serde_json::Map::new();
    for mode in Mode::ALL {
        let l = expand(t, gamma, mode)?;
        let n = newton_polytope(&l)?;
        let verdict = check_instance(t, gamma, mode, false);
        let vertices: Vec<Vec<String>> =
            n.vertices().iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
        modes.insert(
            mode.to_string(),
            json!({
                "expansion": l.to_string(),
                "laurent": l.to_json(),
                "vertices": vertices,
                "lattice_points": n.lattice_points(),
                "verdict": verdict,
            }),
        );
    }
    out["modes"] = Value::Object(modes);
    Ok(out)
}
