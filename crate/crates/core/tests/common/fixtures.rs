//! Snake graphs of the non-saturated examples on surfaces beyond types A and D.

use std::collections::BTreeSet;
use std::path::Path;

use snakepoly::{run_counterexample, weight_vector, Mode, PerfectMatching, RawSnakeGraph, SnakeGraph};

use super::golden::Check;
use super::oracles::{brute_force_matchings, in_hull};

pub fn load(name: &str) -> RawSnakeGraph {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(format!("{name}.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Weight vectors from the brute-force matching enumeration.
fn oracle_vectors(raw: &RawSnakeGraph) -> BTreeSet<Vec<i64>> {
    let g = SnakeGraph::from_raw(raw).unwrap();
    brute_force_matchings(&g)
        .into_iter()
        .map(|edges| weight_vector(&g, &PerfectMatching::new(&g, edges).unwrap(), Mode::Bd).coords)
        .collect()
}

fn midpoint_case(name: &'static str, file: &str, a: &[i64], b: &[i64], mid: &[i64]) -> Check {
    let raw = load(file);
    let r = run_counterexample(&raw, Mode::Bd).unwrap();
    let vectors = oracle_vectors(&raw);
    let pts: Vec<Vec<i64>> = vectors.iter().cloned().collect();
    let ok = vectors.contains(a)
        && vectors.contains(b)
        && !vectors.contains(mid)
        && in_hull(&pts, mid)
        && !r.saturated
        && r.witnesses.iter().any(|w| w == mid);
    Check { name, ok, detail: format!("witnesses {:?}", r.witnesses) }
}

pub fn counterexample_checks() -> Vec<Check> {
    let torus = {
        let raw = load("punctured_torus");
        let r = run_counterexample(&raw, Mode::Bd).unwrap();
        let vectors = oracle_vectors(&raw);
        let even = vectors.iter().flatten().all(|x| x % 2 == 0);
        let ok = match &r.midpoint_witness {
            Some([a, b, mid]) => {
                even && r.all_even
                    && !r.saturated
                    && vectors.contains(a)
                    && vectors.contains(b)
                    && mid.iter().any(|x| x % 2 != 0)
                    && a.iter().zip(b).zip(mid).all(|((x, y), z)| x + y == 2 * z)
            }
            None => false,
        };
        Check { name: "punctured torus", ok, detail: format!("midpoint {:?}", r.midpoint_witness) }
    };
    vec![
        midpoint_case(
            "annulus",
            "annulus",
            &[1, 1, 1, 2, 1, 0, 0, 1],
            &[1, 3, 1, 0, 1, 0, 0, 1],
            &[1, 2, 1, 1, 1, 0, 0, 1],
        ),
        midpoint_case(
            "twice-punctured torus",
            "twice_punctured_torus",
            &[2, 0, 1, 1, 1, 2],
            &[0, 2, 1, 1, 1, 2],
            &[1, 1, 1, 1, 1, 2],
        ),
        torus,
    ]
}
