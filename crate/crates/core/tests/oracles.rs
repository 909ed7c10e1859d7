mod common;

use std::collections::BTreeSet;

use common::oracles::{box_lattice_points, brute_force_matchings, polygon_crossings, radial_crossings};
use snakepoly::{build_snake_graph, enumerate_matchings, expand, newton_polytope, MarkedSurface, Mode, TaggedArc};

#[test]
fn polygon_crossings_match_convex_geometry() {
    for m in 4..=9 {
        let s = MarkedSurface::polygon(m).unwrap();
        for t in s.ideal_triangulations() {
            for g in s.ordinary_arcs() {
                assert_eq!(t.crossing_sequence(&g).unwrap(), polygon_crossings(&t, &g), "{m}-gon {:?} {g}", t.arcs());
            }
        }
    }
}

#[test]
fn punctured_crossings_match_radial_assembly() {
    let mut checked = 0;
    for m in 3..=6 {
        let s = MarkedSurface::punctured(m).unwrap();
        for t in s.ideal_triangulations() {
            for g in &s.ordinary_arcs() {
                if t.contains(g) {
                    continue;
                }
                let got = t.crossing_sequence(g).unwrap();
                let want = radial_crossings(&t, g);
                let names = |v: &[TaggedArc]| v.iter().map(|a| a.to_string()).collect::<Vec<_>>();
                assert_eq!(names(&got), names(&want), "punctured {m}: T={:?} γ={g}", names(t.arcs()));
                checked += !got.is_empty() as usize;
            }
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn matchings_match_brute_force() {
    let surfaces = [MarkedSurface::polygon(7).unwrap(), MarkedSurface::punctured(4).unwrap()];
    for s in surfaces {
        for t in s.ideal_triangulations() {
            for g in s.ordinary_arcs() {
                if t.contains(&g) {
                    continue;
                }
                let sg = build_snake_graph(&t, &g).unwrap();
                let ours: BTreeSet<Vec<usize>> = enumerate_matchings(&sg).iter().map(|m| m.edges().to_vec()).collect();
                assert_eq!(ours, brute_force_matchings(&sg), "{g}");
            }
        }
    }
}

#[test]
fn lattice_points_match_box_enumeration() {
    let s = MarkedSurface::punctured(4).unwrap();
    let mut checked = 0;
    for t in s.tagged_triangulations().into_iter().step_by(5) {
        for g in s.tagged_arcs() {
            if t.contains(&g) {
                continue;
            }
            for mode in [Mode::Nf, Mode::Pc] {
                let l = expand(&t, &g, mode).unwrap();
                let support = l.support();
                if support[0].len() > 6 {
                    continue;
                }
                let n = newton_polytope(&l).unwrap();
                assert_eq!(n.lattice_points(), box_lattice_points(&support).as_slice(), "{g} {mode}");
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}
