//! Worked examples on fixed seeds, with their published labels mapped to
//! surface arcs (see the README).

use std::collections::BTreeMap;

use snakepoly::matching::weight_coordinates;
use snakepoly::{
    build_snake_graph, enumerate_matchings, expand, reduced_weight_vector, rho_symmetric_matchings, weight_vector,
    LaurentPolynomial, MarkedSurface, Mode, PerfectMatching, SnakeGraph, TaggedArc, TaggedTriangulation,
};

pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, ok: bool, detail: impl Into<String>) -> Check {
        Check { name, ok, detail: detail.into() }
    }
}

/// The 9-gon seed behind the expansion and matching examples.
pub fn nonagon() -> TaggedTriangulation {
    let s = MarkedSurface::polygon(9).unwrap();
    TaggedTriangulation::new(s, ["0-7", "0-6", "0-5", "0-4", "1-4", "1-3"].map(|a| a.parse().unwrap())).unwrap()
}

/// Surface name of a printed label: `t<i>` is `τ_i`, `d<i>` is `δ_i`.
fn nonagon_label(l: &str) -> String {
    let (kind, i) = l.split_at(1);
    let i: usize = i.parse().unwrap();
    match kind {
        "t" => ["0-7", "0-6", "0-5", "0-4", "1-4", "1-3"][i - 1].to_string(),
        "d" => format!("z{}", i - 1),
        _ => panic!("{l}"),
    }
}

fn prefix(mode: Mode, y: bool) -> &'static str {
    match (mode, y) {
        (_, true) => "y",
        (Mode::Bd, _) => "x",
        (Mode::Nf, _) => "z",
        (Mode::Pc, _) => "w",
    }
}

/// The polynomial `(Σ numerators) / denominator` over the variables of `like`.
fn printed(like: &LaurentPolynomial, mode: Mode, numerators: &[&[&str]], denominator: &[&str]) -> LaurentPolynomial {
    let index = |l: &str| {
        let (y, l) = match l.strip_prefix("y") {
            Some(rest) => (true, rest),
            None => (false, l),
        };
        let sym = format!("{}[{}]", prefix(mode, y), nonagon_label(l));
        like.var_index(&sym).unwrap_or_else(|| panic!("no variable {sym}"))
    };
    let mut out = LaurentPolynomial::zero(like.vars().to_vec());
    for num in numerators {
        let mut e = vec![0i64; like.vars().len()];
        for l in num.iter() {
            e[index(l)] += 1;
        }
        for l in denominator {
            e[index(l)] -= 1;
        }
        out.add_term(e, 1);
    }
    out
}

fn same(a: &LaurentPolynomial, b: &LaurentPolynomial) -> bool {
    let ta: BTreeMap<_, _> = a.terms().collect();
    let tb: BTreeMap<_, _> = b.terms().collect();
    ta == tb
}

/// Expansions of `1-7` in the three modes. The second printed pc term has a
/// stray `x_{τ5}`, read as `w_{τ5}`.
pub fn expansion_example() -> Vec<Check> {
    let t = nonagon();
    let gamma = TaggedArc::chord(1, 7);
    let den = ["t2", "t3", "t4"];
    let cases: [(Mode, &[&[&str]]); 3] = [
        (
            Mode::Bd,
            &[
                &["t1", "t2", "d1", "d5"],
                &["t1", "t2", "t3", "t5"],
                &["t1", "t4", "d1", "d6"],
                &["t3", "t4", "d1", "d7"],
            ],
        ),
        (Mode::Nf, &[&["t1", "t2"], &["t1", "t2", "t3", "t5"], &["t1", "t4"], &["t3", "t4"]]),
        (
            Mode::Pc,
            &[
                &["t1", "t2", "yt4"],
                &["t1", "t2", "t3", "t5"],
                &["t1", "t4", "yt3", "yt4"],
                &["t3", "t4", "yt2", "yt3", "yt4"],
            ],
        ),
    ];
    cases
        .iter()
        .map(|(mode, nums)| {
            let l = expand(&t, &gamma, *mode).unwrap();
            let want = printed(&l, *mode, nums, &den);
            let name = match mode {
                Mode::Bd => "expansion bd",
                Mode::Nf => "expansion nf",
                Mode::Pc => "expansion pc",
            };
            Check::new(name, same(&l, &want), format!("computed {l}"))
        })
        .collect()
}

fn by_name(g: &SnakeGraph, mode: Mode, v: &[i64]) -> BTreeMap<String, i64> {
    weight_coordinates(g, mode).into_iter().zip(v.iter().copied()).filter(|(_, x)| *x != 0).collect()
}

/// Nonzero entries of a printed vector with coordinates `names`.
fn printed_vector(names: &[String], v: &[i64]) -> BTreeMap<String, i64> {
    names.iter().cloned().zip(v.iter().copied()).filter(|(_, x)| *x != 0).collect()
}

/// The matching of the `2-7` snake graph with the printed weight vectors.
pub fn matching_example() -> Vec<Check> {
    let t = nonagon();
    let g = build_snake_graph(&t.to_ideal().unwrap(), &TaggedArc::chord(2, 7)).unwrap();
    let taus: Vec<String> = (1..=6).map(|i| nonagon_label(&format!("t{i}"))).collect();
    let deltas: Vec<String> = (1..=9).map(|i| nonagon_label(&format!("d{i}"))).collect();
    let ys: Vec<String> = taus.iter().map(|n| format!("y:{n}")).collect();
    let bd = printed_vector(&[taus.clone(), deltas].concat(), &[0, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 0, 0]);
    let nf = printed_vector(&taus, &[0, 0, 1, 1, 0, 0]);
    let pc = printed_vector(&[taus.clone(), ys].concat(), &[0, 0, 1, 1, 0, 0, 0, 1, 1, 1, 0, 1]);
    let ms = enumerate_matchings(&g);
    let found: Option<&PerfectMatching> =
        ms.iter().find(|m| by_name(&g, Mode::Bd, &weight_vector(&g, m, Mode::Bd).coords) == bd);
    let Some(m) = found else {
        return vec![Check::new("matching bd", false, "no matching with the printed bd vector")];
    };
    let got_nf = by_name(&g, Mode::Nf, &weight_vector(&g, m, Mode::Nf).coords);
    let got_pc = by_name(&g, Mode::Pc, &weight_vector(&g, m, Mode::Pc).coords);
    vec![
        Check::new("matching bd", true, format!("{bd:?}")),
        Check::new("matching nf", got_nf == nf, format!("{got_nf:?}")),
        Check::new("matching pc", got_pc == pc, format!("{got_pc:?}")),
    ]
}

/// The punctured hexagon seed and loop of the reduced-weight example.
pub fn loop_example_seed() -> TaggedTriangulation {
    let s = MarkedSurface::punctured(6).unwrap();
    TaggedTriangulation::new(s, ["1-3", "1-4", "r4", "r5", "r0", "r1"].map(|a| a.parse().unwrap())).unwrap()
}

pub struct LoopExample {
    pub full_bd: BTreeMap<String, i64>,
    pub reduced_bd: BTreeMap<String, i64>,
    pub reduced_pc: BTreeMap<String, i64>,
}

/// The ρ-symmetric matching of `G_{T,λ}` with full bd weight
/// `τ1² τ3² τ5 τ6 δ2² δ5`.
pub fn loop_example() -> Option<LoopExample> {
    let t = loop_example_seed();
    let ideal = t.to_ideal().unwrap();
    let d = ideal.crossing_sequence(&TaggedArc::radius(2)).unwrap().len();
    let g = build_snake_graph(&ideal, &TaggedArc::Loop { base: 2 }).unwrap();
    let ends = g.radius_end_subgraphs(d).unwrap();
    let full: BTreeMap<String, i64> =
        [("1-3", 2), ("r4", 2), ("r0", 1), ("r1", 1), ("z1", 2), ("z4", 1)].map(|(k, v)| (k.to_string(), v)).into();
    let ms = rho_symmetric_matchings(&ends, &enumerate_matchings(&g));
    let m = ms.iter().find(|m| by_name(&g, Mode::Bd, &weight_vector(&g, m, Mode::Bd).coords) == full)?;
    Some(LoopExample {
        full_bd: full,
        reduced_bd: by_name(&g, Mode::Bd, &reduced_weight_vector(&g, &ends, m, Mode::Bd).unwrap().coords),
        reduced_pc: by_name(&g, Mode::Pc, &reduced_weight_vector(&g, &ends, m, Mode::Pc).unwrap().coords),
    })
}

pub fn loop_example_checks() -> Vec<Check> {
    let Some(ex) = loop_example() else {
        return vec![Check::new("reduced weights", false, "no ρ-symmetric matching with the printed weight")];
    };
    let ones = |names: &[&str]| -> BTreeMap<String, i64> { names.iter().map(|n| (n.to_string(), 1)).collect() };
    let bd = ones(&["1-3", "r4", "r0", "r1", "z1", "z4"]);
    let pc_w: BTreeMap<String, i64> =
        ex.reduced_pc.iter().filter(|(k, _)| !k.starts_with("y:")).map(|(k, v)| (k.clone(), *v)).collect();
    let pc_y: BTreeMap<String, i64> =
        ex.reduced_pc.iter().filter(|(k, _)| k.starts_with("y:")).map(|(k, v)| (k.clone(), *v)).collect();
    vec![
        Check::new("reduced bd", ex.reduced_bd == bd, format!("{:?} (full {:?})", ex.reduced_bd, ex.full_bd)),
        Check::new("reduced pc w-part", pc_w == ones(&["1-3", "r4", "r0", "r1"]), format!("{pc_w:?}")),
        Check::new("reduced pc y-part", pc_y == ones(&["y:1-3", "y:1-4"]), format!("{pc_y:?}, printed y1 y2")),
    ]
}
