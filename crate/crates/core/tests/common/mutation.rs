//! Exact numeric cluster mutation, independent of the snake-graph machinery.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use snakepoly::{EdgeLabel, LaurentPolynomial, MarkedSurface, Mode, TaggedArc, TaggedTriangulation};

pub type Q = BigRational;

/// Exchange matrix rows: mutable arcs first, then frozen rows.
#[derive(Clone, Debug)]
pub struct Seed {
    pub arcs: Vec<TaggedArc>,
    pub b: Vec<Vec<i64>>,
}

fn boundary_index(m: usize, a: usize, b: usize) -> Option<usize> {
    if (a + 1) % m == b {
        Some(a)
    } else if (b + 1) % m == a {
        Some(b)
    } else {
        None
    }
}

/// Initial seed with boundary frozen rows: fan at vertex 0 for the polygon,
/// all plain radii for the punctured polygon.
pub fn initial_seed(surface: MarkedSurface) -> Seed {
    let m = surface.m();
    let mut sides: Vec<[EdgeLabel; 3]> = Vec::new();
    let arcs: Vec<TaggedArc>;
    if surface.is_punctured() {
        arcs = (0..m).map(TaggedArc::radius).collect();
        for i in 0..m {
            let j = (i + 1) % m;
            sides.push([
                EdgeLabel::Boundary(i),
                EdgeLabel::Arc(TaggedArc::radius(j)),
                EdgeLabel::Arc(TaggedArc::radius(i)),
            ]);
        }
    } else {
        arcs = (2..m - 1).map(|i| TaggedArc::chord(0, i)).collect();
        let side = |a: usize, b: usize| match boundary_index(m, a, b) {
            Some(i) => EdgeLabel::Boundary(i),
            None => EdgeLabel::Arc(TaggedArc::chord(a.min(b), a.max(b))),
        };
        for i in 1..m - 1 {
            sides.push([side(0, i), side(i, i + 1), side(i + 1, 0)]);
        }
    }
    let n = arcs.len();
    let row = |l: &EdgeLabel| match l {
        EdgeLabel::Arc(a) => arcs.iter().position(|x| x == a).unwrap(),
        EdgeLabel::Boundary(i) => n + i,
    };
    let mut b = vec![vec![0i64; n]; n + m];
    for tri in &sides {
        for k in 0..3 {
            let (p, q) = (row(&tri[k]), row(&tri[(k + 1) % 3]));
            if q < n {
                b[p][q] -= 1;
            }
            if p < n {
                b[q][p] += 1;
            }
        }
    }
    Seed { arcs, b }
}

pub fn mutate_matrix(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = b[0].len();
    let mut out = b.to_vec();
    for i in 0..b.len() {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
            };
        }
    }
    out
}

/// The tagged arc replacing `arcs[k]`.
pub fn flip(surface: &MarkedSurface, arcs: &[TaggedArc], k: usize) -> TaggedArc {
    let rest: Vec<&TaggedArc> = arcs.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, a)| a).collect();
    let found: Vec<TaggedArc> = surface
        .tagged_arcs()
        .into_iter()
        .filter(|a| *a != arcs[k] && !arcs.contains(a))
        .filter(|a| rest.iter().all(|r| surface.arcs_compatible(a, r).unwrap()))
        .collect();
    assert_eq!(found.len(), 1, "flip of {} in {:?}", arcs[k], arcs);
    found[0]
}

fn key(arcs: &[TaggedArc]) -> BTreeSet<TaggedArc> {
    arcs.iter().copied().collect()
}

/// Exchange matrices (with boundary rows) of every seed, keyed by arc set.
pub fn all_seeds(surface: MarkedSurface) -> BTreeMap<BTreeSet<TaggedArc>, Seed> {
    let start = initial_seed(surface);
    let mut seen = BTreeMap::new();
    let mut queue = VecDeque::from([start]);
    while let Some(seed) = queue.pop_front() {
        if seen.contains_key(&key(&seed.arcs)) {
            continue;
        }
        for k in 0..seed.arcs.len() {
            let mut arcs = seed.arcs.clone();
            arcs[k] = flip(&surface, &seed.arcs, k);
            if !seen.contains_key(&key(&arcs)) {
                queue.push_back(Seed { arcs, b: mutate_matrix(&seed.b, k) });
            }
        }
        seen.insert(key(&seed.arcs), seed);
    }
    seen
}

pub fn random_q(rng: &mut StdRng) -> Q {
    Q::new(BigInt::from(rng.gen_range(1..=9)), BigInt::from(rng.gen_range(1..=5)))
}

/// Values of every cluster variable, starting from random values at `seed`
/// with the frozen rows of `mode` (boundary rows, identity, or none).
pub struct Evaluation {
    pub cluster: BTreeMap<TaggedArc, Q>,
    pub frozen: Vec<Q>,
}

pub fn evaluate_from(surface: MarkedSurface, seed: &Seed, mode: Mode, rng_seed: u64) -> Evaluation {
    let mut rng = StdRng::seed_from_u64(rng_seed);
    let n = seed.arcs.len();
    let m = surface.m();
    let mut b: Vec<Vec<i64>> = seed.b[..n].to_vec();
    match mode {
        Mode::Bd => b.extend(seed.b[n..].iter().cloned()),
        Mode::Pc => b.extend((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect())),
        Mode::Nf => {}
    }
    let frozen: Vec<Q> = (n..b.len()).map(|_| random_q(&mut rng)).collect();
    let _ = m;
    let values: Vec<Q> = (0..n).map(|_| random_q(&mut rng)).collect();
    let mut cluster: BTreeMap<TaggedArc, Q> = BTreeMap::new();
    for (a, v) in seed.arcs.iter().zip(&values) {
        cluster.insert(*a, v.clone());
    }
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([(seed.arcs.clone(), values, b)]);
    while let Some((arcs, vals, b)) = queue.pop_front() {
        if !seen.insert(key(&arcs)) {
            continue;
        }
        let all = |i: usize| if i < n { vals[i].clone() } else { frozen[i - n].clone() };
        for k in 0..n {
            let mut pos = Q::one();
            let mut neg = Q::one();
            for (i, bi) in b.iter().enumerate() {
                let e = bi[k];
                for _ in 0..e.abs() {
                    if e > 0 {
                        pos *= all(i);
                    } else {
                        neg *= all(i);
                    }
                }
            }
            let new = (pos + neg) / &vals[k];
            let mut arcs2 = arcs.clone();
            arcs2[k] = flip(&surface, &arcs, k);
            match cluster.get(&arcs2[k]) {
                Some(v) => assert_eq!(*v, new, "inconsistent value for {}", arcs2[k]),
                None => {
                    cluster.insert(arcs2[k], new.clone());
                }
            }
            if !seen.contains(&key(&arcs2)) {
                let mut vals2 = vals.clone();
                vals2[k] = new;
                queue.push_back((arcs2, vals2, mutate_matrix(&b, k)));
            }
        }
    }
    Evaluation { cluster, frozen }
}

/// Evaluates a seed expansion at the values of `ev`.
pub fn evaluate_polynomial(l: &LaurentPolynomial, t: &TaggedTriangulation, seed: &Seed, ev: &Evaluation) -> Q {
    let n = t.arcs().len();
    let point: Vec<Q> = (0..l.vars().len())
        .map(|i| {
            if i < n {
                ev.cluster[&t.arcs()[i]].clone()
            } else {
                // frozen coordinates follow the seed's own arc order for y's
                let j = i - n;
                if l.vars()[i].namespace == snakepoly::Namespace::Y {
                    let arc = t.arcs()[j];
                    ev.frozen[seed.arcs.iter().position(|a| *a == arc).unwrap()].clone()
                } else {
                    ev.frozen[j].clone()
                }
            }
        })
        .collect();
    let mut total = Q::zero();
    for (exp, c) in l.terms() {
        let mut term = Q::from_integer(BigInt::from(c));
        for (x, e) in point.iter().zip(exp) {
            for _ in 0..e.abs() {
                if *e > 0 {
                    term *= x;
                } else {
                    term /= x;
                }
            }
        }
        total += term;
    }
    total
}
