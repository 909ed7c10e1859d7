//! Laurent expansions of cluster variables from snake-graph matchings.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matching::{
    cluster_slots, enumerate_matchings, reduced_weight_vector, rho_symmetric_matchings, weight_vector, Mode,
};
use crate::snake::{build_snake_graph, SnakeGraph};
use crate::surface::{EdgeLabel, TaggedArc, TaggedTriangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Namespace {
    Cluster,
    Boundary,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Variable {
    pub namespace: Namespace,
    pub label: String,
    symbol: String,
}

impl Variable {
    pub fn new(namespace: Namespace, label: impl Into<String>, mode: Mode) -> Variable {
        let label = label.into();
        let letter = match (namespace, mode) {
            (Namespace::Y, _) => "y",
            (Namespace::Boundary, _) | (Namespace::Cluster, Mode::Bd) => "x",
            (Namespace::Cluster, Mode::Nf) => "z",
            (Namespace::Cluster, Mode::Pc) => "w",
        };
        let symbol = format!("{letter}[{label}]");
        Variable { namespace, label, symbol }
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol)
    }
}

/// A sparse Laurent polynomial with integer coefficients over an ordered
/// variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    vars: Vec<Variable>,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl LaurentPolynomial {
    pub fn zero(vars: Vec<Variable>) -> LaurentPolynomial {
        LaurentPolynomial { vars, terms: BTreeMap::new() }
    }

    pub fn monomial(vars: Vec<Variable>, exponent: Vec<i64>) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero(vars);
        p.add_term(exponent, 1);
        p
    }

    pub fn add_term(&mut self, exponent: Vec<i64>, coef: i64) {
        assert_eq!(exponent.len(), self.vars.len(), "exponent length");
        let c = self.terms.get(&exponent).copied().unwrap_or(0) + coef;
        if c == 0 {
            self.terms.remove(&exponent);
        } else {
            self.terms.insert(exponent, c);
        }
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, i64)> {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: &[i64]) -> i64 {
        self.terms.get(exponent).copied().unwrap_or(0)
    }

    /// Exponent vectors with nonzero coefficient, in lexicographic order.
    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    pub fn var_index(&self, symbol: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.symbol == symbol)
    }

    /// Re-expresses the polynomial over `vars`, where old variable `i` becomes
    /// `vars[target[i]]`.
    pub fn relabel(&self, vars: Vec<Variable>, target: &[usize]) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(vars);
        for (exp, c) in &self.terms {
            let mut e = vec![0; out.vars.len()];
            for (i, x) in exp.iter().enumerate() {
                e[target[i]] += x;
            }
            out.add_term(e, *c);
        }
        out
    }

    /// Multiplies by the monomial with exponent `shift`.
    pub fn shifted(&self, shift: &[i64]) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.vars.clone());
        for (exp, c) in &self.terms {
            out.add_term(exp.iter().zip(shift).map(|(a, b)| a + b).collect(), *c);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vars": self.vars.iter().map(|v| v.symbol.clone()).collect::<Vec<_>>(),
            "terms": self.terms.iter().map(|(e, c)| serde_json::json!({"exp": e, "coef": c})).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exp, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let factors: Vec<String> = exp
                .iter()
                .enumerate()
                .filter(|(_, e)| **e != 0)
                .map(|(i, e)| if *e == 1 { self.vars[i].to_string() } else { format!("{}^{}", self.vars[i], e) })
                .collect();
            match (*c, factors.is_empty()) {
                (c, true) => write!(f, "{c}")?,
                (1, false) => f.write_str(&factors.join("*"))?,
                (c, false) => write!(f, "{c}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Variables of a seed in canonical order: arcs of `T`, then boundary
/// segments (bd) or `y`'s (pc).
pub fn seed_variables(t: &TaggedTriangulation, mode: Mode) -> Vec<Variable> {
    let mut vars: Vec<Variable> =
        t.arcs().iter().map(|a| Variable::new(Namespace::Cluster, a.to_string(), mode)).collect();
    match mode {
        Mode::Bd => vars.extend(
            (0..t.surface().m()).map(|i| Variable::new(Namespace::Boundary, EdgeLabel::Boundary(i).to_string(), mode)),
        ),
        Mode::Pc => vars.extend(t.arcs().iter().map(|a| Variable::new(Namespace::Y, a.to_string(), mode))),
        Mode::Nf => {}
    }
    vars
}

/// Linear map from weight-vector coordinates of a snake graph over `T°` to
/// exponent coordinates of the seed variables of `T`. A self-folded loop
/// `λ` around `ρ` maps to `ρ + ρ^⋈` in the cluster block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMap {
    rows: Vec<Vec<(usize, i64)>>,
    target_dim: usize,
}

impl LabelMap {
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.rows.len());
        let mut out = vec![0; self.target_dim];
        for (x, row) in v.iter().zip(&self.rows) {
            for &(j, c) in row {
                out[j] += c * x;
            }
        }
        out
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn source_dim(&self) -> usize {
        self.rows.len()
    }
}

/// The `ξ` map for graphs built by [`build_snake_graph`] over `t.to_ideal()`.
pub fn xi_map(g: &SnakeGraph, t: &TaggedTriangulation, mode: Mode) -> Result<LabelMap> {
    let vars = seed_variables(t, mode);
    let n = t.arcs().len();
    let arc_slot = |a: &TaggedArc| -> Result<Vec<usize>> {
        match *a {
            TaggedArc::Loop { base } => {
                let p = t.arcs().iter().position(|x| *x == TaggedArc::radius(base));
                let q = t.arcs().iter().position(|x| *x == TaggedArc::notched(base));
                match (p, q) {
                    (Some(p), Some(q)) => Ok(vec![p, q]),
                    _ => Err(Error::Integrity(format!("loop {a} without its radius pair"))),
                }
            }
            _ => t
                .arcs()
                .iter()
                .position(|x| x == a)
                .map(|p| vec![p])
                .ok_or_else(|| Error::Integrity(format!("label {a} is not an arc of the seed"))),
        }
    };
    // squares in a self-folded triangle: y_λ = y_{ρ^⋈}, y_ρ = y_ρ / y_{ρ^⋈}
    let pair = t.radius_pair();
    let y_row = |a: &TaggedArc| -> Result<Vec<(usize, i64)>> {
        let slots = arc_slot(a)?;
        Ok(match *a {
            TaggedArc::Loop { .. } => vec![(slots[1], 1)],
            TaggedArc::Radius { base, .. } if pair == Some(base) => {
                let pq = arc_slot(&TaggedArc::Loop { base })?;
                vec![(pq[0], 1), (pq[1], -1)]
            }
            _ => vec![(slots[0], 1)],
        })
    };
    let slots = cluster_slots(g, mode);
    let width = slots.iter().flatten().count();
    let source_dim = if mode == Mode::Pc { 2 * width } else { width };
    let mut rows = vec![Vec::new(); source_dim];
    for (l, info) in g.labels().iter().enumerate() {
        let Some(s) = slots[l] else { continue };
        let origin = info.origin.ok_or_else(|| Error::Contract("graph labels carry no surface origin".into()))?;
        match origin {
            EdgeLabel::Arc(a) => {
                for p in arc_slot(&a)? {
                    rows[s].push((p, 1));
                }
                if mode == Mode::Pc {
                    rows[width + s] = y_row(&a)?.into_iter().map(|(p, c)| (n + p, c)).collect();
                }
            }
            EdgeLabel::Boundary(i) => {
                if mode == Mode::Bd {
                    rows[s].push((n + i, 1));
                }
            }
        }
    }
    Ok(LabelMap { rows, target_dim: vars.len() })
}

/// Cluster-block counts of the square labels of `tiles`.
fn crossing_vector(g: &SnakeGraph, mode: Mode, tiles: impl Iterator<Item = usize>) -> Vec<i64> {
    let slots = cluster_slots(g, mode);
    let width = slots.iter().flatten().count();
    let mut v = vec![0; if mode == Mode::Pc { 2 * width } else { width }];
    for j in tiles {
        if let Some(s) = slots[g.tiles()[j].square] {
            v[s] += 1;
        }
    }
    v
}

fn single_variable(t: &TaggedTriangulation, gamma: &TaggedArc, mode: Mode) -> LaurentPolynomial {
    let vars = seed_variables(t, mode);
    let mut exp = vec![0; vars.len()];
    exp[t.arcs().iter().position(|a| a == gamma).expect("arc of the seed")] = 1;
    LaurentPolynomial::monomial(vars, exp)
}

/// Expansion of a plain arc or loop in a seed whose triangulation corresponds
/// to an ideal triangulation.
pub fn expand_plain(t: &TaggedTriangulation, gamma: &TaggedArc, mode: Mode) -> Result<LaurentPolynomial> {
    if gamma.is_notched() {
        return Err(Error::Contract(format!("{gamma} is notched")));
    }
    if t.contains(gamma) {
        return Ok(single_variable(t, gamma, mode));
    }
    let ideal = t.to_ideal()?;
    let vars = seed_variables(t, mode);
    if ideal.contains(gamma) {
        let TaggedArc::Loop { base } = *gamma else { unreachable!("only loops differ between T and T°") };
        let mut exp = vec![0; vars.len()];
        for a in [TaggedArc::radius(base), TaggedArc::notched(base)] {
            exp[t.arcs().iter().position(|x| *x == a).unwrap()] = 1;
        }
        return Ok(LaurentPolynomial::monomial(vars, exp));
    }
    let g = build_snake_graph(&ideal, gamma)?;
    let map = xi_map(&g, t, mode)?;
    let denom = map.apply(&crossing_vector(&g, mode, 0..g.tile_count()));
    let mut out = LaurentPolynomial::zero(vars);
    for m in enumerate_matchings(&g) {
        let w = map.apply(&weight_vector(&g, &m, mode).coords);
        out.add_term(w.iter().zip(&denom).map(|(a, b)| a - b).collect(), 1);
    }
    Ok(out)
}

/// Expansion of a notched radius.
pub fn expand_notched(t: &TaggedTriangulation, rho: &TaggedArc, mode: Mode) -> Result<LaurentPolynomial> {
    let TaggedArc::Radius { base, tag: crate::surface::Tag::Notched } = *rho else {
        return Err(Error::Contract(format!("{rho} is not a notched radius")));
    };
    if t.contains(rho) {
        return Ok(single_variable(t, rho, mode));
    }
    if !t.is_ideal_corresponding() {
        return Err(Error::NotIdealCorresponding);
    }
    let plain = TaggedArc::radius(base);
    if let Some(b0) = t.radius_pair() {
        let l = expand_plain(t, &plain, mode)?;
        return Ok(swap_pair(t, &l, b0, mode));
    }
    let vars = seed_variables(t, mode);
    let lambda = TaggedArc::Loop { base };
    if t.contains(&plain) {
        let l = expand_plain(t, &lambda, mode)?;
        let mut shift = vec![0; vars.len()];
        shift[t.arcs().iter().position(|a| *a == plain).unwrap()] = -1;
        return Ok(l.shifted(&shift));
    }
    let ideal = t.to_ideal()?;
    let d = ideal.crossing_sequence(&plain)?.len();
    let g = build_snake_graph(&ideal, &lambda)?;
    let ends = g.radius_end_subgraphs(d)?;
    let map = xi_map(&g, t, mode)?;
    let denom = map.apply(&crossing_vector(&g, mode, d..g.tile_count()));
    let mut out = LaurentPolynomial::zero(vars);
    for m in rho_symmetric_matchings(&ends, &enumerate_matchings(&g)) {
        let w = map.apply(&reduced_weight_vector(&g, &ends, &m, mode)?.coords);
        out.add_term(w.iter().zip(&denom).map(|(a, b)| a - b).collect(), 1);
    }
    Ok(out)
}

fn swap_pair(t: &TaggedTriangulation, l: &LaurentPolynomial, b0: usize, mode: Mode) -> LaurentPolynomial {
    let n = t.arcs().len();
    let p = t.arcs().iter().position(|a| *a == TaggedArc::radius(b0)).unwrap();
    let q = t.arcs().iter().position(|a| *a == TaggedArc::notched(b0)).unwrap();
    let mut target: Vec<usize> = (0..l.vars().len()).collect();
    target.swap(p, q);
    if mode == Mode::Pc {
        target.swap(n + p, n + q);
    }
    l.relabel(l.vars().to_vec(), &target)
}

/// Expansion of any tagged arc (or loop) in any tagged seed.
pub fn expand(t: &TaggedTriangulation, gamma: &TaggedArc, mode: Mode) -> Result<LaurentPolynomial> {
    let surface = t.surface();
    if surface.validate_arc(gamma).is_err() {
        return Err(Error::DomainMismatch(gamma.to_string()));
    }
    if t.contains(gamma) {
        return Ok(single_variable(t, gamma, mode));
    }
    if !t.is_ideal_corresponding() {
        let tp = t.flip_tagging();
        let lp = expand(&tp, &gamma.flip_tagging(), mode)?;
        // variable i of T^p is the flip of arc i; reorder into T's layout
        let vars = seed_variables(t, mode);
        let n = t.arcs().len();
        let pos = |a: &TaggedArc| t.arcs().iter().position(|x| *x == a.flip_tagging()).unwrap();
        let mut target: Vec<usize> = (0..lp.vars().len()).collect();
        for (i, a) in tp.arcs().iter().enumerate() {
            target[i] = pos(a);
            if mode == Mode::Pc {
                target[n + i] = n + pos(a);
            }
        }
        return Ok(lp.relabel(vars, &target));
    }
    if gamma.is_notched() {
        expand_notched(t, gamma, mode)
    } else {
        expand_plain(t, gamma, mode)
    }
}
