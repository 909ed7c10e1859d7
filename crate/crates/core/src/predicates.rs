//! Closed-form predictions of saturation and emptiness, computed from
//! crossing combinatorics only (never from polytopes).

use serde::Serialize;

use crate::error::Result;
use crate::matching::Mode;
use crate::surface::{TaggedArc, TaggedTriangulation};

/// Predicted properties of a Newton polytope; `None` where no theorem applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub saturated: Option<bool>,
    pub empty: Option<bool>,
    /// Short name of the rule that produced the prediction.
    pub rule: &'static str,
}

fn endpoints(a: &TaggedArc) -> Vec<usize> {
    match *a {
        TaggedArc::Chord { a, b, .. } => vec![a, b],
        TaggedArc::Radius { base, .. } | TaggedArc::Loop { base } => vec![base],
    }
}

/// Type A, no frozens: empty unless `γ` crosses every arc, `n` is odd and at
/// least 3, and the arcs around each even-indexed crossing share no endpoint.
pub fn type_a_nf_empty(t: &TaggedTriangulation, gamma: &TaggedArc) -> Result<bool> {
    let seq = t.to_ideal()?.crossing_sequence(gamma)?;
    let n = t.arcs().len();
    let crosses_all = seq.len() == n && t.arcs().iter().all(|a| seq.contains(a));
    let odd = n % 2 == 1 && n >= 3;
    let separated = crosses_all
        && (2..n).step_by(2).all(|i| {
            // 1-based τ_{i-1} and τ_{i+1}
            let (p, q) = (endpoints(&seq[i - 2]), endpoints(&seq[i]));
            !p.iter().any(|v| q.contains(v))
        });
    Ok(!(crosses_all && odd && separated))
}

/// Number of arcs of `arcs` that `gamma` crosses more than once.
fn multiply_crossed(t: &TaggedTriangulation, arcs: &[TaggedArc], gamma: &TaggedArc) -> Result<usize> {
    let s = t.surface();
    let mut count = 0;
    for a in arcs {
        if s.intersection_number(&gamma.underlying(), &a.underlying())? > 1 {
            count += 1;
        }
    }
    Ok(count)
}

pub fn expectation(t: &TaggedTriangulation, gamma: &TaggedArc, mode: Mode) -> Result<Expectation> {
    let punctured = t.surface().is_punctured();
    if !punctured {
        return Ok(match mode {
            Mode::Bd => Expectation { saturated: Some(true), empty: Some(true), rule: "A-bd" },
            Mode::Pc => Expectation { saturated: Some(true), empty: Some(true), rule: "A-pc" },
            Mode::Nf => Expectation { saturated: Some(true), empty: Some(type_a_nf_empty(t, gamma)?), rule: "A-nf" },
        });
    }
    if mode == Mode::Nf {
        return Ok(Expectation { saturated: None, empty: None, rule: "D-nf" });
    }
    let pair = t.radius_pair().is_some();
    let (rule, empty) = match (gamma.is_notched(), pair, mode) {
        (true, _, _) => ("D-notched", true),
        (false, false, _) => ("D-plain", multiply_crossed(t, t.arcs(), gamma)? == 0),
        (false, true, m) => {
            let ideal: Vec<TaggedArc> = t.to_ideal()?.arcs().to_vec();
            let k = multiply_crossed(t, &ideal, gamma)?;
            if m == Mode::Bd {
                ("D-plain-loop", k == 0)
            } else {
                ("D-plain-loop", k <= 1)
            }
        }
    };
    Ok(Expectation { saturated: Some(true), empty: Some(empty), rule })
}
