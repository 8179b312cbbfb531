//! Levy cycles crossing the graph twice.

use super::{homotopic, is_peripheral, pullback, CurveError, CurveWord, Multicurve, Step};
use crate::tischler::TischlerGraph;

/// All curves `((A, a), (B, b))` with `A < B` and distinct edges `a < b`
/// both separating `A` from `B`, in lexicographic order.
pub fn length_two_curves(t: &TischlerGraph) -> Vec<CurveWord> {
    let g = t.graph();
    let faces = g.face_count();
    // Edges shared by each unordered pair of faces.
    let mut shared = vec![Vec::new(); faces * faces];
    for e in 0..g.edge_count() {
        let (d, x) = g.edge_darts(e);
        let (p, q) = (g.face(d).min(g.face(x)), g.face(d).max(g.face(x)));
        shared[p * faces + q].push(e);
    }
    let mut out = Vec::new();
    for a in 0..faces {
        for b in a + 1..faces {
            let es = &shared[a * faces + b];
            for (i, &ea) in es.iter().enumerate() {
                for &eb in &es[i + 1..] {
                    let steps = vec![Step { face: a, edge: ea }, Step { face: b, edge: eb }];
                    out.push(CurveWord::new(t, steps).expect("shared edges make a closed walk"));
                }
            }
        }
    }
    out
}

/// Whether `w` is non-peripheral and has a degree-one pull-back component
/// homotopic to itself.
pub fn certify_levy(t: &TischlerGraph, w: &CurveWord) -> Result<bool, CurveError> {
    if is_peripheral(t, w)? {
        return Ok(false);
    }
    Ok(pullback(t, w)?
        .iter()
        .any(|c| !c.peripheral && c.degree == 1 && homotopic(&c.reduced, w)))
}

/// The least length-two Levy curve, found by pulling back candidates.
/// Graphs with two vertices have no non-peripheral curves at all.
pub fn find_levy_cycle(t: &TischlerGraph) -> Result<Option<Multicurve>, CurveError> {
    if !t.is_hyperbolic() {
        return Ok(None);
    }
    for w in length_two_curves(t) {
        if is_peripheral(t, &w)? {
            continue;
        }
        // A non-peripheral curve through two faces pulls back to itself.
        if !certify_levy(t, &w)? {
            return Err(CurveError::Internal(format!(
                "non-peripheral curve {} is not a Levy cycle",
                super::format_word(&w)
            )));
        }
        return Multicurve::new(t, vec![w]).map(Some);
    }
    Ok(None)
}
