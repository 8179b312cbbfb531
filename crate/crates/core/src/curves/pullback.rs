//! Preimages of curves under the Schottky map of a Tischler graph.
//!
//! The map is the identity on the graph and reflects each face onto the
//! complement of its closure. So a curve's preimage in face `B` is the
//! reflection of everything the curve does outside `B`: each maximal run of
//! the curve between two visits to `B` becomes a chord of `B` joining the
//! same two crossing points. Gluing chords at crossings gives the preimage
//! components.

use super::{is_peripheral, realize, require_hyperbolic, CurveError, CurveWord, Step};
use crate::tischler::TischlerGraph;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackComponent {
    /// The component as traced, crossing the graph where the curve does.
    pub raw: CurveWord,
    /// Bigon-free representative, keys inherited from `raw`.
    pub reduced: CurveWord,
    /// Degree of the map on the component.
    pub degree: usize,
    pub peripheral: bool,
}

impl PullbackComponent {
    pub fn complexity(&self) -> usize {
        self.reduced.len()
    }
}

/// Components of the preimage of `w`, ordered by least crossing index;
/// curves inside untouched faces come last, by face.
pub fn pullback(t: &TischlerGraph, w: &CurveWord) -> Result<Vec<PullbackComponent>, CurveError> {
    require_hyperbolic(t)?;
    let faces = t.graph().face_count();
    let w = if w.is_realized() {
        w.clone()
    } else {
        realize(t, w)?
    };
    let n = w.len();
    if n == 0 {
        // A curve inside one face has one preimage in every other face.
        return Ok((0..faces).filter(|&b| b != w.home()).map(trivial).collect());
    }
    let steps = w.steps();
    let keys = w.keys().expect("realized");

    // Arcs of the curve inside each face, in order along the curve.
    let mut arcs: Vec<Vec<usize>> = vec![Vec::new(); faces];
    for (i, s) in steps.iter().enumerate() {
        arcs[s.face].push(i);
    }
    // next[c]: the chord starting at crossing `c` (the exit of arc `c`) runs
    // through face A_c and ends at the crossing just before the curve's
    // next visit to A_c.
    let mut next = vec![0; n];
    for list in &arcs {
        for (p, &i) in list.iter().enumerate() {
            let j = list[(p + 1) % list.len()];
            next[i] = (j + n - 1) % n;
        }
    }

    let mut comp_of = vec![usize::MAX; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for c0 in 0..n {
        if comp_of[c0] != usize::MAX {
            continue;
        }
        let mut cycle = vec![c0];
        comp_of[c0] = cycles.len();
        let mut c = next[c0];
        while c != c0 {
            comp_of[c] = cycles.len();
            cycle.push(c);
            c = next[c];
        }
        cycles.push(cycle);
    }

    // Degrees: count the preimages of a point on arc 0, one per face B != A_0.
    let a0 = steps[0].face;
    let mut degree = vec![0usize; cycles.len()];
    let mut untouched = Vec::new();
    for (b, list) in arcs.iter().enumerate() {
        if b == a0 {
            continue;
        }
        if list.is_empty() {
            untouched.push(b);
        } else {
            // The run through arc 0 starts after the last visit to B.
            let i = *list.last().unwrap();
            degree[comp_of[i]] += 1;
        }
    }

    let mut out = Vec::with_capacity(cycles.len() + untouched.len());
    for (k, cycle) in cycles.iter().enumerate() {
        let m = cycle.len();
        let raw_steps: Vec<Step> = (0..m)
            .map(|x| Step {
                face: steps[cycle[x]].face,
                edge: steps[cycle[(x + 1) % m]].edge,
            })
            .collect();
        let raw_keys: Vec<u64> = (0..m).map(|x| keys[cycle[(x + 1) % m]]).collect();
        let raw = CurveWord::from_parts(raw_steps, Some(raw_keys), steps[cycle[0]].face);
        let reduced = raw.reduce();
        let peripheral = is_peripheral(t, &reduced)?;
        out.push(PullbackComponent {
            raw,
            reduced,
            degree: degree[k],
            peripheral,
        });
    }
    out.extend(untouched.into_iter().map(trivial));
    Ok(out)
}

fn trivial(face: usize) -> PullbackComponent {
    PullbackComponent {
        raw: CurveWord::empty(face),
        reduced: CurveWord::empty(face),
        degree: 1,
        peripheral: true,
    }
}

/// One step of an orbit under repeated pull-back.
#[derive(Debug, Clone)]
pub struct OrbitStep {
    pub step: usize,
    pub curve: CurveWord,
    pub components: Vec<PullbackComponent>,
}

impl OrbitStep {
    /// Indices of the non-peripheral components.
    pub fn essential(&self) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&i| !self.components[i].peripheral)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "reason")]
pub enum OrbitEnd {
    /// Every component of the last pull-back is peripheral.
    Peripheral,
    /// The last pull-back has several non-peripheral components.
    Branched { count: usize },
    /// The class at step `to` repeats the class at step `from`.
    Cycle { from: usize, to: usize },
    /// The step budget ran out.
    Budget,
}

/// Pulls back `w` repeatedly, each time continuing with the unique
/// non-peripheral component. Stops after `max_steps` pull-backs, or earlier
/// when the choice is not unique or a class repeats.
pub fn iterate_pullback(
    t: &TischlerGraph,
    w: &CurveWord,
    max_steps: usize,
) -> Result<(Vec<OrbitStep>, OrbitEnd), CurveError> {
    let mut curve = w.reduce();
    let mut seen: Vec<CurveWord> = Vec::new();
    let mut orbit = Vec::new();
    for step in 0..max_steps {
        if let Some(from) = seen.iter().position(|u| super::homotopic(u, &curve)) {
            return Ok((orbit, OrbitEnd::Cycle { from, to: step }));
        }
        seen.push(curve.clone());
        let components = pullback(t, &curve)?;
        let s = OrbitStep {
            step,
            curve: curve.clone(),
            components,
        };
        let essential = s.essential();
        let next = essential.first().map(|&i| s.components[i].reduced.clone());
        orbit.push(s);
        match (essential.len(), next) {
            (0, _) => return Ok((orbit, OrbitEnd::Peripheral)),
            (1, Some(c)) => curve = c,
            (count, _) => return Ok((orbit, OrbitEnd::Branched { count })),
        }
    }
    if let Some(from) = seen.iter().position(|u| super::homotopic(u, &curve)) {
        return Ok((
            orbit,
            OrbitEnd::Cycle {
                from,
                to: max_steps,
            },
        ));
    }
    Ok((orbit, OrbitEnd::Budget))
}
