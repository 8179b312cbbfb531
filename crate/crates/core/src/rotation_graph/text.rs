//! Plain-text, JSON and DOT representations.
//!
//! The text format lists one vertex per line with its darts in
//! counterclockwise order, and optionally the edge pairing:
//!
//! ```text
//! # K4
//! V 0: 0 2 4
//! V 1: 1 6 8
//! E: (0,1) (2,3) ...
//! ```
//!
//! Without an `E:` line, darts `2k` and `2k + 1` form edge `k`.

use super::{CanonicalCode, GraphError, Orientation, PlaneGraph};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_dart(tok: &str, line: usize) -> Result<usize, GraphError> {
    tok.trim()
        .parse()
        .map_err(|_| parse_err(line, format!("expected a dart number, found `{tok}`")))
}

/// Parses the text format into a rotation system.
pub fn parse_graph(src: &str) -> Result<PlaneGraph, GraphError> {
    let mut rotations: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut pairs: Option<Vec<(usize, usize)>> = None;
    for (i, raw) in src.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("V") {
            let (id, darts) = rest
                .split_once(':')
                .ok_or_else(|| parse_err(lineno, "vertex line needs `:`"))?;
            let id: usize = id
                .trim()
                .parse()
                .map_err(|_| parse_err(lineno, "bad vertex id"))?;
            let darts = darts
                .split_whitespace()
                .map(|t| parse_dart(t, lineno))
                .collect::<Result<Vec<_>, _>>()?;
            if darts.is_empty() {
                return Err(parse_err(lineno, "vertex without darts"));
            }
            rotations.push((id, darts));
        } else if let Some(rest) = line.strip_prefix("E:") {
            let list = pairs.get_or_insert_with(Vec::new);
            for tok in rest.split(')') {
                let tok = tok.trim();
                if tok.is_empty() {
                    continue;
                }
                let inner = tok.strip_prefix('(').ok_or_else(|| {
                    parse_err(lineno, format!("expected `(d,d')`, found `{tok}`"))
                })?;
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| parse_err(lineno, "edge needs two darts"))?;
                list.push((parse_dart(a, lineno)?, parse_dart(b, lineno)?));
            }
        } else {
            return Err(parse_err(lineno, format!("unrecognised line `{line}`")));
        }
    }
    if rotations.is_empty() {
        return Err(GraphError::Empty);
    }
    rotations.sort_by_key(|(id, _)| *id);
    for w in rotations.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(parse_err(0, format!("vertex {} listed twice", w[0].0)));
        }
    }
    let n: usize = rotations.iter().map(|(_, r)| r.len()).sum();
    let mut sigma = vec![usize::MAX; n];
    for (_, rot) in &rotations {
        for (i, &d) in rot.iter().enumerate() {
            if d >= n || sigma[d] != usize::MAX {
                return Err(GraphError::MalformedPermutation(format!(
                    "dart {d} is out of range 0..{n} or listed twice"
                )));
            }
            sigma[d] = rot[(i + 1) % rot.len()];
        }
    }
    let alpha = match pairs {
        None => {
            if !n.is_multiple_of(2) {
                return Err(GraphError::MalformedPermutation(
                    "odd number of darts".into(),
                ));
            }
            (0..n).map(|d| d ^ 1).collect()
        }
        Some(list) => {
            let mut alpha = vec![usize::MAX; n];
            for (a, b) in list {
                if a >= n || b >= n || alpha[a] != usize::MAX || alpha[b] != usize::MAX {
                    return Err(GraphError::MalformedPermutation(format!(
                        "edge ({a},{b}) reuses or exceeds darts"
                    )));
                }
                if a == b {
                    return Err(GraphError::AlphaFixedPoint(a));
                }
                alpha[a] = b;
                alpha[b] = a;
            }
            if let Some(d) = alpha.iter().position(|&x| x == usize::MAX) {
                return Err(GraphError::MalformedPermutation(format!(
                    "dart {d} belongs to no edge"
                )));
            }
            alpha
        }
    };
    PlaneGraph::new(alpha, sigma)
}

/// Serialized form of a rotation system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub darts: usize,
    pub alpha: Vec<usize>,
    pub sigma: Vec<usize>,
    pub canonical_code: Option<CanonicalCode>,
}

impl From<&PlaneGraph> for GraphJson {
    fn from(g: &PlaneGraph) -> Self {
        GraphJson {
            darts: g.dart_count(),
            alpha: g.alpha_slice().to_vec(),
            sigma: g.sigma_slice().to_vec(),
            canonical_code: g.try_canonical_code(Orientation::Preserve).ok(),
        }
    }
}

impl TryFrom<GraphJson> for PlaneGraph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        if j.alpha.len() != j.darts {
            return Err(GraphError::MalformedPermutation(
                "dart count mismatch".into(),
            ));
        }
        PlaneGraph::new(j.alpha, j.sigma)
    }
}

impl PlaneGraph {
    /// Text format, always with an explicit `E:` line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in 0..self.vertex_count() {
            let darts: Vec<String> = self.vertex_darts(v).iter().map(|d| d.to_string()).collect();
            let _ = writeln!(s, "V {v}: {}", darts.join(" "));
        }
        let edges: Vec<String> = (0..self.edge_count())
            .map(|e| {
                let (a, b) = self.edge_darts(e);
                format!("({a},{b})")
            })
            .collect();
        let _ = writeln!(s, "E: {}", edges.join(" "));
        s
    }

    /// Graphviz rendering. Vertex ids are node names and each edge is labeled
    /// with its id; the faces are listed as comments.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for v in 0..self.vertex_count() {
            let _ = writeln!(s, "  v{v} [label=\"{v}\"];");
        }
        for e in 0..self.edge_count() {
            let (u, v) = self.edge_endpoints(e);
            let _ = writeln!(s, "  v{u} -- v{v} [label=\"e{e}\"];");
        }
        for (f, walk) in self.faces().iter().enumerate() {
            let edges: Vec<String> = walk.edges.iter().map(|e| format!("e{e}")).collect();
            let _ = writeln!(s, "  // face {f}: {}", edges.join(" "));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson::from(self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::library::*;
    use super::*;

    #[test]
    fn text_round_trip() {
        for g in [k4(), fig6(), theta(4), cube()] {
            let h = parse_graph(&g.to_text()).unwrap();
            assert_eq!(h, g);
        }
    }

    #[test]
    fn implicit_edges() {
        let g = parse_graph("# theta\nV 0: 0 2 4\nV 1: 1 5 3\n").unwrap();
        assert_eq!(
            (g.vertex_count(), g.edge_count(), g.face_count()),
            (2, 3, 3)
        );
    }

    #[test]
    fn parse_errors_carry_line() {
        match parse_graph("V 0: 0 1\nX nonsense\n") {
            Err(GraphError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_graph("V 0: 0 0"),
            Err(GraphError::MalformedPermutation(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let g = prism();
        let j = serde_json::to_string(&g.to_json()).unwrap();
        let back: GraphJson = serde_json::from_str(&j).unwrap();
        assert_eq!(
            back.canonical_code,
            Some(g.canonical_code(Orientation::Preserve))
        );
        assert_eq!(PlaneGraph::try_from(back).unwrap(), g);
    }

    #[test]
    fn dot_mentions_every_edge() {
        let dot = k4().to_dot("k4");
        assert_eq!(dot.matches(" -- ").count(), 6);
        assert_eq!(dot.matches("// face").count(), 4);
    }
}
