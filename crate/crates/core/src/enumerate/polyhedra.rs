//! Built-in rotation systems of the polyhedra with 32 faces and icosahedral
//! symmetry, and the checks run against them.

use crate::rotation_graph::{parse_graph, GraphError, PlaneGraph};
use crate::tischler::{validate, BranchingData};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::PathBuf;
use thiserror::Error;

/// `(name, embedded text, SHA-256 of the text)`.
pub const POLYHEDRA: [(&str, &str, &str); 3] = [
    (
        "truncated_icosahedron",
        include_str!("../../../../data/polyhedra/truncated_icosahedron.rot"),
        "b3171681425683b34f101a5b1c1a37d31716d6686e34fd5a2ba25380ceac520f",
    ),
    (
        "truncated_dodecahedron",
        include_str!("../../../../data/polyhedra/truncated_dodecahedron.rot"),
        "1ba1f2fdae2607259f3db9a5279559a34ef6778f92adb94b603a7d29c9380fea",
    ),
    (
        "icosidodecahedron",
        include_str!("../../../../data/polyhedra/icosidodecahedron.rot"),
        "8003a0f790e4bd3067b7a08c8dee54940a8dc960561de30b3d525b350fc62631",
    ),
];

#[derive(Debug, Error)]
pub enum PolyhedronError {
    #[error("unknown polyhedron `{0}`")]
    Unknown(String),
    #[error("checksum mismatch for {name}: expected {expected}, found {found}")]
    Checksum {
        name: String,
        expected: String,
        found: String,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("bad rotation system for {name}: {source}")]
    Graph { name: String, source: GraphError },
}

/// Loads a built-in polyhedron, from `$TISCHLER_DATA/polyhedra/<name>.rot`
/// when that variable is set, and checks its digest.
pub fn polyhedron(name: &str) -> Result<PlaneGraph, PolyhedronError> {
    let (_, embedded, digest) = POLYHEDRA
        .iter()
        .find(|p| p.0 == name)
        .ok_or_else(|| PolyhedronError::Unknown(name.to_string()))?;
    let text = match std::env::var_os("TISCHLER_DATA") {
        Some(dir) => {
            let path = PathBuf::from(dir)
                .join("polyhedra")
                .join(format!("{name}.rot"));
            std::fs::read_to_string(&path).map_err(|source| PolyhedronError::Io { path, source })?
        }
        None => embedded.to_string(),
    };
    let found = hex::encode(Sha256::digest(text.as_bytes()));
    if found != *digest {
        return Err(PolyhedronError::Checksum {
            name: name.to_string(),
            expected: digest.to_string(),
            found,
        });
    }
    parse_graph(&text).map_err(|source| PolyhedronError::Graph {
        name: name.to_string(),
        source,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PolyhedronCheck {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub valid: bool,
    pub degree: Option<usize>,
    pub unobstructed: bool,
    pub aut_preserving: usize,
    pub aut_full: usize,
    pub branching: Option<BranchingData>,
    pub expected_branching: BranchingData,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IcosahedralReport {
    pub polyhedra: Vec<PolyhedronCheck>,
    pub pass: bool,
    pub note: String,
}

/// Checks that each candidate is an unobstructed topological Tischler graph of
/// degree 31 with orientation-preserving symmetry group of order 60.
pub fn verify_icosahedral() -> Result<IcosahedralReport, PolyhedronError> {
    let expected = [vec![1; 60], vec![1; 60], vec![2; 30]];
    let mut checks = Vec::new();
    for ((name, _, _), exp) in POLYHEDRA.iter().zip(expected) {
        let g = polyhedron(name)?;
        let t = validate(&g).ok();
        let (aut_preserving, aut_full) = g.automorphism_orders().unwrap_or((0, 0));
        let expected_branching = BranchingData(exp);
        let branching = t.as_ref().map(|t| t.branching_data().clone());
        let unobstructed = t.as_ref().is_some_and(|t| t.is_obstructed().is_none());
        let degree = t.as_ref().map(|t| t.degree());
        let pass = degree == Some(31)
            && unobstructed
            && aut_preserving == 60
            && branching.as_ref() == Some(&expected_branching);
        checks.push(PolyhedronCheck {
            name: name.to_string(),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            faces: g.face_count(),
            valid: t.is_some(),
            degree,
            unobstructed,
            aut_preserving,
            aut_full,
            branching,
            expected_branching,
            pass,
        });
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(IcosahedralReport {
        polyhedra: checks,
        pass,
        note: "checks the three candidates only; that no other graph with 32 faces has \
               icosahedral symmetry rests on the classification of such polyhedra"
            .to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_data_verifies() {
        let r = verify_icosahedral().unwrap();
        for c in &r.polyhedra {
            assert!(c.pass, "{c:?}");
            assert_eq!(c.faces, 32);
            assert_eq!(c.aut_full, 120);
        }
        assert!(r.pass);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(
            polyhedron("cube"),
            Err(PolyhedronError::Unknown(_))
        ));
    }
}
