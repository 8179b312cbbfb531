//! Exhaustive catalogs of topological Tischler graphs and trees.

mod ears;
mod polyhedra;
mod trees;

pub use ears::EnumerationError;
pub use polyhedra::{
    polyhedron, verify_icosahedral, IcosahedralReport, PolyhedronCheck, PolyhedronError, POLYHEDRA,
};
pub use trees::{enumerate_trees, partitions, trees_of_degree};

use crate::rotation_graph::{CanonicalCode, Orientation, PlaneGraph};
use crate::tischler::{validate, BranchingData, ObstructionWitness, TischlerGraph};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Default bound on the number of candidate graphs examined.
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub canonical_code: CanonicalCode,
    pub branching: BranchingData,
    pub vertices: usize,
    pub edges: usize,
    pub obstructed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<ObstructionWitness>,
    pub aut_preserving: usize,
    pub aut_full: usize,
    pub antipolynomial: bool,
    /// Index of the mirror-image entry (itself if achiral).
    pub mirror: usize,
}

impl CatalogEntry {
    /// The representative graph, in canonical labels.
    pub fn graph(&self) -> PlaneGraph {
        PlaneGraph::from_canonical_code(&self.canonical_code).expect("catalog codes decode")
    }

    pub fn tischler(&self) -> TischlerGraph {
        validate(&self.graph()).expect("catalog entries are valid")
    }

    pub fn is_chiral(&self, index: usize) -> bool {
        self.mirror != index
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub degree: usize,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Builds a catalog from graphs that are pairwise inequivalent.
    pub fn from_graphs(degree: usize, graphs: Vec<PlaneGraph>) -> Catalog {
        let mut rows: Vec<(BranchingData, CanonicalCode, TischlerGraph)> = graphs
            .into_par_iter()
            .map(|g| {
                let t = validate(&g).expect("generated graph is a Tischler graph");
                (t.branching_data().clone(), t.canonical_code(), t)
            })
            .collect();
        rows.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        let index: HashMap<CanonicalCode, usize> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.1.clone(), i))
            .collect();
        assert_eq!(index.len(), rows.len(), "duplicate canonical codes");
        let entries = rows
            .into_par_iter()
            .map(|(branching, code, t)| {
                let g = PlaneGraph::from_canonical_code(&code).expect("code decodes");
                let t = validate(&g).unwrap_or(t);
                let (aut_preserving, aut_full) = g.automorphism_orders().expect("connected");
                let mirror_code = g.mirror().canonical_code(Orientation::Preserve);
                let witness = t.is_obstructed();
                CatalogEntry {
                    canonical_code: code,
                    branching,
                    vertices: g.vertex_count(),
                    edges: g.edge_count(),
                    obstructed: witness.is_some(),
                    witness,
                    aut_preserving,
                    aut_full,
                    antipolynomial: t.is_antipolynomial(),
                    mirror: index.get(&mirror_code).copied().unwrap_or(usize::MAX),
                }
            })
            .collect::<Vec<_>>();
        Catalog { degree, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Mirror pairing is a total involution.
    pub fn mirror_pairing_ok(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, e)| e.mirror < self.entries.len() && self.entries[e.mirror].mirror == i)
    }

    pub fn filter(&self, keep: impl Fn(&CatalogEntry) -> bool) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| keep(e)).collect()
    }

    pub fn find(&self, code: &CanonicalCode) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| &e.canonical_code == code)
    }

    /// Number of entries per branching data.
    pub fn histogram<'a>(
        &self,
        entries: impl IntoIterator<Item = &'a CatalogEntry>,
    ) -> Vec<(BranchingData, usize)> {
        let mut h: Vec<(BranchingData, usize)> = Vec::new();
        for e in entries {
            match h.iter_mut().find(|(b, _)| *b == e.branching) {
                Some(slot) => slot.1 += 1,
                None => h.push((e.branching.clone(), 1)),
            }
        }
        h.sort();
        h
    }
}

/// Every topological Tischler graph with `d + 1` faces, one per
/// orientation-preserving class.
pub fn enumerate_graphs(d: usize) -> Result<Catalog, EnumerationError> {
    enumerate_graphs_with_cap(d, DEFAULT_CAP)
}

pub fn enumerate_graphs_with_cap(d: usize, cap: u64) -> Result<Catalog, EnumerationError> {
    let graphs = ears::generate(d, cap)?;
    Ok(Catalog::from_graphs(d, graphs.into_values().collect()))
}
