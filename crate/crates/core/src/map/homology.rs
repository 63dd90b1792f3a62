//! Cycle space, cut space and first Z2 homology of an embedded graph.

use serde::{Deserialize, Serialize};

use super::{CombinatorialMap, MapError};
use crate::gf2::{self, BitVec, EchelonBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Cycle,
    Cut,
}

/// Linearly independent edge-indicator vectors.
#[derive(Clone, Debug)]
pub struct Gf2VectorSpaceBasis {
    pub ambient_dimension: usize,
    pub kind: SpaceKind,
    pub basis_vectors: Vec<BitVec>,
}

impl Gf2VectorSpaceBasis {
    pub fn dimension(&self) -> usize {
        self.basis_vectors.len()
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        EchelonBasis::from_vectors(&self.basis_vectors).contains(v)
    }

    pub fn same_span(&self, other: &Gf2VectorSpaceBasis) -> bool {
        gf2::same_span(&self.basis_vectors, &other.basis_vectors)
    }
}

#[derive(Clone, Debug)]
pub struct CycleCutSpaces {
    pub cycles: Gf2VectorSpaceBasis,
    pub cuts: Gf2VectorSpaceBasis,
    /// Rank of the span of facial boundary cycles.
    pub facial_rank: usize,
    /// First Betti number: `dim Z(G) - rank of facial cycles`.
    pub b1: usize,
}

/// Edge indicator of the boundary walk of face `f`. Edges traversed twice
/// by the same face cancel.
pub fn facial_cycle(map: &CombinatorialMap, f: usize) -> BitVec {
    BitVec::from_indices(map.edge_count(), map.face_darts(f).iter().map(|&d| map.edge_of(d)))
}

/// Edge indicator of the cut around vertex `v`. Loops cancel.
pub fn vertex_cut(map: &CombinatorialMap, v: usize) -> BitVec {
    BitVec::from_indices(map.edge_count(), map.vertex_darts(v).iter().map(|&d| map.edge_of(d)))
}

/// Cycle basis (kernel of the vertex–edge boundary operator), cut basis
/// (row space of the incidence matrix) and the Betti number
/// `b1 = (|E| - |V| + 1) - (|F| - 1)`, which equals twice the genus.
pub fn cycle_cut_spaces(map: &CombinatorialMap) -> Result<CycleCutSpaces, MapError> {
    if !map.is_connected() || map.dart_count() == 0 {
        return Err(MapError::Disconnected(map.component_count()));
    }
    let ne = map.edge_count();
    let cuts: Vec<BitVec> = (0..map.vertex_count()).map(|v| vertex_cut(map, v)).collect();
    let cycles = gf2::nullspace(&cuts, ne);
    let cut_basis = EchelonBasis::from_vectors(&cuts).rows().to_vec();
    let facial: Vec<BitVec> = (0..map.face_count()).map(|f| facial_cycle(map, f)).collect();
    let facial_rank = gf2::rank(&facial);
    let b1 = cycles.len() - facial_rank;
    Ok(CycleCutSpaces {
        cycles: Gf2VectorSpaceBasis {
            ambient_dimension: ne,
            kind: SpaceKind::Cycle,
            basis_vectors: cycles,
        },
        cuts: Gf2VectorSpaceBasis {
            ambient_dimension: ne,
            kind: SpaceKind::Cut,
            basis_vectors: cut_basis,
        },
        facial_rank,
        b1,
    })
}

/// Representatives of the non-trivial Z2 homology classes: cycles that
/// extend the facial span to the full cycle space. There are `b1` of them.
pub fn homology_generators(map: &CombinatorialMap) -> Result<Vec<BitVec>, MapError> {
    let spaces = cycle_cut_spaces(map)?;
    let mut span =
        EchelonBasis::from_vectors(&(0..map.face_count()).map(|f| facial_cycle(map, f)).collect::<Vec<_>>());
    Ok(spaces
        .cycles
        .basis_vectors
        .into_iter()
        .filter(|z| span.insert(z.clone()))
        .collect())
}
