//! Graphs embedded in closed orientable surfaces, stored as combinatorial maps.
//!
//! A map is a pair of permutations on a finite set of darts (half-edges):
//! `alpha` is a fixed-point-free involution pairing the two darts of each
//! edge and `sigma` rotates counterclockwise around each vertex. Vertices,
//! edges and faces are the orbits of `sigma`, `alpha` and
//! `phi = sigma ∘ alpha` respectively. Every module in this crate uses the
//! same face convention, so orbit numbering is reproducible across
//! transforms.
//!
//! Orbits are numbered by their smallest dart, and each orbit's dart list
//! starts at that smallest dart.

mod coloring;
mod homology;
mod transform;

pub use coloring::{face_coloring, ColoringError, ColoringWitness, FaceColor, FaceColoring};
pub use homology::{cycle_cut_spaces, homology_generators, CycleCutSpaces, Gf2VectorSpaceBasis, SpaceKind};
pub use transform::{delete_edges, dual, medial, truncate, FaceOrigin, MedialMap};

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("dart count {0} is odd")]
    OddDartCount(usize),
    #[error("{which} has length {len}, expected {expected}")]
    LengthMismatch {
        which: &'static str,
        len: usize,
        expected: usize,
    },
    #[error("{which} is not a permutation (value {value} at dart {dart})")]
    NotPermutation {
        which: &'static str,
        dart: usize,
        value: usize,
    },
    #[error("alpha is not an involution at dart {0}")]
    NotInvolution(usize),
    #[error("alpha fixes dart {0}")]
    FixedPointEdge(usize),
    #[error("map has {0} connected components")]
    Disconnected(usize),
    #[error("{0}")]
    Invalid(String),
}

/// A rotation system on `darts` darts describing a graph cellularly
/// embedded in an orientable surface.
#[derive(Clone, Debug)]
pub struct CombinatorialMap {
    alpha: Vec<usize>,
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    vertex_of: Vec<usize>,
    edge_of: Vec<usize>,
    face_of: Vec<usize>,
    vertices: Vec<Vec<usize>>,
    edges: Vec<[usize; 2]>,
    faces: Vec<Vec<usize>>,
    components: usize,
    /// Free-form annotations carried through serialization.
    pub meta: BTreeMap<String, Value>,
}

impl PartialEq for CombinatorialMap {
    /// Structural equality of the permutations; annotations are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.alpha == other.alpha && self.sigma == other.sigma
    }
}

impl Eq for CombinatorialMap {}

fn check_permutation(which: &'static str, p: &[usize]) -> Result<(), MapError> {
    let mut seen = vec![false; p.len()];
    for (dart, &value) in p.iter().enumerate() {
        if value >= p.len() || seen[value] {
            return Err(MapError::NotPermutation { which, dart, value });
        }
        seen[value] = true;
    }
    Ok(())
}

/// Orbits of a permutation, numbered by smallest element.
fn orbits(p: &[usize]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut id = vec![usize::MAX; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if id[start] != usize::MAX {
            continue;
        }
        let k = out.len();
        let mut orbit = Vec::new();
        let mut d = start;
        loop {
            id[d] = k;
            orbit.push(d);
            d = p[d];
            if d == start {
                break;
            }
        }
        out.push(orbit);
    }
    (id, out)
}

/// Validates and builds a connected map.
pub fn build_map(
    darts: usize,
    alpha: Vec<usize>,
    sigma: Vec<usize>,
) -> Result<CombinatorialMap, MapError> {
    let m = CombinatorialMap::with_components(darts, alpha, sigma)?;
    if m.components > 1 {
        return Err(MapError::Disconnected(m.components));
    }
    Ok(m)
}

impl CombinatorialMap {
    /// Builds a connected map from its two permutations.
    pub fn new(alpha: Vec<usize>, sigma: Vec<usize>) -> Result<Self, MapError> {
        build_map(alpha.len(), alpha, sigma)
    }

    /// Builds a map that may have several connected components.
    pub fn with_components(
        darts: usize,
        alpha: Vec<usize>,
        sigma: Vec<usize>,
    ) -> Result<Self, MapError> {
        for (which, p) in [("alpha", &alpha), ("sigma", &sigma)] {
            if p.len() != darts {
                return Err(MapError::LengthMismatch {
                    which,
                    len: p.len(),
                    expected: darts,
                });
            }
        }
        check_permutation("alpha", &alpha)?;
        check_permutation("sigma", &sigma)?;
        for d in 0..darts {
            if alpha[d] == d {
                return Err(MapError::FixedPointEdge(d));
            }
            if alpha[alpha[d]] != d {
                return Err(MapError::NotInvolution(d));
            }
        }
        if darts % 2 == 1 {
            return Err(MapError::OddDartCount(darts));
        }
        let phi: Vec<usize> = (0..darts).map(|d| sigma[alpha[d]]).collect();
        let (vertex_of, vertices) = orbits(&sigma);
        let (edge_of, edge_orbits) = orbits(&alpha);
        let (face_of, faces) = orbits(&phi);
        let edges = edge_orbits.iter().map(|o| [o[0], o[1]]).collect();
        let mut sigma_inv = vec![0; darts];
        for (d, &s) in sigma.iter().enumerate() {
            sigma_inv[s] = d;
        }
        let mut m = CombinatorialMap {
            alpha,
            sigma,
            sigma_inv,
            vertex_of,
            edge_of,
            face_of,
            vertices,
            edges,
            faces,
            components: 0,
            meta: BTreeMap::new(),
        };
        m.components = m.count_components();
        Ok(m)
    }

    /// The map with no darts.
    pub fn empty() -> Self {
        Self::with_components(0, vec![], vec![]).expect("empty map is valid")
    }

    fn count_components(&self) -> usize {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(d) = stack.pop() {
                for e in [self.alpha[d], self.sigma[d]] {
                    if !seen[e] {
                        seen[e] = true;
                        stack.push(e);
                    }
                }
            }
        }
        count
    }

    pub fn dart_count(&self) -> usize {
        self.alpha.len()
    }
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }
    pub fn component_count(&self) -> usize {
        self.components
    }
    pub fn is_connected(&self) -> bool {
        self.components <= 1
    }

    pub fn alpha(&self, d: usize) -> usize {
        self.alpha[d]
    }
    pub fn sigma(&self, d: usize) -> usize {
        self.sigma[d]
    }
    pub fn sigma_inv(&self, d: usize) -> usize {
        self.sigma_inv[d]
    }
    /// Face successor `sigma(alpha(d))`.
    pub fn phi(&self, d: usize) -> usize {
        self.sigma[self.alpha[d]]
    }
    pub fn alpha_perm(&self) -> &[usize] {
        &self.alpha
    }
    pub fn sigma_perm(&self) -> &[usize] {
        &self.sigma
    }

    pub fn vertex_of(&self, d: usize) -> usize {
        self.vertex_of[d]
    }
    pub fn edge_of(&self, d: usize) -> usize {
        self.edge_of[d]
    }
    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    /// Darts around vertex `v` in counterclockwise order.
    pub fn vertex_darts(&self, v: usize) -> &[usize] {
        &self.vertices[v]
    }
    /// The two darts of edge `e`.
    pub fn edge_darts(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }
    /// Darts of face `f` in facial-cycle order.
    pub fn face_darts(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }
    /// Vertices visited by the facial walk of `f`, one per dart.
    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        self.faces[f].iter().map(|&d| self.vertex_of[d]).collect()
    }
    /// Endpoints of edge `e`.
    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        let [a, b] = self.edges[e];
        (self.vertex_of[a], self.vertex_of[b])
    }

    pub fn valence(&self, v: usize) -> usize {
        self.vertices[v].len()
    }
    pub fn face_size(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    /// `|V_n|` for every valence `n` that occurs.
    pub fn valence_profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for v in &self.vertices {
            *out.entry(v.len()).or_insert(0) += 1;
        }
        out
    }

    /// `|F_n|` for every face size `n` that occurs.
    pub fn face_size_profile(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for f in &self.faces {
            *out.entry(f.len()).or_insert(0) += 1;
        }
        out
    }

    /// The common valence, if every vertex has the same one.
    pub fn regular_valence(&self) -> Option<usize> {
        let p = self.valence_profile();
        (p.len() == 1).then(|| *p.keys().next().unwrap())
    }

    pub fn has_loops(&self) -> bool {
        self.edges
            .iter()
            .any(|&[a, b]| self.vertex_of[a] == self.vertex_of[b])
    }

    pub fn has_multi_edges(&self) -> bool {
        let mut seen = BTreeSet::new();
        for &[a, b] in &self.edges {
            let (u, v) = (self.vertex_of[a], self.vertex_of[b]);
            if !seen.insert((u.min(v), u.max(v))) {
                return true;
            }
        }
        false
    }

    /// No self-loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        !self.has_loops() && !self.has_multi_edges()
    }

    /// `|V| - |E| + |F|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Euler characteristic and genus of the surface of a connected map.
    pub fn euler_genus(&self) -> Result<(i64, usize), MapError> {
        if self.components != 1 {
            return Err(MapError::Disconnected(self.components));
        }
        let chi = self.euler_characteristic();
        debug_assert!(chi % 2 == 0 && chi <= 2);
        Ok((chi, ((2 - chi) / 2) as usize))
    }

    /// Genus, panicking on disconnected maps.
    pub fn genus(&self) -> usize {
        self.euler_genus().expect("genus of a connected map").1
    }

    /// Orientation-preserving isomorphism test for connected maps.
    ///
    /// Returns the dart bijection `self -> other` when one exists.
    pub fn isomorphism(&self, other: &CombinatorialMap) -> Option<Vec<usize>> {
        let n = self.dart_count();
        if n != other.dart_count()
            || self.vertex_count() != other.vertex_count()
            || self.face_count() != other.face_count()
            || self.valence_profile() != other.valence_profile()
            || self.face_size_profile() != other.face_size_profile()
        {
            return None;
        }
        if n == 0 {
            return Some(vec![]);
        }
        if !self.is_connected() || !other.is_connected() {
            return None;
        }
        'target: for t in 0..n {
            let mut fwd = vec![usize::MAX; n];
            let mut used = vec![false; n];
            fwd[0] = t;
            used[t] = true;
            let mut stack = vec![0];
            while let Some(d) = stack.pop() {
                let img = fwd[d];
                for (a, b) in [
                    (self.alpha[d], other.alpha[img]),
                    (self.sigma[d], other.sigma[img]),
                ] {
                    if fwd[a] == usize::MAX {
                        if used[b] {
                            continue 'target;
                        }
                        fwd[a] = b;
                        used[b] = true;
                        stack.push(a);
                    } else if fwd[a] != b {
                        continue 'target;
                    }
                }
            }
            return Some(fwd);
        }
        None
    }

    pub fn is_isomorphic(&self, other: &CombinatorialMap) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Faces adjacent across each edge: `(face_of(d), face_of(alpha(d)))`.
    pub fn face_adjacency(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .map(|&[a, b]| (self.face_of[a], self.face_of[b]))
            .collect()
    }

    /// Builds a map from oriented polygons given as vertex-label cycles.
    ///
    /// Every directed edge `u -> v` must appear in exactly one polygon and
    /// its reverse in exactly one other position. Labels are arbitrary
    /// integers; the graph must be free of parallel edges and loops.
    pub fn from_faces(polygons: &[Vec<usize>]) -> Result<Self, MapError> {
        let mut dart_id: HashMap<(usize, usize), usize> = HashMap::new();
        let mut ends = Vec::new();
        for poly in polygons {
            let k = poly.len();
            for i in 0..k {
                let key = (poly[i], poly[(i + 1) % k]);
                if key.0 == key.1 {
                    return Err(MapError::Invalid(format!("loop at vertex {}", key.0)));
                }
                if dart_id.insert(key, ends.len()).is_some() {
                    return Err(MapError::Invalid(format!(
                        "directed edge {:?} appears twice",
                        key
                    )));
                }
                ends.push(key);
            }
        }
        let n = ends.len();
        let mut alpha = vec![0; n];
        for (d, &(u, v)) in ends.iter().enumerate() {
            alpha[d] = *dart_id
                .get(&(v, u))
                .ok_or_else(|| MapError::Invalid(format!("edge {u}->{v} has no reverse")))?;
        }
        let mut sigma = vec![usize::MAX; n];
        for poly in polygons {
            let k = poly.len();
            for i in 0..k {
                let (u, v, w) = (poly[i], poly[(i + 1) % k], poly[(i + 2) % k]);
                // phi(u->v) = v->w, and phi = sigma ∘ alpha.
                sigma[dart_id[&(v, u)]] = dart_id[&(v, w)];
            }
        }
        Self::new(alpha, sigma)
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn tetrahedron_counts() {
        let t = tetrahedron();
        assert_eq!(t.dart_count(), 12);
        assert_eq!(
            (t.vertex_count(), t.edge_count(), t.face_count()),
            (4, 6, 4)
        );
        assert_eq!(t.euler_genus().unwrap(), (2, 0));
        assert_eq!(t.regular_valence(), Some(3));
        assert!(t.is_simple());
    }

    #[test]
    fn self_loop_map() {
        // one vertex, one loop: sigma is a 2-cycle on the two darts
        let m = build_map(2, vec![1, 0], vec![1, 0]).unwrap();
        assert_eq!((m.vertex_count(), m.edge_count()), (1, 1));
        assert!(m.has_loops());
        assert_eq!(m.face_count(), 2);
        assert_eq!(m.euler_genus().unwrap(), (2, 0));
    }

    #[test]
    fn rejects_bad_alpha() {
        assert_eq!(
            build_map(2, vec![0, 1], vec![1, 0]),
            Err(MapError::FixedPointEdge(0))
        );
        assert_eq!(
            build_map(3, vec![1, 2, 0], vec![0, 1, 2]),
            Err(MapError::NotInvolution(0))
        );
        assert!(matches!(
            build_map(2, vec![1, 1], vec![0, 1]),
            Err(MapError::NotPermutation { which: "alpha", .. })
        ));
        assert!(matches!(
            build_map(2, vec![1, 0], vec![0]),
            Err(MapError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn rejects_disconnected() {
        // two disjoint loops
        let alpha = vec![1, 0, 3, 2];
        let sigma = vec![1, 0, 3, 2];
        assert_eq!(
            build_map(4, alpha.clone(), sigma.clone()),
            Err(MapError::Disconnected(2))
        );
        let m = CombinatorialMap::with_components(4, alpha, sigma).unwrap();
        assert_eq!(m.component_count(), 2);
        assert_eq!(m.euler_genus(), Err(MapError::Disconnected(2)));
    }

    #[test]
    fn isomorphism_detects_relabeling() {
        let c = cube();
        // conjugate by a dart permutation
        let n = c.dart_count();
        let perm: Vec<usize> = (0..n).map(|d| (d * 7 + 3) % n).collect();
        let mut alpha = vec![0; n];
        let mut sigma = vec![0; n];
        for d in 0..n {
            alpha[perm[d]] = perm[c.alpha(d)];
            sigma[perm[d]] = perm[c.sigma(d)];
        }
        let c2 = CombinatorialMap::new(alpha, sigma).unwrap();
        assert!(c.is_isomorphic(&c2));
        assert!(!c.is_isomorphic(&tetrahedron()));
    }

    #[test]
    fn face_walk_follows_polygons() {
        let t = tetrahedron();
        for f in 0..t.face_count() {
            assert_eq!(t.face_size(f), 3);
            let vs = t.face_vertices(f);
            let set: BTreeSet<_> = vs.iter().collect();
            assert_eq!(set.len(), 3);
        }
    }
}
