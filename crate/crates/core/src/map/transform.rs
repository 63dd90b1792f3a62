//! Dual, medial and a few local surgery operations on maps.

use serde::{Deserialize, Serialize};

use super::{CombinatorialMap, MapError};

/// The dual map: faces become vertices and vertices become faces.
///
/// Darts and edges keep their indices; the dual rotation is `phi`. Vertex
/// `i` of the dual is face `i` of the input and face `j` of the dual is
/// vertex `j` of the input.
pub fn dual(map: &CombinatorialMap) -> CombinatorialMap {
    let n = map.dart_count();
    let sigma = (0..n).map(|d| map.phi(d)).collect();
    CombinatorialMap::with_components(n, map.alpha_perm().to_vec(), sigma)
        .expect("dual of a valid map is valid")
}

/// Which feature of the original map a medial face comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceOrigin {
    /// Cycle-type face, same size as the original face.
    Face(usize),
    /// Cut-type face, same size as the original vertex valence.
    Vertex(usize),
}

#[derive(Clone, Debug)]
pub struct MedialMap {
    pub map: CombinatorialMap,
    /// Origin of every medial face, indexed by medial face id.
    pub origin: Vec<FaceOrigin>,
}

impl MedialMap {
    pub fn is_cycle_type(&self, f: usize) -> bool {
        matches!(self.origin[f], FaceOrigin::Face(_))
    }
}

/// The medial map: one 4-valent vertex per original edge, one edge per
/// corner (pair of consecutive darts around a vertex).
///
/// Dart `2d` sits at the medial vertex of `edge_of(d)` and runs along the
/// corner `(d, sigma(d))`; dart `2d + 1` is its partner at the medial vertex
/// of `edge_of(sigma(d))`. Medial vertex `e` is original edge `e`.
pub fn medial(map: &CombinatorialMap) -> MedialMap {
    let n = map.dart_count();
    let mut alpha = vec![0; 2 * n];
    let mut sigma = vec![0; 2 * n];
    for d in 0..n {
        alpha[2 * d] = 2 * d + 1;
        alpha[2 * d + 1] = 2 * d;
        sigma[2 * d] = 2 * map.sigma_inv(d) + 1;
        sigma[2 * d + 1] = 2 * map.alpha(map.sigma(d));
    }
    let out = CombinatorialMap::with_components(2 * n, alpha, sigma)
        .expect("medial of a valid map is valid");
    let origin = (0..out.face_count())
        .map(|f| {
            let d = out.face_darts(f)[0];
            if d.is_multiple_of(2) {
                FaceOrigin::Face(map.face_of(map.alpha(d / 2)))
            } else {
                FaceOrigin::Vertex(map.vertex_of(d / 2))
            }
        })
        .collect();
    MedialMap { map: out, origin }
}

/// Vertex truncation: every dart becomes a 3-valent vertex, every
/// original vertex becomes a face of its valence, and every original face
/// doubles in size.
///
/// New vertex `d` carries darts `3d` (along the original edge), `3d + 1`
/// (towards `sigma(d)`) and `3d + 2` (towards `sigma^-1(d)`).
pub fn truncate(map: &CombinatorialMap) -> CombinatorialMap {
    let n = map.dart_count();
    let mut alpha = vec![0; 3 * n];
    let mut sigma = vec![0; 3 * n];
    for d in 0..n {
        alpha[3 * d] = 3 * map.alpha(d);
        alpha[3 * d + 1] = 3 * map.sigma(d) + 2;
        alpha[3 * map.sigma(d) + 2] = 3 * d + 1;
        sigma[3 * d] = 3 * d + 1;
        sigma[3 * d + 1] = 3 * d + 2;
        sigma[3 * d + 2] = 3 * d;
    }
    CombinatorialMap::with_components(3 * n, alpha, sigma).expect("truncation is valid")
}

/// Removes the given edges. Returns the new map together with the new
/// index of every surviving dart.
///
/// Faces on both sides of a removed edge merge. Fails with
/// [`MapError::Disconnected`] when the removal splits the map.
pub fn delete_edges(
    map: &CombinatorialMap,
    edges: &[usize],
) -> Result<(CombinatorialMap, Vec<Option<usize>>), MapError> {
    let n = map.dart_count();
    let mut removed = vec![false; n];
    for &e in edges {
        for d in map.edge_darts(e) {
            removed[d] = true;
        }
    }
    let mut new_id = vec![None; n];
    let mut next = 0;
    for d in 0..n {
        if !removed[d] {
            new_id[d] = Some(next);
            next += 1;
        }
    }
    let mut alpha = vec![0; next];
    let mut sigma = vec![0; next];
    for d in 0..n {
        let Some(nd) = new_id[d] else { continue };
        alpha[nd] = new_id[map.alpha(d)].unwrap();
        let mut s = map.sigma(d);
        while removed[s] {
            s = map.sigma(s);
        }
        sigma[nd] = new_id[s].unwrap();
    }
    let out = CombinatorialMap::with_components(next, alpha, sigma)?;
    if out.component_count() > 1 {
        return Err(MapError::Disconnected(out.component_count()));
    }
    Ok((out, new_id))
}
