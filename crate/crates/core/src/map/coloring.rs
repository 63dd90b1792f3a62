//! Proper face colorings with two or three colors.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::CombinatorialMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceColor {
    Red,
    Green,
    Blue,
}

impl FaceColor {
    pub const ALL: [FaceColor; 3] = [FaceColor::Red, FaceColor::Green, FaceColor::Blue];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            FaceColor::Red => "red",
            FaceColor::Green => "green",
            FaceColor::Blue => "blue",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceColoring {
    pub palette: u8,
    pub colors: Vec<FaceColor>,
}

impl FaceColoring {
    pub fn color_of(&self, f: usize) -> FaceColor {
        self.colors[f]
    }

    /// Whether faces sharing an edge always differ in color.
    pub fn is_proper(&self, map: &CombinatorialMap) -> bool {
        map.face_adjacency()
            .into_iter()
            .all(|(a, b)| self.colors[a] != self.colors[b])
    }

    pub fn faces_of(&self, c: FaceColor) -> impl Iterator<Item = usize> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter(move |(_, &x)| x == c)
            .map(|(f, _)| f)
    }
}

/// Why no coloring exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColoringWitness {
    /// A face adjacent to itself across an edge.
    SelfAdjacentFace(usize),
    /// A closed walk through an odd number of mutually adjacent faces.
    OddFaceCycle(Vec<usize>),
    /// A face with an odd number of sides in a 3-valent map.
    OddFace(usize),
    /// A vertex whose three incident faces cannot all differ.
    VertexConflict(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("palette {palette} needs a {required}-valent map")]
    WrongValence { palette: u8, required: usize },
    #[error("unsupported palette size {0}")]
    BadPalette(u8),
    #[error("no proper face coloring: {0:?}")]
    NotColorable(ColoringWitness),
}

/// Proper face coloring of a 4-valent map with two colors or of a 3-valent
/// map with three colors.
///
/// Face 0 is always red. For two colors, the coloring of a medial map puts
/// cycle-type faces in one class and cut-type faces in the other.
pub fn face_coloring(map: &CombinatorialMap, palette: u8) -> Result<FaceColoring, ColoringError> {
    let required = match palette {
        2 => 4,
        3 => 3,
        p => return Err(ColoringError::BadPalette(p)),
    };
    if map.face_count() > 0 && map.regular_valence() != Some(required) {
        return Err(ColoringError::WrongValence { palette, required });
    }
    match palette {
        2 => two_coloring(map),
        _ => three_coloring(map),
    }
}

/// Two-coloring by breadth-first search over face adjacency, for any map.
pub(crate) fn two_coloring(map: &CombinatorialMap) -> Result<FaceColoring, ColoringError> {
    let nf = map.face_count();
    let mut adj = vec![Vec::new(); nf];
    for (a, b) in map.face_adjacency() {
        if a == b {
            return Err(ColoringError::NotColorable(ColoringWitness::SelfAdjacentFace(a)));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut color: Vec<Option<bool>> = vec![None; nf];
    let mut parent = vec![usize::MAX; nf];
    for root in 0..nf {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            let cf = color[f].unwrap();
            for &g in &adj[f] {
                match color[g] {
                    None => {
                        color[g] = Some(!cf);
                        parent[g] = f;
                        queue.push_back(g);
                    }
                    Some(cg) if cg == cf => {
                        return Err(ColoringError::NotColorable(ColoringWitness::OddFaceCycle(
                            odd_cycle(&parent, f, g),
                        )));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(FaceColoring {
        palette: 2,
        colors: color
            .into_iter()
            .map(|c| if c.unwrap() { FaceColor::Green } else { FaceColor::Red })
            .collect(),
    })
}

fn odd_cycle(parent: &[usize], a: usize, b: usize) -> Vec<usize> {
    let path = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pa = path(a);
    let pb = path(b);
    // trim the common tail above the lowest common ancestor
    let mut i = pa.len();
    let mut j = pb.len();
    while i > 1 && j > 1 && pa[i - 2] == pb[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pa[..i].to_vec();
    cycle.extend(pb[..j - 1].iter().rev());
    cycle
}

/// Three-coloring of a 3-valent map by propagation.
///
/// Once two adjacent faces are colored every remaining color is forced
/// vertex by vertex, so a contradiction proves no coloring exists.
fn three_coloring(map: &CombinatorialMap) -> Result<FaceColoring, ColoringError> {
    let nf = map.face_count();
    if let Some(f) = (0..nf).find(|&f| map.face_size(f) % 2 == 1) {
        return Err(ColoringError::NotColorable(ColoringWitness::OddFace(f)));
    }
    if nf == 0 {
        return Ok(FaceColoring {
            palette: 3,
            colors: vec![],
        });
    }
    let mut color: Vec<Option<usize>> = vec![None; nf];
    let d0 = map.face_darts(0)[0];
    let f1 = map.face_of(map.alpha(d0));
    if f1 == 0 {
        return Err(ColoringError::NotColorable(ColoringWitness::SelfAdjacentFace(0)));
    }
    color[0] = Some(0);
    color[f1] = Some(1);
    let corner_faces = |v: usize| -> Vec<usize> {
        map.vertex_darts(v).iter().map(|&d| map.face_of(d)).collect()
    };
    let mut queue: VecDeque<usize> = (0..map.vertex_count()).collect();
    let mut queued = vec![true; map.vertex_count()];
    while let Some(v) = queue.pop_front() {
        queued[v] = false;
        let fs = corner_faces(v);
        if fs[0] == fs[1] || fs[1] == fs[2] || fs[0] == fs[2] {
            return Err(ColoringError::NotColorable(ColoringWitness::VertexConflict(v)));
        }
        let known: Vec<usize> = fs.iter().filter_map(|&f| color[f]).collect();
        match known.len() {
            3 => {
                if known[0] == known[1] || known[1] == known[2] || known[0] == known[2] {
                    return Err(ColoringError::NotColorable(ColoringWitness::VertexConflict(v)));
                }
            }
            2 => {
                if known[0] == known[1] {
                    return Err(ColoringError::NotColorable(ColoringWitness::VertexConflict(v)));
                }
                let missing = 3 - known[0] - known[1];
                let f = *fs.iter().find(|&&f| color[f].is_none()).unwrap();
                color[f] = Some(missing);
                for &d in map.face_darts(f) {
                    let w = map.vertex_of(d);
                    if !queued[w] {
                        queued[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            _ => {}
        }
    }
    if color.iter().any(|c| c.is_none()) {
        // only reachable for disconnected maps
        return Err(ColoringError::NotColorable(ColoringWitness::VertexConflict(0)));
    }
    let out = FaceColoring {
        palette: 3,
        colors: color.into_iter().map(|c| FaceColor::ALL[c.unwrap()]).collect(),
    };
    debug_assert!(out.is_proper(map));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{dual, medial, truncate};
    use super::*;

    #[test]
    fn medial_coloring_matches_provenance() {
        let m = medial(&cube());
        let c = face_coloring(&m.map, 2).unwrap();
        assert!(c.is_proper(&m.map));
        for f in 0..m.map.face_count() {
            assert_eq!(c.color_of(f) == FaceColor::Red, m.is_cycle_type(f));
        }
    }

    #[test]
    fn odd_face_blocks_three_coloring() {
        let dodeca = dual(&crate::lattices::icosahedron());
        assert_eq!(
            face_coloring(&dodeca, 3),
            Err(ColoringError::NotColorable(ColoringWitness::OddFace(0)))
        );
    }

    #[test]
    fn truncated_octahedron_is_three_colorable() {
        let t = truncate(&dual(&cube()));
        let c = face_coloring(&t, 3).unwrap();
        assert!(c.is_proper(&t));
    }

    #[test]
    fn wrong_valence() {
        assert_eq!(
            face_coloring(&cube(), 2),
            Err(ColoringError::WrongValence {
                palette: 2,
                required: 4
            })
        );
        assert!(matches!(face_coloring(&cube(), 5), Err(ColoringError::BadPalette(5))));
    }

    #[test]
    fn odd_cycle_witness_on_odd_square_torus() {
        let m = crate::lattices::square_torus_map(3);
        match face_coloring(&m, 2) {
            Err(ColoringError::NotColorable(ColoringWitness::OddFaceCycle(c))) => {
                assert_eq!(c.len() % 2, 1);
                let adj = m.face_adjacency();
                for i in 0..c.len() {
                    let (a, b) = (c[i], c[(i + 1) % c.len()]);
                    assert!(adj.contains(&(a, b)) || adj.contains(&(b, a)));
                }
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
