//! Planar patches with boundaries: a rectangular square-lattice patch with
//! weight-two boundary faces, and a triangular 6.6.6 patch.

use std::collections::{BTreeMap, HashMap};

use super::LatticeError;
use crate::map::{CombinatorialMap, FaceColor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatchFaceKind {
    /// A bulk plaquette.
    Plaquette,
    /// A two-sided face on a boundary edge carrying a weight-two stabilizer.
    Digon,
    /// The outer face; it carries no stabilizer.
    Outer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PatchFace {
    pub kind: PatchFaceKind,
    pub color: Option<FaceColor>,
}

/// A planar map with its face roles and colors.
#[derive(Clone, Debug)]
pub struct PatchMap {
    pub map: CombinatorialMap,
    pub faces: Vec<PatchFace>,
    pub outer_face: usize,
}

/// Rectangular square-lattice patch with `rows × cols` vertices.
///
/// `segments` lists boundary colors clockwise from the top-left corner as
/// `(color, number of perimeter edges)`. Square `(x, y)` is red when
/// `x + y` is even and green otherwise. A boundary edge whose square has a
/// different color than its segment gets a digon of the segment's color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KtcPatchSpec {
    pub rows: usize,
    pub cols: usize,
    pub segments: Vec<(FaceColor, usize)>,
}

impl KtcPatchSpec {
    /// Red top and bottom sides, green left and right sides.
    pub fn four_boundaries(rows: usize, cols: usize) -> Self {
        KtcPatchSpec {
            rows,
            cols,
            segments: vec![
                (FaceColor::Red, cols - 1),
                (FaceColor::Green, rows - 1),
                (FaceColor::Red, cols - 1),
                (FaceColor::Green, rows - 1),
            ],
        }
    }

    /// The top and left sides are each split into a red and a green part.
    pub fn six_boundaries(rows: usize, cols: usize) -> Self {
        // split after top edge s - 1, whose square must be red
        let mut s = (cols - 1) / 2;
        if (s + rows + 1) % 2 == 1 {
            s += 1;
        }
        // split after left edge t - 1 (counted upwards), t odd
        let mut t = (rows - 1) / 2;
        if t.is_multiple_of(2) {
            t += 1;
        }
        KtcPatchSpec {
            rows,
            cols,
            segments: vec![
                (FaceColor::Red, s),
                (FaceColor::Green, cols - 1 - s),
                (FaceColor::Red, rows - 1),
                (FaceColor::Green, cols - 1),
                (FaceColor::Red, t),
                (FaceColor::Green, rows - 1 - t),
            ],
        }
    }

    fn perimeter(&self) -> usize {
        2 * (self.rows - 1) + 2 * (self.cols - 1)
    }
}

fn patch_error(constraint: impl Into<String>) -> LatticeError {
    LatticeError::ConstraintViolation {
        family: "planar_ktc_patch",
        constraint: constraint.into(),
    }
}

/// Builds a map from vertex positions and edges. Each edge is drawn from
/// `u` towards `v + bend` and from `v` towards `u + bend`; darts are
/// `2e` (at `u`) and `2e + 1` (at `v`). Also returns the map vertex of
/// every input point.
fn map_from_geometry(
    pos: &[(f64, f64)],
    edges: &[(usize, usize, (f64, f64))],
) -> (CombinatorialMap, Vec<usize>) {
    let mut at: Vec<Vec<(f64, usize)>> = vec![Vec::new(); pos.len()];
    let mut alpha = vec![0; 2 * edges.len()];
    for (e, &(u, v, b)) in edges.iter().enumerate() {
        alpha[2 * e] = 2 * e + 1;
        alpha[2 * e + 1] = 2 * e;
        let angle = |from: usize, to: usize| {
            (pos[to].1 + b.1 - pos[from].1).atan2(pos[to].0 + b.0 - pos[from].0)
        };
        at[u].push((angle(u, v), 2 * e));
        at[v].push((angle(v, u), 2 * e + 1));
    }
    let mut sigma = vec![0; 2 * edges.len()];
    for ds in &mut at {
        ds.sort_by(|a, b| a.0.total_cmp(&b.0));
        for i in 0..ds.len() {
            sigma[ds[i].1] = ds[(i + 1) % ds.len()].1;
        }
    }
    let map = CombinatorialMap::new(alpha, sigma).expect("patch geometry is a valid map");
    let vertex = at.iter().map(|ds| map.vertex_of(ds[0].1)).collect();
    (map, vertex)
}

fn sorted_vertex_set(map: &CombinatorialMap, f: usize) -> Vec<usize> {
    let mut vs = map.face_vertices(f);
    vs.sort_unstable();
    vs.dedup();
    vs
}

/// Builds the rectangular patch; every vertex must end up 3- or 4-valent.
pub fn ktc_patch_map(spec: &KtcPatchSpec) -> Result<PatchMap, LatticeError> {
    let (r, c) = (spec.rows, spec.cols);
    if r < 2 || c < 2 {
        return Err(patch_error("needs at least 2 × 2 vertices"));
    }
    if spec.segments.iter().map(|s| s.1).sum::<usize>() != spec.perimeter() {
        return Err(patch_error(format!(
            "segment lengths must sum to the perimeter {}",
            spec.perimeter()
        )));
    }
    let ns = spec.segments.len();
    if ns < 2 || ns % 2 == 1 {
        return Err(patch_error("needs an even number of at least 2 boundaries"));
    }
    if spec.segments.iter().any(|s| s.1 == 0 || s.0 == FaceColor::Blue) {
        return Err(patch_error("segments need positive length and colors red or green"));
    }
    for i in 0..ns {
        if spec.segments[i].0 == spec.segments[(i + 1) % ns].0 {
            return Err(patch_error("adjacent boundaries must alternate colors"));
        }
    }
    let vid = |x: usize, y: usize| y * c + x;
    let pos: Vec<(f64, f64)> = (0..r * c).map(|v| ((v % c) as f64, (v / c) as f64)).collect();
    let square_color = |x: usize, y: usize| {
        if (x + y).is_multiple_of(2) {
            FaceColor::Red
        } else {
            FaceColor::Green
        }
    };
    let mut edges: Vec<(usize, usize, (f64, f64))> = Vec::new();
    for y in 0..r {
        for x in 0..c {
            if x + 1 < c {
                edges.push((vid(x, y), vid(x + 1, y), (0.0, 0.0)));
            }
            if y + 1 < r {
                edges.push((vid(x, y), vid(x, y + 1), (0.0, 0.0)));
            }
        }
    }
    // perimeter edges clockwise from the top-left corner:
    // (u, v, square, outward normal)
    let mut perimeter = Vec::new();
    for x in 0..c - 1 {
        perimeter.push((vid(x, r - 1), vid(x + 1, r - 1), (x, r - 2), (0.0, 1.0)));
    }
    for y in (0..r - 1).rev() {
        perimeter.push((vid(c - 1, y + 1), vid(c - 1, y), (c - 2, y), (1.0, 0.0)));
    }
    for x in (0..c - 1).rev() {
        perimeter.push((vid(x + 1, 0), vid(x, 0), (x, 0), (0.0, -1.0)));
    }
    for y in 0..r - 1 {
        perimeter.push((vid(0, y), vid(0, y + 1), (0, y), (-1.0, 0.0)));
    }
    let colors = spec
        .segments
        .iter()
        .flat_map(|&(col, len)| std::iter::repeat_n(col, len));
    let mut digons = Vec::new();
    for ((u, v, (sx, sy), n), col) in perimeter.into_iter().zip(colors) {
        if square_color(sx, sy) != col {
            edges.push((u, v, (0.3 * n.0, 0.3 * n.1)));
            let key = vec![u, v];
            digons.push((key, col));
        }
    }
    let (map, mv) = map_from_geometry(&pos, &edges);
    let key_of = |vs: &[usize]| {
        let mut k: Vec<usize> = vs.iter().map(|&v| mv[v]).collect();
        k.sort_unstable();
        k
    };
    if let Some(v) = (0..map.vertex_count()).find(|&v| !(3..=4).contains(&map.valence(v))) {
        return Err(patch_error(format!(
            "vertex {v} has valence {}; color changes must sit where no digon is needed",
            map.valence(v)
        )));
    }
    let mut expected: HashMap<Vec<usize>, PatchFace> = HashMap::new();
    for y in 0..r - 1 {
        for x in 0..c - 1 {
            let key = key_of(&[vid(x, y), vid(x + 1, y), vid(x, y + 1), vid(x + 1, y + 1)]);
            expected.insert(
                key,
                PatchFace {
                    kind: PatchFaceKind::Plaquette,
                    color: Some(square_color(x, y)),
                },
            );
        }
    }
    for (key, col) in digons {
        expected.insert(
            key_of(&key),
            PatchFace {
                kind: PatchFaceKind::Digon,
                color: Some(col),
            },
        );
    }
    label_faces(map, expected)
}

fn label_faces(
    map: CombinatorialMap,
    expected: HashMap<Vec<usize>, PatchFace>,
) -> Result<PatchMap, LatticeError> {
    let mut faces = Vec::with_capacity(map.face_count());
    let mut outer = None;
    for f in 0..map.face_count() {
        match expected.get(&sorted_vertex_set(&map, f)) {
            Some(pf) => faces.push(*pf),
            None => {
                if outer.replace(f).is_some() {
                    return Err(patch_error("patch has more than one unlabeled face"));
                }
                faces.push(PatchFace {
                    kind: PatchFaceKind::Outer,
                    color: None,
                });
            }
        }
    }
    let outer_face = outer.ok_or_else(|| patch_error("patch has no outer face"))?;
    Ok(PatchMap {
        map,
        faces,
        outer_face,
    })
}

/// Triangular 6.6.6 color-code patch of odd distance `d`.
///
/// Plaquettes sit on the triangular-lattice points
/// `{(i, j) : j - i >= 0, -i - 2j >= 1, 2i + j >= -1 - 3t}` with
/// `d = 2t + 1`; qubits are the triangles of the lattice restricted to this
/// region, closed off by three far-away boundary points. Point `(i, j)` has
/// color `(i - j) mod 3`. The result has `(3d² + 1) / 4` qubits and three
/// 2-valent corner qubits.
pub fn tcc_triangle_map(d: usize) -> Result<PatchMap, LatticeError> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(LatticeError::ConstraintViolation {
            family: "planar_tcc_triangle",
            constraint: "needs odd d >= 3".to_string(),
        });
    }
    let t = ((d - 1) / 2) as i64;
    let mins = [0i64, 1, -1 - 3 * t];
    let g = |(i, j): (i64, i64)| [j - i, -i - 2 * j, 2 * i + j];
    let bound = 3 * t + 3;
    let mut points = Vec::new();
    for j in -bound..=bound {
        for i in -bound..=bound {
            let gv = g((i, j));
            if (0..3).all(|s| gv[s] >= mins[s]) {
                points.push((i, j));
            }
        }
    }
    let index: BTreeMap<(i64, i64), usize> =
        points.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let np = points.len();
    // vertices of the triangulation: points, then the three boundary points
    let on_side = |p: (i64, i64), s: usize| (0..=1).contains(&(g(p)[s] - mins[s]));
    let mut xy: Vec<(f64, f64)> = points
        .iter()
        .map(|&(i, j)| (i as f64 + j as f64 / 2.0, j as f64 * 3f64.sqrt() / 2.0))
        .collect();
    let cx = xy.iter().map(|p| p.0).sum::<f64>() / np as f64;
    let cy = xy.iter().map(|p| p.1).sum::<f64>() / np as f64;
    let h = 3f64.sqrt() / 2.0;
    for (ox, oy) in [(0.5, -h), (0.5, h), (-1.0, 0.0)] {
        xy.push((cx + 1000.0 * ox, cy + 1000.0 * oy));
    }
    let is_b = |v: usize| v >= np;

    let mut tris: Vec<[usize; 3]> = Vec::new();
    for &(i, j) in &points {
        for (a, b) in [((1, 0), (0, 1)), ((1, -1), (1, 0))] {
            if let (Some(&q), Some(&r)) = (index.get(&(i + a.0, j + a.1)), index.get(&(i + b.0, j + b.1))) {
                tris.push([index[&(i, j)], q, r]);
            }
        }
    }
    const NB: [(i64, i64); 3] = [(1, 0), (0, 1), (-1, 1)];
    for s in 0..3 {
        for &p in points.iter().filter(|&&p| on_side(p, s)) {
            for (di, dj) in NB {
                let q = (p.0 + di, p.1 + dj);
                if index.contains_key(&q) && on_side(q, s) {
                    tris.push([index[&p], index[&q], np + s]);
                }
            }
        }
    }
    for &p in &points {
        let sides: Vec<usize> = (0..3).filter(|&s| on_side(p, s)).collect();
        for a in 0..sides.len() {
            for b in a + 1..sides.len() {
                tris.push([index[&p], np + sides[a], np + sides[b]]);
            }
        }
    }
    for tri in &mut tris {
        let [a, b, c] = tri.map(|v| xy[v]);
        if (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0) < 0.0 {
            tri.swap(1, 2);
        }
    }
    // pair triangle sides across shared lattice edges
    let mut darts: Vec<(usize, [usize; 2])> = Vec::new();
    let mut by_edge: HashMap<[usize; 2], Vec<usize>> = HashMap::new();
    for (k, tri) in tris.iter().enumerate() {
        for e in 0..3 {
            let (u, v) = (tri[e], tri[(e + 1) % 3]);
            if is_b(u) && is_b(v) {
                continue;
            }
            let key = [u.min(v), u.max(v)];
            by_edge.entry(key).or_default().push(darts.len());
            darts.push((k, key));
        }
    }
    let mut alpha = vec![usize::MAX; darts.len()];
    for ds in by_edge.values() {
        match ds.as_slice() {
            [a, b] => {
                alpha[*a] = *b;
                alpha[*b] = *a;
            }
            _ => unreachable!("every lattice edge borders two triangles"),
        }
    }
    let mut sigma = vec![0; darts.len()];
    let mut first = 0;
    while first < darts.len() {
        let k = darts[first].0;
        let mut last = first;
        while last + 1 < darts.len() && darts[last + 1].0 == k {
            last += 1;
        }
        for (d, s) in sigma.iter_mut().enumerate().take(last + 1).skip(first) {
            *s = if d == last { first } else { d + 1 };
        }
        first = last + 1;
    }
    let raw = CombinatorialMap::new(alpha, sigma).expect("triangle patch is a valid map");
    // vertices of `raw` are numbered by their smallest dart, which follows
    // triangle order; translate triangle sets into vertex sets
    let tri_vertex: Vec<usize> = {
        let mut tv = vec![0; tris.len()];
        for (d, &(k, _)) in darts.iter().enumerate() {
            tv[k] = raw.vertex_of(d);
        }
        tv
    };
    let mut expected = HashMap::new();
    for (pi, &(i, j)) in points.iter().enumerate() {
        let mut key: Vec<usize> = tris
            .iter()
            .enumerate()
            .filter(|(_, tri)| tri.contains(&pi))
            .map(|(k, _)| tri_vertex[k])
            .collect();
        key.sort_unstable();
        expected.insert(
            key,
            PatchFace {
                kind: PatchFaceKind::Plaquette,
                color: Some(FaceColor::ALL[(i - j).rem_euclid(3) as usize]),
            },
        );
    }
    let patch = label_faces(raw, expected).map_err(|_| LatticeError::ConstraintViolation {
        family: "planar_tcc_triangle",
        constraint: "face identification failed".to_string(),
    })?;
    if patch.map.face_count() != np + 1 {
        return Err(LatticeError::ConstraintViolation {
            family: "planar_tcc_triangle",
            constraint: "unexpected face count".to_string(),
        });
    }
    Ok(patch)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_boundary_patch() {
        let p = ktc_patch_map(&KtcPatchSpec::four_boundaries(4, 5)).unwrap();
        assert_eq!(p.map.genus(), 0);
        assert_eq!(p.map.valence_profile().get(&3), Some(&4));
        let n_plaq = p.faces.iter().filter(|f| f.kind == PatchFaceKind::Plaquette).count();
        assert_eq!(n_plaq, 12);
        assert_eq!(p.faces[p.outer_face].kind, PatchFaceKind::Outer);
    }

    #[test]
    fn six_boundary_patch() {
        for (r, c) in [(4, 4), (5, 6), (6, 7)] {
            let p = ktc_patch_map(&KtcPatchSpec::six_boundaries(r, c)).unwrap();
            assert_eq!(p.map.valence_profile().get(&3), Some(&6), "{r}x{c}");
        }
    }

    #[test]
    fn bad_segments_rejected() {
        let mut s = KtcPatchSpec::four_boundaries(4, 4);
        s.segments[0].1 += 1;
        assert!(ktc_patch_map(&s).is_err());
        let s = KtcPatchSpec {
            rows: 4,
            cols: 4,
            segments: vec![(FaceColor::Red, 6), (FaceColor::Red, 6)],
        };
        assert!(ktc_patch_map(&s).is_err());
        // a color change at a vertex that needs two digons
        let s = KtcPatchSpec {
            rows: 4,
            cols: 4,
            segments: vec![
                (FaceColor::Red, 2),
                (FaceColor::Green, 4),
                (FaceColor::Red, 3),
                (FaceColor::Green, 3),
            ],
        };
        assert!(ktc_patch_map(&s).is_err());
    }

    #[test]
    fn triangle_patch_sizes() {
        for (d, n) in [(3, 7), (5, 19), (7, 37)] {
            let p = tcc_triangle_map(d).unwrap();
            assert_eq!(p.map.vertex_count(), n);
            assert_eq!(p.map.genus(), 0);
            assert_eq!(p.map.valence_profile().get(&2), Some(&3));
            for f in 0..p.map.face_count() {
                if f != p.outer_face {
                    assert!([4, 6].contains(&p.map.face_size(f)));
                }
            }
        }
        assert!(tcc_triangle_map(4).is_err());
    }

    #[test]
    fn triangle_colors_are_proper() {
        let p = tcc_triangle_map(5).unwrap();
        for (a, b) in p.map.face_adjacency() {
            if a != p.outer_face && b != p.outer_face {
                assert_ne!(p.faces[a].color, p.faces[b].color);
            }
        }
    }
}
