//! Planar patches with colored boundaries.

use std::collections::BTreeSet;

use serde::Serialize;

use super::FeatureError;
use crate::hsc::{CodeFamily, FaceGenerator, FaceGenerators, HscCode};
use crate::lattices::{ktc_patch_map, tcc_triangle_map, KtcPatchSpec, LatticeSpec, PatchFaceKind, PatchMap};
use crate::map::FaceColor;
use crate::pauli::Letter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum BoundaryFamily {
    Ktc,
    Tcc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundarySpec {
    Ktc(KtcPatchSpec),
    TccTriangle { d: usize },
}

impl TryFrom<&LatticeSpec> for BoundarySpec {
    type Error = FeatureError;

    fn try_from(s: &LatticeSpec) -> Result<Self, FeatureError> {
        match *s {
            LatticeSpec::PlanarKtcPatch {
                rows,
                cols,
                boundaries,
            } => {
                if rows < 2 || cols < 2 {
                    return Err(FeatureError::InvalidBoundarySpec(
                        "needs at least 2 × 2 vertices".to_string(),
                    ));
                }
                match boundaries {
                    4 => Ok(BoundarySpec::Ktc(KtcPatchSpec::four_boundaries(rows, cols))),
                    6 => Ok(BoundarySpec::Ktc(KtcPatchSpec::six_boundaries(rows, cols))),
                    b => Err(FeatureError::InvalidBoundarySpec(format!(
                        "{b} boundaries; the rectangular patch supports 4 or 6"
                    ))),
                }
            }
            LatticeSpec::PlanarTccTriangle { d } => Ok(BoundarySpec::TccTriangle { d }),
            _ => Err(FeatureError::InvalidBoundarySpec(format!(
                "{} is not a boundary patch family",
                s.family()
            ))),
        }
    }
}

/// A maximal run of outer edges sharing one boundary color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundarySegment {
    pub color: FaceColor,
    /// Vertices along the run, including both end vertices.
    pub vertices: Vec<usize>,
    pub edges: usize,
}

#[derive(Clone, Debug)]
pub struct BoundaryPatch {
    pub family: BoundaryFamily,
    pub patch: PatchMap,
    /// In outer-face order.
    pub segments: Vec<BoundarySegment>,
    /// Weight-two boundary faces.
    pub digons: usize,
    pub code: HscCode,
}

fn invalid(e: impl ToString) -> FeatureError {
    FeatureError::InvalidBoundarySpec(e.to_string())
}

/// Builds a planar code: a rectangular toric-code patch with weight-two
/// boundary stabilizers, or a triangular color-code patch. The outer face
/// carries no generator.
pub fn build_boundary_patch(spec: &BoundarySpec) -> Result<BoundaryPatch, FeatureError> {
    let (family, patch) = match spec {
        BoundarySpec::Ktc(s) => (BoundaryFamily::Ktc, ktc_patch_map(s).map_err(invalid)?),
        BoundarySpec::TccTriangle { d } => {
            (BoundaryFamily::Tcc, tcc_triangle_map(*d).map_err(invalid)?)
        }
    };
    let faces = patch
        .faces
        .iter()
        .enumerate()
        .map(|(f, pf)| {
            let len = patch.map.face_size(f);
            let generators = match (pf.kind, family, pf.color) {
                (PatchFaceKind::Outer, ..) => vec![],
                (_, BoundaryFamily::Ktc, Some(FaceColor::Red)) => {
                    vec![FaceGenerator::uniform(len, Letter::X)]
                }
                (_, BoundaryFamily::Ktc, _) => vec![FaceGenerator::uniform(len, Letter::Z)],
                (_, BoundaryFamily::Tcc, _) => vec![
                    FaceGenerator::uniform(len, Letter::X),
                    FaceGenerator::uniform(len, Letter::Z),
                ],
            };
            FaceGenerators { face: f, generators }
        })
        .collect();
    let code_family = match family {
        BoundaryFamily::Ktc => CodeFamily::Ktc,
        BoundaryFamily::Tcc => CodeFamily::Tcc { class: 1 },
    };
    let mut code = HscCode::new(patch.map.clone(), faces, None, code_family)?;
    code.fix_signs();
    let segments = match family {
        BoundaryFamily::Ktc => ktc_segments(&patch),
        BoundaryFamily::Tcc => tcc_segments(&patch),
    }?;
    let digons = patch.faces.iter().filter(|f| f.kind == PatchFaceKind::Digon).count();
    Ok(BoundaryPatch {
        family,
        patch,
        segments,
        digons,
        code,
    })
}

/// Outer-face darts with the vertex each one ends at and the color of the
/// face across it.
fn outer_walk(p: &PatchMap) -> Vec<(usize, usize, Option<FaceColor>)> {
    let m = &p.map;
    m.face_darts(p.outer_face)
        .iter()
        .map(|&d| {
            let across = m.face_of(m.alpha(d));
            (m.vertex_of(d), m.vertex_of(m.alpha(d)), p.faces[across].color)
        })
        .collect()
}

/// Splits the cyclic walk before every index in `cuts`.
fn split_runs<T: Clone>(walk: &[T], cuts: &[usize]) -> Vec<Vec<T>> {
    if cuts.is_empty() {
        return vec![walk.to_vec()];
    }
    let n = walk.len();
    (0..cuts.len())
        .map(|i| {
            let (a, b) = (cuts[i], cuts[(i + 1) % cuts.len()]);
            let len = (b + n - a - 1) % n + 1;
            (0..len).map(|k| walk[(a + k) % n].clone()).collect()
        })
        .collect()
}

fn segment(color: FaceColor, run: &[(usize, usize, Option<FaceColor>)]) -> BoundarySegment {
    let mut vertices: Vec<usize> = run.iter().map(|r| r.0).collect();
    vertices.push(run.last().expect("runs are non-empty").1);
    BoundarySegment {
        color,
        vertices,
        edges: run.len(),
    }
}

/// Runs of equal adjacent face color; the color changes exactly at the
/// 3-valent boundary vertices.
fn ktc_segments(p: &PatchMap) -> Result<Vec<BoundarySegment>, FeatureError> {
    let walk = outer_walk(p);
    let n = walk.len();
    let cuts: Vec<usize> = (0..n).filter(|&i| walk[i].2 != walk[(i + n - 1) % n].2).collect();
    let changes: BTreeSet<usize> = cuts.iter().map(|&i| walk[i].0).collect();
    let v3: BTreeSet<usize> = (0..p.map.vertex_count()).filter(|&v| p.map.valence(v) == 3).collect();
    if changes != v3 {
        return Err(invalid("3-valent vertices do not sit at the color changes"));
    }
    split_runs(&walk, &cuts)
        .iter()
        .map(|run| {
            let c = run[0].2.ok_or_else(|| invalid("uncolored boundary face"))?;
            Ok(segment(c, run))
        })
        .collect()
}

/// Runs between 2-valent vertices; each is colored by the one color absent
/// from the faces along it.
fn tcc_segments(p: &PatchMap) -> Result<Vec<BoundarySegment>, FeatureError> {
    let walk = outer_walk(p);
    let cuts: Vec<usize> = (0..walk.len()).filter(|&i| p.map.valence(walk[i].0) == 2).collect();
    let segs = split_runs(&walk, &cuts)
        .iter()
        .map(|run| {
            let seen: BTreeSet<FaceColor> = run.iter().filter_map(|r| r.2).collect();
            let missing: Vec<FaceColor> = FaceColor::ALL.into_iter().filter(|c| !seen.contains(c)).collect();
            match missing.as_slice() {
                [c] => Ok(segment(*c, run)),
                _ => Err(invalid("boundary run does not miss exactly one color")),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = segs.len();
    if (0..n).any(|i| n > 1 && segs[i].color == segs[(i + 1) % n].color) {
        return Err(invalid("adjacent boundaries share a color"));
    }
    Ok(segs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryCount {
    pub family: BoundaryFamily,
    /// `|V_3|` for toric-code patches, `|V_2|` for color-code patches.
    pub special_vertices: usize,
    pub boundaries: usize,
    /// `|V_3|/2 - 1` or `|V_2| - 2`.
    pub vertex_formula: i64,
    /// `boundaries/2 - 1` or `boundaries - 2`.
    pub boundary_formula: i64,
    pub rank_k: usize,
    pub formula_matches_rank: bool,
}

pub fn boundary_logical_count(patch: &BoundaryPatch) -> Result<BoundaryCount, FeatureError> {
    let b = patch.segments.len() as i64;
    let (valence, vf, bf): (usize, fn(i64) -> i64, i64) = match patch.family {
        BoundaryFamily::Ktc => (3, |v| v / 2 - 1, b / 2 - 1),
        BoundaryFamily::Tcc => (2, |v| v - 2, b - 2),
    };
    let m = &patch.patch.map;
    let special = (0..m.vertex_count()).filter(|&v| m.valence(v) == valence).count();
    let rank_k = patch.code.group()?.k();
    let vertex_formula = vf(special as i64);
    Ok(BoundaryCount {
        family: patch.family,
        special_vertices: special,
        boundaries: patch.segments.len(),
        vertex_formula,
        boundary_formula: bf,
        rank_k,
        formula_matches_rank: vertex_formula == bf && vertex_formula == rank_k as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ktc_four_boundaries() {
        let p = build_boundary_patch(&BoundarySpec::Ktc(KtcPatchSpec::four_boundaries(4, 5))).unwrap();
        assert_eq!(p.segments.len(), 4);
        let c = boundary_logical_count(&p).unwrap();
        assert_eq!((c.special_vertices, c.vertex_formula, c.rank_k), (4, 1, 1));
        assert!(c.formula_matches_rank);
        let colors: Vec<_> = p.segments.iter().map(|s| s.color).collect();
        for i in 0..4 {
            assert_ne!(colors[i], colors[(i + 1) % 4]);
        }
        assert_eq!(p.segments.iter().map(|s| s.edges).sum::<usize>(), p.patch.map.face_size(p.patch.outer_face));
    }

    #[test]
    fn ktc_six_boundaries() {
        for (r, c) in [(4, 4), (5, 6)] {
            let p = build_boundary_patch(&BoundarySpec::Ktc(KtcPatchSpec::six_boundaries(r, c))).unwrap();
            let k = boundary_logical_count(&p).unwrap();
            assert_eq!((k.boundaries, k.special_vertices, k.rank_k), (6, 6, 2), "{r}x{c}");
            assert!(k.formula_matches_rank);
            assert!(p.digons > 0);
        }
    }

    #[test]
    fn tcc_triangles() {
        for d in [3, 5, 7] {
            let p = build_boundary_patch(&BoundarySpec::TccTriangle { d }).unwrap();
            let k = boundary_logical_count(&p).unwrap();
            assert_eq!((k.special_vertices, k.boundaries, k.vertex_formula, k.rank_k), (3, 3, 1, 1));
            let colors: BTreeSet<_> = p.segments.iter().map(|s| s.color).collect();
            assert_eq!(colors.len(), 3);
            if d <= 5 {
                assert_eq!(p.code.params(Some(d)).unwrap().d, Some(d));
            }
        }
    }

    #[test]
    fn spec_conversion() {
        let s: LatticeSpec = "planar_ktc_patch:rows=4,cols=4,boundaries=6".parse().unwrap();
        assert!(matches!(BoundarySpec::try_from(&s), Ok(BoundarySpec::Ktc(_))));
        let s: LatticeSpec = "square_torus:L=4".parse().unwrap();
        assert!(BoundarySpec::try_from(&s).is_err());
        let s = LatticeSpec::PlanarKtcPatch {
            rows: 4,
            cols: 4,
            boundaries: 8,
        };
        assert!(matches!(BoundarySpec::try_from(&s), Err(FeatureError::InvalidBoundarySpec(_))));
        assert!(build_boundary_patch(&BoundarySpec::TccTriangle { d: 4 }).is_err());
    }
}
