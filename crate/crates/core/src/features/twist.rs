//! Detection of vertices that break label-set regularity.

use std::collections::BTreeMap;

use serde::Serialize;

use super::FeatureError;
use crate::hsc::{canonical_label_set, HscCode, LabelSet};
use crate::map::face_coloring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistKind {
    /// A 3-valent vertex in an otherwise 4-valent map.
    ThreeValentVertex,
    /// An odd face in an otherwise 3-valent map.
    OddFace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    /// Most common canonical label set.
    pub bulk_label_set: Option<LabelSet>,
    /// Vertices whose canonical label set differs from the bulk one.
    pub sites: Vec<usize>,
    pub bulk_valence: Option<usize>,
    /// Vertices whose valence differs from the bulk valence.
    pub defect_vertices: Vec<usize>,
    /// Odd faces, reported when the bulk is 3-valent.
    pub odd_faces: Vec<usize>,
    pub kinds: Vec<TwistKind>,
    pub two_face_colorable: bool,
    pub three_face_colorable: bool,
}

fn majority<K: Ord + Clone>(items: impl IntoIterator<Item = K>) -> Option<K> {
    let mut counts: BTreeMap<K, usize> = BTreeMap::new();
    for k in items {
        *counts.entry(k).or_insert(0) += 1;
    }
    // ties go to the smallest key
    counts
        .into_iter()
        .fold(None, |best: Option<(K, usize)>, (k, c)| match best {
            Some((_, bc)) if bc >= c => best,
            _ => Some((k, c)),
        })
        .map(|(k, _)| k)
}

pub fn twist_sites(code: &HscCode) -> Result<TwistReport, FeatureError> {
    let m = &code.map;
    let labels = (0..m.vertex_count())
        .map(|v| Ok(canonical_label_set(&code.vertex_label_set(v))?))
        .collect::<Result<Vec<LabelSet>, FeatureError>>()?;
    let bulk_label_set = majority(labels.iter().cloned());
    let sites = (0..labels.len())
        .filter(|&v| Some(&labels[v]) != bulk_label_set.as_ref())
        .collect();
    let bulk_valence = majority((0..m.vertex_count()).map(|v| m.valence(v)));
    let defect_vertices: Vec<usize> = (0..m.vertex_count())
        .filter(|&v| Some(m.valence(v)) != bulk_valence)
        .collect();
    let odd_faces: Vec<usize> = if bulk_valence == Some(3) {
        (0..m.face_count()).filter(|&f| m.face_size(f) % 2 == 1).collect()
    } else {
        vec![]
    };
    let mut kinds = Vec::new();
    if bulk_valence == Some(4) && defect_vertices.iter().any(|&v| m.valence(v) == 3) {
        kinds.push(TwistKind::ThreeValentVertex);
    }
    if !odd_faces.is_empty() {
        kinds.push(TwistKind::OddFace);
    }
    Ok(TwistReport {
        bulk_label_set,
        sites,
        bulk_valence,
        defect_vertices,
        odd_faces,
        kinds,
        two_face_colorable: face_coloring(m, 2).is_ok(),
        three_face_colorable: face_coloring(m, 3).is_ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hsc::{build_ktc, build_tcc, CodeFamily, FaceGenerator, FaceGenerators};
    use crate::lattices::{generate, stone_wales, LatticeSpec};
    use crate::map::delete_edges;
    use crate::pauli::Letter;

    #[test]
    fn regular_codes_have_no_sites() {
        let code = build_ktc(&generate(&LatticeSpec::SquareTorus { l: 4 }).unwrap()).unwrap();
        let r = twist_sites(&code).unwrap();
        assert!(r.sites.is_empty() && r.kinds.is_empty());
        assert_eq!(r.bulk_label_set.unwrap().to_string(), "{X,Z,X,Z}");
        let hex = generate(&LatticeSpec::HexTorus { a: 3, b: 3 }).unwrap();
        assert!(twist_sites(&build_tcc(&hex, 2).unwrap()).unwrap().sites.is_empty());
    }

    #[test]
    fn merged_plaquettes_give_three_valent_sites() {
        let code = build_ktc(&generate(&LatticeSpec::SquareTorus { l: 4 }).unwrap()).unwrap();
        let e = 5;
        let (u, v) = code.map.edge_endpoints(e);
        let (m, new_id) = delete_edges(&code.map, &[e]).unwrap();
        // every surviving dart keeps the letter it had in its old face
        let mut letter = vec![Letter::X; m.dart_count()];
        for f in 0..code.map.face_count() {
            for (i, &d) in code.map.face_darts(f).iter().enumerate() {
                if let Some(nd) = new_id[d] {
                    letter[nd] = code.faces[f].generators[0].letters[i];
                }
            }
        }
        let faces = (0..m.face_count())
            .map(|f| FaceGenerators {
                face: f,
                generators: vec![FaceGenerator {
                    letters: m.face_darts(f).iter().map(|&d| letter[d]).collect(),
                    negative: false,
                }],
            })
            .collect();
        let twisted = HscCode::new(m.clone(), faces, None, CodeFamily::Custom).unwrap();
        let r = twist_sites(&twisted).unwrap();
        let expect = |x: usize| {
            let d = code.map.vertex_darts(x).iter().find_map(|&d| new_id[d]).unwrap();
            m.vertex_of(d)
        };
        let mut want = vec![expect(u), expect(v)];
        want.sort_unstable();
        assert_eq!(r.sites, want);
        assert_eq!(r.defect_vertices, want);
        assert_eq!(r.kinds, vec![TwistKind::ThreeValentVertex]);
        assert!(!r.two_face_colorable);
    }

    #[test]
    fn stone_wales_odd_faces() {
        let hex = generate(&LatticeSpec::HexTorus { a: 6, b: 6 }).unwrap();
        let m = stone_wales(&hex, 0);
        let faces = (0..m.face_count())
            .map(|f| FaceGenerators {
                face: f,
                generators: vec![
                    FaceGenerator::uniform(m.face_size(f), Letter::X),
                    FaceGenerator::uniform(m.face_size(f), Letter::Z),
                ],
            })
            .collect();
        let code = HscCode::new(m.clone(), faces, None, CodeFamily::Custom).unwrap();
        let r = twist_sites(&code).unwrap();
        let sizes: Vec<usize> = r.odd_faces.iter().map(|&f| m.face_size(f)).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 5).count(), 2);
        assert_eq!(sizes.iter().filter(|&&s| s == 7).count(), 2);
        assert_eq!(r.kinds, vec![TwistKind::OddFace]);
        assert!(r.sites.is_empty());
        assert!(!r.three_face_colorable);
    }
}
