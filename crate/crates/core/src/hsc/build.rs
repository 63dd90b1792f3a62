//! Code constructions and classification of maps.

use serde::Serialize;

use super::admissibility::{check_code, Rejection};
use super::{CodeFamily, FaceGenerator, FaceGenerators, HscCode, HscError};
use crate::map::{face_coloring, ColoringError, ColoringWitness, CombinatorialMap, FaceColor};
use crate::pauli::Letter;
use crate::stabilizer::fix_signs;

fn checked(code: HscCode) -> Result<HscCode, HscError> {
    check_code(&code).map_err(|r| HscError::Rejected(Box::new(r)))?;
    Ok(code)
}

/// Toric code on a 4-valent map: all-X generators on red faces and all-Z
/// generators on green faces of the 2-face-coloring.
pub fn build_ktc(map: &CombinatorialMap) -> Result<HscCode, HscError> {
    if map.regular_valence() != Some(4) {
        return Err(HscError::WrongValence { required: 4 });
    }
    let coloring = face_coloring(map, 2)?;
    let faces = (0..map.face_count())
        .map(|f| FaceGenerators {
            face: f,
            generators: vec![FaceGenerator::uniform(
                map.face_size(f),
                if coloring.color_of(f) == FaceColor::Red {
                    Letter::X
                } else {
                    Letter::Z
                },
            )],
        })
        .collect();
    checked(HscCode::new(map.clone(), faces, Some(coloring), CodeFamily::Ktc)?)
}

/// Letter pairs on red, green and blue faces for each of the three
/// label-set classes of 3-valent maps.
pub fn tcc_letter_pairs(class: u8) -> Result<[(Letter, Letter); 3], HscError> {
    use Letter::*;
    match class {
        1 => Ok([(X, Z), (X, Z), (X, Z)]),
        2 => Ok([(X, Z), (X, Z), (X, Y)]),
        3 => Ok([(X, Z), (X, Y), (Z, Y)]),
        c => Err(HscError::BadClass(c as usize)),
    }
}

/// Color code on a 3-valent, 3-face-colorable map: every face carries two
/// uniform generators with the letter pair of its color. Signs are chosen
/// so that `-I` is not in the group.
pub fn build_tcc(map: &CombinatorialMap, class: u8) -> Result<HscCode, HscError> {
    let pairs = tcc_letter_pairs(class)?;
    if map.regular_valence() != Some(3) {
        return Err(HscError::WrongValence { required: 3 });
    }
    let coloring = face_coloring(map, 3)?;
    let faces = (0..map.face_count())
        .map(|f| {
            let (a, b) = pairs[coloring.color_of(f).index()];
            FaceGenerators {
                face: f,
                generators: vec![
                    FaceGenerator::uniform(map.face_size(f), a),
                    FaceGenerator::uniform(map.face_size(f), b),
                ],
            }
        })
        .collect();
    let mut code = HscCode::new(map.clone(), faces, Some(coloring), CodeFamily::Tcc { class })?;
    sign_fix(&mut code);
    checked(code)
}

/// Flips signs of dependent generators so that `-I` is not generated.
pub(crate) fn sign_fix(code: &mut HscCode) {
    let slots = code.generator_slots();
    let mut words = code.words();
    fix_signs(&mut words);
    for ((f, s), w) in slots.into_iter().zip(words) {
        code.faces[f].generators[s].negative = w.is_negative();
    }
}

/// The even-polygon code: all-X on the inner face and all-Z on the outer
/// face of a single `n`-gon, with parameters `[[n, n - 2, 2]]`.
pub fn build_polygon_code(map: &CombinatorialMap) -> Result<HscCode, HscError> {
    if map.regular_valence() != Some(2) || map.face_count() != 2 {
        return Err(HscError::WrongValence { required: 2 });
    }
    let n = map.vertex_count();
    if n % 2 == 1 {
        return Err(HscError::NotColorable(ColoringError::NotColorable(
            ColoringWitness::OddFace(0),
        )));
    }
    let faces = [Letter::X, Letter::Z]
        .into_iter()
        .enumerate()
        .map(|(f, l)| FaceGenerators {
            face: f,
            generators: vec![FaceGenerator::uniform(n, l)],
        })
        .collect();
    HscCode::new(map.clone(), faces, None, CodeFamily::Polygon)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum InadmissibleReason {
    OneValent { vertex: usize },
    ValenceFiveOrMore { vertex: usize, valence: usize },
    MixedValence { valences: Vec<usize> },
    /// A 3-valent map without a proper 3-face-coloring.
    FourColorable { witness: ColoringWitness },
    /// A 4-valent map without a 2-face-coloring.
    NotTwoFaceColorable { witness: ColoringWitness },
    /// An odd polygon: its two generators anticommute.
    OddPolygon { n: usize },
    /// The family construction exists but violates a code rule.
    Rejected { rejection: Rejection },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum Classification {
    #[serde(rename = "KTC")]
    Ktc,
    #[serde(rename = "TCC")]
    Tcc { classes: Vec<u8> },
    #[serde(rename = "PolygonCode")]
    PolygonCode { n: usize, k: usize, d: usize },
    #[serde(rename = "Inadmissible")]
    Inadmissible(InadmissibleReason),
}

/// Which code family, if any, a map supports.
pub fn classify(map: &CombinatorialMap) -> Result<Classification, HscError> {
    if !map.is_connected() {
        return Err(HscError::Map(crate::map::MapError::Disconnected(
            map.component_count(),
        )));
    }
    let inadmissible = |r| Ok(Classification::Inadmissible(r));
    if let Some(v) = (0..map.vertex_count()).find(|&v| map.valence(v) == 1) {
        return inadmissible(InadmissibleReason::OneValent { vertex: v });
    }
    if let Some(v) = (0..map.vertex_count()).find(|&v| map.valence(v) >= 5) {
        return inadmissible(InadmissibleReason::ValenceFiveOrMore {
            vertex: v,
            valence: map.valence(v),
        });
    }
    match map.regular_valence() {
        None => inadmissible(InadmissibleReason::MixedValence {
            valences: map.valence_profile().into_keys().collect(),
        }),
        Some(2) => {
            let n = map.vertex_count();
            if n % 2 == 1 {
                inadmissible(InadmissibleReason::OddPolygon { n })
            } else {
                Ok(Classification::PolygonCode { n, k: n - 2, d: 2 })
            }
        }
        Some(4) => match build_ktc(map) {
            Ok(_) => Ok(Classification::Ktc),
            Err(HscError::NotColorable(ColoringError::NotColorable(witness))) => {
                inadmissible(InadmissibleReason::NotTwoFaceColorable { witness })
            }
            Err(HscError::Rejected(rejection)) => inadmissible(InadmissibleReason::Rejected {
                rejection: *rejection,
            }),
            Err(e) => Err(e),
        },
        Some(3) => {
            if let Err(ColoringError::NotColorable(witness)) = face_coloring(map, 3) {
                return inadmissible(InadmissibleReason::FourColorable { witness });
            }
            let mut classes = Vec::new();
            let mut first_rejection = None;
            for class in 1..=3 {
                match build_tcc(map, class) {
                    Ok(_) => classes.push(class),
                    Err(HscError::Rejected(r)) => {
                        first_rejection.get_or_insert(*r);
                    }
                    Err(e) => return Err(e),
                }
            }
            match first_rejection {
                Some(rejection) if classes.is_empty() => {
                    inadmissible(InadmissibleReason::Rejected { rejection })
                }
                _ => Ok(Classification::Tcc { classes }),
            }
        }
        Some(v) => unreachable!("valence {v} handled above"),
    }
}
