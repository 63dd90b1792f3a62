//! Homological stabilizer codes: stabilizer generators attached to the
//! faces of an embedded graph, one qubit per vertex.
//!
//! Each face holds zero, one or two generators. A generator lists one
//! letter per dart of the face in facial-cycle order, so letter `i` acts on
//! the vertex of `map.face_darts(f)[i]`.

mod admissibility;
mod build;
mod labels;
mod transform;

pub use admissibility::{check_admissibility, check_code, Admissibility, Rejection, Rule, Witness, LOW_WEIGHT_FLOOR};
pub use build::{
    build_ktc, build_polygon_code, build_tcc, classify, tcc_letter_pairs, Classification,
    InadmissibleReason,
};
pub use labels::{
    canonical_label_set, enumerate_label_classes, equivalent, letter_permutations,
    local_label_classes, locally_consistent, LabelEntry, LabelSet,
};
pub use transform::{
    apply_label_transform, excitation_patterns, excitations, ktc_to_lwpm, vertex_bipartition,
    Excitation, LabelTransform, VertexSelection,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::lattices::{map_from_value, map_to_value, IoError};
use crate::map::{CombinatorialMap, FaceColor, FaceColoring, MapError};
use crate::pauli::{Letter, PauliError, PauliWord};
use crate::stabilizer::{CodeParams, StabilizerError, StabilizerGroup};

#[derive(Debug, Error)]
pub enum HscError {
    #[error("malformed label set: {0}")]
    MalformedLabelSet(String),
    #[error("{0} faces described, map has {1}")]
    FaceListMismatch(usize, usize),
    #[error("face {face}: generator has {got} letters, face has {expected} darts")]
    GeneratorLength {
        face: usize,
        got: usize,
        expected: usize,
    },
    #[error("needs a {required}-valent map")]
    WrongValence { required: usize },
    #[error("no proper face coloring: {0}")]
    NotColorable(#[from] crate::map::ColoringError),
    #[error("transform changes letter counts at vertex {0}")]
    CountChangingTransform(usize),
    #[error("transform at vertex {0} is not a label-set equivalence")]
    NotAnEquivalence(usize),
    #[error("transform breaks commutation of generators {0:?} and {1:?}")]
    TransformBreaksCommutation((usize, usize), (usize, usize)),
    #[error("map vertices are not two-colorable")]
    NotBipartite,
    #[error("invalid label class {0}")]
    BadClass(usize),
    #[error("inadmissible: {0}")]
    Rejected(Box<Rejection>),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Stabilizer(#[from] StabilizerError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("code JSON: {0}")]
    Parse(String),
}

/// One stabilizer generator on a face: letters in facial-cycle order and a
/// sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceGenerator {
    pub letters: Vec<Letter>,
    pub negative: bool,
}

impl FaceGenerator {
    pub fn uniform(len: usize, l: Letter) -> Self {
        FaceGenerator {
            letters: vec![l; len],
            negative: false,
        }
    }
}

impl fmt::Display for FaceGenerator {
    /// Letters only, with a leading `-` for negative generators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for FaceGenerator {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negative, body) = match s.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let letters = body
            .chars()
            .map(|c| Letter::from_char(c).ok_or(PauliError::BadChar(c)))
            .collect::<Result<_, _>>()?;
        Ok(FaceGenerator { letters, negative })
    }
}

/// The generators of one face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceGenerators {
    pub face: usize,
    pub generators: Vec<FaceGenerator>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeFamily {
    Ktc,
    Tcc { class: u8 },
    Polygon,
    Custom,
}

impl fmt::Display for CodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeFamily::Ktc => write!(f, "KTC"),
            CodeFamily::Tcc { class } => write!(f, "TCC class {class}"),
            CodeFamily::Polygon => write!(f, "polygon"),
            CodeFamily::Custom => write!(f, "custom"),
        }
    }
}

/// A map with generator assignments on its faces.
#[derive(Clone, Debug)]
pub struct HscCode {
    pub map: CombinatorialMap,
    /// Indexed by face id.
    pub faces: Vec<FaceGenerators>,
    pub coloring: Option<FaceColoring>,
    pub family: CodeFamily,
}

impl HscCode {
    /// Checks only that the face list matches the map; see
    /// [`check_admissibility`] for the code rules.
    pub fn new(
        map: CombinatorialMap,
        faces: Vec<FaceGenerators>,
        coloring: Option<FaceColoring>,
        family: CodeFamily,
    ) -> Result<Self, HscError> {
        if faces.len() != map.face_count() {
            return Err(HscError::FaceListMismatch(faces.len(), map.face_count()));
        }
        for (f, fg) in faces.iter().enumerate() {
            if fg.face != f {
                return Err(HscError::Parse(format!("face entry {f} names face {}", fg.face)));
            }
            for g in &fg.generators {
                if g.letters.len() != map.face_size(f) {
                    return Err(HscError::GeneratorLength {
                        face: f,
                        got: g.letters.len(),
                        expected: map.face_size(f),
                    });
                }
            }
        }
        Ok(HscCode {
            map,
            faces,
            coloring,
            family,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.map.vertex_count()
    }

    /// The generator as an `n`-qubit word. A vertex visited twice by the
    /// face receives the product of its letters, up to phase.
    pub fn word(&self, face: usize, slot: usize) -> PauliWord {
        let g = &self.faces[face].generators[slot];
        let darts = self.map.face_darts(face);
        PauliWord::from_letters(
            self.num_qubits(),
            darts
                .iter()
                .zip(&g.letters)
                .map(|(&d, &l)| (self.map.vertex_of(d), l)),
        )
        .with_sign(g.negative)
    }

    /// `(face, slot)` of every generator in face order.
    pub fn generator_slots(&self) -> Vec<(usize, usize)> {
        self.faces
            .iter()
            .flat_map(|fg| (0..fg.generators.len()).map(move |s| (fg.face, s)))
            .collect()
    }

    pub fn words(&self) -> Vec<PauliWord> {
        self.generator_slots()
            .into_iter()
            .map(|(f, s)| self.word(f, s))
            .collect()
    }

    pub fn group(&self) -> Result<StabilizerGroup, StabilizerError> {
        StabilizerGroup::new(self.num_qubits(), self.words())
    }

    /// Parameters with the distance searched up to `distance_cap`.
    pub fn params(&self, distance_cap: Option<usize>) -> Result<CodeParams, StabilizerError> {
        let g = self.group()?;
        let mut p = g.params();
        if let Some(cap) = distance_cap {
            if p.k > 0 {
                p.d = g.min_distance(cap)?.value();
            }
        }
        Ok(p)
    }

    /// Letters placed on vertex `v`, one entry per incident face in
    /// rotation order, starting at the smallest incident face id.
    pub fn vertex_label_set(&self, v: usize) -> LabelSet {
        let corners = self.vertex_corners(v);
        let start = (0..corners.len())
            .min_by_key(|&i| (corners[i].0, i))
            .unwrap_or(0);
        let n = corners.len();
        LabelSet(
            (0..n)
                .map(|i| {
                    let (f, pos) = corners[(start + i) % n];
                    self.entry_at(f, pos)
                })
                .collect(),
        )
    }

    /// `(face, position in face)` for each dart at `v`, in rotation order.
    pub(crate) fn vertex_corners(&self, v: usize) -> Vec<(usize, usize)> {
        self.map
            .vertex_darts(v)
            .iter()
            .map(|&d| {
                let f = self.map.face_of(d);
                let pos = self
                    .map
                    .face_darts(f)
                    .iter()
                    .position(|&x| x == d)
                    .expect("dart lies on its face");
                (f, pos)
            })
            .collect()
    }

    pub(crate) fn entry_at(&self, f: usize, pos: usize) -> LabelEntry {
        let gens = &self.faces[f].generators;
        match gens.len() {
            0 => LabelEntry::Empty,
            1 => LabelEntry::Single(gens[0].letters[pos]),
            _ => LabelEntry::Pair(gens[0].letters[pos], gens[1].letters[pos]),
        }
    }

    /// Flips signs of dependent generators so that `-I` is not generated.
    pub fn fix_signs(&mut self) {
        build::sign_fix(self);
    }

    pub fn color_of(&self, f: usize) -> Option<FaceColor> {
        self.coloring.as_ref().map(|c| c.color_of(f))
    }

    pub fn to_json(&self) -> Value {
        let mut v = map_to_value(&self.map);
        let faces: Vec<Value> = self
            .faces
            .iter()
            .map(|fg| {
                json!({
                    "face": fg.face,
                    "gens": fg.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let obj = v.as_object_mut().expect("map JSON is an object");
        obj.insert("faces".to_string(), Value::Array(faces));
        obj.insert("family".to_string(), json!(self.family));
        if let Some(c) = &self.coloring {
            obj.insert(
                "coloring".to_string(),
                json!(c.colors.iter().map(|c| c.name()).collect::<Vec<_>>()),
            );
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self, HscError> {
        let map = map_from_value(v)?;
        let faces_v = v
            .get("faces")
            .and_then(Value::as_array)
            .ok_or_else(|| HscError::Parse("missing \"faces\" array".to_string()))?;
        let mut faces: Vec<FaceGenerators> = (0..map.face_count())
            .map(|face| FaceGenerators {
                face,
                generators: vec![],
            })
            .collect();
        let mut seen = vec![false; map.face_count()];
        for fv in faces_v {
            let face = fv
                .get("face")
                .and_then(Value::as_u64)
                .ok_or_else(|| HscError::Parse("face entry without \"face\"".to_string()))?
                as usize;
            if face >= faces.len() || seen[face] {
                return Err(HscError::Parse(format!("bad or repeated face id {face}")));
            }
            seen[face] = true;
            let gens = fv
                .get("gens")
                .and_then(Value::as_array)
                .ok_or_else(|| HscError::Parse(format!("face {face} without \"gens\"")))?;
            for g in gens {
                let s = g
                    .as_str()
                    .ok_or_else(|| HscError::Parse("generator is not a string".to_string()))?;
                faces[face].generators.push(s.parse()?);
            }
        }
        let family = match v.get("family") {
            Some(f) => serde_json::from_value(f.clone()).map_err(|e| HscError::Parse(e.to_string()))?,
            None => CodeFamily::Custom,
        };
        let coloring = match v.get("coloring").and_then(Value::as_array) {
            Some(cs) => {
                let colors = cs
                    .iter()
                    .map(|c| match c.as_str() {
                        Some("red") => Ok(FaceColor::Red),
                        Some("green") => Ok(FaceColor::Green),
                        Some("blue") => Ok(FaceColor::Blue),
                        _ => Err(HscError::Parse(format!("bad color {c}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let palette = if colors.contains(&FaceColor::Blue) { 3 } else { 2 };
                Some(FaceColoring { palette, colors })
            }
            None => None,
        };
        HscCode::new(map, faces, coloring, family)
    }
}
