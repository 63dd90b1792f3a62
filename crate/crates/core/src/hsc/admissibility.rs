//! The code rules: generators sit exactly on faces (I), commute, put at
//! least two letter types on every qubit (IIA), give the same label set
//! everywhere up to equivalence (III) and encode only the topological
//! logical qubits (II).

use std::fmt;

use serde::Serialize;

use super::{canonical_label_set, FaceGenerators, HscCode, HscError, LabelSet};
use crate::map::CombinatorialMap;
use crate::pauli::PauliWord;
use crate::stabilizer::{Distance, StabilizerError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    #[serde(rename = "I")]
    I,
    #[serde(rename = "commutation")]
    Commutation,
    /// The generators multiply to `-I`.
    #[serde(rename = "sign")]
    Sign,
    #[serde(rename = "IIA")]
    IIA,
    #[serde(rename = "III")]
    III,
    #[serde(rename = "II")]
    II,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::I => "I",
            Rule::Commutation => "commutation",
            Rule::Sign => "sign",
            Rule::IIA => "IIA",
            Rule::III => "III",
            Rule::II => "II",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Face {
        face: usize,
        reason: String,
    },
    /// Two generators, as `(face, slot)`.
    GeneratorPair {
        first: (usize, usize),
        second: (usize, usize),
    },
    Generator {
        face: usize,
        slot: usize,
    },
    Vertex {
        vertex: usize,
        label_set: LabelSet,
    },
    LabelSetMismatch {
        vertex: usize,
        label_set: LabelSet,
        reference_vertex: usize,
        reference_label_set: LabelSet,
    },
    LogicalCount {
        expected: Option<usize>,
        got: usize,
    },
    LowWeightLogical {
        weight: usize,
        #[serde(serialize_with = "crate::hsc::admissibility::word_str")]
        logical: PauliWord,
    },
}

pub(crate) fn word_str<S: serde::Serializer>(w: &PauliWord, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub rule: Rule,
    pub witness: Witness,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {} violated: {:?}", self.rule, self.witness)
    }
}

fn reject(rule: Rule, witness: Witness) -> Result<(), Rejection> {
    Err(Rejection { rule, witness })
}

/// Largest weight of a logical operator that disqualifies a bulk code.
pub const LOW_WEIGHT_FLOOR: usize = 2;

/// Checks the code rules on an assembled code, in the order I,
/// commutation, sign, IIA, III, II.
///
/// Rule II is checked operationally: with one generator on every face the
/// code must encode `2g` qubits, with two on every face `4g`; and on simple
/// maps no logical operator may have weight at most 2.
pub fn check_code(code: &HscCode) -> Result<(), Rejection> {
    let map = &code.map;
    for fg in &code.faces {
        let f = fg.face;
        let face_reject = |reason: String| reject(Rule::I, Witness::Face { face: f, reason });
        match fg.generators.len() {
            1 | 2 => {}
            0 => return face_reject("face holds no generator".to_string()),
            m => return face_reject(format!("face holds {m} generators")),
        }
        let mut vs = map.face_vertices(f);
        vs.sort_unstable();
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return face_reject("face visits a vertex more than once".to_string());
        }
        if fg.generators.len() == 2 {
            if map.face_size(f) % 2 == 1 {
                return face_reject("two generators on an odd face".to_string());
            }
            let (a, b) = (&fg.generators[0], &fg.generators[1]);
            if let Some(i) = (0..a.letters.len()).find(|&i| a.letters[i] == b.letters[i]) {
                return face_reject(format!(
                    "both generators put {} on position {i}",
                    a.letters[i]
                ));
            }
        }
    }

    let slots = code.generator_slots();
    let words = code.words();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if !words[i].commutes_unchecked(&words[j]) {
                return reject(
                    Rule::Commutation,
                    Witness::GeneratorPair {
                        first: slots[i],
                        second: slots[j],
                    },
                );
            }
        }
    }
    let group = match code.group() {
        Ok(g) => g,
        Err(StabilizerError::MinusIdentityInGroup(i)) => {
            let (face, slot) = slots[i];
            return reject(Rule::Sign, Witness::Generator { face, slot });
        }
        Err(e) => unreachable!("lengths and commutation already checked: {e}"),
    };

    let labels: Vec<LabelSet> = (0..map.vertex_count())
        .map(|v| code.vertex_label_set(v))
        .collect();
    for (v, l) in labels.iter().enumerate() {
        let mut seen = [false; 3];
        for e in l.entries() {
            for a in e.letters() {
                seen[a.index()] = true;
            }
        }
        if seen.iter().filter(|&&s| s).count() < 2 {
            return reject(
                Rule::IIA,
                Witness::Vertex {
                    vertex: v,
                    label_set: l.clone(),
                },
            );
        }
    }

    if let Some(first) = labels.first() {
        let reference = canonical_label_set(first).expect("rule I holds");
        for (v, l) in labels.iter().enumerate().skip(1) {
            if canonical_label_set(l).expect("rule I holds") != reference {
                return reject(
                    Rule::III,
                    Witness::LabelSetMismatch {
                        vertex: v,
                        label_set: l.clone(),
                        reference_vertex: 0,
                        reference_label_set: first.clone(),
                    },
                );
            }
        }
    }

    let k = group.k();
    let per_face: Vec<usize> = code.faces.iter().map(|fg| fg.generators.len()).collect();
    let expected = if per_face.iter().all(|&m| m == 1) {
        Some(2 * map.genus())
    } else if per_face.iter().all(|&m| m == 2) {
        Some(4 * map.genus())
    } else {
        None
    };
    if expected != Some(k) {
        return reject(Rule::II, Witness::LogicalCount { expected, got: k });
    }
    if k > 0 && map.is_simple() {
        if let Ok(Distance::Exact { d, witness }) = group.min_distance(LOW_WEIGHT_FLOOR) {
            return reject(
                Rule::II,
                Witness::LowWeightLogical {
                    weight: d,
                    logical: witness,
                },
            );
        }
    }
    Ok(())
}

/// Outcome of [`check_admissibility`].
#[derive(Clone, Debug)]
pub enum Admissibility {
    Admissible(Box<HscCode>),
    Rejected(Rejection),
}

/// Assembles a code from per-face generators and checks the code rules.
pub fn check_admissibility(
    map: &CombinatorialMap,
    faces: Vec<FaceGenerators>,
) -> Result<Admissibility, HscError> {
    let code = HscCode::new(map.clone(), faces, None, super::CodeFamily::Custom)?;
    Ok(match check_code(&code) {
        Ok(()) => Admissibility::Admissible(Box::new(code)),
        Err(r) => Admissibility::Rejected(r),
    })
}
