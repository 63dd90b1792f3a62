//! Label-set equivalence transforms and excitation patterns.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::build::sign_fix;
use super::{canonical_label_set, HscCode, HscError, LabelEntry, LabelSet};
use crate::map::{CombinatorialMap, FaceColor};
use crate::pauli::{Letter, PauliWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexSelection {
    All,
    List(Vec<usize>),
}

impl VertexSelection {
    fn resolve(&self, n: usize) -> Vec<usize> {
        match self {
            VertexSelection::All => (0..n).collect(),
            VertexSelection::List(vs) => vs.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelTransform {
    /// Replaces every letter `l` on the selected qubits by `perm[l]`, with
    /// `perm` listing the images of `X`, `Y`, `Z`.
    LetterPermutation {
        vertices: VertexSelection,
        perm: [Letter; 3],
    },
    /// Shifts the label set of each selected vertex by `steps` positions:
    /// the face at rotation position `i` receives the entry of position
    /// `i - steps`.
    Rotation {
        vertices: VertexSelection,
        steps: usize,
    },
    /// Swaps the two generators of every two-generator face.
    PairSwap,
    /// Replaces the label set of one vertex, given in the order of
    /// [`HscCode::vertex_label_set`].
    Relabel { vertex: usize, label_set: LabelSet },
}

fn set_entry(code: &mut HscCode, f: usize, pos: usize, e: LabelEntry) {
    let letters = e.letters();
    for (g, l) in code.faces[f].generators.iter_mut().zip(letters) {
        g.letters[pos] = l;
    }
}

fn same_shape(a: &LabelEntry, b: &LabelEntry) -> bool {
    a.letters().len() == b.letters().len()
}

/// Applies a label-set transform. The result must still have commuting
/// generators; signs are re-fixed so that `-I` stays out of the group.
pub fn apply_label_transform(code: &HscCode, t: &LabelTransform) -> Result<HscCode, HscError> {
    let mut out = code.clone();
    let n = code.num_qubits();
    match t {
        LabelTransform::LetterPermutation { vertices, perm } => {
            let sel: HashSet<usize> = vertices.resolve(n).into_iter().collect();
            for fg in &mut out.faces {
                let darts = code.map.face_darts(fg.face);
                for g in &mut fg.generators {
                    for (i, l) in g.letters.iter_mut().enumerate() {
                        if sel.contains(&code.map.vertex_of(darts[i])) {
                            *l = perm[l.index()];
                        }
                    }
                }
            }
        }
        LabelTransform::Rotation { vertices, steps } => {
            for v in vertices.resolve(n) {
                let corners = code.vertex_corners(v);
                let k = corners.len();
                for i in 0..k {
                    let (sf, sp) = corners[(i + k - steps % k) % k];
                    let (tf, tp) = corners[i];
                    let e = code.entry_at(sf, sp);
                    if !same_shape(&e, &code.entry_at(tf, tp)) {
                        return Err(HscError::CountChangingTransform(v));
                    }
                    set_entry(&mut out, tf, tp, e);
                }
            }
        }
        LabelTransform::PairSwap => {
            for fg in &mut out.faces {
                if fg.generators.len() == 2 {
                    fg.generators.swap(0, 1);
                }
            }
        }
        LabelTransform::Relabel { vertex, label_set } => {
            let old = code.vertex_label_set(*vertex);
            if old.valence() != label_set.valence()
                || old
                    .entries()
                    .iter()
                    .zip(label_set.entries())
                    .any(|(a, b)| !same_shape(a, b))
                || old.count_profile() != label_set.count_profile()
            {
                return Err(HscError::CountChangingTransform(*vertex));
            }
            if canonical_label_set(&old)? != canonical_label_set(label_set)? {
                return Err(HscError::NotAnEquivalence(*vertex));
            }
            let corners = code.vertex_corners(*vertex);
            let start = (0..corners.len())
                .min_by_key(|&i| (corners[i].0, i))
                .unwrap_or(0);
            for (i, e) in label_set.entries().iter().enumerate() {
                let (f, pos) = corners[(start + i) % corners.len()];
                set_entry(&mut out, f, pos, *e);
            }
        }
    }
    let slots = out.generator_slots();
    let words = out.words();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if !words[i].commutes_unchecked(&words[j]) {
                return Err(HscError::TransformBreaksCommutation(slots[i], slots[j]));
            }
        }
    }
    if out.faces != code.faces {
        sign_fix(&mut out);
    }
    Ok(out)
}

/// Two-coloring of the vertices (`false` for the class of vertex 0).
pub fn vertex_bipartition(map: &CombinatorialMap) -> Result<Vec<bool>, HscError> {
    let nv = map.vertex_count();
    let mut side: Vec<Option<bool>> = vec![None; nv];
    for root in 0..nv {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let s = side[v].expect("queued vertices are colored");
            for &d in map.vertex_darts(v) {
                let w = map.vertex_of(map.alpha(d));
                match side[w] {
                    None => {
                        side[w] = Some(!s);
                        queue.push_back(w);
                    }
                    Some(t) if t == s => return Err(HscError::NotBipartite),
                    _ => {}
                }
            }
        }
    }
    Ok(side.into_iter().map(|s| s.expect("all visited")).collect())
}

/// Rotates the label set by one position on one class of a vertex
/// bipartition. On the square-lattice toric code this turns the
/// `X`/`Z` checkerboard into plaquettes of alternating `X` and `Z`.
pub fn ktc_to_lwpm(code: &HscCode) -> Result<HscCode, HscError> {
    let side = vertex_bipartition(&code.map)?;
    let vs = (0..side.len()).filter(|&v| side[v]).collect();
    apply_label_transform(
        code,
        &LabelTransform::Rotation {
            vertices: VertexSelection::List(vs),
            steps: 1,
        },
    )
}

/// A violated generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Excitation {
    pub face: usize,
    pub slot: usize,
    pub color: Option<FaceColor>,
    /// The generator's letter when it is the same on every qubit.
    pub letter: Option<char>,
}

/// Generators anticommuting with `error`.
pub fn excitations(code: &HscCode, error: &PauliWord) -> Result<Vec<Excitation>, HscError> {
    let slots = code.generator_slots();
    let mut out = Vec::new();
    for (f, s) in slots {
        if !code.word(f, s).commutes(error)? {
            let letters = &code.faces[f].generators[s].letters;
            let letter = letters
                .first()
                .filter(|l| letters.iter().all(|m| m == *l))
                .map(|l| l.as_char());
            out.push(Excitation {
                face: f,
                slot: s,
                color: code.color_of(f),
                letter,
            });
        }
    }
    Ok(out)
}

/// Number of distinct non-empty excitation patterns created by the three
/// single-qubit errors on vertex `v`.
pub fn excitation_patterns(code: &HscCode, v: usize) -> Result<usize, HscError> {
    let n = code.num_qubits();
    let mut patterns = HashSet::new();
    for l in Letter::ALL {
        let ex = excitations(code, &PauliWord::from_letters(n, [(v, l)]))?;
        if !ex.is_empty() {
            patterns.insert(ex.iter().map(|e| (e.face, e.slot)).collect::<Vec<_>>());
        }
    }
    Ok(patterns.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hsc::{build_ktc, build_tcc, LabelEntry};
    use crate::lattices::{generate, LatticeSpec};

    fn ktc(l: usize) -> HscCode {
        build_ktc(&generate(&LatticeSpec::SquareTorus { l }).unwrap()).unwrap()
    }

    #[test]
    fn identity_transforms() {
        let code = ktc(4);
        let id = apply_label_transform(
            &code,
            &LabelTransform::LetterPermutation {
                vertices: VertexSelection::All,
                perm: [Letter::X, Letter::Y, Letter::Z],
            },
        )
        .unwrap();
        assert_eq!(id.faces, code.faces);
        let id = apply_label_transform(
            &code,
            &LabelTransform::Rotation {
                vertices: VertexSelection::All,
                steps: 0,
            },
        )
        .unwrap();
        assert_eq!(id.faces, code.faces);
    }

    #[test]
    fn x_y_swap_keeps_params() {
        let code = ktc(2);
        let t = apply_label_transform(
            &code,
            &LabelTransform::LetterPermutation {
                vertices: VertexSelection::All,
                perm: [Letter::Y, Letter::X, Letter::Z],
            },
        )
        .unwrap();
        assert_eq!(t.params(Some(3)).unwrap(), code.params(Some(3)).unwrap());
        assert!(t.faces.iter().any(|fg| fg.generators[0].letters[0] == Letter::Y));
    }

    #[test]
    fn lwpm_plaquettes_alternate() {
        let code = ktc(4);
        let lw = ktc_to_lwpm(&code).unwrap();
        for fg in &lw.faces {
            let ls = &fg.generators[0].letters;
            for i in 0..4 {
                assert_ne!(ls[i], ls[(i + 1) % 4]);
            }
        }
        assert_eq!(lw.params(None).unwrap(), code.params(None).unwrap());
    }

    #[test]
    fn count_changing_relabel_rejected() {
        use Letter::*;
        let code = ktc(4);
        let zzzz = LabelSet(vec![LabelEntry::Single(Z); 4]);
        assert!(matches!(
            apply_label_transform(&code, &LabelTransform::Relabel { vertex: 0, label_set: zzzz }),
            Err(HscError::CountChangingTransform(0))
        ));
        let xxzz = LabelSet([X, X, Z, Z].map(LabelEntry::Single).to_vec());
        assert!(matches!(
            apply_label_transform(&code, &LabelTransform::Relabel { vertex: 0, label_set: xxzz }),
            Err(HscError::NotAnEquivalence(0))
        ));
    }

    #[test]
    fn single_vertex_relabel_can_break_commutation() {
        use Letter::*;
        let code = ktc(4);
        let old = code.vertex_label_set(0);
        let rotated = LabelSet(vec![old.0[1], old.0[2], old.0[3], old.0[0]]);
        assert_eq!(rotated.to_string().len(), 9);
        let r = apply_label_transform(&code, &LabelTransform::Relabel { vertex: 0, label_set: rotated });
        // swapping X and Z at one qubit is a Hadamard, which keeps commutation
        assert!(r.is_ok());
        let yzyz = LabelSet(
            old.0
                .iter()
                .map(|e| match e {
                    LabelEntry::Single(X) => LabelEntry::Single(Y),
                    e => *e,
                })
                .collect(),
        );
        let r = apply_label_transform(&code, &LabelTransform::Relabel { vertex: 0, label_set: yzyz });
        assert!(r.is_ok());
    }

    #[test]
    fn pair_swap_on_tcc() {
        let m = generate(&LatticeSpec::HexTorus { a: 3, b: 3 }).unwrap();
        let code = build_tcc(&m, 3).unwrap();
        let s = apply_label_transform(&code, &LabelTransform::PairSwap).unwrap();
        assert_eq!(s.params(None).unwrap().k, 4);
    }

    #[test]
    fn ktc_single_x_excites_two_green_faces() {
        let code = ktc(4);
        let ex = excitations(&code, &PauliWord::from_letters(16, [(5, Letter::X)])).unwrap();
        assert_eq!(ex.len(), 2);
        assert!(ex.iter().all(|e| e.color == Some(FaceColor::Green) && e.letter == Some('Z')));
        assert!(excitations(&code, &PauliWord::identity(16)).unwrap().is_empty());
        assert_eq!(excitation_patterns(&code, 5).unwrap(), 3);
    }

    #[test]
    fn tcc_single_x_excites_three_z_slots() {
        let m = generate(&LatticeSpec::HexTorus { a: 3, b: 3 }).unwrap();
        let code = build_tcc(&m, 1).unwrap();
        let ex = excitations(&code, &PauliWord::from_letters(18, [(0, Letter::X)])).unwrap();
        assert_eq!(ex.len(), 3);
        assert!(ex.iter().all(|e| e.letter == Some('Z')));
        let colors: HashSet<_> = ex.iter().map(|e| e.color).collect();
        assert_eq!(colors.len(), 3);
        for class in 1..=3 {
            let c = build_tcc(&m, class).unwrap();
            assert_eq!(excitation_patterns(&c, 0).unwrap(), 3);
        }
    }

    #[test]
    fn length_mismatch() {
        let code = ktc(2);
        assert!(excitations(&code, &PauliWord::identity(3)).is_err());
    }
}
