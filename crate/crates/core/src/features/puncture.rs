//! Holes: faces with some or all of their generators removed.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::FeatureError;
use crate::hsc::HscCode;
use crate::map::FaceColor;

/// A code with a registry of removed `(face, slot)` generators.
#[derive(Clone, Debug)]
pub struct PuncturedCode {
    pub base: HscCode,
    pub removed: BTreeSet<(usize, usize)>,
}

impl PuncturedCode {
    pub fn new(base: HscCode) -> Self {
        PuncturedCode {
            base,
            removed: BTreeSet::new(),
        }
    }

    /// Removes further generators of `face`. Fails if a slot does not exist
    /// or was already removed.
    pub fn puncture(&self, face: usize, slots: &[usize]) -> Result<PuncturedCode, FeatureError> {
        let mut out = self.clone();
        for &slot in slots {
            let exists = face < self.base.faces.len() && slot < self.base.faces[face].generators.len();
            if !exists || !out.removed.insert((face, slot)) {
                return Err(FeatureError::NoSuchGenerator { face, slot });
            }
        }
        Ok(out)
    }

    /// The code with removed generators dropped; remaining generators keep
    /// their relative order.
    pub fn code(&self) -> HscCode {
        let mut c = self.base.clone();
        for fg in &mut c.faces {
            let f = fg.face;
            let mut slot = 0;
            fg.generators.retain(|_| {
                let keep = !self.removed.contains(&(f, slot));
                slot += 1;
                keep
            });
        }
        c
    }

    /// Hole counts keyed by face color and generator letter. A generator
    /// whose letters are not all equal is keyed with letter `None`.
    pub fn holes(&self) -> BTreeMap<(Option<FaceColor>, Option<char>), usize> {
        let mut h = BTreeMap::new();
        for &(f, s) in &self.removed {
            let letters = &self.base.faces[f].generators[s].letters;
            let letter = letters
                .first()
                .filter(|l| letters.iter().all(|m| m == *l))
                .map(|l| l.as_char());
            *h.entry((self.base.color_of(f), letter)).or_insert(0) += 1;
        }
        h
    }
}

/// Starts a registry on `code` with the given generators of `face` removed.
pub fn puncture(code: &HscCode, face: usize, slots: &[usize]) -> Result<PuncturedCode, FeatureError> {
    PuncturedCode::new(code.clone()).puncture(face, slots)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoleClass {
    pub color: Option<FaceColor>,
    pub letter: Option<char>,
    pub holes: usize,
    /// `max(holes - 1, 0)`.
    pub logicals: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoleCount {
    pub classes: Vec<HoleClass>,
    pub base_k: usize,
    /// `base_k` plus the per-class logicals.
    pub formula_k: usize,
    pub rank_k: usize,
    pub formula_matches_rank: bool,
}

/// Per-class hole formula `l = h - 1` against the rank of the punctured
/// generator set.
pub fn hole_logical_count(p: &PuncturedCode) -> Result<HoleCount, FeatureError> {
    let classes: Vec<HoleClass> = p
        .holes()
        .into_iter()
        .map(|((color, letter), holes)| HoleClass {
            color,
            letter,
            holes,
            logicals: holes.saturating_sub(1),
        })
        .collect();
    let base_k = p.base.group()?.k();
    let rank_k = p.code().group()?.k();
    let formula_k = base_k + classes.iter().map(|c| c.logicals).sum::<usize>();
    Ok(HoleCount {
        classes,
        base_k,
        formula_k,
        rank_k,
        formula_matches_rank: formula_k == rank_k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hsc::{build_ktc, build_tcc};
    use crate::lattices::{generate, LatticeSpec};

    fn faces_of(code: &HscCode, c: FaceColor) -> Vec<usize> {
        (0..code.faces.len()).filter(|&f| code.color_of(f) == Some(c)).collect()
    }

    #[test]
    fn ktc_first_and_second_hole() {
        let code = build_ktc(&generate(&LatticeSpec::SquareTorus { l: 4 }).unwrap()).unwrap();
        let red = faces_of(&code, FaceColor::Red);
        let p1 = puncture(&code, red[0], &[0]).unwrap();
        let c1 = hole_logical_count(&p1).unwrap();
        assert_eq!((c1.base_k, c1.rank_k), (2, 2));
        let p2 = p1.puncture(red[3], &[0]).unwrap();
        let c2 = hole_logical_count(&p2).unwrap();
        assert_eq!(c2.rank_k, 3);
        assert!(c2.formula_matches_rank);
    }

    #[test]
    fn ktc_red_and_green_hole() {
        let code = build_ktc(&generate(&LatticeSpec::SquareTorus { l: 4 }).unwrap()).unwrap();
        let p = puncture(&code, faces_of(&code, FaceColor::Red)[0], &[0])
            .unwrap()
            .puncture(faces_of(&code, FaceColor::Green)[0], &[0])
            .unwrap();
        let c = hole_logical_count(&p).unwrap();
        assert_eq!(c.rank_k, 2);
        assert!(c.formula_matches_rank);
    }

    #[test]
    fn three_red_one_green() {
        let code = build_ktc(&generate(&LatticeSpec::SquareTorus { l: 4 }).unwrap()).unwrap();
        let red = faces_of(&code, FaceColor::Red);
        let mut p = puncture(&code, faces_of(&code, FaceColor::Green)[2], &[0]).unwrap();
        for &f in &red[..3] {
            p = p.puncture(f, &[0]).unwrap();
        }
        let c = hole_logical_count(&p).unwrap();
        assert_eq!(c.formula_k, 2 + 2);
        assert_eq!(c.rank_k, 4);
        let red_class = c.classes.iter().find(|h| h.color == Some(FaceColor::Red)).unwrap();
        assert_eq!((red_class.holes, red_class.logicals), (3, 2));
    }

    #[test]
    fn no_holes() {
        let code = build_ktc(&generate(&LatticeSpec::SquareTorus { l: 2 }).unwrap()).unwrap();
        let c = hole_logical_count(&PuncturedCode::new(code)).unwrap();
        assert!(c.classes.is_empty());
        assert_eq!(c.formula_k, c.rank_k);
    }

    #[test]
    fn tcc_typed_holes() {
        let m = generate(&LatticeSpec::HexTorus { a: 6, b: 6 }).unwrap();
        let code = build_tcc(&m, 1).unwrap();
        let red = faces_of(&code, FaceColor::Red);
        let p = puncture(&code, red[0], &[0]).unwrap().puncture(red[5], &[0]).unwrap();
        let c = hole_logical_count(&p).unwrap();
        assert_eq!(c.classes.len(), 1);
        assert_eq!((c.classes[0].letter, c.classes[0].logicals), (Some('X'), 1));
        assert_eq!(c.rank_k, c.base_k + 1);
        assert!(c.formula_matches_rank);
    }

    #[test]
    fn tcc_same_type_in_all_colors_exceeds_formula() {
        let m = generate(&LatticeSpec::HexTorus { a: 6, b: 6 }).unwrap();
        let code = build_tcc(&m, 1).unwrap();
        let mut p = PuncturedCode::new(code.clone());
        for c in FaceColor::ALL {
            p = p.puncture(faces_of(&code, c)[0], &[0]).unwrap();
        }
        let c = hole_logical_count(&p).unwrap();
        assert_eq!(c.formula_k, c.base_k);
        assert_eq!(c.rank_k, c.base_k + 1);
    }

    #[test]
    fn bad_punctures() {
        let code = build_ktc(&generate(&LatticeSpec::SquareTorus { l: 2 }).unwrap()).unwrap();
        assert!(matches!(
            puncture(&code, 0, &[1]),
            Err(FeatureError::NoSuchGenerator { face: 0, slot: 1 })
        ));
        let p = puncture(&code, 0, &[0]).unwrap();
        assert!(p.puncture(0, &[0]).is_err());
        assert!(puncture(&code, 99, &[0]).is_err());
        assert!(p.code().faces[0].generators.is_empty());
    }
}
