//! Label sets: the cyclic list of letters that face generators put on a
//! vertex, their canonical forms and exhaustive class enumeration.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use super::HscError;
use crate::pauli::Letter;

/// The letters one incident face contributes to a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LabelEntry {
    /// The face holds no generator (a puncture or an outer face).
    Empty,
    Single(Letter),
    Pair(Letter, Letter),
}

/// Letter order used for canonical forms: `X < Z < Y`, so the familiar
/// `{X,Z,X,Z}` and `{{X,Z},...}` spellings are the minimal ones.
fn letter_rank(l: Letter) -> u8 {
    match l {
        Letter::X => 0,
        Letter::Z => 1,
        Letter::Y => 2,
    }
}

impl LabelEntry {
    fn key(&self) -> (u8, u8, u8) {
        match *self {
            LabelEntry::Empty => (0, 0, 0),
            LabelEntry::Single(a) => (1, letter_rank(a), 0),
            LabelEntry::Pair(a, b) => (2, letter_rank(a), letter_rank(b)),
        }
    }

    pub fn letters(&self) -> Vec<Letter> {
        match *self {
            LabelEntry::Empty => vec![],
            LabelEntry::Single(a) => vec![a],
            LabelEntry::Pair(a, b) => vec![a, b],
        }
    }

    fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> LabelEntry {
        match *self {
            LabelEntry::Empty => LabelEntry::Empty,
            LabelEntry::Single(a) => LabelEntry::Single(f(a)),
            LabelEntry::Pair(a, b) => LabelEntry::Pair(f(a), f(b)),
        }
    }

    /// Pair letters in canonical order; generator slots within a face are
    /// unordered.
    fn sorted(&self) -> LabelEntry {
        match *self {
            LabelEntry::Pair(a, b) if letter_rank(b) < letter_rank(a) => LabelEntry::Pair(b, a),
            e => e,
        }
    }
}

impl PartialOrd for LabelEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LabelEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for LabelEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelEntry::Empty => write!(f, "{{}}"),
            LabelEntry::Single(a) => write!(f, "{a}"),
            LabelEntry::Pair(a, b) => write!(f, "{{{a},{b}}}"),
        }
    }
}

/// Cyclic sequence of label entries, one per incident face in rotation
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelSet(pub Vec<LabelEntry>);

impl LabelSet {
    pub fn entries(&self) -> &[LabelEntry] {
        &self.0
    }

    pub fn valence(&self) -> usize {
        self.0.len()
    }

    /// How many times each letter occurs, sorted descending; letter
    /// permutations keep this profile.
    pub fn count_profile(&self) -> Vec<usize> {
        let mut counts = [0usize; 3];
        for e in &self.0 {
            for l in e.letters() {
                counts[l.index()] += 1;
            }
        }
        let mut v = counts.to_vec();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    fn check(&self) -> Result<(), HscError> {
        if self.0.is_empty() {
            return Err(HscError::MalformedLabelSet("empty label set".to_string()));
        }
        for e in &self.0 {
            if let LabelEntry::Pair(a, b) = e {
                if a == b {
                    return Err(HscError::MalformedLabelSet(format!(
                        "pair {e} repeats a letter"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for LabelSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

const PERMUTATIONS: [[Letter; 3]; 6] = [
    [Letter::X, Letter::Y, Letter::Z],
    [Letter::X, Letter::Z, Letter::Y],
    [Letter::Y, Letter::X, Letter::Z],
    [Letter::Y, Letter::Z, Letter::X],
    [Letter::Z, Letter::X, Letter::Y],
    [Letter::Z, Letter::Y, Letter::X],
];

/// All six permutations of `{X, Y, Z}`, as images of `[X, Y, Z]`.
pub fn letter_permutations() -> [[Letter; 3]; 6] {
    PERMUTATIONS
}

/// Lexicographic minimum over letter permutations and rotations, with the
/// two letters of every pair sorted.
pub fn canonical_label_set(l: &LabelSet) -> Result<LabelSet, HscError> {
    l.check()?;
    let n = l.0.len();
    let mut best: Option<Vec<LabelEntry>> = None;
    for perm in PERMUTATIONS {
        let mapped: Vec<LabelEntry> = l
            .0
            .iter()
            .map(|e| e.map_letters(|x| perm[x.index()]).sorted())
            .collect();
        for r in 0..n {
            let rotated: Vec<LabelEntry> = (0..n).map(|i| mapped[(i + r) % n]).collect();
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
    }
    Ok(LabelSet(best.expect("non-empty")))
}

pub fn equivalent(a: &LabelSet, b: &LabelSet) -> Result<bool, HscError> {
    Ok(canonical_label_set(a)? == canonical_label_set(b)?)
}

/// Local consistency of a label set at one vertex: pair letters differ,
/// faces that are not cyclically consecutive (and so share only this
/// vertex) put commuting, hence equal, letters on it, and at least two
/// different letters occur (rule IIA).
pub fn locally_consistent(l: &LabelSet) -> bool {
    let n = l.0.len();
    if l.check().is_err() {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            let consecutive = j == i + 1 || (i == 0 && j == n - 1);
            if consecutive {
                continue;
            }
            for a in l.0[i].letters() {
                for b in l.0[j].letters() {
                    if a != b {
                        return false;
                    }
                }
            }
        }
    }
    let mut seen = [false; 3];
    for e in &l.0 {
        for a in e.letters() {
            seen[a.index()] = true;
        }
    }
    seen.iter().filter(|&&s| s).count() >= 2
}

/// Canonical label classes for a vertex of the given valence where every
/// incident face holds `gens_per_face` generators.
///
/// Besides local consistency, a bulk class must give a vanishing density
/// of logical qubits: on a `v`-valent lattice with `m` generators per face
/// the generator count per qubit is `m v / F_avg`, which tends to
/// `m (v - 2) / 2`, so `m (v - 2) = 2` is required. Valence 2 only occurs
/// on a single polygon and is returned without that filter.
pub fn enumerate_label_classes(valence: usize, gens_per_face: usize) -> Vec<LabelSet> {
    if valence >= 3 && gens_per_face * (valence - 2) != 2 {
        return vec![];
    }
    local_label_classes(valence, gens_per_face)
}

/// Canonical classes of all locally consistent label sets, without the
/// density requirement.
pub fn local_label_classes(valence: usize, gens_per_face: usize) -> Vec<LabelSet> {
    if valence == 0 || !(1..=2).contains(&gens_per_face) {
        return vec![];
    }
    let choices: Vec<LabelEntry> = if gens_per_face == 1 {
        Letter::ALL.iter().map(|&a| LabelEntry::Single(a)).collect()
    } else {
        let mut v = Vec::new();
        for a in Letter::ALL {
            for b in Letter::ALL {
                if a != b {
                    v.push(LabelEntry::Pair(a, b));
                }
            }
        }
        v
    };
    let mut classes: Vec<LabelSet> = Vec::new();
    let total = choices.len().pow(valence as u32);
    for mut code in 0..total {
        let mut entries = Vec::with_capacity(valence);
        for _ in 0..valence {
            entries.push(choices[code % choices.len()]);
            code /= choices.len();
        }
        let l = LabelSet(entries);
        if !locally_consistent(&l) {
            continue;
        }
        let c = canonical_label_set(&l).expect("well formed");
        if !classes.contains(&c) {
            classes.push(c);
        }
    }
    classes.sort();
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    fn singles(ls: &[Letter]) -> LabelSet {
        LabelSet(ls.iter().map(|&a| LabelEntry::Single(a)).collect())
    }

    fn pairs(ps: &[(Letter, Letter)]) -> LabelSet {
        LabelSet(ps.iter().map(|&(a, b)| LabelEntry::Pair(a, b)).collect())
    }

    #[test]
    fn letter_permutation_equivalence() {
        let a = canonical_label_set(&singles(&[X, Z, X, Z])).unwrap();
        assert_eq!(a, canonical_label_set(&singles(&[Y, X, Y, X])).unwrap());
        assert_eq!(a, canonical_label_set(&singles(&[Y, Z, Y, Z])).unwrap());
        assert_eq!(a.to_string(), "{X,Z,X,Z}");
    }

    #[test]
    fn rotation_equivalence() {
        assert!(equivalent(&singles(&[X, Z, X, Z]), &singles(&[Z, X, Z, X])).unwrap());
    }

    #[test]
    fn count_changes_are_not_equivalent() {
        assert!(!equivalent(&singles(&[X, Z, X, Z]), &singles(&[Z, Z, Z, Z])).unwrap());
        assert!(!equivalent(&singles(&[X, Z, X, Z]), &singles(&[X, X, Z, Z])).unwrap());
    }

    #[test]
    fn pair_order_is_irrelevant() {
        let a = pairs(&[(X, Z), (X, Z), (X, Z)]);
        let b = pairs(&[(Z, X), (Z, X), (Z, X)]);
        assert!(equivalent(&a, &b).unwrap());
        assert_eq!(canonical_label_set(&b).unwrap().to_string(), "{{X,Z},{X,Z},{X,Z}}");
    }

    #[test]
    fn malformed() {
        assert!(matches!(
            canonical_label_set(&LabelSet(vec![])),
            Err(HscError::MalformedLabelSet(_))
        ));
        assert!(canonical_label_set(&pairs(&[(X, X)])).is_err());
    }

    #[test]
    fn four_valent_single_generator() {
        let c = enumerate_label_classes(4, 1);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].to_string(), "{X,Z,X,Z}");
    }

    #[test]
    fn three_valent_pairs() {
        let c: Vec<String> = enumerate_label_classes(3, 2).iter().map(|l| l.to_string()).collect();
        assert_eq!(
            c,
            vec![
                "{{X,Z},{X,Z},{X,Z}}",
                "{{X,Z},{X,Z},{X,Y}}",
                "{{X,Z},{X,Y},{Z,Y}}"
            ]
        );
    }

    #[test]
    fn excluded_combinations() {
        assert!(enumerate_label_classes(5, 1).is_empty());
        assert!(enumerate_label_classes(5, 2).is_empty());
        assert!(enumerate_label_classes(4, 2).is_empty());
        assert!(enumerate_label_classes(3, 1).is_empty());
    }

    #[test]
    fn five_valent_fails_locally_even_without_density() {
        // every non-consecutive pair of a 5-cycle forces equal letters
        for a in Letter::ALL {
            for b in Letter::ALL {
                assert!(!locally_consistent(&singles(&[a, b, a, b, a])));
            }
        }
        assert!(!locally_consistent(&pairs(&[(X, Z), (Z, X), (X, Z), (Z, X)])));
    }

    #[test]
    fn local_classes() {
        assert!(local_label_classes(5, 1).is_empty());
        assert!(local_label_classes(5, 2).is_empty());
        assert!(local_label_classes(4, 2).is_empty());
        assert_eq!(local_label_classes(4, 1).len(), 1);
        let c: Vec<String> = local_label_classes(3, 1).iter().map(|l| l.to_string()).collect();
        assert_eq!(c, vec!["{X,X,Z}", "{X,Z,Y}"]);
    }

    #[test]
    fn three_valent_singles_fail_only_density() {
        assert!(locally_consistent(&singles(&[X, Z, Y])));
        assert!(locally_consistent(&singles(&[X, X, Z])));
        assert!(!locally_consistent(&singles(&[X, X, X])));
    }

    #[test]
    fn polygon_classes() {
        let c = enumerate_label_classes(2, 1);
        assert_eq!(c.iter().map(|l| l.to_string()).collect::<Vec<_>>(), vec!["{X,Z}"]);
        assert_eq!(enumerate_label_classes(2, 2).len(), 2);
    }
}
