//! Stabilizer groups: rank, logical operators, syndromes and exhaustive
//! code distance.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{self, BitVec, EchelonBasis};
use crate::pauli::{Letter, PauliWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilizerError {
    #[error("generator {index} has {got} qubits, expected {expected}")]
    LengthMismatch {
        index: usize,
        got: usize,
        expected: usize,
    },
    #[error("generators {0} and {1} anticommute")]
    NonAbelian(usize, usize),
    #[error("-I is in the group (closed by generator {0})")]
    MinusIdentityInGroup(usize),
    #[error("code encodes no logical qubits")]
    ZeroLogicalQubits,
}

/// `[[n, k, d]]` bookkeeping for a generator list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub s_generators_given: usize,
    pub s_independent: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub redundancies: usize,
}

/// Outcome of a capped exhaustive distance search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distance {
    /// Minimum weight of a non-trivial logical, with the first one found in
    /// lexicographic (qubit, letter) order.
    Exact { d: usize, witness: PauliWord },
    /// No non-trivial logical of weight at most `cap`.
    AboveCap { cap: usize },
}

impl Distance {
    pub fn value(&self) -> Option<usize> {
        match self {
            Distance::Exact { d, .. } => Some(*d),
            Distance::AboveCap { .. } => None,
        }
    }
}

/// A validated abelian generator set not containing `-I`.
#[derive(Clone, Debug)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliWord>,
    /// Symplectic echelon form of the generated group.
    span: EchelonBasis,
    /// Indices of the generators that were independent when added in order.
    independent: Vec<usize>,
}

fn symplectic_product(a: &BitVec, b: &BitVec, n: usize) -> bool {
    // a = (ax|az), b = (bx|bz)
    let ax = a.slice(0, n);
    let az = a.slice(n, n);
    let bx = b.slice(0, n);
    let bz = b.slice(n, n);
    (ax.and_count(&bz) + az.and_count(&bx)) % 2 == 1
}

/// Signed Gaussian elimination over Pauli words. Calls `on_dependent` with
/// the generator index and the sign of the reduced identity whenever a
/// generator is a product of earlier ones.
fn signed_elimination(
    gens: &[PauliWord],
    mut on_dependent: impl FnMut(usize, bool) -> Result<(), StabilizerError>,
) -> Result<(EchelonBasis, Vec<usize>), StabilizerError> {
    let mut rows: Vec<(PauliWord, usize)> = Vec::new();
    let mut span = EchelonBasis::new();
    let mut independent = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let mut w = g.clone();
        for (row, p) in &rows {
            if w.symplectic().get(*p) {
                w.mul_assign(row);
            }
        }
        let sv = w.symplectic();
        match sv.first_one() {
            None => on_dependent(i, w.is_negative())?,
            Some(p) => {
                for (row, _) in rows.iter_mut() {
                    if row.symplectic().get(p) {
                        row.mul_assign(&w);
                    }
                }
                rows.push((w, p));
                span.insert(sv);
                independent.push(i);
            }
        }
    }
    Ok((span, independent))
}

impl StabilizerGroup {
    pub fn new(n: usize, generators: Vec<PauliWord>) -> Result<Self, StabilizerError> {
        for (index, g) in generators.iter().enumerate() {
            if g.num_qubits() != n {
                return Err(StabilizerError::LengthMismatch {
                    index,
                    got: g.num_qubits(),
                    expected: n,
                });
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if !generators[i].commutes_unchecked(&generators[j]) {
                    return Err(StabilizerError::NonAbelian(i, j));
                }
            }
        }
        let (span, independent) = signed_elimination(&generators, |i, negative| {
            if negative {
                Err(StabilizerError::MinusIdentityInGroup(i))
            } else {
                Ok(())
            }
        })?;
        Ok(StabilizerGroup {
            n,
            generators,
            span,
            independent,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliWord] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    pub fn k(&self) -> usize {
        self.n - self.rank()
    }

    pub fn independent_generators(&self) -> &[usize] {
        &self.independent
    }

    pub fn params(&self) -> CodeParams {
        CodeParams {
            n: self.n,
            s_generators_given: self.generators.len(),
            s_independent: self.rank(),
            k: self.k(),
            d: None,
            redundancies: self.generators.len() - self.rank(),
        }
    }

    /// Membership up to sign.
    pub fn contains(&self, w: &PauliWord) -> bool {
        self.span.contains(&w.symplectic())
    }

    /// Bit `j` is set iff `error` anticommutes with generator `j`.
    pub fn syndrome(&self, error: &PauliWord) -> Result<BitVec, crate::pauli::PauliError> {
        syndrome(&self.generators, error)
    }

    /// Product of the generators selected by `subset`.
    pub fn element(&self, subset: &BitVec) -> PauliWord {
        let mut w = PauliWord::identity(self.n);
        for i in subset.iter_ones() {
            w.mul_assign(&self.generators[i]);
        }
        w
    }

    /// Basis of the normalizer as symplectic vectors.
    fn normalizer(&self) -> Vec<BitVec> {
        let n = self.n;
        let rows: Vec<BitVec> = self
            .generators
            .iter()
            .map(|g| g.z_bits().concat(g.x_bits()))
            .collect();
        gf2::nullspace(&rows, 2 * n)
    }

    /// `k` pairs `(X̄_j, Z̄_j)`: every operator commutes with the group, each
    /// pair anticommutes, operators from different pairs commute.
    ///
    /// Obtained by symplectic Gram–Schmidt on a complement of the group in
    /// its normalizer; representatives are reduced modulo the group.
    pub fn logical_basis(&self) -> Vec<(PauliWord, PauliWord)> {
        let n = self.n;
        let mut running = self.span.clone();
        let mut pool: Vec<BitVec> = self
            .normalizer()
            .into_iter()
            .filter(|v| running.insert(v.clone()))
            .collect();
        debug_assert_eq!(pool.len(), 2 * self.k());
        let mut pairs = Vec::new();
        while !pool.is_empty() {
            let a = pool.remove(0);
            let j = pool
                .iter()
                .position(|b| symplectic_product(&a, b, n))
                .expect("quotient of the normalizer is symplectic");
            let b = pool.remove(j);
            for c in pool.iter_mut() {
                if symplectic_product(c, &b, n) {
                    c.xor_assign(&a);
                }
                if symplectic_product(c, &a, n) {
                    c.xor_assign(&b);
                }
            }
            pairs.push((
                PauliWord::from_symplectic(&self.span.reduce(&a)),
                PauliWord::from_symplectic(&self.span.reduce(&b)),
            ));
        }
        pairs
    }

    /// Smallest weight `w <= cap` of an operator that commutes with every
    /// generator and is not in the group.
    ///
    /// Enumerates supports in increasing order with a running syndrome; the
    /// last qubit is found by syndrome lookup instead of a scan.
    pub fn min_distance(&self, cap: usize) -> Result<Distance, StabilizerError> {
        if self.k() == 0 {
            return Err(StabilizerError::ZeroLogicalQubits);
        }
        let n = self.n;
        let s = self.generators.len();
        let columns: Vec<[BitVec; 3]> = (0..n)
            .map(|q| {
                Letter::ALL.map(|l| {
                    let e = PauliWord::from_letters(n, [(q, l)]);
                    syndrome(&self.generators, &e).expect("lengths checked")
                })
            })
            .collect();
        let mut lookup: HashMap<&BitVec, Vec<(usize, Letter)>> = HashMap::new();
        for (q, cols) in columns.iter().enumerate() {
            for (l, c) in Letter::ALL.iter().zip(cols) {
                lookup.entry(c).or_default().push((q, *l));
            }
        }
        let mut search = Search {
            group: self,
            columns: &columns,
            lookup: &lookup,
            chosen: Vec::new(),
        };
        for w in 1..=cap.min(n) {
            if let Some(witness) = search.run(w, 0, &BitVec::zeros(s)) {
                return Ok(Distance::Exact { d: w, witness });
            }
        }
        Ok(Distance::AboveCap { cap })
    }
}

struct Search<'a> {
    group: &'a StabilizerGroup,
    columns: &'a [[BitVec; 3]],
    lookup: &'a HashMap<&'a BitVec, Vec<(usize, Letter)>>,
    chosen: Vec<(usize, Letter)>,
}

impl Search<'_> {
    fn word(&self, last: Option<(usize, Letter)>) -> PauliWord {
        PauliWord::from_letters(
            self.group.n,
            self.chosen.iter().copied().chain(last),
        )
    }

    /// Picks `remaining` more qubits at index `>= from`.
    fn run(&mut self, remaining: usize, from: usize, syn: &BitVec) -> Option<PauliWord> {
        let n = self.group.n;
        if remaining == 1 {
            let mut best: Option<(usize, Letter)> = None;
            if let Some(cands) = self.lookup.get(syn) {
                for &(q, l) in cands {
                    if q < from {
                        continue;
                    }
                    let w = self.word(Some((q, l)));
                    if !self.group.contains(&w) && best.is_none_or(|b| (q, l) < b) {
                        best = Some((q, l));
                    }
                }
            }
            return best.map(|b| self.word(Some(b)));
        }
        for q in from..n {
            if n - q < remaining {
                break;
            }
            for (li, l) in Letter::ALL.iter().enumerate() {
                let next = syn.xor(&self.columns[q][li]);
                self.chosen.push((q, *l));
                let found = self.run(remaining - 1, q + 1, &next);
                self.chosen.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }
}

/// Bit `j` is set iff `error` anticommutes with `generators[j]`.
pub fn syndrome(generators: &[PauliWord], error: &PauliWord) -> Result<BitVec, crate::pauli::PauliError> {
    let mut out = BitVec::zeros(generators.len());
    for (j, g) in generators.iter().enumerate() {
        if !g.commutes(error)? {
            out.set(j, true);
        }
    }
    Ok(out)
}

pub fn stabilizer_params(n: usize, generators: &[PauliWord]) -> Result<CodeParams, StabilizerError> {
    Ok(StabilizerGroup::new(n, generators.to_vec())?.params())
}

pub fn logical_basis(
    n: usize,
    generators: &[PauliWord],
) -> Result<Vec<(PauliWord, PauliWord)>, StabilizerError> {
    Ok(StabilizerGroup::new(n, generators.to_vec())?.logical_basis())
}

pub fn min_distance(
    n: usize,
    generators: &[PauliWord],
    weight_cap: usize,
) -> Result<Distance, StabilizerError> {
    StabilizerGroup::new(n, generators.to_vec())?.min_distance(weight_cap)
}

/// Flips the sign of dependent generators so that the group does not
/// contain `-I`. Independent generators keep their signs.
///
/// The generators must commute pairwise.
pub fn fix_signs(generators: &mut [PauliWord]) {
    let mut flips = Vec::new();
    let gens = generators.to_vec();
    // Elimination runs on the original list; flipping a dependent generator
    // turns its reduced product from -I into +I without touching the rows.
    signed_elimination(&gens, |i, negative| {
        if negative {
            flips.push(i);
        }
        Ok(())
    })
    .expect("callback never fails");
    for i in flips {
        generators[i].negate();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(ws: &[&str]) -> Vec<PauliWord> {
        ws.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn full_rank_pair() {
        let p = stabilizer_params(2, &words(&["ZZ", "XX"])).unwrap();
        assert_eq!((p.s_independent, p.k, p.redundancies), (2, 0, 0));
    }

    #[test]
    fn empty_generators() {
        let p = stabilizer_params(3, &[]).unwrap();
        assert_eq!(p.k, 3);
        assert!(logical_basis(3, &[]).unwrap().len() == 3);
    }

    #[test]
    fn non_abelian_and_minus_identity() {
        assert_eq!(
            stabilizer_params(1, &words(&["X", "Z"])),
            Err(StabilizerError::NonAbelian(0, 1))
        );
        assert_eq!(
            stabilizer_params(2, &words(&["XX", "ZZ", "YY"])),
            Err(StabilizerError::MinusIdentityInGroup(2))
        );
        assert_eq!(
            stabilizer_params(2, &words(&["XX", "-XX"])),
            Err(StabilizerError::MinusIdentityInGroup(1))
        );
        let p = stabilizer_params(2, &words(&["XX", "ZZ", "-YY"])).unwrap();
        assert_eq!(p.redundancies, 1);
    }

    #[test]
    fn fix_signs_removes_minus_identity() {
        let mut g = words(&["XX", "ZZ", "YY"]);
        fix_signs(&mut g);
        assert_eq!(g[2].to_string(), "-YY");
        assert!(stabilizer_params(2, &g).is_ok());
    }

    #[test]
    fn four_qubit_polygon_code() {
        let g = words(&["XXXX", "ZZZZ"]);
        let group = StabilizerGroup::new(4, g).unwrap();
        assert_eq!(group.k(), 2);
        let pairs = group.logical_basis();
        assert_eq!(pairs.len(), 2);
        assert_eq!(group.min_distance(4).unwrap().value(), Some(2));
    }

    #[test]
    fn distance_above_cap() {
        let group = StabilizerGroup::new(4, words(&["XXXX", "ZZZZ"])).unwrap();
        assert_eq!(group.min_distance(1).unwrap(), Distance::AboveCap { cap: 1 });
        let full = StabilizerGroup::new(2, words(&["XX", "ZZ"])).unwrap();
        assert_eq!(full.min_distance(2), Err(StabilizerError::ZeroLogicalQubits));
    }

    #[test]
    fn syndrome_bits() {
        let g = words(&["XXII", "IZZI"]);
        let s = syndrome(&g, &"IZII".parse().unwrap()).unwrap();
        assert_eq!(s.iter_ones().collect::<Vec<_>>(), vec![0]);
        assert!(syndrome(&g, &"IZ".parse().unwrap()).is_err());
    }
}
