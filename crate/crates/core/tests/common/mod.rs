//! Independent oracles over plain bit masks, for codes on at most 128
//! qubits. They read generators straight from the face letters of a code
//! and share no linear algebra with the library.

#![allow(dead_code)]

use homcode::hsc::HscCode;
use homcode::pauli::Letter;

/// `(x, z)` bit masks of a Pauli operator, signs ignored.
pub type Sym = (u128, u128);

pub fn letter_bits(l: Letter) -> (bool, bool) {
    match l {
        Letter::X => (true, false),
        Letter::Y => (true, true),
        Letter::Z => (false, true),
    }
}

/// One mask pair per generator, built from the facial walks. A vertex
/// visited twice by a face gets the product of its letters.
pub fn generators(code: &HscCode) -> Vec<Sym> {
    assert!(code.num_qubits() <= 128);
    let mut out = Vec::new();
    for fg in &code.faces {
        for g in &fg.generators {
            let mut s = (0u128, 0u128);
            for (&d, &l) in code.map.face_darts(fg.face).iter().zip(&g.letters) {
                let q = code.map.vertex_of(d);
                let (x, z) = letter_bits(l);
                if x {
                    s.0 ^= 1 << q;
                }
                if z {
                    s.1 ^= 1 << q;
                }
            }
            out.push(s);
        }
    }
    out
}

pub fn commute(a: Sym, b: Sym) -> bool {
    ((a.0 & b.1).count_ones() + (a.1 & b.0).count_ones()).is_multiple_of(2)
}

/// Reduced row basis over GF(2) on the concatenated `(x, z)` bits.
#[derive(Clone, Default)]
pub struct Basis {
    rows: Vec<(Sym, u32)>,
}

fn pivot(s: Sym) -> Option<u32> {
    if s.0 != 0 {
        Some(s.0.trailing_zeros())
    } else if s.1 != 0 {
        Some(128 + s.1.trailing_zeros())
    } else {
        None
    }
}

fn has_bit(s: Sym, p: u32) -> bool {
    if p < 128 {
        s.0 >> p & 1 == 1
    } else {
        s.1 >> (p - 128) & 1 == 1
    }
}

impl Basis {
    pub fn reduce(&self, mut s: Sym) -> Sym {
        for &(r, p) in &self.rows {
            if has_bit(s, p) {
                s = (s.0 ^ r.0, s.1 ^ r.1);
            }
        }
        s
    }

    /// Adds `s`; returns whether the rank grew.
    pub fn insert(&mut self, s: Sym) -> bool {
        let s = self.reduce(s);
        match pivot(s) {
            None => false,
            Some(p) => {
                for row in &mut self.rows {
                    if has_bit(row.0, p) {
                        row.0 = (row.0 .0 ^ s.0, row.0 .1 ^ s.1);
                    }
                }
                self.rows.push((s, p));
                true
            }
        }
    }

    pub fn contains(&self, s: Sym) -> bool {
        self.reduce(s) == (0, 0)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub fn rank(gens: &[Sym]) -> usize {
    let mut b = Basis::default();
    for &g in gens {
        b.insert(g);
    }
    b.rank()
}

/// `n - rank`.
pub fn logical_qubits(n: usize, gens: &[Sym]) -> usize {
    n - rank(gens)
}

/// Smallest weight `w <= cap` of an operator commuting with every
/// generator and outside their span, by enumerating every operator of
/// that weight.
pub fn brute_force_distance(n: usize, gens: &[Sym], cap: usize) -> Option<(usize, Sym)> {
    let mut span = Basis::default();
    for &g in gens {
        span.insert(g);
    }
    for w in 1..=cap.min(n) {
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            for code in 0..3usize.pow(w as u32) {
                let mut s = (0u128, 0u128);
                let mut c = code;
                for &q in &support {
                    let (x, z) = [(true, false), (false, true), (true, true)][c % 3];
                    c /= 3;
                    if x {
                        s.0 |= 1 << q;
                    }
                    if z {
                        s.1 |= 1 << q;
                    }
                }
                if gens.iter().all(|&g| commute(g, s)) && !span.contains(s) {
                    return Some((w, s));
                }
            }
            // next combination
            let mut i = w;
            while i > 0 && support[i - 1] == n - w + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            support[i - 1] += 1;
            for j in i..w {
                support[j] = support[j - 1] + 1;
            }
        }
    }
    None
}

/// Indices of generators that anticommute with `e`.
pub fn violated(gens: &[Sym], e: Sym) -> Vec<usize> {
    (0..gens.len()).filter(|&i| !commute(gens[i], e)).collect()
}

pub fn single(q: usize, l: Letter) -> Sym {
    let (x, z) = letter_bits(l);
    ((x as u128) << q, (z as u128) << q)
}
