//! n-qubit Pauli operators in symplectic (x|z) form with a ±1 sign.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::gf2::BitVec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("length mismatch: {0} vs {1} qubits")]
    LengthMismatch(usize, usize),
    #[error("invalid Pauli character {0:?}")]
    BadChar(char),
}

/// A non-identity single-qubit Pauli.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
    Z,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    /// `(x, z)` bits.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Option<Letter> {
        match (x, z) {
            (false, false) => None,
            (true, false) => Some(Letter::X),
            (true, true) => Some(Letter::Y),
            (false, true) => Some(Letter::Z),
        }
    }

    pub fn anticommutes(self, other: Letter) -> bool {
        self != other
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Tensor product of single-qubit Paulis with an overall sign.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliWord {
    x: BitVec,
    z: BitVec,
    negative: bool,
}

impl PauliWord {
    pub fn identity(n: usize) -> Self {
        PauliWord {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            negative: false,
        }
    }

    pub fn from_parts(x: BitVec, z: BitVec, negative: bool) -> Self {
        assert_eq!(x.len(), z.len());
        PauliWord { x, z, negative }
    }

    /// Word with the given letters on the given qubits. A qubit listed more
    /// than once receives the product of its letters, up to phase.
    pub fn from_letters(n: usize, letters: impl IntoIterator<Item = (usize, Letter)>) -> Self {
        let mut w = Self::identity(n);
        for (q, l) in letters {
            let (x, z) = l.bits();
            if x {
                w.x.flip(q);
            }
            if z {
                w.z.flip(q);
            }
        }
        w
    }

    /// Uniform letter on every qubit of `support`.
    pub fn uniform(n: usize, support: impl IntoIterator<Item = usize>, l: Letter) -> Self {
        Self::from_letters(n, support.into_iter().map(|q| (q, l)))
    }

    /// Parses the symplectic vector `(x | z)` of length `2n`.
    pub fn from_symplectic(v: &BitVec) -> Self {
        let n = v.len() / 2;
        PauliWord {
            x: v.slice(0, n),
            z: v.slice(n, n),
            negative: false,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }
    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }
    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }
    pub fn is_negative(&self) -> bool {
        self.negative
    }
    pub fn with_sign(mut self, negative: bool) -> Self {
        self.negative = negative;
        self
    }
    pub fn negate(&mut self) {
        self.negative = !self.negative;
    }

    pub fn letter(&self, q: usize) -> Option<Letter> {
        Letter::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set_letter(&mut self, q: usize, l: Option<Letter>) {
        let (x, z) = l.map_or((false, false), Letter::bits);
        self.x.set(q, x);
        self.z.set(q, z);
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).iter_ones().collect()
    }

    /// Ignores the sign.
    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// `(x | z)` as one vector of length `2n`.
    pub fn symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    /// Symplectic inner product `x_a·z_b + z_a·x_b` is zero.
    pub fn commutes(&self, other: &PauliWord) -> Result<bool, PauliError> {
        if self.num_qubits() != other.num_qubits() {
            return Err(PauliError::LengthMismatch(self.num_qubits(), other.num_qubits()));
        }
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &PauliWord) -> bool {
        (self.x.and_count(&other.z) + self.z.and_count(&other.x)).is_multiple_of(2)
    }

    /// Product `self · other` as a letter word times `i^k`; returns the word
    /// with positive sign and `k mod 4`, with the sign folded into `k`.
    pub fn mul_phase(&self, other: &PauliWord) -> (PauliWord, u8) {
        assert_eq!(self.num_qubits(), other.num_qubits());
        let x = self.x.xor(&other.x);
        let z = self.z.xor(&other.z);
        let mut e = 2 * self.negative as usize + 2 * other.negative as usize;
        e += self.x.and_count(&self.z) + other.x.and_count(&other.z);
        e += 2 * self.z.and_count(&other.x);
        let y3 = x.and_count(&z);
        let e = (e + 4 * (y3 / 4 + 1) - y3) % 4;
        (PauliWord { x, z, negative: false }, e as u8)
    }

    /// Product of two commuting words. `None` if they anticommute.
    pub fn mul(&self, other: &PauliWord) -> Option<PauliWord> {
        let (mut w, e) = self.mul_phase(other);
        match e {
            0 => Some(w),
            2 => {
                w.negative = true;
                Some(w)
            }
            _ => None,
        }
    }

    /// In-place product with a commuting word.
    pub fn mul_assign(&mut self, other: &PauliWord) {
        *self = self.mul(other).expect("product of commuting Paulis");
    }

    /// Letter form of every qubit, `None` for identity.
    pub fn letters(&self) -> Vec<Option<Letter>> {
        (0..self.num_qubits()).map(|q| self.letter(q)).collect()
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for q in 0..self.num_qubits() {
            let c = self.letter(q).map_or('I', Letter::as_char);
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PauliWord {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negative, body) = match s.chars().next() {
            Some('+') => (false, &s[1..]),
            Some('-') => (true, &s[1..]),
            _ => (false, s),
        };
        let n = body.chars().count();
        let mut w = PauliWord::identity(n);
        w.negative = negative;
        for (q, c) in body.chars().enumerate() {
            match c {
                'I' => {}
                _ => w.set_letter(q, Some(Letter::from_char(c).ok_or(PauliError::BadChar(c))?)),
            }
        }
        Ok(w)
    }
}

impl Serialize for PauliWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    #[test]
    fn commutation_examples() {
        assert!(!p("XI").commutes(&p("ZI")).unwrap());
        assert!(p("XX").commutes(&p("ZZ")).unwrap());
        let a = p("XYZIZ");
        assert!(a.commutes(&a).unwrap());
        assert_eq!(
            p("X").commutes(&p("XX")),
            Err(PauliError::LengthMismatch(1, 2))
        );
    }

    #[test]
    fn parse_print() {
        for s in ["+XZIZX", "-IIY", "+"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("XZ").to_string(), "+XZ");
        assert_eq!("XA".parse::<PauliWord>(), Err(PauliError::BadChar('A')));
    }

    #[test]
    fn products_track_phase() {
        // X·Z = -iY
        let (w, e) = p("X").mul_phase(&p("Z"));
        assert_eq!((w.to_string(), e), ("+Y".to_string(), 3));
        // Z·X = iY
        assert_eq!(p("Z").mul_phase(&p("X")).1, 1);
        // XX·ZZ = -YY
        assert_eq!(p("XX").mul(&p("ZZ")).unwrap().to_string(), "-YY");
        // YY·YY = I
        assert_eq!(p("YY").mul(&p("YY")).unwrap().to_string(), "+II");
        // XX·ZZ·YY = -I
        let m = p("XX").mul(&p("ZZ")).unwrap().mul(&p("YY")).unwrap();
        assert!(m.is_identity() && m.is_negative());
        assert!(p("X").mul(&p("Y")).is_none());
    }

    #[test]
    fn weight_and_support() {
        let w = p("IXIYZ");
        assert_eq!(w.weight(), 3);
        assert_eq!(w.support(), vec![1, 3, 4]);
        assert_eq!(w.letter(3), Some(Letter::Y));
        assert_eq!(w.letter(0), None);
    }
}
