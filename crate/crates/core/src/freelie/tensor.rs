use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A word over {x, y} of length at most 15; letter 0 is `x`, 1 is `y`.
///
/// Ordering is by length, then lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    len: u8,
    bits: u16,
}

impl Word {
    pub const X: Word = Word { len: 1, bits: 0 };
    pub const Y: Word = Word { len: 1, bits: 1 };
    pub const EMPTY: Word = Word { len: 0, bits: 0 };

    pub fn from_letters(letters: &[u8]) -> Word {
        assert!(letters.len() < 16);
        let bits = letters.iter().fold(0u16, |acc, &l| (acc << 1) | (l as u16 & 1));
        Word { len: letters.len() as u8, bits }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn letter(&self, i: usize) -> u8 {
        ((self.bits >> (self.len as usize - 1 - i)) & 1) as u8
    }

    pub fn letters(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.letter(i)).collect()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word { len: self.len + other.len, bits: (self.bits << other.len) | other.bits }
    }

    fn suffix(&self, start: usize) -> Word {
        let len = self.len - start as u8;
        Word { len, bits: self.bits & ((1u32 << len) - 1) as u16 }
    }

    fn prefix(&self, end: usize) -> Word {
        Word { len: end as u8, bits: self.bits >> (self.len as usize - end) }
    }

    /// Strictly smaller than all its proper rotations.
    pub fn is_lyndon(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let l = self.letters();
        (1..n).all(|s| {
            let rot: Vec<u8> = l[s..].iter().chain(&l[..s]).copied().collect();
            l < rot
        })
    }

    /// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
    pub fn standard_factorization(&self) -> Option<(Word, Word)> {
        if self.len() < 2 {
            return None;
        }
        (1..self.len())
            .map(|s| (self.prefix(s), self.suffix(s)))
            .find(|(_, v)| v.is_lyndon())
    }

    pub(crate) fn dense_index(&self) -> usize {
        (1usize << self.len) - 1 + self.bits as usize
    }

    pub(crate) fn from_dense(idx: usize) -> Word {
        let len = usize::BITS - 1 - (idx + 1).leading_zeros();
        Word { len: len as u8, bits: (idx + 1 - (1 << len)) as u16 }
    }

    /// Standard bracketing, e.g. `[x,[x,y]]`.
    pub fn bracketed(&self, letters: [char; 2]) -> String {
        match self.standard_factorization() {
            None => self.letters().iter().map(|&l| letters[l as usize]).collect(),
            Some((u, v)) => format!("[{},{}]", u.bracketed(letters), v.bracketed(letters)),
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.letters().iter().map(|&l| if l == 0 { 'x' } else { 'y' }).collect();
        write!(f, "{s}")
    }
}

/// Dense element of the free associative algebra on {x, y} truncated above degree `c`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncTensor {
    c: usize,
    coeffs: Vec<BigRational>,
}

impl TruncTensor {
    pub fn zero(c: usize) -> TruncTensor {
        TruncTensor { c, coeffs: vec![BigRational::zero(); (1 << (c + 1)) - 1] }
    }

    pub fn one(c: usize) -> TruncTensor {
        let mut t = Self::zero(c);
        t.coeffs[0] = BigRational::one();
        t
    }

    pub fn word(c: usize, w: Word) -> TruncTensor {
        let mut t = Self::zero(c);
        if w.len() <= c {
            t.coeffs[w.dense_index()] = BigRational::one();
        }
        t
    }

    pub fn class_bound(&self) -> usize {
        self.c
    }

    pub fn coeff(&self, w: Word) -> BigRational {
        if w.len() > self.c {
            return BigRational::zero();
        }
        self.coeffs[w.dense_index()].clone()
    }

    pub fn add_term(&mut self, w: Word, q: &BigRational) {
        if w.len() <= self.c {
            self.coeffs[w.dense_index()] += q;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|q| q.is_zero())
    }

    /// Nonzero terms in (length, lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (Word, &BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(i, q)| (Word::from_dense(i), q))
    }

    pub fn degree_part(&self, m: usize) -> TruncTensor {
        let mut out = Self::zero(self.c);
        if m <= self.c {
            let start = (1 << m) - 1;
            out.coeffs[start..start + (1 << m)].clone_from_slice(&self.coeffs[start..start + (1 << m)]);
        }
        out
    }

    /// Drops all terms of degree above `m`.
    pub fn truncate(&self, m: usize) -> TruncTensor {
        let mut out = self.clone();
        for (i, q) in out.coeffs.iter_mut().enumerate() {
            if Word::from_dense(i).len() > m {
                *q = BigRational::zero();
            }
        }
        out
    }

    pub fn add(&self, other: &TruncTensor) -> TruncTensor {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        TruncTensor { c: self.c, coeffs }
    }

    pub fn sub(&self, other: &TruncTensor) -> TruncTensor {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        TruncTensor { c: self.c, coeffs }
    }

    pub fn scale(&self, q: &BigRational) -> TruncTensor {
        TruncTensor { c: self.c, coeffs: self.coeffs.iter().map(|a| a * q).collect() }
    }

    pub fn mul(&self, other: &TruncTensor) -> TruncTensor {
        let mut out = Self::zero(self.c);
        let rhs: Vec<(Word, &BigRational)> = other.terms().collect();
        for (u, a) in self.terms() {
            for (v, b) in &rhs {
                if u.len() + v.len() > self.c {
                    break;
                }
                out.coeffs[u.concat(v).dense_index()] += a * *b;
            }
        }
        out
    }

    pub fn commutator(&self, other: &TruncTensor) -> TruncTensor {
        self.mul(other).sub(&other.mul(self))
    }

    /// exp of an element with zero constant term.
    pub fn exp(&self) -> TruncTensor {
        assert!(self.coeffs[0].is_zero(), "exp needs zero constant term");
        let mut acc = Self::one(self.c);
        let mut term = Self::one(self.c);
        for k in 1..=self.c {
            term = term.mul(self).scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            acc = acc.add(&term);
        }
        acc
    }

    /// log of an element with constant term 1.
    pub fn log(&self) -> TruncTensor {
        assert!(self.coeffs[0].is_one(), "log needs constant term 1");
        let u = self.sub(&Self::one(self.c));
        let mut acc = Self::zero(self.c);
        let mut term = Self::one(self.c);
        for k in 1..=self.c {
            term = term.mul(&u);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&term.scale(&BigRational::new(BigInt::from(sign), BigInt::from(k))));
        }
        acc
    }

    /// log(exp(a) exp(b)).
    pub fn bch(&self, other: &TruncTensor) -> TruncTensor {
        self.exp().mul(&other.exp()).log()
    }
}

impl fmt::Debug for TruncTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms().map(|(w, q)| format!("{q}*{w:?}")).collect();
        write!(f, "{}", if terms.is_empty() { "0".into() } else { terms.join(" + ") })
    }
}
