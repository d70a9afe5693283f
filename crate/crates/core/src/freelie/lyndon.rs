use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use super::tensor::{TruncTensor, Word};
use crate::error::{Error, Result};

pub const MAX_CLASS: usize = 8;

/// Lyndon words over {x, y} up to length `c`, all sorted by (length, lex).
pub fn lyndon_words(c: usize) -> Vec<Word> {
    // Duval's generation in lex order, then regrouped by length
    let mut out = Vec::new();
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(Word::from_letters(&w));
        let m = w.len();
        while w.len() < c {
            let l = w[w.len() % m];
            w.push(l);
        }
        while w.last() == Some(&1) {
            w.pop();
        }
        match w.last_mut() {
            None => break,
            Some(l) => *l = 1,
        }
    }
    out.sort();
    out
}

/// Element of the free Lie algebra, as coefficients on Lyndon basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeLieElem {
    pub(crate) c: usize,
    pub(crate) coeffs: BTreeMap<usize, BigRational>,
}

impl FreeLieElem {
    pub fn class_bound(&self) -> usize {
        self.c
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().map(|(i, q)| (*i, q))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Lyndon basis of the free Lie algebra on {x, y} truncated above degree `c`.
pub struct LyndonBasis {
    c: usize,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    expansions: Vec<TruncTensor>,
    factors: Vec<Option<(usize, usize)>>,
    structure: HashMap<(usize, usize), FreeLieElem>,
}

impl LyndonBasis {
    pub fn new(c: usize) -> Result<LyndonBasis> {
        if !(1..=MAX_CLASS).contains(&c) {
            return Err(Error::InvalidArgument(format!("class bound {c} outside 1..={MAX_CLASS}")));
        }
        let words = lyndon_words(c);
        let index: HashMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (*w, i)).collect();
        let mut expansions: Vec<TruncTensor> = Vec::with_capacity(words.len());
        let mut factors = Vec::with_capacity(words.len());
        for w in &words {
            match w.standard_factorization() {
                None => {
                    factors.push(None);
                    expansions.push(TruncTensor::word(c, *w));
                }
                Some((u, v)) => {
                    let (iu, iv) = (index[&u], index[&v]);
                    factors.push(Some((iu, iv)));
                    let e = expansions[iu].commutator(&expansions[iv]);
                    expansions.push(e);
                }
            }
        }
        let mut basis = LyndonBasis { c, words, index, expansions, factors, structure: HashMap::new() };
        let n = basis.words.len();
        let mut structure = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if basis.words[i].len() + basis.words[j].len() <= c {
                    let t = basis.expansions[i].commutator(&basis.expansions[j]);
                    structure.insert((i, j), basis.project(&t)?);
                }
            }
        }
        basis.structure = structure;
        Ok(basis)
    }

    pub fn class_bound(&self) -> usize {
        self.c
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn word(&self, i: usize) -> Word {
        self.words[i]
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn factors(&self, i: usize) -> Option<(usize, usize)> {
        self.factors[i]
    }

    pub fn expansion(&self, i: usize) -> &TruncTensor {
        &self.expansions[i]
    }

    pub fn dims_per_degree(&self) -> Vec<usize> {
        (1..=self.c).map(|d| self.words.iter().filter(|w| w.len() == d).count()).collect()
    }

    pub fn zero(&self) -> FreeLieElem {
        FreeLieElem { c: self.c, coeffs: BTreeMap::new() }
    }

    pub fn generator(&self, w: Word) -> FreeLieElem {
        let mut e = self.zero();
        if let Some(i) = self.index_of(&w) {
            e.coeffs.insert(i, num_traits::One::one());
        }
        e
    }

    /// Coefficient of the basis element with Lyndon word `w`.
    pub fn coeff(&self, e: &FreeLieElem, w: Word) -> BigRational {
        self.index_of(&w)
            .and_then(|i| e.coeffs.get(&i).cloned())
            .unwrap_or_else(BigRational::zero)
    }

    /// Rewrites a Lie polynomial in the Lyndon basis, using that the expansion of
    /// a Lyndon bracket is its word plus lexicographically larger words.
    pub fn project(&self, t: &TruncTensor) -> Result<FreeLieElem> {
        let mut rest = t.clone();
        let mut coeffs = BTreeMap::new();
        if !rest.coeff(Word::EMPTY).is_zero() {
            return Err(Error::InvalidArgument("constant term in Lie projection".into()));
        }
        loop {
            let lead = rest.terms().next().map(|(w, q)| (w, q.clone()));
            let Some((w, q)) = lead else { break };
            let i = self.index_of(&w).ok_or_else(|| {
                Error::InvalidArgument(format!("not a Lie polynomial: leading word {w:?}"))
            })?;
            rest = rest.sub(&self.expansions[i].scale(&q));
            coeffs.insert(i, q);
        }
        Ok(FreeLieElem { c: self.c, coeffs })
    }

    pub fn to_tensor(&self, e: &FreeLieElem) -> TruncTensor {
        e.coeffs
            .iter()
            .fold(TruncTensor::zero(self.c), |acc, (i, q)| acc.add(&self.expansions[*i].scale(q)))
    }

    pub fn add(&self, a: &FreeLieElem, b: &FreeLieElem) -> FreeLieElem {
        let mut coeffs = a.coeffs.clone();
        for (i, q) in &b.coeffs {
            let v = coeffs.entry(*i).or_insert_with(BigRational::zero);
            *v += q;
            if v.is_zero() {
                coeffs.remove(i);
            }
        }
        FreeLieElem { c: self.c, coeffs }
    }

    pub fn scale(&self, a: &FreeLieElem, q: &BigRational) -> FreeLieElem {
        if q.is_zero() {
            return self.zero();
        }
        FreeLieElem { c: self.c, coeffs: a.coeffs.iter().map(|(i, v)| (*i, v * q)).collect() }
    }

    /// Bracket through the structure constants; terms above degree `c` vanish.
    pub fn bracket(&self, a: &FreeLieElem, b: &FreeLieElem) -> FreeLieElem {
        let mut out = self.zero();
        for (i, qa) in &a.coeffs {
            for (j, qb) in &b.coeffs {
                if let Some(s) = self.structure.get(&(*i, *j)) {
                    out = self.add(&out, &self.scale(s, &(qa * qb)));
                }
            }
        }
        out
    }

    pub fn degree_part(&self, e: &FreeLieElem, m: usize) -> FreeLieElem {
        let coeffs = e
            .coeffs
            .iter()
            .filter(|(i, _)| self.words[**i].len() == m)
            .map(|(i, q)| (*i, q.clone()))
            .collect();
        FreeLieElem { c: self.c, coeffs }
    }

    /// Restriction to degrees ≤ `m`, re-expressed over a smaller basis.
    pub fn restrict(&self, e: &FreeLieElem, smaller: &LyndonBasis) -> FreeLieElem {
        let coeffs = e
            .coeffs
            .iter()
            .filter_map(|(i, q)| smaller.index_of(&self.words[*i]).map(|j| (j, q.clone())))
            .collect();
        FreeLieElem { c: smaller.c, coeffs }
    }
}
