use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::lyndon::LyndonBasis;
use super::tensor::{TruncTensor, Word};
use crate::algebra::{GroupOps, LieOps};
use crate::error::{Error, Result};
use crate::modarith::PScalar;

pub const MAX_WORD_CLASS: usize = 6;

/// Lie series Σ q_w · b_w over Lyndon brackets, ready for evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSeries {
    pub c: usize,
    pub terms: Vec<(Word, PScalar)>,
}

/// Ordered product Π (commutator word)^q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupWord {
    pub c: usize,
    pub factors: Vec<(Word, PScalar)>,
}

fn lie_value<L: LieOps>(
    ops: &L,
    w: Word,
    x: &L::Elem,
    y: &L::Elem,
    memo: &mut HashMap<Word, L::Elem>,
) -> L::Elem {
    if let Some(v) = memo.get(&w) {
        return v.clone();
    }
    let v = match w.standard_factorization() {
        None if w == Word::X => x.clone(),
        None => y.clone(),
        Some((u, v)) => {
            let a = lie_value(ops, u, x, y, memo);
            let b = lie_value(ops, v, x, y, memo);
            ops.bracket(&a, &b)
        }
    };
    memo.insert(w, v.clone());
    v
}

/// Evaluates the standard bracketing of `w` as an iterated group commutator.
pub fn commutator_word<G: GroupOps>(
    ops: &G,
    w: Word,
    g: &G::Elem,
    h: &G::Elem,
    memo: &mut HashMap<Word, G::Elem>,
) -> G::Elem {
    if let Some(v) = memo.get(&w) {
        return v.clone();
    }
    let v = match w.standard_factorization() {
        None if w == Word::X => g.clone(),
        None => h.clone(),
        Some((u, v)) => {
            let a = commutator_word(ops, u, g, h, memo);
            let b = commutator_word(ops, v, g, h, memo);
            ops.commutator(&a, &b)
        }
    };
    memo.insert(w, v.clone());
    v
}

impl LieSeries {
    /// Sum of the terms of degree ≤ `max_degree` at (x, y).
    pub fn eval<L: LieOps>(&self, ops: &L, x: &L::Elem, y: &L::Elem, max_degree: usize) -> Result<L::Elem> {
        let mut memo = HashMap::new();
        let mut acc = ops.zero();
        for (w, q) in self.terms.iter().filter(|(w, _)| w.len() <= max_degree) {
            let v = lie_value(ops, *w, x, y, &mut memo);
            acc = ops.add(&acc, &ops.scale(q, &v)?);
        }
        Ok(acc)
    }

    pub fn truncate(&self, m: usize) -> LieSeries {
        LieSeries { c: m.min(self.c), terms: self.terms.iter().filter(|t| t.0.len() <= m).cloned().collect() }
    }

    pub fn coeff(&self, w: Word) -> PScalar {
        self.terms.iter().find(|t| t.0 == w).map(|t| t.1).unwrap_or(PScalar::ZERO)
    }
}

impl GroupWord {
    /// Product of the factors of degree ≤ `max_degree` at (g, h).
    pub fn eval<G: GroupOps>(&self, ops: &G, g: &G::Elem, h: &G::Elem, max_degree: usize) -> Result<G::Elem> {
        let mut memo = HashMap::new();
        let mut acc = ops.identity();
        for (w, q) in self.factors.iter().filter(|(w, _)| w.len() <= max_degree) {
            let v = commutator_word(ops, *w, g, h, &mut memo);
            acc = ops.mul(&acc, &ops.pow_rational(&v, q)?);
        }
        Ok(acc)
    }

    pub fn truncate(&self, m: usize) -> GroupWord {
        GroupWord { c: m.min(self.c), factors: self.factors.iter().filter(|t| t.0.len() <= m).cloned().collect() }
    }

    pub fn exponent(&self, w: Word) -> Option<PScalar> {
        self.factors.iter().find(|t| t.0 == w).map(|t| t.1)
    }
}

/// The free nilpotent group of class `c` on {x, y}, in BCH-log coordinates.
pub struct FreeBchGroup {
    pub c: usize,
}

impl GroupOps for FreeBchGroup {
    type Elem = TruncTensor;

    fn identity(&self) -> TruncTensor {
        TruncTensor::zero(self.c)
    }

    fn mul(&self, a: &TruncTensor, b: &TruncTensor) -> TruncTensor {
        a.bch(b)
    }

    fn inv(&self, a: &TruncTensor) -> TruncTensor {
        a.scale(&-BigRational::from_integer(1.into()))
    }

    fn pow_rational(&self, a: &TruncTensor, s: &PScalar) -> Result<TruncTensor> {
        Ok(a.scale(&s.to_big()))
    }
}

/// Peels off factors degree by degree until the BCH-log of the word equals `target`.
fn peel(basis: &LyndonBasis, target: &TruncTensor) -> Result<GroupWord> {
    let c = basis.class_bound();
    let group = FreeBchGroup { c };
    let (x, y) = (TruncTensor::word(c, Word::X), TruncTensor::word(c, Word::Y));
    let mut memo = HashMap::new();
    let mut current = group.identity();
    let mut factors = Vec::new();
    for m in 1..=c {
        let diff = target.sub(&current).degree_part(m);
        let proj = basis.project(&diff)?;
        for (i, q) in proj.terms() {
            if q.is_zero() {
                continue;
            }
            let w = basis.word(i);
            let s = PScalar::from_big(q)?;
            let v = commutator_word(&group, w, &x, &y, &mut memo);
            current = group.mul(&current, &group.pow_rational(&v, &s)?);
            factors.push((w, s));
        }
    }
    if !target.sub(&current).is_zero() {
        return Err(Error::TheoremViolation("inverse word peeling did not converge".into()));
    }
    Ok(GroupWord { c, factors })
}

/// Words P, Q with P(g,h) = x + y and Q(g,h) = [x,y] modulo degree > c.
pub fn derive_inverse_words(c: usize) -> Result<(GroupWord, GroupWord)> {
    if !(1..=MAX_WORD_CLASS).contains(&c) {
        return Err(Error::InvalidArgument(format!("class bound {c} outside 1..={MAX_WORD_CLASS}")));
    }
    let basis = LyndonBasis::new(c)?;
    let (x, y) = (TruncTensor::word(c, Word::X), TruncTensor::word(c, Word::Y));
    let p = peel(&basis, &x.add(&y))?;
    let q = peel(&basis, &x.commutator(&y))?;
    Ok((p, q))
}

/// Evaluates `word` in the free group of class `c` and compares with `target`.
pub fn self_inverts(word: &GroupWord, target: &TruncTensor) -> Result<bool> {
    let c = target.class_bound();
    let group = FreeBchGroup { c };
    let (x, y) = (TruncTensor::word(c, Word::X), TruncTensor::word(c, Word::Y));
    Ok(word.eval(&group, &x, &y, c)? == *target)
}

/// BCH series in evaluable form.
pub fn bch_table(basis: &LyndonBasis) -> Result<LieSeries> {
    let e = super::bch::bch_series(basis)?;
    let terms = e
        .terms()
        .map(|(i, q)| Ok((basis.word(i), PScalar::from_big(q)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LieSeries { c: basis.class_bound(), terms })
}

/// Straight-line form of a series or word: nodes in evaluation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    X,
    Y,
    Pair(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub nodes: Vec<Node>,
    /// (node index, coefficient or exponent), in output order.
    pub outputs: Vec<(usize, PScalar)>,
}

fn compile(rows: &[(Word, PScalar)], max_degree: usize) -> Program {
    fn node(w: Word, nodes: &mut Vec<Node>, seen: &mut HashMap<Word, usize>) -> usize {
        if let Some(&i) = seen.get(&w) {
            return i;
        }
        let n = match w.standard_factorization() {
            None if w == Word::X => Node::X,
            None => Node::Y,
            Some((u, v)) => {
                let a = node(u, nodes, seen);
                let b = node(v, nodes, seen);
                Node::Pair(a, b)
            }
        };
        nodes.push(n);
        seen.insert(w, nodes.len() - 1);
        nodes.len() - 1
    }
    let mut nodes = Vec::new();
    let mut seen = HashMap::new();
    let outputs = rows
        .iter()
        .filter(|(w, _)| w.len() <= max_degree)
        .map(|(w, q)| (node(*w, &mut nodes, &mut seen), *q))
        .collect();
    Program { nodes, outputs }
}

impl LieSeries {
    pub fn compile(&self, max_degree: usize) -> Program {
        compile(&self.terms, max_degree)
    }
}

impl GroupWord {
    pub fn compile(&self, max_degree: usize) -> Program {
        compile(&self.factors, max_degree)
    }
}
