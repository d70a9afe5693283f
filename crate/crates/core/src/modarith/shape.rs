use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use super::{mod_mul, reduce, PScalar};
use crate::error::{Error, Result};

pub type Shape = Arc<PShape>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// The group Z/p^{e_1} ⊕ … ⊕ Z/p^{e_r} with e_1 ≥ … ≥ e_r ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PShape {
    p: u64,
    exps: Vec<u32>,
    moduli: Vec<u64>,
}

impl PShape {
    pub fn new(p: u64, exps: Vec<u32>) -> Result<Shape> {
        if !is_prime(p) {
            return Err(Error::InvalidShape(format!("{p} is not prime")));
        }
        if exps.is_empty() {
            return Err(Error::InvalidShape("rank must be at least 1".into()));
        }
        if exps.iter().any(|&e| e == 0) {
            return Err(Error::InvalidShape("exponents must be at least 1".into()));
        }
        if exps.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidShape("exponents must be non-increasing".into()));
        }
        let mut moduli = Vec::with_capacity(exps.len());
        for &e in &exps {
            let m = p
                .checked_pow(e)
                .filter(|&m| m < (1 << 32))
                .ok_or_else(|| Error::InvalidShape(format!("modulus {p}^{e} too large")))?;
            moduli.push(m);
        }
        Ok(Arc::new(PShape { p, exps, moduli }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }

    pub fn max_exp(&self) -> u32 {
        self.exps[0]
    }

    /// Group order; saturates on overflow so size caps still trigger.
    pub fn order(&self) -> usize {
        self.moduli
            .iter()
            .fold(1usize, |acc, &m| acc.saturating_mul(m as usize))
    }

    /// Mixed-radix index, first coordinate most significant.
    pub fn index_of(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&c, &m)| acc * m as usize + c as usize)
    }

    pub fn coords_at(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let m = self.moduli[i] as usize;
            out[i] = (idx % m) as u64;
            idx /= m;
        }
        out
    }
}

impl fmt::Display for PShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
        write!(f, "({};[{}])", self.p, exps.join(","))
    }
}

/// An element of a [`PShape`], coordinates reduced.
#[derive(Clone)]
pub struct PVec {
    shape: Shape,
    coords: Vec<u64>,
}

impl PVec {
    pub fn new(shape: &Shape, coords: &[i64]) -> Result<PVec> {
        if coords.len() != shape.rank() {
            return Err(Error::ShapeMismatch);
        }
        let coords = coords
            .iter()
            .zip(shape.moduli())
            .map(|(&c, &m)| reduce(c as i128, m))
            .collect();
        Ok(PVec { shape: shape.clone(), coords })
    }

    pub fn zero(shape: &Shape) -> PVec {
        PVec { shape: shape.clone(), coords: vec![0; shape.rank()] }
    }

    pub fn generator(shape: &Shape, i: usize) -> PVec {
        let mut v = PVec::zero(shape);
        v.coords[i] = 1 % shape.moduli()[i];
        v
    }

    pub fn from_index(shape: &Shape, idx: usize) -> PVec {
        PVec { shape: shape.clone(), coords: shape.coords_at(idx) }
    }

    pub fn index(&self) -> usize {
        self.shape.index_of(&self.coords)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &PVec) -> Result<()> {
        if Arc::ptr_eq(&self.shape, &other.shape) || self.shape == other.shape {
            Ok(())
        } else {
            Err(Error::ShapeMismatch)
        }
    }

    pub fn try_add(&self, other: &PVec) -> Result<PVec> {
        self.check(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(self.shape.moduli())
            .map(|((&a, &b), &m)| (a + b) % m)
            .collect();
        Ok(PVec { shape: self.shape.clone(), coords })
    }

    pub fn try_sub(&self, other: &PVec) -> Result<PVec> {
        self.check(other)?;
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> PVec {
        let coords = self
            .coords
            .iter()
            .zip(self.shape.moduli())
            .map(|(&a, &m)| (m - a) % m)
            .collect();
        PVec { shape: self.shape.clone(), coords }
    }

    pub fn scale_int(&self, k: i64) -> PVec {
        let coords = self
            .coords
            .iter()
            .zip(self.shape.moduli())
            .map(|(&a, &m)| mod_mul(a, reduce(k as i128, m), m))
            .collect();
        PVec { shape: self.shape.clone(), coords }
    }

    /// `s · v`, dividing by `s.den()` inside each cyclic factor.
    pub fn scale(&self, s: &PScalar) -> Result<PVec> {
        let p = self.shape.p();
        let coords = self
            .coords
            .iter()
            .zip(self.shape.moduli())
            .map(|(&a, &m)| Ok(mod_mul(a, s.residue(p, m)?, m)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PVec { shape: self.shape.clone(), coords })
    }

    /// Additive order, as a power of p.
    pub fn order(&self) -> u64 {
        self.coords
            .iter()
            .zip(self.shape.moduli())
            .map(|(&a, &m)| if a == 0 { 1 } else { m / num_integer::gcd(a, m) })
            .max()
            .unwrap_or(1)
    }
}

impl PartialEq for PVec {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.check(other).is_ok()
    }
}

impl Eq for PVec {}

impl Hash for PVec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for PVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Debug for PVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", c.join(", "))
    }
}

impl Add for &PVec {
    type Output = PVec;
    fn add(self, rhs: &PVec) -> PVec {
        self.try_add(rhs).expect("shape mismatch")
    }
}

impl Sub for &PVec {
    type Output = PVec;
    fn sub(self, rhs: &PVec) -> PVec {
        self.try_sub(rhs).expect("shape mismatch")
    }
}

impl Neg for &PVec {
    type Output = PVec;
    fn neg(self) -> PVec {
        PVec::neg(self)
    }
}
