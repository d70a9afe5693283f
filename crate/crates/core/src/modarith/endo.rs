use std::fmt;

use super::{PScalar, PVec, Shape};
use crate::error::{Error, Result};

/// Additive endomorphism given by the images of the standard generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Endo {
    shape: Shape,
    images: Vec<PVec>,
}

impl Endo {
    pub fn new(shape: &Shape, images: Vec<PVec>) -> Result<Endo> {
        if images.len() != shape.rank() || images.iter().any(|v| **v.shape() != **shape) {
            return Err(Error::ShapeMismatch);
        }
        for (j, img) in images.iter().enumerate() {
            if !img.scale_int(shape.moduli()[j] as i64).is_zero() {
                return Err(Error::InvalidArgument(format!(
                    "image of generator {j} is not killed by {}",
                    shape.moduli()[j]
                )));
            }
        }
        Ok(Endo { shape: shape.clone(), images })
    }

    pub fn identity(shape: &Shape) -> Endo {
        let images = (0..shape.rank()).map(|i| PVec::generator(shape, i)).collect();
        Endo { shape: shape.clone(), images }
    }

    pub fn zero(shape: &Shape) -> Endo {
        Endo { shape: shape.clone(), images: vec![PVec::zero(shape); shape.rank()] }
    }

    /// Builds the endomorphism determined by `f` on generators.
    pub fn from_fn(shape: &Shape, f: impl Fn(&PVec) -> PVec) -> Result<Endo> {
        let images = (0..shape.rank()).map(|i| f(&PVec::generator(shape, i))).collect();
        Endo::new(shape, images)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn images(&self) -> &[PVec] {
        &self.images
    }

    pub fn apply(&self, v: &PVec) -> PVec {
        let mut acc = PVec::zero(&self.shape);
        for (c, img) in v.coords().iter().zip(&self.images) {
            if *c != 0 {
                acc = &acc + &img.scale_int(*c as i64);
            }
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endo) -> Endo {
        let images = other.images.iter().map(|v| self.apply(v)).collect();
        Endo { shape: self.shape.clone(), images }
    }

    fn zip(&self, other: &Endo, f: impl Fn(&PVec, &PVec) -> PVec) -> Result<Endo> {
        if *self.shape != *other.shape {
            return Err(Error::ShapeMismatch);
        }
        let images = self.images.iter().zip(&other.images).map(|(a, b)| f(a, b)).collect();
        Ok(Endo { shape: self.shape.clone(), images })
    }

    pub fn try_add(&self, other: &Endo) -> Result<Endo> {
        self.zip(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Endo) -> Result<Endo> {
        self.zip(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Endo {
        Endo { shape: self.shape.clone(), images: self.images.iter().map(|v| v.neg()).collect() }
    }

    pub fn scale(&self, s: &PScalar) -> Result<Endo> {
        let images = self.images.iter().map(|v| v.scale(s)).collect::<Result<_>>()?;
        Ok(Endo { shape: self.shape.clone(), images })
    }

    pub fn scale_int(&self, k: i64) -> Endo {
        Endo {
            shape: self.shape.clone(),
            images: self.images.iter().map(|v| v.scale_int(k)).collect(),
        }
    }

    pub fn pow(&self, n: usize) -> Endo {
        let mut acc = Endo::identity(&self.shape);
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }

    /// `f∘g − g∘f`.
    pub fn commutator(&self, other: &Endo) -> Endo {
        &self.compose(other) - &other.compose(self)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|v| v.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == Endo::identity(&self.shape)
    }

    /// Least `n` with `self^n = 0`, searching up to `max`.
    pub fn nilpotency_index(&self, max: usize) -> Option<usize> {
        let mut acc = Endo::identity(&self.shape);
        for n in 0..=max {
            if acc.is_zero() {
                return Some(n);
            }
            acc = self.compose(&acc);
        }
        None
    }

    fn check_bound(&self, nil_bound: usize) -> Result<()> {
        if nil_bound as u64 >= self.shape.p() {
            return Err(Error::BoundTooLarge { bound: nil_bound, p: self.shape.p() });
        }
        Ok(())
    }

    /// Σ_{k < nil_bound} d^k / k!, requiring d^nil_bound = 0.
    pub fn exp(&self, nil_bound: usize) -> Result<Endo> {
        self.check_bound(nil_bound)?;
        if !self.pow(nil_bound).is_zero() {
            return Err(Error::NotNilpotent(nil_bound));
        }
        let mut acc = Endo::zero(&self.shape);
        let mut term = Endo::identity(&self.shape);
        let mut fact = 1i64;
        for k in 0..nil_bound {
            if k > 0 {
                fact *= k as i64;
            }
            acc = &acc + &term.scale(&PScalar::new(1, fact)?)?;
            term = self.compose(&term);
        }
        Ok(acc)
    }

    /// Σ_{1 ≤ k < nil_bound} (−1)^{k+1} (f − id)^k / k, requiring (f − id)^nil_bound = 0.
    pub fn log(&self, nil_bound: usize) -> Result<Endo> {
        self.check_bound(nil_bound)?;
        let d = self - &Endo::identity(&self.shape);
        if !d.pow(nil_bound).is_zero() {
            return Err(Error::NotNilpotent(nil_bound));
        }
        let mut acc = Endo::zero(&self.shape);
        let mut term = d.clone();
        for k in 1..nil_bound {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = &acc + &term.scale(&PScalar::new(sign, k as i64)?)?;
            term = d.compose(&term);
        }
        Ok(acc)
    }
}

impl std::ops::Add for &Endo {
    type Output = Endo;
    fn add(self, rhs: &Endo) -> Endo {
        self.try_add(rhs).expect("shape mismatch")
    }
}

impl std::ops::Sub for &Endo {
    type Output = Endo;
    fn sub(self, rhs: &Endo) -> Endo {
        self.try_sub(rhs).expect("shape mismatch")
    }
}

impl fmt::Debug for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.images).finish()
    }
}
