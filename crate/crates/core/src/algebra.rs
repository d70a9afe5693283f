//! Operation traits used by the generic BCH and group-word evaluators.

use crate::error::Result;
use crate::modarith::PScalar;

pub trait LieOps {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, s: &PScalar, a: &Self::Elem) -> Result<Self::Elem>;
}

pub trait GroupOps {
    type Elem: Clone + PartialEq;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// `a^s` with `s.den()` coprime to the group order, via unique roots.
    fn pow_rational(&self, a: &Self::Elem, s: &PScalar) -> Result<Self::Elem>;

    /// The commutator `a⁻¹b⁻¹ab`.
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.mul(a, b);
        let ia_ib = self.mul(&self.inv(a), &self.inv(b));
        self.mul(&ia_ib, &ab)
    }
}
