//! Constructions S (post-Lie ring → skew brace) and L (skew brace → post-Lie ring).

mod rootdiff;
mod transfer;

pub use rootdiff::{homogeneous_component, root_diff_triangle};
pub use transfer::{transfer_check, TransferReport};

use crate::algebra::{GroupOps, LieOps};
use crate::error::{Error, Result};
use crate::freelie::tables;
use crate::liering::{laz_inv, Filtration, FinGroup, LieRingSC, DEFAULT_MAX_ORDER};
use crate::modarith::{Endo, PScalar, PVec, Shape};
use crate::postlie::PostLieRing;
use crate::skewbrace::{HolElem, Holomorph, Perm, SkewBrace};

/// The Lie ring `𝔞 ⊕ End(𝔞)` with `[(a,x),(b,y)] = ([a,b] + x(b) − y(a), [x,y])`.
pub struct SemiDirect<'a> {
    pub ring: &'a LieRingSC,
}

impl LieOps for SemiDirect<'_> {
    type Elem = (PVec, Endo);

    fn zero(&self) -> (PVec, Endo) {
        let s = self.ring.shape();
        (PVec::zero(s), Endo::zero(s))
    }

    fn add(&self, a: &(PVec, Endo), b: &(PVec, Endo)) -> (PVec, Endo) {
        (&a.0 + &b.0, &a.1 + &b.1)
    }

    fn bracket(&self, a: &(PVec, Endo), b: &(PVec, Endo)) -> (PVec, Endo) {
        let v = &(&self.ring.bracket(&a.0, &b.0) + &a.1.apply(&b.0)) - &b.1.apply(&a.0);
        (v, a.1.commutator(&b.1))
    }

    fn scale(&self, s: &PScalar, a: &(PVec, Endo)) -> Result<(PVec, Endo)> {
        Ok((a.0.scale(s)?, a.1.scale(s)?))
    }
}

/// `pr_𝔞 BCH((a, x), (0, −x))` truncated at degree `k`.
pub fn eval_v_truncated(ring: &LieRingSC, a: &PVec, x: &Endo, k: usize) -> Result<PVec> {
    let ops = SemiDirect { ring };
    let first = (a.clone(), x.clone());
    let second = (PVec::zero(ring.shape()), x.neg());
    Ok(tables().bch.eval(&ops, &first, &second, k.max(1))?.0)
}

/// `V(a, x)` with truncation at the L-class of `p`.
pub fn eval_v(p: &PostLieRing, a: &PVec, x: &Endo) -> Result<PVec> {
    let k = p.lazard_class()?;
    eval_v_truncated(p.base(), a, x, k)
}

fn invert_table(t: &[usize]) -> Result<Vec<usize>> {
    let mut inv = vec![usize::MAX; t.len()];
    for (i, &x) in t.iter().enumerate() {
        if inv[x] != usize::MAX {
            return Err(Error::TheoremViolation(format!("map is not injective at image {x}")));
        }
        inv[x] = i;
    }
    Ok(inv)
}

/// `W(a) = V(a, L_a)` as a table over vector indices; checked bijective.
pub fn flows_w(p: &PostLieRing) -> Result<Vec<usize>> {
    let k = p.lazard_class()?;
    let shape = p.shape();
    let w: Vec<usize> = (0..p.order())
        .map(|i| {
            let a = PVec::from_index(shape, i);
            eval_v_truncated(p.base(), &a, &p.left_mult(&a), k).map(|v| v.index())
        })
        .collect::<Result<_>>()?;
    invert_table(&w)?;
    Ok(w)
}

/// Construction S: `a · b = BCH(a, b)` and `a ∘ b = a · exp(L_{Ω(a)})(b)` on the carrier of `p`.
pub fn construct_s(p: &PostLieRing) -> Result<SkewBrace> {
    construct_s_capped(p, DEFAULT_MAX_ORDER)
}

pub fn construct_s_capped(p: &PostLieRing, cap: usize) -> Result<SkewBrace> {
    let k = p.lazard_class()?;
    if p.order() > cap {
        return Err(Error::CapExceeded { order: p.order(), cap });
    }
    let f = p.canonical_filtration()?;
    let dot = p.base().laz_capped(&f, cap)?;
    let omega = invert_table(&flows_w(p)?)?;
    let shape = p.shape();
    let n = p.order();
    let exps: Vec<Endo> = (0..n)
        .map(|a| p.left_mult(&PVec::from_index(shape, omega[a])).exp(k.max(1)))
        .collect::<Result<_>>()?;
    let d = &dot;
    let circ = FinGroup::from_fn(n, 0, |a, b| d.mul(a, exps[a].apply(&PVec::from_index(shape, b)).index()))?;
    SkewBrace::new(dot, circ)?.with_carrier(shape.clone())
}

/// `pr_A P((a, α), (1, α⁻¹))` in the holomorph, truncated at degree `k`.
pub fn eval_u_truncated(dot: &FinGroup, a: usize, alpha: &Perm, k: usize) -> Result<usize> {
    let hol = Holomorph { base: dot.clone(), auts: Vec::new() };
    let g = HolElem { a, alpha: alpha.clone() };
    let h = HolElem { a: dot.identity(), alpha: hol.inv(&HolElem { a: dot.identity(), alpha: alpha.clone() }).alpha };
    Ok(tables().p.eval(&hol, &g, &h, k.max(1))?.a)
}

/// Checks `α(x)·x⁻¹ ∈ F_{i+1}` for `x ∈ F_i`.
fn check_raises(dot: &FinGroup, f: &Filtration, alpha: &Perm) -> Result<()> {
    for x in 0..dot.order() {
        if !f.term(f.depth(x) + 1).contains(dot.mul(alpha[x] as usize, dot.inv(x))) {
            return Err(Error::TheoremViolation(format!("automorphism does not raise the filtration at {x}")));
        }
    }
    Ok(())
}

/// `U(a, α)` for `α ∈ Aut(A, ·)_1` relative to the L-filtration of `b`.
pub fn eval_u(b: &SkewBrace, a: usize, alpha: &Perm) -> Result<usize> {
    let k = b.lazard_class()?;
    check_raises(b.dot(), &b.canonical_filtration()?, alpha)?;
    eval_u_truncated(b.dot(), a, alpha, k)
}

/// `Ω(a) = U(a, λ_a)` as a table over elements; checked bijective.
pub fn omega_map(b: &SkewBrace) -> Result<Vec<usize>> {
    let k = b.lazard_class()?;
    let f = b.canonical_filtration()?;
    let omega: Vec<usize> = (0..b.order())
        .map(|a| {
            check_raises(b.dot(), &f, b.lambda(a))?;
            eval_u_truncated(b.dot(), a, b.lambda(a), k)
        })
        .collect::<Result<_>>()?;
    invert_table(&omega)?;
    Ok(omega)
}

/// Output of construction L: the post-Lie ring and the position of each brace element in its carrier.
#[derive(Clone, Debug)]
pub struct Constructed {
    pub post: PostLieRing,
    /// `index_of[a]` is the vector index of brace element `a`.
    pub index_of: Vec<usize>,
}

impl Constructed {
    pub fn vector(&self, a: usize) -> PVec {
        PVec::from_index(self.post.shape(), self.index_of[a])
    }
}

fn lie_coordinates(b: &SkewBrace, f: &Filtration) -> Result<(LieRingSC, Vec<usize>)> {
    let table = laz_inv(b.dot(), f)?;
    let n = b.order();
    if let Some(shape) = b.carrier() {
        let fits = (0..n).all(|x| {
            let u = PVec::from_index(shape, x);
            (0..n).all(|y| table.add(x, y) == (&u + &PVec::from_index(shape, y)).index())
        });
        if fits {
            let r = shape.rank();
            let g: Vec<usize> = (0..r).map(|i| PVec::generator(shape, i).index()).collect();
            let brackets = (0..r * r).map(|k| PVec::from_index(shape, table.bracket(g[k / r], g[k % r]))).collect();
            return Ok((LieRingSC::from_matrix(shape, brackets)?, (0..n).collect()));
        }
    }
    let (sc, iso) = table.to_structure_constants()?;
    Ok((sc, iso.index_of_elem.clone()))
}

fn lambda_endo(b: &SkewBrace, shape: &Shape, index_of: &[usize], elem_of: &[usize], a: usize) -> Result<Endo> {
    let l = b.lambda(a);
    let images = (0..shape.rank())
        .map(|j| PVec::from_index(shape, index_of[l[elem_of[PVec::generator(shape, j).index()]] as usize]))
        .collect();
    Endo::new(shape, images)
}

/// Construction L: base `Laz⁻¹(A, ·)` and `a ▷ b = log(λ_{W(a)})(b)` with `W = Ω⁻¹`.
pub fn construct_l(b: &SkewBrace) -> Result<Constructed> {
    let k = b.lazard_class()?;
    let f = b.canonical_filtration()?;
    let (base, index_of) = lie_coordinates(b, &f)?;
    let shape = base.shape().clone();
    let elem_of = invert_table(&index_of)?;
    let omega = omega_map(b)?;
    let w = invert_table(&omega)?;
    let r = shape.rank();
    let mut tri = Vec::with_capacity(r * r);
    for i in 0..r {
        let gi = elem_of[PVec::generator(&shape, i).index()];
        let l = lambda_endo(b, &shape, &index_of, &elem_of, w[gi])?.log(k.max(1))?;
        tri.extend(l.images().iter().cloned());
    }
    let post = PostLieRing::from_matrix(base, tri)?;
    post.verify().into_result()?;
    let circ = post.circ_ring();
    let lazc = circ.laz_capped(&circ.canonical_filtration()?, DEFAULT_MAX_ORDER)?;
    let n = b.order();
    for x in 0..n {
        for y in 0..n {
            let lhs = index_of[omega[b.circ().mul(x, y)]];
            if lhs != lazc.mul(index_of[omega[x]], index_of[omega[y]]) {
                return Err(Error::TheoremViolation(format!("Ω is not multiplicative at ({x}, {y})")));
            }
        }
    }
    Ok(Constructed { post, index_of })
}

/// The brace of `construct_s(construct_l(b))`, relabelled back onto the elements of `b`.
pub fn round_trip_brace(b: &SkewBrace) -> Result<SkewBrace> {
    let c = construct_l(b)?;
    let s = construct_s(&c.post)?;
    s.relabel(&invert_table(&c.index_of)?)
}
