use super::{construct_l, Constructed};
use crate::error::{Error, Result};
use crate::modarith::{mod_inv, mod_pow, root_of_unity, PScalar, PVec};
use crate::skewbrace::SkewBrace;

/// `m ↦ (1/n) Σ_j ξ^{jk} f(ξ^{−j} m)`, the degree-`k` part of a polynomial map of degree below `n`.
pub fn homogeneous_component<F>(f: F, k: usize, xi: u64, n: usize) -> impl Fn(&PVec) -> Result<PVec>
where
    F: Fn(&PVec) -> PVec,
{
    move |m: &PVec| {
        let shape = m.shape();
        let modulus = shape.p().pow(shape.max_exp());
        let xi_inv = mod_inv(xi % modulus, modulus)
            .ok_or_else(|| Error::InvalidArgument(format!("{xi} is not a unit mod {modulus}")))?;
        let mut acc = PVec::zero(shape);
        for j in 0..n as u64 {
            let arg = m.scale_int(mod_pow(xi_inv, j, modulus) as i64);
            let w = mod_pow(xi, j * k as u64, modulus);
            acc = &acc + &f(&arg).scale_int(w as i64);
        }
        acc.scale(&PScalar::new(1, n as i64)?)
    }
}

/// `a ▷ b = (1/(p−1)) Σ_i ξ^i λ_{ξ^{−i} a}(b)` computed in `Laz⁻¹(A, ·)`, checked against construction L.
///
/// Returns the `r × r` products on generators together with the construction it was checked against.
pub fn root_diff_triangle(b: &SkewBrace) -> Result<(Vec<PVec>, Constructed)> {
    let p = b.prime().ok_or_else(|| Error::NotLazard("order is not a prime power".into()))?;
    let strong = b.strong_series(p as usize);
    if strong.last().map_or(true, |t| t.len() > 1) {
        return Err(Error::NotLazard(format!("strong series too long: A^{{{{{p}}}}} is not trivial")));
    }
    let c = construct_l(b)?;
    let shape = c.post.shape().clone();
    let elem_of = {
        let mut v = vec![0usize; c.index_of.len()];
        for (e, &i) in c.index_of.iter().enumerate() {
            v[i] = e;
        }
        v
    };
    let xi = root_of_unity(p, shape.max_exp())?;
    let r = shape.rank();
    let gens: Vec<PVec> = (0..r).map(|j| PVec::generator(&shape, j)).collect();
    let gen_index: Vec<usize> = gens.iter().map(|g| g.index()).collect();
    let mut rows = vec![PVec::zero(&shape); r * r];
    for va in 0..shape.order() {
        let a = PVec::from_index(&shape, va);
        for (j, g) in gens.iter().enumerate() {
            let lam = |x: &PVec| PVec::from_index(&shape, c.index_of[b.lambda(elem_of[x.index()])[elem_of[g.index()]] as usize]);
            let v = homogeneous_component(lam, 1, xi, (p - 1) as usize)(&a)?;
            if v != c.post.triangle(&a, g) {
                return Err(Error::TheoremViolation(format!("root-of-unity product differs at ({a}, {g})")));
            }
            if let Some(i) = gen_index.iter().position(|&x| x == va) {
                rows[i * r + j] = v;
            }
        }
    }
    Ok((rows, c))
}
