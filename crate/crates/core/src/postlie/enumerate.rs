use super::PostLieRing;
use crate::error::{Error, Result};
use crate::liering::LieRingSC;
use crate::modarith::{Endo, PVec, Shape};

fn admissible_images(shape: &Shape, modulus: u64) -> Vec<PVec> {
    (0..shape.order())
        .map(|i| PVec::from_index(shape, i))
        .filter(|v| v.scale_int(modulus as i64).is_zero())
        .collect()
}

fn product_of<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        out = out.iter().flat_map(|prefix| c.iter().map(move |x| [prefix.clone(), vec![x.clone()]].concat())).collect();
    }
    out
}

/// Every additive endomorphism of the shape.
pub fn endomorphisms(shape: &Shape) -> Result<Vec<Endo>> {
    if shape.order() > 125 {
        return Err(Error::CapExceeded { order: shape.order(), cap: 125 });
    }
    let choices: Vec<Vec<PVec>> = shape.moduli().iter().map(|&m| admissible_images(shape, m)).collect();
    product_of(&choices).into_iter().map(|images| Endo::new(shape, images)).collect()
}

/// Left-nilpotent pre-Lie structures on the abelian group of `shape`, by structure-constant search.
pub fn pre_lie_structures(shape: &Shape) -> Result<Vec<PostLieRing>> {
    if shape.order() > 25 {
        return Err(Error::CapExceeded { order: shape.order(), cap: 25 });
    }
    let r = shape.rank();
    let m = shape.moduli();
    let base = LieRingSC::abelian(shape);
    let choices: Vec<Vec<PVec>> = (0..r * r).map(|k| admissible_images(shape, m[k / r].min(m[k % r]))).collect();
    let mut out = Vec::new();
    for tri in product_of(&choices) {
        let p = PostLieRing::from_matrix(base.clone(), tri)?;
        if p.verify().ok() && p.left_series().terminates() {
            out.push(p);
        }
    }
    Ok(out)
}

/// Left-nilpotent pre-Lie structures as additive graphs `{(a, L_a)}` closed in `𝔞 ⋊ End(𝔞)`.
pub fn aff_search(shape: &Shape) -> Result<Vec<PostLieRing>> {
    let nilpotent: Vec<Endo> =
        endomorphisms(shape)?.into_iter().filter(|e| e.nilpotency_index(shape.order()).is_some()).collect();
    let m = shape.moduli();
    let choices: Vec<Vec<Endo>> =
        m.iter().map(|&mi| nilpotent.iter().filter(|e| e.scale_int(mi as i64).is_zero()).cloned().collect()).collect();
    let elems: Vec<PVec> = (0..shape.order()).map(|i| PVec::from_index(shape, i)).collect();
    let mut out = Vec::new();
    for gens in product_of(&choices) {
        let graph: Vec<Endo> = elems
            .iter()
            .map(|a| {
                a.coords().iter().zip(&gens).fold(Endo::zero(shape), |acc, (&c, l)| &acc + &l.scale_int(c as i64))
            })
            .collect();
        let closed = elems.iter().all(|a| {
            elems.iter().all(|b| {
                let (la, lb) = (&graph[a.index()], &graph[b.index()]);
                let first = &la.apply(b) - &lb.apply(a);
                graph[first.index()] == la.commutator(lb)
            })
        });
        if !closed {
            continue;
        }
        let p = PostLieRing::from_matrix(LieRingSC::abelian(shape), gens.iter().flat_map(|l| l.images().to_vec()).collect())?;
        if p.left_series().terminates() {
            out.push(p);
        }
    }
    Ok(out)
}
