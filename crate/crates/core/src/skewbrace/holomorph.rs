use std::collections::HashSet;

use super::SkewBrace;
use crate::algebra::GroupOps;
use crate::error::{Error, Result};
use crate::liering::{Filtration, FinGroup};
use crate::modarith::PScalar;

/// A permutation of `0..n`, as the image list.
pub type Perm = Vec<u32>;

fn compose(f: &[u32], g: &[u32]) -> Perm {
    g.iter().map(|&x| f[x as usize]).collect()
}

fn invert(f: &[u32]) -> Perm {
    let mut inv = vec![0u32; f.len()];
    for (i, &x) in f.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

fn is_identity(f: &[u32]) -> bool {
    f.iter().enumerate().all(|(i, &x)| i == x as usize)
}

fn perm_order(f: &[u32]) -> usize {
    let mut g = f.to_vec();
    let mut k = 1;
    while !is_identity(&g) {
        g = compose(f, &g);
        k += 1;
    }
    k
}

/// The homomorphism `src → dst` sending `gens[i] ↦ images[i]`, if one exists.
pub fn extend_hom(src: &FinGroup, gens: &[usize], images: &[usize], dst: &FinGroup) -> Option<Perm> {
    let n = src.order();
    let mut map: Vec<Option<usize>> = vec![None; n];
    map[src.identity()] = Some(dst.identity());
    let mut stack = vec![src.identity()];
    while let Some(x) = stack.pop() {
        let fx = map[x].unwrap();
        for (&g, &h) in gens.iter().zip(images) {
            let y = src.mul(x, g);
            let fy = dst.mul(fx, h);
            match map[y] {
                None => {
                    map[y] = Some(fy);
                    stack.push(y);
                }
                Some(v) if v != fy => return None,
                _ => {}
            }
        }
    }
    map.into_iter().map(|v| v.map(|x| x as u32)).collect()
}

fn is_bijective(f: &[u32]) -> bool {
    let mut seen = vec![false; f.len()];
    f.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
}

fn search_automorphisms(g: &FinGroup, candidates: &[Vec<usize>]) -> Vec<Perm> {
    let gens = g.generating_set();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let images: Vec<usize> = choice.iter().enumerate().map(|(i, &c)| candidates[i][c]).collect();
        if let Some(f) = extend_hom(g, &gens, &images, g) {
            if is_bijective(&f) {
                out.push(f);
            }
        }
        for i in (0..choice.len()).rev() {
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                continue 'outer;
            }
            choice[i] = 0;
        }
        break;
    }
    out.sort();
    out
}

/// Every automorphism of `g`, by images of a generating set.
pub fn automorphisms(g: &FinGroup) -> Vec<Perm> {
    let gens = g.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..g.order()).filter(|&y| g.element_order(y) == g.element_order(x)).collect())
        .collect();
    search_automorphisms(g, &candidates)
}

/// Automorphisms of p-power order.
pub fn p_automorphisms(g: &FinGroup) -> Vec<Perm> {
    let p = g.prime().unwrap_or(1) as usize;
    automorphisms(g)
        .into_iter()
        .filter(|f| {
            let mut o = perm_order(f);
            while p > 1 && o % p == 0 {
                o /= p;
            }
            o == 1
        })
        .collect()
}

/// Aut(G)_i = {f : f(x)·x⁻¹ ∈ G_{j+i} for x ∈ G_j}.
pub fn filtered_automorphisms(g: &FinGroup, f: &Filtration, i: usize) -> Result<Vec<Perm>> {
    g.validate_filtration(f)?;
    let gens = g.generating_set();
    let raises = |x: usize, y: usize| f.term(f.depth(x) + i).contains(g.mul(y, g.inv(x)));
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&x| (0..g.order()).filter(|&y| raises(x, y)).collect()).collect();
    Ok(search_automorphisms(g, &candidates)
        .into_iter()
        .filter(|a| (0..g.order()).all(|x| raises(x, a[x] as usize)))
        .collect())
}

/// An element `(a, α)` of `A ⋊ Aut(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HolElem {
    pub a: usize,
    pub alpha: Perm,
}

/// The holomorph `A ⋊ H` for a group `H` of automorphisms given by its elements.
#[derive(Clone, Debug)]
pub struct Holomorph {
    pub base: FinGroup,
    pub auts: Vec<Perm>,
}

impl Holomorph {
    /// `A ⋊ Aut(A)_1` for the filtration `f`; requires length below p.
    pub fn plus(base: &FinGroup, f: &Filtration) -> Result<Holomorph> {
        let p = base.prime().ok_or_else(|| Error::NotAbelianPGroup("order is not a prime power".into()))?;
        if f.length() as u64 >= p {
            return Err(Error::NotLazard(format!("filtration length {} is not below p = {p}", f.length())));
        }
        Ok(Holomorph { base: base.clone(), auts: filtered_automorphisms(base, f, 1)? })
    }

    pub fn order(&self) -> usize {
        self.base.order() * self.auts.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = HolElem> + '_ {
        self.auts.iter().flat_map(move |al| (0..self.base.order()).map(move |a| HolElem { a, alpha: al.clone() }))
    }

    pub fn element_order(&self, x: &HolElem) -> usize {
        let id = self.identity();
        let mut y = x.clone();
        let mut k = 1;
        while y != id {
            y = self.mul(&y, x);
            k += 1;
        }
        k
    }
}

impl GroupOps for Holomorph {
    type Elem = HolElem;

    fn identity(&self) -> HolElem {
        HolElem { a: self.base.identity(), alpha: (0..self.base.order() as u32).collect() }
    }

    fn mul(&self, x: &HolElem, y: &HolElem) -> HolElem {
        HolElem { a: self.base.mul(x.a, x.alpha[y.a] as usize), alpha: compose(&x.alpha, &y.alpha) }
    }

    fn inv(&self, x: &HolElem) -> HolElem {
        let alpha = invert(&x.alpha);
        HolElem { a: alpha[self.base.inv(x.a)] as usize, alpha }
    }

    fn pow_rational(&self, x: &HolElem, s: &PScalar) -> Result<HolElem> {
        let o = self.element_order(x) as u64;
        let e = s.residue(self.base.prime().unwrap_or(1), o)?;
        let (mut acc, mut base, mut e) = (self.identity(), x.clone(), e);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Ok(acc)
    }
}

type Partial = Vec<Option<Perm>>;

fn close(hol: &Holomorph, h: &Partial, gens: &[HolElem]) -> Option<Partial> {
    let mut k = h.clone();
    let mut stack: Vec<HolElem> =
        h.iter().enumerate().filter_map(|(a, al)| al.as_ref().map(|al| HolElem { a, alpha: al.clone() })).collect();
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = hol.mul(&x, g);
            match &k[y.a] {
                None => {
                    k[y.a] = Some(y.alpha.clone());
                    stack.push(y);
                }
                Some(b) if *b != y.alpha => return None,
                _ => {}
            }
        }
    }
    Some(k)
}

/// Skew braces from regular subgroups of `A ⋊ ⟨auts⟩`, found by growing subgroups one generator at a time.
pub fn regular_subgroups(base: &FinGroup, auts: &[Perm], cap: usize) -> Result<Vec<SkewBrace>> {
    let n = base.order();
    if n > cap {
        return Err(Error::CapExceeded { order: n, cap });
    }
    let hol = Holomorph { base: base.clone(), auts: auts.to_vec() };
    let mut start: Partial = vec![None; n];
    start[base.identity()] = Some(hol.identity().alpha);
    let mut seen: HashSet<Partial> = HashSet::new();
    let mut found: Vec<Vec<Perm>> = Vec::new();
    let mut stack = vec![(start, Vec::<HolElem>::new())];
    while let Some((h, gens)) = stack.pop() {
        let Some(a0) = h.iter().position(|x| x.is_none()) else {
            found.push(h.into_iter().map(Option::unwrap).collect());
            continue;
        };
        for al in auts {
            let g = HolElem { a: a0, alpha: al.clone() };
            let mut next_gens = gens.clone();
            next_gens.push(g);
            if let Some(k) = close(&hol, &h, &next_gens) {
                if seen.insert(k.clone()) {
                    stack.push((k, next_gens));
                }
            }
        }
    }
    found.sort();
    found.into_iter().map(|l| SkewBrace::from_lambda(base.clone(), &l)).collect()
}

/// Skew braces as maps `λ : A → auts` with `λ_{a·λ_a(b)} = λ_a λ_b`, by backtracking over elements.
pub fn lambda_search(base: &FinGroup, auts: &[Perm]) -> Result<Vec<SkewBrace>> {
    let n = base.order();
    let id = base.identity();
    let identity: Perm = (0..n as u32).collect();
    let order: Vec<usize> = std::iter::once(id).chain((0..n).filter(|&x| x != id)).collect();
    let mut lam: Vec<Option<Perm>> = vec![None; n];
    lam[id] = Some(identity);
    let mut out = Vec::new();
    fn consistent(base: &FinGroup, lam: &[Option<Perm>], m: usize) -> bool {
        let assigned: Vec<usize> = (0..lam.len()).filter(|&x| lam[x].is_some()).collect();
        for &a in &assigned {
            let la = lam[a].as_ref().unwrap();
            for &b in &assigned {
                let c = base.mul(a, la[b] as usize);
                if a != m && b != m && c != m {
                    continue;
                }
                if let Some(lc) = &lam[c] {
                    if *lc != compose(la, lam[b].as_ref().unwrap()) {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn go(base: &FinGroup, auts: &[Perm], order: &[usize], depth: usize, lam: &mut Vec<Option<Perm>>, out: &mut Vec<Vec<Perm>>) {
        if depth == order.len() {
            out.push(lam.iter().map(|l| l.clone().unwrap()).collect());
            return;
        }
        let m = order[depth];
        for al in auts {
            lam[m] = Some(al.clone());
            if consistent(base, lam, m) {
                go(base, auts, order, depth + 1, lam, out);
            }
        }
        lam[m] = None;
    }
    if consistent(base, &lam, id) {
        go(base, auts, &order, 1, &mut lam, &mut out);
    }
    out.sort();
    out.into_iter().map(|l| SkewBrace::from_lambda(base.clone(), &l)).collect()
}

/// Brute-force search for a bijection preserving both operations.
pub fn isomorphic(x: &SkewBrace, y: &SkewBrace) -> bool {
    if x.order() != y.order() {
        return false;
    }
    let gens = x.dot().generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..y.order()).filter(|&h| y.dot().element_order(h) == x.dot().element_order(g)).collect())
        .collect();
    let n = x.order();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().enumerate().map(|(i, &c)| candidates[i][c]).collect();
        if let Some(f) = extend_hom(x.dot(), &gens, &images, y.dot()) {
            if is_bijective(&f)
                && (0..n).all(|a| (0..n).all(|b| f[x.circ().mul(a, b)] as usize == y.circ().mul(f[a] as usize, f[b] as usize)))
            {
                return true;
            }
        }
        let mut i = choice.len();
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}
