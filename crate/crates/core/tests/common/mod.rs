#![allow(dead_code)]

use lazard_core::liering::{FinGroup, LieRingSC};
use lazard_core::modarith::{PShape, PVec, Shape};
use lazard_core::postlie::PostLieRing;
use rand::Rng;

pub fn shape(p: u64, exps: &[u32]) -> Shape {
    PShape::new(p, exps.to_vec()).unwrap()
}

pub fn vec(s: &Shape, coords: &[i64]) -> PVec {
    PVec::new(s, coords).unwrap()
}

pub fn gen(s: &Shape, i: usize) -> PVec {
    PVec::generator(s, i)
}

pub fn elements(s: &Shape) -> Vec<PVec> {
    (0..s.order()).map(|i| PVec::from_index(s, i)).collect()
}

/// `[g1, g2] = g3` over `(p; [1, 1, 1])`.
pub fn heisenberg(p: u64) -> LieRingSC {
    let s = shape(p, &[1, 1, 1]);
    LieRingSC::new(&s, [(0, 1, gen(&s, 2))]).unwrap()
}

/// `[g1, g2] = g3`, `[g1, g3] = g4` over `(p; [1, 1, 1, 1])`.
pub fn filiform(p: u64) -> LieRingSC {
    let s = shape(p, &[1, 1, 1, 1]);
    LieRingSC::new(&s, [(0, 1, gen(&s, 2)), (0, 2, gen(&s, 3))]).unwrap()
}

/// `g1 ▷ g1 = g2` on the abelian group `(p; [1, 1])`.
pub fn square_to_second(p: u64) -> PostLieRing {
    let s = shape(p, &[1, 1]);
    PostLieRing::new(LieRingSC::abelian(&s), [(0, 0, gen(&s, 1))]).unwrap()
}

/// The ring `pZ/p^{m}Z` as a pre-Lie ring on `(p; [m − 1])`, generator `p`.
pub fn radical(p: u64, m: u32) -> PostLieRing {
    let s = shape(p, &[m - 1]);
    PostLieRing::new(LieRingSC::abelian(&s), [(0, 0, vec(&s, &[p as i64]))]).unwrap()
}

pub fn additive_group(s: &Shape) -> FinGroup {
    FinGroup::from_fn(s.order(), 0, |a, b| (&PVec::from_index(s, a) + &PVec::from_index(s, b)).index()).unwrap()
}

fn random_vec(rng: &mut impl Rng, s: &Shape, from: usize) -> PVec {
    let coords: Vec<i64> =
        s.moduli().iter().enumerate().map(|(k, &m)| if k >= from { rng.gen_range(0..m) as i64 } else { 0 }).collect();
    vec(s, &coords)
}

/// Random nilpotent Lie ring with `[g_i, g_j]` in the span of later generators, rejection-sampled.
pub fn random_nilpotent_lie(rng: &mut impl Rng, s: &Shape) -> LieRingSC {
    let r = s.rank();
    loop {
        let mut pairs = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                let v = random_vec(rng, s, j + 1);
                let k = s.moduli()[i].min(s.moduli()[j]) as i64;
                pairs.push((i, j, v.scale_int(s.moduli()[0] as i64 / k)));
            }
        }
        let l = LieRingSC::new(s, pairs).unwrap();
        if l.verify().ok() {
            return l;
        }
    }
}

/// Random left-nilpotent pre-Lie ring with `g_i ▷ g_j` in the span of later generators, rejection-sampled.
pub fn random_pre_lie(rng: &mut impl Rng, s: &Shape) -> PostLieRing {
    let r = s.rank();
    loop {
        let mut products = Vec::new();
        for i in 0..r {
            for j in 0..r {
                let v = random_vec(rng, s, i.max(j) + 1);
                let k = s.moduli()[i].min(s.moduli()[j]) as i64;
                products.push((i, j, v.scale_int(s.moduli()[0] as i64 / k)));
            }
        }
        let p = PostLieRing::new(LieRingSC::abelian(s), products).unwrap();
        if p.verify().ok() {
            return p;
        }
    }
}

/// The brace of the radical ring `pZ/p^m Z`: element `i` is `p·i`, `a ∘ b = a + ab + b`.
pub fn radical_brace(p: u64, m: u32) -> lazard_core::skewbrace::SkewBrace {
    let q = p.pow(m) as usize;
    let n = q / p as usize;
    let p = p as usize;
    let dot = FinGroup::from_fn(n, 0, |a, b| (a + b) % n).unwrap();
    let circ = FinGroup::from_fn(n, 0, |a, b| ((p * a + p * a * p * b + p * b) % q) / p).unwrap();
    lazard_core::skewbrace::SkewBrace::new(dot, circ).unwrap()
}
