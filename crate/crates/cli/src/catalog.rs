//! Deterministic catalogs of small structures used by `enumerate` and the test suites.

use lazard_core::liering::{FinGroup, LieRingSC};
use lazard_core::modarith::{PShape, PVec, Shape};
use lazard_core::postlie::PostLieRing;
use lazard_core::skewbrace::{lambda_search, p_automorphisms, SkewBrace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn shape(p: u64, exps: &[u32]) -> Shape {
    PShape::new(p, exps.to_vec()).expect("catalog shapes are valid")
}

fn vec(s: &Shape, coords: &[i64]) -> PVec {
    PVec::new(s, coords).expect("catalog vectors are valid")
}

fn gen(s: &Shape, i: usize) -> PVec {
    PVec::generator(s, i)
}

/// The additive group of `shape`, element `i` being the vector of index `i`.
pub fn additive_group(s: &Shape) -> FinGroup {
    FinGroup::from_fn(s.order(), 0, |a, b| (&PVec::from_index(s, a) + &PVec::from_index(s, b)).index())
        .expect("vector addition is a group")
}

/// Upper unitriangular 3×3 matrices over Z/p, element `x·p² + y·p + z`.
pub fn unitriangular(p: usize) -> FinGroup {
    let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
    FinGroup::from_fn(p * p * p, 0, |x, y| {
        let ((a, b, c), (d, e, f)) = (split(x), split(y));
        ((a + d) % p) * p * p + ((b + e) % p) * p + (c + f + a * e) % p
    })
    .expect("unitriangular matrices form a group")
}

/// `[g1, g2] = g3` over `(p; [1, 1, 1])`.
pub fn heisenberg(p: u64) -> LieRingSC {
    let s = shape(p, &[1, 1, 1]);
    LieRingSC::new(&s, [(0, 1, gen(&s, 2))]).expect("valid")
}

/// `[g1, g2] = g3`, `[g1, g3] = g4` over `(p; [1, 1, 1, 1])`.
pub fn filiform(p: u64) -> LieRingSC {
    let s = shape(p, &[1, 1, 1, 1]);
    LieRingSC::new(&s, [(0, 1, gen(&s, 2)), (0, 2, gen(&s, 3))]).expect("valid")
}

/// `g1 ▷ g1 = g2` on the abelian group `(p; [1, 1])`.
pub fn square_to_second(p: u64) -> PostLieRing {
    let s = shape(p, &[1, 1]);
    PostLieRing::new(LieRingSC::abelian(&s), [(0, 0, gen(&s, 1))]).expect("valid")
}

/// The ring `pZ/p^m Z` with `a ▷ b = ab`, on `(p; [m − 1])` with generator `p`.
pub fn radical(p: u64, m: u32) -> PostLieRing {
    let s = shape(p, &[m - 1]);
    PostLieRing::new(LieRingSC::abelian(&s), [(0, 0, vec(&s, &[p as i64]))]).expect("valid")
}

fn random_vec(rng: &mut impl Rng, s: &Shape, from: usize) -> PVec {
    let coords: Vec<i64> =
        s.moduli().iter().enumerate().map(|(k, &m)| if k >= from { rng.gen_range(0..m) as i64 } else { 0 }).collect();
    vec(s, &coords)
}

/// Scales `v` so that it is a legal image of a generator of order `min(m_i, m_j)`.
fn fit(s: &Shape, v: PVec, i: usize, j: usize) -> PVec {
    let k = s.moduli()[i].min(s.moduli()[j]);
    v.scale_int((s.moduli()[0] / k) as i64)
}

/// Nilpotent Lie ring with `[g_i, g_j]` in the span of later generators, rejection-sampled.
pub fn random_nilpotent_lie(rng: &mut impl Rng, s: &Shape) -> LieRingSC {
    let r = s.rank();
    loop {
        let mut pairs = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                let v = random_vec(rng, s, j + 1);
                pairs.push((i, j, fit(s, v, i, j)));
            }
        }
        let l = LieRingSC::new(s, pairs).expect("valid entries");
        if l.verify().ok() {
            return l;
        }
    }
}

/// Left-nilpotent pre-Lie ring with `g_i ▷ g_j` in the span of later generators, rejection-sampled.
pub fn random_pre_lie(rng: &mut impl Rng, s: &Shape) -> PostLieRing {
    let r = s.rank();
    loop {
        let mut products = Vec::new();
        for i in 0..r {
            for j in 0..r {
                let v = random_vec(rng, s, i.max(j) + 1);
                products.push((i, j, fit(s, v, i, j)));
            }
        }
        let p = PostLieRing::new(LieRingSC::abelian(s), products).expect("valid entries");
        if p.verify().ok() {
            return p;
        }
    }
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=n.min(max)).rev().flat_map(|k| partitions(n - k, k).into_iter().map(move |mut t| {
        t.insert(0, k);
        t
    })).collect()
}

/// Lazard Lie rings over p ∈ {3, 5, 7}: every abelian shape, named nilpotent rings and random ones.
pub fn lie_rings() -> Vec<(String, LieRingSC)> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a2a);
    for p in [3u64, 5, 7] {
        let top = if p == 7 { 3 } else { 4 };
        for n in 1..=top {
            for exps in partitions(n, n) {
                out.push((format!("abelian({p};{exps:?})"), LieRingSC::abelian(&shape(p, &exps))));
            }
        }
        out.push((format!("heisenberg({p})"), heisenberg(p)));
        let s = shape(p, &[2, 1]);
        out.push((format!("twisted({p};[2,1])"), LieRingSC::new(&s, [(0, 1, vec(&s, &[p as i64, 0]))]).expect("valid")));
        if p > 3 {
            out.push((format!("filiform({p})"), filiform(p)));
        }
        let shapes: &[&[u32]] = if p == 7 { &[&[1, 1, 1], &[2, 1]] } else { &[&[1, 1, 1], &[2, 1, 1], &[1, 1, 1, 1], &[2, 2]] };
        for exps in shapes {
            let s = shape(p, exps);
            let mut found = 0;
            while found < 2 {
                let l = random_nilpotent_lie(&mut rng, &s);
                if l.class().is_some_and(|c| (c as u64) < p) {
                    out.push((format!("random({p};{exps:?})#{found}"), l));
                    found += 1;
                }
            }
        }
    }
    out
}

/// Post-Lie rings: ▷ = 0, the square-free ▷ = −[,], pre-Lie examples, radical rings and random rings.
///
/// `radical(3, 4)`, the ring 3Z/81Z, has L-class 3 and is included as the one non-Lazard entry.
pub fn post_lie_rings() -> Vec<(String, PostLieRing)> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9051);
    for (name, l) in lie_rings().into_iter().filter(|(_, l)| l.order() <= 625 && !l.is_abelian() || l.order() <= 27) {
        out.push((format!("zero[{name}]"), PostLieRing::trivial(l.clone())));
        if !l.is_abelian() {
            out.push((format!("negative[{name}]"), PostLieRing::negative_bracket(l)));
        }
    }
    for p in [3, 5, 7] {
        out.push((format!("square_to_second({p})"), square_to_second(p)));
    }
    for (p, m) in [(5u64, 3u32), (5, 4), (3, 3), (7, 3), (3, 4)] {
        out.push((format!("radical({p}Z/{}Z)", p.pow(m)), radical(p, m)));
    }
    for (p, exps) in [(3u64, vec![1, 1]), (3, vec![2, 1]), (5, vec![1, 1, 1]), (5, vec![2, 1]), (5, vec![1, 1]), (7, vec![1, 1, 1])] {
        let s = shape(p, &exps);
        for k in 0..3 {
            out.push((format!("pre_lie({p};{exps:?})#{k}"), random_pre_lie(&mut rng, &s)));
        }
    }
    let h = heisenberg(3);
    let s = h.shape().clone();
    for (a, b, c) in [(1, 0, 0), (0, 1, 0), (1, 1, 1), (2, 0, 1)] {
        let p = PostLieRing::new(h.clone(), [(0, 0, vec(&s, &[0, 0, a])), (1, 1, vec(&s, &[0, 0, b])), (0, 1, vec(&s, &[0, 0, c]))])
            .expect("valid entries");
        if p.verify().ok() {
            out.push((format!("post_lie(heisenberg(3);{a},{b},{c})"), p));
        }
    }
    out
}

/// All Lazard skew braces on the given group, by λ-backtracking over p-automorphisms.
pub fn braces_on(dot: &FinGroup) -> Vec<SkewBrace> {
    lambda_search(dot, &p_automorphisms(dot)).expect("desk-scale search").into_iter().filter(|b| b.is_lazard()).collect()
}

/// Enumerated skew braces of order p² and p³ for p ∈ {3, 5}, with named dot groups.
pub fn braces() -> Vec<(String, SkewBrace)> {
    let mut groups: Vec<(String, FinGroup)> = Vec::new();
    for (p, exps) in [(3u64, vec![2]), (3, vec![1, 1]), (5, vec![2]), (5, vec![1, 1]), (3, vec![3]), (3, vec![2, 1])] {
        groups.push((format!("({p};{exps:?})"), additive_group(&shape(p, &exps))));
    }
    groups.push(("unitriangular(3)".into(), unitriangular(3)));
    let mut out = Vec::new();
    for (name, g) in groups {
        for (k, b) in braces_on(&g).into_iter().enumerate() {
            out.push((format!("brace{name}#{k}"), b));
        }
    }
    out
}
