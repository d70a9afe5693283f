//! Post-Lie rings `(𝔞, [,], ▷)` on a finite abelian p-group.

mod enumerate;

pub use enumerate::{aff_search, endomorphisms, pre_lie_structures};

use crate::error::{Error, Result};
use crate::liering::{Filtration, LieRingSC, Report, Series, Span};
use crate::modarith::{Endo, PVec, Shape};
use crate::subset::Subset;

/// Strongest level of the substructure hierarchy a subset reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdealType {
    NotClosed,
    Substructure,
    LeftIdeal,
    StrongLeftIdeal,
    Ideal,
}

impl std::fmt::Display for IdealType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            IdealType::NotClosed => "not closed",
            IdealType::Substructure => "substructure",
            IdealType::LeftIdeal => "left ideal",
            IdealType::StrongLeftIdeal => "strong left ideal",
            IdealType::Ideal => "ideal",
        };
        f.write_str(s)
    }
}

/// Fix, socle and annihilator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substructures {
    pub fix: Subset,
    pub soc: Subset,
    pub ann: Subset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NilpotencyDecomposition {
    pub left_nilpotent: bool,
    pub base_nilpotent: bool,
    pub l_nilpotent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointFiltration {
    pub filtration: Filtration,
    /// Both the input filtration and the adjoint chain have length below p.
    pub is_lazard: bool,
}

/// A post-Lie ring given by its Lie ring and `d_ij = g_i ▷ g_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PostLieRing {
    base: LieRingSC,
    tri: Vec<PVec>,
}

impl PostLieRing {
    pub fn new(base: LieRingSC, products: impl IntoIterator<Item = (usize, usize, PVec)>) -> Result<PostLieRing> {
        let shape = base.shape().clone();
        let r = shape.rank();
        let mut tri = vec![PVec::zero(&shape); r * r];
        for (i, j, v) in products {
            if i >= r || j >= r || **v.shape() != *shape {
                return Err(Error::ShapeMismatch);
            }
            tri[i * r + j] = v;
        }
        Ok(PostLieRing { base, tri })
    }

    pub fn from_matrix(base: LieRingSC, tri: Vec<PVec>) -> Result<PostLieRing> {
        let r = base.shape().rank();
        if tri.len() != r * r || tri.iter().any(|v| **v.shape() != **base.shape()) {
            return Err(Error::ShapeMismatch);
        }
        Ok(PostLieRing { base, tri })
    }

    /// `▷ = 0`.
    pub fn trivial(base: LieRingSC) -> PostLieRing {
        PostLieRing::new(base, []).unwrap()
    }

    /// `x ▷ y = −[x, y]`, a post-Lie structure on every Lie ring.
    pub fn negative_bracket(base: LieRingSC) -> PostLieRing {
        let r = base.shape().rank();
        let tri = (0..r * r).map(|k| base.structure(k / r, k % r).neg()).collect();
        PostLieRing { base, tri }
    }

    pub fn base(&self) -> &LieRingSC {
        &self.base
    }

    pub fn shape(&self) -> &Shape {
        self.base.shape()
    }

    pub fn order(&self) -> usize {
        self.base.order()
    }

    pub fn product(&self, i: usize, j: usize) -> &PVec {
        &self.tri[i * self.shape().rank() + j]
    }

    pub fn products(&self) -> &[PVec] {
        &self.tri
    }

    pub fn triangle(&self, a: &PVec, b: &PVec) -> PVec {
        let r = self.shape().rank();
        let mut acc = PVec::zero(self.shape());
        for (i, &x) in a.coords().iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coords().iter().enumerate() {
                let d = &self.tri[i * r + j];
                if y != 0 && !d.is_zero() {
                    acc = &acc + &d.scale_int(x as i64).scale_int(y as i64);
                }
            }
        }
        acc
    }

    pub fn bracket(&self, a: &PVec, b: &PVec) -> PVec {
        self.base.bracket(a, b)
    }

    /// `L_a : b ↦ a ▷ b`.
    pub fn left_mult(&self, a: &PVec) -> Endo {
        Endo::from_fn(self.shape(), |b| self.triangle(a, b)).expect("left multiplication is well-defined")
    }

    /// `{a, b} = [a, b] + a ▷ b − b ▷ a`.
    pub fn circ_bracket(&self, a: &PVec, b: &PVec) -> PVec {
        &(&self.bracket(a, b) + &self.triangle(a, b)) - &self.triangle(b, a)
    }

    pub fn is_pre_lie(&self) -> bool {
        self.base.is_abelian()
    }

    fn gens(&self) -> Vec<PVec> {
        (0..self.shape().rank()).map(|i| PVec::generator(self.shape(), i)).collect()
    }

    fn assoc(&self, x: &PVec, y: &PVec, z: &PVec) -> PVec {
        &self.triangle(x, &self.triangle(y, z)) - &self.triangle(&self.triangle(x, y), z)
    }

    /// Lie axioms of the base, well-definedness of ▷, and both post-Lie identities on generators.
    pub fn verify(&self) -> Report {
        let mut rep = self.base.verify();
        let r = self.shape().rank();
        let m = self.shape().moduli();
        for i in 0..r {
            for j in 0..r {
                let d = self.product(i, j);
                let k = m[i].min(m[j]) as i64;
                if !d.scale_int(k).is_zero() {
                    rep.failures.push(format!("well-definedness: {k}·(g{i} ▷ g{j}) ≠ 0"));
                }
            }
        }
        let g = self.gens();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let (x, y, z) = (&g[i], &g[j], &g[k]);
                    let lhs = self.triangle(x, &self.bracket(y, z));
                    let rhs = &self.bracket(&self.triangle(x, y), z) + &self.bracket(y, &self.triangle(x, z));
                    if lhs != rhs {
                        rep.failures.push(format!("derivation identity fails on (g{i}, g{j}, g{k})"));
                    }
                    let lhs = self.triangle(&self.bracket(x, y), z);
                    let rhs = &self.assoc(x, y, z) - &self.assoc(y, x, z);
                    if lhs != rhs {
                        rep.failures.push(format!("associator identity fails on (g{i}, g{j}, g{k})"));
                    }
                }
            }
        }
        rep
    }

    /// The Lie ring `𝔞∘`.
    pub fn circ_ring(&self) -> LieRingSC {
        let r = self.shape().rank();
        let g = self.gens();
        let brackets = (0..r * r).map(|k| self.circ_bracket(&g[k / r], &g[k % r])).collect();
        LieRingSC::from_matrix(self.shape(), brackets).unwrap()
    }

    fn span_of(&self, cands: Vec<PVec>) -> Span {
        Span::generate(self.shape(), cands)
    }

    fn chain(&self, mut step: impl FnMut(&Span) -> Vec<PVec>) -> Series {
        let mut cur = Span::whole(self.shape());
        Series::iterate(cur.members.clone(), |_| {
            cur = self.span_of(step(&cur));
            cur.members.clone()
        })
    }

    /// L^{i+1} generated by `a ▷ b` and `[a, b]`, b ∈ L^i.
    pub fn l_series(&self) -> Series {
        let g = self.gens();
        self.chain(|cur| {
            let mut v = Vec::new();
            for a in &g {
                for b in &cur.gens {
                    v.push(self.triangle(a, b));
                    v.push(self.bracket(a, b));
                }
            }
            v
        })
    }

    pub fn l_class(&self) -> Option<usize> {
        self.l_series().class
    }

    /// 𝔞^{i+1} generated by `a ▷ b`, b ∈ 𝔞^i.
    pub fn left_series(&self) -> Series {
        let g = self.gens();
        self.chain(|cur| g.iter().flat_map(|a| cur.gens.iter().map(move |b| (a, b))).map(|(a, b)| self.triangle(a, b)).collect())
    }

    /// 𝔞^{(i+1)} generated by `b ▷ a`, b ∈ 𝔞^{(i)}.
    pub fn right_series(&self) -> Series {
        let g = self.gens();
        self.chain(|cur| cur.gens.iter().flat_map(|b| g.iter().map(move |a| (b, a))).map(|(b, a)| self.triangle(b, a)).collect())
    }

    pub fn right_nilpotent(&self) -> bool {
        self.right_series().terminates()
    }

    pub fn nilpotency_decomposition(&self) -> Result<NilpotencyDecomposition> {
        let d = NilpotencyDecomposition {
            left_nilpotent: self.left_series().terminates(),
            base_nilpotent: self.base.lower_central_series().terminates(),
            l_nilpotent: self.l_series().terminates(),
        };
        if d.l_nilpotent != (d.left_nilpotent && d.base_nilpotent) {
            return Err(Error::TheoremViolation(format!("L-nilpotency does not decompose: {d:?}")));
        }
        Ok(d)
    }

    /// The L-series as a filtration, or an error when not L-nilpotent.
    pub fn canonical_filtration(&self) -> Result<Filtration> {
        let s = self.l_series();
        if !s.terminates() {
            return Err(Error::NotLazard("post-Lie ring is not L-nilpotent".into()));
        }
        Ok(Filtration::from_series(&s))
    }

    /// The L-class `k`, required to be below p.
    pub fn lazard_class(&self) -> Result<usize> {
        let k = self.l_class().ok_or_else(|| Error::NotLazard("post-Lie ring is not L-nilpotent".into()))?;
        if k as u64 >= self.shape().p() {
            return Err(Error::NotLazard(format!("L-class {k} is not below p = {}", self.shape().p())));
        }
        Ok(k)
    }

    pub fn is_lazard(&self) -> bool {
        self.lazard_class().is_ok()
    }

    /// `a ▷ a = 0` for every element.
    pub fn square_free(&self) -> bool {
        (0..self.order()).all(|i| {
            let a = PVec::from_index(self.shape(), i);
            self.triangle(&a, &a).is_zero()
        })
    }

    fn elements(&self) -> impl Iterator<Item = PVec> + '_ {
        (0..self.order()).map(|i| PVec::from_index(self.shape(), i))
    }

    pub fn substructures(&self) -> Result<Substructures> {
        let g = self.gens();
        let n = self.order();
        let (mut fix, mut soc, mut ann) = (Subset::empty(n), Subset::empty(n), Subset::empty(n));
        for a in self.elements() {
            let fixed = g.iter().all(|b| self.triangle(b, &a).is_zero());
            let social = g.iter().all(|b| self.triangle(&a, b).is_zero() && self.bracket(&a, b).is_zero());
            if fixed {
                fix.insert(a.index());
            }
            if social {
                soc.insert(a.index());
            }
            if fixed && social {
                ann.insert(a.index());
            }
        }
        let s = Substructures { fix, soc, ann };
        if self.ideal_type(&s.fix) < IdealType::LeftIdeal {
            return Err(Error::TheoremViolation("Fix is not a left ideal".into()));
        }
        if self.ideal_type(&s.soc) != IdealType::Ideal || self.ideal_type(&s.ann) != IdealType::Ideal {
            return Err(Error::TheoremViolation("Soc or Ann is not an ideal".into()));
        }
        Ok(s)
    }

    pub fn is_additive_subgroup(&self, s: &Subset) -> bool {
        let shape = self.shape();
        let mem: Vec<PVec> = s.members().map(|i| PVec::from_index(shape, i)).collect();
        s.contains(0) && mem.iter().all(|a| mem.iter().all(|b| s.contains((a + b).index())))
    }

    pub fn ideal_type(&self, s: &Subset) -> IdealType {
        if !self.is_additive_subgroup(s) {
            return IdealType::NotClosed;
        }
        let span = Span::from_subset(self.shape(), s);
        let h = &span.gens;
        let inside = |v: PVec| span.contains(&v);
        let pairs = || h.iter().flat_map(|x| h.iter().map(move |y| (x, y)));
        if !pairs().all(|(x, y)| inside(self.bracket(x, y)) && inside(self.triangle(x, y))) {
            return IdealType::NotClosed;
        }
        let g = self.gens();
        let outer = || g.iter().flat_map(|x| h.iter().map(move |y| (x, y)));
        if !outer().all(|(x, y)| inside(self.triangle(x, y))) {
            return IdealType::Substructure;
        }
        if !outer().all(|(x, y)| inside(self.bracket(x, y))) {
            return IdealType::LeftIdeal;
        }
        if !outer().all(|(x, y)| inside(self.circ_bracket(x, y))) {
            return IdealType::StrongLeftIdeal;
        }
        IdealType::Ideal
    }

    /// Checks that `f` is a Lie filtration of strong left ideals with `F_i ▷ F_j ⊆ F_{i+j}`.
    pub fn validate_filtration(&self, f: &Filtration) -> Result<()> {
        self.base.validate_filtration(f)?;
        let spans: Vec<Span> = f.terms().iter().map(|t| Span::from_subset(self.shape(), t)).collect();
        for (i, t) in f.terms().iter().enumerate() {
            if self.ideal_type(t) < IdealType::StrongLeftIdeal {
                return Err(Error::InvalidFiltration(format!("term {} is not a strong left ideal", i + 1)));
            }
        }
        for i in 1..=spans.len() {
            for j in 1..=spans.len() {
                let target = f.term(i + j);
                let ok = spans[i - 1]
                    .gens
                    .iter()
                    .all(|x| spans[j - 1].gens.iter().all(|y| target.contains(self.triangle(x, y).index())));
                if !ok {
                    return Err(Error::InvalidFiltration(format!("F_{i} ▷ F_{j} ⊄ F_{}", i + j)));
                }
            }
        }
        Ok(())
    }

    /// 𝔞∘_i = {a ∈ 𝔞_i : L_a(𝔞_j) ⊆ 𝔞_{i+j} for all j}.
    pub fn adjoint_filtration(&self, f: &Filtration) -> Result<AdjointFiltration> {
        self.validate_filtration(f)?;
        let spans: Vec<Span> = (1..=f.length()).map(|j| Span::from_subset(self.shape(), &f.term(j))).collect();
        let mut terms = Vec::new();
        for i in 1..=f.length() {
            let mut t = Subset::empty(self.order());
            for x in f.term(i).members() {
                let a = PVec::from_index(self.shape(), x);
                let raises = spans.iter().enumerate().all(|(j, s)| {
                    let target = f.term(i + j + 1);
                    s.gens.iter().all(|b| target.contains(self.triangle(&a, b).index()))
                });
                if raises {
                    t.insert(x);
                }
            }
            terms.push(t);
        }
        let adj = Filtration::new(0, terms)?;
        self.circ_ring().validate_filtration(&adj)?;
        let p = self.shape().p();
        let is_lazard = (f.length() as u64) < p && (adj.length() as u64) < p;
        Ok(AdjointFiltration { filtration: adj, is_lazard })
    }

    /// `L_{{g_i, g_j}} = [L_{g_i}, L_{g_j}]` on all generator pairs.
    pub fn left_mult_is_homomorphism(&self) -> bool {
        let g = self.gens();
        let l: Vec<Endo> = g.iter().map(|x| self.left_mult(x)).collect();
        (0..g.len()).all(|i| (0..g.len()).all(|j| self.left_mult(&self.circ_bracket(&g[i], &g[j])) == l[i].commutator(&l[j])))
    }

    /// For L-class `k`: class(𝔞∘) ≤ k and γ^k(𝔞∘) ⊆ Ann(𝔞). Returns (k, class(𝔞∘)).
    pub fn circ_nilpotency_bound(&self) -> Result<(usize, usize)> {
        let k = self.l_class().ok_or_else(|| Error::NotLazard("post-Lie ring is not L-nilpotent".into()))?;
        let lcs = self.circ_ring().lower_central_series();
        let c = lcs.class.ok_or_else(|| Error::TheoremViolation("𝔞∘ is not nilpotent".into()))?;
        if c > k {
            return Err(Error::TheoremViolation(format!("class of 𝔞∘ is {c}, above the L-class {k}")));
        }
        if let Some(gk) = k.checked_sub(1).and_then(|i| lcs.terms.get(i)) {
            let ann = self.substructures()?.ann;
            if !gk.is_subset(&ann) {
                return Err(Error::TheoremViolation("γ^k(𝔞∘) ⊄ Ann".into()));
            }
        }
        Ok((k, c))
    }
}
