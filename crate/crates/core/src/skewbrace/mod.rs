//! Skew braces `(A, ·, ∘)` stored as two Cayley tables on a common element list.

mod holomorph;

pub use holomorph::{
    automorphisms, extend_hom, filtered_automorphisms, isomorphic, lambda_search, p_automorphisms,
    regular_subgroups, HolElem, Holomorph, Perm,
};

use crate::error::{Error, Result};
use crate::liering::{Filtration, FinGroup, Report, Series};
use crate::modarith::Shape;
use crate::postlie::{IdealType, NilpotencyDecomposition};
use crate::subset::Subset;

/// Fix, socle and annihilator of a skew brace.
pub use crate::postlie::Substructures;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSets {
    pub powers: Subset,
    pub circ_powers: Subset,
    pub torsion: Subset,
    pub circ_torsion: Subset,
}

#[derive(Clone, Debug)]
pub struct SkewBrace {
    dot: FinGroup,
    circ: FinGroup,
    carrier: Option<Shape>,
    lambda: Vec<Perm>,
}

impl PartialEq for SkewBrace {
    fn eq(&self, other: &SkewBrace) -> bool {
        self.dot.table() == other.dot.table() && self.circ.table() == other.circ.table()
    }
}

impl Eq for SkewBrace {}

impl SkewBrace {
    /// Pairs two groups on the same elements; the compatibility axiom is checked by [`SkewBrace::verify`].
    pub fn new(dot: FinGroup, circ: FinGroup) -> Result<SkewBrace> {
        if dot.order() != circ.order() {
            return Err(Error::NotAGroup("the two operations have different orders".into()));
        }
        if dot.identity() != circ.identity() {
            return Err(Error::NotAGroup("the two operations have different identities".into()));
        }
        let n = dot.order();
        let lambda = (0..n)
            .map(|a| (0..n).map(|b| dot.mul(dot.inv(a), circ.mul(a, b)) as u32).collect())
            .collect();
        Ok(SkewBrace { dot, circ, carrier: None, lambda })
    }

    /// `a ∘ b = a · λ_a(b)`.
    pub fn from_lambda(dot: FinGroup, lambda: &[Perm]) -> Result<SkewBrace> {
        let d = &dot;
        let circ = FinGroup::from_fn(dot.order(), dot.identity(), |a, b| d.mul(a, lambda[a][b] as usize))?;
        SkewBrace::new(dot, circ)
    }

    /// `a ∘ b = a · b`.
    pub fn trivial(dot: FinGroup) -> SkewBrace {
        SkewBrace::new(dot.clone(), dot).unwrap()
    }

    /// Records that element `i` is the vector of index `i` in `shape`.
    pub fn with_carrier(mut self, shape: Shape) -> Result<SkewBrace> {
        if shape.order() != self.order() {
            return Err(Error::ShapeMismatch);
        }
        self.carrier = Some(shape);
        Ok(self)
    }

    pub fn carrier(&self) -> Option<&Shape> {
        self.carrier.as_ref()
    }

    pub fn dot(&self) -> &FinGroup {
        &self.dot
    }

    pub fn circ(&self) -> &FinGroup {
        &self.circ
    }

    pub fn order(&self) -> usize {
        self.dot.order()
    }

    pub fn identity(&self) -> usize {
        self.dot.identity()
    }

    pub fn is_brace(&self) -> bool {
        self.dot.is_abelian()
    }

    pub fn prime(&self) -> Option<u64> {
        self.dot.prime()
    }

    pub fn lambda(&self, a: usize) -> &Perm {
        &self.lambda[a]
    }

    pub fn lambdas(&self) -> &[Perm] {
        &self.lambda
    }

    /// `a * b = λ_a(b) · b⁻¹`.
    pub fn star(&self, a: usize, b: usize) -> usize {
        self.dot.mul(self.lambda[a][b] as usize, self.dot.inv(b))
    }

    pub fn star_table(&self) -> Vec<u32> {
        let n = self.order();
        (0..n * n).map(|k| self.star(k / n, k % n) as u32).collect()
    }

    /// `a∘(b·c) = (a∘b)·a⁻¹·(a∘c)`, checked with `c` over generators of `(A, ·)`.
    pub fn verify(&self) -> Report {
        let mut rep = Report::default();
        let gens = self.dot.generating_set();
        let (d, c) = (&self.dot, &self.circ);
        for a in 0..self.order() {
            for b in 0..self.order() {
                for &g in &gens {
                    let lhs = c.mul(a, d.mul(b, g));
                    let rhs = d.mul(d.mul(c.mul(a, b), d.inv(a)), c.mul(a, g));
                    if lhs != rhs {
                        rep.failures.push(format!("compatibility fails on ({a}, {b}, {g})"));
                        return rep;
                    }
                }
            }
        }
        rep
    }

    /// Each λ_a is an automorphism of `(A, ·)` and λ is a homomorphism from `(A, ∘)`.
    pub fn check_lambda(&self) -> Result<()> {
        let n = self.order();
        let dgens = self.dot.generating_set();
        for a in 0..n {
            let l = &self.lambda[a];
            let ok = (0..n).all(|x| dgens.iter().all(|&g| l[self.dot.mul(x, g)] as usize == self.dot.mul(l[x] as usize, l[g] as usize)));
            if !ok || Subset::from_members(n, l.iter().map(|&x| x as usize)).len() != n {
                return Err(Error::TheoremViolation(format!("λ_{a} is not an automorphism")));
            }
        }
        for &g in &self.circ.generating_set() {
            for a in 0..n {
                let ag = &self.lambda[self.circ.mul(a, g)];
                if (0..n).any(|x| ag[x] != self.lambda[a][self.lambda[g][x] as usize]) {
                    return Err(Error::TheoremViolation(format!("λ_(a∘b) ≠ λ_a λ_b at ({a}, {g})")));
                }
            }
        }
        Ok(())
    }

    fn dot_comm(&self, a: usize, b: usize) -> usize {
        let d = &self.dot;
        d.mul(d.mul(a, b), d.mul(d.inv(a), d.inv(b)))
    }

    /// L^{i+1} generated by `a * b` and `a·b·a⁻¹·b⁻¹`, a ∈ A, b ∈ L^i.
    pub fn l_series(&self) -> Series {
        let n = self.order();
        Series::iterate(Subset::full(n), |cur| {
            let mut c = Vec::new();
            for a in 0..n {
                for b in cur.members() {
                    c.push(self.star(a, b));
                    c.push(self.dot_comm(a, b));
                }
            }
            self.dot.generated(c)
        })
    }

    pub fn l_class(&self) -> Option<usize> {
        self.l_series().class
    }

    /// A^{i+1} generated by `a * b`, b ∈ A^i.
    pub fn left_series(&self) -> Series {
        let n = self.order();
        Series::iterate(Subset::full(n), |cur| {
            self.dot.generated((0..n).flat_map(|a| cur.members().map(move |b| (a, b))).map(|(a, b)| self.star(a, b)))
        })
    }

    /// A^{(i+1)} generated by `b * a`, b ∈ A^{(i)}.
    pub fn right_series(&self) -> Series {
        let n = self.order();
        Series::iterate(Subset::full(n), |cur| {
            self.dot.generated(cur.members().flat_map(|b| (0..n).map(move |a| (b, a))).map(|(b, a)| self.star(b, a)))
        })
    }

    pub fn right_nilpotent(&self) -> bool {
        self.right_series().terminates()
    }

    /// A^{{k+1}} generated by `a * b` and dot commutators with a ∈ A^{{i}}, b ∈ A^{{k+1−i}}.
    pub fn strong_series(&self, max_len: usize) -> Vec<Subset> {
        let n = self.order();
        let mut terms = vec![Subset::full(n)];
        while terms.len() < max_len && terms.last().unwrap().len() > 1 {
            let k = terms.len();
            let mut c = Vec::new();
            for i in 1..=k {
                for a in terms[i - 1].members() {
                    for b in terms[k - i].members() {
                        c.push(self.star(a, b));
                        c.push(self.dot_comm(a, b));
                    }
                }
            }
            terms.push(self.dot.generated(c));
        }
        terms
    }

    pub fn nilpotency_decomposition(&self) -> Result<NilpotencyDecomposition> {
        let d = NilpotencyDecomposition {
            left_nilpotent: self.left_series().terminates(),
            base_nilpotent: self.dot.lower_central_series().terminates(),
            l_nilpotent: self.l_series().terminates(),
        };
        if d.l_nilpotent != (d.left_nilpotent && d.base_nilpotent) {
            return Err(Error::TheoremViolation(format!("L-nilpotency does not decompose: {d:?}")));
        }
        Ok(d)
    }

    pub fn canonical_filtration(&self) -> Result<Filtration> {
        let s = self.l_series();
        if !s.terminates() {
            return Err(Error::NotLazard("skew brace is not L-nilpotent".into()));
        }
        Ok(Filtration::from_series(&s))
    }

    /// The L-class `k`, required to be below p.
    pub fn lazard_class(&self) -> Result<usize> {
        let p = self.prime().ok_or_else(|| Error::NotLazard("order is not a prime power".into()))?;
        let k = self.l_class().ok_or_else(|| Error::NotLazard("skew brace is not L-nilpotent".into()))?;
        if k as u64 >= p {
            return Err(Error::NotLazard(format!("L-class {k} is not below p = {p}")));
        }
        Ok(k)
    }

    pub fn is_lazard(&self) -> bool {
        self.lazard_class().is_ok()
    }

    /// For L-class `k`: class(A, ∘) ≤ k and γ^k(A, ∘) ⊆ Ann(A). Returns (k, class(A, ∘)).
    pub fn circ_nilpotency_bound(&self) -> Result<(usize, usize)> {
        let k = self.l_class().ok_or_else(|| Error::NotLazard("skew brace is not L-nilpotent".into()))?;
        let lcs = self.circ.lower_central_series();
        let c = lcs.class.ok_or_else(|| Error::TheoremViolation("(A, ∘) is not nilpotent".into()))?;
        if c > k {
            return Err(Error::TheoremViolation(format!("class of (A, ∘) is {c}, above the L-class {k}")));
        }
        if let Some(gk) = k.checked_sub(1).and_then(|i| lcs.terms.get(i)) {
            if !gk.is_subset(&self.substructures()?.ann) {
                return Err(Error::TheoremViolation("γ^k(A, ∘) ⊄ Ann".into()));
            }
        }
        Ok((k, c))
    }

    pub fn substructures(&self) -> Result<Substructures> {
        let n = self.order();
        let (d, c) = (&self.dot, &self.circ);
        let (mut fix, mut soc, mut ann) = (Subset::empty(n), Subset::empty(n), Subset::empty(n));
        for a in 0..n {
            let fixed = (0..n).all(|b| c.mul(b, a) == d.mul(b, a));
            let social = (0..n).all(|b| c.mul(a, b) == d.mul(a, b) && d.mul(a, b) == d.mul(b, a));
            if fixed {
                fix.insert(a);
            }
            if social {
                soc.insert(a);
            }
            if fixed && social {
                ann.insert(a);
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

    pub fn ideal_type(&self, s: &Subset) -> IdealType {
        let (d, c) = (&self.dot, &self.circ);
        if !d.is_subgroup(s) || !c.is_subgroup(s) {
            return IdealType::NotClosed;
        }
        let h = d.subset_generators(s);
        let circ_gens = c.generating_set();
        if !circ_gens.iter().all(|&a| h.iter().all(|&b| s.contains(self.lambda[a][b] as usize))) {
            return IdealType::Substructure;
        }
        let conj = |g: &FinGroup, x: usize, y: usize| g.mul(g.mul(g.inv(x), y), x);
        if !d.generating_set().iter().all(|&a| h.iter().all(|&b| s.contains(conj(d, a, b)))) {
            return IdealType::LeftIdeal;
        }
        let hc = c.subset_generators(s);
        if !circ_gens.iter().all(|&a| hc.iter().all(|&b| s.contains(conj(c, a, b)))) {
            return IdealType::StrongLeftIdeal;
        }
        IdealType::Ideal
    }

    /// `{a^n}`, `{a^{∘n}}` and the two n-torsion sets; requires a Lazard brace and checks both equalities.
    pub fn power_set_ideals(&self, n: i64) -> Result<PowerSets> {
        self.lazard_class()?;
        let size = self.order();
        let sets = PowerSets {
            powers: Subset::from_members(size, (0..size).map(|a| self.dot.pow(a, n))),
            circ_powers: Subset::from_members(size, (0..size).map(|a| self.circ.pow(a, n))),
            torsion: Subset::from_members(size, (0..size).filter(|&a| self.dot.pow(a, n) == self.identity())),
            circ_torsion: Subset::from_members(size, (0..size).filter(|&a| self.circ.pow(a, n) == self.identity())),
        };
        if sets.powers != sets.circ_powers || sets.torsion != sets.circ_torsion {
            return Err(Error::TheoremViolation(format!("power sets differ for n = {n}")));
        }
        if self.ideal_type(&sets.powers) != IdealType::Ideal || self.ideal_type(&sets.torsion) != IdealType::Ideal {
            return Err(Error::TheoremViolation(format!("power sets for n = {n} are not ideals")));
        }
        Ok(sets)
    }

    /// (A, ∘)_i = A_i ∩ {a : λ_a ∈ Aut(A)_i}, validated as a filtration of `(A, ∘)`.
    pub fn adjoint_filtration(&self, f: &Filtration) -> Result<Filtration> {
        self.dot.validate_filtration(f)?;
        let n = self.order();
        let mut terms = Vec::new();
        for i in 1..=f.length() {
            let mut t = Subset::empty(n);
            for a in f.term(i).members() {
                let l = &self.lambda[a];
                let raises = (1..=f.length()).all(|j| {
                    let target = f.term(i + j);
                    f.term(j).members().all(|g| target.contains(self.dot.mul(l[g] as usize, self.dot.inv(g))))
                });
                if raises {
                    t.insert(a);
                }
            }
            terms.push(t);
        }
        let adj = Filtration::new(self.identity(), terms)?;
        self.circ.validate_filtration(&adj)?;
        Ok(adj)
    }

    /// Relabels elements: element `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<SkewBrace> {
        let n = self.order();
        let mut inv = vec![0usize; n];
        for (i, &j) in perm.iter().enumerate() {
            inv[j] = i;
        }
        let (d, c) = (&self.dot, &self.circ);
        let dot = FinGroup::from_fn(n, perm[d.identity()], |a, b| perm[d.mul(inv[a], inv[b])])?;
        let circ = FinGroup::from_fn(n, perm[d.identity()], |a, b| perm[c.mul(inv[a], inv[b])])?;
        SkewBrace::new(dot, circ)
    }
}
