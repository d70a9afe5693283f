use rayon::prelude::*;

use super::{Filtration, FinGroup, Series, Span};
use crate::algebra::LieOps;
use crate::error::{Error, Result};
use crate::freelie::tables;
use crate::modarith::{abelian_decompose, AbelianIso, Endo, PScalar, PVec, Shape};

/// Default cap on carrier sizes for table-building operations.
pub const DEFAULT_MAX_ORDER: usize = 3125;

/// Outcome of an axiom check; each failure names its witness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub failures: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.failures.first() {
            None => Ok(()),
            Some(f) => Err(Error::AxiomFailure(f.clone())),
        }
    }
}

/// A Lie ring on a [`crate::modarith::PShape`] given by `c_ij = [g_i, g_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieRingSC {
    shape: Shape,
    brackets: Vec<PVec>,
}

impl LieRingSC {
    /// Sets `[g_i, g_j] = v` and `[g_j, g_i] = −v` for each listed pair.
    pub fn new(shape: &Shape, pairs: impl IntoIterator<Item = (usize, usize, PVec)>) -> Result<LieRingSC> {
        let r = shape.rank();
        let mut brackets = vec![PVec::zero(shape); r * r];
        for (i, j, v) in pairs {
            if i >= r || j >= r || **v.shape() != **shape {
                return Err(Error::ShapeMismatch);
            }
            brackets[i * r + j] = v.clone();
            brackets[j * r + i] = v.neg();
        }
        Ok(LieRingSC { shape: shape.clone(), brackets })
    }

    /// Full `r × r` bracket matrix, stored as given (not validated).
    pub fn from_matrix(shape: &Shape, brackets: Vec<PVec>) -> Result<LieRingSC> {
        if brackets.len() != shape.rank() * shape.rank() {
            return Err(Error::ShapeMismatch);
        }
        Ok(LieRingSC { shape: shape.clone(), brackets })
    }

    pub fn abelian(shape: &Shape) -> LieRingSC {
        LieRingSC::new(shape, []).unwrap()
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn structure(&self, i: usize, j: usize) -> &PVec {
        &self.brackets[i * self.shape.rank() + j]
    }

    pub fn order(&self) -> usize {
        self.shape.order()
    }

    pub fn bracket(&self, a: &PVec, b: &PVec) -> PVec {
        let r = self.shape.rank();
        let mut acc = PVec::zero(&self.shape);
        for (i, &x) in a.coords().iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coords().iter().enumerate() {
                if y != 0 {
                    let c = &self.brackets[i * r + j];
                    if !c.is_zero() {
                        acc = &acc + &c.scale_int(x as i64).scale_int(y as i64);
                    }
                }
            }
        }
        acc
    }

    pub fn ad(&self, a: &PVec) -> Endo {
        Endo::from_fn(&self.shape, |b| self.bracket(a, b)).expect("ad is well-defined")
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.iter().all(|v| v.is_zero())
    }

    fn gens(&self) -> Vec<PVec> {
        (0..self.shape.rank()).map(|i| PVec::generator(&self.shape, i)).collect()
    }

    /// Antisymmetry, well-definedness and Jacobi on generators.
    pub fn verify(&self) -> Report {
        let r = self.shape.rank();
        let m = self.shape.moduli();
        let mut rep = Report::default();
        for i in 0..r {
            for j in 0..r {
                let c = self.structure(i, j);
                if i == j && !c.is_zero() {
                    rep.failures.push(format!("antisymmetry: [g{i},g{i}] = {c} ≠ 0"));
                }
                if i < j && *c != self.structure(j, i).neg() {
                    rep.failures.push(format!("antisymmetry: [g{i},g{j}] ≠ −[g{j},g{i}]"));
                }
                let k = m[i].min(m[j]) as i64;
                if !c.scale_int(k).is_zero() {
                    rep.failures.push(format!("well-definedness: {k}·[g{i},g{j}] ≠ 0"));
                }
            }
        }
        let g = self.gens();
        for i in 0..r {
            for j in i + 1..r {
                for k in j + 1..r {
                    let a = self.bracket(&g[i], &self.bracket(&g[j], &g[k]));
                    let b = self.bracket(&g[j], &self.bracket(&g[k], &g[i]));
                    let c = self.bracket(&g[k], &self.bracket(&g[i], &g[j]));
                    if !(&(&a + &b) + &c).is_zero() {
                        rep.failures.push(format!("Jacobi fails on (g{i}, g{j}, g{k})"));
                    }
                }
            }
        }
        rep
    }

    /// Span of `[x, y]` over generators x of `a` and y of `b`.
    pub fn bracket_span(&self, a: &Span, b: &Span) -> Span {
        let cands: Vec<PVec> = a
            .gens
            .iter()
            .flat_map(|x| b.gens.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.bracket(x, y))
            .collect();
        Span::generate(&self.shape, cands)
    }

    pub fn lower_central_series(&self) -> Series {
        let whole = Span::whole(&self.shape);
        let mut spans = vec![whole.clone()];
        Series::iterate(whole.members.clone(), |_| {
            let next = self.bracket_span(&whole, spans.last().unwrap());
            let m = next.members.clone();
            spans.push(next);
            m
        })
    }

    pub fn class(&self) -> Option<usize> {
        self.lower_central_series().class
    }

    pub fn canonical_filtration(&self) -> Result<Filtration> {
        let s = self.lower_central_series();
        if s.class.is_none() {
            return Err(Error::NotLazard("Lie ring is not nilpotent".into()));
        }
        Ok(Filtration::from_series(&s))
    }

    pub fn is_ideal(&self, s: &Span) -> bool {
        self.gens().iter().all(|g| s.gens.iter().all(|h| s.contains(&self.bracket(g, h))))
    }

    pub fn validate_filtration(&self, f: &Filtration) -> Result<()> {
        if f.terms().first().map_or(self.order() > 1, |t| !t.is_full()) {
            return Err(Error::InvalidFiltration("first term must be the whole ring".into()));
        }
        let spans: Vec<Span> = f.terms().iter().map(|t| Span::from_subset(&self.shape, t)).collect();
        for (i, s) in spans.iter().enumerate() {
            if !self.is_ideal(s) {
                return Err(Error::InvalidFiltration(format!("term {} is not an ideal", i + 1)));
            }
        }
        for i in 1..=spans.len() {
            for j in i..=spans.len() {
                let target = f.term(i + j);
                let c = self.bracket_span(&spans[i - 1], &spans[j - 1]);
                if !c.members.is_subset(&target) {
                    return Err(Error::InvalidFiltration(format!("[L_{i}, L_{j}] ⊄ L_{}", i + j)));
                }
            }
        }
        Ok(())
    }

    /// Filtration length at most p − 1.
    pub fn is_lazard(&self, f: &Filtration) -> Result<bool> {
        self.validate_filtration(f)?;
        Ok((f.length() as u64) < self.shape.p())
    }

    fn lazard_length(&self, f: &Filtration) -> Result<usize> {
        if !self.is_lazard(f)? {
            return Err(Error::NotLazard(format!(
                "filtration length {} is not below p = {}",
                f.length(),
                self.shape.p()
            )));
        }
        Ok(f.length())
    }

    /// BCH(a, b) truncated at degree `k`.
    pub fn bch_truncated(&self, a: &PVec, b: &PVec, k: usize) -> Result<PVec> {
        tables().bch.eval(self, a, b, k)
    }

    pub fn bch_eval(&self, f: &Filtration, a: &PVec, b: &PVec) -> Result<PVec> {
        let k = self.lazard_length(f)?;
        self.bch_truncated(a, b, k)
    }

    /// exp(ad_a) truncated at degree `k`.
    pub fn exp_ad(&self, a: &PVec, k: usize) -> Result<Endo> {
        self.ad(a).exp(k.max(1))
    }

    pub fn laz(&self, f: &Filtration) -> Result<FinGroup> {
        self.laz_capped(f, DEFAULT_MAX_ORDER)
    }

    pub fn laz_capped(&self, f: &Filtration, cap: usize) -> Result<FinGroup> {
        let k = self.lazard_length(f)?;
        let n = self.order();
        if n > cap {
            return Err(Error::CapExceeded { order: n, cap });
        }
        let prog = tables().bch.compile(k);
        let table = super::fast::series_table(self, &prog)?;
        FinGroup::new(n, table, 0)
    }

    pub fn to_table(&self) -> LieRingTable {
        let raw = super::fast::RawLie::new(self);
        let moduli = self.shape.moduli();
        let add = super::fast::pair_table(&self.shape, |a, b, out, _| {
            for k in 0..a.len() {
                out[k] = (a[k] + b[k]) % moduli[k];
            }
        });
        let bracket = super::fast::pair_table(&self.shape, |a, b, out, _| raw.bracket(a, b, out));
        LieRingTable { n: self.order(), zero: 0, add, bracket }
    }
}

impl LieOps for LieRingSC {
    type Elem = PVec;

    fn zero(&self) -> PVec {
        PVec::zero(&self.shape)
    }

    fn add(&self, a: &PVec, b: &PVec) -> PVec {
        a + b
    }

    fn bracket(&self, a: &PVec, b: &PVec) -> PVec {
        LieRingSC::bracket(self, a, b)
    }

    fn scale(&self, s: &PScalar, a: &PVec) -> Result<PVec> {
        a.scale(s)
    }
}

/// A Lie ring given by addition and bracket tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieRingTable {
    pub n: usize,
    pub zero: usize,
    pub add: Vec<u32>,
    pub bracket: Vec<u32>,
}

impl LieRingTable {
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    pub fn bracket(&self, a: usize, b: usize) -> usize {
        self.bracket[a * self.n + b] as usize
    }

    /// Structure constants through an explicit decomposition of the additive group;
    /// fails unless the bracket table is the bilinear extension of those constants.
    pub fn to_structure_constants(&self) -> Result<(LieRingSC, AbelianIso)> {
        let iso = abelian_decompose(&self.add, self.n)?;
        let shape = iso.shape.clone();
        let r = shape.rank();
        let gen_elem = |i: usize| iso.elem_of_index[PVec::generator(&shape, i).index()];
        let mut brackets = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                let e = self.bracket(gen_elem(i), gen_elem(j));
                brackets.push(PVec::from_index(&shape, iso.index_of_elem[e]));
            }
        }
        let sc = LieRingSC::from_matrix(&shape, brackets)?;
        let n = self.n;
        let bad = (0..n * n).into_par_iter().find_any(|&t| {
            let (a, b) = (t / n, t % n);
            let va = PVec::from_index(&shape, iso.index_of_elem[a]);
            let vb = PVec::from_index(&shape, iso.index_of_elem[b]);
            sc.bracket(&va, &vb).index() != iso.index_of_elem[self.bracket(a, b)]
        });
        if let Some(t) = bad {
            return Err(Error::AxiomFailure(format!("bracket not biadditive at ({}, {})", t / n, t % n)));
        }
        Ok((sc, iso))
    }

    /// Full check: biadditivity via structure constants, then the generator axioms.
    pub fn verify(&self) -> Report {
        match self.to_structure_constants() {
            Err(e) => Report { failures: vec![e.to_string()] },
            Ok((sc, _)) => sc.verify(),
        }
    }
}

/// Laz⁻¹: addition P(a, b) and bracket Q(a, b) evaluated in `g`.
pub fn laz_inv(g: &FinGroup, f: &Filtration) -> Result<LieRingTable> {
    let p = g.prime().ok_or_else(|| Error::NotLazard("group order is not a prime power".into()))?;
    if f.length() as u64 >= p {
        return Err(Error::NotLazard(format!("filtration length {} is not below p = {p}", f.length())));
    }
    g.validate_filtration(f)?;
    let k = f.length();
    let t = tables();
    let n = g.order();
    let add = super::fast::word_table(g, &t.p.compile(k))?;
    let bracket = super::fast::word_table(g, &t.q.compile(k))?;
    Ok(LieRingTable { n, zero: g.identity(), add, bracket })
}

/// Laz⁻¹ with the canonical lower-central filtration.
pub fn laz_inv_canonical(g: &FinGroup) -> Result<LieRingTable> {
    laz_inv(g, &g.canonical_filtration()?)
}
