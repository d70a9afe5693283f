use rayon::prelude::*;

use super::{Filtration, Series};
use crate::algebra::GroupOps;
use crate::error::{Error, Result};
use crate::modarith::{is_prime, mod_inv, PScalar};
use crate::subset::Subset;

/// A finite group given by its Cayley table.
#[derive(Clone, PartialEq, Eq)]
pub struct FinGroup {
    n: usize,
    identity: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
}

impl std::fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FinGroup(order {})", self.n)
    }
}

/// `Some(p)` when `n` is a positive power of the prime `p`.
pub fn prime_of_order(n: usize) -> Option<u64> {
    let p = (2..=n as u64).find(|d| n as u64 % d == 0)?;
    let mut m = n as u64;
    while m % p == 0 {
        m /= p;
    }
    (m == 1 && is_prime(p)).then_some(p)
}

impl FinGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn new(n: usize, table: Vec<u32>, identity: usize) -> Result<FinGroup> {
        if n == 0 || table.len() != n * n {
            return Err(Error::NotAGroup(format!("table size {} is not {n}²", table.len())));
        }
        if identity >= n {
            return Err(Error::NotAGroup("identity out of range".into()));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return Err(Error::NotAGroup("entry out of range".into()));
        }
        for x in 0..n {
            if table[identity * n + x] as usize != x || table[x * n + identity] as usize != x {
                return Err(Error::NotAGroup(format!("{identity} is not an identity at {x}")));
            }
        }
        let mut inverse = vec![u32::MAX; n];
        for x in 0..n {
            let mut seen = Subset::empty(n);
            for y in 0..n {
                let z = table[x * n + y] as usize;
                if seen.contains(z) {
                    return Err(Error::NotAGroup(format!("row {x} repeats {z}")));
                }
                seen.insert(z);
                if z == identity {
                    inverse[x] = y as u32;
                }
            }
        }
        let mut g = FinGroup { n, identity, table, inverse, orders: Vec::new() };
        g.check_associative()?;
        g.orders = (0..n).map(|x| g.compute_order(x)).collect();
        Ok(g)
    }

    /// Builds the table from `f` in parallel, then validates.
    pub fn from_fn(n: usize, identity: usize, f: impl Fn(usize, usize) -> usize + Sync) -> Result<FinGroup> {
        let table = (0..n * n).into_par_iter().map(|k| f(k / n, k % n) as u32).collect();
        FinGroup::new(n, table, identity)
    }

    /// Light's test: it suffices to check (xg)y = x(gy) for g in a generating set.
    fn check_associative(&self) -> Result<()> {
        let gens = self.generating_set();
        for &g in &gens {
            let bad = (0..self.n).into_par_iter().find_any(|&x| {
                let xg = self.mul(x, g);
                (0..self.n).any(|y| self.mul(xg, y) != self.mul(x, self.mul(g, y)))
            });
            if let Some(x) = bad {
                return Err(Error::NotAGroup(format!("associativity fails at ({x}, {g}, ·)")));
            }
        }
        Ok(())
    }

    fn compute_order(&self, x: usize) -> u32 {
        let (mut y, mut k) = (x, 1u32);
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `a⁻¹b⁻¹ab`.
    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a] as usize
    }

    pub fn exponent(&self) -> usize {
        self.orders.iter().fold(1usize, |acc, &o| num_integer::lcm(acc, o as usize))
    }

    pub fn prime(&self) -> Option<u64> {
        prime_of_order(self.n)
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.orders[a] as i64;
        let e = k.rem_euclid(o);
        let (mut acc, mut base, mut e) = (self.identity, a, e as u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The unique `h` with `h^n = g`, for `n` coprime to the group order.
    pub fn root(&self, g: usize, n: i64) -> Result<usize> {
        self.pow_rational(&g, &PScalar::new(1, n)?)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_subgroup(&self, s: &Subset) -> bool {
        s.contains(self.identity)
            && s.members().all(|a| s.contains(self.inv(a)) && s.members().all(|b| s.contains(self.mul(a, b))))
    }

    pub fn is_normal(&self, s: &Subset) -> bool {
        self.is_subgroup(s)
            && s.members().all(|h| (0..self.n).all(|g| s.contains(self.mul(self.mul(self.inv(g), h), g))))
    }

    /// Subgroup generated by `cands`.
    pub fn generated(&self, cands: impl IntoIterator<Item = usize>) -> Subset {
        self.extend(&Subset::from_members(self.n, [self.identity]), cands)
    }

    /// Subgroup generated by the subgroup `base` together with `cands`.
    pub fn extend(&self, base: &Subset, cands: impl IntoIterator<Item = usize>) -> Subset {
        let mut sub = base.clone();
        let mut members: Vec<usize> = sub.members().collect();
        let mut gens = self.subset_generators(base);
        for x in cands {
            if sub.contains(x) {
                continue;
            }
            gens.push(x);
            let mut frontier: Vec<usize> = Vec::new();
            for &m in &members {
                let y = self.mul(m, x);
                if !sub.contains(y) {
                    sub.insert(y);
                    frontier.push(y);
                }
            }
            while let Some(y) = frontier.pop() {
                members.push(y);
                for &g in &gens {
                    let z = self.mul(y, g);
                    if !sub.contains(z) {
                        sub.insert(z);
                        frontier.push(z);
                    }
                }
            }
        }
        sub
    }

    /// A generating set of the subgroup `s`, chosen greedily.
    pub fn subset_generators(&self, s: &Subset) -> Vec<usize> {
        let mut sub = Subset::from_members(self.n, [self.identity]);
        let mut gens = Vec::new();
        for x in s.members() {
            if !sub.contains(x) {
                gens.push(x);
                sub = self.closure_of(&gens);
            }
        }
        gens
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generating_set(&self) -> Vec<usize> {
        self.subset_generators(&Subset::full(self.n))
    }

    /// Closure of `gens` under right multiplication, starting from the identity.
    fn closure_of(&self, gens: &[usize]) -> Subset {
        let mut sub = Subset::from_members(self.n, [self.identity]);
        let mut stack = vec![self.identity];
        while let Some(y) = stack.pop() {
            for &g in gens {
                let z = self.mul(y, g);
                if !sub.contains(z) {
                    sub.insert(z);
                    stack.push(z);
                }
            }
        }
        sub
    }

    /// Subgroup generated by all `[a, b]`, a ∈ `a_set`, b ∈ `b_set`.
    pub fn commutator_subgroup(&self, a_set: &Subset, b_set: &Subset) -> Subset {
        let b_members: Vec<usize> = b_set.members().collect();
        let comms: Vec<Subset> = a_set
            .members()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&a| Subset::from_members(self.n, b_members.iter().map(|&b| self.comm(a, b))))
            .collect();
        let mut all = Subset::empty(self.n);
        for c in &comms {
            for x in c.members() {
                all.insert(x);
            }
        }
        self.generated(all.members())
    }

    pub fn lower_central_series(&self) -> Series {
        let whole = Subset::full(self.n);
        Series::iterate(whole.clone(), |cur| self.commutator_subgroup(&whole, cur))
    }

    /// Lower central series as a filtration, or an error when not nilpotent.
    pub fn canonical_filtration(&self) -> Result<Filtration> {
        let s = self.lower_central_series();
        if s.class.is_none() {
            return Err(Error::NotLazard("group is not nilpotent".into()));
        }
        Ok(Filtration::from_series(&s))
    }

    /// Checks that `f` consists of normal subgroups with [G_i, G_j] ⊆ G_{i+j}.
    pub fn validate_filtration(&self, f: &Filtration) -> Result<()> {
        if f.terms().first().map_or(true, |t| !t.is_full()) {
            return Err(Error::InvalidFiltration("first term must be the whole group".into()));
        }
        for (i, t) in f.terms().iter().enumerate() {
            if !self.is_normal(t) {
                return Err(Error::InvalidFiltration(format!("term {} is not a normal subgroup", i + 1)));
            }
        }
        for i in 1..=f.length() {
            for j in i..=f.length() {
                let c = self.commutator_subgroup(&f.term(i), &f.term(j));
                if !c.is_subset(&f.term(i + j)) {
                    return Err(Error::InvalidFiltration(format!("[G_{i}, G_{j}] ⊄ G_{}", i + j)));
                }
            }
        }
        Ok(())
    }

    /// All subgroups, by repeated single-element extension.
    pub fn all_subgroups(&self) -> Vec<Subset> {
        let trivial = Subset::from_members(self.n, [self.identity]);
        let mut seen = std::collections::HashSet::new();
        seen.insert(trivial.clone());
        let mut out = vec![trivial];
        let mut i = 0;
        while i < out.len() {
            let h = out[i].clone();
            for x in 0..self.n {
                if !h.contains(x) {
                    let k = self.extend(&h, [x]);
                    if seen.insert(k.clone()) {
                        out.push(k);
                    }
                }
            }
            i += 1;
        }
        out.sort_by_key(|s| (s.len(), s.members().collect::<Vec<_>>()));
        out
    }
}

impl GroupOps for FinGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        FinGroup::mul(self, *a, *b)
    }

    fn inv(&self, a: &usize) -> usize {
        FinGroup::inv(self, *a)
    }

    fn pow_rational(&self, a: &usize, s: &PScalar) -> Result<usize> {
        let o = self.orders[*a] as u64;
        if let Some(p) = self.prime() {
            if s.den() % p == 0 {
                return Err(Error::NotPDivisible { den: s.den(), p });
            }
        }
        let inv = mod_inv(s.den() % o, o).ok_or(Error::NotPDivisible { den: s.den(), p: o })?;
        let m = (s.num() as i128).rem_euclid(o as i128) as u64 * inv % o;
        Ok(self.pow(*a, m as i64))
    }

    fn commutator(&self, a: &usize, b: &usize) -> usize {
        self.comm(*a, *b)
    }
}
