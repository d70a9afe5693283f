use crate::error::{Error, Result};
use crate::modarith::{PVec, Shape};
use crate::subset::Subset;

/// A descending chain X_1 ⊇ X_2 ⊇ …, stopped at the trivial subgroup or at stabilization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    /// `terms[i]` is X_{i+1}.
    pub terms: Vec<Subset>,
    /// Least `c` with X_{c+1} trivial; `None` if the chain stabilizes above it.
    pub class: Option<usize>,
}

impl Series {
    pub fn iterate(first: Subset, mut step: impl FnMut(&Subset) -> Subset) -> Series {
        let mut terms = vec![first];
        loop {
            let last = terms.last().unwrap();
            if last.len() <= 1 {
                return Series { class: Some(terms.len() - 1), terms };
            }
            let next = step(last);
            if next == *last {
                return Series { terms, class: None };
            }
            terms.push(next);
        }
    }

    pub fn terminates(&self) -> bool {
        self.class.is_some()
    }
}

/// A finite descending filtration X = X_1 ⊇ … ⊇ X_len ⊋ X_{len+1} = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    zero: usize,
    terms: Vec<Subset>,
}

impl Filtration {
    /// `terms[i]` is X_{i+1}; trailing trivial terms are dropped.
    pub fn new(zero: usize, mut terms: Vec<Subset>) -> Result<Filtration> {
        while terms.last().map_or(false, |t| t.len() <= 1) {
            terms.pop();
        }
        for w in terms.windows(2) {
            if !w[1].is_subset(&w[0]) {
                return Err(Error::InvalidFiltration("terms are not descending".into()));
            }
        }
        if terms.iter().any(|t| !t.contains(zero)) {
            return Err(Error::InvalidFiltration("term misses the identity".into()));
        }
        Ok(Filtration { zero, terms })
    }

    pub fn from_series(s: &Series) -> Filtration {
        let zero = s.terms.last().and_then(|t| t.members().next()).unwrap_or(0);
        Filtration::new(zero, s.terms.clone()).expect("series is descending")
    }

    pub fn length(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[Subset] {
        &self.terms
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    /// X_i, with X_0 = X_1 and X_i trivial beyond the length.
    pub fn term(&self, i: usize) -> Subset {
        let i = i.max(1);
        match self.terms.get(i - 1) {
            Some(t) => t.clone(),
            None => {
                let n = self.terms.first().map_or(1, |t| t.universe());
                Subset::from_members(n, [self.zero])
            }
        }
    }

    /// Largest `i` with `x ∈ X_i`.
    pub fn depth(&self, x: usize) -> usize {
        self.terms.iter().take_while(|t| t.contains(x)).count()
    }
}

/// An additive subgroup of a [`crate::modarith::PShape`] with a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub members: Subset,
    pub gens: Vec<PVec>,
}

impl Span {
    pub fn zero(shape: &Shape) -> Span {
        Span { members: Subset::from_members(shape.order(), [0]), gens: Vec::new() }
    }

    pub fn whole(shape: &Shape) -> Span {
        Span {
            members: Subset::full(shape.order()),
            gens: (0..shape.rank()).map(|i| PVec::generator(shape, i)).collect(),
        }
    }

    pub fn generate(shape: &Shape, cands: impl IntoIterator<Item = PVec>) -> Span {
        Span::zero(shape).extend(shape, cands)
    }

    /// Recovers a generating set for a subset already known to be a subgroup.
    pub fn from_subset(shape: &Shape, s: &Subset) -> Span {
        let mut span = Span::zero(shape);
        for x in s.members() {
            if !span.members.contains(x) {
                span = span.extend(shape, [PVec::from_index(shape, x)]);
            }
        }
        span
    }

    pub fn extend(&self, shape: &Shape, cands: impl IntoIterator<Item = PVec>) -> Span {
        let mut out = self.clone();
        let mut members: Vec<PVec> = out.members.members().map(|i| PVec::from_index(shape, i)).collect();
        for g in cands {
            if out.members.contains(g.index()) {
                continue;
            }
            let mut next = members.clone();
            let mut multiple = g.clone();
            while !out.members.contains(multiple.index()) {
                for m in &members {
                    let y = m + &multiple;
                    out.members.insert(y.index());
                    next.push(y);
                }
                multiple = &multiple + &g;
            }
            members = next;
            out.gens.push(g);
        }
        out
    }

    pub fn contains(&self, v: &PVec) -> bool {
        self.members.contains(v.index())
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() <= 1
    }
}
