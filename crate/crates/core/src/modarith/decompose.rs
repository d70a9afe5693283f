use fixedbitset::FixedBitSet;

use super::{is_prime, PShape, Shape};
use crate::error::{Error, Result};

/// Explicit isomorphism between a table group and a [`PShape`].
#[derive(Clone, Debug)]
pub struct AbelianIso {
    pub shape: Shape,
    /// `index_of_elem[x]` is the shape index of table element `x`.
    pub index_of_elem: Vec<usize>,
    /// `elem_of_index[i]` is the table element at shape index `i`.
    pub elem_of_index: Vec<usize>,
}

fn prime_power_base(n: usize) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let p = (2..=n as u64).find(|d| n as u64 % d == 0)?;
    let mut m = n as u64;
    while m % p == 0 {
        m /= p;
    }
    (m == 1 && is_prime(p)).then_some(p)
}

/// Recovers invariant factors of an abelian p-group given by its operation table.
pub fn abelian_decompose(table: &[u32], n: usize) -> Result<AbelianIso> {
    if table.len() != n * n {
        return Err(Error::NotAbelianPGroup("table is not square".into()));
    }
    let p = prime_power_base(n)
        .ok_or_else(|| Error::NotAbelianPGroup(format!("order {n} is not a prime power")))?;
    let op = |a: usize, b: usize| table[a * n + b] as usize;
    for a in 0..n {
        for b in 0..a {
            if op(a, b) != op(b, a) {
                return Err(Error::NotAbelianPGroup(format!("{a} and {b} do not commute")));
            }
        }
    }
    let zero = (0..n)
        .find(|&e| (0..n).all(|x| op(e, x) == x))
        .ok_or_else(|| Error::NotAbelianPGroup("no identity".into()))?;
    let mul = |x: usize, k: u64| (0..k).fold(zero, |acc, _| op(acc, x));

    let mut sub = FixedBitSet::with_capacity(n);
    sub.insert(zero);
    let mut members = vec![zero];
    let mut gens: Vec<(usize, u32)> = Vec::new();
    while members.len() < n {
        // exponent of x + H in G/H
        let quotient_exp = |x: usize| {
            let (mut y, mut e) = (x, 0u32);
            while !sub.contains(y) {
                y = mul(y, p);
                e += 1;
            }
            e
        };
        let (x, e) = (0..n)
            .filter(|&x| !sub.contains(x))
            .map(|x| (x, quotient_exp(x)))
            .max_by_key(|&(x, e)| (e, std::cmp::Reverse(x)))
            .expect("nonempty complement");
        let target = p.pow(e);
        let lifted = members
            .iter()
            .map(|&h| op(x, h))
            .find(|&y| mul(y, target) == zero)
            .ok_or_else(|| Error::NotAbelianPGroup("greedy basis extraction failed".into()))?;
        let mut next = Vec::with_capacity(members.len() * target as usize);
        let mut power = zero;
        for _ in 0..target {
            for &h in &members {
                next.push(op(power, h));
            }
            power = op(power, lifted);
        }
        for &y in &next {
            sub.insert(y);
        }
        members = next;
        gens.push((lifted, e));
    }

    let shape = PShape::new(p, gens.iter().map(|g| g.1).collect())?;
    let mut elem_of_index = vec![0usize; n];
    let mut index_of_elem = vec![usize::MAX; n];
    for (idx, slot) in elem_of_index.iter_mut().enumerate() {
        let coords = shape.coords_at(idx);
        let x = coords
            .iter()
            .zip(&gens)
            .fold(zero, |acc, (&c, &(g, _))| op(acc, mul(g, c)));
        if index_of_elem[x] != usize::MAX {
            return Err(Error::NotAbelianPGroup("generators are not independent".into()));
        }
        index_of_elem[x] = idx;
        *slot = x;
    }
    Ok(AbelianIso { shape, index_of_elem, elem_of_index })
}
