use rayon::prelude::*;

use super::{FinGroup, LieRingSC};
use crate::error::{Error, Result};
use crate::freelie::{Node, Program};
use crate::modarith::{mod_inv, reduce, Shape};

/// Bracket on raw coordinate slices.
pub(crate) struct RawLie {
    r: usize,
    moduli: Vec<u64>,
    c: Vec<u64>,
}

impl RawLie {
    pub(crate) fn new(l: &LieRingSC) -> RawLie {
        let r = l.shape().rank();
        let mut c = Vec::with_capacity(r * r * r);
        for i in 0..r {
            for j in 0..r {
                c.extend_from_slice(l.structure(i, j).coords());
            }
        }
        RawLie { r, moduli: l.shape().moduli().to_vec(), c }
    }

    pub(crate) fn bracket(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let r = self.r;
        let m0 = self.moduli[0];
        if m0 < 1 << 16 {
            // products stay below 2^48 and at most 256 of them are summed
            let mut acc = [0u64; 16];
            for i in 0..r {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..r {
                    if b[j] == 0 {
                        continue;
                    }
                    let ab = a[i] * b[j];
                    let row = &self.c[(i * r + j) * r..(i * r + j + 1) * r];
                    for k in 0..r {
                        acc[k] += ab * row[k];
                    }
                }
            }
            for k in 0..r {
                out[k] = acc[k] % self.moduli[k];
            }
            return;
        }
        let mut acc = [0u128; 16];
        for i in 0..r {
            if a[i] == 0 {
                continue;
            }
            for j in 0..r {
                if b[j] == 0 {
                    continue;
                }
                let ab = a[i] as u128 * b[j] as u128 % m0 as u128;
                let row = &self.c[(i * r + j) * r..(i * r + j + 1) * r];
                for k in 0..r {
                    acc[k] = (acc[k] + ab * row[k] as u128) % m0 as u128;
                }
            }
        }
        for k in 0..r {
            out[k] = (acc[k] % self.moduli[k] as u128) as u64;
        }
    }
}

/// Fills an `n × n` table by applying `f` to coordinate slices of each pair.
pub(crate) fn pair_table<F>(shape: &Shape, f: F) -> Vec<u32>
where
    F: Fn(&[u64], &[u64], &mut [u64], &mut Vec<u64>) + Sync,
{
    let (r, n) = (shape.rank(), shape.order());
    let moduli = shape.moduli();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let ca = shape.coords_at(a);
            let mut cb = vec![0u64; r];
            let mut out = vec![0u64; r];
            let mut scratch = Vec::new();
            let f = &f;
            (0..n).map(move |b| {
                let mut rest = b;
                for k in (0..r).rev() {
                    cb[k] = (rest % moduli[k] as usize) as u64;
                    rest /= moduli[k] as usize;
                }
                f(&ca, &cb, &mut out, &mut scratch);
                out.iter().zip(moduli).fold(0usize, |acc, (&c, &m)| acc * m as usize + c as usize) as u32
            })
        })
        .collect()
}

/// Evaluates a compiled Lie series on all pairs of the carrier.
pub(crate) fn series_table(l: &LieRingSC, prog: &Program) -> Result<Vec<u32>> {
    let shape = l.shape();
    let (r, p) = (shape.rank(), shape.p());
    if r > 16 {
        return Err(Error::InvalidArgument("rank above 16".into()));
    }
    let raw = RawLie::new(l);
    let residues: Vec<Vec<u64>> = prog
        .outputs
        .iter()
        .map(|(_, q)| shape.moduli().iter().map(|&m| q.residue(p, m)).collect())
        .collect::<Result<_>>()?;
    let nn = prog.nodes.len();
    let moduli = shape.moduli();
    // with moduli below 2^16 the unreduced sum of outputs fits in 64 bits
    let small = moduli[0] < 1 << 16 && prog.outputs.len() < 1 << 16;
    Ok(pair_table(shape, |ca, cb, out, vals| {
        vals.resize(nn * r + r, 0);
        let (vals, tmp) = vals.split_at_mut(nn * r);
        for (t, node) in prog.nodes.iter().enumerate() {
            match node {
                Node::X => vals[t * r..(t + 1) * r].copy_from_slice(ca),
                Node::Y => vals[t * r..(t + 1) * r].copy_from_slice(cb),
                Node::Pair(i, j) => {
                    raw.bracket(&vals[i * r..(i + 1) * r], &vals[j * r..(j + 1) * r], tmp);
                    vals[t * r..(t + 1) * r].copy_from_slice(tmp);
                }
            }
        }
        out.iter_mut().for_each(|x| *x = 0);
        for ((node, _), res) in prog.outputs.iter().zip(&residues) {
            for k in 0..r {
                out[k] += vals[node * r + k] * res[k];
                if !small {
                    out[k] %= moduli[k];
                }
            }
        }
        for k in 0..r {
            out[k] %= moduli[k];
        }
    }))
}

/// Evaluates a compiled group word on all pairs of `g`.
pub(crate) fn word_table(g: &FinGroup, prog: &Program) -> Result<Vec<u32>> {
    let n = g.order();
    let e = g.exponent() as u64;
    let p = g.prime().unwrap_or(1);
    let powers: Vec<u64> = prog
        .outputs
        .iter()
        .map(|(_, q)| {
            if p > 1 && q.den() % p == 0 {
                return Err(Error::NotPDivisible { den: q.den(), p });
            }
            let inv = mod_inv(q.den() % e, e).ok_or(Error::NotPDivisible { den: q.den(), p })?;
            Ok(reduce(q.num() as i128, e) * inv % e.max(1))
        })
        .collect::<Result<_>>()?;
    let nn = prog.nodes.len();
    let table = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut vals = vec![0usize; nn];
            let powers = &powers;
            (0..n).map(move |b| {
                for (t, node) in prog.nodes.iter().enumerate() {
                    vals[t] = match node {
                        Node::X => a,
                        Node::Y => b,
                        Node::Pair(i, j) => g.comm(vals[*i], vals[*j]),
                    };
                }
                let mut acc = g.identity();
                for ((node, _), &m) in prog.outputs.iter().zip(powers) {
                    acc = g.mul(acc, g.pow(vals[*node], m as i64));
                }
                acc as u32
            })
        })
        .collect();
    Ok(table)
}
