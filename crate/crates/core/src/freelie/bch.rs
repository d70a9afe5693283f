use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lyndon::{FreeLieElem, LyndonBasis};
use super::tensor::{TruncTensor, Word};
use crate::error::Result;

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Right-normed bracket [w_1,[w_2,[…,w_n]]] expanded in the tensor algebra.
fn right_normed(c: usize, w: Word) -> TruncTensor {
    let letters = w.letters();
    let mut acc = TruncTensor::word(c, Word::from_letters(&letters[letters.len() - 1..]));
    for &l in letters[..letters.len() - 1].iter().rev() {
        acc = TruncTensor::word(c, Word::from_letters(&[l])).commutator(&acc);
    }
    acc
}

/// Σ over splittings of `letters` into blocks x^r y^s (r + s ≥ 1) of
/// (−1)^{k−1}/k · Π 1/(r! s!), k the number of blocks.
fn dynkin_weight(letters: &[u8]) -> BigRational {
    fn go(rest: &[u8], k: usize, weight: BigRational, acc: &mut BigRational) {
        if rest.is_empty() {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            *acc += weight * BigRational::new(BigInt::from(sign), BigInt::from(k));
            return;
        }
        let xs = rest.iter().take_while(|&&l| l == 0).count();
        for r in 0..=xs {
            let ys = if r == xs { rest[r..].iter().take_while(|&&l| l == 1).count() } else { 0 };
            for s in 0..=ys {
                if r + s == 0 {
                    continue;
                }
                let w = &weight / BigRational::from_integer(factorial(r) * factorial(s));
                go(&rest[r + s..], k + 1, w, acc);
            }
        }
    }
    let mut acc = BigRational::zero();
    go(letters, 0, BigRational::one(), &mut acc);
    acc
}

/// BCH(x, y) truncated above degree `c`, via the Dynkin expansion.
pub fn bch_series(basis: &LyndonBasis) -> Result<FreeLieElem> {
    let c = basis.class_bound();
    let mut total = TruncTensor::zero(c);
    for n in 1..=c {
        for bits in 0..(1u32 << n) {
            let letters: Vec<u8> = (0..n).map(|i| ((bits >> (n - 1 - i)) & 1) as u8).collect();
            // right-normed brackets ending in xx or yy vanish
            if n >= 2 && letters[n - 1] == letters[n - 2] {
                continue;
            }
            let w = Word::from_letters(&letters);
            let q = dynkin_weight(&letters);
            if q.is_zero() {
                continue;
            }
            let term = right_normed(c, w).scale(&(&q / BigRational::from_integer(BigInt::from(n))));
            total = total.add(&term);
        }
    }
    basis.project(&total)
}
