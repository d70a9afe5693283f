//! Mixed-modulus abelian p-groups, p-local scalars and additive endomorphisms.

mod decompose;
mod endo;
mod scalar;
mod shape;
mod unity;

pub use decompose::{abelian_decompose, AbelianIso};
pub use endo::Endo;
pub use scalar::PScalar;
pub use shape::{is_prime, PShape, PVec, Shape};
pub use unity::root_of_unity;

use num_integer::Integer;

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128 % m as u128;
    let mut b = base as u128 % m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

pub(crate) fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Reduce a signed integer to `[0, m)`.
pub fn reduce(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}
