use super::{is_prime, mod_pow};
use crate::error::{Error, Result};

/// Smallest primitive (p−1)-th root of unity modulo p^e.
///
/// Every such root is the Teichmüller lift `g^{p^{e-1}}` of a generator `g`
/// of (Z/p)^*, so the minimum over lifted generators is the answer.
pub fn root_of_unity(p: u64, e: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(Error::InvalidArgument("p = 2 has no useful root of unity".into()));
    }
    if e == 0 {
        return Err(Error::InvalidArgument("exponent must be at least 1".into()));
    }
    let m = p.pow(e);
    let lift = p.pow(e - 1);
    (2..p)
        .filter(|&g| (1..p - 1).all(|k| mod_pow(g, k, p) != 1))
        .map(|g| mod_pow(g, lift, m))
        .min()
        .ok_or_else(|| Error::InvalidArgument(format!("no generator mod {p}")))
}
