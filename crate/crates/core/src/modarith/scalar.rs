use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{mod_inv, mod_mul, reduce};
use crate::error::{Error, Result};

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PScalar {
    num: i64,
    den: u64,
}

impl PScalar {
    pub const ZERO: PScalar = PScalar { num: 0, den: 1 };
    pub const ONE: PScalar = PScalar { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<PScalar> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Self::from_i128(num as i128, den as i128)
    }

    pub fn int(n: i64) -> PScalar {
        PScalar { num: n, den: 1 }
    }

    fn from_i128(num: i128, den: i128) -> Result<PScalar> {
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let num = i64::try_from(n).map_err(|_| Error::InvalidArgument("scalar overflow".into()))?;
        let den = u64::try_from(d).map_err(|_| Error::InvalidArgument("scalar overflow".into()))?;
        Ok(PScalar { num, den })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// The residue `num · den⁻¹` modulo `m`, a power of `p`.
    pub fn residue(&self, p: u64, m: u64) -> Result<u64> {
        if self.den % p == 0 {
            return Err(Error::NotPDivisible { den: self.den, p });
        }
        let inv = mod_inv(self.den % m, m).ok_or(Error::NotPDivisible { den: self.den, p })?;
        Ok(mod_mul(reduce(self.num as i128, m), inv, m))
    }

    pub fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    pub fn from_big(q: &BigRational) -> Result<PScalar> {
        let num = q.numer().to_i64();
        let den = q.denom().abs().to_u64();
        match (num, den) {
            (Some(n), Some(d)) if !q.denom().is_zero() => {
                let n = if q.denom().is_negative() { -n } else { n };
                Self::from_i128(n as i128, d as i128)
            }
            _ => Err(Error::InvalidArgument(format!("{q} does not fit a 64-bit scalar"))),
        }
    }
}

impl Add for PScalar {
    type Output = PScalar;
    fn add(self, rhs: PScalar) -> PScalar {
        let num = self.num as i128 * rhs.den as i128 + rhs.num as i128 * self.den as i128;
        PScalar::from_i128(num, self.den as i128 * rhs.den as i128).expect("scalar overflow")
    }
}

impl Mul for PScalar {
    type Output = PScalar;
    fn mul(self, rhs: PScalar) -> PScalar {
        PScalar::from_i128(self.num as i128 * rhs.num as i128, self.den as i128 * rhs.den as i128)
            .expect("scalar overflow")
    }
}

impl Neg for PScalar {
    type Output = PScalar;
    fn neg(self) -> PScalar {
        PScalar { num: -self.num, den: self.den }
    }
}

impl fmt::Display for PScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for PScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<PScalar> {
        let bad = || Error::InvalidArgument(format!("bad rational '{s}'"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                PScalar::new(n, d)
            }
            None => Ok(PScalar::int(s.trim().parse().map_err(|_| bad())?)),
        }
    }
}
