use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The prime field `F_q`, `q < 256`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Fq {
    q: u8,
}

pub fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

impl Fq {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q) || q > 251 {
            return Err(Error::NotPrime(q));
        }
        Ok(Fq { q: q as u8 })
    }

    #[inline]
    pub fn q(self) -> u32 {
        self.q as u32
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.q as u16) as u8
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.q as u16 - b as u16) % self.q as u16) as u8
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.q as u16) as u8
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0);
        // a^(q-2) by Fermat
        let mut result = 1u8;
        let mut base = a;
        let mut e = self.q as u32 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Reduces an arbitrary integer into `[0, q)`.
    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.q as i64) as u8
    }

    /// `q^e`, or `None` on overflow.
    pub fn checked_pow(self, e: usize) -> Option<u64> {
        (self.q as u64).checked_pow(u32::try_from(e).ok()?)
    }
}

impl TryFrom<u32> for Fq {
    type Error = Error;

    fn try_from(q: u32) -> Result<Self> {
        Fq::new(q)
    }
}

impl From<Fq> for u32 {
    fn from(f: Fq) -> u32 {
        f.q()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(Fq::new(2).is_ok());
        assert!(Fq::new(5).is_ok());
        assert!(matches!(Fq::new(4), Err(Error::NotPrime(4))));
        assert!(Fq::new(1).is_err());
    }

    #[test]
    fn inverses() {
        for q in [2, 3, 5, 7, 11] {
            let f = Fq::new(q).unwrap();
            for a in 1..q as u8 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }
}
