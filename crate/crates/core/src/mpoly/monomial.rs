use std::fmt;

use crate::error::{Error, Result};

/// Rings have at most this many variables; exponent vectors are stored
/// inline.
pub const MAX_VARS: usize = 16;

/// Exponent vector with cached total degree. Slots past the ring's variable
/// count are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_exps(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::domain(format!("more than {MAX_VARS} variables")));
        }
        let mut m = Self::default();
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e)
                .map_err(|_| Error::domain(format!("exponent {e} exceeds {}", u16::MAX)))?;
            m.deg += e;
        }
        Ok(m)
    }

    /// `x_i^e`.
    pub fn var(i: usize, e: u32) -> Self {
        let mut exps = [0u32; MAX_VARS];
        exps[i] = e;
        Self::from_exps(&exps).expect("exponent in range")
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        weights
            .iter()
            .zip(&self.exps)
            .map(|(&w, &e)| w as u64 * e as u64)
            .sum()
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].checked_add(other.exps[i])?;
        }
        out.deg = self.deg + other.deg;
        Some(out)
    }

    /// Panics on exponent overflow past `u16::MAX`.
    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn pow(&self, k: u32) -> Option<Self> {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = u16::try_from(self.exps[i] as u64 * k as u64).ok()?;
        }
        out.deg = self.deg.checked_mul(k)?;
        Some(out)
    }

    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut out = *other;
        for i in 0..MAX_VARS {
            out.exps[i] -= self.exps[i];
        }
        out.deg = other.deg - self.deg;
        Some(out)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].min(other.exps[i]);
            out.deg += out.exps[i] as u32;
        }
        out
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit summary that is monotone under divisibility: if `a | b` then
    /// `a.mask() & !b.mask() == 0`. Bits record exponent thresholds 1, 2, 4
    /// and 8 for each variable.
    pub fn mask(&self) -> u64 {
        let mut m = 0u64;
        for (i, &e) in self.exps.iter().enumerate() {
            if e >= 1 {
                m |= 1 << i;
            }
            if e >= 2 {
                m |= 1 << (16 + i);
            }
            if e >= 4 {
                m |= 1 << (32 + i);
            }
            if e >= 8 {
                m |= 1 << (48 + i);
            }
        }
        m
    }

    /// Variables occurring with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_VARS).filter(|&i| self.exps[i] > 0)
    }

    /// Moves exponents through a variable map: slot `i` goes to `map[i]`.
    pub(crate) fn remap(&self, map: &[usize]) -> Self {
        let mut out = Self::default();
        for (i, &j) in map.iter().enumerate() {
            out.exps[j] += self.exps[i];
        }
        out.deg = self.deg;
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e).unwrap()
    }

    #[test]
    fn basics() {
        let a = m(&[2, 0, 1]);
        let b = m(&[1, 3]);
        assert_eq!(a.mul(&b), m(&[3, 3, 1]));
        assert_eq!(a.lcm(&b), m(&[2, 3, 1]));
        assert_eq!(a.gcd(&b), m(&[1]));
        assert!(m(&[1]).divides(&a));
        assert_eq!(m(&[1]).div(&a), Some(m(&[1, 0, 1])));
        assert_eq!(b.div(&a), None);
        assert!(m(&[1]).is_coprime(&m(&[0, 4])));
        assert!(Monomial::from_exps(&[70_000]).is_err());
        assert!(m(&[40_000]).checked_mul(&m(&[40_000])).is_none());
    }

    proptest! {
        #[test]
        fn mask_is_monotone(a in proptest::collection::vec(0u32..12, 6), b in proptest::collection::vec(0u32..12, 6)) {
            let (a, b) = (m(&a), m(&b));
            let l = a.lcm(&b);
            prop_assert!(a.divides(&l) && b.divides(&l));
            prop_assert_eq!(a.mask() & !l.mask(), 0);
            if a.mask() & !b.mask() != 0 {
                prop_assert!(!a.divides(&b));
            }
        }
    }
}
