use crate::arith::field::Field;
use crate::error::{Error, Result};

/// Moduli must fit in 31 bits so that products of residues fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Deterministic primality test by trial division; adequate for the
/// machine-word moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The prime field 𝔽_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::domain(format!("modulus {p} exceeds 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn elem(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    /// Residue of an element; the identity, provided for readability.
    #[inline]
    pub fn residue(&self, a: &u64) -> u64 {
        *a
    }

    /// Iterates 0, 1, …, p − 1.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1 % self.p
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        field_inverse(*a, self.p)
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.elem(n)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn cardinality(&self) -> Option<u64> {
        Some(self.p)
    }

    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }

    fn format_elem(&self, a: &u64) -> String {
        // Symmetric representative: residues above p/2 print as negatives.
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }

    fn parse_elem(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<u64> {
            let t = t.trim();
            let (neg, digits) = match t.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, t.strip_prefix('+').unwrap_or(t)),
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse {
                    line: 1,
                    col: 1,
                    msg: format!("invalid integer {t:?}"),
                });
            }
            let mut r = 0u64;
            for b in digits.bytes() {
                r = (r * 10 + (b - b'0') as u64) % self.p;
            }
            Ok(if neg { self.neg(&r) } else { r })
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                self.div(&parse_int(n)?, &d)
            }
            None => parse_int(s),
        }
    }

    fn is_negative(&self, a: &u64) -> bool {
        *a > self.p / 2
    }

    fn name(&self) -> String {
        format!("GF({})", self.p)
    }
}

/// Inverse of `a` modulo the prime `p` by the extended Euclidean algorithm.
pub fn field_inverse(a: u64, p: u64) -> Result<u64> {
    let a = a % p;
    if a == 0 {
        return Err(Error::DivisionByZero);
    }
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    Ok(s0.rem_euclid(p as i64) as u64)
}

/// `C(n, k) mod p` through Lucas' theorem: the product of digit binomials in
/// base `p`.
pub fn binomial_mod(n: u64, k: u64, p: u64) -> Result<u64> {
    if k > n {
        return Err(Error::domain(format!("binomial C({n},{k}) with k > n")));
    }
    let field = PrimeField::new(p)?;
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return Ok(0);
        }
        acc = field.mul(&acc, &small_binomial(nd, kd, &field));
        n /= p;
        k /= p;
    }
    Ok(acc)
}

// C(n, k) mod p for n < p, where every denominator factor is invertible.
fn small_binomial(n: u64, k: u64, field: &PrimeField) -> u64 {
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = field.mul(&num, &((n - i) % field.p));
        den = field.mul(&den, &((i + 1) % field.p));
    }
    field.mul(&num, &field.inv(&den).expect("nonzero below p"))
}

/// Euler's criterion: `a` is a square in 𝔽_p iff `a = 0` or
/// `a^((p-1)/2) = 1`.
pub fn is_square(field: &PrimeField, a: u64) -> bool {
    let a = a % field.p;
    if a == 0 || field.p == 2 {
        return true;
    }
    field.pow(&a, (field.p - 1) / 2) == 1
}
