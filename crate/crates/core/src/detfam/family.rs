use std::fmt;
use std::str::FromStr;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::detfam::matrix::{build_matrix, det_direct, MultidiagSpec};
use crate::mpoly::{MultiPoly, PolyRing, TermOrder};
use crate::unipoly::UniPoly;

/// The named determinant families.
///
/// | family  | ring              | band `r_0, …, r_d`      |
/// |---------|-------------------|-------------------------|
/// | P       | `K[t]`            | `1, t, 1`               |
/// | Q       | `K[s,t]`          | `s, t, s`               |
/// | F       | `K[t]`            | `1, 0, t, 0, 1`         |
/// | Katzman | `K[t]`            | `1, −(1+t), t`          |
/// | Generic | `K[r0,r1,r2]`     | `r0, r1, r2`            |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    P,
    Q,
    F,
    Katzman,
    Generic,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::P, Family::Q, Family::F, Family::Katzman, Family::Generic];

    pub fn vars(self) -> &'static [&'static str] {
        match self {
            Family::P | Family::F | Family::Katzman => &["t"],
            Family::Q => &["s", "t"],
            Family::Generic => &["r0", "r1", "r2"],
        }
    }

    fn band(self) -> &'static [&'static str] {
        match self {
            Family::P => &["1", "t", "1"],
            Family::Q => &["s", "t", "s"],
            Family::F => &["1", "0", "t", "0", "1"],
            Family::Katzman => &["1", "-1 - t", "t"],
            Family::Generic => &["r0", "r1", "r2"],
        }
    }

    pub fn ring<K: Field>(self, field: &K) -> PolyRing<K> {
        PolyRing::new(field.clone(), self.vars(), TermOrder::GrevLex).expect("fixed variable names")
    }

    pub fn spec<K: Field>(self, field: &K) -> MultidiagSpec<K> {
        MultidiagSpec::parse(&self.ring(field), self.band(), 0).expect("fixed band")
    }

    pub fn is_univariate(self) -> bool {
        self.vars().len() == 1
    }

    /// Coefficients `c_0, c_1, …` of the denominator of the generating
    /// function `Σ det M_n x^n`.
    pub fn gf_denominator<K: Field>(self, field: &K) -> Vec<MultiPoly<K>> {
        let spec = self.spec(field);
        let ring = spec.ring();
        match self {
            Family::F => ["1", "-t", "0", "t", "-1"]
                .iter()
                .map(|c| ring.parse(c).expect("fixed text"))
                .collect(),
            _ => {
                let r = spec.coeffs();
                vec![ring.one(), -&r[1], &r[0] * &r[2]]
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::P => "P",
            Family::Q => "Q",
            Family::F => "F",
            Family::Katzman => "katzman",
            Family::Generic => "generic",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "p" => Ok(Family::P),
            "q" => Ok(Family::Q),
            "f" => Ok(Family::F),
            "katzman" | "k" => Ok(Family::Katzman),
            "generic" | "g" => Ok(Family::Generic),
            other => Err(Error::domain(format!("unknown family {other:?}"))),
        }
    }
}

/// Steps a three-term or five-term linear recurrence, keeping only the
/// tail needed for the next value.
struct Recurrence<K: Field> {
    family: Family,
    window: Vec<MultiPoly<K>>,
    emitted: usize,
    r0r2: MultiPoly<K>,
    r1: MultiPoly<K>,
}

impl<K: Field> Recurrence<K> {
    fn new(family: Family, field: &K) -> Self {
        let spec = family.spec(field);
        let ring = spec.ring().clone();
        let r = spec.coeffs();
        let window = match family {
            Family::F => ["1", "t", "t^2", "t^3 - t"]
                .iter()
                .map(|s| ring.parse(s).expect("fixed text"))
                .collect(),
            _ => vec![ring.one(), r[1].clone()],
        };
        Recurrence {
            family,
            emitted: 0,
            r0r2: &r[0] * &r[2],
            r1: r[1].clone(),
            window,
        }
    }

    fn next(&mut self) -> MultiPoly<K> {
        let i = self.emitted;
        self.emitted += 1;
        if i < self.window.len() {
            return self.window[i].clone();
        }
        let w = &self.window;
        let value = match self.family {
            Family::F => {
                let t = &self.r0r2.ring().gen(0);
                let m = w.len();
                &(&(t * &w[m - 1]) - &(t * &w[m - 3])) + &w[m - 4]
            }
            _ => {
                let m = w.len();
                &(&self.r1 * &w[m - 1]) - &(&self.r0r2 * &w[m - 2])
            }
        };
        self.window.remove(0);
        self.window.push(value.clone());
        value
    }
}

/// `det M_0, …, det M_n` through the family's recurrence.
pub fn det_sequence<K: Field>(family: Family, field: &K, n: usize) -> Vec<MultiPoly<K>> {
    let mut rec = Recurrence::new(family, field);
    (0..=n).map(|_| rec.next()).collect()
}

/// `det M_n` through the family's recurrence.
pub fn det_family<K: Field>(family: Family, field: &K, n: usize) -> MultiPoly<K> {
    let mut rec = Recurrence::new(family, field);
    let mut last = rec.next();
    for _ in 0..n {
        last = rec.next();
    }
    last
}

/// Determinant for an arbitrary band: the three-term recurrence when
/// `d = 2`, direct elimination otherwise.
pub fn det_custom<K: Field>(spec: &MultidiagSpec<K>, n: usize) -> Result<MultiPoly<K>> {
    if spec.d() != 2 {
        return det_direct(&build_matrix(spec, n));
    }
    let r = spec.coeffs();
    let r0r2 = &r[0] * &r[2];
    let (mut prev, mut cur) = (spec.ring().one(), r[1].clone());
    if n == 0 {
        return Ok(prev);
    }
    for _ in 1..n {
        let next = &(&r[1] * &cur) - &(&r0r2 * &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// Dense univariate recurrence for the one-variable families, fast for
/// large indices.
pub fn family_unipoly<K: Field>(family: Family, field: &K, n: usize) -> Result<UniPoly<K>> {
    Ok(family_unipolys(family, field, &[n])?.remove(0))
}

/// `det M_n` for each requested index (any order), computed in one pass.
pub fn family_unipolys<K: Field>(family: Family, field: &K, indices: &[usize]) -> Result<Vec<UniPoly<K>>> {
    if !family.is_univariate() {
        return Err(Error::domain(format!("family {family} is not univariate")));
    }
    let top = indices.iter().copied().max().unwrap_or(0);
    let t = UniPoly::x(field.clone());
    let mut window: Vec<UniPoly<K>> = match family {
        Family::F => vec![
            UniPoly::one(field.clone()),
            t.clone(),
            t.pow(2),
            &t.pow(3) - &t,
        ],
        Family::P => vec![UniPoly::one(field.clone()), t.clone()],
        _ => vec![UniPoly::one(field.clone()), UniPoly::from_i64s(field.clone(), &[-1, -1])],
    };
    let base = window.len();
    let mut found: Vec<Option<UniPoly<K>>> = vec![None; indices.len()];
    let record = |k: usize, v: &UniPoly<K>, found: &mut Vec<Option<UniPoly<K>>>| {
        for (slot, &want) in found.iter_mut().zip(indices) {
            if want == k {
                *slot = Some(v.clone());
            }
        }
    };
    for (k, v) in window.iter().enumerate().take(top + 1) {
        record(k, v, &mut found);
    }
    for k in base..=top {
        let m = window.len();
        let next = match family {
            Family::F => &(&(&t * &window[m - 1]) - &(&t * &window[m - 3])) + &window[m - 4],
            Family::P => &(&t * &window[m - 1]) - &window[m - 2],
            _ => {
                // r1 = −(1+t), r0·r2 = t
                let r1 = UniPoly::from_i64s(field.clone(), &[-1, -1]);
                &(&r1 * &window[m - 1]) - &(&t * &window[m - 2])
            }
        };
        window.remove(0);
        window.push(next);
        record(k, &window[window.len() - 1], &mut found);
    }
    Ok(found.into_iter().map(|v| v.expect("every index reached")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, RationalField};

    #[test]
    fn recurrence_values() {
        let q = RationalField;
        assert_eq!(det_family(Family::P, &q, 4).to_string(), "t^4 - 3*t^2 + 1");
        assert_eq!(det_family(Family::Katzman, &q, 2).to_string(), "t^2 + t + 1");
        assert_eq!(det_family(Family::Q, &q, 3), Family::Q.ring(&q).parse("t^3 - 2*s^2*t").unwrap());
        let f: Vec<String> = det_sequence(Family::F, &q, 5).iter().map(|p| p.to_string()).collect();
        assert_eq!(f[..4], ["1", "t", "t^2", "t^3 - t"]);
        assert_eq!(f[4], "t^4 - 2*t^2 + 1");
        assert_eq!(det_family(Family::Generic, &q, 2).to_string(), "r1^2 - r0*r2");
        assert!(det_family(Family::P, &q, 0).is_one());
    }

    #[test]
    fn sequence_matches_single_values() {
        let f = PrimeField::new(7).unwrap();
        for fam in Family::ALL {
            let seq = det_sequence(fam, &f, 12);
            for (n, v) in seq.iter().enumerate() {
                assert_eq!(v, &det_family(fam, &f, n), "{fam} {n}");
            }
        }
    }

    #[test]
    fn unipoly_path_matches() {
        let q = RationalField;
        for fam in [Family::P, Family::F, Family::Katzman] {
            let idx: Vec<usize> = (0..15).rev().collect();
            let us = family_unipolys(fam, &q, &idx).unwrap();
            for (u, &n) in us.iter().zip(&idx) {
                let m = det_family(fam, &q, n);
                assert_eq!(m.to_univariate(0).unwrap(), *u, "{fam} {n}");
            }
        }
        assert!(family_unipoly(Family::Q, &q, 2).is_err());
    }

    #[test]
    fn custom_band_uses_recurrence_or_elimination() {
        let q = RationalField;
        for fam in Family::ALL {
            let spec = fam.spec(&q);
            for n in 0..8 {
                assert_eq!(det_custom(&spec, n).unwrap(), det_family(fam, &q, n));
            }
        }
    }

    #[test]
    fn parses_names() {
        for fam in Family::ALL {
            assert_eq!(fam.to_string().parse::<Family>().unwrap(), fam);
        }
        assert!("X".parse::<Family>().is_err());
    }
}
