use std::collections::BTreeSet;

use num_integer::Integer as _;
use num_traits::One;
use rayon::prelude::*;

use crate::arith::{Field, Integer, PrimeField, Rational, RationalField};
use crate::error::{Error, Result};
use crate::unipoly::{factor, squarefree_decomposition, Factorization, UniPoly};

/// A complete factorization procedure for one coefficient field.
pub trait Factorizer<F: Field>: Sync {
    fn factor(&self, f: &UniPoly<F>) -> Result<Factorization<F>>;
}

/// Cantor–Zassenhaus over 𝔽_p.
#[derive(Debug, Clone, Copy)]
pub struct FiniteFieldFactorizer {
    pub seed: u64,
}

impl Factorizer<PrimeField> for FiniteFieldFactorizer {
    fn factor(&self, f: &UniPoly<PrimeField>) -> Result<Factorization<PrimeField>> {
        factor(f, self.seed)
    }
}

/// Factorization over ℚ for polynomials whose squarefree parts become
/// irreducible of degree at most 3 once their rational roots are removed.
/// Anything else is reported as unsupported rather than guessed.
#[derive(Debug, Clone, Copy, Default)]
pub struct SmallRationalFactorizer;

/// Largest absolute value whose divisors are enumerated in the rational-root
/// test.
pub const RATIONAL_ROOT_BOUND: u64 = 1_000_000_000_000;

impl Factorizer<RationalField> for SmallRationalFactorizer {
    fn factor(&self, f: &UniPoly<RationalField>) -> Result<Factorization<RationalField>> {
        let q = RationalField;
        let lc = f
            .leading_coeff()
            .ok_or_else(|| Error::domain("factorization of zero"))?
            .clone();
        let mut raw = Vec::new();
        for (part, e) in squarefree_decomposition(f)? {
            let mut rest = part;
            for r in rational_root_candidates(&rest)? {
                if q.is_zero(&rest.eval(&r)) {
                    let lin = UniPoly::new(q, vec![q.neg(&r), q.one()]).with_var(f.var());
                    rest = rest.div_exact(&lin)?;
                    raw.push((lin, e));
                }
            }
            match rest.degree() {
                Some(0) => {}
                Some(1..=3) => raw.push((rest, e)),
                _ => {
                    return Err(Error::Unsupported(format!(
                        "factor {rest} over QQ has no rational root and degree above 3"
                    )))
                }
            }
        }
        Ok(Factorization::new(&q, lc, raw))
    }
}

fn divisors(n: &Integer) -> Result<Vec<u64>> {
    let n = n
        .abs()
        .to_i64()
        .map(|v| v as u64)
        .filter(|&v| v <= RATIONAL_ROOT_BOUND)
        .ok_or_else(|| Error::Unsupported(format!("rational-root test on coefficient {n}")))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Ok(out)
}

// Candidates ±u/v with u | a₀ and v | aₙ for the integer form of f, plus 0.
fn rational_root_candidates(f: &UniPoly<RationalField>) -> Result<Vec<Rational>> {
    let lcm = f
        .coeffs()
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom().as_bigint()));
    let ints: Vec<Integer> = f
        .coeffs()
        .iter()
        .map(|c| Integer::from(c.numer().as_bigint() * (&lcm / c.denom().as_bigint())))
        .collect();
    let mut out = BTreeSet::new();
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        out.insert(Rational::from(0));
    }
    let (a0, an) = (&ints[low], &ints[ints.len() - 1]);
    if ints.len() - low > 1 {
        let (us, vs) = (divisors(a0)?, divisors(an)?);
        for &u in &us {
            for &v in &vs {
                let r = Rational::new(Integer::from(u as i64), Integer::from(v as i64))?;
                out.insert(RationalField.neg(&r));
                out.insert(r);
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRow<F: Field> {
    pub index: usize,
    pub factorization: Factorization<F>,
    /// Irreducibles not seen at any earlier index.
    pub new: usize,
    pub cumulative: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthTable<F: Field> {
    pub rows: Vec<GrowthRow<F>>,
    /// Every distinct irreducible, in canonical order.
    pub distinct: Vec<UniPoly<F>>,
}

impl<F: Field> GrowthTable<F> {
    pub fn counts(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.cumulative).collect()
    }

    pub fn strictly_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].cumulative < w[1].cumulative)
    }
}

/// Factors `family(n)` for each index (in parallel) and tracks how many
/// distinct monic irreducibles have appeared so far, in index order.
pub fn cumulative_factor_set<F, Z>(
    family: impl Fn(usize) -> Result<UniPoly<F>> + Sync,
    indices: &[usize],
    factorizer: &Z,
) -> Result<GrowthTable<F>>
where
    F: Field,
    Z: Factorizer<F>,
{
    let facs: Vec<Factorization<F>> = indices
        .par_iter()
        .map(|&n| {
            let f = family(n)?;
            if f.is_zero() {
                return Err(Error::domain(format!("family member {n} is zero")));
            }
            factorizer.factor(&f)
        })
        .collect::<Result<_>>()?;
    let mut seen: BTreeSet<Vec<F::Elem>> = BTreeSet::new();
    let mut distinct = Vec::new();
    let mut rows = Vec::with_capacity(indices.len());
    for (&index, factorization) in indices.iter().zip(facs) {
        let mut new = 0;
        for (g, _) in &factorization.factors {
            if seen.insert(g.coeffs().to_vec()) {
                new += 1;
                distinct.push(g.clone());
            }
        }
        rows.push(GrowthRow {
            index,
            factorization,
            new,
            cumulative: seen.len(),
        });
    }
    distinct.sort_by(|a, b| a.canonical_cmp(b));
    Ok(GrowthTable { rows, distinct })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> UniPoly<RationalField> {
        UniPoly::from_i64s(RationalField, c)
    }

    #[test]
    fn rational_factorizer() {
        let z = SmallRationalFactorizer;
        let f = z.factor(&qp(&[0, -2, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(qp(&[0, 1]), 1), (qp(&[-2, 0, 1]), 1)]);
        let f = z.factor(&qp(&[-3, 0, 2])).unwrap();
        assert_eq!(f.unit, Rational::from(2));
        let f = z.factor(&qp(&[1, 2, 1]).pow(3)).unwrap();
        assert_eq!(f.factors, vec![(qp(&[1, 1]), 6)]);
        // (2t − 1)(t² + 1)
        let f = z.factor(&qp(&[-1, 2, -1, 2])).unwrap();
        assert_eq!(f.factors[0].0.coeffs()[0], Rational::new((-1).into(), 2.into()).unwrap());
        assert!(matches!(z.factor(&qp(&[2, 0, 0, 0, 1])), Err(Error::Unsupported(_))));
    }

    #[test]
    fn constant_family() {
        let t = cumulative_factor_set(|_| Ok(qp(&[0, 1])), &[1, 2, 3, 4], &SmallRationalFactorizer)
            .unwrap();
        assert_eq!(t.counts(), vec![1, 1, 1, 1]);
        assert!(!t.strictly_increasing());
    }

    #[test]
    fn first_chebyshev_like_members_over_q() {
        let members = [qp(&[0, 1]), qp(&[-1, 0, 1]), qp(&[0, -2, 0, 1])];
        let t = cumulative_factor_set(|n| Ok(members[n - 1].clone()), &[1, 2, 3], &SmallRationalFactorizer)
            .unwrap();
        // t; t − 1, t + 1; t (again), t² − 2
        assert_eq!(t.counts(), vec![1, 3, 4]);
        assert_eq!(t.rows[2].new, 1);
    }
}
