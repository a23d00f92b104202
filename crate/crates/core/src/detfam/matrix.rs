use std::fmt;

use crate::arith::{Field, PrimeField};
use crate::error::{Error, Result};
use crate::mpoly::{MultiPoly, PolyRing};

/// Size limit of [`det_direct`] for entries in two or more variables.
pub const DIRECT_CAP_MULTIVARIATE: usize = 15;
/// Size limit of [`det_direct`] for entries in at most one variable.
pub const DIRECT_CAP_UNIVARIATE: usize = 60;

/// Band coefficients `r_0, …, r_d` over a coefficient ring, plus the
/// exponent `a` of the `(xy)^a` factor used by presentation matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct MultidiagSpec<F: Field> {
    ring: PolyRing<F>,
    coeffs: Vec<MultiPoly<F>>,
    a: u32,
}

impl<F: Field> MultidiagSpec<F> {
    /// `coeffs` must have odd length at least 3, so that `d` is positive and
    /// even.
    pub fn new(ring: &PolyRing<F>, coeffs: Vec<MultiPoly<F>>, a: u32) -> Result<Self> {
        if coeffs.len() < 3 || coeffs.len() % 2 == 0 {
            return Err(Error::domain(format!(
                "{} band coefficients; need d + 1 with d positive and even",
                coeffs.len()
            )));
        }
        let coeffs = coeffs
            .into_iter()
            .map(|c| if c.ring() == ring { Ok(c) } else { c.map_by_name(ring) })
            .collect::<Result<_>>()?;
        Ok(MultidiagSpec {
            ring: ring.clone(),
            coeffs,
            a,
        })
    }

    /// Coefficients given as text in `ring`.
    pub fn parse(ring: &PolyRing<F>, coeffs: &[&str], a: u32) -> Result<Self> {
        let coeffs = coeffs.iter().map(|c| ring.parse(c)).collect::<Result<_>>()?;
        Self::new(ring, coeffs, a)
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[MultiPoly<F>] {
        &self.coeffs
    }

    pub fn d(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn with_a(&self, a: u32) -> Self {
        MultidiagSpec { a, ..self.clone() }
    }
}

/// Square matrix over a polynomial ring.
#[derive(Clone, Debug, PartialEq)]
pub struct BandMatrix<F: Field> {
    ring: PolyRing<F>,
    rows: Vec<Vec<MultiPoly<F>>>,
}

impl<F: Field> BandMatrix<F> {
    /// All rows must have length `rows.len()`.
    pub fn from_rows(ring: &PolyRing<F>, rows: Vec<Vec<MultiPoly<F>>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::domain("matrix is not square"));
        }
        Ok(BandMatrix {
            ring: ring.clone(),
            rows,
        })
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly<F> {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<MultiPoly<F>>] {
        &self.rows
    }

    /// Largest `|i − j|` over nonzero entries.
    pub fn bandwidth(&self) -> usize {
        let mut w = 0;
        for (i, row) in self.rows.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    w = w.max(i.abs_diff(j));
                }
            }
        }
        w
    }

    /// Entrywise evaluation at a point of the coefficient ring.
    pub fn eval(&self, point: &[F::Elem]) -> Result<Vec<Vec<F::Elem>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|e| e.eval(point)).collect())
            .collect()
    }
}

impl<F: Field> fmt::Display for BandMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// The `n × n` matrix with `entry(i, j) = r_{d/2 + i − j}` inside the band
/// and zero outside.
pub fn build_matrix<F: Field>(spec: &MultidiagSpec<F>, n: usize) -> BandMatrix<F> {
    let half = spec.d() / 2;
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let k = half as isize + i as isize - j as isize;
                    if (0..=spec.d() as isize).contains(&k) {
                        spec.coeffs[k as usize].clone()
                    } else {
                        spec.ring.zero()
                    }
                })
                .collect()
        })
        .collect();
    BandMatrix {
        ring: spec.ring.clone(),
        rows,
    }
}

/// Determinant by fraction-free (Bareiss) elimination, within the default
/// size caps.
pub fn det_direct<F: Field>(m: &BandMatrix<F>) -> Result<MultiPoly<F>> {
    let cap = if m.ring.nvars() <= 1 {
        DIRECT_CAP_UNIVARIATE
    } else {
        DIRECT_CAP_MULTIVARIATE
    };
    det_direct_capped(m, cap)
}

pub fn det_direct_capped<F: Field>(m: &BandMatrix<F>, cap: usize) -> Result<MultiPoly<F>> {
    let n = m.size();
    if n > cap {
        return Err(Error::resource(format!(
            "direct determinant of size {n} exceeds the cap {cap}"
        )));
    }
    let ring = &m.ring;
    if n == 0 {
        return Ok(ring.one());
    }
    let mut a = m.rows.clone();
    // A row with zeros in every column eliminated so far stays its original
    // entries times the current divisor; it is scaled only when first used.
    let mut lazy = vec![true; n];
    lazy[0] = false;
    let mut negate = false;
    let mut prev = ring.one();
    let materialize = |row: &mut Vec<MultiPoly<F>>, prev: &MultiPoly<F>| {
        for x in row.iter_mut().filter(|x| !x.is_zero()) {
            *x = &*x * prev;
        }
    };
    for k in 0..n - 1 {
        if lazy[k] {
            materialize(&mut a[k], &prev);
            lazy[k] = false;
        }
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(ring.zero());
            };
            if lazy[r] {
                materialize(&mut a[r], &prev);
                lazy[r] = false;
            }
            a.swap(k, r);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for (offset, row) in rest.iter_mut().enumerate() {
            let i = k + 1 + offset;
            if lazy[i] {
                if row[k].is_zero() {
                    continue;
                }
                materialize(row, &prev);
                lazy[i] = false;
            }
            for j in k + 1..n {
                let mut cross = if row[j].is_zero() {
                    ring.zero()
                } else {
                    &row[j] * &pivot_row[k]
                };
                if !row[k].is_zero() && !pivot_row[j].is_zero() {
                    cross = &cross - &(&row[k] * &pivot_row[j]);
                }
                row[j] = if cross.is_zero() { cross } else { cross.div_exact(&prev)? };
            }
        }
        prev = a[k][k].clone();
    }
    if lazy[n - 1] {
        materialize(&mut a[n - 1], &prev);
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Rank of a matrix over 𝔽_p by Gaussian elimination.
pub fn rank_mod_p(field: &PrimeField, rows: &[Vec<u64>]) -> usize {
    let mut a: Vec<Vec<u64>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = field.inv(&a[rank][col]).expect("nonzero pivot");
        for r in rank + 1..a.len() {
            if a[r][col] != 0 {
                let factor = field.mul(&a[r][col], &inv);
                for c in col..ncols {
                    let sub = field.mul(&factor, &a[rank][c]);
                    a[r][c] = field.sub(&a[r][c], &sub);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RationalField;
    use crate::mpoly::TermOrder;

    fn ring(vars: &[&str]) -> PolyRing<RationalField> {
        PolyRing::new(RationalField, vars, TermOrder::GrevLex).unwrap()
    }

    #[test]
    fn builds_band_matrices() {
        let r = ring(&["s", "t"]);
        let spec = MultidiagSpec::parse(&r, &["s", "t", "s"], 0).unwrap();
        assert_eq!(build_matrix(&spec, 2).to_string(), "[[t, s], [s, t]]");
        assert_eq!(build_matrix(&spec, 1).to_string(), "[[t]]");
        let t = ring(&["t"]);
        let four = MultidiagSpec::parse(&t, &["1", "0", "t", "0", "1"], 0).unwrap();
        assert_eq!(build_matrix(&four, 3).to_string(), "[[t, 0, 1], [0, t, 0], [1, 0, t]]");
        assert_eq!(build_matrix(&four, 6).bandwidth(), 2);
        let skew = MultidiagSpec::parse(&t, &["1", "-t - 1", "t"], 0).unwrap();
        let m = build_matrix(&skew, 2);
        assert_eq!(m.entry(0, 1).to_string(), "1");
        assert_eq!(m.entry(1, 0).to_string(), "t");
        assert!(MultidiagSpec::parse(&t, &["1", "t"], 0).is_err());
    }

    #[test]
    fn direct_determinants() {
        let r = ring(&["s", "t"]);
        let id = BandMatrix::from_rows(
            &r,
            (0..3)
                .map(|i| (0..3).map(|j| r.from_i64((i == j) as i64)).collect())
                .collect(),
        )
        .unwrap();
        assert!(det_direct(&id).unwrap().is_one());
        let spec = MultidiagSpec::parse(&r, &["s", "t", "s"], 0).unwrap();
        assert_eq!(det_direct(&build_matrix(&spec, 2)).unwrap(), r.parse("t^2 - s^2").unwrap());
        let t = ring(&["t"]);
        let four = MultidiagSpec::parse(&t, &["1", "0", "t", "0", "1"], 0).unwrap();
        assert_eq!(det_direct(&build_matrix(&four, 3)).unwrap(), t.parse("t^3 - t").unwrap());
        assert!(det_direct(&build_matrix(&spec, 16)).unwrap_err().is_resource());
        assert!(det_direct(&build_matrix(&spec, 0)).unwrap().is_one());
    }

    #[test]
    fn pivoting_tracks_sign() {
        let r = ring(&["t"]);
        let m = BandMatrix::from_rows(
            &r,
            vec![
                vec![r.zero(), r.one()],
                vec![r.gen(0), r.zero()],
            ],
        )
        .unwrap();
        assert_eq!(det_direct(&m).unwrap(), r.parse("-t").unwrap());
    }

    #[test]
    fn ranks() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(rank_mod_p(&f, &[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_mod_p(&f, &[vec![0, 1], vec![1, 0]]), 2);
        assert_eq!(rank_mod_p(&f, &[vec![0, 0], vec![0, 0]]), 0);
    }
}
