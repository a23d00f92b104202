use crate::arith::Field;
use crate::detfam::matrix::{BandMatrix, MultidiagSpec};
use crate::error::{Error, Result};
use crate::mpoly::{Monomial, MultiPoly, PolyRing, TermOrder};

/// Presentation matrix of the graded piece of degree `n − 1 + a + d/2` of
/// `A₀[x, y] / ((xy)^a (r_0 x^d + … + r_d y^d), x^n, y^n)`, found by brute
/// force.
///
/// Columns follow the generators `x^(a+d/2+j) y^(n−1−j)` in ascending
/// x-exponent; row `i` holds the coefficients of the relation multiplied by
/// `x^i y^(n−1−a−d/2−i)` after discarding everything in `(x^n, y^n)`.
pub fn presentation_matrix<F: Field>(spec: &MultidiagSpec<F>, n: usize) -> Result<BandMatrix<F>> {
    let d = spec.d();
    let a = spec.a() as usize;
    if n <= a + d {
        return Err(Error::domain(format!("need n > a + d = {}, got {n}", a + d)));
    }
    let base = spec.ring();
    let k = base.nvars();
    let xname = base.fresh_name("x");
    let mut names: Vec<String> = base.vars().to_vec();
    names.push(xname.clone());
    let yname = PolyRing::new(base.field().clone(), &names, TermOrder::GrevLex)?.fresh_name("y");
    names.push(yname);
    let big = PolyRing::new(base.field().clone(), &names, TermOrder::GrevLex)?;
    let (ix, iy) = (k, k + 1);
    let xy = |ex: usize, ey: usize| -> Result<Monomial> {
        let mut e = vec![0u32; k + 2];
        e[ix] = ex as u32;
        e[iy] = ey as u32;
        Monomial::from_exps(&e)
    };

    let mut relation = big.zero();
    for (j, r) in spec.coeffs().iter().enumerate() {
        let lifted = r.map_by_name(&big)?;
        relation = &relation + &lifted.mul_term(&big.field().one(), &xy(a + d - j, a + j)?);
    }

    let size = n - a - d / 2;
    let mut rows = Vec::with_capacity(size);
    for i in 0..size {
        let shifted = relation.mul_term(&big.field().one(), &xy(i, n - 1 - a - d / 2 - i)?);
        let mut cells: Vec<Vec<(F::Elem, Monomial)>> = vec![Vec::new(); size];
        for (c, m) in shifted.terms() {
            let (ex, ey) = (m.exp(ix) as usize, m.exp(iy) as usize);
            if ex >= n || ey >= n {
                continue;
            }
            let col = ex
                .checked_sub(a + d / 2)
                .filter(|&j| j < size && ex + ey == n - 1 + a + d / 2)
                .ok_or_else(|| {
                    Error::Internal(format!("relation term x^{ex}*y^{ey} outside the graded piece"))
                })?;
            let coeff_mono = Monomial::from_exps(&m.exps(k))?;
            cells[col].push((c.clone(), coeff_mono));
        }
        rows.push(
            cells
                .into_iter()
                .map(|t| MultiPoly::from_terms(base, t))
                .collect(),
        );
    }
    BandMatrix::from_rows(base, rows)
}
