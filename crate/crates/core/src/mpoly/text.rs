//! Text form of polynomials and ideals.
//!
//! An ideal is written as header lines followed by one generator per line:
//!
//! ```text
//! vars: s, t, x, y
//! field: GF(5)
//! order: grevlex
//! x^3
//! y^3
//! s*x^2 + t*x*y + s*y^2
//! ```
//!
//! `field:` and `order:` are optional (the order defaults to `grevlex`).
//! Blank lines and lines starting with `#` are ignored.

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::mpoly::ideal::Ideal;
use crate::mpoly::monomial::Monomial;
use crate::mpoly::order::TermOrder;
use crate::mpoly::poly::MultiPoly;
use crate::mpoly::ring::PolyRing;
use crate::text;

pub(crate) fn parse_poly<F: Field>(ring: &PolyRing<F>, input: &str, line: usize) -> Result<MultiPoly<F>> {
    let n = ring.nvars();
    let mut terms = Vec::new();
    for term in text::parse_terms(input, line)? {
        let c = text::term_coefficient(ring.field(), &term, line)?;
        let mut exps = vec![0u32; n];
        for (name, e, col) in &term.vars {
            let i = ring.var_index(name).ok_or_else(|| Error::Parse {
                line,
                col: *col,
                msg: format!("unknown variable {name:?}"),
            })?;
            exps[i] = exps[i]
                .checked_add(*e)
                .filter(|&v| v <= u16::MAX as u32)
                .ok_or_else(|| Error::Parse {
                    line,
                    col: *col,
                    msg: format!("exponent of {name} exceeds {}", u16::MAX),
                })?;
        }
        let m = Monomial::from_exps(&exps).map_err(|e| Error::Parse {
            line,
            col: 1,
            msg: e.to_string(),
        })?;
        terms.push((c, m));
    }
    Ok(MultiPoly::from_terms(ring, terms))
}

fn header<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix(':'))
        .map(str::trim)
}

/// Parses the ideal text format over `field`. A `field:` header, when
/// present, must name `field`.
pub fn parse_ideal<F: Field>(field: &F, input: &str) -> Result<Ideal<F>> {
    let mut vars: Option<Vec<String>> = None;
    let mut order = TermOrder::GrevLex;
    let mut ring: Option<PolyRing<F>> = None;
    let mut gens = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |msg: String| Error::Parse {
            line: lineno,
            col: 1,
            msg,
        };
        if ring.is_none() {
            if let Some(v) = header(line, "vars") {
                if vars.is_some() {
                    return Err(perr("repeated vars header".into()));
                }
                let names: Vec<String> = if v.is_empty() {
                    Vec::new()
                } else {
                    v.split(',').map(|s| s.trim().to_string()).collect()
                };
                vars = Some(names);
                continue;
            }
            if let Some(v) = header(line, "field") {
                if v != field.name() {
                    return Err(perr(format!("field {v} does not match {}", field.name())));
                }
                continue;
            }
            if let Some(v) = header(line, "order") {
                order = v.parse().map_err(|e: Error| perr(e.to_string()))?;
                continue;
            }
            let names = vars
                .as_ref()
                .ok_or_else(|| perr("missing vars header".into()))?;
            ring = Some(
                PolyRing::new(field.clone(), names, order.clone())
                    .map_err(|e| perr(e.to_string()))?,
            );
        }
        let r = ring.as_ref().expect("ring built above");
        gens.push(parse_poly(r, line, lineno)?);
    }
    let ring = match ring {
        Some(r) => r,
        None => {
            let names = vars.ok_or_else(|| Error::Parse {
                line: 1,
                col: 1,
                msg: "missing vars header".into(),
            })?;
            PolyRing::new(field.clone(), &names, order).map_err(|e| Error::Parse {
                line: 1,
                col: 1,
                msg: e.to_string(),
            })?
        }
    };
    Ideal::new(&ring, gens)
}

/// Canonical text form; `parse_ideal` reads it back to the same generators.
pub fn format_ideal<F: Field>(ideal: &Ideal<F>) -> String {
    let ring = ideal.ring();
    let mut out = format!(
        "vars: {}\nfield: {}\norder: {}\n",
        ring.vars().join(", "),
        ring.field().name(),
        ring.order()
    );
    for g in ideal.gens() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}
