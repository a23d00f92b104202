use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mpoly::monomial::{Monomial, MAX_VARS};

/// Monomial orders. Variables are ranked by position: `x_0 > x_1 > …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum TermOrder {
    Lex,
    #[default]
    GrevLex,
    /// Weighted degree, ties broken by graded reverse lexicographic order.
    /// Weights may be zero.
    Weighted(Vec<u32>),
    /// Graded reverse lexicographic on the first `k` variables, ties broken
    /// by graded reverse lexicographic on the rest. Eliminates the first `k`.
    Block(usize),
}

#[inline]
fn grevlex_range(a: &[u16; MAX_VARS], b: &[u16; MAX_VARS], lo: usize, hi: usize) -> Ordering {
    let da: u32 = a[lo..hi].iter().map(|&e| e as u32).sum();
    let db: u32 = b[lo..hi].iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for i in (lo..hi).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl TermOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial, nvars: usize) -> Ordering {
        let (ea, eb) = (a.raw(), b.raw());
        match self {
            TermOrder::Lex => ea[..nvars].cmp(&eb[..nvars]),
            TermOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for i in (0..nvars).rev() {
                    if ea[i] != eb[i] {
                        return eb[i].cmp(&ea[i]);
                    }
                }
                Ordering::Equal
            }),
            TermOrder::Weighted(w) => a
                .weighted_degree(w)
                .cmp(&b.weighted_degree(w))
                .then_with(|| grevlex_range(ea, eb, 0, nvars)),
            TermOrder::Block(k) => {
                grevlex_range(ea, eb, 0, *k).then_with(|| grevlex_range(ea, eb, *k, nvars))
            }
        }
    }

    /// Checks that the order makes sense for a ring with `nvars` variables.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            TermOrder::Weighted(w) if w.len() != nvars => Err(Error::domain(format!(
                "weight vector has {} entries for {nvars} variables",
                w.len()
            ))),
            TermOrder::Block(k) if *k > nvars => Err(Error::domain(format!(
                "block split {k} exceeds {nvars} variables"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex => f.write_str("lex"),
            TermOrder::GrevLex => f.write_str("grevlex"),
            TermOrder::Weighted(w) => {
                let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "weighted:{}", w.join(","))
            }
            TermOrder::Block(k) => write!(f, "block:{k}"),
        }
    }
}

impl FromStr for TermOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            line: 1,
            col: 1,
            msg: format!("unknown term order {s:?}"),
        };
        match s.trim() {
            "lex" => Ok(TermOrder::Lex),
            "grevlex" => Ok(TermOrder::GrevLex),
            other => {
                if let Some(k) = other.strip_prefix("block:") {
                    k.parse().map(TermOrder::Block).map_err(|_| err())
                } else if let Some(w) = other.strip_prefix("weighted:") {
                    w.split(',')
                        .map(|x| x.trim().parse::<u32>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map(TermOrder::Weighted)
                        .map_err(|_| err())
                } else {
                    Err(err())
                }
            }
        }
    }
}
