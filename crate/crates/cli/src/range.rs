//! Index ranges on the command line: `3`, `1..4`, `1..=4`, `2,5..7`.
//! Ranges are inclusive.

use lcprimes::arith::is_prime;

/// Largest number of values a range may expand to.
pub const MAX_RANGE_LEN: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Item {
    One(u64),
    Span(u64, u64),
}

fn parse_items(text: &str) -> Result<Vec<Item>, String> {
    if text.trim().is_empty() {
        return Err("empty range".into());
    }
    text.split(',')
        .map(|part| {
            let part = part.trim();
            let num = |s: &str| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| format!("{s:?} is not a non-negative integer"))
            };
            match part.split_once("..") {
                None => num(part).map(Item::One),
                Some((a, b)) => {
                    let (a, b) = (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?);
                    if a > b {
                        return Err(format!("range {part:?} is empty"));
                    }
                    if b - a >= MAX_RANGE_LEN {
                        return Err(format!("range {part:?} has more than {MAX_RANGE_LEN} values"));
                    }
                    Ok(Item::Span(a, b))
                }
            }
        })
        .collect()
}

fn flatten(items: &[Item], keep: impl Fn(u64) -> bool) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for item in items {
        match *item {
            Item::One(v) => out.push(v),
            Item::Span(a, b) => out.extend((a..=b).filter(|&v| keep(v))),
        }
        if out.len() as u64 > MAX_RANGE_LEN {
            return Err(format!("more than {MAX_RANGE_LEN} values"));
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        return Err("range selects no values".into());
    }
    Ok(out)
}

/// Sorted, deduplicated values of a range expression.
pub fn parse_range(text: &str) -> Result<Vec<u64>, String> {
    flatten(&parse_items(text)?, |_| true)
}

/// Characteristics: single values are taken as given (`0` is ℚ), spans
/// keep only their primes.
pub fn parse_characteristics(text: &str) -> Result<Vec<u64>, String> {
    flatten(&parse_items(text)?, is_prime)
}

/// A range whose values fit in `u32`.
pub fn parse_range_u32(text: &str) -> Result<Vec<u32>, String> {
    parse_range(text)?
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| format!("{v} is too large")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn forms() {
        assert_eq!(parse_range("3").unwrap(), [3]);
        assert_eq!(parse_range("1..3").unwrap(), [1, 2, 3]);
        assert_eq!(parse_range("1..=3").unwrap(), [1, 2, 3]);
        assert_eq!(parse_range(" 7, 2..3 ,3").unwrap(), [2, 3, 7]);
        assert_eq!(parse_characteristics("2..10").unwrap(), [2, 3, 5, 7]);
        assert_eq!(parse_characteristics("0,4").unwrap(), [0, 4]);
    }

    #[test]
    fn malformed() {
        for bad in ["", " ", "a", "3..1", "1..", "..2", "1,,2", "-1", "0..200000", "1..2..3"] {
            assert!(parse_range(bad).is_err(), "{bad:?}");
        }
        assert!(parse_characteristics("24..28").is_err());
        assert!(parse_range_u32("5000000000").is_err());
    }

    proptest! {
        #[test]
        fn spans_match_their_bounds(a in 0u64..1000, len in 0u64..50) {
            let v = parse_range(&format!("{a}..{}", a + len)).unwrap();
            prop_assert_eq!(v, (a..=a + len).collect::<Vec<_>>());
        }

        #[test]
        fn never_panics(s in "\\PC{0,20}") {
            let _ = parse_range(&s);
            let _ = parse_characteristics(&s);
        }
    }
}
