//! Shared polynomial text grammar.
//!
//! ```text
//! poly   := [sign] term { sign term }
//! term   := factor { '*' factor }
//! factor := digits [ '/' digits ] | ident [ '^' digits ] | '(' coefficient ')'
//! ```
//!
//! Numeric and parenthesised factors are coefficients and are handed to the
//! field's element parser; identifiers are variables. Whitespace is ignored
//! between tokens.

use crate::arith::Field;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawTerm {
    pub negative: bool,
    pub coeffs: Vec<String>,
    /// (name, exponent, column)
    pub vars: Vec<(String, u32, usize)>,
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        // Only ASCII digits were consumed.
        std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("")
    }
}

pub(crate) fn parse_terms(text: &str, line: usize) -> Result<Vec<RawTerm>> {
    let mut c = Cursor {
        s: text.as_bytes(),
        pos: 0,
        line,
    };
    let mut terms = Vec::new();
    c.skip_ws();
    if c.peek().is_none() {
        return Err(c.err("empty polynomial"));
    }
    let mut first = true;
    loop {
        c.skip_ws();
        let mut negative = false;
        match c.peek() {
            Some(b'+') if !first => c.pos += 1,
            Some(b'-') => {
                negative = true;
                c.pos += 1;
            }
            Some(b'+') => c.pos += 1,
            None => return Err(c.err("expected term")),
            _ if !first => return Err(c.err("expected '+' or '-' between terms")),
            _ => {}
        }
        first = false;
        let mut term = RawTerm {
            negative,
            coeffs: Vec::new(),
            vars: Vec::new(),
        };
        loop {
            c.skip_ws();
            parse_factor(&mut c, &mut term)?;
            c.skip_ws();
            if c.peek() == Some(b'*') {
                c.pos += 1;
            } else {
                break;
            }
        }
        terms.push(term);
        c.skip_ws();
        if c.peek().is_none() {
            break;
        }
    }
    Ok(terms)
}

fn parse_factor(c: &mut Cursor<'_>, term: &mut RawTerm) -> Result<()> {
    match c.peek() {
        Some(b) if b.is_ascii_digit() => {
            let mut tok = c.digits().to_string();
            if c.peek() == Some(b'/') {
                c.pos += 1;
                let den = c.digits();
                if den.is_empty() {
                    return Err(c.err("expected denominator"));
                }
                tok.push('/');
                tok.push_str(den);
            }
            term.coeffs.push(tok);
            Ok(())
        }
        Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
            let col = c.pos + 1;
            let start = c.pos;
            while c
                .peek()
                .is_some_and(|b| b.is_ascii_alphanumeric() || b == b'_')
            {
                c.pos += 1;
            }
            let name = std::str::from_utf8(&c.s[start..c.pos])
                .unwrap_or("")
                .to_string();
            let mut exp = 1u32;
            c.skip_ws();
            if c.peek() == Some(b'^') {
                c.pos += 1;
                c.skip_ws();
                let d = c.digits();
                exp = d
                    .parse()
                    .map_err(|_| c.err(format!("invalid exponent {d:?}")))?;
            }
            term.vars.push((name, exp, col));
            Ok(())
        }
        Some(b'(') => {
            let start = c.pos;
            let mut depth = 0usize;
            while let Some(b) = c.peek() {
                c.pos += 1;
                match b {
                    b'(' => depth += 1,
                    b')' => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    _ => {}
                }
            }
            if depth != 0 {
                return Err(c.err("unbalanced parenthesis"));
            }
            let tok = std::str::from_utf8(&c.s[start..c.pos])
                .map_err(|_| c.err("invalid UTF-8"))?;
            term.coeffs.push(tok.to_string());
            Ok(())
        }
        Some(_) => Err(c.err("unexpected character")),
        None => Err(c.err("unexpected end of input")),
    }
}

/// Product of the coefficient tokens of a term, with its sign applied.
pub(crate) fn term_coefficient<F: Field>(field: &F, term: &RawTerm, line: usize) -> Result<F::Elem> {
    let mut acc = field.one();
    for tok in &term.coeffs {
        let c = field.parse_elem(tok).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line, col: 1, msg },
            other => other,
        })?;
        acc = field.mul(&acc, &c);
    }
    Ok(if term.negative { field.neg(&acc) } else { acc })
}

/// Joins `(coefficient, monomial text)` pairs in canonical form. The
/// monomial text is empty for the constant monomial.
pub(crate) fn format_sum<'a, F: Field>(
    field: &F,
    terms: impl IntoIterator<Item = (&'a F::Elem, String)>,
) -> String {
    let mut out = String::new();
    for (i, (c, mono)) in terms.into_iter().enumerate() {
        let neg = field.is_negative(c);
        let mag = if neg { field.neg(c) } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&field.format_elem(&mag));
        } else if field.is_one(&mag) {
            out.push_str(&mono);
        } else {
            out.push_str(&field.format_elem(&mag));
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn format_power(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizes_terms() {
        let t = parse_terms("3*x^2*y - 1/2*z + (z + 1)*t", 1).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t[0].coeffs, vec!["3"]);
        assert_eq!(t[0].vars.len(), 2);
        assert!(t[1].negative);
        assert_eq!(t[1].coeffs, vec!["1/2"]);
        assert_eq!(t[2].coeffs, vec!["(z + 1)"]);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x +", "x y", "3/", "x^", "(x", "x^99999999999", "#", "x**y"] {
            assert!(parse_terms(bad, 1).is_err(), "{bad:?}");
        }
    }
}
