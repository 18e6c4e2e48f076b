//! Text formats for bases, products and transversal structures.
//!
//! ```text
//! 4 3            PRODUCT 2          TRANSVERSAL 5 5
//! 1 1 1 0        2 1                1 2
//! 1 0 2 0        1 0                2 3
//! ...            0 1                ...
//!
//!                2 2
//!                ...
//! ```
//!
//! A basis file starts with `n d` and lists one exponent vector per line.
//! Product files hold `s` basis blocks separated by blank lines. Transversal
//! files list the (one-based) variable indices of each subset in order.
//! Lines starting with `#` are comments everywhere.

use std::fmt::Write as _;
use std::path::Path;

use polymat_core::transversal::TransversalStructure;
use polymat_core::{Monomial, MonomialBasis, ProductStructure};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: polymat_core::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Basis(MonomialBasis),
    Product(ProductStructure),
    Transversal(TransversalStructure),
}

/// Non-comment lines with their one-based numbers; blank lines are kept.
fn lines(text: &str) -> Vec<(usize, &str)> {
    text.lines().enumerate().map(|(k, l)| (k + 1, l.trim())).filter(|(_, l)| !l.starts_with('#')).collect()
}

fn numbers<T: std::str::FromStr>(line: usize, text: &str) -> Result<Vec<T>, ParseError> {
    text.split_whitespace()
        .map(|tok| tok.parse().map_err(|_| syntax(line, format!("not a non-negative integer: {tok:?}"))))
        .collect()
}

fn header(line: usize, text: &str, keyword: &str, count: usize) -> Result<Vec<usize>, ParseError> {
    let rest = text.strip_prefix(keyword).ok_or_else(|| syntax(line, format!("expected header {keyword:?}")))?;
    let values: Vec<usize> = numbers(line, rest)?;
    if values.len() != count {
        return Err(syntax(line, format!("header needs {count} numbers")));
    }
    Ok(values)
}

/// Parses one basis block (header plus rows) from non-blank lines.
fn basis_block(block: &[(usize, &str)]) -> Result<MonomialBasis, ParseError> {
    let (hline, htext) = block[0];
    let h = header(hline, htext, "", 2)?;
    let (n, d) = (h[0], h[1] as u64);
    if block.len() == 1 {
        return Err(ParseError::Invalid { line: hline, source: polymat_core::Error::EmptyBasis });
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut rows = Vec::new();
    for &(line, text) in &block[1..] {
        let exps: Vec<u64> = numbers(line, text)?;
        if exps.len() != n {
            let source = polymat_core::Error::LengthMismatch { expected: n, found: exps.len() };
            return Err(ParseError::Invalid { line, source });
        }
        let m = Monomial::new(exps);
        let degree = m.exponents().iter().try_fold(0u64, |acc, &e| acc.checked_add(e));
        let degree = degree.ok_or(ParseError::Invalid { line, source: polymat_core::Error::Overflow })?;
        if degree != d {
            let source = polymat_core::Error::DegreeMismatch { expected: d, found: degree };
            return Err(ParseError::Invalid { line, source });
        }
        if !seen.insert(m.clone()) {
            return Err(syntax(line, "repeated monomial"));
        }
        rows.push(m);
    }
    MonomialBasis::new(rows).map_err(|source| ParseError::Invalid { line: hline, source })
}

pub fn parse(text: &str) -> Result<Input, ParseError> {
    let all = lines(text);
    let mut body = all.iter().copied().skip_while(|(_, l)| l.is_empty()).peekable();
    let Some(&(line, first)) = body.peek() else {
        return Err(syntax(1, "empty input"));
    };
    let rest: Vec<(usize, &str)> = body.collect();
    if first.starts_with("PRODUCT") {
        let s = header(line, first, "PRODUCT", 1)?[0];
        let mut blocks: Vec<Vec<(usize, &str)>> = Vec::new();
        let mut current = Vec::new();
        for &(l, t) in &rest[1..] {
            if t.is_empty() {
                if !current.is_empty() {
                    blocks.push(std::mem::take(&mut current));
                }
            } else {
                current.push((l, t));
            }
        }
        if !current.is_empty() {
            blocks.push(current);
        }
        if blocks.len() != s {
            return Err(syntax(line, format!("header announces {s} blocks, found {}", blocks.len())));
        }
        let factors = blocks.iter().map(|b| basis_block(b)).collect::<Result<Vec<_>, _>>()?;
        return ProductStructure::new(factors)
            .map(Input::Product)
            .map_err(|source| ParseError::Invalid { line, source });
    }
    let rest: Vec<(usize, &str)> = rest.into_iter().filter(|(_, t)| !t.is_empty()).collect();
    if first.starts_with("TRANSVERSAL") {
        let h = header(line, first, "TRANSVERSAL", 2)?;
        let (s, n) = (h[0], h[1]);
        if rest.len() - 1 != s {
            return Err(syntax(line, format!("header announces {s} subsets, found {}", rest.len() - 1)));
        }
        let mut subsets = Vec::with_capacity(s);
        for &(l, t) in &rest[1..] {
            let idx: Vec<usize> = numbers(l, t)?;
            if let Some(&bad) = idx.iter().find(|&&k| k == 0 || k > n) {
                return Err(syntax(l, format!("variable index {bad} outside 1..={n}")));
            }
            let subset: Vec<usize> = idx.iter().map(|k| k - 1).collect();
            // validate each line on its own so errors carry the right line
            TransversalStructure::new(n, vec![subset.clone()])
                .map_err(|source| ParseError::Invalid { line: l, source })?;
            subsets.push(subset);
        }
        return TransversalStructure::new(n, subsets)
            .map(Input::Transversal)
            .map_err(|source| ParseError::Invalid { line, source });
    }
    basis_block(&rest).map(Input::Basis)
}

pub fn read_file(path: &Path) -> Result<Input, ParseError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| ParseError::Io { path: path.display().to_string(), source })?;
    parse(&text)
}

pub fn write_basis(b: &MonomialBasis) -> String {
    let mut out = format!("{} {}\n", b.n(), b.degree());
    for m in b {
        writeln!(out, "{m}").unwrap();
    }
    out
}

pub fn write_product(p: &ProductStructure) -> String {
    let blocks: Vec<String> = p.factors().iter().map(write_basis).collect();
    format!("PRODUCT {}\n{}", blocks.len(), blocks.join("\n"))
}

pub fn write_transversal(t: &TransversalStructure) -> String {
    let mut out = format!("TRANSVERSAL {} {}\n", t.s(), t.n());
    for x in t.subsets() {
        let idx: Vec<String> = x.iter().map(|k| (k + 1).to_string()).collect();
        writeln!(out, "{}", idx.join(" ")).unwrap();
    }
    out
}

pub fn write_input(input: &Input) -> String {
    match input {
        Input::Basis(b) => write_basis(b),
        Input::Product(p) => write_product(p),
        Input::Transversal(t) => write_transversal(t),
    }
}
