//! Text formats: `.pbf` function files and `.mla` MaxLin-AA instances.
//!
//! ```text
//! # f = 2 x1 x2 - 3 x2 x3 + x4
//! n 4
//! 2 1 2
//! -3 2 3
//! 1 4
//! ```
//!
//! ```text
//! maxlin 3 3 1
//! 1 1 1 2
//! 1 -1 2 3
//! 1 1 1 3
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Line numbers in errors are
//! 1-based and count every physical line.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use pbf_core::maxlin::{Equation, EquationSystem};
use pbf_core::{Error, FourierExpansion, Rational, VarSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: Error },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Invalid { line, .. } => *line,
        }
    }

    fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            message: message.into(),
        }
    }
}

/// Significant lines as `(line number, tokens)`.
fn significant_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

/// Parses an integer or `p/q` rational.
pub fn parse_rational(token: &str) -> Option<Rational> {
    match token.split_once('/') {
        None => token.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            (!q.is_zero()).then(|| Rational::new(p, q))
        }
    }
}

fn parse_indices(line: usize, tokens: &[&str], n: usize) -> Result<VarSet, ParseError> {
    let mut mask = 0u64;
    for token in tokens {
        let i: usize = token
            .parse()
            .map_err(|_| ParseError::syntax(line, format!("bad variable index {token:?}")))?;
        if i == 0 || i > n {
            return Err(ParseError::syntax(
                line,
                format!("variable index {i} outside 1..={n}"),
            ));
        }
        let bit = 1u64 << (i - 1);
        if mask & bit != 0 {
            return Err(ParseError::syntax(line, format!("repeated variable index {i}")));
        }
        mask |= bit;
    }
    Ok(VarSet::from_mask(mask))
}

fn parse_count(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::syntax(line, format!("bad {what} {token:?}")))
}

fn check_vars(line: usize, n: usize) -> Result<(), ParseError> {
    if n > VarSet::MAX_VARS {
        return Err(ParseError::Invalid {
            line,
            source: Error::TooManyVariables {
                n,
                cap: VarSet::MAX_VARS,
            },
        });
    }
    Ok(())
}

/// Parses a `.pbf` function file.
pub fn parse_function(text: &str) -> Result<FourierExpansion, ParseError> {
    let mut lines = significant_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::syntax(1, "missing header \"n <int>\""))?;
    let n = match header.as_slice() {
        ["n", count] => parse_count(header_line, count, "variable count")?,
        _ => return Err(ParseError::syntax(header_line, "expected header \"n <int>\"")),
    };
    check_vars(header_line, n)?;

    let mut terms: BTreeMap<VarSet, Rational> = BTreeMap::new();
    for (line, tokens) in lines {
        let coef = parse_rational(tokens[0])
            .ok_or_else(|| ParseError::syntax(line, format!("bad coefficient {:?}", tokens[0])))?;
        let mask = parse_indices(line, &tokens[1..], n)?;
        if coef.is_zero() {
            return Err(ParseError::Invalid {
                line,
                source: Error::ZeroCoefficient(mask),
            });
        }
        if terms.insert(mask, coef).is_some() {
            return Err(ParseError::Invalid {
                line,
                source: Error::DuplicateTerm(mask),
            });
        }
    }
    FourierExpansion::new(n, terms).map_err(|source| ParseError::Invalid {
        line: header_line,
        source,
    })
}

/// Writes `f` in `.pbf` form, terms ordered by mask.
pub fn write_function(f: &FourierExpansion) -> String {
    let mut out = format!("n {}\n", f.n());
    for (mask, coef) in f.terms() {
        out.push_str(&coef.to_string());
        for i in mask.indices() {
            let _ = write!(out, " {i}");
        }
        out.push('\n');
    }
    out
}

/// Parses a `.mla` MaxLin-AA file.
pub fn parse_maxlin(text: &str) -> Result<EquationSystem, ParseError> {
    let mut lines = significant_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::syntax(1, "missing header \"maxlin <n> <m> <k>\""))?;
    let (n, m, k) = match header.as_slice() {
        ["maxlin", n, m, k] => {
            let n = parse_count(header_line, n, "variable count")?;
            let m = parse_count(header_line, m, "equation count")?;
            let k: i64 = k
                .parse()
                .map_err(|_| ParseError::syntax(header_line, format!("bad parameter k {k:?}")))?;
            (n, m, k)
        }
        _ => {
            return Err(ParseError::syntax(
                header_line,
                "expected header \"maxlin <n> <m> <k>\"",
            ))
        }
    };
    check_vars(header_line, n)?;
    if k < 0 {
        return Err(ParseError::Invalid {
            line: header_line,
            source: Error::NegativeK(k),
        });
    }

    let mut equations = Vec::with_capacity(m);
    let mut first_line: BTreeMap<VarSet, usize> = BTreeMap::new();
    for (line, tokens) in lines {
        if equations.len() == m {
            return Err(ParseError::syntax(
                line,
                format!("more equations than the {m} declared in the header"),
            ));
        }
        if tokens.len() < 3 {
            return Err(ParseError::syntax(
                line,
                "expected \"<w> <b> <i1> ... <il>\" with at least one index",
            ));
        }
        let index = equations.len();
        let weight: i64 = tokens[0]
            .parse()
            .map_err(|_| ParseError::syntax(line, format!("bad weight {:?}", tokens[0])))?;
        if weight < 1 {
            return Err(ParseError::Invalid {
                line,
                source: Error::NonpositiveWeight { index, weight },
            });
        }
        let rhs: i64 = tokens[1]
            .parse()
            .map_err(|_| ParseError::syntax(line, format!("bad right-hand side {:?}", tokens[1])))?;
        if rhs != 1 && rhs != -1 {
            return Err(ParseError::Invalid {
                line,
                source: Error::BadRhs { index, rhs },
            });
        }
        let lhs = parse_indices(line, &tokens[2..], n)?;
        if first_line.insert(lhs, line).is_some() {
            return Err(ParseError::Invalid {
                line,
                source: Error::DuplicateLhs(lhs),
            });
        }
        equations.push(Equation::new(lhs, rhs, weight));
    }
    if equations.len() != m {
        return Err(ParseError::syntax(
            header_line,
            format!("header declares {m} equations but {} follow", equations.len()),
        ));
    }
    EquationSystem::new(n, equations, k).map_err(|source| ParseError::Invalid {
        line: header_line,
        source,
    })
}

/// Writes a system in `.mla` form.
pub fn write_maxlin(system: &EquationSystem) -> String {
    let mut out = format!("maxlin {} {} {}\n", system.n(), system.m(), system.k());
    for eq in system.equations() {
        let _ = write!(out, "{} {}", eq.weight, eq.rhs);
        for i in eq.lhs.indices() {
            let _ = write!(out, " {i}");
        }
        out.push('\n');
    }
    out
}
