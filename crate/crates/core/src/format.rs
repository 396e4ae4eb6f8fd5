//! Plain-text ideal files.
//!
//! ```text
//! # Kohn's example with b = 2
//! ring n=2 vars=x,y
//! x^3 + x*y^2
//! y
//! ```
//!
//! The header declares the dimension and, optionally, variable names (default
//! `x1, ..., xn`). Each further nonempty line is one generator: a sum of terms,
//! each a `*`-separated product of rational constants and `name^exponent`
//! factors. `#` starts a comment.

use std::fmt::Write as _;
use std::str::FromStr;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ideal::{ExponentVector, MonomialIdeal};
use crate::polynomial::{Polynomial, PolynomialIdeal};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFile {
    pub vars: Vec<String>,
    pub generators: Vec<Polynomial>,
}

impl IdealFile {
    pub fn ambient_dim(&self) -> usize {
        self.vars.len()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (header_line, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `ring` header"))?;
        let vars = parse_header(header_line, header)?;
        let generators = lines
            .map(|(line, body)| parse_polynomial(line, body, &vars))
            .collect::<Result<Vec<_>>>()?;
        if generators.is_empty() {
            return Err(Error::parse(header_line, "no generators"));
        }
        Ok(IdealFile { vars, generators })
    }

    pub fn polynomial_ideal(&self) -> Result<PolynomialIdeal> {
        PolynomialIdeal::new(self.ambient_dim(), self.generators.clone())
    }

    /// The monomial ideal, or an error naming the first non-monomial generator.
    pub fn monomial_ideal(&self) -> Result<MonomialIdeal> {
        let mut exps = Vec::with_capacity(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            match g.as_monomial() {
                Some(u) => exps.push(u.clone()),
                None => return Err(Error::NotMonomial { index: i + 1 }),
            }
        }
        MonomialIdeal::minimalize(self.ambient_dim(), exps)
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(|g| g.as_monomial().is_some())
    }

    pub fn from_monomial_ideal(ideal: &MonomialIdeal, vars: Option<Vec<String>>) -> Self {
        IdealFile {
            vars: vars.unwrap_or_else(|| default_vars(ideal.ambient_dim())),
            generators: ideal
                .generators()
                .iter()
                .cloned()
                .map(Polynomial::monomial)
                .collect(),
        }
    }
}

impl std::fmt::Display for IdealFile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ring n={} vars={}", self.vars.len(), self.vars.join(","))?;
        for g in &self.generators {
            writeln!(f, "{}", format_polynomial(g, &self.vars))?;
        }
        Ok(())
    }
}

pub fn default_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn parse_header(line: usize, header: &str) -> Result<Vec<String>> {
    let mut words = header.split_whitespace();
    if words.next() != Some("ring") {
        return Err(Error::parse(line, "expected `ring n=<n> vars=<names>`"));
    }
    let mut n: Option<usize> = None;
    let mut vars: Option<Vec<String>> = None;
    for word in words {
        match word.split_once('=') {
            Some(("n", v)) => {
                n = Some(v.parse().map_err(|_| Error::parse(line, format!("bad dimension `{v}`")))?)
            }
            Some(("vars", v)) => vars = Some(v.split(',').map(|s| s.trim().to_string()).collect()),
            _ => return Err(Error::parse(line, format!("unexpected header field `{word}`"))),
        }
    }
    let n = n.ok_or_else(|| Error::parse(line, "header is missing n=<n>"))?;
    if n == 0 {
        return Err(Error::parse(line, "dimension must be positive"));
    }
    let vars = vars.unwrap_or_else(|| default_vars(n));
    if vars.len() != n {
        return Err(Error::parse(
            line,
            format!("{} variable names for n={n}", vars.len()),
        ));
    }
    for (i, v) in vars.iter().enumerate() {
        let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::parse(line, format!("invalid variable name `{v}`")));
        }
        if vars[..i].contains(v) {
            return Err(Error::parse(line, format!("duplicate variable `{v}`")));
        }
    }
    Ok(vars)
}

fn parse_polynomial(line: usize, body: &str, vars: &[String]) -> Result<Polynomial> {
    let n = vars.len();
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    // Split at top-level signs, keeping each sign with its term.
    let mut start = 0;
    let bytes = compact.as_bytes();
    for i in 1..=bytes.len() {
        let at_sign = i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^';
        if i == bytes.len() || at_sign {
            terms.push(parse_term(line, &compact[start..i], vars)?);
            start = i;
        }
    }
    Polynomial::new(n, terms).map_err(|e| match e {
        Error::EmptyPolynomial => Error::parse(line, "generator is zero"),
        other => other,
    })
}

fn parse_term(line: usize, text: &str, vars: &[String]) -> Result<(ExponentVector, Rational)> {
    let (negative, body) = match text.as_bytes().first() {
        Some(b'-') => (true, &text[1..]),
        Some(b'+') => (false, &text[1..]),
        _ => (false, text),
    };
    if body.is_empty() {
        return Err(Error::parse(line, "empty term"));
    }
    let mut coeff = Rational::one();
    let mut exps = vec![0u32; vars.len()];
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(Error::parse(line, format!("empty factor in `{text}`")));
        }
        if factor.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            coeff *= parse_rational(factor).map_err(|_| Error::parse(line, format!("bad coefficient `{factor}`")))?;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((name, e)) => (
                name,
                e.parse::<u32>()
                    .map_err(|_| Error::parse(line, format!("bad exponent `{e}`")))?,
            ),
            None => (factor, 1),
        };
        let j = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::parse(line, format!("undeclared variable `{name}`")))?;
        exps[j] += exp;
    }
    if negative {
        coeff = -coeff;
    }
    Ok((ExponentVector::new(exps)?, coeff))
}

/// `p/q`, or `p` when the value is an integer.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let r = Rational::from_str(s.trim()).map_err(|e| Error::parse(0, format!("bad rational `{s}`: {e}")))?;
    Ok(r)
}

pub fn format_monomial(u: &ExponentVector, vars: &[String]) -> String {
    let factors: Vec<String> = u
        .entries()
        .iter()
        .zip(vars)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

pub fn format_polynomial(p: &Polynomial, vars: &[String]) -> String {
    let mut out = String::new();
    for (i, (u, c)) in p.terms().enumerate() {
        let mono = format_monomial(u, vars);
        let abs = c.abs();
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        match (abs.is_one(), u.is_zero()) {
            (_, true) => out.push_str(&abs.to_string()),
            (true, false) => out.push_str(&mono),
            (false, false) => {
                let _ = write!(out, "{abs}*{mono}");
            }
        }
    }
    debug_assert!(!p.terms().any(|(_, c)| c.is_zero()));
    out
}
