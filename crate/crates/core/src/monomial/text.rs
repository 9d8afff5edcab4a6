//! Plain-text monomial and ideal syntax.
//!
//! ```text
//! ideal    := monomial (',' monomial)* | empty | '0'
//! monomial := term ('*' term)* | '1'
//! term     := var ('^' natural)?
//! ```
//!
//! Whitespace is insignificant. Output lists generators in canonical order,
//! variables in declaration order, and omits `^1`.

use std::fmt::Write as _;

use super::exponent::ExponentVector;
use super::ideal::MonomialIdeal;
use crate::error::{Error, Result};

/// Variable names in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames(Vec<String>);

impl VarNames {
    /// `x, y, z, w` for up to four variables, otherwise `x1, ..., xn`.
    pub fn default_for(nvars: usize) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::NoVariables);
        }
        let names = if nvars <= 4 {
            ["x", "y", "z", "w"][..nvars].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=nvars).map(|i| format!("x{i}")).collect()
        };
        Ok(VarNames(names))
    }

    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::NoVariables);
        }
        for (i, n) in names.iter().enumerate() {
            let mut chars = n.chars();
            let ok_head = chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
            if !ok_head || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::InvalidVariables(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidVariables(format!("`{n}` declared twice")));
            }
        }
        Ok(VarNames(names))
    }

    /// Parses a comma-separated list such as `"a,b,c"`.
    pub fn parse_list(text: &str) -> Result<Self> {
        Self::new(text.split(',').map(|s| s.trim().to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { chars: src.char_indices().collect(), pos: 0, src }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn offset(&mut self) -> usize {
        self.peek().map_or(self.src.len(), |(o, _)| o)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn ident(&mut self) -> Option<(usize, String)> {
        let (start, c) = self.peek()?;
        if !(c.is_ascii_alphabetic() || c == '_') {
            return None;
        }
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        Some((start, s))
    }

    fn natural(&mut self) -> Result<u64> {
        let start = self.offset();
        match self.peek() {
            Some((_, '-')) => return Err(Error::NegativeExponent { pos: start }),
            Some((_, c)) if c.is_ascii_digit() => {}
            _ => return Err(Error::Syntax { pos: start, msg: "expected a natural number".into() }),
        }
        let mut value: u64 = 0;
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            let Some(d) = c.to_digit(10) else { break };
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or(Error::Syntax { pos: start, msg: "exponent too large".into() })?;
            self.pos += 1;
        }
        Ok(value)
    }
}

fn parse_monomial(lx: &mut Lexer<'_>, vars: &VarNames) -> Result<ExponentVector> {
    let mut exps = vec![0u64; vars.len()];
    if let Some((_, '1')) = lx.peek() {
        let pos = lx.offset();
        if lx.natural()? != 1 {
            return Err(Error::Syntax { pos, msg: "only the constant 1 may appear".into() });
        }
        return ExponentVector::new(exps);
    }
    loop {
        let pos = lx.offset();
        let (start, name) = lx
            .ident()
            .ok_or_else(|| Error::Syntax { pos, msg: "expected a variable".into() })?;
        let idx = vars.index(&name).ok_or(Error::UnknownVariable { name, pos: start })?;
        let mut e = 1;
        if let Some((_, '^')) = lx.peek() {
            lx.bump();
            e = lx.natural()?;
        }
        exps[idx] = exps[idx].checked_add(e).ok_or(Error::Overflow)?;
        match lx.peek() {
            Some((_, '*')) => lx.bump(),
            _ => break,
        }
    }
    ExponentVector::new(exps)
}

/// Parses a single monomial, e.g. `"x^2*y"`.
pub fn parse_monomial_text(text: &str, vars: &VarNames) -> Result<ExponentVector> {
    let mut lx = Lexer::new(text);
    let m = parse_monomial(&mut lx, vars)?;
    if let Some((pos, c)) = lx.peek() {
        return Err(Error::Syntax { pos, msg: format!("unexpected `{c}`") });
    }
    Ok(m)
}

/// Parses an ideal given by generators, e.g. `"x^3, y^3"`.
pub fn parse_ideal_with(text: &str, vars: &VarNames) -> Result<MonomialIdeal> {
    let mut lx = Lexer::new(text);
    let n = vars.len();
    match lx.peek() {
        None => return MonomialIdeal::zero(n),
        Some((_, '0')) => {
            lx.bump();
            if let Some((pos, c)) = lx.peek() {
                return Err(Error::Syntax { pos, msg: format!("unexpected `{c}` after 0") });
            }
            return MonomialIdeal::zero(n);
        }
        _ => {}
    }
    let mut gens = Vec::new();
    loop {
        gens.push(parse_monomial(&mut lx, vars)?);
        match lx.peek() {
            Some((_, ',')) => lx.bump(),
            Some((pos, c)) => return Err(Error::Syntax { pos, msg: format!("unexpected `{c}`") }),
            None => break,
        }
    }
    MonomialIdeal::from_generators(n, gens)
}

/// [`parse_ideal_with`] using the default variable names for `nvars`.
pub fn parse_ideal(text: &str, nvars: usize) -> Result<MonomialIdeal> {
    parse_ideal_with(text, &VarNames::default_for(nvars)?)
}

pub fn format_monomial(m: &ExponentVector, vars: &VarNames) -> String {
    let mut out = String::new();
    for (i, &a) in m.coords().iter().enumerate() {
        if a == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push_str(&vars.names()[i]);
        if a != 1 {
            let _ = write!(out, "^{a}");
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

/// Canonical text; the zero ideal prints as `0`.
pub fn format_ideal(ideal: &MonomialIdeal, vars: &VarNames) -> String {
    if ideal.is_zero() {
        return "0".to_string();
    }
    ideal.generators().iter().map(|g| format_monomial(g, vars)).collect::<Vec<_>>().join(", ")
}
