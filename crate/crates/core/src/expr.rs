//! Polynomial expressions and definition files.
//!
//! Expressions use rational literals (`3`, `-1/2`), generator names,
//! `d(name)` tokens for de Rham generators, `D(name)` tokens for polyvector
//! generators, and `+ - * / ^ ( )`. Division is only by nonzero constants.
//!
//! A definition file is a sequence of `[section]` blocks of `key = value` or
//! comma-separated lines; `#` starts a comment:
//!
//! ```text
//! [generators]
//! # name, degree, weight_internal, weight_hodge
//! x, 0, 0, 0
//! xi, -1, 0, 0
//!
//! [differential]
//! xi = x
//!
//! [potential]
//! S = x^2/2
//! ```

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bv::Potential;
use crate::graded::{Algebra, Derivation, DgAlgebra, Generator, Poly};
use crate::{Error, Result, Q};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> std::result::Result<Vec<Tok>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| format!("bad number `{s}`"))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let mut name: String = chars[start..i].iter().collect();
            // d(x) and D(x) are single tokens
            if (name == "d" || name == "D") && chars.get(i) == Some(&'(') {
                let close = chars[i..].iter().position(|&c| c == ')').ok_or("unclosed `(`")? + i;
                let inner: String = chars[i + 1..close].iter().collect::<String>().trim().to_string();
                if !inner.is_empty() && inner.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    name = format!("{name}({inner})");
                    i = close + 1;
                }
            }
            out.push(Tok::Ident(name));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    alg: &'a Algebra,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> std::result::Result<Poly, String> {
        let mut acc = Poly::zero();
        let mut neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        loop {
            let t = self.term()?;
            if neg {
                acc -= &t;
            } else {
                acc += &t;
            }
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Poly, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let r = self.unary()?;
                acc = self.alg.mul(&acc, &r).map_err(|e| e.to_string())?;
            } else if self.eat('/') {
                let r = self.unary()?;
                match r.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    _ => return Err("division by a non-constant or zero".into()),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> std::result::Result<Poly, String> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> std::result::Result<Poly, String> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => u32::try_from(n.clone()).map_err(|_| "exponent too large".to_string())?,
                _ => return Err("expected a non-negative integer exponent".into()),
            };
            self.pos += 1;
            return self.alg.pow(&base, e).map_err(|e| e.to_string());
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<Poly, String> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(Q::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.alg.var(&name).map_err(|e| e.to_string())
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let p = self.expr()?;
                if !self.eat(')') {
                    return Err("expected `)`".into());
                }
                Ok(p)
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of expression".into()),
        }
    }
}

/// Parses an expression over `alg`. `line` is only used in error messages.
pub fn parse_poly_at(alg: &Algebra, src: &str, line: usize) -> Result<Poly> {
    let err = |message: String| Error::Parse { line, message };
    let toks = tokenize(src).map_err(err)?;
    let mut p = Parser { alg, toks, pos: 0 };
    let out = p.expr().map_err(err)?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse { line, message: format!("trailing input at token {:?}", p.toks[p.pos]) });
    }
    Ok(out)
}

pub fn parse_poly(alg: &Algebra, src: &str) -> Result<Poly> {
    parse_poly_at(alg, src, 0)
}

/// Parses a rational literal `p`, `-p` or `p/q`.
pub fn parse_q(src: &str) -> Result<Q> {
    let bad = || Error::Parse { line: 0, message: format!("bad rational `{src}`") };
    let s = src.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

/// Standalone rational as `"p/q"` (denominator always present).
pub fn q_string(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Canonical text of a polynomial: terms by descending degrevlex order,
/// reduced-fraction coefficients, `*` between factors.
pub fn format_poly(alg: &Algebra, p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !a.is_one() || m.is_one() {
            factors.push(if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) });
        }
        for (i, e) in m.factors() {
            let name = alg.generators().get(i).map_or_else(|| format!("#{i}"), |g| g.name.clone());
            if e == 1 {
                factors.push(name);
            } else {
                factors.push(format!("{name}^{e}"));
            }
        }
        let _ = write!(out, "{}", factors.join("*"));
    }
    out
}

/// One `[section]` of a definition file with its non-empty lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    /// `(line number, content)` with comments stripped.
    pub lines: Vec<(usize, String)>,
}

/// Splits a definition file into sections. Lines before the first header
/// belong to a section named `""`.
pub fn sections(src: &str) -> Result<Vec<Section>> {
    let mut out = vec![Section { name: String::new(), lines: Vec::new() }];
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or(Error::Parse { line: i + 1, message: "unterminated section header".into() })?;
            out.push(Section { name: name.trim().to_string(), lines: Vec::new() });
        } else {
            out.last_mut().expect("nonempty").lines.push((i + 1, line.to_string()));
        }
    }
    Ok(out)
}

fn split_kv(line: usize, s: &str) -> Result<(String, String)> {
    let (k, v) =
        s.split_once('=').ok_or(Error::Parse { line, message: format!("expected `key = value`, got `{s}`") })?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

/// Raw contents of a definition file; expressions are kept as text until
/// the algebra they live in is known.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Definition {
    pub generators: Vec<Generator>,
    pub differential: Vec<(usize, String, String)>,
    pub filtration: Vec<(usize, String, i32)>,
    pub potential: Option<(usize, String)>,
    pub form: Vec<(usize, String, String)>,
    pub poisson: Vec<(usize, String, String)>,
    /// Any other section, verbatim.
    pub other: Vec<Section>,
}

fn parse_int(line: usize, s: &str) -> Result<i32> {
    s.trim().parse().map_err(|_| Error::Parse { line, message: format!("expected an integer, got `{s}`") })
}

impl Definition {
    pub fn parse(src: &str) -> Result<Self> {
        let mut def = Definition::default();
        for sec in sections(src)? {
            match sec.name.as_str() {
                "generators" => {
                    for (line, l) in &sec.lines {
                        let parts: Vec<&str> = l.split(',').map(str::trim).collect();
                        if !(2..=4).contains(&parts.len()) || parts[0].is_empty() {
                            return Err(Error::Parse {
                                line: *line,
                                message: "expected `name, degree[, weight_internal[, weight_hodge]]`".into(),
                            });
                        }
                        let degree = parse_int(*line, parts[1])?;
                        let w = parts.get(2).map(|s| parse_int(*line, s)).transpose()?.unwrap_or(0);
                        let h = parts.get(3).map(|s| parse_int(*line, s)).transpose()?.unwrap_or(0);
                        def.generators.push(Generator::with_weights(parts[0], degree, w, h));
                    }
                }
                "differential" => {
                    for (line, l) in &sec.lines {
                        let (k, v) = split_kv(*line, l)?;
                        def.differential.push((*line, k, v));
                    }
                }
                "filtration" => {
                    for (line, l) in &sec.lines {
                        let (k, v) = split_kv(*line, l)?;
                        def.filtration.push((*line, k, parse_int(*line, &v)?));
                    }
                }
                "" | "potential" => {
                    for (line, l) in &sec.lines {
                        let (k, v) = split_kv(*line, l)?;
                        if k != "S" {
                            return Err(Error::Parse { line: *line, message: format!("unexpected key `{k}`") });
                        }
                        def.potential = Some((*line, v));
                    }
                }
                "form" => {
                    for (line, l) in &sec.lines {
                        let (k, v) = split_kv(*line, l)?;
                        def.form.push((*line, k, v));
                    }
                }
                "poisson" => {
                    for (line, l) in &sec.lines {
                        let (k, v) = split_kv(*line, l)?;
                        def.poisson.push((*line, k, v));
                    }
                }
                _ => def.other.push(sec),
            }
        }
        Ok(def)
    }

    pub fn algebra(&self) -> Result<Algebra> {
        Algebra::new(self.generators.clone())
    }

    /// The DGA of the `[generators]` and `[differential]` sections.
    pub fn dga(&self) -> Result<DgAlgebra> {
        let alg = Arc::new(self.algebra()?);
        let mut values = Vec::new();
        for (line, k, v) in &self.differential {
            let i = alg
                .index_of(k)
                .map_err(|_| Error::Parse { line: *line, message: format!("unknown generator `{k}`") })?;
            values.push((i, parse_poly_at(&alg, v, *line)?));
        }
        let d = Derivation::new(&alg, 1, (0, 0), values)?;
        DgAlgebra::new(alg, d)
    }

    /// The potential of a file whose generators are all of degree 0.
    pub fn potential(&self) -> Result<Potential> {
        let (line, src) =
            self.potential.as_ref().ok_or(Error::Parse { line: 0, message: "missing `S = ...` line".into() })?;
        if let Some(g) = self.generators.iter().find(|g| g.degree != 0) {
            return Err(Error::Parse { line: 0, message: format!("coordinate `{}` must have degree 0", g.name) });
        }
        if !self.differential.is_empty() {
            return Err(Error::Parse {
                line: self.differential[0].0,
                message: "a potential file has no differential".into(),
            });
        }
        let alg = Arc::new(self.algebra()?);
        let s = parse_poly_at(&alg, src, *line)?;
        Potential::new(alg, s)
    }

    /// Value of `key` in the `[form]` section.
    pub fn form_value(&self, key: &str) -> Option<(usize, &str)> {
        self.form.iter().find(|(_, k, _)| k == key).map(|(l, _, v)| (*l, v.as_str()))
    }

    pub fn poisson_value(&self, key: &str) -> Option<(usize, &str)> {
        self.poisson.iter().find(|(_, k, _)| k == key).map(|(l, _, v)| (*l, v.as_str()))
    }
}
