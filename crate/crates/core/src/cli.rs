//! Text formats: forms, structure equations and problem files.
//!
//! Forms use the grammar
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := [rational] blade | rational
//! blade    := factor ('^' factor)*
//! factor   := 'e' digit+ | 'z' digit
//! rational := int ['/' int]
//! ```
//!
//! Each digit of a blade is one basis index in `1..=7`, and `z1, z2, z3` stand
//! for `e5, e6, e7`. Whitespace is ignored. Rendering uses the canonical
//! e-indexed form, so `render(parse(x)) = x` for canonical text.
//!
//! A problem file has up to three sections:
//!
//! ```text
//! [algebra]
//! (0,0,0,0,0,0,e12 + e34 + e56)
//!
//! [gauge]
//! F1 = -2 e12 + e34 + e56
//! F2 = e34 - e56
//! eps = 1/2, 3/2
//!
//! [options]
//! lambda = 1/2
//! ```
//!
//! The algebra may also be given by lines `dz1 = e12` (or `de7 = e12`), one
//! per nonzero differential. Lines starting with `#` are comments.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exterior::Form;
use crate::hetsys::{GaugeField, HetError};
use crate::nilalg::{catalog_entry, LieAlgebra};
use crate::scalar::Rational;

/// Dimension of every form handled by the text formats.
pub const DIM: usize = 7;

/// A syntax or validation error, with the 1-based line and column when known.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            column: Some(column),
            message: message.into(),
        }
    }

    fn plain(message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            column: None,
            message: message.into(),
        }
    }

    fn on_line(mut self, line: usize, offset: usize) -> Self {
        self.line = Some(line);
        self.column = self.column.map(|c| c + offset);
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            (None, Some(c)) => write!(f, "column {c}: {}", self.message),
            (None, None) => f.write_str(&self.message),
        }
    }
}

/// Character cursor over the non-whitespace characters of the input, keeping
/// the original 1-based column of each.
struct Cursor {
    chars: Vec<(usize, char)>,
    pos: usize,
    end_column: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        Cursor {
            chars,
            pos: 0,
            end_column: text.chars().count() + 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end_column, |&(c, _)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn integer(&mut self) -> Option<BigInt> {
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.pos += 1;
        }
        digits.parse().ok()
    }
}

fn rational(cur: &mut Cursor) -> Result<Option<Rational>, ParseError> {
    let Some(num) = cur.integer() else {
        return Ok(None);
    };
    if cur.peek() == Some('/') {
        cur.bump();
        let col = cur.column();
        let den = cur.integer().ok_or_else(|| ParseError::at(col, "expected a denominator"))?;
        if den == BigInt::from(0) {
            return Err(ParseError::at(col, "zero denominator"));
        }
        return Ok(Some(Rational::new(num, den)));
    }
    Ok(Some(Rational::from_integer(num)))
}

/// Parses `factor ('^' factor)*` into a signed unit blade.
fn blade(cur: &mut Cursor) -> Result<Form, ParseError> {
    let start = cur.column();
    let mut indices: Vec<(usize, usize)> = Vec::new();
    loop {
        let col = cur.column();
        match cur.bump() {
            Some('e') => {
                let mut any = false;
                while let Some(d) = cur.peek().filter(char::is_ascii_digit) {
                    indices.push((cur.column(), d.to_digit(10).unwrap() as usize));
                    cur.bump();
                    any = true;
                }
                if !any {
                    return Err(ParseError::at(cur.column(), "expected basis indices after 'e'"));
                }
            }
            Some('z') => {
                let dcol = cur.column();
                match cur.bump().and_then(|d| d.to_digit(10)) {
                    Some(d @ 1..=3) => indices.push((dcol, 4 + d as usize)),
                    _ => return Err(ParseError::at(dcol, "expected z1, z2 or z3")),
                }
            }
            _ => return Err(ParseError::at(col, "expected a blade such as e12 or z1")),
        }
        if cur.peek() == Some('^') {
            cur.bump();
        } else {
            break;
        }
    }
    for (k, &(col, i)) in indices.iter().enumerate() {
        if !(1..=DIM).contains(&i) {
            return Err(ParseError::at(col, format!("basis index {i} is outside 1..={DIM}")));
        }
        if indices[..k].iter().any(|&(_, j)| j == i) {
            return Err(ParseError::at(col, format!("repeated basis index {i} in blade")));
        }
    }
    let idx: Vec<usize> = indices.iter().map(|&(_, i)| i).collect();
    Form::term(DIM, &idx, Rational::from_integer(1.into()))
        .map_err(|e| ParseError::at(start, e.to_string()))
}

/// Parses a form in dimension 7. The text `0` is the zero function.
pub fn parse_form(text: &str) -> Result<Form, ParseError> {
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return Err(ParseError::at(1, "empty form"));
    }
    let mut terms: Vec<(usize, Form)> = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let col = cur.column();
        let mut sign = 1;
        match cur.peek() {
            Some('+') => {
                cur.bump();
            }
            Some('-') => {
                cur.bump();
                sign = -1;
            }
            _ if !first => return Err(ParseError::at(col, "expected '+' or '-'")),
            _ => {}
        }
        first = false;
        let tcol = cur.column();
        let coeff = rational(&mut cur)?;
        let term = match (coeff, cur.peek()) {
            (c, Some('e' | 'z')) => {
                let b = blade(&mut cur)?;
                match c {
                    Some(c) => b.scale(&c),
                    None => b,
                }
            }
            (Some(c), _) => Form::constant(DIM, c),
            (None, Some(ch)) => return Err(ParseError::at(tcol, format!("unexpected '{ch}'"))),
            (None, None) => return Err(ParseError::at(tcol, "expected a term")),
        };
        let term = if sign < 0 { -term } else { term };
        terms.push((tcol, term));
    }
    let degree = terms
        .iter()
        .find(|(_, t)| !t.is_zero())
        .map_or(terms[0].1.degree(), |(_, t)| t.degree());
    let mut out = Form::zero(DIM, degree);
    for (col, t) in terms {
        if t.degree() != degree && !t.is_zero() {
            return Err(ParseError::at(
                col,
                format!("term of degree {} in a form of degree {degree}", t.degree()),
            ));
        }
        if !t.is_zero() {
            out = out + t;
        }
    }
    Ok(out)
}

/// Parses a form of a fixed degree; `0` is accepted as the zero form.
pub fn parse_form_of_degree(text: &str, degree: usize) -> Result<Form, ParseError> {
    let f = parse_form(text)?;
    if f.is_zero() {
        return Ok(Form::zero(DIM, degree));
    }
    if f.degree() != degree {
        return Err(ParseError::at(1, format!("expected a {degree}-form, found degree {}", f.degree())));
    }
    Ok(f)
}

/// Parses a comma separated list of rationals such as `1/2, -3`.
pub fn parse_rationals(text: &str) -> Result<Vec<Rational>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        let mut cur = Cursor::new(part);
        let col = cur.column();
        let neg = match cur.peek() {
            Some('-') => {
                cur.bump();
                true
            }
            Some('+') => {
                cur.bump();
                false
            }
            _ => false,
        };
        let r = rational(&mut cur)
            .map_err(|e| shift(e, offset))?
            .ok_or_else(|| ParseError::at(offset + col, "expected a rational number"))?;
        if cur.peek().is_some() {
            return Err(ParseError::at(offset + cur.column(), "unexpected text after number"));
        }
        out.push(if neg { -r } else { r });
        offset += part.chars().count() + 1;
    }
    Ok(out)
}

fn shift(mut e: ParseError, offset: usize) -> ParseError {
    e.column = e.column.map(|c| c + offset);
    e
}

/// Parses structure equations: a catalog name, a 7-tuple of 2-forms, or
/// lines `dz<r> = <form>` / `de<i> = <form>`. The result is validated.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra, ParseError> {
    let trimmed = text.trim();
    if let Some(entry) = catalog_entry(trimmed) {
        return Ok(entry.algebra);
    }
    let alg = if trimmed.starts_with('(') {
        parse_tuple(trimmed)?
    } else {
        parse_dz_lines(text)?
    };
    check_algebra(alg)
}

fn check_algebra(alg: LieAlgebra) -> Result<LieAlgebra, ParseError> {
    let diag = alg.validate();
    if diag.passed() {
        Ok(alg)
    } else {
        Err(ParseError::plain(format!("invalid algebra: {}", diag.failures().join("; "))))
    }
}

fn parse_tuple(text: &str) -> Result<LieAlgebra, ParseError> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    if !body.ends_with(')') {
        return Err(ParseError::at(body.chars().count(), "expected ')' closing the tuple"));
    }
    let inner = &body[1..body.len() - 1];
    let mut structure = Vec::new();
    let mut offset = lead + 1;
    for part in inner.split(',') {
        let f = parse_form_of_degree(part, 2).map_err(|e| shift(e, offset))?;
        structure.push(f);
        offset += part.chars().count() + 1;
    }
    if structure.len() != DIM {
        return Err(ParseError::plain(format!(
            "expected {DIM} entries in the tuple, found {}",
            structure.len()
        )));
    }
    LieAlgebra::new(structure).map_err(|e| ParseError::plain(e.to_string()))
}

fn parse_dz_lines(text: &str) -> Result<LieAlgebra, ParseError> {
    let mut structure: Vec<Option<Form>> = vec![None; DIM];
    for (ln, line) in text.lines().enumerate() {
        let content = strip_comment(line);
        if content.trim().is_empty() {
            continue;
        }
        let (lhs, rhs) = content
            .split_once('=')
            .ok_or_else(|| ParseError::plain("expected 'dz<r> = <form>'").on_line(ln + 1, 0))?;
        let key = lhs.trim();
        let index = match (key.strip_prefix("dz"), key.strip_prefix("de")) {
            (Some(r), _) => r.parse::<usize>().ok().filter(|r| (1..=3).contains(r)).map(|r| r + 4),
            (_, Some(i)) => i.parse::<usize>().ok().filter(|i| (1..=DIM).contains(i)),
            _ => None,
        }
        .ok_or_else(|| ParseError::at(1, format!("unknown differential '{key}'")).on_line(ln + 1, 0))?;
        let f = parse_form_of_degree(rhs, 2).map_err(|e| e.on_line(ln + 1, lhs.chars().count() + 1))?;
        if structure[index - 1].replace(f).is_some() {
            return Err(ParseError::plain(format!("d e{index} given twice")).on_line(ln + 1, 0));
        }
    }
    let structure = structure
        .into_iter()
        .map(|f| f.unwrap_or_else(|| Form::zero(DIM, 2)))
        .collect();
    LieAlgebra::new(structure).map_err(|e| ParseError::plain(e.to_string()))
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

/// Canonical tuple rendering `(d e^1,…,d e^7)`.
pub fn render_algebra(alg: &LieAlgebra) -> String {
    let parts: Vec<String> = alg.structure().iter().map(|f| f.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Canonical rendering of a list of rationals.
pub fn render_rationals(xs: &[Rational]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// A parsed problem file.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFile {
    pub algebra: Option<LieAlgebra>,
    pub gauge: Option<GaugeField>,
    /// `key = value` pairs of the `[options]` section, in file order.
    pub options: Vec<(String, String)>,
}

impl ProblemFile {
    pub fn option(&self, key: &str) -> Option<&str> {
        self.options.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Canonical text; parsing it gives back the same problem.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(a) = &self.algebra {
            out.push_str("[algebra]\n");
            out.push_str(&render_algebra(a));
            out.push('\n');
        }
        if let Some(g) = &self.gauge {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str("[gauge]\n");
            for (r, f) in g.forms().iter().enumerate() {
                out.push_str(&format!("F{} = {f}\n", r + 1));
            }
            out.push_str(&format!("eps = {}\n", render_rationals(g.eps())));
        }
        if !self.options.is_empty() {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str("[options]\n");
            for (k, v) in &self.options {
                out.push_str(&format!("{k} = {v}\n"));
            }
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Algebra,
    Gauge,
    Options,
}

/// Parses a problem file. Errors carry the line number.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut section = Section::None;
    let mut algebra_lines: Vec<(usize, String)> = Vec::new();
    let mut forms: Vec<(usize, Form)> = Vec::new();
    let mut eps: Option<(usize, Vec<Rational>)> = None;
    let mut options = Vec::new();
    let mut seen = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = strip_comment(raw);
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if t.starts_with('[') {
            section = match t {
                "[algebra]" => Section::Algebra,
                "[gauge]" => Section::Gauge,
                "[options]" => Section::Options,
                _ => return Err(ParseError::plain(format!("unknown section {t}")).on_line(ln, 0)),
            };
            if seen.contains(&t.to_string()) {
                return Err(ParseError::plain(format!("section {t} appears twice")).on_line(ln, 0));
            }
            seen.push(t.to_string());
            continue;
        }
        match section {
            Section::None => {
                return Err(ParseError::plain("text before the first section").on_line(ln, 0));
            }
            Section::Algebra => algebra_lines.push((ln, line.to_string())),
            Section::Gauge => {
                let (lhs, rhs) = line
                    .split_once('=')
                    .ok_or_else(|| ParseError::plain("expected 'F<r> = <form>' or 'eps = …'").on_line(ln, 0))?;
                let key = lhs.trim();
                let offset = lhs.chars().count() + 1;
                if key == "eps" {
                    let list = parse_rationals(rhs).map_err(|e| e.on_line(ln, offset))?;
                    eps = Some((ln, list));
                } else if let Some(r) = key.strip_prefix('F').and_then(|r| r.parse::<usize>().ok()) {
                    if r != forms.len() + 1 {
                        return Err(ParseError::plain(format!(
                            "expected F{}, found {key}",
                            forms.len() + 1
                        ))
                        .on_line(ln, 0));
                    }
                    let f = parse_form_of_degree(rhs, 2).map_err(|e| e.on_line(ln, offset))?;
                    forms.push((ln, f));
                } else {
                    return Err(ParseError::plain(format!("unknown gauge key '{key}'")).on_line(ln, 0));
                }
            }
            Section::Options => {
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| ParseError::plain("expected 'key = value'").on_line(ln, 0))?;
                options.push((k.trim().to_string(), v.trim().to_string()));
            }
        }
    }

    let algebra = if algebra_lines.is_empty() {
        None
    } else {
        let first = algebra_lines[0].0;
        let joined: Vec<&str> = algebra_lines.iter().map(|(_, l)| l.as_str()).collect();
        let text = joined.join("\n");
        Some(parse_algebra(&text).map_err(|e| match e.line {
            Some(l) => ParseError {
                line: Some(algebra_lines[l - 1].0),
                ..e
            },
            None => ParseError {
                line: Some(first),
                ..e
            },
        })?)
    };

    let gauge = match (forms.is_empty(), eps) {
        (true, None) => None,
        (_, Some((ln, eps))) => {
            let g = GaugeField::new(forms.into_iter().map(|(_, f)| f).collect(), eps)
                .map_err(|e: HetError| ParseError::plain(e.to_string()).on_line(ln, 0))?;
            Some(g)
        }
        (false, None) => {
            return Err(ParseError::plain("gauge section without an 'eps' line").on_line(forms[0].0, 0));
        }
    };
    Ok(ProblemFile {
        algebra,
        gauge,
        options,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_columns_point_into_the_input() {
        let e = parse_form("e12 + e1x").unwrap_err();
        assert_eq!(e.column, Some(9));
        let e = parse_form("  e11").unwrap_err();
        assert_eq!(e.column, Some(5));
    }
}
