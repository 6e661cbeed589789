//! Text grammar for polynomials, and the document format for ideals and maps.
//!
//! Expressions use identifiers, integers, `+ - * ^` and parentheses. Division
//! `/` is accepted only by nonzero constants so that rational coefficients
//! print and re-parse. Errors carry 1-based line and column positions.
//!
//! A document looks like
//!
//! ```text
//! ideal
//! field: prime 31991
//! variables: x, y, z
//! order: grevlex
//! generators:
//!   x*y - z^2,
//!   x^2
//! ```
//!
//! Maps use the header `map`, `source:` and `target:` instead of `variables:`,
//! and `forms:` instead of `generators:`. Blank lines and lines starting with
//! `#` are ignored.

use std::fmt::Write as _;

use num_bigint::BigInt;

use super::field::{Field, FieldSpec};
use super::order::MonomialOrder;
use super::poly::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn tokenize(src: &str, line0: usize, col0: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut col) = (line0, col0);
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), line: tl, col: tc });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: tl, col: tc });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            other => return Err(parse_err(tl, tc, format!("unexpected character `{other}`"))),
        };
        out.push(Token { tok, line: tl, col: tc });
        col += 1;
        i += 1;
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser<'a, F: Field> {
    ring: &'a Ring<F>,
    toks: Vec<Token>,
    pos: usize,
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        let t = self.bump();
        if t.tok == tok {
            Ok(())
        } else {
            Err(parse_err(t.line, t.col, format!("expected {what}, found {}", describe(&t.tok))))
        }
    }

    fn expr(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    let t = self.bump();
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(parse_err(t.line, t.col, "division is only allowed by a nonzero constant"));
                    }
                    let inv = self.ring.field().inv(d.coeff(0)).expect("nonzero");
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                return Ok(-&self.factor()?);
            }
            Tok::Plus => {
                self.bump();
                return self.factor();
            }
            _ => {}
        }
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let t = self.bump();
            let Tok::Int(k) = &t.tok else {
                return Err(parse_err(t.line, t.col, format!("expected exponent, found {}", describe(&t.tok))));
            };
            let k: u32 = k
                .try_into()
                .ok()
                .filter(|&k: &u32| k <= 255)
                .ok_or_else(|| parse_err(t.line, t.col, "exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<F>> {
        let t = self.bump();
        match &t.tok {
            Tok::Int(n) => Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(n))),
            Tok::Ident(name) => match self.ring.var_index(name) {
                Some(i) => Ok(self.ring.var(i)),
                None => Err(Error::UnknownVariable { name: name.clone(), line: t.line, column: t.col }),
            },
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            other => Err(parse_err(t.line, t.col, format!("expected a term, found {}", describe(other)))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses one polynomial expression in `ring`.
pub fn parse_polynomial<F: Field>(ring: &Ring<F>, src: &str) -> Result<Polynomial<F>> {
    let mut p = Parser { ring, toks: tokenize(src, 1, 1)?, pos: 0 };
    let e = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(parse_err(t.line, t.col, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(e)
}

/// Parses a comma-separated list of polynomials starting at (`line`, `col`).
fn parse_list<F: Field>(ring: &Ring<F>, src: &str, line: usize, col: usize) -> Result<Vec<Polynomial<F>>> {
    let mut p = Parser { ring, toks: tokenize(src, line, col)?, pos: 0 };
    let mut out = Vec::new();
    if p.peek().tok == Tok::End {
        return Ok(out);
    }
    loop {
        out.push(p.expr()?);
        let t = p.bump();
        match t.tok {
            Tok::Comma => {}
            Tok::End => return Ok(out),
            other => return Err(parse_err(t.line, t.col, format!("expected `,` or end, found {}", describe(&other)))),
        }
    }
}

/// Canonical text of a polynomial; parsing it back gives the same polynomial.
pub fn format_polynomial<F: Field>(p: &Polynomial<F>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let field = p.field();
    let names = p.ring().names();
    let mut out = String::new();
    for (i, (c, e)) in p.terms().enumerate() {
        let s = field.format(c);
        let (neg, abs) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        };
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let mut mono = String::new();
        for (v, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if !mono.is_empty() {
                mono.push('*');
            }
            mono.push_str(&names[v]);
            if k > 1 {
                let _ = write!(mono, "^{k}");
            }
        }
        if mono.is_empty() {
            out.push_str(&abs);
        } else if abs == "1" {
            out.push_str(&mono);
        } else {
            let _ = write!(out, "{abs}*{mono}");
        }
    }
    out
}

pub fn parse_order(src: &str) -> Result<MonomialOrder> {
    let s = src.trim();
    if s == "grevlex" {
        return Ok(MonomialOrder::grevlex());
    }
    if s == "lex" {
        return Ok(MonomialOrder::Lex);
    }
    if let Some(inner) = s.strip_prefix("grevlex(").and_then(|r| r.strip_suffix(')')) {
        let w: std::result::Result<Vec<u32>, _> = inner.split(',').map(|x| x.trim().parse::<u32>()).collect();
        return w
            .map(MonomialOrder::weighted_grevlex)
            .map_err(|_| Error::InvalidArgument(format!("bad weight list in order `{s}`")));
    }
    if let Some(inner) = s.strip_prefix("block(").and_then(|r| r.strip_suffix(')')) {
        // split at the top-level semicolons
        let mut parts = Vec::new();
        let (mut depth, mut start) = (0i32, 0usize);
        for (i, ch) in inner.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ';' if depth == 0 => {
                    parts.push(&inner[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        parts.push(&inner[start..]);
        if parts.len() == 3 {
            let split = parts[0]
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad block split in order `{s}`")))?;
            return Ok(MonomialOrder::Block {
                split,
                first: Box::new(parse_order(parts[1])?),
                second: Box::new(parse_order(parts[2])?),
            });
        }
    }
    Err(Error::InvalidArgument(format!("unknown monomial order `{s}`")))
}

pub fn parse_field(src: &str) -> Result<FieldSpec> {
    let s = src.trim();
    if s == "rational" {
        return Ok(FieldSpec::Rational);
    }
    if let Some(p) = s.strip_prefix("prime") {
        let p: u32 = p
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad prime in field `{s}`")))?;
        super::field::PrimeField::new(p)?;
        return Ok(FieldSpec::Prime(p));
    }
    Err(Error::InvalidArgument(format!("unknown field `{s}`")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocumentKind {
    Ideal,
    Map,
}

/// A parsed document whose polynomial bodies are read once a field is chosen.
#[derive(Clone, Debug)]
pub struct Document {
    pub kind: DocumentKind,
    pub field: FieldSpec,
    /// Variables of the ideal's ring, or of the map's source.
    pub variables: Vec<String>,
    pub order: MonomialOrder,
    pub grading: Option<Vec<u32>>,
    /// Target variables for maps.
    pub target: Option<Vec<String>>,
    body: String,
    body_line: usize,
    body_col: usize,
}

fn split_names(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

impl Document {
    pub fn parse(src: &str) -> Result<Document> {
        let mut kind = None;
        let mut field = None;
        let mut variables = None;
        let mut target = None;
        let mut order = MonomialOrder::grevlex();
        let mut grading = None;
        let lines: Vec<&str> = src.lines().collect();
        let mut idx = 0;
        while idx < lines.len() {
            let raw = lines[idx];
            let lineno = idx + 1;
            idx += 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if kind.is_none() {
                kind = Some(match line {
                    "ideal" => DocumentKind::Ideal,
                    "map" => DocumentKind::Map,
                    _ => return Err(parse_err(lineno, 1, "document must start with `ideal` or `map`")),
                });
                continue;
            }
            let Some((key, value)) = line.split_once(':') else {
                return Err(parse_err(lineno, 1, format!("expected `key: value`, found `{line}`")));
            };
            let key = key.trim();
            let to_pos = |e: Error| match e {
                Error::InvalidArgument(m) => parse_err(lineno, 1, m),
                other => other,
            };
            match key {
                "field" => field = Some(parse_field(value).map_err(to_pos)?),
                "variables" | "source" => variables = Some(split_names(value)),
                "target" => target = Some(split_names(value)),
                "order" => order = parse_order(value).map_err(to_pos)?,
                "grading" => {
                    let g: std::result::Result<Vec<u32>, _> =
                        value.split(',').map(|x| x.trim().parse::<u32>()).collect();
                    grading = Some(g.map_err(|_| parse_err(lineno, 1, "bad grading list"))?);
                }
                "generators" | "forms" => {
                    let kind = kind.unwrap();
                    let expected = if kind == DocumentKind::Ideal { "generators" } else { "forms" };
                    if key != expected {
                        return Err(parse_err(lineno, 1, format!("expected `{expected}:` in this document")));
                    }
                    let col = raw.find(':').unwrap() + 2;
                    let mut body = value.to_string();
                    for rest in &lines[idx..] {
                        body.push('\n');
                        if !rest.trim_start().starts_with('#') {
                            body.push_str(rest);
                        }
                    }
                    let field = field.ok_or_else(|| parse_err(lineno, 1, "missing `field:` line"))?;
                    let variables = variables.ok_or_else(|| parse_err(lineno, 1, "missing variable list"))?;
                    if kind == DocumentKind::Map && target.is_none() {
                        return Err(parse_err(lineno, 1, "map document needs a `target:` line"));
                    }
                    return Ok(Document {
                        kind,
                        field,
                        variables,
                        order,
                        grading,
                        target,
                        body,
                        body_line: lineno,
                        body_col: col,
                    });
                }
                other => return Err(parse_err(lineno, 1, format!("unknown key `{other}`"))),
            }
        }
        Err(parse_err(lines.len().max(1), 1, "missing `generators:` or `forms:` section"))
    }

    /// The ring of the ideal, or the map's source ring.
    pub fn ring<F: Field>(&self, field: F) -> Result<Ring<F>> {
        self.check_field(&field)?;
        let n = self.variables.len();
        Ring::with_grading(
            field,
            self.variables.clone(),
            self.order.clone(),
            self.grading.clone().unwrap_or_else(|| vec![1; n]),
        )
    }

    /// The ring over an arbitrary field; integer coefficients of a rational
    /// document then reduce into that field.
    pub fn ring_over<F: Field>(&self, field: F) -> Result<Ring<F>> {
        let n = self.variables.len();
        Ring::with_grading(
            field,
            self.variables.clone(),
            self.order.clone(),
            self.grading.clone().unwrap_or_else(|| vec![1; n]),
        )
    }

    pub fn target_ring_over<F: Field>(&self, field: F) -> Result<Option<Ring<F>>> {
        match &self.target {
            None => Ok(None),
            Some(t) => Ring::new(field, t.clone(), MonomialOrder::grevlex()).map(Some),
        }
    }

    pub fn target_ring<F: Field>(&self, field: F) -> Result<Option<Ring<F>>> {
        self.check_field(&field)?;
        match &self.target {
            None => Ok(None),
            Some(t) => Ring::new(field, t.clone(), MonomialOrder::grevlex()).map(Some),
        }
    }

    fn check_field<F: Field>(&self, field: &F) -> Result<()> {
        if field.spec() != self.field {
            return Err(Error::InvalidArgument(format!(
                "document is over {} but {} was requested",
                self.field,
                field.spec()
            )));
        }
        Ok(())
    }

    /// Parses the generator or form list in `ring`.
    pub fn polynomials<F: Field>(&self, ring: &Ring<F>) -> Result<Vec<Polynomial<F>>> {
        parse_list(ring, &self.body, self.body_line, self.body_col)
    }
}

/// Writes a document; `target` is given for maps.
pub fn write_document<F: Field>(
    kind: DocumentKind,
    ring: &Ring<F>,
    target: Option<&Ring<F>>,
    polys: &[Polynomial<F>],
) -> String {
    let mut out = String::new();
    out.push_str(match kind {
        DocumentKind::Ideal => "ideal\n",
        DocumentKind::Map => "map\n",
    });
    let _ = writeln!(out, "field: {}", ring.field().spec());
    match kind {
        DocumentKind::Ideal => {
            let _ = writeln!(out, "variables: {}", ring.names().join(", "));
        }
        DocumentKind::Map => {
            let _ = writeln!(out, "source: {}", ring.names().join(", "));
            let t = target.expect("map documents need a target ring");
            let _ = writeln!(out, "target: {}", t.names().join(", "));
        }
    }
    let _ = writeln!(out, "order: {}", ring.order());
    if !ring.is_standard_graded() {
        let g: Vec<String> = ring.grading().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "grading: {}", g.join(", "));
    }
    out.push_str(match kind {
        DocumentKind::Ideal => "generators:\n",
        DocumentKind::Map => "forms:\n",
    });
    for (i, p) in polys.iter().enumerate() {
        let sep = if i + 1 < polys.len() { "," } else { "" };
        let _ = writeln!(out, "  {}{sep}", format_polynomial(p));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, RationalField};

    fn p11() -> Ring<PrimeField> {
        Ring::indexed(PrimeField::new(31991).unwrap(), "x", 12)
    }

    #[test]
    fn first_form_of_the_p11_map() {
        let r = p11();
        let f = parse_polynomial(&r, "x6*x10-x5*x11").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.homogeneous_degree(), Some(2));
        assert_eq!(format_polynomial(&f), "x6*x10-x5*x11");
    }

    #[test]
    fn unknown_variable_is_positioned() {
        let r = Ring::from_names(PrimeField::new(113).unwrap(), &["x0"]).unwrap();
        let e = parse_polynomial(&r, "x0+y").unwrap_err();
        assert_eq!(e, Error::UnknownVariable { name: "y".into(), line: 1, column: 4 });
    }

    #[test]
    fn syntax_errors_are_positioned() {
        let r = p11();
        match parse_polynomial(&r, "x0*(x1+") {
            Err(Error::Parse { line: 1, column: 8, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_polynomial(&r, "x0 x1"), Err(Error::Parse { column: 4, .. })));
        assert!(matches!(parse_polynomial(&r, "x0/x1"), Err(Error::Parse { .. })));
    }

    #[test]
    fn powers_and_signs() {
        let r = Ring::from_names(PrimeField::new(113).unwrap(), &["x", "y"]).unwrap();
        let f = parse_polynomial(&r, "-(x-y)^2 + 3*x*y").unwrap();
        assert_eq!(format_polynomial(&f), "-x^2+5*x*y-y^2");
        assert_eq!(parse_polynomial(&r, "x*-y").unwrap(), parse_polynomial(&r, "-x*y").unwrap());
        // 112 is printed as the symmetric residue -1
        assert_eq!(format_polynomial(&parse_polynomial(&r, "112*x").unwrap()), "-x");
    }

    #[test]
    fn rational_coefficients_round_trip() {
        let r = Ring::from_names(RationalField, &["x", "y"]).unwrap();
        let f = parse_polynomial(&r, "x/2 - 3*y/4 + 7").unwrap();
        let s = format_polynomial(&f);
        assert_eq!(s, "1/2*x-3/4*y+7");
        assert_eq!(parse_polynomial(&r, &s).unwrap(), f);
    }

    #[test]
    fn orders_round_trip() {
        for s in ["grevlex", "lex", "grevlex(1,2,3)", "block(2; grevlex; block(1; lex; grevlex))"] {
            assert_eq!(parse_order(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn document_round_trip() {
        let src = "ideal\nfield: prime 113\nvariables: x, y, z\norder: grevlex\ngenerators:\n  x*y-z^2,\n  x^2\n";
        let doc = Document::parse(src).unwrap();
        let ring = doc.ring(PrimeField::new(113).unwrap()).unwrap();
        let gens = doc.polynomials(&ring).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(write_document(DocumentKind::Ideal, &ring, None, &gens), src);
    }

    #[test]
    fn document_errors_point_into_the_body() {
        let src = "ideal\nfield: prime 113\nvariables: x, y\ngenerators:\n  x*y,\n  x+w\n";
        let doc = Document::parse(src).unwrap();
        let ring = doc.ring(PrimeField::new(113).unwrap()).unwrap();
        assert_eq!(
            doc.polynomials(&ring).unwrap_err(),
            Error::UnknownVariable { name: "w".into(), line: 6, column: 5 }
        );
    }
}
