//! Text syntax for polynomials, scalars and matrices.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat | '^(' nat ')')?
//! atom   := var | rational | name '(' args ')' | name | '(' expr ')' | '[' expr (',' expr)+ ']'
//! var    := ('t'|'x'|'y') nat | 'x' nat "'" | 'y' nat "'"
//! ```
//!
//! Commutators are left-normed, and `e^(s)` inside a commutator stands for
//! `s` copies of the entry `e`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebras::{AlgError, MatSC};
use crate::catalog::{lookup, CatalogError, CatalogObject};
use crate::exactlin::Rat;
use crate::freealg::{NCPoly, NCWord};
use crate::supercomm::{Alphabet, SCPoly, ScError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    T,
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var { kind: VarKind, index: u16, primed: bool },
    Num(Rat),
    /// Terms with their signs; the first sign may be negative.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
    Tail(Box<Expr>, u32),
    Commutator(Vec<Expr>),
    Call(String, Vec<i64>),
    Name(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Prime,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Eof,
    Bad(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(s) => write!(f, "`{s}`"),
            Tok::Prime => write!(f, "`'`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBrack => write!(f, "`[`"),
            Tok::RBrack => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Eof => write!(f, "end of input"),
            Tok::Bad(c) => write!(f, "`{c}`"),
        }
    }
}

fn lex(input: &str) -> Vec<(Tok, usize, usize)> {
    let chars: Vec<char> = input.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = (line, col);
        let take = |i: &mut usize, pred: &dyn Fn(char) -> bool| {
            let s = *i;
            while *i < chars.len() && pred(chars[*i]) {
                *i += 1;
            }
            chars[s..*i].iter().collect::<String>()
        };
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            Tok::Ident(take(&mut i, &|c| c.is_ascii_alphanumeric() || c == '_'))
        } else if c.is_ascii_digit() {
            Tok::Num(take(&mut i, &|c| c.is_ascii_digit()))
        } else {
            i += 1;
            match c {
                '\'' => Tok::Prime,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                ',' => Tok::Comma,
                other => Tok::Bad(other),
            }
        };
        col = start.1 + width(&tok);
        out.push((tok, start.0, start.1));
    }
    out.push((Tok::Eof, line, col));
    out
}

fn width(t: &Tok) -> usize {
    match t {
        Tok::Ident(s) | Tok::Num(s) => s.chars().count(),
        _ => 1,
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

const ATOM_START: &[&str] = &["variable", "number", "name", "`(`", "`[`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let (t, line, column) = &self.toks[self.pos];
        ParseError { line: *line, column: *column, expected: expected.iter().map(|s| s.to_string()).collect(), found: t.to_string() }
    }

    fn expect(&mut self, t: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    fn nat(&mut self) -> Result<u32, ParseError> {
        match self.peek().clone() {
            Tok::Num(s) => match s.parse() {
                Ok(v) => {
                    self.bump();
                    Ok(v)
                }
                Err(_) => Err(self.error(&["exponent below 2^32"])),
            },
            _ => Err(self.error(&["natural number"])),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut terms = Vec::new();
        let lead = *self.peek() == Tok::Minus;
        if lead {
            self.bump();
        }
        terms.push((lead, self.term()?));
        loop {
            let neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            terms.push((neg, self.term()?));
        }
        Ok(if terms.len() == 1 && !terms[0].0 { terms.pop().unwrap().1 } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let a = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(a);
        }
        self.bump();
        if *self.peek() == Tok::LParen {
            self.bump();
            let s = self.nat()?;
            self.expect(Tok::RParen, "`)`")?;
            Ok(Expr::Tail(Box::new(a), s))
        } else if matches!(self.peek(), Tok::Num(_)) {
            Ok(Expr::Pow(Box::new(a), self.nat()?))
        } else {
            Err(self.error(&["natural number", "`(`"]))
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Num(d) if d.trim_start_matches('0') != "" => {
                            self.bump();
                            Ok(Expr::Num(Rat::from_str(&format!("{n}/{d}")).expect("digits")))
                        }
                        _ => Err(self.error(&["nonzero denominator"])),
                    }
                } else {
                    Ok(Expr::Num(Rat::from_str(&n).expect("digits")))
                }
            }
            Tok::Ident(s) => {
                if let Some(v) = self.var(&s)? {
                    return Ok(v);
                }
                self.bump();
                if *self.peek() != Tok::LParen {
                    return Ok(Expr::Name(s));
                }
                self.bump();
                let mut args = vec![self.int()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.int()?);
                }
                self.expect(Tok::RParen, "`)`")?;
                Ok(Expr::Call(s, args))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::LBrack => {
                self.bump();
                let mut items = vec![self.expr()?];
                loop {
                    match self.peek() {
                        Tok::Comma => {
                            self.bump();
                            items.push(self.expr()?);
                        }
                        Tok::RBrack if items.len() >= 2 => {
                            self.bump();
                            return Ok(Expr::Commutator(items));
                        }
                        _ if items.len() < 2 => return Err(self.error(&["`,`"])),
                        _ => return Err(self.error(&["`,`", "`]`"])),
                    }
                }
            }
            _ => Err(self.error(ATOM_START)),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = *self.peek() == Tok::Minus;
        if neg {
            self.bump();
        }
        match self.peek().clone() {
            Tok::Num(s) => match s.parse::<i64>() {
                Ok(v) => {
                    self.bump();
                    Ok(if neg { -v } else { v })
                }
                Err(_) => Err(self.error(&["integer argument in range"])),
            },
            _ => Err(self.error(&["integer argument"])),
        }
    }

    /// A variable token such as `t3`, `x1'`; `None` if `s` is a name.
    fn var(&mut self, s: &str) -> Result<Option<Expr>, ParseError> {
        let kind = match s.chars().next() {
            Some('t') => VarKind::T,
            Some('x') => VarKind::X,
            Some('y') => VarKind::Y,
            _ => return Ok(None),
        };
        let digits = &s[1..];
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Ok(None);
        }
        let index = match digits.parse::<u16>() {
            Ok(i) if i > 0 => i,
            _ => return Err(self.error(&["variable index in 1..65535"])),
        };
        self.bump();
        let primed = *self.peek() == Tok::Prime;
        if primed {
            if kind == VarKind::T {
                return Err(self.error(&["`*`", "`+`", "`-`", "`^`", "end of input"]));
            }
            self.bump();
        }
        Ok(Some(Expr::Var { kind, index, primed }))
    }
}

pub fn parse(input: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(input), pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["`+`", "`-`", "`*`", "`^`", "end of input"]));
    }
    Ok(e)
}

fn needs_parens(e: &Expr, inside_product: bool) -> bool {
    match e {
        Expr::Sum(_) => true,
        Expr::Product(_) => inside_product,
        Expr::Num(r) => r.is_negative(),
        _ => false,
    }
}

fn wrap(e: &Expr, paren: bool) -> String {
    if paren {
        format!("({})", render(e))
    } else {
        render(e)
    }
}

pub fn render(e: &Expr) -> String {
    match e {
        Expr::Var { kind, index, primed } => {
            let c = match kind {
                VarKind::T => 't',
                VarKind::X => 'x',
                VarKind::Y => 'y',
            };
            format!("{c}{index}{}", if *primed { "'" } else { "" })
        }
        Expr::Num(r) => r.to_string(),
        Expr::Sum(terms) => {
            let mut s = String::new();
            for (k, (neg, t)) in terms.iter().enumerate() {
                match (k, neg) {
                    (0, true) => s.push('-'),
                    (0, false) => {}
                    (_, true) => s.push_str(" - "),
                    (_, false) => s.push_str(" + "),
                }
                s.push_str(&wrap(t, matches!(t, Expr::Sum(_)) || matches!(t, Expr::Num(r) if r.is_negative())));
            }
            s
        }
        Expr::Product(fs) => fs.iter().map(|f| wrap(f, needs_parens(f, true))).collect::<Vec<_>>().join("*"),
        Expr::Pow(b, n) => format!("{}^{n}", wrap(b, !is_atom(b))),
        Expr::Tail(b, n) => format!("{}^({n})", wrap(b, !is_atom(b))),
        Expr::Commutator(items) => format!("[{}]", items.iter().map(render).collect::<Vec<_>>().join(",")),
        Expr::Call(name, args) => format!("{name}({})", args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")),
        Expr::Name(n) => n.clone(),
    }
}

fn is_atom(e: &Expr) -> bool {
    match e {
        Expr::Var { .. } | Expr::Commutator(_) | Expr::Call(..) | Expr::Name(_) => true,
        Expr::Num(r) => !r.is_negative() && r.is_integer(),
        _ => false,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl FromStr for Expr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Expr, ParseError> {
        parse(s)
    }
}

/// The value of an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Num(Rat),
    Poly(NCPoly),
    Sc(SCPoly),
    Mat(MatSC),
    PolyList(Vec<NCPoly>),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Num(_) => "number",
            Value::Poly(_) => "noncommutative polynomial",
            Value::Sc(_) => "supercommutative polynomial",
            Value::Mat(_) => "matrix",
            Value::PolyList(_) => "list of polynomials",
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Num(r) => r.is_zero(),
            Value::Poly(p) => p.is_zero(),
            Value::Sc(p) => p.is_zero(),
            Value::Mat(m) => m.is_zero(),
            Value::PolyList(l) => l.iter().all(|p| p.is_zero()),
        }
    }

    /// Polynomials in `t_i`; numbers become constants.
    pub fn into_polys(self) -> Result<Vec<NCPoly>, EvalError> {
        match self {
            Value::Poly(p) => Ok(vec![p]),
            Value::PolyList(l) => Ok(l),
            Value::Num(r) => Ok(vec![nc_const(&r)]),
            other => Err(EvalError::Type(format!("expected a polynomial in t, got a {}", other.kind()))),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Num(r) => write!(f, "{r}"),
            Value::Poly(p) => write!(f, "{p}"),
            Value::Sc(p) => write!(f, "{p}"),
            Value::Mat(m) => write!(f, "{m}"),
            Value::PolyList(l) => write!(f, "{}", l.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("; ")),
        }
    }
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("`{0}` has no value: {1}")]
    Undefined(String, String),
    #[error("type error: {0}")]
    Type(String),
    #[error("`e^(s)` is only meaningful as an entry of a commutator")]
    TailOutsideCommutator,
    #[error(transparent)]
    Sc(#[from] ScError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

fn nc_const(r: &Rat) -> NCPoly {
    NCPoly::monomial(NCWord(Default::default()), r.clone())
}

fn mismatch(op: &str, a: &Value, b: &Value) -> EvalError {
    EvalError::Type(format!("cannot {op} a {} and a {}", a.kind(), b.kind()))
}

fn add(a: Value, b: Value) -> Result<Value, EvalError> {
    use Value::*;
    Ok(match (a, b) {
        (Num(x), Num(y)) => Num(&x + &y),
        (Num(c), Poly(p)) | (Poly(p), Num(c)) => Poly(p.add(&nc_const(&c))),
        (Num(c), Sc(p)) | (Sc(p), Num(c)) => Sc(&p + &SCPoly::constant(p.alphabet(), c)),
        (Num(c), Mat(m)) | (Mat(m), Num(c)) => Mat(m.try_add(&MatSC::scalar(m.size(), &SCPoly::constant(m.alphabet(), c)))?),
        (Sc(p), Mat(m)) | (Mat(m), Sc(p)) => Mat(m.try_add(&MatSC::scalar(m.size(), &p))?),
        (Poly(p), Poly(q)) => Poly(p.add(&q)),
        (Sc(p), Sc(q)) => Sc(p.try_add(&q)?),
        (Mat(m), Mat(n)) => Mat(m.try_add(&n)?),
        (a, b) => return Err(mismatch("add", &a, &b)),
    })
}

fn neg(a: Value) -> Result<Value, EvalError> {
    mul(Value::Num(Rat::from_int(-1)), a)
}

fn mul(a: Value, b: Value) -> Result<Value, EvalError> {
    use Value::*;
    Ok(match (a, b) {
        (Num(x), Num(y)) => Num(&x * &y),
        (Num(c), Poly(p)) | (Poly(p), Num(c)) => Poly(p.scale(&c)),
        (Num(c), Sc(p)) | (Sc(p), Num(c)) => Sc(p.scale(&c)),
        (Num(c), Mat(m)) | (Mat(m), Num(c)) => Mat(m.scale(&c)),
        (Num(c), PolyList(l)) | (PolyList(l), Num(c)) => PolyList(l.iter().map(|p| p.scale(&c)).collect()),
        (Sc(p), Mat(m)) => Mat(m.scale_left(&p)),
        (Mat(m), Sc(p)) => Mat(m.map(|x| x * &p)),
        (Poly(p), Poly(q)) => Poly(p.mul(&q)),
        (Sc(p), Sc(q)) => Sc(p.try_mul(&q)?),
        (Mat(m), Mat(n)) => Mat(m.try_mul(&n)?),
        (a, b) => return Err(mismatch("multiply", &a, &b)),
    })
}

fn pow(a: Value, e: u32) -> Result<Value, EvalError> {
    use Value::*;
    Ok(match a {
        Num(x) => Num(x.pow(e)),
        Poly(p) => Poly(p.pow(e)),
        Sc(p) => Sc(p.pow(e)),
        Mat(m) => Mat(m.pow(e)),
        PolyList(_) => return Err(EvalError::Type("cannot raise a list to a power".into())),
    })
}

fn commutator(a: Value, b: Value) -> Result<Value, EvalError> {
    let ab = mul(a.clone(), b.clone())?;
    let ba = mul(b, a)?;
    add(ab, neg(ba)?)
}

fn from_catalog(name: &str, params: &[i64]) -> Result<Value, EvalError> {
    let obj = lookup(name, params)?;
    Ok(match obj.as_ref() {
        CatalogObject::Poly(p) => Value::Poly(p.clone()),
        CatalogObject::PolyList(l) => Value::PolyList(l.clone()),
        CatalogObject::Sc(p) => Value::Sc(p.clone()),
        CatalogObject::Mat(m) => Value::Mat(m.clone()),
        CatalogObject::Undefined(why) => return Err(EvalError::Undefined(name.to_string(), why.clone())),
    })
}

/// Evaluates with `x_i`, `y_i` read in the alphabet of the generic matrices `C1`, `C2`.
pub fn eval(e: &Expr) -> Result<Value, EvalError> {
    match e {
        Expr::Var { kind: VarKind::T, index, .. } => Ok(Value::Poly(NCPoly::var(*index))),
        Expr::Var { kind, index, primed } => {
            let name = format!("{}{index}{}", if *kind == VarKind::X { 'x' } else { 'y' }, if *primed { "'" } else { "" });
            Ok(Value::Sc(SCPoly::var(&Alphabet::default_f(), &name)?))
        }
        Expr::Num(r) => Ok(Value::Num(r.clone())),
        Expr::Sum(terms) => {
            let mut acc = Value::Num(Rat::from_int(0));
            for (n, t) in terms {
                let v = eval(t)?;
                acc = add(acc, if *n { neg(v)? } else { v })?;
            }
            Ok(acc)
        }
        Expr::Product(fs) => {
            let mut acc = eval(&fs[0])?;
            for f in &fs[1..] {
                acc = mul(acc, eval(f)?)?;
            }
            Ok(acc)
        }
        Expr::Pow(b, n) => pow(eval(b)?, *n),
        Expr::Tail(..) => Err(EvalError::TailOutsideCommutator),
        Expr::Commutator(items) => {
            let mut entries = Vec::new();
            for it in items {
                match it {
                    Expr::Tail(b, s) => {
                        let v = eval(b)?;
                        entries.extend(std::iter::repeat(v).take(*s as usize));
                    }
                    other => entries.push(eval(other)?),
                }
            }
            let mut it = entries.into_iter();
            let mut acc = it.next().expect("at least two entries");
            for v in it {
                acc = commutator(acc, v)?;
            }
            Ok(acc)
        }
        Expr::Call(name, args) => from_catalog(name, args),
        Expr::Name(name) => from_catalog(name, &[]),
    }
}

pub fn eval_str(s: &str) -> Result<Value, EvalError> {
    eval(&parse(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{dkl, hall, phi_p, phi_pq, standard};
    use crate::freealg::{commutator as nc_comm, with_tail};
    use proptest::prelude::*;

    fn t(i: u16) -> NCPoly {
        NCPoly::var(i)
    }

    #[test]
    fn hall_notation() {
        let e = parse("[[t1,t2]^2,t1]").unwrap();
        assert_eq!(eval(&e).unwrap(), Value::Poly(hall()));
        assert_eq!(render(&e), "[[t1,t2]^2,t1]");
    }

    #[test]
    fn repeated_tail() {
        let v = eval_str("[t1,t2,t1^(3)]").unwrap();
        let expect = with_tail(&nc_comm(&t(1), &t(2)), &t(1), 3);
        assert_eq!(v, Value::Poly(expect.clone()));
        assert_eq!(expect.degree(), Some(5));
        assert!(matches!(eval_str("t1^(2)"), Err(EvalError::TailOutsideCommutator)));
    }

    #[test]
    fn catalog_names() {
        assert_eq!(eval_str("s4").unwrap(), Value::Poly(standard(4)));
        assert_eq!(eval_str("dkl(2,1)").unwrap(), Value::Poly(dkl(2, 1)));
        assert!(matches!(eval_str("nosuch"), Err(EvalError::Catalog(_))));
    }

    #[test]
    fn error_positions() {
        let e = parse("[t1,\n  t2 +]").unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
        assert!(e.expected.contains(&"`[`".to_string()));
        let e = parse("[t1]").unwrap_err();
        assert_eq!((e.line, e.column, e.expected.clone()), (1, 4, vec!["`,`".to_string()]));
        let e = parse("t1 t2").unwrap_err();
        assert_eq!(e.column, 4);
        assert!(parse("t1'").is_err());
        assert!(parse("1/0").is_err());
    }

    #[test]
    fn scalars_and_matrices() {
        let v = eval_str("(x1' - x1)*y1 + 2").unwrap();
        assert!(matches!(v, Value::Sc(_)));
        assert!(eval_str("[C1,C2]^3").unwrap().is_zero());
        assert!(eval_str("y1*y1").unwrap().is_zero());
        assert!(eval_str("t1 + C1").is_err());
    }

    #[test]
    fn whitespace_normalizes() {
        let e = parse(" - 1/2 * t1*( t2 + t3 ) ^ 2 ").unwrap();
        assert_eq!(render(&e), "-1/2*t1*(t2 + t3)^2");
        assert_eq!(parse(&render(&e)).unwrap(), e);
    }

    #[test]
    fn catalog_polynomials_round_trip() {
        let mut polys = vec![hall(), standard(4), standard(5)];
        for s in 0..=2 {
            polys.extend(phi_p(2, s));
            polys.extend(phi_p(4, s));
            polys.extend(phi_pq(2, 2, s));
            polys.push(dkl(2, s));
        }
        for p in polys {
            let text = p.to_string();
            let e = parse(&text).unwrap();
            assert_eq!(parse(&render(&e)).unwrap(), e);
            assert_eq!(eval(&e).unwrap(), Value::Poly(p));
        }
    }

    fn leaf() -> impl Strategy<Value = Expr> {
        prop_oneof![
            (0u8..3, 1u16..12, any::<bool>()).prop_map(|(k, index, p)| {
                let kind = [VarKind::T, VarKind::X, VarKind::Y][k as usize];
                Expr::Var { kind, index, primed: p && kind != VarKind::T }
            }),
            (0i64..50, 1i64..6).prop_map(|(a, b)| Expr::Num(Rat::new(a, b))),
            Just(Expr::Name("s4".into())),
            (0i64..4, 0i64..4).prop_map(|(k, l)| Expr::Call("dkl".into(), vec![k, l])),
        ]
    }

    fn canonical() -> impl Strategy<Value = Expr> {
        leaf().prop_recursive(4, 24, 4, |inner| {
            prop_oneof![
                proptest::collection::vec((any::<bool>(), inner.clone()), 1..4).prop_filter_map("single positive term", |ts| {
                    (ts.len() > 1 || ts[0].0).then_some(Expr::Sum(ts))
                }),
                proptest::collection::vec(inner.clone(), 2..4).prop_map(Expr::Product),
                (inner.clone(), 0u32..5).prop_map(|(b, e)| Expr::Pow(Box::new(b), e)),
                (inner.clone(), 0u32..4).prop_map(|(b, e)| Expr::Tail(Box::new(b), e)),
                proptest::collection::vec(inner, 2..4).prop_map(Expr::Commutator),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_render(e in canonical()) {
            let text = render(&e);
            prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
        }
    }
}
