//! Text syntax for polynomials, multivectors and 1-forms.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/\') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'i' | z0..z3 | zb0..zb3
//!         | d0..d3 | db0..db3 | dz0..dz3 | '(' expr ')'
//! ```
//!
//! `*` multiplies by a function; `/\` is the wedge product. Columns in
//! errors are 1-based character positions.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::foliation::OneForm;
use crate::multivector::MVec;
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Wedge,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Wedge => "`/\\`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn syntax(column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        column,
        message: message.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((Tok::Ident(chars[start..k].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '/' if chars.get(k + 1) == Some(&'\\') => {
                k += 1;
                Tok::Wedge
            }
            '/' => Tok::Slash,
            _ => return Err(syntax(col, format!("unexpected character `{c}`"))),
        };
        k += 1;
        out.push((tok, col));
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Value {
    Field(MVec),
    Form([Poly; 4]),
}

impl Value {
    fn function(p: Poly) -> Value {
        Value::Field(MVec::function(p))
    }

    fn as_function(&self) -> Option<Poly> {
        match self {
            Value::Field(m) if m.grade() == 0 => Some(m.coeff_of(&[])),
            _ => None,
        }
    }

    fn kind(&self) -> String {
        match self {
            Value::Field(m) => format!("a grade-{} multivector", m.grade()),
            Value::Form(_) => "a 1-form".into(),
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(acc),
            };
            let (_, col) = self.bump();
            let rhs = self.term()?;
            acc = add(acc, rhs, negate, col)?;
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            let wedge = match self.peek() {
                Tok::Star => false,
                Tok::Wedge => true,
                _ => return Ok(acc),
            };
            let (_, col) = self.bump();
            let rhs = self.unary()?;
            acc = multiply(acc, rhs, wedge, col)?;
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let v = self.unary()?;
            return Ok(negate(v));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value> {
        let base_col = self.col();
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let col = self.col();
        let e = match self.bump().0 {
            Tok::Int(n) => u32::try_from(&n)
                .ok()
                .filter(|&e| e > 0)
                .ok_or_else(|| syntax(col, "exponent must be a positive integer"))?,
            t => return Err(syntax(col, format!("expected an exponent, found {}", describe(&t)))),
        };
        let p = base
            .as_function()
            .ok_or_else(|| syntax(base_col, format!("cannot raise {} to a power", base.kind())))?;
        Ok(Value::function(p.pow(e)))
    }

    fn atom(&mut self) -> Result<Value> {
        let (tok, col) = self.bump();
        match tok {
            Tok::Int(n) => {
                let mut q = BigRational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let dcol = self.col();
                    match self.bump().0 {
                        Tok::Int(d) if d != BigInt::from(0) => q /= BigRational::from_integer(d),
                        Tok::Int(_) => return Err(syntax(dcol, "zero denominator")),
                        t => return Err(syntax(dcol, format!("expected a denominator, found {}", describe(&t)))),
                    }
                }
                Ok(Value::function(Poly::constant(Scalar::from(q))))
            }
            Tok::Ident(name) => ident(&name, col),
            Tok::LParen => {
                let v = self.expr()?;
                let ccol = self.col();
                match self.bump().0 {
                    Tok::RParen => Ok(v),
                    t => Err(syntax(ccol, format!("expected `)`, found {}", describe(&t)))),
                }
            }
            t => Err(syntax(col, format!("expected a value, found {}", describe(&t)))),
        }
    }
}

fn index_suffix(name: &str, prefix: &str) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    match rest {
        "0" => Some(0),
        "1" => Some(1),
        "2" => Some(2),
        "3" => Some(3),
        _ => None,
    }
}

fn ident(name: &str, col: usize) -> Result<Value> {
    if name == "i" {
        return Ok(Value::function(Poly::constant(Scalar::i())));
    }
    // longest prefixes first so `zb0` is not read as `z` + `b0`
    if let Some(k) = index_suffix(name, "zb") {
        return Ok(Value::function(Poly::zb(k)));
    }
    if let Some(k) = index_suffix(name, "z") {
        return Ok(Value::function(Poly::z(k)));
    }
    if let Some(k) = index_suffix(name, "dz") {
        let mut f: [Poly; 4] = Default::default();
        f[k] = Poly::one();
        return Ok(Value::Form(f));
    }
    if let Some(k) = index_suffix(name, "db") {
        return Ok(Value::Field(MVec::partial(4 + k)));
    }
    if let Some(k) = index_suffix(name, "d") {
        return Ok(Value::Field(MVec::partial(k)));
    }
    Err(Error::UnknownIdentifier {
        column: col,
        name: name.to_string(),
    })
}

fn negate(v: Value) -> Value {
    match v {
        Value::Field(m) => Value::Field(-m),
        Value::Form(f) => Value::Form(f.map(|p| -p)),
    }
}

fn add(a: Value, b: Value, subtract: bool, col: usize) -> Result<Value> {
    let b = if subtract { negate(b) } else { b };
    match (a, b) {
        (Value::Field(x), Value::Field(y)) => {
            if x.grade() == y.grade() {
                Ok(Value::Field(&x + &y))
            } else if y.is_zero() {
                Ok(Value::Field(x))
            } else if x.is_zero() {
                Ok(Value::Field(y))
            } else {
                Err(syntax(
                    col,
                    format!("cannot add grades {} and {}", x.grade(), y.grade()),
                ))
            }
        }
        (Value::Form(x), Value::Form(y)) => Ok(Value::Form(std::array::from_fn(|i| &x[i] + &y[i]))),
        (Value::Form(x), Value::Field(y)) | (Value::Field(y), Value::Form(x)) if y.is_zero() => {
            Ok(Value::Form(x))
        }
        (a, b) => Err(syntax(col, format!("cannot add {} and {}", a.kind(), b.kind()))),
    }
}

fn multiply(a: Value, b: Value, wedge: bool, col: usize) -> Result<Value> {
    match (a, b) {
        (Value::Field(x), Value::Field(y)) => {
            if !wedge && x.grade() > 0 && y.grade() > 0 {
                return Err(syntax(col, "use `/\\` to wedge multivectors"));
            }
            Ok(Value::Field(x.wedge(&y)))
        }
        (Value::Form(f), Value::Field(g)) | (Value::Field(g), Value::Form(f)) if !wedge && g.grade() == 0 => {
            let p = g.coeff_of(&[]);
            Ok(Value::Form(f.map(|c| &c * &p)))
        }
        (a, b) => Err(syntax(
            col,
            format!("cannot multiply {} by {}", a.kind(), b.kind()),
        )),
    }
}

fn parse_value(src: &str) -> Result<Value> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let v = p.expr()?;
    match p.peek() {
        Tok::End => Ok(v),
        t => Err(syntax(p.col(), format!("unexpected {}", describe(t)))),
    }
}

/// Parses a multivector. A bare polynomial gives a grade-0 value.
pub fn parse_mvec(src: &str) -> Result<MVec> {
    match parse_value(src)? {
        Value::Field(m) => Ok(m),
        Value::Form(_) => Err(syntax(1, "expected a multivector, found a 1-form")),
    }
}

/// Parses a multivector of a known grade; a bare `0` takes that grade.
pub fn parse_mvec_of_grade(src: &str, grade: usize) -> Result<MVec> {
    let m = parse_mvec(src)?;
    if m.is_zero() {
        return Ok(MVec::zero(grade));
    }
    if m.grade() != grade {
        return Err(Error::GradeMismatch {
            expected: grade,
            got: m.grade(),
        });
    }
    Ok(m)
}

pub fn parse_poly(src: &str) -> Result<Poly> {
    let m = parse_mvec(src)?;
    if m.grade() != 0 {
        return Err(syntax(1, format!("expected a polynomial, found grade {}", m.grade())));
    }
    Ok(m.coeff_of(&[]))
}

/// Parses a 1-form such as `z1*dz0 - z0*dz1`. The literal `0` is accepted.
pub fn parse_form(src: &str) -> Result<OneForm> {
    match parse_value(src)? {
        Value::Form(f) => Ok(OneForm::new(f)),
        Value::Field(m) if m.is_zero() => Ok(OneForm::zero()),
        Value::Field(m) => Err(syntax(
            1,
            format!("expected a 1-form, found a grade-{} multivector", m.grade()),
        )),
    }
}
