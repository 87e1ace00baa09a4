//! Expression syntax shared by polynomials, element expressions and
//! differential polynomials.
//!
//! ```text
//! expr    := ['-'|'+'] term (('+'|'-') term)*
//! term    := factor (('*'|'/') factor)*
//! factor  := primary ('^' ['-'] integer)?
//! primary := number | 'L'k | 'Z' | 'g' | 'y' '\''* | 'y[' k ']' | '$'k
//!          | ident | ident '(' expr (',' expr)* ')' | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::mpoly::{MPoly, Var};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigRational),
    Tag(u32),
    Z,
    Gamma,
    /// `y` differentiated `k` times.
    Y(u32),
    /// `$k` placeholder (1-based).
    Slot(u32),
    Ident(String),
    Call(String, Vec<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Slot(u32),
    Prime,
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, at: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col0 + at + 1,
            message: msg.into(),
        }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize)>> {
        let mut out = Vec::new();
        loop {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            let start = self.pos;
            let Some(&c) = self.src.get(self.pos) else {
                out.push((Tok::End, start));
                return Ok(out);
            };
            let tok = if c.is_ascii_digit() {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Tok::Num(s.parse().unwrap())
            } else if c.is_ascii_alphabetic() || c == b'_' {
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric()
                        || self.src[self.pos] == b'_'
                        || self.src[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                Tok::Ident(String::from_utf8(self.src[start..self.pos].to_vec()).unwrap())
            } else if c == b'$' {
                self.pos += 1;
                let s = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if s == self.pos {
                    return Err(self.err(start, "expected digits after `$`"));
                }
                let k: u32 = std::str::from_utf8(&self.src[s..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.err(start, "placeholder index too large"))?;
                if k == 0 {
                    return Err(self.err(start, "placeholders start at $1"));
                }
                Tok::Slot(k)
            } else if c == b'\'' {
                self.pos += 1;
                Tok::Prime
            } else if b"+-*/^(),[]".contains(&c) {
                self.pos += 1;
                Tok::Op(c as char)
            } else {
                let ch = std::str::from_utf8(&self.src[start..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .unwrap_or('?');
                return Err(self.err(start, format!("unexpected character `{}`", ch)));
            };
            out.push((tok, start));
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    line: usize,
    col0: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn at(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if t != Tok::End {
            self.i += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col0 + self.at() + 1,
            message: msg.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Op(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = match self.peek() {
            Tok::Op('-') => {
                self.bump();
                Expr::Neg(Box::new(self.term()?))
            }
            Tok::Op('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Op('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Op('/') => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        let neg = if *self.peek() == Tok::Op('-') {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Tok::Num(n) => {
                let e: i64 = n
                    .try_into()
                    .map_err(|_| self.err("exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
            }
            _ => Err(self.err("expected integer exponent")),
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.bump() {
            Tok::Num(n) => Ok(Expr::Num(BigRational::from_integer(n))),
            Tok::Slot(k) => Ok(Expr::Slot(k)),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => self.ident(name),
            Tok::End => Err(self.err("unexpected end of input")),
            t => {
                self.i -= 1;
                Err(self.err(format!("unexpected {}", describe(&t))))
            }
        }
    }

    fn ident(&mut self, name: String) -> Result<Expr> {
        if name == "Z" {
            return Ok(Expr::Z);
        }
        if name == "g" {
            return Ok(Expr::Gamma);
        }
        if name == "y" {
            if *self.peek() == Tok::Op('[') {
                self.bump();
                let k = match self.bump() {
                    Tok::Num(n) => u32::try_from(n).map_err(|_| self.err("order too large"))?,
                    _ => return Err(self.err("expected derivative order")),
                };
                self.expect(']')?;
                return Ok(Expr::Y(k));
            }
            let mut k = 0;
            while *self.peek() == Tok::Prime {
                self.bump();
                k += 1;
            }
            return Ok(Expr::Y(k));
        }
        if let Some(rest) = name.strip_prefix('L') {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                let k: u32 = rest.parse().map_err(|_| self.err("tag index too large"))?;
                if k >= 1 << 31 {
                    return Err(self.err("tag index too large"));
                }
                return Ok(Expr::Tag(k));
            }
        }
        if *self.peek() == Tok::Op('(') {
            self.bump();
            let mut args = vec![self.expr()?];
            while *self.peek() == Tok::Op(',') {
                self.bump();
                args.push(self.expr()?);
            }
            self.expect(')')?;
            return Ok(Expr::Call(name, args));
        }
        Ok(Expr::Ident(name))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number `{}`", n),
        Tok::Ident(s) => format!("identifier `{}`", s),
        Tok::Slot(k) => format!("placeholder `${}`", k),
        Tok::Prime => "`'`".into(),
        Tok::Op(c) => format!("`{}`", c),
        Tok::End => "end of input".into(),
    }
}

/// Parse `src`, reporting positions as `line` and `col0 + offset + 1`.
pub fn parse_expr_at(src: &str, line: usize, col0: usize) -> Result<Expr> {
    let toks = Lexer {
        src: src.as_bytes(),
        pos: 0,
        line,
        col0,
    }
    .tokens()?;
    let mut p = Parser {
        toks,
        i: 0,
        line,
        col0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.err(format!("unexpected {}", describe(p.peek()))));
    }
    Ok(e)
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    parse_expr_at(src, 1, 0)
}

/// Convert to a polynomial over ℚ. Division is allowed by nonzero constants
/// only.
pub fn expr_to_mpoly(e: &Expr) -> std::result::Result<MPoly, String> {
    Ok(match e {
        Expr::Num(q) => MPoly::constant(q.clone()),
        Expr::Tag(k) => MPoly::var(Var::tag(*k)),
        Expr::Z => MPoly::var(Var::Z),
        Expr::Gamma => MPoly::var(Var::GAMMA),
        Expr::Y(_) => return Err("`y` is not allowed in a polynomial".into()),
        Expr::Slot(k) => return Err(format!("placeholder `${}` is not allowed here", k)),
        Expr::Ident(s) => return Err(format!("unknown symbol `{}`", s)),
        Expr::Call(f, _) => return Err(format!("function `{}` is not allowed in a polynomial", f)),
        Expr::Neg(a) => expr_to_mpoly(a)?.neg_ref(),
        Expr::Add(a, b) => &expr_to_mpoly(a)? + &expr_to_mpoly(b)?,
        Expr::Sub(a, b) => &expr_to_mpoly(a)? - &expr_to_mpoly(b)?,
        Expr::Mul(a, b) => &expr_to_mpoly(a)? * &expr_to_mpoly(b)?,
        Expr::Div(a, b) => {
            let d = expr_to_mpoly(b)?;
            match d.as_constant() {
                Some(q) if !q.is_zero() => expr_to_mpoly(a)?.scale(&q.recip()),
                Some(_) => return Err("division by zero".into()),
                None => return Err("division by a non-constant polynomial".into()),
            }
        }
        Expr::Pow(a, n) => {
            let base = expr_to_mpoly(a)?;
            if *n >= 0 {
                base.pow(*n as u32)
            } else {
                match base.as_constant() {
                    Some(q) if !q.is_zero() => {
                        MPoly::constant(num_traits::pow(q.recip(), n.unsigned_abs() as usize))
                    }
                    _ => return Err("negative exponent of a non-constant polynomial".into()),
                }
            }
        }
    })
}

/// Parse the canonical polynomial syntax, e.g. `L3^2*Z - 1/2`.
pub fn parse_mpoly(src: &str) -> Result<MPoly> {
    parse_mpoly_at(src, 1, 0)
}

pub fn parse_mpoly_at(src: &str, line: usize, col0: usize) -> Result<MPoly> {
    let e = parse_expr_at(src, line, col0)?;
    expr_to_mpoly(&e).map_err(|message| Error::Parse {
        line,
        column: col0 + 1,
        message,
    })
}

impl Expr {
    /// Binding strength: sums 1, products 2, powers 3, atoms 4.
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) => 1,
            Expr::Num(q) if q.is_negative() => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Pow(..) => 3,
            _ => 4,
        }
    }

    fn leads_with_minus(&self) -> bool {
        matches!(self, Expr::Neg(_)) || matches!(self, Expr::Num(q) if q.is_negative())
    }

    /// `lead` is true when the text starts an expression, the only place a
    /// unary minus may appear.
    fn write(&self, f: &mut fmt::Formatter<'_>, level: u8, lead: bool) -> fmt::Result {
        if self.prec() < level || (self.leads_with_minus() && !lead) {
            f.write_str("(")?;
            self.write(f, 0, true)?;
            return f.write_str(")");
        }
        match self {
            Expr::Num(q) => {
                if q.is_negative() {
                    f.write_str("-")?;
                }
                let a = q.abs();
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())
                } else {
                    write!(f, "{}/{}", a.numer(), a.denom())
                }
            }
            Expr::Tag(k) => write!(f, "L{}", k),
            Expr::Z => write!(f, "Z"),
            Expr::Gamma => write!(f, "g"),
            Expr::Y(0) => write!(f, "y"),
            Expr::Y(k) if *k <= 3 => write!(f, "y{}", "'".repeat(*k as usize)),
            Expr::Y(k) => write!(f, "y[{}]", k),
            Expr::Slot(k) => write!(f, "${}", k),
            Expr::Ident(s) => write!(f, "{}", s),
            Expr::Call(name, args) => {
                write!(f, "{}(", name)?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    a.write(f, 0, true)?;
                }
                write!(f, ")")
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write(f, 2, false)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(f, 1, lead)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write(f, 2, false)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.write(f, 2, lead)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                b.write(f, 3, false)
            }
            Expr::Pow(a, n) => {
                a.write(f, 4, false)?;
                write!(f, "^{}", n)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::mpoly::rat;

    #[test]
    fn canonical_round_trip() {
        for s in ["L3^2*Z - 1/2", "-3/2*Z^2 + L0 + 7", "Z", "0", "L1^2 - 1", "L0*L1*Z + 2"] {
            let p = parse_mpoly(s).unwrap();
            assert_eq!(p.to_string(), s);
            assert_eq!(parse_mpoly(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn canonicalizes_input() {
        let p = parse_mpoly("(Z - 1)*(Z + 1)").unwrap();
        assert_eq!(p.to_string(), "Z^2 - 1");
        let q = parse_mpoly("Z/2 + 1/4").unwrap();
        assert_eq!(q, &MPoly::var(Var::Z).scale(&rat(1, 2)) + &MPoly::constant(rat(1, 4)));
    }

    #[test]
    fn derivatives_and_calls() {
        assert_eq!(parse_expr("y''").unwrap(), Expr::Y(2));
        assert_eq!(parse_expr("y[4]").unwrap(), Expr::Y(4));
        assert!(matches!(parse_expr("conj(a, b)").unwrap(), Expr::Call(ref n, ref v) if n == "conj" && v.len() == 2));
        assert_eq!(parse_expr("$2").unwrap(), Expr::Slot(2));
    }

    #[test]
    fn display_round_trips() {
        for s in ["y'' - y", "-a*b + (c - d)*e", "(a + b)^3", "-(a + b)", "x/(y*z)", "a - (b - c)", "2*(-3)", "conj(a + i)"] {
            let e = parse_expr(s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn errors_carry_position() {
        match parse_mpoly_at("Z + * 2", 4, 10) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 4);
                assert_eq!(column, 15);
            }
            other => panic!("{:?}", other),
        }
        assert!(matches!(parse_expr("(Z"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("Z # 1"), Err(Error::Parse { column: 3, .. })));
        assert!(parse_mpoly("Z/L1").is_err());
    }
}
