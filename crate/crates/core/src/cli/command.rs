//! Line-oriented command grammar.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::parse::{parse_expr_at, Expr};
use crate::regions::Mode;

#[derive(Clone, Debug, PartialEq)]
pub enum Sel {
    Smallest,
    Real(usize),
}

/// Commands that yield elements; usable alone or on the right of `let`.
#[derive(Clone, Debug, PartialEq)]
pub enum Producer {
    Expr(Expr),
    Adjoin(Expr, Sel),
    Witness(Arg, Arg),
    OWitness { p: Arg, qs: Vec<Arg>, at: Vec<Expr> },
    Solutions(usize),
    RootBetween(Arg, Expr, Expr),
    Extend(usize, Vec<Expr>),
    Delta(Expr),
}

/// A differential polynomial argument: a `dp` name or an inline expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Arg {
    Name(String),
    Inline(Expr),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Var,
    Let(Vec<String>, Producer),
    Run(Producer),
    Dp(String, Expr),
    Sign(Expr),
    IsZero(Expr),
    Check(Arg, Expr),
    Eval(Expr, u32),
    WpMember(Mode, Expr, Vec<Expr>),
    RAxioms {
        p: Expr,
        q: Expr,
        mode: Mode,
        samples: usize,
        seed: u64,
    },
    Save(String),
    Load(String),
}

impl Command {
    /// Commands whose effect must be replayed when a session is restored.
    pub fn is_replayed(&self) -> bool {
        !matches!(
            self,
            Command::WpMember(..) | Command::RAxioms { .. } | Command::Save(_) | Command::Load(_)
        )
    }
}

/// A whitespace-separated word with its byte offset. Quotes and brackets
/// keep their contents together.
#[derive(Clone, Debug)]
struct Word<'a> {
    text: &'a str,
    at: usize,
}

fn split_words(s: &str, base: usize) -> std::result::Result<Vec<Word<'_>>, (usize, String)> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let mut depth = 0i32;
        let mut quoted = false;
        while i < b.len() && (quoted || depth > 0 || !b[i].is_ascii_whitespace()) {
            match b[i] {
                b'"' => quoted = !quoted,
                b'(' | b'[' if !quoted => depth += 1,
                b')' | b']' if !quoted => depth -= 1,
                _ => {}
            }
            i += 1;
        }
        if quoted {
            return Err((base + start, "unterminated quote".into()));
        }
        if depth != 0 {
            return Err((base + start, "unbalanced parentheses".into()));
        }
        out.push(Word {
            text: &s[start..i],
            at: base + start,
        });
    }
    Ok(out)
}

/// Split at top-level commas.
fn split_commas(s: &str, base: usize) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((&s[start..k], base + start));
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push((&s[start..], base + start));
    out
}

struct Cx<'a> {
    line: usize,
    src: &'a str,
}

impl Cx<'_> {
    fn err(&self, at: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: at + 1,
            message: msg.into(),
        }
    }

    fn expr(&self, text: &str, at: usize) -> Result<Expr> {
        let lead = text.len() - text.trim_start().len();
        let t = text.trim();
        if t.is_empty() {
            return Err(self.err(at, "expected an expression"));
        }
        parse_expr_at(t, self.line, at + lead)
    }

    fn unquote<'w>(&self, w: &Word<'w>) -> Result<(&'w str, usize)> {
        let t = w.text;
        if t.len() >= 2 && t.starts_with('"') && t.ends_with('"') {
            Ok((&t[1..t.len() - 1], w.at + 1))
        } else {
            Err(self.err(w.at, "expected a quoted polynomial"))
        }
    }

    fn arg(&self, w: &Word) -> Result<Arg> {
        let e = self.expr(w.text, w.at)?;
        Ok(match e {
            Expr::Ident(n) => Arg::Name(n),
            e => Arg::Inline(e),
        })
    }

    fn number<T: std::str::FromStr>(&self, w: Option<&Word>, what: &str, end: usize) -> Result<T> {
        match w {
            Some(w) => w.text.parse().map_err(|_| self.err(w.at, format!("expected {}", what))),
            None => Err(self.err(end, format!("expected {}", what))),
        }
    }

    /// Offset of the text following the first `n` words.
    fn rest_after(&self, words: &[Word], n: usize) -> (&str, usize) {
        match words.get(n) {
            Some(w) => (&self.src[w.at..], w.at),
            None => ("", self.src.len()),
        }
    }
}

fn is_name(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
        && !matches!(s, "Z" | "g" | "y" | "i" | "var")
        && !(s.starts_with('L') && s.len() > 1 && s[1..].bytes().all(|b| b.is_ascii_digit()))
}

fn producer(cx: &Cx, words: &[Word], text: &str, at: usize) -> Result<Producer> {
    let Some(head) = words.first() else {
        return Err(cx.err(at, "expected an expression"));
    };
    let end = at + text.len();
    Ok(match head.text {
        "adjoin" => {
            let n = words.len();
            let (poly_end, sel) = if n >= 3 && words[n - 2].text == "real" {
                let k: usize = cx.number(Some(&words[n - 1]), "a root index", end)?;
                if k == 0 {
                    return Err(cx.err(words[n - 1].at, "root indices start at 1"));
                }
                (words[n - 2].at, Sel::Real(k))
            } else if n >= 2 && words[n - 1].text == "smallest" {
                (words[n - 1].at, Sel::Smallest)
            } else {
                (end, Sel::Smallest)
            };
            let (rest, r_at) = cx.rest_after(words, 1);
            let poly = &rest[..poly_end.saturating_sub(r_at).min(rest.len())];
            Producer::Adjoin(cx.expr(poly, r_at)?, sel)
        }
        "witness" => {
            if words.len() != 3 {
                return Err(cx.err(head.at, "usage: witness <p> <q>"));
            }
            Producer::Witness(cx.arg(&words[1])?, cx.arg(&words[2])?)
        }
        "owitness" => {
            let Some(k) = words.iter().position(|w| w.text == "at") else {
                return Err(cx.err(head.at, "usage: owitness <p> [q...] at <a0..ak>"));
            };
            if k < 2 {
                return Err(cx.err(head.at, "owitness needs a differential polynomial"));
            }
            Producer::OWitness {
                p: cx.arg(&words[1])?,
                qs: words[2..k].iter().map(|w| cx.arg(w)).collect::<Result<_>>()?,
                at: words[k + 1..].iter().map(|w| cx.expr(w.text, w.at)).collect::<Result<_>>()?,
            }
        }
        "solutions" => {
            if words.len() != 2 {
                return Err(cx.err(head.at, "usage: solutions <n>"));
            }
            Producer::Solutions(cx.number(words.get(1), "a count", end)?)
        }
        "rootbetween" => {
            if words.len() != 4 {
                return Err(cx.err(head.at, "usage: rootbetween <p> <a> <b>"));
            }
            Producer::RootBetween(
                cx.arg(&words[1])?,
                cx.expr(words[2].text, words[2].at)?,
                cx.expr(words[3].text, words[3].at)?,
            )
        }
        "extend" => {
            let n: usize = cx.number(words.get(1), "a count", end)?;
            if words.get(2).map(|w| w.text) != Some("with") {
                return Err(cx.err(head.at, "usage: extend <n> with <exprs>"));
            }
            let (rest, r_at) = cx.rest_after(words, 3);
            let exprs = split_commas(rest, r_at)
                .into_iter()
                .map(|(s, a)| cx.expr(s, a))
                .collect::<Result<Vec<_>>>()?;
            Producer::Extend(n, exprs)
        }
        "delta" => {
            let (rest, r_at) = cx.rest_after(words, 1);
            Producer::Delta(cx.expr(rest, r_at)?)
        }
        _ => Producer::Expr(cx.expr(text, at)?),
    })
}

/// Strip `--flag value` pairs, returning the remaining words.
type Flags<'a> = Vec<(&'a str, Option<Word<'a>>)>;

fn take_flags<'a>(cx: &Cx, words: Vec<Word<'a>>) -> Result<(Vec<Word<'a>>, Flags<'a>)> {
    let mut plain = Vec::new();
    let mut flags = Vec::new();
    let mut it = words.into_iter();
    while let Some(w) = it.next() {
        if let Some(name) = w.text.strip_prefix("--") {
            match name {
                "complex" | "real" => flags.push((name, None)),
                "prec" | "samples" | "seed" => {
                    let v = it.next().ok_or_else(|| cx.err(w.at, format!("--{} needs a value", name)))?;
                    flags.push((name, Some(v)));
                }
                _ => return Err(cx.err(w.at, format!("unknown flag --{}", name))),
            }
        } else {
            plain.push(w);
        }
    }
    Ok((plain, flags))
}

/// Parse one non-empty command line (comments already removed).
pub fn parse_command(src: &str, line: usize) -> Result<Command> {
    let cx = Cx { line, src };
    let words = split_words(src, 0).map_err(|(at, m)| cx.err(at, m))?;
    let Some(head) = words.first() else {
        return Err(cx.err(0, "empty command"));
    };
    let end = src.len();
    let (rest, r_at) = cx.rest_after(&words, 1);
    Ok(match head.text {
        "var" if words.len() == 1 => Command::Var,
        "let" => {
            let Some(eq) = src.find('=') else {
                return Err(cx.err(head.at, "usage: let <name> = <expr>"));
            };
            let lhs = &src[head.at + 3..eq];
            let mut names = Vec::new();
            for (s, a) in split_commas(lhs, head.at + 3) {
                let n = s.trim();
                if !is_name(n) {
                    return Err(cx.err(a + (s.len() - s.trim_start().len()), format!("invalid name `{}`", n)));
                }
                names.push(n.to_string());
            }
            let rhs = &src[eq + 1..];
            let rwords = split_words(rhs, eq + 1).map_err(|(at, m)| cx.err(at, m))?;
            Command::Let(names, producer(&cx, &rwords, rhs, eq + 1)?)
        }
        "dp" => {
            let Some(eq) = src.find('=') else {
                return Err(cx.err(head.at, "usage: dp <name> = <diffpoly>"));
            };
            let name = src[head.at + 2..eq].trim();
            if !is_name(name) {
                return Err(cx.err(head.at + 3, format!("invalid name `{}`", name)));
            }
            Command::Dp(name.to_string(), cx.expr(&src[eq + 1..], eq + 1)?)
        }
        "sign" => Command::Sign(cx.expr(rest, r_at)?),
        "iszero" => Command::IsZero(cx.expr(rest, r_at)?),
        "check" => {
            if words.len() != 3 {
                return Err(cx.err(head.at, "usage: check <p> <f>"));
            }
            Command::Check(cx.arg(&words[1])?, cx.expr(words[2].text, words[2].at)?)
        }
        "eval" => {
            let (plain, flags) = take_flags(&cx, words.clone())?;
            let mut prec = 64;
            for (name, v) in flags {
                match name {
                    "prec" => prec = cx.number(v.as_ref(), "a bit count", end)?,
                    _ => return Err(cx.err(head.at, format!("eval does not take --{}", name))),
                }
            }
            if plain.len() < 2 {
                return Err(cx.err(end, "usage: eval <expr> --prec <bits>"));
            }
            let (text, at) = (&src[plain[1].at..plain[plain.len() - 1].at + plain[plain.len() - 1].text.len()], plain[1].at);
            Command::Eval(cx.expr(text, at)?, prec)
        }
        "wp" => {
            if words.get(1).map(|w| w.text) != Some("member") || words.len() < 4 {
                return Err(cx.err(head.at, "usage: wp member <real|complex> \"<poly>\" <coords...>"));
            }
            let mode: Mode = words[2].text.parse().map_err(|_| cx.err(words[2].at, "expected `real` or `complex`"))?;
            let (p, p_at) = cx.unquote(&words[3])?;
            let coords = words[4..].iter().map(|w| cx.expr(w.text, w.at)).collect::<Result<_>>()?;
            Command::WpMember(mode, cx.expr(p, p_at)?, coords)
        }
        "raxioms" => {
            let (plain, flags) = take_flags(&cx, words.clone())?;
            if plain.len() != 3 {
                return Err(cx.err(head.at, "usage: raxioms \"<P>\" \"<Q>\" --samples N --seed S"));
            }
            let (p, p_at) = cx.unquote(&plain[1])?;
            let (q, q_at) = cx.unquote(&plain[2])?;
            let (mut samples, mut seed, mut mode) = (1000, 0, Mode::Real);
            for (name, v) in flags {
                match name {
                    "samples" => samples = cx.number(v.as_ref(), "a sample count", end)?,
                    "seed" => seed = cx.number(v.as_ref(), "a seed", end)?,
                    "complex" => mode = Mode::Complex,
                    "real" => mode = Mode::Real,
                    _ => return Err(cx.err(head.at, format!("raxioms does not take --{}", name))),
                }
            }
            Command::RAxioms {
                p: cx.expr(p, p_at)?,
                q: cx.expr(q, q_at)?,
                mode,
                samples,
                seed,
            }
        }
        "save" | "load" => {
            let path = rest.trim();
            if path.is_empty() {
                return Err(cx.err(end, "expected a path"));
            }
            if head.text == "save" {
                Command::Save(path.to_string())
            } else {
                Command::Load(path.to_string())
            }
        }
        _ => Command::Run(producer(&cx, &words, src, 0)?),
    })
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Name(n) => f.write_str(n),
            Arg::Inline(e) => write!(f, "({})", e),
        }
    }
}

/// Single-word form of an expression.
struct Tight<'a>(&'a Expr);

impl fmt::Display for Tight<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Expr::Num(_) | Expr::Tag(_) | Expr::Ident(_) | Expr::Slot(_) | Expr::Call(..) => write!(f, "{}", self.0),
            e => {
                let s = e.to_string();
                if s.contains(' ') && !(s.starts_with('(') && s.ends_with(')')) {
                    write!(f, "({})", s)
                } else {
                    f.write_str(&s)
                }
            }
        }
    }
}

impl fmt::Display for Producer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Producer::Expr(e) => write!(f, "{}", e),
            Producer::Adjoin(e, Sel::Smallest) => write!(f, "adjoin {} smallest", e),
            Producer::Adjoin(e, Sel::Real(k)) => write!(f, "adjoin {} real {}", e, k),
            Producer::Witness(p, q) => write!(f, "witness {} {}", p, q),
            Producer::OWitness { p, qs, at } => {
                write!(f, "owitness {}", p)?;
                for q in qs {
                    write!(f, " {}", q)?;
                }
                f.write_str(" at")?;
                for a in at {
                    write!(f, " {}", Tight(a))?;
                }
                Ok(())
            }
            Producer::Solutions(n) => write!(f, "solutions {}", n),
            Producer::RootBetween(p, a, b) => write!(f, "rootbetween {} {} {}", p, Tight(a), Tight(b)),
            Producer::Extend(n, es) => {
                let parts: Vec<String> = es.iter().map(|e| e.to_string()).collect();
                write!(f, "extend {} with {}", n, parts.join(", "))
            }
            Producer::Delta(e) => write!(f, "delta {}", e),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Var => f.write_str("var"),
            Command::Let(names, p) => write!(f, "let {} = {}", names.join(", "), p),
            Command::Run(p) => write!(f, "{}", p),
            Command::Dp(n, e) => write!(f, "dp {} = {}", n, e),
            Command::Sign(e) => write!(f, "sign {}", e),
            Command::IsZero(e) => write!(f, "iszero {}", e),
            Command::Check(p, e) => write!(f, "check {} {}", p, Tight(e)),
            Command::Eval(e, prec) => write!(f, "eval {} --prec {}", e, prec),
            Command::WpMember(mode, p, xs) => {
                write!(f, "wp member {} \"{}\"", mode, p)?;
                for x in xs {
                    write!(f, " {}", Tight(x))?;
                }
                Ok(())
            }
            Command::RAxioms { p, q, mode, samples, seed } => {
                write!(f, "raxioms \"{}\" \"{}\" --samples {} --seed {}", p, q, samples, seed)?;
                if *mode == Mode::Complex {
                    f.write_str(" --complex")?;
                }
                Ok(())
            }
            Command::Save(p) => write!(f, "save {}", p),
            Command::Load(p) => write!(f, "load {}", p),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CORPUS: &[&str] = &[
        "var",
        "let a = var",
        "sign a - 4",
        "iszero a*a - a^2",
        "dp p = y' - y",
        "let f = witness p (y - 1)",
        "check p f",
        "let r = adjoin Z^2 - 2 real 2",
        "adjoin Z^3 - a smallest",
        "owitness p q1 at 1 1",
        "let s1, s2, s3 = solutions 3",
        "rootbetween p 0 (a + 1)",
        "let s, c = extend 2 with $2, -$1",
        "delta a*a",
        "eval a --prec 80",
        "wp member real \"L1^2 - 1\" 2",
        "wp member complex \"L1\" i",
        "raxioms \"L1\" \"L1 - 1\" --samples 100 --seed 7",
        "save out.session",
    ];

    #[test]
    fn grammar_round_trip() {
        for s in CORPUS {
            let c = parse_command(s, 1).unwrap();
            let printed = c.to_string();
            let again = parse_command(&printed, 1).unwrap();
            assert_eq!(again, c, "{} -> {}", s, printed);
            assert_eq!(again.to_string(), printed);
        }
    }

    #[test]
    fn canonical_forms() {
        let c = |s: &str| parse_command(s, 1).unwrap().to_string();
        assert_eq!(c("let   a=var"), "let a = var");
        assert_eq!(c("adjoin Z^2-2"), "adjoin Z^2 - 2 smallest");
        assert_eq!(c("raxioms \"L1\" \"L1\" --seed 3 --samples 10"), "raxioms \"L1\" \"L1\" --samples 10 --seed 3");
    }

    #[test]
    fn parse_errors_carry_columns() {
        match parse_command("let a = 3 +", 4) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 4);
                assert!(column >= 9, "column {}", column);
            }
            other => panic!("unexpected {:?}", other),
        }
        assert!(parse_command("let L3 = 1", 1).is_err());
        assert!(parse_command("wp member real L1 2", 1).is_err());
        assert!(parse_command("eval a --bogus 3", 1).is_err());
    }
}
