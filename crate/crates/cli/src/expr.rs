//! The system expression language.
//!
//! ```text
//! program := { "let" ident "=" expr ";" } expr
//! expr    := ident | ideal | call
//! ideal   := "I" "(" string ")" | "M"
//! call    := name "(" arg { "," arg } ")"
//! arg     := expr | rational | string
//! ```

use std::fmt;

use frobkit_core::rational::format_rational;
use frobkit_core::systems::PowerMode;
use frobkit_core::Rational;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(String),
    /// `I("...")`, kept as written.
    Ideal(String),
    Maximal,
    Minimal(Box<Expr>),
    Colon(Box<Expr>),
    Round(Box<Expr>, Rational),
    Bracket(Box<Expr>),
    Powers(Box<Expr>, PowerMode),
    Constant(Box<Expr>),
    /// Prefix ideals for indices `1..=n`, then the tail system.
    Explicit(Vec<Expr>, Box<Expr>),
    Splice(Box<Expr>, Box<Expr>, u32),
    Product(Vec<Expr>),
    Sum(Vec<Expr>),
    Intersect(Vec<Expr>),
    Closure(Box<Expr>),
    /// `a_e : f^{⌈t p^e⌉ - 1}` with the monomial `f` as written.
    Twist(Box<Expr>, String, Rational),
    Stab(Box<Expr>, StabForm),
}

/// Which closed form `stab` uses for minimal systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabForm {
    Hull,
    Lattice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub bindings: Vec<(String, Expr)>,
    pub body: Expr,
}

const RESERVED: &[&str] = &[
    "let", "I", "M", "minimal", "colon", "round", "bracket", "powers", "constant", "explicit", "splice", "product",
    "sum", "intersect", "closure", "twist", "stab",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: expected {}, found {}", self.line, self.column, self.expected.join(" or "), self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Str(String),
    LParen,
    RParen,
    Comma,
    Slash,
    Semi,
    Eq,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Str(s) => write!(f, "string \"{s}\""),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut column) = (0, 1, 1);
    let err = |line, column, expected: &str, found: String| ParseError {
        line,
        column,
        expected: vec![expected.to_string()],
        found,
    };
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        let advance = |i: &mut usize, line: &mut usize, column: &mut usize| {
            if chars[*i] == '\n' {
                *line += 1;
                *column = 1;
            } else {
                *column += 1;
            }
            *i += 1;
        };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut column);
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                s.push(chars[i]);
                advance(&mut i, &mut line, &mut column);
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                advance(&mut i, &mut line, &mut column);
            }
            let n = s
                .parse()
                .map_err(|_| err(l, col, "an integer below 2^64", format!("`{s}`")))?;
            Tok::Int(n)
        } else if c == '"' {
            advance(&mut i, &mut line, &mut column);
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(err(line, column, "closing `\"`", "end of input".into())),
                    Some('"') => {
                        advance(&mut i, &mut line, &mut column);
                        break;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        advance(&mut i, &mut line, &mut column);
                    }
                }
            }
            Tok::Str(s)
        } else {
            let t = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '/' => Tok::Slash,
                ';' => Tok::Semi,
                '=' => Tok::Eq,
                _ => return Err(err(l, col, "a token", format!("`{c}`"))),
            };
            advance(&mut i, &mut line, &mut column);
            t
        };
        out.push(Spanned { tok, line: l, column: col });
    }
    out.push(Spanned { tok: Tok::Eof, line, column });
    Ok(out)
}

/// A parsed argument before it is given a role.
enum Arg {
    Expr(Expr),
    Rational(Rational),
    Str(String),
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, at: &Spanned, expected: &[&str]) -> Result<T, ParseError> {
        Err(ParseError {
            line: at.line,
            column: at.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: at.tok.to_string(),
        })
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ParseError> {
        let t = self.bump();
        if t.tok == tok {
            Ok(())
        } else {
            self.fail(&t, &[name])
        }
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        let mut bindings = Vec::new();
        while matches!(&self.peek().tok, Tok::Ident(s) if s == "let") {
            self.bump();
            let t = self.bump();
            let name = match t.tok {
                Tok::Ident(ref s) if !RESERVED.contains(&s.as_str()) => s.clone(),
                _ => return self.fail(&t, &["a variable name"]),
            };
            self.expect(Tok::Eq, "`=`")?;
            let value = self.expr()?;
            self.expect(Tok::Semi, "`;`")?;
            bindings.push((name, value));
        }
        let body = self.expr()?;
        let t = self.bump();
        if t.tok != Tok::Eof {
            return self.fail(&t, &["end of input"]);
        }
        Ok(Program { bindings, body })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let t = self.bump();
        let name = match &t.tok {
            Tok::Ident(s) => s.clone(),
            _ => return self.fail(&t, &["an expression"]),
        };
        if self.peek().tok != Tok::LParen {
            return match name.as_str() {
                "M" => Ok(Expr::Maximal),
                n if RESERVED.contains(&n) => {
                    let at = self.peek().clone();
                    self.fail(&at, &["`(`"])
                }
                _ => Ok(Expr::Var(name)),
            };
        }
        self.bump();
        let mut args = vec![self.arg()?];
        while self.peek().tok == Tok::Comma {
            self.bump();
            args.push(self.arg()?);
        }
        self.expect(Tok::RParen, "`,` or `)`")?;
        build(&t, &name, args)
    }

    fn arg(&mut self) -> Result<Arg, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                if self.peek().tok != Tok::Slash {
                    return Ok(Arg::Rational(Rational::from_integer(BigInt::from(n))));
                }
                self.bump();
                let d = self.bump();
                match d.tok {
                    Tok::Int(0) => self.fail(&d, &["a nonzero denominator"]),
                    Tok::Int(m) => Ok(Arg::Rational(Rational::new(BigInt::from(n), BigInt::from(m)))),
                    _ => self.fail(&d, &["an integer denominator"]),
                }
            }
            Tok::Str(s) => {
                self.bump();
                Ok(Arg::Str(s))
            }
            Tok::Ident(_) => Ok(Arg::Expr(self.expr()?)),
            _ => self.fail(&t, &["an expression", "a rational", "a string"]),
        }
    }
}

fn build(at: &Spanned, name: &str, args: Vec<Arg>) -> Result<Expr, ParseError> {
    let bad = |expected: &str| ParseError {
        line: at.line,
        column: at.column,
        expected: vec![expected.to_string()],
        found: format!("`{name}` with other arguments"),
    };
    let n = args.len();
    let mut it = args.into_iter();
    let expr = |it: &mut std::vec::IntoIter<Arg>, what: &str| match it.next() {
        Some(Arg::Expr(e)) => Ok(Box::new(e)),
        _ => Err(bad(what)),
    };
    let one = |n: usize, what: &str| if n == 1 { Ok(()) } else { Err(bad(what)) };
    let e = match name {
        "I" => match (n, it.next()) {
            (1, Some(Arg::Str(s))) => Expr::Ideal(s),
            _ => return Err(bad("I(\"generators\")")),
        },
        "minimal" => {
            one(n, "minimal(ideal)")?;
            Expr::Minimal(expr(&mut it, "minimal(ideal)")?)
        }
        "colon" => {
            one(n, "colon(ideal)")?;
            Expr::Colon(expr(&mut it, "colon(ideal)")?)
        }
        "bracket" => {
            one(n, "bracket(ideal)")?;
            Expr::Bracket(expr(&mut it, "bracket(ideal)")?)
        }
        "constant" => {
            one(n, "constant(ideal)")?;
            Expr::Constant(expr(&mut it, "constant(ideal)")?)
        }
        "closure" => {
            one(n, "closure(system)")?;
            Expr::Closure(expr(&mut it, "closure(system)")?)
        }
        "round" => {
            let base = expr(&mut it, "round(ideal, t)")?;
            match (n, it.next()) {
                (2, Some(Arg::Rational(t))) => Expr::Round(base, t),
                _ => return Err(bad("round(ideal, t)")),
            }
        }
        "powers" => {
            let base = expr(&mut it, "powers(ideal, \"pe\" | \"pe-1\")")?;
            match (n, it.next()) {
                (2, Some(Arg::Str(s))) if s == "pe" => Expr::Powers(base, PowerMode::Pe),
                (2, Some(Arg::Str(s))) if s == "pe-1" => Expr::Powers(base, PowerMode::PeMinus1),
                _ => return Err(bad("powers(ideal, \"pe\" | \"pe-1\")")),
            }
        }
        "stab" => {
            let inner = expr(&mut it, "stab(system)")?;
            match (n, it.next()) {
                (1, None) => Expr::Stab(inner, StabForm::Hull),
                (2, Some(Arg::Str(s))) if s == "hull" => Expr::Stab(inner, StabForm::Hull),
                (2, Some(Arg::Str(s))) if s == "lattice" => Expr::Stab(inner, StabForm::Lattice),
                _ => return Err(bad("stab(system) or stab(system, \"hull\" | \"lattice\")")),
            }
        }
        "splice" => {
            let a = expr(&mut it, "splice(system, system, index)")?;
            let b = expr(&mut it, "splice(system, system, index)")?;
            match (n, it.next()) {
                (3, Some(Arg::Rational(r))) if r.is_integer() && u32::try_from(r.numer()).is_ok() => {
                    Expr::Splice(a, b, u32::try_from(r.numer()).expect("checked"))
                }
                _ => return Err(bad("splice(system, system, index)")),
            }
        }
        "twist" => {
            let sys = expr(&mut it, "twist(system, \"monomial\", t)")?;
            match (n, it.next(), it.next()) {
                (3, Some(Arg::Str(f)), Some(Arg::Rational(t))) => Expr::Twist(sys, f, t),
                _ => return Err(bad("twist(system, \"monomial\", t)")),
            }
        }
        "product" | "sum" | "intersect" | "explicit" => {
            let mut items = Vec::with_capacity(n);
            for a in it {
                match a {
                    Arg::Expr(e) => items.push(e),
                    _ => return Err(bad(&format!("{name}(expr, ...)"))),
                }
            }
            match name {
                "product" => Expr::Product(items),
                "sum" => Expr::Sum(items),
                "intersect" => Expr::Intersect(items),
                _ => {
                    let tail = items.pop().expect("at least one argument");
                    if items.is_empty() {
                        return Err(bad("explicit(ideal, ..., tail system)"));
                    }
                    Expr::Explicit(items, Box::new(tail))
                }
            }
        }
        _ => {
            return Err(ParseError {
                line: at.line,
                column: at.column,
                expected: vec!["a constructor name".into()],
                found: format!("identifier `{name}`"),
            })
        }
    };
    Ok(e)
}

pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    Parser { toks: lex(text)?, pos: 0 }.program()
}

/// Parses a single expression without bindings.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let program = parse_program(text)?;
    if let Some((name, _)) = program.bindings.first() {
        return Err(ParseError {
            line: 1,
            column: 1,
            expected: vec!["an expression".into()],
            found: format!("binding `{name}`"),
        });
    }
    Ok(program.body)
}

fn list(f: &mut fmt::Formatter<'_>, name: &str, items: &[Expr]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{e}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => f.write_str(v),
            Expr::Ideal(s) => write!(f, "I(\"{s}\")"),
            Expr::Maximal => f.write_str("M"),
            Expr::Minimal(e) => write!(f, "minimal({e})"),
            Expr::Colon(e) => write!(f, "colon({e})"),
            Expr::Round(e, t) => write!(f, "round({e}, {})", format_rational(t)),
            Expr::Bracket(e) => write!(f, "bracket({e})"),
            Expr::Powers(e, PowerMode::Pe) => write!(f, "powers({e}, \"pe\")"),
            Expr::Powers(e, PowerMode::PeMinus1) => write!(f, "powers({e}, \"pe-1\")"),
            Expr::Constant(e) => write!(f, "constant({e})"),
            Expr::Explicit(prefix, tail) => {
                let mut all = prefix.clone();
                all.push((**tail).clone());
                list(f, "explicit", &all)
            }
            Expr::Splice(a, b, n) => write!(f, "splice({a}, {b}, {n})"),
            Expr::Product(v) => list(f, "product", v),
            Expr::Sum(v) => list(f, "sum", v),
            Expr::Intersect(v) => list(f, "intersect", v),
            Expr::Closure(e) => write!(f, "closure({e})"),
            Expr::Twist(e, m, t) => write!(f, "twist({e}, \"{m}\", {})", format_rational(t)),
            Expr::Stab(e, StabForm::Hull) => write!(f, "stab({e})"),
            Expr::Stab(e, StabForm::Lattice) => write!(f, "stab({e}, \"lattice\")"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, e) in &self.bindings {
            writeln!(f, "let {name} = {e};")?;
        }
        write!(f, "{}", self.body)
    }
}
