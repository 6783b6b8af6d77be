//! Recursive-descent parser for algebra expressions:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' INT)?
//! atom  := RATIONAL | e<i> | f<i> | h<i> | c | d | u | v | t<k> | w<k>
//!        | s(i,j) | cyc(i..j) | '(' expr ')' | '[' expr ',' expr ']'
//! ```
//!
//! Factor indices are 1-based. Group atoms must lie in the given Γ.

use crate::error::{Error, Result};
use crate::pbw::AlgebraElement;
use crate::poly::{Poly, Var};
use crate::rational::parse_q;
use crate::weightlat::{GammaSpec, Perm};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    DotDot,
}

struct Lexer;

impl Lexer {
    fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
        let b = s.as_bytes();
        let mut i = 0;
        let mut out = Vec::new();
        while i < b.len() {
            let c = b[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < b.len() && (b[i] as char).is_ascii_digit() {
                    i += 1;
                }
                // a '/' directly followed by digits continues a rational literal
                if i + 1 < b.len() && b[i] == b'/' && (b[i + 1] as char).is_ascii_digit() {
                    i += 1;
                    while i < b.len() && (b[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                }
                out.push((start, Tok::Num(s[start..i].to_string())));
            } else if c.is_ascii_alphabetic() {
                let start = i;
                while i < b.len() && (b[i] as char).is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
            } else if c == '.' && i + 1 < b.len() && b[i + 1] == b'.' {
                out.push((i, Tok::DotDot));
                i += 2;
            } else if "+-*^()[],".contains(c) {
                out.push((i, Tok::Sym(c)));
                i += 1;
            } else {
                let found: String = s[i..].chars().next().map(String::from).unwrap_or_default();
                return Err(Error::parse(
                    i,
                    "operator, number or identifier",
                    format!("{found:?}"),
                ));
            }
        }
        Ok(out)
    }
}

/// What atoms evaluate to.
trait Target: Sized + Clone {
    fn from_poly(p: Poly, ctx: &Ctx) -> Self;
    fn generator(name: char, index: usize, pos: usize, ctx: &Ctx) -> Result<Self>;
    fn group(g: Perm, pos: usize, ctx: &Ctx) -> Result<Self>;
    fn add(&self, o: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Result<Self>;
}

struct Ctx<'a> {
    n: usize,
    gamma: Option<&'a GammaSpec>,
}

impl Target for AlgebraElement {
    fn from_poly(p: Poly, ctx: &Ctx) -> Self {
        AlgebraElement::scalar(ctx.n, p)
    }

    fn generator(name: char, index: usize, pos: usize, ctx: &Ctx) -> Result<Self> {
        if index == 0 || index > ctx.n {
            return Err(Error::parse(
                pos,
                format!("factor index in 1..={}", ctx.n),
                index.to_string(),
            ));
        }
        match name {
            'e' => AlgebraElement::e(ctx.n, index - 1),
            'f' => AlgebraElement::f(ctx.n, index - 1),
            _ => AlgebraElement::h(ctx.n, index - 1),
        }
    }

    fn group(g: Perm, pos: usize, ctx: &Ctx) -> Result<Self> {
        if let Some(gamma) = ctx.gamma {
            if !gamma.contains(&g) {
                return Err(Error::NotInGroup(format!(
                    "{} at position {pos}",
                    g.cycle_string()
                )));
            }
        }
        Ok(AlgebraElement::group(&g))
    }

    fn add(&self, o: &Self) -> Result<Self> {
        AlgebraElement::add(self, o)
    }

    fn neg(&self) -> Self {
        self.scale(&Poly::int(-1))
    }

    fn mul(&self, o: &Self) -> Result<Self> {
        AlgebraElement::mul(self, o)
    }
}

impl Target for Poly {
    fn from_poly(p: Poly, _: &Ctx) -> Self {
        p
    }

    fn generator(name: char, _: usize, pos: usize, _: &Ctx) -> Result<Self> {
        Err(Error::parse(
            pos,
            "parameter or number",
            format!("generator {name}"),
        ))
    }

    fn group(_: Perm, pos: usize, _: &Ctx) -> Result<Self> {
        Err(Error::parse(pos, "parameter or number", "group element"))
    }

    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ctx: Ctx<'a>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn found(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Num(s)) | Some(Tok::Ident(s)) => format!("{s:?}"),
            Some(Tok::Sym(c)) => format!("{:?}", c.to_string()),
            Some(Tok::DotDot) => "\"..\"".into(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.at(), format!("'{c}'"), self.found()))
        }
    }

    fn expect_int(&mut self) -> Result<usize> {
        if let Some(Tok::Num(s)) = self.peek() {
            if let Ok(v) = s.parse::<usize>() {
                self.pos += 1;
                return Ok(v);
            }
        }
        Err(Error::parse(self.at(), "nonnegative integer", self.found()))
    }

    fn expr<T: Target>(&mut self) -> Result<T> {
        let mut acc: T = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('+')) => {
                    self.pos += 1;
                    let r: T = self.term()?;
                    acc = acc.add(&r)?;
                }
                Some(Tok::Sym('-')) => {
                    self.pos += 1;
                    let r: T = self.term()?;
                    acc = acc.add(&r.neg())?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<T: Target>(&mut self) -> Result<T> {
        let mut acc: T = self.unary()?;
        while self.peek() == Some(&Tok::Sym('*')) {
            self.pos += 1;
            let r: T = self.unary()?;
            acc = acc.mul(&r)?;
        }
        Ok(acc)
    }

    fn unary<T: Target>(&mut self) -> Result<T> {
        if self.peek() == Some(&Tok::Sym('-')) {
            self.pos += 1;
            return Ok(self.unary::<T>()?.neg());
        }
        let base: T = self.atom()?;
        if self.peek() == Some(&Tok::Sym('^')) {
            self.pos += 1;
            let k = self.expect_int()?;
            let mut out = T::from_poly(Poly::int(1), &self.ctx);
            for _ in 0..k {
                out = out.mul(&base)?;
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn index_suffix(&self, name: &str, prefix: usize, pos: usize) -> Result<usize> {
        name[prefix..].parse::<usize>().map_err(|_| {
            Error::parse(
                pos,
                "identifier like e1, f2, h3, t0, w4",
                format!("{name:?}"),
            )
        })
    }

    fn atom<T: Target>(&mut self) -> Result<T> {
        let pos = self.at();
        let Some(tok) = self.peek().cloned() else {
            return Err(Error::parse(pos, "expression", "end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(s) => Ok(T::from_poly(Poly::constant(parse_q(&s, pos)?), &self.ctx)),
            Tok::Sym('(') => {
                let inner: T = self.expr()?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            Tok::Sym('[') => {
                let a: T = self.expr()?;
                self.expect_sym(',')?;
                let b: T = self.expr()?;
                self.expect_sym(']')?;
                let ab = a.mul(&b)?;
                let ba = b.mul(&a)?;
                ab.add(&ba.neg())
            }
            Tok::Ident(name) => match name.as_str() {
                "c" => Ok(T::from_poly(Poly::var(Var::C), &self.ctx)),
                "d" => Ok(T::from_poly(Poly::var(Var::D), &self.ctx)),
                "u" => Ok(T::from_poly(Poly::var(Var::U), &self.ctx)),
                "v" => Ok(T::from_poly(Poly::var(Var::V), &self.ctx)),
                "s" => {
                    self.expect_sym('(')?;
                    let ipos = self.at();
                    let i = self.expect_int()?;
                    self.expect_sym(',')?;
                    let j = self.expect_int()?;
                    self.expect_sym(')')?;
                    let n = self.ctx.n;
                    if i == 0 || j == 0 || i > n || j > n || i == j {
                        return Err(Error::parse(
                            ipos,
                            format!("distinct indices in 1..={n}"),
                            format!("({i},{j})"),
                        ));
                    }
                    T::group(Perm::transposition(n, i - 1, j - 1), pos, &self.ctx)
                }
                "cyc" => {
                    self.expect_sym('(')?;
                    let ipos = self.at();
                    let i = self.expect_int()?;
                    if self.peek() != Some(&Tok::DotDot) {
                        return Err(Error::parse(self.at(), "'..'", self.found()));
                    }
                    self.pos += 1;
                    let j = self.expect_int()?;
                    self.expect_sym(')')?;
                    let n = self.ctx.n;
                    if i == 0 || j > n || i > j {
                        return Err(Error::parse(
                            ipos,
                            format!("range within 1..={n}"),
                            format!("{i}..{j}"),
                        ));
                    }
                    let labels: Vec<usize> = (i - 1..j).collect();
                    T::group(Perm::cycle(n, &labels), pos, &self.ctx)
                }
                _ => {
                    let first = name.chars().next().unwrap_or(' ');
                    match first {
                        'e' | 'f' | 'h' if name.len() > 1 => {
                            let idx = self.index_suffix(&name, 1, pos)?;
                            T::generator(first, idx, pos, &self.ctx)
                        }
                        't' if name.len() > 1 => {
                            let k = self.index_suffix(&name, 1, pos)?;
                            Ok(T::from_poly(Poly::var(Var::T(k)), &self.ctx))
                        }
                        'w' if name.len() > 1 => {
                            let k = self.index_suffix(&name, 1, pos)?;
                            Ok(T::from_poly(Poly::var(Var::W(k)), &self.ctx))
                        }
                        _ => Err(Error::parse(
                            pos,
                            "generator e<i>/f<i>/h<i>, parameter c/d/u/v/t<k>/w<k>, s(i,j) or cyc(i..j)",
                            format!("{name:?}"),
                        )),
                    }
                }
            },
            _ => {
                self.pos -= 1;
                Err(Error::parse(pos, "expression", self.found()))
            }
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            return Err(Error::parse(
                self.at(),
                "operator or end of input",
                self.found(),
            ));
        }
        Ok(())
    }
}

/// Parses an algebra expression in rank `n`; group atoms are checked
/// against `gamma` when given.
pub fn parse_expr(s: &str, n: usize, gamma: Option<&GammaSpec>) -> Result<AlgebraElement> {
    if let Some(g) = gamma {
        if g.rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                got: g.rank(),
            });
        }
    }
    let mut p = Parser {
        toks: Lexer::lex(s)?,
        pos: 0,
        end: s.len(),
        ctx: Ctx { n, gamma },
    };
    let out: AlgebraElement = p.expr()?;
    p.finish()?;
    Ok(out)
}

/// Parses a polynomial in the parameters (no generators or group atoms).
pub fn parse_poly(s: &str) -> Result<Poly> {
    let mut p = Parser {
        toks: Lexer::lex(s)?,
        pos: 0,
        end: s.len(),
        ctx: Ctx { n: 0, gamma: None },
    };
    let out: Poly = p.expr()?;
    p.finish()?;
    Ok(out)
}
