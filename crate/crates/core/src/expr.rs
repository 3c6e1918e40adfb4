//! Prefix expressions describing constructible groups.
//!
//! ```text
//! expr := cyclic(n)                 C_n
//!       | field(p, a)               additive group of F_{p^a}
//!       | scalar(p, a, m)           F_{p^a}⁺ ⋊ C_m, generator acting by a unit of order m
//!       | csd(n, m, k)              C_n ⋊ C_m, generator acting by x ↦ k·x
//!       | direct(expr, expr)        direct product
//!       | pair(p, q, a, b)          (F_{p^a}⁺ ⋊ C_q) × (F_{q^b}⁺ ⋊ C_p)
//!       | family(p, q, r, a, b)     the metabelian family group
//!       | heis3()                   (C_3 × C_3) ⋊ C_3, nonabelian of order 27
//!       | p,q,r,a,b                 shorthand for family(...)
//! ```

use crate::constructions::{
    build_family_group, cyclic_by_cyclic, cyclic_with_limits, direct_product, family_components,
    field_additive, field_by_cyclic, heisenberg_mod3, FamilyParams,
};
use crate::error::{Error, Result};
use crate::field::make_field_capped;
use crate::group::{FiniteGroup, Limits};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(u32),
    Field { p: u32, a: u32 },
    Scalar { p: u32, a: u32, m: u32 },
    CyclicSemidirect { n: u32, m: u32, k: u32 },
    Direct(Box<GroupExpr>, Box<GroupExpr>),
    Pair { p: u32, q: u32, a: u32, b: u32 },
    Family(FamilyParams),
    Heisenberg3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Int(u32),
    Open,
    Close,
    Comma,
}

fn parse_error(msg: impl Into<String>) -> Error {
    Error::BadParams(msg.into())
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' | ')' | ',' => {
                chars.next();
                out.push(match c {
                    '(' => Token::Open,
                    ')' => Token::Close,
                    _ => Token::Comma,
                });
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(d);
                    chars.next();
                }
                let n = digits.parse().map_err(|_| parse_error(format!("integer too large: {digits}")))?;
                out.push(Token::Int(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                    ident.push(d);
                    chars.next();
                }
                out.push(Token::Ident(ident.to_ascii_lowercase()));
            }
            other => return Err(parse_error(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            other => Err(parse_error(format!("expected {want:?}, found {other:?}"))),
        }
    }

    fn int(&mut self) -> Result<u32> {
        match self.next() {
            Some(Token::Int(n)) => Ok(n),
            other => Err(parse_error(format!("expected integer, found {other:?}"))),
        }
    }

    /// Comma-separated integers up to the closing parenthesis.
    fn ints<const N: usize>(&mut self) -> Result<[u32; N]> {
        let mut out = [0; N];
        for (i, slot) in out.iter_mut().enumerate() {
            if i > 0 {
                self.expect(Token::Comma)?;
            }
            *slot = self.int()?;
        }
        self.expect(Token::Close)?;
        Ok(out)
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let name = match self.next() {
            Some(Token::Ident(name)) => name,
            other => return Err(parse_error(format!("expected group name, found {other:?}"))),
        };
        self.expect(Token::Open)?;
        Ok(match name.as_str() {
            "cyclic" | "c" => GroupExpr::Cyclic(self.ints::<1>()?[0]),
            "field" => {
                let [p, a] = self.ints()?;
                GroupExpr::Field { p, a }
            }
            "scalar" => {
                let [p, a, m] = self.ints()?;
                GroupExpr::Scalar { p, a, m }
            }
            "csd" => {
                let [n, m, k] = self.ints()?;
                GroupExpr::CyclicSemidirect { n, m, k }
            }
            "direct" => {
                let left = self.expr()?;
                self.expect(Token::Comma)?;
                let right = self.expr()?;
                self.expect(Token::Close)?;
                GroupExpr::Direct(Box::new(left), Box::new(right))
            }
            "pair" => {
                let [p, q, a, b] = self.ints()?;
                GroupExpr::Pair { p, q, a, b }
            }
            "family" => {
                let [p, q, r, a, b] = self.ints()?;
                GroupExpr::Family(FamilyParams::new(p, q, r, a, b)?)
            }
            "heis3" => {
                self.expect(Token::Close)?;
                GroupExpr::Heisenberg3
            }
            other => return Err(parse_error(format!("unknown group constructor '{other}'"))),
        })
    }
}

impl std::str::FromStr for GroupExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupExpr> {
        let trimmed = s.trim();
        if trimmed.starts_with(|c: char| c.is_ascii_digit()) {
            return Ok(GroupExpr::Family(trimmed.parse()?));
        }
        let mut parser = Parser { tokens: tokenize(trimmed)?, pos: 0 };
        let e = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(parse_error("trailing input after group expression"));
        }
        Ok(e)
    }
}

impl GroupExpr {
    pub fn build(&self, limits: Limits) -> Result<Arc<FiniteGroup>> {
        match self {
            GroupExpr::Cyclic(n) => cyclic_with_limits(*n, limits),
            GroupExpr::Field { p, a } => {
                let f = Arc::new(make_field_capped(*p, *a, limits.element_cap)?);
                field_additive(&f, limits)
            }
            GroupExpr::Scalar { p, a, m } => field_by_cyclic(*p, *a, *m, limits),
            GroupExpr::CyclicSemidirect { n, m, k } => cyclic_by_cyclic(*n, *m, *k, limits),
            GroupExpr::Direct(l, r) => direct_product(&l.build(limits)?, &r.build(limits)?),
            GroupExpr::Pair { p, q, a, b } => {
                let (h1, h2) = family_components(*p, *q, *a, *b, limits)?;
                direct_product(&h1, &h2)
            }
            GroupExpr::Family(params) => build_family_group(*params, limits),
            GroupExpr::Heisenberg3 => heisenberg_mod3(limits),
        }
    }
}
