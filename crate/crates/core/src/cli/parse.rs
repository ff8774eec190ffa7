//! Expression front-end.
//!
//! ```text
//! expr   := term {('+' | '-') term}
//! term   := unary {('*' | '/') unary}
//! unary  := '-' unary | power
//! power  := base ['^' exp]
//! base   := 'x' | integer | '(' expr ')'
//! exp    := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//! ```
//!
//! Rational functions accept only integer exponents. Constants (`ExpConst`)
//! use the same grammar without `x` and with rational exponents, so
//! `"2*3^(1/2)"` and `"(-1)^(1/2)"` both parse.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{Rat, RatFunc};
use crate::shift::ExpConst;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    X,
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let tok = match c {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
                column += 1;
                continue;
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    digits.push(d);
                    chars.next();
                    column += 1;
                }
                out.push(Token {
                    tok: Tok::Int(digits.parse().expect("ascii digits")),
                    line: l,
                    column: col,
                });
                continue;
            }
            'x' => Tok::X,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(Error::Syntax {
                    line: l,
                    column: col,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        chars.next();
        column += 1;
        out.push(Token {
            tok,
            line: l,
            column: col,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

/// Values the grammar can be evaluated into.
trait Value: Sized {
    fn var(at: &Token) -> Result<Self>;
    fn int(n: BigInt) -> Result<Self>;
    fn add(self, rhs: Self, at: &Token) -> Result<Self>;
    fn sub(self, rhs: Self, at: &Token) -> Result<Self>;
    fn mul(self, rhs: Self) -> Result<Self>;
    fn div(self, rhs: Self, at: &Token) -> Result<Self>;
    fn neg(self) -> Result<Self>;
    fn pow(self, e: Rat, at: &Token) -> Result<Self>;
}

fn syntax(at: &Token, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: at.line,
        column: at.column,
        message: message.into(),
    }
}

impl Value for RatFunc {
    fn var(_: &Token) -> Result<Self> {
        Ok(RatFunc::x())
    }
    fn int(n: BigInt) -> Result<Self> {
        Ok(RatFunc::constant(Rat::from_integer(n)))
    }
    fn add(self, rhs: Self, _: &Token) -> Result<Self> {
        Ok(&self + &rhs)
    }
    fn sub(self, rhs: Self, _: &Token) -> Result<Self> {
        Ok(&self - &rhs)
    }
    fn mul(self, rhs: Self) -> Result<Self> {
        Ok(&self * &rhs)
    }
    fn div(self, rhs: Self, _: &Token) -> Result<Self> {
        self.checked_div(&rhs)
    }
    fn neg(self) -> Result<Self> {
        Ok(-self)
    }
    fn pow(self, e: Rat, at: &Token) -> Result<Self> {
        if !e.is_integer() {
            return Err(syntax(
                at,
                "exponents of rational functions must be integers",
            ));
        }
        let k = e
            .to_integer()
            .to_i64()
            .ok_or_else(|| syntax(at, "exponent out of range"))?;
        RatFunc::pow(&self, k)
    }
}

impl Value for ExpConst {
    fn var(at: &Token) -> Result<Self> {
        Err(syntax(at, "a constant cannot mention x"))
    }
    fn int(n: BigInt) -> Result<Self> {
        ExpConst::from_rat(&Rat::from_integer(n))
    }
    fn add(self, _: Self, at: &Token) -> Result<Self> {
        Err(syntax(
            at,
            "constants are products of prime powers; '+' is not allowed",
        ))
    }
    fn sub(self, _: Self, at: &Token) -> Result<Self> {
        Err(syntax(
            at,
            "constants are products of prime powers; '-' between factors is not allowed",
        ))
    }
    fn mul(self, rhs: Self) -> Result<Self> {
        Ok(&self * &rhs)
    }
    fn div(self, rhs: Self, _: &Token) -> Result<Self> {
        Ok(&self / &rhs)
    }
    fn neg(self) -> Result<Self> {
        Ok(&self * &ExpConst::from_int(-1)?)
    }
    fn pow(self, e: Rat, _: &Token) -> Result<Self> {
        Ok(ExpConst::pow(&self, &e))
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token> {
        let t = self.bump();
        if t.tok == tok {
            Ok(t)
        } else {
            Err(syntax(
                &t,
                format!("expected {what}, found {}", describe(&t.tok)),
            ))
        }
    }

    fn expr<V: Value>(&mut self) -> Result<V> {
        let mut acc = self.term::<V>()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    let op = self.bump();
                    acc = acc.add(self.term()?, &op)?;
                }
                Tok::Minus => {
                    let op = self.bump();
                    acc = acc.sub(self.term()?, &op)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<V: Value>(&mut self) -> Result<V> {
        let mut acc = self.unary::<V>()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(self.unary()?)?;
                }
                Tok::Slash => {
                    let op = self.bump();
                    acc = acc.div(self.unary()?, &op)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary<V: Value>(&mut self) -> Result<V> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return self.unary::<V>()?.neg();
        }
        self.power()
    }

    fn power<V: Value>(&mut self) -> Result<V> {
        let base = self.base::<V>()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let caret = self.bump();
        let e = self.exponent()?;
        base.pow(e, &caret)
    }

    fn base<V: Value>(&mut self) -> Result<V> {
        let t = self.bump();
        match &t.tok {
            Tok::X => V::var(&t),
            Tok::Int(n) => V::int(n.clone()),
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(v)
            }
            other => Err(syntax(
                &t,
                format!("expected x, a number or '(', found {}", describe(other)),
            )),
        }
    }

    fn exponent(&mut self) -> Result<Rat> {
        if self.peek().tok == Tok::LParen {
            self.bump();
            let num = self.signed_int()?;
            let mut e = Rat::from_integer(num);
            if self.peek().tok == Tok::Slash {
                self.bump();
                let t = self.peek().clone();
                let den = self.signed_int()?;
                if den.is_zero() {
                    return Err(syntax(&t, "zero denominator in exponent"));
                }
                e /= Rat::from_integer(den);
            }
            self.expect(Tok::RParen, "')'")?;
            return Ok(e);
        }
        Ok(Rat::from_integer(self.signed_int()?))
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let negative = self.peek().tok == Tok::Minus;
        if negative {
            self.bump();
        }
        let t = self.bump();
        match &t.tok {
            Tok::Int(n) => Ok(if negative { -n } else { n.clone() }),
            other => Err(syntax(
                &t,
                format!("expected an integer, found {}", describe(other)),
            )),
        }
    }

    fn finish<V>(&mut self, v: V) -> Result<V> {
        let t = self.peek();
        if t.tok != Tok::End {
            return Err(syntax(t, format!("unexpected {}", describe(&t.tok))));
        }
        Ok(v)
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::X => "'x'".into(),
        Tok::Int(n) => format!("number {n}"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn parse<V: Value>(text: &str) -> Result<V> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let v = p.expr::<V>()?;
    p.finish(v)
}

pub fn parse_ratfunc(text: &str) -> Result<RatFunc> {
    parse(text)
}

pub fn parse_expconst(text: &str) -> Result<ExpConst> {
    parse(text)
}

/// A nonzero rational, such as a step `h`.
pub fn parse_rational(text: &str) -> Result<Rat> {
    let f = parse_ratfunc(text)?;
    f.as_constant()
        .ok_or_else(|| Error::InvalidInput(format!("'{text}' is not a constant")))
}

/// An integer given in decimal, with optional sign.
pub fn parse_integer(text: &str) -> Result<i64> {
    let r = parse_rational(text)?;
    if !r.is_integer() {
        return Err(Error::InvalidInput(format!("'{text}' is not an integer")));
    }
    r.to_integer()
        .to_i64()
        .filter(|v| v.abs() < i64::MAX)
        .ok_or_else(|| Error::InvalidInput(format!("'{text}' is out of range")))
}
