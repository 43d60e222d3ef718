//! Recursive-descent parser for polynomial expressions in `q`:
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor | <literal> 'q')*
//! factor := atom ('^' int)?
//! atom   := int | int '/' int | 'q' | '(' expr ')'
//! ```
//!
//! A literal immediately followed by `q` multiplies it (`3q^2` is `3*q^2`).
//! Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::poly::{Degree, Poly};
use crate::ring::RingCtx;

pub const DEFAULT_MAX_DEGREE: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("parse error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("negative exponent at byte {offset}")]
    NegativeExponent { offset: usize },
    #[error("rational literal at byte {offset} needs a field, but the ring is {ring}")]
    RationalOverNonField { offset: usize, ring: String },
    #[error("degree {degree} at byte {offset} exceeds the cap of {cap} (QRULES_MAX_DEGREE)")]
    DegreeTooLarge {
        offset: usize,
        degree: usize,
        cap: usize,
    },
    #[error("at byte {offset}: {source}")]
    Ring { offset: usize, source: Error },
}

/// Parse tree of an expression. Literals are kept as integer fractions
/// until evaluation in a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyExpr {
    Int(BigInt),
    Ratio(BigInt, BigInt),
    Q,
    Neg(Box<PolyExpr>),
    Sum(Box<PolyExpr>, Box<PolyExpr>),
    Difference(Box<PolyExpr>, Box<PolyExpr>),
    Product(Box<PolyExpr>, Box<PolyExpr>),
    Power(Box<PolyExpr>, u32),
}

/// A parse-tree node tagged with its byte offset, for error reporting
/// during evaluation.
#[derive(Clone, Debug)]
struct Node {
    offset: usize,
    expr: Expr,
}

#[derive(Clone, Debug)]
enum Expr {
    Int(BigInt),
    Ratio(BigInt, BigInt),
    Q,
    Neg(Box<Node>),
    Sum(Box<Node>, Box<Node>),
    Difference(Box<Node>, Box<Node>),
    Product(Box<Node>, Box<Node>),
    Power(Box<Node>, u32),
}

impl Node {
    fn to_public(&self) -> PolyExpr {
        let b = |n: &Node| Box::new(n.to_public());
        match &self.expr {
            Expr::Int(v) => PolyExpr::Int(v.clone()),
            Expr::Ratio(a, d) => PolyExpr::Ratio(a.clone(), d.clone()),
            Expr::Q => PolyExpr::Q,
            Expr::Neg(a) => PolyExpr::Neg(b(a)),
            Expr::Sum(x, y) => PolyExpr::Sum(b(x), b(y)),
            Expr::Difference(x, y) => PolyExpr::Difference(b(x), b(y)),
            Expr::Product(x, y) => PolyExpr::Product(b(x), b(y)),
            Expr::Power(x, e) => PolyExpr::Power(b(x), *e),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            offset,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            let found = self.describe_here();
            self.error(self.pos, format!("expected '{}', found {found}", c as char))
        }
    }

    fn describe_here(&mut self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(_) => {
                let rest = std::str::from_utf8(&self.src[self.pos..]).unwrap_or("?");
                format!("'{}'", rest.chars().next().unwrap_or('?'))
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            let found = self.describe_here();
            return self.error(start, format!("expected an integer, found {found}"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("decimal digits"))
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let offset = {
            self.skip_ws();
            self.pos
        };
        let mut lhs = if self.peek() == Some(b'-') {
            self.pos += 1;
            let t = self.term()?;
            Node {
                offset,
                expr: Expr::Neg(Box::new(t)),
            }
        } else {
            self.term()?
        };
        loop {
            let op_at = {
                self.skip_ws();
                self.pos
            };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Node {
                        offset: op_at,
                        expr: Expr::Sum(Box::new(lhs), Box::new(rhs)),
                    };
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Node {
                        offset: op_at,
                        expr: Expr::Difference(Box::new(lhs), Box::new(rhs)),
                    };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op_at = {
                self.skip_ws();
                self.pos
            };
            let is_literal = matches!(lhs.expr, Expr::Int(_) | Expr::Ratio(..));
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(b'q') if is_literal => {}
                _ => return Ok(lhs),
            }
            let rhs = self.factor()?;
            lhs = Node {
                offset: op_at,
                expr: Expr::Product(Box::new(lhs), Box::new(rhs)),
            };
        }
    }

    fn factor(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        self.pos += 1;
        if self.peek() == Some(b'-') {
            return Err(ParseError::NegativeExponent { offset: self.pos });
        }
        let exp_at = self.pos;
        let e = self.integer()?;
        let e = u32::try_from(e).or_else(|_| self.error(exp_at, "exponent too large"))?;
        Ok(Node {
            offset: at,
            expr: Expr::Power(Box::new(base), e),
        })
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let offset = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(Node {
                    offset,
                    expr: Expr::Q,
                })
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                if self.peek() != Some(b'/') {
                    return Ok(Node {
                        offset,
                        expr: Expr::Int(num),
                    });
                }
                self.pos += 1;
                let den_at = {
                    self.skip_ws();
                    self.pos
                };
                let den = self.integer()?;
                if den.is_zero() {
                    return self.error(den_at, "zero denominator");
                }
                Ok(Node {
                    offset,
                    expr: Expr::Ratio(num, den),
                })
            }
            _ => {
                let found = self.describe_here();
                self.error(
                    offset,
                    format!("expected a number, 'q' or '(', found {found}"),
                )
            }
        }
    }
}

fn parse_tree(text: &str) -> Result<Node, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let node = p.expr()?;
    if p.peek().is_some() {
        let found = p.describe_here();
        return p.error(p.pos, format!("unexpected {found}"));
    }
    Ok(node)
}

/// Parses `text` into its expression tree without evaluating it.
pub fn parse_expr(text: &str) -> Result<PolyExpr, ParseError> {
    parse_tree(text).map(|n| n.to_public())
}

/// The degree cap from `QRULES_MAX_DEGREE`, defaulting to 4096.
pub fn max_degree() -> usize {
    std::env::var("QRULES_MAX_DEGREE")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DEGREE)
}

fn degree_of(p: &Poly) -> usize {
    p.degree().as_usize().unwrap_or(0)
}

fn eval(node: &Node, ctx: &RingCtx, cap: usize) -> Result<Poly, ParseError> {
    let offset = node.offset;
    let ring_err = |source: Error| ParseError::Ring { offset, source };
    let check = |degree: usize| {
        if degree > cap {
            Err(ParseError::DegreeTooLarge {
                offset,
                degree,
                cap,
            })
        } else {
            Ok(())
        }
    };
    Ok(match &node.expr {
        Expr::Int(v) => Poly::constant_elem(ctx, ctx.from_bigint(v)),
        Expr::Ratio(a, d) => {
            if !ctx.is_field() {
                return Err(ParseError::RationalOverNonField {
                    offset,
                    ring: ctx.to_string(),
                });
            }
            Poly::constant_elem(ctx, ctx.from_ratio(a, d).map_err(ring_err)?)
        }
        Expr::Q => {
            check(1)?;
            Poly::q_pow(ctx, 1)
        }
        Expr::Neg(a) => -&eval(a, ctx, cap)?,
        Expr::Sum(a, b) => &eval(a, ctx, cap)? + &eval(b, ctx, cap)?,
        Expr::Difference(a, b) => &eval(a, ctx, cap)? - &eval(b, ctx, cap)?,
        Expr::Product(a, b) => {
            let (x, y) = (eval(a, ctx, cap)?, eval(b, ctx, cap)?);
            check(degree_of(&x) + degree_of(&y))?;
            &x * &y
        }
        Expr::Power(a, e) => {
            let x = eval(a, ctx, cap)?;
            if x.degree() > Degree::Finite(0) {
                check(degree_of(&x).saturating_mul(*e as usize))?;
            }
            x.pow(*e)
        }
    })
}

/// Parses and evaluates `text` over `ctx`, with the degree cap from the
/// environment.
pub fn parse_poly(text: &str, ctx: &RingCtx) -> Result<Poly, ParseError> {
    parse_poly_capped(text, ctx, max_degree())
}

pub fn parse_poly_capped(text: &str, ctx: &RingCtx, cap: usize) -> Result<Poly, ParseError> {
    eval(&parse_tree(text)?, ctx, cap)
}
