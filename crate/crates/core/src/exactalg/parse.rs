//! Infix polynomial expressions: `x^2*y - 3/4*z + (x+y)^3`.
//!
//! Supports `+ - * / ^`, parentheses and juxtaposition (`2x`, `x y`). Division
//! is only allowed by constants.

use super::{AlgError, Polynomial};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>, AlgError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(AlgError::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a, F> {
    tokens: Vec<Token>,
    pos: usize,
    names: &'a [&'a str],
    _field: std::marker::PhantomData<F>,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Polynomial<F>, AlgError> {
        let mut acc = self.term()?;
        while let Some(Token::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial<F>, AlgError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().cloned() {
                Some(Token::Op('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Some(Token::Op('/')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    if !rhs.is_constant() || rhs.is_zero() {
                        return Err(AlgError::Parse("division by a non-constant or zero".into()));
                    }
                    acc = acc.scale(&(F::one() / rhs.constant_term()));
                }
                Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::Op('(')) => {
                    let rhs = self.power()?;
                    acc = &acc * &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial<F>, AlgError> {
        match self.peek() {
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial<F>, AlgError> {
        let base = self.atom()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .parse()
                        .map_err(|_| AlgError::Parse(format!("exponent {n} too large")))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(AlgError::Parse("expected integer exponent after '^'".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<F>, AlgError> {
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Token::Num(n)) => {
                let ten = F::from_i64(10);
                let value = n
                    .bytes()
                    .fold(F::zero(), |acc, b| acc * ten.clone() + F::from_i64((b - b'0') as i64));
                Ok(Polynomial::constant(self.nvars(), value))
            }
            Some(Token::Ident(name)) => match self.names.iter().position(|n| *n == name) {
                Some(i) => Ok(Polynomial::var(self.nvars(), i)),
                None => Err(AlgError::Parse(format!(
                    "unknown variable '{name}' (expected one of {})",
                    self.names.join(", ")
                ))),
            },
            Some(Token::Op('(')) => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Token::Op(')')) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(AlgError::Parse("missing ')'".into())),
                }
            }
            Some(t) => Err(AlgError::Parse(format!("unexpected token {t:?}"))),
            None => Err(AlgError::Parse("unexpected end of expression".into())),
        }
    }
}

/// Parses an expression over the named variables; `names[i]` is `x_i`.
pub fn parse_polynomial<F: Field>(s: &str, names: &[&str]) -> Result<Polynomial<F>, AlgError> {
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(AlgError::Parse("empty expression".into()));
    }
    let mut parser = Parser { tokens, pos: 0, names, _field: std::marker::PhantomData };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(AlgError::Parse(format!(
            "trailing input at token {:?}",
            parser.tokens[parser.pos]
        )));
    }
    Ok(p)
}
