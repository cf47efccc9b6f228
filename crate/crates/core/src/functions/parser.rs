//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (("+"|"-") term)*
//! term   := factor (("*"|"/") factor)*
//! factor := base ("^" INT)?
//! base   := NUM | "i" | VAR | "(" expr ")" | FUNC "(" expr ")" | "-" base
//! FUNC   := "log" | "log2pi" | "exp"
//! VAR    := "x" INT
//! ```

use thiserror::Error;

use super::Expr;
use crate::jet::{Cplx, LogBranch};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{index} exceeds arity {arity}")]
    Arity { index: usize, arity: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i];
        let start = i;
        let tok = match ch {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let mut is_int = true;
                if i < bytes.len() && bytes[i] == b'.' {
                    is_int = false;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let lit = &text[start..i];
                if lit == "." {
                    return Err(syntax(start, "lone decimal point"));
                }
                let tok = if is_int {
                    lit.parse::<u64>()
                        .map(Tok::Int)
                        .map_err(|_| syntax(start, format!("integer literal {lit} too large")))?
                } else {
                    Tok::Num(lit.parse::<f64>().map_err(|_| syntax(start, "bad number"))?)
                };
                out.push((start, tok));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let c = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character {c:?}")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    arity: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = lhs + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    lhs = lhs - self.term()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = lhs * self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    lhs = lhs / self.factor()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(m) => {
                let m = u32::try_from(m).map_err(|_| syntax(pos, "exponent too large"))?;
                Ok(base.pow(m))
            }
            _ => Err(syntax(pos, "expected a nonnegative integer exponent")),
        }
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(v) => Ok(Expr::real(v)),
            Tok::Int(v) => Ok(Expr::real(v as f64)),
            Tok::Minus => Ok(-self.base()?),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => self.ident(pos, &name),
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            t => Err(syntax(pos, format!("unexpected token {t:?}"))),
        }
    }

    fn ident(&mut self, pos: usize, name: &str) -> Result<Expr, ParseError> {
        let func = |p: &mut Parser| -> Result<Expr, ParseError> {
            p.expect(Tok::LParen, "'(' after function name")?;
            let e = p.expr()?;
            p.expect(Tok::RParen, "')'")?;
            Ok(e)
        };
        match name {
            "i" => Ok(Expr::constant(Cplx::new(0.0, 1.0))),
            "log" => Ok(func(self)?.log(LogBranch::Principal)),
            "log2pi" => Ok(func(self)?.log(LogBranch::CutPositiveAxis)),
            "exp" => Ok(func(self)?.exp()),
            _ => {
                let digits = name
                    .strip_prefix('x')
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                    .ok_or_else(|| syntax(pos, format!("unknown identifier {name:?}")))?;
                let k: usize = digits
                    .parse()
                    .map_err(|_| syntax(pos, "variable index too large"))?;
                if k == 0 {
                    return Err(syntax(pos, "variables are numbered from x1"));
                }
                if k > self.arity {
                    return Err(ParseError::Arity { index: k, arity: self.arity });
                }
                Ok(Expr::var(k))
            }
        }
    }
}

/// Parses `text` as a function of `x1..x{arity}`.
pub fn parse(text: &str, arity: usize) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        arity,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), "trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Cplx {
        Cplx::new(re, im)
    }

    #[test]
    fn countex1_shape() {
        let f = parse("(x2+1)*log2pi(x1-1)", 2).unwrap();
        let want = (Expr::var(2) + Expr::real(1.0))
            * (Expr::var(1) - Expr::real(1.0)).log(LogBranch::CutPositiveAxis);
        assert_eq!(f, want);
    }

    #[test]
    fn variables_and_arity() {
        assert_eq!(parse("x1", 1).unwrap(), Expr::Var(1));
        assert_eq!(parse("x3", 2), Err(ParseError::Arity { index: 3, arity: 2 }));
        assert!(matches!(parse("x0", 2), Err(ParseError::Syntax { pos: 0, .. })));
    }

    #[test]
    fn precedence() {
        assert_eq!(
            parse("1+2*x1^3", 1).unwrap(),
            Expr::real(1.0) + Expr::real(2.0) * Expr::var(1).pow(3)
        );
        // unary minus binds inside the base, so it is raised with it
        assert_eq!(parse("-x1^2", 1).unwrap(), (-Expr::var(1)).pow(2));
        assert_eq!(
            parse("x1-x2-x3", 3).unwrap(),
            (Expr::var(1) - Expr::var(2)) - Expr::var(3)
        );
        assert_eq!(
            parse("0.5*i", 1).unwrap(),
            Expr::real(0.5) * Expr::constant(c(0.0, 1.0))
        );
        assert_eq!(parse(".25", 1).unwrap(), Expr::real(0.25));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let cases = [
            ("x1 +", 4),
            ("(x1", 3),
            ("x1 ^ 1.5", 5),
            ("sin(x1)", 0),
            ("x1 $ 2", 3),
            ("log x1", 4),
            ("x1 x1", 3),
            ("", 0),
        ];
        for (text, at) in cases {
            match parse(text, 2) {
                Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, at, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
