use num_bigint::BigInt;
use num_rational::BigRational;

use super::ast::ExprAst;
use super::ExprError;

/// Largest accepted exponent magnitude.
pub const MAX_EXPONENT: i64 = 1024;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Tensor,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{}`", s),
        Tok::Int(n) => format!("`{}`", n),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Tensor => "`(x)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b')' => Tok::RParen,
            b'(' => {
                if text[i..].starts_with("(x)") {
                    i += 2;
                    Tok::Tensor
                } else {
                    Tok::LParen
                }
            }
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                Tok::Int(text[start..=i].parse().expect("digits"))
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(ExprError::Syntax { offset: i, message: format!("unexpected character `{}`", ch) });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            offset: self.offset(),
            message: format!("expected {}, found {}", expected, describe(self.peek())),
        })
    }

    fn expr(&mut self) -> Result<ExprAst, ExprError> {
        let mut terms = Vec::new();
        let mut neg = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            neg = true;
        }
        terms.push((neg, self.tterm()?));
        loop {
            let neg = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            self.bump();
            terms.push((neg, self.tterm()?));
        }
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(ExprAst::Sum(terms))
    }

    fn tterm(&mut self) -> Result<ExprAst, ExprError> {
        let mut legs = vec![self.term()?];
        while *self.peek() == Tok::Tensor {
            self.bump();
            legs.push(self.term()?);
        }
        Ok(if legs.len() == 1 { legs.pop().unwrap() } else { ExprAst::TensorProduct(legs) })
    }

    fn term(&mut self) -> Result<ExprAst, ExprError> {
        let mut fs = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            fs.push(self.factor()?);
        }
        Ok(if fs.len() == 1 { fs.pop().unwrap() } else { ExprAst::Product(fs) })
    }

    fn factor(&mut self) -> Result<ExprAst, ExprError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let Tok::Int(n) = self.peek().clone() else {
            return self.error("integer exponent");
        };
        self.bump();
        let mag: i64 = i64::try_from(&n).ok().filter(|m| *m <= MAX_EXPONENT).ok_or(ExprError::Syntax {
            offset: at,
            message: format!("exponent exceeds {}", MAX_EXPONENT),
        })?;
        let e = if neg { -mag } else { mag };
        if e < 0 && !matches!(base, ExprAst::Symbol(_)) {
            return Err(ExprError::Syntax {
                offset: at,
                message: "negative exponent requires a symbol base".into(),
            });
        }
        Ok(ExprAst::Power(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<ExprAst, ExprError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(if s == "i" { ExprAst::Imag } else { ExprAst::Symbol(s) })
            }
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let Tok::Int(d) = self.peek().clone() else {
                        return self.error("denominator");
                    };
                    if d == BigInt::from(0) {
                        return Err(ExprError::Syntax { offset: self.offset(), message: "zero denominator".into() });
                    }
                    self.bump();
                    return Ok(ExprAst::Literal(BigRational::new(n, d)));
                }
                Ok(ExprAst::Literal(BigRational::from_integer(n)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.error("`)`");
                }
                self.bump();
                Ok(e)
            }
            _ => self.error("symbol, number or `(`"),
        }
    }
}

/// Parses text in the expression grammar.
pub fn parse_expr(text: &str) -> Result<ExprAst, ExprError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("operator or end of input");
    }
    Ok(e)
}
