//! Recursive-descent parser.
//!
//! Grammar, loosest to tightest:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' uint)?
//! atom   := number | symbol | '(' expr ')'
//! ```
//!
//! `*` is left-associative and order-preserving (the product does not
//! commute), `^` binds tighter than `*`, unary minus binds looser than
//! `^`. Exponents must be literal nonnegative integers.

use super::eval::Env;
use super::token::{Token, TokenKind};
use super::{ExprError, SessionConfig};
use crate::coefficient::Coefficient;

#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Constant(Coefficient),
    Generator { name: String, pos: usize },
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
    Neg(Box<ExprAst>),
}

/// Parses a token stream. Symbols must name a generator or derivative of
/// `cfg`, or an environment binding.
pub fn parse(tokens: &[Token], cfg: &SessionConfig, env: &Env) -> Result<ExprAst, ExprError> {
    let mut parser = Parser { tokens, index: 0, cfg, env };
    let ast = parser.expr()?;
    if let Some(token) = parser.peek() {
        return Err(ExprError::Parse {
            pos: token.pos,
            message: format!("unexpected token {:?}", token.text),
        });
    }
    Ok(ast)
}

struct Parser<'a> {
    tokens: &'a [Token],
    index: usize,
    cfg: &'a SessionConfig,
    env: &'a Env,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.index)
    }

    fn advance(&mut self) -> Option<&'a Token> {
        let token = self.tokens.get(self.index);
        self.index += 1;
        token
    }

    fn end_pos(&self) -> usize {
        self.tokens.last().map(|t| t.pos + t.text.len()).unwrap_or(0)
    }

    fn expr(&mut self) -> Result<ExprAst, ExprError> {
        let mut lhs = self.term()?;
        while let Some(token) = self.peek() {
            let combine = match token.kind {
                TokenKind::Plus => ExprAst::Add,
                TokenKind::Minus => ExprAst::Sub,
                _ => break,
            };
            self.advance();
            let rhs = self.term()?;
            lhs = combine(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ExprAst, ExprError> {
        let mut lhs = self.unary()?;
        while matches!(self.peek(), Some(t) if t.kind == TokenKind::Star) {
            self.advance();
            let rhs = self.unary()?;
            lhs = ExprAst::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ExprAst, ExprError> {
        if matches!(self.peek(), Some(t) if t.kind == TokenKind::Minus) {
            self.advance();
            return Ok(ExprAst::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<ExprAst, ExprError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(t) if t.kind == TokenKind::Caret) {
            self.advance();
            let exponent = self.exponent_literal()?;
            return Ok(ExprAst::Pow(Box::new(base), exponent));
        }
        Ok(base)
    }

    fn exponent_literal(&mut self) -> Result<u32, ExprError> {
        match self.advance() {
            Some(token) if token.kind == TokenKind::Number => {
                token.text.parse::<u32>().map_err(|_| ExprError::Parse {
                    pos: token.pos,
                    message: format!(
                        "exponent must be a literal nonnegative integer, got {:?}",
                        token.text
                    ),
                })
            }
            Some(token) => Err(ExprError::Parse {
                pos: token.pos,
                message: format!(
                    "exponent must be a literal nonnegative integer, got {:?}",
                    token.text
                ),
            }),
            None => Err(ExprError::Parse {
                pos: self.end_pos(),
                message: "expected an exponent after '^'".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<ExprAst, ExprError> {
        match self.advance() {
            Some(token) if token.kind == TokenKind::Number => {
                let value = Coefficient::parse_literal(&token.text).map_err(|message| {
                    ExprError::Parse { pos: token.pos, message }
                })?;
                Ok(ExprAst::Constant(value))
            }
            Some(token) if token.kind == TokenKind::Symbol => {
                if self.cfg.resolve(&token.text).is_none() && !self.env.contains_key(&token.text) {
                    return Err(ExprError::Parse {
                        pos: token.pos,
                        message: format!("unknown symbol {:?}", token.text),
                    });
                }
                Ok(ExprAst::Generator { name: token.text.clone(), pos: token.pos })
            }
            Some(token) if token.kind == TokenKind::LParen => {
                let inner = self.expr()?;
                match self.advance() {
                    Some(close) if close.kind == TokenKind::RParen => Ok(inner),
                    Some(other) => Err(ExprError::Parse {
                        pos: other.pos,
                        message: format!("expected ')', got {:?}", other.text),
                    }),
                    None => Err(ExprError::Parse {
                        pos: self.end_pos(),
                        message: "unbalanced parenthesis".into(),
                    }),
                }
            }
            Some(token) => Err(ExprError::Parse {
                pos: token.pos,
                message: format!("unexpected token {:?}", token.text),
            }),
            None => Err(ExprError::Parse {
                pos: self.end_pos(),
                message: "unexpected end of input".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::token::tokenize;
    use super::*;
    use crate::element::WeylElement;

    fn parse_str(src: &str) -> Result<ExprAst, ExprError> {
        let cfg = SessionConfig::with_arity(1);
        let mut env = Env::new();
        env.insert("d1".into(), WeylElement::one(1));
        env.insert("d2".into(), WeylElement::one(1));
        parse(&tokenize(src).unwrap(), &cfg, &env)
    }

    fn sym(name: &str, pos: usize) -> ExprAst {
        ExprAst::Generator { name: name.into(), pos }
    }

    #[test]
    fn parses_sum_of_products() {
        // d*x + 2*d^3
        let ast = parse_str("d*x + 2*d^3").unwrap();
        let expected = ExprAst::Add(
            Box::new(ExprAst::Mul(Box::new(sym("d", 0)), Box::new(sym("x", 2)))),
            Box::new(ExprAst::Mul(
                Box::new(ExprAst::Constant(Coefficient::from_integer(2))),
                Box::new(ExprAst::Pow(Box::new(sym("d", 8)), 3)),
            )),
        );
        assert_eq!(ast, expected);
    }

    #[test]
    fn caret_binds_tighter_than_star() {
        let ast = parse_str("2*d^3").unwrap();
        assert!(matches!(ast, ExprAst::Mul(_, ref rhs) if matches!(**rhs, ExprAst::Pow(_, 3))));
    }

    #[test]
    fn unary_minus_binds_looser_than_caret() {
        let ast = parse_str("-d^2").unwrap();
        assert!(matches!(ast, ExprAst::Neg(ref inner) if matches!(**inner, ExprAst::Pow(_, 2))));
    }

    #[test]
    fn mul_preserves_source_order() {
        let dx = parse_str("d*x").unwrap();
        let xd = parse_str("x*d").unwrap();
        assert_ne!(dx, xd);
    }

    #[test]
    fn environment_names_parse() {
        assert!(parse_str("(d1^2 + d2) * (d2 - 3*d1)").is_ok());
    }

    #[test]
    fn unknown_symbols_are_positioned_errors() {
        match parse_str("d * q") {
            Err(ExprError::Parse { pos, message }) => {
                assert_eq!(pos, 4);
                assert!(message.contains("unknown symbol"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_non_literal_exponents() {
        assert!(matches!(parse_str("d^x"), Err(ExprError::Parse { pos: 2, .. })));
        assert!(matches!(parse_str("d^1/2"), Err(ExprError::Parse { pos: 2, .. })));
        assert!(matches!(parse_str("d^(2)"), Err(ExprError::Parse { pos: 2, .. })));
        assert!(matches!(parse_str("d^-1"), Err(ExprError::Parse { pos: 2, .. })));
    }

    #[test]
    fn rejects_unbalanced_parens() {
        assert!(matches!(parse_str("(d + x"), Err(ExprError::Parse { .. })));
        assert!(matches!(parse_str("d + x)"), Err(ExprError::Parse { pos: 5, .. })));
    }
}
