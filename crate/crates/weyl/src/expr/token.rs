//! Longest-match tokenizer for operator expressions.

use super::ExprError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    /// Unsigned integer, `p/q` fraction, or finite decimal.
    Number,
    Symbol,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// Byte offset into the source.
    pub pos: usize,
}

/// Splits `src` into tokens, skipping whitespace. Fractions `p/q` and
/// finite decimals lex as a single number token; there is no standalone
/// division operator (the algebra has no inverses).
pub fn tokenize(src: &str) -> Result<Vec<Token>, ExprError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let b = bytes[i];
        if b.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let kind = match b {
            b'+' => Some(TokenKind::Plus),
            b'-' => Some(TokenKind::Minus),
            b'*' => Some(TokenKind::Star),
            b'^' => Some(TokenKind::Caret),
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            _ => None,
        };
        if let Some(kind) = kind {
            i += 1;
            tokens.push(Token { kind, text: src[start..i].to_string(), pos: start });
            continue;
        }
        if b.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            // fraction or decimal continuation, only when digits follow
            if i + 1 < bytes.len()
                && (bytes[i] == b'/' || bytes[i] == b'.')
                && bytes[i + 1].is_ascii_digit()
            {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            tokens.push(Token {
                kind: TokenKind::Number,
                text: src[start..i].to_string(),
                pos: start,
            });
            continue;
        }
        if b.is_ascii_alphabetic() {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Symbol,
                text: src[start..i].to_string(),
                pos: start,
            });
            continue;
        }
        let ch = src[start..].chars().next().unwrap();
        return Err(ExprError::Lex { pos: start, ch });
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn lexes_simple_product() {
        use TokenKind::*;
        let tokens = tokenize("7*d").unwrap();
        assert_eq!(tokens.len(), 3);
        assert_eq!(tokens[0], Token { kind: Number, text: "7".into(), pos: 0 });
        assert_eq!(tokens[1].kind, Star);
        assert_eq!(tokens[2], Token { kind: Symbol, text: "d".into(), pos: 2 });
    }

    #[test]
    fn lexes_power_chain() {
        use TokenKind::*;
        let tokens = tokenize("4*x*d^3*x").unwrap();
        assert_eq!(tokens.len(), 9);
        assert_eq!(
            tokens[5..].iter().map(|t| t.kind).collect::<Vec<_>>(),
            vec![Caret, Number, Star, Symbol]
        );
        assert_eq!(tokens[6].text, "3");
    }

    #[test]
    fn minus_is_a_binary_operator_token() {
        use TokenKind::*;
        assert_eq!(
            kinds("3 + 7*d  -5*x^2*d^2"),
            vec![
                Number, Plus, Number, Star, Symbol, Minus, Number, Star, Symbol, Caret, Number,
                Star, Symbol, Caret, Number
            ]
        );
    }

    #[test]
    fn numbers_capture_fractions_and_decimals() {
        let tokens = tokenize("1/2*x + 2.5").unwrap();
        assert_eq!(tokens[0].text, "1/2");
        assert_eq!(tokens[4].text, "2.5");
        // '/' not followed by a digit is not part of a number
        assert!(matches!(tokenize("3/ 4"), Err(ExprError::Lex { pos: 1, .. })));
    }

    #[test]
    fn positions_are_byte_offsets() {
        let tokens = tokenize("  d1 * d2").unwrap();
        let positions: Vec<usize> = tokens.iter().map(|t| t.pos).collect();
        assert_eq!(positions, vec![2, 5, 7]);
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn reports_unknown_characters() {
        match tokenize("x % d") {
            Err(ExprError::Lex { pos, ch }) => {
                assert_eq!((pos, ch), (2, '%'));
            }
            other => panic!("expected lex error, got {other:?}"),
        }
    }
}
