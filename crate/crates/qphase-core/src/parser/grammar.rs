//! Recursive-descent parser for the `.qph` grammar:
//!
//! ```text
//! file    := def* expr
//! def     := "def" IDENT "=" expr
//! expr    := tens (";" tens)*                      // ";" lowest, left-assoc
//! tens    := post ("x" post)*                      // tensor, left-assoc
//! post    := atom ("^" exponent)?                  // exponent tightest
//! atom    := "ph" "(" angle ")" | "id" "(" INT ")" | "id"
//!          | "if" pattern "{" expr "}" | "inv" "(" expr ")"
//!          | IDENT | "(" expr ")"
//! pattern := pcomp ("x" pcomp)*
//! pcomp   := patom ("." patom)*                    // function-order composition
//! patom   := "|0>" | "|1>" | "|+>" | "|->" | atom | "(" pattern ")"
//! angle   := ["-"] REAL | ["-"] [REAL "*"] "pi" ["/" INT]
//! exponent:= ["-"] (REAL | INT "/" INT)
//! ```
//!
//! `id` alone means `id(1)`. A parenthesized group in pattern position parses
//! as a pattern; if a `;` follows inside the parentheses the group so far
//! must be a unitary pattern and parsing continues in term mode, so
//! `if (CX; XC) { .. }` works without backtracking.

use std::collections::HashSet;

use crate::ast::Angle;

use super::lexer::{lex, Span, Token, TokenKind};
use super::{Definition, ParseError, SourceFile, SurfacePattern, SurfaceTerm};

pub(super) fn parse_file_impl(text: &str) -> Result<SourceFile, ParseError> {
    let tokens = lex(text).map_err(|e| ParseError::Lex {
        line: e.span.line,
        col: e.span.col,
        offending: e.offending,
    })?;
    let mut parser = Parser { tokens, pos: 0 };
    let file = parser.file()?;
    Ok(file)
}

pub(super) fn parse_pattern_impl(text: &str) -> Result<SurfacePattern, ParseError> {
    let tokens = lex(text).map_err(|e| ParseError::Lex {
        line: e.span.line,
        col: e.span.col,
        offending: e.offending,
    })?;
    let mut parser = Parser { tokens, pos: 0 };
    let pattern = parser.pattern()?;
    parser.expect(TokenKind::Eof)?;
    Ok(pattern)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_kind(&self) -> &TokenKind {
        &self.tokens[self.pos].kind
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek_kind() == kind {
            self.advance();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let tok = self.peek();
        ParseError::Unexpected {
            line: tok.span.line,
            col: tok.span.col,
            found: tok.kind.to_string(),
            expected: expected.to_string(),
        }
    }

    fn expect(&mut self, kind: TokenKind) -> Result<Token, ParseError> {
        if self.peek_kind() == &kind {
            Ok(self.advance())
        } else {
            Err(self.unexpected(&kind.to_string()))
        }
    }

    fn file(&mut self) -> Result<SourceFile, ParseError> {
        let mut defs = Vec::new();
        let mut names = HashSet::new();
        while self.eat(&TokenKind::Def) {
            let tok = self.advance();
            let name = match tok.kind {
                TokenKind::Ident(name) => name,
                _ => {
                    return Err(ParseError::Unexpected {
                        line: tok.span.line,
                        col: tok.span.col,
                        found: tok.kind.to_string(),
                        expected: "definition name".into(),
                    })
                }
            };
            if !names.insert(name.clone()) {
                return Err(ParseError::DuplicateDef {
                    line: tok.span.line,
                    col: tok.span.col,
                    name,
                });
            }
            self.expect(TokenKind::Equals)?;
            let body = self.expr()?;
            defs.push(Definition {
                name,
                body,
                name_span: tok.span,
            });
        }
        let main = self.expr()?;
        self.expect(TokenKind::Eof)?;
        Ok(SourceFile { defs, main })
    }

    fn expr(&mut self) -> Result<SurfaceTerm, ParseError> {
        let mut acc = self.tens()?;
        while self.eat(&TokenKind::Semi) {
            let rhs = self.tens()?;
            acc = SurfaceTerm::Seq(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn tens(&mut self) -> Result<SurfaceTerm, ParseError> {
        let mut acc = self.post()?;
        while self.eat(&TokenKind::Times) {
            let rhs = self.post()?;
            acc = SurfaceTerm::Tensor(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn post(&mut self) -> Result<SurfaceTerm, ParseError> {
        let atom = self.atom()?;
        if self.eat(&TokenKind::Caret) {
            let exponent = self.exponent()?;
            Ok(SurfaceTerm::Pow(Box::new(atom), exponent))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<SurfaceTerm, ParseError> {
        match self.peek_kind().clone() {
            TokenKind::Ph => {
                self.advance();
                self.expect(TokenKind::LParen)?;
                let angle = self.angle()?;
                self.expect(TokenKind::RParen)?;
                Ok(SurfaceTerm::Phase(angle))
            }
            TokenKind::IdKw => {
                self.advance();
                if self.eat(&TokenKind::LParen) {
                    let n = self.integer("qubit count")?;
                    self.expect(TokenKind::RParen)?;
                    Ok(SurfaceTerm::Identity(n))
                } else {
                    Ok(SurfaceTerm::Identity(1))
                }
            }
            TokenKind::If => {
                self.advance();
                let pattern = self.pattern()?;
                self.expect(TokenKind::LBrace)?;
                let body = self.expr()?;
                self.expect(TokenKind::RBrace)?;
                Ok(SurfaceTerm::IfLet(pattern, Box::new(body)))
            }
            TokenKind::Inv => {
                self.advance();
                self.expect(TokenKind::LParen)?;
                let inner = self.expr()?;
                self.expect(TokenKind::RParen)?;
                Ok(SurfaceTerm::Inv(Box::new(inner)))
            }
            TokenKind::Ident(name) => {
                let span = self.peek().span;
                self.advance();
                Ok(SurfaceTerm::Ref(name, span))
            }
            TokenKind::LParen => {
                self.advance();
                let inner = self.expr()?;
                self.expect(TokenKind::RParen)?;
                Ok(inner)
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn pattern(&mut self) -> Result<SurfacePattern, ParseError> {
        let mut acc = self.pcomp()?;
        while self.eat(&TokenKind::Times) {
            let rhs = self.pcomp()?;
            acc = SurfacePattern::Tensor(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn pcomp(&mut self) -> Result<SurfacePattern, ParseError> {
        let mut acc = self.patom()?;
        while self.eat(&TokenKind::Dot) {
            let rhs = self.patom()?;
            acc = SurfacePattern::Compose(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn patom(&mut self) -> Result<SurfacePattern, ParseError> {
        match self.peek_kind() {
            TokenKind::Ket0 => {
                self.advance();
                Ok(SurfacePattern::Ket0)
            }
            TokenKind::Ket1 => {
                self.advance();
                Ok(SurfacePattern::Ket1)
            }
            TokenKind::KetPlus => {
                self.advance();
                Ok(SurfacePattern::KetPlus)
            }
            TokenKind::KetMinus => {
                self.advance();
                Ok(SurfacePattern::KetMinus)
            }
            TokenKind::LParen => {
                self.advance();
                let mut pattern = self.pattern()?;
                if self.peek_kind() == &TokenKind::Semi {
                    // the group is actually a term sequence
                    let span = self.peek().span;
                    let mut term = coerce_pattern_to_term(pattern, span)?;
                    while self.eat(&TokenKind::Semi) {
                        let rhs = self.tens()?;
                        term = SurfaceTerm::Seq(Box::new(term), Box::new(rhs));
                    }
                    pattern = SurfacePattern::Unitary(Box::new(term));
                }
                self.expect(TokenKind::RParen)?;
                Ok(pattern)
            }
            _ => {
                let atom = self.atom()?;
                Ok(SurfacePattern::Unitary(Box::new(atom)))
            }
        }
    }

    fn integer(&mut self, what: &str) -> Result<usize, ParseError> {
        let tok = self.advance();
        match &tok.kind {
            TokenKind::Number { text, is_int: true } => {
                text.parse::<usize>().map_err(|_| ParseError::BadNumber {
                    line: tok.span.line,
                    col: tok.span.col,
                    text: text.clone(),
                })
            }
            _ => Err(ParseError::Unexpected {
                line: tok.span.line,
                col: tok.span.col,
                found: tok.kind.to_string(),
                expected: what.to_string(),
            }),
        }
    }

    fn number(&mut self) -> Result<(f64, bool, Span), ParseError> {
        let tok = self.advance();
        match &tok.kind {
            TokenKind::Number { text, is_int } => {
                let value = text.parse::<f64>().map_err(|_| ParseError::BadNumber {
                    line: tok.span.line,
                    col: tok.span.col,
                    text: text.clone(),
                })?;
                Ok((value, *is_int, tok.span))
            }
            _ => Err(ParseError::Unexpected {
                line: tok.span.line,
                col: tok.span.col,
                found: tok.kind.to_string(),
                expected: "a number".into(),
            }),
        }
    }

    fn angle(&mut self) -> Result<Angle, ParseError> {
        let span = self.peek().span;
        let negative = self.eat(&TokenKind::Minus);
        let radians = match self.peek_kind() {
            TokenKind::Pi => {
                self.advance();
                let base = std::f64::consts::PI;
                if self.eat(&TokenKind::Slash) {
                    let den = self.integer("angle denominator")?;
                    if den == 0 {
                        return Err(ParseError::BadNumber {
                            line: span.line,
                            col: span.col,
                            text: "pi/0".into(),
                        });
                    }
                    base / den as f64
                } else {
                    base
                }
            }
            TokenKind::Number { .. } => {
                let (value, _, _) = self.number()?;
                if self.eat(&TokenKind::Star) {
                    self.expect(TokenKind::Pi)?;
                    let scaled = value * std::f64::consts::PI;
                    if self.eat(&TokenKind::Slash) {
                        let den = self.integer("angle denominator")?;
                        if den == 0 {
                            return Err(ParseError::BadNumber {
                                line: span.line,
                                col: span.col,
                                text: "pi/0".into(),
                            });
                        }
                        scaled / den as f64
                    } else {
                        scaled
                    }
                } else {
                    value
                }
            }
            _ => return Err(self.unexpected("an angle")),
        };
        let radians = if negative { -radians } else { radians };
        Angle::from_radians(radians).map_err(|_| ParseError::NonFiniteAngle {
            line: span.line,
            col: span.col,
        })
    }

    fn exponent(&mut self) -> Result<f64, ParseError> {
        let negative = self.eat(&TokenKind::Minus);
        let (value, is_int, span) = self.number()?;
        let value = if is_int && self.peek_kind() == &TokenKind::Slash {
            self.advance();
            let (den, den_int, den_span) = self.number()?;
            if !den_int || den == 0.0 {
                return Err(ParseError::BadNumber {
                    line: den_span.line,
                    col: den_span.col,
                    text: "exponent denominator".into(),
                });
            }
            value / den
        } else {
            value
        };
        if !value.is_finite() {
            return Err(ParseError::BadNumber {
                line: span.line,
                col: span.col,
                text: "non-finite exponent".into(),
            });
        }
        Ok(if negative { -value } else { value })
    }
}

/// Patterns that are syntactically terms (unitaries and tensors thereof) can
/// be continued as a term sequence inside parentheses.
fn coerce_pattern_to_term(p: SurfacePattern, at: Span) -> Result<SurfaceTerm, ParseError> {
    match p {
        SurfacePattern::Unitary(t) => Ok(*t),
        SurfacePattern::Tensor(a, b) => {
            let ta = coerce_pattern_to_term(*a, at)?;
            let tb = coerce_pattern_to_term(*b, at)?;
            Ok(SurfaceTerm::Tensor(Box::new(ta), Box::new(tb)))
        }
        SurfacePattern::Ket0
        | SurfacePattern::Ket1
        | SurfacePattern::KetPlus
        | SurfacePattern::KetMinus
        | SurfacePattern::Compose(_, _) => Err(ParseError::Unexpected {
            line: at.line,
            col: at.col,
            found: "`;`".into(),
            expected: "`)` (the group so far is a pattern, not a term)".into(),
        }),
    }
}
