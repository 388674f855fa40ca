//! Hand-rolled lexer for the `.qph` surface syntax.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TokenKind {
    Def,
    If,
    Inv,
    Ph,
    IdKw,
    Pi,
    Ident(String),
    /// Numeric literal; `is_int` when it has no fraction or exponent part.
    Number {
        text: String,
        is_int: bool,
    },
    Ket0,
    Ket1,
    KetPlus,
    KetMinus,
    Semi,
    /// The tensor operator, spelled `x`.
    Times,
    Caret,
    Dot,
    Equals,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Star,
    Slash,
    Minus,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TokenKind::Def => "`def`",
            TokenKind::If => "`if`",
            TokenKind::Inv => "`inv`",
            TokenKind::Ph => "`ph`",
            TokenKind::IdKw => "`id`",
            TokenKind::Pi => "`pi`",
            TokenKind::Ident(name) => return write!(f, "identifier `{name}`"),
            TokenKind::Number { text, .. } => return write!(f, "number `{text}`"),
            TokenKind::Ket0 => "`|0>`",
            TokenKind::Ket1 => "`|1>`",
            TokenKind::KetPlus => "`|+>`",
            TokenKind::KetMinus => "`|->`",
            TokenKind::Semi => "`;`",
            TokenKind::Times => "`x`",
            TokenKind::Caret => "`^`",
            TokenKind::Dot => "`.`",
            TokenKind::Equals => "`=`",
            TokenKind::LParen => "`(`",
            TokenKind::RParen => "`)`",
            TokenKind::LBrace => "`{`",
            TokenKind::RBrace => "`}`",
            TokenKind::Star => "`*`",
            TokenKind::Slash => "`/`",
            TokenKind::Minus => "`-`",
            TokenKind::Eof => "end of input",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexErrorDetail {
    pub span: Span,
    pub offending: String,
}

pub fn lex(input: &str) -> Result<Vec<Token>, LexErrorDetail> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut pos = 0;
    let mut line = 1;
    let mut col = 1;

    macro_rules! span {
        () => {
            Span { line, col }
        };
    }

    while pos < chars.len() {
        let c = chars[pos];
        // whitespace
        if c == '\n' {
            pos += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            pos += 1;
            col += 1;
            continue;
        }
        // line comments
        if c == '/' && chars.get(pos + 1) == Some(&'/') {
            while pos < chars.len() && chars[pos] != '\n' {
                pos += 1;
            }
            continue;
        }
        let start = span!();
        // kets
        if c == '|' {
            let body = chars.get(pos + 1).copied();
            let close = chars.get(pos + 2).copied();
            let kind = match (body, close) {
                (Some('0'), Some('>')) => Some(TokenKind::Ket0),
                (Some('1'), Some('>')) => Some(TokenKind::Ket1),
                (Some('+'), Some('>')) => Some(TokenKind::KetPlus),
                (Some('-'), Some('>')) => Some(TokenKind::KetMinus),
                _ => None,
            };
            match kind {
                Some(kind) => {
                    tokens.push(Token { kind, span: start });
                    pos += 3;
                    col += 3;
                    continue;
                }
                None => {
                    let offending: String = chars[pos..(pos + 3).min(chars.len())].iter().collect();
                    return Err(LexErrorDetail {
                        span: start,
                        offending,
                    });
                }
            }
        }
        // identifiers and keywords
        if c.is_ascii_alphabetic() || c == '_' {
            let begin = pos;
            while pos < chars.len() && (chars[pos].is_ascii_alphanumeric() || chars[pos] == '_') {
                pos += 1;
                col += 1;
            }
            let word: String = chars[begin..pos].iter().collect();
            let kind = match word.as_str() {
                "def" => TokenKind::Def,
                "if" => TokenKind::If,
                "inv" => TokenKind::Inv,
                "ph" => TokenKind::Ph,
                "id" => TokenKind::IdKw,
                "pi" => TokenKind::Pi,
                "x" => TokenKind::Times,
                _ => TokenKind::Ident(word),
            };
            tokens.push(Token { kind, span: start });
            continue;
        }
        // numbers: INT or REAL with optional exponent
        if c.is_ascii_digit() {
            let begin = pos;
            let mut is_int = true;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
                col += 1;
            }
            if pos < chars.len()
                && chars[pos] == '.'
                && chars.get(pos + 1).is_some_and(|d| d.is_ascii_digit())
            {
                is_int = false;
                pos += 1;
                col += 1;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                    col += 1;
                }
            }
            if pos < chars.len() && (chars[pos] == 'e' || chars[pos] == 'E') {
                let mut probe = pos + 1;
                if chars.get(probe) == Some(&'+') || chars.get(probe) == Some(&'-') {
                    probe += 1;
                }
                if chars.get(probe).is_some_and(|d| d.is_ascii_digit()) {
                    is_int = false;
                    while pos < probe {
                        pos += 1;
                        col += 1;
                    }
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                        col += 1;
                    }
                }
            }
            let text: String = chars[begin..pos].iter().collect();
            tokens.push(Token {
                kind: TokenKind::Number { text, is_int },
                span: start,
            });
            continue;
        }
        // single-character tokens
        let kind = match c {
            ';' => Some(TokenKind::Semi),
            '^' => Some(TokenKind::Caret),
            '.' => Some(TokenKind::Dot),
            '=' => Some(TokenKind::Equals),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            '{' => Some(TokenKind::LBrace),
            '}' => Some(TokenKind::RBrace),
            '*' => Some(TokenKind::Star),
            '/' => Some(TokenKind::Slash),
            '-' => Some(TokenKind::Minus),
            _ => None,
        };
        match kind {
            Some(kind) => {
                tokens.push(Token { kind, span: start });
                pos += 1;
                col += 1;
            }
            None => {
                return Err(LexErrorDetail {
                    span: start,
                    offending: c.to_string(),
                })
            }
        }
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        span: span!(),
    });
    Ok(tokens)
}
