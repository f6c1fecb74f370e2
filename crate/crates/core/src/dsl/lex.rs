//! Tokenizer for the description language.

use super::{ParseError, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Ident,
    Int(i64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semicolon,
    Arrow,  // -->
    MapsTo, // ->
    DotDot,
    Hyphen,
    Newline,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub line: usize,
    pub column: usize,
}

impl Token {
    pub fn span(&self) -> SourceSpan {
        let length = match self.kind {
            TokenKind::Newline => 1,
            _ => self.text.chars().count(),
        };
        SourceSpan::new(self.line, self.column, length)
    }

    /// Token text as shown in `found:` positions of errors.
    pub fn display(&self) -> &str {
        match self.kind {
            TokenKind::Newline => "end of line",
            _ => &self.text,
        }
    }
}

/// Line comments start with `//`. LF and CRLF are both accepted.
pub(crate) fn lex(text: &str) -> (Vec<Token>, Vec<ParseError>) {
    let mut tokens = Vec::new();
    let mut errors = Vec::new();

    for (line_idx, raw_line) in text.lines().enumerate() {
        let line = line_idx + 1;
        let chars: Vec<char> = raw_line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let column = i + 1;
            let c = chars[i];
            let punct = |kind: TokenKind, text: &str| Token {
                kind,
                text: text.to_string(),
                line,
                column,
            };
            match c {
                ' ' | '\t' | '\r' => i += 1,
                '/' if chars.get(i + 1) == Some(&'/') => break,
                '(' => {
                    tokens.push(punct(TokenKind::LParen, "("));
                    i += 1;
                }
                ')' => {
                    tokens.push(punct(TokenKind::RParen, ")"));
                    i += 1;
                }
                '{' => {
                    tokens.push(punct(TokenKind::LBrace, "{"));
                    i += 1;
                }
                '}' => {
                    tokens.push(punct(TokenKind::RBrace, "}"));
                    i += 1;
                }
                '[' => {
                    tokens.push(punct(TokenKind::LBracket, "["));
                    i += 1;
                }
                ']' => {
                    tokens.push(punct(TokenKind::RBracket, "]"));
                    i += 1;
                }
                ',' => {
                    tokens.push(punct(TokenKind::Comma, ","));
                    i += 1;
                }
                ':' => {
                    tokens.push(punct(TokenKind::Colon, ":"));
                    i += 1;
                }
                ';' => {
                    tokens.push(punct(TokenKind::Semicolon, ";"));
                    i += 1;
                }
                '-' => {
                    if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                        tokens.push(punct(TokenKind::Arrow, "-->"));
                        i += 3;
                    } else if chars.get(i + 1) == Some(&'>') {
                        tokens.push(punct(TokenKind::MapsTo, "->"));
                        i += 2;
                    } else if chars.get(i + 1).is_some_and(char::is_ascii_digit) {
                        i += lex_int(&chars, i, line, &mut tokens, &mut errors);
                    } else {
                        tokens.push(punct(TokenKind::Hyphen, "-"));
                        i += 1;
                    }
                }
                '.' if chars.get(i + 1) == Some(&'.') => {
                    tokens.push(punct(TokenKind::DotDot, ".."));
                    i += 2;
                }
                c if c.is_ascii_digit() => {
                    i += lex_int(&chars, i, line, &mut tokens, &mut errors);
                }
                c if c.is_ascii_alphabetic() => {
                    let mut end = i + 1;
                    while chars
                        .get(end)
                        .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
                    {
                        end += 1;
                    }
                    tokens.push(Token {
                        kind: TokenKind::Ident,
                        text: chars[i..end].iter().collect(),
                        line,
                        column,
                    });
                    i = end;
                }
                other => {
                    errors.push(ParseError {
                        span: SourceSpan::new(line, column, 1),
                        expected: "a token".to_string(),
                        found: format!("{other:?}"),
                    });
                    i += 1;
                }
            }
        }
        tokens.push(Token {
            kind: TokenKind::Newline,
            text: "\n".to_string(),
            line,
            column: chars.len() + 1,
        });
    }

    (tokens, errors)
}

fn lex_int(
    chars: &[char],
    start: usize,
    line: usize,
    tokens: &mut Vec<Token>,
    errors: &mut Vec<ParseError>,
) -> usize {
    let mut end = start;
    if chars[end] == '-' {
        end += 1;
    }
    while chars.get(end).is_some_and(char::is_ascii_digit) {
        end += 1;
    }
    let text: String = chars[start..end].iter().collect();
    match text.parse::<i64>() {
        Ok(value) => tokens.push(Token {
            kind: TokenKind::Int(value),
            text,
            line,
            column: start + 1,
        }),
        Err(_) => errors.push(ParseError {
            span: SourceSpan::new(line, start + 1, end - start),
            expected: "an integer that fits in 64 bits".to_string(),
            found: text,
        }),
    }
    end - start
}
