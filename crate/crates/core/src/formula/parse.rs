//! Recursive-descent parser for the formula language.
//!
//! ```text
//! formula := equiv
//! equiv   := impl ("<->" impl)*
//! impl    := disj ("->" impl)?
//! disj    := conj ("|" conj)*
//! conj    := neg ("&" neg)*
//! neg     := "~" neg | atom
//! atom    := "true" | "false" | IDENT | "(" formula ")"
//! ```

use super::{is_identifier, Alphabet, Formula, Model};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    True,
    False,
    Ident(String),
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Not => "`~`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Implies => "`->`".into(),
            Token::Iff => "`<->`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::True => "`true`".into(),
            Token::False => "`false`".into(),
            Token::Ident(s) => format!("`{s}`"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<(Vec<(Token, Pos)>, Pos)> {
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        let (token, len) = match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => {
                column += 1;
                i += 1;
                continue;
            }
            '~' => (Token::Not, 1),
            '&' => (Token::And, 1),
            '|' => (Token::Or, 1),
            '(' => (Token::LParen, 1),
            ')' => (Token::RParen, 1),
            '-' if chars.get(i + 1) == Some(&'>') => (Token::Implies, 2),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                (Token::Iff, 3)
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                let mut end = i;
                while end < chars.len() && (chars[end].is_ascii_alphanumeric() || chars[end] == '_')
                {
                    end += 1;
                }
                let word: String = chars[start..end].iter().collect();
                let token = match word.as_str() {
                    "true" => Token::True,
                    "false" => Token::False,
                    w if is_identifier(w) => Token::Ident(word.clone()),
                    _ => return Err(syntax(pos, format!("invalid identifier `{word}`"))),
                };
                (token, end - start)
            }
            other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
        };
        tokens.push((token, pos));
        i += len;
        column += len;
    }
    Ok((tokens, Pos { line, column }))
}

struct Parser<'a> {
    tokens: Vec<(Token, Pos)>,
    cursor: usize,
    end: Pos,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.tokens.get(self.cursor).map_or(self.end, |(_, p)| *p)
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.cursor += 1;
            true
        } else {
            false
        }
    }

    fn equiv(&mut self) -> Result<Formula> {
        let mut lhs = self.implication()?;
        while self.eat(&Token::Iff) {
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat(&Token::Implies) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut items = vec![self.conjunction()?];
        while self.eat(&Token::Or) {
            items.push(self.conjunction()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Formula::Or(items)
        })
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut items = vec![self.negation()?];
        while self.eat(&Token::And) {
            items.push(self.negation()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Formula::And(items)
        })
    }

    fn negation(&mut self) -> Result<Formula> {
        if self.eat(&Token::Not) {
            return Ok(Formula::negate(self.negation()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        let pos = self.pos();
        let token = match self.tokens.get(self.cursor) {
            Some((t, _)) => t.clone(),
            None => return Err(syntax(pos, "unexpected end of input")),
        };
        self.cursor += 1;
        match token {
            Token::True => Ok(Formula::Const(true)),
            Token::False => Ok(Formula::Const(false)),
            Token::Ident(name) => self
                .alphabet
                .var(&name)
                .map(Formula::Var)
                .ok_or(Error::UnknownVariable(name)),
            Token::LParen => {
                let inner = self.equiv()?;
                if !self.eat(&Token::RParen) {
                    return Err(syntax(self.pos(), "expected `)`"));
                }
                Ok(inner)
            }
            other => Err(syntax(pos, format!("unexpected {}", other.describe()))),
        }
    }
}

/// Parses `text` into a formula over `alphabet`.
pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Formula> {
    let (tokens, end) = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end,
        alphabet,
    };
    let formula = parser.equiv()?;
    if let Some(token) = parser.peek() {
        let message = format!("unexpected {} after formula", token.describe());
        return Err(syntax(parser.pos(), message));
    }
    Ok(formula)
}

/// Parses a model literal such as `{a,c}` or `{}`.
pub fn parse_model(text: &str, alphabet: &Alphabet) -> Result<Model> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::Syntax {
            line: 1,
            column: 1,
            message: format!("expected a model literal like {{a,c}}, found `{trimmed}`"),
        })?;
    let names: Vec<&str> = inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    alphabet.model(&names)
}
