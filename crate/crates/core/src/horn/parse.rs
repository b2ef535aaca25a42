//! Clause-list syntax: one clause per line or `;`-separated, literals joined
//! by `|`, `~` for negation, `FALSE` for the empty clause, `#` comments.

use super::{HornClause, HornFormula, Literal};
use crate::error::{Error, Result};
use crate::formula::{is_identifier, Alphabet};

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(code, _)| code)
}

/// Variables mentioned in the clause lists, in order of appearance.
pub fn infer_alphabet<'a>(texts: impl IntoIterator<Item = &'a str>) -> Result<Alphabet> {
    let code: Vec<String> = texts
        .into_iter()
        .map(|t| t.lines().map(strip_comment).collect::<Vec<_>>().join("\n"))
        .collect();
    Alphabet::infer(code.iter().map(String::as_str))
}

pub fn parse(text: &str, alphabet: &Alphabet) -> Result<HornFormula> {
    let mut clauses = Vec::new();
    let mut index = 0;
    for (line_no, raw) in text.lines().enumerate() {
        let line = line_no + 1;
        let code = strip_comment(raw);
        let mut offset = 0;
        for chunk in code.split(';') {
            let chunk_start = offset;
            offset += chunk.len() + 1;
            if chunk.trim().is_empty() {
                continue;
            }
            index += 1;
            if chunk.trim() == "FALSE" {
                clauses.push(HornClause::empty());
                continue;
            }
            let mut literals = Vec::new();
            let mut lit_offset = chunk_start;
            for piece in chunk.split('|') {
                let column = lit_offset + piece.len() - piece.trim_start().len() + 1;
                lit_offset += piece.len() + 1;
                let token = piece.trim();
                let (negated, name) = match token.strip_prefix('~') {
                    Some(rest) => (true, rest.trim_start()),
                    None => (false, token),
                };
                if !is_identifier(name) || name == "true" || name == "false" {
                    return Err(Error::Syntax {
                        line,
                        column,
                        message: format!("expected a literal, found `{token}`"),
                    });
                }
                let var = alphabet
                    .var(name)
                    .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                literals.push(if negated {
                    Literal::neg(var)
                } else {
                    Literal::pos(var)
                });
            }
            let clause = HornClause::from_literals(literals).ok_or(Error::NotHorn {
                line,
                clause: index,
            })?;
            clauses.push(clause);
        }
    }
    Ok(HornFormula::new(clauses))
}
