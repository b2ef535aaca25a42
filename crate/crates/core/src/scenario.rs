//! Line-oriented scenario files.
//!
//! ```text
//! vars a b
//! state flat                      # or: state formula <f> | state classes <f> ; <f> ; ...
//! revise lex a | b
//! revise nat a
//! query state
//! query compare {a} {b}
//! query redundant 1               # steps are numbered from 1
//! query redundant-first-lex
//! query leq-lex {a} {}
//! query horn-redundant a ; ~a | b vs b
//! query horn-neg-equiv ~x vs x
//! ```
//!
//! `#` starts a comment. Revisions are applied in order, and each query
//! answers for the revisions declared before it. Without a `state` line the
//! initial state is flat.

use std::fmt;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::formula::{parse, parse_model, Alphabet, Formula, Model};
use crate::horn::{self, classify_redundancy, horn_equiv_negation, HornFormula};
use crate::lexredundancy::{mixed_lex_vrad_leq, redundant_first_lex_flat, redundant_general};
use crate::revision::{Operator, RevisionStep};
use crate::state::DoxasticState;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InitialState {
    Flat,
    Formula(Formula),
    Classes(Vec<Formula>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    State,
    Compare(Model, Model),
    /// 1-based step number.
    Redundant(usize),
    RedundantFirstLex,
    LeqLex(Model, Model),
    HornRedundant(HornFormula, HornFormula),
    HornNegEquiv(HornFormula, HornFormula),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Revise(RevisionStep),
    Query(Query),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub alphabet: Alphabet,
    pub initial: InitialState,
    /// Revisions and queries with their source line.
    pub items: Vec<(usize, Item)>,
}

/// An error tied to a line of the scenario file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioError {
    pub line: usize,
    pub error: Error,
}

impl ScenarioError {
    pub fn is_parse_error(&self) -> bool {
        self.error.is_parse_error()
    }
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.error {
            // already carries its own position
            Error::Syntax { .. } | Error::NotHorn { .. } => write!(f, "{}", self.error),
            e => write!(f, "line {}: {e}", self.line),
        }
    }
}

impl std::error::Error for ScenarioError {}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ScenarioError {
    ScenarioError {
        line,
        error: Error::Syntax {
            line,
            column,
            message: message.into(),
        },
    }
}

/// Re-anchors an error from a sub-parser that saw only `text`, which starts
/// at byte `offset` of scenario line `line`.
fn relocate(e: Error, line: usize, offset: usize) -> ScenarioError {
    let error = match e {
        Error::Syntax {
            line: 1,
            column,
            message,
        } => Error::Syntax {
            line,
            column: column + offset,
            message,
        },
        Error::NotHorn { clause, .. } => Error::NotHorn { line, clause },
        other => other,
    };
    ScenarioError { line, error }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(code, _)| code)
}

/// Splits the first whitespace-delimited word off `text`, returning the word,
/// the remainder, and the remainder's byte offset within `text`.
fn word(text: &str) -> (&str, &str, usize) {
    let start = text.len() - text.trim_start().len();
    let rest = &text[start..];
    let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
    let after = &rest[end..];
    let skip = after.len() - after.trim_start().len();
    (&rest[..end], after.trim_start(), start + end + skip)
}

/// Two `{...}` model literals.
fn two_models(
    text: &str,
    alphabet: &Alphabet,
    line: usize,
    offset: usize,
) -> Result<(Model, Model), ScenarioError> {
    let mut models = Vec::new();
    let mut rest = text;
    let mut at = offset;
    while !rest.trim().is_empty() {
        let lead = rest.len() - rest.trim_start().len();
        let body = &rest[lead..];
        let close = body
            .find('}')
            .filter(|_| body.starts_with('{'))
            .ok_or_else(|| syntax(line, at + lead + 1, "expected a model literal like {a,c}"))?;
        let m = parse_model(&body[..=close], alphabet).map_err(|e| relocate(e, line, at + lead))?;
        models.push(m);
        rest = &body[close + 1..];
        at += lead + close + 1;
    }
    match models[..] {
        [i, j] => Ok((i, j)),
        _ => Err(syntax(
            line,
            offset + 1,
            format!("expected two models, found {}", models.len()),
        )),
    }
}

fn horn_pair(
    text: &str,
    alphabet: &Alphabet,
    line: usize,
    offset: usize,
) -> Result<(HornFormula, HornFormula), ScenarioError> {
    let split = text
        .find(" vs ")
        .ok_or_else(|| syntax(line, offset + 1, "expected `<clauses> vs <clauses>`"))?;
    let (left, right) = (&text[..split], &text[split + 4..]);
    let f1 = horn::parse(left, alphabet).map_err(|e| relocate(e, line, offset))?;
    let f2 = horn::parse(right, alphabet).map_err(|e| relocate(e, line, offset + split + 4))?;
    Ok((f1, f2))
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, ScenarioError> {
        let mut alphabet: Option<Alphabet> = None;
        let mut initial: Option<InitialState> = None;
        let mut items = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let code = strip_comment(raw);
            if code.trim().is_empty() {
                continue;
            }
            let (keyword, rest, offset) = word(code);
            if keyword == "vars" {
                if alphabet.is_some() {
                    return Err(syntax(line, 1, "duplicate `vars` line"));
                }
                let names = rest.split_whitespace();
                alphabet =
                    Some(Alphabet::new(names).map_err(|error| ScenarioError { line, error })?);
                continue;
            }
            let al = alphabet
                .as_ref()
                .ok_or_else(|| syntax(line, 1, "`vars` must come first"))?;
            let formula =
                |text: &str, at: usize| parse(text, al).map_err(|e| relocate(e, line, at));
            match keyword {
                "state" => {
                    if initial.is_some() || !items.is_empty() {
                        return Err(syntax(
                            line,
                            1,
                            "`state` must appear once, before revisions and queries",
                        ));
                    }
                    let (kind, body, at) = word(rest);
                    let at = offset + at;
                    initial = Some(match kind {
                        "flat" if body.is_empty() => InitialState::Flat,
                        "formula" => InitialState::Formula(formula(body, at)?),
                        "classes" => {
                            let mut classes = Vec::new();
                            let mut pos = at;
                            for part in body.split(';') {
                                classes.push(formula(part, pos)?);
                                pos += part.len() + 1;
                            }
                            InitialState::Classes(classes)
                        }
                        _ => {
                            return Err(syntax(
                                line,
                                offset + 1,
                                "expected `state flat`, `state formula <f>` or `state classes <f> ; ...`",
                            ))
                        }
                    });
                }
                "revise" => {
                    let (op, body, at) = word(rest);
                    let operator: Operator = op.parse().map_err(|_| {
                        syntax(line, offset + 1, format!("unknown operator `{op}`"))
                    })?;
                    let payload = formula(body, offset + at)?;
                    items.push((line, Item::Revise(RevisionStep::new(operator, payload))));
                }
                "query" => {
                    let (kind, body, at) = word(rest);
                    let at = offset + at;
                    let query = match kind {
                        "state" if body.is_empty() => Query::State,
                        "redundant-first-lex" if body.is_empty() => Query::RedundantFirstLex,
                        "compare" => {
                            let (i, j) = two_models(body, al, line, at)?;
                            Query::Compare(i, j)
                        }
                        "leq-lex" => {
                            let (i, j) = two_models(body, al, line, at)?;
                            Query::LeqLex(i, j)
                        }
                        "redundant" => match body.trim().parse::<usize>() {
                            Ok(n) if n >= 1 => Query::Redundant(n),
                            _ => return Err(syntax(line, at + 1, "expected a step number from 1")),
                        },
                        "horn-redundant" => {
                            let (f1, f2) = horn_pair(body, al, line, at)?;
                            Query::HornRedundant(f1, f2)
                        }
                        "horn-neg-equiv" => {
                            let (f1, f2) = horn_pair(body, al, line, at)?;
                            Query::HornNegEquiv(f1, f2)
                        }
                        _ => {
                            return Err(syntax(
                                line,
                                offset + 1,
                                format!("unknown query `{}`", rest.trim()),
                            ))
                        }
                    };
                    items.push((line, Item::Query(query)));
                }
                other => return Err(syntax(line, 1, format!("unknown directive `{other}`"))),
            }
        }
        let alphabet = alphabet.ok_or_else(|| syntax(1, 1, "missing `vars` line"))?;
        Ok(Scenario {
            alphabet,
            initial: initial.unwrap_or(InitialState::Flat),
            items,
        })
    }

    /// The revisions, in order.
    pub fn steps(&self) -> impl Iterator<Item = &RevisionStep> {
        self.items.iter().filter_map(|(_, item)| match item {
            Item::Revise(step) => Some(step),
            Item::Query(_) => None,
        })
    }

    pub fn initial_state(&self) -> Result<DoxasticState> {
        match &self.initial {
            InitialState::Flat => DoxasticState::flat(&self.alphabet),
            InitialState::Formula(f) => DoxasticState::from_formula(f, &self.alphabet),
            InitialState::Classes(cs) => DoxasticState::from_formulas(&self.alphabet, cs),
        }
    }

    /// Executes the scenario, writing one line per query answer to `out`.
    /// Answers produced before a failing line are kept.
    pub fn run(&self, out: &mut dyn Write) -> Result<(), RunError> {
        let first_line = self.items.first().map_or(1, |(l, _)| *l);
        let initial = self.initial_state().map_err(|error| ScenarioError {
            line: first_line,
            error,
        })?;
        let mut state = initial.clone();
        let mut steps: Vec<RevisionStep> = Vec::new();
        for (line, item) in &self.items {
            let at = |error| ScenarioError { line: *line, error };
            match item {
                Item::Revise(step) => {
                    state = step
                        .apply(&state)
                        .map_err(|e| match e {
                            Error::InconsistentRevision { .. } => Error::InconsistentRevision {
                                step: Some(steps.len()),
                            },
                            other => other,
                        })
                        .map_err(at)?;
                    steps.push(step.clone());
                }
                Item::Query(q) => {
                    let answer = self.answer(q, &initial, &state, &steps).map_err(at)?;
                    writeln!(out, "{answer}")?;
                }
            }
        }
        Ok(())
    }

    fn answer(
        &self,
        q: &Query,
        initial: &DoxasticState,
        state: &DoxasticState,
        steps: &[RevisionStep],
    ) -> Result<String> {
        let flat_only = |what: &str| {
            if self.initial != InitialState::Flat {
                return Err(Error::InvalidState(format!(
                    "`{what}` needs the flat initial state"
                )));
            }
            Ok(())
        };
        Ok(match q {
            Query::State => state.to_string(),
            Query::Compare(i, j) => state.compare(*i, *j).to_string(),
            Query::Redundant(k) => {
                let redundant = redundant_general(initial, steps, k - 1).map_err(|e| match e {
                    Error::IndexOutOfRange { len, .. } => Error::IndexOutOfRange { index: *k, len },
                    other => other,
                })?;
                format!(
                    "step {k}: {}",
                    if redundant {
                        "redundant"
                    } else {
                        "irredundant"
                    }
                )
            }
            Query::RedundantFirstLex => {
                flat_only("redundant-first-lex")?;
                if let Some(s) = steps.iter().find(|s| s.operator != Operator::Lex) {
                    return Err(Error::UnsupportedOperator(s.operator.to_string()));
                }
                let formulae: Vec<Formula> = steps.iter().map(|s| s.payload.clone()).collect();
                let redundant = redundant_first_lex_flat(&formulae, &self.alphabet)?;
                format!(
                    "step 1: {}",
                    if redundant {
                        "redundant"
                    } else {
                        "irredundant"
                    }
                )
            }
            Query::LeqLex(i, j) => {
                flat_only("leq-lex")?;
                mixed_lex_vrad_leq(steps, *i, *j)?.to_string()
            }
            Query::HornRedundant(f1, f2) => match classify_redundancy(f1, f2) {
                Some(case) => format!("true ({case})"),
                None => "false".to_string(),
            },
            Query::HornNegEquiv(f1, f2) => horn_equiv_negation(f1, f2).result.to_string(),
        })
    }
}

/// Failure of [`Scenario::run`].
#[derive(Debug)]
pub enum RunError {
    Scenario(ScenarioError),
    Io(io::Error),
}

impl From<ScenarioError> for RunError {
    fn from(e: ScenarioError) -> Self {
        RunError::Scenario(e)
    }
}

impl From<io::Error> for RunError {
    fn from(e: io::Error) -> Self {
        RunError::Io(e)
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Scenario(e) => write!(f, "{e}"),
            RunError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

/// Parses and runs a scenario, collecting the answers.
pub fn run_str(text: &str) -> Result<String, ScenarioError> {
    let scenario = Scenario::parse(text)?;
    let mut out = Vec::new();
    match scenario.run(&mut out) {
        Ok(()) => Ok(String::from_utf8(out).expect("answers are UTF-8")),
        Err(RunError::Scenario(e)) => Err(e),
        Err(RunError::Io(e)) => unreachable!("writing to memory failed: {e}"),
    }
}
