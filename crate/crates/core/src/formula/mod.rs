//! Propositional formulae over a declared, finite alphabet.
//!
//! Models are total truth assignments encoded as bit-vectors: bit `i` is the
//! value of the `i`-th alphabet variable. Everything semantic here is decided
//! by exhaustive enumeration of the model space, which is what the rest of the
//! crate uses as its ground truth.

mod models;
mod parse;

use std::collections::BTreeSet;
use std::fmt;
use std::ops;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use models::{ModelIter, ModelSet};
pub use parse::{parse, parse_model};

/// Default cap on the alphabet size for model enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

/// Hard ceiling for a configured bound; a model set over 2^30 models is 128 MiB.
pub const MAX_ENUMERATION_BOUND: usize = 30;

/// Position of a variable in its alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered list of distinct variable names.
///
/// Cloning is cheap; the names are shared.
#[derive(Debug, Clone)]
pub struct Alphabet {
    names: Arc<[String]>,
    bound: usize,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Alphabet {}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

pub(crate) fn is_keyword(s: &str) -> bool {
    s == "true" || s == "false"
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for name in &names {
            if !is_identifier(name) || is_keyword(name) {
                return Err(Error::InvalidAlphabet(format!(
                    "`{name}` is not a valid variable name"
                )));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidAlphabet(format!(
                    "duplicate variable `{name}`"
                )));
            }
        }
        if names.len() > u32::MAX as usize {
            return Err(Error::InvalidAlphabet("too many variables".into()));
        }
        Ok(Alphabet {
            names: names.into(),
            bound: DEFAULT_ENUMERATION_BOUND,
        })
    }

    /// Same alphabet with a different enumeration bound.
    pub fn with_bound(mut self, bound: usize) -> Result<Self> {
        if bound > MAX_ENUMERATION_BOUND {
            return Err(Error::InvalidAlphabet(format!(
                "enumeration bound {bound} exceeds the maximum {MAX_ENUMERATION_BOUND}"
            )));
        }
        self.bound = bound;
        Ok(self)
    }

    /// Variables in order of first appearance in `texts`, keywords excluded.
    pub fn infer<'a, I>(texts: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut names: Vec<String> = Vec::new();
        for text in texts {
            for word in text.split(|c: char| !(c.is_ascii_alphanumeric() || c == '_')) {
                if word.is_empty() || is_keyword(word) || !is_identifier(word) {
                    continue;
                }
                if !names.iter().any(|n| n == word) {
                    names.push(word.to_string());
                }
            }
        }
        Alphabet::new(names)
    }

    /// Concatenation of `self` and `other`; names must not repeat.
    pub fn concat(&self, other: &Alphabet) -> Result<Self> {
        let names = self.names.iter().chain(other.names.iter()).cloned();
        Alphabet::new(names)?.with_bound(self.bound.max(other.bound))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, var: Var) -> &str {
        &self.names[var.index()]
    }

    pub fn var(&self, name: &str) -> Option<Var> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Var(i as u32))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.names.len() as u32).map(Var)
    }

    /// Fails unless the full model space can be enumerated.
    pub fn check_enumerable(&self) -> Result<()> {
        if self.len() > self.bound || self.len() > MAX_ENUMERATION_BOUND {
            return Err(Error::BoundExceeded {
                size: self.len(),
                bound: self.bound.min(MAX_ENUMERATION_BOUND),
            });
        }
        Ok(())
    }

    /// Number of models, `2^n`.
    pub fn model_count(&self) -> Result<u64> {
        self.check_enumerable()?;
        Ok(1u64 << self.len())
    }

    pub fn model(&self, true_vars: &[&str]) -> Result<Model> {
        let mut bits = 0u64;
        for name in true_vars {
            let v = self
                .var(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            bits |= 1 << v.0;
        }
        Ok(Model(bits))
    }

    pub fn check_model(&self, m: Model) -> Result<()> {
        let width = self.len();
        if width < 64 && m.0 >> width != 0 {
            return Err(Error::WidthMismatch {
                expected: width,
                got: 64 - m.0.leading_zeros() as usize,
            });
        }
        Ok(())
    }
}

/// A total truth assignment: bit `i` set means variable `i` is true.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Model(pub u64);

impl Model {
    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn get(self, var: Var) -> bool {
        var.0 < 64 && self.0 >> var.0 & 1 == 1
    }

    pub fn with(self, var: Var, value: bool) -> Model {
        if value {
            Model(self.0 | 1 << var.0)
        } else {
            Model(self.0 & !(1 << var.0))
        }
    }

    /// Bitwise intersection: true exactly where both are true.
    pub fn meet(self, other: Model) -> Model {
        Model(self.0 & other.0)
    }

    pub fn display<'a>(&self, alphabet: &'a Alphabet) -> ModelDisplay<'a> {
        ModelDisplay {
            model: *self,
            alphabet,
        }
    }
}

pub struct ModelDisplay<'a> {
    model: Model,
    alphabet: &'a Alphabet,
}

impl fmt::Display for ModelDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for v in self.alphabet.vars() {
            if self.model.get(v) {
                if !first {
                    f.write_str(",")?;
                }
                first = false;
                f.write_str(self.alphabet.name(v))?;
            }
        }
        f.write_str("}")
    }
}

/// Propositional formula AST.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Const(bool),
    Var(Var),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn top() -> Formula {
        Formula::Const(true)
    }

    pub fn bottom() -> Formula {
        Formula::Const(false)
    }

    pub fn var(v: Var) -> Formula {
        Formula::Var(v)
    }

    pub fn negate(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(children: Vec<Formula>) -> Formula {
        Formula::And(children)
    }

    pub fn or(children: Vec<Formula>) -> Formula {
        Formula::Or(children)
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Iff(Box::new(lhs), Box::new(rhs))
    }

    /// Classical truth value under `m`.
    pub fn evaluate(&self, m: Model) -> bool {
        match self {
            Formula::Const(b) => *b,
            Formula::Var(v) => m.get(*v),
            Formula::Not(f) => !f.evaluate(m),
            Formula::And(fs) => fs.iter().all(|f| f.evaluate(m)),
            Formula::Or(fs) => fs.iter().any(|f| f.evaluate(m)),
            Formula::Implies(l, r) => !l.evaluate(m) || r.evaluate(m),
            Formula::Iff(l, r) => l.evaluate(m) == r.evaluate(m),
        }
    }

    /// Variables occurring in the formula.
    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Const(_) => {}
            Formula::Var(v) => {
                out.insert(*v);
            }
            Formula::Not(f) => f.collect_vars(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_vars(out)),
            Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Const(_) | Formula::Var(_) => 1,
            Formula::Not(f) => 1 + f.size(),
            Formula::And(fs) | Formula::Or(fs) => 1 + fs.iter().map(Formula::size).sum::<usize>(),
            Formula::Implies(l, r) | Formula::Iff(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Renames every variable through `map`.
    pub fn remap(&self, map: &impl Fn(Var) -> Var) -> Formula {
        match self {
            Formula::Const(b) => Formula::Const(*b),
            Formula::Var(v) => Formula::Var(map(*v)),
            Formula::Not(f) => Formula::negate(f.remap(map)),
            Formula::And(fs) => Formula::And(fs.iter().map(|f| f.remap(map)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|f| f.remap(map)).collect()),
            Formula::Implies(l, r) => Formula::implies(l.remap(map), r.remap(map)),
            Formula::Iff(l, r) => Formula::iff(l.remap(map), r.remap(map)),
        }
    }

    /// Fails if a variable lies outside `alphabet`.
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self
            .vars()
            .into_iter()
            .find(|v| v.index() >= alphabet.len())
        {
            Some(v) => Err(Error::UnknownVariable(format!("#{}", v.0))),
            None => Ok(()),
        }
    }

    /// Flattens nested conjunctions/disjunctions and unwraps singletons;
    /// empty conjunction and disjunction become constants.
    pub fn normalize(&self) -> Formula {
        fn flatten(children: &[Formula], conj: bool) -> Vec<Formula> {
            let mut out = Vec::new();
            for c in children {
                match (c.normalize(), conj) {
                    (Formula::And(inner), true) => out.extend(inner),
                    (Formula::Or(inner), false) => out.extend(inner),
                    (other, _) => out.push(other),
                }
            }
            out
        }
        match self {
            Formula::Const(_) | Formula::Var(_) => self.clone(),
            Formula::Not(f) => Formula::negate(f.normalize()),
            Formula::And(fs) => match flatten(fs, true) {
                v if v.is_empty() => Formula::Const(true),
                mut v if v.len() == 1 => v.pop().unwrap(),
                v => Formula::And(v),
            },
            Formula::Or(fs) => match flatten(fs, false) {
                v if v.is_empty() => Formula::Const(false),
                mut v if v.len() == 1 => v.pop().unwrap(),
                v => Formula::Or(v),
            },
            Formula::Implies(l, r) => Formula::implies(l.normalize(), r.normalize()),
            Formula::Iff(l, r) => Formula::iff(l.normalize(), r.normalize()),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> FormulaDisplay<'a> {
        FormulaDisplay {
            formula: self,
            alphabet,
        }
    }

    /// The models of the formula over the whole alphabet.
    pub fn models(&self, alphabet: &Alphabet) -> Result<ModelSet> {
        alphabet.check_enumerable()?;
        self.check_alphabet(alphabet)?;
        Ok(self.model_set(alphabet.len() as u32))
    }

    fn model_set(&self, width: u32) -> ModelSet {
        match self {
            Formula::Const(true) => ModelSet::full(width),
            Formula::Const(false) => ModelSet::empty(width),
            Formula::Var(v) => ModelSet::of_var(width, *v),
            Formula::Not(f) => f.model_set(width).complement(),
            Formula::And(fs) => fs.iter().fold(ModelSet::full(width), |acc, f| {
                acc.intersection(&f.model_set(width))
            }),
            Formula::Or(fs) => fs.iter().fold(ModelSet::empty(width), |acc, f| {
                acc.union(&f.model_set(width))
            }),
            Formula::Implies(l, r) => l.model_set(width).complement().union(&r.model_set(width)),
            Formula::Iff(l, r) => {
                let (l, r) = (l.model_set(width), r.model_set(width));
                l.symmetric_difference(&r).complement()
            }
        }
    }
}

/// Precedence levels, loosest first.
const PREC_IFF: u8 = 0;
const PREC_IMPLIES: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_NOT: u8 = 4;
const PREC_ATOM: u8 = 5;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Const(_) | Formula::Var(_) => PREC_ATOM,
        Formula::Not(_) => PREC_NOT,
        Formula::And(fs) => match fs.len() {
            0 => PREC_ATOM,
            1 => precedence(&fs[0]),
            _ => PREC_AND,
        },
        Formula::Or(fs) => match fs.len() {
            0 => PREC_ATOM,
            1 => precedence(&fs[0]),
            _ => PREC_OR,
        },
        Formula::Implies(..) => PREC_IMPLIES,
        Formula::Iff(..) => PREC_IFF,
    }
}

/// Printer using the parser's concrete syntax with minimal parentheses.
pub struct FormulaDisplay<'a> {
    formula: &'a Formula,
    alphabet: &'a Alphabet,
}

impl FormulaDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, node: &Formula, min_prec: u8) -> fmt::Result {
        let paren = precedence(node) < min_prec;
        if paren {
            f.write_str("(")?;
        }
        match node {
            Formula::Const(true) => f.write_str("true")?,
            Formula::Const(false) => f.write_str("false")?,
            Formula::Var(v) => match self.alphabet.names().get(v.index()) {
                Some(name) => f.write_str(name)?,
                None => write!(f, "#{}", v.0)?,
            },
            Formula::Not(inner) => {
                f.write_str("~")?;
                self.write(f, inner, PREC_NOT)?;
            }
            Formula::And(fs) | Formula::Or(fs) if fs.is_empty() => {
                f.write_str(if matches!(node, Formula::And(_)) {
                    "true"
                } else {
                    "false"
                })?
            }
            Formula::And(fs) | Formula::Or(fs) if fs.len() == 1 => {
                self.write(f, &fs[0], min_prec)?
            }
            Formula::And(fs) => self.write_list(f, fs, " & ", PREC_AND)?,
            Formula::Or(fs) => self.write_list(f, fs, " | ", PREC_OR)?,
            Formula::Implies(l, r) => {
                self.write(f, l, PREC_OR)?;
                f.write_str(" -> ")?;
                self.write(f, r, PREC_IMPLIES)?;
            }
            Formula::Iff(l, r) => {
                self.write(f, l, PREC_IFF)?;
                f.write_str(" <-> ")?;
                self.write(f, r, PREC_IMPLIES)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }

    fn write_list(
        &self,
        f: &mut fmt::Formatter<'_>,
        children: &[Formula],
        sep: &str,
        prec: u8,
    ) -> fmt::Result {
        for (i, child) in children.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            // A nested list of the same kind is parenthesized so the tree shape survives.
            self.write(f, child, prec + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.formula, PREC_IFF)
    }
}

impl ops::Not for Formula {
    type Output = Formula;

    fn not(self) -> Formula {
        Formula::negate(self)
    }
}

impl ops::BitAnd for Formula {
    type Output = Formula;

    fn bitand(self, rhs: Formula) -> Formula {
        match self {
            Formula::And(mut fs) => {
                fs.push(rhs);
                Formula::And(fs)
            }
            lhs => Formula::And(vec![lhs, rhs]),
        }
    }
}

impl ops::BitOr for Formula {
    type Output = Formula;

    fn bitor(self, rhs: Formula) -> Formula {
        match self {
            Formula::Or(mut fs) => {
                fs.push(rhs);
                Formula::Or(fs)
            }
            lhs => Formula::Or(vec![lhs, rhs]),
        }
    }
}

/// True iff every model over `alphabet` satisfies `f`.
pub fn is_valid(f: &Formula, alphabet: &Alphabet) -> Result<bool> {
    Ok(f.models(alphabet)?.is_full())
}

pub fn is_unsat(f: &Formula, alphabet: &Alphabet) -> Result<bool> {
    Ok(f.models(alphabet)?.is_empty())
}

pub fn entails(f: &Formula, g: &Formula, alphabet: &Alphabet) -> Result<bool> {
    Ok(f.models(alphabet)?.is_subset(&g.models(alphabet)?))
}

pub fn equivalent(f: &Formula, g: &Formula, alphabet: &Alphabet) -> Result<bool> {
    Ok(f.models(alphabet)? == g.models(alphabet)?)
}
