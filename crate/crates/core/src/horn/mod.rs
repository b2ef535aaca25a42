//! Polynomial reasoning on Horn formulae.
//!
//! A Horn clause has at most one positive literal. It is stored as an optional
//! head (the positive literal) and a body (the variables occurring negated), so
//! `~x | ~y | z` is `z <- x, y`. The empty clause has neither and is a
//! contradiction. A clause whose head also occurs in its body is tautological;
//! such clauses are kept so that validity can be expressed, and every
//! operation except [`HornFormula::is_tautological`] and [`remove_variable`]
//! drops them first.

mod equiv;
mod parse;
mod propagate;

use std::borrow::Cow;
use std::collections::BTreeSet;
use std::fmt;

use crate::formula::{Alphabet, Formula, Model, Var};
use propagate::Propagator;

pub use equiv::{
    binary_horn_redundant, classify_redundancy, horn_equiv_negation, horn_equiv_negation_stepwise,
    EquivNegationTrace, RedundancyCase,
};
pub use parse::{infer_alphabet, parse};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: Var,
    pub sign: Sign,
}

impl Literal {
    pub fn pos(var: Var) -> Literal {
        Literal {
            var,
            sign: Sign::Positive,
        }
    }

    pub fn neg(var: Var) -> Literal {
        Literal {
            var,
            sign: Sign::Negative,
        }
    }
}

/// `~body[0] | ... | ~body[k] | head`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HornClause {
    head: Option<Var>,
    body: Vec<Var>,
}

impl HornClause {
    pub fn new(head: Option<Var>, body: impl IntoIterator<Item = Var>) -> HornClause {
        let mut body: Vec<Var> = body.into_iter().collect();
        body.sort_unstable();
        body.dedup();
        HornClause { head, body }
    }

    /// Builds a clause from literals; `None` if two are positive.
    pub fn from_literals(literals: impl IntoIterator<Item = Literal>) -> Option<HornClause> {
        let mut head = None;
        let mut body = Vec::new();
        for lit in literals {
            match lit.sign {
                Sign::Negative => body.push(lit.var),
                Sign::Positive => match head {
                    None => head = Some(lit.var),
                    Some(h) if h == lit.var => {}
                    Some(_) => return None,
                },
            }
        }
        Some(HornClause::new(head, body))
    }

    pub fn empty() -> HornClause {
        HornClause {
            head: None,
            body: Vec::new(),
        }
    }

    pub fn unit(var: Var) -> HornClause {
        HornClause::new(Some(var), [])
    }

    pub fn head(&self) -> Option<Var> {
        self.head
    }

    pub fn body(&self) -> &[Var] {
        &self.body
    }

    pub fn is_empty(&self) -> bool {
        self.head.is_none() && self.body.is_empty()
    }

    pub fn is_tautological(&self) -> bool {
        self.head
            .is_some_and(|h| self.body.binary_search(&h).is_ok())
    }

    pub fn has_negative(&self, var: Var) -> bool {
        self.body.binary_search(&var).is_ok()
    }

    pub fn mentions(&self, var: Var) -> bool {
        self.head == Some(var) || self.has_negative(var)
    }

    pub fn literals(&self) -> impl Iterator<Item = Literal> + '_ {
        self.body
            .iter()
            .map(|&v| Literal::neg(v))
            .chain(self.head.map(Literal::pos))
    }

    pub fn satisfied_by(&self, m: Model) -> bool {
        self.head.is_some_and(|h| m.get(h)) || self.body.iter().any(|&v| !m.get(v))
    }

    pub fn to_formula(&self) -> Formula {
        Formula::Or(
            self.literals()
                .map(|l| match l.sign {
                    Sign::Positive => Formula::Var(l.var),
                    Sign::Negative => Formula::negate(Formula::Var(l.var)),
                })
                .collect(),
        )
    }

    fn max_var(&self) -> Option<Var> {
        self.body.last().copied().max(self.head)
    }
}

/// Conjunction of Horn clauses, with duplicates coalesced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HornFormula {
    clauses: Vec<HornClause>,
}

impl FromIterator<HornClause> for HornFormula {
    fn from_iter<T: IntoIterator<Item = HornClause>>(iter: T) -> Self {
        HornFormula::new(iter.into_iter().collect())
    }
}

impl HornFormula {
    pub fn new(mut clauses: Vec<HornClause>) -> HornFormula {
        clauses.sort_unstable();
        clauses.dedup();
        HornFormula { clauses }
    }

    pub fn clauses(&self) -> &[HornClause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    /// No clauses at all (the empty conjunction, which is valid).
    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Number of literal occurrences.
    pub fn size(&self) -> usize {
        self.clauses
            .iter()
            .map(|c| c.body.len() + c.head.is_some() as usize)
            .sum()
    }

    /// One past the largest variable index mentioned.
    pub fn var_span(&self) -> usize {
        self.clauses
            .iter()
            .filter_map(HornClause::max_var)
            .max()
            .map_or(0, |v| v.index() + 1)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut seen = vec![false; self.var_span()];
        for c in &self.clauses {
            for v in c.body.iter().chain(&c.head) {
                seen[v.index()] = true;
            }
        }
        (0..seen.len() as u32)
            .map(Var)
            .filter(|v| seen[v.index()])
            .collect()
    }

    /// Clauses kept as given, without sorting or removing duplicates. Only
    /// for intermediate formulae that are never compared structurally.
    pub(crate) fn from_unsorted(clauses: Vec<HornClause>) -> HornFormula {
        HornFormula { clauses }
    }

    /// Some clause has an empty body: a positive unit or the empty clause.
    pub fn has_facts(&self) -> bool {
        self.clauses.iter().any(|c| c.body.is_empty())
    }

    /// Copy without tautological clauses.
    pub fn without_tautologies(&self) -> HornFormula {
        HornFormula {
            clauses: self
                .clauses
                .iter()
                .filter(|c| !c.is_tautological())
                .cloned()
                .collect(),
        }
    }

    /// Every clause contains a complementary pair; true for no clauses.
    pub fn is_tautological(&self) -> bool {
        self.clauses.iter().all(HornClause::is_tautological)
    }

    pub fn is_unsat(&self) -> bool {
        horn_unsat(self)
    }

    pub fn satisfied_by(&self, m: Model) -> bool {
        self.clauses.iter().all(|c| c.satisfied_by(m))
    }

    pub fn to_formula(&self) -> Formula {
        Formula::And(self.clauses.iter().map(HornClause::to_formula).collect())
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> HornDisplay<'a> {
        HornDisplay {
            formula: self,
            alphabet,
        }
    }
}

pub struct HornDisplay<'a> {
    formula: &'a HornFormula,
    alphabet: &'a Alphabet,
}

impl fmt::Display for HornDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, clause) in self.formula.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            if clause.is_empty() {
                f.write_str("FALSE")?;
                continue;
            }
            for (j, lit) in clause.literals().enumerate() {
                if j > 0 {
                    f.write_str(" | ")?;
                }
                if lit.sign == Sign::Negative {
                    f.write_str("~")?;
                }
                f.write_str(self.alphabet.name(lit.var))?;
            }
        }
        Ok(())
    }
}

/// Clauses that are not tautological, which is what propagation works on.
fn effective_clauses(f: &HornFormula) -> Cow<'_, [HornClause]> {
    if f.clauses.iter().any(HornClause::is_tautological) {
        Cow::Owned(f.without_tautologies().clauses)
    } else {
        Cow::Borrowed(&f.clauses)
    }
}

/// The variables derived by forward chaining, or `None` if `f` is
/// inconsistent. For a consistent Horn formula this is its least model, so it
/// is exactly the set of variables the formula entails.
pub fn least_model(f: &HornFormula) -> Option<BTreeSet<Var>> {
    let clauses = effective_clauses(f);
    let span = f.var_span();
    let p = Propagator::new(&clauses, span);
    if p.is_conflict() {
        return None;
    }
    Some(
        (0..span as u32)
            .map(Var)
            .filter(|&v| p.is_derived(v))
            .collect(),
    )
}

/// Whether `f` has no model, by unit propagation.
pub fn horn_unsat(f: &HornFormula) -> bool {
    if !f.has_facts() {
        // every clause has a negative literal: all-false is a model
        return false;
    }
    let clauses = effective_clauses(f);
    Propagator::new(&clauses, f.var_span()).is_conflict()
}

/// Whether every model of `f` sets `x` true.
pub fn horn_entails_var(f: &HornFormula, x: Var) -> bool {
    let clauses = effective_clauses(f);
    let p = Propagator::new(&clauses, f.var_span().max(x.index() + 1));
    p.is_conflict() || p.is_derived(x)
}

/// Whether `~x` entails `f`: the literal `~x` occurs in every
/// non-tautological clause.
pub fn negvar_entails_horn(x: Var, f: &HornFormula) -> bool {
    f.clauses
        .iter()
        .filter(|c| !c.is_tautological())
        .all(|c| c.has_negative(x))
}

/// Whether `f` entails every clause of `g`.
///
/// Each clause `c` is checked as the inconsistency of `f` plus the negation
/// of the literals of `c`; the propagator keeps the least model of `f` and
/// only undoes what each clause added.
pub fn horn_entails(f: &HornFormula, g: &HornFormula) -> bool {
    let clauses = effective_clauses(f);
    let span = f.var_span().max(g.var_span());
    let mut p = Propagator::new(&clauses, span);
    g.clauses
        .iter()
        .filter(|c| !c.is_tautological())
        .all(|c| p.entails_clause(c))
}

/// Whether `f` and `g` have the same models.
///
/// The direction that propagates over the smaller formula runs first.
pub fn horn_equivalent(f: &HornFormula, g: &HornFormula) -> bool {
    let (small, large) = if f.size() <= g.size() { (f, g) } else { (g, f) };
    horn_entails(small, large) && horn_entails(large, small)
}

pub fn horn_is_tautological(f: &HornFormula) -> bool {
    f.is_tautological()
}

/// `F%x`: drop the clauses containing `x` positively and delete `~x` from the
/// others. A formula not mentioning `x` is returned unchanged.
pub fn remove_variable(f: &HornFormula, x: Var) -> HornFormula {
    f.clauses
        .iter()
        .filter(|c| c.head != Some(x))
        .map(|c| {
            if c.has_negative(x) {
                HornClause {
                    head: c.head,
                    body: c.body.iter().copied().filter(|&v| v != x).collect(),
                }
            } else {
                c.clone()
            }
        })
        .collect()
}

/// `F%x` for every `x` in `vars` at once; equal to removing them one by one.
pub fn remove_variables(f: &HornFormula, vars: &BTreeSet<Var>) -> HornFormula {
    let mut clauses = remove_variables_unsorted(f, vars).clauses;
    clauses.sort_unstable();
    clauses.dedup();
    HornFormula { clauses }
}

/// [`remove_variables`] without normalizing the clause list.
pub(crate) fn remove_variables_unsorted(f: &HornFormula, vars: &BTreeSet<Var>) -> HornFormula {
    let span = vars.last().map_or(0, |v| v.index() + 1);
    let mut gone = vec![false; span];
    for v in vars {
        gone[v.index()] = true;
    }
    let removed = |v: Var| gone.get(v.index()).copied().unwrap_or(false);
    HornFormula::from_unsorted(
        f.clauses
            .iter()
            .filter(|c| !c.head.is_some_and(removed))
            .map(|c| HornClause {
                head: c.head,
                body: c.body.iter().copied().filter(|&v| !removed(v)).collect(),
            })
            .collect(),
    )
}
