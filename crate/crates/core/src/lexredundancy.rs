//! Comparing models after lexicographic revisions without building the state,
//! Q-combinations, and redundancy of revisions.
//!
//! Everything here that starts from the flat state works on the formulae
//! alone. [`redundant_general`] is the brute-force definition and works for
//! any operator and any initial state.

use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{Alphabet, Formula, Model, ModelSet};
use crate::revision::{apply_sequence, Operator, RevisionStep};
use crate::state::DoxasticState;

/// Longest formula list accepted by the Q-combination checks.
pub const MAX_Q_FORMULAE: usize = 20;

/// `I <=_A J`: `I` satisfies `A` or `J` does not.
pub fn formula_leq(a: &Formula, i: Model, j: Model) -> bool {
    a.evaluate(i) || !a.evaluate(j)
}

/// `I <= J` in the state obtained by revising the flat state
/// lexicographically by each formula of `s` in order.
///
/// The last revision decides unless it ties the two models, in which case the
/// previous one does, and so on; an exhausted sequence means equivalence.
pub fn lex_seq_leq(s: &[Formula], i: Model, j: Model) -> bool {
    for a in s.iter().rev() {
        if !formula_leq(a, i, j) {
            return false;
        }
        if !formula_leq(a, j, i) {
            return true;
        }
    }
    true
}

/// [`lex_seq_leq`] for sequences mixing lexicographic and very radical
/// revisions, again from the flat state.
///
/// A very radical revision by `A` keeps the previous order among the models of
/// `A`, puts them all before the others, and makes the others equivalent.
pub fn mixed_lex_vrad_leq(s: &[RevisionStep], i: Model, j: Model) -> Result<bool> {
    if let Some(step) = s
        .iter()
        .find(|st| !matches!(st.operator, Operator::Lex | Operator::Vrad))
    {
        return Err(Error::UnsupportedOperator(step.operator.to_string()));
    }
    for step in s.iter().rev() {
        let (ai, aj) = (step.payload.evaluate(i), step.payload.evaluate(j));
        match step.operator {
            Operator::Vrad if ai && aj => continue,
            Operator::Vrad => return Ok(!aj),
            _ if ai == aj => continue,
            _ => return Ok(ai),
        }
    }
    Ok(true)
}

/// Chooses, for each formula of a list, whether it occurs positively or
/// negated in a Q-combination.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QSelector {
    pub bits: Vec<bool>,
}

impl QSelector {
    pub fn new(bits: Vec<bool>) -> QSelector {
        QSelector { bits }
    }

    /// Selector number `n` of a list of `len` formulae; the first formula
    /// is the least significant bit.
    pub fn from_counter(n: u64, len: usize) -> QSelector {
        QSelector {
            bits: (0..len).map(|k| n >> k & 1 == 1).collect(),
        }
    }

    pub fn counter(&self) -> u64 {
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &b)| acc | (b as u64) << k)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

impl fmt::Display for QSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, b) in self.bits.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str(")")
    }
}

/// `(B_1 == S_1) & ... & (B_m == S_m)`, written as the conjunction of each
/// `S_k` or its negation.
///
/// Panics if the selector length differs from the number of formulae.
pub fn q_combination(formulae: &[Formula], sel: &QSelector) -> Formula {
    assert_eq!(formulae.len(), sel.len(), "selector length mismatch");
    if formulae.is_empty() {
        return Formula::top();
    }
    Formula::and(
        formulae
            .iter()
            .zip(&sel.bits)
            .map(|(s, &b)| if b { s.clone() } else { !s.clone() })
            .collect(),
    )
}

fn check_cap(len: usize) -> Result<()> {
    if len > MAX_Q_FORMULAE {
        return Err(Error::TooManyFormulae {
            len,
            cap: MAX_Q_FORMULAE,
        });
    }
    Ok(())
}

fn model_sets(s: &[Formula], alphabet: &Alphabet) -> Result<Vec<ModelSet>> {
    s.iter().map(|f| f.models(alphabet)).collect()
}

/// Whether the first of a sequence of lexicographic revisions from the flat
/// state is redundant: every Q-combination of the others entails it or its
/// negation.
///
/// Q-combinations are refined one formula at a time; an empty one entails
/// everything, so its extensions are skipped.
pub fn redundant_first_lex_flat(s: &[Formula], alphabet: &Alphabet) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::IndexOutOfRange { index: 0, len: 0 });
    }
    check_cap(s.len())?;
    alphabet.check_enumerable()?;
    let sets = model_sets(s, alphabet)?;
    let (first, rest) = (&sets[0], &sets[1..]);
    let mut parts = vec![ModelSet::full(alphabet.len() as u32)];
    for x in rest {
        parts = parts
            .iter()
            .flat_map(|q| [q.intersection(x), q.difference(x)])
            .filter(|q| !q.is_empty())
            .collect();
    }
    Ok(parts
        .iter()
        .all(|q| q.is_subset(first) || q.is_disjoint(first)))
}

/// When the first revision is redundant, the selectors (over `S_2..S_m`)
/// whose Q-combinations entail `S_1`; their disjunction is equivalent to
/// `S_1`. `None` when the first revision is not redundant.
///
/// Selectors come in counter order, `S_2` being the least significant bit.
pub fn redundant_first_as_disjunction(
    s: &[Formula],
    alphabet: &Alphabet,
) -> Result<Option<Vec<QSelector>>> {
    if !redundant_first_lex_flat(s, alphabet)? {
        return Ok(None);
    }
    let sets = model_sets(s, alphabet)?;
    let (first, rest) = (&sets[0], &sets[1..]);
    let mut counters = Vec::new();
    collect_entailing(
        first,
        rest,
        0,
        0,
        ModelSet::full(alphabet.len() as u32),
        &mut counters,
    );
    counters.sort_unstable();
    Ok(Some(
        counters
            .into_iter()
            .map(|n| QSelector::from_counter(n, rest.len()))
            .collect(),
    ))
}

fn collect_entailing(
    first: &ModelSet,
    rest: &[ModelSet],
    depth: usize,
    prefix: u64,
    q: ModelSet,
    out: &mut Vec<u64>,
) {
    if q.is_empty() {
        // every extension is empty and entails anything
        for high in 0..1u64 << (rest.len() - depth) {
            out.push(prefix | high << depth);
        }
        return;
    }
    if depth == rest.len() {
        if q.is_subset(first) {
            out.push(prefix);
        }
        return;
    }
    let x = &rest[depth];
    collect_entailing(
        first,
        rest,
        depth + 1,
        prefix | 1 << depth,
        q.intersection(x),
        out,
    );
    collect_entailing(first, rest, depth + 1, prefix, q.difference(x), out);
}

/// `lex(s1)` is redundant in `[lex(s1), lex(s2)]` from the flat state iff
/// `s1` is unsatisfiable, valid, equivalent to `s2` or to `~s2`.
pub fn redundant_two_lex_flat(s1: &Formula, s2: &Formula, alphabet: &Alphabet) -> Result<bool> {
    let m1 = s1.models(alphabet)?;
    let m2 = s2.models(alphabet)?;
    Ok(m1.is_empty() || m1.is_full() || m1 == m2 || m1 == m2.complement())
}

/// Whether step `i` (0-based) is redundant: removing it leaves the final
/// state unchanged.
pub fn redundant_general(c: &DoxasticState, s: &[RevisionStep], i: usize) -> Result<bool> {
    if i >= s.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: s.len(),
        });
    }
    let with = apply_sequence(c, s)?;
    let mut without = s.to_vec();
    without.remove(i);
    Ok(with == apply_sequence(c, &without)?)
}

/// Lexicographic revision steps for each formula.
pub fn lex_steps(s: &[Formula]) -> Vec<RevisionStep> {
    s.iter().cloned().map(RevisionStep::lex).collect()
}
