//! Horn formula versus negated Horn formula, and redundancy of the first of
//! two Horn lexicographic revisions from the flat state.

use std::collections::BTreeSet;
use std::fmt;

use super::propagate::Propagator;
use super::{
    horn_entails_var, horn_equivalent, horn_unsat, negvar_entails_horn, remove_variable,
    remove_variables_unsorted, HornFormula,
};
use crate::formula::Var;

/// Outcome of the negation-equivalence check with loop statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivNegationTrace {
    pub result: bool,
    /// Simplification steps taken; each removes one variable from both formulae.
    pub iterations: usize,
    /// Variables removed, in removal order.
    pub removed: Vec<Var>,
    /// Distinct variables of the two (tautology-free) inputs.
    pub distinct_vars: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Case {
    /// `F2 |= x`, requires `~x |= F1`.
    SecondEntailsVar,
    /// `~x |= F2`, requires `F1 |= x`.
    NegVarEntailsSecond,
    /// `F1 |= x`, requires `~x |= F2`.
    FirstEntailsVar,
    /// `~x |= F1`, requires `F2 |= x`.
    NegVarEntailsFirst,
}

fn first_case(
    x: Var,
    f1_entails: impl Fn(Var) -> bool,
    f2_entails: impl Fn(Var) -> bool,
    negvar_f1: impl Fn(Var) -> bool,
    negvar_f2: impl Fn(Var) -> bool,
) -> Option<(Case, bool)> {
    if f2_entails(x) {
        Some((Case::SecondEntailsVar, negvar_f1(x)))
    } else if negvar_f2(x) {
        Some((Case::NegVarEntailsSecond, f1_entails(x)))
    } else if f1_entails(x) {
        Some((Case::FirstEntailsVar, negvar_f2(x)))
    } else if negvar_f1(x) {
        Some((Case::NegVarEntailsFirst, f2_entails(x)))
    } else {
        None
    }
}

/// The checks after the simplification loop: a valid formula is the negation
/// only of a contradiction, and the other way around.
fn final_checks(f1: &HornFormula, f2: &HornFormula) -> bool {
    if f1.is_empty() {
        return horn_unsat(f2);
    }
    if horn_unsat(f1) {
        // Tautological clauses are gone, so F2 is valid iff it has none.
        return f2.is_empty();
    }
    if f2.is_empty() {
        return horn_unsat(f1);
    }
    if horn_unsat(f2) {
        return f1.is_empty();
    }
    false
}

fn occurring(f1: &HornFormula, f2: &HornFormula) -> BTreeSet<Var> {
    let mut vars = f1.vars();
    vars.extend(f2.vars());
    vars
}

/// Algorithm for `F1 == ~F2`, one simplification per pass.
///
/// Each pass scans the variables of both formulae in alphabet order and
/// applies the first of the four cases that fires, restarting after the
/// removal. This is the direct reading of the algorithm; see
/// [`horn_equiv_negation`] for the faster equivalent.
pub fn horn_equiv_negation_stepwise(f1: &HornFormula, f2: &HornFormula) -> EquivNegationTrace {
    let mut f1 = f1.without_tautologies();
    let mut f2 = f2.without_tautologies();
    let distinct_vars = occurring(&f1, &f2).len();
    let mut removed = Vec::new();
    let finish = |result, removed: Vec<Var>| EquivNegationTrace {
        result,
        iterations: removed.len(),
        removed,
        distinct_vars,
    };
    'simplify: loop {
        for x in occurring(&f1, &f2) {
            let fired = first_case(
                x,
                |v| horn_entails_var(&f1, v),
                |v| horn_entails_var(&f2, v),
                |v| negvar_entails_horn(v, &f1),
                |v| negvar_entails_horn(v, &f2),
            );
            match fired {
                None => continue,
                Some((_, false)) => return finish(false, removed),
                Some((_, true)) => {
                    f1 = remove_variable(&f1, x);
                    f2 = remove_variable(&f2, x);
                    removed.push(x);
                    continue 'simplify;
                }
            }
        }
        break;
    }
    finish(final_checks(&f1, &f2), removed)
}

/// Variable membership with an "every variable" state for inconsistent
/// formulae (which entail everything) and empty ones (entailed by every
/// negative literal).
struct Membership {
    all: bool,
    bits: Vec<bool>,
}

impl Membership {
    fn contains(&self, v: Var) -> bool {
        self.all || self.bits.get(v.index()).copied().unwrap_or(false)
    }
}

/// Variables `x` with `F |= x`.
fn entailed_vars(f: &HornFormula, span: usize) -> Membership {
    if !f.has_facts() {
        return Membership {
            all: false,
            bits: vec![false; span],
        };
    }
    let p = Propagator::new(f.clauses(), span);
    if p.is_conflict() {
        return Membership {
            all: true,
            bits: Vec::new(),
        };
    }
    Membership {
        all: false,
        bits: (0..span as u32).map(|v| p.is_derived(Var(v))).collect(),
    }
}

/// Variables `x` with `~x |= F`: those negated in every clause.
fn negated_everywhere(f: &HornFormula, span: usize) -> Membership {
    if f.is_empty() {
        return Membership {
            all: true,
            bits: Vec::new(),
        };
    }
    let mut counts = vec![0usize; span];
    for c in f.clauses() {
        for v in c.body() {
            counts[v.index()] += 1;
        }
    }
    Membership {
        all: false,
        bits: counts.into_iter().map(|n| n == f.len()).collect(),
    }
}

/// Whether the Horn formula `f1` is equivalent to the negation of the Horn
/// formula `f2`, in time polynomial in their size.
///
/// Same decision procedure as [`horn_equiv_negation_stepwise`], but a pass
/// removes every variable whose case fires with its condition satisfied
/// before recomputing the entailed and negated-everywhere sets. Removing a
/// variable `x` never takes another variable out of those sets, so a case
/// that holds on the sets of a pass still holds after the earlier removals of
/// the same pass; a failing condition is only trusted on freshly computed sets.
pub fn horn_equiv_negation(f1: &HornFormula, f2: &HornFormula) -> EquivNegationTrace {
    let mut f1 = f1.without_tautologies();
    let mut f2 = f2.without_tautologies();
    let span = f1.var_span().max(f2.var_span());
    let mut vars = occurring(&f1, &f2);
    let distinct_vars = vars.len();
    let mut removed = Vec::new();
    while !vars.is_empty() {
        let e1 = entailed_vars(&f1, span);
        let e2 = entailed_vars(&f2, span);
        let n1 = negated_everywhere(&f1, span);
        let n2 = negated_everywhere(&f2, span);
        let mut batch = BTreeSet::new();
        for &x in &vars {
            let fired = first_case(
                x,
                |v| e1.contains(v),
                |v| e2.contains(v),
                |v| n1.contains(v),
                |v| n2.contains(v),
            );
            match fired {
                None => continue,
                Some((_, true)) => {
                    batch.insert(x);
                }
                Some((_, false)) if batch.is_empty() => {
                    return EquivNegationTrace {
                        result: false,
                        iterations: removed.len(),
                        removed,
                        distinct_vars,
                    };
                }
                Some((_, false)) => break,
            }
        }
        if batch.is_empty() {
            break;
        }
        f1 = remove_variables_unsorted(&f1, &batch);
        f2 = remove_variables_unsorted(&f2, &batch);
        removed.extend(batch);
        vars = occurring(&f1, &f2);
    }
    EquivNegationTrace {
        result: final_checks(&f1, &f2),
        iterations: removed.len(),
        removed,
        distinct_vars,
    }
}

/// Which condition makes the first of two lexicographic revisions redundant
/// from the flat state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RedundancyCase {
    Inconsistent,
    Tautological,
    EquivalentToSecond,
    EquivalentToNegation,
}

impl fmt::Display for RedundancyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RedundancyCase::Inconsistent => "inconsistent",
            RedundancyCase::Tautological => "tautological",
            RedundancyCase::EquivalentToSecond => "equivalent",
            RedundancyCase::EquivalentToNegation => "equivalent to negation",
        })
    }
}

/// The first of the four redundancy conditions that holds, if any.
pub fn classify_redundancy(s1: &HornFormula, s2: &HornFormula) -> Option<RedundancyCase> {
    if horn_unsat(s1) {
        Some(RedundancyCase::Inconsistent)
    } else if s1.is_tautological() {
        Some(RedundancyCase::Tautological)
    } else if horn_equivalent(s1, s2) {
        Some(RedundancyCase::EquivalentToSecond)
    } else if horn_equiv_negation(s1, s2).result {
        Some(RedundancyCase::EquivalentToNegation)
    } else {
        None
    }
}

/// Whether `lex(s1)` is redundant in `[lex(s1), lex(s2)]` from the flat state.
pub fn binary_horn_redundant(s1: &HornFormula, s2: &HornFormula) -> bool {
    classify_redundancy(s1, s2).is_some()
}
