//! The eight revision operators and sequence application.
//!
//! Each operator builds the class list of its defining display over model
//! sets and lets the state constructor drop empty classes.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formula::{Formula, ModelSet};
use crate::state::DoxasticState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operator {
    /// Lexicographic.
    Lex,
    /// Natural.
    Nat,
    /// Severe.
    Sev,
    /// Moderate severe.
    Msev,
    /// Deep severe.
    Dsev,
    /// Restrained.
    Res,
    /// Very radical.
    Vrad,
    /// Full meet.
    Full,
}

impl Operator {
    pub const ALL: [Operator; 8] = [
        Operator::Lex,
        Operator::Nat,
        Operator::Sev,
        Operator::Msev,
        Operator::Dsev,
        Operator::Res,
        Operator::Vrad,
        Operator::Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operator::Lex => "lex",
            Operator::Nat => "nat",
            Operator::Sev => "sev",
            Operator::Msev => "msev",
            Operator::Dsev => "dsev",
            Operator::Res => "res",
            Operator::Vrad => "vrad",
            Operator::Full => "full",
        }
    }

    /// Revises `c` by the models `a`.
    pub fn apply_models(self, c: &DoxasticState, a: &ModelSet) -> Result<DoxasticState> {
        if a.width() != c.width() {
            return Err(Error::WidthMismatch {
                expected: c.width() as usize,
                got: a.width() as usize,
            });
        }
        if a.is_empty() {
            return Err(Error::InconsistentRevision { step: None });
        }
        let classes = match self {
            Operator::Lex => lex_classes(c, a),
            Operator::Nat => nat_classes(c, a),
            Operator::Sev => sev_classes(c, a),
            Operator::Msev => msev_classes(c, a),
            Operator::Dsev => dsev_classes(c, a),
            Operator::Res => res_classes(c, a),
            Operator::Vrad => vrad_classes(c, a),
            Operator::Full => full_classes(c, a),
        };
        Ok(DoxasticState::from_parts(c.alphabet().clone(), classes))
    }

    pub fn apply(self, c: &DoxasticState, a: &Formula) -> Result<DoxasticState> {
        self.apply_models(c, &a.models(c.alphabet())?)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Operator> {
        Operator::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::UnsupportedOperator(s.to_string()))
    }
}

fn min_of(c: &DoxasticState, a: &ModelSet) -> (usize, ModelSet) {
    c.min_of(a).expect("payload checked consistent")
}

fn max_index(c: &DoxasticState, a: &ModelSet) -> usize {
    c.max_of(a).expect("payload checked consistent").0
}

/// `C(0) ∪ ... ∪ C(k)`.
fn union_upto(c: &DoxasticState, k: usize) -> ModelSet {
    c.classes()[..=k]
        .iter()
        .fold(ModelSet::empty(c.width()), |acc, x| acc.union(x))
}

// [C(0)∩A, ..., C(m)∩A, C(0)\A, ..., C(m)\A]
fn lex_classes(c: &DoxasticState, a: &ModelSet) -> Vec<ModelSet> {
    let inside = c.classes().iter().map(|x| x.intersection(a));
    let outside = c.classes().iter().map(|x| x.difference(a));
    inside.chain(outside).collect()
}

// [min(A), C(0), ..., C(imin-1), C(imin)\A, C(imin+1), ..., C(m)]
fn nat_classes(c: &DoxasticState, a: &ModelSet) -> Vec<ModelSet> {
    let (imin, min) = min_of(c, a);
    let mut out = vec![min.clone()];
    for (i, x) in c.classes().iter().enumerate() {
        out.push(if i == imin {
            x.difference(a)
        } else {
            x.clone()
        });
    }
    out
}

// [min(A), (C(0) ∪ ... ∪ C(imin))\A, C(imin+1), ..., C(m)]
fn sev_classes(c: &DoxasticState, a: &ModelSet) -> Vec<ModelSet> {
    let (imin, min) = min_of(c, a);
    let mut out = vec![min, union_upto(c, imin).difference(a)];
    out.extend(c.classes()[imin + 1..].iter().cloned());
    out
}

// [C(imin)∩A, ..., C(imax)∩A, (C(0) ∪ ... ∪ C(imin))\A, C(imin+1)\A, ..., C(m)\A]
fn msev_classes(c: &DoxasticState, a: &ModelSet) -> Vec<ModelSet> {
    let (imin, _) = min_of(c, a);
    let imax = max_index(c, a);
    let mut out: Vec<ModelSet> = c.classes()[imin..=imax]
        .iter()
        .map(|x| x.intersection(a))
        .collect();
    out.push(union_upto(c, imin).difference(a));
    out.extend(c.classes()[imin + 1..].iter().map(|x| x.difference(a)));
    out
}

// [C(0)∩A, ..., C(m)∩A, (C(0) ∪ ... ∪ C(imax))\A, C(imax+1), ..., C(m)]
fn dsev_classes(c: &DoxasticState, a: &ModelSet) -> Vec<ModelSet> {
    let imax = max_index(c, a);
    let mut out: Vec<ModelSet> = c.classes().iter().map(|x| x.intersection(a)).collect();
    out.push(union_upto(c, imax).difference(a));
    out.extend(c.classes()[imax + 1..].iter().cloned());
    out
}

// [min(A), C(0)∩A\min(A), C(0)\A, ..., C(m)∩A\min(A), C(m)\A]
fn res_classes(c: &DoxasticState, a: &ModelSet) -> Vec<ModelSet> {
    let (_, min) = min_of(c, a);
    let mut out = vec![min.clone()];
    for x in c.classes() {
        out.push(x.intersection(a).difference(&min));
        out.push(x.difference(a));
    }
    out
}

// [C(imin)∩A, ..., C(imax)∩A, true\A]
fn vrad_classes(c: &DoxasticState, a: &ModelSet) -> Vec<ModelSet> {
    let (imin, _) = min_of(c, a);
    let imax = max_index(c, a);
    let mut out: Vec<ModelSet> = c.classes()[imin..=imax]
        .iter()
        .map(|x| x.intersection(a))
        .collect();
    out.push(a.complement());
    out
}

// [min(A), true\min(A)]
fn full_classes(c: &DoxasticState, a: &ModelSet) -> Vec<ModelSet> {
    let (_, min) = min_of(c, a);
    let rest = min.complement();
    vec![min, rest]
}

pub fn lex(c: &DoxasticState, a: &Formula) -> Result<DoxasticState> {
    Operator::Lex.apply(c, a)
}

pub fn nat(c: &DoxasticState, a: &Formula) -> Result<DoxasticState> {
    Operator::Nat.apply(c, a)
}

pub fn sev(c: &DoxasticState, a: &Formula) -> Result<DoxasticState> {
    Operator::Sev.apply(c, a)
}

pub fn msev(c: &DoxasticState, a: &Formula) -> Result<DoxasticState> {
    Operator::Msev.apply(c, a)
}

pub fn dsev(c: &DoxasticState, a: &Formula) -> Result<DoxasticState> {
    Operator::Dsev.apply(c, a)
}

pub fn res(c: &DoxasticState, a: &Formula) -> Result<DoxasticState> {
    Operator::Res.apply(c, a)
}

pub fn vrad(c: &DoxasticState, a: &Formula) -> Result<DoxasticState> {
    Operator::Vrad.apply(c, a)
}

pub fn full(c: &DoxasticState, a: &Formula) -> Result<DoxasticState> {
    Operator::Full.apply(c, a)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RevisionStep {
    pub operator: Operator,
    pub payload: Formula,
}

impl RevisionStep {
    pub fn new(operator: Operator, payload: Formula) -> RevisionStep {
        RevisionStep { operator, payload }
    }

    pub fn lex(payload: Formula) -> RevisionStep {
        RevisionStep::new(Operator::Lex, payload)
    }

    pub fn apply(&self, c: &DoxasticState) -> Result<DoxasticState> {
        self.operator.apply(c, &self.payload)
    }
}

pub type RevisionSequence = Vec<RevisionStep>;

/// Applies the steps in order. A failure reports the 0-based step index.
pub fn apply_sequence(c: &DoxasticState, steps: &[RevisionStep]) -> Result<DoxasticState> {
    let mut state = c.clone();
    for (i, step) in steps.iter().enumerate() {
        state = step.apply(&state).map_err(|e| match e {
            Error::InconsistentRevision { .. } => Error::InconsistentRevision { step: Some(i) },
            other => other,
        })?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, Alphabet};

    fn al(names: &[&str]) -> Alphabet {
        Alphabet::new(names.iter().copied()).unwrap()
    }

    fn f(text: &str, al: &Alphabet) -> Formula {
        parse(text, al).unwrap()
    }

    fn st(al: &Alphabet, classes: &[&str]) -> DoxasticState {
        let fs: Vec<Formula> = classes.iter().map(|t| f(t, al)).collect();
        DoxasticState::from_formulas(al, &fs).unwrap()
    }

    fn abc_chain() -> (Alphabet, DoxasticState) {
        let a = al(&["a", "b", "c"]);
        let c = st(&a, &["a", "~a & b", "~a & ~b"]);
        (a, c)
    }

    #[test]
    fn operator_names_round_trip() {
        for op in Operator::ALL {
            assert_eq!(op.name().parse::<Operator>().unwrap(), op);
        }
        assert_eq!(
            "rad".parse::<Operator>().unwrap_err(),
            Error::UnsupportedOperator("rad".into())
        );
    }

    #[test]
    fn lex_examples() {
        let a = al(&["a", "b"]);
        let flat = DoxasticState::flat(&a).unwrap();
        let s = lex(&flat, &f("a | b", &a)).unwrap();
        assert_eq!(s, st(&a, &["a | b", "~a & ~b"]));
        let s = lex(&s, &f("a", &a)).unwrap();
        assert_eq!(s, st(&a, &["a", "~a & b", "~a & ~b"]));
        assert_eq!(lex(&s, &Formula::top()).unwrap(), s);
    }

    #[test]
    fn nat_examples() {
        let (a, c) = abc_chain();
        let n = f("~a & ~b & c", &a);
        assert_eq!(
            nat(&c, &n).unwrap(),
            st(&a, &["~a & ~b & c", "a", "~a & b", "~a & ~b & ~c"])
        );
    }

    #[test]
    fn sev_examples() {
        let (a, c) = abc_chain();
        let s = f("~a & b & ~c", &a);
        assert_eq!(
            sev(&c, &s).unwrap(),
            st(
                &a,
                &["~a & b & ~c", "(a | (~a & b)) & ~(~a & b & ~c)", "~a & ~b"]
            )
        );
    }

    #[test]
    fn msev_examples() {
        let a = al(&["a", "b", "c"]);
        let c = st(&a, &["a", "~a"]);
        assert_eq!(
            msev(&c, &f("~a & b", &a)).unwrap(),
            st(&a, &["~a & b", "a | ~b"])
        );
        assert_eq!(
            msev(&c, &f("b & (a -> c)", &a)).unwrap(),
            st(&a, &["a & b & c", "~a & b", "a & ~(b & c)", "~a & ~b"])
        );
    }

    #[test]
    fn dsev_examples() {
        let (a, c) = abc_chain();
        // F = c, satisfiable
        let d = f("a | (~a & ~b & c & c)", &a);
        assert_eq!(
            dsev(&c, &d).unwrap(),
            st(&a, &["a", "~a & ~b & c", "~(a | (~a & ~b & c))"])
        );
        assert_eq!(dsev(&c, &f("a", &a)).unwrap(), c);
    }

    #[test]
    fn res_vrad_full_examples() {
        let a = al(&["a", "b"]);
        let c = st(&a, &["a", "~a"]);
        assert_eq!(
            res(&c, &f("b", &a)).unwrap(),
            st(&a, &["a & b", "a & ~b", "~a & b", "~a & ~b"])
        );
        assert_eq!(vrad(&c, &f("~a", &a)).unwrap(), st(&a, &["~a", "a"]));
        let c3 = st(&a, &["a & b", "a & ~b", "~a"]);
        assert_eq!(vrad(&c3, &f("a", &a)).unwrap(), c3);
        assert_eq!(
            full(&c, &f("~a | (a & b)", &a)).unwrap(),
            st(&a, &["a & b", "~(a & b)"])
        );
        let a3 = al(&["a", "b", "c"]);
        let c = st(&a3, &["a", "~a"]);
        // F = c & ~c, unsatisfiable
        assert_eq!(
            full(&c, &f("~a | (a & b & c & ~c)", &a3)).unwrap(),
            st(&a3, &["~a", "a"])
        );
    }

    #[test]
    fn two_class_swap() {
        let a = al(&["a", "b"]);
        let c = st(&a, &["a | b", "~a & ~b"]);
        let c1 = f("~a & ~b", &a);
        for op in [Operator::Nat, Operator::Sev, Operator::Res] {
            assert_eq!(
                op.apply(&c, &c1).unwrap(),
                st(&a, &["~a & ~b", "a | b"]),
                "{op}"
            );
        }
    }

    #[test]
    fn flat_revision_gives_two_classes() {
        let a = al(&["a", "b"]);
        let flat = DoxasticState::flat(&a).unwrap();
        let x = f("a -> b", &a);
        for op in Operator::ALL {
            assert_eq!(
                op.apply(&flat, &x).unwrap(),
                st(&a, &["a -> b", "a & ~b"]),
                "{op}"
            );
        }
    }

    #[test]
    fn inconsistent_payloads_are_rejected() {
        let a = al(&["a"]);
        let flat = DoxasticState::flat(&a).unwrap();
        for op in Operator::ALL {
            assert_eq!(
                op.apply(&flat, &Formula::bottom()).unwrap_err(),
                Error::InconsistentRevision { step: None }
            );
        }
        let steps = vec![
            RevisionStep::lex(f("a", &a)),
            RevisionStep::new(Operator::Nat, f("a & ~a", &a)),
        ];
        assert_eq!(
            apply_sequence(&flat, &steps).unwrap_err(),
            Error::InconsistentRevision { step: Some(1) }
        );
    }

    #[test]
    fn sequences() {
        let (a, c) = abc_chain();
        assert_eq!(apply_sequence(&c, &[]).unwrap(), c);
        let flat = DoxasticState::flat(&a).unwrap();
        let steps = vec![
            RevisionStep::lex(f("a | b", &a)),
            RevisionStep::lex(f("a", &a)),
        ];
        assert_eq!(apply_sequence(&flat, &steps).unwrap(), c);

        // F = d satisfiable, G = d & ~d unsatisfiable
        let a = al(&["a", "b", "c", "d"]);
        let c = st(&a, &["a", "~a & b", "~a & ~b"]);
        let n = f("(~a & b & c & d) | (~a & ~b & c)", &a);
        let s = f("(a & ~c & d & ~d) | (~a & b & ~c)", &a);
        let both = apply_sequence(
            &c,
            &[
                RevisionStep::new(Operator::Nat, n),
                RevisionStep::new(Operator::Sev, s.clone()),
            ],
        )
        .unwrap();
        assert_eq!(both, sev(&c, &s).unwrap());
    }
}
