//! Instances that tie a redundancy or comparison question to the
//! satisfiability of injected formulae.
//!
//! The gadget uses the variables `a`, `b`, `c`; the injected formulae are
//! written over their own alphabet, which must avoid those names, and are
//! shifted after the gadget variables. Each generator records the
//! satisfiability condition under which its query holds, as confirmed by the
//! brute-force oracles in the test suite.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::formula::{Alphabet, Formula, Model, Var};
use crate::lexredundancy::redundant_general;
use crate::revision::{apply_sequence, Operator, RevisionSequence, RevisionStep};
use crate::state::{Comparison, DoxasticState};

pub const GADGET_VARS: [&str; 3] = ["a", "b", "c"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reduction {
    /// Natural then severe revision from a three-class state; redundancy of
    /// the natural one.
    HeteroHard,
    /// Two lexicographic and one deep severe revision from the flat state;
    /// redundancy of the first.
    HeteroFlat,
    /// Three revisions by the same operator (natural, severe or restrained);
    /// comparison of `{b}` and `{a}`.
    Nsr(Operator),
    /// Two full meet revisions; comparison of `{a}` and `{b}`.
    Full,
    /// Two moderate severe revisions; comparison of `{}` and `{a}`.
    Msev,
    /// Two deep severe revisions; comparison of `{}` and `{a}`.
    Dsev,
}

impl Reduction {
    pub fn name(self) -> &'static str {
        match self {
            Reduction::HeteroHard => "hetero-hard",
            Reduction::HeteroFlat => "hetero-flat",
            Reduction::Nsr(_) => "nsr",
            Reduction::Full => "full",
            Reduction::Msev => "msev",
            Reduction::Dsev => "dsev",
        }
    }

    /// Whether the generator takes a second formula `G`.
    pub fn takes_g(self) -> bool {
        matches!(self, Reduction::HeteroHard | Reduction::Nsr(_))
    }

    /// Whether the query holds, given the satisfiability of `F` and `G`
    /// (`g_sat` is ignored when there is no `G`).
    pub fn expected(self, f_sat: bool, g_sat: bool) -> bool {
        match self {
            Reduction::HeteroHard => f_sat && !g_sat,
            Reduction::HeteroFlat => f_sat,
            Reduction::Nsr(_) => !f_sat && g_sat,
            Reduction::Full => f_sat,
            Reduction::Msev => !f_sat,
            Reduction::Dsev => f_sat,
        }
    }

    pub fn predicate(self) -> &'static str {
        match self {
            Reduction::HeteroHard => "step 1 redundant iff F satisfiable and G unsatisfiable",
            Reduction::HeteroFlat => "step 1 redundant iff F satisfiable",
            Reduction::Nsr(_) => "{b} <= {a} iff F unsatisfiable and G satisfiable",
            Reduction::Full => "{a} <= {b} iff F satisfiable",
            Reduction::Msev => "{} <= {a} iff F unsatisfiable",
            Reduction::Dsev => "{} <= {a} iff F satisfiable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Query {
    /// Redundancy of the step at this 0-based index.
    Redundancy(usize),
    /// Whether the first model is at most the second.
    Comparison(Model, Model),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Redundant(bool),
    Compared(Comparison),
}

impl Outcome {
    /// Redundancy, or `i <= j` for a comparison.
    pub fn holds(self) -> bool {
        match self {
            Outcome::Redundant(r) => r,
            Outcome::Compared(c) => c.is_leq(),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Redundant(true) => f.write_str("redundant"),
            Outcome::Redundant(false) => f.write_str("irredundant"),
            Outcome::Compared(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pub reduction: Reduction,
    pub alphabet: Alphabet,
    pub initial: DoxasticState,
    /// Formulae of the initial classes; empty for the flat state.
    pub initial_classes: Vec<Formula>,
    pub sequence: RevisionSequence,
    pub query: Query,
    pub expected_predicate: &'static str,
}

impl ReductionInstance {
    /// Answers the query by building the states.
    pub fn evaluate(&self) -> Result<Outcome> {
        match self.query {
            Query::Redundancy(i) => Ok(Outcome::Redundant(redundant_general(
                &self.initial,
                &self.sequence,
                i,
            )?)),
            Query::Comparison(i, j) => {
                let state = apply_sequence(&self.initial, &self.sequence)?;
                Ok(Outcome::Compared(state.compare(i, j)))
            }
        }
    }

    /// The instance as a scenario file for the CLI.
    pub fn to_scenario(&self) -> String {
        let al = &self.alphabet;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# {}: {}",
            self.reduction.name(),
            self.expected_predicate
        );
        let _ = writeln!(out, "vars {}", al.names().join(" "));
        if self.initial_classes.is_empty() {
            out.push_str("state flat\n");
        } else {
            let classes: Vec<String> = self
                .initial_classes
                .iter()
                .map(|f| f.display(al).to_string())
                .collect();
            let _ = writeln!(out, "state classes {}", classes.join(" ; "));
        }
        for step in &self.sequence {
            let _ = writeln!(out, "revise {} {}", step.operator, step.payload.display(al));
        }
        match self.query {
            Query::Redundancy(i) => {
                let _ = writeln!(out, "query redundant {}", i + 1);
            }
            Query::Comparison(i, j) => {
                let _ = writeln!(out, "query compare {} {}", i.display(al), j.display(al));
            }
        }
        out
    }
}

/// Combined alphabet and the injected formulae shifted past the gadget.
fn embed(
    gadget: usize,
    injected: &Alphabet,
    formulae: &[&Formula],
) -> Result<(Alphabet, Vec<Formula>)> {
    if let Some(name) = injected
        .names()
        .iter()
        .find(|n| GADGET_VARS.contains(&n.as_str()))
    {
        return Err(Error::AlphabetOverlap(format!(
            "injected formulae may not use the gadget variable `{name}`"
        )));
    }
    for f in formulae {
        f.check_alphabet(injected)?;
    }
    if let [f, g] = formulae {
        if let Some(v) = f.vars().intersection(&g.vars()).next() {
            return Err(Error::AlphabetOverlap(format!(
                "F and G share the variable `{}`",
                injected.name(*v)
            )));
        }
    }
    let gadget_alphabet = Alphabet::new(GADGET_VARS[..gadget].iter().copied())?;
    let alphabet = gadget_alphabet.concat(injected)?;
    alphabet.check_enumerable()?;
    let shift = gadget as u32;
    let shifted = formulae
        .iter()
        .map(|f| f.remap(&|v: Var| Var(v.0 + shift)))
        .collect();
    Ok((alphabet, shifted))
}

struct Gadget {
    a: Formula,
    b: Formula,
    c: Formula,
}

fn gadget() -> Gadget {
    Gadget {
        a: Formula::var(Var(0)),
        b: Formula::var(Var(1)),
        c: Formula::var(Var(2)),
    }
}

fn instance(
    reduction: Reduction,
    alphabet: Alphabet,
    initial_classes: Vec<Formula>,
    sequence: RevisionSequence,
    query: Query,
) -> Result<ReductionInstance> {
    let initial = if initial_classes.is_empty() {
        DoxasticState::flat(&alphabet)?
    } else {
        DoxasticState::from_formulas(&alphabet, &initial_classes)?
    };
    Ok(ReductionInstance {
        reduction,
        alphabet,
        initial,
        initial_classes,
        sequence,
        query,
        expected_predicate: reduction.predicate(),
    })
}

fn model(alphabet: &Alphabet, true_vars: &[&str]) -> Model {
    alphabet.model(true_vars).expect("gadget variable")
}

/// `C = [a, ~a&b, ~a&~b]`, `nat((~a&b&c&F) | (~a&~b&c))`,
/// `sev((a&~c&G) | (~a&b&~c))`; is the natural revision redundant?
pub fn gen_hetero_hard(injected: &Alphabet, f: &Formula, g: &Formula) -> Result<ReductionInstance> {
    let (alphabet, fg) = embed(3, injected, &[f, g])?;
    let (f, g) = (fg[0].clone(), fg[1].clone());
    let Gadget { a, b, c } = gadget();
    let classes = vec![a.clone(), !a.clone() & b.clone(), !a.clone() & !b.clone()];
    let n = (!a.clone() & b.clone() & c.clone() & f) | (!a.clone() & !b.clone() & c.clone());
    let s = (a.clone() & !c.clone() & g) | (!a & b & !c);
    let sequence = vec![
        RevisionStep::new(Operator::Nat, n),
        RevisionStep::new(Operator::Sev, s),
    ];
    instance(
        Reduction::HeteroHard,
        alphabet,
        classes,
        sequence,
        Query::Redundancy(0),
    )
}

/// Flat state, `lex(a|b)`, `lex(a)`, `dsev(a | (~a&~b&c&F))`; is the first
/// revision redundant?
pub fn gen_hetero_flat(injected: &Alphabet, f: &Formula) -> Result<ReductionInstance> {
    let (alphabet, fs) = embed(3, injected, &[f])?;
    let f = fs[0].clone();
    let Gadget { a, b, c } = gadget();
    let d = a.clone() | (!a.clone() & !b.clone() & c & f);
    let sequence = vec![
        RevisionStep::lex(a.clone() | b),
        RevisionStep::lex(a),
        RevisionStep::new(Operator::Dsev, d),
    ];
    instance(
        Reduction::HeteroFlat,
        alphabet,
        Vec::new(),
        sequence,
        Query::Redundancy(0),
    )
}

/// Flat state revised by `op` with `a`, `~a | (a&b&F)`, `a | (~a&~b&G)`;
/// compares `{b}` with `{a}`. `op` must be natural, severe or restrained.
pub fn gen_compare_nsr(
    injected: &Alphabet,
    f: &Formula,
    g: &Formula,
    op: Operator,
) -> Result<ReductionInstance> {
    if !matches!(op, Operator::Nat | Operator::Sev | Operator::Res) {
        return Err(Error::UnsupportedOperator(op.to_string()));
    }
    let (alphabet, fg) = embed(3, injected, &[f, g])?;
    let (f, g) = (fg[0].clone(), fg[1].clone());
    let Gadget { a, b, .. } = gadget();
    let payloads = [
        a.clone(),
        !a.clone() | (a.clone() & b.clone() & f),
        a.clone() | (!a & !b & g),
    ];
    let sequence = payloads
        .into_iter()
        .map(|p| RevisionStep::new(op, p))
        .collect();
    let query = Query::Comparison(model(&alphabet, &["b"]), model(&alphabet, &["a"]));
    instance(Reduction::Nsr(op), alphabet, Vec::new(), sequence, query)
}

/// Flat state, `full(a)`, `full(~a | (a&b&F))`; compares `{a}` with `{b}`.
pub fn gen_compare_full(injected: &Alphabet, f: &Formula) -> Result<ReductionInstance> {
    let (alphabet, fs) = embed(2, injected, &[f])?;
    let Gadget { a, b, .. } = gadget();
    let sequence = vec![
        RevisionStep::new(Operator::Full, a.clone()),
        RevisionStep::new(Operator::Full, !a.clone() | (a & b & fs[0].clone())),
    ];
    let query = Query::Comparison(model(&alphabet, &["a"]), model(&alphabet, &["b"]));
    instance(Reduction::Full, alphabet, Vec::new(), sequence, query)
}

/// Flat state, `msev(a)`, `msev(b & (a -> F))`; compares `{}` with `{a}`.
pub fn gen_compare_msev(injected: &Alphabet, f: &Formula) -> Result<ReductionInstance> {
    let (alphabet, fs) = embed(2, injected, &[f])?;
    let Gadget { a, b, .. } = gadget();
    let sequence = vec![
        RevisionStep::new(Operator::Msev, a.clone()),
        RevisionStep::new(Operator::Msev, b & Formula::implies(a, fs[0].clone())),
    ];
    let query = Query::Comparison(model(&alphabet, &[]), model(&alphabet, &["a"]));
    instance(Reduction::Msev, alphabet, Vec::new(), sequence, query)
}

/// Flat state, `dsev(a)`, `dsev(b & (~a -> F))`; compares `{}` with `{a}`.
pub fn gen_compare_dsev(injected: &Alphabet, f: &Formula) -> Result<ReductionInstance> {
    let (alphabet, fs) = embed(2, injected, &[f])?;
    let Gadget { a, b, .. } = gadget();
    let sequence = vec![
        RevisionStep::new(Operator::Dsev, a.clone()),
        RevisionStep::new(Operator::Dsev, b & Formula::implies(!a, fs[0].clone())),
    ];
    let query = Query::Comparison(model(&alphabet, &[]), model(&alphabet, &["a"]));
    instance(Reduction::Dsev, alphabet, Vec::new(), sequence, query)
}

/// Dispatches to the generator for `reduction`. `g` is required exactly when
/// the reduction takes a second formula.
pub fn generate(
    reduction: Reduction,
    injected: &Alphabet,
    f: &Formula,
    g: Option<&Formula>,
) -> Result<ReductionInstance> {
    let need_g = || {
        g.ok_or_else(|| {
            Error::InvalidState(format!("{} needs a second formula G", reduction.name()))
        })
    };
    match reduction {
        Reduction::HeteroHard => gen_hetero_hard(injected, f, need_g()?),
        Reduction::HeteroFlat => gen_hetero_flat(injected, f),
        Reduction::Nsr(op) => gen_compare_nsr(injected, f, need_g()?, op),
        Reduction::Full => gen_compare_full(injected, f),
        Reduction::Msev => gen_compare_msev(injected, f),
        Reduction::Dsev => gen_compare_dsev(injected, f),
    }
}
