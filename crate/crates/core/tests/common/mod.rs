//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use doxa::formula::{Alphabet, Formula, Model, ModelSet, Var};
use doxa::horn::{HornClause, HornFormula};
use doxa::{DoxasticState, Operator};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn alphabet(n: usize) -> Alphabet {
    Alphabet::new((0..n).map(|k| format!("v{k}"))).unwrap()
}

/// Random formula over the first `nvars` variables.
pub fn random_formula(rng: &mut impl Rng, nvars: usize, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..12) {
            0 => Formula::Const(rng.gen()),
            _ => Formula::var(Var(rng.gen_range(0..nvars as u32))),
        };
    }
    let op = rng.gen_range(0..6);
    let mut sub = || random_formula(rng, nvars, depth - 1);
    match op {
        0 => !sub(),
        1 => Formula::and(vec![sub(), sub()]),
        2 => Formula::or(vec![sub(), sub()]),
        3 => Formula::implies(sub(), sub()),
        4 => Formula::iff(sub(), sub()),
        _ => Formula::and(vec![sub(), sub(), sub()]),
    }
}

/// Random formula with at least one model over `al`.
pub fn random_consistent(rng: &mut impl Rng, al: &Alphabet, depth: u32) -> Formula {
    loop {
        let f = random_formula(rng, al.len(), depth);
        if !f.models(al).unwrap().is_empty() {
            return f;
        }
    }
}

/// The formula whose models over `vars` are the set bits of `table`
/// (bit `k` is the assignment whose `i`-th variable is bit `i` of `k`).
pub fn truth_table_formula(vars: &[Var], table: u64) -> Formula {
    let minterms: Vec<Formula> = (0..1u64 << vars.len())
        .filter(|k| table >> k & 1 == 1)
        .map(|k| {
            Formula::and(
                vars.iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        if k >> i & 1 == 1 {
                            Formula::var(v)
                        } else {
                            !Formula::var(v)
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    Formula::or(minterms).normalize()
}

/// Models of `f` by evaluating it on each assignment separately.
pub fn models_by_evaluation(f: &Formula, width: u32) -> ModelSet {
    ModelSet::from_models(
        width,
        (0..1u64 << width).map(Model).filter(|&m| f.evaluate(m)),
    )
}

/// All Horn clauses over `vars`: every body subset with every head, or none.
pub fn all_horn_clauses(nvars: u32) -> Vec<HornClause> {
    let mut out = Vec::new();
    for body in 0..1u32 << nvars {
        let body_vars: Vec<Var> = (0..nvars).filter(|v| body >> v & 1 == 1).map(Var).collect();
        out.push(HornClause::new(None, body_vars.clone()));
        for h in 0..nvars {
            out.push(HornClause::new(Some(Var(h)), body_vars.clone()));
        }
    }
    out
}

/// All Horn formulae of at most `max_clauses` distinct clauses over `nvars`.
pub fn all_horn_formulas(nvars: u32, max_clauses: usize) -> Vec<HornFormula> {
    let clauses = all_horn_clauses(nvars);
    let mut out = vec![HornFormula::new(vec![])];
    let mut frontier: Vec<(usize, Vec<HornClause>)> = vec![(0, vec![])];
    for _ in 0..max_clauses {
        let mut next = Vec::new();
        for (start, chosen) in &frontier {
            for (k, clause) in clauses.iter().enumerate().skip(*start) {
                let mut c = chosen.clone();
                c.push(clause.clone());
                out.push(HornFormula::new(c.clone()));
                next.push((k + 1, c));
            }
        }
        frontier = next;
    }
    out
}

pub fn random_clause(rng: &mut impl Rng, nvars: u32, max_body: usize) -> HornClause {
    let len = rng.gen_range(0..=max_body.min(nvars as usize));
    let mut all: Vec<u32> = (0..nvars).collect();
    all.shuffle(rng);
    let body: Vec<Var> = all[..len].iter().map(|&v| Var(v)).collect();
    let head = if rng.gen_bool(0.7) {
        Some(Var(rng.gen_range(0..nvars)))
    } else {
        None
    };
    HornClause::new(head, body)
}

pub fn random_horn(
    rng: &mut impl Rng,
    nvars: u32,
    nclauses: usize,
    max_body: usize,
) -> HornFormula {
    (0..nclauses)
        .map(|_| random_clause(rng, nvars, max_body))
        .collect()
}

/// `c` with extra negative literals: implied by `c`.
pub fn weaken(rng: &mut impl Rng, c: &HornClause, nvars: u32) -> HornClause {
    let mut body = c.body().to_vec();
    body.push(Var(rng.gen_range(0..nvars)));
    HornClause::new(c.head(), body)
}

/// Horn pairs likely to make the first lexicographic revision redundant,
/// mixed with unrelated pairs.
pub fn random_horn_pair(rng: &mut impl Rng) -> (u32, HornFormula, HornFormula) {
    let nvars = rng.gen_range(1..=8u32);
    let n1 = rng.gen_range(0..=5);
    let f1 = random_horn(rng, nvars, n1, 3);
    let f2 = match rng.gen_range(0..4) {
        // equivalent: same clauses plus weakened copies, reshuffled
        0 => {
            let mut cs = f1.clauses().to_vec();
            for c in f1.clauses() {
                if rng.gen_bool(0.5) {
                    cs.push(weaken(rng, c, nvars));
                }
            }
            cs.shuffle(rng);
            HornFormula::new(cs)
        }
        // negation of a single clause: its literals flipped into units
        1 => {
            let c = random_clause(rng, nvars, 3);
            let mut units: Vec<HornClause> =
                c.body().iter().map(|&v| HornClause::unit(v)).collect();
            if let Some(h) = c.head() {
                units.push(HornClause::new(None, [h]));
            }
            return (nvars, HornFormula::new(vec![c]), HornFormula::new(units));
        }
        _ => {
            let n2 = rng.gen_range(0..=5);
            random_horn(rng, nvars, n2, 3)
        }
    };
    if rng.gen_bool(0.5) {
        (nvars, f1, f2)
    } else {
        (nvars, f2, f1)
    }
}

/// Class index of every model, i.e. the total preorder as a rank function.
pub fn ranks(c: &DoxasticState) -> Vec<usize> {
    let mut r = vec![0; 1 << c.width()];
    for (i, class) in c.classes().iter().enumerate() {
        for m in class {
            r[m.0 as usize] = i;
        }
    }
    r
}

/// Builds the state that orders models by `key`, smaller first.
pub fn state_from_key<K: Ord>(al: &Alphabet, key: impl Fn(Model) -> K) -> DoxasticState {
    let width = al.len() as u32;
    let mut groups: BTreeMap<K, Vec<Model>> = BTreeMap::new();
    for m in (0..1u64 << width).map(Model) {
        groups.entry(key(m)).or_default().push(m);
    }
    let classes = groups
        .into_values()
        .map(|ms| ModelSet::from_models(width, ms))
        .collect();
    DoxasticState::from_classes(al, classes).unwrap()
}

/// Revision computed from how each operator reorders models, rather than
/// from its class-list construction. `a` must be nonempty.
pub fn revise_by_key(op: Operator, c: &DoxasticState, a: &ModelSet) -> DoxasticState {
    let rank = ranks(c);
    let r = |m: Model| rank[m.0 as usize];
    let imin = a.iter().map(r).min().unwrap();
    let imax = a.iter().map(r).max().unwrap();
    let in_a = |m: Model| a.contains(m);
    let minimal = |m: Model| in_a(m) && r(m) == imin;
    let al = c.alphabet();
    match op {
        // A-models first, each side in the old order
        Operator::Lex => state_from_key(al, |m| (!in_a(m), r(m))),
        // only the best A-models move to the front
        Operator::Nat => state_from_key(al, |m| (!minimal(m), r(m))),
        // the best A-models first; everything up to their level is merged
        Operator::Sev => state_from_key(al, |m| (!minimal(m), r(m).max(imin))),
        // A-models in the old order; non-A models up to imin merged
        Operator::Msev => {
            state_from_key(al, |m| (!in_a(m), r(m).max(if in_a(m) { 0 } else { imin })))
        }
        // A-models in the old order; non-A models up to imax merged
        Operator::Dsev => state_from_key(al, |m| {
            if in_a(m) {
                (0, r(m))
            } else if r(m) <= imax {
                (1, imax)
            } else {
                (1, r(m))
            }
        }),
        // best A-models first; the rest keeps the old order, A before non-A
        // within each old class
        Operator::Res => state_from_key(al, |m| (!minimal(m), r(m), !in_a(m))),
        // A-models in the old order, all others merged at the end
        Operator::Vrad => state_from_key(al, |m| if in_a(m) { (0, r(m)) } else { (1, 0) }),
        // best A-models, then everything else
        Operator::Full => state_from_key(al, |m| !minimal(m)),
    }
}

/// The state after lexicographic revisions from flat: models ordered by the
/// satisfaction vector read from the last formula backwards.
pub fn lex_state_by_key(al: &Alphabet, s: &[Formula]) -> DoxasticState {
    state_from_key(al, |m| {
        s.iter()
            .rev()
            .map(|f| !f.evaluate(m))
            .collect::<Vec<bool>>()
    })
}

/// Random state over `al` with up to `max_classes` classes.
pub fn random_state(rng: &mut impl Rng, al: &Alphabet, max_classes: usize) -> DoxasticState {
    let k = rng.gen_range(1..=max_classes);
    let labels: Vec<usize> = (0..1usize << al.len())
        .map(|_| rng.gen_range(0..k))
        .collect();
    state_from_key(al, |m| labels[m.0 as usize])
}
