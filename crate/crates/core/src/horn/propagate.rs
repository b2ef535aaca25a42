//! Forward chaining for Horn clauses (Dowling–Gallier style counters).
//!
//! Each clause keeps a count of body variables not yet derived; when the count
//! hits zero its head is derived, or, for a headless clause, a conflict is
//! raised. Every clause is visited once per body variable, so a full
//! propagation is linear in the formula size. A trail allows assumptions to be
//! retracted, which makes clause-by-clause entailment checks incremental.

use super::HornClause;
use crate::formula::Var;

pub(crate) struct Propagator<'a> {
    clauses: &'a [HornClause],
    /// Clauses whose body contains variable `v`:
    /// `occurs[start[v]..start[v + 1]]`.
    occurs: Vec<u32>,
    start: Vec<usize>,
    pending: Vec<u32>,
    derived: Vec<bool>,
    trail: Vec<Var>,
    /// Variables whose occurrences have been counted down, in order.
    processed: Vec<Var>,
    queue: Vec<Var>,
    conflict: bool,
    /// Propagation may stop once this variable is derived.
    target: Option<Var>,
}

impl<'a> Propagator<'a> {
    /// Builds the propagator and derives the least model of `clauses`.
    /// Tautological clauses must already be filtered out.
    pub(crate) fn new(clauses: &'a [HornClause], num_vars: usize) -> Self {
        let mut start = vec![0usize; num_vars + 1];
        for c in clauses {
            for v in &c.body {
                start[v.index() + 1] += 1;
            }
        }
        for v in 0..num_vars {
            start[v + 1] += start[v];
        }
        let mut fill = start.clone();
        let mut occurs = vec![0u32; start[num_vars]];
        let mut pending = Vec::with_capacity(clauses.len());
        for (i, c) in clauses.iter().enumerate() {
            for v in &c.body {
                occurs[fill[v.index()]] = i as u32;
                fill[v.index()] += 1;
            }
            pending.push(c.body.len() as u32);
        }
        let mut p = Propagator {
            clauses,
            occurs,
            start,
            pending,
            derived: vec![false; num_vars],
            trail: Vec::new(),
            processed: Vec::new(),
            queue: Vec::new(),
            conflict: false,
            target: None,
        };
        for i in 0..clauses.len() {
            if p.pending[i] == 0 {
                p.fire(i);
            }
        }
        p.run();
        // The least model is the base level; it is never retracted.
        p.trail.clear();
        p.processed.clear();
        p
    }

    fn fire(&mut self, clause: usize) {
        match self.clauses[clause].head {
            Some(h) => self.assign(h),
            None => self.conflict = true,
        }
    }

    fn assign(&mut self, v: Var) {
        if !self.derived[v.index()] {
            self.derived[v.index()] = true;
            self.trail.push(v);
            self.queue.push(v);
        }
    }

    fn run(&mut self) {
        while !self.conflict {
            if self.target.is_some_and(|t| self.derived[t.index()]) {
                break;
            }
            let Some(v) = self.queue.pop() else { return };
            for k in self.start[v.index()]..self.start[v.index() + 1] {
                let c = self.occurs[k] as usize;
                self.pending[c] -= 1;
                if self.pending[c] == 0 {
                    self.fire(c);
                }
            }
            self.processed.push(v);
        }
        self.queue.clear();
    }

    pub(crate) fn is_conflict(&self) -> bool {
        self.conflict
    }

    pub(crate) fn is_derived(&self, v: Var) -> bool {
        self.derived.get(v.index()).copied().unwrap_or(false)
    }

    /// Whether the formula entails the clause `~body | head`, i.e. whether
    /// the formula plus the body as facts derives the head or a conflict.
    pub(crate) fn entails_clause(&mut self, clause: &HornClause) -> bool {
        if self.conflict {
            return true;
        }
        if clause.head.is_some_and(|h| self.is_derived(h)) {
            return true;
        }
        self.target = clause.head;
        for &v in &clause.body {
            self.assign(v);
        }
        self.run();
        let result = self.conflict || clause.head.is_some_and(|h| self.is_derived(h));
        self.target = None;
        self.retract();
        result
    }

    fn retract(&mut self) {
        for v in self.processed.drain(..) {
            for k in self.start[v.index()]..self.start[v.index() + 1] {
                self.pending[self.occurs[k] as usize] += 1;
            }
        }
        for v in self.trail.drain(..) {
            self.derived[v.index()] = false;
        }
        self.queue.clear();
        self.conflict = false;
    }
}
