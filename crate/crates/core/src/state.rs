//! Doxastic states: connected preorders over models, stored as the ordered
//! list of their equivalence classes from most to least believed.

use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{Alphabet, Formula, Model, ModelSet};

/// Outcome of comparing two models in a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
}

impl Comparison {
    pub fn is_leq(self) -> bool {
        self != Comparison::Greater
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Less => "less",
            Comparison::Equal => "equal",
            Comparison::Greater => "greater",
        })
    }
}

/// An ordered partition `[C(0), ..., C(m)]` of the model space.
///
/// Classes are nonempty, pairwise disjoint and cover every model. Constructors
/// drop empty classes, so two states are equal exactly when they order models
/// the same way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoxasticState {
    alphabet: Alphabet,
    classes: Vec<ModelSet>,
}

impl DoxasticState {
    /// The single-class state of total ignorance.
    pub fn flat(alphabet: &Alphabet) -> Result<DoxasticState> {
        alphabet.check_enumerable()?;
        Ok(DoxasticState {
            alphabet: alphabet.clone(),
            classes: vec![ModelSet::full(alphabet.len() as u32)],
        })
    }

    /// `[F, ~F]`; the flat state when `f` is valid or unsatisfiable.
    pub fn from_formula(f: &Formula, alphabet: &Alphabet) -> Result<DoxasticState> {
        let models = f.models(alphabet)?;
        let rest = models.complement();
        Ok(DoxasticState::from_parts(
            alphabet.clone(),
            vec![models, rest],
        ))
    }

    /// A state from explicit classes; empty ones are dropped and the rest
    /// must partition the model space.
    pub fn from_classes(alphabet: &Alphabet, classes: Vec<ModelSet>) -> Result<DoxasticState> {
        alphabet.check_enumerable()?;
        let width = alphabet.len() as u32;
        if let Some(bad) = classes.iter().find(|c| c.width() != width) {
            return Err(Error::WidthMismatch {
                expected: width as usize,
                got: bad.width() as usize,
            });
        }
        let state = DoxasticState {
            alphabet: alphabet.clone(),
            classes: classes.into_iter().filter(|c| !c.is_empty()).collect(),
        };
        state.validate()?;
        Ok(state)
    }

    /// Classes given as formulae, most believed first.
    pub fn from_formulas(alphabet: &Alphabet, classes: &[Formula]) -> Result<DoxasticState> {
        let sets = classes
            .iter()
            .map(|f| f.models(alphabet))
            .collect::<Result<Vec<_>>>()?;
        DoxasticState::from_classes(alphabet, sets)
    }

    /// Drops empty classes; the caller guarantees the partition property.
    pub(crate) fn from_parts(alphabet: Alphabet, classes: Vec<ModelSet>) -> DoxasticState {
        let classes: Vec<ModelSet> = classes.into_iter().filter(|c| !c.is_empty()).collect();
        let state = DoxasticState { alphabet, classes };
        debug_assert!(
            state.validate().is_ok(),
            "operator produced a non-partition"
        );
        state
    }

    /// Checks the partition invariants.
    pub fn validate(&self) -> Result<()> {
        let width = self.alphabet.len() as u32;
        let mut seen = ModelSet::empty(width);
        for (i, class) in self.classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidState(format!("class {i} is empty")));
            }
            if class.intersects(&seen) {
                return Err(Error::InvalidState(format!(
                    "class {i} overlaps a preceding class"
                )));
            }
            seen = seen.union(class);
        }
        if !seen.is_full() {
            let missing = seen.complement().first().unwrap_or_default();
            return Err(Error::InvalidState(format!(
                "classes do not cover the model {}",
                missing.display(&self.alphabet)
            )));
        }
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn width(&self) -> u32 {
        self.alphabet.len() as u32
    }

    pub fn classes(&self) -> &[ModelSet] {
        &self.classes
    }

    /// Number of classes.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn is_flat(&self) -> bool {
        self.classes.len() == 1
    }

    /// Index of the class containing `m`.
    pub fn class_of(&self, m: Model) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(m))
            .expect("model outside the state's model space")
    }

    pub fn compare(&self, i: Model, j: Model) -> Comparison {
        match self.class_of(i).cmp(&self.class_of(j)) {
            std::cmp::Ordering::Less => Comparison::Less,
            std::cmp::Ordering::Equal => Comparison::Equal,
            std::cmp::Ordering::Greater => Comparison::Greater,
        }
    }

    /// `i <= j`: `i` is believed at least as much as `j`.
    pub fn leq(&self, i: Model, j: Model) -> bool {
        self.class_of(i) <= self.class_of(j)
    }

    /// `imin(A)` and `min(A)` for a set of models.
    pub fn min_of(&self, a: &ModelSet) -> Result<(usize, ModelSet)> {
        self.classes
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.intersection(a)))
            .find(|(_, m)| !m.is_empty())
            .ok_or(Error::InconsistentRevision { step: None })
    }

    /// `imax(A)` and `max(A)` for a set of models.
    pub fn max_of(&self, a: &ModelSet) -> Result<(usize, ModelSet)> {
        self.classes
            .iter()
            .enumerate()
            .rev()
            .map(|(i, c)| (i, c.intersection(a)))
            .find(|(_, m)| !m.is_empty())
            .ok_or(Error::InconsistentRevision { step: None })
    }

    pub fn min_models(&self, a: &Formula) -> Result<ModelSet> {
        Ok(self.min_of(&a.models(&self.alphabet)?)?.1)
    }

    pub fn imin(&self, a: &Formula) -> Result<usize> {
        Ok(self.min_of(&a.models(&self.alphabet)?)?.0)
    }

    pub fn max_models(&self, a: &Formula) -> Result<ModelSet> {
        Ok(self.max_of(&a.models(&self.alphabet)?)?.1)
    }

    pub fn imax(&self, a: &Formula) -> Result<usize> {
        Ok(self.max_of(&a.models(&self.alphabet)?)?.0)
    }
}

/// Equality of two states: same classes in the same order.
pub fn equal_states(c1: &DoxasticState, c2: &DoxasticState) -> bool {
    c1 == c2
}

/// `[ {a}, {a,b} | {}, {b} ]`: classes separated by `|`, most believed first.
impl fmt::Display for DoxasticState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[ ")?;
        for (i, class) in self.classes.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            for (k, m) in class.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", m.display(&self.alphabet))?;
            }
        }
        f.write_str(" ]")
    }
}
