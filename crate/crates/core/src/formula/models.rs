use super::{Model, Var};

/// A set of models over an alphabet of `width` variables, stored as a bitset
/// over the `2^width` model space. Iteration is in ascending bit-vector order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModelSet {
    width: u32,
    words: Vec<u64>,
}

fn word_count(width: u32) -> usize {
    if width <= 6 {
        1
    } else {
        1 << (width - 6)
    }
}

/// Mask of the valid bits in the (single) word of a narrow model space.
fn tail_mask(width: u32) -> u64 {
    if width >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << width)) - 1
    }
}

/// Bits of a word where variable `v` (v < 6) is true.
const LOW_VAR_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

impl ModelSet {
    pub fn empty(width: u32) -> ModelSet {
        ModelSet {
            width,
            words: vec![0; word_count(width)],
        }
    }

    pub fn full(width: u32) -> ModelSet {
        let mut words = vec![u64::MAX; word_count(width)];
        words[0] &= tail_mask(width);
        ModelSet { width, words }
    }

    /// Models where `var` is true.
    pub fn of_var(width: u32, var: Var) -> ModelSet {
        assert!(var.0 < width, "variable outside model width");
        let mask = tail_mask(width);
        let words = if var.0 < 6 {
            vec![LOW_VAR_PATTERNS[var.index()] & mask; word_count(width)]
        } else {
            let shift = var.0 - 6;
            (0..word_count(width))
                .map(|w| if w >> shift & 1 == 1 { u64::MAX } else { 0 })
                .collect()
        };
        ModelSet { width, words }
    }

    pub fn from_models(width: u32, models: impl IntoIterator<Item = Model>) -> ModelSet {
        let mut set = ModelSet::empty(width);
        for m in models {
            set.insert(m);
        }
        set
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn contains(&self, m: Model) -> bool {
        let i = m.0 as usize;
        i >> self.width == 0 && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, m: Model) {
        let i = m.0 as usize;
        assert!(i >> self.width == 0, "model wider than the set");
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == ModelSet::full(self.width)
    }

    fn zip_with(&self, other: &ModelSet, op: impl Fn(u64, u64) -> u64) -> ModelSet {
        assert_eq!(self.width, other.width, "model sets of different widths");
        ModelSet {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    pub fn union(&self, other: &ModelSet) -> ModelSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &ModelSet) -> ModelSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &ModelSet) -> ModelSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &ModelSet) -> ModelSet {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn complement(&self) -> ModelSet {
        let mut out = ModelSet::full(self.width);
        for (o, w) in out.words.iter_mut().zip(&self.words) {
            *o &= !w;
        }
        out
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ModelSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(&a, &b)| a & b == 0)
    }

    pub fn intersects(&self, other: &ModelSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn first(&self) -> Option<Model> {
        self.iter().next()
    }

    pub fn iter(&self) -> ModelIter<'_> {
        ModelIter {
            words: &self.words,
            index: 0,
            current: self.words[0],
        }
    }
}

impl std::fmt::Debug for ModelSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter().map(|m| m.0)).finish()
    }
}

pub struct ModelIter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for ModelIter<'_> {
    type Item = Model;

    fn next(&mut self) -> Option<Model> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as u64;
                self.current &= self.current - 1;
                return Some(Model(self.index as u64 * 64 + bit));
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a ModelSet {
    type Item = Model;
    type IntoIter = ModelIter<'a>;

    fn into_iter(self) -> ModelIter<'a> {
        self.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn var_patterns_match_bits() {
        for width in 0..9u32 {
            for v in 0..width {
                let set = ModelSet::of_var(width, Var(v));
                for m in 0..1u64 << width {
                    assert_eq!(
                        set.contains(Model(m)),
                        m >> v & 1 == 1,
                        "w={width} v={v} m={m}"
                    );
                }
                assert_eq!(set.len(), 1 << width >> 1);
            }
        }
    }

    #[test]
    fn full_and_complement() {
        for width in 0..9 {
            let full = ModelSet::full(width);
            assert_eq!(full.len(), 1 << width);
            assert!(full.complement().is_empty());
            assert_eq!(ModelSet::empty(width).complement(), full);
        }
    }

    #[test]
    fn iteration_is_ascending() {
        let set = ModelSet::from_models(8, [Model(200), Model(3), Model(64), Model(0)]);
        let got: Vec<u64> = set.iter().map(|m| m.0).collect();
        assert_eq!(got, vec![0, 3, 64, 200]);
    }
}
