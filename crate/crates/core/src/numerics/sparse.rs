use super::coordinates::Coordinates;
use super::scalar::Scalar;

/// Gradient with only a few populated entries, as returned by a partial
/// gradient along one basis direction.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseGradient<E> {
    len: usize,
    entries: Vec<(usize, E)>,
}

impl<E: Scalar> SparseGradient<E> {
    /// Empty gradient over `len` coordinates.
    pub fn new(len: usize) -> Self {
        Self {
            len,
            entries: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn clear(&mut self) {
        self.entries.clear();
    }

    /// Sets the entry at `index`, replacing any earlier value there.
    pub fn set(&mut self, index: usize, value: E) {
        assert!(index < self.len, "sparse index {index} out of bounds for length {}", self.len);
        match self.entries.iter_mut().find(|(i, _)| *i == index) {
            Some(entry) => entry.1 = value,
            None => self.entries.push((index, value)),
        }
    }

    pub fn get(&self, index: usize) -> Option<E> {
        self.entries.iter().find(|(i, _)| *i == index).map(|&(_, v)| v)
    }

    /// Populated `(index, value)` pairs in insertion order.
    pub fn entries(&self) -> &[(usize, E)] {
        &self.entries
    }

    pub fn to_dense(&self) -> Coordinates<E> {
        let mut dense = Coordinates::zeros(self.len, 1);
        for &(i, v) in &self.entries {
            dense[i] = v;
        }
        dense
    }
}
