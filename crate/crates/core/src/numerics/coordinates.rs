use std::fmt;
use std::ops::{Index, IndexMut};

use super::scalar::{Real, Scalar};

/// Dense, row-major numeric array of shape `rows x cols`.
///
/// Coordinates being optimized are usually column vectors (`cols == 1`), but
/// the same container holds data matrices for problems like linear regression.
#[derive(Clone, PartialEq)]
pub struct Coordinates<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Scalar> Coordinates<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, E::zero())
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    /// Column vector holding `values`.
    pub fn from_vec(values: Vec<E>) -> Self {
        Self {
            rows: values.len(),
            cols: 1,
            data: values,
        }
    }

    pub fn from_slice(values: &[E]) -> Self {
        Self::from_vec(values.to_vec())
    }

    /// Matrix from row-major `data`. Panics if `data.len() != rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "row-major data of length {} cannot form a {rows}x{cols} matrix",
            data.len()
        );
        Self { rows, cols, data }
    }

    /// Zero-filled container with the same shape as `self`.
    pub fn zeros_like(&self) -> Self {
        Self::zeros(self.rows, self.cols)
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[E] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [E] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<E> {
        self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, E> {
        self.data.iter()
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn fill(&mut self, value: E) {
        self.data.iter_mut().for_each(|v| *v = value);
    }

    /// Copies `other` into `self`; shapes must match.
    pub fn assign(&mut self, other: &Self) {
        self.check_shape(other);
        self.data.copy_from_slice(&other.data);
    }

    pub fn map(&self, f: impl Fn(E) -> E) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn map_inplace(&mut self, f: impl Fn(E) -> E) {
        self.data.iter_mut().for_each(|v| *v = f(*v));
    }

    /// `self += other`.
    pub fn add_assign(&mut self, other: &Self) {
        self.check_shape(other);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = *a + b;
        }
    }

    /// `self -= other`.
    pub fn sub_assign(&mut self, other: &Self) {
        self.check_shape(other);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = *a - b;
        }
    }

    /// `self += alpha * other`.
    pub fn axpy(&mut self, alpha: E, other: &Self) {
        self.check_shape(other);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = *a + alpha * b;
        }
    }

    pub fn scale(&mut self, alpha: E) {
        self.data.iter_mut().for_each(|v| *v = *v * alpha);
    }

    pub fn scaled(&self, alpha: E) -> Self {
        self.map(|v| v * alpha)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    /// Elementwise product.
    pub fn hadamard(&self, other: &Self) -> Self {
        self.check_shape(other);
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a * b)
                .collect(),
        }
    }

    pub fn square(&self) -> Self {
        self.map(|v| v * v)
    }

    /// Sum of elements, accumulated left to right.
    pub fn sum(&self) -> E {
        self.data.iter().fold(E::zero(), |acc, &v| acc + v)
    }

    pub fn dot(&self, other: &Self) -> E {
        assert_eq!(self.len(), other.len(), "dot product length mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(E::zero(), |acc, (&a, &b)| acc + a * b)
    }

    /// Matrix-vector product `self * v`; `v` must have `cols` elements.
    pub fn matvec(&self, v: &Self) -> Self {
        assert_eq!(self.cols, v.len(), "matvec: {}x{} times length {}", self.rows, self.cols, v.len());
        let data = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(&v.data)
                    .fold(E::zero(), |acc, (&a, &b)| acc + a * b)
            })
            .collect();
        Self::from_vec(data)
    }

    /// Transposed product `selfᵀ * v`; `v` must have `rows` elements.
    pub fn matvec_transpose(&self, v: &Self) -> Self {
        assert_eq!(self.rows, v.len(), "matvec_transpose: {}x{} transposed times length {}", self.rows, self.cols, v.len());
        let mut out = vec![E::zero(); self.cols];
        for (r, &w) in v.data.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(r)) {
                *o = *o + a * w;
            }
        }
        Self::from_vec(out)
    }

    /// Largest absolute element; zero for an empty container.
    pub fn norm_inf(&self) -> E {
        self.data.iter().fold(E::zero(), |acc, &v| {
            let a = if v < E::zero() { E::zero() - v } else { v };
            if a > acc {
                a
            } else {
                acc
            }
        })
    }

    fn check_shape(&self, other: &Self) {
        assert_eq!(
            self.shape(),
            other.shape(),
            "shape mismatch: {:?} vs {:?}",
            self.shape(),
            other.shape()
        );
    }
}

impl<E: Real> Coordinates<E> {
    pub fn sqrt(&self) -> Self {
        self.map(|v| v.sqrt())
    }

    pub fn norm2(&self) -> E {
        self.dot(self).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

impl<E> Index<usize> for Coordinates<E> {
    type Output = E;

    fn index(&self, i: usize) -> &E {
        &self.data[i]
    }
}

impl<E> IndexMut<usize> for Coordinates<E> {
    fn index_mut(&mut self, i: usize) -> &mut E {
        &mut self.data[i]
    }
}

impl<E> Index<(usize, usize)> for Coordinates<E> {
    type Output = E;

    fn index(&self, (r, c): (usize, usize)) -> &E {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl<E> IndexMut<(usize, usize)> for Coordinates<E> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut E {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl<E: fmt::Debug> fmt::Debug for Coordinates<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coordinates<{}x{}>{:?}", self.rows, self.cols, self.data)
    }
}

impl<E: Scalar> From<Vec<E>> for Coordinates<E> {
    fn from(values: Vec<E>) -> Self {
        Self::from_vec(values)
    }
}
