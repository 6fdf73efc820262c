//! Dense square matrices over an arbitrary scalar.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    dim: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Matrix { dim, data: vec![T::zero(); dim * dim] }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Matrix { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::NotSquare);
        }
        Ok(Matrix { dim, data: rows.into_iter().flatten().collect() })
    }

    pub fn identity(dim: usize) -> Self
    where
        T: One,
    {
        Self::from_fn(dim, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// The all-ones matrix `J`.
    pub fn all_ones(dim: usize) -> Self
    where
        T: One,
    {
        Self::from_fn(dim, |_, _| T::one())
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { dim: self.dim, data: self.data.iter().map(f).collect() }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix<T>) -> Matrix<T>
    where
        T: std::ops::Mul<Output = T>,
    {
        let (n, m) = (self.dim, other.dim);
        Matrix::from_fn(n * m, |i, j| {
            self.get(i / m, j / m).clone() * other.get(i % m, j % m).clone()
        })
    }

    pub fn row_sums(&self) -> Vec<T> {
        (0..self.dim)
            .map(|i| self.row(i).iter().cloned().fold(T::zero(), |a, b| a + b))
            .collect()
    }

    pub fn trace(&self) -> T {
        (0..self.dim).fold(T::zero(), |a, i| a + self.get(i, i).clone())
    }
}

impl<T> Matrix<T> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.dim + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn is_symmetric(&self) -> bool
    where
        T: PartialEq,
    {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.dim, self.dim)?;
        for i in 0..self.dim {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_with_ones() {
        let b = Matrix::from_rows(vec![vec![0i64, 1], vec![1, 0]]).unwrap();
        let k = b.kron(&Matrix::all_ones(2));
        assert_eq!(k.dim(), 4);
        assert_eq!(k.row(0), &[0, 0, 1, 1]);
        assert_eq!(k.row(3), &[1, 1, 0, 0]);
        assert!(k.is_symmetric());
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(Matrix::from_rows(vec![vec![1i64, 2], vec![3]]).is_err());
    }
}
