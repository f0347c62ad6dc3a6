//! Dense square matrices over GF(2) with bit-packed rows.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A square matrix over GF(2). Row `i` occupies `words` consecutive `u64`s.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(n: usize) -> Self {
        let words = n.div_ceil(WORD);
        Gf2Matrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from 0/1 rows. Panics if the rows are not square.
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must be square");
        Self::from_fn(n, |i, j| rows[i][j] & 1 == 1)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        (self.bits[i * self.words + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.n && j < self.n);
        let word = &mut self.bits[i * self.words + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Rank by Gaussian elimination with word-level row XOR.
    pub fn rank(&self) -> usize {
        let mut rows = self.bits.clone();
        let w = self.words;
        let mut rank = 0;
        for col in 0..self.n {
            let (word, mask) = (col / WORD, 1u64 << (col % WORD));
            let Some(pivot) = (rank..self.n).find(|&r| rows[r * w + word] & mask != 0) else {
                continue;
            };
            if pivot != rank {
                for k in 0..w {
                    rows.swap(pivot * w + k, rank * w + k);
                }
            }
            for r in rank + 1..self.n {
                if rows[r * w + word] & mask != 0 {
                    // columns before `word` are already zero in both rows
                    for k in word..w {
                        rows[r * w + k] ^= rows[rank * w + k];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn corank(&self) -> usize {
        self.n - self.rank()
    }

    /// Rows and columns restricted to `indices`, in the given order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.n) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dim: self.n,
            });
        }
        Ok(Self::from_fn(indices.len(), |i, j| {
            self.get(indices[i], indices[j])
        }))
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ",")?;
            }
            for j in 0..self.n {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
        }
        write!(f, "]")
    }
}
