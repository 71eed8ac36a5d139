//! Dense exact linear algebra: rational square matrices and a fraction-free
//! (Bareiss) solver.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Self {
        SquareMatrix {
            dim,
            entries: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        SquareMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn add_to(&mut self, i: usize, j: usize, value: &Rational) {
        self.entries[i * self.dim + j] += value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.dim);
        self.rows()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn negated(&self) -> Self {
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Solves `A x = b` for each right-hand side after deleting row and column
    /// `pinned`; the returned solutions have `x[pinned] = 0`.
    pub fn solve_pinned(&self, rhs: &[Vec<Rational>], pinned: usize) -> Result<Vec<Vec<Rational>>> {
        assert!(pinned < self.dim);
        let keep: Vec<usize> = (0..self.dim).filter(|&i| i != pinned).collect();
        let reduced = SquareMatrix::from_rows(
            keep.iter()
                .map(|&i| keep.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect(),
        );
        let reduced_rhs: Vec<Vec<Rational>> = rhs
            .iter()
            .map(|b| keep.iter().map(|&i| b[i].clone()).collect())
            .collect();
        let solutions = reduced.solve(&reduced_rhs)?;
        Ok(solutions
            .into_iter()
            .map(|x| {
                let mut full = vec![Rational::zero(); self.dim];
                for (value, &i) in x.into_iter().zip(&keep) {
                    full[i] = value;
                }
                full
            })
            .collect())
    }

    /// Solves `A x = b` for each right-hand side by Gauss-Jordan elimination
    /// over the rationals.
    ///
    /// Zero entries are skipped throughout, so the sparse, often block-diagonal
    /// Laplacian systems cost far less than a dense elimination. Pivots are the
    /// first nonzero entry in row order.
    pub fn solve(&self, rhs: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
        let n = self.dim;
        let m = rhs.len();
        let width = n + m;
        let mut work: Vec<Vec<Rational>> = (0..n)
            .map(|i| self.row(i).iter().chain(rhs.iter().map(|b| &b[i])).cloned().collect())
            .collect();

        for k in 0..n {
            let pivot = (k..n).find(|&i| !work[i][k].is_zero()).ok_or(Error::SingularSystem)?;
            work.swap(k, pivot);
            let inverse = work[k][k].recip();
            let support: Vec<usize> = (k + 1..width).filter(|&j| !work[k][j].is_zero()).collect();
            for &j in &support {
                work[k][j] *= &inverse;
            }
            work[k][k] = Rational::one();
            let pivot_row = std::mem::take(&mut work[k]);
            for row in work.iter_mut().filter(|row| !row.is_empty()) {
                let factor = std::mem::take(&mut row[k]);
                if factor.is_zero() {
                    continue;
                }
                for &j in &support {
                    row[j] -= &factor * &pivot_row[j];
                }
            }
            work[k] = pivot_row;
        }

        Ok((0..m).map(|c| (0..n).map(|i| work[i][n + c].clone()).collect()).collect())
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.rows().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
            .finish()
    }
}
