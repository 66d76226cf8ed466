//! Exact vectors, matrices, and linear-system solving.
//!
//! Dimensions are explicit and checked on every operation. Row reduction
//! uses exact Gauss-Jordan elimination with first-nonzero pivoting, which is
//! deterministic and needs no magnitude heuristics.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::rat::Rat;
use crate::{Error, Result};

/// A dense vector of exact rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QVector(pub Vec<Rat>);

impl QVector {
    /// The zero vector of length `n`.
    pub fn zeros(n: usize) -> QVector {
        QVector(vec![Rat::zero(); n])
    }

    /// Builds a vector from machine integers.
    pub fn from_ints(entries: &[i64]) -> QVector {
        QVector(entries.iter().map(|&n| Rat::int(n)).collect())
    }

    /// The `i`-th standard basis vector in dimension `n`.
    pub fn unit(n: usize, i: usize) -> QVector {
        let mut v = QVector::zeros(n);
        v.0[i] = Rat::one();
        v
    }

    /// Number of entries.
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Entry iterator.
    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    /// True iff every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rat::is_zero)
    }

    /// Exact inner product.
    pub fn dot(&self, other: &QVector) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot of mismatched dimensions");
        let mut acc = Rat::zero();
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            acc += &(a * b);
        }
        acc
    }

    /// Entrywise sum.
    pub fn add(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim(), "add of mismatched dimensions");
        QVector(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim(), "sub of mismatched dimensions");
        QVector(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    /// Scalar multiple.
    pub fn scale(&self, k: &Rat) -> QVector {
        QVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Entrywise negation.
    pub fn neg(&self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }

    /// `self + k * other`.
    pub fn axpy(&self, k: &Rat, other: &QVector) -> QVector {
        assert_eq!(self.dim(), other.dim(), "axpy of mismatched dimensions");
        QVector(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + &(k * b))
                .collect(),
        )
    }

    /// Concatenates two vectors.
    pub fn concat(&self, other: &QVector) -> QVector {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        QVector(v)
    }

    /// The subvector `self[lo..hi]`.
    pub fn slice(&self, lo: usize, hi: usize) -> QVector {
        QVector(self.0[lo..hi].to_vec())
    }
}

impl Index<usize> for QVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl IndexMut<usize> for QVector {
    fn index_mut(&mut self, i: usize) -> &mut Rat {
        &mut self.0[i]
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<Rat> for QVector {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> QVector {
        QVector(iter.into_iter().collect())
    }
}

/// A dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    /// The zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> QMatrix {
        QMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    /// The identity matrix.
    pub fn identity(n: usize) -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds a matrix from row vectors, which must share a length.
    pub fn from_rows(rows: Vec<QVector>) -> Result<QMatrix> {
        let cols = rows.first().map_or(0, QVector::dim);
        if rows.iter().any(|r| r.dim() != cols) {
            return Err(Error::Dimension("matrix rows of unequal length".into()));
        }
        let nrows = rows.len();
        let data = rows.into_iter().flat_map(|r| r.0).collect();
        Ok(QMatrix { rows: nrows, cols, data })
    }

    /// Row count.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Column count.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Borrow of row `i` as a slice.
    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Row `i` as a vector.
    pub fn row_vec(&self, i: usize) -> QVector {
        QVector(self.row(i).to_vec())
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &QVector) -> QVector {
        assert_eq!(self.cols, v.dim(), "mul_vec of mismatched dimensions");
        (0..self.rows).map(|i| self.row_vec(i).dot(v)).collect()
    }

    /// Transposed copy.
    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// In-place Gauss-Jordan reduction to reduced row echelon form.
    ///
    /// Pivots are the first rows with a nonzero entry in each column, scanned
    /// left to right; returns the pivot column indices in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let k = self[(i, c)].clone();
                    for j in c..self.cols {
                        let v = &self[(i, j)] - &(&k * &self[(r, j)]);
                        self[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Matrix rank.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Output of [`solve_linear`].
#[derive(Clone, Debug)]
pub struct LinearSolution {
    /// One solution of `A x = b`, or `None` when the system is inconsistent.
    pub particular: Option<QVector>,
    /// Basis of the solution space of `A x = 0`, one vector per free column,
    /// in ascending column order.
    pub nullspace: Vec<QVector>,
    /// Rank of `A`.
    pub rank: usize,
}

/// Solves `A x = b` exactly, returning a particular solution, a nullspace
/// basis, and the rank of `A`.
pub fn solve_linear(a: &QMatrix, b: &QVector) -> Result<LinearSolution> {
    if a.rows() != b.dim() {
        return Err(Error::Dimension(format!(
            "system with {} rows but rhs of length {}",
            a.rows(),
            b.dim()
        )));
    }
    let n = a.cols();
    let mut aug = QMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let pivots = aug.rref();
    let inconsistent = pivots.last() == Some(&n);
    let coeff_pivots: Vec<usize> =
        pivots.iter().copied().filter(|&c| c < n).collect();
    let rank = coeff_pivots.len();

    let is_pivot = {
        let mut mask = vec![false; n];
        for &c in &coeff_pivots {
            mask[c] = true;
        }
        mask
    };

    let particular = if inconsistent {
        None
    } else {
        let mut x = QVector::zeros(n);
        for (r, &c) in coeff_pivots.iter().enumerate() {
            x[c] = aug[(r, n)].clone();
        }
        Some(x)
    };

    let mut nullspace = Vec::new();
    for free in 0..n {
        if is_pivot[free] {
            continue;
        }
        let mut v = QVector::zeros(n);
        v[free] = Rat::one();
        for (r, &c) in coeff_pivots.iter().enumerate() {
            v[c] = -&aug[(r, free)];
        }
        nullspace.push(v);
    }

    Ok(LinearSolution { particular, nullspace, rank })
}

/// Reduces `vectors` to a linearly independent spanning subset basis.
///
/// The result is the row basis produced by exact row reduction, so it is
/// deterministic and its vectors have leading entry 1.
pub fn span_basis(vectors: &[QVector], dim: usize) -> Vec<QVector> {
    let rows: Vec<QVector> = vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
    if rows.is_empty() {
        return Vec::new();
    }
    let mut m = QMatrix::from_rows(rows).expect("span vectors share dimension");
    assert_eq!(m.cols(), dim, "span vectors of wrong dimension");
    let pivots = m.rref();
    (0..pivots.len()).map(|i| m.row_vec(i)).collect()
}

/// True iff `v` lies in the span of `basis` (all of dimension `dim`).
pub fn in_span(v: &QVector, basis: &[QVector], dim: usize) -> bool {
    let mut with = basis.to_vec();
    with.push(v.clone());
    span_basis(&with, dim).len() == span_basis(basis, dim).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qv(entries: &[i64]) -> QVector {
        QVector::from_ints(entries)
    }

    #[test]
    fn identity_system_solves_directly() {
        let a = QMatrix::identity(2);
        let b = qv(&[1, 2]);
        let sol = solve_linear(&a, &b).unwrap();
        assert_eq!(sol.particular, Some(qv(&[1, 2])));
        assert!(sol.nullspace.is_empty());
        assert_eq!(sol.rank, 2);
    }

    #[test]
    fn one_equation_kernel() {
        let a = QMatrix::from_rows(vec![qv(&[1, 1])]).unwrap();
        let b = qv(&[0]);
        let sol = solve_linear(&a, &b).unwrap();
        assert_eq!(sol.rank, 1);
        assert_eq!(sol.particular, Some(qv(&[0, 0])));
        assert_eq!(sol.nullspace.len(), 1);
        let k = &sol.nullspace[0];
        assert!(k[0] == -&k[1] && !k.is_zero());
    }

    #[test]
    fn inconsistent_duplicate_rows() {
        let a = QMatrix::from_rows(vec![qv(&[1, 0]), qv(&[1, 0])]).unwrap();
        let b = qv(&[1, 2]);
        let sol = solve_linear(&a, &b).unwrap();
        assert!(sol.particular.is_none());
        assert_eq!(sol.rank, 1);
    }

    #[test]
    fn solution_and_nullspace_verify_by_substitution() {
        let a = QMatrix::from_rows(vec![qv(&[2, 4, -2]), qv(&[1, 2, 0])]).unwrap();
        let b = qv(&[2, 3]);
        let sol = solve_linear(&a, &b).unwrap();
        let x = sol.particular.clone().unwrap();
        assert_eq!(a.mul_vec(&x), b);
        for v in &sol.nullspace {
            assert!(a.mul_vec(v).is_zero());
        }
        assert_eq!(sol.rank + sol.nullspace.len(), a.cols());
    }

    #[test]
    fn span_basis_reduces_dependent_sets() {
        let basis = span_basis(&[qv(&[1, 1]), qv(&[2, 2]), qv(&[0, 1])], 2);
        assert_eq!(basis.len(), 2);
        assert!(in_span(&qv(&[5, -3]), &basis, 2));
        let line = span_basis(&[qv(&[1, 2]), qv(&[2, 4])], 2);
        assert_eq!(line.len(), 1);
        assert!(in_span(&qv(&[-3, -6]), &line, 2));
        assert!(!in_span(&qv(&[1, 0]), &line, 2));
        assert!(in_span(&QVector::zeros(2), &line, 2));
    }

    #[test]
    fn rank_of_rectangular_matrix() {
        let m = QMatrix::from_rows(vec![qv(&[1, 2, 3]), qv(&[2, 4, 6]), qv(&[1, 0, 1])])
            .unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }
}
