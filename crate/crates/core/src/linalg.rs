//! Dense matrices over the rationals.

use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{q, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Malformed("ragged matrix".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[Q]>::to_vec).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_skew(&self) -> bool {
        self.is_square() && *self == self.transpose().scale(&q(-1))
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let mut m = Matrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let v = a * &o[(k, c)];
                    m[(r, c)] += v;
                }
            }
        }
        m
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.add(&o.scale(&q(-1)))
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Rows `r0..r1`, all columns.
    pub fn row_block(&self, r0: usize, r1: usize) -> Matrix {
        self.select(&(r0..r1).collect::<Vec<_>>(), &(0..self.cols).collect::<Vec<_>>())
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                m[(a, b)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Delete one row and one column.
    pub fn minor(&self, r: usize, c: usize) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).filter(|&x| x != r).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&x| x != c).collect();
        self.select(&rows, &cols)
    }

    pub fn hcat(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + o.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..o.cols {
                m[(r, self.cols + c)] = o[(r, c)].clone();
            }
        }
        m
    }

    pub fn vcat(&self, o: &Matrix) -> Matrix {
        self.transpose().hcat(&o.transpose()).transpose()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = vec![];
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                m[(row, c)] *= &inv;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for c in col..m.cols {
                        let v = &f * &m[(row, c)];
                        m[(r, c)] -= v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Q {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Q::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Q::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if !m[(r, col)].is_zero() {
                    let f = &m[(r, col)] / &pivot;
                    for c in col..n {
                        let v = &f * &m[(col, c)];
                        m[(r, c)] -= v;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let (r, pivots) = self.hcat(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots.last().is_some_and(|&p| p != n - 1) {
            return None;
        }
        Some(r.select(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
    }

    /// Classical adjugate from cofactors; defined for singular matrices too.
    pub fn adjugate(&self) -> Matrix {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return Matrix::identity(1);
        }
        let mut adj = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let d = self.minor(r, c).det();
                adj[(c, r)] = if (r + c) % 2 == 0 { d } else { -d };
            }
        }
        adj
    }

    /// Pfaffian of a skew-symmetric matrix (zero in odd size).
    pub fn pfaffian(&self) -> Q {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return Q::one();
        }
        if n % 2 == 1 {
            return Q::zero();
        }
        let mut total = Q::zero();
        for j in 1..n {
            if self[(0, j)].is_zero() {
                continue;
            }
            let rest: Vec<usize> = (1..n).filter(|&x| x != j).collect();
            let sub = self.select(&rest, &rest).pfaffian();
            let term = &self[(0, j)] * sub;
            if j % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    /// Pfaffian adjugate `P` with `A P = Pf(A) I`; polynomial in the entries.
    pub fn pfaffian_adjugate(&self) -> Matrix {
        assert!(self.is_square());
        let n = self.rows;
        let mut cof = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let rest: Vec<usize> = (0..n).filter(|&x| x != i && x != j).collect();
                let pf = self.select(&rest, &rest).pfaffian();
                let exponent = i + j + 1 + usize::from(i > j);
                cof[(i, j)] = if exponent % 2 == 0 { pf } else { -pf };
            }
        }
        cof.transpose()
    }

    /// `true` iff the column spans agree.
    pub fn same_column_span(&self, o: &Matrix) -> bool {
        let r = self.rank();
        r == o.rank() && r == self.hcat(o).rank()
    }

    pub fn max_abs_entry(&self) -> Q {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Q::zero)
    }
}
