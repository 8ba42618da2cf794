//! Dense rational matrices and the matrix model of an invariant algebra.

use std::fmt;

use num_traits::{One, Zero};

use crate::context::InvariantContext;
use crate::error::{Error, Result};
use crate::linalg::{self, dense_to_sparse};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from small integers, for tests and examples.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| crate::scalar::int(v)).collect())
            .collect();
        Self::from_rows(rows).expect("rectangular literal")
    }

    pub fn diag(values: &[Scalar]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Entries in row-major order, used as a coordinate vector.
    pub fn flatten(&self) -> &[Scalar] {
        &self.data
    }

    pub fn rank(&self) -> usize {
        linalg::rank((0..self.rows).map(|i| dense_to_sparse(self.row(i))))
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `(End(V), q)` with matrices acting on column vectors.
#[derive(Debug, Clone)]
pub struct MatrixContext {
    pub q: Matrix,
}

impl MatrixContext {
    pub fn new(q: Matrix) -> Result<Self> {
        if !q.is_square() {
            return Err(Error::Dimension("q must be square".into()));
        }
        Ok(Self { q })
    }

    pub fn dim(&self) -> usize {
        self.q.nrows()
    }
}

impl InvariantContext for MatrixContext {
    type Elem = Matrix;

    fn zero(&self) -> Matrix {
        Matrix::zeros(self.dim(), self.dim())
    }

    fn one(&self) -> Matrix {
        Matrix::identity(self.dim())
    }

    fn q(&self) -> Matrix {
        self.q.clone()
    }

    fn add(&self, a: &Matrix, b: &Matrix) -> Matrix {
        a.add(b).expect("matrices of the context dimension")
    }

    fn scale(&self, c: &Scalar, a: &Matrix) -> Matrix {
        a.scale(c)
    }

    fn mul(&self, a: &Matrix, b: &Matrix) -> Result<Matrix> {
        a.mul(b)
    }

    fn is_zero(&self, a: &Matrix) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_expr;
    use crate::scalar::int;

    #[test]
    fn product_and_rank() {
        let a = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), Matrix::from_ints(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.rank(), 2);
        assert_eq!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(a.apply(&[int(1), int(1)]).unwrap(), vec![int(3), int(7)]);
    }

    #[test]
    fn evaluate_in_matrix_context() {
        let ctx = MatrixContext::new(Matrix::diag(&[int(0), int(1)])).unwrap();
        let labels = crate::parser::default_labels(2);
        let images = vec![Matrix::from_ints(&[&[0, 1], &[0, 0]]), Matrix::identity(2)];
        let e = parse_expr("x1*q*x2", &labels).unwrap();
        assert_eq!(
            e.evaluate(&images, &ctx).unwrap(),
            Matrix::from_ints(&[&[0, 1], &[0, 0]])
        );
        assert_eq!(crate::FreeElem::one().evaluate(&images, &ctx).unwrap(), Matrix::identity(2));
        let qq = parse_expr("q*q", &labels).unwrap();
        assert_eq!(qq.evaluate(&images, &ctx).unwrap(), ctx.q());
    }

    #[test]
    fn evaluate_rejects_non_invariant_context() {
        let ctx = MatrixContext::new(Matrix::from_ints(&[&[1, 1], &[0, 0]])).unwrap();
        // q idempotent, but q x q != q x for x = e21
        let images = vec![Matrix::from_ints(&[&[0, 0], &[1, 0]])];
        let err = crate::FreeElem::gen(1).evaluate(&images, &ctx).unwrap_err();
        assert!(matches!(err, Error::NotInvariant(_)));
        let ctx = MatrixContext::new(Matrix::from_ints(&[&[2, 0], &[0, 0]])).unwrap();
        assert!(matches!(
            crate::FreeElem::one().evaluate(&[], &ctx),
            Err(Error::NotInvariant(_))
        ));
    }
}
