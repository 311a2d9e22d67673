//! Small dense matrices over exact rationals.
//!
//! Weight spaces here are at most a handful of dimensions, so plain
//! Gauss-Jordan elimination is all that is needed.

use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::{format_rational, Q};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn scalar(n: usize, s: &Q) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = Q::one() / &m[(r, c)];
            for j in 0..m.cols {
                m[(r, j)] *= &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for j in 0..m.cols {
                        let delta = &factor * &m[(r, j)];
                        m[(i, j)] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{ y : y · self = 0 }`, as the rows of the returned matrix.
    ///
    /// Each basis row has a 1 in its own free coordinate and 0 in the other
    /// free coordinates; see [`Matrix::left_kernel_coordinates`].
    pub fn left_kernel(&self) -> (Matrix, Vec<usize>) {
        let t = self.transpose();
        let (r, pivots) = t.rref();
        let n = t.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(free.len(), n);
        for (k, &fc) in free.iter().enumerate() {
            basis[(k, fc)] = Q::one();
            for (i, &pc) in pivots.iter().enumerate() {
                basis[(k, pc)] = -r[(i, fc)].clone();
            }
        }
        (basis, free)
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

/// Coordinates of vectors in a kernel basis produced by
/// [`Matrix::left_kernel`]: read off the free positions.
pub fn kernel_coordinates(v: &[Q], free: &[usize]) -> Vec<Q> {
    free.iter().map(|&i| v[i].clone()).collect()
}

/// Quotient of row space `Q^cols` by the row space of `d`, in the basis of
/// non-pivot coordinates.
#[derive(Debug, Clone)]
pub struct Cokernel {
    reduced: Matrix,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl Cokernel {
    /// Cokernel of the map `y ↦ y · d` (rows of `d` span the image).
    pub fn of(d: &Matrix) -> Self {
        let (reduced, pivots) = d.rref();
        let free = (0..d.cols).filter(|c| !pivots.contains(c)).collect();
        Cokernel {
            reduced,
            pivots,
            free,
        }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Positions of the ambient basis vectors that represent the quotient basis.
    pub fn representatives(&self) -> &[usize] {
        &self.free
    }

    /// Coordinates of the class of `y` in the quotient basis.
    pub fn project(&self, y: &[Q]) -> Vec<Q> {
        let mut y = y.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if y[p].is_zero() {
                continue;
            }
            let c = y[p].clone();
            for (j, yj) in y.iter_mut().enumerate() {
                let r = &self.reduced[(i, j)];
                if !r.is_zero() {
                    *yj -= &c * r;
                }
            }
        }
        self.free.iter().map(|&j| y[j].clone()).collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            f.write_str(&row.join(" "))?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let (r, piv) = a.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r, m(&[&[1, 0, 1], &[0, 1, 1], &[0, 0, 0]]));
        assert_eq!(a.rank(), 2);
        assert_eq!(Matrix::zeros(2, 3).rank(), 0);
    }

    #[test]
    fn left_kernel_annihilates() {
        let a = m(&[&[1, 1], &[1, 1], &[0, 2]]);
        let (k, free) = a.left_kernel();
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&a).is_zero());
        let v = k.row(0).to_vec();
        assert_eq!(kernel_coordinates(&v, &free), vec![q(1)]);
    }

    #[test]
    fn cokernel_projection() {
        // image spanned by (1, -1): quotient of Q^2 is one-dimensional
        let d = m(&[&[1, -1]]);
        let ck = Cokernel::of(&d);
        assert_eq!(ck.dim(), 1);
        assert_eq!(ck.project(&[q(1), q(-1)]), vec![q(0)]);
        assert_eq!(ck.project(&[q(1), q(0)]), vec![q(1)]);
        assert_eq!(ck.project(&[q(0), q(1)]), vec![q(1)]);
    }
}
