//! Dense matrices over a [`Scalar`] field: exactly the operations the
//! torsion engine needs (products, echelon form, determinants, solving).

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&n| S::from_i64(n)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j).add(&a.mul(rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| a.neg()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &S) -> Self {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let mut out = Self::zero(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut out = Self::zero(self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Row-reduce in place; returns pivot column indices (ascending).
    fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // best pivot in this column at or below `row`
            let mut best = row;
            let mut best_size = self.get(row, col).pivot_size();
            for i in row + 1..self.rows {
                let s = self.get(i, col).pivot_size();
                if s > best_size {
                    best = i;
                    best_size = s;
                }
            }
            if self.get(best, col).is_zero() {
                continue;
            }
            self.swap_rows(row, best);
            let inv = S::one().div(self.get(row, col));
            for j in col..self.cols {
                let v = self.get(row, j).mul(&inv);
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                if i == row || self.get(i, col).is_zero() {
                    continue;
                }
                let f = self.get(i, col).clone();
                for j in col..self.cols {
                    let v = self.get(i, j).sub(&f.mul(self.get(row, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form with its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        (m, pivots)
    }

    /// Column indices of a maximal independent set, lowest indices first.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.clone().row_reduce()
    }

    pub fn rank(&self) -> usize {
        self.pivot_columns().len()
    }

    /// Determinant by elimination with magnitude pivoting.
    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return S::one();
        }
        let mut m = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let mut best = col;
            let mut best_size = m.get(col, col).pivot_size();
            for i in col + 1..n {
                let s = m.get(i, col).pivot_size();
                if s > best_size {
                    best = i;
                    best_size = s;
                }
            }
            if m.get(best, col).is_zero() {
                return S::zero();
            }
            if best != col {
                m.swap_rows(col, best);
                det = det.neg();
            }
            let p = m.get(col, col).clone();
            det = det.mul(&p);
            for i in col + 1..n {
                if m.get(i, col).is_zero() {
                    continue;
                }
                let f = m.get(i, col).div(&p);
                for j in col..n {
                    let v = m.get(i, j).sub(&f.mul(m.get(col, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// A particular solution of `self * x = b` (free variables zero), or
    /// `None` when the system is inconsistent. `b` may have many columns.
    pub fn solve(&self, b: &Self) -> Option<Self> {
        assert_eq!(self.rows, b.rows, "solve dimension mismatch");
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        // any pivot inside the b-block means inconsistency
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zero(self.cols, b.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(row, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Basis of the kernel as columns.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut k = Self::zero(self.cols, free.len());
        for (jj, &fc) in free.iter().enumerate() {
            k.set(fc, jj, S::one());
            for (row, &pc) in pivots.iter().enumerate() {
                k.set(pc, jj, r.get(row, fc).neg());
            }
        }
        k
    }

    pub fn map_to_f64(&self) -> Matrix<f64> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.to_f64()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn rank_and_pivots() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.pivot_columns(), vec![0, 1]);
    }

    #[test]
    fn determinant_exact() {
        let a = m(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.det(), Rat::from_i64(1));
        let b = m(&[&[1, 2], &[2, 4]]);
        assert!(b.det().is_zero());
        assert_eq!(Matrix::<Rat>::zero(0, 0).det(), Rat::from_i64(1));
    }

    #[test]
    fn solve_and_kernel() {
        let a = m(&[&[1, 2, 1], &[0, 1, 1]]);
        let b = m(&[&[3], &[2]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
        // inconsistent system
        let a2 = m(&[&[1, 1], &[1, 1]]);
        let b2 = m(&[&[1], &[2]]);
        assert!(a2.solve(&b2).is_none());
    }

    #[test]
    fn f64_pivoting_handles_scaled_rows() {
        let a: Matrix<f64> = Matrix::from_rows(vec![vec![1e-3, 1.0], vec![1.0, 1.0]]);
        assert_eq!(a.rank(), 2);
        assert!((a.det() - (1e-3 - 1.0)).abs() < 1e-12);
    }
}
