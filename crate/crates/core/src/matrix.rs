//! Exact sparse matrices over the Gaussian rationals, stored column-major.
//! Dense row echelon is used only for kernel and restriction solves, where
//! the subspaces involved are small compared to the ambient module.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type SparseVec = BTreeMap<usize, Scalar>;

/// Adds `coeff` into `v[idx]`, dropping the entry if it cancels to zero.
pub fn add_into(v: &mut SparseVec, idx: usize, coeff: &Scalar) {
    if coeff.is_zero() {
        return;
    }
    match v.entry(idx) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(coeff.clone());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            m.columns[j].insert(j, Scalar::one());
        }
        m
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        for col in &columns {
            debug_assert!(col.keys().all(|&r| r < rows));
        }
        Matrix { rows, cols: columns.len(), columns }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(nr, nc);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), nc);
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.columns[c].insert(r, v.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.columns[c].get(&r).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            self.columns[c].remove(&r);
        } else {
            self.columns[c].insert(r, v);
        }
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: &Scalar) {
        assert!(r < self.rows && c < self.cols);
        add_into(&mut self.columns[c], r, v);
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(BTreeMap::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.columns.iter().enumerate().all(|(j, col)| {
                col.len() == 1 && col.get(&j).is_some_and(Scalar::is_one)
            })
    }

    pub fn num_nonzero(&self) -> usize {
        self.columns.iter().map(BTreeMap::len).sum()
    }

    /// `self * v` for a sparse column vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, coeff) in v {
            for (&r, a) in &self.columns[j] {
                add_into(&mut out, r, &(a * coeff));
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let columns = rhs.columns.iter().map(|col| self.apply(col)).collect();
        Matrix::from_columns(self.rows, columns)
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (j, col) in rhs.columns.iter().enumerate() {
            for (&r, v) in col {
                add_into(&mut out.columns[j], r, v);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add(&rhs.scale(&-Scalar::one()))
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        if k.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        let columns = self
            .columns
            .iter()
            .map(|col| col.iter().map(|(&r, v)| (r, v * k)).collect())
            .collect();
        Matrix::from_columns(self.rows, columns)
    }

    /// `self - a * I`.
    pub fn sub_scaled_identity(&self, a: &Scalar) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut out = self.clone();
        let neg = -a;
        for j in 0..self.cols {
            add_into(&mut out.columns[j], j, &neg);
        }
        out
    }

    /// Conjugate transpose (the adjoint with respect to the standard
    /// Hermitian form).
    pub fn conj_transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for (j, col) in self.columns.iter().enumerate() {
            for (&r, v) in col {
                out.columns[r].insert(j, v.conj());
            }
        }
        out
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<Scalar>> {
        let mut rows = vec![vec![Scalar::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (&r, v) in col {
                rows[r][j] = v.clone();
            }
        }
        rows
    }

    /// Row-major flat list of entry strings, the serialization format for
    /// module matrices.
    pub fn to_row_major_strings(&self) -> Vec<String> {
        let mut out = vec![String::from("0"); self.rows * self.cols];
        for (j, col) in self.columns.iter().enumerate() {
            for (&r, v) in col {
                out[r * self.cols + j] = v.to_string();
            }
        }
        out
    }

    pub fn from_row_major_strings(rows: usize, cols: usize, data: &[String]) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::ModuleData(format!(
                "matrix data has {} entries, expected {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        let mut m = Matrix::zeros(rows, cols);
        for (idx, text) in data.iter().enumerate() {
            let v: Scalar = text.parse()?;
            if !v.is_zero() {
                m.columns[idx % cols].insert(idx / cols, v);
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        let mut dense = self.to_dense_rows();
        rref_in_place(&mut dense).len()
    }

    /// Basis of the right kernel, returned as the columns of a matrix with
    /// `self.cols` rows. Deterministic: free coordinates in increasing order,
    /// each basis vector has a 1 in its free coordinate.
    pub fn nullspace(&self) -> Matrix {
        let mut dense = self.to_dense_rows();
        let pivots = rref_in_place(&mut dense);
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut columns = Vec::with_capacity(free.len());
        for &f in &free {
            let mut col = SparseVec::new();
            col.insert(f, Scalar::one());
            for (pr, &pc) in pivots.iter().enumerate() {
                let v = &dense[pr][f];
                if !v.is_zero() {
                    col.insert(pc, -v);
                }
            }
            columns.push(col);
        }
        Matrix::from_columns(self.cols, columns)
    }

    /// Solves `self * X = rhs` where the columns of `self` are linearly
    /// independent. Returns an error when `rhs` is not in the column span.
    pub fn solve_exact(&self, rhs: &Matrix, context: &str) -> Result<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let r = self.cols;
        let k = rhs.cols;
        let mut dense = vec![vec![Scalar::zero(); r + k]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (&row, v) in col {
                dense[row][j] = v.clone();
            }
        }
        for (j, col) in rhs.columns.iter().enumerate() {
            for (&row, v) in col {
                dense[row][r + j] = v.clone();
            }
        }
        let pivots = rref_in_place(&mut dense);
        if pivots.len() != r || pivots.iter().any(|&c| c >= r) {
            return Err(Error::InvarianceViolation(context.to_string()));
        }
        let mut x = Matrix::zeros(r, k);
        for (pr, &pc) in pivots.iter().enumerate() {
            for j in 0..k {
                let v = dense[pr][r + j].clone();
                if !v.is_zero() {
                    x.columns[j].insert(pc, v);
                }
            }
        }
        Ok(x)
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref_in_place(rows: &mut [Vec<Scalar>]) -> Vec<usize> {
    let nr = rows.len();
    let nc = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r >= nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        if !pivot.is_one() {
            let inv = pivot.inv();
            for j in c..nc {
                if !rows[r][j].is_zero() {
                    rows[r][j] = &rows[r][j] * &inv;
                }
            }
        }
        for i in 0..nr {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..nc {
                    if !rows[r][j].is_zero() {
                        let delta = &f * &rows[r][j];
                        rows[i][j] = &rows[i][j] - &delta;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    fn m2(entries: [[&str; 2]; 2]) -> Matrix {
        Matrix::from_rows(
            entries
                .iter()
                .map(|row| row.iter().map(|e| sc(e)).collect())
                .collect(),
        )
    }

    #[test]
    fn multiply_and_identity() {
        let a = m2([["1", "2"], ["3", "4"]]);
        let b = m2([["0", "1"], ["1", "0"]]);
        assert_eq!(a.mul(&b), m2([["2", "1"], ["4", "3"]]));
        assert_eq!(a.mul(&Matrix::identity(2)), a);
        assert!(Matrix::identity(3).is_identity());
        assert!(!a.is_identity());
    }

    #[test]
    fn conj_transpose_involves_conjugation() {
        let a = Matrix::from_rows(vec![
            vec![sc("1+1 i"), sc("2")],
            vec![sc("0"), sc("-1 i")],
        ]);
        let at = a.conj_transpose();
        assert_eq!(at.get(0, 0), sc("1-1 i"));
        assert_eq!(at.get(0, 1), sc("0"));
        assert_eq!(at.get(1, 0), sc("2"));
        assert_eq!(at.get(1, 1), sc("1 i"));
        assert_eq!(at.conj_transpose(), a);
    }

    #[test]
    fn nullspace_of_rank_one() {
        // rows (1 2), (2 4): kernel spanned by (-2, 1) normalized on the free
        // coordinate.
        let a = m2([["1", "2"], ["2", "4"]]);
        let ns = a.nullspace();
        assert_eq!(ns.cols(), 1);
        assert_eq!(ns.get(0, 0), sc("-2"));
        assert_eq!(ns.get(1, 0), sc("1"));
        assert!(a.mul(&ns).is_zero());
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn nullspace_of_invertible_is_trivial() {
        let a = m2([["1", "2"], ["3", "4"]]);
        assert_eq!(a.nullspace().cols(), 0);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn solve_restriction() {
        // V has independent columns; solve V X = V * A exactly.
        let v = Matrix::from_rows(vec![
            vec![sc("1"), sc("0")],
            vec![sc("1"), sc("1")],
            vec![sc("0"), sc("2")],
        ]);
        let a = m2([["3", "1"], ["0", "-1/2"]]);
        let rhs = v.mul(&a);
        let x = v.solve_exact(&rhs, "test").unwrap();
        assert_eq!(x, a);

        // A vector outside the span must be rejected.
        let mut bad = rhs.clone();
        bad.set(0, 0, sc("100"));
        assert!(v.solve_exact(&bad, "test").is_err());
    }

    #[test]
    fn row_major_round_trip() {
        let a = Matrix::from_rows(vec![
            vec![sc("1/2"), sc("0"), sc("1 i")],
            vec![sc("0"), sc("-2"), sc("1/2+1/2 i")],
        ]);
        let data = a.to_row_major_strings();
        assert_eq!(data.len(), 6);
        assert_eq!(data[0], "1/2");
        assert_eq!(data[4], "-2");
        let back = Matrix::from_row_major_strings(2, 3, &data).unwrap();
        assert_eq!(back, a);
        assert!(Matrix::from_row_major_strings(2, 2, &data).is_err());
    }

    #[test]
    fn sub_scaled_identity() {
        let a = m2([["3", "1"], ["0", "3"]]);
        let shifted = a.sub_scaled_identity(&sc("3"));
        assert_eq!(shifted, m2([["0", "1"], ["0", "0"]]));
    }
}
