//! Dense matrices over a [`FieldSpec`], with canonical reduced row echelon
//! form, nullspaces and an incremental column eliminator.

use std::fmt;
use std::sync::Arc;

use crate::galois::FieldSpec;

#[derive(Clone)]
pub struct Matrix {
    field: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    data: Vec<u16>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && *self.field == *other.field
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over GF({})", self.rows, self.cols, self.field.order())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Arc<FieldSpec>, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: Arc::clone(field),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Arc<FieldSpec>, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(field: &Arc<FieldSpec>, cols: usize, rows: &[Vec<u16>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend_from_slice(r);
        }
        Matrix {
            field: Arc::clone(field),
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u16 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u16) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u16] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u16>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[u16]) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: Arc::clone(&self.field),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u16]) -> Vec<u16> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|r| dot(f, self.row(r), v))
            .collect()
    }

    /// In-place reduced row echelon form. Pivots are the leftmost nonzero
    /// column, taken from the lowest-index remaining row; zero rows are
    /// dropped. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = Arc::clone(&self.field);
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..cols {
            if lead == self.rows {
                break;
            }
            let Some(pr) = (lead..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            if pr != lead {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, lead * cols + j);
                }
            }
            let inv = f.inv(self.get(lead, c)).expect("pivot is nonzero");
            if inv != 1 {
                for j in c..cols {
                    let v = self.get(lead, j);
                    self.set(lead, j, f.mul(v, inv));
                }
            }
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let factor = self.get(r, c);
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for j in c..cols {
                    let pv = self.data[lead * cols + j];
                    if pv != 0 {
                        let idx = r * cols + j;
                        self.data[idx] = f.add(self.data[idx], f.mul(neg, pv));
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        self.rows = lead;
        self.data.truncate(lead * cols);
        pivots
    }

    pub fn rref_copy(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref_copy().1.len()
    }

    /// A basis (in reduced echelon form) of `{x : self · x = 0}`.
    pub fn nullspace(&self) -> Matrix {
        let f = &self.field;
        let (r, pivots) = self.rref_copy();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Matrix::zeros(f, 0, self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u16; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            out.push_row(&v);
        }
        out.rref();
        out
    }

    /// Solves `xᵀ · self = target` for x, given `self` in reduced echelon
    /// form with the listed pivots. Returns `None` when `target` is outside
    /// the row space.
    pub fn decompose(&self, pivots: &[usize], target: &[u16]) -> Option<Vec<u16>> {
        let f = &self.field;
        let mut rest = target.to_vec();
        let mut coeffs = vec![0u16; self.rows];
        for (i, &p) in pivots.iter().enumerate() {
            let c = rest[p];
            if c == 0 {
                continue;
            }
            coeffs[i] = c;
            let neg = f.neg(c);
            for (j, x) in rest.iter_mut().enumerate() {
                let v = self.get(i, j);
                if v != 0 {
                    *x = f.add(*x, f.mul(neg, v));
                }
            }
        }
        rest.iter().all(|&x| x == 0).then_some(coeffs)
    }

    /// `Σ coeffs[i] · row(i)`.
    pub fn combine(&self, coeffs: &[u16]) -> Vec<u16> {
        let f = &self.field;
        let mut out = vec![0u16; self.cols];
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                axpy(f, &mut out, c, self.row(i));
            }
        }
        out
    }
}

#[inline]
pub fn dot(f: &FieldSpec, a: &[u16], b: &[u16]) -> u16 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| if x == 0 || y == 0 { acc } else { f.add(acc, f.mul(x, y)) })
}

/// `y ← y + a·x`.
#[inline]
pub fn axpy(f: &FieldSpec, y: &mut [u16], a: u16, x: &[u16]) {
    if a == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = f.add(*yi, f.mul(a, xi));
        }
    }
}

/// Maintains an echelon basis of a growing set of vectors with undo.
///
/// Each inserted vector is reduced against the stored basis; a nonzero
/// residual is normalized and stored, raising the rank. `pop` undoes the
/// most recent insertion.
#[derive(Clone)]
pub struct IncrementalEliminator {
    field: Arc<FieldSpec>,
    len: usize,
    basis: Vec<u16>,
    pivots: Vec<usize>,
    log: Vec<bool>,
    scratch: Vec<u16>,
}

impl IncrementalEliminator {
    pub fn new(field: &Arc<FieldSpec>, len: usize) -> Self {
        IncrementalEliminator {
            field: Arc::clone(field),
            len,
            basis: Vec::new(),
            pivots: Vec::new(),
            log: Vec::new(),
            scratch: vec![0; len],
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Inserts `v`; returns true if the rank grew.
    pub fn push(&mut self, v: &[u16]) -> bool {
        let f = &*self.field;
        let len = self.len;
        self.scratch.copy_from_slice(v);
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = self.scratch[p];
            if c != 0 {
                let neg = f.neg(c);
                let row = &self.basis[i * len..(i + 1) * len];
                for (x, &b) in self.scratch.iter_mut().zip(row) {
                    if b != 0 {
                        *x = f.add(*x, f.mul(neg, b));
                    }
                }
            }
        }
        let grew = match self.scratch.iter().position(|&x| x != 0) {
            Some(p) => {
                let inv = f.inv(self.scratch[p]).expect("nonzero");
                for x in self.scratch.iter_mut() {
                    *x = f.mul(*x, inv);
                }
                self.basis.extend_from_slice(&self.scratch);
                self.pivots.push(p);
                true
            }
            None => false,
        };
        self.log.push(grew);
        grew
    }

    pub fn pop(&mut self) {
        if self.log.pop().expect("pop on empty eliminator") {
            self.pivots.pop();
            self.basis.truncate(self.pivots.len() * self.len);
        }
    }

    pub fn depth(&self) -> usize {
        self.log.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, m: u32) -> Arc<FieldSpec> {
        FieldSpec::new(p, m, None).unwrap()
    }

    #[test]
    fn rref_is_canonical() {
        let f = gf(2, 1);
        let a = Matrix::from_rows(&f, 4, &[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 0]]);
        let b = Matrix::from_rows(&f, 4, &[vec![1, 0, 1, 0], vec![0, 1, 1, 0]]);
        let (ra, pa) = a.rref_copy();
        let (rb, pb) = b.rref_copy();
        assert_eq!(ra, rb);
        assert_eq!(pa, vec![0, 1]);
        assert_eq!(pb, pa);
    }

    #[test]
    fn nullspace_annihilates() {
        let f = gf(3, 1);
        let a = Matrix::from_rows(&f, 5, &[vec![1, 2, 0, 1, 1], vec![0, 1, 1, 2, 0]]);
        let n = a.nullspace();
        assert_eq!(n.rows(), 3);
        for r in 0..n.rows() {
            assert!(a.mul_vec(n.row(r)).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn decompose_and_combine() {
        let f = gf(2, 2);
        let mut a = Matrix::from_rows(&f, 3, &[vec![1, 2, 3], vec![0, 1, 1]]);
        let piv = a.rref();
        let target = {
            let mut t = vec![0u16; 3];
            axpy(&f, &mut t, 3, a.row(0));
            axpy(&f, &mut t, 2, a.row(1));
            t
        };
        let c = a.decompose(&piv, &target).unwrap();
        assert_eq!(c, vec![3, 2]);
        assert_eq!(a.combine(&c), target);
        assert!(a.decompose(&piv, &[0, 0, 1]).is_none());
    }

    #[test]
    fn eliminator_push_pop() {
        let f = gf(5, 1);
        let mut e = IncrementalEliminator::new(&f, 3);
        assert!(e.push(&[1, 2, 3]));
        assert!(!e.push(&[2, 4, 1]));
        assert!(e.push(&[0, 1, 0]));
        assert_eq!(e.rank(), 2);
        e.pop();
        assert_eq!(e.rank(), 1);
        e.pop();
        assert_eq!(e.rank(), 1);
        assert_eq!(e.depth(), 1);
        assert!(e.push(&[0, 0, 1]));
        assert_eq!(e.rank(), 2);
    }
}
