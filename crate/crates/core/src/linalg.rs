//! Exact linear algebra over the rationals.
//!
//! Matrices are stored densely. Elimination works on sparse rows internally,
//! since the realizations of graded maps that feed it are mostly zero.

use std::fmt;

use crate::scalar::Scalar;

/// A sparse vector: strictly increasing column indices, no stored zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// A dense `rows × cols` matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl KMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        KMatrix {
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

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        KMatrix { rows: n, cols, data }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> KMatrix {
        let mut t = KMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    t.set(c, r, v.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &KMatrix) -> KMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = KMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "shape mismatch in product");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    fn sparse_rows(&self) -> impl Iterator<Item = SparseRow> + '_ {
        (0..self.rows).map(move |r| to_sparse(self.row(r)))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &KMatrix) -> KMatrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let rows = (0..self.rows)
            .map(|r| self.row(r).iter().chain(other.row(r)).cloned().collect())
            .collect();
        KMatrix::from_rows(cols, rows)
    }
}

impl fmt::Debug for KMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "KMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (i, s.clone()))
        .collect()
}

pub fn to_dense(v: &SparseRow, len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (i, s) in v {
        out[*i] = s.clone();
    }
    out
}

/// `a - f * b` on sparse rows.
fn sparse_axpy(a: &SparseRow, f: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(f * &b[j].1);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A row-echelon basis of a subspace of `k^cols`, grown one vector at a time.
///
/// Every stored row has leading coefficient 1 at its pivot column and zeros in
/// all pivot columns that existed when it was inserted.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` in place against the stored rows. Returns the first
    /// column where a nonzero entry survived.
    fn reduce(&self, v: &mut [Scalar]) -> Option<usize> {
        let mut lead = None;
        for c in 0..self.cols {
            if v[c].is_zero() {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    let f = v[c].clone();
                    for (j, x) in &self.rows[r] {
                        v[*j] -= &(&f * x);
                    }
                }
                None => {
                    if lead.is_none() {
                        lead = Some(c);
                    }
                }
            }
        }
        lead
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }

    /// Adds `v` to the spanning set. Returns `true` if the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut w = v.to_vec();
        self.insert_owned(&mut w)
    }

    fn insert_owned(&mut self, w: &mut [Scalar]) -> bool {
        let Some(lead) = self.reduce(w) else {
            return false;
        };
        let inv = w[lead].inv();
        let row: SparseRow = w
            .iter()
            .enumerate()
            .skip(lead)
            .filter(|(_, s)| !s.is_zero())
            .map(|(i, s)| (i, s * &inv))
            .collect();
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn insert_sparse(&mut self, v: &SparseRow) -> bool {
        let mut w = to_dense(v, self.cols);
        self.insert_owned(&mut w)
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.cols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Back-substitutes into reduced row echelon form; rows are returned
    /// ordered by pivot column.
    pub fn into_reduced(self) -> (Vec<SparseRow>, Vec<usize>) {
        let pivots = self.pivots();
        let mut rows: Vec<SparseRow> = pivots
            .iter()
            .map(|&c| self.rows[self.pivot_row[c].unwrap()].clone())
            .collect();
        for k in (0..rows.len()).rev() {
            let pc = pivots[k];
            let (head, tail) = rows.split_at_mut(k);
            let src = &tail[0];
            for row in head.iter_mut() {
                if let Ok(pos) = row.binary_search_by_key(&pc, |e| e.0) {
                    let f = row[pos].1.clone();
                    *row = sparse_axpy(row, &f, src);
                }
            }
        }
        (rows, pivots)
    }
}

/// Row space echelon form of `m`.
pub fn echelon(m: &KMatrix) -> Echelon {
    let mut e = Echelon::new(m.cols);
    for r in 0..m.rows {
        if e.rank() == m.cols {
            break;
        }
        e.insert(m.row(r));
    }
    e
}

/// Reduced row echelon form and strictly increasing pivot columns.
pub fn rref(m: &KMatrix) -> (KMatrix, Vec<usize>) {
    let (rows, pivots) = echelon(m).into_reduced();
    let mut out = KMatrix::zeros(m.rows, m.cols);
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row {
            out.set(r, *c, v.clone());
        }
    }
    (out, pivots)
}

pub fn rank(m: &KMatrix) -> usize {
    if m.rows <= m.cols {
        echelon(m).rank()
    } else {
        echelon(&m.transpose()).rank()
    }
}

/// Basis of `{v : m v = 0}`, one vector per free column in increasing order.
pub fn kernel_basis(m: &KMatrix) -> Vec<Vec<Scalar>> {
    kernel_basis_sparse(m.cols, m.sparse_rows())
}

/// Kernel of the matrix whose rows are given sparsely.
pub fn kernel_basis_sparse(
    cols: usize,
    rows: impl IntoIterator<Item = SparseRow>,
) -> Vec<Vec<Scalar>> {
    let mut e = Echelon::new(cols);
    for r in rows {
        if e.rank() == cols {
            break;
        }
        e.insert_sparse(&r);
    }
    let (rows, pivots) = e.into_reduced();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::with_capacity(cols - pivots.len());
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            if let Ok(pos) = row.binary_search_by_key(&free, |e| e.0) {
                v[p] = -&row[pos].1;
            }
        }
        out.push(v);
    }
    out
}

/// Whether `v` is a linear combination of the rows of `m`.
pub fn in_row_space(m: &KMatrix, v: &[Scalar]) -> bool {
    assert_eq!(v.len(), m.cols, "vector length must equal column count");
    echelon(m).contains(v)
}

/// Returns `(R, pivots, E)` with `E` invertible and `E * m = R = rref(m)`.
pub fn rref_with_transform(m: &KMatrix) -> (KMatrix, Vec<usize>, KMatrix) {
    let aug = m.hstack(&KMatrix::identity(m.rows));
    let (r, _) = rref(&aug);
    let mut reduced = KMatrix::zeros(m.rows, m.cols);
    let mut transform = KMatrix::zeros(m.rows, m.rows);
    for i in 0..m.rows {
        for c in 0..m.cols {
            reduced.set(i, c, r.get(i, c).clone());
        }
        for c in 0..m.rows {
            transform.set(i, c, r.get(i, m.cols + c).clone());
        }
    }
    let pivots = (0..m.rows)
        .filter_map(|i| (0..m.cols).find(|&c| !reduced.get(i, c).is_zero()))
        .collect();
    (reduced, pivots, transform)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn rref_proportional_rows() {
        let m = KMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        let (r, p) = rref(&m);
        assert_eq!(r, KMatrix::from_ints(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = KMatrix::identity(3);
        let (r, p) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn rank_basic() {
        assert_eq!(rank(&KMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&KMatrix::identity(5)), 5);
        assert_eq!(rank(&KMatrix::zeros(0, 4)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&KMatrix::identity(4)).is_empty());
        let k = kernel_basis(&KMatrix::from_ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(k, vec![vec![q(-2, 1), q(1, 1)]]);
        // zero rows: every standard vector is a kernel vector
        assert_eq!(kernel_basis(&KMatrix::zeros(0, 3)).len(), 3);
    }

    #[test]
    fn row_space_membership() {
        let m = KMatrix::from_ints(&[&[1, 0]]);
        assert!(in_row_space(&m, &[q(0, 1), q(0, 1)]));
        assert!(!in_row_space(&m, &[q(0, 1), q(1, 1)]));
        let id = KMatrix::identity(3);
        assert!(in_row_space(&id, &[q(3, 7), q(-1, 2), q(5, 1)]));
    }

    #[test]
    fn rref_reduces_earlier_rows() {
        // second row's pivot column must be cleared from the first row
        let m = KMatrix::from_ints(&[&[1, 1, 1], &[0, 1, 2]]);
        let (r, p) = rref(&m);
        assert_eq!(r, KMatrix::from_ints(&[&[1, 0, -1], &[0, 1, 2]]));
        assert_eq!(p, vec![0, 1]);
    }
}
