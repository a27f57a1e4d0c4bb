//! Graded free modules `R(-a_1) ⊕ … ⊕ R(-a_r)` and graded maps between them.
//!
//! Modules are column spaces: a map `F -> G` is a `rank G × rank F` matrix of
//! algebra elements, and entry `(i, j)` is the coordinate of the image of
//! generator `j` along generator `i`.

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis_sparse, Echelon, KMatrix, SparseRow};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, serde::Serialize)]
pub struct FreeModule {
    twists: Vec<i64>,
}

impl FreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        FreeModule { twists }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `R(-a)^n`.
    pub fn uniform(a: i64, n: usize) -> Self {
        FreeModule { twists: vec![a; n] }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn twist(&self, j: usize) -> i64 {
        self.twists[j]
    }

    /// `Hom(F, R)`: `R(-a)* = R(a)`.
    pub fn dual(&self) -> FreeModule {
        FreeModule {
            twists: self.twists.iter().map(|a| -a).collect(),
        }
    }

    pub fn min_twist(&self) -> Option<i64> {
        self.twists.iter().copied().min()
    }

    pub fn max_twist(&self) -> Option<i64> {
        self.twists.iter().copied().max()
    }

    /// Internal degrees where the module can be nonzero.
    pub fn degree_range(&self, alg: &GradedAlgebra) -> Option<(i64, i64)> {
        let top = alg.computed_degrees() as i64 - 1;
        Some((self.min_twist()?, self.max_twist()? + top))
    }

    /// k-basis of the degree-`d` component.
    pub fn graded_piece(&self, alg: &GradedAlgebra, d: i64) -> Piece {
        let mut offsets = Vec::with_capacity(self.rank() + 1);
        let mut n = 0;
        for &a in &self.twists {
            offsets.push(n);
            n += alg.dim(d - a);
        }
        offsets.push(n);
        Piece { degree: d, offsets }
    }

    pub fn piece_dim(&self, alg: &GradedAlgebra, d: i64) -> usize {
        self.twists.iter().map(|&a| alg.dim(d - a)).sum()
    }

    pub fn hilbert(&self, alg: &GradedAlgebra) -> crate::HilbertFunction {
        let mut h = crate::HilbertFunction::new();
        for &a in &self.twists {
            for (e, n) in alg.hilbert().iter() {
                h.add(a + e, n);
            }
        }
        h
    }

    /// Direct sum, generators of `self` first.
    pub fn sum(&self, other: &FreeModule) -> FreeModule {
        FreeModule {
            twists: self.twists.iter().chain(&other.twists).copied().collect(),
        }
    }
}

/// Layout of a graded piece: generator `j` owns coordinates
/// `offsets[j]..offsets[j + 1]`, which are the algebra basis in degree
/// `degree - twist_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub degree: i64,
    pub offsets: Vec<usize>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn block(&self, j: usize) -> std::ops::Range<usize> {
        self.offsets[j]..self.offsets[j + 1]
    }

    /// Splits a vector of the piece into per-generator algebra elements.
    pub fn to_elements(&self, module: &FreeModule, v: &[Scalar]) -> Vec<AlgebraElement> {
        (0..module.rank())
            .map(|j| {
                let r = self.block(j);
                let deg = self.degree - module.twist(j);
                if r.is_empty() {
                    AlgebraElement::zero()
                } else {
                    AlgebraElement::homogeneous(deg as usize, v[r].to_vec())
                }
            })
            .collect()
    }

    /// Inverse of [`Piece::to_elements`]; components of other degrees are ignored.
    pub fn from_elements(&self, module: &FreeModule, elems: &[AlgebraElement]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (j, e) in elems.iter().enumerate() {
            let deg = self.degree - module.twist(j);
            if deg < 0 {
                continue;
            }
            if let Some(part) = e.part(deg as usize) {
                v[self.block(j)].clone_from_slice(part);
            }
        }
        v
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleMap {
    source: FreeModule,
    target: FreeModule,
    /// `entries[i][j]`, `i` over target generators, `j` over source generators.
    entries: Vec<Vec<AlgebraElement>>,
}

fn entry_degree(e: &AlgebraElement) -> Option<Result<i64, ()>> {
    if e.is_zero() {
        None
    } else {
        Some(e.degree().map(|d| d as i64).ok_or(()))
    }
}

impl ModuleMap {
    /// Validates shape and homogeneity: entry `(i, j)` must be zero or of
    /// degree `source_j - target_i`.
    pub fn new(source: FreeModule, target: FreeModule, entries: Vec<Vec<AlgebraElement>>) -> Result<Self> {
        if entries.len() != target.rank() {
            return Err(Error::Shape(format!(
                "{} rows for a target of rank {}",
                entries.len(),
                target.rank()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != source.rank() {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries for a source of rank {}",
                    row.len(),
                    source.rank()
                )));
            }
            for (j, e) in row.iter().enumerate() {
                match entry_degree(e) {
                    None => {}
                    Some(Ok(d)) if d == source.twist(j) - target.twist(i) => {}
                    Some(_) => return Err(Error::NotGraded { row: i, col: j }),
                }
            }
        }
        Ok(ModuleMap { source, target, entries })
    }

    /// Builds a map whose source twists are forced by homogeneity.
    pub fn with_inferred_source(target: FreeModule, entries: Vec<Vec<AlgebraElement>>) -> Result<Self> {
        let source = infer_twists(&entries, &target)?;
        Self::new(source, target, entries)
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> Self {
        let entries = vec![vec![AlgebraElement::zero(); source.rank()]; target.rank()];
        ModuleMap { source, target, entries }
    }

    pub fn identity(alg: &GradedAlgebra, module: &FreeModule) -> Self {
        let mut m = Self::zero(module.clone(), module.clone());
        for i in 0..module.rank() {
            m.entries[i][i] = alg.one();
        }
        m
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn entry(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<AlgebraElement>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(AlgebraElement::is_zero)
    }

    /// Column `j` as a vector of target coordinates.
    pub fn column(&self, j: usize) -> Vec<AlgebraElement> {
        self.entries.iter().map(|row| row[j].clone()).collect()
    }

    /// Keeps the given source columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> ModuleMap {
        ModuleMap {
            source: FreeModule::new(cols.iter().map(|&j| self.source.twist(j)).collect()),
            target: self.target.clone(),
            entries: self
                .entries
                .iter()
                .map(|row| cols.iter().map(|&j| row[j].clone()).collect())
                .collect(),
        }
    }

    /// Applies the map to a vector of source coordinates.
    pub fn apply(&self, alg: &GradedAlgebra, v: &[AlgebraElement]) -> Result<Vec<AlgebraElement>> {
        if v.len() != self.source.rank() {
            return Err(Error::Shape("vector length differs from source rank".into()));
        }
        self.entries
            .iter()
            .map(|row| {
                row.iter().zip(v).try_fold(AlgebraElement::zero(), |acc, (e, x)| {
                    Ok(acc.add(&alg.multiply(e, x)?))
                })
            })
            .collect()
    }

    /// The k-matrix of the map in internal degree `d`, in the bases of
    /// [`FreeModule::graded_piece`].
    pub fn map_in_degree(&self, alg: &GradedAlgebra, d: i64) -> KMatrix {
        let src = self.source.graded_piece(alg, d);
        let tgt = self.target.graded_piece(alg, d);
        let mut m = KMatrix::zeros(tgt.dim(), src.dim());
        self.for_each_column_in_degree(alg, &src, &tgt, |col, entries| {
            for (r, v) in entries {
                m.set(r, col, v);
            }
        });
        m
    }

    /// Rows of [`ModuleMap::map_in_degree`] in sparse form, without building
    /// the dense matrix.
    pub fn sparse_rows_in_degree(&self, alg: &GradedAlgebra, d: i64) -> (usize, Vec<SparseRow>) {
        let src = self.source.graded_piece(alg, d);
        let tgt = self.target.graded_piece(alg, d);
        let mut rows: Vec<SparseRow> = vec![Vec::new(); tgt.dim()];
        self.for_each_column_in_degree(alg, &src, &tgt, |col, entries| {
            for (r, v) in entries {
                rows[r].push((col, v));
            }
        });
        (src.dim(), rows)
    }

    /// Sparse columns of the degree-`d` realization.
    pub fn sparse_columns_in_degree(&self, alg: &GradedAlgebra, d: i64) -> (usize, Vec<SparseRow>) {
        let src = self.source.graded_piece(alg, d);
        let tgt = self.target.graded_piece(alg, d);
        let mut cols: Vec<SparseRow> = vec![Vec::new(); src.dim()];
        self.for_each_column_in_degree(alg, &src, &tgt, |col, entries| {
            cols[col] = entries;
        });
        (tgt.dim(), cols)
    }

    fn for_each_column_in_degree(
        &self,
        alg: &GradedAlgebra,
        src: &Piece,
        tgt: &Piece,
        mut emit: impl FnMut(usize, SparseRow),
    ) {
        let d = src.degree;
        for j in 0..self.source.rank() {
            let bdeg = d - self.source.twist(j);
            for b in 0..alg.dim(bdeg) {
                let col = src.offsets[j] + b;
                let mut out: Vec<Scalar> = Vec::new();
                let mut touched = false;
                for i in 0..self.target.rank() {
                    let e = &self.entries[i][j];
                    let Some(edeg) = e.degree() else { continue };
                    let tdeg = d - self.target.twist(i);
                    if alg.dim(tdeg) == 0 {
                        continue;
                    }
                    if !touched {
                        out = vec![Scalar::zero(); tgt.dim()];
                        touched = true;
                    }
                    let base = tgt.offsets[i];
                    let coeffs = e.part(edeg).unwrap();
                    for (u, c) in coeffs.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let prod = alg.basis_product(edeg, u, bdeg as usize, b);
                        for (w, p) in prod.iter().enumerate() {
                            if !p.is_zero() {
                                out[base + w].add_mul(c, p);
                            }
                        }
                    }
                }
                if touched {
                    let sparse: SparseRow = out
                        .into_iter()
                        .enumerate()
                        .filter(|(_, s)| !s.is_zero())
                        .collect();
                    if !sparse.is_empty() {
                        emit(col, sparse);
                    }
                }
            }
        }
    }

    /// Rank of the degree-`d` realization.
    pub fn rank_in_degree(&self, alg: &GradedAlgebra, d: i64) -> usize {
        let (ncols, rows) = self.sparse_rows_in_degree(alg, d);
        if rows.len() <= ncols {
            echelon_rank(ncols, rows)
        } else {
            let (nrows, cols) = self.sparse_columns_in_degree(alg, d);
            echelon_rank(nrows, cols)
        }
    }

    /// Kernel basis of the degree-`d` realization, as vectors of the source piece.
    pub fn kernel_in_degree(&self, alg: &GradedAlgebra, d: i64) -> Vec<Vec<Scalar>> {
        let (ncols, rows) = self.sparse_rows_in_degree(alg, d);
        kernel_basis_sparse(ncols, rows)
    }

    /// Sum of the ranks over all internal degrees, i.e. `dim_k` of the image.
    pub fn image_dim(&self, alg: &GradedAlgebra) -> usize {
        match self.source.degree_range(alg) {
            None => 0,
            Some((lo, hi)) => (lo..=hi).map(|d| self.rank_in_degree(alg, d)).sum(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, alg: &GradedAlgebra, other: &ModuleMap) -> Result<ModuleMap> {
        if other.target != self.source {
            return Err(Error::Shape(format!(
                "cannot compose: {:?} vs {:?}",
                other.target.twists(),
                self.source.twists()
            )));
        }
        let mut entries = vec![vec![AlgebraElement::zero(); other.source.rank()]; self.target.rank()];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = AlgebraElement::zero();
                for k in 0..self.source.rank() {
                    let (a, b) = (&self.entries[i][k], &other.entries[k][j]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&alg.multiply(a, b)?);
                }
                *cell = acc;
            }
        }
        Ok(ModuleMap {
            source: other.source.clone(),
            target: self.target.clone(),
            entries,
        })
    }

    /// `Hom(-, R)` applied to the map: transpose matrix between dual modules.
    pub fn dual_map(&self) -> ModuleMap {
        let entries = (0..self.source.rank())
            .map(|j| self.entries.iter().map(|row| row[j].clone()).collect())
            .collect();
        ModuleMap {
            source: self.target.dual(),
            target: self.source.dual(),
            entries,
        }
    }

    /// Entries rendered with [`GradedAlgebra::render`].
    pub fn render(&self, alg: &GradedAlgebra) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| alg.render(e)).collect())
            .collect()
    }
}

fn echelon_rank(len: usize, vectors: Vec<SparseRow>) -> usize {
    let mut e = Echelon::new(len);
    for v in vectors {
        if e.rank() == len {
            break;
        }
        e.insert_sparse(&v);
    }
    e.rank()
}

/// Source twists forced by the entries of each column.
pub fn infer_twists(entries: &[Vec<AlgebraElement>], target: &FreeModule) -> Result<FreeModule> {
    if entries.len() != target.rank() {
        return Err(Error::Shape(format!(
            "{} rows for a target of rank {}",
            entries.len(),
            target.rank()
        )));
    }
    let ncols = entries.first().map_or(0, Vec::len);
    let mut twists = Vec::with_capacity(ncols);
    for j in 0..ncols {
        let mut forced: Option<i64> = None;
        for (i, row) in entries.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Shape("ragged matrix".into()));
            }
            let e = &row[j];
            if e.is_zero() {
                continue;
            }
            let d = e.degree().ok_or_else(|| Error::TwistInference {
                col: j,
                msg: format!("entry in row {i} is not homogeneous"),
            })? as i64;
            let t = target.twist(i) + d;
            match forced {
                None => forced = Some(t),
                Some(prev) if prev == t => {}
                Some(prev) => {
                    return Err(Error::TwistInference {
                        col: j,
                        msg: format!("entries force twists {prev} and {t}"),
                    })
                }
            }
        }
        twists.push(forced.ok_or_else(|| Error::TwistInference {
            col: j,
            msg: "zero column; the twist must be given explicitly".into(),
        })?);
    }
    Ok(FreeModule::new(twists))
}

/// Parses a matrix of expression strings into algebra elements.
pub fn parse_matrix<S: AsRef<str>>(alg: &GradedAlgebra, rows: &[Vec<S>]) -> Result<Vec<Vec<AlgebraElement>>> {
    let width = rows.first().map_or(0, Vec::len);
    rows.iter()
        .map(|row| {
            if row.len() != width {
                return Err(Error::Shape("matrix rows have different lengths".into()));
            }
            row.iter().map(|s| alg.parse_element(s.as_ref())).collect()
        })
        .collect()
}
