//! Exact linear algebra over a [`Field`]: row reduction, kernels and a
//! canonical subspace type.
//!
//! Pivoting is deterministic everywhere (leftmost nonzero column, first
//! candidate row), so two runs over the same inputs produce identical
//! matrices.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalars::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
}

/// A dense matrix over a field.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<Vec<F::Elem>>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![vec![field.zero(); cols]; rows];
        ExactMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: F, cols: usize, data: Vec<Vec<F::Elem>>) -> Result<Self, LinalgError> {
        if let Some(bad) = data.iter().find(|r| r.len() != cols) {
            return Err(LinalgError::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(ExactMatrix {
            field,
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn from_i64(field: F, data: &[Vec<i64>]) -> Self {
        let cols = data.first().map_or(0, |r| r.len());
        let rows = data
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        ExactMatrix::from_rows(field, cols, rows).expect("ragged input")
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = m.field.one();
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r]
    }
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r][c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r][c] = v;
    }
    pub fn into_rows(self) -> Vec<Vec<F::Elem>> {
        self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                t.data[c][r] = x.clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if f.is_zero(a) {
                    continue;
                }
                for (c, b) in other.data[k].iter().enumerate() {
                    if !f.is_zero(b) {
                        out.data[r][c] = f.add(&out.data[r][c], &f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect())
            .collect();
        Ok(ExactMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn rank(&self) -> usize {
        rref(self).1
    }
}

/// Reduced row echelon form. The returned matrix keeps the input shape,
/// with zero rows at the bottom.
pub fn rref<F: Field>(m: &ExactMatrix<F>) -> (ExactMatrix<F>, usize, Vec<usize>) {
    let mut rows = m.data.clone();
    let pivots = m.field.rref_rows(&mut rows, m.cols);
    let rank = pivots.len();
    rows.resize(m.rows, vec![m.field.zero(); m.cols]);
    let r = ExactMatrix {
        field: m.field.clone(),
        rows: m.rows,
        cols: m.cols,
        data: rows,
    };
    (r, rank, pivots)
}

/// Null space `{x : M x = 0}` as a subspace of `F^cols`.
pub fn kernel<F: Field>(m: &ExactMatrix<F>) -> Subspace<F> {
    let mut rows = m.data.clone();
    let pivots = m.field.rref_rows(&mut rows, m.cols);
    kernel_from_rref(&m.field, m.cols, &rows, &pivots)
}

fn kernel_from_rref<F: Field>(
    field: &F,
    cols: usize,
    rows: &[Vec<F::Elem>],
    pivots: &[usize],
) -> Subspace<F> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<Vec<F::Elem>> = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); cols];
            v[free] = field.one();
            for (row, &p) in rows.iter().zip(pivots) {
                v[p] = field.neg(&row[free]);
            }
            v
        })
        .collect();
    Subspace::span(field.clone(), cols, basis).expect("kernel vectors have the right length")
}

// ---------------------------------------------------------------------------
// Subspaces

/// A subspace of `F^ambient` stored by its reduced row echelon basis.
/// The representation is canonical: equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Result<Self, LinalgError> {
        if let Some(bad) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(LinalgError::DimensionMismatch {
                expected: ambient,
                found: bad.len(),
            });
        }
        let mut basis = vectors;
        let pivots = field.rref_rows(&mut basis, ambient);
        Ok(Subspace {
            field,
            ambient,
            basis,
            pivots,
        })
    }

    pub(crate) fn from_rref_parts(
        field: F,
        ambient: usize,
        basis: Vec<Vec<F::Elem>>,
        pivots: Vec<usize>,
    ) -> Self {
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: usize) -> Result<(), LinalgError> {
        if self.ambient != other {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: other,
            });
        }
        Ok(())
    }

    fn check_field(&self, other: &F) -> Result<(), LinalgError> {
        if &self.field != other {
            return Err(LinalgError::FieldMismatch(self.field.name(), other.name()));
        }
        Ok(())
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if f.is_zero(&out[p]) {
                continue;
            }
            let c = out[p].clone();
            for (x, r) in out.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool, LinalgError> {
        self.check_ambient(v.len())?;
        Ok(self.reduce(v).iter().all(|x| self.field.is_zero(x)))
    }

    /// Coordinates of `v` in the echelon basis (read off at the pivots),
    /// or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.reduce(v).iter().all(|x| self.field.is_zero(x)) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check_ambient(other.ambient)?;
        for v in &self.basis {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other.ambient)?;
        self.check_field(&other.field)?;
        let mut vectors = self.basis.clone();
        vectors.extend(other.basis.iter().cloned());
        Subspace::span(self.field.clone(), self.ambient, vectors)
    }

    /// Intersection through the kernel of `[A^T | -B^T]`.
    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other.ambient)?;
        self.check_field(&other.field)?;
        let f = &self.field;
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Ok(Subspace::zero(f.clone(), self.ambient));
        }
        let rows: Vec<Vec<F::Elem>> = (0..self.ambient)
            .map(|c| {
                self.basis
                    .iter()
                    .map(|a| a[c].clone())
                    .chain(other.basis.iter().map(|b| f.neg(&b[c])))
                    .collect()
            })
            .collect();
        let m = ExactMatrix::from_rows(f.clone(), k + l, rows)?;
        let ker = kernel(&m);
        let vectors = ker
            .basis
            .iter()
            .map(|x| {
                let mut v = vec![f.zero(); self.ambient];
                for (coef, a) in x[..k].iter().zip(&self.basis) {
                    if f.is_zero(coef) {
                        continue;
                    }
                    for (y, ai) in v.iter_mut().zip(a) {
                        *y = f.add(y, &f.mul(coef, ai));
                    }
                }
                v
            })
            .collect();
        Subspace::span(f.clone(), self.ambient, vectors)
    }

    /// Indices of the coordinate vectors complementing this subspace.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }
}

/// `kernel(M)` as a free function, matching the other subspace builders.
pub fn span<F: Field>(
    field: F,
    ambient: usize,
    vectors: Vec<Vec<F::Elem>>,
) -> Result<Subspace<F>, LinalgError> {
    Subspace::span(field, ambient, vectors)
}

pub fn sum<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
    a.sum(b)
}

pub fn intersect<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
    a.intersect(b)
}

pub fn contains<F: Field>(s: &Subspace<F>, v: &[F::Elem]) -> Result<bool, LinalgError> {
    s.contains(v)
}

/// Rank of the Gram matrix `[pairing(s_i, t_j)]`.
pub fn gram_rank<F, P>(s: &Subspace<F>, t: &Subspace<F>, pairing: P) -> Result<usize, LinalgError>
where
    F: Field,
    P: Fn(&[F::Elem], &[F::Elem]) -> F::Elem,
{
    s.check_field(&t.field)?;
    let rows: Vec<Vec<F::Elem>> = s
        .basis
        .iter()
        .map(|a| t.basis.iter().map(|b| pairing(a, b)).collect())
        .collect();
    let m = ExactMatrix::from_rows(s.field.clone(), t.dim(), rows)?;
    Ok(m.rank())
}

// ---------------------------------------------------------------------------
// Sparse incremental elimination

/// Sparse vector: strictly increasing column indices, no stored zeros.
pub type SparseRow<E> = Vec<(usize, E)>;

pub fn sparse_from_dense<F: Field>(field: &F, v: &[F::Elem]) -> SparseRow<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// `a - c * b` on sparse rows.
fn sparse_axpy<F: Field>(
    field: &F,
    a: &SparseRow<F::Elem>,
    c: &F::Elem,
    b: &SparseRow<F::Elem>,
) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, field.neg(&field.mul(c, &b[j].1))));
            j += 1;
        } else {
            let x = field.sub(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&x) {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental semi-echelon basis over sparse rows. Each stored row has a
/// unit entry at its pivot and no entries left of it.
#[derive(Debug, Clone)]
pub struct SparseEchelon<F: Field> {
    field: F,
    ambient: usize,
    rows: BTreeMap<usize, SparseRow<F::Elem>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new(field: F, ambient: usize) -> Self {
        SparseEchelon {
            field,
            ambient,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduces `row` against the stored rows until its leading column is new.
    fn reduce_leading(&self, mut row: SparseRow<F::Elem>) -> SparseRow<F::Elem> {
        while let Some((lead, c)) = row.first().cloned() {
            match self.rows.get(&lead) {
                Some(basis_row) => row = sparse_axpy(&self.field, &row, &c, basis_row),
                None => break,
            }
        }
        row
    }

    /// Inserts a row; returns `true` when it was independent of the rows so far.
    pub fn insert(&mut self, row: SparseRow<F::Elem>) -> bool {
        debug_assert!(row.iter().all(|(c, _)| *c < self.ambient));
        let row = self.reduce_leading(row);
        let Some((lead, c)) = row.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&c).expect("leading entry is nonzero");
        let row = row
            .into_iter()
            .map(|(i, x)| (i, self.field.mul(&x, &inv)))
            .collect();
        self.rows.insert(lead, row);
        true
    }

    pub fn insert_dense(&mut self, v: &[F::Elem]) -> bool {
        let row = sparse_from_dense(&self.field, v);
        self.insert(row)
    }

    pub fn contains(&self, row: SparseRow<F::Elem>) -> bool {
        self.reduce_leading(row).is_empty()
    }

    /// Back-substitutes into the canonical reduced echelon form.
    pub fn into_subspace(self) -> Subspace<F> {
        let f = self.field.clone();
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        let mut done: BTreeMap<usize, SparseRow<F::Elem>> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut row = row.clone();
            // later pivots are already fully reduced
            loop {
                let hit = row
                    .iter()
                    .find(|(c, _)| *c != p && done.contains_key(c))
                    .cloned();
                match hit {
                    Some((c, x)) => row = sparse_axpy(&f, &row, &x, &done[&c]),
                    None => break,
                }
            }
            done.insert(p, row);
        }
        let basis = pivots
            .iter()
            .map(|p| {
                let mut v = vec![f.zero(); self.ambient];
                for (c, x) in &done[p] {
                    v[*c] = x.clone();
                }
                v
            })
            .collect();
        Subspace::from_rref_parts(f, self.ambient, basis, pivots)
    }
}
