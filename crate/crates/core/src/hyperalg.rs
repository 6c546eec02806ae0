//! Divided powers of the Chevalley generators of `sp(2m)` acting on
//! `V^{(x)n}`, maximal vectors, and commutant dimensions of subquotients.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::{kernel, ExactMatrix, LinalgError, SparseEchelon, SparseRow, Subspace};
use crate::scalars::Field;
use crate::tensor::{
    GradedSubspace, SymplecticSpace, TensorError, TensorIndex, TensorVector, Weight, WeightBlocks,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperalgError {
    #[error("simple root index {0} out of range 1..={1}")]
    RootOutOfRange(usize, usize),
    #[error("divided power {k} exceeds n = {n}")]
    PowerTooLarge { k: usize, n: usize },
    #[error("subspace is not stable under {0}")]
    Unstable(String),
    #[error("bottom space is not contained in top space")]
    NotNested,
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChevalleyKind {
    Raise,
    Lower,
}

/// `e_i^{(k)}` or `f_i^{(k)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChevalleyOp {
    pub kind: ChevalleyKind,
    pub i: usize,
    pub k: usize,
}

impl std::fmt::Display for ChevalleyOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self.kind {
            ChevalleyKind::Raise => "e",
            ChevalleyKind::Lower => "f",
        };
        write!(f, "{name}_{}^({})", self.i, self.k)
    }
}

/// The generator on a basis vector of `V`: `Some((image, coefficient))`.
pub fn one_box(space: &SymplecticSpace, kind: ChevalleyKind, i: usize, x: usize) -> Option<(usize, i64)> {
    let m = space.m();
    let p = |j| space.prime(j);
    match (kind, i < m) {
        (ChevalleyKind::Raise, true) if x == i + 1 => Some((i, 1)),
        (ChevalleyKind::Raise, true) if x == p(i) => Some((p(i + 1), -1)),
        (ChevalleyKind::Raise, false) if x == p(m) => Some((m, 1)),
        (ChevalleyKind::Lower, true) if x == i => Some((i + 1, 1)),
        (ChevalleyKind::Lower, true) if x == p(i + 1) => Some((p(i), -1)),
        (ChevalleyKind::Lower, false) if x == m => Some((p(m), 1)),
        _ => None,
    }
}

/// The `2m x 2m` matrix of a generator; column `j` is the image of `v_j`.
pub fn chevalley_matrix(
    space: &SymplecticSpace,
    kind: ChevalleyKind,
    i: usize,
) -> Result<Vec<Vec<i64>>, HyperalgError> {
    let (m, d) = (space.m(), space.dim());
    if i == 0 || i > m {
        return Err(HyperalgError::RootOutOfRange(i, m));
    }
    let mut mat = vec![vec![0; d]; d];
    for x in 1..=d {
        if let Some((y, c)) = one_box(space, kind, i, x) {
            mat[y - 1][x - 1] = c;
        }
    }
    Ok(mat)
}

/// The simple root `e_i - e_{i+1}` (or `2 e_m`) as a weight.
pub fn simple_root(m: usize, i: usize) -> Weight {
    let mut w = vec![0; m];
    if i < m {
        w[i - 1] = 1;
        w[i] = -1;
    } else {
        w[m - 1] = 2;
    }
    w
}

/// Weight change caused by `op`.
pub fn weight_shift(m: usize, op: &ChevalleyOp) -> Weight {
    let sign = match op.kind {
        ChevalleyKind::Raise => 1,
        ChevalleyKind::Lower => -1,
    };
    simple_root(m, op.i)
        .into_iter()
        .map(|x| sign * op.k as i64 * x)
        .collect()
}

/// `op` on a basis tensor: the sum over `k`-subsets of positions of the
/// one-box operator applied at each position of the subset.
pub fn divided_on_index(space: &SymplecticSpace, idx: &[usize], op: &ChevalleyOp) -> Vec<(TensorIndex, i64)> {
    let movable: Vec<(usize, usize, i64)> = idx
        .iter()
        .enumerate()
        .filter_map(|(p, &x)| one_box(space, op.kind, op.i, x).map(|(y, c)| (p, y, c)))
        .collect();
    let mut out = Vec::new();
    let k = op.k;
    if k > movable.len() {
        return out;
    }
    let mut chosen: Vec<usize> = (0..k).collect();
    loop {
        let mut image = idx.to_vec();
        let mut coef = 1;
        for &c in &chosen {
            let (p, y, s) = movable[c];
            image[p] = y;
            coef *= s;
        }
        out.push((image, coef));
        // next k-subset in lexicographic order
        let Some(pos) = (0..k).rev().find(|&r| chosen[r] < movable.len() - k + r) else {
            break;
        };
        chosen[pos] += 1;
        for r in pos + 1..k {
            chosen[r] = chosen[r - 1] + 1;
        }
    }
    out
}

pub fn act_divided<F: Field>(
    v: &TensorVector<F>,
    op: &ChevalleyOp,
) -> Result<TensorVector<F>, HyperalgError> {
    let space = v.space();
    if op.i == 0 || op.i > space.m() {
        return Err(HyperalgError::RootOutOfRange(op.i, space.m()));
    }
    if op.k > v.n() {
        return Err(HyperalgError::PowerTooLarge { k: op.k, n: v.n() });
    }
    Ok(v.map_basis(v.n(), |idx| divided_on_index(&space, idx, op)))
}

/// Every divided power `e_i^{(k)}`, `f_i^{(k)}` with `k <= n`.
pub fn all_ops(m: usize, n: usize) -> Vec<ChevalleyOp> {
    let mut out = Vec::new();
    for kind in [ChevalleyKind::Raise, ChevalleyKind::Lower] {
        for i in 1..=m {
            for k in 1..=n {
                out.push(ChevalleyOp { kind, i, k });
            }
        }
    }
    out
}

fn shifted(w: &[i64], s: &[i64]) -> Weight {
    w.iter().zip(s).map(|(a, b)| a + b).collect()
}

/// Joint kernel of all raising divided powers inside the block of weight `lambda`.
pub fn maximal_vectors<F: Field>(field: &F, wb: &WeightBlocks, lambda: &[i64]) -> Subspace<F> {
    let space = wb.space();
    let dim = wb.block_dim(lambda);
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for op in all_ops(space.m(), wb.n()) {
        if op.kind != ChevalleyKind::Raise {
            continue;
        }
        let target = shifted(lambda, &weight_shift(space.m(), &op));
        let tdim = wb.block_dim(&target);
        if tdim == 0 {
            continue;
        }
        // column p of this op's matrix is the image of basis vector p
        let mut block = vec![vec![field.zero(); dim]; tdim];
        for p in 0..dim {
            let mut e = vec![field.zero(); dim];
            e[p] = field.one();
            let img = wb.apply(field, lambda, &target, &e, |idx| divided_on_index(&space, idx, &op));
            for (r, x) in img.into_iter().enumerate() {
                block[r][p] = x;
            }
        }
        rows.extend(block);
    }
    if rows.is_empty() {
        return Subspace::full(field.clone(), dim);
    }
    let mat = ExactMatrix::from_rows(field.clone(), dim, rows).expect("rows have block width");
    kernel(&mat)
}

// ---------------------------------------------------------------------------
// Subquotients

/// `top / bottom` for graded subspaces `bottom <= top`, with coordinates
/// taken on a complement of `bottom` inside `top`.
#[derive(Debug, Clone)]
pub struct Subquotient<F: Field> {
    top: GradedSubspace<F>,
    bottom: GradedSubspace<F>,
    complement: BTreeMap<Weight, Subspace<F>>,
}

impl<F: Field> Subquotient<F> {
    pub fn new(top: GradedSubspace<F>, bottom: GradedSubspace<F>) -> Result<Self, HyperalgError> {
        if !bottom.is_subspace_of(&top)? {
            return Err(HyperalgError::NotNested);
        }
        let mut complement = BTreeMap::new();
        for (w, t) in top.blocks() {
            let b = bottom.block(w);
            let reduced: Vec<Vec<F::Elem>> = t.basis().iter().map(|v| b.reduce(v)).collect();
            let c = Subspace::span(t.field().clone(), t.ambient(), reduced)?;
            debug_assert_eq!(c.dim() + b.dim(), t.dim());
            complement.insert(w.clone(), c);
        }
        Ok(Subquotient {
            top,
            bottom,
            complement,
        })
    }

    /// The whole space `V^{(x)n}`.
    pub fn full(field: &F, wb: &WeightBlocks) -> Self {
        Self::new(GradedSubspace::full(field, wb), GradedSubspace::zero(field, wb))
            .expect("zero is contained in everything")
    }

    pub fn dim(&self) -> usize {
        self.complement.values().map(|c| c.dim()).sum()
    }

    pub fn block_dim(&self, w: &[i64]) -> usize {
        self.complement.get(w).map_or(0, |c| c.dim())
    }

    pub fn top(&self) -> &GradedSubspace<F> {
        &self.top
    }

    pub fn bottom(&self) -> &GradedSubspace<F> {
        &self.bottom
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.complement.keys()
    }

    /// Representatives of the quotient basis in block `w`.
    pub fn basis(&self, w: &[i64]) -> &[Vec<F::Elem>] {
        self.complement.get(w).map_or(&[], |c| c.basis())
    }

    /// Quotient coordinates of a vector of `top` in block `w`.
    pub fn coordinates(&self, w: &[i64], v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let r = self.bottom.block(w).reduce(v);
        self.complement[w].coordinates(&r)
    }

    /// Matrix (rows: target coordinates, columns: source basis) of the map
    /// induced by an integer basis operator from block `source` to block
    /// `target`, after checking that top and bottom are both preserved.
    pub fn induced<G>(
        &self,
        wb: &WeightBlocks,
        source: &[i64],
        target: &[i64],
        name: &str,
        mut op: G,
    ) -> Result<Vec<Vec<F::Elem>>, HyperalgError>
    where
        G: FnMut(&[usize]) -> Vec<(TensorIndex, i64)>,
    {
        let sdim = self.block_dim(source);
        let tdim = self.block_dim(target);
        let Some(top_s) = self.complement.get(source) else {
            return Ok(vec![Vec::new(); tdim]);
        };
        let field = top_s.field().clone();
        let mut mat = vec![vec![field.zero(); sdim]; tdim];
        if wb.block_dim(target) == 0 {
            return Ok(mat);
        }
        let unstable = || HyperalgError::Unstable(name.to_string());
        for b in self.bottom.block(source).basis() {
            let img = wb.apply(&field, source, target, b, &mut op);
            if !self.bottom.block(target).contains(&img)? {
                return Err(unstable());
            }
        }
        for (j, c) in top_s.basis().iter().enumerate() {
            let img = wb.apply(&field, source, target, c, &mut op);
            let coords = self.coordinates(target, &img).ok_or_else(unstable)?;
            for (r, x) in coords.into_iter().enumerate() {
                mat[r][j] = x;
            }
        }
        Ok(mat)
    }
}

fn zero_matrix<F: Field>(field: &F, mat: &[Vec<F::Elem>]) -> bool {
    mat.iter().all(|row| row.iter().all(|x| field.is_zero(x)))
}

/// Dimension of the space of weight-preserving linear maps `source -> target`
/// that commute with every divided power `e_i^{(k)}`, `f_i^{(k)}`, `k <= n`.
pub fn hom_dimension<F: Field>(
    field: &F,
    wb: &WeightBlocks,
    source: &Subquotient<F>,
    target: &Subquotient<F>,
) -> Result<usize, HyperalgError> {
    let space = wb.space();
    let m = space.m();
    // unknown X_w has shape target_dim(w) x source_dim(w), row-major
    let mut offsets: BTreeMap<Weight, usize> = BTreeMap::new();
    let mut total = 0;
    for w in wb.weights() {
        offsets.insert(w.clone(), total);
        total += target.block_dim(w) * source.block_dim(w);
    }
    let mut echelon = SparseEchelon::new(field.clone(), total);
    for op in all_ops(m, wb.n()) {
        let shift = weight_shift(m, &op);
        for mu in wb.weights() {
            let nu = shifted(mu, &shift);
            if wb.block_dim(&nu) == 0 {
                continue;
            }
            let name = op.to_string();
            let f = |idx: &[usize]| divided_on_index(&space, idx, &op);
            let a1 = source.induced(wb, mu, &nu, &name, f)?;
            let a2 = target.induced(wb, mu, &nu, &name, f)?;
            if zero_matrix(field, &a1) && zero_matrix(field, &a2) {
                continue;
            }
            let (s_mu, s_nu) = (source.block_dim(mu), source.block_dim(&nu));
            let (t_mu, t_nu) = (target.block_dim(mu), target.block_dim(&nu));
            let (o_mu, o_nu) = (offsets[mu], offsets[&nu]);
            // (X_nu A1 - A2 X_mu)[r][c] = 0 for r < t_nu, c < s_mu
            for r in 0..t_nu {
                for c in 0..s_mu {
                    let mut row: BTreeMap<usize, F::Elem> = BTreeMap::new();
                    for s in 0..s_nu {
                        let a = &a1[s][c];
                        if !field.is_zero(a) {
                            let e = row.entry(o_nu + r * s_nu + s).or_insert_with(|| field.zero());
                            *e = field.add(e, a);
                        }
                    }
                    for t in 0..t_mu {
                        let a = &a2[r][t];
                        if !field.is_zero(a) {
                            let e = row.entry(o_mu + t * s_mu + c).or_insert_with(|| field.zero());
                            *e = field.sub(e, a);
                        }
                    }
                    let row: SparseRow<F::Elem> =
                        row.into_iter().filter(|(_, x)| !field.is_zero(x)).collect();
                    if !row.is_empty() {
                        echelon.insert(row);
                    }
                }
            }
        }
    }
    Ok(total - echelon.rank())
}

/// Dimension of the commutant of the divided powers on a subquotient.
pub fn commutant_dimension<F: Field>(
    field: &F,
    wb: &WeightBlocks,
    q: &Subquotient<F>,
) -> Result<usize, HyperalgError> {
    hom_dimension(field, wb, q, q)
}
