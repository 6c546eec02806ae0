//! The symplectic space `V` of dimension `2m`, the right Brauer action on
//! `V^{(x)n}`, contractions, the product form, weights and weight blocks.
//!
//! Basis vectors `v_1..v_2m` are 1-based; `i' = 2m + 1 - i` and
//! `<v_i, v_i'> = 1` for `i <= m`, `= -1` for `i > m`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::characters::Partition;
use crate::diagrams::{
    diagram_to_word, w_lambda, young_subgroup, AlgebraElement, BrauerDiagram, GenKind,
    Permutation,
};
use crate::linalg::{LinalgError, Subspace};
use crate::scalars::{Field, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("position {pos} out of range for n = {n}")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("tensor shapes differ: (m={0}, n={1}) vs (m={2}, n={3})")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("the action is only defined for loop parameter -2m")]
    DeltaMismatch,
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `V` with its skew form, for a given `m >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    m: usize,
}

impl SymplecticSpace {
    pub fn new(m: usize) -> Result<Self, TensorError> {
        if m == 0 {
            return Err(TensorError::Invalid("m must be positive".into()));
        }
        Ok(SymplecticSpace { m })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        2 * self.m
    }

    /// `i' = 2m + 1 - i`.
    pub fn prime(&self, i: usize) -> usize {
        2 * self.m + 1 - i
    }

    /// `+1` for `i <= m`, `-1` otherwise.
    pub fn epsilon(&self, i: usize) -> i64 {
        if i <= self.m {
            1
        } else {
            -1
        }
    }

    fn check(&self, i: usize) -> Result<(), TensorError> {
        if i == 0 || i > self.dim() {
            return Err(TensorError::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            });
        }
        Ok(())
    }

    pub fn form(&self, i: usize, j: usize) -> Result<i64, TensorError> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.form_unchecked(i, j))
    }

    pub(crate) fn form_unchecked(&self, i: usize, j: usize) -> i64 {
        if j == self.prime(i) {
            self.epsilon(i)
        } else {
            0
        }
    }

    /// `v_i^* = sign * v_index`, so that `<v_i, v_j^*> = delta_ij`.
    pub fn dual(&self, i: usize) -> Result<(usize, i64), TensorError> {
        self.check(i)?;
        Ok((self.prime(i), self.epsilon(i)))
    }

    /// The matrix `(<v_i, v_j>)`.
    pub fn gram_matrix(&self) -> Vec<Vec<i64>> {
        (1..=self.dim())
            .map(|i| (1..=self.dim()).map(|j| self.form_unchecked(i, j)).collect())
            .collect()
    }

    /// Weight of a single basis vector.
    pub fn weight_of_basis(&self, i: usize) -> Weight {
        let mut w = vec![0; self.m];
        if i <= self.m {
            w[i - 1] += 1;
        } else {
            w[self.prime(i) - 1] -= 1;
        }
        w
    }
}

/// A basis tensor `v_{i_1} (x) ... (x) v_{i_n}`, entries 1-based.
pub type TensorIndex = Vec<usize>;

/// Integer weight vector of length `m`.
pub type Weight = Vec<i64>;

/// `sum_j eps(i_j)` in the coordinates `e_1..e_m`.
pub fn weight_of(space: &SymplecticSpace, idx: &[usize]) -> Weight {
    let mut w = vec![0; space.m];
    for &i in idx {
        if i <= space.m {
            w[i - 1] += 1;
        } else {
            w[space.prime(i) - 1] -= 1;
        }
    }
    w
}

/// All indices of length `n` with entries in `1..=k`, in lexicographic order.
pub fn all_indices(k: usize, n: usize) -> Vec<TensorIndex> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (1..=k).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out
}

/// All indices of length `n` and weight `mu`, sorted.
pub fn weight_subspace(space: &SymplecticSpace, n: usize, mu: &[i64]) -> Vec<TensorIndex> {
    all_indices(space.dim(), n)
        .into_iter()
        .filter(|idx| weight_of(space, idx) == mu)
        .collect()
}

// ---------------------------------------------------------------------------
// Tensors

/// A sparse element of `V^{(x)n}` over `R`.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorVector<R: Ring> {
    space: SymplecticSpace,
    n: usize,
    ring: R,
    coeffs: BTreeMap<TensorIndex, R::Elem>,
}

impl<R: Ring> TensorVector<R> {
    pub fn zero(ring: R, space: SymplecticSpace, n: usize) -> Self {
        TensorVector {
            space,
            n,
            ring,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(ring: R, space: SymplecticSpace, idx: &[usize]) -> Result<Self, TensorError> {
        for &i in idx {
            space.check(i)?;
        }
        let mut v = Self::zero(ring.clone(), space, idx.len());
        v.add_term(idx.to_vec(), ring.one());
        Ok(v)
    }

    pub fn from_terms(
        ring: R,
        space: SymplecticSpace,
        n: usize,
        terms: impl IntoIterator<Item = (TensorIndex, R::Elem)>,
    ) -> Result<Self, TensorError> {
        let mut v = Self::zero(ring, space, n);
        for (idx, c) in terms {
            if idx.len() != n {
                return Err(TensorError::Invalid(format!("index {idx:?} has wrong length")));
            }
            for &i in &idx {
                space.check(i)?;
            }
            v.add_term(idx, c);
        }
        Ok(v)
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorIndex, &R::Elem)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, idx: &[usize]) -> R::Elem {
        self.coeffs.get(idx).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add_term(&mut self, idx: TensorIndex, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        let ring = &self.ring;
        match self.coeffs.get_mut(&idx) {
            Some(x) => {
                *x = ring.add(x, &c);
                if ring.is_zero(x) {
                    self.coeffs.remove(&idx);
                }
            }
            None => {
                self.coeffs.insert(idx, c);
            }
        }
    }

    fn check_shape(&self, other: &Self) -> Result<(), TensorError> {
        if self.space != other.space || self.n != other.n {
            return Err(TensorError::ShapeMismatch(
                self.space.m,
                self.n,
                other.space.m,
                other.n,
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, TensorError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.coeffs {
            out.add_term(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.space, self.n);
        for (idx, x) in &self.coeffs {
            out.add_term(idx.clone(), self.ring.mul(c, x));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, TensorError> {
        self.add(&other.scale(&self.ring.from_i64(-1)))
    }

    /// `self (x) other`.
    pub fn tensor(&self, other: &Self) -> Result<Self, TensorError> {
        if self.space != other.space {
            return Err(TensorError::ShapeMismatch(
                self.space.m,
                self.n,
                other.space.m,
                other.n,
            ));
        }
        let mut out = Self::zero(self.ring.clone(), self.space, self.n + other.n);
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.add_term(idx, self.ring.mul(x, y));
            }
        }
        Ok(out)
    }

    /// Applies a map given on basis tensors by integer combinations.
    pub fn map_basis<G>(&self, new_n: usize, mut op: G) -> Self
    where
        G: FnMut(&[usize]) -> Vec<(TensorIndex, i64)>,
    {
        let mut out = Self::zero(self.ring.clone(), self.space, new_n);
        for (idx, c) in &self.coeffs {
            for (j, k) in op(idx) {
                out.add_term(j, self.ring.mul(c, &self.ring.from_i64(k)));
            }
        }
        out
    }

    /// Converts coefficients into another ring along `f`.
    pub fn map_coefficients<S: Ring>(&self, ring: S, mut f: impl FnMut(&R::Elem) -> S::Elem) -> TensorVector<S> {
        let mut out = TensorVector::zero(ring, self.space, self.n);
        for (idx, c) in &self.coeffs {
            out.add_term(idx.clone(), f(c));
        }
        out
    }
}

impl<R: Ring> fmt::Display for TensorVector<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(idx, c)| {
                let idx: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                format!("({}): {}", idx.join(","), self.ring.render(c))
            })
            .collect();
        write!(f, "m={};n={};{{{}}}", self.space.m, self.n, terms.join(", "))
    }
}

// ---------------------------------------------------------------------------
// Action on basis tensors (integer coefficients)

/// `v_idx . s_j` or `v_idx . e_j`, with `j` 1-based.
pub fn generator_on_index(
    space: &SymplecticSpace,
    idx: &[usize],
    kind: GenKind,
    j: usize,
) -> Vec<(TensorIndex, i64)> {
    let (a, b) = (j - 1, j);
    match kind {
        GenKind::S => {
            let mut out = idx.to_vec();
            out.swap(a, b);
            vec![(out, -1)]
        }
        GenKind::E => {
            let c = space.form_unchecked(idx[a], idx[b]);
            if c == 0 {
                return Vec::new();
            }
            (1..=space.dim())
                .map(|k| {
                    let mut out = idx.to_vec();
                    out[a] = k;
                    out[b] = space.prime(k);
                    (out, -c * space.epsilon(k))
                })
                .collect()
        }
    }
}

/// `v_idx . w`: the factor in position `i` moves to position `w(i)`, with
/// sign `(-1)^{l(w)}`.
pub fn permutation_on_index(idx: &[usize], w: &Permutation) -> (TensorIndex, i64) {
    let mut out = vec![0; idx.len()];
    for (i, &x) in idx.iter().enumerate() {
        out[w.apply(i)] = x;
    }
    (out, w.sign())
}

/// `v_idx . d` for a Brauer diagram, through its loop-free normal form.
pub fn diagram_on_index(
    space: &SymplecticSpace,
    idx: &[usize],
    d: &BrauerDiagram,
) -> Vec<(TensorIndex, i64)> {
    let (s1, f, s2) = diagram_to_word(d);
    let (first, sign) = permutation_on_index(idx, &s1);
    let mut cur: BTreeMap<TensorIndex, i64> = BTreeMap::from([(first, sign)]);
    for r in 0..f {
        let mut next = BTreeMap::new();
        for (x, c) in cur {
            for (y, k) in generator_on_index(space, &x, GenKind::E, 2 * r + 1) {
                *next.entry(y).or_insert(0) += c * k;
            }
        }
        next.retain(|_, c| *c != 0);
        cur = next;
    }
    cur.into_iter()
        .map(|(x, c)| {
            let (y, s) = permutation_on_index(&x, &s2);
            (y, c * s)
        })
        .collect()
}

pub fn act_generator<R: Ring>(
    v: &TensorVector<R>,
    kind: GenKind,
    j: usize,
) -> Result<TensorVector<R>, TensorError> {
    if j == 0 || j >= v.n {
        return Err(TensorError::PositionOutOfRange { pos: j, n: v.n });
    }
    let space = v.space;
    Ok(v.map_basis(v.n, |idx| generator_on_index(&space, idx, kind, j)))
}

pub fn act_permutation<R: Ring>(
    v: &TensorVector<R>,
    w: &Permutation,
) -> Result<TensorVector<R>, TensorError> {
    if w.n() != v.n {
        return Err(TensorError::ShapeMismatch(v.space.m, v.n, v.space.m, w.n()));
    }
    Ok(v.map_basis(v.n, |idx| vec![permutation_on_index(idx, w)]))
}

pub fn act_diagram<R: Ring>(
    v: &TensorVector<R>,
    d: &BrauerDiagram,
) -> Result<TensorVector<R>, TensorError> {
    if d.n() != v.n {
        return Err(TensorError::ShapeMismatch(v.space.m, v.n, v.space.m, d.n()));
    }
    let space = v.space;
    Ok(v.map_basis(v.n, |idx| diagram_on_index(&space, idx, d)))
}

/// `v . a`, linear in the diagrams of `a`; requires `delta = -2m`.
pub fn act_element<R: Ring>(
    v: &TensorVector<R>,
    a: &AlgebraElement<R>,
) -> Result<TensorVector<R>, TensorError> {
    let ring = v.ring.clone();
    if *a.delta() != ring.from_i64(-2 * v.space.m as i64) {
        return Err(TensorError::DeltaMismatch);
    }
    let mut out = TensorVector::zero(ring.clone(), v.space, v.n);
    for (d, c) in a.terms() {
        out = out.add(&act_diagram(v, d)?.scale(c))?;
    }
    Ok(out)
}

fn check_pair(s: usize, t: usize, n: usize) -> Result<(), TensorError> {
    if s == 0 || t > n || s >= t {
        return Err(TensorError::PositionOutOfRange { pos: if s == 0 { s } else { t }, n });
    }
    Ok(())
}

/// `C_{s,t}`: pairs positions `s` and `t` with the form and removes them.
pub fn contraction<R: Ring>(
    v: &TensorVector<R>,
    s: usize,
    t: usize,
) -> Result<TensorVector<R>, TensorError> {
    check_pair(s, t, v.n)?;
    let space = v.space;
    Ok(v.map_basis(v.n - 2, |idx| {
        let c = space.form_unchecked(idx[s - 1], idx[t - 1]);
        if c == 0 {
            return Vec::new();
        }
        let rest: TensorIndex = idx
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != s - 1 && p != t - 1)
            .map(|(_, &x)| x)
            .collect();
        vec![(rest, c)]
    }))
}

/// `D_{s,t}`: inserts `sum_k v_k` at position `s` and `v_k^*` at `t` of the
/// resulting `(n+2)`-tensor.
pub fn expansion<R: Ring>(
    v: &TensorVector<R>,
    s: usize,
    t: usize,
) -> Result<TensorVector<R>, TensorError> {
    let n = v.n + 2;
    check_pair(s, t, n)?;
    let space = v.space;
    Ok(v.map_basis(n, |idx| {
        (1..=space.dim())
            .map(|k| {
                let mut out = Vec::with_capacity(n);
                let mut rest = idx.iter();
                for p in 1..=n {
                    if p == s {
                        out.push(k);
                    } else if p == t {
                        out.push(space.prime(k));
                    } else {
                        out.push(*rest.next().expect("length n - 2"));
                    }
                }
                (out, space.epsilon(k))
            })
            .collect()
    }))
}

/// `<v, w> = sum prod_s <v_{i_s}, v_{j_s}>`.
pub fn bilinear<R: Ring>(v: &TensorVector<R>, w: &TensorVector<R>) -> Result<R::Elem, TensorError> {
    v.check_shape(w)?;
    let ring = &v.ring;
    let mut acc = ring.zero();
    for (a, x) in &v.coeffs {
        // only one partner index can pair nonzero with a
        let partner: TensorIndex = a.iter().map(|&i| v.space.prime(i)).collect();
        if let Some(y) = w.coeffs.get(&partner) {
            let sign: i64 = a.iter().map(|&i| v.space.epsilon(i)).product();
            acc = ring.add(&acc, &ring.mul(&ring.mul(x, y), &ring.from_i64(sign)));
        }
    }
    Ok(acc)
}

/// `alpha = sum_k v_k (x) v_k^*`.
pub fn alpha<R: Ring>(ring: R, space: SymplecticSpace) -> TensorVector<R> {
    let mut v = TensorVector::zero(ring.clone(), space, 2);
    for k in 1..=space.dim() {
        v.add_term(vec![k, space.prime(k)], ring.from_i64(space.epsilon(k)));
    }
    v
}

/// `v_lambda = v_1^{(x) lambda_1} (x) v_2^{(x) lambda_2} (x) ...`.
pub fn v_lambda<R: Ring>(
    ring: R,
    space: SymplecticSpace,
    lambda: &Partition,
) -> Result<TensorVector<R>, TensorError> {
    if lambda.len() > space.m {
        return Err(TensorError::Invalid(format!("{lambda} has more than m parts")));
    }
    let idx: TensorIndex = lambda
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| std::iter::repeat_n(r + 1, len))
        .collect();
    TensorVector::basis(ring, space, &idx)
}

/// `alpha^{(x)g} (x) v_lambda` acted on by `w_lambda x_{lambda'}`, the group
/// elements placed on the last `|lambda|` strands.
pub fn z_vector<R: Ring>(
    ring: R,
    space: SymplecticSpace,
    g: usize,
    lambda: &Partition,
) -> Result<TensorVector<R>, TensorError> {
    let k = lambda.size();
    let n = 2 * g + k;
    let mut base = TensorVector::basis(ring.clone(), space, &[])?;
    let a = alpha(ring.clone(), space);
    for _ in 0..g {
        base = base.tensor(&a)?;
    }
    base = base.tensor(&v_lambda(ring.clone(), space, lambda)?)?;
    let w = w_lambda(lambda).embed(2 * g, n);
    let moved = act_permutation(&base, &w)?;
    let mut out = TensorVector::zero(ring, space, n);
    for y in young_subgroup(lambda.conjugate().parts()) {
        out = out.add(&act_permutation(&moved, &y.embed(2 * g, n))?)?;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Weight blocks

/// The decomposition of the basis of `V^{(x)n}` by weight.
#[derive(Debug, Clone)]
pub struct WeightBlocks {
    space: SymplecticSpace,
    n: usize,
    blocks: BTreeMap<Weight, Vec<TensorIndex>>,
    local: HashMap<TensorIndex, usize>,
}

impl WeightBlocks {
    pub fn new(space: SymplecticSpace, n: usize) -> Self {
        let mut blocks: BTreeMap<Weight, Vec<TensorIndex>> = BTreeMap::new();
        for idx in all_indices(space.dim(), n) {
            blocks.entry(weight_of(&space, &idx)).or_default().push(idx);
        }
        let mut local = HashMap::new();
        for members in blocks.values() {
            for (p, idx) in members.iter().enumerate() {
                local.insert(idx.clone(), p);
            }
        }
        WeightBlocks {
            space,
            n,
            blocks,
            local,
        }
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.blocks.keys()
    }

    pub fn block(&self, w: &[i64]) -> &[TensorIndex] {
        self.blocks.get(w).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn block_dim(&self, w: &[i64]) -> usize {
        self.block(w).len()
    }

    pub fn total_dim(&self) -> usize {
        self.local.len()
    }

    pub fn local_index(&self, idx: &[usize]) -> usize {
        self.local[idx]
    }

    /// Dense block coordinates of a tensor supported in block `w`.
    pub fn to_local<F: Field>(&self, w: &[i64], v: &TensorVector<F>) -> Vec<F::Elem> {
        let mut out = vec![v.ring.zero(); self.block_dim(w)];
        for (idx, c) in v.terms() {
            debug_assert_eq!(weight_of(&self.space, idx), w);
            out[self.local[idx]] = c.clone();
        }
        out
    }

    pub fn from_local<F: Field>(&self, field: &F, w: &[i64], v: &[F::Elem]) -> TensorVector<F> {
        let mut out = TensorVector::zero(field.clone(), self.space, self.n);
        for (p, c) in v.iter().enumerate() {
            out.add_term(self.block(w)[p].clone(), c.clone());
        }
        out
    }

    /// Applies an integer basis map to a vector of block `source`; the
    /// images must lie in block `target`.
    pub fn apply<F, G>(
        &self,
        field: &F,
        source: &[i64],
        target: &[i64],
        v: &[F::Elem],
        mut op: G,
    ) -> Vec<F::Elem>
    where
        F: Field,
        G: FnMut(&[usize]) -> Vec<(TensorIndex, i64)>,
    {
        let members = self.block(source);
        debug_assert_eq!(members.len(), v.len());
        let mut out = vec![field.zero(); self.block_dim(target)];
        for (p, c) in v.iter().enumerate() {
            if field.is_zero(c) {
                continue;
            }
            for (j, k) in op(&members[p]) {
                debug_assert_eq!(weight_of(&self.space, &j), target);
                let q = self.local[&j];
                out[q] = field.add(&out[q], &field.mul(c, &field.from_i64(k)));
            }
        }
        out
    }
}

/// A subspace of `V^{(x)n}` spanned by weight vectors, stored block by block.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedSubspace<F: Field> {
    blocks: BTreeMap<Weight, Subspace<F>>,
}

impl<F: Field> GradedSubspace<F> {
    pub fn from_blocks(blocks: BTreeMap<Weight, Subspace<F>>) -> Self {
        GradedSubspace { blocks }
    }

    pub fn full(field: &F, wb: &WeightBlocks) -> Self {
        GradedSubspace {
            blocks: wb
                .weights()
                .map(|w| (w.clone(), Subspace::full(field.clone(), wb.block_dim(w))))
                .collect(),
        }
    }

    pub fn zero(field: &F, wb: &WeightBlocks) -> Self {
        GradedSubspace {
            blocks: wb
                .weights()
                .map(|w| (w.clone(), Subspace::zero(field.clone(), wb.block_dim(w))))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.blocks.values().map(|s| s.dim()).sum()
    }

    pub fn block(&self, w: &[i64]) -> &Subspace<F> {
        &self.blocks[w]
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&Weight, &Subspace<F>)> {
        self.blocks.iter()
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&Subspace<F>, &Subspace<F>) -> Result<Subspace<F>, LinalgError>,
    ) -> Result<Self, LinalgError> {
        let mut blocks = BTreeMap::new();
        for (w, a) in &self.blocks {
            let b = other.blocks.get(w).ok_or(LinalgError::DimensionMismatch {
                expected: self.blocks.len(),
                found: other.blocks.len(),
            })?;
            blocks.insert(w.clone(), f(a, b)?);
        }
        Ok(GradedSubspace { blocks })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, |a, b| a.intersect(b))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, |a, b| a.sum(b))
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, LinalgError> {
        for (w, a) in &self.blocks {
            match other.blocks.get(w) {
                Some(b) if a.is_subspace_of(b)? => {}
                Some(_) => return Ok(false),
                None if a.dim() == 0 => {}
                None => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Every basis vector as a tensor.
    pub fn tensors(&self, wb: &WeightBlocks) -> Vec<TensorVector<F>> {
        let mut out = Vec::new();
        for (w, s) in &self.blocks {
            for row in s.basis() {
                out.push(wb.from_local(s.field(), w, row));
            }
        }
        out
    }
}

/// Checks a defining relation as an operator identity on every basis
/// tensor of `V^{(x)n}` over `R`.
pub fn relation_holds_on_tensors<R: Ring>(
    ring: &R,
    space: SymplecticSpace,
    n: usize,
    rel: &crate::diagrams::RelationInstance,
) -> Result<bool, TensorError> {
    let delta = ring.from_i64(-2 * space.m as i64);
    for idx in all_indices(space.dim(), n) {
        let v = TensorVector::basis(ring.clone(), space, &idx)?;
        let lhs = act_word(&v, &rel.lhs)?;
        let mut rhs = act_word(&v, &rel.rhs)?;
        if rel.rhs_coef == crate::diagrams::RelCoef::Delta {
            rhs = rhs.scale(&delta);
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `v . g_1 g_2 ... g_k`.
pub fn act_word<R: Ring>(
    v: &TensorVector<R>,
    word: &[(GenKind, usize)],
) -> Result<TensorVector<R>, TensorError> {
    let mut cur = v.clone();
    for &(kind, j) in word {
        cur = act_generator(&cur, kind, j)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{all_diagrams, compose, e_st, generator, presentation_relations, star};
    use crate::linalg::ExactMatrix;
    use crate::scalars::{Integers, PrimeField, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sp(m: usize) -> SymplecticSpace {
        SymplecticSpace::new(m).unwrap()
    }

    fn basis(m: usize, idx: &[usize]) -> TensorVector<Integers> {
        TensorVector::basis(Integers, sp(m), idx).unwrap()
    }

    fn random_vector<R: Ring>(ring: &R, m: usize, n: usize, rng: &mut ChaCha8Rng) -> TensorVector<R> {
        let mut v = TensorVector::zero(ring.clone(), sp(m), n);
        for _ in 0..4 {
            let idx: TensorIndex = (0..n).map(|_| rng.gen_range(1..=2 * m)).collect();
            v.add_term(idx, ring.from_i64(rng.gen_range(-3..=3)));
        }
        v
    }

    #[test]
    fn form_and_dual() {
        let s = sp(1);
        assert_eq!(s.form(1, 2).unwrap(), 1);
        assert_eq!(s.form(2, 1).unwrap(), -1);
        assert_eq!(s.form(1, 1).unwrap(), 0);
        assert!(s.form(0, 1).is_err());
        assert_eq!(sp(2).dual(3).unwrap(), (2, -1));
        for m in 1..=3 {
            let s = sp(m);
            // J = sum_{i<=m} E_{i,i'} - sum_{i>m} E_{i,i'}
            let mut j = vec![vec![0; 2 * m]; 2 * m];
            for i in 1..=2 * m {
                j[i - 1][2 * m - i] = if i <= m { 1 } else { -1 };
            }
            assert_eq!(s.gram_matrix(), j);
            for i in 1..=2 * m {
                for k in 1..=2 * m {
                    let (d, sign) = s.dual(k).unwrap();
                    assert_eq!(sign * s.form(i, d).unwrap(), (i == k) as i64);
                }
            }
        }
    }

    #[test]
    fn generator_examples() {
        let v = basis(1, &[1, 2]);
        assert_eq!(act_generator(&v, GenKind::S, 1).unwrap(), basis(1, &[2, 1]).scale(&-1));
        assert!(act_generator(&basis(1, &[1, 1]), GenKind::E, 1).unwrap().is_zero());
        let expected = basis(1, &[1, 2]).sub(&basis(1, &[2, 1])).unwrap().scale(&-1);
        assert_eq!(act_generator(&v, GenKind::E, 1).unwrap(), expected);
        assert!(act_generator(&v, GenKind::S, 2).is_err());
    }

    #[test]
    fn element_action_examples() {
        let q = Rationals;
        for m in 1..=2 {
            let a = alpha(q, sp(m));
            let e1 = AlgebraElement::from_diagram(q, q.from_i64(-2 * m as i64), generator(GenKind::E, 1, 2).unwrap());
            assert_eq!(act_element(&a, &e1).unwrap(), a.scale(&q.from_i64(-2 * m as i64)));
            let id = AlgebraElement::identity(q, q.from_i64(-2 * m as i64), 2);
            assert_eq!(act_element(&a, &id).unwrap(), a);
            let wrong = AlgebraElement::identity(q, q.from_i64(5), 2);
            assert_eq!(act_element(&a, &wrong), Err(TensorError::DeltaMismatch));
        }
    }

    fn representation_property<F: Field>(field: F, m: usize, n: usize) {
        let delta = field.from_i64(-2 * m as i64);
        let all = all_diagrams(n);
        for idx in all_indices(2 * m, n) {
            let v = TensorVector::basis(field.clone(), sp(m), &idx).unwrap();
            let images: Vec<_> = all.iter().map(|d| act_diagram(&v, d).unwrap()).collect();
            for (i, d1) in all.iter().enumerate() {
                for d2 in &all {
                    let (d, loops) = compose(d1, d2).unwrap();
                    let lhs = act_diagram(&images[i], d2).unwrap();
                    let rhs = act_diagram(&v, &d).unwrap().scale(&field.pow(&delta, loops as u32));
                    assert_eq!(lhs, rhs, "{d1} {d2} {idx:?}");
                }
            }
        }
    }

    #[test]
    fn action_is_a_representation() {
        representation_property(Rationals, 1, 3);
        representation_property(Rationals, 2, 3);
        representation_property(PrimeField::new(2).unwrap(), 1, 3);
        representation_property(PrimeField::new(3).unwrap(), 2, 2);
    }

    #[test]
    fn action_is_a_representation_n4() {
        representation_property(Rationals, 1, 4);
        representation_property(PrimeField::new(5).unwrap(), 1, 4);
    }

    #[test]
    fn relations_hold_on_tensors() {
        for m in 1..=2 {
            for n in 2..=4 {
                for rel in presentation_relations(n) {
                    assert!(relation_holds_on_tensors(&Integers, sp(m), n, &rel).unwrap(), "{rel:?}");
                }
            }
        }
    }

    #[test]
    fn contraction_examples() {
        let v = basis(1, &[1, 2]);
        assert_eq!(contraction(&v, 1, 2).unwrap(), basis(1, &[]));
        let empty = basis(1, &[]);
        assert_eq!(expansion(&empty, 1, 2).unwrap(), alpha(Integers, sp(1)));
        assert!(contraction(&v, 2, 2).is_err());
        assert!(contraction(&v, 1, 3).is_err());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]
        #[test]
        fn e_st_is_contract_then_expand(seed in proptest::prelude::any::<u64>(), m in 1usize..=2) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = random_vector(&Integers, m, 4, &mut rng);
            for s in 1..=4 {
                for t in s + 1..=4 {
                    let lhs = act_diagram(&v, &e_st(s, t, 4).unwrap()).unwrap();
                    let rhs = expansion(&contraction(&v, s, t).unwrap(), s, t).unwrap().scale(&-1);
                    proptest::prop_assert_eq!(lhs, rhs, "({},{})", s, t);
                }
            }
        }
    }

    #[test]
    fn bilinear_examples() {
        assert_eq!(bilinear(&basis(1, &[1, 2]), &basis(1, &[2, 1])).unwrap(), -1);
        assert!(bilinear(&basis(1, &[1, 2]), &basis(1, &[1])).is_err());

        let idx = all_indices(2, 3);
        let rows: Vec<Vec<i64>> = idx
            .iter()
            .map(|a| idx.iter().map(|b| bilinear(&basis(1, a), &basis(1, b)).unwrap()).collect())
            .collect();
        assert_eq!(ExactMatrix::from_i64(Rationals, &rows).rank(), 8);
    }

    #[test]
    fn form_is_invariant_under_star() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let all = all_diagrams(3);
        for _ in 0..30 {
            let v = random_vector(&Integers, 1, 3, &mut rng);
            let w = random_vector(&Integers, 1, 3, &mut rng);
            let x = &all[rng.gen_range(0..all.len())];
            let lhs = bilinear(&act_diagram(&v, x).unwrap(), &w).unwrap();
            let rhs = bilinear(&v, &act_diagram(&w, &star(x)).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{x}");
        }
    }

    #[test]
    fn distinguished_vectors() {
        let a = alpha(Integers, sp(1));
        assert_eq!(a, basis(1, &[1, 2]).sub(&basis(1, &[2, 1])).unwrap());
        assert_eq!(z_vector(Integers, sp(1), 0, &Partition::new(vec![2])).unwrap(), basis(1, &[1, 1]));
        for m in 2..=3 {
            let z = z_vector(Integers, sp(m), 0, &Partition::new(vec![1, 1])).unwrap();
            assert_eq!(z, basis(m, &[1, 2]).sub(&basis(m, &[2, 1])).unwrap());
        }
        // z(0,(2,1)) = v_1 v_1 v_2 . w x_{(2,1)} with w = (1)(2 3)
        let z = z_vector(Integers, sp(2), 0, &Partition::new(vec![2, 1])).unwrap();
        let expected = basis(2, &[1, 2, 1]).sub(&basis(2, &[2, 1, 1])).unwrap().scale(&-1);
        assert_eq!(z, expected);
        assert!(v_lambda(Integers, sp(1), &Partition::new(vec![1, 1])).is_err());
    }

    #[test]
    fn z_vectors_are_nonzero() {
        for m in 1..=3 {
            for n in 0..=6 {
                for g in 0..=n / 2 {
                    for lambda in crate::characters::partitions_of(n - 2 * g, m) {
                        let z = z_vector(Integers, sp(m), g, &lambda).unwrap();
                        assert!(!z.is_zero(), "m={m} g={g} {lambda}");
                        assert_eq!(z.n(), n);
                    }
                }
            }
        }
    }

    #[test]
    fn weights() {
        assert_eq!(weight_of(&sp(2), &[1, 1]), vec![2, 0]);
        assert_eq!(weight_of(&sp(1), &[1, 2]), vec![0]);
        assert_eq!(weight_subspace(&sp(1), 2, &[0]), vec![vec![1, 2], vec![2, 1]]);
        for idx in all_indices(4, 3) {
            for j in 1..3 {
                for (out, _) in generator_on_index(&sp(2), &idx, GenKind::S, j)
                    .into_iter()
                    .chain(generator_on_index(&sp(2), &idx, GenKind::E, j))
                {
                    assert_eq!(weight_of(&sp(2), &out), weight_of(&sp(2), &idx));
                }
            }
        }
        let wb = WeightBlocks::new(sp(2), 3);
        assert_eq!(wb.total_dim(), 64);
        assert_eq!(wb.weights().map(|w| wb.block_dim(w)).sum::<usize>(), 64);
    }

    #[test]
    fn text_format() {
        let v = TensorVector::from_terms(
            Rationals,
            sp(2),
            3,
            [(vec![2, 1, 4], Rationals.from_i64(-1)), (vec![1, 2, 4], Rationals.one())],
        )
        .unwrap();
        assert_eq!(v.to_string(), "m=2;n=3;{(1,2,4): 1/1, (2,1,4): -1/1}");
        let f5 = PrimeField::new(5).unwrap();
        let w = TensorVector::basis(f5, sp(1), &[1]).unwrap().scale(&4);
        assert_eq!(w.to_string(), "m=1;n=1;{(1): 4 (mod 5)}");
    }
}
