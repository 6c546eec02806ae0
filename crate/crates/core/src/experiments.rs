//! Verification checks tying the layers together: ideal images, partially
//! harmonic tensors, maximal vectors, commutants and the quantized layer,
//! each packaged as a [`CheckResult`] with an independently computed
//! expected value.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bmw::{
    brauer_matrix, check_bmw_relations, phi_c, specialize_vector, z_q, BmwGen, WordOrder,
};
use crate::characters::{
    dim_weyl, partitions_of, pi_f, standard_tableaux_count, updown_count, CharacterError,
    Partition,
};
use crate::diagrams::{
    all_diagrams, diagram_to_word, double_factorial_odd, e_st, ideal_basis, presentation_relations,
    relation_holds_in_diagrams, w_lambda, BrauerDiagram, DiagramError, GenKind, RelCoef,
    RelationInstance,
};
use crate::hyperalg::{hom_dimension, maximal_vectors, HyperalgError, Subquotient};
use crate::linalg::{
    gram_rank, kernel, sparse_from_dense, ExactMatrix, LinalgError, SparseEchelon, SparseRow,
    Subspace,
};
use crate::scalars::{Field, FieldSpec, Integers, Ring};
use crate::tensor::{
    act_diagram, all_indices, generator_on_index, permutation_on_index, weight_of, z_vector,
    GradedSubspace, SymplecticSpace, TensorError, TensorIndex, Weight, WeightBlocks,
};
use crate::with_field;

/// Default cap on `(2m)^n`.
pub const DEFAULT_BUDGET: u64 = 5000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExperimentError {
    #[error("budget exceeded: (2m)^n = {size} > {budget}")]
    Budget { size: u128, budget: u64 },
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Hyperalg(#[from] HyperalgError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Character(#[from] CharacterError),
}

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A published result.
    Published,
    /// Computed by an independent route (characters, counting).
    Derived,
    /// Immediate from the definitions.
    Trivial,
    /// Reported only; never asserted.
    Exploratory,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CachedMarker {
    Cached,
}

/// Wall time of a check, or a marker when it was served from a cache.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Timing {
    Millis(u64),
    Cached(CachedMarker),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub params: Value,
    pub expected: Value,
    pub expected_provenance: Provenance,
    pub computed: Value,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub millis: Timing,
}

impl CheckResult {
    fn new(
        check: &str,
        params: Value,
        expected: Value,
        provenance: Provenance,
        computed: Value,
        pass: bool,
        witness: Option<String>,
        start: Instant,
    ) -> Self {
        CheckResult {
            check: check.to_string(),
            params,
            expected,
            expected_provenance: provenance,
            computed,
            pass,
            witness,
            millis: Timing::Millis(start.elapsed().as_millis() as u64),
        }
    }
}

/// Deliberate corruption for exercising the failure path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    WrongDelta,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub suite: String,
    pub m: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<usize>,
    pub fields: Vec<FieldSpec>,
    pub budget: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
}

impl ExperimentSpec {
    pub fn new(suite: &str, m: usize, n: usize, fields: Vec<FieldSpec>) -> Self {
        ExperimentSpec {
            suite: suite.to_string(),
            m,
            n,
            f: None,
            fields,
            budget: DEFAULT_BUDGET,
            fault: None,
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.m == 0 {
            return Err(ExperimentError::Invalid("m must be at least 1".into()));
        }
        if self.n == 0 {
            return Err(ExperimentError::Invalid("n must be at least 1".into()));
        }
        if let Some(f) = self.f {
            if 2 * f > self.n {
                return Err(ExperimentError::Invalid(format!("f = {f} exceeds n/2 for n = {}", self.n)));
            }
        }
        if self.fields.is_empty() {
            return Err(ExperimentError::Invalid("no fields configured".into()));
        }
        check_budget(self.m, self.n, self.budget)
    }
}

pub fn check_budget(m: usize, n: usize, budget: u64) -> Result<(), ExperimentError> {
    let size = (2 * m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(ExperimentError::Budget { size, budget });
    }
    Ok(())
}

fn params(m: usize, n: usize) -> serde_json::Map<String, Value> {
    let mut p = serde_json::Map::new();
    p.insert("m".into(), json!(m));
    p.insert("n".into(), json!(n));
    p
}

fn params_f(m: usize, n: usize, f: usize, field: FieldSpec) -> Value {
    let mut p = params(m, n);
    p.insert("f".into(), json!(f));
    p.insert("field".into(), json!(field.to_string()));
    Value::Object(p)
}

// ---------------------------------------------------------------------------
// Subspaces of V^{(x)n}

/// All sets of `k` disjoint pairs `(s, t)`, `s < t`, of 0-based positions.
pub fn partial_matchings(n: usize, k: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(n: usize, k: usize, start: usize, used: &mut Vec<bool>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..n {
            if used[s] {
                continue;
            }
            used[s] = true;
            for t in s + 1..n {
                if used[t] {
                    continue;
                }
                used[t] = true;
                cur.push((s, t));
                go(n, k, s + 1, used, cur, out);
                cur.pop();
                used[t] = false;
            }
            used[s] = false;
        }
    }
    let mut out = Vec::new();
    if 2 * k <= n {
        go(n, k, 0, &mut vec![false; n], &mut Vec::new(), &mut out);
    }
    out
}

/// Kernel of a stack of sparse rows over `dim` columns.
fn joint_kernel<F: Field>(field: &F, dim: usize, rows: impl IntoIterator<Item = SparseRow<F::Elem>>) -> Subspace<F> {
    let mut ech = SparseEchelon::new(field.clone(), dim);
    for r in rows {
        if !r.is_empty() {
            ech.insert(r);
        }
    }
    if ech.rank() == 0 {
        return Subspace::full(field.clone(), dim);
    }
    let rowspace = ech.into_subspace();
    let mat = ExactMatrix::from_rows(field.clone(), dim, rowspace.basis().to_vec())
        .expect("echelon rows have the ambient width");
    kernel(&mat)
}

type BasisOp<'a> = Box<dyn Fn(&[usize]) -> Vec<(TensorIndex, i64)> + 'a>;

/// Joint kernel, block by block, of a family of integer basis maps out of
/// `V^{(x)n}` (images may live in any tensor power).
fn graded_kernel<F: Field>(field: &F, wb: &WeightBlocks, ops: &[BasisOp<'_>]) -> GradedSubspace<F> {
    let mut blocks = BTreeMap::new();
    for w in wb.weights() {
        let members = wb.block(w);
        let mut rows: BTreeMap<(usize, TensorIndex), SparseRow<F::Elem>> = BTreeMap::new();
        for (p, idx) in members.iter().enumerate() {
            for (k, op) in ops.iter().enumerate() {
                for (img, c) in op(idx) {
                    let x = field.from_i64(c);
                    if !field.is_zero(&x) {
                        rows.entry((k, img)).or_default().push((p, x));
                    }
                }
            }
        }
        blocks.insert(w.clone(), joint_kernel(field, members.len(), rows.into_values()));
    }
    GradedSubspace::from_blocks(blocks)
}

fn contraction_op<'a>(space: SymplecticSpace, pairs: &'a [(usize, usize)]) -> BasisOp<'a> {
    Box::new(move |idx: &[usize]| {
        let mut c = 1;
        for &(s, t) in pairs {
            c *= space.form_unchecked(idx[s], idx[t]);
            if c == 0 {
                return Vec::new();
            }
        }
        let rest: TensorIndex = idx
            .iter()
            .enumerate()
            .filter(|(p, _)| !pairs.iter().any(|&(s, t)| s == *p || t == *p))
            .map(|(_, &x)| x)
            .collect();
        vec![(rest, c)]
    })
}

/// Precomputed loop-free normal form of a diagram, applied to basis tensors.
fn diagram_op<'a>(space: SymplecticSpace, d: &BrauerDiagram) -> BasisOp<'a> {
    let (s1, f, s2) = diagram_to_word(d);
    Box::new(move |idx: &[usize]| {
        let (first, sign) = permutation_on_index(idx, &s1);
        let mut cur: Vec<(TensorIndex, i64)> = vec![(first, sign)];
        for r in 0..f {
            let mut next = Vec::new();
            for (x, c) in cur {
                for (y, k) in generator_on_index(&space, &x, GenKind::E, 2 * r + 1) {
                    next.push((y, c * k));
                }
            }
            cur = next;
        }
        cur.into_iter()
            .map(|(x, c)| {
                let (y, s) = permutation_on_index(&x, &s2);
                (y, c * s)
            })
            .collect()
    })
}

/// `∩_P Ker C_P` over all sets `P` of `k` disjoint position pairs.
pub fn contraction_kernel<F: Field>(field: &F, wb: &WeightBlocks, k: usize) -> GradedSubspace<F> {
    let matchings = partial_matchings(wb.n(), k);
    let ops: Vec<BasisOp<'_>> = matchings.iter().map(|p| contraction_op(wb.space(), p)).collect();
    graded_kernel(field, wb, &ops)
}

/// Vectors killed by every diagram in `diagrams`.
pub fn diagram_kernel<F: Field>(field: &F, wb: &WeightBlocks, diagrams: &[BrauerDiagram]) -> GradedSubspace<F> {
    let ops: Vec<BasisOp<'_>> = diagrams.iter().map(|d| diagram_op(wb.space(), d)).collect();
    graded_kernel(field, wb, &ops)
}

/// `V^{(x)n} B^(f)`: spanned by `alpha` placed on any `f` disjoint position
/// pairs, with arbitrary basis vectors on the remaining positions.
pub fn ideal_image<F: Field>(field: &F, wb: &WeightBlocks, f: usize) -> GradedSubspace<F> {
    if f == 0 {
        return GradedSubspace::full(field, wb);
    }
    let space = wb.space();
    let n = wb.n();
    let mut ech: BTreeMap<Weight, SparseEchelon<F>> = wb
        .weights()
        .map(|w| (w.clone(), SparseEchelon::new(field.clone(), wb.block_dim(w))))
        .collect();
    for pairs in partial_matchings(n, f) {
        let free: Vec<usize> = (0..n)
            .filter(|p| !pairs.iter().any(|&(s, t)| s == *p || t == *p))
            .collect();
        for rest in all_indices(space.dim(), free.len()) {
            let w = weight_of(&space, &rest);
            let mut base = vec![0; n];
            for (&p, &x) in free.iter().zip(&rest) {
                base[p] = x;
            }
            let mut terms = vec![(base, 1i64)];
            for &(s, t) in &pairs {
                let mut next = Vec::with_capacity(terms.len() * space.dim());
                for (idx, c) in &terms {
                    for k in 1..=space.dim() {
                        let mut idx = idx.clone();
                        idx[s] = k;
                        idx[t] = space.prime(k);
                        next.push((idx, c * space.epsilon(k)));
                    }
                }
                terms = next;
            }
            let mut row: SparseRow<F::Elem> = terms
                .into_iter()
                .map(|(idx, c)| (wb.local_index(&idx), field.from_i64(c)))
                .filter(|(_, x)| !field.is_zero(x))
                .collect();
            row.sort_by_key(|(p, _)| *p);
            ech.get_mut(&w).expect("weight of a basis tensor").insert(row);
        }
    }
    GradedSubspace::from_blocks(ech.into_iter().map(|(w, e)| (w, e.into_subspace())).collect())
}

/// `HT_f`: vectors of `V^{(x)n} B^(f)` killed by `B^(f+1)`. A diagram with
/// top pairs `P` acts as `C_P` followed by an injective map, so the
/// constraints are the contractions on `f+1` pairs.
pub fn harmonic_space<F: Field>(field: &F, wb: &WeightBlocks, f: usize) -> Result<GradedSubspace<F>, ExperimentError> {
    let top = ideal_image(field, wb, f);
    if 2 * (f + 1) > wb.n() {
        return Ok(top);
    }
    Ok(top.intersect(&contraction_kernel(field, wb, f + 1))?)
}

/// Rank of the product form between two graded subspaces; weight `mu`
/// pairs with weight `-mu`.
pub fn pairing_rank<F: Field>(wb: &WeightBlocks, s: &GradedSubspace<F>, t: &GradedSubspace<F>) -> Result<usize, ExperimentError> {
    let space = wb.space();
    let mut total = 0;
    for (w, sb) in s.blocks() {
        if sb.dim() == 0 {
            continue;
        }
        let neg: Weight = w.iter().map(|x| -x).collect();
        let tb = t.block(&neg);
        let dual: Vec<(usize, i64)> = wb
            .block(w)
            .iter()
            .map(|idx| {
                let d: TensorIndex = idx.iter().map(|&i| space.prime(i)).collect();
                let sign = idx.iter().map(|&i| space.epsilon(i)).product();
                (wb.local_index(&d), sign)
            })
            .collect();
        let field = sb.field().clone();
        total += gram_rank(sb, tb, |a, b| {
            let mut acc = field.zero();
            for (p, &(q, sign)) in dual.iter().enumerate() {
                if !field.is_zero(&a[p]) && !field.is_zero(&b[q]) {
                    acc = field.add(&acc, &field.mul(&field.mul(&a[p], &b[q]), &field.from_i64(sign)));
                }
            }
            acc
        })?;
    }
    Ok(total)
}

/// `span{z(g, lambda) d : d a diagram}` inside the block of weight `lambda`.
pub fn z_span<F: Field>(field: &F, wb: &WeightBlocks, g: usize, lambda: &Partition) -> Result<Subspace<F>, ExperimentError> {
    let space = wb.space();
    let z = z_vector(field.clone(), space, g, lambda)?;
    let w = lambda.padded(space.m());
    let mut ech = SparseEchelon::new(field.clone(), wb.block_dim(&w));
    for d in all_diagrams(wb.n()) {
        let v = act_diagram(&z, &d)?;
        ech.insert(sparse_from_dense(field, &wb.to_local(&w, &v)));
    }
    Ok(ech.into_subspace())
}

/// `V^{(x)n} / V^{(x)n} B^(f)` for `f >= 1`; for `f = 0` the whole space.
pub fn quotient<F: Field>(field: &F, wb: &WeightBlocks, f: usize) -> Result<Subquotient<F>, ExperimentError> {
    if f == 0 {
        return Ok(Subquotient::full(field, wb));
    }
    Ok(Subquotient::new(GradedSubspace::full(field, wb), ideal_image(field, wb, f))?)
}

/// Dominant weights carried by [`quotient`].
pub fn quotient_support(n: usize, f: usize, m: usize) -> Vec<Partition> {
    let inner = if f == 0 { Vec::new() } else { pi_f(n, f, m) };
    pi_f(n, 0, m).into_iter().filter(|l| !inner.contains(l)).collect()
}

/// Matrices of every diagram on a subquotient, blocks flattened side by side.
fn diagram_operator_rows<F: Field>(field: &F, wb: &WeightBlocks, q: &Subquotient<F>) -> Result<Vec<SparseRow<F::Elem>>, ExperimentError> {
    let weights: Vec<Weight> = q.weights().filter(|w| q.block_dim(w) > 0).cloned().collect();
    let mut out = Vec::new();
    for d in all_diagrams(wb.n()) {
        let op = diagram_op(wb.space(), &d);
        let mut row = Vec::new();
        let mut offset = 0;
        for w in &weights {
            let dim = q.block_dim(w);
            let mat = q.induced(wb, w, w, &d.to_string(), &op)?;
            for (r, vals) in mat.iter().enumerate() {
                for (c, x) in vals.iter().enumerate() {
                    if !field.is_zero(x) {
                        row.push((offset + r * dim + c, x.clone()));
                    }
                }
            }
            offset += dim * dim;
        }
        out.push(row);
    }
    Ok(out)
}

/// Dimension of the span of the diagram operators on a subquotient.
pub fn diagram_image_rank<F: Field>(field: &F, wb: &WeightBlocks, q: &Subquotient<F>) -> Result<usize, ExperimentError> {
    let total: usize = q.weights().map(|w| q.block_dim(w).pow(2)).sum();
    let mut ech = SparseEchelon::new(field.clone(), total);
    for row in diagram_operator_rows(field, wb, q)? {
        ech.insert(row);
    }
    Ok(ech.rank())
}

/// Dimension of all linear endomorphisms of a subquotient commuting with
/// the generators `s_j`, `e_j` (not required to preserve weights).
pub fn diagram_commutant_dimension<F: Field>(field: &F, wb: &WeightBlocks, q: &Subquotient<F>) -> Result<usize, ExperimentError> {
    let n = wb.n();
    let space = wb.space();
    let weights: Vec<Weight> = q.weights().filter(|w| q.block_dim(w) > 0).cloned().collect();
    let mut gens: Vec<BTreeMap<Weight, Vec<Vec<F::Elem>>>> = Vec::new();
    for kind in [GenKind::S, GenKind::E] {
        for j in 1..n {
            let mut per = BTreeMap::new();
            for w in &weights {
                let m = q.induced(wb, w, w, "generator", |idx| generator_on_index(&space, idx, kind, j))?;
                per.insert(w.clone(), m);
            }
            gens.push(per);
        }
    }
    let mut total = 0;
    for mu in &weights {
        for nu in &weights {
            let (dm, dn) = (q.block_dim(mu), q.block_dim(nu));
            // unknown X: dn x dm, row-major; X A_mu - A_nu X = 0
            let mut ech = SparseEchelon::new(field.clone(), dn * dm);
            for g in &gens {
                let (a_mu, a_nu) = (&g[mu], &g[nu]);
                for r in 0..dn {
                    for c in 0..dm {
                        let mut row: BTreeMap<usize, F::Elem> = BTreeMap::new();
                        for s in 0..dm {
                            let a = &a_mu[s][c];
                            if !field.is_zero(a) {
                                let e = row.entry(r * dm + s).or_insert_with(|| field.zero());
                                *e = field.add(e, a);
                            }
                        }
                        for t in 0..dn {
                            let a = &a_nu[r][t];
                            if !field.is_zero(a) {
                                let e = row.entry(t * dm + c).or_insert_with(|| field.zero());
                                *e = field.sub(e, a);
                            }
                        }
                        let row: SparseRow<F::Elem> = row.into_iter().filter(|(_, x)| !field.is_zero(x)).collect();
                        if !row.is_empty() {
                            ech.insert(row);
                        }
                    }
                }
            }
            total += dn * dm - ech.rank();
        }
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Checks

/// `sum_{lambda in pi_f} updown(lambda, n) * dim(lambda)`.
pub fn predicted_ideal_dimension(m: usize, n: usize, f: usize) -> Result<u128, ExperimentError> {
    let mut total = 0;
    for l in pi_f(n, f, m) {
        total += updown_count(&l, n, m) * dim_weyl(&l, m)? as u128;
    }
    Ok(total)
}

fn word_on_index(space: &SymplecticSpace, idx: &[usize], word: &[(GenKind, usize)]) -> BTreeMap<TensorIndex, i64> {
    let mut cur = BTreeMap::from([(idx.to_vec(), 1i64)]);
    for &(kind, j) in word {
        let mut next = BTreeMap::new();
        for (x, c) in cur {
            for (y, k) in generator_on_index(space, &x, kind, j) {
                *next.entry(y).or_insert(0) += c * k;
            }
        }
        next.retain(|_, c| *c != 0);
        cur = next;
    }
    cur
}

/// gcd of all coefficients of `lhs - coef * rhs` over every basis tensor;
/// the relation holds over a field exactly when this vanishes there.
pub fn tensor_relation_residual(space: &SymplecticSpace, n: usize, rel: &RelationInstance, delta: i64) -> u64 {
    let coef = match rel.rhs_coef {
        RelCoef::One => 1,
        RelCoef::Delta => delta,
    };
    let mut g: u64 = 0;
    for idx in all_indices(space.dim(), n) {
        let mut diff = word_on_index(space, &idx, &rel.lhs);
        for (y, c) in word_on_index(space, &idx, &rel.rhs) {
            *diff.entry(y).or_insert(0) -= coef * c;
        }
        for c in diff.values() {
            g = num_integer::gcd(g, c.unsigned_abs());
        }
    }
    g
}

fn relation_label(rel: &RelationInstance) -> String {
    format!("{} at {:?}", rel.family, rel.indices)
}

/// Every defining relation, in the diagram algebra with loop parameter
/// `delta` and on `V^{(x)n}`, over each field.
pub fn check_presentation(m: usize, n: usize, fields: &[FieldSpec], fault: Option<Fault>) -> Result<Vec<CheckResult>, ExperimentError> {
    let space = SymplecticSpace::new(m)?;
    let delta = -2 * m as i64 + if fault == Some(Fault::WrongDelta) { 1 } else { 0 };
    let rels = presentation_relations(n);
    let start = Instant::now();
    let residuals: Vec<u64> = rels
        .iter()
        .map(|r| tensor_relation_residual(&space, n, r, delta))
        .collect();
    let shared = start.elapsed();
    let mut out = Vec::new();
    for &field in fields {
        let start = Instant::now() - shared;
        let mut diagram_ok = 0;
        let mut tensor_ok = 0;
        let mut witness = None;
        for (rel, &res) in rels.iter().zip(&residuals) {
            let in_diagrams = with_field!(field, |fld| {
                let d = fld.from_i64(delta);
                relation_holds_in_diagrams(&fld, &d, n, rel)?
            });
            let on_tensors = with_field!(field, |fld| fld.is_zero(&fld.from_i64(res as i64)));
            diagram_ok += in_diagrams as usize;
            tensor_ok += on_tensors as usize;
            if witness.is_none() && !(in_diagrams && on_tensors) {
                let place = match (in_diagrams, on_tensors) {
                    (false, false) => "diagrams and tensors",
                    (false, true) => "diagrams",
                    _ => "tensors",
                };
                witness = Some(format!("{} fails in {place} (delta = {delta})", relation_label(rel)));
            }
        }
        let total = rels.len();
        let mut p = params(m, n);
        p.insert("field".into(), json!(field.to_string()));
        p.insert("delta".into(), json!(delta));
        out.push(CheckResult::new(
            "presentation",
            Value::Object(p),
            json!({"diagrams": total, "tensors": total}),
            Provenance::Published,
            json!({"diagrams": diagram_ok, "tensors": tensor_ok}),
            diagram_ok == total && tensor_ok == total,
            witness,
            start,
        ));
    }
    Ok(out)
}

pub fn check_basis_count(n: usize) -> CheckResult {
    let start = Instant::now();
    let expected = double_factorial_odd(n);
    let computed = all_diagrams(n).len() as u128;
    CheckResult::new(
        "basis_count",
        json!({"n": n}),
        json!(expected),
        Provenance::Published,
        json!(computed),
        expected == computed,
        None,
        start,
    )
}

pub fn check_ideal_dimension(m: usize, n: usize, f: usize, field: FieldSpec) -> Result<CheckResult, ExperimentError> {
    let start = Instant::now();
    let expected = predicted_ideal_dimension(m, n, f)?;
    let wb = WeightBlocks::new(SymplecticSpace::new(m)?, n);
    let computed = with_field!(field, |fld| ideal_image(&fld, &wb, f).dim()) as u128;
    Ok(CheckResult::new(
        "ideal_dimension",
        params_f(m, n, f, field),
        json!(expected),
        Provenance::Derived,
        json!(computed),
        expected == computed,
        None,
        start,
    ))
}

/// Dimension identity and nondegenerate pairing for `HT_f`.
pub fn check_duality(m: usize, n: usize, f: usize, field: FieldSpec) -> Result<CheckResult, ExperimentError> {
    let start = Instant::now();
    let wb = WeightBlocks::new(SymplecticSpace::new(m)?, n);
    let (ht, top, next, rank) = with_field!(field, |fld| {
        let ht = harmonic_space(&fld, &wb, f)?;
        let top = ideal_image(&fld, &wb, f);
        let next = ideal_image(&fld, &wb, f + 1);
        let rank = pairing_rank(&wb, &ht, &top)?;
        (ht.dim(), top.dim(), next.dim(), rank)
    });
    let diff = top - next;
    Ok(CheckResult::new(
        "duality",
        params_f(m, n, f, field),
        json!({"dim_ht": diff, "pairing_rank": diff}),
        Provenance::Published,
        json!({"dim_ht": ht, "pairing_rank": rank, "dim_ideal_f": top, "dim_ideal_f1": next}),
        ht == diff && rank == diff,
        (ht != diff || rank != diff).then(|| {
            format!("over {field}: dim HT_{f} = {ht}, pairing rank {rank}, but {top} - {next} = {diff}")
        }),
        start,
    ))
}

/// `span{z(g, lambda) B_n}` against the maximal vectors of weight `lambda`.
pub fn check_maximal(m: usize, n: usize, g: usize, lambda: &Partition, field: FieldSpec) -> Result<CheckResult, ExperimentError> {
    if 2 * g + lambda.size() != n || lambda.len() > m {
        return Err(ExperimentError::Invalid(format!("(g, lambda) = ({g}, {lambda}) does not fit n = {n}, m = {m}")));
    }
    let start = Instant::now();
    let wb = WeightBlocks::new(SymplecticSpace::new(m)?, n);
    let (zdim, maxdim, equal) = with_field!(field, |fld| {
        let zs = z_span(&fld, &wb, g, lambda)?;
        let mv = maximal_vectors(&fld, &wb, &lambda.padded(m));
        (zs.dim(), mv.dim(), zs == mv)
    });
    let paths = updown_count(lambda, n, m);
    let mut expected = json!({"dim": paths, "equal": true});
    let mut pass = equal && zdim as u128 == paths && maxdim as u128 == paths;
    if g == 0 {
        let tab = standard_tableaux_count(&lambda.conjugate());
        expected["tableaux"] = json!(tab);
        pass &= tab == paths;
    }
    let mut p = params(m, n);
    p.insert("g".into(), json!(g));
    p.insert("lambda".into(), json!(lambda.to_string()));
    p.insert("field".into(), json!(field.to_string()));
    Ok(CheckResult::new(
        "maximal",
        Value::Object(p),
        expected,
        Provenance::Derived,
        json!({"dim_z_span": zdim, "dim_maximal": maxdim, "equal": equal}),
        pass,
        None,
        start,
    ))
}

/// `sum updown(lambda, n)^2` over the weights carried by the quotient.
pub fn predicted_commutant(m: usize, n: usize, f: usize) -> u128 {
    quotient_support(n, f, m).iter().map(|l| updown_count(l, n, m).pow(2)).sum()
}

pub fn check_surjectivity(m: usize, n: usize, f: usize, field: FieldSpec) -> Result<CheckResult, ExperimentError> {
    let start = Instant::now();
    let wb = WeightBlocks::new(SymplecticSpace::new(m)?, n);
    let (r1, r2) = with_field!(field, |fld| {
        let q = quotient(&fld, &wb, f)?;
        (diagram_image_rank(&fld, &wb, &q)?, hom_dimension(&fld, &wb, &q, &q)?)
    });
    let expected = predicted_commutant(m, n, f);
    Ok(CheckResult::new(
        "surjectivity",
        params_f(m, n, f, field),
        json!({"r1": expected, "r2": expected}),
        Provenance::Derived,
        json!({"r1": r1, "r2": r2}),
        r1 as u128 == expected && r2 as u128 == expected,
        None,
        start,
    ))
}

/// For `m >= n` all `(2n-1)!!` diagram matrices are independent.
pub fn check_injectivity(m: usize, n: usize, field: FieldSpec) -> Result<CheckResult, ExperimentError> {
    let start = Instant::now();
    let wb = WeightBlocks::new(SymplecticSpace::new(m)?, n);
    let rank = with_field!(field, |fld| diagram_image_rank(&fld, &wb, &Subquotient::full(&fld, &wb))?);
    let expected = double_factorial_odd(n);
    let mut p = params(m, n);
    p.insert("field".into(), json!(field.to_string()));
    Ok(CheckResult::new(
        "injectivity",
        Value::Object(p),
        json!(expected),
        Provenance::Published,
        json!(rank),
        rank as u128 == expected,
        None,
        start,
    ))
}

/// `(2m)^n = sum_lambda dim(lambda) * dim span{z(g, lambda) B_n}`.
pub fn check_decomposition_sum(m: usize, n: usize, field: FieldSpec) -> Result<CheckResult, ExperimentError> {
    let start = Instant::now();
    let wb = WeightBlocks::new(SymplecticSpace::new(m)?, n);
    let mut terms = Vec::new();
    let mut total: u128 = 0;
    for lambda in pi_f(n, 0, m) {
        let g = (n - lambda.size()) / 2;
        let zdim = with_field!(field, |fld| z_span(&fld, &wb, g, &lambda)?.dim()) as u128;
        let d = dim_weyl(&lambda, m)? as u128;
        terms.push(json!({"lambda": lambda.to_string(), "dim": d, "z_span": zdim}));
        total += d * zdim;
    }
    let expected = (2 * m as u128).pow(n as u32);
    let mut p = params(m, n);
    p.insert("field".into(), json!(field.to_string()));
    Ok(CheckResult::new(
        "decomposition_sum",
        Value::Object(p),
        json!(expected),
        Provenance::Trivial,
        json!({"total": total, "terms": terms}),
        total == expected,
        None,
        start,
    ))
}

/// Ideal image, harmonic space and quotient commutant dimensions agree
/// across all fields.
pub fn check_field_independence(m: usize, n: usize, f: usize, fields: &[FieldSpec]) -> Result<CheckResult, ExperimentError> {
    let start = Instant::now();
    let wb = WeightBlocks::new(SymplecticSpace::new(m)?, n);
    let mut per = serde_json::Map::new();
    let mut seen: Vec<[usize; 3]> = Vec::new();
    for &field in fields {
        let dims = with_field!(field, |fld| {
            let q = quotient(&fld, &wb, f)?;
            [
                ideal_image(&fld, &wb, f).dim(),
                harmonic_space(&fld, &wb, f)?.dim(),
                hom_dimension(&fld, &wb, &q, &q)?,
            ]
        });
        per.insert(field.to_string(), json!(dims));
        seen.push(dims);
    }
    let pass = seen.windows(2).all(|w| w[0] == w[1]);
    let mut p = params(m, n);
    p.insert("f".into(), json!(f));
    let expected = seen.first().map_or(Value::Null, |d| json!(d));
    Ok(CheckResult::new(
        "field_independence",
        Value::Object(p),
        expected,
        Provenance::Published,
        Value::Object(per),
        pass,
        None,
        start,
    ))
}

/// The fully harmonic tensors three ways: annihilator of `B^(1)`,
/// `∩ Ker C_{s,t}` and `∩ Ker e_{s,t}`.
pub fn check_harmonic_kernels(m: usize, n: usize, field: FieldSpec) -> Result<CheckResult, ExperimentError> {
    let start = Instant::now();
    let wb = WeightBlocks::new(SymplecticSpace::new(m)?, n);
    let (a, b, c, same) = with_field!(field, |fld| {
        let ideal = if n >= 2 { ideal_basis(n, 1)? } else { Vec::new() };
        let mut est = Vec::new();
        for s in 1..=n {
            for t in s + 1..=n {
                est.push(e_st(s, t, n)?);
            }
        }
        let a = diagram_kernel(&fld, &wb, &ideal);
        let b = contraction_kernel(&fld, &wb, 1);
        let c = diagram_kernel(&fld, &wb, &est);
        (a.dim(), b.dim(), c.dim(), a == b && b == c)
    });
    let mut p = params(m, n);
    p.insert("field".into(), json!(field.to_string()));
    Ok(CheckResult::new(
        "harmonic_kernels",
        Value::Object(p),
        json!({"equal": true}),
        Provenance::Published,
        json!({"annihilator": a, "contractions": b, "e_st": c, "equal": same}),
        same,
        None,
        start,
    ))
}

/// No nonzero equivariant maps from `V^{(x)n} B^(f)` to the quotient.
pub fn check_hom_vanishing(m: usize, n: usize, f: usize, field: FieldSpec) -> Result<CheckResult, ExperimentError> {
    if f == 0 {
        return Err(ExperimentError::Invalid("hom vanishing needs f >= 1".into()));
    }
    let start = Instant::now();
    let wb = WeightBlocks::new(SymplecticSpace::new(m)?, n);
    let dim = with_field!(field, |fld| {
        let source = Subquotient::new(ideal_image(&fld, &wb, f), GradedSubspace::zero(&fld, &wb))?;
        let target = quotient(&fld, &wb, f)?;
        hom_dimension(&fld, &wb, &source, &target)?
    });
    // pi_f and the quotient support are disjoint, so the character count is 0
    let overlap: u128 = pi_f(n, f, m)
        .iter()
        .filter(|l| quotient_support(n, f, m).contains(l))
        .map(|l| updown_count(l, n, m).pow(2))
        .sum();
    Ok(CheckResult::new(
        "hom_vanishing",
        params_f(m, n, f, field),
        json!(overlap),
        Provenance::Derived,
        json!(dim),
        dim as u128 == overlap,
        None,
        start,
    ))
}

/// Endomorphisms of the quotient commuting with the diagram action, per
/// field. Reported only.
pub fn check_psi_exploratory(m: usize, n: usize, f: usize, fields: &[FieldSpec]) -> Result<CheckResult, ExperimentError> {
    let start = Instant::now();
    let wb = WeightBlocks::new(SymplecticSpace::new(m)?, n);
    let mut per = serde_json::Map::new();
    for &field in fields {
        let d = with_field!(field, |fld| {
            let q = quotient(&fld, &wb, f)?;
            diagram_commutant_dimension(&fld, &wb, &q)?
        });
        per.insert(field.to_string(), json!(d));
    }
    let mut p = params(m, n);
    p.insert("f".into(), json!(f));
    Ok(CheckResult::new(
        "psi_exploratory",
        Value::Object(p),
        Value::Null,
        Provenance::Exploratory,
        Value::Object(per),
        true,
        None,
        start,
    ))
}

pub fn check_bmw_relations_result(m: usize, n: usize) -> CheckResult {
    let start = Instant::now();
    let rows = check_bmw_relations(m, n, WordOrder::RightAction);
    let ok = rows.iter().filter(|r| r.pass).count();
    let witness = rows.iter().find(|r| !r.pass).map(|r| r.to_string());
    CheckResult::new(
        "bmw_relations",
        Value::Object(params(m, n)),
        json!(rows.len()),
        Provenance::Published,
        json!(ok),
        ok == rows.len(),
        witness,
        start,
    )
}

/// `T_j -> -s_j` and `E_j -> e_j` at `q = 1`.
pub fn check_bmw_specialization(m: usize, n: usize) -> CheckResult {
    let start = Instant::now();
    let mut ok = 0;
    let mut witness = None;
    for j in 1..n {
        let mut minus_s = brauer_matrix(m, GenKind::S, j, n);
        minus_s.values_mut().for_each(|c| *c = -*c);
        for (gen, target) in [(BmwGen::T, minus_s), (BmwGen::E, brauer_matrix(m, GenKind::E, j, n))] {
            if phi_c(m, gen, j, n).specialize() == target {
                ok += 1;
            } else if witness.is_none() {
                witness = Some(format!("{gen:?}_{j}"));
            }
        }
    }
    let total = 2 * n.saturating_sub(1);
    CheckResult::new(
        "bmw_specialization",
        Value::Object(params(m, n)),
        json!(total),
        Provenance::Published,
        json!(ok),
        ok == total,
        witness,
        start,
    )
}

/// All `(g, lambda)` with `2g + |lambda| = n` and at most `m` rows.
pub fn z_parameters(m: usize, n: usize) -> Vec<(usize, Partition)> {
    (0..=n / 2)
        .flat_map(|g| partitions_of(n - 2 * g, m).into_iter().map(move |l| (g, l)))
        .collect()
}

/// `Z_q(g, lambda)` at `q = 1` against `z(g, lambda)`; with `signed` the
/// comparison is against `(-1)^{l(w_lambda)} z(g, lambda)`.
pub fn check_zq_specialization(m: usize, n: usize, signed: bool) -> Result<CheckResult, ExperimentError> {
    let start = Instant::now();
    let space = SymplecticSpace::new(m)?;
    let params_list = z_parameters(m, n);
    let mut ok = 0;
    let mut witness = None;
    for (g, lambda) in &params_list {
        let z = z_vector(Integers, space, *g, lambda)?;
        let sign = if signed && w_lambda(lambda).length() % 2 == 1 { -1 } else { 1 };
        let zq = specialize_vector(&z_q(m, *g, lambda)?);
        if zq == z.scale(&sign) {
            ok += 1;
        } else if witness.is_none() {
            witness = Some(format!("g={g} lambda={lambda}: got {zq}, want {}", z.scale(&sign)));
        }
    }
    Ok(CheckResult::new(
        if signed { "zq_specialization_signed" } else { "zq_specialization" },
        Value::Object(params(m, n)),
        json!(params_list.len()),
        if signed { Provenance::Derived } else { Provenance::Published },
        json!(ok),
        ok == params_list.len(),
        witness,
        start,
    ))
}

// ---------------------------------------------------------------------------
// Suites

/// `(id, description)` of every suite.
pub const SUITES: &[(&str, &str)] = &[
    ("presentation", "defining relations hold for diagrams and on tensors"),
    ("basis-count", "number of Brauer diagrams is (2n-1)!!"),
    ("ideal-dims", "dimension of V^n B^(f) from up-down counts"),
    ("duality", "partially harmonic tensors pair perfectly with the ideal subquotient"),
    ("maximal", "z-vectors generate the maximal vectors of each weight"),
    ("surjectivity", "diagram image on the quotient equals its commutant"),
    ("injectivity", "diagram matrices are independent when m >= n"),
    ("decomposition", "dimension bookkeeping over all dominant weights"),
    ("field-independence", "dimensions agree across fields"),
    ("harmonic-kernels", "three descriptions of harmonic tensors agree"),
    ("hom-vanishing", "no equivariant maps from the ideal image to the quotient"),
    ("bmw", "quantized relations and specialization at q = 1"),
    ("psi", "exploratory: quotient endomorphisms commuting with the diagrams"),
];

/// `(id, description)` of every check emitted by the suites.
pub const CHECKS: &[(&str, &str)] = &[
    ("presentation", "each defining relation of the Brauer algebra, as diagrams (loop parameter -2m) and as operators on V^n; expected = number of relation instances"),
    ("basis_count", "number of Brauer diagrams on n strands; expected = (2n-1)!!"),
    ("ideal_dimension", "dim V^n B^(f); expected = sum over pi_f of up-down count times Weyl dimension"),
    ("duality", "dim HT_f = dim V^n B^(f) - dim V^n B^(f+1), and the product form between HT_f and V^n B^(f) has rank dim HT_f"),
    ("maximal", "span of z(g,lambda) B_n equals the maximal vectors of weight lambda; dimension = up-down count (= standard tableaux of lambda' when g = 0)"),
    ("surjectivity", "rank of the diagram operators on V^n / V^n B^(f) equals the commutant dimension equals the sum of squared multiplicities"),
    ("injectivity", "for m >= n the diagram operators on V^n are linearly independent"),
    ("decomposition_sum", "(2m)^n = sum over dominant lambda of dim(lambda) * dim span z(g,lambda) B_n"),
    ("field_independence", "[dim ideal image, dim HT_f, commutant of quotient] identical over every field"),
    ("harmonic_kernels", "annihilator of B^(1) = intersection of Ker C_st = intersection of Ker e_st"),
    ("hom_vanishing", "equivariant maps V^n B^(f) -> V^n / V^n B^(f) vanish"),
    ("bmw_relations", "all eight BMW relation families as matrix identities over Z[q, q^-1]"),
    ("bmw_specialization", "phi(T_j), phi(E_j) at q = 1 equal the actions of -s_j, e_j"),
    ("zq_specialization", "Z_q(g,lambda) at q = 1 equals z(g,lambda) for every (g,lambda)"),
    ("zq_specialization_signed", "Z_q(g,lambda) at q = 1 equals (-1)^l(w_lambda) z(g,lambda)"),
    ("psi_exploratory", "dimension of the diagram commutant on the quotient per field; not asserted"),
];

pub fn suite_ids() -> Vec<&'static str> {
    SUITES.iter().map(|(id, _)| *id).collect()
}

pub fn describe_check(id: &str) -> Option<&'static str> {
    CHECKS.iter().find(|(c, _)| *c == id).map(|(_, d)| *d)
}

fn f_values(spec: &ExperimentSpec, min_f: usize) -> Vec<usize> {
    match spec.f {
        Some(f) if f >= min_f => vec![f],
        Some(_) => Vec::new(),
        None => (min_f..=spec.n / 2).collect(),
    }
}

/// Runs one suite (or `all`) and returns its results ordered by check id.
pub fn run_suite(spec: &ExperimentSpec) -> Result<Vec<CheckResult>, ExperimentError> {
    spec.validate()?;
    let ids: Vec<&str> = if spec.suite == "all" {
        suite_ids()
    } else if suite_ids().contains(&spec.suite.as_str()) {
        vec![spec.suite.as_str()]
    } else {
        return Err(ExperimentError::UnknownSuite(spec.suite.clone()));
    };
    let (m, n) = (spec.m, spec.n);
    let mut out = Vec::new();
    for id in ids {
        match id {
            "presentation" => out.extend(check_presentation(m, n, &spec.fields, spec.fault)?),
            "basis-count" => out.push(check_basis_count(n)),
            "ideal-dims" => {
                for f in f_values(spec, 0) {
                    for &field in &spec.fields {
                        out.push(check_ideal_dimension(m, n, f, field)?);
                    }
                }
            }
            "duality" => {
                for f in f_values(spec, 0) {
                    for &field in &spec.fields {
                        out.push(check_duality(m, n, f, field)?);
                    }
                }
            }
            "maximal" => {
                for (g, lambda) in z_parameters(m, n) {
                    for &field in &spec.fields {
                        out.push(check_maximal(m, n, g, &lambda, field)?);
                    }
                }
            }
            "surjectivity" => {
                for f in f_values(spec, 0) {
                    for &field in &spec.fields {
                        out.push(check_surjectivity(m, n, f, field)?);
                    }
                }
            }
            "injectivity" => {
                if m >= n {
                    for &field in &spec.fields {
                        out.push(check_injectivity(m, n, field)?);
                    }
                }
            }
            "decomposition" => {
                for &field in &spec.fields {
                    out.push(check_decomposition_sum(m, n, field)?);
                }
            }
            "field-independence" => {
                for f in f_values(spec, 0) {
                    out.push(check_field_independence(m, n, f, &spec.fields)?);
                }
            }
            "harmonic-kernels" => {
                for &field in &spec.fields {
                    out.push(check_harmonic_kernels(m, n, field)?);
                }
            }
            "hom-vanishing" => {
                for f in f_values(spec, 1) {
                    for &field in &spec.fields {
                        out.push(check_hom_vanishing(m, n, f, field)?);
                    }
                }
            }
            "bmw" => {
                if n >= 2 {
                    out.push(check_bmw_relations_result(m, n));
                    out.push(check_bmw_specialization(m, n));
                }
                out.push(check_zq_specialization(m, n, false)?);
                out.push(check_zq_specialization(m, n, true)?);
            }
            "psi" => {
                for f in f_values(spec, 0) {
                    out.push(check_psi_exploratory(m, n, f, &spec.fields)?);
                }
            }
            _ => unreachable!("suite ids are validated above"),
        }
    }
    out.sort_by(|a, b| a.check.cmp(&b.check));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::ideal_basis;
    use crate::scalars::{PrimeField, Rationals};
    use crate::tensor::{alpha, TensorVector};

    fn wb(m: usize, n: usize) -> WeightBlocks {
        WeightBlocks::new(SymplecticSpace::new(m).unwrap(), n)
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    const Q: FieldSpec = FieldSpec::Rationals;

    fn fields() -> Vec<FieldSpec> {
        FieldSpec::all_with_primes(&[2, 3, 5]).unwrap()
    }

    /// Span of `v_i d` over every basis tensor and every diagram of the ideal.
    fn ideal_image_brute<F: Field>(field: &F, wb: &WeightBlocks, f: usize) -> GradedSubspace<F> {
        let mut ech: BTreeMap<Weight, SparseEchelon<F>> = wb
            .weights()
            .map(|w| (w.clone(), SparseEchelon::new(field.clone(), wb.block_dim(w))))
            .collect();
        let ds = ideal_basis(wb.n(), f).unwrap();
        for w in wb.weights().cloned().collect::<Vec<_>>() {
            for idx in wb.block(&w).to_vec() {
                let v = TensorVector::basis(field.clone(), wb.space(), &idx).unwrap();
                for d in &ds {
                    let img = act_diagram(&v, d).unwrap();
                    ech.get_mut(&w).unwrap().insert(sparse_from_dense(field, &wb.to_local(&w, &img)));
                }
            }
        }
        GradedSubspace::from_blocks(ech.into_iter().map(|(w, e)| (w, e.into_subspace())).collect())
    }

    #[test]
    fn matchings_count() {
        assert_eq!(partial_matchings(4, 1).len(), 6);
        assert_eq!(partial_matchings(4, 2).len(), 3);
        assert_eq!(partial_matchings(5, 2).len(), 15);
        assert_eq!(partial_matchings(3, 2).len(), 0);
        assert_eq!(partial_matchings(3, 0), vec![Vec::<(usize, usize)>::new()]);
    }

    #[test]
    fn ideal_image_matches_brute_force() {
        for (m, n) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)] {
            let b = wb(m, n);
            for f in 0..=n / 2 {
                assert_eq!(ideal_image(&Rationals, &b, f), ideal_image_brute(&Rationals, &b, f), "m={m} n={n} f={f}");
                let f2 = PrimeField::new(2).unwrap();
                assert_eq!(ideal_image(&f2, &b, f), ideal_image_brute(&f2, &b, f));
            }
        }
    }

    #[test]
    fn harmonic_space_matches_full_ideal_annihilator() {
        for (m, n) in [(1, 3), (1, 4), (2, 3), (2, 4)] {
            let b = wb(m, n);
            for f in 0..n / 2 {
                let top = ideal_image(&Rationals, &b, f);
                let brute = top.intersect(&diagram_kernel(&Rationals, &b, &ideal_basis(n, f + 1).unwrap())).unwrap();
                assert_eq!(harmonic_space(&Rationals, &b, f).unwrap(), brute, "m={m} n={n} f={f}");
            }
        }
    }

    #[test]
    fn ideal_image_examples() {
        let b = wb(1, 2);
        let i = ideal_image(&Rationals, &b, 1);
        assert_eq!(i.dim(), 1);
        let a = alpha(Rationals, b.space());
        assert_eq!(i.tensors(&b), vec![a]);
        let b = wb(2, 4);
        assert_eq!(ideal_image(&Rationals, &b, 1).dim(), 88);
        assert_eq!(ideal_image(&Rationals, &b, 2).dim(), 3);
        assert_eq!(predicted_ideal_dimension(2, 4, 1).unwrap(), 6 * 10 + 5 * 5 + 3);
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic_space(&Rationals, &wb(1, 2), 0).unwrap().dim(), 3);
        assert_eq!(harmonic_space(&Rationals, &wb(2, 4), 1).unwrap().dim(), 85);
        let b = wb(1, 4);
        assert_eq!(harmonic_space(&Rationals, &b, 2).unwrap(), ideal_image(&Rationals, &b, 2));
    }

    #[test]
    fn ideal_chain_and_splitting() {
        for (m, n) in [(1, 2), (1, 4), (2, 3), (2, 4)] {
            let b = wb(m, n);
            for f in 0..n / 2 {
                let (a, c) = (ideal_image(&Rationals, &b, f + 1), ideal_image(&Rationals, &b, f));
                assert!(a.is_subspace_of(&c).unwrap());
                let h = harmonic_space(&Rationals, &b, f).unwrap();
                assert_eq!(h.intersect(&a).unwrap().dim(), 0);
                assert_eq!(h.sum(&a).unwrap().dim(), c.dim());
            }
        }
    }

    #[test]
    fn duality_examples() {
        let r = check_duality(1, 2, 0, Q).unwrap();
        assert!(r.pass);
        assert_eq!(r.computed["dim_ht"], 3);
        assert_eq!(r.computed["pairing_rank"], 3);
        let r = check_duality(2, 3, 1, Q).unwrap();
        assert!(r.pass);
        assert_eq!(r.computed["dim_ht"], 12);
        assert!(check_duality(1, 4, 1, FieldSpec::PrimeField(5)).unwrap().pass);
        assert!(check_duality(2, 4, 1, FieldSpec::PrimeField(7)).unwrap().pass);
    }

    #[test]
    fn duality_breaks_over_small_primes() {
        // <alpha, alpha> = 2 for m = 1, so the pairing on HT_1 = span(alpha) dies mod 2
        let r = check_duality(1, 2, 1, FieldSpec::PrimeField(2)).unwrap();
        assert_eq!(r.computed["dim_ht"], 1);
        assert_eq!(r.computed["pairing_rank"], 0);
        assert!(!r.pass);
        // the 2-pair contractions restricted to V^4 B^(1) lose rank mod 3 (m = 1) and mod 5 (m = 2)
        let r = check_duality(1, 4, 1, FieldSpec::PrimeField(3)).unwrap();
        assert_eq!(r.computed["dim_ht"], 10);
        assert_eq!(r.expected["dim_ht"], 9);
        let r = check_duality(2, 4, 1, FieldSpec::PrimeField(5)).unwrap();
        assert_eq!(r.computed["dim_ht"], 87);
        assert_eq!(r.expected["dim_ht"], 85);
    }

    #[test]
    fn maximal_examples() {
        let r = check_maximal(1, 3, 1, &p(&[1]), Q).unwrap();
        assert!(r.pass);
        assert_eq!(r.computed["dim_z_span"], 2);
        let r = check_maximal(2, 3, 0, &p(&[2, 1]), Q).unwrap();
        assert!(r.pass);
        assert_eq!(r.computed["dim_maximal"], 2);
        assert_eq!(r.expected["tableaux"], 2);
        for field in [FieldSpec::PrimeField(2), FieldSpec::PrimeField(3)] {
            for n in 1..=4 {
                for (g, l) in z_parameters(2, n) {
                    assert!(check_maximal(2, n, g, &l, field).unwrap().pass, "n={n} g={g} {l} {field}");
                }
            }
        }
    }

    #[test]
    fn surjectivity_examples() {
        let r = check_surjectivity(1, 2, 1, Q).unwrap();
        assert_eq!(r.computed, json!({"r1": 1, "r2": 1}));
        assert!(r.pass);
        let r = check_surjectivity(2, 3, 1, Q).unwrap();
        assert_eq!(r.computed, json!({"r1": 5, "r2": 5}));
        assert!(r.pass);
        let r = check_injectivity(2, 2, Q).unwrap();
        assert_eq!(r.computed, json!(3));
        assert!(r.pass);
    }

    #[test]
    fn decomposition_examples() {
        let r = check_decomposition_sum(2, 3, Q).unwrap();
        assert!(r.pass);
        assert_eq!(r.expected, json!(64));
        let r = check_decomposition_sum(1, 2, Q).unwrap();
        assert!(r.pass);
        let r = check_decomposition_sum(2, 4, Q).unwrap();
        assert!(r.pass);
        assert_eq!(r.expected, json!(256));
    }

    #[test]
    fn field_independence_examples() {
        let r = check_field_independence(1, 2, 1, &fields()).unwrap();
        assert!(r.pass);
        assert_eq!(r.expected[0], 1);
        assert!(check_field_independence(1, 4, 2, &fields()).unwrap().pass);
    }

    #[test]
    fn harmonic_kernels_and_hom_vanishing() {
        for field in fields() {
            for (m, n) in [(1, 2), (1, 3), (2, 3)] {
                assert!(check_harmonic_kernels(m, n, field).unwrap().pass);
            }
        }
        assert!(check_hom_vanishing(1, 2, 1, Q).unwrap().pass);
        assert!(check_hom_vanishing(2, 3, 1, Q).unwrap().pass);
    }

    #[test]
    fn presentation_and_fault() {
        let rs = check_presentation(2, 3, &fields(), None).unwrap();
        assert!(rs.iter().all(|r| r.pass));
        let rs = check_presentation(1, 2, &[Q], Some(Fault::WrongDelta)).unwrap();
        assert!(!rs[0].pass);
        assert!(rs[0].witness.as_deref().unwrap().contains("e_i^2"));
    }

    #[test]
    fn bmw_checks() {
        assert!(check_bmw_relations_result(1, 3).pass);
        assert!(check_bmw_specialization(2, 2).pass);
        assert!(check_zq_specialization(2, 3, true).unwrap().pass);
        // lambda = (2,1) has l(w_lambda) odd
        assert!(!check_zq_specialization(2, 3, false).unwrap().pass);
    }

    #[test]
    fn suites_and_budget() {
        let mut spec = ExperimentSpec::new("duality", 1, 2, vec![Q]);
        spec.f = Some(0);
        let rs = run_suite(&spec).unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].expected["dim_ht"], 3);
        let spec = ExperimentSpec::new("duality", 99, 2, vec![Q]);
        assert!(matches!(run_suite(&spec), Err(ExperimentError::Budget { .. })));
        let spec = ExperimentSpec::new("nope", 1, 2, vec![Q]);
        assert!(matches!(run_suite(&spec), Err(ExperimentError::UnknownSuite(_))));
        let spec = ExperimentSpec::new("all", 1, 2, vec![Q]);
        let rs = run_suite(&spec).unwrap();
        assert!(rs.windows(2).all(|w| w[0].check <= w[1].check));
        assert!(rs.iter().filter(|r| r.check != "zq_specialization").all(|r| r.pass));
        for id in ["presentation", "duality", "psi_exploratory", "bmw_relations"] {
            assert!(describe_check(id).is_some());
        }
    }
}
