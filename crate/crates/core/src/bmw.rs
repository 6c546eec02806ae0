//! The q-deformed layer: the matrices `beta'`, `gamma'` over `Z[q, q^-1]`
//! acting on `V^{(x)n}`, the eight BMW relation families, the Hecke matrix
//! on `Vhat^{(x)n}` (`Vhat = span(v_1..v_m)`), the vectors `alpha_q` and
//! `Z_{g,lambda}`, and specialization at `q = 1`.
//!
//! Matrices use column convention (column `c` is the image of basis vector
//! `c`); `v_a (x) v_b` has index `(a-1) * 2m + (b-1)`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::characters::Partition;
use crate::diagrams::{w_lambda, young_subgroup, GenKind, Permutation};
use crate::scalars::{LaurentPoly, LaurentRing};
use crate::tensor::{
    all_indices, generator_on_index, v_lambda, SymplecticSpace, TensorError, TensorIndex,
    TensorVector,
};

/// `rho = (m, ..., 1, -1, ..., -m)` and `eps_i = sign(rho_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoData {
    pub rho: Vec<i64>,
    pub eps: Vec<i64>,
}

impl RhoData {
    pub fn new(m: usize) -> Self {
        let m = m as i64;
        let rho: Vec<i64> = (1..=m).rev().chain((1..=m).map(|x| -x)).collect();
        let eps = rho.iter().map(|r| r.signum()).collect();
        RhoData { rho, eps }
    }

    /// 1-based accessors.
    pub fn rho(&self, i: usize) -> i64 {
        self.rho[i - 1]
    }
    pub fn eps(&self, i: usize) -> i64 {
        self.eps[i - 1]
    }
}

/// A sparse square matrix over `Z[q, q^-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(dim: usize) -> Self {
        LaurentMatrix {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut out = Self::zero(dim);
        for i in 0..dim {
            out.add_entry(i, i, &LaurentPoly::constant(1));
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> LaurentPoly {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &LaurentPoly)> {
        self.entries.iter()
    }

    pub fn add_entry(&mut self, r: usize, c: usize, x: &LaurentPoly) {
        if x.is_zero() {
            return;
        }
        let e = self.entries.entry((r, c)).or_insert_with(LaurentPoly::zero);
        *e = e.add(x);
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(r, c), x) in &other.entries {
            out.add_entry(r, c, x);
        }
        out
    }

    pub fn scale(&self, k: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.dim);
        for (&(r, c), x) in &self.entries {
            out.add_entry(r, c, &x.mul(k));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    /// Ordinary matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut by_row: BTreeMap<usize, Vec<(usize, &LaurentPoly)>> = BTreeMap::new();
        for (&(r, c), x) in &other.entries {
            by_row.entry(r).or_default().push((c, x));
        }
        let mut out = Self::zero(self.dim);
        for (&(r, k), x) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(c, y) in row {
                    out.add_entry(r, c, &x.mul(y));
                }
            }
        }
        out
    }

    /// Entrywise value at `q = 1`.
    pub fn specialize(&self) -> BTreeMap<(usize, usize), i64> {
        self.entries
            .iter()
            .map(|(&k, x)| (k, x.specialize_q1()))
            .filter(|(_, x)| *x != 0)
            .collect()
    }

    /// First entry where the two matrices differ, rendered for reports.
    pub fn first_difference(&self, other: &Self) -> Option<String> {
        let keys: std::collections::BTreeSet<_> =
            self.entries.keys().chain(other.entries.keys()).collect();
        keys.into_iter().find_map(|&(r, c)| {
            let (a, b) = (self.get(r, c), other.get(r, c));
            (a != b).then(|| format!("entry ({r},{c}): {a} vs {b}"))
        })
    }
}

fn qpow(e: i64) -> LaurentPoly {
    LaurentPoly::monomial(1, e as i32)
}

fn q_minus_qinv() -> LaurentPoly {
    LaurentPoly::from_terms([(1, 1), (-1, -1)])
}

/// Adds `c * E_{i,j} (x) E_{k,l}` (1-based) to a `4m^2` matrix.
fn add_unit_pair(mat: &mut LaurentMatrix, d: usize, (i, j, k, l): (usize, usize, usize, usize), c: &LaurentPoly) {
    let row = (i - 1) * d + (k - 1);
    let col = (j - 1) * d + (l - 1);
    mat.add_entry(row, col, c);
}

/// The matrix of `T` on `V (x) V`.
pub fn beta_prime(m: usize) -> LaurentMatrix {
    let space = SymplecticSpace::new(m).expect("m >= 1");
    let rd = RhoData::new(m);
    let d = 2 * m;
    let p = |i| space.prime(i);
    let mut mat = LaurentMatrix::zero(d * d);
    for i in 1..=d {
        add_unit_pair(&mut mat, d, (i, i, i, i), &qpow(1));
        add_unit_pair(&mut mat, d, (i, p(i), p(i), i), &qpow(-1));
        for j in 1..=d {
            if j != i && j != p(i) {
                add_unit_pair(&mut mat, d, (i, j, j, i), &LaurentPoly::constant(1));
            }
        }
        for j in i + 1..=d {
            add_unit_pair(&mut mat, d, (i, i, j, j), &q_minus_qinv());
            let c = qpow(rd.rho(j) - rd.rho(i))
                .mul(&q_minus_qinv())
                .mul(&LaurentPoly::constant(-rd.eps(i) * rd.eps(j)));
            add_unit_pair(&mut mat, d, (i, p(j), p(i), j), &c);
        }
    }
    mat
}

/// The matrix of `E` on `V (x) V`.
pub fn gamma_prime(m: usize) -> LaurentMatrix {
    let space = SymplecticSpace::new(m).expect("m >= 1");
    let rd = RhoData::new(m);
    let d = 2 * m;
    let mut mat = LaurentMatrix::zero(d * d);
    for i in 1..=d {
        for j in 1..=d {
            let c = qpow(rd.rho(j) - rd.rho(i)).mul(&LaurentPoly::constant(rd.eps(i) * rd.eps(j)));
            add_unit_pair(&mut mat, d, (i, space.prime(j), space.prime(i), j), &c);
        }
    }
    mat
}

/// Index of a tensor (1-based entries in `1..=base`) in the standard basis.
pub fn tensor_code(idx: &[usize], base: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * base + (i - 1))
}

/// `Id^{(x)(j-1)} (x) local (x) Id^{(x)(n-j-1)}` on a space with `base`
/// basis vectors per factor.
pub fn place_local(local: &LaurentMatrix, base: usize, j: usize, n: usize) -> LaurentMatrix {
    assert!(j >= 1 && j < n, "position out of range");
    let mut by_col: BTreeMap<usize, Vec<(usize, &LaurentPoly)>> = BTreeMap::new();
    for (&(r, c), x) in local.entries() {
        by_col.entry(c).or_default().push((r, x));
    }
    let mut out = LaurentMatrix::zero(base.pow(n as u32));
    for idx in all_indices(base, n) {
        let col = tensor_code(&idx, base);
        let lc = (idx[j - 1] - 1) * base + (idx[j] - 1);
        for &(lr, x) in by_col.get(&lc).into_iter().flatten() {
            let mut out_idx = idx.clone();
            out_idx[j - 1] = lr / base + 1;
            out_idx[j] = lr % base + 1;
            out.add_entry(tensor_code(&out_idx, base), col, x);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BmwGen {
    T,
    E,
}

/// `phi_C(T_j)` or `phi_C(E_j)` on `V^{(x)n}`.
pub fn phi_c(m: usize, gen: BmwGen, j: usize, n: usize) -> LaurentMatrix {
    let local = match gen {
        BmwGen::T => beta_prime(m),
        BmwGen::E => gamma_prime(m),
    };
    place_local(&local, 2 * m, j, n)
}

/// How a word of generators is turned into a matrix product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordOrder {
    /// `x_1 x_2 ... x_k` acts as `x_1` first: matrix `M_k ... M_1`.
    RightAction,
    /// Matrix `M_1 M_2 ... M_k`.
    LeftAction,
}

/// Generator matrices for fixed `m, n`, cached per position.
pub struct BmwRep {
    m: usize,
    n: usize,
    t: Vec<LaurentMatrix>,
    e: Vec<LaurentMatrix>,
    t_inv: Vec<LaurentMatrix>,
}

impl BmwRep {
    pub fn new(m: usize, n: usize) -> Self {
        let dim = (2 * m).pow(n as u32);
        let t: Vec<_> = (1..n).map(|j| phi_c(m, BmwGen::T, j, n)).collect();
        let e: Vec<_> = (1..n).map(|j| phi_c(m, BmwGen::E, j, n)).collect();
        // T^{-1} = T - (q - q^-1)(1 - E), which is relation (1) rewritten
        let t_inv = t
            .iter()
            .zip(&e)
            .map(|(t, e)| t.sub(&LaurentMatrix::identity(dim).sub(e).scale(&q_minus_qinv())))
            .collect();
        BmwRep { m, n, t, e, t_inv }
    }

    pub fn dim(&self) -> usize {
        (2 * self.m).pow(self.n as u32)
    }

    pub fn generator(&self, gen: BmwGen, j: usize) -> &LaurentMatrix {
        match gen {
            BmwGen::T => &self.t[j - 1],
            BmwGen::E => &self.e[j - 1],
        }
    }

    pub fn word(&self, word: &[(BmwGen, usize)], order: WordOrder) -> LaurentMatrix {
        let mut acc = LaurentMatrix::identity(self.dim());
        for &(g, j) in word {
            let x = self.generator(g, j);
            acc = match order {
                WordOrder::RightAction => x.mul(&acc),
                WordOrder::LeftAction => acc.mul(x),
            };
        }
        acc
    }

    /// `T_w` for a reduced word of `w` (leftmost-descent or rightmost-descent form).
    pub fn t_w(&self, word: &[usize], order: WordOrder) -> LaurentMatrix {
        let w: Vec<(BmwGen, usize)> = word.iter().map(|&j| (BmwGen::T, j)).collect();
        self.word(&w, order)
    }
}

/// One row of a relation report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationRow {
    pub id: &'static str,
    pub indices: Vec<usize>,
    pub pass: bool,
    pub witness: Option<String>,
}

impl fmt::Display for RelationRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(
            f,
            "{},[{}],{}",
            self.id,
            idx.join(","),
            if self.pass { "pass" } else { "fail" }
        )?;
        if let Some(w) = &self.witness {
            write!(f, ",{w}")?;
        }
        Ok(())
    }
}

fn row(id: &'static str, indices: Vec<usize>, lhs: &LaurentMatrix, rhs: &LaurentMatrix) -> RelationRow {
    let witness = lhs.first_difference(rhs);
    RelationRow {
        id,
        indices,
        pass: witness.is_none(),
        witness,
    }
}

/// `1 - sum_{a=-m}^{m} q^{2a}`.
pub fn e_square_scalar(m: usize) -> LaurentPoly {
    let mut out = LaurentPoly::constant(1);
    for a in -(m as i32)..=(m as i32) {
        out = out.sub(&LaurentPoly::monomial(1, 2 * a));
    }
    out
}

/// Evaluates every instance of the eight relation families.
pub fn check_bmw_relations(m: usize, n: usize, order: WordOrder) -> Vec<RelationRow> {
    use BmwGen::{E, T};
    let rep = BmwRep::new(m, n);
    let dim = rep.dim();
    let id = LaurentMatrix::identity(dim);
    let w = |word: &[(BmwGen, usize)]| rep.word(word, order);
    let neg_q_low = LaurentPoly::monomial(-1, -(2 * m as i32) - 1);
    let neg_q_high = LaurentPoly::monomial(-1, 2 * m as i32 + 1);
    let mut out = Vec::new();
    for i in 1..n {
        let (t, tinv) = (&rep.t[i - 1], &rep.t_inv[i - 1]);
        out.push(row("1", vec![i], &t.mul(tinv), &id));
        out.push(row("1", vec![i], &tinv.mul(t), &id));
        let e = &rep.e[i - 1];
        out.push(row("2", vec![i], &w(&[(E, i), (E, i)]), &e.scale(&e_square_scalar(m))));
        out.push(row("7", vec![i], &w(&[(E, i), (T, i)]), &e.scale(&neg_q_low)));
        out.push(row("7", vec![i], &w(&[(T, i), (E, i)]), &e.scale(&neg_q_low)));
    }
    for i in 1..n.saturating_sub(1) {
        let j = i + 1;
        out.push(row("3", vec![i], &w(&[(T, i), (T, j), (T, i)]), &w(&[(T, j), (T, i), (T, j)])));
        out.push(row("5", vec![i], &w(&[(E, i), (E, j), (E, i)]), &rep.e[i - 1]));
        out.push(row("5", vec![i], &w(&[(E, j), (E, i), (E, j)]), &rep.e[j - 1]));
        out.push(row("6", vec![i], &w(&[(T, i), (T, j), (E, i)]), &w(&[(E, j), (E, i)])));
        out.push(row("6", vec![i], &w(&[(T, j), (T, i), (E, j)]), &w(&[(E, i), (E, j)])));
        out.push(row("8", vec![i], &w(&[(E, i), (T, j), (E, i)]), &rep.e[i - 1].scale(&neg_q_high)));
        out.push(row("8", vec![i], &w(&[(E, j), (T, i), (E, j)]), &rep.e[j - 1].scale(&neg_q_high)));
    }
    for i in 1..n {
        for j in i + 2..n {
            out.push(row("4", vec![i, j], &w(&[(T, i), (T, j)]), &w(&[(T, j), (T, i)])));
        }
    }
    out
}

/// Integer matrix of the Brauer generator on `V^{(x)n}`, column convention.
pub fn brauer_matrix(m: usize, kind: GenKind, j: usize, n: usize) -> BTreeMap<(usize, usize), i64> {
    let space = SymplecticSpace::new(m).expect("m >= 1");
    let base = 2 * m;
    let mut out: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for idx in all_indices(base, n) {
        let col = tensor_code(&idx, base);
        for (img, c) in generator_on_index(&space, &idx, kind, j) {
            *out.entry((tensor_code(&img, base), col)).or_insert(0) += c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `alpha_q = sum_k q^{-rho_k} eps_k v_k (x) v_k'`.
pub fn alpha_q(m: usize) -> TensorVector<LaurentRing> {
    let space = SymplecticSpace::new(m).expect("m >= 1");
    let rd = RhoData::new(m);
    let mut v = TensorVector::zero(LaurentRing, space, 2);
    for k in 1..=2 * m {
        v.add_term(vec![k, space.prime(k)], LaurentPoly::monomial(rd.eps(k), -rd.rho(k) as i32));
    }
    v
}

/// Applies a local two-factor matrix at positions `j, j+1` of a tensor.
pub fn apply_local(
    v: &TensorVector<LaurentRing>,
    local: &LaurentMatrix,
    base: usize,
    j: usize,
) -> TensorVector<LaurentRing> {
    let mut by_col: BTreeMap<usize, Vec<(usize, LaurentPoly)>> = BTreeMap::new();
    for (&(r, c), x) in local.entries() {
        by_col.entry(c).or_default().push((r, x.clone()));
    }
    let mut out = TensorVector::zero(LaurentRing, v.space(), v.n());
    for (idx, c) in v.terms() {
        let lc = (idx[j - 1] - 1) * base + (idx[j] - 1);
        for (lr, x) in by_col.get(&lc).into_iter().flatten() {
            let mut img: TensorIndex = idx.clone();
            img[j - 1] = lr / base + 1;
            img[j] = lr % base + 1;
            out.add_term(img, c.mul(x));
        }
    }
    out
}

/// `v . T_w` using the given reduced word, one generator at a time.
pub fn act_t_word(v: &TensorVector<LaurentRing>, local: &LaurentMatrix, base: usize, word: &[usize]) -> TensorVector<LaurentRing> {
    word.iter().fold(v.clone(), |acc, &j| apply_local(&acc, local, base, j))
}

/// `v . T_w Y`, `Y = sum_{w in S_lambda'} (-q)^{-l(w)} T_w`, group elements
/// placed on strands after `offset`.
fn act_tw_y(
    v: &TensorVector<LaurentRing>,
    local: &LaurentMatrix,
    base: usize,
    lambda: &Partition,
    offset: usize,
) -> TensorVector<LaurentRing> {
    let n = v.n();
    let w = w_lambda(lambda).embed(offset, n);
    let moved = act_t_word(v, local, base, &w.reduced_word());
    let mut out = TensorVector::zero(LaurentRing, v.space(), n);
    for y in young_subgroup(lambda.conjugate().parts()) {
        let l = y.length() as i32;
        let coef = LaurentPoly::monomial(if l % 2 == 0 { 1 } else { -1 }, -l);
        let term = act_t_word(&moved, local, base, &y.embed(offset, n).reduced_word());
        out = out.add(&term.scale(&coef)).expect("same shape");
    }
    out
}

/// `Z_{g,lambda} = alpha_q^{(x)g} (x) v_lambda T_{w_lambda} Y_{lambda'}`.
pub fn z_q(m: usize, g: usize, lambda: &Partition) -> Result<TensorVector<LaurentRing>, TensorError> {
    let space = SymplecticSpace::new(m)?;
    let mut base = TensorVector::basis(LaurentRing, space, &[])?;
    let a = alpha_q(m);
    for _ in 0..g {
        base = base.tensor(&a)?;
    }
    base = base.tensor(&v_lambda(LaurentRing, space, lambda)?)?;
    Ok(act_tw_y(&base, &beta_prime(m), 2 * m, lambda, 2 * g))
}

/// `v_lambda That_{w_lambda} Yhat_{lambda'}` computed inside `Vhat^{(x)n}`
/// and then included into `V^{(x)n}`.
pub fn z_q_hecke(m: usize, lambda: &Partition) -> Result<TensorVector<LaurentRing>, TensorError> {
    let space = SymplecticSpace::new(m)?;
    let v = v_lambda(LaurentRing, space, lambda)?;
    // indices of v_lambda are all <= m, so the Vhat computation can reuse the
    // same index labels with base m
    Ok(act_tw_y(&v, &hecke_beta(m), m, lambda, 0))
}

/// Entrywise `q = 1` of a Laurent tensor.
pub fn specialize_vector(v: &TensorVector<LaurentRing>) -> TensorVector<crate::scalars::Integers> {
    v.map_coefficients(crate::scalars::Integers, |c| c.specialize_q1())
}

/// `beta-hat` on `Vhat (x) Vhat`, `dim Vhat = m`.
pub fn hecke_beta(m: usize) -> LaurentMatrix {
    let mut mat = LaurentMatrix::zero(m * m);
    for i in 1..=m {
        add_unit_pair(&mut mat, m, (i, i, i, i), &qpow(1));
        for j in 1..=m {
            if j != i {
                add_unit_pair(&mut mat, m, (i, j, j, i), &LaurentPoly::constant(1));
            }
        }
        for j in i + 1..=m {
            add_unit_pair(&mut mat, m, (i, i, j, j), &q_minus_qinv());
        }
    }
    mat
}

/// `phi_A(That_j)` on `Vhat^{(x)n}`.
pub fn phi_a(m: usize, j: usize, n: usize) -> LaurentMatrix {
    place_local(&hecke_beta(m), m, j, n)
}

/// Checks `v_lambda That_sigma = q^{l(sigma)} v_lambda` for the simple
/// transpositions of the Young subgroup and `samples` random elements.
pub fn check_hecke(m: usize, lambda: &Partition, samples: usize, seed: u64) -> Result<bool, TensorError> {
    let space = SymplecticSpace::new(m)?;
    let v = v_lambda(LaurentRing, space, lambda)?;
    let n = lambda.size();
    let local = hecke_beta(m);
    let group = young_subgroup(lambda.parts());
    let mut tests: Vec<Permutation> = Vec::new();
    let mut start = 0;
    for &len in lambda.parts() {
        for j in start + 1..start + len {
            tests.push(Permutation::transposition(n, j));
        }
        start += len;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        tests.push(group[rng.gen_range(0..group.len())].clone());
    }
    Ok(tests.iter().all(|sigma| {
        let lhs = act_t_word(&v, &local, m, &sigma.reduced_word());
        lhs == v.scale(&qpow(sigma.length() as i64))
    }))
}
