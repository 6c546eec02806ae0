//! Type C character combinatorics: partitions, Weyl characters and
//! dimensions, tensor power multiplicities, dominance and tableaux counts.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("{partition} has more than {m} parts")]
    TooLong { partition: String, m: usize },
    #[error("not a partition: {0}")]
    NotAPartition(String),
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Panics unless `parts` is weakly decreasing; trailing zeros are dropped.
    pub fn new(parts: Vec<usize>) -> Self {
        Self::try_new(parts).expect("weakly decreasing parts")
    }

    pub fn try_new(mut parts: Vec<usize>) -> Result<Self, CharacterError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(CharacterError::NotAPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..first)
                .map(|c| self.parts.iter().filter(|&&p| p > c).count())
                .collect(),
        }
    }

    /// The parts padded with zeros to length `m`.
    pub fn padded(&self, m: usize) -> Vec<i64> {
        (0..m)
            .map(|i| self.parts.get(i).copied().unwrap_or(0) as i64)
            .collect()
    }

    /// Reads a dominant weight back as a partition.
    pub fn from_weight(w: &[i64]) -> Option<Partition> {
        if w.iter().any(|&x| x < 0) {
            return None;
        }
        Partition::try_new(w.iter().map(|&x| x as usize).collect()).ok()
    }

    /// Partitions obtained by adding one box, keeping at most `m` rows.
    pub fn add_box(&self, m: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..=self.parts.len().min(m.saturating_sub(1)) {
            let cur = self.parts.get(i).copied().unwrap_or(0);
            if i == 0 || self.parts[i - 1] > cur {
                let mut p = self.parts.clone();
                if i == p.len() {
                    p.push(1);
                } else {
                    p[i] += 1;
                }
                out.push(Partition { parts: p });
            }
        }
        out
    }

    /// Partitions obtained by removing one box.
    pub fn remove_box(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            let next = self.parts.get(i + 1).copied().unwrap_or(0);
            if self.parts[i] > next {
                let mut p = self.parts.clone();
                p[i] -= 1;
                out.push(Partition::new(p));
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = CharacterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CharacterError::NotAPartition(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .unwrap_or(s.trim());
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::try_new(parts)
    }
}

/// All partitions of `k` with at most `max_parts` parts, in decreasing
/// lexicographic order.
pub fn partitions_of(k: usize, max_parts: usize) -> Vec<Partition> {
    fn rec(rest: usize, cap: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, max_parts, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Characters

/// An integer Laurent polynomial in `x_1..x_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPoly {
    m: usize,
    terms: BTreeMap<Vec<i64>, i64>,
}

impl CharPoly {
    pub fn zero(m: usize) -> Self {
        CharPoly {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: usize) -> Self {
        Self::monomial(m, vec![0; m], 1)
    }

    pub fn monomial(m: usize, exp: Vec<i64>, c: i64) -> Self {
        let mut out = Self::zero(m);
        out.add_term(exp, c);
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, i64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coefficient(&self, exp: &[i64]) -> i64 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exp: Vec<i64>, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.m);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.m);
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lead_e, &lead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.m);
        while let Some((e, &c)) = rem.terms.iter().next_back() {
            if c % lead_c != 0 {
                return None;
            }
            let qe: Vec<i64> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            let term = Self::monomial(self.m, qe.clone(), c / lead_c);
            let before = e.clone();
            rem = rem.sub(&term.mul(divisor));
            quot.add_term(qe, c / lead_c);
            // the leading term must strictly drop, otherwise the division is not exact
            if rem.terms.keys().next_back().is_some_and(|k| *k >= before) {
                return None;
            }
        }
        Some(quot)
    }

    /// Sum of coefficients (value at `x_i = 1`).
    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn apply_weyl(&self, w: &SignedPermutation) -> Self {
        let mut out = Self::zero(self.m);
        for (e, &c) in &self.terms {
            out.add_term(w.act(e), c);
        }
        out
    }

    pub fn is_weyl_invariant(&self) -> bool {
        weyl_group(self.m).iter().all(|w| self.apply_weyl(w) == *self)
    }

    /// The dominant exponent that is largest in lexicographic order.
    pub fn top_dominant(&self) -> Option<(Vec<i64>, i64)> {
        self.terms
            .iter()
            .rev()
            .find(|(e, _)| is_dominant(e))
            .map(|(e, &c)| (e.clone(), c))
    }
}

fn is_dominant(e: &[i64]) -> bool {
    e.windows(2).all(|w| w[0] >= w[1]) && e.last().is_none_or(|&x| x >= 0)
}

/// An element of the hyperoctahedral group: `x -> (signs[i] * x[perm[i]])_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i64>,
}

impl SignedPermutation {
    pub fn act(&self, e: &[i64]) -> Vec<i64> {
        self.perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| s * e[p])
            .collect()
    }

    /// Determinant of the signed permutation matrix.
    pub fn sign(&self) -> i64 {
        let mut inversions = 0;
        for i in 0..self.perm.len() {
            for j in i + 1..self.perm.len() {
                if self.perm[i] > self.perm[j] {
                    inversions += 1;
                }
            }
        }
        let s: i64 = self.signs.iter().product();
        if inversions % 2 == 0 {
            s
        } else {
            -s
        }
    }
}

/// The Weyl group of type C_m, of order `2^m m!`.
pub fn weyl_group(m: usize) -> Vec<SignedPermutation> {
    let perms = crate::diagrams::symmetric_group(m);
    let mut out = Vec::new();
    for p in perms {
        let perm: Vec<usize> = (0..m).map(|i| p.apply(i)).collect();
        for mask in 0..(1u32 << m) {
            let signs = (0..m)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect();
            out.push(SignedPermutation {
                perm: perm.clone(),
                signs,
            });
        }
    }
    out
}

fn rho(m: usize) -> Vec<i64> {
    (1..=m as i64).rev().collect()
}

fn alternant(m: usize, exp: &[i64]) -> CharPoly {
    let mut out = CharPoly::zero(m);
    for w in weyl_group(m) {
        out.add_term(w.act(exp), w.sign());
    }
    out
}

fn check_length(lambda: &Partition, m: usize) -> Result<(), CharacterError> {
    if lambda.len() > m {
        return Err(CharacterError::TooLong {
            partition: lambda.to_string(),
            m,
        });
    }
    Ok(())
}

/// Character of the irreducible with highest weight `lambda`, as the ratio of
/// alternants.
pub fn weyl_character(lambda: &Partition, m: usize) -> Result<CharPoly, CharacterError> {
    check_length(lambda, m)?;
    let r = rho(m);
    let num_exp: Vec<i64> = lambda.padded(m).iter().zip(&r).map(|(a, b)| a + b).collect();
    let num = alternant(m, &num_exp);
    let den = alternant(m, &r);
    Ok(num.div_exact(&den).expect("alternants divide exactly"))
}

/// Weyl dimension formula for C_m.
pub fn dim_weyl(lambda: &Partition, m: usize) -> Result<u64, CharacterError> {
    check_length(lambda, m)?;
    let r = rho(m);
    let l: Vec<i64> = lambda.padded(m).iter().zip(&r).map(|(a, b)| a + b).collect();
    let prod = |v: &[i64]| -> i128 {
        let mut acc: i128 = v.iter().map(|&x| x as i128).product();
        for i in 0..m {
            for j in i + 1..m {
                acc *= ((v[i] - v[j]) * (v[i] + v[j])) as i128;
            }
        }
        acc
    };
    let (num, den) = (prod(&l), prod(&r));
    debug_assert_eq!(num % den, 0);
    Ok((num / den) as u64)
}

/// `ch(V) = sum_i x_i + x_i^{-1}`.
pub fn vector_character(m: usize) -> CharPoly {
    let mut out = CharPoly::zero(m);
    for i in 0..m {
        for s in [1, -1] {
            let mut e = vec![0; m];
            e[i] = s;
            out.add_term(e, 1);
        }
    }
    out
}

type UpDownTable = BTreeMap<Partition, u128>;

fn updown_memo() -> &'static Mutex<HashMap<(usize, usize), UpDownTable>> {
    static MEMO: OnceLock<Mutex<HashMap<(usize, usize), UpDownTable>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Number of length-`n` up-down paths from the empty partition to each
/// shape, staying within `m` rows.
pub fn updown_table(n: usize, m: usize) -> UpDownTable {
    if let Some(t) = updown_memo().lock().expect("memo lock").get(&(n, m)) {
        return t.clone();
    }
    let table = if n == 0 {
        BTreeMap::from([(Partition::empty(), 1)])
    } else {
        let prev = updown_table(n - 1, m);
        let mut next: UpDownTable = BTreeMap::new();
        for (p, &c) in &prev {
            for q in p.add_box(m).into_iter().chain(p.remove_box()) {
                *next.entry(q).or_insert(0) += c;
            }
        }
        next
    };
    updown_memo()
        .lock()
        .expect("memo lock")
        .entry((n, m))
        .or_insert(table)
        .clone()
}

/// Multiplicity of the irreducible `lambda` in `V^{(x)n}`, by path counting.
pub fn tensor_multiplicity(lambda: &Partition, n: usize, m: usize) -> u128 {
    if lambda.len() > m || lambda.size() > n || !(n - lambda.size()).is_multiple_of(2) {
        return 0;
    }
    updown_table(n, m).get(lambda).copied().unwrap_or(0)
}

/// Alias of [`tensor_multiplicity`] under its tableau-counting name.
pub fn updown_count(lambda: &Partition, n: usize, m: usize) -> u128 {
    tensor_multiplicity(lambda, n, m)
}

/// Decomposes `ch(V)^n` by repeatedly peeling off the character of the
/// largest dominant exponent.
pub fn decompose_power(n: usize, m: usize) -> BTreeMap<Partition, u128> {
    let v = vector_character(m);
    let mut rest = CharPoly::one(m);
    for _ in 0..n {
        rest = rest.mul(&v);
    }
    let mut out = BTreeMap::new();
    while let Some((e, c)) = rest.top_dominant() {
        let lambda = Partition::from_weight(&e).expect("dominant exponent");
        assert!(c > 0, "negative multiplicity for {lambda}");
        let ch = weyl_character(&lambda, m).expect("length at most m");
        rest = rest.sub(&ch.scale(c));
        out.insert(lambda, c as u128);
    }
    assert!(rest.is_zero(), "character did not decompose");
    out
}

/// The dominant weights of `V^{(x)(n-2f)}`: partitions of `n-2f`, `n-2f-2`,
/// ... with at most `m` parts.
pub fn pi_f(n: usize, f: usize, m: usize) -> Vec<Partition> {
    if 2 * f > n {
        return Vec::new();
    }
    let top = n - 2 * f;
    (0..=top)
        .rev()
        .filter(|k| (top - k).is_multiple_of(2))
        .flat_map(|k| partitions_of(k, m))
        .collect()
}

/// Type C dominance: `lambda <= mu` iff `mu - lambda` is a nonnegative
/// integer combination of `e_i - e_{i+1}` and `2 e_m`.
pub fn dominance_leq(lambda: &Partition, mu: &Partition, m: usize) -> bool {
    let (l, u) = (lambda.padded(m), mu.padded(m));
    let mut prefix = 0;
    for k in 0..m {
        prefix += u[k] - l[k];
        if k + 1 < m && prefix < 0 {
            return false;
        }
    }
    prefix >= 0 && prefix % 2 == 0
}

/// Hook length formula.
pub fn standard_tableaux_count(lambda: &Partition) -> u128 {
    let conj = lambda.conjugate();
    let mut hooks: u128 = 1;
    for (r, &len) in lambda.parts().iter().enumerate() {
        for c in 0..len {
            hooks *= (len - c + conj.parts()[c] - r - 1) as u128;
        }
    }
    (1..=lambda.size() as u128).product::<u128>() / hooks
}

/// CSV table `lambda,mult,dim,product` over the dominant weights of `V^{(x)n}`.
pub fn multiplicity_csv(n: usize, m: usize) -> String {
    let mut out = String::from("lambda,mult,dim,product\n");
    for lambda in pi_f(n, 0, m) {
        let mult = tensor_multiplicity(&lambda, n, m);
        let dim = dim_weyl(&lambda, m).expect("length at most m") as u128;
        out.push_str(&format!("\"{lambda}\",{mult},{dim},{}\n", mult * dim));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn partition_basics() {
        assert_eq!(p(&[3, 1]).to_string(), "[3,1]");
        assert_eq!(Partition::empty().to_string(), "[]");
        assert_eq!("[3,1]".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("[1,3]".parse::<Partition>().is_err());
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(partitions_of(4, 2), vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
        assert_eq!(partitions_of(0, 3), vec![Partition::empty()]);
    }

    #[test]
    fn dimension_examples() {
        for m in 1..=4 {
            assert_eq!(dim_weyl(&p(&[1]), m).unwrap(), 2 * m as u64);
            let mut ch = CharPoly::zero(m);
            for i in 0..m {
                for s in [1, -1] {
                    let mut e = vec![0; m];
                    e[i] = s;
                    ch = ch.add(&CharPoly::monomial(m, e, 1));
                }
            }
            assert_eq!(weyl_character(&p(&[1]), m).unwrap(), ch);
        }
        let dims: Vec<u64> = [&[1, 1][..], &[2], &[2, 1], &[3], &[3, 1], &[2, 2]]
            .iter()
            .map(|l| dim_weyl(&p(l), 2).unwrap())
            .collect();
        assert_eq!(dims, vec![5, 10, 16, 20, 35, 14]);
        assert!(dim_weyl(&p(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(tensor_multiplicity(&p(&[3]), 3, 1), 1);
        assert_eq!(tensor_multiplicity(&p(&[1]), 3, 1), 2);
        let m2n3: Vec<u128> = [&[3][..], &[2, 1], &[1]]
            .iter()
            .map(|l| tensor_multiplicity(&p(l), 3, 2))
            .collect();
        assert_eq!(m2n3, vec![1, 2, 3]);
        let m2n4: Vec<u128> = [&[4][..], &[3, 1], &[2, 2], &[2], &[1, 1], &[]]
            .iter()
            .map(|l| tensor_multiplicity(&p(l), 4, 2))
            .collect();
        assert_eq!(m2n4, vec![1, 3, 2, 6, 5, 3]);
        // parity mismatch
        assert_eq!(tensor_multiplicity(&p(&[2]), 3, 2), 0);
    }

    #[test]
    fn pi_f_examples() {
        assert_eq!(pi_f(4, 1, 2), vec![p(&[2]), p(&[1, 1]), Partition::empty()]);
        assert_eq!(pi_f(3, 1, 1), vec![p(&[1])]);
        assert_eq!(pi_f(4, 0, 2).len(), 6);
        assert!(pi_f(4, 3, 2).is_empty());
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[1, 1]), &p(&[2]), 2));
        assert!(!dominance_leq(&p(&[2]), &p(&[1, 1]), 2));
        assert!(dominance_leq(&Partition::empty(), &p(&[1, 1]), 2));
        assert!(!dominance_leq(&p(&[1]), &p(&[2]), 2));
        for m in 1..=3 {
            for n in 0..=6 {
                for l in pi_f(n, 0, m) {
                    assert!(dominance_leq(&l, &l, m));
                }
            }
        }
    }

    #[test]
    fn lower_degree_weights_are_not_above() {
        for m in 1..=3 {
            for n in 0..=6 {
                for a in 0..=n / 2 {
                    for b in a + 1..=n / 2 {
                        for l in partitions_of(n - 2 * a, m) {
                            for u in partitions_of(n - 2 * b, m) {
                                assert!(!dominance_leq(&l, &u, m), "{l} {u}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tableaux_examples() {
        assert_eq!(standard_tableaux_count(&p(&[2, 1])), 2);
        for n in 0..6 {
            assert_eq!(standard_tableaux_count(&p(&[n]).conjugate()), 1);
            if n > 0 {
                assert_eq!(standard_tableaux_count(&p(&[n])), 1);
            }
        }
        assert_eq!(standard_tableaux_count(&p(&[3, 2])), 5);
        assert_eq!(updown_count(&p(&[1]), 3, 1), 2);
        assert_eq!(updown_count(&p(&[1]), 3, 2), 3);
    }

    #[test]
    fn pieri_rule() {
        for m in 1..=3 {
            let v = vector_character(m);
            for k in 0..=4 {
                for mu in partitions_of(k, m) {
                    let lhs = v.mul(&weyl_character(&mu, m).unwrap());
                    let mut rhs = CharPoly::zero(m);
                    for nu in mu.add_box(m).into_iter().chain(mu.remove_box()) {
                        rhs = rhs.add(&weyl_character(&nu, m).unwrap());
                    }
                    assert_eq!(lhs, rhs, "m={m} mu={mu}");
                }
            }
        }
    }

    #[test]
    fn decomposition_matches_paths_and_dimension() {
        for m in 1..=3 {
            for n in 0..=8 {
                if m == 3 && n > 6 {
                    continue; // the full character gets large; paths cover it below
                }
                let dec = decompose_power(n, m);
                let paths: BTreeMap<Partition, u128> =
                    updown_table(n, m).into_iter().filter(|(_, c)| *c > 0).collect();
                assert_eq!(dec, paths, "m={m} n={n}");
            }
            for n in 0..=8 {
                let total: u128 = pi_f(n, 0, m)
                    .iter()
                    .map(|l| tensor_multiplicity(l, n, m) * dim_weyl(l, m).unwrap() as u128)
                    .sum();
                assert_eq!(total, (2 * m as u128).pow(n as u32));
            }
        }
    }

    #[test]
    fn characters_are_invariant_and_match_dimensions() {
        for m in 1..=3 {
            assert_eq!(weyl_group(m).len(), (1 << m) * (1..=m).product::<usize>());
            for k in 0..=4 {
                for l in partitions_of(k, m) {
                    let ch = weyl_character(&l, m).unwrap();
                    assert!(ch.is_weyl_invariant());
                    assert_eq!(ch.coefficient_sum() as u64, dim_weyl(&l, m).unwrap());
                }
            }
        }
    }

    #[test]
    fn csv_table() {
        let csv = multiplicity_csv(2, 1);
        assert_eq!(csv, "lambda,mult,dim,product\n\"[2]\",1,3,3\n\"[]\",1,1,1\n");
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involution(parts in proptest::collection::vec(1usize..6, 0..5)) {
            let mut parts = parts;
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let l = Partition::new(parts);
            prop_assert_eq!(l.conjugate().conjugate(), l.clone());
            prop_assert_eq!(l.conjugate().size(), l.size());
            prop_assert_eq!(standard_tableaux_count(&l), standard_tableaux_count(&l.conjugate()));
        }
    }
}
