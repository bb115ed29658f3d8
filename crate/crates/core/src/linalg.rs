//! Exact linear algebra over ℚ: a sparse incremental echelon form used for
//! every kernel, image and preimage computation, small dense helpers, and
//! enumeration of monomial bases.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::graded::{Algebra, Monomial, Poly};
use crate::{Error, Result, Q};

/// Sparse vector: column index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Q>;

/// `target += c * v`.
pub fn axpy(target: &mut SparseVec, c: &Q, v: &SparseVec) {
    for (k, x) in v {
        let entry = target.entry(*k).or_insert_with(Q::zero);
        *entry += c * x;
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

#[derive(Clone, Debug)]
struct Row {
    v: SparseVec,
    combo: SparseVec,
}

/// Incremental row echelon form keyed by pivot, where the pivot of a row is
/// its *largest* column. Rows are monic.
///
/// With tracking enabled every row remembers which combination of the
/// inserted vectors produced it, which gives kernels and preimages.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
    track: bool,
    inserted: usize,
}

/// Outcome of [`Echelon::insert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inserted {
    /// New pivot column.
    Pivot(usize),
    /// The vector was dependent; the combination of inserted vectors
    /// (by insertion index) that sums to zero.
    Dependent(SparseVec),
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn tracking() -> Self {
        Echelon { track: true, ..Echelon::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Rows in ascending pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.rows.iter().map(|(k, r)| (*k, &r.v))
    }

    fn reduce_inner(&self, v: &mut SparseVec, combo: &mut SparseVec) {
        let mut bound = usize::MAX;
        loop {
            let hit = v.range(..bound).rev().find(|(k, _)| self.rows.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = hit else { break };
            let row = &self.rows[&k];
            let neg = -c;
            axpy(v, &neg, &row.v);
            if self.track {
                axpy(combo, &neg, &row.combo);
            }
            bound = k;
        }
    }

    /// Fully reduces `v` against the rows: no column of the result is a
    /// pivot.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut combo = SparseVec::new();
        self.reduce_inner(&mut v, &mut combo);
        v
    }

    /// Whether `v` lies in the row span.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn insert(&mut self, v: SparseVec) -> Inserted {
        let idx = self.inserted;
        self.inserted += 1;
        let mut v = v;
        let mut combo = SparseVec::new();
        if self.track {
            combo.insert(idx, Q::one());
        }
        self.reduce_inner(&mut v, &mut combo);
        match v.keys().next_back().copied() {
            None => Inserted::Dependent(combo),
            Some(p) => {
                let inv = v[&p].recip();
                for x in v.values_mut() {
                    *x *= &inv;
                }
                for x in combo.values_mut() {
                    *x *= &inv;
                }
                self.rows.insert(p, Row { v, combo });
                Inserted::Pivot(p)
            }
        }
    }

    /// Coefficients `a` (by insertion index) with `Σ a_i v_i = target`, if
    /// the target lies in the span. Requires tracking.
    pub fn preimage(&self, target: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "preimage needs a tracking echelon");
        let mut v = target.clone();
        let mut combo = SparseVec::new();
        self.reduce_inner(&mut v, &mut combo);
        if !v.is_empty() {
            return None;
        }
        // target - Σ(...) = 0 was accumulated with negative signs
        Some(combo.into_iter().map(|(k, c)| (k, -c)).collect())
    }
}

/// Rank of a dense matrix (rows of equal length).
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(dense_to_sparse(r));
    }
    e.rank()
}

pub fn dense_to_sparse(v: &[Q]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (k, c) in v {
        out[*k] = c.clone();
    }
    out
}

/// Basis of `{x : M x = 0}` for a dense `rows × cols` matrix.
pub fn kernel(rows: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    // columns of M as vectors; dependencies among them are kernel vectors
    let mut e = Echelon::tracking();
    let mut out = Vec::new();
    for j in 0..cols {
        let col: SparseVec =
            rows.iter().enumerate().filter(|(_, r)| !r[j].is_zero()).map(|(i, r)| (i, r[j].clone())).collect();
        if let Inserted::Dependent(combo) = e.insert(col) {
            out.push(sparse_to_dense(&combo, cols));
        }
    }
    out
}

/// Reduced basis of the row span, in ascending pivot order.
pub fn row_basis(rows: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r.clone());
    }
    e.rows().map(|(_, v)| v.clone()).collect()
}

/// Dimension of the intersection of two subspaces given by spanning rows.
pub fn intersection_dim(a: &[SparseVec], b: &[SparseVec]) -> usize {
    let ra = row_basis(a).len();
    let rb = row_basis(b).len();
    let both: Vec<SparseVec> = a.iter().chain(b).cloned().collect();
    ra + rb - row_basis(&both).len()
}

/// Bijection between a finite set of monomials and column indices, in
/// ascending degrevlex order.
#[derive(Clone, Debug, Default)]
pub struct MonomialIndex {
    list: Vec<Monomial>,
    pos: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(mut list: Vec<Monomial>) -> Self {
        list.sort();
        list.dedup();
        let pos = list.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialIndex { list, pos }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, m: &Monomial) -> Option<usize> {
        self.pos.get(m).copied()
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.list[i]
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.list
    }

    /// Coordinates of `p`; `None` if some monomial is not indexed.
    pub fn vector(&self, p: &Poly) -> Option<SparseVec> {
        p.terms().map(|(m, c)| self.get(m).map(|i| (i, c.clone()))).collect()
    }

    pub fn poly(&self, v: &SparseVec) -> Poly {
        v.iter().map(|(i, c)| (self.list[*i].clone(), c.clone())).collect()
    }
}

/// All monomials of cohomological degree `degree` and total exponent at most
/// `cap`, using only generators accepted by `allowed`.
///
/// Fails with [`Error::PieceTooLarge`] once more than `limit` monomials
/// have been produced.
pub fn monomials_of_degree(
    alg: &Algebra,
    degree: i32,
    cap: u32,
    allowed: &dyn Fn(usize) -> bool,
    limit: usize,
) -> Result<Vec<Monomial>> {
    let gens: Vec<usize> = (0..alg.len()).filter(|&i| allowed(i)).collect();
    // suffix bounds on degree per unit of exponent
    let mut lo = vec![0i64; gens.len() + 1];
    let mut hi = vec![0i64; gens.len() + 1];
    for k in (0..gens.len()).rev() {
        let d = alg.generator(gens[k]).degree as i64;
        lo[k] = lo[k + 1].min(d);
        hi[k] = hi[k + 1].max(d);
    }
    let mut out = Vec::new();
    let mut stack: Vec<(usize, u32)> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        alg: &Algebra,
        gens: &[usize],
        lo: &[i64],
        hi: &[i64],
        k: usize,
        left: u32,
        need: i64,
        stack: &mut Vec<(usize, u32)>,
        out: &mut Vec<Monomial>,
        limit: usize,
    ) -> Result<()> {
        if need < lo[k] * left as i64 || need > hi[k] * left as i64 {
            return Ok(());
        }
        if k == gens.len() {
            if need == 0 {
                out.push(Monomial::from_pairs(stack.iter().copied()));
                if out.len() > limit {
                    return Err(Error::PieceTooLarge { size: out.len(), limit });
                }
            }
            return Ok(());
        }
        let g = gens[k];
        let d = alg.generator(g).degree as i64;
        let max_e = if alg.is_odd(g) { left.min(1) } else { left };
        for e in 0..=max_e {
            if e > 0 {
                stack.push((g, e));
            }
            go(alg, gens, lo, hi, k + 1, left - e, need - d * e as i64, stack, out, limit)?;
            if e > 0 {
                stack.pop();
            }
        }
        Ok(())
    }
    go(alg, &gens, &lo, &hi, 0, cap, degree as i64, &mut stack, &mut out, limit)?;
    out.sort();
    Ok(out)
}

/// For a pairing matrix whose rows and columns are generators of the given
/// degrees and whose entries vanish unless the degrees sum to `n`: the first
/// block (by row degree `k`, columns of degree `n - k`) that is not square
/// with a nonzero constant determinant, and that determinant (zero when the
/// block is not square).
pub fn block_witness(alg: &Algebra, degrees: &[i32], m: &[Vec<Poly>], n: i32) -> Result<Option<(i32, Poly)>> {
    let mut ks: Vec<i32> = degrees.to_vec();
    ks.sort();
    ks.dedup();
    for k in ks {
        let rows: Vec<usize> = (0..degrees.len()).filter(|&i| degrees[i] == k).collect();
        let cols: Vec<usize> = (0..degrees.len()).filter(|&j| degrees[j] == n - k).collect();
        let witness = if rows.len() == cols.len() {
            let block: Vec<Vec<Poly>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j].clone()).collect()).collect();
            det(alg, &block)?
        } else {
            Poly::zero()
        };
        if witness.as_constant().is_none_or(|c| c.is_zero()) {
            return Ok(Some((k, witness)));
        }
    }
    Ok(None)
}

/// Determinant of a square matrix of even (hence commuting) polynomials by Laplace
/// expansion along the first row, memoized on the set of used columns.
pub fn det(alg: &Algebra, m: &[Vec<Poly>]) -> Result<Poly> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Precondition("determinant of a non-square matrix".into()));
    }
    if n > 20 {
        return Err(Error::Unsupported(format!("determinant of a {n}x{n} matrix")));
    }
    for r in m {
        for p in r {
            alg.check(p)?;
            if p.terms().any(|(mono, _)| alg.degree_of(mono).rem_euclid(2) == 1) {
                return Err(Error::Unsupported("determinant with odd entries".into()));
            }
        }
    }
    let mut memo: HashMap<u32, Poly> = HashMap::new();
    fn minor(alg: &Algebra, m: &[Vec<Poly>], row: usize, used: u32, memo: &mut HashMap<u32, Poly>) -> Poly {
        let n = m.len();
        if row == n {
            return Poly::one();
        }
        if let Some(p) = memo.get(&used) {
            return p.clone();
        }
        let mut acc = Poly::zero();
        let mut sign_neg = false;
        for j in 0..n {
            if used & (1 << j) != 0 {
                continue;
            }
            if !m[row][j].is_zero() {
                let sub = minor(alg, m, row + 1, used | (1 << j), memo);
                let t = alg.mul_unchecked(&m[row][j], &sub);
                if sign_neg {
                    acc -= &t;
                } else {
                    acc += &t;
                }
            }
            sign_neg = !sign_neg;
        }
        memo.insert(used, acc.clone());
        acc
    }
    Ok(minor(alg, m, 0, 0, &mut memo))
}

/// Inverse of a polynomial matrix whose determinant is a nonzero constant,
/// via the adjugate. `None` if the determinant is not a unit.
pub fn inverse(alg: &Algebra, m: &[Vec<Poly>]) -> Result<Option<Vec<Vec<Poly>>>> {
    let n = m.len();
    let d = det(alg, m)?;
    let Some(c) = d.as_constant().filter(|c| !c.is_zero()) else {
        return Ok(None);
    };
    let inv_c = c.recip();
    let mut out = vec![vec![Poly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            // cofactor C_ji goes to entry (i, j)
            let sub: Vec<Vec<Poly>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&s| s != i).map(|s| m[r][s].clone()).collect())
                .collect();
            let mut cof = det(alg, &sub)?.scale(&inv_c);
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            out[i][j] = cof;
        }
    }
    Ok(Some(out))
}

/// Product of polynomial matrices.
pub fn mat_mul(alg: &Algebra, a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Poly::zero();
                    for (k, x) in row.iter().enumerate() {
                        acc += &alg.mul_unchecked(x, &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Generator;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn echelon_detects_dependency_and_preimage() {
        let mut e = Echelon::tracking();
        let a = dense_to_sparse(&[q(1), q(2), q(0)]);
        let b = dense_to_sparse(&[q(0), q(1), q(1)]);
        assert!(matches!(e.insert(a.clone()), Inserted::Pivot(1)));
        assert!(matches!(e.insert(b.clone()), Inserted::Pivot(2)));
        let target = dense_to_sparse(&[q(2), q(1), q(-3)]);
        let pre = e.preimage(&target).unwrap();
        // 2a - 3b
        assert_eq!(pre, dense_to_sparse(&[q(2), q(-3)]));
        let sum = dense_to_sparse(&[q(1), q(3), q(1)]);
        assert_eq!(e.insert(sum), Inserted::Dependent(dense_to_sparse(&[q(-1), q(-1), q(1)])));
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        let k = kernel(&m, 2);
        assert_eq!(k, vec![vec![q(-2), q(1)]]);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn monomial_enumeration_respects_degree_and_parity() {
        let alg =
            Algebra::new(vec![Generator::new("x", 0), Generator::new("xi", -1), Generator::new("c", -2)]).unwrap();
        let ms = monomials_of_degree(&alg, -2, 3, &|_| true, 1000).unwrap();
        // c, x*c, x^2*c (xi^2 vanishes)
        assert_eq!(ms.len(), 3);
        assert!(matches!(monomials_of_degree(&alg, 0, 50, &|_| true, 10), Err(Error::PieceTooLarge { .. })));
    }

    #[test]
    fn polynomial_determinant_and_inverse() {
        let alg = Algebra::new(vec![Generator::new("x", 0)]).unwrap();
        let x = alg.gen(0);
        let m = vec![vec![Poly::one(), x.clone()], vec![Poly::zero(), Poly::one()]];
        assert_eq!(det(&alg, &m).unwrap(), Poly::one());
        let inv = inverse(&alg, &m).unwrap().unwrap();
        assert_eq!(mat_mul(&alg, &m, &inv), vec![vec![Poly::one(), Poly::zero()], vec![Poly::zero(), Poly::one()]]);
        let sing = vec![vec![x.clone()]];
        assert!(inverse(&alg, &sing).unwrap().is_none());
    }
}
