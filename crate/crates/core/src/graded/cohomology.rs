use std::collections::{BTreeMap, HashMap};

use super::{DgAlgebra, Monomial, Poly};
use crate::linalg::{monomials_of_degree, Echelon, Inserted, MonomialIndex, SparseVec};
use crate::{Error, Result};

/// Largest monomial basis a single graded piece may have.
pub const DEFAULT_PIECE_LIMIT: usize = 50_000;

/// One degree of [`TruncatedCohomology`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyPiece {
    pub degree: i32,
    pub dimension: usize,
    /// Size of the monomial basis of the truncated cochains.
    pub cochains: usize,
    pub cycles: usize,
    /// Boundaries that land inside the truncation.
    pub boundaries: usize,
    /// Monic representatives, one per class, in ascending order of leading
    /// monomial. When every cochain is a cycle these are exactly the
    /// monomials that are not leading terms of boundaries.
    pub representatives: Vec<Poly>,
}

/// Cohomology of a DGA restricted to cochains of polynomial degree at most
/// `cap`, over a window of cohomological degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCohomology {
    pub cap: u32,
    /// Extra polynomial degree allowed in the source of the boundary map so
    /// that every boundary landing under the cap is seen.
    pub slack: u32,
    pub pieces: BTreeMap<i32, CohomologyPiece>,
}

impl TruncatedCohomology {
    pub fn dimension(&self, degree: i32) -> Option<usize> {
        self.pieces.get(&degree).map(|p| p.dimension)
    }

    pub fn piece(&self, degree: i32) -> Option<&CohomologyPiece> {
        self.pieces.get(&degree)
    }
}

/// Polynomial degree can drop by at most `slack` under `d`.
pub(crate) fn slack(a: &DgAlgebra) -> u32 {
    let d = a.differential();
    d.support().filter_map(|i| d.value(i).min_total()).map(|m| 1i64 - m as i64).max().unwrap_or(0).max(0) as u32
}

/// Exact cohomology `H^k` for `k` in `window`, computed on the span of
/// monomials with total exponent at most `cap`.
///
/// Cycles are the kernel of `d` on the truncated cochains. Boundaries are
/// images of cochains of polynomial degree up to `cap + slack` that land
/// inside the truncation, so the boundary space is exactly
/// `d(C^{k-1}) ∩ C^k_{≤cap}` whenever `d` lowers polynomial degree by at most
/// the slack.
pub fn cohomology_truncated(a: &DgAlgebra, window: (i32, i32), cap: u32) -> Result<TruncatedCohomology> {
    cohomology_truncated_with_limit(a, window, cap, DEFAULT_PIECE_LIMIT)
}

pub fn cohomology_truncated_with_limit(
    a: &DgAlgebra,
    window: (i32, i32),
    cap: u32,
    limit: usize,
) -> Result<TruncatedCohomology> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(Error::EmptyWindow { lo, hi });
    }
    let s = slack(a);
    let mut pieces = BTreeMap::new();
    for k in lo..=hi {
        pieces.insert(k, piece(a, k, cap, s, limit)?);
    }
    Ok(TruncatedCohomology { cap, slack: s, pieces })
}

fn piece(a: &DgAlgebra, k: i32, cap: u32, slack: u32, limit: usize) -> Result<CohomologyPiece> {
    let alg = a.algebra();
    let basis = MonomialIndex::new(monomials_of_degree(alg, k, cap, &|_| true, limit)?);

    // cycles: dependencies among the images of basis monomials
    let mut targets: HashMap<Monomial, usize> = HashMap::new();
    let mut image = Echelon::tracking();
    let mut cycles = Echelon::new();
    for m in basis.monomials() {
        let dm = a.d_unchecked(&Poly::monomial(m.clone()));
        let v = dm
            .into_terms()
            .map(|(t, c)| {
                let n = targets.len();
                (*targets.entry(t).or_insert(n), c)
            })
            .collect();
        if let Inserted::Dependent(combo) = image.insert(v) {
            cycles.insert(combo);
        }
    }

    // boundaries inside the truncation: outside monomials get the larger
    // columns, so rows with an inside pivot span the intersection
    let n_in = basis.len();
    let source = monomials_of_degree(alg, k - 1, cap + slack, &|_| true, limit)?;
    let mut outside: HashMap<Monomial, usize> = HashMap::new();
    let mut bounds = Echelon::new();
    for m in &source {
        let dm = a.d_unchecked(&Poly::monomial(m.clone()));
        let v: SparseVec = dm
            .into_terms()
            .map(|(t, c)| match basis.get(&t) {
                Some(i) => (i, c),
                None => {
                    let n = n_in + outside.len();
                    (*outside.entry(t).or_insert(n), c)
                }
            })
            .collect();
        bounds.insert(v);
    }
    let inside: Vec<SparseVec> = bounds.rows().filter(|(p, _)| *p < n_in).map(|(_, v)| v.clone()).collect();
    let n_bounds = inside.len();

    let mut quotient = Echelon::new();
    for v in inside {
        quotient.insert(v);
    }
    let mut representatives = Vec::new();
    for (_, z) in cycles.rows() {
        if let Inserted::Pivot(p) = quotient.insert(z.clone()) {
            let row = quotient.rows().find(|(q, _)| *q == p).map(|(_, v)| v.clone()).unwrap_or_default();
            representatives.push(basis.poly(&row));
        }
    }
    let n_cycles = cycles.rank();
    if n_bounds > n_cycles || representatives.len() != n_cycles - n_bounds {
        return Err(Error::Internal(format!(
            "degree {k}: {n_bounds} boundaries vs {n_cycles} cycles; is d square-zero?"
        )));
    }
    representatives.sort_by(|x, y| x.leading().map(|t| t.0).cmp(&y.leading().map(|t| t.0)));
    Ok(CohomologyPiece {
        degree: k,
        dimension: representatives.len(),
        cochains: n_in,
        cycles: n_cycles,
        boundaries: n_bounds,
        representatives,
    })
}

/// Whether a homogeneous cochain of polynomial degree at most `cap` is a
/// boundary of a cochain of polynomial degree at most `cap + slack`.
pub fn is_boundary(a: &DgAlgebra, p: &Poly, cap: u32) -> Result<bool> {
    let alg = a.algebra();
    alg.check(p)?;
    let Some(k) = alg.degree(p) else {
        return if p.is_zero() { Ok(true) } else { Err(Error::Inhomogeneous("boundary test".into())) };
    };
    let s = slack(a);
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let col = |m: Monomial, index: &mut HashMap<Monomial, usize>| {
        let n = index.len();
        *index.entry(m).or_insert(n)
    };
    let mut bounds = Echelon::new();
    for m in monomials_of_degree(alg, k - 1, cap + s, &|_| true, DEFAULT_PIECE_LIMIT)? {
        let v: SparseVec =
            a.d_unchecked(&Poly::monomial(m)).into_terms().map(|(t, c)| (col(t, &mut index), c)).collect();
        bounds.insert(v);
    }
    let target: SparseVec = p.terms().map(|(t, c)| (col(t.clone(), &mut index), c.clone())).collect();
    Ok(bounds.contains(&target))
}
