use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use crate::linalg::{row_basis, Echelon, SparseVec};
use crate::{Error, Result, Q};

/// Dimension table keyed by `(weight, degree)`; zero entries are omitted.
pub type DimTable = BTreeMap<(i32, i32), usize>;

/// Behaviour of the filtration past the last recorded step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    /// `F^j = 0` beyond the last step.
    Zero,
    /// `F^j` equals the last recorded step forever.
    Constant,
}

/// A finite descending filtration `F^start ⊇ F^{start+1} ⊇ … ⊇ F^hi` of a
/// finite-dimensional graded vector space.
///
/// `F^j` is the whole ambient space for `j < start`; past `hi` it follows the
/// [`Tail`]. Subspaces are stored as reduced row bases in ambient
/// coordinates, one per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredModule {
    ambient: BTreeMap<i32, usize>,
    start: i32,
    steps: Vec<BTreeMap<i32, Vec<SparseVec>>>,
    tail: Tail,
}

fn span(rows: Vec<SparseVec>) -> Vec<SparseVec> {
    row_basis(&rows)
}

fn contained(sub: &[SparseVec], sup: &[SparseVec]) -> bool {
    let mut e = Echelon::new();
    for r in sup {
        e.insert(r.clone());
    }
    sub.iter().all(|v| e.contains(v))
}

impl FilteredModule {
    /// Validates that every step is a subspace of the previous one and of
    /// the ambient space.
    pub fn new(
        ambient: BTreeMap<i32, usize>,
        start: i32,
        steps: Vec<BTreeMap<i32, Vec<SparseVec>>>,
        tail: Tail,
    ) -> Result<Self> {
        let ambient: BTreeMap<i32, usize> = ambient.into_iter().filter(|(_, n)| *n > 0).collect();
        let mut clean = Vec::with_capacity(steps.len());
        for (k, step) in steps.into_iter().enumerate() {
            let mut s = BTreeMap::new();
            for (deg, rows) in step {
                let n = ambient.get(&deg).copied().unwrap_or(0);
                if rows.iter().any(|r| r.keys().next_back().is_some_and(|&c| c >= n)) {
                    return Err(Error::FilteredModule(format!(
                        "step {} has a vector outside the ambient space in degree {deg}",
                        start + k as i32
                    )));
                }
                let b = span(rows);
                if !b.is_empty() {
                    s.insert(deg, b);
                }
            }
            clean.push(s);
        }
        for k in 1..clean.len() {
            for (deg, rows) in &clean[k] {
                let prev = clean[k - 1].get(deg).map(Vec::as_slice).unwrap_or(&[]);
                if !contained(rows, prev) {
                    return Err(Error::FilteredModule(format!(
                        "F^{} is not contained in F^{} in degree {deg}",
                        start + k as i32,
                        start + k as i32 - 1
                    )));
                }
            }
        }
        Ok(FilteredModule { ambient, start, steps: clean, tail })
    }

    /// The zero module.
    pub fn zero() -> Self {
        FilteredModule { ambient: BTreeMap::new(), start: 0, steps: Vec::new(), tail: Tail::Zero }
    }

    /// Filtration split by a basis: vector `k` has the given degree and
    /// filtration weight, and `F^j` is spanned by the vectors of weight
    /// at least `j`.
    pub fn from_adapted(basis: &[(i32, i32)], tail: Tail) -> Self {
        if basis.is_empty() {
            return FilteredModule::zero();
        }
        let mut ambient: BTreeMap<i32, usize> = BTreeMap::new();
        let mut coords = Vec::with_capacity(basis.len());
        for &(deg, _) in basis {
            let n = ambient.entry(deg).or_insert(0);
            coords.push(*n);
            *n += 1;
        }
        let lo = basis.iter().map(|b| b.1).min().expect("nonempty");
        let hi = basis.iter().map(|b| b.1).max().expect("nonempty");
        let steps = (lo..=hi)
            .map(|j| {
                let mut s: BTreeMap<i32, Vec<SparseVec>> = BTreeMap::new();
                for (k, &(deg, w)) in basis.iter().enumerate() {
                    if w >= j {
                        s.entry(deg).or_default().push(SparseVec::from([(coords[k], Q::from_integer(1.into()))]));
                    }
                }
                s
            })
            .collect();
        FilteredModule::new(ambient, lo, steps, tail).expect("adapted filtration is valid")
    }

    /// `M(i)`: the graded space `dims` (degree to dimension) with
    /// `F^j = M` for `j ≤ i` and `0` above.
    pub fn twist(dims: &BTreeMap<i32, usize>, i: i32) -> Self {
        let basis: Vec<(i32, i32)> = dims.iter().flat_map(|(&d, &n)| std::iter::repeat_n((d, i), n)).collect();
        FilteredModule::from_adapted(&basis, Tail::Zero)
    }

    /// The monoidal unit `ℚ(0)`.
    pub fn unit() -> Self {
        FilteredModule::twist(&BTreeMap::from([(0, 1)]), 0)
    }

    /// Constant tower `F^j = M` for every `j`.
    pub fn constant(dims: &BTreeMap<i32, usize>) -> Self {
        let mut m = FilteredModule::twist(dims, 0);
        m.tail = Tail::Constant;
        m
    }

    pub fn ambient(&self) -> &BTreeMap<i32, usize> {
        &self.ambient
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    /// Last recorded index.
    pub fn hi(&self) -> i32 {
        self.start + self.steps.len() as i32 - 1
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn total_dim(&self) -> usize {
        self.ambient.values().sum()
    }

    fn full(&self, deg: i32) -> Vec<SparseVec> {
        let n = self.ambient.get(&deg).copied().unwrap_or(0);
        (0..n).map(|i| SparseVec::from([(i, Q::from_integer(1.into()))])).collect()
    }

    /// Basis of `F^j` in degree `deg`.
    pub fn step(&self, j: i32, deg: i32) -> Vec<SparseVec> {
        if j < self.start {
            return self.full(deg);
        }
        let k = (j - self.start) as usize;
        let k = if k < self.steps.len() {
            k
        } else {
            match self.tail {
                Tail::Zero => return Vec::new(),
                Tail::Constant => match self.steps.len() {
                    0 => return self.full(deg),
                    n => n - 1,
                },
            }
        };
        self.steps[k].get(&deg).cloned().unwrap_or_default()
    }

    /// Dimensions of `F^j` by degree.
    pub fn dims(&self, j: i32) -> BTreeMap<i32, usize> {
        self.ambient.keys().map(|&d| (d, self.step(j, d).len())).filter(|(_, n)| *n > 0).collect()
    }

    /// Range of weights where `gr` can be nonzero.
    fn weight_range(&self) -> (i32, i32) {
        (self.start - 1, self.hi())
    }

    /// `gr^i = F^i / F^{i+1}` for every weight, as a dimension table.
    pub fn gr(&self) -> DimTable {
        let mut out = DimTable::new();
        let (lo, hi) = self.weight_range();
        for i in lo..=hi {
            for &d in self.ambient.keys() {
                let n = self.step(i, d).len() - self.step(i + 1, d).len();
                if n > 0 {
                    out.insert((i, d), n);
                }
            }
        }
        out
    }

    /// Vectors of `F^i` completing a basis of `F^{i+1}`: a basis of `gr^i`.
    pub fn gr_basis(&self, i: i32, deg: i32) -> Vec<SparseVec> {
        let mut e = Echelon::new();
        for r in self.step(i + 1, deg) {
            e.insert(r);
        }
        let mut out = Vec::new();
        for r in self.step(i, deg) {
            let red = e.reduce(&r);
            if !red.is_empty() {
                e.insert(red.clone());
                out.push(red);
            }
        }
        out
    }

    /// Completion: with a constant tail the limit `F^hi` is divided out,
    /// otherwise the module is already complete.
    pub fn complete(&self) -> FilteredModule {
        if self.tail == Tail::Zero {
            return self.clone();
        }
        let hi = self.hi();
        let mut ambient = BTreeMap::new();
        let mut proj: BTreeMap<i32, (Echelon, BTreeMap<usize, usize>)> = BTreeMap::new();
        for (&d, &n) in &self.ambient {
            let mut e = Echelon::new();
            for r in self.step(hi, d) {
                e.insert(r);
            }
            let free: BTreeMap<usize, usize> =
                (0..n).filter(|c| !e.is_pivot(*c)).enumerate().map(|(new, old)| (old, new)).collect();
            ambient.insert(d, free.len());
            proj.insert(d, (e, free));
        }
        let project = |d: i32, v: &SparseVec| -> SparseVec {
            let (e, free) = &proj[&d];
            e.reduce(v).into_iter().map(|(c, x)| (free[&c], x)).collect()
        };
        let steps = (self.start..hi)
            .map(|j| {
                self.ambient
                    .keys()
                    .map(|&d| (d, self.step(j, d).iter().map(|v| project(d, v)).filter(|v| !v.is_empty()).collect()))
                    .collect()
            })
            .collect();
        FilteredModule::new(ambient, self.start, steps, Tail::Zero).expect("quotient filtration is valid")
    }

    pub fn is_complete(&self) -> bool {
        self.tail == Tail::Zero || self.steps.last().is_none_or(|s| s.values().all(Vec::is_empty))
    }

    /// `|M| = F^0 M`.
    pub fn realize(&self) -> BTreeMap<i32, usize> {
        self.dims(0)
    }

    /// Colimit of the tower: the ambient space.
    pub fn underlying(&self) -> BTreeMap<i32, usize> {
        self.ambient.clone()
    }

    /// Day convolution: `F^k(M ⊗ N) = Σ_{i+j=k} F^i M ⊗ F^j N`.
    pub fn day_tensor(&self, other: &FilteredModule) -> FilteredModule {
        // column offsets of M_a ⊗ N_b inside (M ⊗ N)_{a+b}
        let mut ambient: BTreeMap<i32, usize> = BTreeMap::new();
        let mut offset: BTreeMap<(i32, i32), usize> = BTreeMap::new();
        for (&a, &m) in &self.ambient {
            for (&b, &n) in &other.ambient {
                let slot = ambient.entry(a + b).or_insert(0);
                offset.insert((a, b), *slot);
                *slot += m * n;
            }
        }
        if ambient.is_empty() {
            return FilteredModule::zero();
        }
        let constant = self.tail == Tail::Constant || other.tail == Tail::Constant;
        let start = self.start + other.start - 1;
        let hi = self.hi() + other.hi() + i32::from(constant);
        let steps = (start..=hi)
            .map(|k| {
                let mut s: BTreeMap<i32, Vec<SparseVec>> = BTreeMap::new();
                let ilo = (self.start - 1).min(k - other.hi() - 1);
                let ihi = (self.hi() + 1).max(k - other.start + 1);
                for i in ilo..=ihi {
                    for &a in self.ambient.keys() {
                        let fm = self.step(i, a);
                        if fm.is_empty() {
                            continue;
                        }
                        for (&b, &n) in &other.ambient {
                            let fnb = other.step(k - i, b);
                            let off = offset[&(a, b)];
                            for u in &fm {
                                for v in &fnb {
                                    let mut t = SparseVec::new();
                                    for (p, x) in u {
                                        for (q, y) in v {
                                            t.insert(off + p * n + q, x * y);
                                        }
                                    }
                                    s.entry(a + b).or_default().push(t);
                                }
                            }
                        }
                    }
                }
                s
            })
            .collect();
        FilteredModule::new(ambient, start, steps, if constant { Tail::Constant } else { Tail::Zero })
            .expect("convolution filtration is valid")
    }
}

/// Outcome of [`check_gr_hom`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrHomReport {
    /// `gr Hom(X, Y)` computed from filtered maps.
    pub lhs: DimTable,
    /// `Hom(gr X, gr Y)` computed from the associated graded pieces.
    pub rhs: DimTable,
    /// First `(weight, degree)` where the tables differ.
    pub mismatch: Option<(i32, i32)>,
}

impl GrHomReport {
    pub fn is_ok(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Annihilator of a subspace of `ℚ^n`: rows `φ` with `φ(v) = 0` on it.
fn annihilator(sub: &[SparseVec], n: usize) -> Vec<Vec<Q>> {
    let rows: Vec<Vec<Q>> = sub.iter().map(|v| crate::linalg::sparse_to_dense(v, n)).collect();
    crate::linalg::kernel(&rows, n)
}

/// Dimension of `F^k Hom(X, Y)` in Hom-degree `e`: maps with
/// `f(F^i X) ⊆ F^{i+k} Y` for every `i`.
fn filtered_hom_dim(x: &FilteredModule, y: &FilteredModule, k: i32, e: i32) -> usize {
    let mut total = 0;
    for (&a, &m) in &x.ambient {
        let n = y.ambient.get(&(a + e)).copied().unwrap_or(0);
        if n == 0 {
            continue;
        }
        // unknowns f[r][s], r < n, s < m, flattened as r * m + s
        let mut cons = Echelon::new();
        for i in (x.start - 1)..=(x.hi() + 1) {
            let src = x.step(i, a);
            if src.is_empty() {
                continue;
            }
            let ann = annihilator(&y.step(i + k, a + e), n);
            for v in &src {
                for phi in &ann {
                    let mut row = SparseVec::new();
                    for (r, pr) in phi.iter().enumerate() {
                        if pr.is_zero() {
                            continue;
                        }
                        for (s, vs) in v {
                            row.insert(r * m + s, pr * vs);
                        }
                    }
                    if !row.is_empty() {
                        cons.insert(row);
                    }
                }
            }
        }
        total += m * n - cons.rank();
    }
    total
}

/// Compares `gr Hom(X, Y)` with `Hom(gr X, gr Y)` over the unit base,
/// weight by weight and degree by degree. Inputs are completed first.
pub fn check_gr_hom(x: &FilteredModule, y: &FilteredModule) -> GrHomReport {
    let x = x.complete();
    let y = y.complete();
    let degrees: Vec<i32> = {
        let mut v: Vec<i32> = x.ambient.keys().flat_map(|a| y.ambient.keys().map(move |b| b - a)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let (xlo, xhi) = x.weight_range();
    let (ylo, yhi) = y.weight_range();
    let (klo, khi) = (ylo - xhi - 1, yhi - xlo + 1);

    let mut lhs = DimTable::new();
    for &e in &degrees {
        for k in klo..=khi {
            let n = filtered_hom_dim(&x, &y, k, e) - filtered_hom_dim(&x, &y, k + 1, e);
            if n > 0 {
                lhs.insert((k, e), n);
            }
        }
    }
    let (gx, gy) = (x.gr(), y.gr());
    let mut rhs = DimTable::new();
    for (&(i, a), &m) in &gx {
        for (&(j, b), &n) in &gy {
            *rhs.entry((j - i, b - a)).or_insert(0) += m * n;
        }
    }
    let mismatch = lhs.keys().chain(rhs.keys()).copied().filter(|key| lhs.get(key) != rhs.get(key)).min();
    GrHomReport { lhs, rhs, mismatch }
}

/// A random filtered module: at most `max_steps` steps, total dimension at
/// most `max_dim`, degrees in `{0, 1}`, small integer coordinates.
pub fn random_module<R: Rng>(rng: &mut R, max_steps: usize, max_dim: usize) -> FilteredModule {
    let mut ambient = BTreeMap::new();
    let total = rng.gen_range(1..=max_dim);
    for _ in 0..total {
        *ambient.entry(rng.gen_range(0..=1)).or_insert(0usize) += 1;
    }
    let start = rng.gen_range(-1..=1);
    let n_steps = rng.gen_range(1..=max_steps);
    let mut steps: Vec<BTreeMap<i32, Vec<SparseVec>>> = Vec::new();
    for k in 0..n_steps {
        let mut s = BTreeMap::new();
        for (&d, &n) in &ambient {
            let prev: Vec<SparseVec> = if k == 0 {
                (0..n).map(|i| SparseVec::from([(i, Q::from_integer(1.into()))])).collect()
            } else {
                steps[k - 1].get(&d).cloned().unwrap_or_default()
            };
            if prev.is_empty() {
                continue;
            }
            let dim = rng.gen_range(0..=prev.len());
            let rows: Vec<SparseVec> = (0..dim)
                .map(|_| {
                    let mut v = SparseVec::new();
                    for p in &prev {
                        let c = Q::from_integer(rng.gen_range(-2i64..=2).into());
                        crate::linalg::axpy(&mut v, &c, p);
                    }
                    v
                })
                .collect();
            s.insert(d, span(rows));
        }
        steps.push(s);
    }
    let tail = if rng.gen_bool(0.25) { Tail::Constant } else { Tail::Zero };
    FilteredModule::new(ambient, start, steps, tail).expect("random filtration is nested")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> BTreeMap<i32, usize> {
        BTreeMap::from([(0, 1)])
    }

    #[test]
    fn twist_is_concentrated_in_its_weight() {
        let m = FilteredModule::twist(&line(), 3);
        assert_eq!(m.gr(), DimTable::from([((3, 0), 1)]));
        assert_eq!(FilteredModule::twist(&line(), 1).realize(), line());
    }

    #[test]
    fn constant_tower_has_trivial_gr_and_completes_to_zero() {
        let c = FilteredModule::constant(&line());
        assert!(c.gr().is_empty());
        let done = c.complete();
        assert_eq!(done.total_dim(), 0);
        assert!(done.realize().is_empty());
        assert_eq!(c.underlying(), line());
    }

    #[test]
    fn two_step() {
        let m = FilteredModule::from_adapted(&[(0, 0), (0, 1)], Tail::Zero);
        assert_eq!(m.gr(), DimTable::from([((0, 0), 1), ((1, 0), 1)]));
        assert_eq!(m.realize(), BTreeMap::from([(0, 2)]));
        assert_eq!(m.complete(), m);
    }

    #[test]
    fn day_tensor_of_twists() {
        let m = FilteredModule::twist(&line(), 1);
        let n = FilteredModule::twist(&BTreeMap::from([(1, 2)]), 2);
        let t = m.day_tensor(&n);
        assert_eq!(t.gr(), DimTable::from([((3, 1), 2)]));
        let u = FilteredModule::unit().day_tensor(&m);
        assert_eq!(u.gr(), m.gr());
    }

    #[test]
    fn gr_hom_of_twists() {
        let one = FilteredModule::twist(&line(), 1);
        let zero = FilteredModule::twist(&line(), 0);
        let r = check_gr_hom(&one, &zero);
        assert!(r.is_ok());
        assert_eq!(r.lhs, DimTable::from([((-1, 0), 1)]));
    }

    #[test]
    fn nested_steps_are_enforced() {
        let amb = BTreeMap::from([(0, 2)]);
        let e0 = SparseVec::from([(0, Q::from_integer(1.into()))]);
        let e1 = SparseVec::from([(1, Q::from_integer(1.into()))]);
        let steps = vec![BTreeMap::from([(0, vec![e0])]), BTreeMap::from([(0, vec![e1])])];
        assert!(FilteredModule::new(amb, 0, steps, Tail::Zero).is_err());
    }
}
