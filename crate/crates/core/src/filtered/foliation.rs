use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::DimTable;
use crate::graded::{Algebra, DgAlgebra, Generator, Monomial, Poly, DEFAULT_PIECE_LIMIT as DEFAULT_LIMIT};
use crate::linalg::{monomials_of_degree, Echelon, SparseVec};
use crate::{Error, Result};

/// Truncation used by every dimension-table comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest filtration weight compared.
    pub weight: u32,
    /// Cohomological degrees compared, inclusive.
    pub degrees: (i32, i32),
    /// Largest total exponent of the monomials counted.
    pub polydegree: u32,
}

/// A free DGA with a multiplicative filtration: generator `g` lies in
/// `F^{w(g)}` and `F^p` is spanned by monomials of total weight `≥ p`.
#[derive(Clone, Debug)]
pub struct FilteredDga {
    dga: DgAlgebra,
    weights: Vec<u32>,
}

impl FilteredDga {
    /// Checks `d(F^i) ⊆ F^i` on generators, which suffices by Leibniz.
    pub fn new(dga: DgAlgebra, weights: Vec<u32>) -> Result<Self> {
        let alg = dga.algebra().clone();
        if weights.len() != alg.len() {
            return Err(Error::Filtration(format!("{} weights for {} generators", weights.len(), alg.len())));
        }
        let f = FilteredDga { dga, weights };
        for i in 0..alg.len() {
            let Some(dg) = f.dga.differential().value_ref(i) else { continue };
            if let Some((m, _)) = dg.terms().find(|(m, _)| f.weight_of(m) < f.weights[i]) {
                return Err(Error::Filtration(format!(
                    "d({}) has a term of weight {} below {}: {:?}",
                    alg.generator(i).name,
                    f.weight_of(m),
                    f.weights[i],
                    m
                )));
            }
        }
        Ok(f)
    }

    /// Filtration by the internal weights recorded on the generators.
    pub fn by_internal_weight(dga: DgAlgebra) -> Result<Self> {
        let w = weights_from(dga.algebra(), |g| g.weight)?;
        FilteredDga::new(dga, w)
    }

    /// Filtration by the Hodge weights recorded on the generators.
    pub fn by_hodge_weight(dga: DgAlgebra) -> Result<Self> {
        let w = weights_from(dga.algebra(), |g| g.hodge)?;
        FilteredDga::new(dga, w)
    }

    pub fn dga(&self) -> &DgAlgebra {
        &self.dga
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.dga.algebra()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight_of(&self, m: &Monomial) -> u32 {
        m.factors().map(|(i, e)| self.weights[i] * e).sum()
    }

    /// Generators of the given weight.
    pub fn generators_of_weight(&self, w: u32) -> Vec<usize> {
        (0..self.weights.len()).filter(|&i| self.weights[i] == w).collect()
    }

    /// Dimensions of `gr^p` by degree, counted on monomials within `caps`.
    pub fn gr_table(&self, caps: &Caps) -> Result<DimTable> {
        count_monomials(self.algebra(), &|i| Some(self.weights[i] as i32), caps, &|_| true)
    }
}

fn weights_from(alg: &Algebra, f: impl Fn(&Generator) -> i32) -> Result<Vec<u32>> {
    alg.generators()
        .iter()
        .map(|g| {
            u32::try_from(f(g)).map_err(|_| Error::Filtration(format!("generator `{}` has negative weight", g.name)))
        })
        .collect()
}

/// Counts monomials per `(weight, degree)` within `caps`, where the weight
/// of generator `i` is `weight(i)` (`None` excludes the generator) and only
/// monomials accepted by `keep` count.
pub(crate) fn count_monomials(
    alg: &Algebra,
    weight: &dyn Fn(usize) -> Option<i32>,
    caps: &Caps,
    keep: &dyn Fn(&Monomial) -> bool,
) -> Result<DimTable> {
    let mut out = DimTable::new();
    let (lo, hi) = caps.degrees;
    if lo > hi {
        return Err(Error::EmptyWindow { lo, hi });
    }
    for d in lo..=hi {
        for m in monomials_of_degree(alg, d, caps.polydegree, &|i| weight(i).is_some(), DEFAULT_LIMIT)? {
            let w: i32 = m.factors().map(|(i, e)| weight(i).unwrap_or(0) * e as i32).sum();
            if (0..=caps.weight as i32).contains(&w) && keep(&m) {
                *out.entry((w, d)).or_insert(0) += 1;
            }
        }
    }
    Ok(out)
}

/// One row of the Sym-condition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymRow {
    pub weight: u32,
    pub degree: i32,
    /// `dim gr^p F` in this degree.
    pub gr: usize,
    /// `dim (A ⊗ Sym^p(gr¹))` in this degree.
    pub sym: usize,
}

/// A verified derived foliation.
#[derive(Clone, Debug)]
pub struct FoliationPresentation {
    pub filtered: FilteredDga,
    /// Index in the filtered algebra of each base generator, in base order.
    pub base_embedding: Vec<usize>,
    /// `cot_F = gr¹F[1]`: name and degree of each weight-one generator
    /// after the shift.
    pub cot: Vec<(String, i32)>,
    /// Rank of `gr^p` over the base, for `p ≤ caps.weight`.
    pub rank_by_weight: BTreeMap<u32, usize>,
    pub sym_table: Vec<SymRow>,
    pub caps: Caps,
}

/// Why [`check_foliation`] rejected its input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoliationFailure {
    /// `gr⁰F` is not the base algebra.
    Base(String),
    /// The Sym condition fails first at this weight and degree.
    Sym { weight: u32, degree: i32, gr: usize, sym: usize },
}

#[derive(Clone, Debug)]
pub enum FoliationCheck {
    Foliation(Box<FoliationPresentation>),
    Counterexample(FoliationFailure),
}

impl FoliationCheck {
    pub fn is_foliation(&self) -> bool {
        matches!(self, FoliationCheck::Foliation(_))
    }

    pub fn presentation(&self) -> Option<&FoliationPresentation> {
        match self {
            FoliationCheck::Foliation(p) => Some(p),
            FoliationCheck::Counterexample(_) => None,
        }
    }
}

/// Counts monomials of exactly `p` factors from `gens`, by degree.
fn sym_power_degrees(alg: &Algebra, gens: &[usize], p: u32) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    fn go(alg: &Algebra, gens: &[usize], k: usize, left: u32, deg: i32, out: &mut BTreeMap<i32, usize>) {
        if left == 0 {
            *out.entry(deg).or_insert(0) += 1;
            return;
        }
        if k == gens.len() {
            return;
        }
        let g = alg.generator(gens[k]);
        let max = if g.is_odd() { left.min(1) } else { left };
        for e in 0..=max {
            go(alg, gens, k + 1, left - e, deg + g.degree * e as i32, out);
        }
    }
    go(alg, gens, 0, p, 0, &mut out);
    out
}

/// Checks that `F` is a derived foliation over `base` within `caps`:
/// `gr⁰F ≅ base` (generators and differential) and
/// `Sym_{gr⁰F}(gr¹F⟨1⟩) → gr F` is an isomorphism weight by weight.
pub fn check_foliation(f: &FilteredDga, base: &DgAlgebra, caps: Caps) -> Result<FoliationCheck> {
    let alg = f.algebra();
    let balg = base.algebra();
    let zero = f.generators_of_weight(0);
    let fail = |s: String| Ok(FoliationCheck::Counterexample(FoliationFailure::Base(s)));
    if zero.len() != balg.len() {
        return fail(format!("gr0 has {} generators, the base has {}", zero.len(), balg.len()));
    }
    let mut embedding = Vec::with_capacity(balg.len());
    for g in balg.generators() {
        match alg.index_of(&g.name) {
            Ok(i) if f.weights[i] == 0 && alg.generator(i).degree == g.degree => embedding.push(i),
            _ => return fail(format!("base generator `{}` has no weight-0 counterpart", g.name)),
        }
    }
    // weight-0 part of d on weight-0 generators, read in the base
    let to_base: HashMap<usize, usize> = embedding.iter().enumerate().map(|(b, &i)| (i, b)).collect();
    for (b, &i) in embedding.iter().enumerate() {
        let dg = f.dga().differential().value(i);
        let low: Poly = dg
            .terms()
            .filter(|(m, _)| f.weight_of(m) == 0)
            .map(|(m, c)| (Monomial::from_pairs(m.factors().map(|(j, e)| (to_base[&j], e))), c.clone()))
            .collect();
        let expect = base.differential().value(b);
        if low != expect {
            return fail(format!("weight-0 differential differs from the base on `{}`", balg.generator(b).name));
        }
    }

    let gr = f.gr_table(&caps)?;
    let ones = f.generators_of_weight(1);
    let mut sym_table = Vec::new();
    let mut rank_by_weight = BTreeMap::new();
    for p in 0..=caps.weight {
        let sp = sym_power_degrees(alg, &ones, p);
        rank_by_weight.insert(p, sp.values().sum());
        for d in caps.degrees.0..=caps.degrees.1 {
            // the base factor has polynomial degree at most cap - p
            let mut sym = 0;
            if p <= caps.polydegree {
                for (&e, &n) in &sp {
                    let tight = Caps { weight: 0, degrees: (d - e, d - e), polydegree: caps.polydegree - p };
                    let a = count_monomials(alg, &|i| (f.weights[i] == 0).then_some(0), &tight, &|_| true)?;
                    sym += n * a.get(&(0, d - e)).copied().unwrap_or(0);
                }
            }
            let g = gr.get(&(p as i32, d)).copied().unwrap_or(0);
            sym_table.push(SymRow { weight: p, degree: d, gr: g, sym });
            if g != sym {
                return Ok(FoliationCheck::Counterexample(FoliationFailure::Sym { weight: p, degree: d, gr: g, sym }));
            }
        }
    }
    let cot = ones.iter().map(|&i| (alg.generator(i).name.clone(), alg.generator(i).degree - 1)).collect();
    Ok(FoliationCheck::Foliation(Box::new(FoliationPresentation {
        filtered: f.clone(),
        base_embedding: embedding,
        cot,
        rank_by_weight,
        sym_table,
        caps,
    })))
}

/// Both sides of the graded relative cotangent formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelCotReport {
    /// Relative Kähler differentials `Ω_{gr G / gr F}` by `(weight, degree)`.
    pub lhs: DimTable,
    /// `cofib(cot_F → cot_G) ⊗_A gr G [-1](1)` by `(weight, degree)`.
    pub rhs: DimTable,
    pub mismatch: Option<(i32, i32)>,
    pub caps: Caps,
}

impl RelCotReport {
    pub fn is_ok(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn first_mismatch(a: &DimTable, b: &DimTable) -> Option<(i32, i32)> {
    a.keys().chain(b.keys()).copied().filter(|k| a.get(k) != b.get(k)).min()
}

/// A morphism of foliations over the same base, given by the images of the
/// generators of `F` in `G`.
#[derive(Clone, Debug)]
pub struct FoliationMap<'a> {
    pub source: &'a FoliationPresentation,
    pub target: &'a FoliationPresentation,
    pub images: Vec<Poly>,
}

impl FoliationMap<'_> {
    /// Constant matrix of the induced map `gr¹F → gr¹G`, rows indexed by the
    /// weight-one generators of `F`, columns by those of `G`.
    fn linear_part(&self) -> Result<(Vec<usize>, Vec<usize>, Vec<SparseVec>)> {
        let (fs, gs) = (&self.source.filtered, &self.target.filtered);
        if self.images.len() != fs.algebra().len() {
            return Err(Error::Precondition(format!(
                "{} images for {} generators",
                self.images.len(),
                fs.algebra().len()
            )));
        }
        let (falg, galg) = (fs.algebra(), gs.algebra());
        // bases must agree, and the map must be the identity on them
        let fb: Vec<&Generator> = self.source.base_embedding.iter().map(|&i| falg.generator(i)).collect();
        let gb: Vec<&Generator> = self.target.base_embedding.iter().map(|&i| galg.generator(i)).collect();
        if fb.len() != gb.len() || fb.iter().zip(&gb).any(|(a, b)| a.name != b.name || a.degree != b.degree) {
            return Err(Error::Precondition("foliations over different bases".into()));
        }
        for (&i, &j) in self.source.base_embedding.iter().zip(&self.target.base_embedding) {
            if self.images[i] != galg.gen(j) {
                return Err(Error::Precondition(format!(
                    "the map is not the identity on base generator `{}`",
                    falg.generator(i).name
                )));
            }
        }
        let f1 = fs.generators_of_weight(1);
        let g1 = gs.generators_of_weight(1);
        let col: HashMap<usize, usize> = g1.iter().enumerate().map(|(c, &g)| (g, c)).collect();
        let mut rows = Vec::new();
        for &f in &f1 {
            let mut row = SparseVec::new();
            for (m, c) in self.images[f].terms() {
                if gs.weight_of(m) != 1 {
                    continue;
                }
                match m.factors().collect::<Vec<_>>().as_slice() {
                    [(g, 1)] if col.contains_key(g) => {
                        row.insert(col[g], c.clone());
                    }
                    _ => {
                        return Err(Error::Unsupported(format!(
                            "image of `{}` has a weight-one part with non-constant coefficients",
                            falg.generator(f).name
                        )))
                    }
                }
            }
            rows.push(row);
        }
        Ok((f1, g1, rows))
    }
}

/// Compares the graded relative cotangent complex computed from Kähler
/// differentials with the cofiber formula, within `caps`.
///
/// The weight-one map must have constant coefficients and be injective.
pub fn relative_cot_graded(map: &FoliationMap<'_>, caps: Caps) -> Result<RelCotReport> {
    let (_, g1, rows) = map.linear_part()?;
    let gs = &map.target.filtered;
    let galg = gs.algebra();
    let mut e = Echelon::new();
    for r in &rows {
        e.insert(r.clone());
    }
    if e.rank() < rows.len() {
        return Err(Error::Unsupported("the map on weight-one generators is not injective".into()));
    }

    // lhs: h·δg modulo h·Σ a_fg δg, per (weight, degree)
    let inner = Caps { weight: caps.weight.saturating_sub(1), ..caps };
    // per key: (monomial, generator) columns and the relation rows
    type Block = (Vec<(Monomial, usize)>, Vec<SparseVec>);
    let mut by_key: BTreeMap<(i32, i32), Block> = BTreeMap::new();
    let g1_degrees: Vec<i32> = g1.iter().map(|&g| galg.generator(g).degree).collect();
    let (Some(&dmin), Some(&dmax)) = (g1_degrees.iter().min(), g1_degrees.iter().max()) else {
        return Ok(RelCotReport { lhs: DimTable::new(), rhs: DimTable::new(), mismatch: None, caps });
    };
    let mut hs: Vec<(Monomial, i32, i32)> = Vec::new();
    for d in caps.degrees.0 - dmax..=caps.degrees.1 - dmin {
        for m in monomials_of_degree(galg, d, caps.polydegree, &|_| true, DEFAULT_LIMIT)? {
            let w = gs.weight_of(&m) as i32;
            if w <= inner.weight as i32 {
                hs.push((m, w, d));
            }
        }
    }
    for (h, w, d) in &hs {
        for (c, &g) in g1.iter().enumerate() {
            let key = (w + 1, d + galg.generator(g).degree);
            if key.1 < caps.degrees.0 || key.1 > caps.degrees.1 {
                continue;
            }
            by_key.entry(key).or_default().0.push((h.clone(), c));
        }
    }
    let mut lhs = DimTable::new();
    for (key, (cols, _)) in &mut by_key {
        let index: HashMap<(Monomial, usize), usize> = cols.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut rel = Echelon::new();
        for (h, _, _) in hs.iter().filter(|(_, w, _)| w + 1 == key.0) {
            for r in &rows {
                let v: Option<SparseVec> =
                    r.iter().map(|(c, a)| index.get(&(h.clone(), *c)).map(|&i| (i, a.clone()))).collect();
                if let Some(v) = v.filter(|v| !v.is_empty()) {
                    rel.insert(v);
                }
            }
        }
        let n = cols.len() - rel.rank();
        if n > 0 {
            lhs.insert(*key, n);
        }
    }

    // rhs: cokernel of the constant matrix, tensored with gr G
    let mut coker: BTreeMap<i32, usize> = BTreeMap::new();
    for (c, &g) in g1.iter().enumerate() {
        if !e.is_pivot(c) {
            *coker.entry(galg.generator(g).degree).or_insert(0) += 1;
        }
    }
    let mut rhs = DimTable::new();
    for (_, w, d) in &hs {
        for (&e_deg, &n) in &coker {
            let key = (w + 1, d + e_deg);
            if key.1 >= caps.degrees.0 && key.1 <= caps.degrees.1 {
                *rhs.entry(key).or_insert(0) += n;
            }
        }
    }
    let mismatch = first_mismatch(&lhs, &rhs);
    Ok(RelCotReport { lhs, rhs, mismatch, caps })
}

/// Dimension tables for the graded pieces of the polyvector center model
/// relative to a foliation map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentfolReport {
    pub shift: i32,
    /// `gr^i` of the model on the diagonal external weight `= i`, by
    /// `(i, degree)`.
    pub lhs: DimTable,
    /// `Sym^i_A` of the relative tangent generators in degree `n - |v|`.
    pub rhs: DimTable,
    /// Degrees of the relative tangent generators.
    pub tangent_degrees: Vec<i32>,
    pub mismatch: Option<(i32, i32)>,
}

impl CentfolReport {
    pub fn is_ok(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Builds the polyvector model of the center of `G` relative to `F` for an
/// `n`-shifted twist and compares its graded pieces with the symmetric
/// algebra on the relative tangent complex.
///
/// The model adjoins to `G` one tangent generator `D(v)` of degree `n - |v|`,
/// internal weight 1 and external weight 1 for each relative direction `v`
/// (the weight-one generators of `G` outside the image of `F`).
pub fn centfol_table(map: &FoliationMap<'_>, n: i32, caps: Caps) -> Result<CentfolReport> {
    let (_, g1, rows) = map.linear_part()?;
    let gs = &map.target.filtered;
    let galg = gs.algebra();
    let mut e = Echelon::new();
    for r in &rows {
        e.insert(r.clone());
    }
    if e.rank() < rows.len() {
        return Err(Error::Unsupported("the map on weight-one generators is not injective".into()));
    }
    let rel: Vec<usize> = g1.iter().enumerate().filter(|(c, _)| !e.is_pivot(*c)).map(|(_, &g)| g).collect();
    let tangent_degrees: Vec<i32> = rel.iter().map(|&v| n - galg.generator(v).degree).collect();

    // model: G's generators, internal weight from the filtration, plus D(v)
    let mut gens: Vec<Generator> = galg
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| Generator::with_weights(g.name.clone(), g.degree, gs.weights()[i] as i32, 0))
        .collect();
    for (&v, &deg) in rel.iter().zip(&tangent_degrees) {
        gens.push(Generator::with_weights(format!("D({})", galg.generator(v).name), deg, 1, 1));
    }
    let model = Algebra::new(gens)?;
    let lhs = count_monomials(&model, &|i| Some(model.generator(i).weight), &caps, &|m| {
        let (w, h) = model.weights_of(m);
        w == h
    })?;

    // rhs: base monomials times Sym^i of the tangent degrees
    let tangent =
        Algebra::new(tangent_degrees.iter().enumerate().map(|(k, &d)| Generator::new(format!("t{k}"), d)).collect())?;
    let all: Vec<usize> = (0..tangent.len()).collect();
    let base_idx = &map.target.base_embedding;
    let mut rhs = DimTable::new();
    for i in 0..=caps.weight {
        if i > caps.polydegree {
            break;
        }
        let sp = sym_power_degrees(&tangent, &all, i);
        for (&td, &cnt) in &sp {
            let tight = Caps {
                polydegree: caps.polydegree - i,
                weight: 0,
                degrees: (caps.degrees.0 - td, caps.degrees.1 - td),
            };
            let base = count_monomials(galg, &|j| base_idx.contains(&j).then_some(0), &tight, &|_| true)?;
            for (&(_, bd), &bn) in &base {
                let d = bd + td;
                if d >= caps.degrees.0 && d <= caps.degrees.1 {
                    *rhs.entry((i as i32, d)).or_insert(0) += cnt * bn;
                }
            }
        }
    }
    let mismatch = first_mismatch(&lhs, &rhs);
    Ok(CentfolReport { shift: n, lhs, rhs, tangent_degrees, mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Derivation;

    fn line() -> DgAlgebra {
        DgAlgebra::free(Arc::new(Algebra::new(vec![Generator::new("x", 0)]).unwrap()))
    }

    fn caps() -> Caps {
        Caps { weight: 2, degrees: (-1, 2), polydegree: 3 }
    }

    #[test]
    fn odd_direction_is_a_foliation() {
        let alg = Arc::new(Algebra::new(vec![Generator::new("x", 0), Generator::new("e", 1)]).unwrap());
        let d = Derivation::new(&alg, 1, (0, 0), [(0, alg.gen(1))]).unwrap();
        let f = FilteredDga::new(DgAlgebra::new(alg, d).unwrap(), vec![0, 1]).unwrap();
        let p = check_foliation(&f, &line(), caps()).unwrap();
        let p = p.presentation().unwrap();
        assert_eq!(p.cot, [("e".to_string(), 0)]);
        assert_eq!(p.rank_by_weight.values().copied().collect::<Vec<_>>(), [1, 1, 0]);
    }

    #[test]
    fn weight_two_generator_breaks_sym() {
        let alg = Arc::new(Algebra::new(vec![Generator::new("x", 0), Generator::new("t", 0)]).unwrap());
        let f = FilteredDga::new(DgAlgebra::free(alg), vec![0, 2]).unwrap();
        match check_foliation(&f, &line(), caps()).unwrap() {
            FoliationCheck::Counterexample(FoliationFailure::Sym { weight, degree, gr, sym }) => {
                assert_eq!((weight, degree, gr, sym), (2, 0, 3, 0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn base_differential_must_match() {
        let alg = Arc::new(Algebra::new(vec![Generator::new("x", 0), Generator::new("xi", -1)]).unwrap());
        let d = Derivation::new(&alg, 1, (0, 0), [(1, alg.gen(0))]).unwrap();
        let f = FilteredDga::new(DgAlgebra::new(alg.clone(), d).unwrap(), vec![0, 0]).unwrap();
        let base = DgAlgebra::free(alg);
        assert!(matches!(
            check_foliation(&f, &base, caps()).unwrap(),
            FoliationCheck::Counterexample(FoliationFailure::Base(_))
        ));
    }

    #[test]
    fn filtration_must_be_preserved() {
        let alg = Arc::new(Algebra::new(vec![Generator::new("x", 0), Generator::new("e", 1)]).unwrap());
        let d = Derivation::new(&alg, 1, (0, 0), [(0, alg.gen(1))]).unwrap();
        assert!(matches!(FilteredDga::new(DgAlgebra::new(alg, d).unwrap(), vec![1, 0]), Err(Error::Filtration(_))));
    }
}
