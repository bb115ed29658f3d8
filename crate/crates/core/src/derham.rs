//! De Rham complexes with the Hodge filtration, closed-form towers and
//! shifted symplectic, isotropic and Lagrangian structures on strict models.
//!
//! `DR(A)` adjoins to `A` one generator `d(g)` of degree `|g| + 1` and Hodge
//! weight 1 for each generator `g`. Its differential is `d_int + d_dR`,
//! where `d_dR(g) = d(g)` and `d_int(d(g)) = -d_dR(d_A g)`, so the two
//! anticommute.
//!
//! A closed tower `(ω_p, ω_{p+1}, ...)` satisfies the ladder
//! `d_int ω_p = 0`, `d_dR ω_i = d_int ω_{i+1}`, i.e. it is a cycle for
//! `d_int - d_dR`. The same operator is used for isotropic homotopies.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::filtered::{check_foliation, count_monomials, Caps, DimTable, FilteredDga, FoliationCheck};
use crate::graded::{Algebra, AlgebraMap, Derivation, DgAlgebra, Generator, Grading, Poly, DEFAULT_PIECE_LIMIT};
use crate::linalg::{block_witness, det, monomials_of_degree, Echelon, MonomialIndex};
use crate::{Error, Result, Q};

/// `DR(A)` or a relative `DR(B/A)`, as a Hodge-filtered DGA.
#[derive(Clone, Debug)]
pub struct DeRhamComplex {
    filtered: FilteredDga,
    base: DgAlgebra,
    forms: Vec<Option<usize>>,
    d_int: Derivation,
    d_dr: Derivation,
    relative: Option<Relative>,
}

#[derive(Clone, Debug)]
struct Relative {
    map: AlgebraMap,
    /// `(source generator, eliminated target generator, coefficient)`.
    pivots: Vec<(usize, usize, Q)>,
}

fn form_name(g: &str) -> String {
    format!("d({g})")
}

/// Builds `DR(A)`.
pub fn de_rham(a: &DgAlgebra) -> Result<DeRhamComplex> {
    let n = a.algebra().len();
    build(a, &vec![true; n], |_, _| unreachable!(), None)
}

/// Builds `DR(B/A)` for a DGA map `A → B` given by generator images.
///
/// Each non-constant image must have the form `c·g + p` with `c` a nonzero
/// rational, `g` a generator of `B` (the pivot) and `p` free of every pivot;
/// the relation `d(image) = 0` then eliminates `d(g)`.
pub fn relative_de_rham(a: &DgAlgebra, b: &DgAlgebra, images: Vec<Poly>) -> Result<DeRhamComplex> {
    let map = AlgebraMap::dga(a, b, images)?;
    let balg = b.algebra();
    let mut pivots: Vec<(usize, usize, Q)> = Vec::new();
    for (i, img) in map.images().iter().enumerate() {
        if img.is_zero() || img.as_constant().is_some() {
            continue;
        }
        let candidate = img.terms().find_map(|(m, c)| {
            let f: Vec<_> = m.factors().collect();
            match f.as_slice() {
                [(g, 1)]
                    if !pivots.iter().any(|p| p.1 == *g)
                        && img.terms().filter(|(m2, _)| m2.exponent(*g) > 0).count() == 1 =>
                {
                    Some((*g, c.clone()))
                }
                _ => None,
            }
        });
        let Some((g, c)) = candidate else {
            return Err(Error::Unsupported(format!(
                "image of `{}` has no linear pivot; the relative de Rham complex is not free",
                a.algebra().generator(i).name
            )));
        };
        pivots.push((i, g, c));
    }
    for &(i, g, _) in &pivots {
        for (j, img) in map.images().iter().enumerate() {
            if j != i && img.terms().any(|(m, _)| m.exponent(g) > 0) {
                return Err(Error::Unsupported(format!(
                    "pivot `{}` also occurs in the image of `{}`",
                    balg.generator(g).name,
                    a.algebra().generator(j).name
                )));
            }
        }
    }
    let mut keep = vec![true; balg.len()];
    for p in &pivots {
        keep[p.1] = false;
    }
    let rel = Relative { map, pivots };
    build(
        b,
        &keep,
        |pivot, d_dr| {
            let (i, g, c) = rel.pivots.iter().find(|p| p.1 == pivot).expect("pivot");
            let rest = &rel.map.image(*i).clone() - &Poly::term(c.clone(), crate::graded::Monomial::var(*g));
            d_dr(&rest).scale(&(-Q::one() / c))
        },
        Some(rel.clone()),
    )
}

fn build(
    b: &DgAlgebra,
    keep: &[bool],
    pivot_value: impl Fn(usize, &dyn Fn(&Poly) -> Poly) -> Poly,
    relative: Option<Relative>,
) -> Result<DeRhamComplex> {
    let balg = b.algebra();
    if let Some(g) = balg.generators().iter().find(|g| g.hodge != 0) {
        return Err(Error::Filtration(format!("generator `{}` already has Hodge weight {}", g.name, g.hodge)));
    }
    let mut gens = balg.generators().to_vec();
    let mut forms = vec![None; balg.len()];
    for (i, g) in balg.generators().iter().enumerate() {
        if keep[i] {
            forms[i] = Some(gens.len());
            gens.push(Generator::with_weights(form_name(&g.name), g.degree + 1, g.weight, 1));
        }
    }
    let alg = Arc::new(Algebra::new(gens)?);

    let mut d_dr =
        Derivation::new(&alg, 1, (0, 1), forms.iter().enumerate().filter_map(|(i, f)| f.map(|j| (i, alg.gen(j)))))?;
    let free_dr = d_dr.clone();
    let apply_free = |p: &Poly| free_dr.apply_unchecked(&alg, p);
    for i in 0..balg.len() {
        if !keep[i] {
            d_dr.set(&alg, i, pivot_value(i, &apply_free))?;
        }
    }
    let mut d_int = Derivation::new(&alg, 1, (0, 0), (0..balg.len()).map(|i| (i, b.differential().value(i))))?;
    for (i, f) in forms.iter().enumerate() {
        if let Some(j) = f {
            let v = d_dr.apply_unchecked(&alg, &b.differential().value(i));
            d_int.set(&alg, *j, -v)?;
        }
    }
    let total = d_int.add(&d_dr)?;
    let dga = DgAlgebra::new(alg.clone(), total)?;
    for i in 0..alg.len() {
        let g = alg.gen(i);
        let dd = d_dr.apply_unchecked(&alg, &d_dr.apply_unchecked(&alg, &g));
        let ii = d_int.apply_unchecked(&alg, &d_int.apply_unchecked(&alg, &g));
        let anti = &d_int.apply_unchecked(&alg, &d_dr.apply_unchecked(&alg, &g))
            + &d_dr.apply_unchecked(&alg, &d_int.apply_unchecked(&alg, &g));
        if !(dd.is_zero() && ii.is_zero() && anti.is_zero()) {
            return Err(Error::Precondition(format!(
                "de Rham differentials are incompatible on `{}`",
                alg.generator(i).name
            )));
        }
    }
    let filtered = FilteredDga::by_hodge_weight(dga)?;
    Ok(DeRhamComplex { filtered, base: b.clone(), forms, d_int, d_dr, relative })
}

/// Both sides of `DR(B/A) ≅ DR(B) ⊗_{DR(A)} A` on associated graded pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorIdentityReport {
    /// `gr DR(B/A)` by `(Hodge weight, degree)`.
    pub relative: DimTable,
    /// `gr DR(B)` modulo the ideal generated by the images of `d(A)`.
    pub quotient: DimTable,
    pub mismatch: Option<(i32, i32)>,
}

impl TensorIdentityReport {
    pub fn is_ok(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl DeRhamComplex {
    pub fn algebra(&self) -> &Arc<Algebra> {
        self.filtered.algebra()
    }

    pub fn dga(&self) -> &DgAlgebra {
        self.filtered.dga()
    }

    pub fn filtered(&self) -> &FilteredDga {
        &self.filtered
    }

    /// The algebra whose forms these are (`B` for `DR(B/A)`).
    pub fn base(&self) -> &DgAlgebra {
        &self.base
    }

    /// Index of `d(g)` for base generator `g`, if it was not eliminated.
    pub fn form_generator(&self, g: usize) -> Option<usize> {
        self.forms.get(g).copied().flatten()
    }

    pub fn is_relative(&self) -> bool {
        self.relative.is_some()
    }

    pub fn d_int(&self, p: &Poly) -> Result<Poly> {
        self.d_int.apply(self.algebra(), p)
    }

    pub fn d_dr(&self, p: &Poly) -> Result<Poly> {
        self.d_dr.apply(self.algebra(), p)
    }

    /// `d_int - d_dR`, the operator of the closed-form ladder.
    pub fn ladder(&self, p: &Poly) -> Result<Poly> {
        Ok(&self.d_int(p)? - &self.d_dr(p)?)
    }

    /// Embeds a base element.
    pub fn embed(&self, p: &Poly) -> Result<Poly> {
        self.base.algebra().check(p)?;
        Ok(p.clone())
    }

    /// Dimensions of `gr^p` by `(p, degree)` within `caps`.
    pub fn gr_table(&self, caps: &Caps) -> Result<DimTable> {
        self.filtered.gr_table(caps)
    }

    /// Checks `gr DR ≅ Sym(Ω¹[-1]⟨1⟩)` within `caps`.
    pub fn check_gr(&self, caps: Caps) -> Result<FoliationCheck> {
        check_foliation(&self.filtered, &self.base, caps)
    }

    /// Compares the relative complex with the quotient of `gr DR(B)` by the
    /// ideal generated by `d(f(a))`, degree by degree within `caps`.
    ///
    /// The images must be linear so the ideal is homogeneous in polynomial
    /// degree.
    pub fn tensor_identity(&self, caps: Caps) -> Result<TensorIdentityReport> {
        let rel = self.relative.as_ref().ok_or_else(|| Error::Precondition("not a relative complex".into()))?;
        if rel.map.images().iter().any(|p| p.max_total().unwrap_or(0) > 1) {
            return Err(Error::Unsupported("tensor identity needs linear images".into()));
        }
        let relative = self.gr_table(&caps)?;
        let full = de_rham(&self.base)?;
        let falg = full.algebra().clone();
        let relations: Vec<Poly> = rel.map.images().iter().map(|p| full.d_dr(p)).collect::<Result<_>>()?;
        let hodge = |m: &crate::graded::Monomial| falg.weights_of(m).1;
        let mut quotient = DimTable::new();
        for w in 0..=caps.weight as i32 {
            for k in caps.degrees.0..=caps.degrees.1 {
                let basis = MonomialIndex::new(
                    monomials_of_degree(&falg, k, caps.polydegree, &|_| true, DEFAULT_PIECE_LIMIT)?
                        .into_iter()
                        .filter(|m| hodge(m) == w)
                        .collect(),
                );
                let mut e = Echelon::new();
                for r in relations.iter().filter(|r| !r.is_zero()) {
                    let rd = falg.degree(r).expect("homogeneous relation");
                    if caps.polydegree == 0 {
                        break;
                    }
                    for h in monomials_of_degree(&falg, k - rd, caps.polydegree - 1, &|_| true, DEFAULT_PIECE_LIMIT)? {
                        if hodge(&h) != w - 1 {
                            continue;
                        }
                        let prod = falg.mul(&Poly::monomial(h), r)?;
                        let v = basis
                            .vector(&prod)
                            .ok_or_else(|| Error::Internal("relation left the truncation".into()))?;
                        e.insert(v);
                    }
                }
                let n = basis.len() - e.rank();
                if n > 0 {
                    quotient.insert((w, k), n);
                }
            }
        }
        let relative: DimTable = relative.into_iter().filter(|(_, n)| *n > 0).collect();
        let mismatch =
            relative.keys().chain(quotient.keys()).copied().filter(|k| relative.get(k) != quotient.get(k)).min();
        Ok(TensorIdentityReport { relative, quotient, mismatch })
    }
}

/// A finite list `(ω_p, ..., ω_top)` of forms, `ω_i` of Hodge weight `i` and
/// total degree `n + 2` for an `n`-shifted tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormTower {
    pub shift: i32,
    pub start: u32,
    pub forms: Vec<Poly>,
}

impl ClosedFormTower {
    pub fn new(shift: i32, start: u32, forms: Vec<Poly>) -> Self {
        ClosedFormTower { shift, start, forms }
    }

    /// A tower with only its leading 2-form.
    pub fn two_form(shift: i32, omega: Poly) -> Self {
        ClosedFormTower { shift, start: 2, forms: vec![omega] }
    }

    /// `ω_w`, zero outside the recorded range.
    pub fn form(&self, w: u32) -> Poly {
        w.checked_sub(self.start).and_then(|i| self.forms.get(i as usize)).cloned().unwrap_or_default()
    }

    pub fn top(&self) -> u32 {
        self.start + self.forms.len().saturating_sub(1) as u32
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerCheck {
    Ok,
    /// The ladder equation of Hodge weight `weight` fails; `index` is the
    /// lowest tower entry it involves.
    Counterexample {
        index: u32,
        weight: u32,
        residue: Poly,
    },
}

impl TowerCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, TowerCheck::Ok)
    }
}

fn check_form(alg: &Algebra, p: &Poly, degree: i32, hodge: u32, what: &str) -> Result<()> {
    alg.check(p)?;
    match alg.grading(p) {
        Grading::Zero => Ok(()),
        Grading::Homogeneous { degree: d, hodge: h, .. } if d == degree && h == hodge as i32 => Ok(()),
        _ => Err(Error::Inhomogeneous(format!("{what} of weight {hodge} must have degree {degree}"))),
    }
}

/// Verifies every ladder equation of the tower exactly.
pub fn check_closed_tower(dr: &DeRhamComplex, tower: &ClosedFormTower) -> Result<TowerCheck> {
    let n = tower.shift;
    for (k, f) in tower.forms.iter().enumerate() {
        check_form(dr.algebra(), f, n + 2, tower.start + k as u32, "tower entry")?;
    }
    for w in tower.start..=tower.top() + 1 {
        let below = if w > tower.start { dr.d_dr(&tower.form(w - 1))? } else { Poly::zero() };
        let residue = &dr.d_int(&tower.form(w))? - &below;
        if !residue.is_zero() {
            let index = if w == tower.start { w } else { w - 1 };
            return Ok(TowerCheck::Counterexample { index, weight: w, residue });
        }
    }
    Ok(TowerCheck::Ok)
}

/// An accepted shifted symplectic structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticStructure {
    pub shift: i32,
    pub tower: ClosedFormTower,
    /// Base generators indexing the pairing matrix.
    pub generators: Vec<usize>,
    /// `M[a][b] = ∂⃗_{d(a)} ∂⃗_{d(b)} ω₂`.
    pub matrix: Vec<Vec<Poly>>,
    pub determinant: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymplecticCheck {
    Symplectic(Box<SymplecticStructure>),
    /// `witness` is the determinant of the first degree block of the pairing
    /// that is not a nonzero constant (zero for a non-square block).
    Degenerate {
        matrix: Vec<Vec<Poly>>,
        determinant: Poly,
        block_degree: i32,
        witness: Poly,
    },
}

impl SymplecticCheck {
    pub fn is_symplectic(&self) -> bool {
        matches!(self, SymplecticCheck::Symplectic(_))
    }

    pub fn structure(&self) -> Option<&SymplecticStructure> {
        match self {
            SymplecticCheck::Symplectic(s) => Some(s),
            SymplecticCheck::Degenerate { .. } => None,
        }
    }
}

/// Pairing matrix of a 2-form on the base generators that carry forms.
pub fn pairing_matrix(dr: &DeRhamComplex, omega2: &Poly) -> Result<(Vec<usize>, Vec<Vec<Poly>>)> {
    let alg = dr.algebra();
    alg.check(omega2)?;
    let gens: Vec<usize> = (0..dr.base().algebra().len()).filter(|&g| dr.form_generator(g).is_some()).collect();
    let m = gens
        .iter()
        .map(|&a| {
            let da = dr.form_generator(a).expect("form");
            gens.iter()
                .map(|&b| {
                    let db = dr.form_generator(b).expect("form");
                    alg.left_derivative(&alg.left_derivative(omega2, db), da)
                })
                .collect()
        })
        .collect();
    Ok((gens, m))
}

/// The 2-form whose pairing matrix is `m`, which must be graded symmetric.
pub fn form_from_matrix(dr: &DeRhamComplex, gens: &[usize], m: &[Vec<Poly>]) -> Result<Poly> {
    let alg = dr.algebra();
    let half = Q::new(1.into(), 2.into());
    let mut omega = Poly::zero();
    for (i, &a) in gens.iter().enumerate() {
        let da = alg.gen(dr.form_generator(a).ok_or_else(|| Error::Precondition("generator has no form".into()))?);
        for (j, &b) in gens.iter().enumerate().skip(i) {
            let db = alg.gen(dr.form_generator(b).ok_or_else(|| Error::Precondition("generator has no form".into()))?);
            let pair = alg.mul(&da, &db)?;
            let c = if i == j { m[i][i].scale(&half) } else { m[j][i].clone() };
            omega += &alg.mul(&c, &pair)?;
        }
    }
    let (_, back) = pairing_matrix(dr, &omega)?;
    if back != m {
        return Err(Error::Precondition("pairing matrix is not graded symmetric".into()));
    }
    Ok(omega)
}

/// Accepts a closed tower iff its leading 2-form pairs generators of degree
/// `k` with generators of degree `n - k` through blocks whose determinants
/// are nonzero rational constants.
pub fn check_symplectic(dr: &DeRhamComplex, tower: &ClosedFormTower) -> Result<SymplecticCheck> {
    if tower.start != 2 {
        return Err(Error::Precondition(format!("symplectic towers start at weight 2, not {}", tower.start)));
    }
    if let TowerCheck::Counterexample { weight, .. } = check_closed_tower(dr, tower)? {
        return Err(Error::Precondition(format!("tower is not closed (weight {weight})")));
    }
    let n = tower.shift;
    let balg = dr.base().algebra().clone();
    let alg = dr.algebra();
    let (gens, matrix) = pairing_matrix(dr, &tower.form(2))?;
    let determinant = det(alg, &matrix)?;
    let degrees: Vec<i32> = gens.iter().map(|&g| balg.generator(g).degree).collect();
    if let Some((block_degree, witness)) = block_witness(alg, &degrees, &matrix, n)? {
        return Ok(SymplecticCheck::Degenerate { matrix, determinant, block_degree, witness });
    }
    Ok(SymplecticCheck::Symplectic(Box::new(SymplecticStructure {
        shift: n,
        tower: tower.clone(),
        generators: gens,
        matrix,
        determinant,
    })))
}

/// Outcome of [`check_isotropic_lagrangian`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotropyVerdict {
    /// `(d_int - d_dR) h ≠ f*ω` in this Hodge weight.
    Fail {
        weight: u32,
        residue: Poly,
    },
    Isotropic(LagrangianVerdict),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LagrangianVerdict {
    /// `Θ_h` from the tangent generators of the source to the surviving
    /// relative cotangent generators is square with unit determinant.
    Lagrangian {
        relative_generators: Vec<String>,
        matrix: Vec<Vec<Poly>>,
        determinant: Poly,
    },
    NotLagrangian {
        relative_generators: Vec<String>,
        matrix: Vec<Vec<Poly>>,
        reason: String,
    },
    /// The non-degeneracy test needs a polynomial algebra with zero
    /// differential as source.
    NotEvaluated(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyReport {
    /// `f*ω_i`, starting at weight 2.
    pub pullback: Vec<Poly>,
    pub verdict: IsotropyVerdict,
}

impl IsotropyReport {
    pub fn is_isotropic(&self) -> bool {
        matches!(self.verdict, IsotropyVerdict::Isotropic(_))
    }

    pub fn is_lagrangian(&self) -> bool {
        matches!(self.verdict, IsotropyVerdict::Isotropic(LagrangianVerdict::Lagrangian { .. }))
    }
}

/// Pulls forms back along `f: B → A`.
fn pullback_images(dr_b: &DeRhamComplex, dr_a: &DeRhamComplex, f: &AlgebraMap) -> Result<Vec<Poly>> {
    let balg = dr_b.base().algebra();
    let mut images: Vec<Poly> = f.images().to_vec();
    images.resize(dr_b.algebra().len(), Poly::zero());
    for g in 0..balg.len() {
        let j = dr_b.form_generator(g).ok_or_else(|| Error::Unsupported("pullback from a relative complex".into()))?;
        images[j] = dr_a.d_dr(f.image(g))?;
    }
    Ok(images)
}

/// Checks an isotropic structure `h = (h_2, h_3, ...)` on `f: B → A` for the
/// symplectic structure `sym` on `B`, and then whether it is Lagrangian.
///
/// `h_w` must have Hodge weight `w` and degree `n + 1`; isotropy means
/// `(d_int - d_dR) h = f*ω` weight by weight.
pub fn check_isotropic_lagrangian(
    dr_b: &DeRhamComplex,
    sym: &SymplecticStructure,
    a: &DgAlgebra,
    f: &AlgebraMap,
    h: &[Poly],
) -> Result<IsotropyReport> {
    if !Arc::ptr_eq(f.source(), dr_b.base().algebra()) && **f.source() != **dr_b.base().algebra() {
        return Err(Error::Precondition("map source is not the symplectic algebra".into()));
    }
    let dr_a = de_rham(a)?;
    let n = sym.shift;
    let images = pullback_images(dr_b, &dr_a, f)?;
    for (k, p) in h.iter().enumerate() {
        check_form(dr_a.algebra(), p, n + 1, 2 + k as u32, "homotopy component")?;
    }
    let hw = |w: u32| if w >= 2 { h.get((w - 2) as usize).cloned().unwrap_or_default() } else { Poly::zero() };
    let top = sym.tower.top().max(1 + h.len() as u32) + 1;
    let mut pullback = Vec::new();
    for w in 2..=top {
        let pb = dr_b.algebra().substitute(&sym.tower.form(w), &images, dr_a.algebra())?;
        let lhs = &dr_a.d_int(&hw(w))? - &dr_a.d_dr(&hw(w - 1))?;
        let residue = &lhs - &pb;
        if w <= sym.tower.top() {
            pullback.push(pb);
        }
        if !residue.is_zero() {
            return Ok(IsotropyReport { pullback, verdict: IsotropyVerdict::Fail { weight: w, residue } });
        }
    }
    let verdict = lagrangian(dr_b, &dr_a, sym, a, f, &hw(2))?;
    Ok(IsotropyReport { pullback, verdict: IsotropyVerdict::Isotropic(verdict) })
}

/// Labels of the cone `L_A ⊕ f*L_B[1]`.
#[derive(Clone, Debug)]
enum Cell {
    Source(usize),
    Shifted(usize),
}

fn lagrangian(
    dr_b: &DeRhamComplex,
    dr_a: &DeRhamComplex,
    sym: &SymplecticStructure,
    a: &DgAlgebra,
    f: &AlgebraMap,
    h2: &Poly,
) -> Result<LagrangianVerdict> {
    let aalg = a.algebra();
    if !a.differential().is_zero() || aalg.generators().iter().any(Generator::is_odd) {
        return Ok(LagrangianVerdict::NotEvaluated("source is not a polynomial algebra with zero differential".into()));
    }
    let balg = dr_b.base().algebra();
    let (bl, al) = (dr_b.algebra(), dr_a.algebra());
    let on_a = |p: &Poly| -> Result<Poly> { f.apply(p) };

    let mut cells: Vec<Cell> = (0..aalg.len()).map(Cell::Source).collect();
    cells.extend((0..balg.len()).map(Cell::Shifted));
    let nc = cells.len();
    let zero = || vec![Poly::zero(); nc];
    // columns: d of each cell, as coefficient vectors over A
    let mut dmat: Vec<Vec<Poly>> = Vec::with_capacity(nc);
    for c in &cells {
        let mut col = zero();
        if let Cell::Shifted(b) = *c {
            for ai in 0..aalg.len() {
                col[ai] = aalg.left_derivative(f.image(b), ai);
            }
            let db = bl.gen(dr_b.form_generator(b).expect("absolute"));
            let ddb = dr_b.d_int(&db)?;
            for b2 in 0..balg.len() {
                let coeff = bl.right_derivative(&ddb, dr_b.form_generator(b2).expect("absolute"));
                col[aalg.len() + b2] = -on_a(&coeff)?;
            }
        }
        dmat.push(col);
    }
    // Θ_h columns, one per tangent generator ∂_a
    let omega2 = sym.tower.form(2);
    let mut theta: Vec<Vec<Poly>> = Vec::with_capacity(aalg.len());
    for ai in 0..aalg.len() {
        let mut col = zero();
        let da = dr_a.form_generator(ai).expect("absolute");
        let contracted = al.left_derivative(h2, da);
        for a2 in 0..aalg.len() {
            col[a2] = al.right_derivative(&contracted, dr_a.form_generator(a2).expect("absolute"));
        }
        for b in 0..balg.len() {
            let push = aalg.left_derivative(f.image(b), ai);
            if push.is_zero() {
                continue;
            }
            let inner = bl.left_derivative(&omega2, dr_b.form_generator(b).expect("absolute"));
            for b2 in 0..balg.len() {
                let c = bl.right_derivative(&inner, dr_b.form_generator(b2).expect("absolute"));
                let term = aalg.mul(&push, &on_a(&c)?)?;
                col[aalg.len() + b2] += &term;
            }
        }
        theta.push(col);
    }

    // cancel pairs joined by a constant entry of the differential
    let mut alive: Vec<bool> = vec![true; nc];
    loop {
        let found = (0..nc).filter(|&j| alive[j]).find_map(|j| {
            (0..nc)
                .filter(|&i| alive[i] && i != j)
                .find_map(|i| dmat[j][i].as_constant().filter(|c| !c.is_zero()).map(|c| (j, i, c)))
        });
        let Some((e, ep, c)) = found else { break };
        let inv = Poly::constant(Q::one() / c);
        let de = dmat[e].clone();
        for v in 0..nc {
            if !alive[v] || v == e || v == ep {
                continue;
            }
            let k = aalg.mul(&dmat[v][ep], &inv)?;
            if k.is_zero() {
                continue;
            }
            for u in 0..nc {
                if alive[u] && u != e && u != ep && !de[u].is_zero() {
                    let t = aalg.mul(&de[u], &k)?;
                    dmat[v][u] -= &t;
                }
            }
        }
        for col in theta.iter_mut() {
            let k = aalg.mul(&col[ep], &inv)?;
            if !k.is_zero() {
                for u in 0..nc {
                    if alive[u] && u != e && u != ep && !de[u].is_zero() {
                        let t = aalg.mul(&de[u], &k)?;
                        col[u] -= &t;
                    }
                }
            }
        }
        alive[e] = false;
        alive[ep] = false;
    }
    let survivors: Vec<usize> = (0..nc).filter(|&i| alive[i]).collect();
    let names: Vec<String> = survivors
        .iter()
        .map(|&i| match cells[i] {
            Cell::Source(a) => form_name(&aalg.generator(a).name),
            Cell::Shifted(b) => format!("s{}", form_name(&balg.generator(b).name)),
        })
        .collect();
    let matrix: Vec<Vec<Poly>> = survivors.iter().map(|&u| theta.iter().map(|col| col[u].clone()).collect()).collect();
    if survivors.iter().any(|&v| survivors.iter().any(|&u| !dmat[v][u].is_zero())) {
        return Ok(LagrangianVerdict::NotLagrangian {
            relative_generators: names,
            matrix,
            reason: "the reduced relative cotangent complex has a non-unit differential".into(),
        });
    }
    if survivors.len() != aalg.len() {
        return Ok(LagrangianVerdict::NotLagrangian {
            relative_generators: names,
            matrix,
            reason: format!(
                "{} tangent generators against {} relative cotangent generators",
                aalg.len(),
                survivors.len()
            ),
        });
    }
    let determinant = det(aalg, &matrix)?;
    if determinant.as_constant().is_some_and(|c| !c.is_zero()) {
        Ok(LagrangianVerdict::Lagrangian { relative_generators: names, matrix, determinant })
    } else {
        Ok(LagrangianVerdict::NotLagrangian {
            relative_generators: names,
            matrix,
            reason: format!("Θ_h has determinant {}", crate::expr::format_poly(aalg, &determinant)),
        })
    }
}

/// Hodge-weight components of a form, keyed by weight.
pub fn hodge_components(dr: &DeRhamComplex, p: &Poly) -> BTreeMap<i32, Poly> {
    let alg = dr.algebra();
    let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
    for (m, c) in p.terms() {
        out.entry(alg.weights_of(m).1).or_default().add_term(m.clone(), c.clone());
    }
    out
}

/// Counts monomials of `gr^p DR` per `(p, degree)` within `caps`.
pub fn form_counts(dr: &DeRhamComplex, caps: &Caps) -> Result<DimTable> {
    let alg = dr.algebra().clone();
    count_monomials(&alg, &|i| Some(alg.generator(i).hodge), caps, &|_| true)
}
