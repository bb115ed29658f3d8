use std::collections::BTreeMap;
use std::sync::Arc;

use crate::derham::{check_symplectic, de_rham, ClosedFormTower, DeRhamComplex, SymplecticCheck, SymplecticStructure};
use crate::graded::{cohomology_truncated, Algebra, Derivation, DgAlgebra, Generator, Grading, Poly};
use crate::{Error, Result};

/// A function `S` on affine space `ℚ[x_1, ..., x_m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Potential {
    alg: Arc<Algebra>,
    s: Poly,
    gradient: Vec<Poly>,
}

impl Potential {
    /// All generators must have degree 0 and `S` must have degree 0.
    pub fn new(alg: Arc<Algebra>, s: Poly) -> Result<Self> {
        if let Some(g) = alg.generators().iter().find(|g| g.degree != 0) {
            return Err(Error::Precondition(format!("coordinate `{}` must have degree 0", g.name)));
        }
        alg.check(&s)?;
        if !matches!(alg.grading(&s), Grading::Zero | Grading::Homogeneous { .. }) {
            return Err(Error::Inhomogeneous("potential".into()));
        }
        let gradient = (0..alg.len()).map(|i| alg.left_derivative(&s, i)).collect();
        Ok(Potential { alg, s, gradient })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn s(&self) -> &Poly {
        &self.s
    }

    pub fn gradient(&self) -> &[Poly] {
        &self.gradient
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.alg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alg.is_empty()
    }
}

/// Name of the antifield of coordinate `x`.
pub(crate) fn antifield_name(x: &str) -> String {
    format!("xi_{x}")
}

/// `O(dCrit(S))` with its (-1)-shifted symplectic structure.
#[derive(Clone, Debug)]
pub struct DerivedCriticalLocus {
    pub dga: DgAlgebra,
    pub de_rham: DeRhamComplex,
    pub symplectic: SymplecticStructure,
}

/// Coordinates `x_i` followed by antifields `ξ_i` with `d(ξ_i) = ∂S/∂x_i`,
/// and `ω = Σ d(x_i) d(ξ_i)`.
pub fn derived_critical_locus(p: &Potential) -> Result<DerivedCriticalLocus> {
    let m = p.len();
    let mut gens = p.alg.generators().to_vec();
    gens.extend(p.alg.generators().iter().map(|g| Generator::with_weights(antifield_name(&g.name), -1, g.weight, 0)));
    let alg = Arc::new(Algebra::new(gens)?);
    let d = Derivation::new(&alg, 1, (0, 0), (0..m).map(|i| (m + i, p.gradient[i].clone())))?;
    let dga = DgAlgebra::new(alg, d)?;
    let dr = de_rham(&dga)?;
    let a = dr.algebra().clone();
    let mut omega = Poly::zero();
    for i in 0..m {
        let dx = a.gen(dr.form_generator(i).expect("form"));
        let dxi = a.gen(dr.form_generator(m + i).expect("form"));
        omega += &a.mul(&dx, &dxi)?;
    }
    match check_symplectic(&dr, &ClosedFormTower::two_form(-1, omega))? {
        SymplecticCheck::Symplectic(s) => Ok(DerivedCriticalLocus { dga, de_rham: dr, symplectic: *s }),
        SymplecticCheck::Degenerate { .. } => Err(Error::Internal("standard form is degenerate".into())),
    }
}

/// `ℚ[x]/(∂S)` within a polynomial-degree cap, computed as `H⁰(dCrit)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictCriticalLocus {
    pub cap: u32,
    /// Standard monomials of the quotient, ascending.
    pub basis: Vec<Poly>,
    /// Number of basis elements per polynomial degree.
    pub table: BTreeMap<u32, usize>,
}

impl StrictCriticalLocus {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

pub fn strict_critical_locus(p: &Potential, cap: u32) -> Result<StrictCriticalLocus> {
    let dcrit = derived_critical_locus(p)?;
    let h = cohomology_truncated(&dcrit.dga, (0, 0), cap)?;
    let basis = h.piece(0).expect("degree 0").representatives.clone();
    let mut table = BTreeMap::new();
    for d in 0..=cap {
        table.insert(d, 0);
    }
    for b in &basis {
        *table.entry(b.max_total().unwrap_or(0)).or_insert(0) += 1;
    }
    Ok(StrictCriticalLocus { cap, basis, table })
}
