//! Polyvectors `Pol(A, n)`, the Schouten bracket, Maurer-Cartan checks for
//! `n`-shifted Poisson structures and the strict Poisson/symplectic round
//! trip.
//!
//! `Pol(A, n)` adjoins one generator `D(g)` of degree `-|g| + n + 1` and
//! polyvector weight 1 for each generator `g` of `A`. The Schouten bracket
//! is the [`PairingBracket`] of the pairs `(g, D(g))`, of degree `-(n + 1)`,
//! so a bivector has degree `n + 2` and the induced bracket on functions has
//! degree `-n`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use crate::derham::{
    check_symplectic, form_from_matrix, pairing_matrix, ClosedFormTower, DeRhamComplex, SymplecticCheck,
    SymplecticStructure,
};
use crate::graded::{Algebra, DgAlgebra, Generator, Grading, Monomial, Pair, PairingBracket, Poly};
use crate::linalg::{block_witness, det, inverse};
use crate::{Error, Result, Q};

/// `Pol(A, n)` with its Schouten bracket and induced differential.
#[derive(Clone, Debug)]
pub struct PolyvectorAlgebra {
    base: DgAlgebra,
    shift: i32,
    alg: Arc<Algebra>,
    /// `None` when `A` has no generators.
    bracket: Option<PairingBracket>,
    /// `d_A = {q, -}`.
    q: Poly,
}

impl PolyvectorAlgebra {
    pub fn new(base: &DgAlgebra, shift: i32) -> Result<Self> {
        let balg = base.algebra();
        let n = balg.len();
        let mut gens = balg.generators().to_vec();
        for g in balg.generators() {
            gens.push(Generator::with_weights(format!("D({})", g.name), -g.degree + shift + 1, -g.weight, 1));
        }
        let alg = Arc::new(Algebra::new(gens)?);
        let pairs: Vec<Pair> = (0..n).map(|i| Pair { q: i, p: n + i }).collect();
        let bracket = if n == 0 { None } else { Some(PairingBracket::new(alg.clone(), &pairs)?) };
        let mut q = Poly::zero();
        for (i, bracket) in (0..n).filter_map(|i| bracket.as_ref().map(|b| (i, b))) {
            let dg = base.differential().value(i);
            if dg.is_zero() {
                continue;
            }
            // {D(g), g} is ±1; divide so that {q, g} = d_A(g)
            let (_, s) = bracket.partner(n + i).expect("paired");
            let term = alg.mul(&dg, &alg.gen(n + i))?;
            q += &term.scale(&(Q::one() / s));
        }
        Ok(PolyvectorAlgebra { base: base.clone(), shift, alg, bracket, q })
    }

    pub fn base(&self) -> &DgAlgebra {
        &self.base
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// Index of `D(g)`.
    pub fn tangent(&self, g: usize) -> usize {
        self.base.algebra().len() + g
    }

    /// Degree of the Schouten bracket, `-(n + 1)`.
    pub fn bracket_degree(&self) -> i32 {
        -(self.shift + 1)
    }

    pub fn schouten(&self, p: &Poly, q: &Poly) -> Result<Poly> {
        match &self.bracket {
            Some(b) => b.bracket(p, q),
            None => {
                self.alg.check(p)?;
                self.alg.check(q)?;
                Ok(Poly::zero())
            }
        }
    }

    /// The differential induced by `A`'s, `{q, -}`.
    pub fn d(&self, p: &Poly) -> Result<Poly> {
        self.schouten(&self.q, p)
    }

    /// The element `q` with `d = {q, -}`.
    pub fn q(&self) -> &Poly {
        &self.q
    }

    /// Number of tangent factors of a monomial.
    pub fn weight_of(&self, m: &Monomial) -> u32 {
        let n = self.base.algebra().len();
        m.factors().filter(|(i, _)| *i >= n).map(|(_, e)| e).sum()
    }

    pub fn components(&self, p: &Poly) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in p.terms() {
            out.entry(self.weight_of(m)).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// `Θ` matrix of a bivector: `P[a][b] = ∂⃗_{D(a)} ∂⃗_{D(b)} π`.
    pub fn bivector_matrix(&self, pi2: &Poly) -> Vec<Vec<Poly>> {
        let alg = self.algebra();
        let n = self.base.algebra().len();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| alg.left_derivative(&alg.left_derivative(pi2, self.tangent(b)), self.tangent(a)))
                    .collect()
            })
            .collect()
    }

    /// The bivector whose matrix is `m`, which must be graded symmetric.
    pub fn bivector_from_matrix(&self, m: &[Vec<Poly>]) -> Result<Poly> {
        let alg = self.algebra();
        let n = self.base.algebra().len();
        let half = Q::new(1.into(), 2.into());
        let mut pi = Poly::zero();
        for i in 0..n {
            for j in i..n {
                let pair = alg.mul(&alg.gen(self.tangent(i)), &alg.gen(self.tangent(j)))?;
                let c = if i == j { m[i][i].scale(&half) } else { m[j][i].clone() };
                pi += &alg.mul(&c, &pair)?;
            }
        }
        if self.bivector_matrix(&pi) != m {
            return Err(Error::Precondition("matrix is not graded symmetric".into()));
        }
        Ok(pi)
    }
}

/// An element of `Pol(A, n)` of weight at least 2 and degree `n + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonCandidate {
    pub pi: Poly,
}

impl PoissonCandidate {
    pub fn new(pol: &PolyvectorAlgebra, pi: Poly) -> Result<Self> {
        let alg = pol.algebra();
        alg.check(&pi)?;
        if let Some((w, _)) = pol.components(&pi).into_iter().find(|(w, p)| *w < 2 && !p.is_zero()) {
            return Err(Error::Precondition(format!("component of polyvector weight {w} < 2")));
        }
        match alg.grading(&pi) {
            Grading::Zero => {}
            Grading::Homogeneous { degree, .. } if degree == pol.shift + 2 => {}
            _ => return Err(Error::Inhomogeneous(format!("a Poisson candidate must have degree {}", pol.shift + 2))),
        }
        Ok(PoissonCandidate { pi })
    }

    pub fn bivector(&self, pol: &PolyvectorAlgebra) -> Poly {
        pol.components(&self.pi).remove(&2).unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum McCheck {
    Ok,
    /// `d π + ½[π, π]` has this nonzero component.
    Fail {
        weight: u32,
        residue: Poly,
    },
}

impl McCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, McCheck::Ok)
    }
}

/// Per-weight residues of the Maurer-Cartan equation.
pub fn mc_residues(pol: &PolyvectorAlgebra, c: &PoissonCandidate) -> Result<BTreeMap<u32, Poly>> {
    let half = Q::new(1.into(), 2.into());
    let r = &pol.d(&c.pi)? + &pol.schouten(&c.pi, &c.pi)?.scale(&half);
    Ok(pol.components(&r))
}

/// Checks `d π + ½[π, π] = 0` weight by weight.
pub fn mc_check(pol: &PolyvectorAlgebra, c: &PoissonCandidate) -> Result<McCheck> {
    for (weight, residue) in mc_residues(pol, c)? {
        if !residue.is_zero() {
            return Ok(McCheck::Fail { weight, residue });
        }
    }
    Ok(McCheck::Ok)
}

/// The pairing `cot → tan` induced by the bivector component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaReport {
    pub matrix: Vec<Vec<Poly>>,
    pub determinant: Poly,
    /// First degree block without a unit determinant, and its determinant.
    pub witness: Option<(i32, Poly)>,
}

impl ThetaReport {
    pub fn is_nondegenerate(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn theta(pol: &PolyvectorAlgebra, c: &PoissonCandidate) -> Result<ThetaReport> {
    let matrix = pol.bivector_matrix(&c.bivector(pol));
    let alg = pol.algebra();
    let determinant = det(alg, &matrix)?;
    let degrees: Vec<i32> = pol.base.algebra().generators().iter().map(|g| g.degree).collect();
    let witness = block_witness(alg, &degrees, &matrix, pol.shift)?;
    Ok(ThetaReport { matrix, determinant, witness })
}

/// `ω₂` with pairing matrix `P⁻¹`, for a non-degenerate bivector.
pub fn poisson_to_symplectic(
    pol: &PolyvectorAlgebra,
    c: &PoissonCandidate,
    dr: &DeRhamComplex,
) -> Result<SymplecticStructure> {
    if pol.components(&c.pi).iter().any(|(w, p)| *w > 2 && !p.is_zero()) {
        return Err(Error::Unsupported("only bivectors have a strict symplectic counterpart".into()));
    }
    let th = theta(pol, c)?;
    if let Some((k, w)) = &th.witness {
        return Err(Error::Precondition(format!(
            "degenerate bivector: block of degree {k} has determinant {}",
            crate::expr::format_poly(pol.algebra(), w)
        )));
    }
    let inv = inverse(pol.algebra(), &th.matrix)?
        .ok_or_else(|| Error::Internal("unit determinant without inverse".into()))?;
    let gens: Vec<usize> = (0..pol.base.algebra().len()).collect();
    let m = transplant(pol.algebra(), dr.algebra(), &inv)?;
    let omega = form_from_matrix(dr, &gens, &m)?;
    match check_symplectic(dr, &ClosedFormTower::two_form(pol.shift, omega))? {
        SymplecticCheck::Symplectic(s) => Ok(*s),
        SymplecticCheck::Degenerate { .. } => Err(Error::Internal("inverse pairing is degenerate".into())),
    }
}

/// The bivector with matrix `M⁻¹`.
pub fn symplectic_to_poisson(
    pol: &PolyvectorAlgebra,
    sym: &SymplecticStructure,
    dr: &DeRhamComplex,
) -> Result<PoissonCandidate> {
    let (gens, m) = pairing_matrix(dr, &sym.tower.form(2))?;
    if gens.len() != pol.base.algebra().len() {
        return Err(Error::Precondition("the symplectic form does not involve every generator".into()));
    }
    let inv =
        inverse(dr.algebra(), &m)?.ok_or_else(|| Error::Precondition("pairing matrix is not invertible".into()))?;
    let p = transplant(dr.algebra(), pol.algebra(), &inv)?;
    PoissonCandidate::new(pol, pol.bivector_from_matrix(&p)?)
}

/// Moves base-algebra entries between two extensions of the same base.
fn transplant(from: &Algebra, to: &Algebra, m: &[Vec<Poly>]) -> Result<Vec<Vec<Poly>>> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|p| {
                    if p.max_index().is_some_and(|i| i >= to.len() || from.generator(i) != to.generator(i)) {
                        return Err(Error::Precondition("matrix entry outside the base algebra".into()));
                    }
                    Ok(p.clone())
                })
                .collect()
        })
        .collect()
}

/// `{f, g} = {{f, π₂}, g}`, of degree `-n`.
pub fn bracket_of_functions(pol: &PolyvectorAlgebra, c: &PoissonCandidate, f: &Poly, g: &Poly) -> Result<Poly> {
    let n = pol.base.algebra().len();
    for p in [f, g] {
        if p.max_index().is_some_and(|i| i >= n) {
            return Err(Error::Precondition("bracket of functions takes base elements".into()));
        }
    }
    let pi2 = c.bivector(pol);
    pol.schouten(&pol.schouten(f, &pi2)?, g)
}

/// `(-1)^{(|f| - n)(|g| - n)}`, the symmetry sign of the function bracket.
pub fn function_bracket_sign(pol: &PolyvectorAlgebra, f: &Poly, g: &Poly) -> Q {
    let alg = pol.algebra();
    let s = pol.shift.rem_euclid(2) == 1;
    let pf = alg.parity(f).unwrap_or(false) ^ s;
    let pg = alg.parity(g).unwrap_or(false) ^ s;
    if pf && pg {
        -Q::one()
    } else {
        Q::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derham::de_rham;
    use crate::expr::parse_poly;
    use crate::graded::Derivation;

    fn dcrit_free() -> DgAlgebra {
        DgAlgebra::free(Arc::new(Algebra::new(vec![Generator::new("x", 0), Generator::new("xi", -1)]).unwrap()))
    }

    fn pol_of(a: &DgAlgebra, n: i32) -> PolyvectorAlgebra {
        PolyvectorAlgebra::new(a, n).unwrap()
    }

    #[test]
    fn pairing_on_generators() {
        let pol = pol_of(&dcrit_free(), -1);
        let a = pol.algebra().clone();
        assert_eq!(a.generator(2).degree, 0);
        assert_eq!(a.generator(3).degree, 1);
        assert_eq!(pol.schouten(&a.gen(0), &a.gen(2)).unwrap(), Poly::one());
    }

    #[test]
    fn standard_bivector() {
        let pol = pol_of(&dcrit_free(), -1);
        let a = pol.algebra().clone();
        let c = PoissonCandidate::new(&pol, parse_poly(&a, "D(x)*D(xi)").unwrap()).unwrap();
        assert!(mc_check(&pol, &c).unwrap().is_ok());
        assert!(theta(&pol, &c).unwrap().is_nondegenerate());
        assert_eq!(bracket_of_functions(&pol, &c, &a.gen(0), &a.gen(1)).unwrap(), Poly::one());
        let x2 = parse_poly(&a, "x^2").unwrap();
        assert_eq!(bracket_of_functions(&pol, &c, &x2, &a.gen(1)).unwrap(), parse_poly(&a, "2*x").unwrap());
    }

    #[test]
    fn weight_gate() {
        let pol = pol_of(&dcrit_free(), -1);
        let a = pol.algebra().clone();
        assert!(matches!(PoissonCandidate::new(&pol, parse_poly(&a, "D(x)").unwrap()), Err(Error::Precondition(_))));
    }

    #[test]
    fn scaled_degenerate() {
        let pol = pol_of(&dcrit_free(), -1);
        let a = pol.algebra().clone();
        let c = PoissonCandidate::new(&pol, parse_poly(&a, "x*D(x)*D(xi)").unwrap()).unwrap();
        let th = theta(&pol, &c).unwrap();
        let (_, w) = th.witness.unwrap();
        assert!(w == a.gen(0) || w == -a.gen(0));
    }

    #[test]
    fn round_trip_scaled() {
        let base = dcrit_free();
        let pol = pol_of(&base, -1);
        let dr = de_rham(&base).unwrap();
        let a = pol.algebra().clone();
        let c = PoissonCandidate::new(&pol, parse_poly(&a, "2*D(x)*D(xi)").unwrap()).unwrap();
        let s = poisson_to_symplectic(&pol, &c, &dr).unwrap();
        assert_eq!(s.tower.form(2), parse_poly(dr.algebra(), "1/2*d(x)*d(xi)").unwrap());
        let back = symplectic_to_poisson(&pol, &s, &dr).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn induced_differential_matches_base() {
        let alg = Arc::new(Algebra::new(vec![Generator::new("x", 0), Generator::new("xi", -1)]).unwrap());
        let d = Derivation::new(&alg, 1, (0, 0), [(1, parse_poly(&alg, "x^2").unwrap())]).unwrap();
        let base = DgAlgebra::new(alg, d).unwrap();
        let pol = pol_of(&base, -1);
        let a = pol.algebra().clone();
        assert_eq!(pol.d(&a.gen(1)).unwrap(), parse_poly(&a, "x^2").unwrap());
        // square zero on tangent generators too
        for i in 0..a.len() {
            assert!(pol.d(&pol.d(&a.gen(i)).unwrap()).unwrap().is_zero());
        }
    }
}
