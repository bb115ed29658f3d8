use std::sync::Arc;

use super::{Algebra, Grading, Poly};
use crate::{Error, Result};

/// A graded derivation of a free graded-commutative algebra, determined by
/// its values on generators.
///
/// Missing values are zero, so a derivation built over an algebra acts
/// (trivially on the new generators) on any extension of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub degree: i32,
    pub weight: i32,
    pub hodge: i32,
    values: Vec<Poly>,
}

impl Derivation {
    pub fn zero(degree: i32) -> Self {
        Derivation { degree, weight: 0, hodge: 0, values: Vec::new() }
    }

    /// Builds a derivation and checks each value is homogeneous of the
    /// generator's tridegree shifted by `(degree, weight, hodge)`.
    pub fn new(
        alg: &Algebra,
        degree: i32,
        weights: (i32, i32),
        values: impl IntoIterator<Item = (usize, Poly)>,
    ) -> Result<Self> {
        let mut d = Derivation { degree, weight: weights.0, hodge: weights.1, values: Vec::new() };
        for (i, v) in values {
            d.set(alg, i, v)?;
        }
        Ok(d)
    }

    pub fn set(&mut self, alg: &Algebra, i: usize, value: Poly) -> Result<()> {
        alg.check(&value)?;
        let g = alg.generator(i);
        match alg.grading(&value) {
            Grading::Zero => {}
            Grading::Homogeneous { degree, weight, hodge }
                if degree == g.degree + self.degree
                    && weight == g.weight + self.weight
                    && hodge == g.hodge + self.hodge => {}
            _ => return Err(Error::DerivationBidegree { generator: g.name.clone() }),
        }
        if self.values.len() <= i {
            self.values.resize(i + 1, Poly::zero());
        }
        self.values[i] = value;
        Ok(())
    }

    /// Sets a value without the bidegree check. For derivations (such as
    /// ghost-weight components) whose values are only degree-homogeneous.
    pub(crate) fn set_unchecked(&mut self, i: usize, value: Poly) {
        if self.values.len() <= i {
            self.values.resize(i + 1, Poly::zero());
        }
        self.values[i] = value;
    }

    pub fn value(&self, i: usize) -> Poly {
        self.values.get(i).cloned().unwrap_or_default()
    }

    pub fn value_ref(&self, i: usize) -> Option<&Poly> {
        self.values.get(i).filter(|p| !p.is_zero())
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Poly::is_zero)
    }

    /// Graded Leibniz rule `D(ab) = D(a)b + (-1)^{|D||a|} a D(b)`.
    pub fn apply(&self, alg: &Algebra, p: &Poly) -> Result<Poly> {
        alg.check(p)?;
        Ok(self.apply_unchecked(alg, p))
    }

    pub(crate) fn apply_unchecked(&self, alg: &Algebra, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            for (i, e) in m.factors() {
                let Some(dg) = self.value_ref(i) else { continue };
                let (pre, post) = m.split_at(i);
                // g^e contributes e g^{e-1} D(g); g even whenever e > 1
                let mut rest = post;
                if e > 1 {
                    rest = super::Monomial::power(i, e - 1).raw_product(&rest);
                }
                let mut coeff = c * crate::Q::from_integer(e.into());
                if self.is_odd() && alg.degree_of(&pre).rem_euclid(2) == 1 {
                    coeff = -coeff;
                }
                let left = Poly::term(coeff, pre);
                let term = alg.mul_unchecked(&alg.mul_unchecked(&left, dg), &Poly::monomial(rest));
                out += &term;
            }
        }
        out
    }

    /// Pointwise sum; degrees must agree.
    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        if self.degree != other.degree {
            return Err(Error::Precondition("adding derivations of different degrees".into()));
        }
        let n = self.values.len().max(other.values.len());
        let values = (0..n).map(|i| &self.value(i) + &other.value(i)).collect();
        Ok(Derivation { degree: self.degree, weight: self.weight, hodge: self.hodge, values })
    }

    pub fn scale(&self, c: &crate::Q) -> Derivation {
        Derivation {
            degree: self.degree,
            weight: self.weight,
            hodge: self.hodge,
            values: self.values.iter().map(|v| v.scale(c)).collect(),
        }
    }

    /// Indices with a nonzero value.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, _)| i)
    }
}

/// Result of [`DgAlgebra::check_square_zero`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareZero {
    Ok,
    Counterexample { generator: String, residue: Poly },
}

impl SquareZero {
    pub fn is_ok(&self) -> bool {
        matches!(self, SquareZero::Ok)
    }
}

/// A free graded-commutative algebra with a degree +1 derivation.
///
/// Square-zero is not enforced at construction, so that deliberately broken
/// algebras can be built and diagnosed with [`check_square_zero`].
///
/// [`check_square_zero`]: DgAlgebra::check_square_zero
#[derive(Clone, Debug)]
pub struct DgAlgebra {
    alg: Arc<Algebra>,
    d: Derivation,
}

impl DgAlgebra {
    pub fn new(alg: Arc<Algebra>, d: Derivation) -> Result<Self> {
        if d.degree != 1 {
            return Err(Error::Precondition(format!("differential has degree {}, expected 1", d.degree)));
        }
        if let Some(i) = d.support().find(|&i| i >= alg.len()) {
            return Err(Error::ForeignGenerator { index: i, len: alg.len() });
        }
        Ok(DgAlgebra { alg, d })
    }

    /// Zero differential.
    pub fn free(alg: Arc<Algebra>) -> Self {
        DgAlgebra { alg, d: Derivation::zero(1) }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn differential(&self) -> &Derivation {
        &self.d
    }

    pub fn d(&self, p: &Poly) -> Result<Poly> {
        self.d.apply(&self.alg, p)
    }

    pub(crate) fn d_unchecked(&self, p: &Poly) -> Poly {
        self.d.apply_unchecked(&self.alg, p)
    }

    /// `d(d(g)) = 0` on every generator; by Leibniz this is `d² = 0`.
    pub fn check_square_zero(&self) -> SquareZero {
        for i in 0..self.alg.len() {
            let dd = self.d_unchecked(&self.d.value(i));
            if !dd.is_zero() {
                return SquareZero::Counterexample { generator: self.alg.generator(i).name.clone(), residue: dd };
            }
        }
        SquareZero::Ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Generator;
    use crate::Q;

    fn dcrit_cubic() -> (Arc<Algebra>, Derivation) {
        // S = x^3/3, d(xi) = x^2
        let alg = Arc::new(Algebra::new(vec![Generator::new("x", 0), Generator::new("xi", -1)]).unwrap());
        let x = alg.var("x").unwrap();
        let d = Derivation::new(&alg, 1, (0, 0), [(1, alg.mul(&x, &x).unwrap())]).unwrap();
        (alg, d)
    }

    #[test]
    fn contraction_with_ds() {
        let (alg, d) = dcrit_cubic();
        let x = alg.var("x").unwrap();
        let xi = alg.var("xi").unwrap();
        assert_eq!(d.apply(&alg, &xi).unwrap(), alg.pow(&x, 2).unwrap());
        assert!(d.apply(&alg, &x).unwrap().is_zero());
        let x_xi = alg.mul(&x, &xi).unwrap();
        assert_eq!(d.apply(&alg, &x_xi).unwrap(), alg.pow(&x, 3).unwrap());
    }

    #[test]
    fn zero_derivation_kills_everything() {
        let (alg, _) = dcrit_cubic();
        let p = alg.var("x").unwrap() + alg.var("xi").unwrap();
        assert!(Derivation::zero(1).apply(&alg, &p).unwrap().is_zero());
    }

    #[test]
    fn wrong_degree_value_rejected() {
        let (alg, _) = dcrit_cubic();
        let x = alg.var("x").unwrap();
        assert!(Derivation::new(&alg, 1, (0, 0), [(0, x)]).is_err());
    }

    #[test]
    fn square_zero_detects_mutation() {
        let alg = Arc::new(Algebra::new(vec![Generator::new("x", 0), Generator::new("xi", -1)]).unwrap());
        let x = alg.var("x").unwrap();
        let ok = DgAlgebra::new(alg.clone(), Derivation::new(&alg, 1, (0, 0), [(1, x.clone())]).unwrap()).unwrap();
        assert!(ok.check_square_zero().is_ok());

        // d(x) = 1 is not homogeneous of degree 1 over x, so bypass the check.
        let mut bad = Derivation::new(&alg, 1, (0, 0), [(1, x)]).unwrap();
        bad.set_unchecked(0, Poly::constant(Q::from_integer(1.into())));
        let bad = DgAlgebra::new(alg, bad).unwrap();
        assert_eq!(
            bad.check_square_zero(),
            SquareZero::Counterexample { generator: "xi".into(), residue: Poly::one() }
        );
    }
}
