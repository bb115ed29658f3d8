use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;

use super::kt::KoszulTate;
use crate::graded::{Algebra, Generator, Monomial, Pair, PairingBracket, Poly};
use crate::{Error, Result, Q};

/// `CE(L)`: the Koszul-Tate algebra with the duals of its higher generators
/// adjoined, the antibracket and the ghost filtration.
#[derive(Clone, Debug)]
pub struct BvAlgebra {
    kt: KoszulTate,
    bracket: PairingBracket,
    /// `(generator, dual)` for each higher Koszul-Tate generator.
    duals: Vec<(usize, usize)>,
}

/// Name of the dual of a higher generator.
pub(crate) fn dual_name(c: &str) -> String {
    format!("{c}_hat")
}

pub fn ce_algebra(kt: &KoszulTate) -> Result<BvAlgebra> {
    let base = kt.algebra();
    let m = kt.potential.len();
    if m == 0 {
        return Err(Error::Precondition("the potential has no coordinates".into()));
    }
    let higher: Vec<usize> = kt.higher_generators().collect();
    let more = higher.iter().map(|&c| {
        let g = base.generator(c);
        Generator::with_weights(dual_name(&g.name), -1 - g.degree, -g.weight, 0)
    });
    let alg = Arc::new(base.extend(more)?);
    let duals: Vec<(usize, usize)> = higher.iter().enumerate().map(|(k, &c)| (c, base.len() + k)).collect();
    let mut pairs: Vec<Pair> = (0..m).map(|i| Pair { q: i, p: m + i }).collect();
    pairs.extend(duals.iter().map(|&(c, h)| Pair { q: c, p: h }));
    let bracket = PairingBracket::new(alg, &pairs)?;
    if bracket.degree() != 1 {
        return Err(Error::Internal(format!("antibracket has degree {}", bracket.degree())));
    }
    Ok(BvAlgebra { kt: kt.clone(), bracket, duals })
}

impl BvAlgebra {
    pub fn kt(&self) -> &KoszulTate {
        &self.kt
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.bracket.algebra()
    }

    pub fn pairing(&self) -> &PairingBracket {
        &self.bracket
    }

    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.bracket.bracket(f, g)
    }

    pub fn duals(&self) -> &[(usize, usize)] {
        &self.duals
    }

    /// Number of generators of the Koszul-Tate part.
    pub fn kt_len(&self) -> usize {
        self.kt.algebra().len()
    }

    pub fn is_dual(&self, i: usize) -> bool {
        i >= self.kt_len()
    }

    pub fn ghost_of(&self, m: &Monomial) -> u32 {
        m.factors().filter(|(i, _)| self.is_dual(*i)).map(|(_, e)| e).sum()
    }

    /// Degree of the dual part of a monomial.
    pub fn dual_degree(&self, m: &Monomial) -> i32 {
        let alg = self.algebra();
        m.factors().filter(|(i, _)| self.is_dual(*i)).map(|(i, e)| alg.generator(i).degree * e as i32).sum()
    }

    pub fn ghost_components(&self, p: &Poly) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in p.terms() {
            out.entry(self.ghost_of(m)).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn ghost_component(&self, p: &Poly, k: u32) -> Poly {
        p.filter(|m| self.ghost_of(m) == k)
    }

    /// Drops every term of ghost number above `n`.
    pub fn truncate(&self, p: &Poly, n: u32) -> Poly {
        p.filter(|m| self.ghost_of(m) <= n)
    }

    /// `S₁ = Σ s_α c^_α d(c_α)`, normalized so that `{S₁, c_α} = d(c_α)`.
    pub fn s1(&self) -> Result<Poly> {
        let alg = self.algebra();
        let mut out = Poly::zero();
        for &(c, h) in &self.duals {
            let dc = self.kt.dga.differential().value(c);
            let (_, hc) = self.bracket.partner(h).expect("paired");
            let mut s = Q::one() / hc;
            if alg.is_odd(h) && (alg.generator(c).degree + 1).rem_euclid(2) == 1 {
                s = -s;
            }
            out += &alg.mul(&alg.gen(h), &dc)?.scale(&s);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{koszul_tate, Potential};
    use super::*;
    use crate::expr::parse_poly;

    fn bv(vars: &[&str], s: &str) -> BvAlgebra {
        let alg = Arc::new(Algebra::new(vars.iter().map(|v| Generator::new(*v, 0)).collect()).unwrap());
        let s = parse_poly(&alg, s).unwrap();
        ce_algebra(&koszul_tate(&Potential::new(alg, s).unwrap(), 2, 6).unwrap()).unwrap()
    }

    #[test]
    fn roster_for_x2y() {
        let b = bv(&["x", "y"], "x^2*y");
        let names: Vec<(&str, i32)> = b.algebra().generators().iter().map(|g| (g.name.as_str(), g.degree)).collect();
        assert_eq!(names, [("x", 0), ("y", 0), ("xi_x", -1), ("xi_y", -1), ("c1", -2), ("c1_hat", 1)]);
        let a = b.algebra();
        for i in 0..a.len() {
            for j in 0..a.len() {
                let v = b.bracket(&a.gen(i), &a.gen(j)).unwrap();
                if !v.is_zero() {
                    assert_eq!(a.degree(&v), Some(0));
                }
            }
        }
    }

    #[test]
    fn s1_recovers_differential() {
        let b = bv(&["x", "y"], "x^2*y");
        let (c, _) = b.duals()[0];
        let s1 = b.s1().unwrap();
        let a = b.algebra();
        assert_eq!(b.bracket(&s1, &a.gen(c)).unwrap(), b.kt().dga.differential().value(c));
    }

    #[test]
    fn regular_case_is_dcrit() {
        let b = bv(&["x"], "1/2*x^2");
        assert_eq!(b.algebra().len(), 2);
        let a = b.algebra();
        assert_eq!(b.bracket(&a.gen(0), &a.gen(1)).unwrap(), Poly::one());
    }
}
