use std::sync::Arc;

use num_traits::One;

use super::{Algebra, Poly};
use crate::{Error, Result, Q};

/// A conjugate pair of generators with `{q, p} = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pair {
    pub q: usize,
    pub p: usize,
}

/// The shifted Poisson bracket with constant Darboux pairing on a free
/// graded-commutative algebra.
///
/// Built from conjugate pairs `(q, p)` with `{q, p} = 1`; the bracket then
/// has degree `b = -(|q| + |p|)` and `{p, q} = -(-1)^{(|q|+b)(|p|+b)}`. On
/// arbitrary elements
///
/// ```text
/// {F, G} = Σ (F ∂⃖_u) {u, v} (∂⃗_v G)
/// ```
///
/// with right derivatives on the left factor and left derivatives on the
/// right factor. No sign table is involved: every sign comes from the
/// Koszul rule. The Schouten bracket on polyvectors (pairs `(g, ∂_g)`) and
/// the BV antibracket (pairs `(x, ξ)` and `(c, c^)`) are both instances.
#[derive(Clone, Debug)]
pub struct PairingBracket {
    alg: Arc<Algebra>,
    degree: i32,
    partner: Vec<Option<(usize, Q)>>,
}

impl PairingBracket {
    pub fn new(alg: Arc<Algebra>, pairs: &[Pair]) -> Result<Self> {
        let mut partner = vec![None; alg.len()];
        let mut degree = None;
        for &Pair { q, p } in pairs {
            for i in [q, p] {
                if i >= alg.len() {
                    return Err(Error::ForeignGenerator { index: i, len: alg.len() });
                }
            }
            if q == p || partner[q].is_some() || partner[p].is_some() {
                return Err(Error::Pairing(format!(
                    "generator `{}` or `{}` is paired twice",
                    alg.generator(q).name,
                    alg.generator(p).name
                )));
            }
            let b = -(alg.generator(q).degree + alg.generator(p).degree);
            match degree {
                None => degree = Some(b),
                Some(d) if d != b => {
                    return Err(Error::Pairing(format!(
                        "pair ({}, {}) implies bracket degree {b}, others give {d}",
                        alg.generator(q).name,
                        alg.generator(p).name
                    )))
                }
                _ => {}
            }
            let qs = (alg.generator(q).degree + b).rem_euclid(2) == 1;
            let ps = (alg.generator(p).degree + b).rem_euclid(2) == 1;
            partner[q] = Some((p, Q::one()));
            partner[p] = Some((q, Algebra::sign(!(qs && ps))));
        }
        let degree = degree.ok_or_else(|| Error::Pairing("no pairs given".into()))?;
        Ok(PairingBracket { alg, degree, partner })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// Cohomological degree of the bracket.
    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// The generator paired with `i`, and the value `{i, partner}`.
    pub fn partner(&self, i: usize) -> Option<(usize, &Q)> {
        self.partner.get(i).and_then(|o| o.as_ref()).map(|(j, c)| (*j, c))
    }

    pub fn bracket(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.alg.check(f)?;
        self.alg.check(g)?;
        Ok(self.bracket_unchecked(f, g))
    }

    pub(crate) fn bracket_unchecked(&self, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (mf, cf) in f.terms() {
            for (u, _) in mf.factors() {
                let Some((v, ref uv)) = self.partner[u] else { continue };
                let (kf, rf) = self.alg.right_derivative_monomial(mf, u).expect("factor present");
                let left = cf * kf * uv;
                for (mg, cg) in g.terms() {
                    let Some((kg, rg)) = self.alg.left_derivative_monomial(mg, v) else { continue };
                    if let Some((neg, m)) = self.alg.mul_monomials(&rf, &rg) {
                        let c = &left * cg * kg;
                        out.add_term(m, if neg { -c } else { c });
                    }
                }
            }
        }
        out
    }

    /// `(-1)^{(|f|+b)(|g|+b)}` for elements of homogeneous parity.
    pub fn shifted_sign(&self, f: &Poly, g: &Poly) -> Q {
        let pf = self.alg.parity(f).unwrap_or(false) ^ (self.degree.rem_euclid(2) == 1);
        let pg = self.alg.parity(g).unwrap_or(false) ^ (self.degree.rem_euclid(2) == 1);
        Algebra::sign(pf && pg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Generator;

    fn bv() -> PairingBracket {
        let alg = Arc::new(
            Algebra::new(vec![
                Generator::new("x", 0),
                Generator::new("y", 0),
                Generator::new("xi1", -1),
                Generator::new("xi2", -1),
            ])
            .unwrap(),
        );
        PairingBracket::new(alg, &[Pair { q: 0, p: 2 }, Pair { q: 1, p: 3 }]).unwrap()
    }

    #[test]
    fn antibracket_on_generators() {
        let b = bv();
        let a = b.algebra().clone();
        assert_eq!(b.degree(), 1);
        assert_eq!(b.bracket(&a.gen(0), &a.gen(2)).unwrap(), Poly::one());
        // shifted degrees 1 and 0: {xi, x} = -1
        assert_eq!(b.bracket(&a.gen(2), &a.gen(0)).unwrap(), -Poly::one());
        assert!(b.bracket(&a.gen(0), &a.gen(3)).unwrap().is_zero());
    }

    #[test]
    fn bracket_is_a_derivation() {
        let b = bv();
        let a = b.algebra().clone();
        let f = a.mul(&a.gen(0), &a.gen(1)).unwrap();
        let xi12 = a.mul(&a.gen(2), &a.gen(3)).unwrap();
        // {xy, xi1 xi2} = y xi2 - x xi1
        let expect = a.mul(&a.gen(1), &a.gen(3)).unwrap() - a.mul(&a.gen(0), &a.gen(2)).unwrap();
        assert_eq!(b.bracket(&f, &xi12).unwrap(), expect);
    }

    #[test]
    fn inconsistent_pairs_rejected() {
        let alg = Arc::new(
            Algebra::new(vec![Generator::new("x", 0), Generator::new("y", 0), Generator::new("z", 1)]).unwrap(),
        );
        assert!(PairingBracket::new(alg.clone(), &[Pair { q: 0, p: 1 }, Pair { q: 0, p: 2 }]).is_err());
        assert!(PairingBracket::new(alg, &[]).is_err());
    }
}
