use std::collections::HashMap;

use num_traits::One;

use super::{Monomial, Poly};
use crate::{Error, Result, Q};

/// A generator of a free graded-commutative algebra.
///
/// `degree` is cohomological. `weight` is the internal weight written `(i)`
/// and `hodge` the external/Hodge weight written `⟨n⟩`; both are additive
/// under multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
    pub weight: i32,
    pub hodge: i32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        Generator { name: name.into(), degree, weight: 0, hodge: 0 }
    }

    pub fn with_weights(name: impl Into<String>, degree: i32, weight: i32, hodge: i32) -> Self {
        Generator { name: name.into(), degree, weight, hodge }
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

/// The grading of a polynomial as reported by [`Algebra::grading`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Zero,
    Homogeneous { degree: i32, weight: i32, hodge: i32 },
    Inhomogeneous,
}

/// Roster of generators of a free graded-commutative algebra over ℚ.
///
/// Declaration order is the canonical order of factors in a monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    gens: Vec<Generator>,
    by_name: HashMap<String, usize>,
}

impl Algebra {
    pub fn new(gens: Vec<Generator>) -> Result<Self> {
        let mut by_name = HashMap::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if by_name.insert(g.name.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Algebra { gens, by_name })
    }

    /// The algebra with `more` appended; polynomials over `self` remain
    /// valid over the result.
    pub fn extend(&self, more: impl IntoIterator<Item = Generator>) -> Result<Self> {
        let mut gens = self.gens.clone();
        gens.extend(more);
        Algebra::new(gens)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.by_name.get(name).copied().ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn var(&self, name: &str) -> Result<Poly> {
        Ok(Poly::monomial(Monomial::var(self.index_of(name)?)))
    }

    pub fn gen(&self, i: usize) -> Poly {
        Poly::monomial(Monomial::var(i))
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.gens[i].is_odd()
    }

    pub fn degree_of(&self, m: &Monomial) -> i32 {
        m.factors().map(|(i, e)| self.gens[i].degree * e as i32).sum()
    }

    pub fn weights_of(&self, m: &Monomial) -> (i32, i32) {
        m.factors()
            .fold((0, 0), |(w, h), (i, e)| (w + self.gens[i].weight * e as i32, h + self.gens[i].hodge * e as i32))
    }

    pub fn grading(&self, p: &Poly) -> Grading {
        let mut out = None;
        for (m, _) in p.terms() {
            let (w, h) = self.weights_of(m);
            let g = (self.degree_of(m), w, h);
            match out {
                None => out = Some(g),
                Some(prev) if prev != g => return Grading::Inhomogeneous,
                _ => {}
            }
        }
        match out {
            None => Grading::Zero,
            Some((degree, weight, hodge)) => Grading::Homogeneous { degree, weight, hodge },
        }
    }

    /// Cohomological degree of a homogeneous nonzero element.
    pub fn degree(&self, p: &Poly) -> Option<i32> {
        match self.grading(p) {
            Grading::Homogeneous { degree, .. } => Some(degree),
            _ => None,
        }
    }

    /// Parity of a polynomial whose terms all share one parity.
    pub fn parity(&self, p: &Poly) -> Option<bool> {
        let mut out = None;
        for (m, _) in p.terms() {
            let odd = self.degree_of(m).rem_euclid(2) == 1;
            match out {
                None => out = Some(odd),
                Some(prev) if prev != odd => return None,
                _ => {}
            }
        }
        Some(out.unwrap_or(false))
    }

    /// Rejects polynomials that mention generators outside this algebra or
    /// that raise an odd generator to a power above one.
    pub fn check(&self, p: &Poly) -> Result<()> {
        for (m, _) in p.terms() {
            for (i, e) in m.factors() {
                if i >= self.gens.len() {
                    return Err(Error::ForeignGenerator { index: i, len: self.gens.len() });
                }
                if e > 1 && self.gens[i].is_odd() {
                    return Err(Error::OddExponent(self.gens[i].name.clone()));
                }
            }
        }
        Ok(())
    }

    /// Product of two canonical monomials: `None` if an odd generator
    /// would be squared, otherwise the Koszul sign (true = negative) and the
    /// canonical product.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let mut negative = false;
        for (j, _) in b.factors() {
            if !self.gens[j].is_odd() {
                continue;
            }
            for (i, _) in a.factors() {
                if !self.gens[i].is_odd() {
                    continue;
                }
                if i == j {
                    return None;
                }
                if i > j {
                    negative = !negative;
                }
            }
        }
        Some((negative, a.raw_product(b)))
    }

    pub fn mul(&self, p: &Poly, q: &Poly) -> Result<Poly> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.mul_unchecked(p, q))
    }

    pub(crate) fn mul_unchecked(&self, p: &Poly, q: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in p.terms() {
            for (mb, cb) in q.terms() {
                if let Some((neg, m)) = self.mul_monomials(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Product of a list of factors, left to right.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Poly>) -> Result<Poly> {
        let mut acc = Poly::one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, p: &Poly, e: u32) -> Result<Poly> {
        self.check(p)?;
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = self.mul_unchecked(&acc, p);
        }
        Ok(acc)
    }

    /// Graded commutator sign `(-1)^{|a||b|}` for homogeneous-parity inputs.
    pub fn koszul_sign(&self, a: &Poly, b: &Poly) -> Q {
        let pa = self.parity(a).unwrap_or(false);
        let pb = self.parity(b).unwrap_or(false);
        if pa && pb {
            -Q::one()
        } else {
            Q::one()
        }
    }

    /// Left partial derivative `∂/∂g` acting from the left: a derivation of
    /// degree `-|g|` that passes the factors before `g` with a Koszul sign.
    pub fn left_derivative(&self, p: &Poly, g: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            if let Some((k, dm)) = self.left_derivative_monomial(m, g) {
                out.add_term(dm, c * k);
            }
        }
        out
    }

    /// Right partial derivative: the factors after `g` are passed instead.
    pub fn right_derivative(&self, p: &Poly, g: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            if let Some((k, dm)) = self.right_derivative_monomial(m, g) {
                out.add_term(dm, c * k);
            }
        }
        out
    }

    pub(crate) fn left_derivative_monomial(&self, m: &Monomial, g: usize) -> Option<(Q, Monomial)> {
        let e = m.exponent(g);
        if e == 0 {
            return None;
        }
        let mut k = Q::from_integer(e.into());
        if self.gens[g].is_odd() {
            let (pre, _) = m.split_at(g);
            if self.degree_of(&pre).rem_euclid(2) == 1 {
                k = -k;
            }
        }
        Some((k, m.without_one(g)))
    }

    pub(crate) fn right_derivative_monomial(&self, m: &Monomial, g: usize) -> Option<(Q, Monomial)> {
        let e = m.exponent(g);
        if e == 0 {
            return None;
        }
        let mut k = Q::from_integer(e.into());
        if self.gens[g].is_odd() {
            let (_, post) = m.split_at(g);
            if self.degree_of(&post).rem_euclid(2) == 1 {
                k = -k;
            }
        }
        Some((k, m.without_one(g)))
    }

    /// Applies the algebra map sending generator `i` to `images[i]`
    /// (polynomials over `target`). Generators beyond `images` must not occur.
    pub fn substitute(&self, p: &Poly, images: &[Poly], target: &Algebra) -> Result<Poly> {
        self.check(p)?;
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let mut acc = Poly::constant(c.clone());
            for (i, e) in m.factors() {
                let img = images.get(i).ok_or(Error::ForeignGenerator { index: i, len: images.len() })?;
                for _ in 0..e {
                    acc = target.mul_unchecked(&acc, img);
                }
                if acc.is_zero() {
                    break;
                }
            }
            out += &acc;
        }
        Ok(out)
    }

    /// Sets the listed generators to zero.
    pub fn kill(&self, p: &Poly, dead: impl Fn(usize) -> bool) -> Poly {
        p.filter(|m| m.factors().all(|(i, _)| !dead(i)))
    }

    pub(crate) fn sign(negative: bool) -> Q {
        if negative {
            -Q::one()
        } else {
            Q::one()
        }
    }
}
