use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::Monomial;
use crate::Q;

/// Exact rational linear combination of canonical monomials.
///
/// The map never stores a zero coefficient, so structural equality is
/// mathematical equality. Multiplication needs the generator parities and
/// therefore lives on [`Algebra`](super::Algebra); everything linear is here.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: Q, m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Q::one(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl DoubleEndedIterator<Item = (Monomial, Q)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Largest monomial in degree-reverse-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    /// Constant term if the polynomial is a scalar (including zero).
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Keeps the terms satisfying the predicate.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    pub fn max_total(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total).max()
    }

    pub fn min_total(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total).min()
    }

    /// Largest generator index used, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_index).max()
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => Poly::zero(),
        }
    }
}

impl FromIterator<(Monomial, Q)> for Poly {
    fn from_iter<T: IntoIterator<Item = (Monomial, Q)>>(iter: T) -> Self {
        let mut p = Poly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
