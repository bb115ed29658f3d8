use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A monomial in the generators of a free graded-commutative algebra.
///
/// Stored sparsely as `(generator index, exponent)` pairs sorted by index,
/// which is also the canonical left-to-right order of the factors. Because
/// indices are positional, a monomial over an algebra stays valid verbatim
/// in any extension that appends generators.
///
/// `Ord` is degree-reverse-lexicographic: total exponent first, then the
/// monomial with the *smaller* exponent in the last differing generator is
/// the larger one.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(u32, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(index: usize) -> Self {
        Self::power(index, 1)
    }

    pub fn power(index: usize, exp: u32) -> Self {
        let mut v = SmallVec::new();
        if exp > 0 {
            v.push((index as u32, exp));
        }
        Monomial(v)
    }

    /// Builds a monomial from arbitrary `(index, exponent)` pairs, merging
    /// repeats. No sign bookkeeping happens here.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut v: SmallVec<[(u32, u32); 4]> = SmallVec::new();
        for (i, e) in pairs {
            if e == 0 {
                continue;
            }
            match v.binary_search_by_key(&(i as u32), |&(j, _)| j) {
                Ok(pos) => v[pos].1 += e,
                Err(pos) => v.insert(pos, (i as u32, e)),
            }
        }
        Monomial(v)
    }

    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(i, e)| (i as usize, e))
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0.binary_search_by_key(&(index as u32), |&(j, _)| j).map(|pos| self.0[pos].1).unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Total exponent ("polynomial degree").
    pub fn total(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|&(i, _)| i as usize)
    }

    /// Exponent-wise sum; no sign bookkeeping.
    pub(crate) fn raw_product(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Lowers the exponent of `index` by one. Panics if absent.
    pub(crate) fn without_one(&self, index: usize) -> Monomial {
        let mut v = self.0.clone();
        let pos = v.binary_search_by_key(&(index as u32), |&(j, _)| j).expect("factor present");
        if v[pos].1 == 1 {
            v.remove(pos);
        } else {
            v[pos].1 -= 1;
        }
        Monomial(v)
    }

    /// Factors strictly before / strictly after generator `index`.
    pub(crate) fn split_at(&self, index: usize) -> (Monomial, Monomial) {
        let pos = self.0.partition_point(|&(j, _)| (j as usize) < index);
        let after = self.0[pos..].iter().copied().filter(|&(j, _)| j as usize != index).collect();
        (Monomial(self.0[..pos].iter().copied().collect()), Monomial(after))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total().cmp(&other.total()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (a.len(), b.len());
        loop {
            match (i > 0, j > 0) {
                (false, false) => return Ordering::Equal,
                // the side that still carries a positive exponent in a later
                // generator is the smaller one
                (true, false) => return Ordering::Less,
                (false, true) => return Ordering::Greater,
                (true, true) => {}
            }
            let (ia, ea) = a[i - 1];
            let (ib, eb) = b[j - 1];
            match ia.cmp(&ib) {
                Ordering::Greater => return Ordering::Less,
                Ordering::Less => return Ordering::Greater,
                Ordering::Equal => match ea.cmp(&eb) {
                    Ordering::Equal => {
                        i -= 1;
                        j -= 1;
                    }
                    o => return o.reverse(),
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|&(i, e)| if e == 1 { format!("g{i}") } else { format!("g{i}^{e}") }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_orders_by_total_degree_first() {
        assert!(Monomial::power(0, 2) > Monomial::var(5));
        assert!(Monomial::one() < Monomial::var(0));
    }

    #[test]
    fn degrevlex_prefers_small_exponent_in_last_generator() {
        // x*xi1 > y*xi2 with order x, y, xi1, xi2
        let a = Monomial::from_pairs([(0, 1), (2, 1)]);
        let b = Monomial::from_pairs([(1, 1), (3, 1)]);
        assert!(a > b);
        // x^2 > x*y > y^2
        let x2 = Monomial::power(0, 2);
        let xy = Monomial::from_pairs([(0, 1), (1, 1)]);
        let y2 = Monomial::power(1, 2);
        assert!(x2 > xy && xy > y2);
    }

    #[test]
    fn split_and_remove() {
        let m = Monomial::from_pairs([(0, 2), (3, 1), (5, 1)]);
        let (pre, post) = m.split_at(3);
        assert_eq!(pre, Monomial::power(0, 2));
        assert_eq!(post, Monomial::var(5));
        assert_eq!(m.without_one(0), Monomial::from_pairs([(0, 1), (3, 1), (5, 1)]));
        assert_eq!(m.total(), 4);
    }
}
