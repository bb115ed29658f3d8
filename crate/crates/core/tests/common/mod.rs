#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use shiftcalc::bv::Potential;
use shiftcalc::expr::Definition;
use shiftcalc::filtered::{DimTable, FilteredModule};
use shiftcalc::graded::{Algebra, Derivation, Generator, Poly};
use shiftcalc::linalg::monomials_of_degree;
use shiftcalc::Q;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn data_file(name: &str) -> PathBuf {
    data_dir().join(name)
}

pub fn definition(name: &str) -> Definition {
    Definition::parse(&fs::read_to_string(data_file(name)).unwrap()).unwrap()
}

/// Every shipped definition file (top level of `data/`), sorted by name.
pub fn shipped() -> Vec<(String, Definition)> {
    let mut names: Vec<String> = fs::read_dir(data_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension().is_some_and(|x| x == "def")).then(|| p.file_name().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|n| {
            let d = definition(&n);
            (n, d)
        })
        .collect()
}

pub fn potentials() -> Vec<(String, Potential)> {
    shipped().into_iter().filter(|(_, d)| d.potential.is_some()).map(|(n, d)| (n, d.potential().unwrap())).collect()
}

/// Even and odd generators in degrees -2..=2.
pub fn mixed_algebra() -> Arc<Algebra> {
    let gens = [("x", 0), ("y", 0), ("e", 1), ("f", 1), ("u", -1), ("w", 2), ("z", -2)];
    Arc::new(Algebra::new(gens.iter().map(|(n, d)| Generator::new(*n, *d)).collect()).unwrap())
}

pub fn small_q<R: Rng>(rng: &mut R) -> Q {
    let n: i64 = rng.gen_range(-4..=4);
    let d: i64 = rng.gen_range(1..=3);
    Q::new(n.into(), d.into())
}

/// A random polynomial of the given degree with at most `terms` terms of
/// total exponent at most `cap` (possibly zero).
pub fn random_homogeneous<R: Rng>(rng: &mut R, alg: &Algebra, degree: i32, cap: u32, terms: usize) -> Poly {
    let basis = monomials_of_degree(alg, degree, cap, &|_| true, 100_000).unwrap();
    let mut p = Poly::zero();
    if basis.is_empty() {
        return p;
    }
    for _ in 0..rng.gen_range(0..=terms) {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        p += &Poly::term(small_q(rng), m);
    }
    p
}

/// A random degree and a random polynomial of that degree.
pub fn random_graded<R: Rng>(rng: &mut R, alg: &Algebra) -> (i32, Poly) {
    let d = rng.gen_range(-2..=2);
    (d, random_homogeneous(rng, alg, d, 3, 4))
}

/// A random derivation of degree `degree`.
pub fn random_derivation<R: Rng>(rng: &mut R, alg: &Algebra, degree: i32) -> Derivation {
    let values: Vec<(usize, Poly)> =
        (0..alg.len()).map(|i| (i, random_homogeneous(rng, alg, alg.generator(i).degree + degree, 2, 2))).collect();
    Derivation::new(alg, degree, (0, 0), values).unwrap()
}

/// `(-1)^{ab}` as a rational.
pub fn sign(a: i32, b: i32) -> Q {
    if (a * b).rem_euclid(2) == 1 {
        -Q::from_integer(1.into())
    } else {
        Q::from_integer(1.into())
    }
}

/// Rank of a dense rational matrix by plain Gaussian elimination.
pub fn dense_rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                let top = rows[rank].clone();
                for (x, t) in rows[r].iter_mut().zip(&top).skip(c) {
                    *x -= &f * t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Exponent vectors in `n` variables of total degree exactly `k`.
pub fn exponents(n: usize, k: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for a in (0..=k).rev() {
        for mut rest in exponents(n - 1, k - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub type Dense = BTreeMap<Vec<u32>, Q>;

pub fn to_dense(p: &Poly, n: usize) -> Dense {
    p.terms()
        .map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, k) in m.factors() {
                e[i] = k;
            }
            (e, c.clone())
        })
        .collect()
}

pub fn partial(p: &Dense, i: usize) -> Dense {
    let mut out = Dense::new();
    for (e, c) in p {
        if e[i] > 0 {
            let mut f = e.clone();
            f[i] -= 1;
            *out.entry(f).or_insert_with(Q::zero) += c * Q::from_integer((e[i] as i64).into());
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `dim (ℚ[x]/(∂S))_k` per polynomial degree `k ≤ cap`, for homogeneous `S`.
pub fn quotient_oracle(p: &Potential, cap: u32) -> BTreeMap<u32, usize> {
    let n = p.len();
    let s = to_dense(p.s(), n);
    let grads: Vec<Dense> = (0..n).map(|i| partial(&s, i)).filter(|g| !g.is_empty()).collect();
    let mut out = BTreeMap::new();
    for k in 0..=cap {
        let cols = exponents(n, k);
        let index: BTreeMap<&Vec<u32>, usize> = cols.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut rows = Vec::new();
        for g in &grads {
            let dg = g.keys().next().unwrap().iter().sum::<u32>();
            assert!(g.keys().all(|e| e.iter().sum::<u32>() == dg), "oracle needs a homogeneous potential");
            if dg > k {
                continue;
            }
            for mult in exponents(n, k - dg) {
                let mut row = vec![Q::zero(); cols.len()];
                for (e, c) in g {
                    let f: Vec<u32> = e.iter().zip(&mult).map(|(a, b)| a + b).collect();
                    row[index[&f]] += c;
                }
                rows.push(row);
            }
        }
        out.insert(k, cols.len() - dense_rank(rows));
    }
    out
}

/// `dim gr^i` per degree from the filtration dimensions alone.
pub fn gr_oracle(x: &FilteredModule) -> DimTable {
    let mut out = DimTable::new();
    for i in (x.start() - 2)..=(x.hi() + 1) {
        let (a, b) = (x.dims(i), x.dims(i + 1));
        for (&d, &n) in &a {
            let m = b.get(&d).copied().unwrap_or(0);
            if n > m {
                out.insert((i, d), n - m);
            }
        }
    }
    out
}
