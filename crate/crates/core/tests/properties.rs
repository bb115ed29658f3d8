mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shiftcalc::bv::{ce_algebra, derived_critical_locus, koszul_tate, Potential};
use shiftcalc::filtered::{check_gr_hom, random_module};
use shiftcalc::graded::{Algebra, Derivation, Generator, Pair, PairingBracket, Poly};
use shiftcalc::linalg::monomials_of_degree;
use shiftcalc::Q;

use common::{mixed_algebra, sign};

/// Terms as `(basis index, numerator, denominator)`, resolved against the
/// monomial basis of the chosen degree.
fn poly_in(alg: &Algebra, degree: i32, cap: u32, terms: &[(usize, i64, i64)]) -> Poly {
    let basis = monomials_of_degree(alg, degree, cap, &|_| true, 100_000).unwrap();
    let mut p = Poly::zero();
    if basis.is_empty() {
        return p;
    }
    for &(i, n, d) in terms {
        p += &Poly::term(Q::new(n.into(), d.into()), basis[i % basis.len()].clone());
    }
    p
}

fn terms() -> impl Strategy<Value = Vec<(usize, i64, i64)>> {
    prop::collection::vec((0usize..1000, -4i64..=4, 1i64..=3), 0..5)
}

fn graded() -> impl Strategy<Value = (i32, Vec<(usize, i64, i64)>)> {
    (-2i32..=2, terms())
}

fn mixed(g: &(i32, Vec<(usize, i64, i64)>)) -> (i32, Poly) {
    (g.0, poly_in(&mixed_algebra(), g.0, 3, &g.1))
}

/// `x, ξ` and `c, ĉ` in degrees `0, -1, -2, 1`: an antibracket of degree 1.
fn darboux() -> PairingBracket {
    let gens = [("x", 0), ("xi", -1), ("c", -2), ("c_hat", 1)];
    let alg = Arc::new(Algebra::new(gens.iter().map(|(n, d)| Generator::new(*n, *d)).collect()).unwrap());
    PairingBracket::new(alg, &[Pair { q: 0, p: 1 }, Pair { q: 2, p: 3 }]).unwrap()
}

fn darboux_poly(b: &PairingBracket, g: &(i32, Vec<(usize, i64, i64)>)) -> Poly {
    poly_in(b.algebra(), g.0, 3, &g.1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn product_is_graded_commutative(a in graded(), b in graded()) {
        let alg = mixed_algebra();
        let ((da, a), (db, b)) = (mixed(&a), mixed(&b));
        prop_assert_eq!(alg.mul(&b, &a).unwrap(), alg.mul(&a, &b).unwrap().scale(&sign(da, db)));
    }

    #[test]
    fn product_is_associative(a in graded(), b in graded(), c in graded()) {
        let alg = mixed_algebra();
        let ((_, a), (_, b), (_, c)) = (mixed(&a), mixed(&b), mixed(&c));
        let l = alg.mul(&alg.mul(&a, &b).unwrap(), &c).unwrap();
        let r = alg.mul(&a, &alg.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn derivations_satisfy_leibniz(
        delta in -1i32..=1,
        values in prop::collection::vec(terms(), 7),
        a in graded(),
        b in graded(),
    ) {
        let alg = mixed_algebra();
        let vals = values.iter().enumerate().map(|(i, t)| (i, poly_in(&alg, alg.generator(i).degree + delta, 2, t)));
        let d = Derivation::new(&alg, delta, (0, 0), vals).unwrap();
        let ((da, a), (_, b)) = (mixed(&a), mixed(&b));
        let lhs = d.apply(&alg, &alg.mul(&a, &b).unwrap()).unwrap();
        let rhs = &alg.mul(&d.apply(&alg, &a).unwrap(), &b).unwrap()
            + &alg.mul(&a, &d.apply(&alg, &b).unwrap()).unwrap().scale(&sign(delta, da));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antibracket_is_shifted_antisymmetric(f in graded(), g in graded()) {
        let b = darboux();
        let (f, g) = (darboux_poly(&b, &f), darboux_poly(&b, &g));
        let fg = b.bracket(&f, &g).unwrap();
        let gf = b.bracket(&g, &f).unwrap();
        prop_assert_eq!(fg, gf.scale(&-b.shifted_sign(&f, &g)));
    }

    #[test]
    fn antibracket_satisfies_jacobi(f in graded(), g in graded(), h in graded()) {
        let b = darboux();
        let (f, g, h) = (darboux_poly(&b, &f), darboux_poly(&b, &g), darboux_poly(&b, &h));
        let br = |u: &Poly, v: &Poly| b.bracket(u, v).unwrap();
        let lhs = br(&f, &br(&g, &h));
        let rhs = &br(&br(&f, &g), &h) + &br(&g, &br(&f, &h)).scale(&b.shifted_sign(&f, &g));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antibracket_is_a_derivation(f in graded(), g in graded(), h in graded()) {
        let b = darboux();
        let alg = b.algebra().clone();
        let (df, f) = (f.0, darboux_poly(&b, &f));
        let (dg, g, h) = (g.0, darboux_poly(&b, &g), darboux_poly(&b, &h));
        let lhs = b.bracket(&f, &alg.mul(&g, &h).unwrap()).unwrap();
        let rhs = &alg.mul(&b.bracket(&f, &g).unwrap(), &h).unwrap()
            + &alg.mul(&g, &b.bracket(&f, &h).unwrap()).unwrap().scale(&sign(df + 1, dg));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn derived_critical_loci_are_symplectic(coeffs in prop::collection::vec(-3i64..=3, 9)) {
        let alg = Arc::new(Algebra::new(vec![Generator::new("x", 0), Generator::new("y", 0)]).unwrap());
        let mut s = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let (i, j) = ((k % 3) as u32, (k / 3) as u32 + 1);
            let m = shiftcalc::graded::Monomial::from_pairs([(0, i), (1, j)]);
            s += &Poly::term(Q::from_integer((*c).into()), m);
        }
        let p = Potential::new(alg, s).unwrap();
        let dc = derived_critical_locus(&p).unwrap();
        prop_assert!(dc.dga.check_square_zero().is_ok());
        prop_assert!(dc.de_rham.dga().check_square_zero().is_ok());
        prop_assert!(dc.symplectic.determinant.as_constant().is_some());
        let kt = koszul_tate(&p, 2, 4).unwrap();
        prop_assert!(kt.dga.check_square_zero().is_ok());
        let bv = ce_algebra(&kt).unwrap();
        let total = p.s() + &bv.s1().unwrap();
        let ss = bv.bracket(&total, &total).unwrap();
        prop_assert!(bv.ghost_component(&ss, 0).is_zero());
    }

    #[test]
    fn gr_commutes_with_hom(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_module(&mut rng, 3, 6);
        let y = random_module(&mut rng, 3, 6);
        prop_assert!(check_gr_hom(&x, &y).is_ok());
        prop_assert_eq!(x.complete().complete().gr(), x.complete().gr());
    }
}
