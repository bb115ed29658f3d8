//! Acceptance suite: one line per criterion, each under its time limit.
//!
//! Run with `cargo test --test acceptance`. Exits nonzero if any criterion
//! fails or overruns.

mod common;

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shiftcalc::bv::{
    ce_algebra, derived_critical_locus, koszul_tate, mixed_structure, solve_cme, strict_critical_locus, verify_cme,
};
use shiftcalc::derham::{check_closed_tower, check_symplectic, de_rham, ClosedFormTower, SymplecticCheck};
use shiftcalc::expr::parse_poly;
use shiftcalc::filtered::samples::rank_one_maps;
use shiftcalc::filtered::{centfol_table, check_gr_hom, random_module, relative_cot_graded, Caps, DimTable};
use shiftcalc::graded::{Algebra, DgAlgebra, Generator, Poly};
use shiftcalc::poisson::{
    bracket_of_functions, function_bracket_sign, mc_check, poisson_to_symplectic, symplectic_to_poisson,
    PoissonCandidate, PolyvectorAlgebra,
};
use shiftcalc::Q;

use common::*;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

// 1 ------------------------------------------------------------------------

fn kernel_suite() -> Check {
    let alg = mixed_algebra();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for case in 0..1000 {
        let (da, a) = random_graded(&mut rng, &alg);
        let (db, b) = random_graded(&mut rng, &alg);
        let ab = lib(alg.mul(&a, &b))?;
        let ba = lib(alg.mul(&b, &a))?;
        ensure(ba == ab.scale(&sign(da, db)), || format!("commutativity fails in case {case}"))?;
    }
    for case in 0..1000 {
        let (_, a) = random_graded(&mut rng, &alg);
        let (_, b) = random_graded(&mut rng, &alg);
        let (_, c) = random_graded(&mut rng, &alg);
        let l = lib(alg.mul(&lib(alg.mul(&a, &b))?, &c))?;
        let r = lib(alg.mul(&a, &lib(alg.mul(&b, &c))?))?;
        ensure(l == r, || format!("associativity fails in case {case}"))?;
    }
    for case in 0..1000 {
        let delta = rng.gen_range(-1..=1);
        let d = random_derivation(&mut rng, &alg, delta);
        let (da, a) = random_graded(&mut rng, &alg);
        let (_, b) = random_graded(&mut rng, &alg);
        let lhs = lib(d.apply(&alg, &lib(alg.mul(&a, &b))?))?;
        let rhs = &lib(alg.mul(&lib(d.apply(&alg, &a))?, &b))?
            + &lib(alg.mul(&a, &lib(d.apply(&alg, &b))?))?.scale(&sign(delta, da));
        ensure(lhs == rhs, || format!("Leibniz fails in case {case}"))?;
    }
    Ok("3 x 1000 seeded cases".into())
}

// 2 ------------------------------------------------------------------------

fn square_zero_suite() -> Check {
    let checked = std::cell::Cell::new(0);
    let check = |what: String, a: &DgAlgebra| -> Result<(), String> {
        checked.set(checked.get() + 1);
        ensure(a.check_square_zero().is_ok(), || format!("d^2 != 0 on {what}"))
    };
    for (name, def) in shipped() {
        if def.potential.is_some() {
            let p = lib(def.potential())?;
            let dc = lib(derived_critical_locus(&p))?;
            check(format!("dCrit of {name}"), &dc.dga)?;
            check(format!("DR(dCrit) of {name}"), dc.de_rham.dga())?;
            let kt = lib(koszul_tate(&p, 2, 4))?;
            check(format!("KT of {name}"), &kt.dga)?;
            let bv = lib(ce_algebra(&kt))?;
            let cert = lib(solve_cme(&bv, 2, 4))?;
            let m = lib(mixed_structure(&bv, &cert, Caps { weight: 2, degrees: (-3, 2), polydegree: 2 }))?;
            checked.set(checked.get() + 1);
            ensure(m.square_residue.is_empty(), || format!("epsilon^2 != 0 on CE of {name}"))?;
        } else {
            let a = lib(def.dga())?;
            check(name.clone(), &a)?;
            check(format!("DR of {name}"), lib(de_rham(&a))?.dga())?;
        }
    }
    let broken = definition("invalid/square_nonzero.def");
    ensure(!lib(broken.dga())?.check_square_zero().is_ok(), || "the invalid algebra was accepted".into())?;
    Ok(format!("{} differentials square to zero; the invalid one is caught", checked.get()))
}

// 3 ------------------------------------------------------------------------

fn strict_locus_suite() -> Check {
    let mut totals = Vec::new();
    for (name, cap) in [("quadratic.def", 6), ("cubic.def", 6), ("x2y.def", 6), ("rotation.def", 4), ("zero.def", 6)] {
        let p = lib(definition(name).potential())?;
        let st = lib(strict_critical_locus(&p, cap))?;
        let oracle = quotient_oracle(&p, cap);
        ensure(st.table == oracle, || format!("{name}: H0 table {:?}, oracle {:?}", st.table, oracle))?;
        totals.push((name, st.dimension()));
    }
    let dim = |n: &str| totals.iter().find(|(m, _)| *m == n).unwrap().1;
    ensure(dim("quadratic.def") == 1, || "dim H0 for x^2/2 is not 1".into())?;
    ensure(dim("cubic.def") == 2, || "dim H0 for x^3/3 is not 2".into())?;
    Ok(format!("tables match the dense oracle; x^2/2 -> 1, x^3/3 -> 2, x^2y -> {} up to degree 6", dim("x2y.def")))
}

// 4 ------------------------------------------------------------------------

fn kt_suite() -> Check {
    let p = lib(definition("x2y.def").potential())?;
    let dc = lib(derived_critical_locus(&p))?;
    let a = dc.dga.algebra();
    let v = |s: &str| lib(parse_poly(a, s));
    let syzygy = v("x*xi_x - 2*y*xi_y")?;
    ensure(lib(dc.dga.d(&syzygy))?.is_zero(), || "the syzygy is not a cycle".into())?;
    // Degree -2 of dCrit is ℚ[x, y]·ξ_x ξ_y, so every boundary in degree -1
    // is f·d(ξ_x ξ_y) and its ξ_x coefficient is a multiple of that of
    // d(ξ_x ξ_y). The syzygy's ξ_x coefficient is x.
    let top = lib(dc.dga.d(&lib(a.mul(&v("xi_x")?, &v("xi_y")?))?))?;
    let xi_x = a.index_of("xi_x").unwrap();
    let coeff = a.left_derivative(&top, xi_x);
    let x2 = v("x^2")?;
    ensure(coeff == x2.clone() || coeff == x2.scale(&q(-1)), || "unexpected d(xi_x xi_y)".into())?;
    ensure(!lib(shiftcalc::graded::is_boundary(&dc.dga, &syzygy, 6))?, || {
        "the syzygy is reported as a boundary".into()
    })?;
    let kt = lib(koszul_tate(&p, 2, 6))?;
    let stage2 = kt.stage(2).map_or(0, |s| s.generators.len());
    ensure(stage2 >= 1, || "no stage-2 generator".into())?;
    ensure(kt.cohomology.get(&-1) == Some(&0), || format!("H^-1 = {:?} after stage 2", kt.cohomology.get(&-1)))?;
    ensure(kt.dga.check_square_zero().is_ok(), || "KT differential does not square to zero".into())?;
    Ok(format!("syzygy is a non-bounding cycle; {stage2} stage-2 generator(s); H^-1 = 0 to degree 6"))
}

// 5 ------------------------------------------------------------------------

fn cme_suite() -> Check {
    let p = lib(definition("quadratic.def").potential())?;
    let bv = lib(ce_algebra(&lib(koszul_tate(&p, 2, 6))?))?;
    let cert = lib(solve_cme(&bv, 2, 6))?;
    ensure(cert.action() == *p.s(), || "the action for x^2/2 is not S".into())?;
    ensure(lib(bv.bracket(&cert.action(), &cert.action()))?.is_zero(), || "{S, S} != 0 for x^2/2".into())?;
    ensure(lib(verify_cme(&bv, &cert))?.is_ok(), || "x^2/2 certificate does not verify".into())?;

    let p = lib(definition("x2y.def").potential())?;
    let bv = lib(ce_algebra(&lib(koszul_tate(&p, 2, 6))?))?;
    let cert = lib(solve_cme(&bv, 2, 6))?;
    ensure(cert.residue.is_zero(), || "x^2y residue is nonzero".into())?;
    let verdict = lib(verify_cme(&bv, &cert))?;
    ensure(verdict.is_ok(), || format!("x^2y fails {:?}", verdict.failure().map(|f| f.0.as_str())))?;
    Ok("x^2/2 gives S itself; x^2y verifies to ghost order 2 with zero residue".into())
}

// 6 ------------------------------------------------------------------------

fn form_check(name: &str) -> Result<SymplecticCheck, String> {
    let def = definition(name);
    let dr = lib(de_rham(&lib(def.dga())?))?;
    let omega = def.form.iter().find(|(_, k, _)| k == "omega_2").ok_or("no omega_2")?.2.clone();
    let shift: i32 = def.form.iter().find(|(_, k, _)| k == "shift").unwrap().2.trim().parse().unwrap();
    let omega = lib(parse_poly(dr.algebra(), &omega))?;
    let tower = ClosedFormTower::two_form(shift, omega);
    ensure(lib(check_closed_tower(&dr, &tower))?.is_ok(), || format!("{name} is not closed"))?;
    lib(check_symplectic(&dr, &tower))
}

fn symplectic_suite() -> Check {
    let unit = |d: &Poly| d.as_constant().is_some_and(|c| c.abs().is_one());
    let std = form_check("standard_form.def")?;
    let s = std.structure().ok_or("the standard form is rejected")?;
    ensure(unit(&s.determinant), || "determinant is not ±1".into())?;
    for (name, p) in potentials() {
        let dc = lib(derived_critical_locus(&p))?;
        ensure(unit(&dc.symplectic.determinant), || format!("dCrit of {name}: determinant is not ±1"))?;
    }
    let SymplecticCheck::Degenerate { witness, .. } = form_check("degenerate_form.def")? else {
        return Err("x dx dxi is accepted".into());
    };
    let x = Poly::monomial(shiftcalc::graded::Monomial::var(0));
    ensure(witness == x || witness == x.scale(&q(-1)), || "the witness is not ±x".into())?;
    Ok("dx dxi and every dCrit form have determinant ±1; x dx dxi is rejected with witness ±x".into())
}

// 7 ------------------------------------------------------------------------

fn lie_poisson() -> Result<(PolyvectorAlgebra, PoissonCandidate), String> {
    let alg = Arc::new(lib(Algebra::new(["x", "y", "z"].iter().map(|n| Generator::new(*n, 0)).collect()))?);
    let pol = lib(PolyvectorAlgebra::new(&DgAlgebra::free(alg), 0))?;
    let pi = lib(parse_poly(pol.algebra(), "x*D(y)*D(z) + y*D(z)*D(x) + z*D(x)*D(y)"))?;
    let c = lib(PoissonCandidate::new(&pol, pi))?;
    Ok((pol, c))
}

fn pair() -> Result<(PolyvectorAlgebra, PoissonCandidate), String> {
    let def = definition("pair_bivector.def");
    let pol = lib(PolyvectorAlgebra::new(&lib(def.dga())?, -1))?;
    let pi = lib(parse_poly(pol.algebra(), "D(x)*D(xi)"))?;
    let c = lib(PoissonCandidate::new(&pol, pi))?;
    Ok((pol, c))
}

fn poisson_suite() -> Check {
    let (pol, c) = pair()?;
    let dr = lib(de_rham(pol.base()))?;
    let sym = lib(poisson_to_symplectic(&pol, &c, &dr))?;
    let back = lib(symplectic_to_poisson(&pol, &sym, &dr))?;
    ensure(back.bivector(&pol) == c.bivector(&pol), || "the round trip changes the bivector".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nonzero = 0;
    for (pol, c) in [pair()?, lie_poisson()?] {
        ensure(lib(mc_check(&pol, &c))?.is_ok(), || "a sample bivector is not Maurer-Cartan".into())?;
        let base = pol.base().algebra().clone();
        let mut degrees: Vec<i32> = base.generators().iter().map(|g| g.degree).collect();
        degrees.dedup();
        for t in 0..50 {
            let mut f = || {
                let d = degrees[rng.gen_range(0..degrees.len())];
                random_homogeneous(&mut rng, &base, d, 3, 4)
            };
            let (a, b, h) = (f(), f(), f());
            let br = |u: &Poly, v: &Poly| lib(bracket_of_functions(&pol, &c, u, v));
            let lhs = br(&a, &br(&b, &h)?)?;
            let rhs = &br(&br(&a, &b)?, &h)? + &br(&b, &br(&a, &h)?)?.scale(&function_bracket_sign(&pol, &a, &b));
            ensure(lhs == rhs, || format!("Jacobi fails on triple {t} at shift {}", pol.shift()))?;
            let ab = br(&a, &b)?;
            let ba = br(&b, &a)?;
            ensure(ab == ba.scale(&-function_bracket_sign(&pol, &a, &b)), || format!("symmetry fails on triple {t}"))?;
            nonzero += usize::from(!lhs.is_zero());
        }
    }
    ensure(nonzero > 0, || "every sampled Jacobi term vanished".into())?;
    Ok(format!("round trip exact; Jacobi holds on 100 triples ({nonzero} with nonzero terms)"))
}

// 8 ------------------------------------------------------------------------

fn derham_suite() -> Check {
    let plane = lib(definition("plane.def").dga())?;
    let dr = lib(de_rham(&plane))?;
    let caps = Caps { weight: 2, degrees: (0, 2), polydegree: 5 };
    let check = lib(dr.check_gr(caps))?;
    let pres = check.presentation().ok_or("DR of the plane is not a foliation")?;
    let ranks: Vec<usize> = pres.rank_by_weight.values().copied().collect();
    ensure(ranks == [1, 2, 1], || format!("ranks {ranks:?}"))?;
    let table = lib(dr.gr_table(&caps))?;
    let mut oracle = DimTable::new();
    for p in 0..=2u64 {
        // p of the two forms, times monomials in x, y of degree ≤ 5 - p
        let n = binomial(2, p) * binomial(5 - p + 2, 2);
        oracle.insert((p as i32, p as i32), n as usize);
    }
    ensure(table == oracle, || format!("gr table {table:?}, oracle {oracle:?}"))?;
    Ok("ranks 1, 2, 1; gr table matches the monomial count".into())
}

// 9 ------------------------------------------------------------------------

fn grhom_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for case in 0..50 {
        let x = random_module(&mut rng, 3, 6);
        let y = random_module(&mut rng, 3, 6);
        let r = check_gr_hom(&x, &y);
        let (gx, gy) = (gr_oracle(&x.complete()), gr_oracle(&y.complete()));
        let mut oracle = DimTable::new();
        for (&(i, a), &m) in &gx {
            for (&(j, b), &n) in &gy {
                *oracle.entry((j - i, b - a)).or_insert(0) += m * n;
            }
        }
        let nonzero = |t: &DimTable| t.iter().filter(|(_, &v)| v > 0).map(|(k, v)| (*k, *v)).collect::<DimTable>();
        ensure(nonzero(&r.rhs) == oracle, || format!("case {case}: Hom(gr X, gr Y) differs from the oracle"))?;
        ensure(nonzero(&r.lhs) == oracle, || format!("case {case}: gr Hom(X, Y) differs from the oracle"))?;
    }
    Ok("50 seeded instances agree with the adapted-basis oracle".into())
}

// 10 -----------------------------------------------------------------------

fn foliation_suite() -> Check {
    let caps = Caps { weight: 2, degrees: (-2, 3), polydegree: 3 };
    let maps = lib(rank_one_maps(caps))?;
    for s in &maps {
        let rc = lib(relative_cot_graded(&s.map(), caps))?;
        ensure(rc.is_ok(), || format!("{}: relative cotangent formula fails at {:?}", s.name, rc.mismatch))?;
        ensure(rc.lhs.values().any(|&v| v > 0), || format!("{}: empty relative cotangent table", s.name))?;
        for n in [-1, 0, 1] {
            let cf = lib(centfol_table(&s.map(), n, caps))?;
            ensure(cf.is_ok(), || format!("{}: centre formula fails for n = {n} at {:?}", s.name, cf.mismatch))?;
        }
    }
    Ok(format!("{} rank-one maps, shifts -1, 0, 1", maps.len()))
}

// 11 -----------------------------------------------------------------------

fn mixed_suite() -> Check {
    let mut names = Vec::new();
    for (name, p) in potentials() {
        let cap = if name == "rotation.def" { 5 } else { 6 };
        let bv = lib(ce_algebra(&lib(koszul_tate(&p, 2, cap))?))?;
        let cert = lib(solve_cme(&bv, 2, cap))?;
        let m = lib(mixed_structure(&bv, &cert, Caps { weight: 2, degrees: (-3, 2), polydegree: 3 }))?;
        ensure(m.is_ok(), || format!("{name}: mixed structure check fails"))?;
        names.push(name.trim_end_matches(".def").to_string());
    }
    Ok(format!("epsilon_0 = d, epsilon^2 = 0 and a foliation for {}", names.join(", ")))
}

// 12 -----------------------------------------------------------------------

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_shiftcalc"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .map_err(|e| e.to_string())?;
    Ok(out.stdout)
}

fn determinism_suite() -> Check {
    let runs: &[&[&str]] = &[
        &["cme", "solve", "data/quadratic.def"],
        &["cme", "solve", "data/cubic.def"],
        &["cme", "solve", "data/x2y.def"],
        &["cme", "solve", "data/zero.def"],
        &["cme", "solve", "data/rotation.def", "--cap", "5"],
        &["bv", "correspondence", "data/x2y.def"],
        &["kt", "data/x2y.def"],
        &["dcrit", "data/cubic.def"],
        &["dr", "data/plane.def"],
        &["filtered", "grhom", "--seed", "3"],
    ];
    for args in runs {
        let a = run_cli(args)?;
        let b = run_cli(args)?;
        ensure(!a.is_empty() && a == b, || format!("`shiftcalc {}` is not deterministic", args.join(" ")))?;
    }
    Ok(format!("{} commands byte-identical across two runs", runs.len()))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, u64, fn() -> Check);
    let criteria: [Criterion; 12] = [
        ("graded-commutative kernel", 10, kernel_suite),
        ("differentials square to zero", 5, square_zero_suite),
        ("strict critical locus", 30, strict_locus_suite),
        ("Koszul-Tate resolution of x^2y", 30, kt_suite),
        ("classical master equation", 60, cme_suite),
        ("symplectic forms", 5, symplectic_suite),
        ("Poisson round trip and Jacobi", 10, poisson_suite),
        ("de Rham of the plane", 10, derham_suite),
        ("gr of filtered Hom", 10, grhom_suite),
        ("relative cotangent and centre", 10, foliation_suite),
        ("mixed structures", 10, mixed_suite),
        ("CLI determinism", 60, determinism_suite),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let dt = t.elapsed();
        let late = dt > Duration::from_secs(*limit);
        let (tag, detail) = match (&r, late) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over the {limit} s limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} {:>2} {name:<32} {:>7.2} s / {limit:>2} s  {detail}", i + 1, dt.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
