//! Shifted polyvectors: the Schouten bracket, the Maurer-Cartan equation and
//! the correspondence with symplectic forms.
//!
//! ```bash
//! cargo run --example poisson
//! ```

use std::sync::Arc;

use shiftcalc::derham::de_rham;
use shiftcalc::expr::{format_poly, parse_poly, Definition};
use shiftcalc::graded::{Algebra, DgAlgebra, Generator};
use shiftcalc::poisson::{
    bracket_of_functions, mc_check, poisson_to_symplectic, symplectic_to_poisson, theta, PoissonCandidate,
    PolyvectorAlgebra,
};

fn main() -> shiftcalc::Result<()> {
    // so(3)*: a 0-shifted linear Poisson structure
    let alg = Arc::new(Algebra::new(["x", "y", "z"].iter().map(|n| Generator::new(*n, 0)).collect())?);
    let pol = PolyvectorAlgebra::new(&DgAlgebra::free(alg.clone()), 0)?;
    let pa = pol.algebra().clone();
    let pi = parse_poly(&pa, "x*D(y)*D(z) + y*D(z)*D(x) + z*D(x)*D(y)")?;
    println!("[pi, pi] = {}", format_poly(&pa, &pol.schouten(&pi, &pi)?));
    let c = PoissonCandidate::new(&pol, pi)?;
    println!("Maurer-Cartan: {}", mc_check(&pol, &c)?.is_ok());
    for (f, g) in [("x", "y"), ("y", "z"), ("x^2 + y^2 + z^2", "x")] {
        let b = bracket_of_functions(&pol, &c, &parse_poly(&alg, f)?, &parse_poly(&alg, g)?)?;
        println!("{{{f}, {g}}} = {}", format_poly(&pa, &b));
    }

    // D(x) D(xi) is (-1)-shifted and non-degenerate
    let base = Definition::parse("[generators]\nx, 0\nxi, -1\n")?.dga()?;
    let pol = PolyvectorAlgebra::new(&base, -1)?;
    let c = PoissonCandidate::new(&pol, parse_poly(pol.algebra(), "D(x)*D(xi)")?)?;
    println!("theta determinant: {}", format_poly(pol.algebra(), &theta(&pol, &c)?.determinant));
    let dr = de_rham(&base)?;
    let sym = poisson_to_symplectic(&pol, &c, &dr)?;
    println!("omega = {}", format_poly(dr.algebra(), &sym.tower.form(2)));
    let back = symplectic_to_poisson(&pol, &sym, &dr)?;
    println!("back to pi = {}", format_poly(pol.algebra(), &back.pi));
    Ok(())
}
