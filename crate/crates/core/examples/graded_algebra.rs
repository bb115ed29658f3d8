//! Free graded-commutative algebras: Koszul signs, derivations and the
//! text syntax for polynomials.
//!
//! ```bash
//! cargo run --example graded_algebra
//! ```

use std::sync::Arc;

use shiftcalc::expr::{format_poly, parse_poly};
use shiftcalc::graded::{Algebra, Derivation, Generator, Poly};

fn main() -> shiftcalc::Result<()> {
    // x even, e and f odd, w of degree 2
    let alg = Arc::new(Algebra::new(vec![
        Generator::new("x", 0),
        Generator::new("e", 1),
        Generator::new("f", 1),
        Generator::new("w", 2),
    ])?);
    let show = |p: &Poly| format_poly(&alg, p);

    let e = alg.var("e")?;
    let f = alg.var("f")?;
    println!("e*f = {}", show(&alg.mul(&e, &f)?));
    println!("f*e = {}", show(&alg.mul(&f, &e)?));
    println!("e*e = {}", show(&alg.mul(&e, &e)?));

    let p = parse_poly(&alg, "x^2*e*w + 3/2*w*f")?;
    println!("p = {}  (degree {:?})", show(&p), alg.degree(&p));
    println!("left d/de p = {}", show(&alg.left_derivative(&p, alg.index_of("e")?)));

    // d(x) = e, d(f) = e*f: a degree +1 derivation
    let d = Derivation::new(&alg, 1, (0, 0), [(0, e.clone()), (2, alg.mul(&e, &f)?)])?;
    let q = parse_poly(&alg, "x^2*f")?;
    println!("d(x^2 f) = {}", show(&d.apply(&alg, &q)?));
    Ok(())
}
