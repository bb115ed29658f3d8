//! De Rham complexes with their Hodge filtration.
//!
//! ```bash
//! cargo run --example de_rham
//! ```

use std::sync::Arc;

use shiftcalc::derham::{de_rham, form_counts, hodge_components, relative_de_rham};
use shiftcalc::expr::{format_poly, parse_poly};
use shiftcalc::filtered::Caps;
use shiftcalc::graded::{Algebra, DgAlgebra, Generator};

fn main() -> shiftcalc::Result<()> {
    let plane = DgAlgebra::free(Arc::new(Algebra::new(vec![Generator::new("x", 0), Generator::new("y", 0)])?));
    let dr = de_rham(&plane)?;
    let alg = dr.algebra().clone();
    let names: Vec<&str> = alg.generators().iter().map(|g| g.name.as_str()).collect();
    println!("DR(Q[x,y]) generators: {names:?}");

    let f = parse_poly(&alg, "x^2*y")?;
    println!("d_dR(x^2 y) = {}", format_poly(&alg, &dr.d_dr(&f)?));
    for (w, p) in hodge_components(&dr, &parse_poly(&alg, "x + y*d(x) + d(x)*d(y)")?) {
        println!("  Hodge weight {w}: {}", format_poly(&alg, &p));
    }

    let caps = Caps { weight: 2, degrees: (0, 2), polydegree: 4 };
    let check = dr.check_gr(caps)?;
    let pres = check.presentation().expect("de Rham is a foliation");
    println!("rank of gr^p over the base: {:?}", pres.rank_by_weight);
    println!("form counts: {:?}", form_counts(&dr, &caps)?);

    // the line x inside the plane: DR(Q[x,y] / Q[x]) keeps only d(y)
    let line = DgAlgebra::free(Arc::new(Algebra::new(vec![Generator::new("x", 0)])?));
    let rel = relative_de_rham(&line, &plane, vec![plane.algebra().var("x")?])?;
    let rnames: Vec<&str> = rel.algebra().generators().iter().map(|g| g.name.as_str()).collect();
    println!("relative generators: {rnames:?}");
    let t = rel.tensor_identity(caps)?;
    println!("DR(B/A) = DR(B) (x)_DR(A) A on gr: {}", t.is_ok());
    Ok(())
}
