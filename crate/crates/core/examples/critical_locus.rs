//! Derived and strict critical loci of a potential.
//!
//! ```bash
//! cargo run --example critical_locus
//! ```

use shiftcalc::bv::{derived_critical_locus, strict_critical_locus};
use shiftcalc::expr::{format_poly, Definition};

fn main() -> shiftcalc::Result<()> {
    for (name, src) in [
        ("x^2/2", "[generators]\nx, 0\n[potential]\nS = x^2/2\n"),
        ("x^3/3", "[generators]\nx, 0\n[potential]\nS = x^3/3\n"),
        ("x^2 y", "[generators]\nx, 0\ny, 0\n[potential]\nS = x^2*y\n"),
    ] {
        let p = Definition::parse(src)?.potential()?;
        let dc = derived_critical_locus(&p)?;
        let alg = dc.dga.algebra();
        println!("S = {name}");
        for i in 0..alg.len() {
            let v = dc.dga.differential().value(i);
            if !v.is_zero() {
                println!("  d({}) = {}", alg.generator(i).name, format_poly(alg, &v));
            }
        }
        let dr = dc.de_rham.algebra();
        println!("  omega = {}", format_poly(dr, &dc.symplectic.tower.form(2)));
        let st = strict_critical_locus(&p, 5)?;
        let basis: Vec<String> = st.basis.iter().map(|b| format_poly(p.algebra(), b)).collect();
        println!("  H^0 up to degree 5: dim {} [{}]", st.dimension(), basis.join(", "));
    }
    Ok(())
}
