//! Koszul-Tate resolutions, certified within a polynomial-degree cap.
//!
//! ```bash
//! cargo run --example koszul_tate
//! ```

use shiftcalc::bv::koszul_tate;
use shiftcalc::expr::{format_poly, Definition};

fn main() -> shiftcalc::Result<()> {
    let p = Definition::parse("[generators]\nx, 0\ny, 0\n[potential]\nS = x^2*y\n")?.potential()?;
    for max_stage in [1, 2] {
        let kt = koszul_tate(&p, max_stage, 6)?;
        let alg = kt.algebra();
        println!(
            "max stage {max_stage}: H = {:?}, certified {:?}, complete {}",
            kt.cohomology, kt.certified, kt.complete
        );
        for g in kt.higher_generators() {
            let d = kt.dga.differential().value(g);
            println!(
                "  {} (degree {}) with d = {}",
                alg.generator(g).name,
                alg.generator(g).degree,
                format_poly(alg, &d)
            );
        }
    }
    Ok(())
}
