//! Truncated cohomology of a DGA, read from the definition format.
//!
//! ```bash
//! cargo run --example cohomology
//! ```

use shiftcalc::expr::{format_poly, parse_poly, Definition};
use shiftcalc::graded::{cohomology_truncated, is_boundary};

const DEF: &str = "
# dCrit(x^2 y) written out by hand
[generators]
x, 0
y, 0
xi_x, -1
xi_y, -1

[differential]
xi_x = 2*x*y
xi_y = x^2
";

fn main() -> shiftcalc::Result<()> {
    let a = Definition::parse(DEF)?.dga()?;
    let alg = a.algebra().clone();
    println!("d^2 = 0: {}", a.check_square_zero().is_ok());

    let h = cohomology_truncated(&a, (-2, 0), 4)?;
    for (k, piece) in &h.pieces {
        let reps: Vec<String> = piece.representatives.iter().map(|r| format_poly(&alg, r)).collect();
        println!(
            "H^{k}: dim {} (cycles {}, boundaries {})  {}",
            piece.dimension,
            piece.cycles,
            piece.boundaries,
            reps.join(", ")
        );
    }

    let syzygy = parse_poly(&alg, "x*xi_x - 2*y*xi_y")?;
    println!("d(syzygy) = {}", format_poly(&alg, &a.d(&syzygy)?));
    println!("syzygy is a boundary: {}", is_boundary(&a, &syzygy, 4)?);
    Ok(())
}
