//! The mixed structure `ε = {𝒮, -}` on the Chevalley-Eilenberg side.
//!
//! ```bash
//! cargo run --example mixed_structure
//! ```

use shiftcalc::bv::{ce_algebra, koszul_tate, mixed_structure, solve_cme};
use shiftcalc::expr::{format_poly, Definition};
use shiftcalc::filtered::Caps;

fn main() -> shiftcalc::Result<()> {
    let p = Definition::parse("[generators]\nx, 0\ny, 0\n[potential]\nS = x^2*y\n")?.potential()?;
    let bv = ce_algebra(&koszul_tate(&p, 2, 6)?)?;
    let alg = bv.algebra().clone();
    let cert = solve_cme(&bv, 2, 6)?;
    let m = mixed_structure(&bv, &cert, Caps { weight: 2, degrees: (-3, 2), polydegree: 3 })?;
    for (i, values) in &m.components {
        println!("epsilon_{i}:");
        for (g, v) in values.iter().enumerate() {
            if !v.is_zero() {
                println!("  {} -> {}", alg.generator(g).name, format_poly(&alg, v));
            }
        }
    }
    println!("epsilon_0 = d: {}", m.eps0_residue.is_empty());
    println!("epsilon^2 = 0 below the truncation: {}", m.square_residue.is_empty());
    println!("ghost filtration is a foliation: {}", m.foliation.is_foliation());
    Ok(())
}
