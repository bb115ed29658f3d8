//! Closed form towers and the non-degeneracy test.
//!
//! ```bash
//! cargo run --example symplectic
//! ```

use shiftcalc::derham::{check_closed_tower, check_symplectic, de_rham, ClosedFormTower, SymplecticCheck, TowerCheck};
use shiftcalc::expr::{format_poly, parse_poly, Definition};

fn main() -> shiftcalc::Result<()> {
    let cases = [
        ("x, 0\nxi, -1", "d(x)*d(xi)"),
        ("x, 0\nxi, -1", "x*d(x)*d(xi)"),
        ("x, 0\ny, 0\nxi, -1", "y*d(x)*d(xi)"),
        ("x, 0\ny, 0\nxi, -1", "d(x)*d(xi)"),
        ("x, 0\ny, 0\nxi, -1\neta, -1", "d(x)*d(xi) + (1 + x^2)*d(y)*d(eta)"),
        ("x, 0\ny, 0\nxi, -1\neta, -1", "d(x)*d(xi) + d(y)*d(eta) + d(x)*d(eta)"),
    ];
    for (gens, src) in cases {
        let dr = de_rham(&Definition::parse(&format!("[generators]\n{gens}\n"))?.dga()?)?;
        let alg = dr.algebra().clone();
        let tower = ClosedFormTower::two_form(-1, parse_poly(&alg, src)?);
        print!("{src:<42} ");
        if let TowerCheck::Counterexample { weight, residue, .. } = check_closed_tower(&dr, &tower)? {
            println!("not closed at weight {weight}: {}", format_poly(&alg, &residue));
            continue;
        }
        match check_symplectic(&dr, &tower)? {
            SymplecticCheck::Symplectic(s) => println!("symplectic, determinant {}", format_poly(&alg, &s.determinant)),
            SymplecticCheck::Degenerate { block_degree, witness, .. } => {
                println!("degenerate in block {block_degree}, witness {}", format_poly(&alg, &witness))
            }
        }
    }
    Ok(())
}
