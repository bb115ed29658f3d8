//! Solving the classical master equation and checking the certificate.
//!
//! ```bash
//! cargo run --example master_equation
//! ```

use shiftcalc::bv::{ce_algebra, koszul_tate, solve_cme, verify_cme};
use shiftcalc::expr::{format_poly, Definition};
use shiftcalc::report::{certificate_json, to_json};

fn main() -> shiftcalc::Result<()> {
    let src = "[generators]\nx, 0\ny, 0\nz, 0\n[potential]\nS = (x^2 + y^2 + z^2)^2\n";
    let p = Definition::parse(src)?.potential()?;
    let bv = ce_algebra(&koszul_tate(&p, 2, 5)?)?;
    let alg = bv.algebra().clone();
    let cert = solve_cme(&bv, 2, 5)?;
    for (k, t) in &cert.terms {
        println!("ghost {k}: {}", format_poly(&alg, t));
    }
    println!("verified: {}", verify_cme(&bv, &cert)?.is_ok());

    // dropping the ghost-2 term breaks the master equation
    let cut = cert.truncated(1);
    let verdict = verify_cme(&bv, &cut)?;
    if let Some((cond, residue)) = verdict.failure() {
        println!("truncated: {} fails with residue {}", cond.as_str(), format_poly(&alg, residue));
    }

    let json = to_json(&certificate_json(&bv, &cert));
    println!("certificate: {} bytes of JSON", json.len());
    Ok(())
}
