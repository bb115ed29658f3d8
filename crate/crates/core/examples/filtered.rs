//! Filtered modules and derived foliations: gr of filtered Hom, and the
//! relative cotangent and centre formulas on rank-one maps.
//!
//! ```bash
//! cargo run --example filtered
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shiftcalc::filtered::samples::rank_one_maps;
use shiftcalc::filtered::{centfol_table, check_gr_hom, random_module, relative_cot_graded, Caps};

fn main() -> shiftcalc::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let x = random_module(&mut rng, 3, 6);
    let y = random_module(&mut rng, 3, 6);
    println!("gr X = {:?}", x.gr());
    println!("gr Y = {:?}", y.gr());
    let r = check_gr_hom(&x, &y);
    println!("gr Hom(X, Y) = Hom(gr X, gr Y): {}", r.is_ok());

    let caps = Caps { weight: 2, degrees: (-2, 3), polydegree: 3 };
    for s in rank_one_maps(caps)? {
        let rc = relative_cot_graded(&s.map(), caps)?;
        let cf = centfol_table(&s.map(), -1, caps)?;
        println!(
            "{:<20} relative cotangent: {}  centre (n = -1): {}  tangent degrees {:?}",
            s.name,
            rc.is_ok(),
            cf.is_ok(),
            cf.tangent_degrees
        );
    }
    Ok(())
}
