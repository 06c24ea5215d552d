//! μ-stable rank-2 toric bundles and their generating function.

use wpsheaf::hilbert::GeneratingSheafSpec;
use wpsheaf::kgroup::WppParams;
use wpsheaf::rank2::{enumerate_stable_triples, h_full, h_vb_specialized};

fn main() -> wpsheaf::Result<()> {
    let p = WppParams::new(1, 1, 1)?;
    let spec = GeneratingSheafSpec::new(&p, 1)?;
    for t in enumerate_stable_triples(&p, -1, 0, 7) {
        println!("A = {:>2}, Δ = {:?}", t.a, t.delta);
    }
    println!("H^vb = {}", h_vb_specialized(&p, &spec, -1, 0, 9)?);
    println!("H    = {}", h_full(&p, &spec, -1, 0, 9, 2)?);

    let p = WppParams::new(2, 2, 2)?;
    let spec = GeneratingSheafSpec::new(&p, 2)?;
    println!("P(2,2,2), c1 = 0: {}", h_vb_specialized(&p, &spec, 0, 0, 20)?);
    Ok(())
}
