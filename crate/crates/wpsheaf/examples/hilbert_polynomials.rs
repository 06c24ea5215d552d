//! Hilbert polynomials of O(r) and O(r) ⊗ E against monomial counting.

use wpsheaf::hilbert::{hilb_fit_oracle, hilb_top, hilb_top_e, rank2_constant_term, GeneratingSheafSpec};
use wpsheaf::kgroup::WppParams;

fn main() -> wpsheaf::Result<()> {
    let p = WppParams::new(1, 3, 3)?;
    for r in -4..=4 {
        let top = hilb_top(&p, r)?;
        let fit = hilb_fit_oracle(&p, r)?;
        let (q, l) = top.to_strings();
        println!("r = {r:>2}: {q} t^2 + {l} t   (oracle constant {}, agree {})", fit.constant, top == fit.top());
    }
    let spec = GeneratingSheafSpec::new(&p, 6)?;
    let (q, l) = hilb_top_e(&p, &spec, 2).to_strings();
    println!("O(2) ⊗ E, E = 6: {q} t^2 + {l} t");

    let p = WppParams::new(1, 1, 2)?;
    let spec = GeneratingSheafSpec::new(&p, 2)?;
    println!("P_E(F, 0) for c1 = -2, Δ = (2,2,2): {}", rank2_constant_term(&p, &spec, -2, 0, [2, 2, 2])?);
    Ok(())
}
