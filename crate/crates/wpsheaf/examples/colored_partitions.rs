//! Rank-1 generating functions from colored partitions.

use wpsheaf::kgroup::WppParams;
use wpsheaf::partitions::{balanced_brute, balanced_rhs, eta_inv_pow, g_series_color0, p113_report, theta3};

fn main() -> wpsheaf::Result<()> {
    let p = WppParams::new(1, 1, 2)?;
    let g = g_series_color0(&p, 0, 8)?;
    println!("P(1,1,2), color 0: {g}");
    println!("θ3/η^4 agrees: {}", g == eta_inv_pow(4, 8).mul(&theta3(8)));

    println!("balanced k = 3 identity to order 6: {}", balanced_rhs(3, 6)? == balanced_brute(3, 6));

    for line in p113_report(4)? {
        println!("{:<14} printed {:?} computed {:?}  {}", line.monomial, line.printed, line.computed.map(|c| c.to_string()), line.note);
    }
    Ok(())
}
