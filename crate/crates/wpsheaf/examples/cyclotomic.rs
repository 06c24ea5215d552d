//! Exact arithmetic in Q(ζ_n): the TRR denominators 1/(1 − ζ^k) and a
//! Galois sum that collapses to a rational.

use wpsheaf::exact_arith::{int, zeta_pow, Cyclotomic};

fn main() {
    let n = 5;
    let one = Cyclotomic::one(n);
    let z = zeta_pow(n, 1);
    let inv = one.sub(&z).inv().expect("1 - ζ is a unit");
    println!("1/(1 - ζ_5) = {inv}");
    println!("check: {}", inv.mul(&one.sub(&z)));

    let mut total = Cyclotomic::zero(n);
    for k in 1..n as i64 {
        total = total.add(&zeta_pow(n, k).div(&one.sub(&zeta_pow(n, 2 * k))).unwrap());
    }
    println!("Σ ζ^k/(1 - ζ^2k) = {} (rational: {:?})", total, total.as_rational().map(|q| q.to_string()));
    println!("ζ_12^3 scaled by 2: {}", zeta_pow(12, 3).scale(&int(2)));
}
