//! Orbifold Chern character on the inertia stack, from the K-class and
//! from the closed form for type I rank-2 bundles.

use wpsheaf::inertia::{sectors, tch_of_kclass, tch_rank2_closed_form};
use wpsheaf::kgroup::{rank2_typei_class, WppParams};
use wpsheaf::sheaf_model::{ProjPoint, TypeIBundle};

fn main() -> wpsheaf::Result<()> {
    let p = WppParams::new(1, 2, 2)?;
    for s in sectors(&p).sectors() {
        println!("sector f = {} ({}, dim {})", s.f, s.kind.label(), s.kind.dim());
    }
    let datum = TypeIBundle::new([0, 0, -1], [2, 2, 1], ProjPoint::standard_triple());
    let from_class = tch_of_kclass(&rank2_typei_class(&p, &datum)?);
    let closed = tch_rank2_closed_form(&p, &datum)?;
    println!("{from_class}");
    println!("closed form agrees: {}", from_class == closed);
    Ok(())
}
