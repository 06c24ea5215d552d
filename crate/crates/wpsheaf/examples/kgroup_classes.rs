//! Classes in K(P(a,b,c)) = Q[g]/(relations), g = [O(−1)].

use wpsheaf::kgroup::{line_bundle_class, rank1_class, rank2_typei_class, structure_sheaf_point, verify_relations, WppParams};
use wpsheaf::partitions::Partition;
use wpsheaf::sheaf_model::{ProjPoint, TypeIBundle};

fn main() -> wpsheaf::Result<()> {
    let p = WppParams::new(1, 1, 2)?;
    println!("{p:?}, relations hold: {}", verify_relations(&p));
    println!("L(0,0,1)          = {}", line_bundle_class(&p, 0, 0, 1));
    println!("[O_P3]            = {}", structure_sheaf_point(&p, 3, 0));

    let lam = [Partition::parse("2,1")?, Partition::empty(), Partition::parse("1")?];
    println!("I_Z ⊗ L(0,0,1)    = {}", rank1_class(&p, 0, 0, 1, &lam));

    let datum = TypeIBundle::new([0, 0, -2], [1, 2, 1], ProjPoint::standard_triple());
    println!("type I, Δ=(1,2,1) = {}", rank2_typei_class(&p, &datum)?);
    Ok(())
}
