//! Chart families of a rank-1 sheaf on P(1,1,2): they glue, and shifting
//! the fine weight on the orbifold chart breaks the gluing.

use wpsheaf::kgroup::WppParams;
use wpsheaf::partitions::Partition;
use wpsheaf::sheaf_model::{check_gluing, rank1_families, rank1_sfamily_with_weight, rank1_window, Rank1Sheaf};

fn main() -> wpsheaf::Result<()> {
    let p = WppParams::new(1, 1, 2)?;
    let sheaf = Rank1Sheaf::new([0, 0, 1], [Partition::parse("2")?, Partition::empty(), Partition::parse("1,1")?]);
    let win = rank1_window(&sheaf);
    let fs = rank1_families(&p, &sheaf, win)?;
    for f in &fs {
        println!("chart {}: modulus {}, boxes {:?}", f.chart(), f.modulus(), f.boxes());
    }
    println!("glues: {}", check_gluing(&fs)?.ok);

    for s in 0..2 {
        let mut m = fs.clone();
        m[2] = rank1_sfamily_with_weight(&p, &sheaf, 3, win, s)?;
        let rep = check_gluing(&m)?;
        println!("fine weight {s} on chart 3: ok = {}, mismatches = {}", rep.ok, rep.mismatches.len());
    }
    Ok(())
}
