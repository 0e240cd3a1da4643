// `H^n(G, k*)` for every group of order at most 8.

use cliffcat::cohomology::cohomology_group;
use cliffcat::groups::catalog::small_groups;

pub fn run_example() -> cliffcat::Result<()> {
    println!("{:<28} {:>10} {:>14}", "group", "H^2", "H^3");
    for g in small_groups(8) {
        let h2 = cohomology_group(&g, 2)?;
        let h3 = cohomology_group(&g, 3)?;
        println!(
            "{:<28} {:>10} {:>14}",
            g.label(),
            format!("{:?}", h2.invariant_factors),
            format!("{:?}", h3.invariant_factors)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
