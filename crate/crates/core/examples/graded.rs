// Clifford theory for a graded pointed category: the `G`-action on module
// classes of the trivial component, stabilizers, and the pieces of each
// `C`-module category.

use std::sync::Arc;

use cliffcat::clifford::{classify_graded, GradedPointedCategory};
use cliffcat::cohomology::cohomology_group;
use cliffcat::groups::catalog::{dihedral, named_subgroup};
use cliffcat::pointed::PointedCategory;

pub fn run_example() -> cliffcat::Result<()> {
    let d4 = dihedral(4);
    let omega = cohomology_group(&d4, 3)?.representatives[0].clone();
    let c = Arc::new(PointedCategory::new(&d4, omega)?);
    let klein_kernel = named_subgroup(&d4, "0,2,4,6")?;
    let gc = GradedPointedCategory::new(&c, klein_kernel)?;
    let gcl = classify_graded(&gc)?;

    println!("C_e classes and their G-orbits:");
    for orbit in gcl.action.orbits() {
        let ls: Vec<_> = orbit.iter().map(|&i| gcl.action.classes[i].subgroup().elements().to_vec()).collect();
        println!("  {ls:?}");
    }
    println!("C-module categories:");
    for x in &gcl.classes {
        println!(
            "  L = {:?}  S = {:?}  class stabilizer = {:?}  pieces = {:?}",
            x.witness.subgroup().elements(),
            x.stabilizer.elements(),
            x.class_stabilizer.elements(),
            x.pieces
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
