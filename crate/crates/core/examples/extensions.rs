// Non-abelian 1-cocycles, their `H^1` orbits, and extensions `(θ, γ)` of the
// regular module category of the trivial component.

use cliffcat::cohomology::Cochain;
use cliffcat::extensions::{extension_classes, h1_orbits, z1_cocycles, DegSequence, Orientation};
use cliffcat::groups::catalog::{cyclic, dihedral, klein, named_subgroup};
use cliffcat::groups::GroupAction;

pub fn run_example() -> cliffcat::Result<()> {
    let inversion = GroupAction::new(cyclic(2), cyclic(3), vec![vec![0, 1, 2], vec![0, 2, 1]])?;
    let z1 = z1_cocycles(&inversion)?;
    println!("Z^1(Z/2, Z/3 by inversion): {} cocycles in {} orbit(s)", z1.len(), h1_orbits(&inversion, &z1).len());

    for (k, kernel) in [(klein(), "first"), (klein(), "trivial"), (cyclic(4), "order:2"), (dihedral(4), "rotations")] {
        let n = named_subgroup(&k, kernel)?;
        let seq = DegSequence::new(&k, &n)?;
        let classes = extension_classes(&seq, &Cochain::zero(&k, 3, 1), Orientation::Conjugation)?;
        println!("{} over {:?}: {} extension classes", k.label(), n.elements(), classes.len());
        for d in &classes {
            println!("  theta = {:?}", d.theta.values);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
