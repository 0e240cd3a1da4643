// Subgroup lattices, quotients, automorphisms and semidirect products of small groups.

use cliffcat::groups::catalog::{cyclic, dihedral, parse, small_groups};
use cliffcat::groups::{automorphism_group, complements, quotient, semidirect_product, subgroups, GroupAction};

pub fn run_example() -> cliffcat::Result<()> {
    for g in small_groups(8) {
        let subs = subgroups(&g)?;
        let normal = subs.iter().filter(|s| s.is_normal_in(&g)).count();
        println!(
            "{:<28} order {}  abelian {:<5}  subgroups {:>2}  normal {:>2}  center {}",
            g.label(),
            g.order(),
            g.is_abelian(),
            subs.len(),
            normal,
            g.center().order()
        );
    }

    let d4 = dihedral(4);
    let rotations = subgroups(&d4)?.into_iter().find(|s| s.order() == 4 && s.elements() == [0, 1, 2, 3]).unwrap();
    let q = quotient(&d4, &rotations)?;
    println!("D4 / rotations has order {}; reflection 4 maps to {}", q.quotient.order(), q.project(4));
    println!("complements of the rotations: {}", complements(&d4, &rotations)?.len());

    let (aut, _) = automorphism_group(&cyclic(3))?;
    let inversion = GroupAction::new(cyclic(2), cyclic(3), vec![vec![0, 1, 2], vec![0, 2, 1]])?;
    let s3 = semidirect_product(&inversion);
    println!("|Aut(Z/3)| = {}; Z/3 ⋊ Z/2 abelian: {}", aut.order(), s3.is_abelian());
    println!("parsed product: {}", parse("product:cyclic:2,quaternion")?.order());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
