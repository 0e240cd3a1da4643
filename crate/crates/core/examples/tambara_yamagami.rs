// Tambara–Yamagami categories: Lagrangian search, the duality action on
// `Vec_A`-module classes, and module categories in the non-group-theoretical case.

use cliffcat::groups::catalog::small_groups;
use cliffcat::ty::{bicharacters, classify_ty_modules, is_group_theoretical, ising};

pub fn run_example() -> cliffcat::Result<()> {
    let orbits = classify_ty_modules(&ising())?;
    println!("Ising: {} module category", orbits.len());
    for a in small_groups(8).into_iter().filter(|g| g.is_abelian()) {
        let forms = bicharacters(&a)?;
        let mut gt = 0;
        let mut modules = Vec::new();
        for t in &forms {
            if is_group_theoretical(t)?.is_some() {
                gt += 1;
            } else {
                modules.push(classify_ty_modules(t)?.len());
            }
        }
        println!(
            "{:<28} {:>2} bicharacters, {:>2} group-theoretical, module counts otherwise {:?}",
            a.label(),
            forms.len(),
            gt,
            modules
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
