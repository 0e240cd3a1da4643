// Indecomposable module categories `(L, ψ)` over pointed categories `Vec_K^ω`.

use std::sync::Arc;

use cliffcat::cohomology::Cochain;
use cliffcat::groups::catalog::{cyclic, klein, quaternion};
use cliffcat::pointed::{module_classes, PointedCategory};

fn show(c: &Arc<PointedCategory>) -> cliffcat::Result<()> {
    let classes = module_classes(c)?;
    println!("{}: {} classes", c.label(), classes.len());
    for m in &classes {
        let twisted = !m.psi().is_zero();
        println!("  L = {:?}{}", m.subgroup().elements(), if twisted { "  (twisted)" } else { "" });
    }
    Ok(())
}

pub fn run_example() -> cliffcat::Result<()> {
    show(&Arc::new(PointedCategory::untwisted(&klein())))?;
    show(&Arc::new(PointedCategory::new(&cyclic(4), Cochain::cyclic_generator(4, 1))?))?;
    show(&Arc::new(PointedCategory::new(&cyclic(4), Cochain::cyclic_generator(4, 2))?))?;
    show(&Arc::new(PointedCategory::untwisted(&quaternion())))?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
