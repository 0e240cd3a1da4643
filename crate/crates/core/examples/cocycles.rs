// Cocycle enumeration, coboundary solving and triviality of restrictions in `k*`.

use cliffcat::cohomology::{cocycle_count, enumerate_cocycles, is_trivial_in_kstar, solve_coboundary, Cochain};
use cliffcat::groups::catalog::{cyclic, klein};
use cliffcat::groups::Subgroup;

pub fn run_example() -> cliffcat::Result<()> {
    let v = klein();
    let z2 = enumerate_cocycles(&v, 2, 2, 1 << 12)?;
    let nontrivial = z2.iter().filter(|c| !is_trivial_in_kstar(c)).count();
    println!("Z^2(klein, Z/2): {} cocycles, {} nontrivial in k*", z2.len(), nontrivial);
    println!("|Z^2(klein, Z/4)| = {}", cocycle_count(&v, 2, 4));

    // on Z/2 every mu_2 2-cocycle becomes a coboundary once square roots are allowed
    let z = cyclic(2);
    let c = Cochain::from_fn(&z, 2, 2, |t| (t[0] * t[1]) as i128);
    let b = solve_coboundary(&c, 2)?.expect("H^2(Z/2, k*) = 0");
    println!("c = d(b) with b = {:?} (mod {})", b.values(), b.modulus());

    let z4 = cyclic(4);
    let half = Subgroup::new(&z4, [0, 2])?;
    for q in 1..4 {
        let w = Cochain::cyclic_generator(4, q);
        println!("cyclic_generator(4, {q}) restricted to {{0, 2}} trivial: {}", is_trivial_in_kstar(&w.restrict(&half)));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
