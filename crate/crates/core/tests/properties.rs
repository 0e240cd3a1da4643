use std::sync::Arc;

use proptest::prelude::*;

use cliffcat::cli::run;
use cliffcat::cohomology::{cohomology_group, enumerate_cocycles, is_trivial_in_kstar, solve_coboundary, Cochain};
use cliffcat::extensions::{act_on_cocycle, h1_orbits, z1_cocycles, DegSequence};
use cliffcat::groups::catalog::small_groups;
use cliffcat::groups::{quotient, subgroups, FiniteGroup, Subgroup};
use cliffcat::pointed::{module_classes, modules_equivalent, transport, PointedCategory};
use cliffcat::ty::bicharacters;
use cliffcat::zmod::{invariant_factors, quotient_structure, vec_mat, Howell, LeftSolver};

fn group(i: usize) -> FiniteGroup {
    let all = small_groups(8);
    all[i % all.len()].clone()
}

fn small_group(i: usize) -> FiniteGroup {
    let all = small_groups(4);
    all[i % all.len()].clone()
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(prop::collection::vec(0u64..1000, cols), rows)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn group_axioms_and_lagrange(i in 0usize..14, gens in prop::collection::vec(0usize..8, 0..3)) {
        let g = group(i);
        for a in g.elements() {
            prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
            for b in g.elements() {
                for c in g.elements() {
                    prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
        let gens: Vec<usize> = gens.into_iter().map(|x| x % g.order()).collect();
        let h = Subgroup::generated(&g, &gens);
        prop_assert_eq!(g.order() % h.order(), 0);
        prop_assert!(gens.iter().all(|&x| h.contains(x)));
    }

    #[test]
    fn quotient_projection_is_a_homomorphism(i in 0usize..14, j in 0usize..16) {
        let g = group(i);
        let normal: Vec<Subgroup> = subgroups(&g).unwrap().into_iter().filter(|n| n.is_normal_in(&g)).collect();
        let n = &normal[j % normal.len()];
        let q = quotient(&g, n).unwrap();
        prop_assert_eq!(q.quotient.order() * n.order(), g.order());
        for a in g.elements() {
            for b in g.elements() {
                prop_assert_eq!(q.project(g.mul(a, b)), q.quotient.mul(q.project(a), q.project(b)));
            }
        }
    }

    #[test]
    fn howell_form_is_canonical(m in 2u64..40, rows in matrix(4, 3), coeffs in prop::collection::vec(0u64..40, 4)) {
        let h = Howell::new(m, 3, rows.clone());
        let again = Howell::new(m, 3, h.rows().to_vec());
        prop_assert_eq!(h.rows(), again.rows());
        let combo = vec_mat(&coeffs, &rows, 3, m);
        prop_assert!(h.contains(&combo));
        prop_assert!(h.reduce(&combo).iter().all(|&x| x == 0));
    }

    #[test]
    fn left_solver_recovers_combinations(m in 2u64..40, rows in matrix(3, 4), x in prop::collection::vec(0u64..40, 3)) {
        let ls = LeftSolver::new(m, 4, &rows);
        let t = vec_mat(&x, &rows, 4, m);
        let y = ls.solve(&t).expect("t is in the image");
        prop_assert_eq!(vec_mat(&y, &rows, 4, m), t);
    }

    #[test]
    fn quotient_structure_counts_the_cokernel(m in 2u64..24, rows in matrix(3, 3)) {
        let img = Howell::new(m, 3, rows.clone());
        let q = quotient_structure(m, 3, &rows);
        let order: u128 = q.orders.iter().map(|&d| d as u128).product();
        prop_assert_eq!(order * img.size().unwrap(), (m as u128).pow(3));
        let inv = invariant_factors(m, 3, &rows);
        prop_assert!(inv.iter().all(|&d| d < m));
    }

    #[test]
    fn coboundary_squares_to_zero(i in 0usize..14, deg in 1usize..3, m in 2u64..9, seed in 0u64..1000) {
        let g = group(i);
        let c = Cochain::from_fn(&g, deg, m, |t| {
            t.iter().fold(seed as i128, |acc, &x| acc.wrapping_mul(31).wrapping_add(x as i128 * 17)) % 1_000
        });
        prop_assert!(c.coboundary().is_cocycle());
        prop_assert!(c.coboundary().coboundary().is_zero());
    }

    #[test]
    fn solve_coboundary_inverts_delta(i in 0usize..14, deg in 1usize..3, m in 2u64..7, seed in 0u64..1000) {
        let g = group(i);
        let b = Cochain::from_fn(&g, deg, m, |t| {
            t.iter().fold(seed as i128, |acc, &x| (acc * 7 + x as i128 * 13) % 1_009)
        });
        let target = b.coboundary();
        let s = solve_coboundary(&target, 1).unwrap().expect("coboundary is solvable");
        prop_assert_eq!(s.coboundary(), target);
    }

    #[test]
    fn triviality_is_stable_under_larger_lift(i in 0usize..8, k in 0usize..64) {
        let g = small_group(i);
        let m = g.order() as u64;
        let z = enumerate_cocycles(&g, 2, m, 1 << 16).unwrap();
        let c = &z[k % z.len()];
        let o = g.order() as u64;
        let a = solve_coboundary(c, o).unwrap().is_some();
        let b = solve_coboundary(c, o * o).unwrap().is_some();
        prop_assert_eq!(a, b);
        prop_assert_eq!(a, is_trivial_in_kstar(c));
    }

    #[test]
    fn representatives_have_their_orders(i in 0usize..14, deg in 2usize..4) {
        let g = group(i);
        let h = cohomology_group(&g, deg).unwrap();
        for (c, &d) in h.representatives.iter().zip(&h.invariant_factors) {
            prop_assert!(c.is_cocycle());
            prop_assert!(is_trivial_in_kstar(&c.scale(d as i128)));
            for p in (2..=d).filter(|p| d % p == 0) {
                prop_assert!(!is_trivial_in_kstar(&c.scale((d / p) as i128)));
            }
        }
    }

    #[test]
    fn transport_composes_up_to_equivalence(i in 0usize..14, twisted in any::<bool>(), x in 0usize..8, y in 0usize..8, k in 0usize..32) {
        let g = group(i);
        let w = if twisted {
            cohomology_group(&g, 3).unwrap().representatives.first().cloned().unwrap_or_else(|| Cochain::zero(&g, 3, 1))
        } else {
            Cochain::zero(&g, 3, 1)
        };
        let c = Arc::new(PointedCategory::new(&g, w).unwrap());
        let classes = module_classes(&c).unwrap();
        let m = &classes[k % classes.len()];
        let (x, y) = (x % g.order(), y % g.order());
        let two = transport(x, &transport(y, m).unwrap()).unwrap();
        let one = transport(g.mul(x, y), m).unwrap();
        prop_assert!(modules_equivalent(&two, &one).unwrap());
        prop_assert!(modules_equivalent(&one, m).unwrap());
    }

    #[test]
    fn cocycles_give_subgroups_and_orbits_partition(i in 0usize..14, j in 0usize..16) {
        let g = group(i);
        let normal: Vec<Subgroup> = subgroups(&g).unwrap().into_iter().filter(|n| n.is_normal_in(&g)).collect();
        let n = &normal[j % normal.len()];
        let seq = DegSequence::new(&g, n).unwrap();
        if let Some(ctx) = seq.split(&Cochain::zero(&g, 3, 1)).unwrap() {
            let z1 = z1_cocycles(&ctx.action).unwrap();
            for t in &z1 {
                prop_assert!(ctx.x_theta(t).is_ok());
                for u in ctx.n().elements() {
                    prop_assert!(act_on_cocycle(&ctx.action, u, t).is_cocycle(&ctx.action));
                }
            }
            let orbits = h1_orbits(&ctx.action, &z1);
            prop_assert_eq!(orbits.iter().map(|o| o.len()).sum::<usize>(), z1.len());
        }
    }

    #[test]
    fn perp_is_an_involution(i in 0usize..14, k in 0usize..32) {
        let a = group(i);
        prop_assume!(a.is_abelian());
        let forms = bicharacters(&a).unwrap();
        prop_assume!(!forms.is_empty());
        let t = &forms[k % forms.len()];
        for b in subgroups(&a).unwrap() {
            let p = t.perp(&b);
            prop_assert_eq!(b.order() * p.order(), a.order());
            prop_assert_eq!(t.perp(&p), b);
        }
    }

    #[test]
    fn cli_reports_are_deterministic(i in 0usize..14, deg in 1usize..4) {
        let g = group(i).label().to_string();
        let d = deg.to_string();
        let a = run(["cliffcat", "cohomology", g.as_str(), d.as_str()]);
        prop_assert_eq!(a.code, 0);
        prop_assert_eq!(&a, &run(["cliffcat", "cohomology", g.as_str(), d.as_str()]));
    }
}
