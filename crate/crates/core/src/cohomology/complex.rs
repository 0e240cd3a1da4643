//! The normalized bar complex as matrices over `Z/m`, and everything built on
//! it: coboundary solves, `k*`-triviality, `H^n(G, k*)` and cocycle lists.
//!
//! `H^n(G,k*) ≅ H^{n+1}(G,Z)` is computed twice. The invariant factors come
//! from the Smith form of `δ_n` over `Z/|G|²`, which sees every finite
//! invariant factor exactly because each divides `|G|`. Representatives come
//! from `Z^n(G, Z/|G|)` modulo the cocycles that become coboundaries in `k*`.
//! The two answers must agree.

use std::sync::{Arc, OnceLock};

use super::{slot_indices, tuple_index, Cochain};
use crate::cache::Memo;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::zmod::{invariant_factors, quotient_structure, reduce, vec_mat, Howell, LeftSolver};

/// Default cap on `|G|^(n+1)` for degree-`n` cohomology.
pub const DEFAULT_TUPLE_BOUND: usize = 4096;

type MatrixKey = (FiniteGroup, usize);
type ModKey = (FiniteGroup, usize, u64);
type TrivialKey = (FiniteGroup, usize, u64, u64);

fn matrices() -> &'static Memo<MatrixKey, Vec<Vec<i64>>> {
    static M: OnceLock<Memo<MatrixKey, Vec<Vec<i64>>>> = OnceLock::new();
    M.get_or_init(Memo::new)
}

fn solvers() -> &'static Memo<ModKey, LeftSolver> {
    static M: OnceLock<Memo<ModKey, LeftSolver>> = OnceLock::new();
    M.get_or_init(Memo::new)
}

fn trivials() -> &'static Memo<TrivialKey, Howell> {
    static M: OnceLock<Memo<TrivialKey, Howell>> = OnceLock::new();
    M.get_or_init(Memo::new)
}

fn groups_memo() -> &'static Memo<MatrixKey, CohomologyGroup> {
    static M: OnceLock<Memo<MatrixKey, CohomologyGroup>> = OnceLock::new();
    M.get_or_init(Memo::new)
}

pub(crate) fn slot_count(group: &FiniteGroup, degree: usize) -> usize {
    (group.order() - 1).pow(degree as u32)
}

/// Integer matrix of `δ_n` on slots: row `i` is `δ` of the `i`-th slot indicator.
pub(crate) fn coboundary_matrix(group: &FiniteGroup, n: usize) -> Arc<Vec<Vec<i64>>> {
    matrices().get_or_insert_with(&(group.clone(), n), || {
        let order = group.order();
        let src = slot_indices(group, n);
        let dst = slot_indices(group, n + 1);
        let mut slot_of = vec![usize::MAX; order.pow(n as u32)];
        for (s, &i) in src.iter().enumerate() {
            slot_of[i] = s;
        }
        let mut rows = vec![vec![0i64; dst.len()]; src.len()];
        let mut t = vec![0usize; n + 1];
        let mut face = vec![0usize; n];
        for (col, &idx) in dst.iter().enumerate() {
            let mut rest = idx;
            for k in (0..=n).rev() {
                t[k] = rest % order;
                rest /= order;
            }
            let mut hit = |face: &[usize], sign: i64| {
                let s = slot_of[tuple_index(order, face)];
                if s != usize::MAX {
                    rows[s][col] += sign;
                }
            };
            face.copy_from_slice(&t[1..]);
            hit(&face, 1);
            for i in 1..=n {
                face[..i - 1].copy_from_slice(&t[..i - 1]);
                face[i - 1] = group.mul(t[i - 1], t[i]);
                face[i..].copy_from_slice(&t[i + 1..]);
                hit(&face, if i % 2 == 1 { -1 } else { 1 });
            }
            face.copy_from_slice(&t[..n]);
            hit(&face, if (n + 1) % 2 == 1 { -1 } else { 1 });
        }
        rows
    })
}

fn matrix_mod(rows: &[Vec<i64>], m: u64) -> Vec<Vec<u64>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| reduce(x as i128, m)).collect())
        .collect()
}

/// Solver for `x·D_{n-1} = t` over `Z/m`, where `n` is the target degree.
fn solver(group: &FiniteGroup, n: usize, m: u64) -> Arc<LeftSolver> {
    solvers().get_or_insert_with(&(group.clone(), n, m), || {
        let d = coboundary_matrix(group, n - 1);
        LeftSolver::new(m, slot_count(group, n), &matrix_mod(&d, m))
    })
}

/// Solves `δb = lift·target` at modulus `M·lift`; the answer is the canonical
/// (kernel-reduced) solution, or `None` if there is none at that modulus.
pub fn solve_coboundary(target: &Cochain, lift_factor: u64) -> Result<Option<Cochain>> {
    if target.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    assert!(lift_factor >= 1);
    let n = target.degree();
    let m = target.modulus() * lift_factor;
    let t = target.embed(m).slot_vector();
    let g = target.group_arc().clone();
    let sol = solver(&g, n, m).solve(&t);
    Ok(sol.map(|x| {
        let b = Cochain::from_slot_vector(g, n - 1, m, &x);
        debug_assert_eq!(b.coboundary(), target.embed(m));
        b
    }))
}

/// Whether the `μ_M`-valued cocycle `c` is a coboundary in `k*`.
///
/// A lift factor of `|G|` suffices: if `c = δb` over `Q/Z` then `M·b` is a
/// cocycle, killed in cohomology by `|G|`, so `b` may be taken `|G|·M`-torsion.
pub fn is_trivial_in_kstar(c: &Cochain) -> bool {
    if c.degree() == 0 {
        return c.is_zero();
    }
    solve_coboundary(c, c.group().order() as u64)
        .expect("positive degree")
        .is_some()
}

/// Slot vectors of degree-`n` cochains `c` mod `modulus` with `lift·c ∈ im δ`
/// over `Z/(modulus·lift)`, in Howell form.
///
/// With `lift = |G|` these are exactly the cochains that vanish in `H^n(G,k*)`,
/// so reducing against this module picks a canonical `k*`-cohomology representative.
pub fn trivial_submodule(group: &FiniteGroup, n: usize, modulus: u64, lift: u64) -> Arc<Howell> {
    assert!(n >= 1);
    trivials().get_or_insert_with(&(group.clone(), n, modulus, lift), || {
        let mm = modulus * lift;
        let sn = slot_count(group, n);
        let d = coboundary_matrix(group, n - 1);
        let mut rows: Vec<Vec<u64>> = (0..sn)
            .map(|i| {
                let mut r = vec![0u64; sn];
                r[i] = lift % mm;
                r
            })
            .collect();
        rows.extend(matrix_mod(&d, mm).into_iter().map(|r| {
            r.into_iter().map(|x| (mm - x) % mm).collect::<Vec<_>>()
        }));
        let ls = LeftSolver::new(mm, sn, &rows);
        let proj: Vec<Vec<u64>> = ls
            .kernel()
            .rows()
            .iter()
            .map(|r| r[..sn].iter().map(|&x| x % modulus).collect())
            .collect();
        Howell::new(modulus, sn, proj)
    })
}

/// `H^n(G, k*)` with invariant factors and representative cocycles mod `|G|`.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub group: FiniteGroup,
    pub degree: usize,
    /// Ascending; each divides the next.
    pub invariant_factors: Vec<u64>,
    /// One cocycle per invariant factor, of exactly that order in `k*`.
    pub representatives: Vec<Cochain>,
}

impl CohomologyGroup {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn modulus(&self) -> u64 {
        self.group.order() as u64
    }

    /// One cocycle per class: `Σ k_i·rep_i` over all `0 <= k_i < d_i`, in mixed-radix order.
    pub fn classes(&self) -> Vec<Cochain> {
        let mut out = vec![Cochain::zero(&self.group, self.degree, self.modulus())];
        for (rep, &d) in self.representatives.iter().zip(&self.invariant_factors) {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for k in 0..d {
                let shift = rep.scale(k as i128);
                next.extend(out.iter().map(|c| c.add(&shift)));
            }
            out = next;
        }
        out
    }
}

pub fn cohomology_group(group: &FiniteGroup, n: usize) -> Result<Arc<CohomologyGroup>> {
    cohomology_group_bounded(group, n, DEFAULT_TUPLE_BOUND)
}

pub fn cohomology_group_bounded(
    group: &FiniteGroup,
    n: usize,
    bound: usize,
) -> Result<Arc<CohomologyGroup>> {
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    let size = (group.order() as u128).pow(n as u32 + 1);
    if size > bound as u128 {
        return Err(Error::TooLarge {
            what: "cohomology bar complex",
            size,
            bound: bound as u128,
        });
    }
    groups_memo().try_get_or_insert_with(&(group.clone(), n), || compute_cohomology(group, n))
}

fn compute_cohomology(group: &FiniteGroup, n: usize) -> Result<CohomologyGroup> {
    let m = group.order() as u64;
    let trivial = CohomologyGroup {
        group: group.clone(),
        degree: n,
        invariant_factors: vec![],
        representatives: vec![],
    };
    if m == 1 {
        return Ok(trivial);
    }
    let sn = slot_count(group, n);
    let sn1 = slot_count(group, n + 1);
    let d = coboundary_matrix(group, n);

    let factors = invariant_factors(m * m, sn1, &matrix_mod(&d, m * m));

    let z = LeftSolver::new(m, sn1, &matrix_mod(&d, m));
    let zrows = z.kernel().rows().to_vec();
    let k = zrows.len();
    let t = trivial_submodule(group, n, m, m);
    let mut stacked = zrows.clone();
    stacked.extend(
        t.rows()
            .iter()
            .map(|r| r.iter().map(|&x| (m - x) % m).collect::<Vec<_>>()),
    );
    let rel = LeftSolver::new(m, sn, &stacked);
    let relations: Vec<Vec<u64>> = rel.kernel().rows().iter().map(|r| r[..k].to_vec()).collect();
    let q = quotient_structure(m, k, &relations);

    let mut orders = q.orders.clone();
    orders.sort_unstable();
    if orders != factors {
        return Err(Error::ConsistencyFailure {
            clause: "cohomology: Smith form and cocycle quotient disagree",
            detail: format!("{:?} vs {:?} on {}", factors, q.orders, group.label()),
        });
    }
    let g = Arc::new(group.clone());
    let mut reps: Vec<(u64, Cochain)> = q
        .orders
        .iter()
        .zip(&q.generators)
        .map(|(&o, a)| {
            let slots = vec_mat(a, &zrows, sn, m);
            (o, Cochain::from_slot_vector(g.clone(), n, m, &t.reduce(&slots)))
        })
        .collect();
    reps.sort_by_key(|(o, _)| *o);
    Ok(CohomologyGroup {
        invariant_factors: reps.iter().map(|(o, _)| *o).collect(),
        representatives: reps.into_iter().map(|(_, c)| c).collect(),
        ..trivial
    })
}

/// All normalized `n`-cocycles mod `M`, sorted by value vector.
pub fn enumerate_cocycles(
    group: &FiniteGroup,
    n: usize,
    modulus: u64,
    bound: u128,
) -> Result<Vec<Cochain>> {
    let sn = slot_count(group, n);
    let sn1 = slot_count(group, n + 1);
    let d = coboundary_matrix(group, n);
    let ls = LeftSolver::new(modulus, sn1, &matrix_mod(&d, modulus));
    let kernel = ls.kernel();
    let size = kernel.size().unwrap_or(u128::MAX);
    let elems = kernel.elements(bound).ok_or(Error::TooLarge {
        what: "cocycle enumeration",
        size,
        bound,
    })?;
    let g = Arc::new(group.clone());
    let mut out: Vec<Cochain> = elems
        .iter()
        .map(|s| {
            debug_assert_eq!(s.len(), sn);
            Cochain::from_slot_vector(g.clone(), n, modulus, s)
        })
        .collect();
    out.sort_by(|a, b| a.values().cmp(b.values()));
    Ok(out)
}

/// Number of normalized `n`-cocycles mod `M`.
pub fn cocycle_count(group: &FiniteGroup, n: usize, modulus: u64) -> u128 {
    let d = coboundary_matrix(group, n);
    LeftSolver::new(modulus, slot_count(group, n + 1), &matrix_mod(&d, modulus))
        .kernel()
        .size()
        .unwrap_or(u128::MAX)
}

/// Generators of the normalized `n`-cocycles mod `M` (Howell rows of the kernel).
pub fn cocycle_generators(group: &FiniteGroup, n: usize, modulus: u64) -> Vec<Cochain> {
    let d = coboundary_matrix(group, n);
    let ls = LeftSolver::new(modulus, slot_count(group, n + 1), &matrix_mod(&d, modulus));
    let g = Arc::new(group.clone());
    ls.kernel()
        .rows()
        .iter()
        .map(|s| Cochain::from_slot_vector(g.clone(), n, modulus, s))
        .collect()
}
