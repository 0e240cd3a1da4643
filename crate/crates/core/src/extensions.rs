//! Extensions of the regular `C_e`-module category to `C`, in the pointed model.
//!
//! With `U = K` the invertibles of `C`, `U_e = N` those of `C_e`, and
//! `deg: U -> G`, extensions exist only when `deg` splits. A designated
//! complement `T` fixes `U ≅ N ⋊ G` and the action `σ_*` by conjugation.
//! Extensions are then classified by pairs `(θ, γ)`: a 1-cocycle
//! `θ ∈ Z¹(G, N)` with `θ_{στ} = θ_σ·σ_*(θ_τ)`, whose graph
//! `X_θ = {[θ_σ, σ]}` is a subgroup of `U`, and `γ` with `δγ = ω|_{X_θ}`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::cohomology::{
    cohomology_group, enumerate_cocycles, solve_coboundary, Cochain,
};
use crate::error::{Error, Result};
use crate::groups::{
    complements, quotient, semidirect_index, semidirect_product, FiniteGroup, GroupAction,
    QuotientMap, Subgroup,
};
use crate::zmod::lcm;

/// Default cap on the number of candidate 1-cocycle assignments and torsor elements.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 1 << 16;

/// `U_e -> U -> G` with `deg` the grading projection.
#[derive(Clone, Debug)]
pub struct DegSequence {
    pub u: FiniteGroup,
    pub ue: Subgroup,
    pub deg: QuotientMap,
}

impl DegSequence {
    pub fn new(u: &FiniteGroup, ue: &Subgroup) -> Result<Self> {
        let deg = quotient(u, ue)?;
        Ok(DegSequence {
            u: u.clone(),
            ue: ue.clone(),
            deg,
        })
    }

    /// Exactness at `U`: the kernel of `deg` is `U_e`.
    pub fn is_exact(&self) -> bool {
        self.u
            .elements()
            .filter(|&x| self.deg.project(x) == self.deg.quotient.identity())
            .eq(self.ue.elements().iter().copied())
    }

    /// The splitting data for the first complement, or `None` if `deg` does not split.
    pub fn split(&self, omega: &Cochain) -> Result<Option<SplitContext>> {
        let Some(t) = complements(&self.u, &self.ue)?.into_iter().next() else {
            return Ok(None);
        };
        SplitContext::new(self, t, omega).map(Some)
    }
}

/// `U ≅ N ⋊ G` through a chosen complement, with `ω` pulled back to `N ⋊ G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitContext {
    pub complement: Subgroup,
    /// `G` acting on `N` (local indices) by conjugation through the complement.
    pub action: GroupAction,
    /// `N ⋊ G`; `[u, σ]` has index `σ·|N| + u`.
    pub semidirect: FiniteGroup,
    /// `[u, σ] ↦ u·s(σ)` in `K`.
    pub to_u: Vec<usize>,
    /// `ω` on `N ⋊ G`.
    pub omega: Cochain,
    pub kernel: Subgroup,
}

impl SplitContext {
    pub fn new(seq: &DegSequence, complement: Subgroup, omega: &Cochain) -> Result<Self> {
        let k = &seq.u;
        let n = &seq.ue;
        let g = seq.deg.quotient.clone();
        let mut section = vec![usize::MAX; g.order()];
        for &t in complement.elements() {
            section[seq.deg.project(t)] = t;
        }
        if section.contains(&usize::MAX) || complement.order() != g.order() {
            return Err(Error::InvalidSubgroup("not a complement".into()));
        }
        let ng = n.as_group(k);
        let map: Vec<Vec<usize>> = g
            .elements()
            .map(|s| {
                ng.elements()
                    .map(|u| n.local_index(k.conj(section[s], n.elements()[u])).unwrap())
                    .collect()
            })
            .collect();
        let action = GroupAction::new(g.clone(), ng.clone(), map)?;
        let semidirect = semidirect_product(&action);
        let to_u: Vec<usize> = semidirect
            .elements()
            .map(|x| k.mul(n.elements()[x % ng.order()], section[x / ng.order()]))
            .collect();
        debug_assert!(semidirect.elements().all(|a| semidirect
            .elements()
            .all(|b| to_u[semidirect.mul(a, b)] == k.mul(to_u[a], to_u[b]))));
        let omega = omega.pullback(&semidirect, |x| to_u[x]);
        Ok(SplitContext {
            complement,
            action,
            semidirect,
            to_u,
            omega,
            kernel: n.clone(),
        })
    }

    pub fn g(&self) -> &FiniteGroup {
        &self.action.actor
    }

    pub fn n(&self) -> &FiniteGroup {
        &self.action.target
    }

    /// `M′ = lcm(M_ω·|G|, |G|·|U|)`.
    pub fn working_modulus(&self) -> u64 {
        let g = self.g().order() as u64;
        lcm(self.omega.modulus() * g, g * self.semidirect.order() as u64)
    }

    fn hat(&self, theta: &OneCocycle, sigma: usize) -> usize {
        semidirect_index(&self.action, theta.values[sigma], sigma)
    }

    /// `X_θ` as a subgroup of `N ⋊ G`.
    pub fn x_theta(&self, theta: &OneCocycle) -> Result<Subgroup> {
        Subgroup::new(&self.semidirect, self.g().elements().map(|s| self.hat(theta, s)))
    }

    /// `X_θ` carried into `K`.
    pub fn x_theta_in_u(&self, theta: &OneCocycle, k: &FiniteGroup) -> Result<Subgroup> {
        Subgroup::new(k, self.g().elements().map(|s| self.to_u[self.hat(theta, s)]))
    }
}

/// `θ: G -> N` (local indices of `N`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneCocycle {
    pub values: Vec<usize>,
}

impl OneCocycle {
    pub fn is_cocycle(&self, act: &GroupAction) -> bool {
        let (g, n) = (&act.actor, &act.target);
        self.values[g.identity()] == n.identity()
            && g.elements().all(|s| {
                g.elements().all(|t| {
                    self.values[g.mul(s, t)] == n.mul(self.values[s], act.apply(s, self.values[t]))
                })
            })
    }

    pub fn to_json(&self) -> Value {
        let m: Map<String, Value> = self
            .values
            .iter()
            .enumerate()
            .map(|(s, &u)| (s.to_string(), json!(u)))
            .collect();
        Value::Object(m)
    }
}

/// All 1-cocycles, sorted; each is determined by its values on a generating set.
pub fn z1_cocycles(act: &GroupAction) -> Result<Vec<OneCocycle>> {
    z1_cocycles_bounded(act, DEFAULT_ENUMERATION_BOUND)
}

pub fn z1_cocycles_bounded(act: &GroupAction, bound: u128) -> Result<Vec<OneCocycle>> {
    let (g, n) = (&act.actor, &act.target);
    let gens = g.generators();
    let size = (n.order() as u128).saturating_pow(gens.len() as u32);
    if size > bound {
        return Err(Error::TooLarge {
            what: "1-cocycle search",
            size,
            bound,
        });
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        // θ(σg) = θ(σ)·σ_*(θ(g))
        let mut theta = vec![usize::MAX; g.order()];
        theta[g.identity()] = n.identity();
        let mut queue = VecDeque::from([g.identity()]);
        let mut ok = true;
        'bfs: while let Some(s) = queue.pop_front() {
            for (&x, &c) in gens.iter().zip(&choice) {
                let sx = g.mul(s, x);
                let v = n.mul(theta[s], act.apply(s, c));
                if theta[sx] == usize::MAX {
                    theta[sx] = v;
                    queue.push_back(sx);
                } else if theta[sx] != v {
                    ok = false;
                    break 'bfs;
                }
            }
        }
        if ok {
            let c = OneCocycle { values: theta };
            if c.is_cocycle(act) {
                out.push(c);
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < n.order() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// `(u·θ)_σ = u θ_σ σ_*(u⁻¹)`.
pub fn act_on_cocycle(act: &GroupAction, u: usize, theta: &OneCocycle) -> OneCocycle {
    let n = &act.target;
    OneCocycle {
        values: act
            .actor
            .elements()
            .map(|s| n.mul(n.mul(u, theta.values[s]), act.apply(s, n.inv(u))))
            .collect(),
    }
}

/// Orbits of `N` on the given cocycles, as sorted index lists ordered by least member.
pub fn h1_orbits(act: &GroupAction, cocycles: &[OneCocycle]) -> Vec<Vec<usize>> {
    let pos: BTreeMap<&OneCocycle, usize> = cocycles.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut seen = vec![false; cocycles.len()];
    let mut out = Vec::new();
    for i in 0..cocycles.len() {
        if seen[i] {
            continue;
        }
        let orbit: BTreeSet<usize> = act
            .target
            .elements()
            .filter_map(|u| pos.get(&act_on_cocycle(act, u, &cocycles[i])).copied())
            .collect();
        for &j in &orbit {
            seen[j] = true;
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

/// `ω_θ(σ,τ,ρ) = ω([θσ,σ],[θτ,τ],[θρ,ρ])` on `G`, at `ω`'s modulus.
pub fn theta_pullback(ctx: &SplitContext, theta: &OneCocycle) -> Result<Cochain> {
    let w = ctx.omega.pullback(ctx.g(), |s| ctx.hat(theta, s));
    if !w.is_cocycle() {
        return Err(Error::NotCocycle(format!("pullback along {:?}", theta.values)));
    }
    Ok(w)
}

/// Least `γ` at the working modulus with `δγ = ω_θ`, or `None` if `θ` is obstructed.
pub fn theta_obstruction(ctx: &SplitContext, theta: &OneCocycle) -> Result<Option<Cochain>> {
    let w = theta_pullback(ctx, theta)?;
    solve_coboundary(&w, ctx.working_modulus() / w.modulus())
}

/// `L_ω^θ` at the working modulus: the particular solution plus all of `Z²(G, Z/M′)`.
pub fn l_omega_theta(ctx: &SplitContext, theta: &OneCocycle, bound: u128) -> Result<Vec<Cochain>> {
    let gamma0 = theta_obstruction(ctx, theta)?.ok_or(Error::Obstructed)?;
    let z2 = enumerate_cocycles(ctx.g(), 2, ctx.working_modulus(), bound)?;
    let mut out: Vec<Cochain> = z2.iter().map(|z| gamma0.add(z)).collect();
    out.sort_by(|a, b| a.values().cmp(b.values()));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDatum {
    pub context: Arc<SplitContext>,
    pub theta: OneCocycle,
    /// 2-cochain on `G` at the working modulus with `δγ = ω_θ`.
    pub gamma: Cochain,
}

impl ExtensionDatum {
    pub fn new(context: &Arc<SplitContext>, theta: OneCocycle, gamma: Cochain) -> Result<Self> {
        if !theta.is_cocycle(&context.action) {
            return Err(Error::InvariantBroken("theta is not a 1-cocycle".into()));
        }
        let w = theta_pullback(context, &theta)?;
        if !gamma.coboundary().same_kstar_values(&w) {
            return Err(Error::InvariantBroken("d(gamma) != omega on X_theta".into()));
        }
        Ok(ExtensionDatum {
            context: context.clone(),
            theta,
            gamma,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({ "theta": self.theta.to_json(), "gamma": self.gamma.to_json() })
    }
}

/// Orientation of the associator correction in the equivalence of extension data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `γ^ν = γ^θ + δκ + ω(θ̂σ, θ̂τ, u) + ω(θ̂σ, u, ν̂τ)`.
    TwoTerm,
    /// The two correction terms with opposite sign.
    TwoTermInverted,
    /// `γ^θ = γ^ν + δκ + ω(θ̂σ, θ̂τ, u) − ω(θ̂σ, u, ν̂τ) + ω(u, ν̂σ, ν̂τ)`, the conjugation of
    /// `(X_ν, γ^ν)` by `u`.
    Conjugation,
}

impl Orientation {
    pub const ALL: [Orientation; 3] = [Orientation::TwoTerm, Orientation::TwoTermInverted, Orientation::Conjugation];

    pub fn name(self) -> &'static str {
        match self {
            Orientation::TwoTerm => "two-term",
            Orientation::TwoTermInverted => "two-term-inverted",
            Orientation::Conjugation => "conjugation",
        }
    }
}

/// Whether some `u ∈ N` with `θ₁ = u·θ₂` and some `κ` relate the two data.
pub fn extensions_equivalent(d1: &ExtensionDatum, d2: &ExtensionDatum, orientation: Orientation) -> Result<bool> {
    if d1.context != d2.context {
        return Err(Error::ContextMismatch);
    }
    let ctx = &d1.context;
    let (theta, nu) = (&d1.theta, &d2.theta);
    let m = d1.gamma.modulus();
    let scale = (m / ctx.omega.modulus()) as i128;
    let w = |a: usize, b: usize, c: usize| ctx.omega.get(&[a, b, c]) as i128 * scale;
    let g = ctx.g();
    let lift = g.order() as u64;
    for u in ctx.n().elements() {
        if act_on_cocycle(&ctx.action, u, nu) != *theta {
            continue;
        }
        let uh = semidirect_index(&ctx.action, u, g.identity());
        let corr = Cochain::from_fn(g, 2, m, |t| {
            let (s, r) = (t[0], t[1]);
            let (ts, tr) = (ctx.hat(theta, s), ctx.hat(theta, r));
            let (ns, nr) = (ctx.hat(nu, s), ctx.hat(nu, r));
            match orientation {
                Orientation::TwoTerm => w(ts, tr, uh) + w(ts, uh, nr),
                Orientation::TwoTermInverted => -(w(ts, tr, uh) + w(ts, uh, nr)),
                Orientation::Conjugation => w(ts, tr, uh) - w(ts, uh, nr) + w(uh, ns, nr),
            }
        });
        let diff = match orientation {
            Orientation::Conjugation => d1.gamma.sub(&d2.gamma).sub(&corr),
            _ => d2.gamma.sub(&d1.gamma).sub(&corr),
        };
        if diff.is_cocycle() && solve_coboundary(&diff, lift)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All candidate data: every unobstructed `θ` with `γ₀ + H²(G, k*)` representatives.
pub fn extension_candidates(ctx: &Arc<SplitContext>) -> Result<Vec<ExtensionDatum>> {
    let m = ctx.working_modulus();
    let h2 = cohomology_group(ctx.g(), 2)?;
    let shifts: Vec<Cochain> = h2.classes().iter().map(|c| c.embed(m)).collect();
    let mut out = Vec::new();
    for theta in z1_cocycles(&ctx.action)? {
        let Some(gamma0) = theta_obstruction(ctx, &theta)? else {
            continue;
        };
        for s in &shifts {
            out.push(ExtensionDatum::new(ctx, theta.clone(), gamma0.add(s))?);
        }
    }
    Ok(out)
}

/// Union-find partition of `items` under a pairwise relation, as sorted index classes.
pub fn partition_by<T>(items: &[T], mut related: impl FnMut(&T, &T) -> Result<bool>) -> Result<Vec<Vec<usize>>> {
    let n = items.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if find(&mut parent, i) != find(&mut parent, j) && related(&items[i], &items[j])? {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    Ok(groups.into_values().collect())
}

/// Equivalence classes of extensions of the regular `C_e`-module category,
/// one representative (the first candidate) per class. Empty when `deg` does not split.
pub fn extension_classes(
    seq: &DegSequence,
    omega: &Cochain,
    orientation: Orientation,
) -> Result<Vec<ExtensionDatum>> {
    let Some(ctx) = seq.split(omega)? else {
        return Ok(vec![]);
    };
    let ctx = Arc::new(ctx);
    let cands = extension_candidates(&ctx)?;
    let parts = partition_by(&cands, |a, b| extensions_equivalent(a, b, orientation))?;
    Ok(parts.into_iter().map(|p| cands[p[0]].clone()).collect())
}

/// Reflexivity, symmetry and transitivity of the relation on `items`, exhaustively.
pub fn check_equivalence_laws<T>(items: &[T], mut related: impl FnMut(&T, &T) -> Result<bool>) -> Result<bool> {
    let n = items.len();
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            rel[i][j] = related(&items[i], &items[j])?;
        }
    }
    let refl = (0..n).all(|i| rel[i][i]);
    let sym = (0..n).all(|i| (0..n).all(|j| rel[i][j] == rel[j][i]));
    let trans = (0..n).all(|i| (0..n).all(|j| !rel[i][j] || (0..n).all(|k| !rel[j][k] || rel[i][k])));
    Ok(refl && sym && trans)
}

/// Outcome of the torsor check for one `θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsorReport {
    pub exhaustive: bool,
    pub size: u128,
    pub holds: bool,
}

/// `Z²(G, Z/M′)` acts freely and transitively on `L_ω^θ`.
///
/// Exhaustive when `|Z²|` is within `bound`: every listed element solves
/// `δγ = ω_θ`, the listing has no repeats, and every difference of two
/// solutions is a cocycle. Otherwise the generators of `Z²` and
/// `samples` seeded combinations of them are checked to preserve the
/// solution set, which is then an affine coset of `Z²`.
pub fn verify_torsor(
    ctx: &SplitContext,
    theta: &OneCocycle,
    bound: u128,
    samples: usize,
    seed: u64,
) -> Result<TorsorReport> {
    let m = ctx.working_modulus();
    let w = theta_pullback(ctx, theta)?.embed(m);
    let gamma0 = theta_obstruction(ctx, theta)?.ok_or(Error::Obstructed)?;
    let size = crate::cohomology::cocycle_count(ctx.g(), 2, m);
    if size <= bound {
        let l = l_omega_theta(ctx, theta, bound)?;
        let distinct: BTreeSet<&[u64]> = l.iter().map(|c| c.values()).collect();
        let solves = l.iter().all(|c| c.coboundary() == w);
        let diffs = l.iter().all(|c| c.sub(&gamma0).is_cocycle());
        return Ok(TorsorReport {
            exhaustive: true,
            size,
            holds: solves && distinct.len() as u128 == size && l.len() as u128 == size && diffs,
        });
    }
    let gens = crate::cohomology::cocycle_generators(ctx.g(), 2, m);
    let mut holds = gens.iter().all(|z| gamma0.add(z).coboundary() == w);
    let mut state = seed ^ 0x9e37_79b9_7f4a_7c15;
    for _ in 0..samples {
        let mut z = Cochain::zero(ctx.g(), 2, m);
        for g in &gens {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            z = z.add(&g.scale(((state >> 33) % m) as i128));
        }
        holds &= gamma0.add(&z).coboundary() == w && z.is_cocycle();
    }
    Ok(TorsorReport {
        exhaustive: false,
        size,
        holds,
    })
}
