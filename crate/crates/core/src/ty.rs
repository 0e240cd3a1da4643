//! Tambara–Yamagami categories `TY(A, χ, τ)`: the `Z/2`-graded fusion categories
//! with `C_0 = Vec_A` and a single non-invertible simple in `C_1`.
//!
//! Module categories over `Vec_A` are classes `(B, α)`, determined by the
//! Lagrangian `{(b, φ) : b ∈ B, φ|_B = alt_α(b, ·)}` of `A ⊕ Â`. The odd
//! component acts by the swap `(a, φ) ↦ (χ⁻¹φ, χ(a))`, so
//! `σ·(B, α) = (B', α')` with `B' = {c : χ(c, ·)|_B = alt_α(b_c, ·) for some b_c ∈ B}`
//! and `alt_α'(c, c') = χ(b_c, c')`. For `α` trivial `B'` is `B^⊥`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::clifford::{action_table, ComponentAction};
use crate::cohomology::{group_ref_json, Cochain};
use crate::error::{Error, Result};
use crate::groups::catalog::{self, cyclic};
use crate::groups::{subgroups, FiniteGroup, Subgroup};
use crate::pointed::{module_classes, modules_equivalent, ModuleData, PointedCategory};
use crate::zmod::{gcd, lcm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TYCategory {
    a: FiniteGroup,
    /// `χ(a, b)` at index `a·|A| + b`, exponents mod `modulus`.
    chi: Vec<u64>,
    modulus: u64,
    tau: i8,
}

/// Least common multiple of the element orders.
pub fn exponent(g: &FiniteGroup) -> u64 {
    g.elements().fold(1, |e, x| lcm(e, g.element_order(x) as u64))
}

impl TYCategory {
    /// Checks that `A` is abelian and `χ` is a symmetric nondegenerate bicharacter.
    pub fn new(a: &FiniteGroup, modulus: u64, chi: impl Fn(usize, usize) -> u64, tau: i8) -> Result<Self> {
        if !a.is_abelian() {
            return Err(Error::InvalidTy("A must be abelian".into()));
        }
        if modulus == 0 {
            return Err(Error::InvalidTy("modulus must be positive".into()));
        }
        if tau != 1 && tau != -1 {
            return Err(Error::InvalidTy("tau must be +1 or -1".into()));
        }
        let n = a.order();
        let chi: Vec<u64> = (0..n * n).map(|i| chi(i / n, i % n) % modulus).collect();
        let at = |x: usize, y: usize| chi[x * n + y];
        for x in a.elements() {
            for y in a.elements() {
                if at(x, y) != at(y, x) {
                    return Err(Error::InvalidTy(format!("chi is not symmetric at ({x},{y})")));
                }
                for z in a.elements() {
                    if at(a.mul(x, y), z) != (at(x, z) + at(y, z)) % modulus {
                        return Err(Error::InvalidTy(format!("chi is not a bicharacter at ({x},{y},{z})")));
                    }
                }
            }
        }
        if let Some(x) = a.elements().find(|&x| x != a.identity() && a.elements().all(|y| at(x, y) == 0)) {
            return Err(Error::InvalidTy(format!("chi is degenerate: {x} pairs trivially")));
        }
        Ok(TYCategory {
            a: a.clone(),
            chi,
            modulus,
            tau,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.a
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn tau(&self) -> i8 {
        self.tau
    }

    pub fn chi(&self, x: usize, y: usize) -> u64 {
        self.chi[x * self.a.order() + y]
    }

    /// `χ(x, y)` as an exponent mod `|A|`.
    fn chi_a(&self, x: usize, y: usize) -> u64 {
        let n = self.a.order() as u64;
        let l = lcm(n, self.modulus);
        let v = self.chi(x, y) * (l / self.modulus);
        debug_assert_eq!(v % (l / n), 0, "bicharacter values have order dividing exp(A)");
        v / (l / n)
    }

    /// `B^⊥ = {a : χ(a, b) = 0 for all b ∈ B}`.
    pub fn perp(&self, b: &Subgroup) -> Subgroup {
        Subgroup::new(
            &self.a,
            self.a.elements().filter(|&x| b.elements().iter().all(|&y| self.chi(x, y) == 0)),
        )
        .expect("orthogonal complement is a subgroup")
    }

    pub fn is_isotropic(&self, b: &Subgroup) -> bool {
        b.elements().iter().all(|&x| b.elements().iter().all(|&y| self.chi(x, y) == 0))
    }

    /// The module categories over `C_0 = Vec_A`.
    pub fn component(&self) -> Arc<PointedCategory> {
        Arc::new(PointedCategory::untwisted(&self.a))
    }

    /// Accepts `{ "A": <group>, "chi": { "a,b": v } | [[..]], "modulus": M, "tau": ±1 }`;
    /// `modulus` defaults to the exponent of `A`, `tau` to `+1`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let a = catalog::from_json(v.get("A").ok_or_else(|| Error::Input("missing field A".into()))?)?;
        let modulus = match v.get("modulus") {
            None | Some(Value::Null) => exponent(&a),
            Some(m) => m.as_u64().ok_or_else(|| Error::Input("modulus must be a positive integer".into()))?,
        };
        let tau = match v.get("tau") {
            None | Some(Value::Null) => 1,
            Some(t) => match t.as_i64() {
                Some(1) => 1,
                Some(-1) => -1,
                _ => return Err(Error::Input("tau must be +1 or -1".into())),
            },
        };
        let n = a.order();
        let mut table = vec![0u64; n * n];
        match v.get("chi") {
            Some(Value::Object(m)) => {
                for (k, val) in m {
                    let parts: Vec<usize> = k
                        .split(',')
                        .map(|s| s.trim().parse::<usize>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| Error::Input(format!("bad chi key {k:?}")))?;
                    let [x, y] = parts[..] else {
                        return Err(Error::Input(format!("bad chi key {k:?}")));
                    };
                    if x >= n || y >= n {
                        return Err(Error::Input(format!("chi key {k:?} out of range")));
                    }
                    table[x * n + y] = parse_exponent(val, modulus)?;
                }
            }
            Some(Value::Array(rows)) => {
                if rows.len() != n {
                    return Err(Error::Input("chi matrix has the wrong size".into()));
                }
                for (x, row) in rows.iter().enumerate() {
                    let row = row.as_array().filter(|r| r.len() == n);
                    let row = row.ok_or_else(|| Error::Input("chi matrix has the wrong size".into()))?;
                    for (y, val) in row.iter().enumerate() {
                        table[x * n + y] = parse_exponent(val, modulus)?;
                    }
                }
            }
            _ => return Err(Error::Input("missing field chi".into())),
        }
        TYCategory::new(&a, modulus, |x, y| table[x * n + y], tau)
    }

    pub fn to_json(&self) -> Value {
        let n = self.a.order();
        let chi: Map<String, Value> = (0..n * n)
            .filter(|&i| self.chi[i] != 0)
            .map(|i| (format!("{},{}", i / n, i % n), json!(self.chi[i])))
            .collect();
        json!({ "A": group_ref_json(&self.a), "chi": chi, "modulus": self.modulus, "tau": self.tau })
    }
}

fn parse_exponent(v: &Value, m: u64) -> Result<u64> {
    v.as_i64()
        .map(|x| x.rem_euclid(m as i64) as u64)
        .ok_or_else(|| Error::Input(format!("chi value {v} is not an integer")))
}

/// A Lagrangian subgroup (`χ|_{B×B} = 0`, `|B|² = |A|`), the first in subgroup order.
pub fn is_group_theoretical(ty: &TYCategory) -> Result<Option<Subgroup>> {
    let n = ty.a.order();
    Ok(subgroups(&ty.a)?
        .into_iter()
        .find(|b| b.order() * b.order() == n && ty.is_isotropic(b)))
}

/// `alt_ψ(x, y) = ψ(x, y) − ψ(y, x)` for `x, y ∈ L` (indices in `A`), mod the ψ modulus.
fn alt(m: &ModuleData, x: usize, y: usize) -> u64 {
    let md = m.psi().modulus();
    (m.psi_at(x, y) + md - m.psi_at(y, x)) % md
}

/// Elements `e_1, …, e_r` with `L = ⊕⟨e_i⟩`, and coordinates of every element of `L`.
fn cyclic_basis(a: &FiniteGroup, l: &Subgroup) -> (Vec<usize>, BTreeMap<usize, Vec<usize>>) {
    fn search(a: &FiniteGroup, l: &Subgroup, basis: &mut Vec<usize>, span: Vec<usize>) -> bool {
        if span.len() == l.order() {
            return true;
        }
        let mut cands: Vec<usize> = l.elements().to_vec();
        cands.sort_by_key(|&x| std::cmp::Reverse(a.element_order(x)));
        for x in cands {
            let mut gens = basis.clone();
            gens.push(x);
            let next = a.closure(&gens);
            if next.len() == span.len() * a.element_order(x) {
                basis.push(x);
                if search(a, l, basis, next) {
                    return true;
                }
                basis.pop();
            }
        }
        false
    }
    let mut basis = Vec::new();
    let found = search(a, l, &mut basis, vec![a.identity()]);
    debug_assert!(found, "finite abelian groups have cyclic bases");
    let orders: Vec<usize> = basis.iter().map(|&e| a.element_order(e)).collect();
    let mut coords = BTreeMap::new();
    let mut x = vec![0usize; basis.len()];
    loop {
        let el = basis
            .iter()
            .zip(&x)
            .fold(a.identity(), |acc, (&e, &k)| a.mul(acc, a.pow(e, k)));
        coords.insert(el, x.clone());
        let mut i = 0;
        loop {
            if i == x.len() {
                return (basis, coords);
            }
            x[i] += 1;
            if x[i] < orders[i] {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// A 2-cocycle on `L` with the given alternating form: `Σ_{i<j} x_i y_j β(e_i, e_j)`.
fn cocycle_with_alt(
    cat: &Arc<PointedCategory>,
    l: &Subgroup,
    beta: impl Fn(usize, usize) -> u64,
) -> Result<ModuleData> {
    let a = cat.group();
    let md = cat.psi_modulus();
    let (basis, coords) = cyclic_basis(a, l);
    let els = l.elements().to_vec();
    let lg = l.as_group(a);
    let psi = Cochain::from_fn(&lg, 2, md, |t| {
        let (x, y) = (&coords[&els[t[0]]], &coords[&els[t[1]]]);
        let mut s: i128 = 0;
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                s += (x[i] * y[j]) as i128 * beta(basis[i], basis[j]) as i128;
            }
        }
        s
    });
    ModuleData::new(cat, l.clone(), psi)
}

/// `σ·(B, α)` for the odd component: the class of `(B', α')`, canonical.
pub fn duality_action(ty: &TYCategory, m: &ModuleData) -> Result<ModuleData> {
    if m.category().group() != &ty.a || !m.category().omega().is_zero() {
        return Err(Error::CategoryMismatch);
    }
    let md = m.psi().modulus();
    let n = ty.a.order() as u64;
    if !md.is_multiple_of(n) {
        return Err(Error::CategoryMismatch);
    }
    let up = md / n;
    let b = m.subgroup();
    // b_c with χ(c, ·)|_B = alt_α(b_c, ·)
    let mut partner = BTreeMap::new();
    for c in ty.a.elements() {
        let hit = b.elements().iter().copied().find(|&bc| {
            b.elements()
                .iter()
                .all(|&y| ty.chi_a(c, y) * up % md == alt(m, bc, y))
        });
        if let Some(bc) = hit {
            partner.insert(c, bc);
        }
    }
    let b2 = Subgroup::new(&ty.a, partner.keys().copied())?;
    if b2.order() * radical_order(m) != ty.a.order() {
        return Err(Error::InvariantBroken("image of the duality is not Lagrangian".into()));
    }
    let beta = |c: usize, c2: usize| ty.chi_a(partner[&c], c2) * up % md;
    let out = cocycle_with_alt(m.category(), &b2, beta)?;
    Ok(out.canonical()?.1)
}

/// `|rad alt_α|`; the image of `(B, α)` has `|B'|·|rad| = |A|`.
fn radical_order(m: &ModuleData) -> usize {
    let b = m.subgroup();
    b.elements()
        .iter()
        .filter(|&&x| b.elements().iter().all(|&y| alt(m, x, y) == 0))
        .count()
}

/// `Z/2` acting on module classes over `Vec_A` through the odd component.
pub struct DualityAction {
    ty: TYCategory,
    z2: FiniteGroup,
    component: Arc<PointedCategory>,
}

impl DualityAction {
    pub fn new(ty: &TYCategory) -> Self {
        DualityAction {
            ty: ty.clone(),
            z2: cyclic(2),
            component: ty.component(),
        }
    }
}

impl ComponentAction for DualityAction {
    fn acting_group(&self) -> &FiniteGroup {
        &self.z2
    }

    fn component(&self) -> &Arc<PointedCategory> {
        &self.component
    }

    fn act(&self, sigma: usize, m: &ModuleData) -> Result<ModuleData> {
        if sigma == 0 {
            Ok(m.canonical()?.1)
        } else {
            duality_action(&self.ty, m)
        }
    }
}

/// Orbits of the duality action; for non-group-theoretical `TY` these are the
/// indecomposable module categories.
pub fn classify_ty_modules(ty: &TYCategory) -> Result<Vec<Vec<ModuleData>>> {
    if let Some(w) = is_group_theoretical(ty)? {
        return Err(Error::GroupTheoreticalCase(w.elements().to_vec()));
    }
    duality_orbits(ty)
}

/// Orbits of the duality action on all module classes over `Vec_A`.
pub fn duality_orbits(ty: &TYCategory) -> Result<Vec<Vec<ModuleData>>> {
    let t = action_table(&DualityAction::new(ty))?;
    Ok(t.orbits()
        .into_iter()
        .map(|o| o.into_iter().map(|i| t.classes[i].clone()).collect())
        .collect())
}

/// The three equivalent forms of group-theoreticity, computed independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TyAgreement {
    pub lagrangian: Option<Subgroup>,
    /// A class `(B, 0)` with `B` isotropic that the duality fixes.
    pub fixed_isotropic: Option<Subgroup>,
    pub invariant_classes: usize,
}

impl TyAgreement {
    pub fn agrees(&self) -> bool {
        let l = self.lagrangian.is_some();
        l == self.fixed_isotropic.is_some() && l == (self.invariant_classes > 0)
    }
}

pub fn three_way_agreement(ty: &TYCategory) -> Result<TyAgreement> {
    let act = DualityAction::new(ty);
    let t = action_table(&act)?;
    let whole = Subgroup::whole(&t.acting);
    let invariant = t.fixed_by(&whole);
    let mut fixed_isotropic = None;
    for &i in &invariant {
        let m = &t.classes[i];
        if m.psi().is_zero() && ty.is_isotropic(m.subgroup()) {
            fixed_isotropic = Some(m.subgroup().clone());
            break;
        }
    }
    Ok(TyAgreement {
        lagrangian: is_group_theoretical(ty)?,
        fixed_isotropic,
        invariant_classes: invariant.len(),
    })
}

/// Whether `σ·σ·m ~ m` for every class.
pub fn duality_is_involution(ty: &TYCategory) -> Result<bool> {
    for m in module_classes(&ty.component())? {
        let back = duality_action(ty, &duality_action(ty, &m)?)?;
        if !modules_equivalent(&m, &back)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every symmetric nondegenerate bicharacter on the abelian group `a`, valued mod `exp(A)`.
pub fn bicharacters(a: &FiniteGroup) -> Result<Vec<TYCategory>> {
    if !a.is_abelian() {
        return Err(Error::InvalidTy("A must be abelian".into()));
    }
    let e = exponent(a);
    let (basis, coords) = cyclic_basis(a, &Subgroup::whole(a));
    let orders: Vec<u64> = basis.iter().map(|&b| a.element_order(b) as u64).collect();
    let r = basis.len();
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect();
    let ranges: Vec<u64> = pairs.iter().map(|&(i, j)| gcd(orders[i], orders[j])).collect();
    let mut out = Vec::new();
    let mut x = vec![0u64; pairs.len()];
    loop {
        let mut mat = vec![vec![0u64; r]; r];
        for (p, &(i, j)) in pairs.iter().enumerate() {
            let v = x[p] * (e / ranges[p]);
            mat[i][j] = v;
            mat[j][i] = v;
        }
        let chi = |u: usize, v: usize| {
            let (cu, cv) = (&coords[&u], &coords[&v]);
            let mut s = 0u64;
            for i in 0..r {
                for j in 0..r {
                    s += cu[i] as u64 * cv[j] as u64 * mat[i][j];
                }
            }
            s % e
        };
        if let Ok(ty) = TYCategory::new(a, e, chi, 1) {
            out.push(ty);
        }
        let mut p = 0;
        loop {
            if p == x.len() {
                return Ok(out);
            }
            x[p] += 1;
            if x[p] < ranges[p] {
                break;
            }
            x[p] = 0;
            p += 1;
        }
    }
}

/// `A = Z/2` with `χ(1, 1) = −1`.
pub fn ising() -> TYCategory {
    TYCategory::new(&cyclic(2), 2, |x, y| (x * y) as u64, 1).expect("valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog::{klein, small_groups};

    fn hyperbolic() -> TYCategory {
        // klein index a·2 + b for (a, b)
        TYCategory::new(&klein(), 2, |x, y| ((x / 2) * (y % 2) + (x % 2) * (y / 2)) as u64, 1).unwrap()
    }

    #[test]
    fn validation() {
        assert!(TYCategory::new(&cyclic(2), 2, |_, _| 0, 1).is_err());
        assert!(TYCategory::new(&cyclic(3), 3, |x, y| (x + y) as u64, 1).is_err());
        assert!(TYCategory::new(&crate::groups::catalog::dihedral(3), 2, |_, _| 0, 1).is_err());
        let v = json!({ "A": "cyclic:2", "chi": { "1,1": 1 }, "modulus": 2, "tau": -1 });
        let t = TYCategory::from_json(&v).unwrap();
        assert_eq!(t.tau(), -1);
        assert_eq!(TYCategory::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn lagrangian_examples() {
        assert_eq!(is_group_theoretical(&ising()).unwrap(), None);
        let h = hyperbolic();
        let w = is_group_theoretical(&h).unwrap().unwrap();
        // both coordinate axes are Lagrangian
        assert!(w.elements() == [0, 1] || w.elements() == [0, 2]);
        assert!(h.is_isotropic(&w) && w.order() * w.order() == 4);
        let z3 = TYCategory::new(&cyclic(3), 3, |x, y| (x * y) as u64, 1).unwrap();
        assert_eq!(is_group_theoretical(&z3).unwrap(), None);
        let z4 = TYCategory::new(&cyclic(4), 4, |x, y| (x * y) as u64, 1).unwrap();
        assert!(matches!(classify_ty_modules(&z4), Err(Error::GroupTheoreticalCase(w)) if w == vec![0, 2]));
    }

    #[test]
    fn perp_examples() {
        let t = hyperbolic();
        let a = t.group().clone();
        assert_eq!(t.perp(&Subgroup::trivial(&a)), Subgroup::whole(&a));
        assert_eq!(t.perp(&Subgroup::whole(&a)), Subgroup::trivial(&a));
        for b in subgroups(&a).unwrap() {
            assert_eq!(b.order() * t.perp(&b).order(), a.order());
            assert_eq!(t.perp(&t.perp(&b)), b);
        }
    }

    #[test]
    fn ising_swaps_extremes() {
        let t = ising();
        let orbits = classify_ty_modules(&t).unwrap();
        assert_eq!(orbits.len(), 1);
        let sizes: Vec<usize> = orbits[0].iter().map(|m| m.subgroup().order()).collect();
        assert_eq!(sizes, vec![1, 2]);
        let a = three_way_agreement(&t).unwrap();
        assert!(a.agrees() && a.invariant_classes == 0);
    }

    #[test]
    fn untwisted_duality_is_perp() {
        let t = hyperbolic();
        let cat = t.component();
        for m in module_classes(&cat).unwrap() {
            if m.psi().is_zero() {
                assert_eq!(duality_action(&t, &m).unwrap().subgroup(), &t.perp(m.subgroup()));
            }
        }
    }

    #[test]
    fn catalog_bicharacters_agree() {
        let mut seen = 0;
        for a in small_groups(8).into_iter().filter(|g| g.is_abelian()) {
            for t in bicharacters(&a).unwrap() {
                seen += 1;
                assert!(duality_is_involution(&t).unwrap(), "{}", a.label());
                let ag = three_way_agreement(&t).unwrap();
                assert!(ag.agrees(), "{} {:?}", a.label(), ag);
            }
        }
        assert!(seen > 0);
    }
}
