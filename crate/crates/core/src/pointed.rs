//! `Vec_K^ω` and its indecomposable module categories, modelled as pairs
//! `(L, ψ)` with `L ≤ K` and `δψ = ω|_L`.
//!
//! `ψ` lives at the category's `psi_modulus`, a multiple of `M_ω·|K|`, so that
//! every `ω|_L` that is trivial in `k*` has a solution, and `H²(L, k*)`
//! representatives (modulus `|L|`) embed.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::cohomology::{
    cohomology_group, group_ref_json, solve_coboundary, trivial_submodule, Cochain,
};
use crate::error::{Error, Result};
use crate::groups::{catalog, subgroups, FiniteGroup, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedCategory {
    group: Arc<FiniteGroup>,
    omega: Cochain,
    psi_modulus: u64,
    label: String,
}

impl PointedCategory {
    /// Checks that `omega` is a normalized 3-cocycle on `group`.
    pub fn new(group: &FiniteGroup, omega: Cochain) -> Result<Self> {
        let psi_modulus = omega.modulus() * group.order() as u64;
        Self::with_psi_modulus(group, omega, psi_modulus)
    }

    /// `psi_modulus` must be a multiple of `M_ω·|K|`.
    pub fn with_psi_modulus(group: &FiniteGroup, omega: Cochain, psi_modulus: u64) -> Result<Self> {
        if omega.degree() != 3 || omega.group() != group {
            return Err(Error::InvalidCochain("associator must be a 3-cochain on the group".into()));
        }
        if !omega.is_cocycle() {
            return Err(Error::NotCocycle("associator".into()));
        }
        if !psi_modulus.is_multiple_of(omega.modulus() * group.order() as u64) {
            return Err(Error::InvalidCochain(format!(
                "psi modulus {psi_modulus} is not a multiple of M_omega*|K|"
            )));
        }
        Ok(PointedCategory {
            label: format!("Vec[{}]", group.label()),
            group: Arc::new(group.clone()),
            omega,
            psi_modulus,
        })
    }

    pub fn untwisted(group: &FiniteGroup) -> Self {
        Self::new(group, Cochain::zero(group, 3, 1)).expect("zero is a cocycle")
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn omega(&self) -> &Cochain {
        &self.omega
    }

    pub fn psi_modulus(&self) -> u64 {
        self.psi_modulus
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `ω` scaled to the `ψ` modulus.
    fn omega_at(&self, t: [usize; 3]) -> i128 {
        (self.omega.get(&t) * (self.psi_modulus / self.omega.modulus())) as i128
    }

    /// `Vec_N^{ω|N}` on the local indices of `N`, keeping this `ψ` modulus.
    pub fn restrict(&self, n: &Subgroup) -> PointedCategory {
        let ng = n.as_group(&self.group);
        let omega = self.omega.restrict(n);
        PointedCategory {
            label: format!("{}|{}", self.label, n.order()),
            group: Arc::new(ng),
            omega,
            psi_modulus: self.psi_modulus,
        }
    }

    /// Reads `{ "group": ..., "omega": cochain | "zero" | "generator" | {"cyclic_generator": q} }`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Input("category must be an object".into()))?;
        let group = catalog::from_json(
            obj.get("group")
                .ok_or_else(|| Error::Input("category needs 'group'".into()))?,
        )?;
        let omega = omega_from_spec(&group, obj.get("omega").unwrap_or(&json!("zero")))?;
        PointedCategory::new(&group, omega).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn to_json(&self) -> Value {
        json!({ "group": group_ref_json(&self.group), "omega": self.omega.to_json() })
    }
}

/// `zero`, `generator` (first `H³` representative), `cyclic:q` / `{cyclic_generator: q}`, or a cochain.
pub fn omega_from_spec(group: &FiniteGroup, spec: &Value) -> Result<Cochain> {
    let cyclic = |q: i64| -> Result<Cochain> {
        let w = Cochain::cyclic_generator(group.order(), q);
        if w.group() != group {
            return Err(Error::Input("cyclic_generator needs a cyclic:n group".into()));
        }
        Ok(w)
    };
    match spec {
        Value::String(s) if s == "zero" => Ok(Cochain::zero(group, 3, 1)),
        Value::String(s) if s == "generator" => {
            let h = cohomology_group(group, 3)?;
            Ok(h.representatives
                .first()
                .cloned()
                .unwrap_or_else(|| Cochain::zero(group, 3, 1)))
        }
        Value::String(s) if s.starts_with("cyclic:") => {
            let q = s[7..]
                .parse::<i64>()
                .map_err(|_| Error::Input(format!("bad omega '{s}'")))?;
            cyclic(q)
        }
        Value::Object(o) if o.contains_key("cyclic_generator") => {
            let q = o["cyclic_generator"]
                .as_i64()
                .ok_or_else(|| Error::Input("cyclic_generator needs an integer".into()))?;
            cyclic(q)
        }
        Value::Object(_) => {
            let c = Cochain::from_json(spec)?;
            if c.group() != group {
                return Err(Error::Input("omega is defined on a different group".into()));
            }
            Ok(c)
        }
        _ => Err(Error::Input(format!("bad omega spec {spec}"))),
    }
}

/// An indecomposable module category `(L, ψ)` over a pointed category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleData {
    category: Arc<PointedCategory>,
    subgroup: Subgroup,
    /// 2-cochain on `L` (local indices) at the category's `ψ` modulus.
    psi: Cochain,
}

/// Canonical class key: least `(|L|, L, reduced ψ)` over all conjugates.
pub type ClassKey = (usize, Vec<usize>, Vec<u64>);

impl ModuleData {
    /// Checks `δψ = ω|_L`.
    pub fn new(category: &Arc<PointedCategory>, subgroup: Subgroup, psi: Cochain) -> Result<Self> {
        if psi.degree() != 2
            || psi.modulus() != category.psi_modulus
            || psi.group().order() != subgroup.order()
        {
            return Err(Error::InvalidCochain("psi has the wrong shape".into()));
        }
        let m = ModuleData {
            category: category.clone(),
            subgroup,
            psi,
        };
        m.check()?;
        Ok(m)
    }

    pub fn category(&self) -> &Arc<PointedCategory> {
        &self.category
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn psi(&self) -> &Cochain {
        &self.psi
    }

    /// `ψ(a, b)` for `a, b ∈ L` given by their indices in `K`.
    pub fn psi_at(&self, a: usize, b: usize) -> u64 {
        let l = &self.subgroup;
        self.psi
            .get(&[l.local_index(a).unwrap(), l.local_index(b).unwrap()])
    }

    pub fn check(&self) -> Result<()> {
        let target = self
            .category
            .omega
            .restrict(&self.subgroup)
            .embed(self.category.psi_modulus);
        if self.psi.coboundary() != target {
            return Err(Error::InvariantBroken(format!(
                "d(psi) != omega on subgroup {:?}",
                self.subgroup.elements()
            )));
        }
        Ok(())
    }

    /// `ψ` reduced modulo cochains that are trivial in `k*`.
    fn reduced_psi(&self) -> Vec<u64> {
        let lg = self.psi.group();
        if lg.order() == 1 {
            return vec![];
        }
        let t = trivial_submodule(lg, 2, self.psi.modulus(), lg.order() as u64);
        t.reduce(&self.psi.slot_vector())
    }

    /// Canonical form: the least `(L, reduced ψ)` over all conjugates.
    pub fn canonical(&self) -> Result<(ClassKey, ModuleData)> {
        let k = self.category.group.clone();
        let mut best: Option<(ClassKey, ModuleData)> = None;
        for x in k.elements() {
            let m = transport(x, self)?;
            let red = m.reduced_psi();
            let key = (m.subgroup.order(), m.subgroup.elements().to_vec(), red.clone());
            if best.as_ref().is_none_or(|(b, _)| key.cmp(b) == Ordering::Less) {
                let psi = Cochain::from_slot_vector(m.psi.group_arc().clone(), 2, m.psi.modulus(), &red);
                best = Some((key, ModuleData { psi, ..m }));
            }
        }
        let (key, m) = best.expect("nonempty group");
        debug_assert!(m.check().is_ok());
        Ok((key, m))
    }

    pub fn key(&self) -> Result<ClassKey> {
        Ok(self.canonical()?.0)
    }

    /// Views data over `Vec_H^{ω|H}` (with `H = h` inside `parent`) as data over `parent`.
    ///
    /// Local indices of `L` are unchanged because the inclusion of `H` is monotone.
    pub fn to_parent(&self, parent: &Arc<PointedCategory>, h: &Subgroup) -> Result<ModuleData> {
        let l = Subgroup::new(parent.group(), self.subgroup.elements().iter().map(|&i| h.elements()[i]))?;
        ModuleData::new(parent, l, self.psi.clone())
    }

    /// Views data over `parent` with `L ⊆ H` as data over the subcategory `sub = Vec_H^{ω|H}`.
    pub fn to_sub(&self, sub: &Arc<PointedCategory>, h: &Subgroup) -> Result<ModuleData> {
        let local: Option<Vec<usize>> = self.subgroup.elements().iter().map(|&x| h.local_index(x)).collect();
        let local = local.ok_or_else(|| {
            Error::InvalidSubgroup(format!("{:?} is not inside the subcategory", self.subgroup.elements()))
        })?;
        ModuleData::new(sub, Subgroup::new(sub.group(), local)?, self.psi.clone())
    }

    /// `(L ∩ H, ψ|_{L∩H})` over `parent`.
    pub fn restrict_to(&self, h: &Subgroup) -> Result<ModuleData> {
        let lh = self.subgroup.intersect(h);
        let local = Subgroup::new(
            self.psi.group(),
            lh.elements().iter().map(|&x| self.subgroup.local_index(x).unwrap()),
        )?;
        ModuleData::new(&self.category, lh, self.psi.restrict(&local))
    }

    pub fn to_json(&self) -> Value {
        let mut psi = Map::new();
        let els = self.subgroup.elements();
        for (i, &a) in els.iter().enumerate() {
            for (j, &b) in els.iter().enumerate() {
                let v = self.psi.get(&[i, j]);
                if v != 0 {
                    psi.insert(format!("{a},{b}"), json!(v));
                }
            }
        }
        json!({ "subgroup": els, "modulus": self.psi.modulus(), "psi": psi })
    }
}

/// Moves `(L, ψ)` along conjugation by `x`:
/// `ψ'(a', b') = ψ(a, b) + ω(a', b', x) + ω(x, a, b) − ω(a', x, b)` with `a' = x a x⁻¹`.
pub fn transport(x: usize, m: &ModuleData) -> Result<ModuleData> {
    let c = &m.category;
    let k = &c.group;
    let xi = k.inv(x);
    let l2 = m.subgroup.conjugate(k, x);
    let lg = l2.as_group(k);
    let md = c.psi_modulus;
    let els = l2.elements().to_vec();
    let psi = Cochain::from_fn(&lg, 2, md, |t| {
        let (a2, b2) = (els[t[0]], els[t[1]]);
        let (a, b) = (k.conj(xi, a2), k.conj(xi, b2));
        m.psi_at(a, b) as i128 + c.omega_at([a2, b2, x]) + c.omega_at([x, a, b])
            - c.omega_at([a2, x, b])
    });
    let out = ModuleData {
        category: m.category.clone(),
        subgroup: l2,
        psi,
    };
    out.check()
        .map_err(|e| Error::InvariantBroken(format!("transport by {x}: {e}")))?;
    Ok(out)
}

/// Direct test: some conjugate of `m1` has `m2`'s subgroup and a `ψ` differing by a `k*`-coboundary.
pub fn modules_equivalent(m1: &ModuleData, m2: &ModuleData) -> Result<bool> {
    if m1.category != m2.category {
        return Err(Error::CategoryMismatch);
    }
    if m1.subgroup.order() != m2.subgroup.order() {
        return Ok(false);
    }
    let lift = m1.category.group.order() as u64;
    for x in m1.category.group.elements() {
        if m1.subgroup.conjugate(&m1.category.group, x) != m2.subgroup {
            continue;
        }
        let t = transport(x, m1)?;
        let diff = t.psi.sub(&m2.psi);
        if diff.group().order() == 1 || solve_coboundary(&diff, lift)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All classes of indecomposable module categories, one canonical representative each,
/// sorted by class key.
pub fn module_classes(c: &Arc<PointedCategory>) -> Result<Vec<ModuleData>> {
    let mut seen: BTreeMap<ClassKey, ModuleData> = BTreeMap::new();
    let lift = c.psi_modulus / c.omega.modulus();
    for l in subgroups(&c.group)? {
        let target = c.omega.restrict(&l);
        let Some(particular) = solve_coboundary(&target, lift)? else {
            continue;
        };
        let h2 = cohomology_group(target.group(), 2)?;
        for class in h2.classes() {
            let psi = particular.add(&class.embed(c.psi_modulus));
            let m = ModuleData::new(c, l.clone(), psi)?;
            let (key, canon) = m.canonical()?;
            seen.entry(key).or_insert(canon);
        }
    }
    Ok(seen.into_values().collect())
}

/// Trivialization of `ω|_X` in `k*` (found at lift factor `|U|`), or `None` if obstructed.
pub fn pointed_obstruction(u: &FiniteGroup, omega: &Cochain, x: &Subgroup) -> Result<Option<Cochain>> {
    solve_coboundary(&omega.restrict(x), u.order() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog::{cyclic, dihedral, klein};

    fn cat(g: &FiniteGroup, w: Cochain) -> Arc<PointedCategory> {
        Arc::new(PointedCategory::new(g, w).unwrap())
    }

    #[test]
    fn class_counts() {
        assert_eq!(module_classes(&cat(&cyclic(2), Cochain::zero(&cyclic(2), 3, 1))).unwrap().len(), 2);
        let v = module_classes(&Arc::new(PointedCategory::untwisted(&klein()))).unwrap();
        assert_eq!(v.len(), 6);
        assert_eq!(v.iter().filter(|m| m.subgroup().order() == 4).count(), 2);
    }

    #[test]
    fn twisted_z4_keeps_only_unobstructed_subgroups() {
        let z4 = cyclic(4);
        let c = cat(&z4, Cochain::cyclic_generator(4, 1));
        let classes = module_classes(&c).unwrap();
        let half = Subgroup::new(&z4, [0, 2]).unwrap();
        let half_ok = pointed_obstruction(&z4, c.omega(), &half).unwrap().is_some();
        let orders: Vec<usize> = classes.iter().map(|m| m.subgroup().order()).collect();
        assert!(!orders.contains(&4));
        assert_eq!(orders.contains(&2), half_ok);
        assert!(orders.contains(&1));
    }

    #[test]
    fn transport_keeps_invariant_and_composes() {
        let z4 = cyclic(4);
        for w in [Cochain::cyclic_generator(4, 1), Cochain::cyclic_generator(4, 2), Cochain::cyclic_generator(4, 3)] {
            let c = cat(&z4, w);
            for m in module_classes(&c).unwrap() {
                for x in 0..4 {
                    for y in 0..4 {
                        let a = transport(x, &transport(y, &m).unwrap()).unwrap();
                        let b = transport(z4.mul(x, y), &m).unwrap();
                        assert!(modules_equivalent(&a, &b).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn transport_nonabelian_twisted() {
        for g in [dihedral(3), dihedral(4), crate::groups::catalog::quaternion()] {
            let h3 = cohomology_group(&g, 3).unwrap();
            for w in &h3.representatives {
                let c = cat(&g, w.clone());
                let classes = module_classes(&c).unwrap();
                assert!(!classes.is_empty());
                for m in &classes {
                    for x in g.elements() {
                        for y in g.elements() {
                            let a = transport(x, &transport(y, m).unwrap()).unwrap();
                            let b = transport(g.mul(x, y), m).unwrap();
                            assert!(modules_equivalent(&a, &b).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn transport_identity_and_untwisted() {
        let s3 = dihedral(3);
        let c = Arc::new(PointedCategory::untwisted(&s3));
        for m in module_classes(&c).unwrap() {
            assert_eq!(transport(s3.identity(), &m).unwrap(), m);
            for x in s3.elements() {
                let t = transport(x, &m).unwrap();
                assert_eq!(t.subgroup(), &m.subgroup().conjugate(&s3, x));
            }
        }
    }

    #[test]
    fn s3_reflection_subgroups_are_equivalent() {
        let s3 = dihedral(3);
        let c = Arc::new(PointedCategory::untwisted(&s3));
        let refl: Vec<ModuleData> = [3usize, 4, 5]
            .iter()
            .map(|&r| {
                let l = Subgroup::generated(&s3, &[r]);
                let psi = Cochain::zero(&l.as_group(&s3), 2, c.psi_modulus());
                ModuleData::new(&c, l, psi).unwrap()
            })
            .collect();
        for a in &refl {
            for b in &refl {
                assert!(modules_equivalent(a, b).unwrap());
                assert_eq!(a.key().unwrap(), b.key().unwrap());
            }
        }
    }

    #[test]
    fn coboundary_shift_is_equivalent() {
        let v = klein();
        let c = Arc::new(PointedCategory::untwisted(&v));
        let whole = Subgroup::whole(&v);
        let zero = ModuleData::new(&c, whole.clone(), Cochain::zero(&v, 2, c.psi_modulus())).unwrap();
        let kappa = Cochain::from_fn(&v, 1, c.psi_modulus(), |t| 3 * t[0] as i128 + 1);
        let shifted = ModuleData::new(&c, whole, kappa.coboundary()).unwrap();
        assert!(modules_equivalent(&zero, &shifted).unwrap());
        let other = module_classes(&c).unwrap();
        let nontrivial = other
            .iter()
            .find(|m| m.subgroup().order() == 4 && !modules_equivalent(m, &zero).unwrap());
        assert!(nontrivial.is_some());
    }

    #[test]
    fn obstruction_examples() {
        let z2 = cyclic(2);
        let w = Cochain::cyclic_generator(2, 1);
        assert!(pointed_obstruction(&z2, &w, &Subgroup::whole(&z2)).unwrap().is_none());
        assert!(pointed_obstruction(&z2, &w, &Subgroup::trivial(&z2)).unwrap().unwrap().is_zero());
        let zero = Cochain::zero(&z2, 3, 2);
        assert!(pointed_obstruction(&z2, &zero, &Subgroup::whole(&z2)).unwrap().unwrap().is_zero());
    }
}
