//! Clifford theory for a `G`-graded pointed category `C = Vec_K^ω`, graded by
//! `K -> G = K/N`, with trivial component `C_e = Vec_N^{ω|N}`.
//!
//! `G` acts on classes of indecomposable `C_e`-module categories by
//! transport along any lift of `σ`. Every indecomposable `C`-module category
//! `(L, ψ)` restricts to `C_e` as a sum of pieces, one per coset of `π(L)`,
//! and the pieces form a single orbit.
//!
//! Two stabilizers appear and are kept apart. The piece stabilizer
//! `S = {σ : C_σ ⊗ N = N}` acts on actual subcategories and equals `π(L)`.
//! The class stabilizer `H = st([N])` acts on equivalence classes and
//! contains `S`, possibly strictly: distinct pieces may be equivalent.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::{quotient, FiniteGroup, QuotientMap, Subgroup};
use crate::pointed::{
    module_classes, modules_equivalent, transport, ClassKey, ModuleData, PointedCategory,
};

/// A group acting on the classes of module categories over a pointed `C_e`.
pub trait ComponentAction {
    fn acting_group(&self) -> &FiniteGroup;
    fn component(&self) -> &Arc<PointedCategory>;
    /// Canonical representative of `σ·[m]`.
    fn act(&self, sigma: usize, m: &ModuleData) -> Result<ModuleData>;
}

#[derive(Clone, Debug)]
pub struct GradedPointedCategory {
    category: Arc<PointedCategory>,
    kernel: Subgroup,
    grading: QuotientMap,
    component: Arc<PointedCategory>,
}

impl GradedPointedCategory {
    pub fn new(category: &Arc<PointedCategory>, kernel: Subgroup) -> Result<Self> {
        let grading = quotient(category.group(), &kernel)?;
        let component = Arc::new(category.restrict(&kernel));
        Ok(GradedPointedCategory {
            category: category.clone(),
            kernel,
            grading,
            component,
        })
    }

    pub fn category(&self) -> &Arc<PointedCategory> {
        &self.category
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn grading(&self) -> &QuotientMap {
        &self.grading
    }

    pub fn grading_group(&self) -> &FiniteGroup {
        &self.grading.quotient
    }

    fn transport_into_component(&self, x: usize, m: &ModuleData) -> Result<ModuleData> {
        let up = m.to_parent(&self.category, &self.kernel)?;
        transport(x, &up)?.to_sub(&self.component, &self.kernel)
    }

    /// Like [`ComponentAction::act`] but through the given lift `x` of `σ`.
    pub fn act_by_lift(&self, x: usize, m: &ModuleData) -> Result<ModuleData> {
        Ok(self.transport_into_component(x, m)?.canonical()?.1)
    }

    /// Restriction of a `C`-module class to `C_e`: one piece per coset `σπ(L)`
    /// (least `σ` in its coset, through its least lift), and `π(L)`.
    pub fn restriction_decomposition(&self, witness: &ModuleData) -> Result<(Vec<ModuleData>, Subgroup)> {
        let g = self.grading_group();
        let s = self.grading.project_subgroup(witness.subgroup());
        let base = witness.restrict_to(&self.kernel)?;
        let mut covered = vec![false; g.order()];
        let mut pieces = Vec::new();
        for sigma in g.elements() {
            if covered[sigma] {
                continue;
            }
            for &h in s.elements() {
                covered[g.mul(sigma, h)] = true;
            }
            let x = self.grading.lift(sigma);
            let piece = transport(x, &base)?.to_sub(&self.component, &self.kernel)?;
            pieces.push(piece.canonical()?.1);
        }
        Ok((pieces, s))
    }

    /// `{σ : C_σ ⊗ N = N}` for the piece `N` through the base point `L`, read off the
    /// `G`-action by lifts on double cosets `N\K/L` (the `C_e`-pieces of `K/L`).
    pub fn piece_stabilizer(&self, witness: &ModuleData) -> Subgroup {
        let k = self.category.group();
        let l = witness.subgroup();
        let base: BTreeSet<usize> = self
            .kernel
            .elements()
            .iter()
            .flat_map(|&n| l.elements().iter().map(move |&y| k.mul(n, y)))
            .collect();
        let g = self.grading_group();
        Subgroup::new(g, g.elements().filter(|&sigma| base.contains(&self.grading.lift(sigma))))
            .expect("stabilizer of a point is a subgroup")
    }

    /// `K_S = π⁻¹(S)` and the subcategory `C_S = Vec_{K_S}^ω`.
    pub fn subcategory(&self, s: &Subgroup) -> (Subgroup, Arc<PointedCategory>) {
        let ks = self.grading.preimage(s);
        let cat = Arc::new(self.category.restrict(&ks));
        (ks, cat)
    }
}

impl ComponentAction for GradedPointedCategory {
    fn acting_group(&self) -> &FiniteGroup {
        self.grading_group()
    }

    fn component(&self) -> &Arc<PointedCategory> {
        &self.component
    }

    /// Transport by every lift of `σ`; all lifts must give the same class.
    fn act(&self, sigma: usize, m: &ModuleData) -> Result<ModuleData> {
        let mut result: Option<(ClassKey, ModuleData)> = None;
        for x in self.grading.fiber(sigma) {
            let (key, canon) = self.transport_into_component(x, m)?.canonical()?;
            match &result {
                None => result = Some((key, canon)),
                Some((k0, _)) if *k0 != key => {
                    return Err(Error::LiftDependence(format!(
                        "sigma {sigma}: lifts {} and {x} disagree",
                        self.grading.lift(sigma)
                    )))
                }
                _ => {}
            }
        }
        Ok(result.expect("fibers are nonempty").1)
    }
}

/// `σ·[m]` for the graded pointed category.
pub fn g_action(gc: &GradedPointedCategory, sigma: usize, m: &ModuleData) -> Result<ModuleData> {
    gc.act(sigma, m)
}

/// A `G`-action on a finite list of classes, as an index table.
#[derive(Clone, Debug)]
pub struct OmegaAction {
    pub acting: FiniteGroup,
    pub classes: Vec<ModuleData>,
    pub keys: Vec<ClassKey>,
    /// `table[σ][i]` is the index of `σ·classes[i]`.
    pub table: Vec<Vec<usize>>,
}

impl OmegaAction {
    pub fn index_of(&self, m: &ModuleData) -> Result<usize> {
        let key = m.key()?;
        self.keys
            .binary_search(&key)
            .map_err(|_| Error::ConsistencyFailure {
                clause: "class lookup",
                detail: format!("class over {:?} not among the listed classes", m.subgroup().elements()),
            })
    }

    pub fn orbit(&self, i: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.table.iter().map(|row| row[i]).collect();
        set.into_iter().collect()
    }

    pub fn stabilizer(&self, i: usize) -> Subgroup {
        Subgroup::new(
            &self.acting,
            self.acting.elements().filter(|&s| self.table[s][i] == i),
        )
        .expect("stabilizer of a point is a subgroup")
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.classes.len()];
        let mut out = Vec::new();
        for i in 0..self.classes.len() {
            if !seen[i] {
                let o = self.orbit(i);
                for &j in &o {
                    seen[j] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn fixed_by(&self, s: &Subgroup) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| s.elements().iter().all(|&sigma| self.table[sigma][i] == i))
            .collect()
    }

    /// Identity acts trivially and `(στ)·i = σ·(τ·i)`.
    pub fn verify_action_laws(&self) -> Result<()> {
        let g = &self.acting;
        let n = self.classes.len();
        if (0..n).any(|i| self.table[g.identity()][i] != i) {
            return Err(Error::ConsistencyFailure {
                clause: "action identity law",
                detail: "identity moves a class".into(),
            });
        }
        for s in g.elements() {
            for t in g.elements() {
                for i in 0..n {
                    if self.table[g.mul(s, t)][i] != self.table[s][self.table[t][i]] {
                        return Err(Error::ConsistencyFailure {
                            clause: "action composition law",
                            detail: format!("({s}*{t}) on class {i}"),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// The action on all classes of `C_e`-module categories.
pub fn action_table<A: ComponentAction + ?Sized>(a: &A) -> Result<OmegaAction> {
    let classes = module_classes(a.component())?;
    let keys: Vec<ClassKey> = classes.iter().map(|m| m.key()).collect::<Result<_>>()?;
    let g = a.acting_group().clone();
    let mut out = OmegaAction {
        acting: g.clone(),
        classes,
        keys,
        table: vec![],
    };
    let mut table = Vec::with_capacity(g.order());
    for sigma in g.elements() {
        let row: Vec<usize> = out
            .classes
            .iter()
            .map(|m| out.index_of(&a.act(sigma, m)?))
            .collect::<Result<_>>()?;
        table.push(row);
    }
    out.table = table;
    out.verify_action_laws()?;
    Ok(out)
}

/// The orbit of `m` with its action table, which by transitivity is the set of
/// `C_e`-pieces of the module category induced from `m`.
pub fn omega_of_induced<A: ComponentAction + ?Sized>(a: &A, m: &ModuleData) -> Result<OmegaAction> {
    let g = a.acting_group().clone();
    let mut by_key: BTreeMap<ClassKey, ModuleData> = BTreeMap::new();
    let (k0, c0) = m.canonical()?;
    by_key.insert(k0, c0);
    let mut frontier: Vec<ModuleData> = by_key.values().cloned().collect();
    while let Some(x) = frontier.pop() {
        for sigma in g.elements() {
            let (k, c) = a.act(sigma, &x)?.canonical()?;
            if let std::collections::btree_map::Entry::Vacant(e) = by_key.entry(k) {
                e.insert(c.clone());
                frontier.push(c);
            }
        }
    }
    let keys: Vec<ClassKey> = by_key.keys().cloned().collect();
    let classes: Vec<ModuleData> = by_key.into_values().collect();
    let mut out = OmegaAction {
        acting: g.clone(),
        classes,
        keys,
        table: vec![],
    };
    let table = g
        .elements()
        .map(|sigma| {
            out.classes
                .iter()
                .map(|c| out.index_of(&a.act(sigma, c)?))
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    out.table = table;
    out.verify_action_laws()?;
    Ok(out)
}

/// Class stabilizer `{σ : σ·[m] = [m]}`.
pub fn stabilizer<A: ComponentAction + ?Sized>(a: &A, m: &ModuleData) -> Result<Subgroup> {
    let key = m.key()?;
    let g = a.acting_group();
    let mut els = Vec::new();
    for sigma in g.elements() {
        if a.act(sigma, m)?.key()? == key {
            els.push(sigma);
        }
    }
    Subgroup::new(g, els)
}

/// Classes fixed by every element of `s`.
pub fn invariant_classes<A: ComponentAction + ?Sized>(a: &A, s: &Subgroup) -> Result<Vec<ModuleData>> {
    let t = action_table(a)?;
    Ok(t.fixed_by(s).into_iter().map(|i| t.classes[i].clone()).collect())
}

/// Clifford data of one indecomposable `C`-module category.
#[derive(Clone, Debug)]
pub struct CliffordClass {
    pub witness: ModuleData,
    /// Piece stabilizer, equal to `π(L)`.
    pub stabilizer: Subgroup,
    /// Stabilizer of the base class; contains `stabilizer`.
    pub class_stabilizer: Subgroup,
    /// The piece through the base point, `(L ∩ N, ψ|)`.
    pub base: ModuleData,
    pub base_index: usize,
    /// Class index of the piece over each coset of `stabilizer`.
    pub pieces: Vec<usize>,
    /// Orbit of the base class.
    pub orbit: Vec<usize>,
}

impl CliffordClass {
    pub fn to_json(&self) -> Value {
        json!({
            "witness": self.witness.to_json(),
            "stabilizer": self.stabilizer.elements(),
            "class_stabilizer": self.class_stabilizer.elements(),
            "base": self.base.to_json(),
            "base_index": self.base_index,
            "pieces": self.pieces,
            "orbit": self.orbit,
        })
    }
}

/// Full classification: all classes of the pointed oracle, each annotated with
/// its Clifford data and checked against the theorem's clauses.
#[derive(Clone, Debug)]
pub struct GradedClassification {
    pub action: OmegaAction,
    pub classes: Vec<CliffordClass>,
}

fn fail(clause: &'static str, detail: String) -> Error {
    Error::ConsistencyFailure { clause, detail }
}

pub fn classify_graded(gc: &GradedPointedCategory) -> Result<GradedClassification> {
    let action = action_table(gc)?;
    let g = gc.grading_group();
    let mut classes = Vec::new();
    for witness in module_classes(gc.category())? {
        let (pieces, s) = gc.restriction_decomposition(&witness)?;
        let label = format!("witness {:?}", witness.subgroup().elements());
        if pieces.len() * s.order() != g.order() {
            return Err(fail("piece count", format!("{label}: {} pieces, |S| = {}", pieces.len(), s.order())));
        }
        let idx: Vec<usize> = pieces.iter().map(|p| action.index_of(p)).collect::<Result<_>>()?;
        let base_index = idx[0];
        let orbit = action.orbit(base_index);
        let piece_set: BTreeSet<usize> = idx.iter().copied().collect();
        if piece_set.into_iter().collect::<Vec<_>>() != orbit {
            return Err(fail("transitivity", format!("{label}: pieces {idx:?} vs orbit {orbit:?}")));
        }
        let h = action.stabilizer(base_index);
        if orbit.len() * h.order() != g.order() {
            return Err(fail("orbit-stabilizer", format!("{label}: {} * {}", orbit.len(), h.order())));
        }
        let s_piece = gc.piece_stabilizer(&witness);
        if s_piece != s {
            return Err(fail(
                "piece stabilizer equals projection",
                format!("{label}: {:?} vs {:?}", s_piece.elements(), s.elements()),
            ));
        }
        if !s.is_subset_of(&h) {
            return Err(fail("S inside class stabilizer", label.to_string()));
        }
        let same = idx.iter().filter(|&&i| i == base_index).count();
        if same * s.order() != h.order() {
            return Err(fail("pieces with the base class", format!("{label}: {same} vs [H:S]")));
        }
        classes.push(CliffordClass {
            base: action.classes[base_index].clone(),
            witness,
            stabilizer: s,
            class_stabilizer: h,
            base_index,
            pieces: idx,
            orbit,
        });
    }
    Ok(GradedClassification { action, classes })
}

/// Induced-equivalence test through `C_S`: `w₁ ~ w₂` iff some `x ∈ K` conjugates
/// `S₂` onto `S₁` and carries `w₂` to a module equivalent to `w₁` over `C_{S₁}`.
pub fn induced_equivalent(gc: &GradedPointedCategory, w1: &ModuleData, w2: &ModuleData) -> Result<bool> {
    let q = gc.grading();
    let g = gc.grading_group();
    let s1 = q.project_subgroup(w1.subgroup());
    let s2 = q.project_subgroup(w2.subgroup());
    if s1.order() != s2.order() {
        return Ok(false);
    }
    let (ks1, c_s1) = gc.subcategory(&s1);
    let n1 = w1.to_sub(&c_s1, &ks1)?;
    for x in gc.category().group().elements() {
        if s2.conjugate(g, q.project(x)) != s1 {
            continue;
        }
        let moved = transport(x, w2)?.to_sub(&c_s1, &ks1)?;
        if modules_equivalent(&moved, &n1)? {
            return Ok(true);
        }
    }
    Ok(false)
}
