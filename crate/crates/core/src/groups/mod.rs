//! Finite groups as closed multiplication tables on `0..n`.
//!
//! Everything above this layer (cochains, module data, actions) refers to
//! group elements by index, so a group is just a validated table plus its
//! identity and inverse map.

pub mod catalog;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// Default cap on group orders for exhaustive enumerations.
pub const DEFAULT_ORDER_BOUND: usize = 16;

#[derive(Clone)]
pub struct FiniteGroup {
    label: String,
    table: Vec<usize>,
    order: usize,
    identity: usize,
    inverse: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl Hash for FiniteGroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.table.hash(state);
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

impl FiniteGroup {
    /// Validates the table: closed, associative, with two-sided identity and inverses.
    pub fn from_table(label: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidGroup(format!("row {i} is not a permutation")));
                }
            }
            table.extend_from_slice(row);
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for i in 0..n {
                if std::mem::replace(&mut seen[table[i * n + j]], true) {
                    return Err(Error::InvalidGroup(format!("column {j} is not a permutation")));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] == a && table[a * n + e] == a))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == identity).unwrap())
            .collect();
        Ok(FiniteGroup {
            label: label.into(),
            table,
            order: n,
            identity,
            inverse,
        })
    }

    /// Builds a group from a multiplication closure; the result is still validated.
    pub fn from_fn(label: impl Into<String>, n: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::from_table(label, rows)
    }

    pub fn trivial() -> Self {
        Self::from_table("trivial", vec![vec![0]]).unwrap()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// `x a x^-1`
    #[inline]
    pub fn conj(&self, x: usize, a: usize) -> usize {
        self.mul(self.mul(x, a), self.inv(x))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    /// Sorted closure of `gens` under multiplication.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// A small generating set, chosen greedily by element index.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in self.elements() {
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    pub fn center(&self) -> Subgroup {
        Subgroup {
            elements: self
                .elements()
                .filter(|&z| self.elements().all(|a| self.mul(z, a) == self.mul(a, z)))
                .collect(),
        }
    }
}

/// A subgroup in canonical form: its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates closure in `group`.
    pub fn new(group: &FiniteGroup, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = elements.into_iter().collect();
        let elements: Vec<usize> = set.into_iter().collect();
        if elements.iter().any(|&x| x >= group.order()) {
            return Err(Error::InvalidSubgroup("element index out of range".into()));
        }
        let sub = Subgroup { elements };
        if !sub.contains(group.identity()) {
            return Err(Error::InvalidSubgroup("missing identity".into()));
        }
        for &a in &sub.elements {
            if !sub.contains(group.inv(a)) {
                return Err(Error::InvalidSubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &sub.elements {
                if !sub.contains(group.mul(a, b)) {
                    return Err(Error::InvalidSubgroup(format!(
                        "not closed under product at ({a},{b})"
                    )));
                }
            }
        }
        Ok(sub)
    }

    pub fn generated(group: &FiniteGroup, gens: &[usize]) -> Self {
        Subgroup {
            elements: group.closure(gens),
        }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Subgroup {
            elements: vec![group.identity()],
        }
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Subgroup {
            elements: group.elements().collect(),
        }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }

    /// `x H x^-1`
    pub fn conjugate(&self, group: &FiniteGroup, x: usize) -> Subgroup {
        let mut elements: Vec<usize> = self.elements.iter().map(|&a| group.conj(x, a)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn is_normal_in(&self, group: &FiniteGroup) -> bool {
        group
            .elements()
            .all(|x| self.elements.iter().all(|&a| self.contains(group.conj(x, a))))
    }

    /// The subgroup as a group in its own right; local index `i` is `elements()[i]`.
    pub fn as_group(&self, group: &FiniteGroup) -> FiniteGroup {
        let pos = |x: usize| self.elements.binary_search(&x).expect("closed subgroup");
        let n = self.order();
        FiniteGroup::from_fn(
            format!("{}<{}>", group.label(), n),
            n,
            |i, j| pos(group.mul(self.elements[i], self.elements[j])),
        )
        .expect("subgroup of a valid group is a group")
    }

    /// Local index of a parent element.
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    /// Image of this subgroup under a map of element indices.
    pub fn image(&self, f: impl Fn(usize) -> usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.elements.iter().map(|&x| f(x)).collect();
        set.into_iter().collect()
    }
}

/// All subgroups of `group`, sorted lexicographically by element list.
pub fn subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>> {
    subgroups_bounded(group, DEFAULT_ORDER_BOUND)
}

pub fn subgroups_bounded(group: &FiniteGroup, bound: usize) -> Result<Vec<Subgroup>> {
    if group.order() > bound {
        return Err(Error::TooLarge {
            what: "subgroup enumeration",
            size: group.order() as u128,
            bound: bound as u128,
        });
    }
    let cyclic: BTreeSet<Subgroup> = group
        .elements()
        .map(|g| Subgroup::generated(group, &[g]))
        .collect();
    let cyclic: Vec<Subgroup> = cyclic.into_iter().collect();
    let mut all: BTreeSet<Subgroup> = cyclic.iter().cloned().collect();
    let mut frontier: Vec<Subgroup> = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for c in &cyclic {
                if c.is_subset_of(h) {
                    continue;
                }
                let mut gens = h.elements.clone();
                gens.extend_from_slice(&c.elements);
                let joined = Subgroup::generated(group, &gens);
                debug_assert_eq!(group.order() % joined.order(), 0);
                if all.insert(joined.clone()) {
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }
    Ok(all.into_iter().collect())
}

/// The grading data `K -> K/N`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub source: FiniteGroup,
    pub kernel: Subgroup,
    pub quotient: FiniteGroup,
    /// `projection[k]` is the coset index of `k`.
    pub projection: Vec<usize>,
    /// Least element of each coset.
    pub lifts: Vec<usize>,
}

impl QuotientMap {
    pub fn project(&self, k: usize) -> usize {
        self.projection[k]
    }

    pub fn lift(&self, sigma: usize) -> usize {
        self.lifts[sigma]
    }

    /// All elements of the fiber over `sigma`.
    pub fn fiber(&self, sigma: usize) -> Vec<usize> {
        (0..self.source.order())
            .filter(|&k| self.projection[k] == sigma)
            .collect()
    }

    /// Image of a subgroup of the source.
    pub fn project_subgroup(&self, l: &Subgroup) -> Subgroup {
        Subgroup {
            elements: l.image(|x| self.projection[x]),
        }
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, s: &Subgroup) -> Subgroup {
        Subgroup {
            elements: (0..self.source.order())
                .filter(|&k| s.contains(self.projection[k]))
                .collect(),
        }
    }
}

/// Cosets are ordered by their least element index.
pub fn quotient(source: &FiniteGroup, kernel: &Subgroup) -> Result<QuotientMap> {
    if !kernel.is_normal_in(source) {
        return Err(Error::NotNormal);
    }
    let n = source.order();
    let mut projection = vec![usize::MAX; n];
    let mut lifts = Vec::new();
    for k in 0..n {
        if projection[k] == usize::MAX {
            let idx = lifts.len();
            lifts.push(k);
            for &h in kernel.elements() {
                projection[source.mul(k, h)] = idx;
            }
        }
    }
    let q = lifts.len();
    let quotient = FiniteGroup::from_fn(
        format!("{}/{}", source.label(), kernel.order()),
        q,
        |a, b| projection[source.mul(lifts[a], lifts[b])],
    )?;
    Ok(QuotientMap {
        source: source.clone(),
        kernel: kernel.clone(),
        quotient,
        projection,
        lifts,
    })
}

/// A homomorphism `G -> Aut(N)`, stored as one permutation of `N` per element of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub actor: FiniteGroup,
    pub target: FiniteGroup,
    map: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(actor: FiniteGroup, target: FiniteGroup, map: Vec<Vec<usize>>) -> Result<Self> {
        if map.len() != actor.order() {
            return Err(Error::InvalidGroup("action map has wrong length".into()));
        }
        for (s, perm) in map.iter().enumerate() {
            if perm.len() != target.order() {
                return Err(Error::InvalidGroup(format!("permutation {s} has wrong length")));
            }
            if !is_automorphism(&target, perm) {
                return Err(Error::InvalidGroup(format!("action of {s} is not an automorphism")));
            }
        }
        if map[actor.identity()].iter().enumerate().any(|(i, &x)| i != x) {
            return Err(Error::InvalidGroup("identity does not act trivially".into()));
        }
        for s in actor.elements() {
            for t in actor.elements() {
                let st = actor.mul(s, t);
                for u in target.elements() {
                    if map[st][u] != map[s][map[t][u]] {
                        return Err(Error::InvalidGroup(format!(
                            "action is not a homomorphism at ({s},{t})"
                        )));
                    }
                }
            }
        }
        Ok(GroupAction { actor, target, map })
    }

    pub fn trivial(actor: FiniteGroup, target: FiniteGroup) -> Self {
        let id: Vec<usize> = target.elements().collect();
        let map = vec![id; actor.order()];
        GroupAction { actor, target, map }
    }

    /// `sigma_*(u)`
    #[inline]
    pub fn apply(&self, sigma: usize, u: usize) -> usize {
        self.map[sigma][u]
    }

    pub fn is_trivial(&self) -> bool {
        self.map.iter().all(|p| p.iter().enumerate().all(|(i, &x)| i == x))
    }
}

pub fn is_automorphism(group: &FiniteGroup, perm: &[usize]) -> bool {
    let mut seen = vec![false; group.order()];
    for &x in perm {
        if x >= group.order() || std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    group.elements().all(|a| {
        group
            .elements()
            .all(|b| perm[group.mul(a, b)] == group.mul(perm[a], perm[b]))
    })
}

/// Extends an assignment of generator images to a homomorphism, if one exists.
fn extend_hom(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; src.order()];
    map[src.identity()] = dst.identity();
    let mut queue = VecDeque::from([src.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&g, &img) in gens.iter().zip(images) {
            let y = src.mul(x, g);
            let fy = dst.mul(map[x], img);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    let hom = src
        .elements()
        .all(|a| src.elements().all(|b| map[src.mul(a, b)] == dst.mul(map[a], map[b])));
    hom.then_some(map)
}

/// All homomorphisms `src -> dst`, in lexicographic order of the image vector.
pub fn homomorphisms(src: &FiniteGroup, dst: &FiniteGroup) -> Vec<Vec<usize>> {
    let gens = src.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = src.element_order(g);
            dst.elements().filter(|&h| o.is_multiple_of(dst.element_order(h))).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    if candidates.iter().any(|c| c.is_empty()) {
        return out;
    }
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend_hom(src, dst, &gens, &images) {
            out.push(map);
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                out.sort();
                out.dedup();
                return out;
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// An isomorphism `a -> b` as an element map, if one exists.
pub fn isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    homomorphisms(a, b).into_iter().find(|m| {
        let mut seen = vec![false; b.order()];
        m.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    })
}

/// `Aut(N)` as an abstract group, with each element realized as a permutation of `N`.
///
/// Element 0 is the identity automorphism; the group law is composition
/// `(a*b)(x) = a(b(x))`.
pub fn automorphism_group(group: &FiniteGroup) -> Result<(FiniteGroup, Vec<Vec<usize>>)> {
    automorphism_group_bounded(group, DEFAULT_ORDER_BOUND)
}

pub fn automorphism_group_bounded(
    group: &FiniteGroup,
    bound: usize,
) -> Result<(FiniteGroup, Vec<Vec<usize>>)> {
    if group.order() > bound {
        return Err(Error::TooLarge {
            what: "automorphism enumeration",
            size: group.order() as u128,
            bound: bound as u128,
        });
    }
    let mut perms: Vec<Vec<usize>> = homomorphisms(group, group)
        .into_iter()
        .filter(|m| is_automorphism(group, m))
        .collect();
    perms.sort();
    let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
    let n = perms.len();
    let aut = FiniteGroup::from_fn(format!("Aut({})", group.label()), n, |a, b| {
        let comp: Vec<usize> = perms[b].iter().map(|&x| perms[a][x]).collect();
        index(&comp)
    })?;
    Ok((aut, perms))
}

/// `N ⋊ G` with `[u,σ]·[v,τ] = [u·σ_*(v), στ]`; the pair `(u, σ)` has index `σ·|N| + u`.
pub fn semidirect_product(action: &GroupAction) -> FiniteGroup {
    let (n, g) = (&action.target, &action.actor);
    let no = n.order();
    FiniteGroup::from_fn(
        format!("{}:{}", n.label(), g.label()),
        no * g.order(),
        |x, y| {
            let (u, s) = (x % no, x / no);
            let (v, t) = (y % no, y / no);
            g.mul(s, t) * no + n.mul(u, action.apply(s, v))
        },
    )
    .expect("semidirect product of valid data is a group")
}

pub fn semidirect_index(action: &GroupAction, u: usize, sigma: usize) -> usize {
    sigma * action.target.order() + u
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let bo = b.order();
    FiniteGroup::from_fn(
        format!("{}x{}", a.label(), b.label()),
        a.order() * bo,
        |x, y| a.mul(x / bo, y / bo) * bo + b.mul(x % bo, y % bo),
    )
    .expect("direct product of groups is a group")
}

/// All subgroups `T` with `T ∩ N = {e}` and `|T|·|N| = |K|`.
pub fn complements(group: &FiniteGroup, normal: &Subgroup) -> Result<Vec<Subgroup>> {
    if !normal.is_normal_in(group) {
        return Err(Error::NotNormal);
    }
    let target = group.order() / normal.order();
    Ok(subgroups(group)?
        .into_iter()
        .filter(|t| t.order() == target && t.intersect(normal).order() == 1)
        .collect())
}
