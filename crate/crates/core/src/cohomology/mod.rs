//! Normalized bar cochains with values in `Z/M`, read as exponents of `M`-th
//! roots of unity in `k*`.
//!
//! A cochain of degree `n` stores one value per tuple in `G^n`, indexed with
//! the first argument most significant. Tuples containing the identity are
//! frozen at zero; the remaining "slots" are the coordinates used by all
//! linear algebra in [`complex`].

pub mod complex;

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::groups::{catalog, FiniteGroup, Subgroup};
use crate::zmod::{lcm, reduce};

pub use complex::{
    cocycle_count, cocycle_generators, cohomology_group, cohomology_group_bounded, enumerate_cocycles, is_trivial_in_kstar,
    solve_coboundary, trivial_submodule, CohomologyGroup, DEFAULT_TUPLE_BOUND,
};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    group: Arc<FiniteGroup>,
    degree: usize,
    modulus: u64,
    values: Vec<u64>,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Cochain(deg {}, mod {}, on {}, slots {:?})",
            self.degree,
            self.modulus,
            self.group.label(),
            self.slot_vector()
        )
    }
}

/// Iterates `G^n` in index order, calling `f(index, tuple)`.
pub(crate) fn for_each_tuple(order: usize, degree: usize, mut f: impl FnMut(usize, &[usize])) {
    let total = order.pow(degree as u32);
    let mut t = vec![0usize; degree];
    for idx in 0..total {
        f(idx, &t);
        for k in (0..degree).rev() {
            t[k] += 1;
            if t[k] < order {
                break;
            }
            t[k] = 0;
        }
    }
}

pub(crate) fn tuple_index(order: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &g| acc * order + g)
}

/// Dense indices of the slots (tuples avoiding the identity), in index order.
pub(crate) fn slot_indices(group: &FiniteGroup, degree: usize) -> Vec<usize> {
    let e = group.identity();
    let mut out = Vec::new();
    for_each_tuple(group.order(), degree, |idx, t| {
        if !t.contains(&e) {
            out.push(idx);
        }
    });
    out
}

impl Cochain {
    pub fn zero(group: &FiniteGroup, degree: usize, modulus: u64) -> Self {
        Self::zero_shared(Arc::new(group.clone()), degree, modulus)
    }

    pub(crate) fn zero_shared(group: Arc<FiniteGroup>, degree: usize, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let len = group.order().pow(degree as u32);
        Cochain {
            group,
            degree,
            modulus,
            values: vec![0; len],
        }
    }

    /// Checks normalization and reduction of explicit dense values.
    pub fn new(group: &FiniteGroup, degree: usize, modulus: u64, values: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidCochain("modulus must be positive".into()));
        }
        let len = group.order().pow(degree as u32);
        if values.len() != len {
            return Err(Error::InvalidCochain(format!(
                "expected {len} values, got {}",
                values.len()
            )));
        }
        if values.iter().any(|&v| v >= modulus) {
            return Err(Error::InvalidCochain("value not reduced".into()));
        }
        let c = Cochain {
            group: Arc::new(group.clone()),
            degree,
            modulus,
            values,
        };
        let e = group.identity();
        let mut bad = false;
        for_each_tuple(group.order(), degree, |idx, t| {
            bad |= t.contains(&e) && c.values[idx] != 0;
        });
        if bad {
            return Err(Error::InvalidCochain("not normalized".into()));
        }
        Ok(c)
    }

    /// Evaluates `f` on identity-free tuples; all other values are zero.
    pub fn from_fn(
        group: &FiniteGroup,
        degree: usize,
        modulus: u64,
        f: impl FnMut(&[usize]) -> i128,
    ) -> Self {
        Self::from_fn_shared(Arc::new(group.clone()), degree, modulus, f)
    }

    pub(crate) fn from_fn_shared(
        group: Arc<FiniteGroup>,
        degree: usize,
        modulus: u64,
        mut f: impl FnMut(&[usize]) -> i128,
    ) -> Self {
        let mut c = Self::zero_shared(group, degree, modulus);
        let e = c.group.identity();
        let order = c.group.order();
        let values = &mut c.values;
        for_each_tuple(order, degree, |idx, t| {
            if !t.contains(&e) {
                values[idx] = reduce(f(t), modulus);
            }
        });
        c
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub(crate) fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, t: &[usize]) -> u64 {
        debug_assert_eq!(t.len(), self.degree);
        self.values[tuple_index(self.group.order(), t)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Values on the slots, the coordinates used by the linear algebra.
    pub fn slot_vector(&self) -> Vec<u64> {
        slot_indices(&self.group, self.degree)
            .into_iter()
            .map(|i| self.values[i])
            .collect()
    }

    pub(crate) fn from_slot_vector(
        group: Arc<FiniteGroup>,
        degree: usize,
        modulus: u64,
        slots: &[u64],
    ) -> Self {
        let mut c = Self::zero_shared(group, degree, modulus);
        let idx = slot_indices(&c.group, degree);
        assert_eq!(idx.len(), slots.len());
        for (&i, &v) in idx.iter().zip(slots) {
            c.values[i] = v % modulus;
        }
        c
    }

    fn zip_with(&self, other: &Cochain, f: impl Fn(u64, u64) -> i128) -> Cochain {
        assert!(
            self.group == other.group && self.degree == other.degree && self.modulus == other.modulus,
            "cochains live in different groups"
        );
        let m = self.modulus;
        Cochain {
            group: self.group.clone(),
            degree: self.degree,
            modulus: m,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| reduce(f(a, b), m))
                .collect(),
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.zip_with(other, |a, b| a as i128 + b as i128)
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.zip_with(other, |a, b| a as i128 - b as i128)
    }

    pub fn scale(&self, k: i128) -> Cochain {
        let m = self.modulus;
        Cochain {
            values: self.values.iter().map(|&a| reduce(a as i128 * k, m)).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(-1)
    }

    /// The same `k*`-valued cochain at a modulus that `self.modulus()` divides.
    pub fn embed(&self, modulus: u64) -> Cochain {
        assert!(
            modulus.is_multiple_of(self.modulus),
            "cannot embed Z/{} into Z/{modulus}",
            self.modulus
        );
        let f = modulus / self.modulus;
        Cochain {
            modulus,
            values: self.values.iter().map(|&a| a * f).collect(),
            ..self.clone()
        }
    }

    /// Reduction to a divisor modulus (the `μ_M -> μ_d` map `x ↦ x mod d`).
    pub fn reduce_mod(&self, modulus: u64) -> Cochain {
        assert!(self.modulus.is_multiple_of(modulus));
        Cochain {
            modulus,
            values: self.values.iter().map(|&a| a % modulus).collect(),
            ..self.clone()
        }
    }

    /// Whether two cochains agree as `k*`-valued functions.
    pub fn same_kstar_values(&self, other: &Cochain) -> bool {
        if self.group != other.group || self.degree != other.degree {
            return false;
        }
        let m = lcm(self.modulus, other.modulus);
        self.embed(m).values == other.embed(m).values
    }

    /// `δc(g₁..g_{n+1}) = c(g₂..) + Σ(−1)^i c(..g_i g_{i+1}..) + (−1)^{n+1} c(g₁..g_n)`.
    pub fn coboundary(&self) -> Cochain {
        let g = self.group.clone();
        let n = self.degree;
        let order = g.order();
        let m = self.modulus;
        let mut face = vec![0usize; n];
        Cochain::from_fn_shared(g.clone(), n + 1, m, |t| {
            let mut acc: i128 = 0;
            face.copy_from_slice(&t[1..]);
            acc += self.values[tuple_index(order, &face)] as i128;
            for i in 1..=n {
                face[..i - 1].copy_from_slice(&t[..i - 1]);
                face[i - 1] = g.mul(t[i - 1], t[i]);
                face[i..].copy_from_slice(&t[i + 1..]);
                let v = self.values[tuple_index(order, &face)] as i128;
                acc += if i % 2 == 1 { -v } else { v };
            }
            face.copy_from_slice(&t[..n]);
            let v = self.values[tuple_index(order, &face)] as i128;
            acc += if (n + 1) % 2 == 1 { -v } else { v };
            acc
        })
    }

    pub fn is_cocycle(&self) -> bool {
        self.coboundary().is_zero()
    }

    /// Pullback along a map of element indices `h ↦ f(h)` from `source` into this cochain's group.
    ///
    /// Normalization is preserved when `f` sends the identity to the identity.
    pub fn pullback(&self, source: &FiniteGroup, f: impl Fn(usize) -> usize) -> Cochain {
        let order = self.group.order();
        let mut img = vec![0usize; self.degree];
        Cochain::from_fn(source, self.degree, self.modulus, |t| {
            for (x, &h) in img.iter_mut().zip(t) {
                *x = f(h);
            }
            self.values[tuple_index(order, &img)] as i128
        })
    }

    /// Restriction to `L`, viewed as a group on local indices `0..|L|`.
    pub fn restrict(&self, l: &Subgroup) -> Cochain {
        let lg = l.as_group(&self.group);
        self.pullback(&lg, |i| l.elements()[i])
    }

    /// The standard `q`-th class on `Z/n`: `q·n·a·⌊(b+c)/n⌋ mod n²`.
    pub fn cyclic_generator(n: usize, q: i64) -> Cochain {
        let g = catalog::cyclic(n);
        let n = n as i128;
        let m = (n * n) as u64;
        Cochain::from_fn(&g, 3, m, |t| {
            let (a, b, c) = (t[0] as i128, t[1] as i128, t[2] as i128);
            q as i128 * n * a * ((b + c) / n)
        })
    }

    pub fn to_json(&self) -> Value {
        let mut values = Map::new();
        let order = self.group.order();
        let n = self.degree;
        for_each_tuple(order, n, |idx, t| {
            if self.values[idx] != 0 {
                let key = t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                values.insert(key, json!(self.values[idx]));
            }
        });
        json!({
            "group": group_ref_json(&self.group),
            "degree": self.degree,
            "modulus": self.modulus,
            "values": values,
        })
    }

    /// Values are reduced on read; identity-slot keys must carry zero.
    pub fn from_json(v: &Value) -> Result<Cochain> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Input("cochain must be an object".into()))?;
        let group = catalog::from_json(
            obj.get("group")
                .ok_or_else(|| Error::Input("cochain needs 'group'".into()))?,
        )?;
        let degree = obj
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Input("cochain needs integer 'degree'".into()))? as usize;
        let modulus = obj
            .get("modulus")
            .and_then(Value::as_u64)
            .filter(|&m| m >= 1)
            .ok_or_else(|| Error::Input("cochain needs positive 'modulus'".into()))?;
        if group.order().checked_pow(degree as u32).is_none_or(|s| s > 1 << 20) {
            return Err(Error::Input("cochain too large".into()));
        }
        let mut values = vec![0u64; group.order().pow(degree as u32)];
        if let Some(map) = obj.get("values") {
            let map = map
                .as_object()
                .ok_or_else(|| Error::Input("'values' must be an object".into()))?;
            for (key, val) in map {
                let t: std::result::Result<Vec<usize>, _> = if key.is_empty() {
                    Ok(vec![])
                } else {
                    key.split(',').map(|s| s.trim().parse::<usize>()).collect()
                };
                let t = t.map_err(|_| Error::Input(format!("bad cochain key '{key}'")))?;
                if t.len() != degree || t.iter().any(|&x| x >= group.order()) {
                    return Err(Error::Input(format!("bad cochain key '{key}'")));
                }
                let x = val
                    .as_i64()
                    .ok_or_else(|| Error::Input(format!("bad value at '{key}'")))?;
                values[tuple_index(group.order(), &t)] = reduce(x as i128, modulus);
            }
        }
        Cochain::new(&group, degree, modulus, values).map_err(|e| Error::Input(e.to_string()))
    }
}

/// Shorthand name when it rebuilds the same table, else the full table.
pub fn group_ref_json(g: &FiniteGroup) -> Value {
    match catalog::parse(g.label()) {
        Ok(h) if h == *g => json!(g.label()),
        _ => catalog::to_json(g),
    }
}
