//! Standard small groups, shorthand names and the JSON group format.
//!
//! Shorthand: `trivial`, `cyclic:n`, `dihedral:n` (order 2n), `klein`,
//! `quaternion`, `product:A,B` with `A`, `B` themselves shorthands (no nesting
//! of `product`). In `product`, the pair `(a, b)` has index `a·|B| + b`.

use serde_json::{json, Value};

use super::{direct_product, subgroups, FiniteGroup, Subgroup};
use crate::error::{Error, Result};

pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1, "cyclic group needs n >= 1");
    FiniteGroup::from_fn(format!("cyclic:{n}"), n, |a, b| (a + b) % n).unwrap()
}

/// `r^i s^j` has index `i + n·j`, with `s r s = r^-1`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1, "dihedral group needs n >= 1");
    FiniteGroup::from_fn(format!("dihedral:{n}"), 2 * n, |x, y| {
        let (i, j) = (x % n, x / n);
        let (k, l) = (y % n, y / n);
        // r^i s^j r^k s^l = r^(i ± k) s^(j+l)
        let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
        rot + n * ((j + l) % 2)
    })
    .unwrap()
}

pub fn klein() -> FiniteGroup {
    direct_product(&cyclic(2), &cyclic(2)).with_label("klein")
}

/// `±1, ±i, ±j, ±k` as `sign·4 + unit` with units ordered `1, i, j, k`.
pub fn quaternion() -> FiniteGroup {
    // UNIT[a][b] = (sign, unit) of unit_a · unit_b
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    FiniteGroup::from_fn("quaternion", 8, |x, y| {
        let (s, u) = UNIT[x % 4][y % 4];
        ((x / 4 + y / 4 + s) % 2) * 4 + u
    })
    .unwrap()
}

pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    direct_product(a, b).with_label(format!("product:{},{}", a.label(), b.label()))
}

/// The groups of order at most `max_order` up to isomorphism, for `max_order <= 8`.
pub fn small_groups(max_order: usize) -> Vec<FiniteGroup> {
    assert!(max_order <= 8, "catalog covers orders up to 8");
    let all = vec![
        FiniteGroup::trivial(),
        cyclic(2),
        cyclic(3),
        cyclic(4),
        klein(),
        cyclic(5),
        cyclic(6),
        dihedral(3),
        cyclic(7),
        cyclic(8),
        product(&cyclic(4), &cyclic(2)),
        product(&klein(), &cyclic(2)).with_label("product:klein,cyclic:2"),
        dihedral(4),
        quaternion(),
    ];
    all.into_iter().filter(|g| g.order() <= max_order).collect()
}

fn parse_size(s: &str, what: &str) -> Result<usize> {
    match s.trim().parse::<usize>() {
        Ok(n) if (1..=4096).contains(&n) => Ok(n),
        _ => Err(Error::Input(format!("bad {what} parameter '{s}'"))),
    }
}

fn parse_simple(spec: &str) -> Result<FiniteGroup> {
    let spec = spec.trim();
    let (head, param) = match spec.split_once(':') {
        Some((h, p)) => (h, Some(p)),
        None => (spec, None),
    };
    match (head, param) {
        ("trivial", None) => Ok(FiniteGroup::trivial()),
        ("klein", None) => Ok(klein()),
        ("quaternion", None) => Ok(quaternion()),
        ("cyclic", Some(p)) => Ok(cyclic(parse_size(p, "cyclic")?)),
        ("dihedral", Some(p)) => Ok(dihedral(parse_size(p, "dihedral")?)),
        _ => Err(Error::Input(format!("unknown group '{spec}'"))),
    }
}

/// Parses a shorthand group name.
pub fn parse(spec: &str) -> Result<FiniteGroup> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("product:") {
        let (a, b) = rest
            .split_once(',')
            .ok_or_else(|| Error::Input(format!("product needs two factors: '{spec}'")))?;
        return Ok(product(&parse_simple(a)?, &parse_simple(b)?));
    }
    parse_simple(spec)
}

/// Reads a group from JSON: a shorthand string, `{catalog, params}` or `{name, order, table}`.
pub fn from_json(v: &Value) -> Result<FiniteGroup> {
    if let Some(s) = v.as_str() {
        return parse(s);
    }
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Input("group must be a string or object".into()))?;
    if let Some(cat) = obj.get("catalog") {
        let cat = cat
            .as_str()
            .ok_or_else(|| Error::Input("catalog must be a string".into()))?;
        let params = obj
            .get("params")
            .and_then(Value::as_array)
            .cloned()
            .unwrap_or_default();
        let int_param = |what: &str| -> Result<usize> {
            params
                .first()
                .and_then(Value::as_u64)
                .filter(|&n| (1..=4096).contains(&n))
                .map(|n| n as usize)
                .ok_or_else(|| Error::Input(format!("{what} needs a positive integer parameter")))
        };
        return match cat {
            "cyclic" => Ok(cyclic(int_param("cyclic")?)),
            "dihedral" => Ok(dihedral(int_param("dihedral")?)),
            "klein" => Ok(klein()),
            "quaternion" => Ok(quaternion()),
            "trivial" => Ok(FiniteGroup::trivial()),
            "product" => {
                if params.len() != 2 {
                    return Err(Error::Input("product needs two factor groups".into()));
                }
                Ok(product(&from_json(&params[0])?, &from_json(&params[1])?))
            }
            other => Err(Error::Input(format!("unknown catalog '{other}'"))),
        };
    }
    let table: Vec<Vec<usize>> = serde_json::from_value(
        obj.get("table")
            .cloned()
            .ok_or_else(|| Error::Input("group object needs 'table' or 'catalog'".into()))?,
    )
    .map_err(|e| Error::Input(format!("bad table: {e}")))?;
    if let Some(order) = obj.get("order").and_then(Value::as_u64) {
        if order as usize != table.len() {
            return Err(Error::Input(format!(
                "order {order} does not match table size {}",
                table.len()
            )));
        }
    }
    let name = obj.get("name").and_then(Value::as_str).unwrap_or("table");
    FiniteGroup::from_table(name, table).map_err(|e| Error::Input(e.to_string()))
}

pub fn to_json(g: &FiniteGroup) -> Value {
    json!({ "name": g.label(), "order": g.order(), "table": g.table_rows() })
}

/// Resolves a subgroup name against a group built from the catalog.
///
/// Names: `trivial`, `whole`, `center`, `first`/`second` (factors of a
/// product, including `klein`), `rotations` (dihedral), `order:d` (the first
/// normal subgroup of order d), or an explicit index list `0,2`.
pub fn named_subgroup(g: &FiniteGroup, name: &str) -> Result<Subgroup> {
    let name = name.trim();
    let factor_sizes = || -> Result<(usize, usize)> {
        let label = g.label();
        if label == "klein" {
            return Ok((2, 2));
        }
        let rest = label
            .strip_prefix("product:")
            .ok_or_else(|| Error::Input(format!("'{name}' needs a product group")))?;
        let (_, b) = rest.split_once(',').unwrap_or((rest, ""));
        let b = parse(b).map_err(|_| Error::Input(format!("cannot read factors of '{label}'")))?;
        Ok((g.order() / b.order(), b.order()))
    };
    match name {
        "trivial" => Ok(Subgroup::trivial(g)),
        "whole" => Ok(Subgroup::whole(g)),
        "center" => Ok(g.center()),
        "first" => {
            let (a, b) = factor_sizes()?;
            Subgroup::new(g, (0..a).map(|i| i * b))
        }
        "second" => {
            let (_, b) = factor_sizes()?;
            Subgroup::new(g, 0..b)
        }
        "rotations" => {
            if !g.label().starts_with("dihedral:") {
                return Err(Error::Input("'rotations' needs a dihedral group".into()));
            }
            Subgroup::new(g, 0..g.order() / 2)
        }
        _ => {
            if let Some(d) = name.strip_prefix("order:") {
                let d = parse_size(d, "order")?;
                return subgroups(g)?
                    .into_iter()
                    .find(|h| h.order() == d && h.is_normal_in(g))
                    .ok_or_else(|| Error::Input(format!("no normal subgroup of order {d}")));
            }
            let idx: std::result::Result<Vec<usize>, _> =
                name.split(',').map(|s| s.trim().parse::<usize>()).collect();
            let idx = idx.map_err(|_| Error::Input(format!("unknown subgroup '{name}'")))?;
            Subgroup::new(g, idx).map_err(|e| Error::Input(e.to_string()))
        }
    }
}
