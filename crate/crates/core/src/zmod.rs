//! Exact linear algebra over `Z/m`.
//!
//! Everything cohomological in this crate reduces to three primitives over
//! the ring `Z/m` (which need not be a field): the Howell form of a row
//! module, left kernels and left solves obtained from the Howell form of an
//! augmented matrix `[A | I]`, and a Smith form that exposes the invariant
//! factors of a quotient module together with generators for it.
//!
//! Vectors are dense `Vec<u64>` with entries reduced to `0..m`.

/// Largest supported modulus; keeps `a*b + c*d` inside `u64` for reduced operands.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Extended gcd over the integers: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Bezout coefficients for elimination: `(a, 1, 0)` whenever `a | b`, so that
/// an already-dividing pivot is left untouched.
fn bezout(a: i128, b: i128) -> (i128, i128, i128) {
    if a != 0 && b % a == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        xgcd(a, b)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[inline]
pub fn reduce(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

#[inline]
fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (a * b) % m
}

/// A unit `u` of `Z/m` with `u*a = gcd(a, m) (mod m)`.
pub fn normalizing_unit(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let a = a % m;
    if a == 0 {
        return 1;
    }
    let g = gcd(a, m);
    let (a1, m1) = (a / g, m / g);
    let (_, s, _) = xgcd(a1 as i128, m1 as i128);
    let u0 = reduce(s, m1.max(1));
    // Any lift of u0 mod m1 satisfies u*a = g; pick the least one that is a unit mod m.
    let mut u = if m1 == 1 { 1 } else { u0 };
    while gcd(u, m) != 1 {
        u += m1;
    }
    u % m
}

/// Multiplicative inverse of a unit of `Z/m`.
pub fn inverse(u: u64, m: u64) -> Option<u64> {
    let (g, s, _) = xgcd(u as i128, m as i128);
    (g == 1).then(|| reduce(s, m))
}

fn is_zero(v: &[u64]) -> bool {
    v.iter().all(|&x| x == 0)
}

fn axpy(dst: &mut [u64], k: u64, src: &[u64], m: u64) {
    if k == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = (*d + k * s) % m;
        }
    }
}

/// Replace `(p, r)` by the unimodular combination that puts `gcd` at `col`
/// in `p` and zero in `r`.
fn combine_rows(p: &mut [u64], r: &mut [u64], col: usize, m: u64) {
    let a = p[col] as i128;
    let b = r[col] as i128;
    let (g, s, t) = bezout(a, b);
    let (s, t) = (reduce(s, m), reduce(t, m));
    let nb = reduce(-(b / g), m);
    let na = reduce(a / g, m);
    for k in col..p.len() {
        let (x, y) = (p[k], r[k]);
        if x == 0 && y == 0 {
            continue;
        }
        p[k] = (s * x + t * y) % m;
        r[k] = (nb * x + na * y) % m;
    }
}

/// Howell normal form of a submodule of `(Z/m)^ncols`.
///
/// Rows are in echelon form, each pivot divides `m`, entries above a pivot
/// are reduced below it, and the Howell property holds, so reduction of a
/// vector against the rows yields a canonical coset representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Howell {
    modulus: u64,
    ncols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Howell {
    pub fn new(modulus: u64, ncols: usize, rows: Vec<Vec<u64>>) -> Self {
        assert!((1..=MAX_MODULUS).contains(&modulus), "modulus {modulus} out of range");
        let m = modulus;
        let mut out = Howell {
            modulus,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        };
        if m == 1 {
            return out;
        }
        let mut work: Vec<Vec<u64>> = rows
            .into_iter()
            .map(|r| {
                debug_assert_eq!(r.len(), ncols);
                r.into_iter().map(|x| x % m).collect::<Vec<_>>()
            })
            .filter(|r| !is_zero(r))
            .collect();
        for col in 0..ncols {
            if work.is_empty() {
                break;
            }
            let mut pivot: Option<Vec<u64>> = None;
            let mut rest = Vec::with_capacity(work.len());
            for mut r in work.drain(..) {
                if r[col] == 0 {
                    rest.push(r);
                    continue;
                }
                match pivot.as_mut() {
                    None => pivot = Some(r),
                    Some(p) => {
                        combine_rows(p, &mut r, col, m);
                        if !is_zero(&r) {
                            rest.push(r);
                        }
                    }
                }
            }
            work = rest;
            let Some(mut p) = pivot else { continue };
            let u = normalizing_unit(p[col], m);
            if u != 1 {
                for x in p[col..].iter_mut() {
                    *x = mulmod(*x, u, m);
                }
            }
            let g = p[col];
            if g != 1 {
                let ann = m / g;
                let extra: Vec<u64> = p.iter().map(|&x| mulmod(x, ann, m)).collect();
                if !is_zero(&extra) {
                    work.push(extra);
                }
            }
            for q in out.rows.iter_mut() {
                let k = q[col] / g;
                if k > 0 {
                    axpy(q, m - k, &p, m);
                }
            }
            out.rows.push(p);
            out.pivots.push(col);
        }
        out
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero_module(&self) -> bool {
        self.rows.is_empty()
    }

    /// Additive order of each row, i.e. `m / pivot`.
    pub fn row_orders(&self) -> Vec<u64> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .map(|(r, &c)| self.modulus / r[c])
            .collect()
    }

    /// Number of elements of the module, `None` on overflow.
    pub fn size(&self) -> Option<u128> {
        self.row_orders()
            .into_iter()
            .try_fold(1u128, |acc, o| acc.checked_mul(o as u128))
    }

    /// Canonical representative of `v` modulo the module.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let m = self.modulus;
        let mut v: Vec<u64> = v.iter().map(|&x| x % m).collect();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let k = v[c] / row[c];
            if k > 0 {
                axpy(&mut v, m - k, row, m);
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        is_zero(&self.reduce(v))
    }

    /// All elements of the module in a fixed order; `None` if more than `bound`.
    pub fn elements(&self, bound: u128) -> Option<Vec<Vec<u64>>> {
        let size = self.size()?;
        if size > bound {
            return None;
        }
        let m = self.modulus;
        let orders = self.row_orders();
        let mut out = Vec::with_capacity(size as usize);
        let mut coeffs = vec![0u64; orders.len()];
        loop {
            let mut v = vec![0u64; self.ncols];
            for (row, &c) in self.rows.iter().zip(&coeffs) {
                axpy(&mut v, c, row, m);
            }
            out.push(v);
            let mut i = 0;
            loop {
                if i == coeffs.len() {
                    return Some(out);
                }
                coeffs[i] += 1;
                if coeffs[i] < orders[i] {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }
}

/// Row `i` times row vector: computes `x * A` for `A` given as rows.
pub fn vec_mat(x: &[u64], rows: &[Vec<u64>], ncols: usize, m: u64) -> Vec<u64> {
    let mut out = vec![0u64; ncols];
    for (&c, r) in x.iter().zip(rows) {
        axpy(&mut out, c % m, r, m);
    }
    out
}

/// Howell form of `[A | I]`, the workhorse for kernels and solves of `x*A = t`.
#[derive(Debug, Clone)]
pub struct LeftSolver {
    modulus: u64,
    ncols: usize,
    nrows: usize,
    augmented: Howell,
    kernel: Howell,
}

impl LeftSolver {
    /// `rows` is the `nrows x ncols` matrix `A`.
    pub fn new(modulus: u64, ncols: usize, rows: &[Vec<u64>]) -> Self {
        let nrows = rows.len();
        let aug_rows: Vec<Vec<u64>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = Vec::with_capacity(ncols + nrows);
                v.extend(r.iter().map(|&x| x % modulus));
                v.resize(ncols + nrows, 0);
                v[ncols + i] = 1 % modulus;
                v
            })
            .collect();
        let augmented = Howell::new(modulus, ncols + nrows, aug_rows);
        let kernel_rows: Vec<Vec<u64>> = augmented
            .rows
            .iter()
            .zip(&augmented.pivots)
            .filter(|(_, &c)| c >= ncols)
            .map(|(r, _)| r[ncols..].to_vec())
            .collect();
        let kernel = Howell::new(modulus, nrows, kernel_rows);
        LeftSolver {
            modulus,
            ncols,
            nrows,
            augmented,
            kernel,
        }
    }

    /// The left kernel `{x : x*A = 0}` in Howell form.
    pub fn kernel(&self) -> &Howell {
        &self.kernel
    }

    /// The row span of `A` in Howell form.
    pub fn image(&self) -> Howell {
        let rows = self
            .augmented
            .rows
            .iter()
            .zip(&self.augmented.pivots)
            .filter(|(_, &c)| c < self.ncols)
            .map(|(r, _)| r[..self.ncols].to_vec())
            .collect();
        Howell::new(self.modulus, self.ncols, rows)
    }

    /// Canonical solution of `x*A = t`: the kernel-reduced representative.
    pub fn solve(&self, t: &[u64]) -> Option<Vec<u64>> {
        let m = self.modulus;
        let mut v = Vec::with_capacity(self.ncols + self.nrows);
        v.extend(t.iter().map(|&x| x % m));
        v.resize(self.ncols + self.nrows, 0);
        for (row, &c) in self.augmented.rows.iter().zip(&self.augmented.pivots) {
            if c >= self.ncols {
                break;
            }
            let k = v[c] / row[c];
            if k > 0 {
                axpy(&mut v, m - k, row, m);
            }
        }
        if !is_zero(&v[..self.ncols]) {
            return None;
        }
        let x: Vec<u64> = v[self.ncols..].iter().map(|&y| (m - y) % m).collect();
        Some(self.kernel.reduce(&x))
    }
}

/// Structure of a finitely generated `Z/m`-module presented as `(Z/m)^k / R`.
#[derive(Debug, Clone)]
pub struct QuotientStructure {
    /// Order of each cyclic summand, in divisibility order; summands of order 1 dropped.
    pub orders: Vec<u64>,
    /// Generator of each summand, as a coefficient vector in `(Z/m)^k`.
    pub generators: Vec<Vec<u64>>,
}

/// Smith form over `Z/m` of the relation matrix `relations` (rows in `(Z/m)^k`).
pub fn quotient_structure(modulus: u64, k: usize, relations: &[Vec<u64>]) -> QuotientStructure {
    let m = modulus;
    // only the row span matters; its Howell form has at most k rows
    let mut a: Vec<Vec<u64>> = Howell::new(m, k, relations.to_vec()).rows;
    let mut qinv: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            let mut v = vec![0u64; k];
            v[i] = 1 % m;
            v
        })
        .collect();
    let nrows = a.len();
    let mut diag: Vec<u64> = Vec::new();
    let mut t = 0usize;
    while t < nrows.min(k) {
        // pivot of least gcd with m
        let mut best: Option<(u64, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let g = gcd(x, m);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                    }
                    if g == 1 {
                        break;
                    }
                }
            }
            if best.is_some_and(|(bg, _, _)| bg == 1) {
                break;
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            qinv.swap(t, pj);
        }
        loop {
            loop {
                let mut changed = false;
                for i in t + 1..nrows {
                    if a[i][t] != 0 {
                        let (head, tail) = a.split_at_mut(i);
                        combine_rows_full(&mut head[t], &mut tail[0], t, m);
                        changed = true;
                    }
                }
                for j in t + 1..k {
                    if a[t][j] != 0 {
                        combine_cols(&mut a, &mut qinv, t, j, m);
                        changed = true;
                    }
                }
                if !changed
                    && (t + 1..nrows).all(|i| a[i][t] == 0)
                    && (t + 1..k).all(|j| a[t][j] == 0)
                {
                    break;
                }
            }
            let u = normalizing_unit(a[t][t], m);
            if u != 1 {
                for row in a.iter_mut() {
                    row[t] = mulmod(row[t], u, m);
                }
                let uinv = inverse(u, m).expect("normalizing unit");
                for x in qinv[t].iter_mut() {
                    *x = mulmod(*x, uinv, m);
                }
            }
            let g = a[t][t];
            let bad = (t + 1..nrows).find(|&i| a[i][t + 1..].iter().any(|&x| x % g != 0));
            match bad {
                Some(i) => {
                    let src = a[i].clone();
                    axpy(&mut a[t], 1, &src, m);
                }
                None => break,
            }
        }
        diag.push(a[t][t]);
        t += 1;
    }
    let mut orders = Vec::new();
    let mut generators = Vec::new();
    for (i, row) in qinv.into_iter().enumerate() {
        let order = if i < diag.len() { diag[i] } else { m };
        if order > 1 {
            orders.push(order);
            generators.push(row);
        }
    }
    QuotientStructure { orders, generators }
}

fn combine_rows_full(p: &mut [u64], r: &mut [u64], col: usize, m: u64) {
    // same as combine_rows but entries left of `col` may be nonzero
    let a = p[col] as i128;
    let b = r[col] as i128;
    let (g, s, t) = bezout(a, b);
    let (s, t) = (reduce(s, m), reduce(t, m));
    let nb = reduce(-(b / g), m);
    let na = reduce(a / g, m);
    for k in 0..p.len() {
        let (x, y) = (p[k], r[k]);
        if x == 0 && y == 0 {
            continue;
        }
        p[k] = (s * x + t * y) % m;
        r[k] = (nb * x + na * y) % m;
    }
}

fn combine_cols(a: &mut [Vec<u64>], qinv: &mut [Vec<u64>], t: usize, j: usize, m: u64) {
    let x = a[t][t] as i128;
    let y = a[t][j] as i128;
    let (g, s, tt) = bezout(x, y);
    let (s_, t_) = (reduce(s, m), reduce(tt, m));
    let ny = reduce(-(y / g), m);
    let nx = reduce(x / g, m);
    for row in a.iter_mut() {
        let (p, q) = (row[t], row[j]);
        if p == 0 && q == 0 {
            continue;
        }
        row[t] = (s_ * p + t_ * q) % m;
        row[j] = (ny * p + nx * q) % m;
    }
    // inverse of [[s, -y/g], [t, x/g]] applied on the left of Qinv
    let (yg, negt) = (reduce(y / g, m), reduce(-tt, m));
    let (rt, rj) = (qinv[t].clone(), qinv[j].clone());
    for c in 0..rt.len() {
        qinv[t][c] = (nx * rt[c] + yg * rj[c]) % m;
        qinv[j][c] = (negt * rt[c] + s_ * rj[c]) % m;
    }
}

/// Invariant factors `gcd(d_i, m)` greater than one of the matrix `rows` over `Z/m`.
///
/// Zero invariant factors (rank deficiency) are not reported.
pub fn invariant_factors(modulus: u64, ncols: usize, rows: &[Vec<u64>]) -> Vec<u64> {
    // A and its transpose share their invariant factors; work on the narrower side.
    let q = if rows.len() < ncols {
        let t: Vec<Vec<u64>> = (0..ncols).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        quotient_structure(modulus, rows.len(), &t)
    } else {
        quotient_structure(modulus, ncols, rows)
    };
    // columns without a pivot surface as summands of order m
    let mut out: Vec<u64> = q.orders.into_iter().filter(|&o| o != modulus).collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn span_brute(m: u64, ncols: usize, rows: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
        let mut set = BTreeSet::new();
        set.insert(vec![0u64; ncols]);
        loop {
            let mut next = set.clone();
            for v in &set {
                for r in rows {
                    let w: Vec<u64> = v.iter().zip(r).map(|(a, b)| (a + b) % m).collect();
                    next.insert(w);
                }
            }
            if next.len() == set.len() {
                return set;
            }
            set = next;
        }
    }

    #[test]
    fn xgcd_bezout() {
        for a in -20i128..20 {
            for b in -20i128..20 {
                for (g, s, t) in [xgcd(a, b), bezout(a, b)] {
                    assert_eq!(s * a + t * b, g);
                    assert!(g >= 0);
                }
                if a != 0 && b % a == 0 {
                    assert_eq!(bezout(a, b).2, 0);
                }
            }
        }
    }

    #[test]
    fn normalizing_unit_hits_gcd() {
        for m in 1..40u64 {
            for a in 0..m {
                let u = normalizing_unit(a, m);
                if m > 1 {
                    assert_eq!(gcd(u, m), 1, "a={a} m={m}");
                    assert_eq!(mulmod(u, a, m), gcd(a, m) % m, "a={a} m={m}");
                }
            }
        }
    }

    #[test]
    fn howell_matches_brute_span() {
        let cases: Vec<(u64, Vec<Vec<u64>>)> = vec![
            (4, vec![vec![2, 1], vec![0, 2]]),
            (8, vec![vec![4, 2, 6], vec![2, 0, 4], vec![6, 6, 2]]),
            (12, vec![vec![3, 4, 0], vec![0, 6, 9], vec![4, 2, 2]]),
            (9, vec![vec![3, 3], vec![0, 0]]),
            (16, vec![vec![8, 4, 2, 1]]),
        ];
        for (m, rows) in cases {
            let n = rows[0].len();
            let h = Howell::new(m, n, rows.clone());
            let brute = span_brute(m, n, &rows);
            let elems: BTreeSet<Vec<u64>> = h.elements(1 << 20).unwrap().into_iter().collect();
            assert_eq!(elems, brute, "m={m}");
            assert_eq!(h.size().unwrap() as usize, brute.len());
            // reduction is canonical on cosets
            let mut reps = BTreeSet::new();
            let mut all = vec![vec![0u64; n]];
            for _ in 0..n {
                all = all
                    .into_iter()
                    .flat_map(|v| {
                        (0..m).map(move |x| {
                            let mut w = v.clone();
                            w.push(x);
                            w
                        })
                    })
                    .collect();
            }
            for v in &all {
                let v: Vec<u64> = v[n..].to_vec();
                let r = h.reduce(&v);
                let diff: Vec<u64> = v.iter().zip(&r).map(|(a, b)| (a + m - b) % m).collect();
                assert!(brute.contains(&diff));
                reps.insert(r);
            }
            assert_eq!(reps.len() * brute.len(), (m as usize).pow(n as u32));
        }
    }

    #[test]
    fn left_solver_kernel_and_solve() {
        let m = 12;
        let a = vec![vec![2, 4, 6], vec![3, 0, 9], vec![1, 2, 3], vec![6, 6, 6]];
        let s = LeftSolver::new(m, 3, &a);
        for x in s.kernel().elements(1 << 16).unwrap() {
            assert!(vec_mat(&x, &a, 3, m).iter().all(|&v| v == 0));
        }
        // brute-force kernel size
        let mut count = 0;
        for x0 in 0..m {
            for x1 in 0..m {
                for x2 in 0..m {
                    for x3 in 0..m {
                        let x = [x0, x1, x2, x3];
                        if vec_mat(&x, &a, 3, m).iter().all(|&v| v == 0) {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(s.kernel().size().unwrap(), count);
        let t = vec_mat(&[5, 7, 1, 2], &a, 3, m);
        let x = s.solve(&t).unwrap();
        assert_eq!(vec_mat(&x, &a, 3, m), t);
        assert!(s.solve(&[1, 0, 0]).is_none());
    }

    #[test]
    fn quotient_structure_cyclic_pieces() {
        // (Z/12)^2 / <(2,0),(0,3)> = Z/2 x Z/3 = Z/6 presented as two factors
        let q = quotient_structure(12, 2, &[vec![2, 0], vec![0, 3]]);
        let mut o = q.orders.clone();
        o.sort();
        assert_eq!(o.iter().product::<u64>(), 6);
        // (Z/8)^2 / <(2,4)> = Z/2 x Z/8
        let q = quotient_structure(8, 2, &[vec![2, 4]]);
        assert_eq!(q.orders, vec![2, 8]);
        // generator orders are exact
        for (g, &o) in q.generators.iter().zip(&q.orders) {
            let rel = Howell::new(8, 2, vec![vec![2, 4]]);
            for k in 1..o {
                let v: Vec<u64> = g.iter().map(|&x| x * k % 8).collect();
                assert!(!rel.contains(&v));
            }
            let v: Vec<u64> = g.iter().map(|&x| x * o % 8).collect();
            assert!(rel.contains(&v));
        }
    }

    #[test]
    fn invariant_factors_match_transpose_and_size() {
        let mut seed = 7u64;
        let mut next = |m: u64| {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 33) % m
        };
        for &m in &[4u64, 8, 9, 12, 36] {
            for (r, c) in [(2usize, 5usize), (5, 2), (3, 3), (4, 6)] {
                let a: Vec<Vec<u64>> = (0..r).map(|_| (0..c).map(|_| next(m)).collect()).collect();
                let at: Vec<Vec<u64>> = (0..c).map(|j| a.iter().map(|row| row[j]).collect()).collect();
                let direct = quotient_structure(m, c, &a);
                let mut d: Vec<u64> = direct.orders.iter().copied().filter(|&o| o != m).collect();
                d.sort();
                assert_eq!(invariant_factors(m, c, &a), d);
                assert_eq!(invariant_factors(m, r, &at), d);
                let span = Howell::new(m, c, a.clone()).size().unwrap();
                let coker: u128 = direct.orders.iter().map(|&o| o as u128).product();
                assert_eq!(span * coker, (m as u128).pow(c as u32));
            }
        }
    }
}
