//! Independent brute-force oracles. Nothing here calls into the library's
//! algorithms; inputs and outputs are plain integers and rationals.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type R = Ratio<i64>;

pub fn r(n: i64) -> R {
    R::from_integer(n)
}

// ---------------------------------------------------------------------------
// Kostant partition function by exhaustive enumeration

/// Number of coefficient vectors `k ∈ [0, bound]^m` with `Σ k_r · root_r = θ`,
/// enumerated over the whole box.
pub fn kostant_box(theta: &[i64], roots: &[Vec<i64>], bound: i64) -> u64 {
    let m = roots.len();
    let mut k = vec![0i64; m];
    let mut count = 0;
    loop {
        let hit =
            (0..theta.len()).all(|i| (0..m).map(|j| k[j] * roots[j][i]).sum::<i64>() == theta[i]);
        if hit {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == m {
                return count;
            }
            k[pos] += 1;
            if k[pos] <= bound {
                break;
            }
            k[pos] = 0;
            pos += 1;
        }
    }
}

/// Exhaustive enumeration for roots with nonnegative coordinates, cutting a
/// branch once the remainder has a negative coordinate.
pub fn kostant_nonneg(theta: &[i64], roots: &[Vec<i64>]) -> u64 {
    fn go(k: usize, rest: &mut Vec<i64>, roots: &[Vec<i64>]) -> u64 {
        if rest.iter().any(|x| *x < 0) {
            return 0;
        }
        if k == roots.len() {
            return u64::from(rest.iter().all(|x| *x == 0));
        }
        let mut total = 0;
        let mut used = 0;
        loop {
            total += go(k + 1, rest, roots);
            for (x, y) in rest.iter_mut().zip(&roots[k]) {
                *x -= y;
            }
            used += 1;
            if rest.iter().any(|x| *x < 0) {
                break;
            }
        }
        for (x, y) in rest.iter_mut().zip(&roots[k]) {
            *x += used * y;
        }
        total
    }
    go(0, &mut theta.to_vec(), roots)
}

// ---------------------------------------------------------------------------
// Symmetric group characters as traces on Specht modules

fn exact_solve(cols: &[Vec<R>], rhs: &[R]) -> Vec<R> {
    // Gaussian elimination on the augmented matrix [cols | rhs].
    let rows = rhs.len();
    let ncol = cols.len();
    let mut a: Vec<Vec<R>> = (0..rows)
        .map(|i| {
            let mut row: Vec<R> = cols.iter().map(|c| c[i]).collect();
            row.push(rhs[i]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for c in 0..ncol {
        let Some(p) = (r0..rows).find(|i| !a[*i][c].is_zero()) else {
            continue;
        };
        a.swap(r0, p);
        let inv = a[r0][c].recip();
        for x in a[r0].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r0 && !a[i][c].is_zero() {
                let f = a[i][c];
                let pivot_row = a[r0].clone();
                for (x, v) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= f * v;
                }
            }
        }
        pivots.push(c);
        r0 += 1;
    }
    assert_eq!(pivots.len(), ncol, "polytabloids must be independent");
    for row in &a[r0..] {
        assert!(row[ncol].is_zero(), "vector outside the span");
    }
    let mut x = vec![R::zero(); ncol];
    for (i, c) in pivots.iter().enumerate() {
        x[*c] = a[i][ncol];
    }
    x
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// A tableau: cell list in row-major order and the entry in each cell.
struct Shape {
    cells: Vec<(usize, usize)>,
}

impl Shape {
    fn new(lam: &[usize]) -> Self {
        let mut cells = Vec::new();
        for (r, len) in lam.iter().enumerate() {
            for c in 0..*len {
                cells.push((r, c));
            }
        }
        Shape { cells }
    }

    fn is_standard(&self, t: &[usize]) -> bool {
        self.cells.iter().enumerate().all(|(i, (r, c))| {
            self.cells.iter().enumerate().all(|(j, (r2, c2))| {
                let after = (r2 == r && *c2 == c + 1) || (c2 == c && *r2 == r + 1);
                !after || t[j] > t[i]
            })
        })
    }
}

/// The tabloid of a tableau: row index of each entry.
fn tabloid(shape: &Shape, t: &[usize]) -> Vec<usize> {
    let mut row_of = vec![0; t.len()];
    for (cell, v) in shape.cells.iter().zip(t) {
        row_of[*v] = cell.0;
    }
    row_of
}

fn polytabloid(shape: &Shape, t: &[usize], index: &BTreeMap<Vec<usize>, usize>) -> Vec<R> {
    let n = t.len();
    let mut v = vec![R::zero(); index.len()];
    // column group of t, as permutations of entries
    let columns: BTreeSet<usize> = shape.cells.iter().map(|c| c.1).collect();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for col in columns {
        groups.push(
            shape
                .cells
                .iter()
                .zip(t)
                .filter(|(c, _)| c.1 == col)
                .map(|(_, v)| *v)
                .collect(),
        );
    }
    let mut acc: Vec<(Vec<usize>, i64)> = vec![((0..n).collect(), 1)];
    for g in &groups {
        let mut next = Vec::new();
        for (p, s) in &acc {
            for q in permutations(g.len()) {
                let mut p2 = p.clone();
                for (i, j) in q.iter().enumerate() {
                    p2[g[i]] = p[g[*j]];
                }
                next.push((p2, s * perm_sign(&q)));
            }
        }
        acc = next;
    }
    for (pi, s) in acc {
        let t2: Vec<usize> = t.iter().map(|x| pi[*x]).collect();
        v[index[&tabloid(shape, &t2)]] += r(s);
    }
    v
}

/// `χ^λ(σ)` for `σ` of cycle type `mu`, as the trace of `σ` on the Specht
/// module spanned by standard polytabloids.
pub fn specht_character(lam: &[usize], mu: &[usize]) -> i64 {
    let n: usize = lam.iter().sum();
    let shape = Shape::new(lam);
    let mut index = BTreeMap::new();
    let mut standard = Vec::new();
    for t in permutations(n) {
        let tb = tabloid(&shape, &t);
        let k = index.len();
        index.entry(tb).or_insert(k);
        if shape.is_standard(&t) {
            standard.push(t);
        }
    }
    // σ: consecutive cycles of the given lengths
    let mut sigma: Vec<usize> = (0..n).collect();
    let mut start = 0;
    for len in mu {
        for i in 0..*len {
            sigma[start + i] = start + (i + 1) % len;
        }
        start += len;
    }
    let basis: Vec<Vec<R>> = standard
        .iter()
        .map(|t| polytabloid(&shape, t, &index))
        .collect();
    let mut trace = R::zero();
    for (k, t) in standard.iter().enumerate() {
        let st: Vec<usize> = t.iter().map(|x| sigma[*x]).collect();
        let image = polytabloid(&shape, &st, &index);
        trace += exact_solve(&basis, &image)[k];
    }
    assert!(trace.is_integer());
    trace.to_integer()
}

pub fn partitions_of(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            go(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Rank-one truncated Verma module

/// `e·f^k v = c_k f^{k−1} v` in `Z(λ)`, from `e f = f e + h` by recursion.
pub fn e_coefficients(lambda: R, depth: usize) -> Vec<R> {
    let mut c = vec![R::zero(); depth + 1];
    for k in 1..=depth {
        // e f^k v = f (e f^{k−1} v) + h f^{k−1} v
        c[k] = c[k - 1] + lambda - r(2 * (k as i64 - 1));
    }
    c
}

/// Highest weights of the composition factors of `Z(λ)` found from the
/// singular vectors of the truncated module.
pub fn rank1_verma_factors(lambda: R, depth: usize) -> Vec<R> {
    let mut out = vec![lambda];
    let c = e_coefficients(lambda, depth);
    if let Some(k) = (1..=depth).find(|k| c[*k].is_zero()) {
        // the submodule generated by f^k v is the (simple) Verma of weight λ − 2k
        out.extend(rank1_verma_factors(lambda - r(2 * k as i64), depth - k));
    }
    out.sort();
    out
}

/// `dim L(λ)_{λ−2k}` from the nonvanishing of `e^k f^k v`.
pub fn rank1_simple_dims(lambda: R, depth: usize) -> Vec<i64> {
    let c = e_coefficients(lambda, depth);
    let mut prod = R::one();
    (0..=depth)
        .map(|k| {
            if k > 0 {
                prod *= c[k];
            }
            i64::from(!prod.is_zero())
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Γ = S₂ on sl₂ ⊕ sl₂: truncated modules with explicit swap action

/// A simple object over a weight: the weight (canonical member of its orbit)
/// and, when the weight is swap-fixed, the sign by which the swap acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct S2Simple {
    pub weight: (R, R),
    pub sign: Option<i64>,
}

fn canon(w: (R, R)) -> (R, R) {
    if w.0 <= w.1 {
        w
    } else {
        (w.1, w.0)
    }
}

/// Weight → (dimension, trace of the swap when the weight is swap-fixed).
pub type EqChar = BTreeMap<(R, R), (i64, i64)>;

/// Weights `γλ − (2a, 2b)` with `a + b ≤ depth`.
pub fn window(top: (R, R), depth: usize) -> BTreeSet<(R, R)> {
    let mut out = BTreeSet::new();
    for t in [top, (top.1, top.0)] {
        for a in 0..=depth as i64 {
            for b in 0..=(depth as i64 - a) {
                out.insert((t.0 - r(2 * a), t.1 - r(2 * b)));
            }
        }
    }
    out
}

fn in_window(w: &BTreeSet<(R, R)>, v: (R, R)) -> bool {
    w.contains(&v)
}

/// `e₁^p e₂^q f₁^p f₂^q v ≠ 0` in `Z_A(μ)`.
fn survives(mu: (R, R), p: usize, q: usize) -> bool {
    let c1 = e_coefficients(mu.0, p);
    let c2 = e_coefficients(mu.1, q);
    c1[1..].iter().chain(&c2[1..]).all(|x| !x.is_zero())
}

/// Equivariant character, restricted to `win`, of the Verma module
/// (`simple = false`) or simple module (`simple = true`) of `x`.
pub fn module_char(x: S2Simple, simple: bool, win: &BTreeSet<(R, R)>, depth: usize) -> EqChar {
    let mu = x.weight;
    let fixed = mu.0 == mu.1;
    let components: Vec<(R, R)> = if fixed {
        vec![mu]
    } else {
        vec![mu, (mu.1, mu.0)]
    };
    // basis vectors: (component index, p, q); weight = comp − (2p, 2q)
    let mut basis: Vec<(usize, usize, usize)> = Vec::new();
    let span = 2 * depth + 4;
    for (ci, comp) in components.iter().enumerate() {
        for p in 0..=span {
            for q in 0..=span {
                let w = (comp.0 - r(2 * p as i64), comp.1 - r(2 * q as i64));
                if in_window(win, w) && (!simple || survives(*comp, p, q)) {
                    basis.push((ci, p, q));
                }
            }
        }
    }
    let mut ch = EqChar::new();
    for &(ci, p, q) in &basis {
        let comp = components[ci];
        let w = (comp.0 - r(2 * p as i64), comp.1 - r(2 * q as i64));
        let entry = ch.entry(w).or_insert((0, 0));
        entry.0 += 1;
        // swap: f₁^p f₂^q v_comp ↦ f₁^q f₂^p v_{s·comp}, times the sign on a fixed top
        let (cj, p2, q2) = if fixed { (ci, q, p) } else { (1 - ci, q, p) };
        if (cj, p2, q2) == (ci, p, q) {
            entry.1 += if fixed {
                x.sign.expect("fixed weights carry a sign")
            } else {
                1
            };
        }
    }
    ch
}

/// Composition multiplicities `[Z(x) : V(x′)]` by peeling simple characters
/// off the truncated Verma character, highest weights first. Also returns
/// whether the remainder vanished on the whole window.
pub fn s2_verma_decomposition(x: S2Simple, depth: usize) -> (BTreeMap<S2Simple, u64>, bool) {
    let win = window(x.weight, depth);
    let mut rest = module_char(x, false, &win, depth);
    let mut order: Vec<(R, R)> = win.iter().copied().collect();
    order.sort_by(|a, b| (b.0 + b.1).cmp(&(a.0 + a.1)).then(a.cmp(b)));
    let mut out = BTreeMap::new();
    for w in order {
        if canon(w) != w {
            continue;
        }
        let (dim, tr) = rest.get(&w).copied().unwrap_or((0, 0));
        let found: Vec<(S2Simple, i64)> = if w.0 == w.1 {
            vec![
                (
                    S2Simple {
                        weight: w,
                        sign: Some(1),
                    },
                    (dim + tr) / 2,
                ),
                (
                    S2Simple {
                        weight: w,
                        sign: Some(-1),
                    },
                    (dim - tr) / 2,
                ),
            ]
        } else {
            vec![(
                S2Simple {
                    weight: w,
                    sign: None,
                },
                dim,
            )]
        };
        for (y, m) in found {
            if m == 0 {
                continue;
            }
            assert!(m > 0, "negative multiplicity while peeling");
            *out.entry(y).or_insert(0) += m as u64;
            for (v, (d, t)) in module_char(y, true, &win, depth) {
                let e = rest.entry(v).or_insert((0, 0));
                e.0 -= m * d;
                e.1 -= m * t;
            }
        }
    }
    let clean = rest.values().all(|(d, t)| *d == 0 && *t == 0);
    (out, clean)
}

/// Integer matrix product.
pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = a.first().map_or(0, Vec::len);
    (0..m)
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// Conversions to library values (used only to compare results)

pub fn to_q(x: R) -> skew_o::rational::Q {
    skew_o::rational::Q::new((*x.numer()).into(), (*x.denom()).into())
}

pub fn s2_to_library(x: S2Simple) -> skew_o::clifford::SimpleX {
    use skew_o::symgrp::{IrrepLabel, StabIrrep};
    use skew_o::weightlat::{GammaSpec, Weight};
    let gamma = GammaSpec::symmetric(2);
    let w = Weight::new(vec![to_q(x.weight.0), to_q(x.weight.1)]).unwrap();
    let labels: &[&str] = match x.sign {
        Some(1) => &["2"],
        Some(_) => &["1,1"],
        None => &["1", "1"],
    };
    let irrep = StabIrrep(
        labels
            .iter()
            .map(|l| IrrepLabel::parse(l).unwrap())
            .collect(),
    );
    skew_o::clifford::SimpleX::from_weight(&gamma, &w, &irrep).unwrap()
}
