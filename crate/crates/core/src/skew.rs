//! Category O over `Γ ⋉ U(sl₂)^{⊗n}`: Verma multiplicities `[Z(x):V(x′)]`
//! by Clifford theory over flip subsets, linkage sets and blocks, the
//! decomposition/duality/Cartan matrices, and characters.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cato_a::{ch_simple_a, dim_simple_a, s_sets_a, CharacterVB, Dim};
use crate::clifford::{classify_x_over, concat_x, duality_f, CObject, SimpleX, SimpleXJson};
use crate::error::{Error, Result};
use crate::linalg::{is_symmetric, mat_mul, transpose};
use crate::symgrp::{irreps_of, restriction_inner};
use crate::weightlat::{
    canonical_rep, leq, orbit, stabilizer, GammaSpec, StabFactor, Stabilizer, Weight,
};

/// Outcome of comparing two simple objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum POrder {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// `x < x′` iff some orbit members satisfy `μ < μ′`.
pub fn partial_order_x(x: &SimpleX, x2: &SimpleX, gamma: &GammaSpec) -> Result<POrder> {
    if x == x2 {
        return Ok(POrder::Equal);
    }
    if x.orbit_rep == x2.orbit_rep {
        return Ok(POrder::Incomparable);
    }
    let a = orbit(&x.orbit_rep, gamma);
    let b = orbit(&x2.orbit_rep, gamma);
    for mu in &a {
        for nu in &b {
            if leq(mu, nu)? {
                return Ok(POrder::Less);
            }
            if leq(nu, mu)? {
                return Ok(POrder::Greater);
            }
        }
    }
    Ok(POrder::Incomparable)
}

/// Key identifying the orbit of a subset `t` under a stabilizer `g`.
fn subset_orbit_key(g: &Stabilizer, t: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    g.factors
        .iter()
        .map(|f| match f {
            StabFactor::Sym(c) => vec![c.iter().filter(|i| t.contains(i)).count()],
            StabFactor::Cyclic {
                start,
                width,
                order,
            } => {
                let step = width / order;
                (0..*order)
                    .map(|k| {
                        let mut v: Vec<usize> = t
                            .iter()
                            .filter(|i| (*start..start + width).contains(i))
                            .map(|i| (i - start + k * step) % width)
                            .collect();
                        v.sort_unstable();
                        v
                    })
                    .min()
                    .unwrap_or_default()
            }
        })
        .collect()
}

/// Composition factors of the Verma module `Z(x)` with multiplicities.
///
/// For each `Γ_λ`-orbit of subsets `T ⊆ {i : λᵢ ∈ ℤ≥0}` the flipped weight
/// `ν = flip_T(λ)` carries the `Γ_ν`-module `Ind_K^{Γ_ν} Res_K N` with
/// `K = Stab_{Γ_λ}(T)`; its irreducible constituents are the factors.
pub fn verma_decompose_skew(x: &SimpleX, gamma: &GammaSpec) -> Result<CObject> {
    let lambda = &x.orbit_rep;
    let slots = lambda.dominant_integral_slots();
    if slots.len() > 16 {
        return Err(Error::SizeCap(format!("{} integral slots", slots.len())));
    }
    let mut seen = BTreeSet::new();
    let mut out = CObject::new();
    for mask in 0u32..(1 << slots.len()) {
        let t: BTreeSet<usize> = (0..slots.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| slots[b])
            .collect();
        if !seen.insert(subset_orbit_key(&x.stab, &t)) {
            continue;
        }
        let nu = lambda.flip_at(t.iter().copied());
        let k = x.stab.fixing_set(&t);
        let stab_nu = stabilizer(&nu, gamma);
        for n2 in irreps_of(&stab_nu) {
            let m = restriction_inner(&k, &x.stab, &x.irrep, &stab_nu, &n2)?;
            if m > 0 {
                *out.entry(SimpleX::from_weight(gamma, &nu, &n2)?)
                    .or_default() += m;
            }
        }
    }
    Ok(out)
}

/// All simple objects over `Γ·S³_A(λ)`: the finite universe containing
/// every linkage class through `λ`.
fn candidate_universe(lambda: &Weight, gamma: &GammaSpec) -> Result<Vec<SimpleX>> {
    let reps: BTreeSet<Weight> = s_sets_a(lambda, 3)?
        .iter()
        .map(|mu| canonical_rep(mu, gamma).0)
        .collect();
    let mut out = Vec::new();
    for r in reps {
        out.extend(classify_x_over(&r, gamma)?);
    }
    Ok(out)
}

/// Equivalence closure from `starts` over subquotient edges, optionally also
/// over duality edges.
fn closure(starts: &[SimpleX], gamma: &GammaSpec, with_duality: bool) -> Result<BTreeSet<SimpleX>> {
    let Some(first) = starts.first() else {
        return Ok(BTreeSet::new());
    };
    let universe = candidate_universe(&first.orbit_rep, gamma)?;
    let mut adj: BTreeMap<SimpleX, BTreeSet<SimpleX>> = universe
        .iter()
        .map(|u| (u.clone(), BTreeSet::new()))
        .collect();
    for u in &universe {
        for v in verma_decompose_skew(u, gamma)?.into_keys() {
            adj.entry(u.clone()).or_default().insert(v.clone());
            adj.entry(v).or_default().insert(u.clone());
        }
        if with_duality {
            let v = duality_f(u);
            adj.entry(u.clone()).or_default().insert(v.clone());
            adj.entry(v).or_default().insert(u.clone());
        }
    }
    let mut seen: BTreeSet<SimpleX> = starts.iter().cloned().collect();
    let mut queue: VecDeque<SimpleX> = starts.iter().cloned().collect();
    while let Some(u) = queue.pop_front() {
        for v in adj.get(&u).into_iter().flatten() {
            if seen.insert(v.clone()) {
                queue.push_back(v.clone());
            }
        }
    }
    Ok(seen)
}

/// `S³(x)`: linkage class under subquotients and duality.
pub fn s3_skew(x: &SimpleX, gamma: &GammaSpec) -> Result<BTreeSet<SimpleX>> {
    closure(std::slice::from_ref(x), gamma, true)
}

/// `S′(x)`: linkage class under subquotients only.
pub fn s_prime(x: &SimpleX, gamma: &GammaSpec) -> Result<BTreeSet<SimpleX>> {
    closure(std::slice::from_ref(x), gamma, false)
}

/// `S_Γ(λ) = ⋃_{wt(x)=λ} S³(x)`.
pub fn s3_union_over_weight(lambda: &Weight, gamma: &GammaSpec) -> Result<BTreeSet<SimpleX>> {
    let mut out = BTreeSet::new();
    for x in classify_x_over(lambda, gamma)? {
        if !out.contains(&x) {
            out.extend(s3_skew(&x, gamma)?);
        }
    }
    Ok(out)
}

/// `S⁴(x) = wt⁻¹(Γ·S⁴_A(λ_x))`: equal central characters.
pub fn s4_skew(x: &SimpleX, gamma: &GammaSpec) -> Result<BTreeSet<SimpleX>> {
    let reps: BTreeSet<Weight> = s_sets_a(&x.orbit_rep, 4)?
        .iter()
        .map(|mu| canonical_rep(mu, gamma).0)
        .collect();
    let mut out = BTreeSet::new();
    for r in reps {
        out.extend(classify_x_over(&r, gamma)?);
    }
    Ok(out)
}

/// Matrix order: higher weight level first, ties by canonical ordering.
pub fn block_order(xs: impl IntoIterator<Item = SimpleX>) -> Vec<SimpleX> {
    let mut v: Vec<SimpleX> = xs.into_iter().collect();
    v.sort_by(|a, b| {
        b.orbit_rep
            .sum()
            .cmp(&a.orbit_rep.sum())
            .then_with(|| a.cmp(b))
    });
    v
}

/// One block with its decomposition, duality and Cartan matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockData {
    pub order: Vec<SimpleX>,
    pub d: Vec<Vec<i64>>,
    pub f: Vec<Vec<i64>>,
    pub c: Vec<Vec<i64>>,
    pub cprime: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub order: Vec<SimpleXJson>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<i64>>,
    #[serde(rename = "F")]
    pub f: Vec<Vec<i64>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<i64>>,
    #[serde(rename = "Cprime")]
    pub cprime: Vec<Vec<i64>>,
    #[serde(rename = "symmetric_Cprime")]
    pub symmetric_cprime: bool,
}

impl BlockData {
    pub fn to_json(&self) -> BlockJson {
        BlockJson {
            order: self.order.iter().map(SimpleX::to_json).collect(),
            d: self.d.clone(),
            f: self.f.clone(),
            c: self.c.clone(),
            cprime: self.cprime.clone(),
            symmetric_cprime: is_symmetric(&self.cprime),
        }
    }

    pub fn from_json(j: &BlockJson, gamma: &GammaSpec) -> Result<Self> {
        Ok(BlockData {
            order: j
                .order
                .iter()
                .map(|x| SimpleX::from_json(x, gamma))
                .collect::<Result<_>>()?,
            d: j.d.clone(),
            f: j.f.clone(),
            c: j.c.clone(),
            cprime: j.cprime.clone(),
        })
    }

    pub fn index_of(&self, x: &SimpleX) -> Option<usize> {
        self.order.iter().position(|y| y == x)
    }

    /// Linkage graph: solid edges `xᵢ → xⱼ` for `D[i][j] > 0`, dashed
    /// undirected edges for duality pairs.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph block {\n");
        for (i, x) in self.order.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{x}\"];");
        }
        for (i, row) in self.d.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i != j && *v > 0 {
                    let label = if *v > 1 {
                        format!(" [label=\"{v}\"]")
                    } else {
                        String::new()
                    };
                    let _ = writeln!(s, "  n{i} -> n{j}{label};");
                }
            }
        }
        for (i, row) in self.f.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i < j && *v == 1 {
                    let _ = writeln!(s, "  n{i} -> n{j} [style=dashed, dir=none];");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Block of `x` with `D = [Z(xᵢ):V(xⱼ)]`, `F`, `C = F·Dᵀ·F·D`, `C′ = C·F`.
pub fn block_matrices(x: &SimpleX, gamma: &GammaSpec) -> Result<BlockData> {
    let order = block_order(s3_skew(x, gamma)?);
    let k = order.len();
    let pos: BTreeMap<&SimpleX, usize> = order.iter().enumerate().map(|(i, y)| (y, i)).collect();
    let mut d = vec![vec![0i64; k]; k];
    let mut f = vec![vec![0i64; k]; k];
    for (i, y) in order.iter().enumerate() {
        for (z, m) in verma_decompose_skew(y, gamma)? {
            let j = *pos.get(&z).ok_or_else(|| {
                Error::Consistency(format!("factor {z} of Z({y}) outside the block"))
            })?;
            d[i][j] = m as i64;
        }
        let j = *pos
            .get(&duality_f(y))
            .ok_or_else(|| Error::Consistency(format!("dual of {y} outside the block")))?;
        f[i][j] = 1;
    }
    for (i, row) in d.iter().enumerate() {
        if row[i] != 1 || row[..i].iter().any(|v| *v != 0) {
            return Err(Error::Consistency(
                "decomposition matrix is not unitriangular".into(),
            ));
        }
    }
    if mat_mul(&f, &f) != crate::linalg::identity(k) {
        return Err(Error::Consistency(
            "duality matrix is not an involution".into(),
        ));
    }
    let ft = transpose(&d);
    let c = mat_mul(&mat_mul(&mat_mul(&f, &ft), &f), &d);
    let cprime = mat_mul(&c, &f);
    if !is_symmetric(&cprime) {
        return Err(Error::Consistency(
            "modified Cartan matrix is not symmetric".into(),
        ));
    }
    Ok(BlockData {
        order,
        d,
        f,
        c,
        cprime,
    })
}

/// `ch Z(x) = Σ_{μ ∈ λ_x} dim N · ch Z_A(μ)`.
pub fn ch_verma_skew(x: &SimpleX, gamma: &GammaSpec) -> CharacterVB {
    let mut c = CharacterVB::zero(gamma.rank());
    for mu in orbit(&x.orbit_rep, gamma) {
        c.add_term(&mu, x.irrep.dim() as i64);
    }
    c
}

/// `ch V(x) = Σ_{μ ∈ λ_x} dim N · ch V_A(μ)`.
pub fn ch_simple_skew(x: &SimpleX, gamma: &GammaSpec) -> CharacterVB {
    let mut c = CharacterVB::zero(gamma.rank());
    for mu in orbit(&x.orbit_rep, gamma) {
        c.add_scaled(&ch_simple_a(&mu), x.irrep.dim() as i64);
    }
    c
}

/// `dim V(x) = dim M_x · dim V_A(λ_x)`.
pub fn dim_simple_skew(x: &SimpleX, gamma: &GammaSpec) -> Result<Dim> {
    Ok(match dim_simple_a(&x.orbit_rep)? {
        Dim::Finite(d) => Dim::Finite(
            d.checked_mul(x.dim_m(gamma))
                .ok_or_else(|| Error::SizeCap("dimension overflows u64".into()))?,
        ),
        Dim::Infinite => Dim::Infinite,
    })
}

/// The simple objects over a weight in the four equivalent setups: per-block
/// weights, per-block simples, the concatenated weight, and the product of
/// per-block simples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourSetups {
    pub block_weights: Vec<Weight>,
    pub block_simples: Vec<Vec<SimpleXJson>>,
    pub weight: Weight,
    pub simples: Vec<SimpleXJson>,
}

pub fn simples_over_four_setups(gamma: &GammaSpec, lambdas: &[Weight]) -> Result<FourSetups> {
    let parts = gamma.split();
    if parts.len() != lambdas.len() {
        return Err(Error::InvalidArgument(format!(
            "{} block weights for {} blocks",
            lambdas.len(),
            parts.len()
        )));
    }
    let mut per_block = Vec::new();
    for (g, l) in parts.iter().zip(lambdas) {
        per_block.push(classify_x_over(l, g)?);
    }
    let weight = Weight::concat(lambdas);
    let direct = classify_x_over(&weight, gamma)?;
    let mut product: Vec<SimpleX> = cartesian(&per_block)
        .iter()
        .map(|xs| concat_x(xs))
        .collect();
    product.sort();
    if product != direct {
        return Err(Error::Consistency(
            "product of per-block simples differs from direct classification".into(),
        ));
    }
    Ok(FourSetups {
        block_weights: lambdas.to_vec(),
        block_simples: per_block
            .iter()
            .map(|xs| xs.iter().map(SimpleX::to_json).collect())
            .collect(),
        weight,
        simples: product.iter().map(SimpleX::to_json).collect(),
    })
}

fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    lists.iter().fold(vec![Vec::new()], |acc, l| {
        acc.into_iter()
            .flat_map(|p| {
                l.iter().map(move |x| {
                    let mut v = p.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect()
    })
}

/// Verification of the product description of linkage classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    /// `F(S′ᵢ(xᵢ)) = S′ᵢ(F(xᵢ))` for every block.
    pub hypothesis_holds: bool,
    /// `×ⱼ S³ⱼ(xⱼ) = ⋃_ε S³(F^ε(x))`.
    pub cover_equal: bool,
    /// Classes of ε (modulo the diagonal) contributing elements outside
    /// `S³(x)`.
    pub nonzero_eps_needed: Vec<Vec<u8>>,
    /// `S′(x) ⊂ ×ⱼ S′ⱼ(xⱼ) ⊂ S³(x) ⊂ ×ⱼ S³ⱼ(xⱼ)`.
    pub chain_holds: bool,
    pub sizes: CoverSizes,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverSizes {
    pub s_prime: usize,
    pub product_s_prime: usize,
    pub s3: usize,
    pub product_s3: usize,
    pub eps_union: usize,
}

impl CoverReport {
    pub fn ok(&self) -> bool {
        !self.hypothesis_holds || (self.cover_equal && self.chain_holds)
    }
}

fn product_set(parts: &[BTreeSet<SimpleX>]) -> BTreeSet<SimpleX> {
    let lists: Vec<Vec<SimpleX>> = parts.iter().map(|s| s.iter().cloned().collect()).collect();
    cartesian(&lists)
        .into_iter()
        .map(|xs| concat_x(&xs))
        .collect()
}

pub fn s3_product_cover(gamma: &GammaSpec, xs: &[SimpleX]) -> Result<CoverReport> {
    let parts = gamma.split();
    if parts.len() != xs.len() {
        return Err(Error::InvalidArgument(format!(
            "{} simples for {} blocks",
            xs.len(),
            parts.len()
        )));
    }
    let mut hypothesis_holds = true;
    let mut s3_parts = Vec::new();
    let mut sp_parts = Vec::new();
    for (g, xi) in parts.iter().zip(xs) {
        let sp = s_prime(xi, g)?;
        let dual_of_sp: BTreeSet<SimpleX> = sp.iter().map(duality_f).collect();
        if dual_of_sp != s_prime(&duality_f(xi), g)? {
            hypothesis_holds = false;
        }
        sp_parts.push(sp);
        s3_parts.push(s3_skew(xi, g)?);
    }
    let x = concat_x(xs);
    let s3 = s3_skew(&x, gamma)?;
    let sp = s_prime(&x, gamma)?;
    let prod_s3 = product_set(&s3_parts);
    let prod_sp = product_set(&sp_parts);

    let b = xs.len();
    let mut union = BTreeSet::new();
    let mut nonzero_eps_needed = Vec::new();
    // ε ranges over (ℤ/2)^b modulo the diagonal: fix the last entry to 0
    for mask in 0u32..(1 << (b - 1)) {
        let eps: Vec<u8> = (0..b)
            .map(|j| u8::from(j + 1 < b && mask >> j & 1 == 1))
            .collect();
        let twisted: Vec<SimpleX> = xs
            .iter()
            .zip(&eps)
            .map(|(xi, e)| if *e == 1 { duality_f(xi) } else { xi.clone() })
            .collect();
        let class = s3_skew(&concat_x(&twisted), gamma)?;
        if mask != 0 && !class.is_subset(&s3) {
            nonzero_eps_needed.push(eps);
        }
        union.extend(class);
    }
    let chain_holds = sp.is_subset(&prod_sp) && prod_sp.is_subset(&s3) && s3.is_subset(&prod_s3);
    let sizes = CoverSizes {
        s_prime: sp.len(),
        product_s_prime: prod_sp.len(),
        s3: s3.len(),
        product_s3: prod_s3.len(),
        eps_union: union.len(),
    };
    Ok(CoverReport {
        hypothesis_holds,
        cover_equal: union == prod_s3,
        nonzero_eps_needed,
        chain_holds,
        sizes,
    })
}
