//! Category O for `U(sl₂)^{⊗n}` without group: Verma composition factors,
//! linkage sets, and characters written in the Verma basis.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{as_integer, dot_flip, is_nonneg_integer, q, Q};
use crate::weightlat::{leq, Weight};

/// A formal character `Σ c_μ · ch Z(μ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterVB {
    rank: usize,
    terms: BTreeMap<Weight, i64>,
}

impl CharacterVB {
    pub fn zero(rank: usize) -> Self {
        CharacterVB {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn verma(lambda: &Weight) -> Self {
        let mut c = CharacterVB::zero(lambda.rank());
        c.add_term(lambda, 1);
        c
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn coef(&self, mu: &Weight) -> i64 {
        self.terms.get(mu).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, mu: &Weight, k: i64) {
        let e = self.terms.entry(mu.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.terms.remove(mu);
        }
    }

    pub fn add_scaled(&mut self, other: &CharacterVB, k: i64) {
        for (mu, c) in &other.terms {
            self.add_term(mu, k * c);
        }
    }

    /// Character of the outer tensor product: Verma characters multiply to
    /// the Verma character of the concatenated weight.
    pub fn tensor(&self, other: &CharacterVB) -> CharacterVB {
        let mut out = CharacterVB::zero(self.rank + other.rank);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(&Weight::concat(&[a.clone(), b.clone()]), x * y);
            }
        }
        out
    }

    /// `dim M_ν = Σ_μ c_μ · P(μ − ν)`. The positive roots `2εᵢ` are
    /// linearly independent, so `P(θ) ∈ {0, 1}` and equals 1 exactly when
    /// `ν ≤ μ`.
    pub fn weight_dim(&self, nu: &Weight) -> Result<i64> {
        nu.check_rank(self.rank)?;
        let mut total = 0;
        for (mu, c) in &self.terms {
            if leq(nu, mu)? {
                total += c;
            }
        }
        Ok(total)
    }

    /// Sum of all weight dimensions when only finitely many are nonzero;
    /// `None` if some weight at the given depth below the support is nonzero
    /// at the boundary (the character is not visibly finite).
    pub fn total_dim(&self, depth: usize) -> Result<Option<i64>> {
        let mut seen = BTreeSet::new();
        let mut total = 0;
        for top in self.terms.keys() {
            for nu in weights_below(top, depth) {
                if !seen.insert(nu.clone()) {
                    continue;
                }
                let d = self.weight_dim(&nu)?;
                let boundary = top.sub(&nu).sum() == q(2 * depth as i64);
                if boundary && d != 0 {
                    return Ok(None);
                }
                total += d;
            }
        }
        Ok(Some(total))
    }

    pub fn to_json(&self) -> CharacterJson {
        CharacterJson {
            basis: "verma".into(),
            terms: self
                .terms
                .iter()
                .map(|(hw, coef)| CharacterTerm {
                    hw: hw.clone(),
                    coef: *coef,
                })
                .collect(),
        }
    }

    pub fn from_json(j: &CharacterJson, rank: usize) -> Result<Self> {
        if j.basis != "verma" {
            return Err(Error::InvalidArgument(format!(
                "unknown character basis {:?}",
                j.basis
            )));
        }
        let mut c = CharacterVB::zero(rank);
        for t in &j.terms {
            t.hw.check_rank(rank)?;
            c.add_term(&t.hw, t.coef);
        }
        Ok(c)
    }
}

impl fmt::Display for CharacterVB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(mu, c)| match c {
                1 => format!("Z({mu})"),
                -1 => format!("-Z({mu})"),
                _ => format!("{c}·Z({mu})"),
            })
            .collect();
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub basis: String,
    pub terms: Vec<CharacterTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTerm {
    pub hw: Weight,
    pub coef: i64,
}

/// Weights `top − Σ kᵢαᵢ` with `Σ kᵢ ≤ depth`, highest first.
pub fn weights_below(top: &Weight, depth: usize) -> Vec<Weight> {
    let n = top.rank();
    let mut out = Vec::new();
    let mut ks = vec![0usize; n];
    fn go(i: usize, left: usize, ks: &mut Vec<usize>, top: &Weight, out: &mut Vec<Weight>) {
        if i == ks.len() {
            let coords = top
                .coords()
                .iter()
                .zip(ks.iter())
                .map(|(c, k)| c - q(2 * *k as i64))
                .collect();
            out.push(Weight::new(coords).expect("nonempty"));
            return;
        }
        for k in 0..=left {
            ks[i] = k;
            go(i + 1, left - k, ks, top, out);
        }
        ks[i] = 0;
    }
    if n > 0 {
        go(0, depth, &mut ks, top, &mut out);
    }
    out.sort_by(|a, b| b.sum().cmp(&a.sum()).then(b.cmp(a)));
    out
}

/// Dimension of a simple module: finite or not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(d) => write!(f, "{d}"),
            Dim::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dim::Finite(d) => s.serialize_u64(*d),
            Dim::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Composition factors of the rank-one Verma module `Z(λ)`.
pub fn verma_factors_sl2(lambda: &Q) -> Vec<(Q, u64)> {
    if is_nonneg_integer(lambda) {
        vec![(lambda.clone(), 1), (dot_flip(lambda), 1)]
    } else {
        vec![(lambda.clone(), 1)]
    }
}

/// Composition factors of `Z_A(λ)`: products of the rank-one lists.
pub fn verma_factors_a(lambda: &Weight) -> BTreeMap<Weight, u64> {
    let mut acc: Vec<(Vec<Q>, u64)> = vec![(Vec::new(), 1)];
    for c in lambda.coords() {
        let f = verma_factors_sl2(c);
        acc = acc
            .into_iter()
            .flat_map(|(prefix, m)| {
                f.iter().map(move |(t, k)| {
                    let mut v = prefix.clone();
                    v.push(t.clone());
                    (v, m * k)
                })
            })
            .collect();
    }
    let mut out = BTreeMap::new();
    for (v, m) in acc {
        *out.entry(Weight::new(v).expect("rank ≥ 1")).or_insert(0) += m;
    }
    out
}

/// Rank-one linkage class: equivalence closure of "is a composition factor
/// of the Verma module of".
fn rank_one_class(t: &Q) -> BTreeSet<Q> {
    let mut class = BTreeSet::from([t.clone()]);
    loop {
        let mut next = class.clone();
        for s in &class {
            for (u, _) in verma_factors_sl2(s) {
                next.insert(u);
            }
            // reverse edges: s is a factor of Z(−s−2) when −s−2 ∈ ℤ≥0
            let r = dot_flip(s);
            if verma_factors_sl2(&r).iter().any(|(u, _)| u == s) {
                next.insert(r);
            }
        }
        if next == class {
            return class;
        }
        class = next;
    }
}

fn product_set(factors: &[BTreeSet<Q>]) -> BTreeSet<Weight> {
    let mut acc: Vec<Vec<Q>> = vec![Vec::new()];
    for f in factors {
        acc = acc
            .into_iter()
            .flat_map(|p| {
                f.iter().map(move |t| {
                    let mut v = p.clone();
                    v.push(t.clone());
                    v
                })
            })
            .collect();
    }
    acc.into_iter()
        .map(|v| Weight::new(v).expect("rank ≥ 1"))
        .collect()
}

/// Linkage sets `S^m_A(λ)` for `m ∈ {1,2,3,4}`.
pub fn s_sets_a(lambda: &Weight, m: u8) -> Result<BTreeSet<Weight>> {
    match m {
        2 | 3 => Ok(product_set(
            &lambda
                .coords()
                .iter()
                .map(rank_one_class)
                .collect::<Vec<_>>(),
        )),
        1 => {
            let s3 = s_sets_a(lambda, 3)?;
            let mut out = BTreeSet::new();
            for mu in s3 {
                if leq(&mu, lambda)? {
                    out.insert(mu);
                }
            }
            Ok(out)
        }
        4 => Ok(product_set(
            &lambda
                .coords()
                .iter()
                .map(|t| BTreeSet::from([t.clone(), dot_flip(t)]))
                .collect::<Vec<_>>(),
        )),
        _ => Err(Error::InvalidArgument(format!(
            "linkage set index {m} not in 1..=4"
        ))),
    }
}

pub fn ch_verma(lambda: &Weight) -> CharacterVB {
    CharacterVB::verma(lambda)
}

/// Inclusion–exclusion over flips at dominant integral coordinates.
pub fn ch_simple_a(lambda: &Weight) -> CharacterVB {
    let slots = lambda.dominant_integral_slots();
    let mut c = CharacterVB::zero(lambda.rank());
    for mask in 0u64..(1 << slots.len()) {
        let t: Vec<usize> = (0..slots.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| slots[b])
            .collect();
        let sign = if t.len().is_multiple_of(2) { 1 } else { -1 };
        c.add_term(&lambda.flip_at(t), sign);
    }
    c
}

pub fn dim_simple_a(lambda: &Weight) -> Result<Dim> {
    if !lambda.is_dominant_integral() {
        return Ok(Dim::Infinite);
    }
    let mut d: u64 = 1;
    for c in lambda.coords() {
        let k = as_integer(c).ok_or_else(|| Error::SizeCap(format!("coordinate {c} too large")))?
            as u64
            + 1;
        d = d
            .checked_mul(k)
            .ok_or_else(|| Error::SizeCap("dimension overflows u64".into()))?;
    }
    Ok(Dim::Finite(d))
}
