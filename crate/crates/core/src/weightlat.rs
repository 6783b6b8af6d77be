//! Weights of `sl₂^{⊕n}`, the permutation groups Γ acting on them, the dot
//! action of `S_n ≀ (ℤ/2)^n`, orbits, stabilizers and the Kostant partition
//! function.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{dot_flip, fmt_q, is_even_integer, parse_q, q, Q};

/// A weight: one exact rational per `sl₂` factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Q>);

impl Weight {
    pub fn new(coords: Vec<Q>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("weight must have rank >= 1".into()));
        }
        Ok(Weight(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|c| q(*c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![Q::zero(); n])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn coord(&self, i: usize) -> &Q {
        &self.0[i]
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut coords = Vec::new();
        let mut offset = 0;
        for piece in s.split(',') {
            coords.push(parse_q(piece, offset)?);
            offset += piece.len() + 1;
        }
        Weight::new(coords)
    }

    pub fn check_rank(&self, n: usize) -> Result<()> {
        if self.rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                got: self.rank(),
            });
        }
        Ok(())
    }

    pub fn concat(parts: &[Weight]) -> Weight {
        Weight(parts.iter().flat_map(|w| w.0.iter().cloned()).collect())
    }

    pub fn slice(&self, start: usize, len: usize) -> Weight {
        Weight(self.0[start..start + len].to_vec())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn sum(&self) -> Q {
        self.0.iter().sum()
    }

    /// Applies the dot reflection `t ↦ -t-2` at every coordinate in `set`.
    pub fn flip_at(&self, set: impl IntoIterator<Item = usize>) -> Weight {
        let mut out = self.clone();
        for i in set {
            out.0[i] = dot_flip(&out.0[i]);
        }
        out
    }

    /// Coordinates `i` with `λᵢ ∈ ℤ≥0`.
    pub fn dominant_integral_slots(&self) -> Vec<usize> {
        (0..self.rank())
            .filter(|i| crate::rational::is_nonneg_integer(&self.0[*i]))
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.dominant_integral_slots().len() == self.rank()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(fmt_q).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_strings().join(","))
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let coords = v
            .iter()
            .map(|s| parse_q(s, 0))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Weight::new(coords).map_err(serde::de::Error::custom)
    }
}

/// A vector in the root lattice coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootVector(pub Vec<Q>);

impl RootVector {
    /// `αᵢ` for `sl₂^{⊕n}`: 2 in slot `i`.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![Q::zero(); n];
        v[i] = q(2);
        RootVector(v)
    }

    pub fn simple_roots(n: usize) -> Vec<RootVector> {
        (0..n).map(|i| RootVector::simple(n, i)).collect()
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RootVector(v.iter().map(|x| q(*x)).collect())
    }
}

/// `μ ≤ λ` iff `λ - μ ∈ ℤ≥0 Δ`, i.e. every difference is an even
/// nonnegative integer.
pub fn leq(mu: &Weight, lambda: &Weight) -> Result<bool> {
    mu.check_rank(lambda.rank())?;
    Ok(mu.0.iter().zip(&lambda.0).all(|(m, l)| {
        let d = l - m;
        !d.is_negative() && is_even_integer(&d)
    }))
}

/// Strict version of [`leq`].
pub fn lt(mu: &Weight, lambda: &Weight) -> Result<bool> {
    Ok(mu != lambda && leq(mu, lambda)?)
}

/// A permutation of `{0..n}`, stored as the image list `images[i] = σ(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidArgument(format!(
                    "not a permutation: {images:?}"
                )));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// Transposition of (0-based) `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Perm::identity(n);
        p.0.swap(i, j);
        p
    }

    /// The cycle `c[0] → c[1] → … → c[0]`.
    pub fn cycle(n: usize, c: &[usize]) -> Self {
        let mut p = Perm::identity(n);
        for k in 0..c.len() {
            p.0[c[k]] = c[(k + 1) % c.len()];
        }
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// Coordinate action: `(σλ)_{σ(i)} = λ_i`.
    pub fn act(&self, lambda: &Weight) -> Weight {
        let mut out = lambda.0.clone();
        for (i, c) in lambda.0.iter().enumerate() {
            out[self.0[i]] = c.clone();
        }
        Weight(out)
    }

    pub fn act_set(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        set.iter().map(|&i| self.0[i]).collect()
    }

    /// Cycle notation with 1-based labels; `id` for the identity.
    pub fn cycle_string(&self) -> String {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = vec![];
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push((i + 1).to_string());
                i = self.0[i];
            }
            out.push_str(&format!("({})", cyc.join(" ")));
        }
        if out.is_empty() {
            "id".into()
        } else {
            out
        }
    }

    /// Inverse of [`Perm::cycle_string`].
    pub fn parse_cycles(s: &str, n: usize) -> Result<Perm> {
        let t = s.trim();
        if t == "id" || t.is_empty() {
            return Ok(Perm::identity(n));
        }
        let mut p = Perm::identity(n);
        let mut rest = t;
        let mut pos = 0;
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::parse(pos, "'('", rest));
            };
            let Some(end) = body.find(')') else {
                return Err(Error::parse(pos, "')'", "end of input"));
            };
            let labels = body[..end]
                .split_whitespace()
                .map(|x| {
                    x.parse::<usize>()
                        .ok()
                        .filter(|v| (1..=n).contains(v))
                        .map(|v| v - 1)
                        .ok_or_else(|| Error::parse(pos, format!("label in 1..={n}"), x))
                })
                .collect::<Result<Vec<_>>>()?;
            p = Perm::cycle(n, &labels).compose(&p);
            pos += end + 2;
            rest = body[end + 1..].trim_start();
        }
        Ok(p)
    }
}

/// One direct factor of Γ acting on consecutive coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockSpec {
    /// Young subgroup `S_{a} × S_{b} × …` on `a + b + …` coordinates.
    Young(Vec<usize>),
    /// Cyclic group generated by the `m`-cycle on `m` coordinates.
    Cyclic(usize),
}

impl BlockSpec {
    pub fn width(&self) -> usize {
        match self {
            BlockSpec::Young(s) => s.iter().sum(),
            BlockSpec::Cyclic(m) => *m,
        }
    }

    pub fn order(&self) -> u64 {
        match self {
            BlockSpec::Young(s) => s.iter().map(|&k| factorial(k)).product(),
            BlockSpec::Cyclic(m) => *m as u64,
        }
    }
}

pub fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Γ as an ordered product of Young and cyclic blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaSpec {
    blocks: Vec<BlockSpec>,
}

impl GammaSpec {
    pub fn new(blocks: Vec<BlockSpec>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidGamma("at least one block required".into()));
        }
        for b in &blocks {
            match b {
                BlockSpec::Young(s) if s.is_empty() || s.contains(&0) => {
                    return Err(Error::InvalidGamma(format!("bad Young sizes {s:?}")));
                }
                BlockSpec::Cyclic(0) => {
                    return Err(Error::InvalidGamma("cyclic block of width 0".into()));
                }
                _ => {}
            }
        }
        Ok(GammaSpec { blocks })
    }

    pub fn trivial(n: usize) -> Self {
        GammaSpec {
            blocks: vec![BlockSpec::Young(vec![1; n])],
        }
    }

    pub fn symmetric(n: usize) -> Self {
        GammaSpec {
            blocks: vec![BlockSpec::Young(vec![n])],
        }
    }

    pub fn cyclic(m: usize) -> Self {
        GammaSpec {
            blocks: vec![BlockSpec::Cyclic(m)],
        }
    }

    /// Parses `S:2,1;C:3;1:2`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for piece in s.split(';') {
            let lead = piece.len() - piece.trim_start().len();
            let t = piece.trim();
            let at = offset + lead;
            let (kind, body) = t
                .split_once(':')
                .ok_or_else(|| Error::parse(at, "block of the form S:.., C:m or 1:m", t))?;
            let nums = body
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|v| *v > 0)
                        .ok_or_else(|| Error::parse(at + kind.len() + 1, "positive integer", x))
                })
                .collect::<Result<Vec<_>>>()?;
            let block = match kind.trim() {
                "S" => BlockSpec::Young(nums),
                "C" if nums.len() == 1 => BlockSpec::Cyclic(nums[0]),
                "1" if nums.len() == 1 => BlockSpec::Young(vec![1; nums[0]]),
                other => {
                    return Err(Error::parse(at, "block kind S, C or 1", other));
                }
            };
            blocks.push(block);
            offset += piece.len() + 1;
        }
        GammaSpec::new(blocks)
    }

    pub fn blocks(&self) -> &[BlockSpec] {
        &self.blocks
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(BlockSpec::width).sum()
    }

    pub fn order(&self) -> u64 {
        self.blocks.iter().map(BlockSpec::order).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// `(start, width)` of every block.
    pub fn block_ranges(&self) -> Vec<(usize, usize)> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|b| {
                let r = (start, b.width());
                start += b.width();
                r
            })
            .collect()
    }

    /// Single-block specs, one per block, for the per-factor setups.
    pub fn split(&self) -> Vec<GammaSpec> {
        self.blocks
            .iter()
            .map(|b| GammaSpec {
                blocks: vec![b.clone()],
            })
            .collect()
    }

    pub fn concat(parts: &[GammaSpec]) -> GammaSpec {
        GammaSpec {
            blocks: parts
                .iter()
                .flat_map(|g| g.blocks.iter().cloned())
                .collect(),
        }
    }

    /// Coordinate ranges of every Young part (the symmetric-group factors).
    pub fn young_parts(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for ((start, _), b) in self.block_ranges().into_iter().zip(&self.blocks) {
            if let BlockSpec::Young(sizes) = b {
                let mut s = start;
                for &k in sizes {
                    out.push((s, k));
                    s += k;
                }
            }
        }
        out
    }

    /// Generating set: adjacent transpositions in Young parts, the rotation
    /// of each cyclic block.
    pub fn generators(&self) -> Vec<Perm> {
        let n = self.rank();
        let mut gens = Vec::new();
        for (s, k) in self.young_parts() {
            for i in s..s + k - 1 {
                gens.push(Perm::transposition(n, i, i + 1));
            }
        }
        for ((start, m), b) in self.block_ranges().into_iter().zip(&self.blocks) {
            if matches!(b, BlockSpec::Cyclic(_)) && m > 1 {
                gens.push(rotation(n, start, m, 1));
            }
        }
        gens
    }

    /// All elements, sorted.
    pub fn elements(&self) -> Vec<Perm> {
        let n = self.rank();
        let mut seen: BTreeSet<Perm> = BTreeSet::new();
        let mut queue = VecDeque::new();
        let id = Perm::identity(n);
        seen.insert(id.clone());
        queue.push_back(id);
        let gens = self.generators();
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                let np = g.compose(&p);
                if seen.insert(np.clone()) {
                    queue.push_back(np);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.len() != self.rank() {
            return false;
        }
        for ((start, m), b) in self.block_ranges().into_iter().zip(&self.blocks) {
            match b {
                BlockSpec::Young(_) => {}
                BlockSpec::Cyclic(_) => {
                    let shift = (p.image(start) + m - start) % m;
                    if (0..m).any(|i| p.image(start + i) != start + (i + shift) % m) {
                        return false;
                    }
                }
            }
        }
        for (s, k) in self.young_parts() {
            if (s..s + k).any(|i| !(s..s + k).contains(&p.image(i))) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for GammaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| match b {
                BlockSpec::Young(s) if s.iter().all(|&k| k == 1) => format!("1:{}", s.len()),
                BlockSpec::Young(s) => format!(
                    "S:{}",
                    s.iter()
                        .map(|k| k.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ),
                BlockSpec::Cyclic(m) => format!("C:{m}"),
            })
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Rotation by `shift` of the block `[start, start+m)` inside rank `n`.
pub fn rotation(n: usize, start: usize, m: usize, shift: usize) -> Perm {
    let mut p = Perm::identity(n);
    for i in 0..m {
        p.0[start + i] = start + (i + shift) % m;
    }
    p
}

/// `γ·λ`, checking that `γ ∈ Γ`.
pub fn gamma_act(g: &Perm, lambda: &Weight, gamma: &GammaSpec) -> Result<Weight> {
    lambda.check_rank(gamma.rank())?;
    if !gamma.contains(g) {
        return Err(Error::NotInGroup(g.cycle_string()));
    }
    Ok(g.act(lambda))
}

/// An element `(σ, w)` of `S_n ≀ (ℤ/2)^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    pub perm: Perm,
    pub flips: Vec<bool>,
}

impl SignedPermutation {
    pub fn new(perm: Perm, flips: Vec<bool>) -> Result<Self> {
        if perm.len() != flips.len() {
            return Err(Error::RankMismatch {
                expected: perm.len(),
                got: flips.len(),
            });
        }
        Ok(SignedPermutation { perm, flips })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: Perm::identity(n),
            flips: vec![false; n],
        }
    }

    /// `(σ,w)(σ',w') = (σσ', σ'⁻¹(w)·w')`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        let n = self.flips.len();
        let flips = (0..n)
            .map(|j| self.flips[other.perm.image(j)] ^ other.flips[j])
            .collect();
        SignedPermutation {
            perm: self.perm.compose(&other.perm),
            flips,
        }
    }

    /// Flip the marked coordinates (`t ↦ -t-2`), then permute.
    pub fn dot_act(&self, lambda: &Weight) -> Result<Weight> {
        lambda.check_rank(self.flips.len())?;
        let flipped = lambda.flip_at((0..self.flips.len()).filter(|i| self.flips[*i]));
        Ok(self.perm.act(&flipped))
    }
}

/// One structural factor of a stabilizer subgroup of Γ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StabFactor {
    /// Full symmetric group on these coordinates (sorted).
    Sym(Vec<usize>),
    /// The order-`order` subgroup of rotations of block `[start, start+width)`.
    Cyclic {
        start: usize,
        width: usize,
        order: usize,
    },
}

impl StabFactor {
    pub fn order(&self) -> u64 {
        match self {
            StabFactor::Sym(c) => factorial(c.len()),
            StabFactor::Cyclic { order, .. } => *order as u64,
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            StabFactor::Sym(c) => format!("S:{}", c.len()),
            StabFactor::Cyclic { order, .. } => format!("C:{order}"),
        }
    }
}

/// A stabilizer-type subgroup of Γ: direct product of its factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Stabilizer {
    pub factors: Vec<StabFactor>,
}

impl Stabilizer {
    pub fn order(&self) -> u64 {
        self.factors.iter().map(StabFactor::order).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// `S:2|S:1|C:3` style descriptor.
    pub fn descriptor(&self) -> String {
        self.factors
            .iter()
            .map(StabFactor::descriptor)
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Subgroup fixing `set` setwise.
    pub fn fixing_set(&self, set: &BTreeSet<usize>) -> Stabilizer {
        let mut factors = Vec::new();
        for f in &self.factors {
            match f {
                StabFactor::Sym(coords) => {
                    let (inside, outside): (Vec<usize>, Vec<usize>) =
                        coords.iter().partition(|c| set.contains(c));
                    for part in [inside, outside] {
                        if !part.is_empty() {
                            factors.push(StabFactor::Sym(part));
                        }
                    }
                }
                StabFactor::Cyclic {
                    start,
                    width,
                    order,
                } => {
                    let step = width / order;
                    let local: BTreeSet<usize> = set
                        .iter()
                        .filter(|c| (*start..start + width).contains(c))
                        .map(|c| c - start)
                        .collect();
                    let period = (1..=*width)
                        .filter(|p| width % p == 0 && p % step == 0)
                        .find(|p| {
                            local
                                .iter()
                                .map(|i| (i + p) % width)
                                .collect::<BTreeSet<_>>()
                                == local
                        })
                        .unwrap_or(*width);
                    factors.push(StabFactor::Cyclic {
                        start: *start,
                        width: *width,
                        order: width / period,
                    });
                }
            }
        }
        factors.sort_by_key(factor_sort_key);
        Stabilizer { factors }
    }

    /// Structural containment `self ⊆ sup`.
    pub fn is_subgroup_of(&self, sup: &Stabilizer) -> bool {
        self.factors.iter().all(|f| match f {
            StabFactor::Sym(c) if c.len() == 1 => true,
            StabFactor::Sym(c) => sup.factors.iter().any(|g| match g {
                StabFactor::Sym(d) => c.iter().all(|x| d.contains(x)),
                _ => false,
            }),
            StabFactor::Cyclic {
                start,
                width,
                order,
            } => sup.factors.iter().any(|g| match g {
                StabFactor::Cyclic {
                    start: s2,
                    width: w2,
                    order: o2,
                } => s2 == start && w2 == width && o2 % order == 0,
                _ => false,
            }),
        })
    }

    /// Conjugate by a group element: `γ K γ⁻¹`.
    pub fn conjugate(&self, g: &Perm) -> Stabilizer {
        let mut factors: Vec<StabFactor> = self
            .factors
            .iter()
            .map(|f| match f {
                StabFactor::Sym(c) => {
                    let mut d: Vec<usize> = c.iter().map(|&i| g.image(i)).collect();
                    d.sort_unstable();
                    StabFactor::Sym(d)
                }
                other => other.clone(),
            })
            .collect();
        factors.sort_by_key(factor_sort_key);
        Stabilizer { factors }
    }
}

fn factor_sort_key(f: &StabFactor) -> (usize, usize) {
    match f {
        StabFactor::Sym(c) => (c[0], 0),
        StabFactor::Cyclic { start, .. } => (*start, 1),
    }
}

/// Stabilizer of `lambda` in Γ, structurally.
pub fn stabilizer(lambda: &Weight, gamma: &GammaSpec) -> Stabilizer {
    let mut factors = Vec::new();
    for ((start, m), b) in gamma.block_ranges().into_iter().zip(gamma.blocks()) {
        match b {
            BlockSpec::Young(sizes) => {
                let mut s = start;
                for &k in sizes {
                    let mut groups: Vec<(Q, Vec<usize>)> = Vec::new();
                    for i in s..s + k {
                        match groups.iter_mut().find(|(v, _)| v == lambda.coord(i)) {
                            Some((_, g)) => g.push(i),
                            None => groups.push((lambda.coord(i).clone(), vec![i])),
                        }
                    }
                    factors.extend(groups.into_iter().map(|(_, g)| StabFactor::Sym(g)));
                    s += k;
                }
            }
            BlockSpec::Cyclic(_) => {
                let period = (1..=m)
                    .filter(|p| m % p == 0)
                    .find(|p| {
                        (0..m).all(|i| lambda.coord(start + i) == lambda.coord(start + (i + p) % m))
                    })
                    .unwrap_or(m);
                factors.push(StabFactor::Cyclic {
                    start,
                    width: m,
                    order: m / period,
                });
            }
        }
    }
    factors.sort_by_key(factor_sort_key);
    Stabilizer { factors }
}

/// Lexicographically minimal element of the Γ-orbit, with a `γ` such that
/// `γ·lambda` equals it.
pub fn canonical_rep(lambda: &Weight, gamma: &GammaSpec) -> (Weight, Perm) {
    let n = lambda.rank();
    let mut images: Vec<usize> = (0..n).collect();
    for ((start, m), b) in gamma.block_ranges().into_iter().zip(gamma.blocks()) {
        match b {
            BlockSpec::Young(sizes) => {
                let mut s = start;
                for &k in sizes {
                    let mut idx: Vec<usize> = (s..s + k).collect();
                    idx.sort_by(|a, b| lambda.coord(*a).cmp(lambda.coord(*b)).then(a.cmp(b)));
                    for (pos, &i) in idx.iter().enumerate() {
                        images[i] = s + pos;
                    }
                    s += k;
                }
            }
            BlockSpec::Cyclic(_) => {
                let rotated = |shift: usize| -> Vec<Q> {
                    let mut v = vec![Q::zero(); m];
                    for i in 0..m {
                        v[(i + shift) % m] = lambda.coord(start + i).clone();
                    }
                    v
                };
                let best = (0..m)
                    .min_by(|a, b| rotated(*a).cmp(&rotated(*b)).then(a.cmp(b)))
                    .unwrap_or(0);
                for i in 0..m {
                    images[start + i] = start + (i + best) % m;
                }
            }
        }
    }
    let g = Perm(images);
    (g.act(lambda), g)
}

/// Γ-orbit in lexicographic order.
pub fn orbit(lambda: &Weight, gamma: &GammaSpec) -> Vec<Weight> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(lambda.clone());
    queue.push_back(lambda.clone());
    let gens = gamma.generators();
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let v = g.act(&w);
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn orbit_and_stabilizer(
    lambda: &Weight,
    gamma: &GammaSpec,
) -> Result<(Vec<Weight>, Stabilizer)> {
    lambda.check_rank(gamma.rank())?;
    Ok((orbit(lambda, gamma), stabilizer(lambda, gamma)))
}

/// Memoized Kostant partition function for a fixed pointed root multiset.
/// Roots and the pointing functional are rescaled to integers once, so the
/// recursion runs on machine integers.
pub struct KostantCounter {
    roots: Vec<Vec<i64>>,
    /// Common denominator of the root coordinates.
    scale: BigInt,
    functional: Vec<i64>,
    /// `sign_bounds[k][i] = (all roots from k on have coordinate i ≥ 0,
    /// all have coordinate i ≤ 0)`, used to cut infeasible branches.
    sign_bounds: Vec<Vec<(bool, bool)>>,
    memo: HashMap<(usize, Vec<i64>), u64>,
}

fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn to_i64(x: &BigInt) -> Result<i64> {
    i64::try_from(x).map_err(|_| {
        Error::SizeCap(format!(
            "coordinate {x} too large for the partition counter"
        ))
    })
}

impl KostantCounter {
    pub fn new(roots: &[RootVector]) -> Result<Self> {
        let Some(first) = roots.first() else {
            return Err(Error::InvalidArgument("empty root set".into()));
        };
        let n = first.0.len();
        if roots.iter().any(|r| r.0.len() != n) {
            return Err(Error::InvalidArgument("roots of different ranks".into()));
        }
        if roots.iter().any(|r| r.0.iter().all(Zero::is_zero)) {
            return Err(Error::InvalidArgument("zero root".into()));
        }
        let rows: Vec<Vec<Q>> = roots.iter().map(|r| r.0.clone()).collect();
        let functional = pointed_functional(&rows).ok_or(Error::NotPointed)?;
        let scale = common_denominator(rows.iter().flatten());
        let int_rows: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| to_i64(&(x * &scale).to_integer()))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let fscale = common_denominator(&functional);
        let int_functional: Vec<i64> = functional
            .iter()
            .map(|x| to_i64(&(x * &fscale).to_integer()))
            .collect::<Result<_>>()?;
        let sign_bounds = (0..=int_rows.len())
            .map(|k| {
                (0..n)
                    .map(|i| {
                        let tail = &int_rows[k..];
                        (
                            tail.iter().all(|r| r[i] >= 0),
                            tail.iter().all(|r| r[i] <= 0),
                        )
                    })
                    .collect()
            })
            .collect();
        Ok(KostantCounter {
            roots: int_rows,
            scale,
            functional: int_functional,
            sign_bounds,
            memo: HashMap::new(),
        })
    }

    pub fn count(&mut self, theta: &[Q]) -> Result<u64> {
        if theta.len() != self.functional.len() {
            return Err(Error::RankMismatch {
                expected: self.functional.len(),
                got: theta.len(),
            });
        }
        let mut scaled = Vec::with_capacity(theta.len());
        for t in theta {
            let x = t * &self.scale;
            if !x.is_integer() {
                // outside the lattice spanned by the roots' denominators
                return Ok(0);
            }
            scaled.push(to_i64(&x.to_integer())?);
        }
        Ok(self.count_from(0, scaled))
    }

    fn count_from(&mut self, k: usize, theta: Vec<i64>) -> u64 {
        if k == self.roots.len() {
            return u64::from(theta.iter().all(|x| *x == 0));
        }
        let height = idot(&self.functional, &theta);
        if height < 0 {
            return 0;
        }
        let infeasible = theta
            .iter()
            .zip(&self.sign_bounds[k])
            .any(|(t, (nonneg, nonpos))| (*nonneg && *t < 0) || (*nonpos && *t > 0));
        if infeasible {
            return 0;
        }
        let key = (k, theta);
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        let root = self.roots[k].clone();
        let step = idot(&self.functional, &root);
        let mut total = 0u64;
        let mut cur = key.1.clone();
        for _ in 0..=height / step {
            total += self.count_from(k + 1, cur.clone());
            for (c, r) in cur.iter_mut().zip(&root) {
                *c -= r;
            }
            // further steps only move a coordinate away from what the
            // remaining roots can reach
            let hopeless = cur.iter().zip(&root).zip(&self.sign_bounds[k + 1]).any(
                |((c, r), (nonneg, nonpos))| {
                    (*nonneg && *r > 0 && *c < 0) || (*nonpos && *r < 0 && *c > 0)
                },
            );
            if hopeless {
                break;
            }
        }
        self.memo.insert(key, total);
        total
    }
}

fn idot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Number of ways to write `theta` as a nonnegative integer combination of
/// `roots`.
pub fn kostant_p(theta: &RootVector, roots: &[RootVector]) -> Result<u64> {
    KostantCounter::new(roots)?.count(&theta.0)
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A functional `φ` with `φ(r) ≥ 1` for every row, found by Fourier–Motzkin
/// elimination; `None` when the rows are not in an open half-space.
pub fn pointed_functional(rows: &[Vec<Q>]) -> Option<Vec<Q>> {
    let n = rows.first()?.len();
    // constraint: a·φ ≥ b
    let mut systems: Vec<Vec<(Vec<Q>, Q)>> = Vec::with_capacity(n + 1);
    systems.push(rows.iter().map(|r| (r.clone(), q(1))).collect());
    for var in (0..n).rev() {
        let cur = systems.last().unwrap();
        let mut next = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for (a, b) in cur {
            if a[var].is_positive() {
                pos.push((a, b));
            } else if a[var].is_negative() {
                neg.push((a, b));
            } else {
                next.push((a.clone(), b.clone()));
            }
        }
        for (ap, bp) in &pos {
            for (an, bn) in &neg {
                let sp = &ap[var];
                let sn = -&an[var];
                let a: Vec<Q> = ap
                    .iter()
                    .zip(an.iter())
                    .map(|(x, y)| x / sp + y / &sn)
                    .collect();
                let b = *bp / sp + *bn / &sn;
                next.push((a, b));
            }
        }
        next.sort();
        next.dedup();
        systems.push(next);
    }
    // systems[n] has no variables left
    if systems[n].iter().any(|(_, b)| b.is_positive()) {
        return None;
    }
    let mut phi = vec![Q::zero(); n];
    for var in 0..n {
        let sys = &systems[n - 1 - var];
        let mut lower: Option<Q> = None;
        let mut upper: Option<Q> = None;
        for (a, b) in sys {
            let rest: Q = (0..var).map(|j| &a[j] * &phi[j]).sum();
            let coef = &a[var];
            if coef.is_zero() {
                continue;
            }
            let bound = (b - rest) / coef;
            if coef.is_positive() {
                lower = Some(lower.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                upper = Some(upper.map_or(bound.clone(), |u| u.min(bound)));
            }
        }
        phi[var] = lower.or(upper).unwrap_or_else(Q::zero);
    }
    debug_assert!(rows.iter().all(|r| dot(r, &phi) >= q(1)));
    Some(phi)
}
