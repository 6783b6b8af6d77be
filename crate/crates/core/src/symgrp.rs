//! Characters of symmetric groups (Murnaghan–Nakayama, hook lengths), of the
//! Young and cyclic stabilizer subgroups built from them, and the
//! induction/restriction multiplicities used by the Clifford classification.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weightlat::{factorial, StabFactor, Stabilizer};

/// Weakly decreasing list of positive parts. The empty partition labels the
/// unique irrep of the trivial group `S₀`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

pub type CycleType = Partition;

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidIrrep(format!("zero part in {parts:?}")));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn trivial(n: usize) -> Self {
        if n == 0 {
            Partition(vec![])
        } else {
            Partition(vec![n])
        }
    }

    pub fn sign(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidIrrep(format!("bad partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }

    /// Multiplicities `m_i` of part `i`.
    fn part_counts(&self) -> Vec<usize> {
        let mut m = vec![0; self.size() + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }

    /// Size of the conjugacy class of `S_n` with this cycle type.
    pub fn class_size(&self) -> u64 {
        let m = self.part_counts();
        let z: u64 = m
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &mi)| (i as u64).pow(mi as u32) * factorial(mi))
            .product();
        factorial(self.size()) / z
    }

    /// Union of cycle types (disjoint product of permutations).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// Irrep order: larger partitions (lexicographically) first, so the trivial
/// representation leads.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Partitions of `n`, trivial first (reverse lexicographic).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Hook-length formula.
pub fn dim_irrep(lam: &Partition) -> u64 {
    let n = lam.size();
    let parts = lam.parts();
    let mut hooks: u64 = 1;
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = parts[i + 1..].iter().filter(|&&r| r > j).count();
            hooks *= (arm + leg + 1) as u64;
        }
    }
    factorial(n) / hooks
}

/// `χ^λ(μ)` by Murnaghan–Nakayama on beta-sets.
pub fn char_value(lam: &Partition, mu: &CycleType) -> Result<i64> {
    if lam.size() != mu.size() {
        return Err(Error::SizeMismatch(lam.size(), mu.size()));
    }
    let len = lam.parts().len();
    let beta: BTreeSet<usize> = lam
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    Ok(mn(&beta, mu.parts()))
}

fn mn(beta: &BTreeSet<usize>, cycles: &[usize]) -> i64 {
    let Some((&r, rest)) = cycles.split_first() else {
        return 1;
    };
    let mut total = 0;
    for &b in beta {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.range(b - r + 1..b).count();
        let mut next = beta.clone();
        next.remove(&b);
        next.insert(b - r);
        let sign = if between.is_multiple_of(2) { 1 } else { -1 };
        total += sign * mn(&next, rest);
    }
    total
}

/// Full character table of `S_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTable {
    pub n: usize,
    /// Irrep labels, trivial first.
    pub partitions: Vec<Partition>,
    /// Cycle types, identity class first.
    pub classes: Vec<Partition>,
    pub values: Vec<Vec<i64>>,
}

pub const DEFAULT_TABLE_CAP: usize = 8;

impl CharTable {
    pub fn compute(n: usize) -> Result<Self> {
        let partitions = partitions(n);
        let mut classes = partitions.clone();
        classes.reverse();
        let values = partitions
            .iter()
            .map(|l| {
                classes
                    .iter()
                    .map(|c| char_value(l, c))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharTable {
            n,
            partitions,
            classes,
            values,
        })
    }

    /// Checks the identity column against hook lengths and exact row and
    /// column orthogonality.
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| {
            Err(Error::Consistency(format!(
                "character table n={}: {m}",
                self.n
            )))
        };
        let expect = partitions(self.n);
        let mut expect_classes = expect.clone();
        expect_classes.reverse();
        if self.partitions != expect || self.classes != expect_classes {
            return fail("labels");
        }
        let k = self.partitions.len();
        if self.values.len() != k || self.values.iter().any(|r| r.len() != k) {
            return fail("shape");
        }
        for (row, lam) in self.values.iter().zip(&self.partitions) {
            if row[0] != dim_irrep(lam) as i64 {
                return fail("identity column");
            }
        }
        let sizes: Vec<i64> = self.classes.iter().map(|c| c.class_size() as i64).collect();
        let order = factorial(self.n) as i64;
        for i in 0..k {
            for j in 0..k {
                let rows: i64 = (0..k)
                    .map(|c| sizes[c] * self.values[i][c] * self.values[j][c])
                    .sum();
                if rows != if i == j { order } else { 0 } {
                    return fail("row orthogonality");
                }
                let cols: i64 = (0..k).map(|r| self.values[r][i] * self.values[r][j]).sum();
                if cols != if i == j { order / sizes[i] } else { 0 } {
                    return fail("column orthogonality");
                }
            }
        }
        Ok(())
    }
}

/// On-disk JSON cache of character tables, one file per `n`.
#[derive(Debug, Clone)]
pub struct CharTableCache {
    dir: PathBuf,
    cap: usize,
}

impl CharTableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CharTableCache {
            dir: dir.into(),
            cap: DEFAULT_TABLE_CAP,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn path_for(&self, n: usize) -> PathBuf {
        self.dir.join(format!("chartable_{n}.json"))
    }

    /// Loads a validated table or recomputes and rewrites it.
    pub fn get(&self, n: usize) -> Result<CharTable> {
        if n == 0 || n > self.cap {
            return Err(Error::SizeCap(format!(
                "character table size {n} outside 1..={}",
                self.cap
            )));
        }
        let path = self.path_for(n);
        if let Some(t) = read_table(&path).filter(|t| t.n == n && t.validate().is_ok()) {
            return Ok(t);
        }
        let table = CharTable::compute(n)?;
        table.validate()?;
        write_atomic(
            &self.dir,
            &path,
            &serde_json::to_vec(&table).expect("table serializes"),
        )?;
        Ok(table)
    }
}

fn read_table(path: &Path) -> Option<CharTable> {
    let bytes = fs::read(path).ok()?;
    serde_json::from_slice(&bytes).ok()
}

fn write_atomic(dir: &Path, path: &Path, bytes: &[u8]) -> Result<()> {
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("table"),
        std::process::id()
    ));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Irrep label of one stabilizer factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrrepLabel {
    /// Irrep of a symmetric-group factor.
    Part(Partition),
    /// Character `g ↦ ζ_d^j` of a cyclic factor of order `d`, where `g` is
    /// the smallest rotation in the factor.
    Residue(usize),
}

impl IrrepLabel {
    pub fn dim(&self) -> u64 {
        match self {
            IrrepLabel::Part(p) => dim_irrep(p),
            IrrepLabel::Residue(_) => 1,
        }
    }

    pub fn to_label_string(&self) -> String {
        match self {
            IrrepLabel::Part(p) => p.to_string(),
            IrrepLabel::Residue(j) => format!("j={j}"),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().strip_prefix("j=") {
            Some(j) => j
                .trim()
                .parse()
                .map(IrrepLabel::Residue)
                .map_err(|_| Error::InvalidIrrep(s.into())),
            None => Partition::parse(s).map(IrrepLabel::Part),
        }
    }
}

/// Irrep of a stabilizer, one label per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StabIrrep(pub Vec<IrrepLabel>);

impl StabIrrep {
    pub fn dim(&self) -> u64 {
        self.0.iter().map(IrrepLabel::dim).product()
    }

    pub fn validate(&self, stab: &Stabilizer) -> Result<()> {
        if self.0.len() != stab.factors.len() {
            return Err(Error::InvalidIrrep(format!(
                "{} labels for {} factors",
                self.0.len(),
                stab.factors.len()
            )));
        }
        for (l, f) in self.0.iter().zip(&stab.factors) {
            let ok = match (l, f) {
                (IrrepLabel::Part(p), StabFactor::Sym(c)) => p.size() == c.len(),
                (IrrepLabel::Residue(j), StabFactor::Cyclic { order, .. }) => j < order,
                _ => false,
            };
            if !ok {
                return Err(Error::InvalidIrrep(format!(
                    "{} does not label {}",
                    l.to_label_string(),
                    f.descriptor()
                )));
            }
        }
        Ok(())
    }

    pub fn trivial(stab: &Stabilizer) -> Self {
        StabIrrep(
            stab.factors
                .iter()
                .map(|f| match f {
                    StabFactor::Sym(c) => IrrepLabel::Part(Partition::trivial(c.len())),
                    StabFactor::Cyclic { .. } => IrrepLabel::Residue(0),
                })
                .collect(),
        )
    }

    pub fn labels(&self) -> Vec<String> {
        self.0.iter().map(IrrepLabel::to_label_string).collect()
    }
}

/// Every irrep of `stab`, in canonical order.
pub fn irreps_of(stab: &Stabilizer) -> Vec<StabIrrep> {
    let mut out = vec![Vec::new()];
    for f in &stab.factors {
        let options: Vec<IrrepLabel> = match f {
            StabFactor::Sym(c) => partitions(c.len())
                .into_iter()
                .map(IrrepLabel::Part)
                .collect(),
            StabFactor::Cyclic { order, .. } => (0..*order).map(IrrepLabel::Residue).collect(),
        };
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<IrrepLabel>| {
                options.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(StabIrrep).collect()
}

/// `⟨Res_K N₁, Res_K N₂⟩_K` for `K ⊆ G₁`, `K ⊆ G₂` (all structural).
pub fn restriction_inner(
    k: &Stabilizer,
    g1: &Stabilizer,
    n1: &StabIrrep,
    g2: &Stabilizer,
    n2: &StabIrrep,
) -> Result<u64> {
    n1.validate(g1)?;
    n2.validate(g2)?;
    for (g, name) in [(g1, "first"), (g2, "second")] {
        if !k.is_subgroup_of(g) {
            return Err(Error::NotSubgroup(format!(
                "{} is not contained in the {name} group {}",
                k.descriptor(),
                g.descriptor()
            )));
        }
    }
    let mut cyclic_factor = 1u64;
    for f in &k.factors {
        if let StabFactor::Cyclic { start, order, .. } = f {
            let j1 = cyclic_residue(g1, n1, *start);
            let j2 = cyclic_residue(g2, n2, *start);
            if j1 % order != j2 % order {
                cyclic_factor = 0;
            }
        }
    }
    if cyclic_factor == 0 {
        return Ok(0);
    }
    let sym: Vec<&Vec<usize>> = k
        .factors
        .iter()
        .filter_map(|f| match f {
            StabFactor::Sym(c) => Some(c),
            _ => None,
        })
        .collect();
    let k_order: i64 = sym.iter().map(|c| factorial(c.len()) as i64).product();
    // enumerate class tuples of the symmetric part of K
    let class_lists: Vec<Vec<Partition>> = sym.iter().map(|c| partitions(c.len())).collect();
    let mut total: i64 = 0;
    let mut idx = vec![0usize; sym.len()];
    loop {
        let classes: Vec<&Partition> = idx.iter().zip(&class_lists).map(|(i, l)| &l[*i]).collect();
        let size: i64 = classes.iter().map(|c| c.class_size() as i64).product();
        let v1 = sym_character(g1, n1, &sym, &classes)?;
        if v1 != 0 {
            let v2 = sym_character(g2, n2, &sym, &classes)?;
            total += size * v1 * v2;
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                if total % k_order != 0 {
                    return Err(Error::Consistency("non-integral inner product".into()));
                }
                return Ok((total / k_order) as u64);
            }
            idx[pos] += 1;
            if idx[pos] < class_lists[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn cyclic_residue(g: &Stabilizer, n: &StabIrrep, start: usize) -> usize {
    g.factors
        .iter()
        .zip(&n.0)
        .find_map(|(f, l)| match (f, l) {
            (StabFactor::Cyclic { start: s, .. }, IrrepLabel::Residue(j)) if *s == start => {
                Some(*j)
            }
            _ => None,
        })
        .unwrap_or(0)
}

/// Character of the symmetric part of `n` (an irrep of `g`) at the element of
/// `K` whose factor on `sym[i]` has cycle type `classes[i]`.
fn sym_character(
    g: &Stabilizer,
    n: &StabIrrep,
    sym: &[&Vec<usize>],
    classes: &[&Partition],
) -> Result<i64> {
    let mut value = 1;
    for (f, l) in g.factors.iter().zip(&n.0) {
        let (StabFactor::Sym(coords), IrrepLabel::Part(lam)) = (f, l) else {
            continue;
        };
        let mut ct = Partition(vec![]);
        for (kc, c) in sym.iter().zip(classes) {
            if kc.iter().all(|x| coords.contains(x)) {
                ct = ct.union(c);
            }
        }
        value *= char_value(lam, &ct)?;
        if value == 0 {
            break;
        }
    }
    Ok(value)
}

/// `⟨Ind_sub^sup ρ, σ⟩` by Frobenius reciprocity.
pub fn induce_restrict_mult(
    sub: &Stabilizer,
    sub_irrep: &StabIrrep,
    sup: &Stabilizer,
    sup_irrep: &StabIrrep,
) -> Result<u64> {
    restriction_inner(sub, sub, sub_irrep, sup, sup_irrep)
}
