//! PBW normal forms in `Γ ⋉ U(sl₂^{⊕n})` with polynomial coefficients, the
//! Harish-Chandra projection, central characters, Casimirs, the coproduct
//! and antipode, and exact center computations.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cato_a::s_sets_a;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::poly::{Poly, Var};
use crate::rational::{q, q_frac, Q};
use crate::weightlat::{canonical_rep, GammaSpec, Perm, Weight};

/// Exponents `(a, b, c)` of `f^a h^b e^c` in one factor.
pub type Exps = [u32; 3];

/// `Π_i f_i^{a_i} h_i^{b_i} e_i^{c_i} · γ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub factors: Vec<Exps>,
    pub group: Perm,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            factors: vec![[0, 0, 0]; n],
            group: Perm::identity(n),
        }
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().flatten().sum()
    }

    pub fn is_pure_h(&self) -> bool {
        self.factors.iter().all(|[a, _, c]| *a == 0 && *c == 0)
    }

    /// Relabels factor `i` as `g(i)`: the exponents of `g·m·g⁻¹`'s A-part.
    fn relabel(factors: &[Exps], g: &Perm) -> Vec<Exps> {
        let mut out = vec![[0, 0, 0]; factors.len()];
        for (i, ex) in factors.iter().enumerate() {
            out[g.image(i)] = *ex;
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, [a, b, c]) in self.factors.iter().enumerate() {
            for (name, e) in [("f", a), ("h", b), ("e", c)] {
                match e {
                    0 => {}
                    1 => parts.push(format!("{name}{}", i + 1)),
                    _ => parts.push(format!("{name}{}^{e}", i + 1)),
                }
            }
        }
        if !self.group.is_identity() {
            parts.push(group_atom(&self.group));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Expression-grammar form of a permutation as a product of transpositions
/// `s(i,j)` (the same element, written parseably).
fn group_atom(g: &Perm) -> String {
    let mut out = Vec::new();
    let n = g.len();
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] || g.image(start) == start {
            continue;
        }
        let mut cyc = vec![];
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cyc.push(i + 1);
            i = g.image(i);
        }
        // (a1 a2 … ak) = s(a1,ak)·…·s(a1,a3)·s(a1,a2)
        for k in (1..cyc.len()).rev() {
            out.push(format!("s({},{})", cyc[0], cyc[k]));
        }
    }
    out.join("*")
}

/// Element of `Γ ⋉ U(sl₂^{⊕n})` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<Monomial, Poly>,
}

/// `Σ_γ c_γ γ`.
pub type GroupAlgebraElement = BTreeMap<Perm, Q>;

type Rank1 = Vec<(Exps, Q)>;

thread_local! {
    static RANK1_CACHE: RefCell<HashMap<(Exps, Exps), Rank1>> = RefCell::new(HashMap::new());
}

fn binomial(n: u32, k: u32) -> Q {
    let mut r = Q::one();
    for i in 0..k {
        r = r * q(i64::from(n - i)) / q(i64::from(i + 1));
    }
    r
}

fn add_rank1(acc: &mut BTreeMap<Exps, Q>, m: Exps, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(m).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&m);
    }
}

/// Normal form of `f^a h^b e^c · g` for a single generator `g ∈ {f,h,e}`
/// (index 0, 1, 2), from `e h = h e − 2e`, `h f = f h − 2f`, `e f = f e + h`
/// in closed form.
fn times_generator(m: Exps, gen: usize, acc: &mut BTreeMap<Exps, Q>, coef: &Q) {
    let [a, b, c] = m;
    match gen {
        2 => add_rank1(acc, [a, b, c + 1], coef.clone()),
        1 => {
            // e^c h = (h − 2c) e^c
            add_rank1(acc, [a, b + 1, c], coef.clone());
            add_rank1(acc, [a, b, c], coef * q(-2 * i64::from(c)));
        }
        _ => {
            // e^c f = f e^c + c h e^{c−1} − c(c−1) e^{c−1};  h^b f = f (h−2)^b
            for k in 0..=b {
                let c2 = binomial(b, k) * num_traits::pow(q(-2), (b - k) as usize);
                add_rank1(acc, [a + 1, k, c], coef * c2);
            }
            if c > 0 {
                let cc = i64::from(c);
                add_rank1(acc, [a, b + 1, c - 1], coef * q(cc));
                add_rank1(acc, [a, b, c - 1], coef * q(-cc * (cc - 1)));
            }
        }
    }
}

/// Normal form of a product of two rank-one PBW monomials.
fn rank1_product(x: Exps, y: Exps) -> Rank1 {
    if y == [0, 0, 0] {
        return vec![(x, Q::one())];
    }
    if let Some(r) = RANK1_CACHE.with(|c| c.borrow().get(&(x, y)).cloned()) {
        return r;
    }
    // peel the last generator of y: y = y' · g
    let (prefix, gen) = if y[2] > 0 {
        ([y[0], y[1], y[2] - 1], 2)
    } else if y[1] > 0 {
        ([y[0], y[1] - 1, 0], 1)
    } else {
        ([y[0] - 1, 0, 0], 0)
    };
    let mut acc = BTreeMap::new();
    for (m, c) in rank1_product(x, prefix) {
        times_generator(m, gen, &mut acc, &c);
    }
    let out: Rank1 = acc.into_iter().collect();
    RANK1_CACHE.with(|c| c.borrow_mut().insert((x, y), out.clone()));
    out
}

/// Product of two group-free monomials, factor by factor.
fn a_product(x: &[Exps], y: &[Exps]) -> Vec<(Vec<Exps>, Q)> {
    let mut acc: Vec<(Vec<Exps>, Q)> = vec![(Vec::with_capacity(x.len()), Q::one())];
    for (xi, yi) in x.iter().zip(y) {
        let r = rank1_product(*xi, *yi);
        if r.len() == 1 {
            for (v, c) in acc.iter_mut() {
                v.push(r[0].0);
                *c *= &r[0].1;
            }
            continue;
        }
        acc = acc
            .into_iter()
            .flat_map(|(v, c)| {
                r.iter().map(move |(m, k)| {
                    let mut v2 = v.clone();
                    v2.push(*m);
                    (v2, &c * k)
                })
            })
            .collect();
    }
    acc
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(n: usize, c: Poly) -> Self {
        let mut a = AlgebraElement::zero(n);
        a.add_term(Monomial::one(n), c);
        a
    }

    pub fn one(n: usize) -> Self {
        AlgebraElement::scalar(n, Poly::int(1))
    }

    pub fn from_monomial(m: Monomial, c: Poly) -> Self {
        let mut a = AlgebraElement::zero(m.factors.len());
        a.add_term(m, c);
        a
    }

    fn generator(n: usize, i: usize, slot: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::InvalidArgument(format!(
                "factor index {} exceeds rank {n}",
                i + 1
            )));
        }
        let mut m = Monomial::one(n);
        m.factors[i][slot] = 1;
        Ok(AlgebraElement::from_monomial(m, Poly::int(1)))
    }

    /// `e_i` (0-based index).
    pub fn e(n: usize, i: usize) -> Result<Self> {
        Self::generator(n, i, 2)
    }

    pub fn f(n: usize, i: usize) -> Result<Self> {
        Self::generator(n, i, 0)
    }

    pub fn h(n: usize, i: usize) -> Result<Self> {
        Self::generator(n, i, 1)
    }

    pub fn group(g: &Perm) -> Self {
        let n = g.len();
        let m = Monomial {
            factors: vec![[0, 0, 0]; n],
            group: g.clone(),
        };
        AlgebraElement::from_monomial(m, Poly::int(1))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coef(&self, m: &Monomial) -> Poly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Poly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e = &*e + &c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_rank(&self, other: &AlgebraElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.add(&other.scale(&Poly::int(-1)))
    }

    pub fn scale(&self, c: &Poly) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.n);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn scale_q(&self, c: &Q) -> AlgebraElement {
        self.scale(&Poly::constant(c.clone()))
    }

    /// Normal-form product: `(m₁γ₁)(m₂γ₂) = m₁·γ₁(m₂)·γ₁γ₂`.
    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_rank(other)?;
        let mut out = AlgebraElement::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let moved = Monomial::relabel(&m2.factors, &m1.group);
                let group = m1.group.compose(&m2.group);
                let coef = c1 * c2;
                for (factors, k) in a_product(&m1.factors, &moved) {
                    out.add_term(
                        Monomial {
                            factors,
                            group: group.clone(),
                        },
                        coef.scale(&k),
                    );
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::one(self.n);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `β(a) = β a β⁻¹`.
    pub fn conjugate_by(&self, beta: &Perm) -> AlgebraElement {
        let inv = beta.inverse();
        let mut out = AlgebraElement::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(
                Monomial {
                    factors: Monomial::relabel(&m.factors, beta),
                    group: beta.compose(&m.group).compose(&inv),
                },
                c.clone(),
            );
        }
        out
    }

    /// Harish-Chandra projection: keep the monomials in `U(h)·kΓ`.
    pub fn hc_projection(&self) -> AlgebraElement {
        AlgebraElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.is_pure_h())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Anti-involution `e ↔ f`, `h ↦ h`, `γ ↦ γ⁻¹`, extended
    /// anti-multiplicatively.
    pub fn anti_involution(&self) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero(self.n);
        for (m, c) in &self.terms {
            let swapped: Vec<Exps> = m.factors.iter().map(|[a, b, c]| [*c, *b, *a]).collect();
            let a_part = AlgebraElement::from_monomial(
                Monomial {
                    factors: swapped,
                    group: Perm::identity(self.n),
                },
                c.clone(),
            );
            out = out.add(&AlgebraElement::group(&m.group.inverse()).mul(&a_part)?)?;
        }
        Ok(out)
    }

    /// Substitutes parameter values into every coefficient.
    pub fn subst(&self, values: &BTreeMap<Var, Q>) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.subst(values));
        }
        out
    }

    /// Scalar part when the element is a multiple of 1.
    pub fn as_scalar(&self) -> Option<Poly> {
        match self.terms.len() {
            0 => Some(Poly::zero()),
            1 => self.terms.get(&Monomial::one(self.n)).cloned(),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                monomial: MonomialJson {
                    factors: m.factors.clone(),
                    group: m.group.cycle_string(),
                },
                coef: c.to_string(),
            })
            .collect()
    }

    pub fn from_json(terms: &[TermJson], n: usize) -> Result<Self> {
        let mut out = AlgebraElement::zero(n);
        for t in terms {
            if t.monomial.factors.len() != n {
                return Err(Error::RankMismatch {
                    expected: n,
                    got: t.monomial.factors.len(),
                });
            }
            let group = Perm::parse_cycles(&t.monomial.group, n)?;
            let coef = crate::expr::parse_poly(&t.coef)?;
            out.add_term(
                Monomial {
                    factors: t.monomial.factors.clone(),
                    group,
                },
                coef,
            );
        }
        Ok(out)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono = m.to_string();
                let coef = c.to_string();
                if mono == "1" {
                    format!("({coef})")
                } else if coef == "1" {
                    mono
                } else {
                    format!("({coef})*{mono}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub factors: Vec<Exps>,
    pub group: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: MonomialJson,
    pub coef: String,
}

/// `χ_λ(r) = Σ_{γ ∈ Γ^λ} λ(ξ(a_γ)) γ`, with optional parameter values.
pub fn central_character(
    lambda: &Weight,
    r: &AlgebraElement,
    values: &BTreeMap<Var, Q>,
) -> Result<GroupAlgebraElement> {
    lambda.check_rank(r.n)?;
    let mut out = GroupAlgebraElement::new();
    for (m, c) in &r.hc_projection().terms {
        if m.group.act(lambda) != *lambda {
            continue;
        }
        let mut val = c.eval(values)?;
        for (i, [_, b, _]) in m.factors.iter().enumerate() {
            val *= num_traits::pow(lambda.coord(i).clone(), *b as usize);
        }
        if val.is_zero() {
            continue;
        }
        let e = out.entry(m.group.clone()).or_insert_with(Q::zero);
        *e += val;
        if e.is_zero() {
            out.remove(&m.group);
        }
    }
    Ok(out)
}

/// `β χ β⁻¹` in the group algebra.
pub fn conjugate_group_element(x: &GroupAlgebraElement, beta: &Perm) -> GroupAlgebraElement {
    let inv = beta.inverse();
    x.iter()
        .map(|(g, c)| (beta.compose(g).compose(&inv), c.clone()))
        .collect()
}

/// `Ω_i = 2 f_i e_i + h_i + h_i²/2` (0-based index).
pub fn casimir(n: usize, i: usize) -> Result<AlgebraElement> {
    let fe = AlgebraElement::f(n, i)?.mul(&AlgebraElement::e(n, i)?)?;
    let h = AlgebraElement::h(n, i)?;
    let h2 = h.mul(&h)?;
    fe.scale_q(&q(2)).add(&h)?.add(&h2.scale_q(&q_frac(1, 2)))
}

/// `p_k = Σ_i Ω_i^k`.
pub fn symmetric_center_gen(n: usize, k: u32) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero(n);
    for i in 0..n {
        out = out.add(&casimir(n, i)?.pow(k)?)?;
    }
    Ok(out)
}

/// `m_{ij} = e_i f_j + f_i e_j + h_i h_j / 2`.
pub fn mixed_casimir(n: usize, i: usize, j: usize) -> Result<AlgebraElement> {
    let ef = AlgebraElement::e(n, i)?.mul(&AlgebraElement::f(n, j)?)?;
    let fe = AlgebraElement::f(n, i)?.mul(&AlgebraElement::e(n, j)?)?;
    let hh = AlgebraElement::h(n, i)?.mul(&AlgebraElement::h(n, j)?)?;
    ef.add(&fe)?.add(&hh.scale_q(&q_frac(1, 2)))
}

fn check_group_free_rank1(a: &AlgebraElement) -> Result<()> {
    if a.n != 1 {
        return Err(Error::RankMismatch {
            expected: 1,
            got: a.n,
        });
    }
    if a.terms.keys().any(|m| !m.group.is_identity()) {
        return Err(Error::InvalidArgument(
            "coproduct of an element with a group part".into(),
        ));
    }
    Ok(())
}

/// `f^a h^b e^c` evaluated on the images `(F, H, E)` in a larger algebra.
fn substitute_generators(
    ex: Exps,
    images: &[AlgebraElement; 3],
    n: usize,
) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::one(n);
    for (slot, &e) in ex.iter().enumerate() {
        for _ in 0..e {
            out = out.mul(&images[slot])?;
        }
    }
    Ok(out)
}

/// `Δ: U(sl₂) → U(sl₂)^{⊗2}`, `x ↦ x₁ + x₂` on generators.
pub fn coproduct_pair(a: &AlgebraElement) -> Result<AlgebraElement> {
    check_group_free_rank1(a)?;
    let images = [
        AlgebraElement::f(2, 0)?.add(&AlgebraElement::f(2, 1)?)?,
        AlgebraElement::h(2, 0)?.add(&AlgebraElement::h(2, 1)?)?,
        AlgebraElement::e(2, 0)?.add(&AlgebraElement::e(2, 1)?)?,
    ];
    let mut out = AlgebraElement::zero(2);
    for (m, c) in &a.terms {
        out = out.add(&substitute_generators(m.factors[0], &images, 2)?.scale(c))?;
    }
    Ok(out)
}

/// `m(1 ⊗ S)Δ(a)` placed into factors `i ≠ j` of the rank-`n` algebra.
pub fn m_one_s_delta(a: &AlgebraElement, n: usize, i: usize, j: usize) -> Result<AlgebraElement> {
    if i == j || i >= n || j >= n {
        return Err(Error::InvalidArgument(format!(
            "factor pair ({}, {}) in rank {n}",
            i + 1,
            j + 1
        )));
    }
    let delta = coproduct_pair(a)?;
    let first = [
        AlgebraElement::f(n, i)?,
        AlgebraElement::h(n, i)?,
        AlgebraElement::e(n, i)?,
    ];
    let neg = |x: AlgebraElement| x.scale_q(&q(-1));
    let second = [
        neg(AlgebraElement::f(n, j)?),
        neg(AlgebraElement::h(n, j)?),
        neg(AlgebraElement::e(n, j)?),
    ];
    let mut out = AlgebraElement::zero(n);
    for (m, c) in &delta.terms {
        let x = substitute_generators(m.factors[0], &first, n)?;
        // S is an anti-automorphism: S(f^a h^b e^c) = S(e)^c S(h)^b S(f)^a
        let [a2, b2, c2] = m.factors[1];
        let mut y = AlgebraElement::one(n);
        for (slot, e) in [(2, c2), (1, b2), (0, a2)] {
            for _ in 0..e {
                y = y.mul(&second[slot])?;
            }
        }
        out = out.add(&x.mul(&y)?.scale(c))?;
    }
    Ok(out)
}

/// PBW monomials (identity group part) of total degree ≤ `d`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<Exps>> {
    fn go(slots: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == slots {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            go(slots, left - e, cur, out);
            cur.pop();
        }
    }
    let mut flat = Vec::new();
    go(3 * n, d, &mut Vec::new(), &mut flat);
    flat.into_iter()
        .map(|v| v.chunks(3).map(|c| [c[0], c[1], c[2]]).collect())
        .collect()
}

pub const CENTER_MAX_RANK: usize = 2;
pub const CENTER_MAX_DEGREE: u32 = 4;

/// Basis of the degree-≤`d_max` part of the center of `Γ ⋉ U(sl₂^{⊕n})`,
/// by an exact linear solve of `[z, g] = 0` over all generators.
pub fn center_basis_up_to_degree(gamma: &GammaSpec, d_max: u32) -> Result<Vec<AlgebraElement>> {
    let n = gamma.rank();
    if n > CENTER_MAX_RANK || d_max > CENTER_MAX_DEGREE {
        return Err(Error::SizeCap(format!(
            "center computation limited to rank ≤ {CENTER_MAX_RANK}, degree ≤ {CENTER_MAX_DEGREE}"
        )));
    }
    let elements = gamma.elements();
    let mut basis = Vec::new();
    for factors in monomials_up_to(n, d_max) {
        for g in &elements {
            basis.push(Monomial {
                factors: factors.clone(),
                group: g.clone(),
            });
        }
    }
    let mut gens = Vec::new();
    for i in 0..n {
        gens.push(AlgebraElement::e(n, i)?);
        gens.push(AlgebraElement::f(n, i)?);
        gens.push(AlgebraElement::h(n, i)?);
    }
    gens.extend(gamma.generators().iter().map(AlgebraElement::group));

    // rows indexed by (generator, output monomial)
    let mut rows: BTreeMap<(usize, Monomial), SparseRow> = BTreeMap::new();
    for (col, m) in basis.iter().enumerate() {
        let z = AlgebraElement::from_monomial(m.clone(), Poly::int(1));
        for (gi, g) in gens.iter().enumerate() {
            for (out_m, c) in z.commutator(g)?.terms {
                let c = c.as_constant().expect("numeric commutator");
                rows.entry((gi, out_m)).or_default().insert(col, c);
            }
        }
    }
    let mut ech = Echelon::new();
    for (_, r) in rows {
        ech.push(r);
    }
    let mut out = Vec::new();
    for v in ech.nullspace(basis.len()) {
        let mut z = AlgebraElement::zero(n);
        for (m, c) in basis.iter().zip(v) {
            z.add_term(m.clone(), Poly::constant(c));
        }
        out.push(z);
    }
    Ok(out)
}

/// Outcome of the central-character comparison with both methods' verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CcEvidence {
    pub equal: bool,
    pub orbit_test: bool,
    pub generator_test: bool,
    /// Generator values at `λ` and `μ`, as strings.
    pub values_lambda: Vec<String>,
    pub values_mu: Vec<String>,
}

/// `χ_λ(Ω_i)` computed by the engine, for every factor.
fn casimir_values(lambda: &Weight) -> Result<Vec<Q>> {
    let n = lambda.rank();
    (0..n)
        .map(|i| {
            let chi = central_character(lambda, &casimir(n, i)?, &BTreeMap::new())?;
            Ok(chi.get(&Perm::identity(n)).cloned().unwrap_or_else(Q::zero))
        })
        .collect()
}

/// Generators of `Z(A)^Γ` evaluated through the Casimir values: power sums
/// over Young parts, orbit sums of Casimir monomials over cyclic blocks.
fn invariant_values(gamma: &GammaSpec, omega: &[Q]) -> Vec<Q> {
    let mut vals = Vec::new();
    for (s, k) in gamma.young_parts() {
        for r in 1..=k {
            vals.push(
                omega[s..s + k]
                    .iter()
                    .map(|x| num_traits::pow(x.clone(), r))
                    .sum(),
            );
        }
    }
    for ((start, m), b) in gamma.block_ranges().into_iter().zip(gamma.blocks()) {
        if !matches!(b, crate::weightlat::BlockSpec::Cyclic(_)) {
            continue;
        }
        let mut seen = BTreeSet::new();
        for exps in monomials_up_to_plain(m, m as u32) {
            let canon = (0..m)
                .map(|s| (0..m).map(|i| exps[(i + s) % m]).collect::<Vec<u32>>())
                .min()
                .unwrap_or_default();
            if !seen.insert(canon) {
                continue;
            }
            let mut total = Q::zero();
            for s in 0..m {
                let mut term = Q::one();
                for i in 0..m {
                    term *= num_traits::pow(omega[start + (i + s) % m].clone(), exps[i] as usize);
                }
                total += term;
            }
            vals.push(total);
        }
    }
    vals
}

fn monomials_up_to_plain(slots: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(slots: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == slots {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            go(slots, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(slots, d, &mut Vec::new(), &mut out);
    out
}

/// Whether `λ` and `μ` have the same central character, by the orbit test
/// `μ ∈ Γ·(W•λ)` and by evaluating generators of `Z(A)^Γ`.
pub fn cc_equal(gamma: &GammaSpec, lambda: &Weight, mu: &Weight) -> Result<CcEvidence> {
    lambda.check_rank(gamma.rank())?;
    mu.check_rank(gamma.rank())?;
    let target = canonical_rep(mu, gamma).0;
    let orbit_test = s_sets_a(lambda, 4)?
        .iter()
        .any(|w| canonical_rep(w, gamma).0 == target);
    let vl = invariant_values(gamma, &casimir_values(lambda)?);
    let vm = invariant_values(gamma, &casimir_values(mu)?);
    let generator_test = vl == vm;
    if orbit_test != generator_test {
        return Err(Error::Consistency(format!(
            "central character tests disagree for {lambda} and {mu}"
        )));
    }
    Ok(CcEvidence {
        equal: orbit_test,
        orbit_test,
        generator_test,
        values_lambda: vl.iter().map(crate::rational::fmt_q).collect(),
        values_mu: vm.iter().map(crate::rational::fmt_q).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> AlgebraElement {
        AlgebraElement::e(n, i).unwrap()
    }
    fn f(n: usize, i: usize) -> AlgebraElement {
        AlgebraElement::f(n, i).unwrap()
    }
    fn h(n: usize, i: usize) -> AlgebraElement {
        AlgebraElement::h(n, i).unwrap()
    }

    #[test]
    fn defining_relations() {
        let ef = e(1, 0).mul(&f(1, 0)).unwrap();
        assert_eq!(ef, f(1, 0).mul(&e(1, 0)).unwrap().add(&h(1, 0)).unwrap());
        assert_eq!(
            e(1, 0).commutator(&h(1, 0)).unwrap(),
            e(1, 0).scale_q(&q(-2))
        );
        assert_eq!(
            h(1, 0).commutator(&f(1, 0)).unwrap(),
            f(1, 0).scale_q(&q(-2))
        );
        assert!(e(2, 0).commutator(&f(2, 1)).unwrap().is_zero());
        let s = AlgebraElement::group(&Perm::transposition(2, 0, 1));
        assert_eq!(s.mul(&e(2, 0)).unwrap(), e(2, 1).mul(&s).unwrap());
        assert_eq!(s.mul(&s).unwrap(), AlgebraElement::one(2));
    }

    #[test]
    fn associativity_small() {
        let x = e(1, 0).mul(&f(1, 0)).unwrap();
        let a = x.mul(&x).unwrap().mul(&h(1, 0)).unwrap();
        let b = x.mul(&x.mul(&h(1, 0)).unwrap()).unwrap();
        assert_eq!(a, b);
        let e3 = e(1, 0).pow(3).unwrap();
        let f2 = f(1, 0).pow(2).unwrap();
        let l = e3.mul(&f2).unwrap().mul(&f(1, 0)).unwrap();
        let r = e3.mul(&f2.mul(&f(1, 0)).unwrap()).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn casimir_and_projection() {
        let om = casimir(1, 0).unwrap();
        for g in [e(1, 0), f(1, 0), h(1, 0)] {
            assert!(om.commutator(&g).unwrap().is_zero());
        }
        let xi = om.hc_projection();
        let expect = h(1, 0)
            .add(&h(1, 0).pow(2).unwrap().scale_q(&q_frac(1, 2)))
            .unwrap();
        assert_eq!(xi, expect);
        assert!(f(1, 0).mul(&e(1, 0)).unwrap().hc_projection().is_zero());
        let hh = h(2, 0).mul(&h(2, 1)).unwrap();
        assert_eq!(hh.hc_projection(), hh);
        let p1 = symmetric_center_gen(2, 1).unwrap();
        let s = AlgebraElement::group(&Perm::transposition(2, 0, 1));
        assert!(s.commutator(&p1).unwrap().is_zero());
        assert!(e(2, 0)
            .commutator(&casimir(2, 1).unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn central_characters() {
        let none = BTreeMap::new();
        let chi =
            central_character(&Weight::from_ints(&[1]), &casimir(1, 0).unwrap(), &none).unwrap();
        assert_eq!(chi, BTreeMap::from([(Perm::identity(1), q_frac(3, 2))]));
        let s = Perm::transposition(2, 0, 1);
        let r = casimir(2, 0)
            .unwrap()
            .mul(&AlgebraElement::group(&s))
            .unwrap();
        let chi = central_character(&Weight::from_ints(&[2, 2]), &r, &none).unwrap();
        assert_eq!(chi, BTreeMap::from([(s.clone(), q(4))]));
        assert!(central_character(&Weight::from_ints(&[2, 0]), &r, &none)
            .unwrap()
            .is_empty());
        let param = casimir(1, 0).unwrap().scale(&Poly::var(Var::C));
        assert!(central_character(&Weight::from_ints(&[1]), &param, &none).is_err());
    }

    #[test]
    fn coproduct_and_antipode() {
        let om = casimir(1, 0).unwrap();
        let d = coproduct_pair(&om).unwrap();
        let expect = casimir(2, 0)
            .unwrap()
            .add(&casimir(2, 1).unwrap())
            .unwrap()
            .add(&mixed_casimir(2, 0, 1).unwrap().scale_q(&q(2)))
            .unwrap();
        assert_eq!(d, expect);
        let h2 = h(1, 0).pow(2).unwrap();
        let expect = h(2, 0).add(&h(2, 1)).unwrap().pow(2).unwrap();
        assert_eq!(coproduct_pair(&h2).unwrap(), expect);
        assert_eq!(
            coproduct_pair(&e(1, 0)).unwrap(),
            e(2, 0).add(&e(2, 1)).unwrap()
        );

        let m = m_one_s_delta(&om, 3, 0, 2).unwrap();
        let expect = casimir(3, 0)
            .unwrap()
            .add(&casimir(3, 2).unwrap())
            .unwrap()
            .sub(&mixed_casimir(3, 0, 2).unwrap().scale_q(&q(2)))
            .unwrap();
        assert_eq!(m, expect);
        assert_eq!(
            m_one_s_delta(&e(1, 0), 2, 0, 1).unwrap(),
            e(2, 0).sub(&e(2, 1)).unwrap()
        );
        assert_eq!(
            m_one_s_delta(&AlgebraElement::one(1), 2, 0, 1).unwrap(),
            AlgebraElement::one(2)
        );
        assert!(m_one_s_delta(&om, 2, 1, 1).is_err());
    }

    #[test]
    fn anti_involution_and_json() {
        let s = AlgebraElement::group(&Perm::transposition(2, 0, 1));
        let a = e(2, 0)
            .mul(&f(2, 1))
            .unwrap()
            .mul(&s)
            .unwrap()
            .add(&h(2, 0))
            .unwrap();
        let ia = a.anti_involution().unwrap();
        assert_eq!(ia.anti_involution().unwrap(), a);
        let b = f(2, 0).mul(&h(2, 0)).unwrap().add(&s).unwrap();
        let ab = a.mul(&b).unwrap().anti_involution().unwrap();
        let ba = b.anti_involution().unwrap().mul(&ia).unwrap();
        assert_eq!(ab, ba);
        let c = a.scale(&(&Poly::var(Var::C) + &Poly::constant(q_frac(-1, 3))));
        let json = serde_json::to_string(&c.to_json()).unwrap();
        let back: Vec<TermJson> = serde_json::from_str(&json).unwrap();
        assert_eq!(AlgebraElement::from_json(&back, 2).unwrap(), c);
    }

    #[test]
    fn centers() {
        let span_rank = |els: &[AlgebraElement]| {
            let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
            let mut ech = Echelon::new();
            for z in els {
                let mut row = SparseRow::new();
                for (m, c) in &z.terms {
                    let k = index.len();
                    let col = *index.entry(m.clone()).or_insert(k);
                    row.insert(col, c.as_constant().unwrap());
                }
                ech.push(row);
            }
            ech.rank()
        };
        let z = center_basis_up_to_degree(&GammaSpec::trivial(1), 2).unwrap();
        assert_eq!(z.len(), 2);
        let mut with = z.clone();
        with.push(casimir(1, 0).unwrap());
        with.push(AlgebraElement::one(1));
        assert_eq!(span_rank(&with), 2);

        let z = center_basis_up_to_degree(&GammaSpec::symmetric(2), 2).unwrap();
        assert_eq!(z.len(), 2);
        assert!(z
            .iter()
            .all(|x| x.terms.keys().all(|m| m.group.is_identity())));
        let mut with = z.clone();
        with.push(symmetric_center_gen(2, 1).unwrap());
        assert_eq!(span_rank(&with), 2);

        assert_eq!(
            center_basis_up_to_degree(&GammaSpec::trivial(2), 2)
                .unwrap()
                .len(),
            3
        );
        assert!(center_basis_up_to_degree(&GammaSpec::trivial(3), 2).is_err());
    }

    #[test]
    fn cc_examples() {
        let t1 = GammaSpec::trivial(1);
        let r = cc_equal(
            &t1,
            &Weight::parse("1/2").unwrap(),
            &Weight::parse("-5/2").unwrap(),
        )
        .unwrap();
        assert!(r.equal);
        assert_eq!(r.values_lambda, vec!["5/8"]);
        assert_eq!(r.values_mu, r.values_lambda);
        let s2 = GammaSpec::symmetric(2);
        assert!(
            cc_equal(
                &s2,
                &Weight::from_ints(&[3, 0]),
                &Weight::from_ints(&[-2, -5])
            )
            .unwrap()
            .equal
        );
        assert!(
            !cc_equal(&t1, &Weight::from_ints(&[1]), &Weight::from_ints(&[2]))
                .unwrap()
                .equal
        );
        let c3 = GammaSpec::cyclic(3);
        let a = Weight::from_ints(&[0, 1, 2]);
        assert!(
            cc_equal(&c3, &a, &Weight::from_ints(&[-4, 0, -3]))
                .unwrap()
                .equal
        );
        assert!(
            !cc_equal(&c3, &a, &Weight::from_ints(&[0, 2, 1]))
                .unwrap()
                .equal
        );
    }
}
