//! Sparse multivariate polynomials over ℚ in a fixed family of parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, Q};

/// Formal parameters: the deformation parameters `c, d, u, v`, the
/// coefficients `t_k` of `f`, and auxiliary unknowns `w_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    C,
    D,
    U,
    V,
    T(usize),
    W(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::C => write!(f, "c"),
            Var::D => write!(f, "d"),
            Var::U => write!(f, "u"),
            Var::V => write!(f, "v"),
            Var::T(k) => write!(f, "t{k}"),
            Var::W(k) => write!(f, "w{k}"),
        }
    }
}

/// Monomial in the parameters: sorted `(variable, exponent)` pairs.
pub type PMono = Vec<(Var, u32)>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<PMono, Q>,
}

fn mono_mul(a: &PMono, b: &PMono) -> PMono {
    let mut m: BTreeMap<Var, u32> = a.iter().copied().collect();
    for (v, e) in b {
        *m.entry(*v).or_insert(0) += e;
    }
    m.into_iter().collect()
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn int(k: i64) -> Self {
        Poly::constant(q(k))
    }

    pub fn var(v: Var) -> Self {
        let mut p = Poly::zero();
        p.terms.insert(vec![(v, 1)], Q::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<PMono, Q> {
        &self.terms
    }

    fn add_term(&mut self, m: PMono, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::int(1);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `Some(c)` when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.terms.keys().flatten().map(|(x, _)| *x).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|(_, e)| e).sum())
            .max()
            .unwrap_or(0)
    }

    /// Substitutes values for some variables.
    pub fn subst(&self, values: &BTreeMap<Var, Q>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Vec::new();
            for (v, e) in m {
                match values.get(v) {
                    Some(x) => coef *= num_traits::pow(x.clone(), *e as usize),
                    None => rest.push((*v, *e)),
                }
            }
            out.add_term(rest, coef);
        }
        out
    }

    /// Full evaluation; every occurring variable must have a value.
    pub fn eval(&self, values: &BTreeMap<Var, Q>) -> Result<Q> {
        let p = self.subst(values);
        p.as_constant().ok_or_else(|| {
            Error::UnboundParameters(
                p.vars()
                    .iter()
                    .map(Var::to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            )
        })
    }

    /// Coefficients of a polynomial of degree ≤ 1: `(constant, [(var, coef)])`.
    pub fn linear_parts(&self) -> Result<(Q, BTreeMap<Var, Q>)> {
        let mut constant = Q::zero();
        let mut lin = BTreeMap::new();
        for (m, c) in &self.terms {
            match m.as_slice() {
                [] => constant = c.clone(),
                [(v, 1)] => {
                    lin.insert(*v, c.clone());
                }
                _ => return Err(Error::InvalidArgument(format!("{self} is not linear"))),
            }
        }
        Ok((constant, lin))
    }
}

impl From<Q> for Poly {
    fn from(c: Q) -> Self {
        Poly::constant(c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }
}

/// Human- and parser-readable form: `3/2*c*t0^2 - d + 1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // higher-degree terms first
        let mut terms: Vec<(&PMono, &Q)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().map(|(_, e)| e).sum();
            let db: u32 = b.0.iter().map(|(_, e)| e).sum();
            db.cmp(&da).then(a.0.cmp(b.0))
        });
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let factors: Vec<String> = m
                .iter()
                .map(|(v, e)| {
                    if *e == 1 {
                        v.to_string()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", fmt_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_q(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}
