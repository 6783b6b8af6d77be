//! Exact verification that the deformed cross relations
//!
//! ```text
//! [Y_i, X_i] = f(Ω_i) + Σ_{l≠i} (c s_il + d) · m(1⊗S)Δ_il(Ω)
//! [Y_i, X_j] = u s_ij + v s_ij · m(1⊗S)Δ_ij(Ω) + w_ij        (i ≠ j)
//! ```
//!
//! are compatible with the triangular decomposition only when
//! `c = d = u = v = 0` and `w_ij = 0`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::pbw::{
    casimir, m_one_s_delta, mixed_casimir, monomials_up_to, AlgebraElement, Monomial,
};
use crate::poly::{Poly, Var};
use crate::rational::{q, Q};
use crate::weightlat::{Perm, Weight};

/// Deformation data: rank, coefficients of `f(Ω) = Σ_k f_k Ω^k` (numbers
/// or parameters), and the PBW degree bound for the unknown `w_ij`.
#[derive(Debug, Clone)]
pub struct DeformationSpec {
    pub n: usize,
    pub f: Vec<Poly>,
    pub w_degree: u32,
}

pub const DEFAULT_W_DEGREE: u32 = 4;

impl DeformationSpec {
    pub fn new(n: usize, f: Vec<Poly>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(
                "the cross relations need rank n ≥ 2".into(),
            ));
        }
        Ok(DeformationSpec {
            n,
            f,
            w_degree: DEFAULT_W_DEGREE,
        })
    }

    pub fn with_rational_f(n: usize, f: &[Q]) -> Result<Self> {
        DeformationSpec::new(n, f.iter().cloned().map(Poly::constant).collect())
    }

    /// `f = t_0 + t_1 Ω + … + t_{k−1} Ω^{k−1}` with symbolic coefficients.
    pub fn with_symbolic_f(n: usize, terms: usize) -> Result<Self> {
        DeformationSpec::new(n, (0..terms).map(|k| Poly::var(Var::T(k))).collect())
    }
}

fn transposition(n: usize, i: usize, j: usize) -> AlgebraElement {
    AlgebraElement::group(&Perm::transposition(n, i, j))
}

/// `f(Ω_i)`.
pub fn f_of_casimir(spec: &DeformationSpec, i: usize) -> Result<AlgebraElement> {
    let om = casimir(spec.n, i)?;
    let mut out = AlgebraElement::zero(spec.n);
    let mut power = AlgebraElement::one(spec.n);
    for coef in &spec.f {
        out = out.add(&power.scale(coef))?;
        power = power.mul(&om)?;
    }
    Ok(out)
}

/// `m(1⊗S)Δ_ij(Ω)` in rank `n`.
fn m_ij(n: usize, i: usize, j: usize) -> Result<AlgebraElement> {
    m_one_s_delta(&casimir(1, 0)?, n, i, j)
}

/// Unknown coefficients of the `w_ij`: one `w_k` per (pair, monomial).
fn w_element(
    spec: &DeformationSpec,
    pair_index: usize,
    monomials: &[Vec<[u32; 3]>],
) -> AlgebraElement {
    let mut w = AlgebraElement::zero(spec.n);
    for (k, factors) in monomials.iter().enumerate() {
        let var = Var::W(pair_index * monomials.len() + k);
        w.add_term(
            Monomial {
                factors: factors.clone(),
                group: Perm::identity(spec.n),
            },
            Poly::var(var),
        );
    }
    w
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (0..n).filter(move |j| *j != i).map(move |j| (i, j)))
        .collect()
}

/// Right-hand sides of the deformed relations, keyed by 0-based `(i, j)`.
/// With `with_w` the `w_ij` are general elements with unknown coefficients.
pub fn build_deformed_rhs(
    spec: &DeformationSpec,
    with_w: bool,
) -> Result<BTreeMap<(usize, usize), AlgebraElement>> {
    let n = spec.n;
    let c = Poly::var(Var::C);
    let d = Poly::var(Var::D);
    let u = Poly::var(Var::U);
    let v = Poly::var(Var::V);
    let monomials = if with_w {
        monomials_up_to(n, spec.w_degree)
    } else {
        Vec::new()
    };
    let mut out = BTreeMap::new();
    for i in 0..n {
        let mut rhs = f_of_casimir(spec, i)?;
        for l in (0..n).filter(|l| *l != i) {
            let coef = transposition(n, i, l)
                .scale(&c)
                .add(&AlgebraElement::scalar(n, d.clone()))?;
            rhs = rhs.add(&coef.mul(&m_ij(n, i, l)?)?)?;
        }
        out.insert((i, i), rhs);
    }
    for (p, (i, j)) in pairs(n).into_iter().enumerate() {
        let s = transposition(n, i, j);
        let mut rhs = s.scale(&u).add(&s.mul(&m_ij(n, i, j)?)?.scale(&v))?;
        if with_w {
            rhs = rhs.add(&w_element(spec, p, &monomials))?;
        }
        out.insert((i, j), rhs);
    }
    Ok(out)
}

/// `[e_k, Σ_i [Y_i, X_i]]`.
pub fn obstruction_ek(spec: &DeformationSpec, k: usize) -> Result<AlgebraElement> {
    let rhs = build_deformed_rhs(spec, false)?;
    let mut sum = AlgebraElement::zero(spec.n);
    for i in 0..spec.n {
        sum = sum.add(&rhs[&(i, i)])?;
    }
    AlgebraElement::e(spec.n, k)?.commutator(&sum)
}

/// `[h_i, a] = η_i a` for every `i`.
pub fn weight_vector_check(a: &AlgebraElement, eta: &Weight) -> Result<bool> {
    eta.check_rank(a.rank())?;
    for i in 0..a.rank() {
        let lhs = AlgebraElement::h(a.rank(), i)?.commutator(a)?;
        if lhs != a.scale_q(eta.coord(i)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `η_j − η_i` with `η_i = ε_i` (the weight of `X_i`).
fn cross_weight(n: usize, i: usize, j: usize) -> Vec<Q> {
    (0..n)
        .map(|l| q(i64::from(l == j) - i64::from(l == i)))
        .collect()
}

/// Every PBW monomial has `ad h`-weight in `⊕ 2ℤ ε_l`; the cross weight
/// `η_j − η_i` has odd coordinates, so it is not a weight of `U(sl₂^{⊕n})`.
pub fn parity_excludes_cross_weight(n: usize, i: usize, j: usize) -> bool {
    cross_weight(n, i, j)
        .iter()
        .any(|x| !crate::rational::is_even_integer(x))
}

/// Linear constraints `Σ_var coef · var = 0` collected from coefficients.
struct System {
    vars: BTreeMap<Var, usize>,
    rows: Vec<SparseRow>,
}

impl System {
    fn new() -> Self {
        System {
            vars: BTreeMap::new(),
            rows: Vec::new(),
        }
    }

    fn declare(&mut self, v: Var) {
        let k = self.vars.len();
        self.vars.entry(v).or_insert(k);
    }

    /// Adds one equation per coefficient of `a`; every coefficient must be
    /// homogeneous linear in the declared unknowns.
    fn require_zero(&mut self, a: &AlgebraElement) -> Result<()> {
        for c in a.terms().values() {
            let (constant, lin) = c.linear_parts()?;
            if !constant.is_zero() {
                return Err(Error::Consistency(format!(
                    "constraint with constant term {c}"
                )));
            }
            let mut row = SparseRow::new();
            for (v, x) in lin {
                let k = *self.vars.get(&v).ok_or_else(|| {
                    Error::Consistency(format!("undeclared unknown {v} in constraint"))
                })?;
                row.insert(k, x);
            }
            self.rows.push(row);
        }
        Ok(())
    }

    fn solve(&self) -> (usize, Vec<Vec<Q>>) {
        let mut e = Echelon::new();
        for r in &self.rows {
            e.push(r.clone());
        }
        (e.rank(), e.nullspace(self.vars.len()))
    }

    /// Names among c,d,u,v,w whose every coordinate vanishes on the kernel.
    fn forced_zero(&self, kernel: &[Vec<Q>]) -> Vec<String> {
        let mut out = Vec::new();
        for (name, pred) in [
            ("c", (|v: &Var| *v == Var::C) as fn(&Var) -> bool),
            ("d", |v| *v == Var::D),
            ("u", |v| *v == Var::U),
            ("v", |v| *v == Var::V),
            ("w", |v| matches!(v, Var::W(_))),
        ] {
            let cols: Vec<usize> = self
                .vars
                .iter()
                .filter(|(v, _)| pred(v))
                .map(|(_, k)| *k)
                .collect();
            if !cols.is_empty()
                && kernel
                    .iter()
                    .all(|vec| cols.iter().all(|k| vec[*k].is_zero()))
            {
                out.push(name.to_string());
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoGoReport {
    pub sign_of_mij: String,
    pub forced_zero: Vec<String>,
    pub solution_space_dim: usize,
    pub witnesses: Witnesses,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    /// `m(1⊗S)Δ_ij(Ω) − Ω_i − Ω_j = mij_scale · m_ij`.
    pub mij_scale: String,
    /// The monomial `s_ik f_i e_i²` written in normal form (group part
    /// rightmost) and its coefficient in `[e_k, Σ_i [Y_i, X_i]]`.
    pub single_monomial: String,
    pub single_monomial_coefficient: String,
    pub single_monomial_forces: Vec<String>,
    /// With `c = 0`, the obstruction alone forces these.
    pub obstruction_given_c_zero_forces: Vec<String>,
    /// The cross-relation weight constraints alone force these.
    pub weight_constraints_force: Vec<String>,
    /// `[e_k, f(Ω_i)] = 0` for all `i, k`.
    pub f_independent: bool,
    /// No PBW monomial has the cross weight `η_j − η_i`.
    pub parity_lattice: bool,
    pub unknowns: usize,
    pub equations: usize,
}

impl NoGoReport {
    pub fn all_zero(&self) -> bool {
        self.solution_space_dim == 0
            && ["c", "d", "u", "v", "w"]
                .iter()
                .all(|x| self.forced_zero.iter().any(|y| y == x))
    }
}

/// The `m_ij` sign and scale found by the engine.
pub fn mij_scale(n: usize, i: usize, j: usize) -> Result<Q> {
    let diff = m_ij(n, i, j)?.sub(&casimir(n, i)?)?.sub(&casimir(n, j)?)?;
    let m = mixed_casimir(n, i, j)?;
    let (mono, coef) = m.terms().iter().next().expect("m_ij is nonzero");
    let ratio = diff
        .coef(mono)
        .as_constant()
        .ok_or_else(|| Error::Consistency("symbolic m_ij".into()))?
        / coef.as_constant().expect("numeric");
    if diff != m.scale_q(&ratio) {
        return Err(Error::Consistency(
            "m(1⊗S)Δ(Ω) − Ω_i − Ω_j is not a multiple of m_ij".into(),
        ));
    }
    Ok(ratio)
}

fn obstruction_system(spec: &DeformationSpec, fixed: &BTreeMap<Var, Q>) -> Result<System> {
    let mut sys = System::new();
    for v in [Var::C, Var::D] {
        if !fixed.contains_key(&v) {
            sys.declare(v);
        }
    }
    for k in 0..spec.n {
        sys.require_zero(&obstruction_ek(spec, k)?.subst(fixed))?;
    }
    Ok(sys)
}

fn weight_system(spec: &DeformationSpec) -> Result<System> {
    let n = spec.n;
    let mut sys = System::new();
    sys.declare(Var::U);
    sys.declare(Var::V);
    let rhs = build_deformed_rhs(spec, true)?;
    let per_pair = monomials_up_to(n, spec.w_degree).len();
    for k in 0..per_pair * pairs(n).len() {
        sys.declare(Var::W(k));
    }
    for (i, j) in pairs(n) {
        let a = &rhs[&(i, j)];
        let eta = cross_weight(n, i, j);
        for (l, eta_l) in eta.iter().enumerate() {
            let defect = AlgebraElement::h(n, l)?
                .commutator(a)?
                .sub(&a.scale_q(eta_l))?;
            sys.require_zero(&defect)?;
        }
    }
    Ok(sys)
}

/// Assembles all constraints and solves for `c, d, u, v, w`.
pub fn verify_no_go(spec: &DeformationSpec) -> Result<NoGoReport> {
    let n = spec.n;
    let scale = mij_scale(n, 0, 1)?;
    let sign = if scale < Q::zero() { "-" } else { "+" };

    // the single monomial s_ik f_i e_i² = f_k e_k² s_ik, with i = 0, k = 1
    let (i, k) = (0usize, 1usize);
    let mut mono = Monomial::one(n);
    mono.factors[k] = [1, 0, 2];
    mono.group = Perm::transposition(n, i, k);
    let obstruction = obstruction_ek(spec, k)?;
    let coef = obstruction.coef(&mono);
    let single_forces = match coef.linear_parts() {
        Ok((c0, lin)) if c0.is_zero() && lin.len() == 1 && lin.contains_key(&Var::C) => {
            vec!["c".to_string()]
        }
        _ => Vec::new(),
    };

    let fixed_c = BTreeMap::from([(Var::C, Q::zero())]);
    let obs_c0 = obstruction_system(spec, &fixed_c)?;
    let (_, ker) = obs_c0.solve();
    let obstruction_given_c_zero_forces = obs_c0.forced_zero(&ker);

    let weights = weight_system(spec)?;
    let (_, ker) = weights.solve();
    let weight_constraints_force = weights.forced_zero(&ker);

    // everything together
    let mut all = obstruction_system(spec, &BTreeMap::new())?;
    let w_sys = weight_system(spec)?;
    let offset = all.vars.len();
    for (v, k) in &w_sys.vars {
        all.vars.insert(*v, offset + k);
    }
    for r in &w_sys.rows {
        all.rows
            .push(r.iter().map(|(k, x)| (offset + k, x.clone())).collect());
    }
    let (_, kernel) = all.solve();
    let forced_zero = all.forced_zero(&kernel);

    let mut f_independent = true;
    for i in 0..n {
        let fo = f_of_casimir(spec, i)?;
        for kk in 0..n {
            if !AlgebraElement::e(n, kk)?.commutator(&fo)?.is_zero() {
                f_independent = false;
            }
        }
    }
    let parity_lattice = pairs(n)
        .into_iter()
        .all(|(i, j)| parity_excludes_cross_weight(n, i, j));

    Ok(NoGoReport {
        sign_of_mij: sign.into(),
        forced_zero,
        solution_space_dim: kernel.len(),
        witnesses: Witnesses {
            mij_scale: crate::rational::fmt_q(&scale),
            single_monomial: mono.to_string(),
            single_monomial_coefficient: coef.to_string(),
            single_monomial_forces: single_forces,
            obstruction_given_c_zero_forces,
            weight_constraints_force,
            f_independent,
            parity_lattice,
            unknowns: all.vars.len(),
            equations: all.rows.len(),
        },
    })
}

/// Whether every constraint vanishes at the given parameter values (all
/// `w` unknowns set to zero).
pub fn constraints_hold_at(spec: &DeformationSpec, values: &BTreeMap<Var, Q>) -> Result<bool> {
    let mut vals = values.clone();
    let per_pair = monomials_up_to(spec.n, spec.w_degree).len();
    for k in 0..per_pair * pairs(spec.n).len() {
        vals.entry(Var::W(k)).or_insert_with(Q::zero);
    }
    for k in 0..spec.n {
        let o = obstruction_ek(spec, k)?.subst(&vals);
        if !o.is_zero() {
            return Ok(false);
        }
    }
    let rhs = build_deformed_rhs(spec, false)?;
    for (i, j) in pairs(spec.n) {
        let a = rhs[&(i, j)].subst(&vals);
        let eta = Weight::new(cross_weight(spec.n, i, j))?;
        if !weight_vector_check(&a, &eta)? {
            return Ok(false);
        }
    }
    Ok(true)
}
