//! Simple finite-dimensional `H⋊Γ`-modules: each is induced from a weight
//! line tensored with an irrep of the weight's stabilizer, so it is recorded
//! structurally as (canonical orbit representative, stabilizer, irrep).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symgrp::{induce_restrict_mult, irreps_of, IrrepLabel, StabIrrep};
use crate::weightlat::{
    canonical_rep, orbit, stabilizer, GammaSpec, Perm, StabFactor, Stabilizer, Weight,
};

/// A simple object of the semisimple category of weight `H⋊Γ`-modules.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleX {
    pub orbit_rep: Weight,
    pub stab: Stabilizer,
    pub irrep: StabIrrep,
}

/// Multiset of simple objects.
pub type CObject = BTreeMap<SimpleX, u64>;

impl SimpleX {
    /// The simple object over the Γ-orbit of `lambda` carrying `irrep`, given
    /// as an irrep of the stabilizer of `lambda` itself.
    pub fn from_weight(gamma: &GammaSpec, lambda: &Weight, irrep: &StabIrrep) -> Result<Self> {
        lambda.check_rank(gamma.rank())?;
        let stab = stabilizer(lambda, gamma);
        irrep.validate(&stab)?;
        let (rep, g) = canonical_rep(lambda, gamma);
        let (stab, irrep) = conjugate_irrep(&stab, irrep, &g);
        Ok(SimpleX {
            orbit_rep: rep,
            stab,
            irrep,
        })
    }

    /// The irrep as a representation of the stabilizer of the orbit member
    /// `mu`.
    pub fn irrep_at(&self, gamma: &GammaSpec, mu: &Weight) -> Result<(Stabilizer, StabIrrep)> {
        let (rep, h) = canonical_rep(mu, gamma);
        if rep != self.orbit_rep {
            return Err(Error::InvalidArgument(format!(
                "{mu} is not in the orbit of {}",
                self.orbit_rep
            )));
        }
        Ok(conjugate_irrep(&self.stab, &self.irrep, &h.inverse()))
    }

    pub fn orbit(&self, gamma: &GammaSpec) -> Vec<Weight> {
        orbit(&self.orbit_rep, gamma)
    }

    pub fn orbit_size(&self, gamma: &GammaSpec) -> u64 {
        gamma.order() / self.stab.order()
    }

    /// `dim M_x = [Γ : Γ_λ] · dim N`.
    pub fn dim_m(&self, gamma: &GammaSpec) -> u64 {
        self.orbit_size(gamma) * self.irrep.dim()
    }

    pub fn to_json(&self) -> SimpleXJson {
        SimpleXJson {
            orbit_rep: self.orbit_rep.clone(),
            stab: self.stab.descriptor(),
            irrep: self.irrep.labels(),
        }
    }

    pub fn from_json(j: &SimpleXJson, gamma: &GammaSpec) -> Result<Self> {
        let (rep, _) = canonical_rep(&j.orbit_rep, gamma);
        if rep != j.orbit_rep {
            return Err(Error::InvalidArgument(format!(
                "{} is not a canonical orbit representative",
                j.orbit_rep
            )));
        }
        let stab = stabilizer(&rep, gamma);
        if stab.descriptor() != j.stab {
            return Err(Error::InvalidArgument(format!(
                "stabilizer {} does not match {}",
                j.stab,
                stab.descriptor()
            )));
        }
        let irrep = StabIrrep(
            j.irrep
                .iter()
                .map(|s| IrrepLabel::parse(s))
                .collect::<Result<_>>()?,
        );
        irrep.validate(&stab)?;
        Ok(SimpleX {
            orbit_rep: rep,
            stab,
            irrep,
        })
    }
}

impl fmt::Display for SimpleX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})[{}]", self.orbit_rep, self.irrep.labels().join(";"))
    }
}

/// Serialized form of [`SimpleX`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleXJson {
    pub orbit_rep: Weight,
    pub stab: String,
    pub irrep: Vec<String>,
}

/// Transports an irrep of `stab` to the conjugate subgroup `g·stab·g⁻¹`.
pub fn conjugate_irrep(stab: &Stabilizer, irrep: &StabIrrep, g: &Perm) -> (Stabilizer, StabIrrep) {
    let target = stab.conjugate(g);
    let moved: Vec<(StabFactor, &IrrepLabel)> = stab
        .factors
        .iter()
        .zip(&irrep.0)
        .map(|(f, l)| {
            (
                Stabilizer {
                    factors: vec![f.clone()],
                }
                .conjugate(g)
                .factors
                .remove(0),
                l,
            )
        })
        .collect();
    let labels = target
        .factors
        .iter()
        .map(|f| {
            moved
                .iter()
                .find(|(m, _)| m == f)
                .map(|(_, l)| (*l).clone())
                .expect("conjugation maps factors bijectively")
        })
        .collect();
    (target, StabIrrep(labels))
}

/// Every simple object whose orbit contains `lambda`, canonically sorted.
pub fn classify_x_over(lambda: &Weight, gamma: &GammaSpec) -> Result<Vec<SimpleX>> {
    lambda.check_rank(gamma.rank())?;
    let (rep, _) = canonical_rep(lambda, gamma);
    let stab = stabilizer(&rep, gamma);
    let mut out: Vec<SimpleX> = irreps_of(&stab)
        .into_iter()
        .map(|irrep| SimpleX {
            orbit_rep: rep.clone(),
            stab: stab.clone(),
            irrep,
        })
        .collect();
    out.sort();
    Ok(out)
}

/// `dim x_μ`: the irrep dimension on orbit members, zero elsewhere.
pub fn weight_mult(x: &SimpleX, mu: &Weight, gamma: &GammaSpec) -> Result<u64> {
    mu.check_rank(gamma.rank())?;
    let (rep, _) = canonical_rep(mu, gamma);
    Ok(if rep == x.orbit_rep { x.irrep.dim() } else { 0 })
}

/// Contragredient: partitions are self-dual, cyclic residues negate.
pub fn duality_f(x: &SimpleX) -> SimpleX {
    let labels = x
        .stab
        .factors
        .iter()
        .zip(&x.irrep.0)
        .map(|(f, l)| match (f, l) {
            (StabFactor::Cyclic { order, .. }, IrrepLabel::Residue(j)) => {
                IrrepLabel::Residue((order - j) % order)
            }
            _ => l.clone(),
        })
        .collect();
    SimpleX {
        irrep: StabIrrep(labels),
        ..x.clone()
    }
}

/// `Ind_{from}^{Γ_λ}(carried)` decomposed into simple objects over the orbit
/// of `lambda`.
pub fn decompose_induced(
    gamma: &GammaSpec,
    lambda: &Weight,
    from_stab: &Stabilizer,
    carried: &StabIrrep,
) -> Result<CObject> {
    lambda.check_rank(gamma.rank())?;
    let full = stabilizer(lambda, gamma);
    if !from_stab.is_subgroup_of(&full) {
        return Err(Error::NotSubgroup(format!(
            "{} is not contained in {}",
            from_stab.descriptor(),
            full.descriptor()
        )));
    }
    carried.validate(from_stab)?;
    let mut out = CObject::new();
    for n in irreps_of(&full) {
        let m = induce_restrict_mult(from_stab, carried, &full, &n)?;
        if m > 0 {
            *out.entry(SimpleX::from_weight(gamma, lambda, &n)?)
                .or_default() += m;
        }
    }
    Ok(out)
}

fn shift_factor(f: &StabFactor, by: isize) -> StabFactor {
    let s = |i: usize| (i as isize + by) as usize;
    match f {
        StabFactor::Sym(c) => StabFactor::Sym(c.iter().map(|&i| s(i)).collect()),
        StabFactor::Cyclic {
            start,
            width,
            order,
        } => StabFactor::Cyclic {
            start: s(*start),
            width: *width,
            order: *order,
        },
    }
}

fn factor_start(f: &StabFactor) -> usize {
    match f {
        StabFactor::Sym(c) => c[0],
        StabFactor::Cyclic { start, .. } => *start,
    }
}

/// Splits a simple object of a multi-block Γ into its per-block factors.
pub fn split_x(x: &SimpleX, gamma: &GammaSpec) -> Vec<SimpleX> {
    gamma
        .block_ranges()
        .into_iter()
        .map(|(start, width)| {
            let (factors, labels): (Vec<StabFactor>, Vec<IrrepLabel>) = x
                .stab
                .factors
                .iter()
                .zip(&x.irrep.0)
                .filter(|(f, _)| (start..start + width).contains(&factor_start(f)))
                .map(|(f, l)| (shift_factor(f, -(start as isize)), l.clone()))
                .unzip();
            SimpleX {
                orbit_rep: x.orbit_rep.slice(start, width),
                stab: Stabilizer { factors },
                irrep: StabIrrep(labels),
            }
        })
        .collect()
}

/// Inverse of [`split_x`]: the external tensor product of per-block simples.
pub fn concat_x(parts: &[SimpleX]) -> SimpleX {
    let mut offset = 0;
    let mut factors = Vec::new();
    let mut labels = Vec::new();
    for p in parts {
        factors.extend(
            p.stab
                .factors
                .iter()
                .map(|f| shift_factor(f, offset as isize)),
        );
        labels.extend(p.irrep.0.iter().cloned());
        offset += p.orbit_rep.rank();
    }
    SimpleX {
        orbit_rep: Weight::concat(
            &parts
                .iter()
                .map(|p| p.orbit_rep.clone())
                .collect::<Vec<_>>(),
        ),
        stab: Stabilizer { factors },
        irrep: StabIrrep(labels),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgrp::Partition;

    fn g(s: &str) -> GammaSpec {
        GammaSpec::parse(s).unwrap()
    }

    fn w(s: &str) -> Weight {
        Weight::parse(s).unwrap()
    }

    #[test]
    fn classification_examples() {
        let xs = classify_x_over(&w("1,0"), &g("S:2")).unwrap();
        assert_eq!(xs.len(), 1);
        assert_eq!(xs[0].dim_m(&g("S:2")), 2);
        assert_eq!(xs[0].orbit_rep, w("0,1"));

        let xs = classify_x_over(&w("3,3"), &g("S:2")).unwrap();
        assert_eq!(xs.len(), 2);
        assert_eq!(xs[0].irrep.labels(), vec!["2"]);
        assert_eq!(xs[1].irrep.labels(), vec!["1,1"]);
        assert!(xs.iter().all(|x| x.dim_m(&g("S:2")) == 1));

        let xs = classify_x_over(&w("1/2,-3,7"), &g("1:3")).unwrap();
        assert_eq!(xs.len(), 1);
        assert_eq!(xs[0].dim_m(&g("1:3")), 1);
    }

    #[test]
    fn weight_multiplicities() {
        let gamma = g("S:2");
        let x = &classify_x_over(&w("1,0"), &gamma).unwrap()[0];
        assert_eq!(weight_mult(x, &w("0,1"), &gamma).unwrap(), 1);
        assert_eq!(weight_mult(x, &w("5,5"), &gamma).unwrap(), 0);
        let s3 = g("S:3");
        let xs = classify_x_over(&w("1/3,1/3,1/3"), &s3).unwrap();
        let x21 = xs
            .iter()
            .find(|x| x.irrep.0[0] == IrrepLabel::Part(Partition::new(vec![2, 1]).unwrap()))
            .unwrap();
        assert_eq!(weight_mult(x21, &w("1/3,1/3,1/3"), &s3).unwrap(), 2);
    }

    #[test]
    fn duality() {
        let xs = classify_x_over(&w("3,3"), &g("S:2")).unwrap();
        assert_eq!(duality_f(&xs[1]), xs[1]);
        let c3 = g("C:3");
        let xs = classify_x_over(&w("1/2,1/2,1/2"), &c3).unwrap();
        assert_eq!(duality_f(&xs[1]), xs[2]);
        assert_eq!(duality_f(&xs[0]), xs[0]);
        for x in &xs {
            assert_eq!(duality_f(&duality_f(x)), *x);
        }
    }

    #[test]
    fn induced_decompositions() {
        let gamma = g("S:2");
        let lam = w("4,4");
        let trivial = Stabilizer {
            factors: vec![StabFactor::Sym(vec![0]), StabFactor::Sym(vec![1])],
        };
        let obj = decompose_induced(&gamma, &lam, &trivial, &StabIrrep::trivial(&trivial)).unwrap();
        assert_eq!(obj.len(), 2);
        assert!(obj.values().all(|m| *m == 1));

        let full = stabilizer(&lam, &gamma);
        for n in irreps_of(&full) {
            let obj = decompose_induced(&gamma, &lam, &full, &n).unwrap();
            assert_eq!(
                obj.into_iter().collect::<Vec<_>>(),
                vec![(SimpleX::from_weight(&gamma, &lam, &n).unwrap(), 1)]
            );
        }

        let c3 = g("C:3");
        let lam = w("1/2,1/2,1/2");
        let c1 = Stabilizer {
            factors: vec![StabFactor::Cyclic {
                start: 0,
                width: 3,
                order: 1,
            }],
        };
        let obj =
            decompose_induced(&c3, &lam, &c1, &StabIrrep(vec![IrrepLabel::Residue(0)])).unwrap();
        assert_eq!(obj.len(), 3);

        let bad = decompose_induced(&gamma, &w("1,0"), &full, &StabIrrep::trivial(&full));
        assert!(bad.is_err());
    }

    #[test]
    fn orbit_members_and_json() {
        let gamma = g("S:2,1;C:3");
        let lam = w("5,2,5,1/2,1/2,1/2");
        for x in classify_x_over(&lam, &gamma).unwrap() {
            let j = serde_json::to_string(&x.to_json()).unwrap();
            let back: SimpleXJson = serde_json::from_str(&j).unwrap();
            assert_eq!(SimpleX::from_json(&back, &gamma).unwrap(), x);
            let (st, ir) = x.irrep_at(&gamma, &lam).unwrap();
            assert_eq!(st, stabilizer(&lam, &gamma));
            assert_eq!(SimpleX::from_weight(&gamma, &lam, &ir).unwrap(), x);
            let parts = split_x(&x, &gamma);
            assert_eq!(parts.len(), 2);
            assert_eq!(concat_x(&parts), x);
        }
    }
}
