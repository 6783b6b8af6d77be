//! Invariants checked on generated inputs.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use skew_o::cato_a::{
    ch_simple_a, ch_verma, s_sets_a, verma_factors_a, weights_below, CharacterVB,
};
use skew_o::clifford::{classify_x_over, duality_f, SimpleX};
use skew_o::linalg::is_symmetric;
use skew_o::pbw::{
    central_character, conjugate_group_element, symmetric_center_gen, AlgebraElement, Monomial,
};
use skew_o::poly::Poly;
use skew_o::rational::{is_nonneg_integer, q, q_frac, Q};
use skew_o::selftest::random_gamma;
use skew_o::skew::{
    block_matrices, ch_simple_skew, ch_verma_skew, s3_skew, s3_union_over_weight, s4_skew,
    simples_over_four_setups, verma_decompose_skew, BlockData,
};
use skew_o::symgrp::{dim_irrep, partitions, CharTable};
use skew_o::weightlat::{
    canonical_rep, factorial, gamma_act, kostant_p, leq, orbit, stabilizer, GammaSpec, Perm,
    RootVector, SignedPermutation, Weight,
};

fn coord() -> impl Strategy<Value = Q> {
    prop_oneof![
        6 => (-4i64..=4).prop_map(q),
        3 => (-3i64..=2).prop_map(|k| q_frac(2 * k + 1, 2)),
        1 => (-1i64..=1).prop_map(|k| q_frac(3 * k + 1, 3)),
    ]
}

/// Weights that often repeat coordinates, so that stabilizers are nontrivial.
fn weight(n: usize) -> impl Strategy<Value = Weight> {
    (
        proptest::collection::vec(coord(), 2),
        proptest::collection::vec(0usize..3, n),
        proptest::collection::vec(coord(), n),
    )
        .prop_map(|(pool, pick, fresh)| {
            let coords = pick
                .iter()
                .zip(fresh)
                .map(|(k, f)| if *k < 2 { pool[*k].clone() } else { f })
                .collect();
            Weight::new(coords).unwrap()
        })
}

fn gamma_and_weight(max_n: usize) -> impl Strategy<Value = (GammaSpec, Weight)> {
    (1..=max_n, any::<u64>()).prop_flat_map(|(n, seed)| {
        let g = random_gamma(&mut ChaCha8Rng::seed_from_u64(seed), n);
        (Just(g), weight(n))
    })
}

fn pick<T: Clone>(items: &[T], k: usize) -> T {
    items[k % items.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_action_preserves_order((gamma, lambda) in gamma_and_weight(4), steps in proptest::collection::vec(0i64..3, 4), k in 0usize..1000) {
        let n = lambda.rank();
        let mu = Weight::new(lambda.coords().iter().zip(&steps).map(|(c, s)| c - q(2 * s)).collect()).unwrap();
        prop_assert!(leq(&mu, &lambda).unwrap());
        let g = pick(&gamma.elements(), k);
        prop_assert!(leq(&gamma_act(&g, &mu, &gamma).unwrap(), &gamma_act(&g, &lambda, &gamma).unwrap()).unwrap());
        prop_assert_eq!(n, mu.rank());
    }

    #[test]
    fn dot_action_is_an_action(lambda in weight(3), a in 0usize..6, b in 0usize..6, fa in proptest::collection::vec(any::<bool>(), 3), fb in proptest::collection::vec(any::<bool>(), 3)) {
        let perms = GammaSpec::symmetric(3).elements();
        let s1 = SignedPermutation::new(pick(&perms, a), fa).unwrap();
        let s2 = SignedPermutation::new(pick(&perms, b), fb).unwrap();
        let lhs = s1.dot_act(&s2.dot_act(&lambda).unwrap()).unwrap();
        prop_assert_eq!(lhs, s1.compose(&s2).dot_act(&lambda).unwrap());
        prop_assert_eq!(SignedPermutation::identity(3).dot_act(&lambda).unwrap(), lambda);
    }

    #[test]
    fn orbit_stabilizer((gamma, lambda) in gamma_and_weight(4)) {
        let o = orbit(&lambda, &gamma);
        prop_assert_eq!(o.len() as u64 * stabilizer(&lambda, &gamma).order(), gamma.order());
        let rep = canonical_rep(&lambda, &gamma).0;
        prop_assert!(o.contains(&rep));
        prop_assert!(o.iter().all(|w| canonical_rep(w, &gamma).0 == rep));
    }

    #[test]
    fn sl2_partition_function_is_an_indicator(theta in proptest::collection::vec(coord(), 1..=3)) {
        let n = theta.len();
        let p = kostant_p(&RootVector(theta.clone()), &RootVector::simple_roots(n)).unwrap();
        let expected = theta.iter().all(|t| is_nonneg_integer(t) && skew_o::rational::is_even_integer(t));
        prop_assert_eq!(p, u64::from(expected));
    }

    #[test]
    fn simples_account_for_the_induced_module((gamma, lambda) in gamma_and_weight(4)) {
        let xs = classify_x_over(&lambda, &gamma).unwrap();
        // Ind_H^{H⋊Γ} k^λ contains each x with multiplicity dim N_x
        let total: u64 = xs.iter().map(|x| x.irrep.dim() * x.dim_m(&gamma)).sum();
        prop_assert_eq!(total, gamma.order());
        for g in gamma.elements().iter().take(6) {
            prop_assert_eq!(&classify_x_over(&g.act(&lambda), &gamma).unwrap(), &xs);
        }
        for x in &xs {
            let fx = duality_f(x);
            prop_assert_eq!(&fx.orbit_rep, &x.orbit_rep);
            prop_assert_eq!(&duality_f(&fx), x);
        }
    }

    #[test]
    fn simples_of_products_are_products((gamma, lambda) in gamma_and_weight(4)) {
        let lambdas: Vec<Weight> = gamma.block_ranges().into_iter().map(|(s, w)| lambda.slice(s, w)).collect();
        let four = simples_over_four_setups(&gamma, &lambdas).unwrap();
        let per_block: usize = four.block_simples.iter().map(Vec::len).product();
        prop_assert_eq!(four.simples.len(), per_block);
    }

    #[test]
    fn verma_character_splits_into_simples(lambda in weight(2)) {
        let mut sum = CharacterVB::zero(2);
        for (mu, m) in verma_factors_a(&lambda) {
            sum.add_scaled(&ch_simple_a(&mu), m as i64);
        }
        let z = ch_verma(&lambda);
        for nu in weights_below(&lambda, 12) {
            prop_assert_eq!(z.weight_dim(&nu).unwrap(), sum.weight_dim(&nu).unwrap());
        }
    }

    #[test]
    fn linkage_sets_are_functorial(a in weight(2), b in weight(2), m in 1u8..=4, k in 0usize..24) {
        let lambda = Weight::concat(&[a.clone(), b.clone()]);
        let g = pick(&GammaSpec::symmetric(4).elements(), k);
        let image: BTreeSet<Weight> = s_sets_a(&lambda, m).unwrap().iter().map(|w| g.act(w)).collect();
        prop_assert_eq!(image, s_sets_a(&g.act(&lambda), m).unwrap());
        let product: BTreeSet<Weight> = s_sets_a(&a, m).unwrap().iter()
            .flat_map(|x| s_sets_a(&b, m).unwrap().into_iter().map(move |y| Weight::concat(&[x.clone(), y])))
            .collect();
        prop_assert_eq!(product, s_sets_a(&lambda, m).unwrap());
    }

    #[test]
    fn s3_within_s4(lambda in weight(3)) {
        let s3 = s_sets_a(&lambda, 3).unwrap();
        let s4 = s_sets_a(&lambda, 4).unwrap();
        prop_assert!(s3.is_subset(&s4));
        prop_assert_eq!(s3 == s4, lambda.is_integral());
    }
}

fn restriction_length_ok(x: &SimpleX, gamma: &GammaSpec) -> bool {
    let lhs: u64 = verma_decompose_skew(x, gamma)
        .unwrap()
        .iter()
        .map(|(y, m)| m * y.orbit_size(gamma) * y.irrep.dim())
        .sum();
    let flips = x
        .orbit_rep
        .coords()
        .iter()
        .filter(|c| is_nonneg_integer(c))
        .count();
    lhs == x.dim_m(gamma) * (1u64 << flips)
}

fn check_block(b: &BlockData) -> Result<(), TestCaseError> {
    let n = b.order.len();
    for i in 0..n {
        prop_assert_eq!(b.d[i][i], 1);
        for j in 0..i {
            prop_assert_eq!(b.d[i][j], 0);
        }
    }
    let f2 = skew_o::linalg::mat_mul(&b.f, &b.f);
    prop_assert_eq!(f2, skew_o::linalg::identity(n));
    prop_assert!(is_symmetric(&b.cprime));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn blocks_satisfy_reciprocity((gamma, lambda) in gamma_and_weight(3)) {
        for x in classify_x_over(&lambda, &gamma).unwrap() {
            let b = block_matrices(&x, &gamma).unwrap();
            check_block(&b)?;
            if gamma.is_trivial() {
                prop_assert!(is_symmetric(&b.c));
            }
            prop_assert!(restriction_length_ok(&x, &gamma));
            let s3 = s3_skew(&x, &gamma).unwrap();
            let s4 = s4_skew(&x, &gamma).unwrap();
            prop_assert!(s3.is_subset(&s4));
            let union = s3_union_over_weight(&lambda, &gamma).unwrap();
            prop_assert!(union.is_subset(&s4));
            prop_assert_eq!(union == s4, lambda.is_integral());
            // positivity: factors of Z(x) sit exactly over the A-factors of the orbit
            let over: BTreeSet<Weight> = verma_decompose_skew(&x, &gamma).unwrap().keys().map(|y| y.orbit_rep.clone()).collect();
            let a_side: BTreeSet<Weight> = orbit(&x.orbit_rep, &gamma).iter()
                .flat_map(|mu| verma_factors_a(mu).into_keys())
                .map(|mu| canonical_rep(&mu, &gamma).0)
                .collect();
            prop_assert_eq!(over, a_side);
            // JSON round trip
            let j = serde_json::to_string(&b.to_json()).unwrap();
            let back = BlockData::from_json(&serde_json::from_str(&j).unwrap(), &gamma).unwrap();
            prop_assert_eq!(back, b);
        }
    }

    #[test]
    fn verma_character_is_a_sum_of_simple_characters((gamma, lambda) in gamma_and_weight(2)) {
        for x in classify_x_over(&lambda, &gamma).unwrap() {
            let mut sum = CharacterVB::zero(gamma.rank());
            for (y, m) in verma_decompose_skew(&x, &gamma).unwrap() {
                sum.add_scaled(&ch_simple_skew(&y, &gamma), m as i64);
            }
            let z = ch_verma_skew(&x, &gamma);
            for top in orbit(&x.orbit_rep, &gamma) {
                for nu in weights_below(&top, 8) {
                    prop_assert_eq!(z.weight_dim(&nu).unwrap(), sum.weight_dim(&nu).unwrap());
                }
            }
        }
    }
}

#[test]
fn character_tables_are_orthogonal() {
    for n in 1..=7 {
        let t = CharTable::compute(n).unwrap();
        t.validate().unwrap();
        let dims: u64 = partitions(n).iter().map(|p| dim_irrep(p).pow(2)).sum();
        assert_eq!(dims, factorial(n));
        // first column is the dimension
        for (p, row) in t.partitions.iter().zip(&t.values) {
            assert_eq!(row[0], dim_irrep(p) as i64);
        }
    }
}

// --- PBW engine ------------------------------------------------------------

fn element(n: usize) -> impl Strategy<Value = AlgebraElement> {
    let perms = GammaSpec::symmetric(n).elements();
    proptest::collection::vec(
        (
            proptest::collection::vec(proptest::array::uniform3(0u32..=2), n),
            0usize..perms.len(),
            -3i64..=3,
        ),
        1..=3,
    )
    .prop_map(move |terms| {
        let mut a = AlgebraElement::zero(n);
        for (factors, g, c) in terms {
            a.add_term(
                Monomial {
                    factors,
                    group: perms[g].clone(),
                },
                Poly::int(c),
            );
        }
        a
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn multiplication_is_associative(a in element(2), b in element(2), c in element(2)) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn anti_involution_reverses_products(a in element(2), b in element(2)) {
        prop_assert_eq!(a.anti_involution().unwrap().anti_involution().unwrap(), a.clone());
        let lhs = a.mul(&b).unwrap().anti_involution().unwrap();
        let rhs = b.anti_involution().unwrap().mul(&a.anti_involution().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_commutes_with_the_group(a in element(2), k in 0usize..2) {
        let g = pick(&GammaSpec::symmetric(2).elements(), k);
        prop_assert_eq!(a.hc_projection().conjugate_by(&g), a.conjugate_by(&g).hc_projection());
    }

    #[test]
    fn json_round_trip(a in element(2)) {
        let j = serde_json::to_string(&a.to_json()).unwrap();
        let back = AlgebraElement::from_json(&serde_json::from_str::<Vec<_>>(&j).unwrap(), 2).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn central_character_is_multiplicative(lambda in weight(2), j in 1u32..=2, k in 1u32..=2) {
        let none = BTreeMap::new();
        let pj = symmetric_center_gen(2, j).unwrap();
        let pk = symmetric_center_gen(2, k).unwrap();
        let prod = central_character(&lambda, &pj.mul(&pk).unwrap(), &none).unwrap();
        let a = central_character(&lambda, &pj, &none).unwrap();
        let b = central_character(&lambda, &pk, &none).unwrap();
        let scalar = |x: &BTreeMap<Perm, Q>| x.get(&Perm::identity(2)).cloned().unwrap_or_default();
        prop_assert_eq!(prod.len() <= 1, true);
        prop_assert_eq!(scalar(&prod), scalar(&a) * scalar(&b));
    }

    #[test]
    fn central_character_is_equivariant(lambda in weight(2), r in element(2), k in 0usize..2) {
        let none = BTreeMap::new();
        let beta = pick(&GammaSpec::symmetric(2).elements(), k);
        let lhs = central_character(&beta.act(&lambda), &r, &none).unwrap();
        let inner = central_character(&lambda, &r.conjugate_by(&beta.inverse()), &none).unwrap();
        prop_assert_eq!(lhs, conjugate_group_element(&inner, &beta));
    }
}

#[test]
fn stabilizers_of_every_small_weight_are_consistent() {
    // exhaustive over n ≤ 4 with coordinates from a small alphabet
    let alphabet = [q(0), q(1), q_frac(1, 2)];
    for gamma_s in ["S:4", "C:4", "S:2,2", "S:2;C:2", "1:4", "S:3;1:1"] {
        let gamma = GammaSpec::parse(gamma_s).unwrap();
        for code in 0..81usize {
            let coords: Vec<Q> = (0..4)
                .map(|i| alphabet[(code / 3usize.pow(i)) % 3].clone())
                .collect();
            let lambda = Weight::new(coords).unwrap();
            let xs = classify_x_over(&lambda, &gamma).unwrap();
            let total: u64 = xs.iter().map(|x| x.irrep.dim() * x.dim_m(&gamma)).sum();
            assert_eq!(total, gamma.order(), "{gamma_s} {lambda}");
            assert!(restriction_length_ok(&xs[0], &gamma));
        }
    }
}
