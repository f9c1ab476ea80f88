//! Randomized properties of the field, form, code, construction, gauge and
//! bound layers, each checked against an independent computation.

mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use subsystem_codes::bounds::{krawtchouk_alphabet, ParameterQuery, Verdict};
use subsystem_codes::codespace::{parse_code, write_code, AdditiveCode, Form, Metric};
use subsystem_codes::construct::{gv_random_code, subsystem_from_additive, subsystem_from_quadratic};
use subsystem_codes::distance::{min_weight, DistanceOptions};
use subsystem_codes::forms::{phi_code, phi_inv_code, swt, symplectic_product};
use subsystem_codes::gauge::{hyperbolic_basis, reduce_gauge};

const QS: [u32; 5] = [2, 3, 4, 5, 7];

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn phi_preserves_weight_and_form(qi in 0..QS.len(), n in 1usize..8, seed in any::<u64>()) {
        let pair = common::pair(QS[qi]);
        let mut rng = common::rng(seed);
        prop_assert_eq!(common::phi_trial(&pair, n, &mut rng), Ok(()));
    }

    #[test]
    fn krawtchouk_matches_generating_function(n in 0usize..12, a in 2u64..50, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (j, r) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        prop_assert_eq!(krawtchouk_alphabet(j, r, n, a).unwrap(), common::krawtchouk_poly(j, r, n, a));
    }

    #[test]
    fn counting_bound_matches_oracle(n in 1usize..16, qi in 0..QS.len(), seed in any::<u64>()) {
        let q = QS[qi];
        let mut rng = common::rng(seed);
        let k = rng.gen_range(0..=n);
        let r = rng.gen_range(0..=n - k);
        let d = rng.gen_range(1..=n);
        prop_assume!(k + r > 0);
        let rep = subsystem_codes::bounds::gv_subsystem(&ParameterQuery::new(n, q, k, r, d).unwrap()).unwrap();
        let p = subsystem_codes::bounds::prime_power(q).unwrap().0;
        let (lhs, rhs) = common::gv_oracle(n, q, p, k, r, d);
        prop_assert_eq!(rep.get("lhs").map(str::to_owned), Some(lhs.to_string()));
        prop_assert_eq!(rep.get("rhs").map(str::to_owned), Some(rhs.to_string()));
        prop_assert_eq!(rep.verdict == Verdict::GvExists, lhs < rhs);
    }
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn product_duality(qi in 0usize..3, n in 1usize..7, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        prop_assert_eq!(common::product_duality_trial(&mut rng, [2, 3, 4][qi], n), Ok(()));
    }

    #[test]
    fn duality_laws(qi in 0usize..3, n in 1usize..6, seed in any::<u64>()) {
        let f = common::field([2, 3, 4][qi]);
        let mut rng = common::rng(seed);
        let a = common::random_additive_code(&mut rng, &f, n, 2 * n);
        let b = common::random_additive_code(&mut rng, &f, n, 2 * n);
        let dual = |c: &AdditiveCode| c.dual(Form::TraceSymplectic).unwrap();
        prop_assert_eq!(dual(&a.intersect(&b).unwrap()), dual(&a).sum(&dual(&b)).unwrap());
        prop_assert_eq!(a.log_p_size() + dual(&a).log_p_size(), a.space().log_p_ambient());
        let big = a.sum(&b).unwrap();
        prop_assert!(dual(&big).is_subcode_of(&dual(&a)).unwrap());
        prop_assert_eq!(dual(&dual(&a)), a.clone());
        // Every generator of the dual pairs to zero with every generator.
        for u in a.generators() {
            for v in dual(&a).generators() {
                prop_assert_eq!(symplectic_product(&f, &u, &v).unwrap(), 0);
            }
        }
    }

    #[test]
    fn canonical_form_ignores_generator_order(qi in 0..QS.len(), n in 1usize..6, seed in any::<u64>()) {
        let f = common::field(QS[qi]);
        let mut rng = common::rng(seed);
        let c = common::random_additive_code(&mut rng, &f, n, 2 * n);
        let mut rows = c.generators();
        // redundant rows, then shuffled
        rows.extend(rows.clone());
        rows.shuffle(&mut rng);
        prop_assert_eq!(AdditiveCode::from_generators(c.space(), &rows).unwrap(), c);
    }

    #[test]
    fn code_file_round_trip(qi in 0..QS.len(), n in 1usize..6, seed in any::<u64>()) {
        let f = common::field(QS[qi]);
        let mut rng = common::rng(seed);
        let c = common::random_additive_code(&mut rng, &f, n, 2 * n);
        let text = write_code(&c);
        let back = parse_code(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(write_code(&back), text);
    }

    #[test]
    fn phi_transports_codes(qi in 0usize..4, n in 1usize..5, seed in any::<u64>()) {
        let q = QS[qi];
        let pair = common::pair(q);
        let mut rng = common::rng(seed);
        let c = common::random_additive_code(&mut rng, pair.base(), n, 2 * n);
        let image = phi_code(&pair, &c).unwrap();
        prop_assert_eq!(phi_inv_code(&image).unwrap(), c.clone());
        let dual_image = phi_code(&pair, &c.dual(Form::TraceSymplectic).unwrap()).unwrap();
        prop_assert_eq!(image.dual(Form::TraceAlternating).unwrap(), dual_image);
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn builder_cardinalities(qi in 0usize..4, n in 1usize..5, seed in any::<u64>()) {
        let q = QS[qi];
        let f = common::field(q);
        let nm = n * f.degree() as usize;
        let mut rng = common::rng(seed);
        let s = rng.gen_range(0..=nm);
        let r = rng.gen_range(0..=nm - s);
        prop_assume!(r + s > 0);
        let x = gv_random_code(&f, n, r, s, seed).unwrap();
        prop_assert_eq!(x.log_p_size(), r + 2 * s);
        prop_assert_eq!(common::radical_log_size(&x), r);
    }

    #[test]
    fn hyperbolic_basis_is_canonical(pi in 0usize..3, n in 1usize..6, seed in any::<u64>()) {
        let f = common::field([2, 3, 5][pi]);
        let mut rng = common::rng(seed);
        let c = common::random_additive_code(&mut rng, &f, n, 2 * n);
        let hb = hyperbolic_basis(&c, None).unwrap();
        let sp = |u: &[u16], v: &[u16]| symplectic_product(&f, u, v).unwrap();
        let mut all: Vec<Vec<u16>> = Vec::new();
        for (i, (z, x)) in hb.pairs.iter().enumerate() {
            prop_assert_eq!(sp(x, z), 1);
            for (j, (z2, x2)) in hb.pairs.iter().enumerate() {
                if i != j {
                    prop_assert_eq!(sp(x, z2), 0);
                    prop_assert_eq!(sp(x, x2), 0);
                    prop_assert_eq!(sp(z, z2), 0);
                }
            }
            for w in &hb.residual {
                prop_assert_eq!(sp(x, w), 0);
                prop_assert_eq!(sp(z, w), 0);
            }
            all.push(z.clone());
            all.push(x.clone());
        }
        for w in &hb.residual {
            for w2 in &hb.residual {
                prop_assert_eq!(sp(w, w2), 0);
            }
        }
        all.extend(hb.residual.iter().cloned());
        prop_assert_eq!(all.len(), c.log_p_size());
        prop_assert_eq!(AdditiveCode::from_generators(c.space(), &all).unwrap(), c.clone());
        prop_assert_eq!(hb.residual.len(), common::radical_log_size(&c));
    }

    #[test]
    fn subsystem_identities(qi in 0usize..3, n in 1usize..5, seed in any::<u64>()) {
        let f = common::field([2, 3, 4][qi]);
        let mut rng = common::rng(seed);
        let x = common::random_additive_code(&mut rng, &f, n, 2 * n);
        prop_assume!(!x.is_zero());
        let code = subsystem_from_additive(&x, &DistanceOptions::default()).unwrap();
        let nm = n * f.degree() as usize;
        // K·R·|Y| = q^n
        prop_assert_eq!(code.log_p_k() + code.log_p_r() + code.y().log_p_size(), nm);
        let xd = x.dual(Form::TraceSymplectic).unwrap();
        prop_assert_eq!(x.sum(&xd).unwrap(), code.y().dual(Form::TraceSymplectic).unwrap());
        // The distance is the least swt over Y^⊥s outside X, found by brute force.
        if !code.is_degenerate() {
            let mut best: Option<usize> = None;
            code.y_dual().for_each_expanded(|row| {
                let v = code.y_dual().space().pack_vector(row);
                if !x.contains(&v).unwrap() {
                    let w = swt(&v);
                    best = Some(best.map_or(w, |b| b.min(w)));
                }
            });
            prop_assert_eq!(code.distance().value.exact(), best);
        }
    }

    #[test]
    fn quadratic_route_agrees(qi in 0usize..3, n in 1usize..4, seed in any::<u64>()) {
        let pair = common::pair([2, 3, 4][qi]);
        let mut rng = common::rng(seed);
        let x = common::random_additive_code(&mut rng, pair.base(), n, 2 * n);
        prop_assume!(!x.is_zero());
        let opts = DistanceOptions::default();
        let a = subsystem_from_additive(&x, &opts).unwrap();
        let b = subsystem_from_quadratic(&phi_code(&pair, &x).unwrap(), &opts).unwrap();
        prop_assert_eq!(a.label(), b.label());
        prop_assert_eq!(a.distance().value, b.distance().value);
        prop_assert_eq!(a.purity().value, b.purity().value);
    }

    #[test]
    fn gauge_reduction_keeps_k_and_distance(pi in 0usize..3, n in 2usize..5, seed in any::<u64>()) {
        let f = common::field([2, 3, 5][pi]);
        let mut rng = common::rng(seed);
        let s = rng.gen_range(1..=n);
        let r = rng.gen_range(0..=n - s);
        let x = gv_random_code(&f, n, r, s, seed).unwrap();
        let opts = DistanceOptions::default();
        let code = subsystem_from_additive(&x, &opts).unwrap();
        prop_assume!(!code.is_degenerate());
        let out = reduce_gauge(&code, &opts).unwrap();
        prop_assert_eq!(out.log_p_k(), code.log_p_k());
        prop_assert_eq!(out.log_p_r() + 1, code.log_p_r());
        prop_assert_eq!(out.x().log_p_size() + 1, x.log_p_size());
        prop_assert!(out.x().is_subcode_of(&x).unwrap());
        prop_assert!(out.distance().value.exact() >= code.distance().value.exact());
        if code.purity().value.exact().is_some() {
            prop_assert_eq!(out.purity().value, code.purity().value);
            let direct = min_weight(out.x(), Metric::Symplectic, &opts).unwrap();
            prop_assert_eq!(direct.value, code.purity().value);
        }
    }

    #[test]
    fn macwilliams_on_random_codes(qi in 0usize..3, n in 1usize..5, seed in any::<u64>()) {
        let q = [2u32, 3, 4][qi];
        let f = common::field(q);
        let mut rng = common::rng(seed);
        let c = common::random_additive_code(&mut rng, &f, n, 2 * n);
        prop_assert_eq!(common::macwilliams_check(&c, Form::TraceSymplectic, Metric::Symplectic, (q * q) as u64), Ok(()));
        let pair = common::pair(q);
        let cq = phi_code(&pair, &common::random_additive_code(&mut rng, pair.base(), n, 2 * n)).unwrap();
        prop_assert_eq!(common::macwilliams_check(&cq, Form::TraceAlternating, Metric::Hamming, (q * q) as u64), Ok(()));
    }
}

#[test]
fn builder_draws_distinct_codes() {
    let distinct = common::builder_trials(2, 5, 1, 2, 0..100).unwrap();
    assert!(distinct >= 2, "{distinct}");
}

#[test]
fn no_mds_subsystem_parameters_with_gauge() {
    assert!(common::mds_gauge_sweep(8, &[2, 3]).unwrap() > 0);
}

#[test]
fn farkas_oracle_rejects_a_wrong_certificate() {
    let rows = common::lp_rows(5, 2, 1, 1, 3);
    let q = ParameterQuery::new(5, 2, 1, 1, 3).unwrap();
    let rep = subsystem_codes::bounds::lp_feasible(&q).unwrap();
    let mut y = common::parse_farkas(rep.get("farkas").unwrap());
    assert_eq!(common::check_farkas(&rows, &y), Ok(()));
    for v in y.iter_mut() {
        *v = -v.clone();
    }
    assert!(common::check_farkas(&rows, &y).is_err());
}

#[test]
fn lp_rows_match_library() {
    for (n, q, k, r, d) in [(5, 2, 1, 1, 3), (4, 3, 2, 1, 2), (9, 4, 3, 2, 4)] {
        let query = ParameterQuery::new(n, q, k, r, d).unwrap();
        let lib = subsystem_codes::bounds::lp_constraints(&query).unwrap();
        let m = query.m as usize;
        let ours = common::lp_rows(n, q, k * m, r * m, d);
        assert_eq!(lib.len(), ours.len());
        for (a, (coeffs, eq, rhs)) in lib.iter().zip(&ours) {
            assert_eq!(&a.coeffs, coeffs);
            assert_eq!(a.rhs, *rhs);
            assert_eq!(a.relation == subsystem_codes::simplex::Relation::Eq, *eq);
        }
    }
}
