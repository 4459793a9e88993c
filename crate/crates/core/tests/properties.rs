//! Property tests for the exact-arithmetic core and the algebra layer.

mod common;

use proptest::prelude::*;
use std::collections::BTreeMap;
use xcknot_core::algebra::{Perm, Tensor};
use xcknot_core::diagram::{parse_diagram, stats, to_bead_word, Bead, Event, RotDiagram};
use xcknot_core::scalar::{
    param_set, parse_expr, parse_scalar, GaussianRational, Monomial, Polynomial, Scalar, Var,
};
use xcknot_core::sweedler::{invert_by_closed_form, sweedler_spec, IDX_SW, IDX_W};

const PROP_VARS: [&str; 3] = ["pv_x", "pv_y", "pv_z"];

fn arb_gaussian() -> impl Strategy<Value = GaussianRational> {
    (-20i64..=20, 1i64..=10, -20i64..=20, 1i64..=10).prop_map(|(a, b, c, d)| {
        let re = GaussianRational::from_ratio(a, b);
        let im = &GaussianRational::from_ratio(c, d) * &GaussianRational::i();
        &re + &im
    })
}

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0u32..3, 3).prop_map(|exps| {
        Monomial::from_pairs(
            PROP_VARS
                .iter()
                .zip(exps)
                .map(|(name, e)| (Var::new(name), e)),
        )
    })
}

fn arb_polynomial() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((arb_monomial(), arb_gaussian()), 0..4)
        .prop_map(Polynomial::from_terms)
}

fn arb_nonzero_polynomial() -> impl Strategy<Value = Polynomial> {
    arb_polynomial().prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (arb_polynomial(), arb_nonzero_polynomial()).prop_map(|(n, d)| Scalar::new(n, d))
}

fn arb_assignment() -> impl Strategy<Value = BTreeMap<Var, GaussianRational>> {
    proptest::collection::vec(arb_gaussian(), 3).prop_map(|vals| {
        PROP_VARS
            .iter()
            .zip(vals)
            .map(|(name, v)| (Var::new(name), v))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_addition_associates(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn scalar_multiplication_distributes(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn scalar_multiplication_commutes_and_associates(
        a in arb_scalar(), b in arb_scalar(), c in arb_scalar()
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn eval_is_a_field_homomorphism(
        a in arb_scalar(), b in arb_scalar(), point in arb_assignment()
    ) {
        // skip points where any denominator vanishes
        let (ea, eb) = match (a.eval_at(&point), b.eval_at(&point)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => return Ok(()),
        };
        prop_assert_eq!((&a + &b).eval_at(&point).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).eval_at(&point).unwrap(), &ea * &eb);
    }

    #[test]
    fn scalar_print_reparse_roundtrip(a in arb_scalar()) {
        let params = param_set(PROP_VARS);
        let printed = a.to_string();
        let reparsed = parse_scalar(&printed, &params).unwrap();
        prop_assert_eq!(a, reparsed);
    }
}

#[test]
fn expr_print_reparse_examples() {
    let params = param_set(PROP_VARS);
    for text in [
        "0",
        "pv_x",
        "-(pv_x + 2*i)^3",
        "(pv_x - pv_y)/(pv_z^2 + 1) - 5/7",
        "1/2/3/4",
        "--1",
        "2 - -3",
    ] {
        let e = parse_expr(text, &params).unwrap();
        let s1 = e.to_scalar().unwrap();
        let e2 = parse_expr(&e.to_string(), &params).unwrap();
        assert_eq!(s1, e2.to_scalar().unwrap(), "roundtrip of {text}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sweedler_inversion_is_an_involution_and_matches_the_closed_form(
        coeffs in proptest::collection::vec(arb_gaussian(), 4)
    ) {
        let spec = sweedler_spec();
        let x = xcknot_core::algebra::Element::new(
            &spec,
            coeffs.into_iter().map(Scalar::constant).collect(),
        ).unwrap();
        match x.invert() {
            Err(_) => {
                // singular iff l1 = ±l2
                let l1 = x.coeff(0);
                let l2 = x.coeff(1);
                let d = &(l1 * l1) - &(l2 * l2);
                prop_assert!(d.is_zero());
            }
            Ok(inv) => {
                prop_assert_eq!(inv.invert().unwrap(), x.clone());
                prop_assert_eq!(inv, invert_by_closed_form(&x).unwrap());
            }
        }
    }

    #[test]
    fn tensor_inverse_is_two_sided_on_sampled_invertibles(seed in 0u64..500) {
        let spec = sweedler_spec();
        let mut sampler = xcknot_core::sample::Sampler::from_seed(seed);
        let q = common::random_invertible_r(&spec, &mut sampler);
        let inv = q.invert().unwrap();
        let unit2 = Tensor::unit(&spec, 2);
        prop_assert_eq!(q.mul(&inv).unwrap(), unit2.clone());
        prop_assert_eq!(inv.mul(&q).unwrap(), unit2);
    }

    #[test]
    fn permute_is_a_group_action(
        seed in 0u64..500,
        sigma in proptest::sample::select(all_perms(3)),
        tau in proptest::sample::select(all_perms(3)),
    ) {
        let spec = sweedler_spec();
        let mut sampler = xcknot_core::sample::Sampler::from_seed(seed);
        let mut entries = Vec::new();
        for _ in 0..4 {
            let key = vec![
                sampler.usize_below(4) as u8,
                sampler.usize_below(4) as u8,
                sampler.usize_below(4) as u8,
            ];
            entries.push((key, Scalar::constant(sampler.gaussian_rational())));
        }
        let t = Tensor::from_entries(&spec, 3, entries).unwrap();
        let sigma = Perm::from_images(sigma).unwrap();
        let tau = Perm::from_images(tau).unwrap();
        prop_assert_eq!(t.permute(&Perm::identity(3)).unwrap(), t.clone());
        let lhs = t.permute(&sigma).unwrap().permute(&tau).unwrap();
        let rhs = t.permute(&tau.compose_after(&sigma)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_multiplication_associates(seed in 0u64..200) {
        let spec = sweedler_spec();
        let mut sampler = xcknot_core::sample::Sampler::from_seed(seed);
        let mut rand_tensor = || {
            let mut entries = Vec::new();
            for _ in 0..3 {
                let key = vec![
                    sampler.usize_below(4) as u8,
                    sampler.usize_below(4) as u8,
                    sampler.usize_below(4) as u8,
                ];
                entries.push((key, Scalar::constant(sampler.gaussian_rational())));
            }
            Tensor::from_entries(&spec, 3, entries).unwrap()
        };
        let (a, b, c) = (rand_tensor(), rand_tensor(), rand_tensor());
        let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
        let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn go(acc: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>, used: &mut Vec<bool>, n: usize) {
        if cur.len() == n {
            acc.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(acc, cur, used, n);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut acc = Vec::new();
    go(&mut acc, &mut Vec::new(), &mut vec![false; n], n);
    acc
}

/// Random valid rotational diagrams: a shuffle of crossing-event pairs and
/// rotation events.
fn arb_diagram() -> impl Strategy<Value = RotDiagram> {
    (
        proptest::collection::vec((any::<bool>(), any::<bool>()), 0..4),
        proptest::collection::vec(any::<bool>(), 0..4),
        any::<u64>(),
    )
        .prop_map(|(crossings, rots, seed)| {
            let mut events: Vec<Event> = Vec::new();
            for (k, (positive, over_first)) in crossings.iter().enumerate() {
                let sign = if *positive { 1 } else { -1 };
                let id = format!("c{k}");
                let (first, second) = if *over_first {
                    (
                        Event::Over {
                            sign,
                            id: id.clone(),
                        },
                        Event::Under { sign, id },
                    )
                } else {
                    (
                        Event::Under {
                            sign,
                            id: id.clone(),
                        },
                        Event::Over { sign, id },
                    )
                };
                events.push(first);
                events.push(second);
            }
            for dir in rots {
                events.push(Event::Rot {
                    dir: if dir { 1 } else { -1 },
                });
            }
            // deterministic shuffle that keeps each crossing's event order
            let mut sampler = xcknot_core::sample::Sampler::from_seed(seed);
            let mut shuffled: Vec<Event> = Vec::with_capacity(events.len());
            let mut pending = events;
            while !pending.is_empty() {
                let pick = sampler.usize_below(pending.len().min(3));
                shuffled.push(pending.remove(pick));
            }
            RotDiagram::new(shuffled).expect("valid by construction")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diagram_print_parse_roundtrip(d in arb_diagram()) {
        let reparsed = parse_diagram(&d.to_string()).unwrap();
        prop_assert_eq!(reparsed, d);
    }

    #[test]
    fn bead_counts_match_crossing_counts(d in arb_diagram()) {
        let st = stats(&d);
        let w = to_bead_word(&d);
        let legs = w.beads().iter().filter(|b| matches!(b, Bead::Leg { .. })).count() as i64;
        let kappas = w.beads().iter().filter(|b| matches!(b, Bead::KappaPow(_))).count() as i64;
        prop_assert_eq!(legs, 2 * (st.n_plus + st.n_minus));
        prop_assert_eq!(kappas, st.m_plus + st.m_minus);
    }
}

#[test]
fn radical_projection_spans() {
    // mod-U kills exactly the keys with at least two radical indices
    let spec = sweedler_spec();
    let mut entries = Vec::new();
    for i in 0..4u8 {
        for j in 0..4u8 {
            for k in 0..4u8 {
                entries.push((vec![i, j, k], Scalar::one()));
            }
        }
    }
    let full = Tensor::from_entries(&spec, 3, entries).unwrap();
    let projected = xcknot_core::sweedler::radical_projection(
        &full,
        xcknot_core::sweedler::RadicalPattern::ModU,
    )
    .unwrap();
    for (key, _) in projected.entries() {
        let radicals = key
            .iter()
            .filter(|&&b| b as usize == IDX_W || b as usize == IDX_SW)
            .count();
        assert!(radicals < 2);
    }
    assert_eq!(projected.support_size(), 64 - 2 * 2 * 4 * 3 + 2 * 2 * 2 * 2);
}
