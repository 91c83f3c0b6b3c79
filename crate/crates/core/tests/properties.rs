mod common;

use infodual::parse::parse_expr;
use infodual::print::{print_expr, Style};
use infodual::shannon::{is_polymatroid_point, is_shannon_type, ShannonVerdict};
use infodual::{EntropyPoint, InfExpr, Rat, Subset, Substitution};
use num_traits::Zero;
use proptest::prelude::*;

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=7).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
}

fn expr_strategy() -> impl Strategy<Value = InfExpr> {
    (2usize..=5).prop_flat_map(|n| {
        let full = (1u32 << n) - 1;
        prop::collection::vec((1..=full, rat_strategy()), 0..10).prop_map(move |terms| {
            InfExpr::from_coeffs(common::ground(n), terms.into_iter().map(|(m, r)| (Subset(m), r))).unwrap()
        })
    })
}

fn expr_and_point() -> impl Strategy<Value = (InfExpr, EntropyPoint)> {
    (2usize..=5).prop_flat_map(|n| {
        let full = (1u32 << n) - 1;
        (
            prop::collection::vec((1..=full, rat_strategy()), 0..10),
            prop::collection::vec(rat_strategy(), full as usize),
        )
            .prop_map(move |(terms, values)| {
                let g = common::ground(n);
                let c = InfExpr::from_coeffs(g.clone(), terms.into_iter().map(|(m, r)| (Subset(m), r))).unwrap();
                (c, EntropyPoint::new(g, values).unwrap())
            })
    })
}

proptest! {
    #[test]
    fn dual_is_balanced(c in expr_strategy()) {
        prop_assert!(c.dual().is_balanced());
    }

    #[test]
    fn double_dual_is_balancing(c in expr_strategy()) {
        prop_assert_eq!(c.dual().dual(), c.balance());
        let b = c.balance();
        prop_assert_eq!(b.dual().dual(), b.clone());
        prop_assert_eq!(b.balance(), b);
    }

    #[test]
    fn dual_matches_point_route(c in expr_strategy()) {
        prop_assert_eq!(c.dual(), common::dual_by_points(&c));
    }

    #[test]
    fn residuals_match_label_oracle(c in expr_strategy()) {
        prop_assert_eq!(c.residuals(), common::residuals_by_label(&c));
    }

    #[test]
    fn dual_is_linear(a in expr_strategy(), alpha in rat_strategy(), beta in rat_strategy(), seed in any::<u64>()) {
        // draw b on the same ground as a
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let b = common::random_expr(&mut rng, a.ground().len());
        let mut combo = a.scaled(&alpha);
        combo.add_scaled(&b, &beta).unwrap();
        let mut expected = a.dual().scaled(&alpha);
        expected.add_scaled(&b.dual(), &beta).unwrap();
        prop_assert_eq!(combo.dual(), expected);
    }

    #[test]
    fn adjointness((c, h) in expr_and_point()) {
        prop_assert_eq!(c.dual().pair(&h).unwrap(), c.pair(&h.dual_point()).unwrap());
    }

    #[test]
    fn pointwise_double_dual((_, h) in expr_and_point()) {
        let g = h.ground().clone();
        let full = g.full();
        let dd = h.dual_point().dual_point();
        for s in g.nonempty_subsets() {
            let mut expected = h.value(s);
            for j in s.indices() {
                expected -= h.value(full) - h.value(full.minus(Subset::singleton(j)));
            }
            prop_assert_eq!(dd.get(s).clone(), expected);
        }
    }

    #[test]
    fn identity_substitution_is_identity(c in expr_strategy()) {
        prop_assert_eq!(Substitution::identity(c.ground().clone()).apply(&c).unwrap(), c);
    }

    #[test]
    fn h_form_round_trips(c in expr_strategy()) {
        let text = print_expr(&c, Style::HForm);
        prop_assert_eq!(parse_expr(&text, Some(c.ground())).unwrap(), c.clone());
        let text = print_expr(&c, Style::IForm);
        prop_assert_eq!(parse_expr(&text, Some(c.ground())).unwrap(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shannon_certificates_are_sound(c in expr_strategy()) {
        let cert = is_shannon_type(&c);
        prop_assert!(cert.verify(&c).is_ok());
        if let Some(h) = &cert.separator {
            prop_assert!(is_polymatroid_point(h));
            prop_assert!(c.pair(h).unwrap() < Rat::zero());
        }
    }

    #[test]
    fn shannon_type_survives_singleton_instances(n in 3usize..=4, seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let instances = common::basic_instances(n);
        let c = instances[rng.gen_range(0..instances.len())].clone();
        let g = c.ground().clone();
        let images: Vec<Subset> = (0..n)
            .map(|_| {
                let k = rng.gen_range(0..=n);
                if k == n { Subset::EMPTY } else { Subset::singleton(k) }
            })
            .collect();
        let s = Substitution::from_masks(g.clone(), g, images).unwrap();
        let inst = s.apply(&c).unwrap();
        prop_assert_eq!(is_shannon_type(&inst).verdict, ShannonVerdict::ShannonType);
    }
}
