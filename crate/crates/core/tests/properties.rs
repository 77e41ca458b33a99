//! Invariants checked over generated inputs.

use bordered_magic::cli::{GridDocument, GridFormat, PlanDocument};
use bordered_magic::construct::PairLine;
use bordered_magic::corners::check_feasible;
use bordered_magic::*;
use proptest::prelude::*;
use proptest::sample::subsequence;

fn symmetry() -> impl Strategy<Value = BorderSymmetry> {
    prop::sample::select(BorderSymmetry::ALL.to_vec())
}

/// A shuffled `0..len`.
fn permutation(len: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..len).collect::<Vec<_>>()).prop_shuffle()
}

/// A magic border with random corners at even `n`, from the recipe at odd `n`.
fn plan() -> impl Strategy<Value = BorderPlan> {
    (
        3usize..=16,
        any::<prop::sample::Index>(),
        any::<prop::sample::Index>(),
    )
        .prop_map(|(n, i, j)| {
            if n % 2 == 1 {
                return build_border(n).unwrap();
            }
            let order = InnerOrder::new(n).unwrap();
            let pool = border_pool(order);
            let v = *i.get(&pool);
            // the partner: any value whose reduction has the other parity
            let partners: Vec<i64> = pool
                .iter()
                .copied()
                .filter(|&w| check_feasible(order, v, w).is_ok())
                .collect();
            construct_with_corners(n, v, *j.get(&partners))
                .unwrap()
                .plan
        })
}

#[test]
fn recipe_borders_are_magic_and_balance() {
    for n in 3..=50 {
        let plan = build_border(n).unwrap();
        let report = verify_border(&plan);
        assert!(report.valid, "n={n}: {report}");
        let scheme = border_scheme(n).unwrap();
        assert!(verify_balance(&plan, &scheme).unwrap().valid, "n={n}");
        let order = InnerOrder::new(n).unwrap();
        let (top, left) = (
            scheme.balance(PairLine::Top),
            scheme.balance(PairLine::Left),
        );
        if n % 2 == 0 {
            let w_bar = complement(plan.w, order).unwrap();
            assert_eq!(top, 0, "n={n}");
            assert_eq!(left, -d_value(plan.v, w_bar, order).unwrap(), "n={n}");
        } else {
            let want = -d_corner(plan.v, order).unwrap();
            assert_eq!((top, left), (want, want), "n={n}");
            // the general odd recipe starts at 5; order 3 has its own corner
            if n >= 5 {
                assert_eq!(want, (n * n + 2 * n - 9) as i64 / 2, "n={n}");
            }
        }
    }
}

#[test]
fn dihedral_composition() {
    let plan = build_border(6).unwrap();
    for s in BorderSymmetry::ALL {
        for t in BorderSymmetry::ALL {
            let two_steps = apply_symmetry(&apply_symmetry(&plan, s), t);
            assert_eq!(
                two_steps,
                apply_symmetry(&plan, s.then(t)),
                "{s:?} then {t:?}"
            );
        }
        assert_eq!(s.then(s.inverse()), BorderSymmetry::Identity);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetry_images_are_magic(plan in plan(), s in symmetry()) {
        let image = apply_symmetry(&plan, s);
        prop_assert!(verify_border(&image).valid);
        prop_assert_eq!(apply_symmetry(&image, s.inverse()), plan);
    }

    #[test]
    fn line_permutations_are_magic(
        (plan, pb, pc) in plan().prop_flat_map(|p| {
            let k = p.b.len();
            (Just(p), permutation(k), permutation(k))
        })
    ) {
        let image = permute_lines(&plan, &pb, &pc).unwrap();
        prop_assert!(verify_border(&image).valid);
        prop_assert_eq!(image.canonical(), plan.canonical());
    }

    #[test]
    fn orbit_members_are_magic(plan in plan()) {
        let images = orbit(&plan);
        prop_assert_eq!(images.len(), 8);
        for (_, image) in images {
            prop_assert!(verify_border(&image).valid);
        }
    }

    #[test]
    fn corner_prescription_matches_parity(n in (2usize..=8).prop_map(|k| 2 * k), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let order = InnerOrder::new(n).unwrap();
        let pool = border_pool(order);
        let (v, w) = (*i.get(&pool), *j.get(&pool));
        prop_assume!(v != w && v + w != order.complement_base());
        match construct_with_corners(n, v, w) {
            Ok(c) => {
                prop_assert!(check_feasible(order, v, w).is_ok());
                prop_assert_eq!(c.plan.corners(), (v, w));
                prop_assert!(verify_border(&c.plan).valid);
            }
            Err(Error::Infeasible { .. }) => prop_assert!(check_feasible(order, v, w).is_err()),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn plan_documents_round_trip(plan in plan()) {
        let doc = PlanDocument::from_plan(&plan);
        let back = PlanDocument::parse(&doc.render()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_plan().unwrap(), plan);
    }

    #[test]
    fn frame_documents_round_trip(plan in plan(), format in prop::sample::select(vec![GridFormat::Grid, GridFormat::Csv, GridFormat::Json])) {
        let frame = render_frame(&plan).unwrap();
        let doc = GridDocument::from_frame(&frame);
        let back = GridDocument::parse(&doc.render(format)).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_frame().unwrap(), frame);
    }

    #[test]
    fn frames_hold_complements(plan in plan()) {
        prop_assert!(verify_frame(&render_frame(&plan).unwrap()).valid);
    }

    #[test]
    fn tampered_plans_are_rejected(plan in plan(), pick in subsequence(vec![0usize, 1], 1)) {
        let mut bad = plan.clone();
        let line = if pick[0] == 0 { &mut bad.b } else { &mut bad.c };
        line[0] = complement(line[0], plan.n).unwrap();
        prop_assert!(!verify_border(&bad).valid);
    }
}

#[test]
fn squares_are_bordered() {
    for order in 3..=24 {
        let sq = build_square(order).unwrap();
        let report = verify_bordered(&sq);
        assert!(report.valid, "order {order}: {report}");
    }
}
