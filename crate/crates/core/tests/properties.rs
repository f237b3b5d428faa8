mod common;

use gapforge::document::FunctionDocument;
use gapforge::franktardos::{ft_weights, is_lll_reduced, lll_reduce, sda, LatticeBasis};
use gapforge::instances::InstanceGenerator;
use gapforge::liftings::{embed, lift, pullback};
use gapforge::lp::{check_scalable, simplex_min, LpOutcome};
use gapforge::model::{BoxDomain, ClassKind, FunctionSpec, Int, Rat};
use gapforge::oracle::{check_equivalent, rank_reduce};
use gapforge::reducelp::{reduce_via_lp_detailed, BuildMode};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::*;

fn instance() -> impl Strategy<Value = FunctionSpec> {
    (any::<u64>(), 0usize..4, 1usize..=2, 1i64..=2, prop_oneof![Just(3i64), Just(1_000_000i64)]).prop_map(
        |(seed, k, n, radius, range)| {
            let d = BoxDomain::new(n, radius).unwrap();
            InstanceGenerator::with_range(seed, range).of_kind(ClassKind::ALL[k], d)
        },
    )
}

fn rational() -> impl Strategy<Value = Rat> {
    (-30i64..=30, 1i64..=30).prop_map(|(p, q)| Rat::new(Int::from(p), Int::from(q)))
}

fn optimum(f: &FunctionSpec, mode: BuildMode) -> Rat {
    let red = reduce_via_lp_detailed(f, mode, &limits()).unwrap();
    match simplex_min(&red.program).unwrap() {
        LpOutcome::Optimal(v) => v.coords[red.encoding.gap_column()].clone(),
        other => panic!("{other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn documents_round_trip(f in instance()) {
        let text = FunctionDocument::from_spec(&f).to_json();
        let back = FunctionDocument::from_json(&text).unwrap().to_spec().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn lifted_function_matches_on_embedded_points(f in instance()) {
        let (lifted, _) = lift(&f);
        let d = f.domain();
        let pts = box_points(d.dim(), d.radius());
        let ys: Vec<Vec<i64>> = pts.iter().map(|x| embed(f.kind(), x, d)).collect();
        for (x, y) in pts.iter().zip(&ys) {
            for (z, u) in pts.iter().zip(&ys) {
                prop_assert_eq!(lifted.value(y) - lifted.value(u), f.value_at(x) - f.value_at(z));
                let l1: i64 = y.iter().zip(u).map(|(a, b)| (a - b).abs()).sum();
                prop_assert!(Int::from(l1) <= lifted.budget);
            }
        }
    }

    #[test]
    fn pullback_of_integral_lift_is_equivalent(f in instance()) {
        let (lifted, _) = lift(&f);
        let ints: Vec<Int> = lifted.coeffs.iter().map(|c| c.to_integer()).collect();
        let g = pullback(&f, &ints).unwrap();
        prop_assert!(equivalent_pairwise(&f, &g));
    }

    #[test]
    fn lp_route_is_equivalent_and_scalable(f in instance()) {
        let red = reduce_via_lp_detailed(&f, BuildMode::Pruned, &limits()).unwrap();
        prop_assert!(check_scalable(&red.program));
        prop_assert!(red.certificate.verified);
        prop_assert!(equivalent_pairwise(&f, &red.g));
        prop_assert!(red.certificate.gap <= red.certificate.bound);
    }

    #[test]
    fn full_and_pruned_builds_agree(f in instance()) {
        prop_assert_eq!(optimum(&f, BuildMode::Full), optimum(&f, BuildMode::Pruned));
    }

    #[test]
    fn equivalence_is_invariant_under_positive_affine_maps(f in instance(), c in 1i64..=20, k in -20i64..=20) {
        // Integral factors keep separable tables integral.
        let (c, k) = (Rat::from_integer(Int::from(c)), Rat::from_integer(Int::from(k)));
        let mut g = f.scaled(&c).unwrap();
        if f.kind() != ClassKind::Linear {
            g = g.plus_constant(&k).unwrap();
        }
        prop_assert!(check_equivalent(&f, &g, &limits()).unwrap().is_equivalent());
        if !gap_by_points(&f).is_zero() {
            let h = f.scaled(&(-c)).unwrap();
            prop_assert!(!check_equivalent(&f, &h, &limits()).unwrap().is_equivalent());
        }
    }

    #[test]
    fn rank_gap_counts_distinct_values(f in instance()) {
        let (_, cert) = rank_reduce(&f, &limits()).unwrap();
        let d = f.domain();
        let mut vals: Vec<Rat> = box_points(d.dim(), d.radius()).iter().map(|x| f.value_at(x)).collect();
        vals.sort();
        vals.dedup();
        prop_assert_eq!(cert.gap, Int::from(vals.len() - 1));
    }

    #[test]
    fn lll_preserves_the_lattice_volume(rows in proptest::collection::vec(proptest::collection::vec(-20i64..=20, 3), 3)) {
        let Ok(basis) = LatticeBasis::from_ints(&rows) else { return Ok(()); };
        let delta = Rat::new(Int::from(3), Int::from(4));
        let red = lll_reduce(&basis, &delta).unwrap();
        prop_assert_eq!(red.gram_determinant(), basis.gram_determinant());
        prop_assert!(is_lll_reduced(red.rows(), &[Rat::one(), Rat::one(), Rat::one()], &delta));
        prop_assert!(red.rows().iter().flatten().all(|v| v.is_integer()));
    }

    #[test]
    fn sda_meets_its_contract(w in proptest::collection::vec(rational(), 1..=4), k in 1i64..=5) {
        let eps = Rat::new(Int::one(), Int::from(k + 1));
        let res = sda(&w, &eps).unwrap();
        prop_assert!(res.satisfies_contract(&w));
    }

    #[test]
    fn ft_weights_preserve_signs_on_the_ball(w in proptest::collection::vec(rational(), 1..=3), budget in 1i64..=5) {
        let res = ft_weights(&w, &Int::from(budget)).unwrap();
        for b in box_points(w.len(), budget) {
            if b.iter().map(|v| v.abs()).sum::<i64>() > budget {
                continue;
            }
            let lhs: Rat = w.iter().zip(&b).map(|(x, &v)| x * Rat::from_integer(Int::from(v))).sum();
            let rhs: Int = res.wbar.iter().zip(&b).map(|(x, &v)| x * Int::from(v)).sum();
            prop_assert_eq!(lhs.signum(), Rat::from_integer(rhs.signum()));
        }
    }

    #[test]
    fn ft_weights_ignore_positive_scaling(w in proptest::collection::vec(rational(), 1..=3), c in 1i64..=40, budget in 1i64..=5) {
        let scaled: Vec<Rat> = w.iter().map(|x| x * Rat::new(Int::from(c), Int::from(7))).collect();
        let a = ft_weights(&w, &Int::from(budget)).unwrap();
        let b = ft_weights(&scaled, &Int::from(budget)).unwrap();
        prop_assert_eq!(a.wbar, b.wbar);
    }
}
