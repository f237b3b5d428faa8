mod common;

use gapforge::bounds::{bound_report, factorial_inequalities, prior_bounds, simple_bound};
use gapforge::model::{ClassKind, Int, Rat};

use common::*;

fn prior_upper(kind: ClassKind, n: usize, radius: i64) -> Int {
    prior_bounds(kind, n, radius).into_iter().find(|(l, _)| *l == "prior_upper").unwrap().1
}

#[test]
fn separable_elementary_bound_beats_the_prior_one_from_two_coordinates() {
    for n in 2..=10 {
        for radius in 1..=10 {
            let ours = simple_bound(ClassKind::Separable, n, radius).unwrap();
            let prior = Rat::from_integer(prior_upper(ClassKind::Separable, n, radius));
            assert!(ours < prior, "n={n} N={radius}");
        }
    }
}

#[test]
fn single_coordinate_breaks_the_base_comparison() {
    // nN + 3/2 < n^2 N fails at n = 1, so the comparison is not claimed there.
    for radius in 1..=10i64 {
        assert!(Rat::new(Int::from(2 * radius + 3), Int::from(2)) > Rat::from_integer(Int::from(radius)));
    }
}

#[test]
fn linear_prior_values() {
    let p = prior_bounds(ClassKind::Linear, 3, 2);
    assert_eq!(p[0], ("prior_upper", int_pow(24, 3)));
    assert_eq!(p[1], ("prior_lower", Int::from(2) * int_pow(6, 2)));
    assert_eq!(p[2], ("constructive", pow2(27) * int_pow(2, 9)));
}

#[test]
fn reports_carry_exact_ceilings() {
    let cases = [
        (ClassKind::Linear, 2, 2, 3usize, 4i64),
        (ClassKind::Separable, 2, 2, 9, 1),
        (ClassKind::SeparableQuadratic, 1, 2, 3, 8),
        (ClassKind::Quadratic, 2, 1, 6, 2),
    ];
    for (kind, n, radius, d, a) in cases {
        let r = bound_report(kind, n, radius).unwrap();
        assert_eq!((r.d, r.a.clone()), (d, Int::from(a)), "{kind:?}");
        assert_eq!(r.exact_dfact_bound, factorial(d) * int_pow(a, d));
        assert!(Rat::from_integer(r.exact_dfact_bound.clone()) <= *r.rho.hi());
    }
}

#[test]
fn factorial_inequalities_small_cases() {
    assert_eq!(factorial_inequalities(1), (true, true, true));
    assert_eq!(factorial_inequalities(3), (true, true, true));
}
