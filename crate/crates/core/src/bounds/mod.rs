//! Closed-form gap ceilings, evaluated exactly or with certified enclosures.

pub mod interval;

use num_traits::One;

pub use interval::Interval;

use crate::error::{Error, Result};
use crate::liftings::ft_class_bound;
use crate::model::{ClassKind, Int, Rat};

pub fn factorial(d: usize) -> Int {
    (1..=d).fold(Int::one(), |acc, k| acc * Int::from(k))
}

/// `d! * a^d`.
pub fn dfact_bound(d: usize, a: &Int) -> Int {
    factorial(d) * num_traits::pow(a.clone(), d)
}

/// Column count `d` and coefficient bound `a` of the class's program.
pub fn class_parameters(kind: ClassKind, n: usize, radius: i64) -> (usize, Int) {
    let r = Int::from(radius);
    let two_rr = Int::from(2) * &r * &r;
    match kind {
        ClassKind::Linear => (n + 1, Int::from(2) * r),
        ClassKind::Separable => (2 * n * radius as usize + 1, Int::one()),
        ClassKind::SeparableQuadratic => (2 * n + 1, two_rr),
        ClassKind::Quadratic => (n * (n + 3) / 2 + 1, two_rr),
    }
}

/// Enclosure of `sqrt(2 pi d) (d/e)^d e^{1/(12d)}`.
pub fn stirling(d: usize) -> Interval {
    assert!(d >= 1);
    let dr = Rat::from_integer(Int::from(d));
    let root = Interval::pi().mul_rat(&(Rat::from_integer(Int::from(2)) * &dr)).sqrt();
    let e_pow = Interval::e().powi(d).recip();
    let d_pow = Interval::exact(num_traits::pow(dr, d));
    let corr = Interval::exp_small(&Rat::new(Int::one(), Int::from(12 * d)));
    root.mul(&d_pow).mul(&e_pow).mul(&corr)
}

/// Enclosure of the Stirling form of `d! a^d` for the class.
pub fn rho(kind: ClassKind, n: usize, radius: i64) -> Interval {
    let (d, a) = class_parameters(kind, n, radius);
    stirling(d).mul_rat(&Rat::from_integer(num_traits::pow(a, d)))
}

/// The elementary gap bound of the class, where one exists:
/// `2N ((n+3)N)^n` for linear and `(nN + 3/2)^{2nN}` for separable.
pub fn simple_bound(kind: ClassKind, n: usize, radius: i64) -> Result<Rat> {
    let r = Int::from(radius);
    match kind {
        ClassKind::Linear => {
            let base = Int::from(n + 3) * &r;
            Ok(Rat::from_integer(Int::from(2) * &r * num_traits::pow(base, n)))
        }
        ClassKind::Separable => {
            let base = Rat::from_integer(Int::from(n) * &r) + Rat::new(Int::from(3), Int::from(2));
            Ok(num_traits::pow(base, 2 * n * radius as usize))
        }
        other => Err(Error::UnsupportedClass(format!(
            "an elementary bound for the {other} class"
        ))),
    }
}

/// Reference bounds from earlier constructions, labeled.
pub fn prior_bounds(kind: ClassKind, n: usize, radius: i64) -> Vec<(&'static str, Int)> {
    let r = Int::from(radius);
    let nn = Int::from(n);
    let constructive = ft_class_bound(kind, n, radius);
    match kind {
        ClassKind::Linear => vec![
            ("prior_upper", num_traits::pow(Int::from(4) * &nn * &r, n)),
            ("prior_lower", &r * num_traits::pow(&nn * &r, n - 1)),
            ("constructive", constructive),
        ],
        ClassKind::Separable => vec![
            (
                "prior_upper",
                num_traits::pow(&nn * &nn * &r, n * (2 * radius as usize + 1) + 1),
            ),
            ("constructive", constructive),
        ],
        ClassKind::SeparableQuadratic | ClassKind::Quadratic => vec![("constructive", constructive)],
    }
}

/// The three factorial estimates checked for `d`:
/// `d! <= ((d+2)/2)^{d-1}`, `d! <= ((d+1)/2)^d` and `d! <= ` the Stirling form.
///
/// The last comparison uses the lower end of the enclosure, so a `true`
/// holds for the exact value.
pub fn factorial_inequalities(d: usize) -> (bool, bool, bool) {
    let f = Rat::from_integer(factorial(d));
    let dr = Int::from(d);
    let first = f <= num_traits::pow(Rat::new(&dr + Int::from(2), Int::from(2)), d - 1);
    let second = f <= num_traits::pow(Rat::new(&dr + Int::one(), Int::from(2)), d);
    let third = f <= *stirling(d).lo();
    (first, second, third)
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    pub class: ClassKind,
    pub n: usize,
    pub radius: i64,
    pub d: usize,
    pub a: Int,
    pub exact_dfact_bound: Int,
    pub rho: Interval,
    pub simple_bound: Option<Rat>,
    pub prior_bounds: Vec<(&'static str, Int)>,
}

pub fn bound_report(kind: ClassKind, n: usize, radius: i64) -> Result<BoundReport> {
    if n == 0 || radius < 1 {
        return Err(Error::InvalidInput("n and N must be positive".into()));
    }
    let (d, a) = class_parameters(kind, n, radius);
    let exact = dfact_bound(d, &a);
    let rho = rho(kind, n, radius);
    if Rat::from_integer(exact.clone()) > *rho.hi() {
        return Err(Error::Internal("Stirling enclosure below the exact bound".into()));
    }
    Ok(BoundReport {
        class: kind,
        n,
        radius,
        d,
        a,
        exact_dfact_bound: exact,
        rho,
        simple_bound: simple_bound(kind, n, radius).ok(),
        prior_bounds: prior_bounds(kind, n, radius),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{rat, rat_frac};

    #[test]
    fn dfact_examples() {
        assert_eq!(dfact_bound(2, &Int::from(2)), Int::from(8));
        assert_eq!(dfact_bound(3, &Int::from(1)), Int::from(6));
        assert_eq!(dfact_bound(3, &Int::from(2)), Int::from(48));
    }

    #[test]
    fn rho_examples() {
        let r = rho(ClassKind::Linear, 1, 1);
        assert!(r.lo() >= &rat(8) && r.hi() <= &rat_frac(801, 100));
        let r = rho(ClassKind::Separable, 1, 1);
        assert!(r.lo() >= &rat(6) && r.hi() <= &rat_frac(601, 100));
        let r = rho(ClassKind::SeparableQuadratic, 1, 1);
        assert!(r.lo() >= &rat(48) && r.hi() <= &rat_frac(481, 10));
        assert_eq!(r.upper_decimal(3), "48.005");
    }

    #[test]
    fn simple_examples() {
        assert_eq!(simple_bound(ClassKind::Linear, 1, 1).unwrap(), rat(8));
        assert_eq!(simple_bound(ClassKind::Separable, 1, 1).unwrap(), rat_frac(25, 4));
        assert_eq!(simple_bound(ClassKind::Linear, 2, 1).unwrap(), rat(50));
        assert!(simple_bound(ClassKind::Quadratic, 1, 1).is_err());
    }

    #[test]
    fn prior_examples() {
        let p = prior_bounds(ClassKind::Linear, 2, 1);
        assert_eq!(p[0].1, Int::from(64));
        assert_eq!(p[1].1, Int::from(2));
        assert_eq!(prior_bounds(ClassKind::Linear, 1, 1)[2].1, Int::from(2));
        assert_eq!(prior_bounds(ClassKind::SeparableQuadratic, 1, 2)[0].1, Int::from(65536));
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial_inequalities(1), (true, true, true));
        assert_eq!(factorial_inequalities(2), (true, true, true));
        assert_eq!(factorial_inequalities(3), (true, true, true));
    }

    #[test]
    fn report_examples() {
        let r = bound_report(ClassKind::Separable, 2, 2).unwrap();
        assert_eq!(r.exact_dfact_bound, Int::from(362880));
        let r = bound_report(ClassKind::Quadratic, 2, 1).unwrap();
        assert_eq!((r.d, r.a.clone(), r.exact_dfact_bound), (6, Int::from(2), Int::from(46080)));
    }
}
