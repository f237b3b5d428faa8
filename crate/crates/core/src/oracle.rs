//! Brute-force ground truth: pairwise equivalence, class membership, the
//! rank-function baseline and an exhaustive minimal-gap search.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{
    alpha_conforms, increments_conform, rat, BoxFunction, Certificate, ClassKind, FunctionBody,
    FunctionClass, FunctionSpec, Int, Limits, Method, Point, PointTable, Rat,
};

/// Upper limit on `candidates * points` for [`min_gap_bruteforce`].
pub const MAX_SEARCH_WORK: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationReason {
    /// `f` and `g` order the pair strictly and in opposite directions.
    OrderFlipped,
    /// `f` ties the pair, `g` does not.
    TieBroken,
    /// `f` orders the pair strictly, `g` ties it.
    TieCreated,
}

impl ViolationReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationReason::OrderFlipped => "ORDER_FLIPPED",
            ViolationReason::TieBroken => "TIE_BROKEN",
            ViolationReason::TieCreated => "TIE_CREATED",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "ORDER_FLIPPED" => Some(ViolationReason::OrderFlipped),
            "TIE_BROKEN" => Some(ViolationReason::TieBroken),
            "TIE_CREATED" => Some(ViolationReason::TieCreated),
            _ => None,
        }
    }

    /// Classifies the pair, `None` when it is consistent.
    pub fn classify(f_cmp: Ordering, g_cmp: Ordering) -> Option<Self> {
        if f_cmp == g_cmp {
            None
        } else if f_cmp == Ordering::Equal {
            Some(ViolationReason::TieBroken)
        } else if g_cmp == Ordering::Equal {
            Some(ViolationReason::TieCreated)
        } else {
            Some(ViolationReason::OrderFlipped)
        }
    }
}

impl fmt::Display for ViolationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Counterexample {
    pub x: Point,
    pub y: Point,
    pub reason: ViolationReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    Equivalent,
    Counterexample(Counterexample),
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equivalent)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            EquivalenceVerdict::Equivalent => None,
            EquivalenceVerdict::Counterexample(c) => Some(c),
        }
    }
}

/// Checks `f(x) >= f(y) <=> g(x) >= g(y)` for every ordered pair of box points.
///
/// Runs in `O(P log P)` for `P` box points. When the check fails the reported
/// pair `(x, y)` is the first violating one in lexicographic order of
/// `(index(x), index(y))` under the enumeration order.
pub fn check_equivalent<F, G>(f: &F, g: &G, limits: &Limits) -> Result<EquivalenceVerdict>
where
    F: BoxFunction + ?Sized,
    G: BoxFunction + ?Sized,
{
    let domain = f.domain();
    if g.domain() != domain {
        return Err(Error::InvalidInput(format!(
            "functions live on different boxes: {:?} vs {:?}",
            domain,
            g.domain()
        )));
    }
    let points = domain.points(limits)?;
    let fv = f.values(&points);
    let gv = g.values(&points);
    Ok(match first_violation(&fv, &gv) {
        None => EquivalenceVerdict::Equivalent,
        Some((i, j, reason)) => EquivalenceVerdict::Counterexample(Counterexample {
            x: points[i].clone(),
            y: points[j].clone(),
            reason,
        }),
    })
}

/// First violating index pair `(i, j)` of two value sequences, if any.
pub fn first_violation<T: Ord>(fv: &[T], gv: &[T]) -> Option<(usize, usize, ViolationReason)> {
    let len = fv.len();
    let mut order: Vec<usize> = (0..len).collect();
    order.sort_by(|&a, &b| fv[a].cmp(&fv[b]));

    // Groups of equal f-value in increasing f order.
    let mut group_of = vec![0usize; len];
    let mut group_min: Vec<usize> = Vec::new();
    let mut group_max: Vec<usize> = Vec::new();
    for (pos, &idx) in order.iter().enumerate() {
        if pos == 0 || fv[order[pos - 1]] != fv[idx] {
            group_min.push(idx);
            group_max.push(idx);
        }
        let k = group_min.len() - 1;
        group_of[idx] = k;
        if gv[idx] < gv[group_min[k]] {
            group_min[k] = idx;
        }
        if gv[idx] > gv[group_max[k]] {
            group_max[k] = idx;
        }
    }
    let groups = group_min.len();

    // below_max[k]: index of the largest g among groups < k.
    let mut below_max: Vec<Option<usize>> = vec![None; groups];
    for k in 1..groups {
        let cand = group_max[k - 1];
        below_max[k] = match below_max[k - 1] {
            Some(prev) if gv[prev] >= gv[cand] => Some(prev),
            _ => Some(cand),
        };
    }
    // above_min[k]: index of the smallest g among groups > k.
    let mut above_min: Vec<Option<usize>> = vec![None; groups];
    for k in (0..groups.saturating_sub(1)).rev() {
        let cand = group_min[k + 1];
        above_min[k] = match above_min[k + 1] {
            Some(prev) if gv[prev] <= gv[cand] => Some(prev),
            _ => Some(cand),
        };
    }

    let violates = |i: usize| {
        let k = group_of[i];
        gv[group_min[k]] != gv[group_max[k]]
            || below_max[k].is_some_and(|b| gv[b] >= gv[i])
            || above_min[k].is_some_and(|a| gv[a] <= gv[i])
    };

    let i = (0..len).find(|&i| violates(i))?;
    (0..len).find_map(|j| {
        ViolationReason::classify(fv[i].cmp(&fv[j]), gv[i].cmp(&gv[j])).map(|r| (i, j, r))
    })
}

/// Structural class membership including shape flags.
pub fn check_class(g: &FunctionSpec, class: &FunctionClass) -> bool {
    if g.kind() != class.kind {
        return false;
    }
    let n = g.domain().dim();
    let shapes_ok = |len: usize| class.shapes.is_empty() || len == n;
    match g.body() {
        FunctionBody::Linear(_) | FunctionBody::Quadratic(_) => true,
        FunctionBody::Separable(s) => {
            shapes_ok(class.shapes.len())
                && class
                    .shapes
                    .iter()
                    .enumerate()
                    .all(|(i, &shape)| increments_conform(&s.increments(i), shape))
        }
        FunctionBody::SeparableQuadratic(s) => {
            shapes_ok(class.shapes.len())
                && class
                    .shapes
                    .iter()
                    .zip(&s.alpha)
                    .all(|(&shape, a)| alpha_conforms(a, shape))
        }
    }
}

/// The class-agnostic baseline: each point gets the rank of its value among
/// the distinct values of `f`.
pub fn rank_reduce(f: &FunctionSpec, limits: &Limits) -> Result<(PointTable, Certificate)> {
    let domain = f.domain();
    let points = domain.points(limits)?;
    let values = f.values(&points);
    let mut distinct = values.clone();
    distinct.sort();
    distinct.dedup();
    let ranks = values
        .iter()
        .map(|v| Int::from(distinct.binary_search(v).expect("value is present")))
        .collect();
    let table = PointTable::new(domain, ranks)?;
    let verdict = check_equivalent(f, &table, limits)?;
    let cert = Certificate {
        method: Method::Rank,
        gap: Int::from(distinct.len() - 1),
        bound: domain.point_count() - Int::one(),
        verified: verdict.is_equivalent(),
        counterexample: verdict.counterexample().cloned(),
    };
    Ok((table, cert))
}

/// Smallest gap over all integer coefficient vectors with sup-norm at most
/// `radius` whose function is equivalent to `f`, or `None` if none is.
///
/// Defined for the linear and separable quadratic classes; separable
/// quadratic candidates have zero constant terms.
pub fn min_gap_bruteforce(
    kind: ClassKind,
    f: &FunctionSpec,
    radius: i64,
    limits: &Limits,
) -> Result<Option<Int>> {
    let domain = f.domain();
    let n = domain.dim();
    let width = match kind {
        ClassKind::Linear => n,
        ClassKind::SeparableQuadratic => 2 * n,
        other => return Err(Error::UnsupportedClass(format!("min_gap_bruteforce on {other}"))),
    };
    if radius < 0 {
        return Err(Error::InvalidInput("search radius must be non-negative".into()));
    }
    let points = domain.points(limits)?;
    let candidates = num_traits::pow(Int::from(2 * radius + 1), width);
    let work = &candidates * Int::from(points.len());
    if work > Int::from(MAX_SEARCH_WORK) {
        return Err(Error::SizeGuard {
            requested: work.to_string(),
            limit: MAX_SEARCH_WORK,
        });
    }

    // Feature rows so that g(x) = coeffs . features(x).
    let features: Vec<Vec<i128>> = points
        .iter()
        .map(|x| match kind {
            ClassKind::Linear => x.iter().map(|&v| v as i128).collect(),
            _ => x
                .iter()
                .flat_map(|&v| [(v * v) as i128, v as i128])
                .collect(),
        })
        .collect();
    let fv = f.values(&points);
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| fv[a].cmp(&fv[b]));

    let mut best: Option<i128> = None;
    let mut coeffs = vec![-(radius as i128); width];
    let mut gv = vec![0i128; points.len()];
    loop {
        for (slot, feat) in gv.iter_mut().zip(&features) {
            *slot = feat.iter().zip(&coeffs).map(|(a, b)| a * b).sum();
        }
        if orders_like(&order, &fv, &gv) {
            let lo = gv.iter().min().copied().unwrap_or(0);
            let hi = gv.iter().max().copied().unwrap_or(0);
            let gap = hi - lo;
            if best.is_none_or(|b| gap < b) {
                best = Some(gap);
            }
        }
        // Odometer over [-radius, radius]^width.
        let mut i = width;
        loop {
            if i == 0 {
                return Ok(best.map(Int::from));
            }
            i -= 1;
            if coeffs[i] < radius as i128 {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = -(radius as i128);
        }
    }
}

// g must be constant on f-ties and strictly increasing across them.
fn orders_like(order: &[usize], fv: &[Rat], gv: &[i128]) -> bool {
    order.windows(2).all(|w| {
        let (a, b) = (w[0], w[1]);
        if fv[a] == fv[b] {
            gv[a] == gv[b]
        } else {
            gv[a] < gv[b]
        }
    })
}

/// Builds the function with the given coefficient vector in the search layout
/// used by [`min_gap_bruteforce`].
pub fn function_from_coefficients(
    kind: ClassKind,
    f: &FunctionSpec,
    coeffs: &[i64],
) -> Result<FunctionSpec> {
    let domain = f.domain();
    match kind {
        ClassKind::Linear => FunctionSpec::linear_int(domain, coeffs),
        ClassKind::SeparableQuadratic => {
            let alpha = coeffs.iter().step_by(2).map(|&c| rat(c)).collect();
            let beta = coeffs.iter().skip(1).step_by(2).map(|&c| rat(c)).collect();
            FunctionSpec::separable_quadratic(
                domain,
                alpha,
                beta,
                vec![Rat::zero(); domain.dim()],
                &[],
            )
        }
        other => Err(Error::UnsupportedClass(other.to_string())),
    }
}

/// Sign of a rational as an `Ordering` against zero.
pub fn sign_of(v: &Rat) -> Ordering {
    if v.is_positive() {
        Ordering::Greater
    } else if v.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{rat_frac, BoxDomain, Shape};

    fn bx(n: usize, r: i64) -> BoxDomain {
        BoxDomain::new(n, r).unwrap()
    }

    fn quad1(domain: BoxDomain, a: i64, b: i64) -> FunctionSpec {
        FunctionSpec::quadratic(domain, vec![rat(a)], vec![rat(b)], rat(0)).unwrap()
    }

    // O(P^2) reference for the lexicographically first violating pair.
    fn brute_first<F: BoxFunction, G: BoxFunction>(f: &F, g: &G) -> Option<Counterexample> {
        let pts = f.domain().points(&Limits::default()).unwrap();
        for x in &pts {
            for y in &pts {
                let r = ViolationReason::classify(
                    f.value(x).cmp(&f.value(y)),
                    g.value(x).cmp(&g.value(y)),
                );
                if let Some(reason) = r {
                    return Some(Counterexample {
                        x: x.clone(),
                        y: y.clone(),
                        reason,
                    });
                }
            }
        }
        None
    }

    #[test]
    fn positive_scaling_is_equivalent() {
        let d = bx(1, 3);
        let f = FunctionSpec::linear_int(d, &[2]).unwrap();
        let g = FunctionSpec::linear_int(d, &[1]).unwrap();
        let v = check_equivalent(&f, &g, &Limits::default()).unwrap();
        assert!(v.is_equivalent());
    }

    #[test]
    fn identity_vs_square_is_a_counterexample() {
        let d = bx(1, 1);
        let f = FunctionSpec::linear_int(d, &[1]).unwrap();
        let g = quad1(d, 1, 0);
        let v = check_equivalent(&f, &g, &Limits::default()).unwrap();
        let c = v.counterexample().unwrap().clone();
        assert_eq!(Some(c.clone()), brute_first(&f, &g));
        // (-1, 0) comes first in pair order and is a strict flip: f: -1 < 0, g: 1 > 0.
        assert_eq!((c.x, c.y, c.reason), (vec![-1], vec![0], ViolationReason::OrderFlipped));
        // The pair (-1, 1) is a created tie.
        assert_eq!(
            ViolationReason::classify(
                f.value(&[-1]).cmp(&f.value(&[1])),
                g.value(&[-1]).cmp(&g.value(&[1]))
            ),
            Some(ViolationReason::TieCreated)
        );
    }

    #[test]
    fn swapped_weights_flip_order() {
        let d = bx(2, 1);
        let f = FunctionSpec::linear_int(d, &[1, 2]).unwrap();
        let g = FunctionSpec::linear_int(d, &[2, 1]).unwrap();
        let v = check_equivalent(&f, &g, &Limits::default()).unwrap();
        let c = v.counterexample().unwrap();
        assert_eq!(Some(c.clone()), brute_first(&f, &g));
        assert_eq!(c.reason, ViolationReason::OrderFlipped);
        // The pair ((0,1),(1,0)) is also flipped: f gives 2 > 1, g gives 1 < 2.
        assert_eq!(
            ViolationReason::classify(
                f.value(&[0, 1]).cmp(&f.value(&[1, 0])),
                g.value(&[0, 1]).cmp(&g.value(&[1, 0]))
            ),
            Some(ViolationReason::OrderFlipped)
        );
    }

    #[test]
    fn fast_scan_matches_quadratic_scan() {
        let d = bx(2, 1);
        let fs: Vec<FunctionSpec> = [[1, 2], [2, 1], [1, 1], [0, 1], [3, 1], [-1, 0], [0, 0]]
            .iter()
            .map(|c| FunctionSpec::linear_int(d, c).unwrap())
            .collect();
        for f in &fs {
            for g in &fs {
                let v = check_equivalent(f, g, &Limits::default()).unwrap();
                assert_eq!(v.counterexample().cloned(), brute_first(f, g));
            }
        }
    }

    #[test]
    fn mismatched_boxes_are_rejected() {
        let f = FunctionSpec::linear_int(bx(1, 1), &[1]).unwrap();
        let g = FunctionSpec::linear_int(bx(1, 2), &[1]).unwrap();
        assert!(check_equivalent(&f, &g, &Limits::default()).is_err());
    }

    #[test]
    fn class_examples() {
        let d = bx(1, 1);
        let convex = FunctionClass::separable(vec![Shape::Convex]);
        let s = FunctionSpec::separable_int(d, &[vec![0, 0, 2]], &[]).unwrap();
        assert!(check_class(&s, &convex));
        let s = FunctionSpec::separable_int(d, &[vec![0, 2, 3]], &[]).unwrap();
        assert!(!check_class(&s, &convex));
        assert!(check_class(&s, &FunctionClass::separable(vec![Shape::Concave])));
        let q = FunctionSpec::separable_quadratic(d, vec![rat(-1)], vec![rat(0)], vec![rat(0)], &[])
            .unwrap();
        assert!(!check_class(&q, &FunctionClass::separable_quadratic(vec![Shape::Convex])));
        assert!(!check_class(&q, &FunctionClass::linear()));
    }

    #[test]
    fn rank_examples() {
        let lim = Limits::default();
        let f = FunctionSpec::linear_int(bx(1, 1), &[5]).unwrap();
        let (t, c) = rank_reduce(&f, &lim).unwrap();
        assert_eq!(t.values_in_order(), &[Int::from(0), Int::from(1), Int::from(2)]);
        assert_eq!(c.gap, Int::from(2));
        assert!(c.verified);

        let z = FunctionSpec::linear_int(bx(2, 2), &[0, 0]).unwrap();
        assert_eq!(rank_reduce(&z, &lim).unwrap().1.gap, Int::from(0));

        let f = FunctionSpec::linear_int(bx(2, 1), &[10, 1]).unwrap();
        let (_, c) = rank_reduce(&f, &lim).unwrap();
        assert_eq!(c.gap, Int::from(8));
        assert_eq!(c.bound, Int::from(8));
    }

    #[test]
    fn min_gap_examples() {
        let lim = Limits::default();
        let f = FunctionSpec::linear_int(bx(1, 1), &[7]).unwrap();
        assert_eq!(
            min_gap_bruteforce(ClassKind::Linear, &f, 8, &lim).unwrap(),
            Some(Int::from(2))
        );
        let f = FunctionSpec::linear_int(bx(2, 1), &[10, 1]).unwrap();
        assert_eq!(
            min_gap_bruteforce(ClassKind::Linear, &f, 5, &lim).unwrap(),
            Some(Int::from(8))
        );
        let g = function_from_coefficients(ClassKind::Linear, &f, &[3, 1]).unwrap();
        assert!(check_equivalent(&f, &g, &lim).unwrap().is_equivalent());
        let f = FunctionSpec::linear_int(bx(2, 1), &[1, 1]).unwrap();
        assert_eq!(
            min_gap_bruteforce(ClassKind::Linear, &f, 1, &lim).unwrap(),
            Some(Int::from(4))
        );
        // (10, 1) needs g_1 >= 3 g_2 > 0; radius 2 has no candidate.
        let f = FunctionSpec::linear_int(bx(2, 1), &[10, 1]).unwrap();
        assert_eq!(min_gap_bruteforce(ClassKind::Linear, &f, 2, &lim).unwrap(), None);
    }

    #[test]
    fn min_gap_sepquad() {
        let lim = Limits::default();
        let f = FunctionSpec::separable_quadratic(
            bx(1, 2),
            vec![rat_frac(1, 2)],
            vec![rat_frac(1, 2)],
            vec![rat(0)],
            &[],
        )
        .unwrap();
        // x(x+1)/2 on [-2,2] takes 1,0,0,1,3: needs a tie at -1/0, so beta = alpha.
        assert_eq!(
            min_gap_bruteforce(ClassKind::SeparableQuadratic, &f, 2, &lim).unwrap(),
            Some(Int::from(6))
        );
        assert!(min_gap_bruteforce(ClassKind::Quadratic, &f, 2, &lim).is_err());
    }
}
