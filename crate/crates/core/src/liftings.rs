//! Linear liftings of the nonlinear classes and the constructive reduction.
//!
//! A function of each class is written as a linear function `w.y` of a
//! lifted point `y = embed(x)` in a larger box. Reducing `w` with
//! [`ft_weights`] and reading the result back gives a function of the same
//! class that orders the box like the original.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::franktardos::{ft_ceiling, ft_weights, FtResult};
use crate::model::{
    canonicalize, int_gap_of, quad_pairs, BoxDomain, Certificate, ClassKind, FunctionBody,
    FunctionSpec, Int, Limits, Method, Rat, SepQuadFn, SeparableFn, Shape,
};
use crate::oracle::check_equivalent;

/// Bijection between lifted slots `n..n(n+3)/2` and pairs `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadIndexMap {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl QuadIndexMap {
    pub fn new(n: usize) -> Self {
        QuadIndexMap {
            n,
            pairs: quad_pairs(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lifted_dim(&self) -> usize {
        self.n + self.pairs.len()
    }

    /// Pair stored at lifted slot `k`, for `k >= n`.
    pub fn pair(&self, k: usize) -> Option<(usize, usize)> {
        k.checked_sub(self.n).and_then(|i| self.pairs.get(i).copied())
    }

    /// Lifted slot of the pair `(i, j)` in either order.
    pub fn slot(&self, i: usize, j: usize) -> usize {
        self.n + crate::model::pair_index(self.n, i.min(j), i.max(j))
    }
}

/// A linear function on `[-ntilde, ntilde]^dim` standing in for a function
/// of `kind` on the original box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedLinear {
    pub kind: ClassKind,
    pub coeffs: Vec<Rat>,
    pub ntilde: Int,
    /// l1 radius covering every difference of two embedded points.
    pub budget: Int,
}

impl LiftedLinear {
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn value(&self, y: &[i64]) -> Rat {
        self.coeffs
            .iter()
            .zip(y)
            .fold(Rat::zero(), |acc, (c, &v)| acc + c * Rat::from_integer(Int::from(v)))
    }
}

fn int_rat(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn lift_linear(coeffs: &[Rat], domain: BoxDomain) -> LiftedLinear {
    let n = domain.dim();
    let r = Int::from(domain.radius());
    LiftedLinear {
        kind: ClassKind::Linear,
        coeffs: coeffs.to_vec(),
        budget: Int::from(2 * n) * &r,
        ntilde: r,
    }
}

/// Increments `f_i(k) - f_i(k-1)`, coordinate major, `k = -N+1..=N`.
pub fn lift_separable(f: &SeparableFn, domain: BoxDomain) -> LiftedLinear {
    let n = domain.dim();
    let coeffs = (0..n).flat_map(|i| f.increments(i)).map(|v| int_rat(&v)).collect();
    LiftedLinear {
        kind: ClassKind::Separable,
        coeffs,
        ntilde: Int::one(),
        budget: Int::from(2 * n) * Int::from(domain.radius()),
    }
}

/// Prefix indicators: slot `(i, k)` is 1 exactly when `k <= x_i`.
pub fn embed_separable(x: &[i64], domain: BoxDomain) -> Vec<i64> {
    let r = domain.radius();
    x.iter()
        .flat_map(|&v| ((-r + 1)..=r).map(move |k| i64::from(k <= v)))
        .collect()
}

pub fn pullback_separable(wbar: &[Int], domain: BoxDomain, shapes: &[Shape]) -> Result<FunctionSpec> {
    let n = domain.dim();
    let per = 2 * domain.radius() as usize;
    check_len(n * per, wbar.len())?;
    let tables = wbar
        .chunks(per)
        .map(|inc| {
            let mut acc = Int::zero();
            std::iter::once(Int::zero())
                .chain(inc.iter().map(|h| {
                    acc += h;
                    acc.clone()
                }))
                .collect()
        })
        .collect();
    FunctionSpec::separable(domain, tables, shapes)
}

/// `(alpha_1, beta_1, alpha_2, beta_2, ...)` on `[-N^2, N^2]^{2n}`.
pub fn lift_sepquad(f: &SepQuadFn, domain: BoxDomain) -> LiftedLinear {
    let n = domain.dim();
    let coeffs = f
        .alpha
        .iter()
        .zip(&f.beta)
        .flat_map(|(a, b)| [a.clone(), b.clone()])
        .collect();
    let nn = Int::from(domain.radius()).pow(2);
    LiftedLinear {
        kind: ClassKind::SeparableQuadratic,
        coeffs,
        budget: Int::from(4 * n) * &nn,
        ntilde: nn,
    }
}

pub fn embed_sepquad(x: &[i64]) -> Vec<i64> {
    x.iter().flat_map(|&v| [v * v, v]).collect()
}

pub fn pullback_sepquad(wbar: &[Int], domain: BoxDomain, shapes: &[Shape]) -> Result<FunctionSpec> {
    let n = domain.dim();
    check_len(2 * n, wbar.len())?;
    FunctionSpec::separable_quadratic(
        domain,
        (0..n).map(|i| int_rat(&wbar[2 * i])).collect(),
        (0..n).map(|i| int_rat(&wbar[2 * i + 1])).collect(),
        vec![Rat::zero(); n],
        shapes,
    )
}

/// `(beta_1, .., beta_n, alpha_pairs...)` on `[-N^2, N^2]^{n(n+3)/2}`.
pub fn lift_quad(f: &crate::model::QuadFn, domain: BoxDomain) -> (LiftedLinear, QuadIndexMap) {
    let map = QuadIndexMap::new(domain.dim());
    let mut coeffs = f.beta.clone();
    coeffs.extend(f.alpha.iter().cloned());
    let nn = Int::from(domain.radius()).pow(2);
    let lifted = LiftedLinear {
        kind: ClassKind::Quadratic,
        budget: Int::from(2 * map.lifted_dim()) * &nn,
        coeffs,
        ntilde: nn,
    };
    (lifted, map)
}

pub fn embed_quad(x: &[i64], map: &QuadIndexMap) -> Vec<i64> {
    let mut y = x.to_vec();
    y.extend(map.pairs.iter().map(|&(i, j)| x[i] * x[j]));
    y
}

pub fn pullback_quad(wbar: &[Int], domain: BoxDomain, map: &QuadIndexMap) -> Result<FunctionSpec> {
    let n = map.n;
    check_len(map.lifted_dim(), wbar.len())?;
    FunctionSpec::quadratic(
        domain,
        wbar[n..].iter().map(int_rat).collect(),
        wbar[..n].iter().map(int_rat).collect(),
        Rat::zero(),
    )
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

/// Lifts a canonical function of any class.
pub fn lift(f: &FunctionSpec) -> (LiftedLinear, Option<QuadIndexMap>) {
    let domain = f.domain();
    match f.body() {
        FunctionBody::Linear(g) => (lift_linear(&g.coeffs, domain), None),
        FunctionBody::Separable(g) => (lift_separable(g, domain), None),
        FunctionBody::SeparableQuadratic(g) => (lift_sepquad(g, domain), None),
        FunctionBody::Quadratic(g) => {
            let (l, m) = lift_quad(g, domain);
            (l, Some(m))
        }
    }
}

/// Lifted image of a box point for `kind`.
pub fn embed(kind: ClassKind, x: &[i64], domain: BoxDomain) -> Vec<i64> {
    match kind {
        ClassKind::Linear => x.to_vec(),
        ClassKind::Separable => embed_separable(x, domain),
        ClassKind::SeparableQuadratic => embed_sepquad(x),
        ClassKind::Quadratic => embed_quad(x, &QuadIndexMap::new(domain.dim())),
    }
}

/// Reads integer lifted weights back into `f`'s class and shape flags.
pub fn pullback(f: &FunctionSpec, wbar: &[Int]) -> Result<FunctionSpec> {
    let domain = f.domain();
    let class = f.class();
    match class.kind {
        ClassKind::Linear => FunctionSpec::linear(domain, wbar.iter().map(int_rat).collect()),
        ClassKind::Separable => pullback_separable(wbar, domain, &class.shapes),
        ClassKind::SeparableQuadratic => pullback_sepquad(wbar, domain, &class.shapes),
        ClassKind::Quadratic => pullback_quad(wbar, domain, &QuadIndexMap::new(domain.dim())),
    }
}

/// The gap ceiling of the constructive route for a class.
pub fn ft_class_bound(kind: ClassKind, n: usize, radius: i64) -> Int {
    let r = Int::from(radius);
    match kind {
        ClassKind::Linear => ft_ceiling(n, &r),
        ClassKind::Separable => ft_ceiling(2 * n * radius as usize, &Int::one()),
        ClassKind::SeparableQuadratic => ft_ceiling(2 * n, &(&r * &r)),
        ClassKind::Quadratic => ft_ceiling(n * (n + 3) / 2, &(&r * &r)),
    }
}

/// Result of the constructive route with its intermediate data.
#[derive(Debug, Clone)]
pub struct FtReduction {
    pub g: FunctionSpec,
    pub certificate: Certificate,
    pub lifted: LiftedLinear,
    pub weights: FtResult,
    /// Gap of the reduced linear function on the whole lifted box.
    pub lifted_gap: Int,
}

pub fn reduce_via_ft(f: &FunctionSpec, limits: &Limits) -> Result<(FunctionSpec, Certificate)> {
    let r = reduce_via_ft_detailed(f, limits)?;
    Ok((r.g, r.certificate))
}

pub fn reduce_via_ft_detailed(f: &FunctionSpec, limits: &Limits) -> Result<FtReduction> {
    let canon = canonicalize(f);
    let (lifted, _) = lift(&canon);
    let weights = ft_weights(&lifted.coeffs, &lifted.budget)?;
    let ceiling = ft_ceiling(lifted.dim(), &lifted.ntilde);
    if weights.wbar.iter().any(|v| v.abs() > ceiling) {
        return Err(Error::Internal(format!("reduced weights exceed the ceiling {ceiling}")));
    }
    let g = pullback(&canon, &weights.wbar)?;
    let l1 = weights.wbar.iter().fold(Int::zero(), |acc, v| acc + v.abs());
    let lifted_gap = Int::from(2) * &lifted.ntilde * l1;
    let gap = int_gap_of(&g, limits)?;
    if gap > lifted_gap {
        return Err(Error::Internal("pulled-back gap exceeds the lifted gap".into()));
    }
    let verdict = check_equivalent(f, &g, limits)?;
    let domain = f.domain();
    let certificate = Certificate {
        method: Method::Ft,
        gap,
        bound: ft_class_bound(f.kind(), domain.dim(), domain.radius()),
        verified: verdict.is_equivalent(),
        counterexample: verdict.counterexample().cloned(),
    };
    Ok(FtReduction {
        g,
        certificate,
        lifted,
        weights,
        lifted_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{rat, FunctionClass};

    fn bx(n: usize, r: i64) -> BoxDomain {
        BoxDomain::new(n, r).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn rats(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn sep(f: &FunctionSpec) -> &SeparableFn {
        match f.body() {
            FunctionBody::Separable(g) => g,
            _ => unreachable!(),
        }
    }

    #[test]
    fn separable_lift_examples() {
        let f = FunctionSpec::separable_int(bx(1, 1), &[vec![0, 5, 7]], &[]).unwrap();
        assert_eq!(lift_separable(sep(&f), bx(1, 1)).coeffs, rats(&[5, 2]));
        let f = FunctionSpec::separable_int(bx(2, 1), &[vec![0, 1, 3], vec![0, 2, 2]], &[]).unwrap();
        let l = lift_separable(sep(&f), bx(2, 1));
        assert_eq!(l.coeffs, rats(&[1, 2, 2, 0]));
        assert_eq!((l.ntilde, l.budget), (Int::one(), Int::from(4)));
        let c = FunctionSpec::separable_int(bx(1, 2), &[vec![0; 5]], &[]).unwrap();
        assert!(lift_separable(sep(&c), bx(1, 2)).coeffs.iter().all(Zero::is_zero));
    }

    #[test]
    fn separable_pullback_examples() {
        let g = pullback_separable(&ints(&[2, 1]), bx(1, 1), &[]).unwrap();
        assert_eq!(sep(&g).tables, vec![ints(&[0, 2, 3])]);
        let g = pullback_separable(&ints(&[0, 0]), bx(1, 1), &[]).unwrap();
        assert_eq!(sep(&g).tables, vec![ints(&[0, 0, 0])]);
        let g = pullback_separable(&ints(&[1, 2]), bx(1, 1), &[Shape::Convex]).unwrap();
        assert_eq!(sep(&g).tables, vec![ints(&[0, 1, 3])]);
        assert!(pullback_separable(&ints(&[2, 1]), bx(1, 1), &[Shape::Convex]).is_err());
    }

    #[test]
    fn quadratic_examples() {
        let d = bx(2, 3);
        let f = FunctionSpec::quadratic(d, rats(&[3, 4, 5]), rats(&[1, 2]), rat(0)).unwrap();
        let (l, map) = lift(&f);
        let map = map.unwrap();
        assert_eq!(l.coeffs, rats(&[1, 2, 3, 4, 5]));
        assert_eq!((map.pair(2), map.pair(3), map.pair(4)), (Some((0, 0)), Some((0, 1)), Some((1, 1))));
        assert_eq!(map.slot(1, 0), 3);
        assert_eq!(embed_quad(&[2, -3], &map), vec![2, -3, 4, -6, 9]);
        assert_eq!(pullback_quad(&ints(&[1, 2, 3, 4, 5]), d, &map).unwrap(), f);

        let map1 = QuadIndexMap::new(1);
        assert_eq!(map1.lifted_dim(), 2);
        assert_eq!(embed_quad(&[3], &map1), vec![3, 9]);
    }

    #[test]
    fn sepquad_examples() {
        let f = FunctionSpec::separable_quadratic(bx(2, 2), rats(&[1, 0]), rats(&[0, 5]), rats(&[0, 0]), &[])
            .unwrap();
        let (l, _) = lift(&f);
        assert_eq!(l.coeffs, rats(&[1, 0, 0, 5]));
        assert_eq!((l.ntilde, l.budget), (Int::from(4), Int::from(32)));
        assert_eq!(embed_sepquad(&[-3, 1]), vec![9, -3, 1, 1]);
        assert_eq!(embed_sepquad(&[2]), vec![4, 2]);
        assert_eq!(pullback_sepquad(&ints(&[1, 0, 0, 5]), bx(2, 2), &[]).unwrap(), f);
    }

    #[test]
    fn embedding_reproduces_values() {
        let d = bx(2, 2);
        let fs = [
            FunctionSpec::linear_int(d, &[3, -5]).unwrap(),
            FunctionSpec::separable_int(d, &[vec![0, 4, 1, 1, 9], vec![0, -2, 7, 3, 3]], &[]).unwrap(),
            FunctionSpec::separable_quadratic(d, rats(&[2, -1]), rats(&[3, 4]), rats(&[0, 0]), &[]).unwrap(),
            FunctionSpec::quadratic(d, rats(&[1, -2, 3]), rats(&[5, 7]), rat(0)).unwrap(),
        ];
        for f in &fs {
            let (l, _) = lift(f);
            let pts = d.points(&Limits::default()).unwrap();
            for x in &pts {
                assert_eq!(l.value(&embed(f.kind(), x, d)), f.value_at(x));
                for y in &pts {
                    let ex = embed(f.kind(), x, d);
                    let ey = embed(f.kind(), y, d);
                    let l1: i64 = ex.iter().zip(&ey).map(|(a, b)| (a - b).abs()).sum();
                    assert!(Int::from(l1) <= l.budget);
                    assert!(ex.iter().all(|v| Int::from(v.abs()) <= l.ntilde));
                }
            }
            let wbar: Vec<Int> = l.coeffs.iter().map(|c| c.to_integer()).collect();
            assert_eq!(&pullback(f, &wbar).unwrap(), f);
        }
    }

    #[test]
    fn ft_route_examples() {
        let lim = Limits::default();
        let f = FunctionSpec::separable_int(bx(1, 1), &[vec![0, 5, 7]], &[]).unwrap();
        let (g, cert) = reduce_via_ft(&f, &lim).unwrap();
        assert!(cert.verified, "{g:?}");
        assert_eq!(cert.bound, Int::from(256));

        let f = FunctionSpec::separable_quadratic(bx(1, 2), rats(&[3]), rats(&[-2]), rats(&[0]), &[]).unwrap();
        let (_, cert) = reduce_via_ft(&f, &lim).unwrap();
        assert!(cert.verified);
        assert_eq!(cert.bound, Int::from(65536));

        let f = FunctionSpec::linear_int(bx(2, 1), &[10, 1]).unwrap();
        let (g, cert) = reduce_via_ft(&f, &lim).unwrap();
        assert!(cert.verified && cert.gap <= cert.bound);
        assert!(crate::oracle::check_class(&g, &FunctionClass::linear()));
    }

    #[test]
    fn ft_route_keeps_shapes() {
        let lim = Limits::default();
        let f = FunctionSpec::separable_int(
            bx(2, 2),
            &[vec![0, -5, -7, -6, 10], vec![0, 3, 4, 4, 1]],
            &[Shape::Convex, Shape::Concave],
        )
        .unwrap();
        let (g, cert) = reduce_via_ft(&f, &lim).unwrap();
        assert!(cert.verified);
        assert_eq!(g.class(), f.class());
    }
}
