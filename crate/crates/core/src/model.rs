//! Exact representations of the supported objective classes over `[-N, N]^n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::oracle::Counterexample;

pub type Int = BigInt;
pub type Rat = BigRational;
pub type Point = Vec<i64>;

pub const DEFAULT_MAX_POINTS: u64 = 1_000_000;

/// Largest admissible box radius; keeps products `x_i * x_j` well inside `i64`.
pub const MAX_RADIUS: i64 = 1 << 20;

/// Enumeration guard shared by every operation that walks the whole box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_points: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: DEFAULT_MAX_POINTS,
        }
    }
}

impl Limits {
    pub fn new(max_points: u64) -> Self {
        Limits { max_points }
    }

    pub fn check(&self, requested: &Int) -> Result<()> {
        if *requested > Int::from(self.max_points) {
            return Err(Error::SizeGuard {
                requested: requested.to_string(),
                limit: self.max_points,
            });
        }
        Ok(())
    }
}

/// The symmetric integer box `[-radius, radius]^dim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxDomain {
    dim: usize,
    radius: i64,
}

impl BoxDomain {
    pub fn new(dim: usize, radius: i64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("box dimension must be positive".into()));
        }
        if !(1..=MAX_RADIUS).contains(&radius) {
            return Err(Error::InvalidInput(format!(
                "box radius must lie in [1, {MAX_RADIUS}], got {radius}"
            )));
        }
        Ok(BoxDomain { dim, radius })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    /// Number of integer values per coordinate, `2N + 1`.
    pub fn side(&self) -> usize {
        (2 * self.radius + 1) as usize
    }

    pub fn point_count(&self) -> Int {
        num_traits::pow(Int::from(self.side()), self.dim)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.dim && x.iter().all(|&v| v.abs() <= self.radius)
    }

    pub fn check_point(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: x.len(),
            });
        }
        if !self.contains(x) {
            return Err(Error::OutsideBox {
                point: x.to_vec(),
                radius: self.radius,
                dim: self.dim,
            });
        }
        Ok(())
    }

    /// Position of `x` in the lexicographic enumeration order.
    pub fn index_of(&self, x: &[i64]) -> usize {
        let side = self.side();
        x.iter()
            .fold(0usize, |acc, &v| acc * side + (v + self.radius) as usize)
    }

    /// All box points in lexicographic order, `(-N,..,-N)` first.
    pub fn points(&self, limits: &Limits) -> Result<Vec<Point>> {
        limits.check(&self.point_count())?;
        let total = self.side().pow(self.dim as u32);
        let mut out = Vec::with_capacity(total);
        let mut cur = vec![-self.radius; self.dim];
        loop {
            out.push(cur.clone());
            let mut i = self.dim;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if cur[i] < self.radius {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -self.radius;
            }
        }
    }
}

/// `enumerate_points`: lexicographic walk of the box under the size guard.
pub fn enumerate_points(domain: &BoxDomain, limits: &Limits) -> Result<Vec<Point>> {
    domain.points(limits)
}

/// Per-coordinate curvature requirement for separable classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Shape {
    #[default]
    Free,
    Convex,
    Concave,
}

impl Shape {
    pub fn as_str(&self) -> &'static str {
        match self {
            Shape::Free => "free",
            Shape::Convex => "convex",
            Shape::Concave => "concave",
        }
    }
}

impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free" => Ok(Shape::Free),
            "convex" => Ok(Shape::Convex),
            "concave" => Ok(Shape::Concave),
            other => Err(Error::InvalidInput(format!("unknown shape {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Linear,
    Separable,
    SeparableQuadratic,
    Quadratic,
}

impl ClassKind {
    pub const ALL: [ClassKind; 4] = [
        ClassKind::Linear,
        ClassKind::Separable,
        ClassKind::SeparableQuadratic,
        ClassKind::Quadratic,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClassKind::Linear => "linear",
            ClassKind::Separable => "separable",
            ClassKind::SeparableQuadratic => "separable_quadratic",
            ClassKind::Quadratic => "quadratic",
        }
    }

    pub fn has_shapes(&self) -> bool {
        matches!(self, ClassKind::Separable | ClassKind::SeparableQuadratic)
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(ClassKind::Linear),
            "separable" => Ok(ClassKind::Separable),
            "separable_quadratic" | "sepquad" => Ok(ClassKind::SeparableQuadratic),
            "quadratic" => Ok(ClassKind::Quadratic),
            other => Err(Error::InvalidInput(format!("unknown function class {other:?}"))),
        }
    }
}

/// A function class together with its per-coordinate shape flags.
///
/// `shapes` is empty for the linear and quadratic classes and has one entry
/// per coordinate otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionClass {
    pub kind: ClassKind,
    pub shapes: Vec<Shape>,
}

impl FunctionClass {
    pub fn linear() -> Self {
        FunctionClass {
            kind: ClassKind::Linear,
            shapes: Vec::new(),
        }
    }

    pub fn separable(shapes: Vec<Shape>) -> Self {
        FunctionClass {
            kind: ClassKind::Separable,
            shapes,
        }
    }

    pub fn separable_quadratic(shapes: Vec<Shape>) -> Self {
        FunctionClass {
            kind: ClassKind::SeparableQuadratic,
            shapes,
        }
    }

    pub fn quadratic() -> Self {
        FunctionClass {
            kind: ClassKind::Quadratic,
            shapes: Vec::new(),
        }
    }

    /// The class with all-free shape flags of length `n` where flags apply.
    pub fn plain(kind: ClassKind, n: usize) -> Self {
        let shapes = if kind.has_shapes() {
            vec![Shape::Free; n]
        } else {
            Vec::new()
        };
        FunctionClass { kind, shapes }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFn {
    pub coeffs: Vec<Rat>,
}

/// `f(x) = sum_i f_i(x_i)` stored as value tables `f_i(k)` for `k = -N..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparableFn {
    pub tables: Vec<Vec<Int>>,
    pub shapes: Vec<Shape>,
}

impl SeparableFn {
    /// Increments `f_i(k) - f_i(k-1)` for `k = -N+1..=N`.
    pub fn increments(&self, i: usize) -> Vec<Int> {
        self.tables[i].windows(2).map(|w| &w[1] - &w[0]).collect()
    }
}

/// `f(x) = sum_i alpha_i x_i^2 + beta_i x_i + gamma_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SepQuadFn {
    pub alpha: Vec<Rat>,
    pub beta: Vec<Rat>,
    pub gamma: Vec<Rat>,
    pub shapes: Vec<Shape>,
}

/// `f(x) = sum_{i<=j} alpha_ij x_i x_j + sum_i beta_i x_i + gamma`.
///
/// `alpha` holds the upper triangle in lexicographic pair order, see
/// [`quad_pairs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadFn {
    pub alpha: Vec<Rat>,
    pub beta: Vec<Rat>,
    pub gamma: Rat,
}

impl QuadFn {
    pub fn alpha_at(&self, i: usize, j: usize) -> &Rat {
        let n = self.beta.len();
        &self.alpha[pair_index(n, i.min(j), i.max(j))]
    }
}

/// Upper-triangle index pairs `(i, j)`, `i <= j`, in lexicographic order.
pub fn quad_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Position of `(i, j)` (`i <= j`, zero based) in [`quad_pairs`] order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    // i*n - i*(i-1)/2 pairs have a first index below i.
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionBody {
    Linear(LinearFn),
    Separable(SeparableFn),
    SeparableQuadratic(SepQuadFn),
    Quadratic(QuadFn),
}

/// A validated function of one of the four classes together with its box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionSpec {
    domain: BoxDomain,
    body: FunctionBody,
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

fn check_shapes(n: usize, shapes: &[Shape]) -> Result<Vec<Shape>> {
    if shapes.is_empty() {
        return Ok(vec![Shape::Free; n]);
    }
    check_len(n, shapes.len())?;
    Ok(shapes.to_vec())
}

/// Whether the increments are monotone as `shape` requires.
pub fn increments_conform(increments: &[Int], shape: Shape) -> bool {
    match shape {
        Shape::Free => true,
        Shape::Convex => increments.windows(2).all(|w| w[0] <= w[1]),
        Shape::Concave => increments.windows(2).all(|w| w[0] >= w[1]),
    }
}

pub fn alpha_conforms(alpha: &Rat, shape: Shape) -> bool {
    match shape {
        Shape::Free => true,
        Shape::Convex => !alpha.is_negative(),
        Shape::Concave => !alpha.is_positive(),
    }
}

impl FunctionSpec {
    pub fn linear(domain: BoxDomain, coeffs: Vec<Rat>) -> Result<Self> {
        check_len(domain.dim(), coeffs.len())?;
        Ok(FunctionSpec {
            domain,
            body: FunctionBody::Linear(LinearFn { coeffs }),
        })
    }

    pub fn linear_int(domain: BoxDomain, coeffs: &[i64]) -> Result<Self> {
        Self::linear(domain, coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Separable function from value tables; an empty `shapes` means all free.
    pub fn separable(domain: BoxDomain, tables: Vec<Vec<Int>>, shapes: &[Shape]) -> Result<Self> {
        check_len(domain.dim(), tables.len())?;
        for row in &tables {
            check_len(domain.side(), row.len())?;
        }
        let shapes = check_shapes(domain.dim(), shapes)?;
        let f = SeparableFn { tables, shapes };
        for (i, &shape) in f.shapes.iter().enumerate() {
            if !increments_conform(&f.increments(i), shape) {
                return Err(Error::InvalidFunction(format!(
                    "table {i} is not {} as flagged",
                    shape.as_str()
                )));
            }
        }
        Ok(FunctionSpec {
            domain,
            body: FunctionBody::Separable(f),
        })
    }

    pub fn separable_int(domain: BoxDomain, tables: &[Vec<i64>], shapes: &[Shape]) -> Result<Self> {
        let tables = tables
            .iter()
            .map(|row| row.iter().map(|&v| Int::from(v)).collect())
            .collect();
        Self::separable(domain, tables, shapes)
    }

    pub fn separable_quadratic(
        domain: BoxDomain,
        alpha: Vec<Rat>,
        beta: Vec<Rat>,
        gamma: Vec<Rat>,
        shapes: &[Shape],
    ) -> Result<Self> {
        let n = domain.dim();
        check_len(n, alpha.len())?;
        check_len(n, beta.len())?;
        check_len(n, gamma.len())?;
        let shapes = check_shapes(n, shapes)?;
        for (i, (a, &s)) in alpha.iter().zip(&shapes).enumerate() {
            if !alpha_conforms(a, s) {
                return Err(Error::InvalidFunction(format!(
                    "alpha_{} = {a} violates the {} flag",
                    i + 1,
                    s.as_str()
                )));
            }
        }
        Ok(FunctionSpec {
            domain,
            body: FunctionBody::SeparableQuadratic(SepQuadFn {
                alpha,
                beta,
                gamma,
                shapes,
            }),
        })
    }

    /// Quadratic function; `alpha` is the dense upper triangle in
    /// [`quad_pairs`] order.
    pub fn quadratic(domain: BoxDomain, alpha: Vec<Rat>, beta: Vec<Rat>, gamma: Rat) -> Result<Self> {
        let n = domain.dim();
        check_len(n * (n + 1) / 2, alpha.len())?;
        check_len(n, beta.len())?;
        Ok(FunctionSpec {
            domain,
            body: FunctionBody::Quadratic(QuadFn { alpha, beta, gamma }),
        })
    }

    pub fn domain(&self) -> BoxDomain {
        self.domain
    }

    pub fn body(&self) -> &FunctionBody {
        &self.body
    }

    pub fn kind(&self) -> ClassKind {
        match self.body {
            FunctionBody::Linear(_) => ClassKind::Linear,
            FunctionBody::Separable(_) => ClassKind::Separable,
            FunctionBody::SeparableQuadratic(_) => ClassKind::SeparableQuadratic,
            FunctionBody::Quadratic(_) => ClassKind::Quadratic,
        }
    }

    pub fn class(&self) -> FunctionClass {
        let shapes = match &self.body {
            FunctionBody::Separable(f) => f.shapes.clone(),
            FunctionBody::SeparableQuadratic(f) => f.shapes.clone(),
            _ => Vec::new(),
        };
        FunctionClass {
            kind: self.kind(),
            shapes,
        }
    }

    /// Exact value at a box point.
    pub fn evaluate(&self, x: &[i64]) -> Result<Rat> {
        self.domain.check_point(x)?;
        Ok(self.value_at(x))
    }

    /// Exact value without the box check.
    pub fn value_at(&self, x: &[i64]) -> Rat {
        match &self.body {
            FunctionBody::Linear(f) => f
                .coeffs
                .iter()
                .zip(x)
                .fold(Rat::zero(), |acc, (c, &v)| acc + c * rat(v)),
            FunctionBody::Separable(f) => {
                let r = self.domain.radius;
                let sum = f
                    .tables
                    .iter()
                    .zip(x)
                    .fold(Int::zero(), |acc, (row, &v)| acc + &row[(v + r) as usize]);
                Rat::from_integer(sum)
            }
            FunctionBody::SeparableQuadratic(f) => {
                let mut acc = Rat::zero();
                for i in 0..x.len() {
                    let v = rat(x[i]);
                    acc += &f.alpha[i] * &v * &v + &f.beta[i] * &v + &f.gamma[i];
                }
                acc
            }
            FunctionBody::Quadratic(f) => {
                let n = x.len();
                let mut acc = f.gamma.clone();
                for (k, (i, j)) in quad_pairs(n).into_iter().enumerate() {
                    if !f.alpha[k].is_zero() {
                        acc += &f.alpha[k] * rat(x[i] * x[j]);
                    }
                }
                for i in 0..n {
                    acc += &f.beta[i] * rat(x[i]);
                }
                acc
            }
        }
    }

    /// Multiplies every coefficient by `c`. Separable tables must stay integral.
    pub fn scaled(&self, c: &Rat) -> Result<FunctionSpec> {
        let mul = |v: &[Rat]| v.iter().map(|a| a * c).collect::<Vec<_>>();
        let body = match &self.body {
            FunctionBody::Linear(f) => FunctionBody::Linear(LinearFn {
                coeffs: mul(&f.coeffs),
            }),
            FunctionBody::Separable(f) => {
                let mut tables = Vec::with_capacity(f.tables.len());
                for row in &f.tables {
                    let mut out = Vec::with_capacity(row.len());
                    for v in row {
                        let s = Rat::from_integer(v.clone()) * c;
                        if !s.is_integer() {
                            return Err(Error::InvalidFunction(
                                "scaled separable table is not integral".into(),
                            ));
                        }
                        out.push(s.to_integer());
                    }
                    tables.push(out);
                }
                let shapes = if c.is_negative() {
                    f.shapes.iter().map(|s| flip(*s)).collect()
                } else {
                    f.shapes.clone()
                };
                FunctionBody::Separable(SeparableFn { tables, shapes })
            }
            FunctionBody::SeparableQuadratic(f) => {
                let shapes = if c.is_negative() {
                    f.shapes.iter().map(|s| flip(*s)).collect()
                } else {
                    f.shapes.clone()
                };
                FunctionBody::SeparableQuadratic(SepQuadFn {
                    alpha: mul(&f.alpha),
                    beta: mul(&f.beta),
                    gamma: mul(&f.gamma),
                    shapes,
                })
            }
            FunctionBody::Quadratic(f) => FunctionBody::Quadratic(QuadFn {
                alpha: mul(&f.alpha),
                beta: mul(&f.beta),
                gamma: &f.gamma * c,
            }),
        };
        Ok(FunctionSpec {
            domain: self.domain,
            body,
        })
    }

    /// Adds a constant to the function. Linear functions have no constant
    /// term, so only the other classes accept this.
    pub fn plus_constant(&self, c: &Rat) -> Result<FunctionSpec> {
        let mut out = self.clone();
        match &mut out.body {
            FunctionBody::Linear(_) => {
                return Err(Error::UnsupportedClass(
                    "a constant shift of a linear function".into(),
                ))
            }
            FunctionBody::Separable(f) => {
                if !c.is_integer() {
                    return Err(Error::InvalidFunction(
                        "separable tables only accept integral shifts".into(),
                    ));
                }
                for v in f.tables[0].iter_mut() {
                    *v += c.to_integer();
                }
            }
            FunctionBody::SeparableQuadratic(f) => f.gamma[0] += c,
            FunctionBody::Quadratic(f) => f.gamma += c,
        }
        Ok(out)
    }

    fn denominators(&self) -> Vec<Int> {
        let dens = |v: &[Rat]| v.iter().map(|a| a.denom().clone()).collect::<Vec<_>>();
        match &self.body {
            FunctionBody::Linear(f) => dens(&f.coeffs),
            FunctionBody::Separable(_) => Vec::new(),
            FunctionBody::SeparableQuadratic(f) => {
                let mut d = dens(&f.alpha);
                d.extend(dens(&f.beta));
                d.extend(dens(&f.gamma));
                d
            }
            FunctionBody::Quadratic(f) => {
                let mut d = dens(&f.alpha);
                d.extend(dens(&f.beta));
                d.push(f.gamma.denom().clone());
                d
            }
        }
    }
}

fn flip(s: Shape) -> Shape {
    match s {
        Shape::Free => Shape::Free,
        Shape::Convex => Shape::Concave,
        Shape::Concave => Shape::Convex,
    }
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Anything that can be evaluated at the points of a box.
pub trait BoxFunction {
    fn domain(&self) -> BoxDomain;
    fn value(&self, x: &[i64]) -> Rat;

    fn values(&self, points: &[Point]) -> Vec<Rat> {
        points.iter().map(|x| self.value(x)).collect()
    }
}

impl BoxFunction for FunctionSpec {
    fn domain(&self) -> BoxDomain {
        self.domain
    }

    fn value(&self, x: &[i64]) -> Rat {
        self.value_at(x)
    }
}

/// An arbitrary integer table indexed by box points (no class structure).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointTable {
    domain: BoxDomain,
    values: Vec<Int>,
}

impl PointTable {
    pub fn new(domain: BoxDomain, values: Vec<Int>) -> Result<Self> {
        let count = domain.point_count();
        if Int::from(values.len()) != count {
            return Err(Error::InvalidInput(format!(
                "point table needs {count} values, got {}",
                values.len()
            )));
        }
        Ok(PointTable { domain, values })
    }

    pub fn values_in_order(&self) -> &[Int] {
        &self.values
    }
}

impl BoxFunction for PointTable {
    fn domain(&self) -> BoxDomain {
        self.domain
    }

    fn value(&self, x: &[i64]) -> Rat {
        Rat::from_integer(self.values[self.domain.index_of(x)].clone())
    }
}

/// `max f - min f` over all box points, by enumeration.
pub fn gap_by_enumeration<F: BoxFunction + ?Sized>(f: &F, limits: &Limits) -> Result<Rat> {
    let points = f.domain().points(limits)?;
    let mut iter = points.iter().map(|x| f.value(x));
    let first = iter.next().expect("boxes are never empty");
    let (lo, hi) = iter.fold((first.clone(), first), |(lo, hi), v| {
        if v < lo {
            (v, hi)
        } else if v > hi {
            (lo, v)
        } else {
            (lo, hi)
        }
    });
    Ok(hi - lo)
}

/// Gap of `f` on its box.
///
/// The three separable classes decompose coordinate-wise, so their gap is the
/// sum of per-coordinate ranges and needs no enumeration. Quadratic functions
/// are enumerated under `limits`.
pub fn gap_of(f: &FunctionSpec, limits: &Limits) -> Result<Rat> {
    let r = f.domain.radius;
    let range = |vals: Vec<Rat>| {
        let lo = vals.iter().min().cloned().unwrap_or_else(Rat::zero);
        let hi = vals.iter().max().cloned().unwrap_or_else(Rat::zero);
        hi - lo
    };
    match &f.body {
        FunctionBody::Linear(g) => Ok(g
            .coeffs
            .iter()
            .fold(Rat::zero(), |acc, c| acc + c.abs() * rat(2 * r))),
        FunctionBody::Separable(g) => Ok(g.tables.iter().fold(Rat::zero(), |acc, row| {
            acc + range(row.iter().cloned().map(Rat::from_integer).collect())
        })),
        FunctionBody::SeparableQuadratic(g) => {
            let mut acc = Rat::zero();
            for i in 0..g.alpha.len() {
                let vals = (-r..=r)
                    .map(|k| {
                        let v = rat(k);
                        &g.alpha[i] * &v * &v + &g.beta[i] * &v
                    })
                    .collect();
                acc += range(vals);
            }
            Ok(acc)
        }
        FunctionBody::Quadratic(_) => gap_by_enumeration(f, limits),
    }
}

/// Exact integer gap; fails if the gap is not integral.
pub fn int_gap_of(f: &FunctionSpec, limits: &Limits) -> Result<Int> {
    let g = gap_of(f, limits)?;
    if !g.is_integer() {
        return Err(Error::NotIntegerValued);
    }
    Ok(g.to_integer())
}

/// Positive scaling by the lcm of all coefficient denominators, followed by
/// the constant shift that puts the function in its class's normal form:
/// `f_i(-N) = 0` for separable tables, zero constant terms otherwise.
pub fn canonicalize(f: &FunctionSpec) -> FunctionSpec {
    let l = f
        .denominators()
        .into_iter()
        .fold(Int::one(), |acc, d| acc.lcm(&d));
    let scaled = f
        .scaled(&Rat::from_integer(l))
        .expect("positive integer scaling keeps tables integral");
    let body = match scaled.body {
        FunctionBody::Separable(mut g) => {
            for row in g.tables.iter_mut() {
                let base = row[0].clone();
                for v in row.iter_mut() {
                    *v -= &base;
                }
            }
            FunctionBody::Separable(g)
        }
        FunctionBody::SeparableQuadratic(mut g) => {
            g.gamma.iter_mut().for_each(|c| *c = Rat::zero());
            FunctionBody::SeparableQuadratic(g)
        }
        FunctionBody::Quadratic(mut g) => {
            g.gamma = Rat::zero();
            FunctionBody::Quadratic(g)
        }
        linear => linear,
    };
    FunctionSpec {
        domain: f.domain,
        body,
    }
}

/// Whether `f` takes integer values at every box point.
pub fn is_integer_valued(f: &FunctionSpec, limits: &Limits) -> Result<bool> {
    let points = f.domain.points(limits)?;
    Ok(points.iter().all(|x| f.value_at(x).is_integer()))
}

/// Whether `f` is already in canonical form with integral coefficients.
pub fn is_canonical_integral(f: &FunctionSpec) -> bool {
    let all_int = |v: &[Rat]| v.iter().all(|a| a.is_integer());
    match &f.body {
        FunctionBody::Linear(g) => all_int(&g.coeffs),
        FunctionBody::Separable(g) => g.tables.iter().all(|row| row[0].is_zero()),
        FunctionBody::SeparableQuadratic(g) => {
            all_int(&g.alpha) && all_int(&g.beta) && g.gamma.iter().all(|c| c.is_zero())
        }
        FunctionBody::Quadratic(g) => all_int(&g.alpha) && all_int(&g.beta) && g.gamma.is_zero(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Lp,
    Ft,
    Rank,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Lp => "lp",
            Method::Ft => "ft",
            Method::Rank => "rank",
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lp" => Ok(Method::Lp),
            "ft" => Ok(Method::Ft),
            "rank" => Ok(Method::Rank),
            other => Err(Error::InvalidInput(format!("unknown method {other:?}"))),
        }
    }
}

/// Outcome of a reduction: the achieved gap, the theoretical ceiling that
/// applies to the route, and the oracle verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub method: Method,
    pub gap: Int,
    pub bound: Int,
    pub verified: bool,
    pub counterexample: Option<Counterexample>,
}
