//! Seeded instance generation. All randomness comes from one `u64` seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{BoxDomain, ClassKind, FunctionSpec, Int, Rat, Shape};

/// Coefficients are drawn uniformly from `[-DEFAULT_RANGE, DEFAULT_RANGE]`.
pub const DEFAULT_RANGE: i64 = 1_000_000;

pub struct InstanceGenerator {
    rng: ChaCha8Rng,
    range: i64,
}

impl InstanceGenerator {
    pub fn new(seed: u64) -> Self {
        Self::with_range(seed, DEFAULT_RANGE)
    }

    pub fn with_range(seed: u64, range: i64) -> Self {
        InstanceGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            range: range.max(0),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn coefficient(&mut self) -> i64 {
        self.rng.gen_range(-self.range..=self.range)
    }

    fn coefficients(&mut self, k: usize) -> Vec<Rat> {
        (0..k)
            .map(|_| Rat::from_integer(Int::from(self.coefficient())))
            .collect()
    }

    pub fn shapes(&mut self, n: usize) -> Vec<Shape> {
        (0..n)
            .map(|_| *[Shape::Free, Shape::Convex, Shape::Concave].choose(&mut self.rng).expect("nonempty"))
            .collect()
    }

    pub fn linear(&mut self, domain: BoxDomain) -> FunctionSpec {
        let c = self.coefficients(domain.dim());
        FunctionSpec::linear(domain, c).expect("valid linear instance")
    }

    /// Tables start at 0; increments are sorted to honor the shape flags.
    pub fn separable(&mut self, domain: BoxDomain, shapes: &[Shape]) -> FunctionSpec {
        let tables = (0..domain.dim())
            .map(|i| {
                let mut inc: Vec<i64> = (0..domain.side() - 1).map(|_| self.coefficient()).collect();
                match shapes.get(i).copied().unwrap_or(Shape::Free) {
                    Shape::Free => {}
                    Shape::Convex => inc.sort_unstable(),
                    Shape::Concave => inc.sort_unstable_by(|a, b| b.cmp(a)),
                }
                let mut acc = Int::from(0);
                std::iter::once(acc.clone())
                    .chain(inc.into_iter().map(|h| {
                        acc += h;
                        acc.clone()
                    }))
                    .collect()
            })
            .collect();
        FunctionSpec::separable(domain, tables, shapes).expect("valid separable instance")
    }

    pub fn separable_quadratic(&mut self, domain: BoxDomain, shapes: &[Shape]) -> FunctionSpec {
        let n = domain.dim();
        let alpha = (0..n)
            .map(|i| {
                let a = self.coefficient();
                let a = match shapes.get(i).copied().unwrap_or(Shape::Free) {
                    Shape::Free => a,
                    Shape::Convex => a.abs(),
                    Shape::Concave => -a.abs(),
                };
                Rat::from_integer(Int::from(a))
            })
            .collect();
        let beta = self.coefficients(n);
        let gamma = self.coefficients(n);
        FunctionSpec::separable_quadratic(domain, alpha, beta, gamma, shapes)
            .expect("valid separable quadratic instance")
    }

    pub fn quadratic(&mut self, domain: BoxDomain) -> FunctionSpec {
        let n = domain.dim();
        let alpha = self.coefficients(n * (n + 1) / 2);
        let beta = self.coefficients(n);
        let gamma = self.coefficients(1).remove(0);
        FunctionSpec::quadratic(domain, alpha, beta, gamma).expect("valid quadratic instance")
    }

    /// An instance of `kind`; shape flags are drawn at random where they apply.
    pub fn of_kind(&mut self, kind: ClassKind, domain: BoxDomain) -> FunctionSpec {
        match kind {
            ClassKind::Linear => self.linear(domain),
            ClassKind::Separable => {
                let s = self.shapes(domain.dim());
                self.separable(domain, &s)
            }
            ClassKind::SeparableQuadratic => {
                let s = self.shapes(domain.dim());
                self.separable_quadratic(domain, &s)
            }
            ClassKind::Quadratic => self.quadratic(domain),
        }
    }

    /// Rationals `p/q` with `|p| <= max_num` and `1 <= q <= max_den`.
    pub fn rationals(&mut self, k: usize, max_num: i64, max_den: i64) -> Vec<Rat> {
        (0..k)
            .map(|_| {
                let p = self.rng.gen_range(-max_num..=max_num);
                let q = self.rng.gen_range(1..=max_den.max(1));
                Rat::new(Int::from(p), Int::from(q))
            })
            .collect()
    }
}
