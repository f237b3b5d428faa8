//! Equivalence-enforcing scalable programs and the LP reduction route.
//!
//! Every class is encoded as a linear form over decision variables so that
//! `g(x)` is a row of coefficients. The program asks for the smallest gap
//! column such that `g` orders the box exactly like `f`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{check_scalable, simplex_min, vertex_to_integer, Constraint, LPProblem, LpOutcome};
use crate::model::{
    canonicalize, int_gap_of, quad_pairs, rat, BoxDomain, Certificate, ClassKind,
    FunctionClass, FunctionSpec, Int, Limits, Method, Point, Rat, Shape,
};
use crate::oracle::check_equivalent;

/// Column layout of one class over one box.
///
/// * linear: `g_i`
/// * separable: increments `h_{i,k} = g_i(k) - g_i(k-1)`, coordinate major, `k = -N+1..=N`
/// * separable quadratic: `alpha_1, beta_1, alpha_2, beta_2, ...`
/// * quadratic: `alpha_ij` in lexicographic pair order, then `beta_i`
///
/// The gap column is always last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoding {
    pub class: FunctionClass,
    pub domain: BoxDomain,
    pub d: usize,
    pub meta_a: Int,
}

pub type SparseRow = BTreeMap<usize, Rat>;

pub fn encode(class: &FunctionClass, domain: BoxDomain) -> Result<Encoding> {
    let n = domain.dim();
    let r = domain.radius() as usize;
    let big_n = Int::from(domain.radius());
    let two_nn = Int::from(2) * &big_n * &big_n;
    if class.kind.has_shapes() && class.shapes.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: class.shapes.len(),
        });
    }
    let (vars, meta_a) = match class.kind {
        ClassKind::Linear => (n, Int::from(2) * big_n),
        ClassKind::Separable => (2 * r * n, Int::one()),
        ClassKind::SeparableQuadratic => (2 * n, two_nn),
        ClassKind::Quadratic => (n * (n + 3) / 2, two_nn),
    };
    Ok(Encoding {
        class: class.clone(),
        domain,
        d: vars + 1,
        meta_a,
    })
}

impl Encoding {
    pub fn gap_column(&self) -> usize {
        self.d - 1
    }

    fn side_vars(&self) -> usize {
        2 * self.domain.radius() as usize
    }

    /// `g(x)` as a linear form over the non-gap columns.
    pub fn row_of(&self, x: &[i64]) -> SparseRow {
        let n = self.domain.dim();
        let r = self.domain.radius();
        let mut row = SparseRow::new();
        let mut put = |j: usize, v: i64| {
            if v != 0 {
                row.insert(j, rat(v));
            }
        };
        match self.class.kind {
            ClassKind::Linear => {
                for (i, &v) in x.iter().enumerate() {
                    put(i, v);
                }
            }
            ClassKind::Separable => {
                // g_i(x_i) is the prefix sum of increments up to x_i.
                let per = self.side_vars();
                for (i, &v) in x.iter().enumerate() {
                    for k in (-r + 1)..=v {
                        put(i * per + (k + r - 1) as usize, 1);
                    }
                }
            }
            ClassKind::SeparableQuadratic => {
                for (i, &v) in x.iter().enumerate() {
                    put(2 * i, v * v);
                    put(2 * i + 1, v);
                }
            }
            ClassKind::Quadratic => {
                let pairs = quad_pairs(n);
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    put(k, x[i] * x[j]);
                }
                for (i, &v) in x.iter().enumerate() {
                    put(pairs.len() + i, v);
                }
            }
        }
        row
    }

    /// Canonical function of the class from an integer solution vector
    /// (the gap column, if present, is ignored).
    pub fn decode(&self, sol: &[Int]) -> Result<FunctionSpec> {
        let vars = self.d - 1;
        if sol.len() < vars {
            return Err(Error::DimensionMismatch {
                expected: vars,
                actual: sol.len(),
            });
        }
        let n = self.domain.dim();
        let as_rat = |v: &Int| Rat::from_integer(v.clone());
        match self.class.kind {
            ClassKind::Linear => {
                FunctionSpec::linear(self.domain, sol[..n].iter().map(as_rat).collect())
            }
            ClassKind::Separable => {
                let per = self.side_vars();
                let tables = (0..n)
                    .map(|i| {
                        let mut acc = Int::zero();
                        let mut row = vec![Int::zero()];
                        for h in &sol[i * per..(i + 1) * per] {
                            acc += h;
                            row.push(acc.clone());
                        }
                        row
                    })
                    .collect();
                FunctionSpec::separable(self.domain, tables, &self.class.shapes)
            }
            ClassKind::SeparableQuadratic => FunctionSpec::separable_quadratic(
                self.domain,
                (0..n).map(|i| as_rat(&sol[2 * i])).collect(),
                (0..n).map(|i| as_rat(&sol[2 * i + 1])).collect(),
                vec![Rat::zero(); n],
                &self.class.shapes,
            ),
            ClassKind::Quadratic => {
                let m = n * (n + 1) / 2;
                FunctionSpec::quadratic(
                    self.domain,
                    sol[..m].iter().map(as_rat).collect(),
                    sol[m..m + n].iter().map(as_rat).collect(),
                    Rat::zero(),
                )
            }
        }
    }

    /// Rows enforcing the per-coordinate shape flags.
    fn shape_rows(&self) -> Vec<Constraint> {
        let mut out = Vec::new();
        for (i, &shape) in self.class.shapes.iter().enumerate() {
            let sign = match shape {
                Shape::Free => continue,
                Shape::Convex => 1,
                Shape::Concave => -1,
            };
            match self.class.kind {
                ClassKind::Separable => {
                    let per = self.side_vars();
                    for k in 0..per.saturating_sub(1) {
                        let lo = i * per + k;
                        out.push(Constraint::ge(
                            [(lo + 1, rat(sign)), (lo, rat(-sign))],
                            Rat::zero(),
                        ));
                    }
                }
                ClassKind::SeparableQuadratic => {
                    out.push(Constraint::ge([(2 * i, rat(sign))], Rat::zero()));
                }
                _ => {}
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BuildMode {
    Full,
    #[default]
    Pruned,
}

fn difference(a: &SparseRow, b: &SparseRow) -> Vec<(usize, Rat)> {
    let mut out: Vec<(usize, Rat)> = a.iter().map(|(&j, v)| (j, v.clone())).collect();
    out.extend(b.iter().map(|(&j, v)| (j, -v)));
    out
}

/// `g(hi) - g(lo) >= 1` or `= 0`, following the comparison of the f values.
fn order_row(rows: &[SparseRow], hi: usize, lo: usize, tie: bool) -> Constraint {
    let coeffs = difference(&rows[hi], &rows[lo]);
    if tie {
        Constraint::eq(coeffs, Rat::zero())
    } else {
        Constraint::ge(coeffs, Rat::one())
    }
}

/// `g_gap - g(top) + g(bottom) >= 0`.
fn gap_row(rows: &[SparseRow], top: usize, bottom: usize, gap_col: usize) -> Constraint {
    let mut coeffs = difference(&rows[bottom], &rows[top]);
    coeffs.push((gap_col, Rat::one()));
    Constraint::ge(coeffs, Rat::zero())
}

fn integer_values(f: &FunctionSpec, points: &[Point]) -> Result<Vec<Int>> {
    points
        .iter()
        .map(|x| {
            let v = f.value_at(x);
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::NotIntegerValued)
            }
        })
        .collect()
}

/// Builds the program whose feasible points are the functions of `enc`'s
/// class that order the box like `f`, minimizing the gap column.
pub fn build_lp(f: &FunctionSpec, enc: &Encoding, mode: BuildMode, limits: &Limits) -> Result<LPProblem> {
    if f.domain() != enc.domain {
        return Err(Error::InvalidInput("function and encoding use different boxes".into()));
    }
    if f.kind() != enc.class.kind {
        return Err(Error::UnsupportedClass(format!(
            "a {} function with a {} encoding",
            f.kind(),
            enc.class.kind
        )));
    }
    let points = enc.domain.points(limits)?;
    let values = integer_values(f, &points)?;
    let rows: Vec<SparseRow> = points.iter().map(|x| enc.row_of(x)).collect();
    let gap_col = enc.gap_column();
    let mut lp = LPProblem::new(enc.d, enc.meta_a.clone());

    match mode {
        BuildMode::Pruned => {
            let mut order: Vec<usize> = (0..points.len()).collect();
            order.sort_by(|&a, &b| values[a].cmp(&values[b]).then(a.cmp(&b)));
            for w in order.windows(2) {
                lp.push(order_row(&rows, w[1], w[0], values[w[0]] == values[w[1]]));
            }
            lp.push(gap_row(&rows, order[order.len() - 1], order[0], gap_col));
        }
        BuildMode::Full => {
            let p = points.len() as u64;
            limits.check(&(Int::from(p) * Int::from(p)))?;
            for x in 0..points.len() {
                for y in 0..points.len() {
                    if x != y {
                        lp.push(gap_row(&rows, x, y, gap_col));
                    }
                }
            }
            for x in 0..points.len() {
                for y in x + 1..points.len() {
                    let row = match values[x].cmp(&values[y]) {
                        std::cmp::Ordering::Greater => order_row(&rows, x, y, false),
                        std::cmp::Ordering::Equal => order_row(&rows, x, y, true),
                        std::cmp::Ordering::Less => order_row(&rows, y, x, false),
                    };
                    lp.push(row);
                }
            }
        }
    }
    for row in enc.shape_rows() {
        lp.push(row);
    }
    lp.minimize_column(gap_col);
    Ok(lp)
}

/// `d! * a^d`, the integer ceiling on every scaled vertex entry.
pub fn vertex_bound(d: usize, meta_a: &Int) -> Int {
    let fact = (1..=d).fold(Int::one(), |acc, k| acc * Int::from(k));
    fact * num_traits::pow(meta_a.clone(), d)
}

/// Result of the LP route together with the program that produced it.
#[derive(Debug, Clone)]
pub struct LpReduction {
    pub g: FunctionSpec,
    pub certificate: Certificate,
    pub encoding: Encoding,
    pub program: LPProblem,
    pub solution: Vec<Int>,
}

pub fn reduce_via_lp(f: &FunctionSpec, limits: &Limits) -> Result<(FunctionSpec, Certificate)> {
    let r = reduce_via_lp_detailed(f, BuildMode::Pruned, limits)?;
    Ok((r.g, r.certificate))
}

pub fn reduce_via_lp_detailed(f: &FunctionSpec, mode: BuildMode, limits: &Limits) -> Result<LpReduction> {
    let canon = canonicalize(f);
    let enc = encode(&canon.class(), canon.domain())?;
    let program = build_lp(&canon, &enc, mode, limits)?;
    debug_assert!(check_scalable(&program));
    program.validate()?;
    let vertex = match simplex_min(&program)? {
        LpOutcome::Optimal(v) => v,
        LpOutcome::Infeasible => {
            return Err(Error::Internal(
                "the equivalence program is infeasible although f satisfies it".into(),
            ))
        }
        LpOutcome::Unbounded => {
            return Err(Error::Internal("the gap column is bounded below by zero".into()))
        }
    };
    let solution = vertex_to_integer(&vertex, &program)?;
    let g = enc.decode(&solution)?;
    let gap = int_gap_of(&g, limits)?;
    if gap.is_negative() {
        return Err(Error::Internal("negative gap".into()));
    }
    let verdict = check_equivalent(f, &g, limits)?;
    let certificate = Certificate {
        method: Method::Lp,
        gap,
        bound: vertex_bound(enc.d, &enc.meta_a),
        verified: verdict.is_equivalent(),
        counterexample: verdict.counterexample().cloned(),
    };
    Ok(LpReduction {
        g,
        certificate,
        encoding: enc,
        program,
        solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::Relation;

    fn bx(n: usize, r: i64) -> BoxDomain {
        BoxDomain::new(n, r).unwrap()
    }

    fn row(pairs: &[(usize, i64)]) -> SparseRow {
        pairs.iter().map(|&(j, v)| (j, rat(v))).collect()
    }

    #[test]
    fn encoding_dimensions() {
        let enc = encode(&FunctionClass::linear(), bx(2, 3)).unwrap();
        assert_eq!((enc.d, enc.meta_a.clone()), (3, Int::from(6)));
        let enc = encode(&FunctionClass::plain(ClassKind::Separable, 2), bx(2, 3)).unwrap();
        assert_eq!((enc.d, enc.meta_a.clone()), (13, Int::from(1)));
        let enc = encode(&FunctionClass::plain(ClassKind::SeparableQuadratic, 2), bx(2, 3)).unwrap();
        assert_eq!((enc.d, enc.meta_a.clone()), (5, Int::from(18)));
        let enc = encode(&FunctionClass::quadratic(), bx(3, 2)).unwrap();
        assert_eq!((enc.d, enc.meta_a), (10, Int::from(8)));
    }

    #[test]
    fn row_examples() {
        let enc = encode(&FunctionClass::linear(), bx(2, 1)).unwrap();
        assert_eq!(enc.row_of(&[1, -1]), row(&[(0, 1), (1, -1)]));

        let enc = encode(&FunctionClass::plain(ClassKind::Separable, 1), bx(1, 1)).unwrap();
        assert_eq!(enc.row_of(&[1]), row(&[(0, 1), (1, 1)]));
        assert_eq!(enc.row_of(&[-1]), row(&[]));

        let enc = encode(&FunctionClass::quadratic(), bx(2, 3)).unwrap();
        assert_eq!(enc.d, 6);
        assert_eq!(
            enc.row_of(&[2, -3]),
            row(&[(0, 4), (1, -6), (2, 9), (3, 2), (4, -3)])
        );
    }

    #[test]
    fn rows_reproduce_values() {
        let d = bx(2, 2);
        let fs = [
            FunctionSpec::linear_int(d, &[3, -5]).unwrap(),
            FunctionSpec::separable_int(d, &[vec![0, 4, 1, 1, 9], vec![0, -2, 7, 3, 3]], &[]).unwrap(),
            FunctionSpec::separable_quadratic(
                d,
                vec![rat(2), rat(-1)],
                vec![rat(3), rat(4)],
                vec![rat(0), rat(0)],
                &[],
            )
            .unwrap(),
            FunctionSpec::quadratic(d, vec![rat(1), rat(-2), rat(3)], vec![rat(5), rat(7)], rat(0)).unwrap(),
        ];
        for f in &fs {
            let enc = encode(&f.class(), d).unwrap();
            let coeffs = solution_of(f);
            for x in d.points(&Limits::default()).unwrap() {
                let v = enc
                    .row_of(&x)
                    .iter()
                    .fold(Rat::zero(), |acc, (&j, c)| acc + c * Rat::from_integer(coeffs[j].clone()));
                assert_eq!(v, f.value_at(&x), "{:?} at {x:?}", f.kind());
            }
            assert_eq!(&enc.decode(&coeffs).unwrap(), f);
        }
    }

    /// Decision variables that represent an integral canonical `f`.
    fn solution_of(f: &FunctionSpec) -> Vec<Int> {
        use crate::model::FunctionBody;
        let ints = |v: &[Rat]| v.iter().map(|a| a.to_integer()).collect::<Vec<_>>();
        match f.body() {
            FunctionBody::Linear(g) => ints(&g.coeffs),
            FunctionBody::Separable(g) => (0..g.tables.len()).flat_map(|i| g.increments(i)).collect(),
            FunctionBody::SeparableQuadratic(g) => g
                .alpha
                .iter()
                .zip(&g.beta)
                .flat_map(|(a, b)| [a.to_integer(), b.to_integer()])
                .collect(),
            FunctionBody::Quadratic(g) => {
                let mut v = ints(&g.alpha);
                v.extend(ints(&g.beta));
                v
            }
        }
    }

    #[test]
    fn row_counts() {
        let f = FunctionSpec::linear_int(bx(1, 1), &[7]).unwrap();
        let enc = encode(&f.class(), f.domain()).unwrap();
        let lim = Limits::default();
        assert_eq!(build_lp(&f, &enc, BuildMode::Pruned, &lim).unwrap().constraints().len(), 3);
        assert_eq!(build_lp(&f, &enc, BuildMode::Full, &lim).unwrap().constraints().len(), 9);

        let c = FunctionSpec::linear_int(bx(1, 1), &[0]).unwrap();
        let lp = build_lp(&c, &enc, BuildMode::Pruned, &lim).unwrap();
        let eqs = lp.constraints().iter().filter(|r| r.rel == Relation::Eq).count();
        assert_eq!((lp.constraints().len(), eqs), (3, 2));
        let (g, cert) = reduce_via_lp(&c, &lim).unwrap();
        assert_eq!(cert.gap, Int::zero());
        assert!(cert.verified, "{g:?}");

        let s = FunctionSpec::separable_int(bx(1, 1), &[vec![0, 0, 2]], &[Shape::Convex]).unwrap();
        let enc = encode(&s.class(), s.domain()).unwrap();
        let lp = build_lp(&s, &enc, BuildMode::Pruned, &lim).unwrap();
        assert_eq!(lp.constraints().len(), 4);
        assert_eq!(
            lp.constraints()[3],
            Constraint::ge([(1, rat(1)), (0, rat(-1))], Rat::zero())
        );
    }

    #[test]
    fn linear_examples() {
        let lim = Limits::default();
        let (g, cert) = reduce_via_lp(&FunctionSpec::linear_int(bx(1, 1), &[7]).unwrap(), &lim).unwrap();
        assert_eq!(g, FunctionSpec::linear_int(bx(1, 1), &[1]).unwrap());
        assert_eq!((cert.gap, cert.bound, cert.verified), (Int::from(2), Int::from(8), true));

        let (g, cert) = reduce_via_lp(&FunctionSpec::linear_int(bx(2, 1), &[10, 1]).unwrap(), &lim).unwrap();
        assert_eq!(g, FunctionSpec::linear_int(bx(2, 1), &[3, 1]).unwrap());
        assert_eq!((cert.gap, cert.bound, cert.verified), (Int::from(8), Int::from(48), true));
    }

    #[test]
    fn convex_separable_example() {
        let f = FunctionSpec::separable_int(bx(1, 1), &[vec![0, 0, 2]], &[Shape::Convex]).unwrap();
        let (g, cert) = reduce_via_lp(&f, &Limits::default()).unwrap();
        assert_eq!(g, FunctionSpec::separable_int(bx(1, 1), &[vec![0, 0, 1]], &[Shape::Convex]).unwrap());
        assert_eq!(cert.gap, Int::one());
        assert!(cert.verified);
    }

    #[test]
    fn full_and_pruned_agree() {
        let lim = Limits::default();
        let fs = [
            FunctionSpec::linear_int(bx(2, 1), &[5, -3]).unwrap(),
            FunctionSpec::separable_int(bx(2, 1), &[vec![0, 3, 1], vec![0, 1, 5]], &[]).unwrap(),
            FunctionSpec::quadratic(bx(2, 1), vec![rat(1), rat(3), rat(-2)], vec![rat(1), rat(0)], rat(0))
                .unwrap(),
        ];
        for f in &fs {
            let p = reduce_via_lp_detailed(f, BuildMode::Pruned, &lim).unwrap();
            let q = reduce_via_lp_detailed(f, BuildMode::Full, &lim).unwrap();
            let gap = |r: &LpReduction| r.solution[r.encoding.gap_column()].clone();
            assert_eq!(gap(&p), gap(&q));
            assert!(p.certificate.verified && q.certificate.verified);
        }
    }
}
