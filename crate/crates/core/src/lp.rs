//! Exact rational linear programs over free columns.
//!
//! The solver works directly on the inequality form `A x >= b` (equalities
//! are split into two opposite rows). A basis is a set of `d` linearly
//! independent rows that are tight at the current point, so every basis is a
//! vertex of the polyhedron. Phase 1 finds a vertex of the auxiliary
//! polyhedron `{(x, s) : A x + s >= b, s >= 0}` minimizing `s`; phase 2 walks
//! vertices of the original polyhedron. Both phases use Bland's smallest
//! index rule for the leaving and the entering row.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::model::{Int, Rat};

/// Hard cap on simplex pivots per phase; Bland's rule terminates long before.
pub const MAX_PIVOTS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("row {row} references column {col}, but the program has {cols} columns")]
    ColumnOutOfRange { row: usize, col: usize, cols: usize },
    #[error("row {row} has a coefficient above the declared bound {bound}")]
    CoefficientBound { row: usize, bound: Int },
    #[error("the feasible region has no vertex")]
    NoVertex,
    #[error("pivot limit exceeded")]
    PivotLimit,
    #[error("the program is not scalable")]
    NotScalable,
    #[error("scaled vertex violates row {row}")]
    ScalingInfeasible { row: usize },
    #[error("vertex has {got} coordinates, the program has {cols} columns")]
    VertexShape { got: usize, cols: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Ge,
    Eq,
}

/// `sum coeffs[j] * x_j  (>= | =)  rhs` with no zero entries stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: BTreeMap<usize, Rat>,
    pub rel: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new<I: IntoIterator<Item = (usize, Rat)>>(coeffs: I, rel: Relation, rhs: Rat) -> Self {
        let mut map: BTreeMap<usize, Rat> = BTreeMap::new();
        for (j, c) in coeffs {
            *map.entry(j).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Constraint {
            coeffs: map,
            rel,
            rhs,
        }
    }

    pub fn ge<I: IntoIterator<Item = (usize, Rat)>>(coeffs: I, rhs: Rat) -> Self {
        Self::new(coeffs, Relation::Ge, rhs)
    }

    pub fn eq<I: IntoIterator<Item = (usize, Rat)>>(coeffs: I, rhs: Rat) -> Self {
        Self::new(coeffs, Relation::Eq, rhs)
    }

    pub fn dense(row: &[Rat], rel: Relation, rhs: Rat) -> Self {
        Self::new(row.iter().cloned().enumerate(), rel, rhs)
    }

    pub fn lhs(&self, x: &[Rat]) -> Rat {
        self.coeffs
            .iter()
            .fold(Rat::zero(), |acc, (&j, c)| acc + c * &x[j])
    }

    pub fn is_satisfied(&self, x: &[Rat]) -> bool {
        let v = self.lhs(x);
        match self.rel {
            Relation::Ge => v >= self.rhs,
            Relation::Eq => v == self.rhs,
        }
    }

    pub fn is_tight(&self, x: &[Rat]) -> bool {
        self.lhs(x) == self.rhs
    }

    /// Dense coefficient row of length `cols`.
    pub fn to_dense(&self, cols: usize) -> Vec<Rat> {
        let mut row = vec![Rat::zero(); cols];
        for (&j, c) in &self.coeffs {
            row[j] = c.clone();
        }
        row
    }
}

/// A linear program `min c.x` subject to rows over `num_cols` free columns.
///
/// `meta_a` is the declared bound on the absolute value of every integer
/// coefficient and right-hand side once each row is cleared of denominators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPProblem {
    num_cols: usize,
    constraints: Vec<Constraint>,
    objective: BTreeMap<usize, Rat>,
    meta_a: Int,
}

impl LPProblem {
    pub fn new(num_cols: usize, meta_a: Int) -> Self {
        LPProblem {
            num_cols,
            constraints: Vec::new(),
            objective: BTreeMap::new(),
            meta_a,
        }
    }

    pub fn push(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    pub fn minimize_column(&mut self, col: usize) {
        self.objective = BTreeMap::from([(col, Rat::one())]);
    }

    pub fn set_objective<I: IntoIterator<Item = (usize, Rat)>>(&mut self, coeffs: I) {
        self.objective = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &BTreeMap<usize, Rat> {
        &self.objective
    }

    pub fn meta_a(&self) -> &Int {
        &self.meta_a
    }

    pub fn objective_value(&self, x: &[Rat]) -> Rat {
        self.objective
            .iter()
            .fold(Rat::zero(), |acc, (&j, c)| acc + c * &x[j])
    }

    pub fn is_feasible(&self, x: &[Rat]) -> bool {
        x.len() == self.num_cols && self.constraints.iter().all(|c| c.is_satisfied(x))
    }

    fn validate_columns(&self) -> Result<(), LpError> {
        let cols = self.num_cols;
        for (row, c) in self.constraints.iter().enumerate() {
            if let Some((&col, _)) = c.coeffs.iter().next_back().filter(|(&j, _)| j >= cols) {
                return Err(LpError::ColumnOutOfRange { row, col, cols });
            }
        }
        if let Some((&col, _)) = self.objective.iter().next_back().filter(|(&j, _)| j >= cols) {
            return Err(LpError::ColumnOutOfRange {
                row: usize::MAX,
                col,
                cols,
            });
        }
        Ok(())
    }

    /// Checks column indices and the declared coefficient bound.
    pub fn validate(&self) -> Result<(), LpError> {
        self.validate_columns()?;
        for (row, c) in self.constraints.iter().enumerate() {
            let l = c
                .coeffs
                .values()
                .chain(std::iter::once(&c.rhs))
                .fold(Int::one(), |acc, v| acc.lcm(v.denom()));
            let scale = Rat::from_integer(l);
            let within = |v: &Rat| (v * &scale).abs().to_integer() <= self.meta_a;
            if !c.coeffs.values().all(within) || !within(&c.rhs) {
                return Err(LpError::CoefficientBound {
                    row,
                    bound: self.meta_a.clone(),
                });
            }
        }
        Ok(())
    }
}

/// An optimal basic feasible solution together with `d` linearly independent
/// rows that are tight at it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub coords: Vec<Rat>,
    pub tight_rows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(Vertex),
    Infeasible,
    Unbounded,
}

/// Structural scalability test: every equality has zero right-hand side and
/// every `>=` row has a non-negative one.
pub fn check_scalable(lp: &LPProblem) -> bool {
    lp.constraints.iter().all(|c| match c.rel {
        Relation::Eq => c.rhs.is_zero(),
        Relation::Ge => !c.rhs.is_negative(),
    })
}

/// Dense `>=` rows; equalities appear as a pair of opposite rows.
struct Rows {
    a: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    origin: Vec<usize>,
}

impl Rows {
    fn from_lp(lp: &LPProblem) -> Self {
        let cols = lp.num_cols;
        let mut rows = Rows {
            a: Vec::new(),
            b: Vec::new(),
            origin: Vec::new(),
        };
        for (idx, c) in lp.constraints.iter().enumerate() {
            let dense = c.to_dense(cols);
            if c.rel == Relation::Eq {
                rows.a.push(dense.iter().map(|v| -v).collect());
                rows.b.push(-&c.rhs);
                rows.origin.push(idx);
            }
            rows.a.push(dense);
            rows.b.push(c.rhs.clone());
            rows.origin.push(idx);
        }
        rows
    }

    fn slack(&self, i: usize, x: &[Rat]) -> Rat {
        dot(&self.a[i], x) - &self.b[i]
    }
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .filter(|(u, _)| !u.is_zero())
        .fold(Rat::zero(), |acc, (u, v)| acc + u * v)
}

/// Inverse of a square matrix by Gauss-Jordan elimination, `None` if singular.
pub fn invert(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, piv);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                let (pivot_row, target) = if r < col {
                    let (lo, hi) = aug.split_at_mut(col);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = aug.split_at_mut(r);
                    (&lo[col], &mut hi[0])
                };
                for (t, p) in target.iter_mut().zip(pivot_row.iter()) {
                    if !p.is_zero() {
                        *t -= &factor * p;
                    }
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Exact determinant by fraction-based elimination.
pub fn determinant(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &a[col][col];
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

/// Incremental row echelon form used to pick independent rows.
struct Echelon {
    dim: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `row` if it is independent of the rows seen so far.
    fn insert(&mut self, row: &[Rat]) -> bool {
        let mut r = row.to_vec();
        for (er, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let factor = r[p].clone();
                for (t, e) in r.iter_mut().zip(er) {
                    if !e.is_zero() {
                        *t -= &factor * e;
                    }
                }
            }
        }
        let Some(p) = r.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for v in r.iter_mut() {
            *v *= &inv;
        }
        // Keep the stored rows fully reduced in the new pivot column.
        for er in self.rows.iter_mut() {
            if !er[p].is_zero() {
                let factor = er[p].clone();
                for (t, e) in er.iter_mut().zip(&r) {
                    if !e.is_zero() {
                        *t -= &factor * e;
                    }
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    /// A nonzero vector orthogonal to every stored row (rank must be < dim).
    fn null_vector(&self) -> Vec<Rat> {
        let free = (0..self.dim)
            .find(|c| !self.pivots.contains(c))
            .expect("rank below dimension");
        let mut z = vec![Rat::zero(); self.dim];
        z[free] = Rat::one();
        for (er, &p) in self.rows.iter().zip(&self.pivots) {
            z[p] = -er[free].clone();
        }
        z
    }
}

enum Walk {
    Vertex { x: Vec<Rat>, basis: Vec<usize> },
    Unbounded,
    NoVertex,
}

/// Independent tight rows at `x`, smallest indices first.
fn tight_basis(rows: &Rows, x: &[Rat], dim: usize) -> (Echelon, Vec<usize>) {
    let mut ech = Echelon::new(dim);
    let mut chosen = Vec::new();
    for i in 0..rows.a.len() {
        if ech.rank() == dim {
            break;
        }
        if rows.slack(i, x).is_zero() && ech.insert(&rows.a[i]) {
            chosen.push(i);
        }
    }
    (ech, chosen)
}

/// Moves a feasible point to a vertex without increasing `c.x`.
///
/// Each step follows a direction inside the null space of the tight rows
/// until a new row becomes tight, so the rank of the tight set grows.
fn purify(rows: &Rows, mut x: Vec<Rat>, c: &[Rat]) -> Walk {
    let dim = x.len();
    loop {
        let (ech, chosen) = tight_basis(rows, &x, dim);
        if ech.rank() == dim {
            return Walk::Vertex { x, basis: chosen };
        }
        let mut z = ech.null_vector();
        let cz = dot(c, &z);
        if cz.is_positive() {
            z.iter_mut().for_each(|v| *v = -v.clone());
        }
        let step = match ratio_test(rows, &x, &z, &[]) {
            Some(s) => Some((s, z)),
            None if cz.is_zero() => {
                let back: Vec<Rat> = z.iter().map(|v| -v).collect();
                ratio_test(rows, &x, &back, &[]).map(|s| (s, back))
            }
            None => return Walk::Unbounded,
        };
        let Some(((t, _), dir)) = step else {
            return Walk::NoVertex;
        };
        for (xi, zi) in x.iter_mut().zip(&dir) {
            *xi += &t * zi;
        }
    }
}

/// Largest feasible step along `z`: the minimal ratio over rows that
/// decrease, ties broken by the smallest row index.
fn ratio_test(rows: &Rows, x: &[Rat], z: &[Rat], skip: &[usize]) -> Option<(Rat, usize)> {
    let mut best: Option<(Rat, usize)> = None;
    for i in 0..rows.a.len() {
        if skip.contains(&i) {
            continue;
        }
        let rate = dot(&rows.a[i], z);
        if !rate.is_negative() {
            continue;
        }
        let t = rows.slack(i, x) / (-rate);
        if best.as_ref().is_none_or(|(bt, _)| t < *bt) {
            best = Some((t, i));
        }
    }
    best
}

/// Vertex-to-vertex descent with Bland's rule.
fn descend(rows: &Rows, mut x: Vec<Rat>, mut basis: Vec<usize>, c: &[Rat]) -> Result<Walk, LpError> {
    let dim = x.len();
    for _ in 0..MAX_PIVOTS {
        let a_b: Vec<Vec<Rat>> = basis.iter().map(|&i| rows.a[i].clone()).collect();
        let inv = invert(&a_b).expect("basis rows are independent");
        // y = A_B^{-T} c, the multipliers of the basis rows.
        let y: Vec<Rat> = (0..dim)
            .map(|k| (0..dim).fold(Rat::zero(), |acc, j| acc + &inv[j][k] * &c[j]))
            .collect();
        let leaving = (0..dim)
            .filter(|&k| y[k].is_negative())
            .min_by_key(|&k| basis[k]);
        let Some(k) = leaving else {
            return Ok(Walk::Vertex { x, basis });
        };
        // Direction leaving row basis[k] while the others stay tight.
        let z: Vec<Rat> = (0..dim).map(|j| inv[j][k].clone()).collect();
        let Some((t, entering)) = ratio_test(rows, &x, &z, &basis) else {
            return Ok(Walk::Unbounded);
        };
        for (xi, zi) in x.iter_mut().zip(&z) {
            *xi += &t * zi;
        }
        basis[k] = entering;
    }
    Err(LpError::PivotLimit)
}

/// Minimizes the objective exactly and returns an optimal vertex.
pub fn simplex_min(lp: &LPProblem) -> Result<LpOutcome, LpError> {
    lp.validate_columns()?;
    let d = lp.num_cols;
    let rows = Rows::from_lp(lp);

    // Phase 1 on (x, s): rows (a_i, 1) >= b_i and s >= 0, minimizing s.
    let mut aux = Rows {
        a: rows
            .a
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.push(Rat::one());
                r
            })
            .collect(),
        b: rows.b.clone(),
        origin: rows.origin.clone(),
    };
    let mut s_row = vec![Rat::zero(); d + 1];
    s_row[d] = Rat::one();
    aux.a.push(s_row.clone());
    aux.b.push(Rat::zero());
    aux.origin.push(usize::MAX);

    let s0 = rows
        .b
        .iter()
        .cloned()
        .fold(Rat::zero(), |acc, v| if v > acc { v } else { acc });
    let mut start = vec![Rat::zero(); d + 1];
    start[d] = s0;
    let phase1 = match purify(&aux, start, &s_row) {
        Walk::Vertex { x, basis } => descend(&aux, x, basis, &s_row)?,
        other => other,
    };
    let x = match phase1 {
        Walk::Vertex { x, .. } => {
            if x[d].is_positive() {
                return Ok(LpOutcome::Infeasible);
            }
            x[..d].to_vec()
        }
        Walk::Unbounded => unreachable!("phase 1 objective is bounded below"),
        Walk::NoVertex => return Err(LpError::NoVertex),
    };

    // Phase 2.
    let mut c = vec![Rat::zero(); d];
    for (&j, v) in &lp.objective {
        c[j] = v.clone();
    }
    let walk = match purify(&rows, x, &c) {
        Walk::Vertex { x, basis } => descend(&rows, x, basis, &c)?,
        other => other,
    };
    match walk {
        Walk::Vertex { x, basis } => {
            let mut tight_rows: Vec<usize> = basis.iter().map(|&i| rows.origin[i]).collect();
            tight_rows.sort_unstable();
            Ok(LpOutcome::Optimal(Vertex {
                coords: x,
                tight_rows,
            }))
        }
        Walk::Unbounded => Ok(LpOutcome::Unbounded),
        Walk::NoVertex => Err(LpError::NoVertex),
    }
}

/// Dense coefficient matrix of the vertex's tight rows.
pub fn tight_matrix(lp: &LPProblem, v: &Vertex) -> Vec<Vec<Rat>> {
    v.tight_rows
        .iter()
        .map(|&i| lp.constraints[i].to_dense(lp.num_cols))
        .collect()
}

/// Scales a vertex of a scalable program to an integer feasible point by the
/// lcm of its coordinate denominators.
///
/// The lcm divides `|det B|` for the tight basis `B`, so by Cramer's rule each
/// entry stays within `d! * a^d`.
pub fn vertex_to_integer(v: &Vertex, lp: &LPProblem) -> Result<Vec<Int>, LpError> {
    if !check_scalable(lp) {
        return Err(LpError::NotScalable);
    }
    if v.coords.len() != lp.num_cols {
        return Err(LpError::VertexShape {
            got: v.coords.len(),
            cols: lp.num_cols,
        });
    }
    let l = v
        .coords
        .iter()
        .fold(Int::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<Int> = v.coords.iter().map(|c| (c * &l).to_integer()).collect();
    let as_rat: Vec<Rat> = ints.iter().cloned().map(Rat::from_integer).collect();
    if let Some(row) = lp.constraints.iter().position(|c| !c.is_satisfied(&as_rat)) {
        return Err(LpError::ScalingInfeasible { row });
    }
    Ok(ints)
}
