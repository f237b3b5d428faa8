//! Exact LLL reduction over a diagonal weighted inner product.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{Int, Rat};

/// Largest enumeration accepted by [`svp_bruteforce`].
pub const MAX_SVP_COMBINATIONS: u64 = 50_000_000;

/// Square, full-rank set of rational rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    rows: Vec<Vec<Rat>>,
}

impl LatticeBasis {
    pub fn new(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidInput("empty lattice basis".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                actual: r.len(),
            });
        }
        let basis = LatticeBasis { rows };
        if basis.gram_determinant().is_zero() {
            return Err(Error::InvalidInput("lattice basis is rank deficient".into()));
        }
        Ok(basis)
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_integer(Int::from(v))).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn gram_determinant(&self) -> Rat {
        let w = vec![Rat::one(); self.dim()];
        gram_schmidt(&self.rows, &w).1.iter().product()
    }
}

pub(crate) fn inner(u: &[Rat], v: &[Rat], w: &[Rat]) -> Rat {
    u.iter()
        .zip(v)
        .zip(w)
        .filter(|((a, b), _)| !a.is_zero() && !b.is_zero())
        .fold(Rat::zero(), |acc, ((a, b), c)| acc + a * b * c)
}

/// Nearest integer, halves rounded toward +infinity.
pub(crate) fn round_half_up(v: &Rat) -> Int {
    (v + Rat::new(Int::one(), Int::from(2))).floor().to_integer()
}

/// Gram-Schmidt coefficients `mu[i][j]` (`j < i`) and squared norms of the
/// orthogonalized rows.
pub fn gram_schmidt(rows: &[Vec<Rat>], w: &[Rat]) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let m = rows.len();
    let mut mu = vec![vec![Rat::zero(); m]; m];
    let mut norms = vec![Rat::zero(); m];
    let mut star: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut s = rows[i].clone();
        for j in 0..i {
            if norms[j].is_zero() {
                continue;
            }
            mu[i][j] = inner(&rows[i], &star[j], w) / &norms[j];
            for (t, v) in s.iter_mut().zip(&star[j]) {
                *t -= &mu[i][j] * v;
            }
        }
        norms[i] = inner(&s, &s, w);
        star.push(s);
    }
    (mu, norms)
}

/// Incremental rational LLL on `rows` under the inner product with diagonal
/// weights `w`. Rows must be linearly independent.
pub(crate) fn lll_weighted(mut b: Vec<Vec<Rat>>, w: &[Rat], delta: &Rat) -> Result<Vec<Vec<Rat>>> {
    let m = b.len();
    if m <= 1 {
        return Ok(b);
    }
    let half = Rat::new(Int::one(), Int::from(2));
    let mut mu = vec![vec![Rat::zero(); m]; m];
    let mut bn = vec![Rat::zero(); m];
    bn[0] = inner(&b[0], &b[0], w);
    if bn[0].is_zero() {
        return Err(Error::InvalidInput("lattice basis is rank deficient".into()));
    }
    let mut k = 1;
    let mut kmax = 0;

    let reduce = |b: &mut Vec<Vec<Rat>>, mu: &mut Vec<Vec<Rat>>, k: usize, l: usize| {
        if mu[k][l].abs() > half {
            let q = Rat::from_integer(round_half_up(&mu[k][l]));
            let (lo, hi) = b.split_at_mut(k);
            for (t, v) in hi[0].iter_mut().zip(&lo[l]) {
                *t -= &q * v;
            }
            mu[k][l] -= &q;
            for i in 0..l {
                let delta = &q * &mu[l][i];
                mu[k][i] -= delta;
            }
        }
    };

    while k < m {
        if k > kmax {
            kmax = k;
            for j in 0..k {
                let mut v = inner(&b[k], &b[j], w);
                for i in 0..j {
                    v -= &mu[j][i] * &mu[k][i] * &bn[i];
                }
                mu[k][j] = v / &bn[j];
            }
            let mut v = inner(&b[k], &b[k], w);
            for j in 0..k {
                v -= &mu[k][j] * &mu[k][j] * &bn[j];
            }
            if v.is_zero() {
                return Err(Error::InvalidInput("lattice basis is rank deficient".into()));
            }
            bn[k] = v;
        }
        reduce(&mut b, &mut mu, k, k - 1);
        let lhs = &bn[k];
        let rhs = (delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bn[k - 1];
        if *lhs < rhs {
            // Swap rows k-1 and k and update the orthogonalization in place.
            b.swap(k, k - 1);
            for j in 0..k - 1 {
                let t = mu[k][j].clone();
                mu[k][j] = mu[k - 1][j].clone();
                mu[k - 1][j] = t;
            }
            let u = mu[k][k - 1].clone();
            let big = &bn[k] + &u * &u * &bn[k - 1];
            mu[k][k - 1] = &u * &bn[k - 1] / &big;
            let new_k = &bn[k - 1] * &bn[k] / &big;
            bn[k] = new_k;
            bn[k - 1] = big;
            for i in k + 1..=kmax {
                let t = mu[i][k].clone();
                mu[i][k] = &mu[i][k - 1] - &u * &t;
                mu[i][k - 1] = t + &mu[k][k - 1] * &mu[i][k];
            }
            k = (k - 1).max(1);
        } else {
            for l in (0..k - 1).rev() {
                reduce(&mut b, &mut mu, k, l);
            }
            k += 1;
        }
    }
    Ok(b)
}

/// LLL-reduces `basis` with parameter `delta` in `(1/4, 1)`.
pub fn lll_reduce(basis: &LatticeBasis, delta: &Rat) -> Result<LatticeBasis> {
    check_delta(delta)?;
    let w = vec![Rat::one(); basis.dim()];
    Ok(LatticeBasis {
        rows: lll_weighted(basis.rows.clone(), &w, delta)?,
    })
}

pub fn default_delta() -> Rat {
    Rat::new(Int::from(3), Int::from(4))
}

fn check_delta(delta: &Rat) -> Result<()> {
    let quarter = Rat::new(Int::one(), Int::from(4));
    if *delta <= quarter || *delta >= Rat::one() {
        return Err(Error::InvalidInput(format!("LLL parameter {delta} outside (1/4, 1)")));
    }
    Ok(())
}

/// Exact post-hoc check of size reduction and the Lovász condition.
pub fn is_lll_reduced(rows: &[Vec<Rat>], w: &[Rat], delta: &Rat) -> bool {
    let (mu, bn) = gram_schmidt(rows, w);
    let half = Rat::new(Int::one(), Int::from(2));
    let size_reduced = (0..rows.len()).all(|i| (0..i).all(|j| mu[i][j].abs() <= half));
    let lovasz = (1..rows.len())
        .all(|k| bn[k] >= (delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bn[k - 1]);
    size_reduced && lovasz
}

pub fn norm_squared(v: &[Rat]) -> Rat {
    v.iter().fold(Rat::zero(), |acc, x| acc + x * x)
}

/// Shortest nonzero combination `sum c_i b_i` with `|c_i| <= coeff_bound`.
pub fn svp_bruteforce(basis: &LatticeBasis, coeff_bound: u32) -> Result<(Vec<Rat>, Rat)> {
    let m = basis.dim();
    let side = 2 * coeff_bound as u64 + 1;
    let total = (side as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if total > MAX_SVP_COMBINATIONS as u128 {
        return Err(Error::SizeGuard {
            requested: total.to_string(),
            limit: MAX_SVP_COMBINATIONS,
        });
    }
    let c = coeff_bound as i64;
    let mut coeffs = vec![-c; m];
    let mut best: Option<(Vec<Rat>, Rat)> = None;
    loop {
        if coeffs.iter().any(|&v| v != 0) {
            let mut v = vec![Rat::zero(); m];
            for (row, &k) in basis.rows.iter().zip(&coeffs) {
                if k != 0 {
                    let kk = Rat::from_integer(Int::from(k));
                    for (t, x) in v.iter_mut().zip(row) {
                        *t += &kk * x;
                    }
                }
            }
            let n = norm_squared(&v);
            if best.as_ref().is_none_or(|(_, b)| n < *b) {
                best = Some((v, n));
            }
        }
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(best.expect("coefficient range contains a nonzero vector"));
            }
            i -= 1;
            if coeffs[i] < c {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = -c;
        }
    }
}

/// A coefficient range that provably contains every lattice vector no longer
/// than the first basis row: `|c_i| <= |b_1| * |column i of B^{-1}|`.
pub fn svp_coefficient_bound(basis: &LatticeBasis) -> Result<u32> {
    let inv = crate::lp::invert(&basis.rows)
        .ok_or_else(|| Error::InvalidInput("lattice basis is rank deficient".into()))?;
    let r2 = norm_squared(&basis.rows[0]);
    let m = basis.dim();
    let mut best = Int::zero();
    for i in 0..m {
        let col2 = (0..m).fold(Rat::zero(), |acc, j| acc + &inv[j][i] * &inv[j][i]);
        let bound2 = (&r2 * col2).ceil().to_integer();
        best = best.max(bound2.sqrt() + Int::one());
    }
    u32::try_from(best).map_err(|_| Error::SizeGuard {
        requested: "coefficient bound".into(),
        limit: u32::MAX as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::rat;

    #[test]
    fn identity_is_already_reduced() {
        let b = LatticeBasis::from_ints(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(lll_reduce(&b, &default_delta()).unwrap(), b);
    }

    #[test]
    fn small_example() {
        let b = LatticeBasis::from_ints(&[vec![1, 1], vec![2, 1]]).unwrap();
        let r = lll_reduce(&b, &default_delta()).unwrap();
        let w = [rat(1), rat(1)];
        assert!(is_lll_reduced(r.rows(), &w, &default_delta()));
        let (_, lambda) = svp_bruteforce(&b, 3).unwrap();
        assert_eq!(lambda, rat(1));
        assert!(norm_squared(&r.rows()[0]) <= rat(2) * lambda);
        assert_eq!(r.gram_determinant(), b.gram_determinant());
    }

    #[test]
    fn svp_examples() {
        let b = LatticeBasis::from_ints(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(svp_bruteforce(&b, 2).unwrap().1, rat(1));
        let b = LatticeBasis::from_ints(&[vec![2, 0], vec![0, 3]]).unwrap();
        let (v, n) = svp_bruteforce(&b, 2).unwrap();
        assert_eq!(n, rat(4));
        assert!(v == vec![rat(2), rat(0)] || v == vec![rat(-2), rat(0)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(LatticeBasis::from_ints(&[vec![1, 2], vec![2, 4]]).is_err());
        assert!(LatticeBasis::from_ints(&[vec![1, 2]]).is_err());
        let b = LatticeBasis::from_ints(&[vec![1]]).unwrap();
        assert!(lll_reduce(&b, &rat(1)).is_err());
        assert!(lll_reduce(&b, &Rat::new(Int::from(1), Int::from(4))).is_err());
    }

    #[test]
    fn reduces_skewed_basis() {
        let b = LatticeBasis::from_ints(&[
            vec![1, 0, 0, 31],
            vec![0, 1, 0, 47],
            vec![0, 0, 1, 59],
            vec![0, 0, 0, 97],
        ])
        .unwrap();
        let r = lll_reduce(&b, &default_delta()).unwrap();
        let w = vec![rat(1); 4];
        assert!(is_lll_reduced(r.rows(), &w, &default_delta()));
        assert_eq!(r.gram_determinant(), b.gram_determinant());
        let c = svp_coefficient_bound(&r).unwrap();
        let (_, lambda) = svp_bruteforce(&r, c).unwrap();
        assert!(norm_squared(&r.rows()[0]) <= rat(8) * lambda);
    }
}
