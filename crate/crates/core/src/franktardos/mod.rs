//! Sign-preserving weight reduction.
//!
//! [`ft_weights`] replaces a rational weight vector `w` by a small integer
//! vector `wbar` such that `w.b` and `wbar.b` have the same sign for every
//! integer `b` in the l1 ball of radius `B`.
//!
//! Each round approximates the normalized residual with [`sda`] at accuracy
//! `1/(B+1)`, so the leftover contributes less than 1 to any `|.b|` while the
//! integer part contributes 0 or at least 1. The sign of `w.b` is therefore
//! the sign of the first nonzero `p_i.b`. Rounds are combined with
//! multipliers chosen so that each round dominates all later ones on the
//! ball.

pub mod lll;
pub mod sda;

use num_traits::{One, Signed, Zero};

pub use lll::{
    default_delta, gram_schmidt, is_lll_reduced, lll_reduce, norm_squared, svp_bruteforce,
    svp_coefficient_bound, LatticeBasis,
};
pub use sda::{denominator_within_bound, sda, sda_lattice, SdaResult};

use crate::error::{Error, Result};
use crate::model::{Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FtResult {
    /// `(q_i, p_i)` per round.
    pub rounds: Vec<(Int, Vec<Int>)>,
    /// Weight of each round in `wbar`; the last one is 1.
    pub multipliers: Vec<Int>,
    pub wbar: Vec<Int>,
    pub budget: Int,
}

fn max_abs<'a, I: IntoIterator<Item = &'a Int>>(v: I) -> Int {
    v.into_iter().map(|x| x.abs()).max().unwrap_or_else(Int::zero)
}

/// Small integer weights with the signs of `w` on the l1 ball of radius `budget`.
pub fn ft_weights(w: &[Rat], budget: &Int) -> Result<FtResult> {
    if !budget.is_positive() {
        return Err(Error::InvalidInput("sign budget must be positive".into()));
    }
    let d = w.len();
    let eps = Rat::new(Int::one(), budget + Int::one());
    let mut rounds: Vec<(Int, Vec<Int>)> = Vec::new();
    let mut residual = w.to_vec();
    while residual.iter().any(|r| !r.is_zero()) {
        if rounds.len() == d {
            return Err(Error::Internal("weight reduction did not terminate within d rounds".into()));
        }
        let scale = residual
            .iter()
            .map(|r| r.abs())
            .max()
            .expect("nonzero residual");
        let normalized: Vec<Rat> = residual.iter().map(|r| r / &scale).collect();
        let approx = sda(&normalized, &eps)?;
        residual = approx.residual(&normalized);
        rounds.push((approx.q, approx.p));
    }

    let k = rounds.len();
    let mut multipliers = vec![Int::one(); k];
    let mut tail = vec![Int::zero(); d];
    for i in (0..k).rev() {
        if i + 1 < k {
            multipliers[i] = budget * max_abs(&tail) + Int::one();
        }
        for (t, p) in tail.iter_mut().zip(&rounds[i].1) {
            *t += &multipliers[i] * p;
        }
    }
    Ok(FtResult {
        rounds,
        multipliers,
        wbar: tail,
        budget: budget.clone(),
    })
}

/// `2^{d^3} * ntilde^{d^2}`.
pub fn ft_ceiling(d: usize, ntilde: &Int) -> Int {
    num_traits::pow(Int::from(2), d * d * d) * num_traits::pow(ntilde.clone(), d * d)
}

/// Runs [`ft_weights`] with budget `2 d ntilde`, enough for every difference
/// of two points of `[-ntilde, ntilde]^d`, and checks the ceiling on entries.
pub fn ft_weights_for_box(w: &[Rat], ntilde: &Int) -> Result<FtResult> {
    let d = w.len();
    let budget = Int::from(2 * d.max(1)) * ntilde;
    let r = ft_weights(w, &budget)?;
    let ceiling = ft_ceiling(d, ntilde);
    if max_abs(&r.wbar) > ceiling {
        return Err(Error::Internal(format!(
            "reduced weights exceed the ceiling {ceiling}"
        )));
    }
    Ok(r)
}

/// All integer vectors of length `d` with l1 norm at most `budget`.
pub fn l1_ball(d: usize, budget: i64) -> Vec<Vec<i64>> {
    fn rec(d: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for v in -left..=left {
            cur.push(v);
            rec(d, left - v.abs(), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, budget, &mut Vec::with_capacity(d), &mut out);
    out
}

/// First `b` in the l1 ball where `w.b` and `wbar.b` differ in sign.
pub fn sign_mismatch(w: &[Rat], wbar: &[Int], budget: i64) -> Option<Vec<i64>> {
    l1_ball(w.len(), budget).into_iter().find(|b| {
        let lhs = w
            .iter()
            .zip(b)
            .fold(Rat::zero(), |acc, (x, &v)| acc + x * Rat::from_integer(Int::from(v)));
        let rhs = wbar
            .iter()
            .zip(b)
            .fold(Int::zero(), |acc, (x, &v)| acc + x * Int::from(v));
        lhs.signum() != Rat::from_integer(rhs.signum())
    })
}
