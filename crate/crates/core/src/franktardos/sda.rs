//! Simultaneous Diophantine approximation through a weighted LLL lattice.

use num_traits::{One, Signed, Zero};

use super::lll::{default_delta, inner, lll_weighted, round_half_up};
use crate::error::{Error, Result};
use crate::model::{Int, Rat};

/// Denominators up to this value are scanned for a smaller solution after
/// the lattice step.
pub const REFINE_LIMIT: u64 = 4096;

/// One common denominator `q` with `|q w_i - p_i| <= eps` for every `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdaResult {
    pub q: Int,
    pub p: Vec<Int>,
    pub eps: Rat,
}

impl SdaResult {
    pub fn residual(&self, w: &[Rat]) -> Vec<Rat> {
        let q = Rat::from_integer(self.q.clone());
        w.iter()
            .zip(&self.p)
            .map(|(wi, pi)| &q * wi - Rat::from_integer(pi.clone()))
            .collect()
    }

    /// Exact check of both accuracy and the denominator ceiling.
    pub fn satisfies_contract(&self, w: &[Rat]) -> bool {
        self.q.is_positive()
            && self.residual(w).iter().all(|r| r.abs() <= self.eps)
            && denominator_within_bound(&self.q, w.len(), &self.eps)
    }
}

/// `q <= 2^{m(m+1)/4} eps^{-m}`, compared as `q^4 <= 2^{m(m+1)} eps^{-4m}`.
pub fn denominator_within_bound(q: &Int, m: usize, eps: &Rat) -> bool {
    let lhs = Rat::from_integer(num_traits::pow(q.clone(), 4));
    let two = Rat::from_integer(Int::from(2));
    let rhs = num_traits::pow(two, m * (m + 1)) * num_traits::pow(eps.recip(), 4 * m);
    lhs <= rhs
}

/// Squared weight `2^{-m(m+1)/2} eps^{2(m+1)}` of the denominator coordinate.
fn last_weight(m: usize, eps: &Rat) -> Rat {
    let two = Rat::from_integer(Int::from(2));
    num_traits::pow(eps.clone(), 2 * (m + 1)) / num_traits::pow(two, m * (m + 1) / 2)
}

fn check_eps(eps: &Rat) -> Result<()> {
    if !eps.is_positive() || *eps >= Rat::one() {
        return Err(Error::InvalidInput(format!("approximation accuracy {eps} outside (0, 1)")));
    }
    Ok(())
}

/// The approximation read off the first LLL-reduced lattice vector, with
/// `q` made positive and `p` snapped to the nearest integers.
pub fn sda_lattice(w: &[Rat], eps: &Rat) -> Result<SdaResult> {
    check_eps(eps)?;
    let m = w.len();
    if m == 0 {
        return Ok(SdaResult {
            q: Int::one(),
            p: Vec::new(),
            eps: eps.clone(),
        });
    }
    let mut rows: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut r = vec![Rat::zero(); m + 1];
            r[i] = Rat::one();
            r
        })
        .collect();
    let mut last: Vec<Rat> = w.iter().map(|v| -v).collect();
    last.push(Rat::one());
    rows.push(last);
    let mut weights = vec![Rat::one(); m];
    weights.push(last_weight(m, eps));

    let reduced = lll_weighted(rows, &weights, &default_delta())?;
    let v = &reduced[0];
    let mut q = v[m].to_integer();
    if q.is_zero() {
        return Err(Error::Internal("shortest lattice vector has zero denominator".into()));
    }
    let mut p: Vec<Int> = (0..m)
        .map(|i| (&v[i] + &v[m] * &w[i]).to_integer())
        .collect();
    if q.is_negative() {
        q = -q;
        p.iter_mut().for_each(|x| *x = -x.clone());
    }
    let qr = Rat::from_integer(q.clone());
    for (pi, wi) in p.iter_mut().zip(w) {
        let target = &qr * wi;
        let near = round_half_up(&target);
        if (&target - Rat::from_integer(near.clone())).abs() < (&target - Rat::from_integer(pi.clone())).abs() {
            *pi = near;
        }
    }
    Ok(SdaResult {
        q,
        p,
        eps: eps.clone(),
    })
}

/// Simultaneous approximation of `w` to accuracy `eps`.
///
/// The lattice step guarantees the contract. A scan over smaller
/// denominators then returns the smallest `q` whose rounded lattice vector
/// still lies in the same weighted ball of radius `eps`.
pub fn sda(w: &[Rat], eps: &Rat) -> Result<SdaResult> {
    let base = sda_lattice(w, eps)?;
    let m = w.len();
    if m == 0 || base.q <= Int::one() {
        return Ok(base);
    }
    let weights: Vec<Rat> = std::iter::repeat_n(Rat::one(), m)
        .chain(std::iter::once(last_weight(m, eps)))
        .collect();
    let limit = base.q.clone().min(Int::from(REFINE_LIMIT));
    let eps2 = eps * eps;
    let mut q = Int::one();
    while q < limit {
        let qr = Rat::from_integer(q.clone());
        let p: Vec<Int> = w.iter().map(|wi| round_half_up(&(&qr * wi))).collect();
        let mut v: Vec<Rat> = p
            .iter()
            .zip(w)
            .map(|(pi, wi)| Rat::from_integer(pi.clone()) - &qr * wi)
            .collect();
        v.push(qr);
        if inner(&v, &v, &weights) <= eps2 {
            return Ok(SdaResult {
                q,
                p,
                eps: eps.clone(),
            });
        }
        q += 1;
    }
    Ok(base)
}
