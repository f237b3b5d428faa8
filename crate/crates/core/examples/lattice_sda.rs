//! LLL reduction and simultaneous Diophantine approximation.

use gapforge::franktardos::{default_delta, lll_reduce, sda, svp_bruteforce, svp_coefficient_bound, LatticeBasis};
use gapforge::model::{rat_frac, Int, Rat};

fn main() -> gapforge::Result<()> {
    let basis = LatticeBasis::from_ints(&[vec![201, 37, 0], vec![1648, 297, 0], vec![1, 1, 3]])?;
    let reduced = lll_reduce(&basis, &default_delta())?;
    for row in reduced.rows() {
        println!("{}", row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
    }
    let (shortest, norm2) = svp_bruteforce(&reduced, svp_coefficient_bound(&reduced)?)?;
    println!("shortest vector {shortest:?}, squared norm {norm2}");

    let w = vec![rat_frac(355, 113), rat_frac(22, 7), rat_frac(-13, 29)];
    let eps = Rat::new(Int::from(1), Int::from(16));
    let res = sda(&w, &eps)?;
    println!("q = {}, p = {:?}", res.q, res.p);
    println!("residual {:?}", res.residual(&w).iter().map(|r| r.to_string()).collect::<Vec<_>>());
    Ok(())
}
