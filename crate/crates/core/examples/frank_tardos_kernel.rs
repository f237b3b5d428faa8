//! Replace rational weights by small integers with the same signs on an l1 ball.

use gapforge::franktardos::{ft_weights, sign_mismatch};
use gapforge::model::{rat_frac, Int};

fn main() -> gapforge::Result<()> {
    let w = vec![rat_frac(1_000_003, 7), rat_frac(-2, 3), rat_frac(1, 1_000)];
    let budget = 6;
    let res = ft_weights(&w, &Int::from(budget))?;
    for (i, (q, p)) in res.rounds.iter().enumerate() {
        println!("round {i}: q = {q}, p = {p:?}");
    }
    println!("multipliers {:?}", res.multipliers);
    println!("weights     {:?}", res.wbar);
    match sign_mismatch(&w, &res.wbar, budget) {
        None => println!("signs agree on every b with |b|_1 <= {budget}"),
        Some(b) => println!("sign mismatch at {b:?}"),
    }
    Ok(())
}
