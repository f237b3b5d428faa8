//! Compare the rank table baseline with the LP route on random instances.

use gapforge::instances::InstanceGenerator;
use gapforge::model::{BoxDomain, ClassKind, Limits};
use gapforge::oracle::rank_reduce;
use gapforge::reducelp::reduce_via_lp;

fn main() -> gapforge::Result<()> {
    let limits = Limits::default();
    let domain = BoxDomain::new(2, 2)?;
    let mut gen = InstanceGenerator::new(3);
    println!("class                 rank  lp");
    for kind in ClassKind::ALL {
        let f = gen.of_kind(kind, domain);
        let (_, rank) = rank_reduce(&f, &limits)?;
        let (_, lp) = reduce_via_lp(&f, &limits)?;
        println!("{:<22}{:>4}  {}", kind.as_str(), rank.gap, lp.gap);
    }
    Ok(())
}
