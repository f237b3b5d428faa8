//! Lift a quadratic objective to a linear one over monomials, then reduce it
//! with both routes.

use gapforge::instances::InstanceGenerator;
use gapforge::liftings::{embed, lift, reduce_via_ft};
use gapforge::model::{BoxDomain, Limits};
use gapforge::reducelp::reduce_via_lp;

fn main() -> gapforge::Result<()> {
    let domain = BoxDomain::new(2, 1)?;
    let f = InstanceGenerator::new(11).quadratic(domain);
    let (lifted, _) = lift(&f);
    println!("lifted dimension {}, l1 budget {}", lifted.dim(), lifted.budget);
    let x = [1, -1];
    println!("x = {x:?} embeds to {:?}", embed(f.kind(), &x, domain));

    let limits = Limits::default();
    let (_, lp) = reduce_via_lp(&f, &limits)?;
    let (_, ft) = reduce_via_ft(&f, &limits)?;
    println!("lp gap {} verified {}", lp.gap, lp.verified);
    println!("ft gap {} verified {}", ft.gap, ft.verified);
    Ok(())
}
