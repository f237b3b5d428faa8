//! Reduce a linear objective with the LP route and print the certificate.
//!
//! Run with `cargo run --example reduce_linear`.

use gapforge::model::{BoxDomain, FunctionSpec, Limits};
use gapforge::reducelp::reduce_via_lp;

fn main() -> gapforge::Result<()> {
    let domain = BoxDomain::new(3, 2)?;
    let f = FunctionSpec::linear_int(domain, &[982_451, -31_337, 4_096])?;
    let (g, cert) = reduce_via_lp(&f, &Limits::default())?;
    println!("input   {f:?}");
    println!("reduced {g:?}");
    println!("gap {} (ceiling {}), verified: {}", cert.gap, cert.bound, cert.verified);
    Ok(())
}
