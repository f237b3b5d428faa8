//! Convex and concave separable objectives keep their shape after reduction.

use gapforge::model::{BoxDomain, FunctionSpec, Limits, Shape};
use gapforge::oracle::check_class;
use gapforge::reducelp::reduce_via_lp;

fn main() -> gapforge::Result<()> {
    let domain = BoxDomain::new(2, 2)?;
    let tables = [vec![40, 10, 0, 5, 90], vec![0, 700, 1_000, 1_100, 1_150]];
    let f = FunctionSpec::separable_int(domain, &tables, &[Shape::Convex, Shape::Concave])?;
    let (g, cert) = reduce_via_lp(&f, &Limits::default())?;
    println!("reduced {g:?}");
    println!("gap {} verified {} shapes kept {}", cert.gap, cert.verified, check_class(&g, &f.class()));
    Ok(())
}
