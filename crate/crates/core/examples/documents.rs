//! Write a function and its certificate as JSON, read it back, and check a
//! deliberately wrong candidate.

use gapforge::document::FunctionDocument;
use gapforge::model::{BoxDomain, FunctionSpec, Limits};
use gapforge::oracle::check_equivalent;
use gapforge::reducelp::reduce_via_lp;

fn main() -> gapforge::Result<()> {
    let limits = Limits::default();
    let f = FunctionSpec::linear_int(BoxDomain::new(2, 1)?, &[10, 1])?;
    let (g, cert) = reduce_via_lp(&f, &limits)?;
    let json = FunctionDocument::from_spec(&g).with_certificate(&cert).to_json();
    println!("{json}");

    let back = FunctionDocument::from_json(&json)?.to_spec()?;
    println!("round trip equal: {}", back == g);

    let wrong = FunctionSpec::linear_int(f.domain(), &[1, 1])?;
    let verdict = check_equivalent(&f, &wrong, &limits)?;
    if let Some(c) = verdict.counterexample() {
        println!("counterexample x={:?} y={:?} reason={}", c.x, c.y, c.reason);
    }
    Ok(())
}
