//! Print the gap ceilings for each class on a few boxes.

use gapforge::bounds::bound_report;
use gapforge::model::ClassKind;

fn main() -> gapforge::Result<()> {
    println!("{:<22}{:>3}{:>3}{:>5}  {:<24}rho", "class", "n", "N", "d", "d!*a^d");
    for kind in ClassKind::ALL {
        for (n, radius) in [(1, 1), (2, 1), (2, 2)] {
            let r = bound_report(kind, n, radius)?;
            let exact = r.exact_dfact_bound.to_string();
            let shown = if exact.len() > 22 { format!("~1e{}", exact.len() - 1) } else { exact };
            println!("{:<22}{:>3}{:>3}{:>5}  {:<24}{}", kind.as_str(), n, radius, r.d, shown, r.rho.upper_decimal(3));
        }
    }
    Ok(())
}
