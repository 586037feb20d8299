//! Analytic interior eigenvalues of the unit disk.

use nfduality::oracles::{dirichlet_disk_eigs, ite_disk_eigs, neumann_disk_eigs};

fn main() -> nfduality::Result<()> {
    for (name, list) in [
        ("dirichlet", dirichlet_disk_eigs(1.0, [1.0, 30.0])?),
        ("neumann", neumann_disk_eigs(1.0, [0.0, 30.0])?),
        ("ite n=4", ite_disk_eigs(1.0, 4.0, [0.25, 40.0])?),
    ] {
        println!("{name}");
        for e in list {
            println!("  λ = {:>12.6}  k = {:>9.6}  m = {:>2}  radial = {}  mult = {}{}", e.lambda, e.lambda.sqrt(), e.m, e.radial, e.multiplicity, if e.uncertified { "  (uncertified)" } else { "" });
        }
    }
    Ok(())
}
