//! Steane ingredients: Hamming [7,4] containing its dual simplex code.

use asymgv::codesearch::{css_distances, steane_pair};

fn main() -> asymgv::Result<()> {
    let pair = steane_pair();
    println!("C1 dim {}, C2 dim {}, k = {}", pair.c1().dim(), pair.c2().dim(), pair.k());
    for row in pair.c2().basis() {
        println!("  C2 row {row:?}");
    }
    let d = css_distances(&pair)?;
    println!("dx = {}, dz = {}", d.dx, d.dz);
    Ok(())
}
