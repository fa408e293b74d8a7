//! Stabilizer condition: sweep k for fixed distances and report the largest feasible k.

use asymgv::bounds::{max_k_stab, stab_gv_lhs, StabBoundQuery};

fn main() -> asymgv::Result<()> {
    let (q, n, dx, dz) = (2, 10, 2, 2);
    for k in 1..=5 {
        let rep = stab_gv_lhs(&StabBoundQuery { q, n, k, dx, dz })?;
        println!("k={k}: {:>18} ~ {} feasible={}", rep.exact(), rep.decimal(6), rep.feasible);
    }
    println!("max k = {:?}", max_k_stab(n, q, dx, dz)?);

    // asymmetry: trading phase distance for bit distance at n = 40
    for (dx, dz) in [(2, 8), (3, 6), (4, 4), (6, 3), (8, 2)] {
        println!("n=40 dx={dx} dz={dz}: max k = {:?}", max_k_stab(40, 2, dx, dz)?);
    }
    Ok(())
}
