//! The [[5,1,3]] code in symplectic form: which asymmetric error profiles it detects.

use asymgv::codesearch::{five_qubit_code, stab_detects_profile, stab_profile_matrix, stab_pure_distances};

fn main() -> asymgv::Result<()> {
    let code = five_qubit_code();
    println!("n={} k={} isotropic={}", code.n(), code.k(), code.stabilizer().is_isotropic());
    for row in code.stabilizer().basis() {
        println!("  {row:?}");
    }
    let pure = stab_pure_distances(&code)?;
    println!("pure distances: dx={} dz={}", pure.dx, pure.dz);
    for (dx, dz) in [(5, 1), (1, 5), (6, 1), (3, 3), (4, 4)] {
        println!("detects every error with wt_x < {dx}, wt_z < {dz}: {}", stab_detects_profile(&code, dx, dz)?);
    }

    println!("profile matrix (rows dx, cols dz):");
    for (dx, row) in stab_profile_matrix(&code)?.iter().enumerate() {
        let cells: String = row
            .iter()
            .map(|c| match c {
                Some(true) => '+',
                Some(false) => '.',
                None => ' ',
            })
            .collect();
        println!("  {:>2} {cells}", dx + 1);
    }
    Ok(())
}
