//! Asymptotic rate/distance region: entropy, frontier points, and the CSS
//! rate interval for a target stabilizer rate.

use asymgv::asymptotic::{
    cor2_optimal_r1, cor4_feasible, cor4_frontier, entropy_hq, finite_stab_instance, frontier_grid, hq_inverse,
    AsymptoticQuery,
};
use asymgv::bounds::stab_gv_lhs;

fn main() -> asymgv::Result<()> {
    println!("h_2(0.11) = {:.6}", entropy_hq(0.11, 2)?);
    println!("h_2^-1(0.5) = {:.6}", hq_inverse(0.5, 2)?);

    let r = 0.1;
    for q in [2, 4] {
        println!("frontier q={q} R={r}");
        for p in cor4_frontier(q, r, &frontier_grid(q, r, 6)?)? {
            println!("  delta_x={:.4} delta_z<={:.4}", p.delta_x, p.delta_z_max);
        }
    }

    let (dx, dz) = (0.02, 0.08);
    let query = AsymptoticQuery::stab(2, r, dx, dz)?;
    println!("R={r} dx={dx} dz={dz}: stabilizer region {}", cor4_feasible(&query)?);
    match cor2_optimal_r1(2, r, dx, dz)? {
        Some((lo, hi)) => println!("  CSS works for R1 in ({lo:.4}, {hi:.4})"),
        None => println!("  no CSS split"),
    }
    for n in [200, 1000, 2000] {
        let finite = finite_stab_instance(&query, n)?;
        let rep = stab_gv_lhs(&finite)?;
        println!(
            "  n={n} -> k={} dx={} dz={}: lhs ~ {}",
            finite.k,
            finite.dx,
            finite.dz,
            rep.decimal(6)
        );
    }
    Ok(())
}
