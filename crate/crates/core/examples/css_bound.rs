//! Evaluate the CSS existence condition exactly and look for the best (k1, k2).
//!
//!     cargo run --example css_bound

use asymgv::bounds::{best_css_params, css_gv_lhs, CssBoundQuery};

fn main() -> asymgv::Result<()> {
    for query in [
        CssBoundQuery { q: 2, n: 12, k1: 7, k2: 5, dx: 2, dz: 2 },
        CssBoundQuery { q: 2, n: 7, k1: 4, k2: 1, dx: 2, dz: 2 },
        CssBoundQuery { q: 3, n: 20, k1: 12, k2: 4, dx: 3, dz: 2 },
    ] {
        let rep = css_gv_lhs(&query)?;
        println!(
            "q={} n={} k1={} k2={} dx={} dz={}: lhs = {} ~ {} ({})",
            query.q,
            query.n,
            query.k1,
            query.k2,
            query.dx,
            query.dz,
            rep.exact(),
            rep.decimal(6),
            if rep.feasible { "exists" } else { "inconclusive" }
        );
        for term in &rep.terms {
            println!("    {:<6} {}", term.name, term.value);
        }
    }

    for (n, dx, dz) in [(12, 2, 2), (20, 3, 2), (30, 4, 2)] {
        match best_css_params(n, 2, dx, dz)? {
            Some((k1, k2)) => println!("n={n} dx={dx} dz={dz}: best (k1, k2) = ({k1}, {k2}), k = {}", k1 - k2),
            None => println!("n={n} dx={dx} dz={dz}: no feasible pair"),
        }
    }
    Ok(())
}
