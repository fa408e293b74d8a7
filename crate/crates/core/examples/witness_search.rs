//! Randomized search for explicit codes meeting the existence conditions, then a file round trip.

use asymgv::bounds::{css_gv_lhs, CssBoundQuery, StabBoundQuery};
use asymgv::codefile::{code_to_json, parse_code};
use asymgv::codesearch::{css_distances, gv_witness_search, witness_success_count, SearchParams, WitnessCode};

fn main() -> asymgv::Result<()> {
    let query = CssBoundQuery { q: 2, n: 12, k1: 7, k2: 5, dx: 2, dz: 2 };
    let params = SearchParams::Css(query);
    let witness = gv_witness_search(&params, 100, 1, None)?.expect("witness");
    println!(
        "css witness at trial {}: dx={} dz={}",
        witness.trial_index, witness.distances.dx, witness.distances.dz
    );

    let text = code_to_json(&witness.code);
    println!("{text}");
    if let WitnessCode::Css(pair) = parse_code(&text)? {
        println!("reloaded distances: {:?}", css_distances(&pair)?);
    }

    let hits = witness_success_count(&params, 1000, 1, None)?;
    let floor = 1.0 - css_gv_lhs(&query)?.decimal(6).parse::<f64>().unwrap();
    println!("success rate {:.3} (guaranteed at least {floor:.3})", hits as f64 / 1000.0);

    let stab = SearchParams::Stab(StabBoundQuery { q: 2, n: 10, k: 3, dx: 2, dz: 2 });
    match gv_witness_search(&stab, 200, 7, Some(4))? {
        Some(w) => println!("stabilizer witness at trial {}: dx={} dz={}", w.trial_index, w.distances.dx, w.distances.dz),
        None => println!("no stabilizer witness in 200 trials"),
    }
    Ok(())
}
