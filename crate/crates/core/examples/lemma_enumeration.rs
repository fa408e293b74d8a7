//! Enumerate every nested pair C2 < C1 and count, per nonzero error, the pairs
//! that fail to detect it. Each count matches the closed form.

use asymgv::codesearch::enumerate_nested_pairs;

fn main() -> asymgv::Result<()> {
    for (q, n, k1, k2) in [(2, 3, 2, 1), (2, 4, 2, 1), (2, 4, 3, 1), (3, 3, 2, 1)] {
        let rep = enumerate_nested_pairs(n, q, k1, k2)?;
        let (min_x, max_x) = rep
            .per_error_x()
            .fold((u64::MAX, 0), |(lo, hi), (_, c)| (lo.min(c), hi.max(c)));
        let (min_z, max_z) = rep
            .per_error_z()
            .fold((u64::MAX, 0), |(lo, hi), (_, c)| (lo.min(c), hi.max(c)));
        println!(
            "q={q} n={n} k1={k1} k2={k2}: {} pairs, bit {min_x}..{max_x} (expect {}), phase {min_z}..{max_z} (expect {}), holds={}",
            rep.total_pairs,
            rep.expected_x(),
            rep.expected_z(),
            rep.lemma_holds()
        );
    }
    Ok(())
}
