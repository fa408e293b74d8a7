//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde_json::Value;

use asymgv::asymptotic::{
    cor2_feasible, cor2_optimal_r1, cor4_feasible, entropy_hq, entropy_peak, AsymptoticQuery,
};
use asymgv::bounds::{
    ball_sum, css_gv_lhs, gaussian_binomial, max_k_stab, stab_gv_lhs, CssBoundQuery,
    StabBoundQuery,
};
use asymgv::cli;
use asymgv::codefile::parse_code;
use asymgv::codesearch::{
    css_distances, enumerate_nested_pairs, five_qubit_code, stab_detects_profile, steane_pair,
    witness_success_count, Distance, DistancePair, SearchParams, WitnessCode,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn cli_json(line: &str) -> Value {
    let res = cli::run(std::iter::once("asymgv").chain(line.split_whitespace()));
    assert_eq!(res.exit_code, 0, "{line}: {}", res.stderr);
    serde_json::from_str(res.stdout.trim()).expect("single JSON object")
}

/// Lemma 1 identities by exhaustive enumeration.
fn lemma_exactness() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;

    let start = Instant::now();
    let first = cli_json("lemma --q 2 --n 3 --k1 2 --k2 1 --json");
    let elapsed = start.elapsed();
    let ok = first["total_pairs"] == 21
        && first["errors"] == 7
        && first["per_error_x"] == serde_json::json!([6])
        && first["per_error_z"] == serde_json::json!([6])
        && first["lemma_ok"] == true
        && elapsed < Duration::from_secs(1);
    pass &= ok;
    notes.push(format!("(2,3,2,1) pairs=21 x/z=6/6 in {elapsed:.2?}"));

    for (q, n, k1, k2) in [(2u64, 4u32, 2u32, 1u32), (2, 4, 3, 1), (3, 3, 2, 1)] {
        let start = Instant::now();
        let rep = enumerate_nested_pairs(n, q, k1, k2).unwrap();
        let elapsed = start.elapsed();
        let expected_pairs = gaussian_binomial(n, k1, q).unwrap() * gaussian_binomial(k1, k2, q).unwrap();
        let ok = rep.lemma_holds()
            && BigInt::from(rep.total_pairs) == BigInt::from(expected_pairs)
            && rep.per_error_x().count() as u64 == q.pow(n) - 1
            && elapsed < Duration::from_secs(60);
        pass &= ok;
        notes.push(format!(
            "({q},{n},{k1},{k2}) pairs={} x={} z={} in {elapsed:.2?}",
            rep.total_pairs,
            rep.expected_x(),
            rep.expected_z()
        ));
    }
    outcome(pass, notes.join("; "))
}

/// CSS condition values.
fn css_evaluation() -> Outcome {
    let a = css_gv_lhs(&CssBoundQuery { q: 2, n: 12, k1: 7, k2: 5, dx: 2, dz: 2 }).unwrap();
    let b = css_gv_lhs(&CssBoundQuery { q: 2, n: 7, k1: 4, k2: 1, dx: 2, dz: 2 }).unwrap();
    let pass = a.lhs == ratio(2304, 4095) && a.feasible && b.lhs == ratio(490, 127) && !b.feasible;
    outcome(
        pass,
        format!("lhs(2,12,7,5,2,2)={} feasible; lhs(2,7,4,1,2,2)={} infeasible", a.exact(), b.exact()),
    )
}

/// Stabilizer condition values and the best k.
fn stab_evaluation() -> Outcome {
    let k3 = stab_gv_lhs(&StabBoundQuery { q: 2, n: 10, k: 3, dx: 2, dz: 2 }).unwrap();
    let k4 = stab_gv_lhs(&StabBoundQuery { q: 2, n: 10, k: 4, dx: 2, dz: 2 }).unwrap();
    let one = BigRational::one();
    let kmax = max_k_stab(10, 2, 2, 2).unwrap();
    let pass = k3.lhs < one && one < k4.lhs && kmax == Some(3);
    outcome(
        pass,
        format!("{} < 1 < {}; max_k = {kmax:?}", k3.decimal(6), k4.decimal(6)),
    )
}

/// Error-product count is n^2 for q = 2, dx = dz = 2.
fn n_squared_count() -> Outcome {
    let bad: Vec<u32> = (2..=100u32)
        .filter(|&n| {
            let product = ball_sum(n, 2, 1).unwrap() * ball_sum(n, 2, 1).unwrap();
            product != num_bigint::BigUint::from(n * n)
        })
        .collect();
    outcome(bad.is_empty(), format!("n in [2,100], mismatches: {bad:?}"))
}

/// Ball sums never exceed q^{n h_q(delta)}.
fn ball_entropy_inequality() -> Outcome {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut worst = f64::NEG_INFINITY;
    let mut violations = Vec::new();
    for q in [2u64, 3, 4, 5] {
        for n in 1..=64u32 {
            // delta = i/100 for i/100 <= 1 - 1/q
            for i in (1..).take_while(|&i: &u64| i * q <= 100 * (q - 1)) {
                let delta = i as f64 / 100.0;
                let t = (n as u64 * i / 100) as u32;
                let ball = ball_sum(n, q, t).unwrap();
                let lhs = ball.to_f64().unwrap().ln();
                let rhs = n as f64 * entropy_hq(delta, q).unwrap() * (q as f64).ln();
                worst = worst.max(lhs - rhs);
                if lhs > rhs + 1e-6 {
                    violations.push((q, n, i));
                }
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        violations.is_empty() && elapsed < Duration::from_secs(10),
        format!(
            "{checked} (q,n,delta) cases, max ln-gap {worst:.3e}, violations {}, {elapsed:.2?}",
            violations.len()
        ),
    )
}

fn random_delta(rng: &mut ChaCha20Rng, q: u64) -> f64 {
    rng.gen_range(0.0..=entropy_peak(q))
}

/// CSS region implies stabilizer region; optimized intervals match.
fn cor2_implies_cor4() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha20Rng::seed_from_u64(0x5eed);
    let qs = [2u64, 3, 4, 5, 7, 8, 9, 16];
    let mut feasible = 0;
    let mut counterexamples = 0;
    for _ in 0..100_000 {
        let q = qs[rng.gen_range(0..qs.len())];
        let a: f64 = rng.gen();
        let b: f64 = rng.gen();
        let (r1, r2) = if a >= b { (a, b) } else { (b, a) };
        let (dx, dz) = (random_delta(&mut rng, q), random_delta(&mut rng, q));
        let css = AsymptoticQuery::css(q, r1, r2, dx, dz).unwrap();
        if cor2_feasible(&css).unwrap() {
            feasible += 1;
            let stab = AsymptoticQuery::stab(q, r1 - r2, dx, dz).unwrap();
            if !cor4_feasible(&stab).unwrap() {
                counterexamples += 1;
            }
        }
    }

    let mut compared = 0;
    let mut mismatches = 0;
    while compared < 100_000 {
        let q = qs[rng.gen_range(0..qs.len())];
        let r: f64 = rng.gen();
        let (dx, dz) = (random_delta(&mut rng, q), random_delta(&mut rng, q));
        let margin = entropy_hq(dx, q).unwrap() + entropy_hq(dz, q).unwrap() - (1.0 - r);
        if margin.abs() <= 1e-6 {
            continue;
        }
        compared += 1;
        let interval = cor2_optimal_r1(q, r, dx, dz).unwrap();
        let stab = cor4_feasible(&AsymptoticQuery::stab(q, r, dx, dz).unwrap()).unwrap();
        if interval.is_some() != stab {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        counterexamples == 0 && mismatches == 0 && feasible > 0 && elapsed < Duration::from_secs(10),
        format!(
            "1e5 tuples ({feasible} CSS-feasible), {counterexamples} counterexamples; \
             {compared} interval checks, {mismatches} mismatches; {elapsed:.2?}"
        ),
    )
}

/// Five-qubit code is isotropic and detects all pure errors up to weight 4.
fn five_qubit_fixture() -> Outcome {
    let start = Instant::now();
    let code = five_qubit_code();
    let iso = code.stabilizer().is_isotropic() && code.k() == 1;
    let bits = stab_detects_profile(&code, 5, 1).unwrap();
    let phases = stab_detects_profile(&code, 1, 5).unwrap();
    let all_x = stab_detects_profile(&code, 6, 1).unwrap();
    let mixed = stab_detects_profile(&code, 4, 4).unwrap();
    let elapsed = start.elapsed();
    outcome(
        iso && bits && phases && !all_x && elapsed < Duration::from_secs(1),
        format!(
            "isotropic={iso} (5,1)={bits} (1,5)={phases} (6,1)={all_x} [recorded (4,4)={mixed}] {elapsed:.2?}"
        ),
    )
}

/// Steane ingredients have distances (3, 3).
fn steane_fixture() -> Outcome {
    let start = Instant::now();
    let d = css_distances(&steane_pair()).unwrap();
    let elapsed = start.elapsed();
    let want = DistancePair {
        dx: Distance::Finite(3),
        dz: Distance::Finite(3),
    };
    outcome(
        d == want && elapsed < Duration::from_secs(1),
        format!("(dx, dz) = ({}, {}) in {elapsed:.2?}", d.dx, d.dz),
    )
}

/// Randomized search realizes the CSS existence argument.
fn constructive_witness() -> Outcome {
    let start = Instant::now();
    let found = cli_json("search css --q 2 --n 12 --k1 7 --k2 5 --dx 2 --dz 2 --trials 100 --seed 1 --json");
    let reverified = found["found"] == true && {
        let code = parse_code(&found["code"].to_string()).unwrap();
        match code {
            WitnessCode::Css(pair) => {
                pair.c1().dim() == 7 && pair.c2().dim() == 5 && css_distances(&pair).unwrap().meets(2, 2)
            }
            WitnessCode::Stab(_) => false,
        }
    };

    let params = SearchParams::Css(CssBoundQuery { q: 2, n: 12, k1: 7, k2: 5, dx: 2, dz: 2 });
    let trials = 1000u64;
    let successes = witness_success_count(&params, trials, 1, None).unwrap();
    let p = 1.0 - 2304.0 / 4095.0;
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    let rate = successes as f64 / trials as f64;
    let elapsed = start.elapsed();
    outcome(
        reverified && rate >= p - 3.0 * sigma && elapsed < Duration::from_secs(120),
        format!(
            "witness at trial {} re-verified={reverified}; rate {rate:.3} vs floor {:.3} (1-lhs {p:.3}, 3 sigma); {elapsed:.2?}",
            found["trial_index"],
            p - 3.0 * sigma
        ),
    )
}

/// Same seed and flags give byte-identical JSON, for any thread count.
fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_asymgv");
    let run = |extra: &[&str]| {
        let out = Command::new(bin)
            .args([
                "search", "css", "--q", "2", "--n", "12", "--k1", "7", "--k2", "5", "--dx", "3", "--dz", "2",
                "--trials", "400", "--seed", "17", "--json",
            ])
            .args(extra)
            .output()
            .expect("run binary");
        assert!(out.status.success());
        out.stdout
    };
    let base = run(&[]);
    let variants = [run(&[]), run(&["--threads", "1"]), run(&["--threads", "3"]), run(&["--threads", "8"])];
    let stab = |threads: &str| {
        Command::new(bin)
            .args([
                "search", "stab", "--q", "2", "--n", "7", "--k", "1", "--dx", "2", "--dz", "3", "--trials", "300",
                "--seed", "5", "--json", "--threads", threads,
            ])
            .output()
            .expect("run binary")
            .stdout
    };
    let stab_same = stab("1") == stab("6");
    let same = variants.iter().all(|v| *v == base);
    outcome(
        same && stab_same && !base.is_empty(),
        format!("css search identical over 5 runs/threads={same}; stab identical across threads={stab_same}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 nested-pair counting identities", lemma_exactness),
        ("2 CSS condition evaluation", css_evaluation),
        ("3 stabilizer condition evaluation", stab_evaluation),
        ("4 n^2 asymmetric error count", n_squared_count),
        ("5 ball sum vs q^(n h_q)", ball_entropy_inequality),
        ("6 CSS region implies stabilizer region", cor2_implies_cor4),
        ("7 five-qubit code fixture", five_qubit_fixture),
        ("8 Steane CSS fixture", steane_fixture),
        ("9 constructive witness search", constructive_witness),
        ("10 determinism across runs and threads", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| outcome(false, "panicked"));
        let tag = if result.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {}", result.detail);
        failed += (!result.pass) as usize;
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
