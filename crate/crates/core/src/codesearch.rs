//! Exhaustive and randomized constructions behind the existence bounds.
//!
//! * [`enumerate_nested_pairs`] walks every nested pair `C2 ⊆ C1` and tallies,
//!   for each nonzero error, how many pairs fail to detect it.
//! * [`css_distances`] and [`stab_detects_profile`] verify asymmetric
//!   distances by brute force.
//! * [`gv_witness_search`] samples codes and returns the first verified one.
//!
//! A pair fails to detect a bit error `e` when `e ∈ C1 \ C2` and a phase error
//! when `e ∈ C2⊥ \ C1⊥`. A stabilizer code `C` fails to detect `e` when
//! `e ∈ C⊥s \ C`. Distances follow the `d - 1` convention: `dx` means every
//! bit error of weight at most `dx - 1` is detected.

use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::bounds::{ball_sum, gaussian_binomial, CssBoundQuery, StabBoundQuery};
use crate::error::{Error, Result};
use crate::galois::{for_each_vector_of_weight, vector_index, weight, PrimeField, Subspace};

/// Most nested pairs [`enumerate_nested_pairs`] will visit.
pub const PAIR_LIMIT: u128 = 1_000_000;
/// Most error patterns [`stab_detects_profile`] will test.
pub const PATTERN_LIMIT: u128 = 10_000_000;
/// Most code elements a distance computation or tally table may touch.
pub const COSET_LIMIT: u128 = 1 << 26;

fn guard(what: &'static str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        return Err(Error::SizeGuard {
            what,
            needed,
            limit,
        });
    }
    Ok(())
}

fn to_u128(v: &BigUint) -> u128 {
    v.to_u128().unwrap_or(u128::MAX)
}

fn checked_pow(q: u64, e: usize) -> u128 {
    (q as u128).checked_pow(e as u32).unwrap_or(u128::MAX)
}

/// A CSS ingredient: codes `C2 ⊆ C1 ⊆ F_q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NestedPair {
    c1: Subspace,
    c2: Subspace,
}

impl NestedPair {
    pub fn new(c1: Subspace, c2: Subspace) -> Result<Self> {
        if c1.field() != c2.field() || c1.ambient_dim() != c2.ambient_dim() {
            return Err(Error::InputShape(
                "C1 and C2 must share field and length".into(),
            ));
        }
        if !c2.is_subspace_of(&c1) {
            return Err(Error::InputShape("C2 is not contained in C1".into()));
        }
        Ok(NestedPair { c1, c2 })
    }

    pub fn c1(&self) -> &Subspace {
        &self.c1
    }

    pub fn c2(&self) -> &Subspace {
        &self.c2
    }

    pub fn n(&self) -> usize {
        self.c1.ambient_dim()
    }

    pub fn field(&self) -> PrimeField {
        self.c1.field()
    }

    /// Number of encoded qudits, `dim C1 - dim C2`.
    pub fn k(&self) -> usize {
        self.c1.dim() - self.c2.dim()
    }
}

/// A stabilizer code: an isotropic subspace of `F_q^{2n}` in `(x | z)` layout.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsotropicCode {
    c: Subspace,
    n: usize,
}

impl IsotropicCode {
    pub fn new(c: Subspace) -> Result<Self> {
        if c.ambient_dim() % 2 != 0 {
            return Err(Error::InputShape(format!(
                "stabilizer ambient dimension {} is odd",
                c.ambient_dim()
            )));
        }
        if !c.is_isotropic() {
            return Err(Error::InputShape(
                "generators are not symplectically self-orthogonal".into(),
            ));
        }
        let n = c.ambient_dim() / 2;
        Ok(IsotropicCode { c, n })
    }

    pub fn from_generators(field: PrimeField, n: usize, generators: Vec<Vec<u8>>) -> Result<Self> {
        Self::new(Subspace::span(field, 2 * n, generators)?)
    }

    pub fn stabilizer(&self) -> &Subspace {
        &self.c
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.c.dim()
    }

    pub fn field(&self) -> PrimeField {
        self.c.field()
    }

    fn in_symplectic_dual(&self, e: &[u8]) -> bool {
        let f = self.c.field();
        self.c.basis().iter().all(|g| f.symplectic(g, e) == 0)
    }

    fn undetectable(&self, e: &[u8]) -> bool {
        self.in_symplectic_dual(e) && !self.c.contains(e)
    }
}

/// A verified distance: finite, or unbounded when nothing is undetectable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance {
    Finite(u32),
    Unbounded,
}

impl Distance {
    /// True when this distance is at least `required`.
    pub fn meets(self, required: u32) -> bool {
        match self {
            Distance::Finite(d) => d >= required,
            Distance::Unbounded => true,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unbounded => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DistancePair {
    pub dx: Distance,
    pub dz: Distance,
}

impl DistancePair {
    pub fn meets(&self, dx: u32, dz: u32) -> bool {
        self.dx.meets(dx) && self.dz.meets(dz)
    }
}

/// Per-error undetectability tallies over every pair in `B_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub q: u64,
    pub n: u32,
    pub k1: u32,
    pub k2: u32,
    pub total_pairs: u64,
    /// Indexed by [`vector_index`]; slot 0 (the zero vector) is unused.
    per_error_x: Vec<u64>,
    per_error_z: Vec<u64>,
}

impl EnumerationReport {
    fn expected(&self, hi: u32, lo: u32) -> BigRational {
        let q = BigUint::from(self.q);
        let pow = |e: u32| num_traits::pow(q.clone(), e as usize);
        BigRational::new(
            (pow(hi) - pow(lo)).into(),
            (pow(self.n) - 1u32).into(),
        ) * BigRational::from_integer(self.total_pairs.into())
    }

    /// `(q^k1 - q^k2)/(q^n - 1) * #B_n`.
    pub fn expected_x(&self) -> BigRational {
        self.expected(self.k1, self.k2)
    }

    /// `(q^(n-k2) - q^(n-k1))/(q^n - 1) * #B_n`.
    pub fn expected_z(&self) -> BigRational {
        self.expected(self.n - self.k2, self.n - self.k1)
    }

    /// Undetectable-bit-error count for a nonzero error vector.
    pub fn count_x(&self, e: &[u8]) -> u64 {
        self.per_error_x[vector_index(self.field(), e)]
    }

    pub fn count_z(&self, e: &[u8]) -> u64 {
        self.per_error_z[vector_index(self.field(), e)]
    }

    fn field(&self) -> PrimeField {
        PrimeField::new(self.q).expect("validated at enumeration")
    }

    /// `(index, count)` over every nonzero error, bit side.
    pub fn per_error_x(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.per_error_x.iter().copied().enumerate().skip(1)
    }

    pub fn per_error_z(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.per_error_z.iter().copied().enumerate().skip(1)
    }

    /// Both counting identities hold with exact equality for every error.
    pub fn lemma_holds(&self) -> bool {
        let matches = |expected: BigRational, mut counts: Box<dyn Iterator<Item = (usize, u64)> + '_>| {
            expected.is_integer()
                && counts.all(|(_, c)| BigRational::from_integer(c.into()) == expected)
        };
        matches(self.expected_x(), Box::new(self.per_error_x()))
            && matches(self.expected_z(), Box::new(self.per_error_z()))
    }
}

/// Enumerates every nested pair with `dim C1 = k1`, `dim C2 = k2` exactly once
/// and counts, per nonzero error, the pairs that cannot detect it.
pub fn enumerate_nested_pairs(n: u32, q: u64, k1: u32, k2: u32) -> Result<EnumerationReport> {
    let field = PrimeField::new(q)?;
    if k2 > k1 || k1 > n {
        return Err(Error::Range(format!(
            "need 0 <= k2 <= k1 <= n, got k1 = {k1}, k2 = {k2}, n = {n}"
        )));
    }
    let pairs = gaussian_binomial(n, k1, q)? * gaussian_binomial(k1, k2, q)?;
    guard("nested pairs", to_u128(&pairs), PAIR_LIMIT)?;
    guard("error tally", checked_pow(q, n as usize), COSET_LIMIT)?;

    let size = q.pow(n) as usize;
    let mut per_error_x = vec![0u64; size];
    let mut per_error_z = vec![0u64; size];
    let mut total_pairs = 0u64;
    let nu = n as usize;

    for c1 in crate::galois::subspaces(field, nu, k1 as usize) {
        let c1_dual = c1.dual();
        for coords in crate::galois::subspaces(field, k1 as usize, k2 as usize) {
            let rows = coords.basis().iter().map(|c| c1.combine(c)).collect();
            let c2 = Subspace::span_unchecked(field, nu, rows);
            total_pairs += 1;
            let _ = c1.for_each_outside(&c2, |e| {
                per_error_x[vector_index(field, e)] += 1;
                ControlFlow::Continue(())
            });
            let _ = c2.dual().for_each_outside(&c1_dual, |e| {
                per_error_z[vector_index(field, e)] += 1;
                ControlFlow::Continue(())
            });
        }
    }
    Ok(EnumerationReport {
        q,
        n,
        k1,
        k2,
        total_pairs,
        per_error_x,
        per_error_z,
    })
}

fn min_weight_outside(outer: &Subspace, inner: &Subspace) -> Distance {
    let mut best: Option<usize> = None;
    let _ = outer.for_each_outside(inner, |e| {
        let w = weight(e);
        if best.map_or(true, |b| w < b) {
            best = Some(w);
        }
        if w <= 1 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    best.map_or(Distance::Unbounded, |w| Distance::Finite(w as u32))
}

/// Element count visited by [`css_distances`]: `q^k1 + q^(n-k2)`.
pub fn css_distance_cost(pair: &NestedPair) -> u128 {
    let q = pair.field().order();
    checked_pow(q, pair.c1.dim()).saturating_add(checked_pow(q, pair.n() - pair.c2.dim()))
}

/// Minimum weights of `C1 \ C2` and `C2⊥ \ C1⊥`.
pub fn css_distances(pair: &NestedPair) -> Result<DistancePair> {
    guard("coset elements", css_distance_cost(pair), COSET_LIMIT)?;
    Ok(DistancePair {
        dx: min_weight_outside(&pair.c1, &pair.c2),
        dz: min_weight_outside(&pair.c2.dual(), &pair.c1.dual()),
    })
}

/// Whether the code detects the nonzero error `e = (ex | ez)`.
pub fn stab_is_detectable(code: &IsotropicCode, e: &[u8]) -> Result<bool> {
    if e.len() != 2 * code.n {
        return Err(Error::InputShape(format!(
            "error of length {} for n = {}",
            e.len(),
            code.n
        )));
    }
    if e.iter().all(|&v| v == 0) {
        return Err(Error::Domain("the zero vector is not an error pattern".into()));
    }
    if let Some(&bad) = e.iter().find(|&&v| v as u64 >= code.field().order()) {
        return Err(Error::InputShape(format!("entry {bad} is not a field residue")));
    }
    Ok(!code.undetectable(e))
}

fn patterns(n: u32, q: u64, d: u32) -> Result<u128> {
    Ok(to_u128(&ball_sum(n, q, d - 1)?) + 1)
}

/// Error patterns tested by [`stab_detects_profile`], including the zero pair.
pub fn profile_cost(n: usize, q: u64, dx: u32, dz: u32) -> Result<u128> {
    let n = n as u32;
    for (name, d) in [("dx", dx), ("dz", dz)] {
        if d < 1 || d > n + 1 {
            return Err(Error::Range(format!("{name} = {d} outside 1..={}", n + 1)));
        }
    }
    Ok(patterns(n, q, dx)?.saturating_mul(patterns(n, q, dz)?))
}

/// True iff every nonzero `(ex | ez)` with `wt(ex) <= dx - 1` and
/// `wt(ez) <= dz - 1` is detectable, i.e. the code is `[[n, k, dx, dz]]_q`.
pub fn stab_detects_profile(code: &IsotropicCode, dx: u32, dz: u32) -> Result<bool> {
    let field = code.field();
    let n = code.n;
    guard("error patterns", profile_cost(n, field.order(), dx, dz)?, PATTERN_LIMIT)?;
    let mut e = vec![0u8; 2 * n];
    let mut ok = true;
    'outer: for wx in 0..dx as usize {
        let flow = for_each_vector_of_weight(field, n, wx, |ex| {
            e[..n].copy_from_slice(ex);
            for wz in 0..dz as usize {
                if wx == 0 && wz == 0 {
                    continue;
                }
                for_each_vector_of_weight(field, n, wz, |ez| {
                    e[n..].copy_from_slice(ez);
                    if code.undetectable(&e) {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                })?;
            }
            ControlFlow::Continue(())
        });
        if flow.is_break() {
            ok = false;
            break 'outer;
        }
    }
    Ok(ok)
}

/// Smallest weight of an undetectable pure bit error `(ex | 0)` and pure
/// phase error `(0 | ez)`. Searches by increasing weight.
pub fn stab_pure_distances(code: &IsotropicCode) -> Result<DistancePair> {
    let field = code.field();
    let n = code.n;
    if code.c.dim() == n {
        // C⊥s = C: nothing is undetectable
        return Ok(DistancePair {
            dx: Distance::Unbounded,
            dz: Distance::Unbounded,
        });
    }
    let search = |phase: bool| -> Result<Distance> {
        let mut visited: u128 = 0;
        let mut e = vec![0u8; 2 * n];
        for w in 1..=n {
            visited += to_u128(&ball_sum(n as u32, field.order(), w as u32)?)
                - to_u128(&ball_sum(n as u32, field.order(), w as u32 - 1)?);
            guard("error patterns", visited, PATTERN_LIMIT)?;
            let found = for_each_vector_of_weight(field, n, w, |v| {
                let (lo, hi) = if phase { (n, 2 * n) } else { (0, n) };
                e[lo..hi].copy_from_slice(v);
                if code.undetectable(&e) {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            if found.is_break() {
                return Ok(Distance::Finite(w as u32));
            }
        }
        Ok(Distance::Unbounded)
    };
    Ok(DistancePair {
        dx: search(false)?,
        dz: search(true)?,
    })
}

/// `matrix[i][j]` answers [`stab_detects_profile`] for `dx = i + 1`,
/// `dz = j + 1`; `None` where the size guard would be exceeded.
pub fn stab_profile_matrix(code: &IsotropicCode) -> Result<Vec<Vec<Option<bool>>>> {
    let n = code.n as u32;
    let q = code.field().order();
    let mut matrix = vec![vec![None; n as usize + 1]; n as usize + 1];
    for dx in 1..=n + 1 {
        for dz in 1..=n + 1 {
            let (i, j) = (dx as usize - 1, dz as usize - 1);
            // detection is monotone: a failure persists at larger distances
            if (i > 0 && matrix[i - 1][j] == Some(false)) || (j > 0 && matrix[i][j - 1] == Some(false)) {
                matrix[i][j] = Some(false);
                continue;
            }
            if profile_cost(code.n, q, dx, dz)? > PATTERN_LIMIT {
                continue;
            }
            matrix[i][j] = Some(stab_detects_profile(code, dx, dz)?);
        }
    }
    Ok(matrix)
}

/// Generator for stream `stream` of `seed`. Stream 0 backs the single-draw
/// samplers; witness trial `t` (1-based) uses stream `t`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Row space of a uniformly random full-rank `k x m` matrix, which is
/// uniform over the `k`-dimensional subspaces of `F_q^m`.
fn random_subspace<R: Rng + ?Sized>(field: PrimeField, m: usize, k: usize, rng: &mut R) -> Subspace {
    let p = field.order() as u8;
    loop {
        let rows: Vec<Vec<u8>> = (0..k)
            .map(|_| (0..m).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        let s = Subspace::span_unchecked(field, m, rows);
        if s.dim() == k {
            return s;
        }
    }
}

fn check_dims(n: u32, k1: u32, k2: u32) -> Result<()> {
    if k2 > k1 || k1 > n {
        return Err(Error::Range(format!(
            "need 0 <= k2 <= k1 <= n, got k1 = {k1}, k2 = {k2}, n = {n}"
        )));
    }
    Ok(())
}

/// Uniform draw from `B_n` using the supplied generator.
pub fn sample_nested_pair<R: Rng + ?Sized>(
    field: PrimeField,
    n: usize,
    k1: usize,
    k2: usize,
    rng: &mut R,
) -> NestedPair {
    let c1 = random_subspace(field, n, k1, rng);
    let coords = random_subspace(field, k1, k2, rng);
    let rows = coords.basis().iter().map(|c| c1.combine(c)).collect();
    let c2 = Subspace::span_unchecked(field, n, rows);
    NestedPair { c1, c2 }
}

/// Uniform draw from `B_n`, deterministic in `seed`.
pub fn random_nested_pair(n: u32, q: u64, k1: u32, k2: u32, seed: u64) -> Result<NestedPair> {
    let field = PrimeField::new(q)?;
    check_dims(n, k1, k2)?;
    Ok(sample_nested_pair(
        field,
        n as usize,
        k1 as usize,
        k2 as usize,
        &mut stream_rng(seed, 0),
    ))
}

/// Grows an isotropic subspace one random vector of `C⊥s \ C` at a time.
/// The result is isotropic of dimension `n - k`, but it is not uniform
/// over all such subspaces.
pub fn sample_isotropic_code<R: Rng + ?Sized>(field: PrimeField, n: usize, k: usize, rng: &mut R) -> IsotropicCode {
    let p = field.order() as u8;
    let mut c = Subspace::zero(field, 2 * n);
    while c.dim() < n - k {
        let dual = c.symplectic_dual().expect("even ambient dimension");
        let coeffs: Vec<u8> = (0..dual.dim()).map(|_| rng.gen_range(0..p)).collect();
        let v = dual.combine(&coeffs);
        if c.contains(&v) {
            continue;
        }
        let mut rows = c.basis().to_vec();
        rows.push(v);
        c = Subspace::span_unchecked(field, 2 * n, rows);
    }
    IsotropicCode { c, n }
}

pub fn random_isotropic_code(n: u32, q: u64, k: u32, seed: u64) -> Result<IsotropicCode> {
    let field = PrimeField::new(q)?;
    if k > n {
        return Err(Error::Range(format!("k = {k} exceeds n = {n}")));
    }
    Ok(sample_isotropic_code(
        field,
        n as usize,
        k as usize,
        &mut stream_rng(seed, 0),
    ))
}

/// What to search for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchParams {
    Css(CssBoundQuery),
    Stab(StabBoundQuery),
}

impl SearchParams {
    fn validate(&self) -> Result<PrimeField> {
        match self {
            SearchParams::Css(q) => {
                q.validate()?;
                PrimeField::new(q.q)
            }
            SearchParams::Stab(q) => {
                q.validate()?;
                PrimeField::new(q.q)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessCode {
    Css(NestedPair),
    Stab(IsotropicCode),
}

/// A verified code found by [`gv_witness_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub code: WitnessCode,
    /// CSS: exact distances. Stabilizer: pure bit/phase distances; the full
    /// `(dx, dz)` profile was checked separately.
    pub distances: DistancePair,
    /// 1-based trial that produced the code.
    pub trial_index: u64,
}

/// Draws and checks the code of trial `t`.
fn run_trial(params: &SearchParams, field: PrimeField, seed: u64, t: u64) -> Result<Option<Witness>> {
    let mut rng = stream_rng(seed, t);
    match *params {
        SearchParams::Css(q) => {
            let pair = sample_nested_pair(field, q.n as usize, q.k1 as usize, q.k2 as usize, &mut rng);
            let distances = css_distances(&pair)?;
            Ok(distances.meets(q.dx, q.dz).then(|| Witness {
                code: WitnessCode::Css(pair),
                distances,
                trial_index: t,
            }))
        }
        SearchParams::Stab(q) => {
            let code = sample_isotropic_code(field, q.n as usize, q.k as usize, &mut rng);
            if !stab_detects_profile(&code, q.dx, q.dz)? {
                return Ok(None);
            }
            let distances = stab_pure_distances(&code)?;
            Ok(Some(Witness {
                code: WitnessCode::Stab(code),
                distances,
                trial_index: t,
            }))
        }
    }
}

fn preflight(params: &SearchParams, trials: u64) -> Result<PrimeField> {
    let field = params.validate()?;
    if trials < 1 {
        return Err(Error::Range("trials must be at least 1".into()));
    }
    match params {
        SearchParams::Css(q) => {
            let cost = checked_pow(q.q, q.k1 as usize).saturating_add(checked_pow(q.q, (q.n - q.k2) as usize));
            guard("coset elements", cost, COSET_LIMIT)?;
        }
        SearchParams::Stab(q) => {
            guard(
                "error patterns",
                profile_cost(q.n as usize, q.q, q.dx, q.dz)?,
                PATTERN_LIMIT,
            )?;
        }
    }
    Ok(field)
}

fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t.max(1));
    }
    builder
        .build()
        .map_err(|e| Error::Range(format!("thread pool: {e}")))
}

/// Samples up to `trials` codes and returns the lowest-index one whose
/// verified distances meet `(dx, dz)`. Trial `t` draws from
/// [`stream_rng`]`(seed, t)`, so the answer does not depend on `threads`.
pub fn gv_witness_search(
    params: &SearchParams,
    trials: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<Option<Witness>> {
    let field = preflight(params, trials)?;
    let found = pool(threads)?.install(|| {
        (1..=trials)
            .into_par_iter()
            .map(|t| run_trial(params, field, seed, t))
            .find_first(|r| !matches!(r, Ok(None)))
    });
    found.unwrap_or(Ok(None))
}

/// Number of successful trials among `1..=trials`.
pub fn witness_success_count(
    params: &SearchParams,
    trials: u64,
    seed: u64,
    threads: Option<usize>,
) -> Result<u64> {
    let field = preflight(params, trials)?;
    pool(threads)?.install(|| {
        (1..=trials)
            .into_par_iter()
            .map(|t| run_trial(params, field, seed, t).map(|w| w.is_some() as u64))
            .try_reduce(|| 0, |a, b| Ok(a + b))
    })
}

/// The `[[5,1,3]]_2` code with cyclic generators `XZZXI`, `IXZZX`, `XIXZZ`,
/// `ZXIXZ`.
pub fn five_qubit_code() -> IsotropicCode {
    let paulis = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"];
    let rows = paulis
        .iter()
        .map(|s| {
            let x = s.chars().map(|c| matches!(c, 'X' | 'Y') as u8);
            let z = s.chars().map(|c| matches!(c, 'Z' | 'Y') as u8);
            x.chain(z).collect()
        })
        .collect();
    IsotropicCode::from_generators(PrimeField::new(2).unwrap(), 5, rows).expect("commuting generators")
}

/// The `[7,4]` Hamming code paired with its dual `[7,3]` simplex code, the
/// Steane CSS ingredient.
pub fn steane_pair() -> NestedPair {
    let f = PrimeField::new(2).unwrap();
    let simplex = Subspace::span(
        f,
        7,
        vec![
            vec![0, 0, 0, 1, 1, 1, 1],
            vec![0, 1, 1, 0, 0, 1, 1],
            vec![1, 0, 1, 0, 1, 0, 1],
        ],
    )
    .unwrap();
    NestedPair::new(simplex.dual(), simplex).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn all_vectors(field: PrimeField, n: usize) -> Vec<Vec<u8>> {
        let p = field.order() as usize;
        (0..p.pow(n as u32))
            .map(|mut idx| {
                (0..n)
                    .map(|_| {
                        let e = (idx % p) as u8;
                        idx /= p;
                        e
                    })
                    .collect()
            })
            .collect()
    }

    /// Definition-level distance: scan all of F_q^n.
    fn oracle_min_weight(outer: &Subspace, inner: &Subspace) -> Distance {
        all_vectors(outer.field(), outer.ambient_dim())
            .into_iter()
            .filter(|v| outer.contains(v) && !inner.contains(v))
            .map(|v| weight(&v) as u32)
            .min()
            .map_or(Distance::Unbounded, Distance::Finite)
    }

    #[test]
    fn lemma_small_cases() {
        let rep = enumerate_nested_pairs(3, 2, 2, 1).unwrap();
        assert_eq!(rep.total_pairs, 21);
        assert_eq!(rep.per_error_x().count(), 7);
        assert!(rep.per_error_x().all(|(_, c)| c == 6));
        assert!(rep.per_error_z().all(|(_, c)| c == 6));
        assert!(rep.lemma_holds());
        assert_eq!(rep.count_x(&[1, 0, 1]), 6);

        assert_eq!(enumerate_nested_pairs(2, 2, 1, 0).unwrap().total_pairs, 3);

        let same = enumerate_nested_pairs(2, 2, 1, 1).unwrap();
        assert_eq!(same.total_pairs, 3);
        assert!(same.per_error_x().all(|(_, c)| c == 0));
        assert!(same.lemma_holds());
    }

    #[test]
    fn lemma_guards() {
        assert!(matches!(
            enumerate_nested_pairs(3, 4, 1, 0),
            Err(Error::UnsupportedField(4))
        ));
        assert!(matches!(
            enumerate_nested_pairs(30, 2, 15, 7),
            Err(Error::SizeGuard { .. })
        ));
        assert!(enumerate_nested_pairs(3, 2, 1, 2).is_err());
    }

    #[test]
    fn steane_distances() {
        let pair = steane_pair();
        assert_eq!(pair.c1().dim(), 4);
        assert_eq!(pair.k(), 1);
        let d = css_distances(&pair).unwrap();
        assert_eq!(d, DistancePair { dx: Distance::Finite(3), dz: Distance::Finite(3) });
    }

    #[test]
    fn repetition_line_distances() {
        let f = gf(2);
        let c1 = Subspace::span(f, 3, vec![vec![1, 1, 1]]).unwrap();
        let pair = NestedPair::new(c1, Subspace::zero(f, 3)).unwrap();
        let d = css_distances(&pair).unwrap();
        assert_eq!(d, DistancePair { dx: Distance::Finite(3), dz: Distance::Finite(1) });

        let eq = NestedPair::new(pair.c1().clone(), pair.c1().clone()).unwrap();
        let d = css_distances(&eq).unwrap();
        assert_eq!(d, DistancePair { dx: Distance::Unbounded, dz: Distance::Unbounded });
        assert_eq!(Distance::Unbounded.to_string(), "inf");
    }

    #[test]
    fn nested_pair_rejects_non_nested() {
        let f = gf(2);
        let a = Subspace::span(f, 3, vec![vec![1, 1, 0]]).unwrap();
        let b = Subspace::span(f, 3, vec![vec![0, 1, 1]]).unwrap();
        assert!(NestedPair::new(a, b).is_err());
    }

    #[test]
    fn css_distances_match_definition_oracle() {
        for q in [2u64, 3] {
            let max_n = if q == 2 { 6 } else { 4 };
            for n in 1..=max_n {
                for k1 in 0..=n {
                    for k2 in 0..=k1 {
                        for seed in 0..3 {
                            let pair = random_nested_pair(n, q, k1, k2, seed).unwrap();
                            let d = css_distances(&pair).unwrap();
                            assert_eq!(d.dx, oracle_min_weight(pair.c1(), pair.c2()));
                            assert_eq!(d.dz, oracle_min_weight(&pair.c2().dual(), &pair.c1().dual()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn five_qubit_detection() {
        let code = five_qubit_code();
        assert_eq!(code.k(), 1);
        assert!(code.stabilizer().is_isotropic());
        let g = code.stabilizer().basis()[0].clone();
        assert!(stab_is_detectable(&code, &g).unwrap());
        let all_x = [1, 1, 1, 1, 1, 0, 0, 0, 0, 0];
        assert!(!stab_is_detectable(&code, &all_x).unwrap());
        let single = [1, 0, 0, 0, 0, 0, 0, 0, 0, 0];
        assert!(stab_is_detectable(&code, &single).unwrap());
        assert!(matches!(
            stab_is_detectable(&code, &[0; 10]),
            Err(Error::Domain(_))
        ));

        assert!(stab_detects_profile(&code, 5, 1).unwrap());
        assert!(stab_detects_profile(&code, 1, 5).unwrap());
        assert!(!stab_detects_profile(&code, 6, 1).unwrap());
        assert!(!stab_detects_profile(&code, 1, 6).unwrap());

        let pure = stab_pure_distances(&code).unwrap();
        assert_eq!(pure, DistancePair { dx: Distance::Finite(5), dz: Distance::Finite(5) });
    }

    #[test]
    fn profile_matches_brute_force_over_all_patterns() {
        let code = five_qubit_code();
        let f = code.field();
        let all = all_vectors(f, 10);
        for dx in 1..=6u32 {
            for dz in 1..=6u32 {
                let want = all.iter().all(|e| {
                    let (ex, ez) = e.split_at(5);
                    let in_profile = weight(ex) < dx as usize && weight(ez) < dz as usize;
                    !in_profile
                        || weight(e) == 0
                        || !(code.stabilizer().symplectic_dual().unwrap().contains(e)
                            && !code.stabilizer().contains(e))
                });
                assert_eq!(stab_detects_profile(&code, dx, dz).unwrap(), want, "({dx},{dz})");
            }
        }
        let matrix = stab_profile_matrix(&code).unwrap();
        assert_eq!(matrix[4][0], Some(true));
        assert_eq!(matrix[5][0], Some(false));
    }

    #[test]
    fn isotropic_rejects_non_commuting() {
        let f = gf(2);
        // X and Z on the same qubit anticommute
        assert!(IsotropicCode::from_generators(f, 1, vec![vec![1, 0], vec![0, 1]]).is_err());
    }

    #[test]
    fn random_pair_shape_and_determinism() {
        let a = random_nested_pair(12, 2, 7, 4, 42).unwrap();
        assert_eq!(a.c1().dim(), 7);
        assert_eq!(a.c2().dim(), 4);
        assert!(a.c2().is_subspace_of(a.c1()));
        assert_eq!(a, random_nested_pair(12, 2, 7, 4, 42).unwrap());
        assert!(matches!(random_nested_pair(3, 6, 1, 0, 0), Err(Error::UnsupportedField(6))));
    }

    #[test]
    fn random_pair_is_uniform_over_b3() {
        let f = gf(2);
        let mut counts: HashMap<NestedPair, u32> = HashMap::new();
        let draws = 10_000u32;
        let mut rng = stream_rng(7, 0);
        for _ in 0..draws {
            *counts.entry(sample_nested_pair(f, 3, 2, 1, &mut rng)).or_default() += 1;
        }
        assert_eq!(counts.len(), 21);
        let p = 1.0 / 21.0;
        let mean = draws as f64 * p;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        let mut chi2 = 0.0;
        for &c in counts.values() {
            assert!((c as f64 - mean).abs() <= 5.0 * sigma, "count {c}");
            chi2 += (c as f64 - mean).powi(2) / mean;
        }
        // 20 degrees of freedom; 0.999 quantile is about 45.3
        assert!(chi2 < 45.3, "chi2 = {chi2}");
    }

    #[test]
    fn random_isotropic_shape_and_determinism() {
        let c = random_isotropic_code(5, 2, 1, 3).unwrap();
        assert_eq!(c.stabilizer().dim(), 4);
        assert!(c.stabilizer().is_isotropic());
        let f = c.field();
        for a in c.stabilizer().basis() {
            for b in c.stabilizer().basis() {
                assert_eq!(f.symplectic(a, b), 0);
            }
        }
        assert_eq!(c, random_isotropic_code(5, 2, 1, 3).unwrap());
        assert_eq!(random_isotropic_code(4, 3, 4, 1).unwrap().stabilizer().dim(), 0);
        let g3 = random_isotropic_code(4, 3, 0, 9).unwrap();
        assert_eq!(g3.stabilizer().dim(), 4);
        assert!(g3.stabilizer().is_isotropic());
    }

    #[test]
    fn witness_search_examples() {
        let css = SearchParams::Css(CssBoundQuery { q: 2, n: 12, k1: 7, k2: 5, dx: 2, dz: 2 });
        let w = gv_witness_search(&css, 100, 1, Some(2)).unwrap().unwrap();
        assert!(w.distances.meets(2, 2));
        let WitnessCode::Css(pair) = &w.code else { panic!() };
        assert_eq!(css_distances(pair).unwrap(), w.distances);

        let trivial = SearchParams::Stab(StabBoundQuery { q: 2, n: 6, k: 2, dx: 1, dz: 1 });
        assert_eq!(gv_witness_search(&trivial, 10, 5, None).unwrap().unwrap().trial_index, 1);
        let trivial_css = SearchParams::Css(CssBoundQuery { q: 3, n: 4, k1: 3, k2: 1, dx: 1, dz: 1 });
        assert_eq!(gv_witness_search(&trivial_css, 10, 5, None).unwrap().unwrap().trial_index, 1);

        let none = SearchParams::Css(CssBoundQuery { q: 2, n: 4, k1: 4, k2: 0, dx: 3, dz: 3 });
        assert_eq!(gv_witness_search(&none, 100, 1, None).unwrap(), None);

        let composite = SearchParams::Css(CssBoundQuery { q: 4, n: 4, k1: 2, k2: 1, dx: 2, dz: 2 });
        assert!(matches!(gv_witness_search(&composite, 1, 1, None), Err(Error::UnsupportedField(4))));
        assert!(gv_witness_search(&css, 0, 1, None).is_err());
    }

    #[test]
    fn stab_witness_verifies() {
        let params = SearchParams::Stab(StabBoundQuery { q: 2, n: 8, k: 1, dx: 2, dz: 3 });
        let w = gv_witness_search(&params, 200, 11, None).unwrap().expect("witness");
        let WitnessCode::Stab(code) = &w.code else { panic!() };
        assert!(stab_detects_profile(code, 2, 3).unwrap());
        assert!(w.distances.meets(2, 3));
    }

    #[test]
    fn search_is_independent_of_thread_count() {
        let params = SearchParams::Css(CssBoundQuery { q: 2, n: 10, k1: 6, k2: 3, dx: 3, dz: 2 });
        let one = gv_witness_search(&params, 300, 99, Some(1)).unwrap();
        for t in [2, 4, 8] {
            assert_eq!(gv_witness_search(&params, 300, 99, Some(t)).unwrap(), one);
        }
        let count = witness_success_count(&params, 200, 3, Some(1)).unwrap();
        assert_eq!(witness_success_count(&params, 200, 3, Some(4)).unwrap(), count);
    }
}
