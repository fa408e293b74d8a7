//! Exact finite-length Gilbert-Varshamov conditions for asymmetric CSS and
//! stabilizer codes.
//!
//! Every left-hand side is an exact [`BigRational`]; the verdict is the exact
//! comparison `lhs < 1`. Floating point only appears in [`BoundReport::decimal`].

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// True when `q = p^m` for a prime `p` and `m >= 1`.
pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            let mut r = q;
            while r % d == 0 {
                r /= d;
            }
            return r == 1;
        }
        d += 1;
    }
    true
}

fn check_q(q: u64) -> Result<()> {
    if is_prime_power(q) {
        Ok(())
    } else {
        Err(Error::Range(format!("q = {q} is not a prime power")))
    }
}

fn check_distance(name: &str, d: u32, n: u32) -> Result<()> {
    if d < 1 || d > n + 1 {
        return Err(Error::Range(format!("{name} = {d} outside 1..={}", n + 1)));
    }
    Ok(())
}

fn pow(q: u64, e: u32) -> BigUint {
    num_traits::pow(BigUint::from(q), e as usize)
}

/// Number of nonzero vectors of weight at most `t` in `F_q^n`:
/// `sum_{i=1}^{t} C(n,i) (q-1)^i`.
pub fn ball_sum(n: u32, q: u64, t: u32) -> Result<BigUint> {
    if q < 2 {
        return Err(Error::Range(format!("q = {q} < 2")));
    }
    if t > n {
        return Err(Error::Range(format!("radius {t} exceeds length {n}")));
    }
    Ok(BallSums::new(n, q).upto(t).clone())
}

/// Prefix table of ball sums for one `(n, q)`, reused across scans.
#[derive(Clone, Debug)]
pub struct BallSums {
    prefix: Vec<BigUint>,
}

impl BallSums {
    pub fn new(n: u32, q: u64) -> Self {
        let mut prefix = Vec::with_capacity(n as usize + 1);
        prefix.push(BigUint::zero());
        let mut term = BigUint::one();
        let qm1 = BigUint::from(q - 1);
        for i in 1..=n {
            // C(n,i)(q-1)^i from C(n,i-1)(q-1)^(i-1)
            term = term * BigUint::from(n - i + 1) * &qm1 / BigUint::from(i);
            let next = prefix.last().unwrap() + &term;
            prefix.push(next);
        }
        BallSums { prefix }
    }

    pub fn upto(&self, t: u32) -> &BigUint {
        &self.prefix[t as usize]
    }
}

/// Gaussian binomial `[n, k]_q`, the number of `k`-dimensional subspaces
/// of `F_q^n`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> Result<BigUint> {
    if q < 2 {
        return Err(Error::Range(format!("q = {q} < 2")));
    }
    if k > n {
        return Err(Error::Range(format!("k = {k} exceeds n = {n}")));
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        // [n, i+1] = [n, i] (q^{n-i} - 1) / (q^{i+1} - 1), exact at every step
        acc = acc * (pow(q, n - i) - 1u32) / (pow(q, i + 1) - 1u32);
    }
    Ok(acc)
}

/// Parameters of the CSS condition: nested codes of dimensions `k2 <= k1`
/// in length `n` with design distances `dx`, `dz`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CssBoundQuery {
    pub q: u64,
    pub n: u32,
    pub k1: u32,
    pub k2: u32,
    pub dx: u32,
    pub dz: u32,
}

impl CssBoundQuery {
    pub fn validate(&self) -> Result<()> {
        check_q(self.q)?;
        if self.n < 1 {
            return Err(Error::Range("n must be at least 1".into()));
        }
        if self.k2 > self.k1 || self.k1 > self.n {
            return Err(Error::Range(format!(
                "need 0 <= k2 <= k1 <= n, got k1 = {}, k2 = {}, n = {}",
                self.k1, self.k2, self.n
            )));
        }
        check_distance("dx", self.dx, self.n)?;
        check_distance("dz", self.dz, self.n)
    }
}

/// Parameters of the stabilizer condition for an `[[n, k, dx, dz]]_q` code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StabBoundQuery {
    pub q: u64,
    pub n: u32,
    pub k: u32,
    pub dx: u32,
    pub dz: u32,
}

impl StabBoundQuery {
    pub fn validate(&self) -> Result<()> {
        check_q(self.q)?;
        if self.n < 1 {
            return Err(Error::Range("n must be at least 1".into()));
        }
        if self.k > self.n {
            return Err(Error::Range(format!(
                "k = {} exceeds n = {}",
                self.k, self.n
            )));
        }
        check_distance("dx", self.dx, self.n)?;
        check_distance("dz", self.dz, self.n)
    }
}

/// One named addend or factor of a left-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub name: &'static str,
    pub value: BigRational,
}

/// Exact evaluation of a bound's left-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub lhs: BigRational,
    /// Addends (CSS) or factors (stabilizer) whose sum or product is `lhs`.
    pub terms: Vec<Term>,
    /// `lhs < 1`, decided exactly.
    pub feasible: bool,
}

impl BoundReport {
    fn new(lhs: BigRational, terms: Vec<Term>) -> Self {
        let feasible = lhs < BigRational::one();
        BoundReport {
            lhs,
            terms,
            feasible,
        }
    }

    /// `lhs` as `"numerator/denominator"` in lowest terms.
    pub fn exact(&self) -> String {
        format_exact(&self.lhs)
    }

    pub fn decimal(&self, digits: usize) -> String {
        format_decimal(&self.lhs, digits)
    }
}

/// `"a/b"` with `b > 0`, always including the denominator.
pub fn format_exact(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering with `digits` places, rounding half away from zero.
pub fn format_decimal(r: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let num: BigInt = r.numer().abs() * &scale * 2 + r.denom();
    let rounded = num.div_floor(&(r.denom() * 2));
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if r.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn int(v: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v.clone()))
}

fn css_with(query: &CssBoundQuery, balls: &BallSums) -> BoundReport {
    let CssBoundQuery {
        q, n, k1, k2, dx, dz,
    } = *query;
    let den = pow(q, n) - 1u32;
    let bit = ratio(pow(q, k1) - pow(q, k2), den.clone()) * int(balls.upto(dx - 1));
    let phase = ratio(pow(q, n - k2) - pow(q, n - k1), den) * int(balls.upto(dz - 1));
    let lhs = &bit + &phase;
    BoundReport::new(
        lhs,
        vec![
            Term {
                name: "bit",
                value: bit,
            },
            Term {
                name: "phase",
                value: phase,
            },
        ],
    )
}

/// Left-hand side of the CSS existence condition:
///
/// `(q^k1 - q^k2)/(q^n - 1) * V(dx-1) + (q^(n-k2) - q^(n-k1))/(q^n - 1) * V(dz-1)`
///
/// where `V(t)` is [`ball_sum`]. Feasible means an `[[n, k1-k2, dx, dz]]_q`
/// CSS code exists.
pub fn css_gv_lhs(query: &CssBoundQuery) -> Result<BoundReport> {
    query.validate()?;
    Ok(css_with(query, &BallSums::new(query.n, query.q)))
}

fn stab_with(query: &StabBoundQuery, balls: &BallSums) -> BoundReport {
    let StabBoundQuery { q, n, k, dx, dz } = *query;
    // (1 - q^{-2k}) / (1 - q^{-2n}) = (q^{2k} - 1) q^{2n-2k} / (q^{2n} - 1)
    let undetected = ratio(
        (pow(q, 2 * k) - 1u32) * pow(q, 2 * (n - k)),
        pow(q, 2 * n) - 1u32,
    );
    let scale = ratio(BigUint::one(), pow(q, n - k));
    let bx = int(balls.upto(dx - 1));
    let bz = int(balls.upto(dz - 1));
    let lhs = &undetected * &scale * &bx * &bz;
    BoundReport::new(
        lhs,
        vec![
            Term {
                name: "ratio",
                value: undetected,
            },
            Term {
                name: "scale",
                value: scale,
            },
            Term {
                name: "ball_x",
                value: bx,
            },
            Term {
                name: "ball_z",
                value: bz,
            },
        ],
    )
}

/// Left-hand side of the stabilizer existence condition:
///
/// `(1 - q^(-2k))/(1 - q^(-2n)) * q^(-(n-k)) * V(dx-1) * V(dz-1)`.
pub fn stab_gv_lhs(query: &StabBoundQuery) -> Result<BoundReport> {
    query.validate()?;
    Ok(stab_with(query, &BallSums::new(query.n, query.q)))
}

/// Largest `k` in `1..=n` satisfying the stabilizer condition.
pub fn max_k_stab(n: u32, q: u64, dx: u32, dz: u32) -> Result<Option<u32>> {
    StabBoundQuery { q, n, k: 0, dx, dz }.validate()?;
    let balls = BallSums::new(n, q);
    Ok((1..=n)
        .rev()
        .find(|&k| stab_with(&StabBoundQuery { q, n, k, dx, dz }, &balls).feasible))
}

/// The feasible `(k1, k2)` with `k1 > k2` maximizing `k1 - k2`; ties go to the
/// smallest `k1`, then the smallest `k2`.
pub fn best_css_params(n: u32, q: u64, dx: u32, dz: u32) -> Result<Option<(u32, u32)>> {
    CssBoundQuery {
        q,
        n,
        k1: 0,
        k2: 0,
        dx,
        dz,
    }
    .validate()?;
    let balls = BallSums::new(n, q);
    let bx = balls.upto(dx - 1);
    let bz = balls.upto(dz - 1);
    let den = pow(q, n) - 1u32;
    let powers: Vec<BigUint> = (0..=n).map(|e| pow(q, e)).collect();
    let mut best: Option<(u32, u32)> = None;
    for k1 in 1..=n {
        for k2 in 0..k1 {
            // lhs < 1 with the common denominator cleared
            let num = (&powers[k1 as usize] - &powers[k2 as usize]) * bx
                + (&powers[(n - k2) as usize] - &powers[(n - k1) as usize]) * bz;
            if num >= den {
                continue;
            }
            let better = match best {
                None => true,
                Some((b1, b2)) => k1 - k2 > b1 - b2,
            };
            if better {
                best = Some((k1, k2));
            }
        }
    }
    Ok(best)
}
