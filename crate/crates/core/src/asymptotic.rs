//! q-ary entropy and the asymptotic rate/distance regions for CSS and
//! stabilizer codes.
//!
//! These statements have no exactness requirement, so everything here is
//! `f64`. All feasibility tests use strict inequalities.

use crate::bounds::{CssBoundQuery, StabBoundQuery};
use crate::error::{Error, Result};

/// Slack allowed when a caller passes the entropy peak `1 - 1/q` computed
/// along a different floating-point path.
const DOMAIN_SLACK: f64 = 1e-12;

fn check_q(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::Domain(format!("q = {q} < 2")));
    }
    Ok(())
}

/// Right end `1 - 1/q` of the increasing branch of `h_q`.
pub fn entropy_peak(q: u64) -> f64 {
    1.0 - 1.0 / q as f64
}

fn check_delta(name: &str, delta: f64, q: u64) -> Result<()> {
    let peak = entropy_peak(q);
    if !delta.is_finite() || delta < 0.0 || delta > peak + DOMAIN_SLACK {
        return Err(Error::Domain(format!(
            "{name} = {delta} outside [0, {peak}] for q = {q}"
        )));
    }
    Ok(())
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if !x.is_finite() || !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("{name} = {x} outside [0, 1]")));
    }
    Ok(())
}

/// `h_q(d) = d log_q(q-1) - d log_q d - (1-d) log_q(1-d)` on `[0, 1 - 1/q]`,
/// with `0 log 0 = 0`.
pub fn entropy_hq(delta: f64, q: u64) -> Result<f64> {
    check_q(q)?;
    check_delta("delta", delta, q)?;
    if delta == 0.0 {
        return Ok(0.0);
    }
    if delta >= entropy_peak(q) - DOMAIN_SLACK {
        // h_q is flat to second order at its peak
        return Ok(1.0);
    }
    let ln_q = (q as f64).ln();
    let h = delta * ((q - 1) as f64).ln() - delta * delta.ln() - (1.0 - delta) * (-delta).ln_1p();
    Ok((h / ln_q).clamp(0.0, 1.0))
}

/// Inverse of [`entropy_hq`] on `[0, 1 - 1/q]`, by bisection run to the
/// limit of `f64` resolution (well below `1e-12`).
pub fn hq_inverse(y: f64, q: u64) -> Result<f64> {
    check_q(q)?;
    check_unit("y", y)?;
    if y == 0.0 {
        return Ok(0.0);
    }
    let peak = entropy_peak(q);
    if y == 1.0 {
        return Ok(peak);
    }
    let (mut lo, mut hi) = (0.0f64, peak);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if entropy_hq(mid, q)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // return whichever endpoint lands closer in entropy
    let err_lo = (entropy_hq(lo, q)? - y).abs();
    let err_hi = (entropy_hq(hi, q)? - y).abs();
    Ok(if err_lo <= err_hi { lo } else { hi })
}

/// Rates of an asymptotic query: a CSS pair `(R1, R2)` or a stabilizer rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Rates {
    Css { r1: f64, r2: f64 },
    Stab { r: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticQuery {
    pub q: u64,
    pub rates: Rates,
    pub delta_x: f64,
    pub delta_z: f64,
}

impl AsymptoticQuery {
    pub fn css(q: u64, r1: f64, r2: f64, delta_x: f64, delta_z: f64) -> Result<Self> {
        let query = AsymptoticQuery {
            q,
            rates: Rates::Css { r1, r2 },
            delta_x,
            delta_z,
        };
        query.validate()?;
        Ok(query)
    }

    pub fn stab(q: u64, r: f64, delta_x: f64, delta_z: f64) -> Result<Self> {
        let query = AsymptoticQuery {
            q,
            rates: Rates::Stab { r },
            delta_x,
            delta_z,
        };
        query.validate()?;
        Ok(query)
    }

    pub fn validate(&self) -> Result<()> {
        check_q(self.q)?;
        check_delta("delta_x", self.delta_x, self.q)?;
        check_delta("delta_z", self.delta_z, self.q)?;
        match self.rates {
            Rates::Css { r1, r2 } => {
                check_unit("R1", r1)?;
                check_unit("R2", r2)?;
                if r2 > r1 {
                    return Err(Error::Domain(format!("R2 = {r2} exceeds R1 = {r1}")));
                }
                Ok(())
            }
            Rates::Stab { r } => check_unit("R", r),
        }
    }
}

/// CSS region: `h_q(dx) < 1 - R1` and `h_q(dz) < R2`.
pub fn cor2_feasible(query: &AsymptoticQuery) -> Result<bool> {
    query.validate()?;
    let Rates::Css { r1, r2 } = query.rates else {
        return Err(Error::Domain("CSS region needs (R1, R2) rates".into()));
    };
    let hx = entropy_hq(query.delta_x, query.q)?;
    let hz = entropy_hq(query.delta_z, query.q)?;
    Ok(hx < 1.0 - r1 && hz < r2 && r1 >= r2)
}

/// Stabilizer region: `h_q(dx) + h_q(dz) < 1 - R`.
pub fn cor4_feasible(query: &AsymptoticQuery) -> Result<bool> {
    query.validate()?;
    let Rates::Stab { r } = query.rates else {
        return Err(Error::Domain("stabilizer region needs a single rate R".into()));
    };
    let hx = entropy_hq(query.delta_x, query.q)?;
    let hz = entropy_hq(query.delta_z, query.q)?;
    Ok(hx + hz < 1.0 - r)
}

/// A point on the boundary `h_q(dx) + h_q(dz) = 1 - R`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrontierPoint {
    pub delta_x: f64,
    pub delta_z_max: f64,
    pub r: f64,
}

/// For each `delta_x` in the grid, the largest `delta_z` on the stabilizer
/// boundary at rate `r`. Grid points past the budget are dropped.
pub fn cor4_frontier(q: u64, r: f64, delta_x_grid: &[f64]) -> Result<Vec<FrontierPoint>> {
    check_q(q)?;
    check_unit("R", r)?;
    let mut points = Vec::with_capacity(delta_x_grid.len());
    for &delta_x in delta_x_grid {
        let mut budget = 1.0 - r - entropy_hq(delta_x, q)?;
        if budget < 0.0 {
            if budget < -DOMAIN_SLACK {
                continue;
            }
            budget = 0.0;
        }
        points.push(FrontierPoint {
            delta_x,
            delta_z_max: hq_inverse(budget.min(1.0), q)?,
            r,
        });
    }
    Ok(points)
}

/// `points` evenly spaced values of `delta_x` from 0 to the largest value
/// with `h_q(delta_x) <= 1 - r`.
pub fn frontier_grid(q: u64, r: f64, points: usize) -> Result<Vec<f64>> {
    check_q(q)?;
    check_unit("R", r)?;
    let end = hq_inverse(1.0 - r, q)?;
    Ok(match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points)
            .map(|i| end * i as f64 / (points - 1) as f64)
            .collect(),
    })
}

/// The open interval of `R1` (with `R2 = R1 - r`) on which the CSS region
/// contains the point: `h_q(dz) + r < R1 < 1 - h_q(dx)`, intersected with
/// `[r, 1]`. Nonempty exactly when the stabilizer region does.
pub fn cor2_optimal_r1(q: u64, r: f64, delta_x: f64, delta_z: f64) -> Result<Option<(f64, f64)>> {
    AsymptoticQuery::stab(q, r, delta_x, delta_z)?;
    let hx = entropy_hq(delta_x, q)?;
    let hz = entropy_hq(delta_z, q)?;
    let lo = (hz + r).max(r);
    let hi = (1.0 - hx).min(1.0);
    Ok((lo < hi).then_some((lo, hi)))
}

/// Finite instance of a CSS-form query at length `n`: `k1 = floor(n R1)`,
/// `k2 = ceil(n R2)` (capped at `k1`) and distances `floor(n delta)`, raised
/// to 1 when the floor is zero.
pub fn finite_css_instance(query: &AsymptoticQuery, n: u32) -> Result<CssBoundQuery> {
    query.validate()?;
    let Rates::Css { r1, r2 } = query.rates else {
        return Err(Error::Domain("CSS instance needs (R1, R2) rates".into()));
    };
    let nf = n as f64;
    let k1 = ((nf * r1).floor() as u32).min(n);
    let k2 = ((nf * r2).ceil() as u32).min(k1);
    Ok(CssBoundQuery {
        q: query.q,
        n,
        k1,
        k2,
        dx: ((nf * query.delta_x).floor() as u32).max(1),
        dz: ((nf * query.delta_z).floor() as u32).max(1),
    })
}

/// Finite instance of a stabilizer-form query at length `n`.
pub fn finite_stab_instance(query: &AsymptoticQuery, n: u32) -> Result<StabBoundQuery> {
    query.validate()?;
    let Rates::Stab { r } = query.rates else {
        return Err(Error::Domain("stabilizer instance needs a single rate R".into()));
    };
    let nf = n as f64;
    Ok(StabBoundQuery {
        q: query.q,
        n,
        k: ((nf * r).floor() as u32).min(n),
        dx: ((nf * query.delta_x).floor() as u32).max(1),
        dz: ((nf * query.delta_z).floor() as u32).max(1),
    })
}
