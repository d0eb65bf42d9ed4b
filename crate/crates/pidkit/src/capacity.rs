//! Closed-form capacity bounds and regime classification.
//!
//! Everything here is exact integer/rational arithmetic. The intermediate
//! regime reports bounds only; per-instance certification of that regime
//! lives in the converse module.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratio::{frac, Frac};

pub(crate) fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

fn validate_k_m(k: usize, m: usize) -> Result<()> {
    if k == 0 || m == 0 || m > k {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= M <= K, got K={k}, M={m}"
        )));
    }
    Ok(())
}

/// Fewest servers that can store all messages: `ceil(K/M)`.
pub fn min_servers(k: usize, m: usize) -> usize {
    ceil_div(k, m)
}

/// Server count at and above which rate M/K is achievable:
/// `K/g - (M/g - 1)(floor(K/M) - 1)` with `g = gcd(K, M)`.
pub fn threshold_n(k: usize, m: usize) -> Result<usize> {
    validate_k_m(k, m)?;
    let g = k.gcd(&m);
    let kbar = k / g;
    let mbar = m / g;
    let q = k / m;
    Ok(kbar - (mbar - 1) * (q - 1))
}

/// Message length multiplier for the intermediate-regime scheme:
/// `l = floor((N - floor(K/M) + 1) M / (K - (floor(K/M) - 1) M))`.
pub fn intermediate_length(k: usize, m: usize, n: usize) -> Result<usize> {
    validate_k_m(k, m)?;
    if k.is_multiple_of(m) {
        return Err(Error::RegimeViolation(format!(
            "K/M = {} is an integer; the multiplier formula needs a remainder",
            k / m
        )));
    }
    if n < min_servers(k, m) {
        return Err(Error::RegimeViolation(format!(
            "N={n} below the feasibility floor {}",
            min_servers(k, m)
        )));
    }
    let q = k / m;
    Ok((n - q + 1) * m / (k - (q - 1) * m))
}

/// Achievable rate at exactly `n_prime` servers, valid on
/// `min_servers ..= threshold_n`. At the endpoints this reproduces
/// `1/ceil(K/M)` and `M/K` respectively.
pub(crate) fn rate_at(k: usize, m: usize, n_prime: usize) -> Frac {
    let q = k / m;
    let l = (n_prime - q + 1) * m / (k - (q - 1) * m);
    frac(l as i64, (n_prime + (l - 1) * (q - 1)) as i64)
}

/// Best closed-form achievable rate with at most `n` servers, searching all
/// server counts in `[ceil(K/M) : min(n, threshold)]`. Returns the rate and
/// the smallest server count achieving it.
pub fn best_lower_bound(k: usize, m: usize, n: usize) -> Result<(Frac, usize)> {
    validate_k_m(k, m)?;
    let floor = min_servers(k, m);
    if n < floor {
        return Err(Error::InvalidParameters(format!(
            "N={n} cannot store {k} messages at {m} per server"
        )));
    }
    let cap = n.min(threshold_n(k, m)?);
    let mut best = rate_at(k, m, floor);
    let mut witness = floor;
    for n_prime in floor + 1..=cap {
        let r = rate_at(k, m, n_prime);
        if r > best {
            best = r;
            witness = n_prime;
        }
    }
    Ok((best, witness))
}

/// Where a parameter point sits relative to the solved regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "infeasible")]
    Infeasible,
    #[serde(rename = "tight-at-N-min")]
    TightAtMinServers,
    #[serde(rename = "intermediate")]
    Intermediate,
    #[serde(rename = "full-rate")]
    FullRate,
}

/// Exact rational capacity bounds for one (K, M, N) point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapacityReport {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub feasible: bool,
    #[serde(with = "crate::ratio")]
    pub lower: Frac,
    #[serde(with = "crate::ratio")]
    pub upper: Frac,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<FracField>,
    pub regime: Regime,
}

/// Serde wrapper so an optional fraction still renders as `{num, den}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FracField(#[serde(with = "crate::ratio")] pub Frac);

impl CapacityReport {
    pub fn exact_value(&self) -> Option<Frac> {
        self.exact.map(|f| f.0)
    }
}

/// Classify (K, M, N) and report bounds: zero when infeasible, the exact
/// capacity on the solved regimes, and a (lower, upper) gap otherwise.
pub fn capacity_report(k: usize, m: usize, n: usize) -> Result<CapacityReport> {
    validate_k_m(k, m)?;
    let floor = min_servers(k, m);
    let threshold = threshold_n(k, m)?;
    let zero = frac(0, 1);
    let report = if n < floor {
        CapacityReport {
            k,
            m,
            n,
            feasible: false,
            lower: zero,
            upper: zero,
            exact: Some(FracField(zero)),
            regime: Regime::Infeasible,
        }
    } else if n >= threshold {
        let c = frac(m as i64, k as i64);
        CapacityReport {
            k,
            m,
            n,
            feasible: true,
            lower: c,
            upper: c,
            exact: Some(FracField(c)),
            regime: Regime::FullRate,
        }
    } else if n == floor {
        let c = frac(1, floor as i64);
        CapacityReport {
            k,
            m,
            n,
            feasible: true,
            lower: c,
            upper: c,
            exact: Some(FracField(c)),
            regime: Regime::TightAtMinServers,
        }
    } else {
        let (lower, _) = best_lower_bound(k, m, n)?;
        CapacityReport {
            k,
            m,
            n,
            feasible: true,
            lower,
            upper: frac(m as i64, k as i64),
            exact: None,
            regime: Regime::Intermediate,
        }
    };
    Ok(report)
}
