//! Independent rate upper bounds by storage-design search.
//!
//! For any storage design, a message stored only on the servers of a set S
//! forces those servers to deliver at least one full message length between
//! them. Minimizing total download under all of those constraints (an exact
//! fractional-covering program) upper-bounds the rate the design can reach;
//! maximizing that bound over all designs upper-bounds the capacity.
//!
//! The search space is kept finite by two reductions, recorded in the
//! certificate semantics: duplicate server sets collapse (a scheme on the
//! duplicated design restricts to the deduplicated one at the same rate),
//! and filling every server to capacity only weakens the constraint set, so
//! distinct full-capacity designs dominate. Because every full-capacity
//! design's bound is at most M/K (summing the per-message constraints counts
//! each server M times), the search may stop as soon as any design attains
//! M/K; the known cyclic layouts are probed first for exactly that reason.

use itertools::Itertools;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::build::{build_basic, build_full_rate, build_intermediate};
use crate::capacity::{min_servers, threshold_n};
use crate::error::{Error, Result};
use crate::lp::min_cover_value;
use crate::ratio::{frac, Frac};
use crate::storage::StorageDesign;

/// Default cap on enumerated design candidates per search.
pub const DEFAULT_DESIGN_BUDGET: u64 = 1_000_000;

/// A storage design together with the constraint set and exact program
/// optimum that prove a rate upper bound for (K, M, N).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConverseCertificate {
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub best_design: StorageDesign,
    /// Server subsets (1-based, within `best_design`), one per distinct
    /// availability set.
    pub constraints: Vec<Vec<usize>>,
    /// Exact minimum total download with unit message length.
    pub lp_value: Frac,
    /// `1 / lp_value`: no scheme on any admissible design beats this rate.
    pub rate_bound: Frac,
    pub designs_examined: u64,
    /// The search stopped at the provable M/K ceiling rather than
    /// exhausting the enumeration.
    pub cap_attained: bool,
    /// The winning design leaves some server below capacity (only seed
    /// designs can; the enumeration itself is over full-capacity sets).
    pub uses_subcapacity_sets: bool,
}

#[derive(Serialize, Deserialize)]
struct CertificateDoc {
    #[serde(rename = "K")]
    k: usize,
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "N")]
    n: usize,
    best_design: Vec<Vec<usize>>,
    constraints: Vec<Vec<usize>>,
    #[serde(with = "crate::ratio")]
    lp_value: Frac,
    #[serde(with = "crate::ratio")]
    rate_bound: Frac,
    designs_examined: u64,
    cap_attained: bool,
    uses_subcapacity_sets: bool,
}

impl ConverseCertificate {
    pub fn to_json(&self) -> String {
        let doc = CertificateDoc {
            k: self.k,
            m: self.m,
            n: self.n,
            best_design: self.best_design.sets().to_vec(),
            constraints: self.constraints.clone(),
            lp_value: self.lp_value,
            rate_bound: self.rate_bound,
            designs_examined: self.designs_examined,
            cap_attained: self.cap_attained,
            uses_subcapacity_sets: self.uses_subcapacity_sets,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}

/// One constraint per message: the set of servers holding it. Duplicate
/// subsets are retained once; the list is sorted for determinism.
pub fn availability_constraints(design: &StorageDesign) -> Vec<Vec<usize>> {
    let mut subsets: Vec<Vec<usize>> = (1..=design.message_count())
        .map(|msg| design.availability(msg).servers().to_vec())
        .collect();
    subsets.sort();
    subsets.dedup();
    subsets
}

/// Exact optimum of: minimize total download subject to each constraint
/// subset delivering at least one message length. Servers are 1-based.
pub fn min_download(constraints: &[Vec<usize>], n_servers: usize) -> Result<Frac> {
    if constraints.is_empty() {
        return Err(Error::InvalidParameters("no constraints given".into()));
    }
    let mut zero_based = Vec::with_capacity(constraints.len());
    for subset in constraints {
        if subset.is_empty() {
            return Err(Error::InvalidParameters("empty constraint subset".into()));
        }
        let mut s = Vec::with_capacity(subset.len());
        for &server in subset {
            if server == 0 || server > n_servers {
                return Err(Error::IndexOutOfRange {
                    index: server,
                    bound: n_servers,
                });
            }
            s.push(server - 1);
        }
        zero_based.push(s);
    }
    Ok(min_cover_value(n_servers, &zero_based))
}

fn design_bound(design: &StorageDesign) -> Result<(Frac, Frac, Vec<Vec<usize>>)> {
    let constraints = availability_constraints(design);
    let value = min_download(&constraints, design.server_count())?;
    Ok((Frac::one() / value, value, constraints))
}

/// Producible layouts worth probing before brute enumeration: sequential at
/// the feasibility floor, block-cyclic at the threshold, the table layout in
/// between. The threshold layout attains the M/K ceiling, which ends the
/// search immediately whenever N reaches the threshold.
fn seed_design(k: usize, m: usize, n_prime: usize) -> Result<StorageDesign> {
    let floor = min_servers(k, m);
    let threshold = threshold_n(k, m)?;
    let scheme = if n_prime == threshold {
        build_full_rate(k, m)?
    } else if n_prime == floor {
        build_basic(k, m)?
    } else {
        build_intermediate(k, m, n_prime)?
    };
    Ok(scheme.storage().clone())
}

/// All sets of `n_servers` distinct size-M subsets of `1..=k` covering all
/// of `1..=k`, visited in lexicographic order. The visitor returns `false`
/// to stop.
pub fn enumerate_covers<F>(k: usize, m: usize, n_servers: usize, mut visit: F)
where
    F: FnMut(&[Vec<usize>]) -> bool,
{
    assert!((1..=64).contains(&k), "cover enumeration supports 1 <= K <= 64");
    let subsets: Vec<Vec<usize>> = (1..=k).combinations(m).collect();
    let masks: Vec<u64> = subsets
        .iter()
        .map(|s| s.iter().fold(0u64, |acc, &msg| acc | 1 << (msg - 1)))
        .collect();
    let full: u64 = if k == 64 { u64::MAX } else { (1 << k) - 1 };
    for combo in (0..subsets.len()).combinations(n_servers) {
        let cover = combo.iter().fold(0u64, |acc, &i| acc | masks[i]);
        if cover != full {
            continue;
        }
        let design: Vec<Vec<usize>> = combo.iter().map(|&i| subsets[i].clone()).collect();
        if !visit(&design) {
            return;
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Maximize the per-design rate bound over all admissible storage designs
/// with at most `n` servers, returning the certificate for the maximum.
///
/// Server counts run over `[ceil(K/M) : min(N, C(K,M))]`; higher counts
/// cannot introduce new distinct full-capacity designs. Ties in the
/// enumeration are broken toward fewer servers, then lexicographically
/// smallest subset list.
pub fn converse_rate(k: usize, m: usize, n: usize, budget: u64) -> Result<ConverseCertificate> {
    if k == 0 || m == 0 || m > k {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= M <= K, got K={k}, M={m}"
        )));
    }
    if k > 60 {
        return Err(Error::InvalidParameters(format!(
            "design enumeration supports K <= 60, got {k}"
        )));
    }
    let floor = min_servers(k, m);
    if n < floor {
        return Err(Error::InvalidParameters(format!(
            "N={n} cannot store {k} messages at {m} per server"
        )));
    }
    let cap = frac(m as i64, k as i64);
    let threshold = threshold_n(k, m)?;
    let mut examined: u64 = 0;
    let mut best: Option<(Frac, Frac, Vec<Vec<usize>>, StorageDesign)> = None;

    for n_prime in floor..=n.min(threshold) {
        let design = seed_design(k, m, n_prime)?;
        let (bound, value, constraints) = design_bound(&design)?;
        examined += 1;
        if bound == cap {
            return Ok(finish(
                k,
                m,
                n,
                design,
                constraints,
                value,
                bound,
                examined,
                true,
            ));
        }
        if best.as_ref().is_none_or(|(b, ..)| bound > *b) {
            best = Some((bound, value, constraints, design));
        }
    }

    // No seed reached the ceiling: exhaust distinct full-capacity designs.
    // Every seed bound is dominated by some full-capacity design's bound
    // (filling a server weakens its constraints), so the enumeration alone
    // determines the certificate; seeds only counted toward `examined`.
    let seed_best = best.take().map(|(b, ..)| b);
    let subset_count = binomial(k as u128, m as u128);
    let n_hi = n.min(subset_count.min(usize::MAX as u128) as usize);
    let estimate: u128 = (floor..=n_hi)
        .map(|n_prime| binomial(subset_count, n_prime as u128))
        .fold(0u128, |acc, c| acc.saturating_add(c));
    if estimate > budget as u128 {
        return Err(Error::BudgetExceeded {
            estimate,
            budget: budget as u128,
        });
    }

    for n_prime in floor..=n_hi {
        let mut stop = false;
        enumerate_covers(k, m, n_prime, |sets| {
            let design = StorageDesign::new(k, m, sets.to_vec()).expect("cover is valid");
            let (bound, value, constraints) = design_bound(&design).expect("valid design");
            examined += 1;
            if best.as_ref().is_none_or(|(b, ..)| bound > *b) {
                best = Some((bound, value, constraints, design));
            }
            if bound == cap {
                stop = true;
            }
            !stop
        });
        if stop {
            break;
        }
    }

    let (bound, value, constraints, design) = best.expect("search range is never empty");
    debug_assert!(seed_best.is_none_or(|sb| sb <= bound));
    Ok(finish(
        k,
        m,
        n,
        design,
        constraints,
        value,
        bound,
        examined,
        bound == cap,
    ))
}

#[allow(clippy::too_many_arguments)]
fn finish(
    k: usize,
    m: usize,
    n: usize,
    best_design: StorageDesign,
    constraints: Vec<Vec<usize>>,
    lp_value: Frac,
    rate_bound: Frac,
    designs_examined: u64,
    cap_attained: bool,
) -> ConverseCertificate {
    let uses_subcapacity_sets = best_design.sets().iter().any(|s| s.len() < m);
    ConverseCertificate {
        k,
        m,
        n,
        best_design,
        constraints,
        lp_value,
        rate_bound,
        designs_examined,
        cap_attained,
        uses_subcapacity_sets,
    }
}

/// True iff every server stores at least one message that no other server
/// stores. At the feasibility floor `N = ceil(K/M)` every valid design must
/// have this shape: a fully duplicated server would need total storage
/// K + M, which exceeds N*M there.
pub fn has_exclusive_messages(design: &StorageDesign) -> bool {
    (1..=design.server_count()).all(|server| {
        design
            .set(server)
            .iter()
            .any(|&msg| design.availability(msg).servers() == [server])
    })
}
