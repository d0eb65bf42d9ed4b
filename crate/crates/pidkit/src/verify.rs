//! Scheme certification: correctness, privacy, and randomness accounting.
//!
//! Privacy is checked two independent ways. The rank route is exact algebra:
//! every answer map `[F[k] | H]` must be invertible, which makes the answers
//! uniform whatever was delivered. The exhaustive route enumerates the whole
//! `(W_k, Z)` state space (when it fits the budget) and compares the joint
//! distribution of (answers, delivered value) across k by exact sorted
//! multiset equality — no sampling, no statistics. The enumeration never
//! looks at the rank result, so the two stay independent oracles for each
//! other.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::MatrixFp;
use crate::ratio::frac;
use crate::scheme::Scheme;

/// Default cap on enumerated states, `p^{D_sigma}`, per scheme.
pub const DEFAULT_STATE_BUDGET: u128 = 10_000_000;

/// Outcome of the exhaustive privacy enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExhaustiveOutcome {
    Passed,
    Skipped { states: u128 },
    Failed { k: usize, detail: String },
}

/// Verdicts for one scheme, with per-message findings for anything that failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub correctness_ok: bool,
    pub rank_privacy_ok: bool,
    pub exhaustive_privacy: ExhaustiveOutcome,
    pub security_ok: bool,
    pub eta_ok: bool,
    pub details: Vec<String>,
}

impl VerificationReport {
    /// True when every check that ran came back clean.
    pub fn all_ok(&self) -> bool {
        self.correctness_ok
            && self.rank_privacy_ok
            && self.security_ok
            && self.eta_ok
            && !matches!(self.exhaustive_privacy, ExhaustiveOutcome::Failed { .. })
    }
}

/// Correctness: `G F[k] = I_L` for every message and `G H = 0`.
pub fn check_correctness(scheme: &Scheme) -> bool {
    correctness_findings(scheme).is_empty()
}

fn correctness_findings(scheme: &Scheme) -> Vec<String> {
    let mut findings = Vec::new();
    let identity = MatrixFp::identity(scheme.field(), scheme.l());
    for k in 1..=scheme.k() {
        let product = scheme.g().mul(scheme.f_matrix(k)).expect("shapes fixed");
        if product != identity {
            findings.push(format!("G F[{k}] is not the identity"));
        }
    }
    if !scheme.g().mul(scheme.h()).expect("shapes fixed").is_zero() {
        findings.push("G H is not zero".into());
    }
    findings
}

/// Algebraic privacy: `[F[k] | H]` has full rank for every message, so the
/// answer vector is uniform over the whole answer space whatever `k` is.
pub fn check_privacy_rank(scheme: &Scheme) -> bool {
    rank_findings(scheme).is_empty()
}

fn rank_findings(scheme: &Scheme) -> Vec<String> {
    let d_sigma = scheme.d_sigma();
    (1..=scheme.k())
        .filter(|&k| scheme.answer_map(k).rank() != d_sigma)
        .map(|k| format!("answer map [F[{k}] | H] is singular"))
        .collect()
}

/// Structural security: answers for message `k` are formed from `W_k` and
/// `Z` alone — every precoder row at a server outside the availability set
/// is zero, so no other message can leak into any answer.
pub fn check_security(scheme: &Scheme) -> bool {
    security_findings(scheme).is_empty()
}

fn security_findings(scheme: &Scheme) -> Vec<String> {
    let mut findings = Vec::new();
    for k in 1..=scheme.k() {
        let avail = scheme.availability(k);
        for n in 1..=scheme.n() {
            if avail.servers().contains(&n) {
                continue;
            }
            if scheme
                .server_rows(n)
                .any(|row| !scheme.f_matrix(k).row_is_zero(row))
            {
                findings.push(format!(
                    "server {n} answer reads message {k} without storing it"
                ));
            }
        }
    }
    findings
}

/// Randomness accounting: `eta = (D_sigma - L)/L` must equal `1/rate - 1`.
pub fn check_eta(scheme: &Scheme) -> bool {
    let one = frac(1, 1);
    scheme.eta() == one / scheme.rate() - one
}

/// Number of enumerable states, `p^{D_sigma}`, saturating on overflow.
pub fn state_space(scheme: &Scheme) -> u128 {
    let p = scheme.field().modulus() as u128;
    let mut states: u128 = 1;
    for _ in 0..scheme.d_sigma() {
        states = states.saturating_mul(p);
    }
    states
}

/// Exhaustive privacy: enumerate all `(W_k, Z)` pairs, tabulate the joint
/// distribution of (all answers, delivered value), and require the K
/// distributions to be identical as exact multisets. Skipped when the state
/// space exceeds the budget (or the packed tuple would not fit a machine
/// word); then the rank certificate is authoritative.
pub fn check_privacy_exhaustive(scheme: &Scheme, budget: u128) -> ExhaustiveOutcome {
    let states = state_space(scheme);
    if states > budget || key_space(scheme).is_none() {
        return ExhaustiveOutcome::Skipped { states };
    }
    let reference = joint_multiset(scheme, 1);
    for k in 2..=scheme.k() {
        let multiset = joint_multiset(scheme, k);
        if multiset != reference {
            let detail = first_discrepancy(scheme, &reference, &multiset);
            return ExhaustiveOutcome::Failed { k, detail };
        }
    }
    ExhaustiveOutcome::Passed
}

/// Distinct packed tuples possible, `p^(D_sigma + L)`, if it fits in a key.
fn key_space(scheme: &Scheme) -> Option<u64> {
    let p = scheme.field().modulus();
    let mut space: u64 = 1;
    for _ in 0..scheme.d_sigma() + scheme.l() {
        space = space.checked_mul(p)?;
    }
    Some(space)
}

/// The multiset of (answers, W_k) tuples over the whole state space, packed
/// base-p into a word each and sorted. The answer vector is maintained
/// incrementally: advancing one state digit adds one column of `[F[k] | H]`
/// (a wrap from p-1 to 0 is also +1 mod p), so no per-state matrix product
/// is needed.
fn joint_multiset(scheme: &Scheme, k: usize) -> Vec<u64> {
    let p = scheme.field().modulus();
    let l = scheme.l();
    let d_sigma = scheme.d_sigma();
    let b = scheme.answer_map(k);
    let columns: Vec<Vec<u64>> = (0..d_sigma)
        .map(|j| (0..d_sigma).map(|i| b.get(i, j).value()).collect())
        .collect();
    let mut keys = Vec::with_capacity(state_space(scheme) as usize);
    let mut state = vec![0u64; d_sigma]; // digits: W_k symbols, then Z symbols
    let mut answers = vec![0u64; d_sigma];
    'states: loop {
        let mut key: u64 = 0;
        for &a in &answers {
            key = key * p + a;
        }
        for &w in &state[..l] {
            key = key * p + w;
        }
        keys.push(key);
        for digit in 0..d_sigma {
            let column = &columns[digit];
            for i in 0..d_sigma {
                let sum = answers[i] + column[i];
                answers[i] = if sum >= p { sum - p } else { sum };
            }
            state[digit] += 1;
            if state[digit] < p {
                continue 'states;
            }
            state[digit] = 0;
        }
        break;
    }
    keys.sort_unstable();
    keys
}

fn first_discrepancy(scheme: &Scheme, reference: &[u64], multiset: &[u64]) -> String {
    let (mut i, mut j) = (0, 0);
    while i < reference.len() && j < multiset.len() {
        if reference[i] == multiset[j] {
            i += 1;
            j += 1;
        } else if reference[i] < multiset[j] {
            return format!("tuple {:?} is missing", unpack_key(scheme, reference[i]));
        } else {
            return format!(
                "tuple {:?} is overrepresented",
                unpack_key(scheme, multiset[j])
            );
        }
    }
    "distributions differ".into()
}

fn unpack_key(scheme: &Scheme, key: u64) -> Vec<u64> {
    let p = scheme.field().modulus();
    let len = scheme.d_sigma() + scheme.l();
    let mut digits = vec![0u64; len];
    let mut k = key;
    for d in digits.iter_mut().rev() {
        *d = k % p;
        k /= p;
    }
    digits
}

/// Empirical test of the uniformity-iff-full-rank equivalence: the rank
/// verdict must agree with the exhaustive verdict. Errors if the state
/// space exceeds the budget, since then only one oracle can run.
pub fn oracle_equivalence(scheme: &Scheme, budget: u128) -> Result<bool> {
    match check_privacy_exhaustive(scheme, budget) {
        ExhaustiveOutcome::Skipped { states } => Err(Error::BudgetExceeded {
            estimate: states,
            budget,
        }),
        outcome => Ok(check_privacy_rank(scheme) == matches!(outcome, ExhaustiveOutcome::Passed)),
    }
}

/// Run every check and assemble the report.
pub fn verify_scheme(scheme: &Scheme, budget: u128) -> VerificationReport {
    let mut details = correctness_findings(scheme);
    let correctness_ok = details.is_empty();
    let rank_details = rank_findings(scheme);
    let rank_privacy_ok = rank_details.is_empty();
    details.extend(rank_details);
    let security_details = security_findings(scheme);
    let security_ok = security_details.is_empty();
    details.extend(security_details);
    let eta_ok = check_eta(scheme);
    if !eta_ok {
        details.push("eta disagrees with 1/rate - 1".into());
    }
    let exhaustive_privacy = check_privacy_exhaustive(scheme, budget);
    if let ExhaustiveOutcome::Failed { k, detail } = &exhaustive_privacy {
        details.push(format!("exhaustive privacy fails at k={k}: {detail}"));
    }
    VerificationReport {
        correctness_ok,
        rank_privacy_ok,
        exhaustive_privacy,
        security_ok,
        eta_ok,
        details,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build_basic, build_full_rate, build_intermediate};
    use crate::reference;
    use crate::scheme::Scheme;

    fn all_small_schemes() -> Vec<Scheme> {
        vec![
            build_basic(3, 1).unwrap(),
            build_basic(4, 2).unwrap(),
            build_full_rate(3, 2).unwrap(),
            build_full_rate(4, 2).unwrap(),
            build_intermediate(5, 4, 3).unwrap(),
            build_intermediate(7, 3, 4).unwrap(),
            reference::basic_three_servers(),
            reference::cyclic_three_servers(),
        ]
    }

    #[test]
    fn builders_pass_all_checks() {
        for s in all_small_schemes() {
            let report = verify_scheme(&s, DEFAULT_STATE_BUDGET);
            assert!(
                report.all_ok(),
                "K={} M={} N={}: {:?}",
                s.k(),
                s.m(),
                s.n(),
                report.details
            );
            assert_eq!(report.exhaustive_privacy, ExhaustiveOutcome::Passed);
        }
    }

    #[test]
    fn perturbed_decoder_fails_correctness() {
        let s = build_full_rate(8, 3).unwrap();
        let mut doc = s.to_document();
        doc.g[0][0] = (doc.g[0][0] + 1) % s.field().modulus();
        let mutant = Scheme::from_document(&doc).unwrap();
        assert!(!check_correctness(&mutant));
        let report = verify_scheme(&mutant, 0);
        assert!(!report.correctness_ok);
        assert!(!report.details.is_empty());
    }

    #[test]
    fn zeroed_randomness_precoder_fails_rank() {
        let s = build_full_rate(3, 2).unwrap();
        let mut doc = s.to_document();
        for row in doc.h.iter_mut() {
            for v in row.iter_mut() {
                *v = 0;
            }
        }
        let mutant = Scheme::from_document(&doc).unwrap();
        assert!(!check_privacy_rank(&mutant));
    }

    #[test]
    fn full_rate_8_3_answer_maps_are_square_and_full() {
        let s = build_full_rate(8, 3).unwrap();
        for k in 1..=8 {
            let b = s.answer_map(k);
            assert_eq!((b.rows(), b.cols()), (8, 8));
            assert_eq!(b.rank(), 8);
        }
    }

    #[test]
    fn exhaustive_passes_on_reference_schemes() {
        // 2^3 states per message index
        let s = reference::basic_three_servers();
        assert_eq!(state_space(&s), 8);
        assert_eq!(check_privacy_exhaustive(&s, 10), ExhaustiveOutcome::Passed);
        // 5^3 states per message index
        let s = reference::cyclic_three_servers();
        assert_eq!(state_space(&s), 125);
        assert_eq!(
            check_privacy_exhaustive(&s, 1000),
            ExhaustiveOutcome::Passed
        );
    }

    #[test]
    fn exhaustive_skips_above_budget() {
        let s = build_full_rate(8, 3).unwrap();
        // 11^8 states exceed the default budget; the rank check stands in
        let states = state_space(&s);
        assert!(states > DEFAULT_STATE_BUDGET);
        assert_eq!(
            check_privacy_exhaustive(&s, DEFAULT_STATE_BUDGET),
            ExhaustiveOutcome::Skipped { states }
        );
        assert!(check_privacy_rank(&s));
    }

    #[test]
    fn answers_of_basic_scheme_are_three_uniform_bits() {
        let s = reference::basic_three_servers();
        let multiset = joint_multiset(&s, 1);
        // 8 states map to 8 distinct (answers, w) tuples, one each
        assert_eq!(multiset.len(), 8);
        let mut deduped = multiset.clone();
        deduped.dedup();
        assert_eq!(deduped.len(), 8);
    }

    #[test]
    fn mutated_precoder_fails_both_privacy_routes() {
        let s = reference::cyclic_three_servers();
        let p = s.field().modulus();
        // force the answer map for message 1 singular by scanning the entry value
        let base = s.to_document();
        let mut mutant = None;
        'search: for value in 0..p {
            if value == base.f[0][0][0] {
                continue;
            }
            let mut doc = base.clone();
            doc.f[0][0][0] = value;
            let candidate = Scheme::from_document(&doc).unwrap();
            if candidate.answer_map(1).rank() < candidate.d_sigma() {
                mutant = Some(candidate);
                break 'search;
            }
        }
        let mutant = mutant.expect("some entry value makes the map singular");
        assert!(!check_privacy_rank(&mutant));
        let outcome = check_privacy_exhaustive(&mutant, 1000);
        assert!(
            matches!(outcome, ExhaustiveOutcome::Failed { .. }),
            "{outcome:?}"
        );
        assert_eq!(oracle_equivalence(&mutant, 1000), Ok(true));
    }

    /// The enumeration checks the joint (answers, delivered value) law, not
    /// just answer marginals: perturbing H so that every answer map stays
    /// invertible keeps each index's answers uniform, yet shifts which
    /// message value sits behind them, and the check must catch that.
    #[test]
    fn exhaustive_checks_joint_not_marginal() {
        let s = reference::cyclic_three_servers();
        let mut doc = s.to_document();
        doc.h = vec![vec![1], vec![1], vec![1]];
        let mutant = Scheme::from_document(&doc).unwrap();
        assert!(
            check_privacy_rank(&mutant),
            "all answer maps remain invertible"
        );
        assert!(matches!(
            check_privacy_exhaustive(&mutant, 1000),
            ExhaustiveOutcome::Failed { .. }
        ));
    }

    #[test]
    fn oracle_equivalence_on_valid_schemes() {
        for s in all_small_schemes() {
            assert_eq!(oracle_equivalence(&s, DEFAULT_STATE_BUDGET), Ok(true));
        }
    }

    #[test]
    fn oracle_equivalence_needs_budget() {
        let s = build_full_rate(8, 3).unwrap();
        assert!(matches!(
            oracle_equivalence(&s, 100),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn degenerate_single_server_scheme_agrees_trivially() {
        // K = M: no randomness at all, rate 1
        let s = build_basic(2, 2).unwrap();
        assert_eq!(s.n(), 1);
        assert_eq!(s.d_sigma(), s.l());
        assert_eq!(check_privacy_exhaustive(&s, 100), ExhaustiveOutcome::Passed);
        assert_eq!(oracle_equivalence(&s, 100), Ok(true));
    }

    #[test]
    fn eta_examples() {
        assert!(check_eta(&build_basic(3, 1).unwrap()));
        assert!(check_eta(&build_full_rate(8, 3).unwrap()));
        let degenerate = build_basic(2, 2).unwrap();
        assert_eq!(degenerate.eta(), frac(0, 1));
        assert!(check_eta(&degenerate));
    }
}
