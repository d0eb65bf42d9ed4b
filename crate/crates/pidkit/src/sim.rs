//! End-to-end protocol execution: deal common randomness, form per-server
//! answers, decode at the user, account the download.
//!
//! Access control is structural: a server that does not store the delivered
//! message never receives it — `server_answer` takes the message operand as
//! an `Option` and refuses one it is not entitled to read. Answers are
//! therefore functions of the stored data and the shared randomness only.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::MatrixFp;
use crate::ratio::{frac, Frac};
use crate::scheme::Scheme;

/// One full delivery: the delivered index, inputs, per-server answers, and
/// the user's decode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub k: usize,
    pub seed: u64,
    pub messages: Vec<Vec<u64>>,
    pub z: Vec<u64>,
    pub answers: Vec<Vec<u64>>,
    pub decoded: Vec<u64>,
    pub download: usize,
}

impl Transcript {
    /// Zero-error check: the decode equals the delivered message.
    pub fn decode_ok(&self) -> bool {
        self.decoded == self.messages[self.k - 1]
    }

    /// Delivered symbols per downloaded symbol on this transcript.
    pub fn measured_rate(&self, scheme: &Scheme) -> Frac {
        frac(scheme.l() as i64, self.download as i64)
    }

    pub fn to_document(&self) -> TranscriptDoc {
        TranscriptDoc {
            k: self.k,
            seed: self.seed,
            z: self.z.clone(),
            answers: self.answers.clone(),
            decoded: self.decoded.clone(),
            download: self.download,
        }
    }
}

/// Wire form of a transcript (1-based index, canonical residues).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TranscriptDoc {
    pub k: usize,
    pub seed: u64,
    pub z: Vec<u64>,
    pub answers: Vec<Vec<u64>>,
    pub decoded: Vec<u64>,
    pub download: usize,
}

/// Deal the shared randomness: `D_sigma - L` i.i.d. uniform symbols from a
/// seeded deterministic generator, so transcripts replay exactly.
pub fn deal_randomness(scheme: &Scheme, seed: u64) -> Vec<u64> {
    let p = scheme.field().modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..scheme.d_sigma() - scheme.l())
        .map(|_| rng.gen_range(0..p))
        .collect()
}

/// Uniform random message list (K vectors of L symbols), on a generator
/// stream separate from the randomness dealer's.
pub fn random_messages(scheme: &Scheme, seed: u64) -> Vec<Vec<u64>> {
    let p = scheme.field().modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    (0..scheme.k())
        .map(|_| (0..scheme.l()).map(|_| rng.gen_range(0..p)).collect())
        .collect()
}

fn check_symbols(scheme: &Scheme, v: &[u64], expected_len: usize, label: &str) -> Result<()> {
    if v.len() != expected_len {
        return Err(Error::DimensionMismatch(format!(
            "{label} has {} symbols, expected {expected_len}",
            v.len()
        )));
    }
    let p = scheme.field().modulus();
    if let Some(&bad) = v.iter().find(|&&s| s >= p) {
        return Err(Error::InvalidParameters(format!(
            "{label} symbol {bad} is not a canonical residue mod {p}"
        )));
    }
    Ok(())
}

fn server_block(m: &MatrixFp, rows: std::ops::Range<usize>) -> MatrixFp {
    let rows_1based: Vec<usize> = rows.map(|r| r + 1).collect();
    m.select_rows(&rows_1based)
        .expect("row range fixed by construction")
}

/// Answer of server `n` when message `k` is delivered: the precoder row
/// block applied to the message (if this server stores it) plus the
/// randomness row block applied to `z`. A server outside the availability
/// set must be handed `None` — passing it the message is a storage
/// violation, as is any nonzero precoder row it would apply.
pub fn server_answer(
    scheme: &Scheme,
    n: usize,
    k: usize,
    w_k: Option<&[u64]>,
    z: &[u64],
) -> Result<Vec<u64>> {
    if n == 0 || n > scheme.n() {
        return Err(Error::IndexOutOfRange {
            index: n,
            bound: scheme.n(),
        });
    }
    if k == 0 || k > scheme.k() {
        return Err(Error::IndexOutOfRange {
            index: k,
            bound: scheme.k(),
        });
    }
    check_symbols(scheme, z, scheme.d_sigma() - scheme.l(), "z")?;
    let rows = scheme.server_rows(n);
    let h_block = server_block(scheme.h(), rows.clone());
    let mut answer = h_block.mul_vec(z)?;
    if scheme.storage().holds(n, k) {
        let w = w_k.ok_or_else(|| {
            Error::InvalidParameters(format!(
                "server {n} stores message {k} but received no symbols"
            ))
        })?;
        check_symbols(scheme, w, scheme.l(), "message")?;
        let f_block = server_block(scheme.f_matrix(k), rows);
        let field = scheme.field();
        for (acc, term) in answer.iter_mut().zip(f_block.mul_vec(w)?) {
            *acc = field.add_raw(*acc, term);
        }
    } else {
        if w_k.is_some() {
            return Err(Error::StorageViolation {
                server: n,
                message: k,
            });
        }
        let f_block = server_block(scheme.f_matrix(k), rows);
        if !f_block.is_zero() {
            return Err(Error::StorageViolation {
                server: n,
                message: k,
            });
        }
    }
    Ok(answer)
}

/// The user's fixed linear decode: `G` applied to the stacked answers. The
/// same mapping is used whatever message was delivered.
pub fn user_decode(scheme: &Scheme, answers: &[Vec<u64>]) -> Result<Vec<u64>> {
    if answers.len() != scheme.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} answers for {} servers",
            answers.len(),
            scheme.n()
        )));
    }
    let mut stacked = Vec::with_capacity(scheme.d_sigma());
    for (n, a) in answers.iter().enumerate() {
        check_symbols(scheme, a, scheme.d()[n], &format!("answer {}", n + 1))?;
        stacked.extend_from_slice(a);
    }
    scheme.g().mul_vec(&stacked)
}

/// Run one delivery of message `k` end to end and record the transcript.
pub fn run_delivery(
    scheme: &Scheme,
    k: usize,
    messages: &[Vec<u64>],
    seed: u64,
) -> Result<Transcript> {
    if k == 0 || k > scheme.k() {
        return Err(Error::IndexOutOfRange {
            index: k,
            bound: scheme.k(),
        });
    }
    if messages.len() != scheme.k() {
        return Err(Error::DimensionMismatch(format!(
            "{} messages for K={}",
            messages.len(),
            scheme.k()
        )));
    }
    for (i, w) in messages.iter().enumerate() {
        check_symbols(scheme, w, scheme.l(), &format!("message {}", i + 1))?;
    }
    let z = deal_randomness(scheme, seed);
    let mut answers = Vec::with_capacity(scheme.n());
    for n in 1..=scheme.n() {
        // each server gets only what it is entitled to read
        let w_k = if scheme.storage().holds(n, k) {
            Some(messages[k - 1].as_slice())
        } else {
            None
        };
        answers.push(server_answer(scheme, n, k, w_k, &z)?);
    }
    let decoded = user_decode(scheme, &answers)?;
    let download: usize = answers.iter().map(Vec::len).sum();
    Ok(Transcript {
        k,
        seed,
        messages: messages.to_vec(),
        z,
        answers,
        decoded,
        download,
    })
}
