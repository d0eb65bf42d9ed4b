//! The three scheme builders: sequential one-symbol, full-rate gcd-block,
//! and the intermediate-regime table construction.
//!
//! All three emit the unified `Scheme` shape. The decoder of the two
//! Cauchy-based builders is systematic, `G = [I_L | V]`, so the randomness
//! precoder is always `H = [V; -I]` and the message precoders are inverses
//! of column selections of `G`.

use num_integer::Integer;

use crate::capacity::{min_servers, threshold_n};
use crate::error::{Error, Result};
use crate::field::{smallest_prime_at_least, PrimeField};
use crate::matrix::MatrixFp;
use crate::scheme::Scheme;
use crate::storage::StorageDesign;

fn validate_k_m(k: usize, m: usize) -> Result<()> {
    if k == 0 || m == 0 || m > k {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= M <= K, got K={k}, M={m}"
        )));
    }
    Ok(())
}

/// One-symbol scheme over F_2 with sequential storage and `N = ceil(K/M)`
/// servers. Server `i < N` answers `z_i` plus the desired symbol if it
/// stores it; the last server answers `-(z_1 + ... + z_{N-1})` plus the
/// desired symbol if it stores it, so summing all answers decodes.
pub fn build_basic(k: usize, m: usize) -> Result<Scheme> {
    validate_k_m(k, m)?;
    let n = min_servers(k, m);
    let field = PrimeField::new(2)?;
    let sets: Vec<Vec<usize>> = (0..n)
        .map(|i| (i * m + 1..=((i + 1) * m).min(k)).collect())
        .collect();
    let storage = StorageDesign::new(k, m, sets)?;
    let d = vec![1usize; n];

    // decoder sums the answers
    let g = MatrixFp::from_rows(field, &[vec![1; n]])?;
    // randomness rows: z_i for the first N-1 servers, -(z_1+...+z_{N-1}) last
    let mut h = MatrixFp::zeros(field, n, n - 1);
    for i in 0..n - 1 {
        h.set(i, i, field.one());
    }
    for j in 0..n - 1 {
        h.set(n - 1, j, field.one().neg());
    }

    let f = assemble_precoders(field, 1, &storage, &d, &g)?;
    let scheme = Scheme::new(k, m, field, 1, storage, d, g, h, f)?;
    verify_full_rank(&scheme)?;
    Ok(scheme)
}

/// Full-rate scheme: groups messages into gcd(K, M)-sized blocks, stores the
/// first blocks cyclically on single-symbol servers and the rest
/// sequentially on L-symbol servers, and decodes with a systematic Cauchy
/// matrix. Achieves rate M/K with `N = threshold_n(K, M)` servers.
pub fn build_full_rate(k: usize, m: usize) -> Result<Scheme> {
    validate_k_m(k, m)?;
    let g_cd = k.gcd(&m);
    let kbar = k / g_cd;
    let l = m / g_cd;
    let q = k / m;
    let n = threshold_n(k, m)?;
    let n2 = q - 1;
    let n1 = n - n2;
    debug_assert_eq!(n1 + n2 * l, kbar);

    // block b (1-based) holds messages (b-1)g+1 ..= b*g
    let block_messages = |b: usize| -> Vec<usize> { ((b - 1) * g_cd + 1..=b * g_cd).collect() };
    let mut sets: Vec<Vec<usize>> = Vec::with_capacity(n);
    for i in 1..=n1 {
        let mut set = Vec::with_capacity(m);
        for t in 0..l {
            let block = (i - 1 + t) % n1 + 1;
            set.extend(block_messages(block));
        }
        sets.push(set);
    }
    for j in 1..=n2 {
        let mut set = Vec::with_capacity(m);
        for b in n1 + (j - 1) * l + 1..=n1 + j * l {
            set.extend(block_messages(b));
        }
        sets.push(set);
    }
    let storage = StorageDesign::new(k, m, sets)?;

    let mut d = vec![1usize; n1];
    d.extend(std::iter::repeat_n(l, n2));

    let field = PrimeField::new(smallest_prime_at_least(kbar.max(2) as u64))?;
    build_systematic(k, m, field, l, storage, d)
}

/// Intermediate-regime scheme for `K/M` non-integral and
/// `ceil(K/M) <= N <= threshold_n(K, M)`: the first `K - (floor(K/M)-1)M`
/// messages are replicated `l` times each into an `N_1 x M` table filled
/// column-major, so each lands on `l` cyclically consecutive one-symbol
/// servers; the remaining messages go sequentially to `floor(K/M)-1`
/// L-symbol servers. At the regime boundaries this reproduces the
/// one-symbol and full-rate rates.
pub fn build_intermediate(k: usize, m: usize, n: usize) -> Result<Scheme> {
    validate_k_m(k, m)?;
    if k.is_multiple_of(m) {
        return Err(Error::RegimeViolation(format!(
            "K/M = {} is an integer; use the full-rate construction",
            k / m
        )));
    }
    let floor_servers = min_servers(k, m);
    let threshold = threshold_n(k, m)?;
    if n < floor_servers || n > threshold {
        return Err(Error::RegimeViolation(format!(
            "N={n} outside [{floor_servers}, {threshold}] for K={k}, M={m}"
        )));
    }
    let q = k / m;
    let n2 = q - 1;
    let n1 = n - n2;
    let k2 = n2 * m;
    let k1 = k - k2;
    let l = n1 * m / k1;
    debug_assert!(l >= 1 && l < n1);

    // pour K_1 * l message copies into an N_1 x M table, column-major
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); n];
    for msg in 1..=k1 {
        for copy in 0..l {
            let position = (msg - 1) * l + copy; // 0-based
            let server = position % n1; // 0-based row
            sets[server].push(msg);
        }
    }
    for j in 1..=n2 {
        sets[n1 + j - 1] = (k1 + (j - 1) * m + 1..=k1 + j * m).collect();
    }
    let storage = StorageDesign::new(k, m, sets)?;

    let mut d = vec![1usize; n1];
    d.extend(std::iter::repeat_n(l, n2));
    let d_sigma = n1 + l * n2;

    let field = PrimeField::new(smallest_prime_at_least(d_sigma.max(2) as u64))?;
    build_systematic(k, m, field, l, storage, d)
}

/// Shared tail of the two Cauchy builders: `G = [I_L | V]`, `H` from the
/// right null space, precoders from inverted column selections, then a
/// per-instance full-rank verification.
fn build_systematic(
    k: usize,
    m: usize,
    field: PrimeField,
    l: usize,
    storage: StorageDesign,
    d: Vec<usize>,
) -> Result<Scheme> {
    let d_sigma: usize = d.iter().sum();
    let (alphas, betas) = field.distinct_points(l, d_sigma - l)?;
    let v = MatrixFp::cauchy(&alphas, &betas)?;
    let g = MatrixFp::identity(field, l).hstack(&v)?;
    let h = g.solve_h()?;
    let f = assemble_precoders(field, l, &storage, &d, &g)?;
    let scheme = Scheme::new(k, m, field, l, storage, d, g, h, f)?;
    verify_full_rank(&scheme)?;
    Ok(scheme)
}

/// For each message, invert the decoder columns owned by the servers that
/// store it. The selected rows of the precoder are that inverse; all other
/// rows stay zero, which is exactly the storage constraint.
fn assemble_precoders(
    field: PrimeField,
    l: usize,
    storage: &StorageDesign,
    d: &[usize],
    g: &MatrixFp,
) -> Result<Vec<MatrixFp>> {
    let d_sigma: usize = d.iter().sum();
    let offsets: Vec<usize> = d
        .iter()
        .scan(0usize, |acc, &len| {
            let start = *acc;
            *acc += len;
            Some(start)
        })
        .collect();
    let mut precoders = Vec::with_capacity(storage.message_count());
    for msg in 1..=storage.message_count() {
        let avail = storage.availability(msg);
        let cols: Vec<usize> = avail
            .servers()
            .iter()
            .flat_map(|&srv| {
                let start = offsets[srv - 1];
                (start + 1..=start + d[srv - 1]).collect::<Vec<_>>()
            })
            .collect();
        if cols.len() != l {
            return Err(Error::ConstructionFailure(format!(
                "message {msg} is served by {} answer symbols, expected {l}",
                cols.len()
            )));
        }
        let sub = g.select_cols(&cols)?.inverse().map_err(|_| {
            Error::ConstructionFailure(format!(
                "decoder columns {cols:?} for message {msg} are singular"
            ))
        })?;
        let mut f = MatrixFp::zeros(field, d_sigma, l);
        for (t, &col) in cols.iter().enumerate() {
            for j in 0..l {
                f.set(col - 1, j, sub.get(t, j));
            }
        }
        precoders.push(f);
    }
    Ok(precoders)
}

/// Per-instance check that every answer map `[F[k] | H]` is invertible.
/// The Cauchy-minor argument guarantees this for the builders here, but the
/// builders still verify each instance and refuse to emit a scheme whose
/// privacy would rest on an unchecked claim.
fn verify_full_rank(scheme: &Scheme) -> Result<()> {
    let d_sigma = scheme.d_sigma();
    for msg in 1..=scheme.k() {
        let b = scheme.answer_map(msg);
        if b.rank() != d_sigma {
            return Err(Error::ConstructionFailure(format!(
                "answer map for message {msg} is singular"
            )));
        }
    }
    Ok(())
}
