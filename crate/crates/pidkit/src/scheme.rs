//! The unified private-delivery scheme object and its document format.
//!
//! A `Scheme` bundles everything a deployment needs: the storage design, the
//! decoder `G`, the randomness precoder `H`, one message precoder `F`
//! per message, and the per-server answer sizes `D`. All three builders emit
//! this same shape, so the verifier and simulator have a single code path.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::MatrixFp;
use crate::ratio::{frac, Frac};
use crate::storage::{AvailabilitySet, StorageDesign};

/// A complete linear PID code.
///
/// Invariants (checked at construction and again on deserialization):
/// - `sum(D) = D_sigma` equals the rows of `H` and the columns of `G`;
/// - rows of `F[k]` for servers not storing message `k` are all zero;
/// - `rate = L / D_sigma` and `eta = (D_sigma - L) / L`, exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Scheme {
    k: usize,
    m: usize,
    n: usize,
    field: PrimeField,
    l: usize,
    storage: StorageDesign,
    d: Vec<usize>,
    g: MatrixFp,
    h: MatrixFp,
    f: Vec<MatrixFp>,
    rate: Frac,
    eta: Frac,
}

impl Scheme {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        k: usize,
        m: usize,
        field: PrimeField,
        l: usize,
        storage: StorageDesign,
        d: Vec<usize>,
        g: MatrixFp,
        h: MatrixFp,
        f: Vec<MatrixFp>,
    ) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidScheme("K and L must be positive".into()));
        }
        if m == 0 || m > k {
            return Err(Error::InvalidScheme(format!("M={m} outside 1..={k}")));
        }
        if storage.message_count() != k || storage.capacity() != m {
            return Err(Error::InvalidScheme(
                "storage design disagrees with K or M".into(),
            ));
        }
        let n = storage.server_count();
        if d.len() != n {
            return Err(Error::InvalidScheme(format!(
                "{} answer sizes for {n} servers",
                d.len()
            )));
        }
        let d_sigma: usize = d.iter().sum();
        if d_sigma < l {
            return Err(Error::InvalidScheme(format!(
                "total download {d_sigma} smaller than message length {l}"
            )));
        }
        if g.rows() != l || g.cols() != d_sigma {
            return Err(Error::InvalidScheme(format!(
                "G is {}x{}, expected {l}x{d_sigma}",
                g.rows(),
                g.cols()
            )));
        }
        if h.rows() != d_sigma || h.cols() != d_sigma - l {
            return Err(Error::InvalidScheme(format!(
                "H is {}x{}, expected {d_sigma}x{}",
                h.rows(),
                h.cols(),
                d_sigma - l
            )));
        }
        if f.len() != k {
            return Err(Error::InvalidScheme(format!(
                "{} precoders for {k} messages",
                f.len()
            )));
        }
        for (matrix, label) in f.iter().zip(1..) {
            if matrix.rows() != d_sigma || matrix.cols() != l {
                return Err(Error::InvalidScheme(format!(
                    "F[{label}] is {}x{}, expected {d_sigma}x{l}",
                    matrix.rows(),
                    matrix.cols()
                )));
            }
        }
        for matrix in f.iter().chain([&g, &h]) {
            if matrix.field() != field {
                return Err(Error::InvalidScheme(
                    "matrix field disagrees with scheme field".into(),
                ));
            }
        }
        let rate = frac(l as i64, d_sigma as i64);
        let eta = frac((d_sigma - l) as i64, l as i64);
        let scheme = Scheme {
            k,
            m,
            n,
            field,
            l,
            storage,
            d,
            g,
            h,
            f,
            rate,
            eta,
        };
        scheme.check_storage_zero_pattern()?;
        Ok(scheme)
    }

    /// Storage constraint: a server that does not hold message `j` gets an
    /// all-zero precoder block, so its answer never touches that message.
    fn check_storage_zero_pattern(&self) -> Result<()> {
        for j in 1..=self.k {
            let avail = self.storage.availability(j);
            for n in 1..=self.n {
                if avail.servers().contains(&n) {
                    continue;
                }
                let block = &self.f[j - 1];
                for row in self.server_rows(n) {
                    if !block.row_is_zero(row) {
                        return Err(Error::InvalidScheme(format!(
                            "F[{j}] has a nonzero row for server {n}, which does not store message {j}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn storage(&self) -> &StorageDesign {
        &self.storage
    }

    pub fn d(&self) -> &[usize] {
        &self.d
    }

    pub fn d_sigma(&self) -> usize {
        self.d.iter().sum()
    }

    pub fn g(&self) -> &MatrixFp {
        &self.g
    }

    pub fn h(&self) -> &MatrixFp {
        &self.h
    }

    /// Message precoder for message `j` (1-based).
    pub fn f_matrix(&self, j: usize) -> &MatrixFp {
        &self.f[j - 1]
    }

    pub fn rate(&self) -> Frac {
        self.rate
    }

    pub fn eta(&self) -> Frac {
        self.eta
    }

    pub fn availability(&self, j: usize) -> AvailabilitySet {
        self.storage.availability(j)
    }

    /// 0-based rows of the stacked answer vector owned by server `n` (1-based).
    pub fn server_rows(&self, n: usize) -> std::ops::Range<usize> {
        let offset: usize = self.d[..n - 1].iter().sum();
        offset..offset + self.d[n - 1]
    }

    /// 1-based column indices of `G` (equivalently rows of `H`/`F`) for server `n`.
    pub fn server_cols(&self, n: usize) -> Vec<usize> {
        self.server_rows(n).map(|r| r + 1).collect()
    }

    /// The answer-map matrix `[F[j] | H]`, square of side `D_sigma`.
    pub fn answer_map(&self, j: usize) -> MatrixFp {
        self.f[j - 1]
            .hstack(&self.h)
            .expect("dimensions fixed by construction")
    }

    pub fn to_document(&self) -> SchemeDoc {
        SchemeDoc {
            version: SCHEME_DOC_VERSION,
            k: self.k,
            m: self.m,
            n: self.n,
            p: self.field.modulus(),
            l: self.l,
            storage: self.storage.sets().to_vec(),
            d: self.d.clone(),
            g: self.g.to_grid(),
            h: self.h.to_grid(),
            f: self.f.iter().map(|m| m.to_grid()).collect(),
            rate: self.rate,
            eta: self.eta,
        }
    }

    pub fn from_document(doc: &SchemeDoc) -> Result<Self> {
        if doc.version != SCHEME_DOC_VERSION {
            return Err(Error::InvalidScheme(format!(
                "unsupported document version {}",
                doc.version
            )));
        }
        let field = PrimeField::new(doc.p)?;
        let storage = StorageDesign::new(doc.k, doc.m, doc.storage.clone())?;
        let g = grid_to_matrix(field, &doc.g, "G")?;
        let h = grid_to_matrix(field, &doc.h, "H")?;
        if doc.f.len() != doc.k {
            return Err(Error::InvalidScheme(format!(
                "F has {} entries for K={}",
                doc.f.len(),
                doc.k
            )));
        }
        let f = doc
            .f
            .iter()
            .enumerate()
            .map(|(i, grid)| grid_to_matrix(field, grid, &format!("F[{}]", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        if doc.n != storage.server_count() {
            return Err(Error::InvalidScheme(format!(
                "N={} but storage lists {} servers",
                doc.n,
                storage.server_count()
            )));
        }
        let scheme = Scheme::new(doc.k, doc.m, field, doc.l, storage, doc.d.clone(), g, h, f)?;
        if scheme.rate != doc.rate || scheme.eta != doc.eta {
            return Err(Error::InvalidScheme(
                "declared rate/eta disagree with L and D".into(),
            ));
        }
        Ok(scheme)
    }

    /// Canonical JSON rendering; byte-stable for golden tests.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_document()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SchemeDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Scheme::from_document(&doc)
    }
}

fn grid_to_matrix(field: PrimeField, grid: &[Vec<u64>], label: &str) -> Result<MatrixFp> {
    for row in grid {
        for &v in row {
            if v >= field.modulus() {
                return Err(Error::InvalidScheme(format!(
                    "{label} entry {v} is not a canonical residue mod {}",
                    field.modulus()
                )));
            }
        }
    }
    MatrixFp::from_rows(field, grid).map_err(|e| Error::InvalidScheme(format!("{label}: {e}")))
}

pub const SCHEME_DOC_VERSION: u32 = 1;

/// Wire form of a scheme. Indices are 1-based; matrix grids are row-major
/// canonical residues; fractions are `{num, den}` objects.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeDoc {
    pub version: u32,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub p: u64,
    #[serde(rename = "L")]
    pub l: usize,
    pub storage: Vec<Vec<usize>>,
    #[serde(rename = "D")]
    pub d: Vec<usize>,
    #[serde(rename = "G")]
    pub g: Vec<Vec<u64>>,
    #[serde(rename = "H")]
    pub h: Vec<Vec<u64>>,
    #[serde(rename = "F", with = "f_map")]
    pub f: Vec<Vec<Vec<u64>>>,
    #[serde(with = "crate::ratio")]
    pub rate: Frac,
    #[serde(with = "crate::ratio")]
    pub eta: Frac,
}

/// `F` serializes as a JSON object keyed by the 1-based message index, with
/// keys emitted in numeric order so documents are byte-stable.
mod f_map {
    use super::*;
    use serde::de::Error as _;
    use serde::ser::SerializeMap;

    pub fn serialize<S: serde::Serializer>(
        f: &[Vec<Vec<u64>>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(f.len()))?;
        for (i, grid) in f.iter().enumerate() {
            map.serialize_entry(&(i + 1).to_string(), grid)?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Vec<u64>>>, D::Error> {
        let raw: BTreeMap<String, Vec<Vec<u64>>> = BTreeMap::deserialize(d)?;
        let count = raw.len();
        let mut out: Vec<Option<Vec<Vec<u64>>>> = vec![None; count];
        for (key, grid) in raw {
            let idx: usize = key
                .parse()
                .map_err(|_| D::Error::custom(format!("F key {key:?} is not an integer")))?;
            if idx == 0 || idx > count {
                return Err(D::Error::custom(format!("F key {idx} outside 1..={count}")));
            }
            out[idx - 1] = Some(grid);
        }
        out.into_iter()
            .enumerate()
            .map(|(i, g)| g.ok_or_else(|| D::Error::custom(format!("F is missing key {}", i + 1))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::build_basic;

    #[test]
    fn document_round_trip_is_identity() {
        let scheme = build_basic(3, 1).unwrap();
        let json = scheme.to_json();
        let back = Scheme::from_json(&json).unwrap();
        assert_eq!(back, scheme);
        // byte-stable: re-serialization reproduces the exact document
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn document_with_download_mismatch_rejected() {
        let scheme = build_basic(3, 1).unwrap();
        let mut doc = scheme.to_document();
        doc.d = vec![1, 1, 2];
        assert!(matches!(
            Scheme::from_document(&doc),
            Err(Error::InvalidScheme(_))
        ));
    }

    #[test]
    fn document_with_non_prime_modulus_rejected() {
        let scheme = build_basic(3, 1).unwrap();
        let mut doc = scheme.to_document();
        doc.p = 6;
        assert_eq!(Scheme::from_document(&doc), Err(Error::NotPrime(6)));
    }

    #[test]
    fn document_with_wrong_rate_rejected() {
        let scheme = build_basic(3, 1).unwrap();
        let mut doc = scheme.to_document();
        doc.rate = frac(1, 2);
        assert!(matches!(
            Scheme::from_document(&doc),
            Err(Error::InvalidScheme(_))
        ));
    }

    #[test]
    fn document_with_non_canonical_entry_rejected() {
        let scheme = build_basic(3, 1).unwrap();
        let mut doc = scheme.to_document();
        doc.g[0][0] = 2; // p = 2, so residues are 0 and 1
        assert!(matches!(
            Scheme::from_document(&doc),
            Err(Error::InvalidScheme(_))
        ));
    }

    #[test]
    fn malformed_json_reports_location() {
        let err = Scheme::from_json("{\"version\": 1,").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("line"), "no location in {msg}"),
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn nonzero_row_outside_availability_rejected() {
        let scheme = build_basic(3, 1).unwrap();
        let mut doc = scheme.to_document();
        // message 1 lives only on server 1; poke its row for server 2
        doc.f[0][1][0] = 1;
        let err = Scheme::from_document(&doc).unwrap_err();
        assert!(matches!(err, Error::InvalidScheme(_)));
    }
}
