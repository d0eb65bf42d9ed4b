//! Dense matrices over a prime field.
//!
//! Row/column selection takes 1-based index vectors at the API surface,
//! the same convention the scheme documents use; storage is row-major.
//! Selection order matters: `submatrix` keeps rows and columns in the
//! order given.

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFp {
    rows: usize,
    cols: usize,
    field: PrimeField,
    // canonical residues, row-major
    data: Vec<u64>,
}

impl MatrixFp {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        MatrixFp {
            rows,
            cols,
            field,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from rows of raw integers; entries are reduced mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            data.extend(r.iter().map(|&v| v % field.modulus()));
        }
        Ok(MatrixFp {
            rows: nrows,
            cols: ncols,
            field,
            data,
        })
    }

    /// Build from field elements; all must belong to `field`.
    pub fn from_elements(
        field: PrimeField,
        rows: usize,
        cols: usize,
        entries: &[FieldElement],
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let mut data = Vec::with_capacity(entries.len());
        for e in entries {
            if e.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.modulus(),
                    right: e.field().modulus(),
                });
            }
            data.push(e.value());
        }
        Ok(MatrixFp {
            rows,
            cols,
            field,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Entry at 0-based (i, j).
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        assert!(i < self.rows && j < self.cols);
        self.field.elem(self.data[i * self.cols + j])
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        assert!(i < self.rows && j < self.cols);
        assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v.value();
    }

    /// Rows as plain residue grids (for serialization).
    pub fn to_grid(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.data[i * self.cols..(i + 1) * self.cols]
            .iter()
            .all(|&v| v == 0)
    }

    /// Standard matrix product over F_p.
    pub fn mul(&self, other: &MatrixFp) -> Result<MatrixFp> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: other.field.modulus(),
            });
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = MatrixFp::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.data[i * other.cols + j];
                    out.data[i * other.cols + j] =
                        f.add_raw(cur, f.mul_raw(a, other.data[k * other.cols + j]));
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product on raw residues.
    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vector of {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let f = self.field;
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = 0u64;
            for (j, &x) in v.iter().enumerate() {
                acc = f.add_raw(
                    acc,
                    f.mul_raw(self.data[i * self.cols + j], x % f.modulus()),
                );
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Cauchy matrix with entry (i, j) = 1 / (alpha_i - beta_j).
    ///
    /// Every square submatrix of such a matrix is invertible, which is what
    /// the decoder and precoder constructions lean on.
    pub fn cauchy(alphas: &[FieldElement], betas: &[FieldElement]) -> Result<MatrixFp> {
        let field = alphas
            .first()
            .or_else(|| betas.first())
            .map(|e| e.field())
            .ok_or_else(|| Error::InvalidPoints("no points given".into()))?;
        for e in alphas.iter().chain(betas.iter()) {
            if e.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.modulus(),
                    right: e.field().modulus(),
                });
            }
        }
        for (i, a) in alphas.iter().enumerate() {
            for a2 in &alphas[i + 1..] {
                if a == a2 {
                    return Err(Error::InvalidPoints(format!(
                        "repeated alpha {}",
                        a.value()
                    )));
                }
            }
            for b in betas {
                if a == b {
                    return Err(Error::InvalidPoints(format!(
                        "alpha {} coincides with a beta",
                        a.value()
                    )));
                }
            }
        }
        for (j, b) in betas.iter().enumerate() {
            for b2 in &betas[j + 1..] {
                if b == b2 {
                    return Err(Error::InvalidPoints(format!("repeated beta {}", b.value())));
                }
            }
        }
        let mut m = MatrixFp::zeros(field, alphas.len(), betas.len());
        for (i, a) in alphas.iter().enumerate() {
            for (j, b) in betas.iter().enumerate() {
                let d = a.sub(b)?;
                m.set(i, j, d.inv()?);
            }
        }
        Ok(m)
    }

    /// Submatrix by 1-based index vectors, in the given order.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<MatrixFp> {
        for &r in row_idx {
            if r == 0 || r > self.rows {
                return Err(Error::IndexOutOfRange {
                    index: r,
                    bound: self.rows,
                });
            }
        }
        for &c in col_idx {
            if c == 0 || c > self.cols {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    bound: self.cols,
                });
            }
        }
        let mut out = MatrixFp::zeros(self.field, row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                out.data[i * col_idx.len() + j] = self.data[(r - 1) * self.cols + (c - 1)];
            }
        }
        Ok(out)
    }

    /// All rows, selected columns (1-based).
    pub fn select_cols(&self, col_idx: &[usize]) -> Result<MatrixFp> {
        let all_rows: Vec<usize> = (1..=self.rows).collect();
        self.submatrix(&all_rows, col_idx)
    }

    /// Selected rows (1-based), all columns.
    pub fn select_rows(&self, row_idx: &[usize]) -> Result<MatrixFp> {
        let all_cols: Vec<usize> = (1..=self.cols).collect();
        self.submatrix(row_idx, &all_cols)
    }

    /// Horizontal concatenation `[self | right]`.
    pub fn hstack(&self, right: &MatrixFp) -> Result<MatrixFp> {
        if self.field != right.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: right.field.modulus(),
            });
        }
        if self.rows != right.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack {}x{} with {}x{}",
                self.rows, self.cols, right.rows, right.cols
            )));
        }
        let mut out = MatrixFp::zeros(self.field, self.rows, self.cols + right.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * out.cols + j] = self.data[i * self.cols + j];
            }
            for j in 0..right.cols {
                out.data[i * out.cols + self.cols + j] = right.data[i * right.cols + j];
            }
        }
        Ok(out)
    }

    /// Vertical concatenation `[self; below]`.
    pub fn vstack(&self, below: &MatrixFp) -> Result<MatrixFp> {
        if self.field != below.field {
            return Err(Error::FieldMismatch {
                left: self.field.modulus(),
                right: below.field.modulus(),
            });
        }
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack {}x{} with {}x{}",
                self.rows, self.cols, below.rows, below.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(MatrixFp {
            rows: self.rows + below.rows,
            cols: self.cols,
            field: self.field,
            data,
        })
    }

    /// Inverse by Gauss-Jordan elimination with first-nonzero pivoting.
    pub fn inverse(&self) -> Result<MatrixFp> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let f = self.field;
        let mut a = self.data.clone();
        let mut inv = MatrixFp::identity(f, n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[r * n + col] != 0)
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                    inv.data.swap(col * n + j, pivot * n + j);
                }
            }
            let scale = f.inv_raw(a[col * n + col])?;
            for j in 0..n {
                a[col * n + j] = f.mul_raw(a[col * n + j], scale);
                inv.data[col * n + j] = f.mul_raw(inv.data[col * n + j], scale);
            }
            for r in 0..n {
                if r == col || a[r * n + col] == 0 {
                    continue;
                }
                let factor = a[r * n + col];
                for j in 0..n {
                    let sub = f.mul_raw(factor, a[col * n + j]);
                    a[r * n + j] = f.sub_raw(a[r * n + j], sub);
                    let sub = f.mul_raw(factor, inv.data[col * n + j]);
                    inv.data[r * n + j] = f.sub_raw(inv.data[r * n + j], sub);
                }
            }
        }
        Ok(inv)
    }

    /// Row rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let f = self.field;
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            if pivot != rank {
                for j in 0..cols {
                    a.swap(rank * cols + j, pivot * cols + j);
                }
            }
            let scale = f.inv_raw(a[rank * cols + col]).expect("pivot nonzero");
            for j in 0..cols {
                a[rank * cols + j] = f.mul_raw(a[rank * cols + j], scale);
            }
            for r in 0..rows {
                if r == rank || a[r * cols + col] == 0 {
                    continue;
                }
                let factor = a[r * cols + col];
                for j in 0..cols {
                    let sub = f.mul_raw(factor, a[rank * cols + j]);
                    a[r * cols + j] = f.sub_raw(a[r * cols + j], sub);
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Right null-space complement for a decoder in systematic form.
    ///
    /// For `g = [I_L | V]` of shape L x D, returns `H = [V; -I_{D-L}]`
    /// (shape D x (D-L)), which satisfies `g * H = 0` and has full column
    /// rank. Rejects matrices not in systematic form.
    pub fn solve_h(&self) -> Result<MatrixFp> {
        let l = self.rows;
        let d = self.cols;
        if d < l {
            return Err(Error::UnsupportedForm(format!(
                "{}x{} is wider than tall",
                l, d
            )));
        }
        for i in 0..l {
            for j in 0..l {
                let want = if i == j { 1 } else { 0 };
                if self.data[i * d + j] != want {
                    return Err(Error::UnsupportedForm(
                        "leading block is not the identity".into(),
                    ));
                }
            }
        }
        let f = self.field;
        let mut h = MatrixFp::zeros(f, d, d - l);
        for i in 0..l {
            for j in 0..d - l {
                h.data[i * (d - l) + j] = self.data[i * d + l + j];
            }
        }
        for j in 0..d - l {
            h.data[(l + j) * (d - l) + j] = f.neg_raw(1);
        }
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m(p: u64, rows: &[Vec<u64>]) -> MatrixFp {
        MatrixFp::from_rows(f(p), rows).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let x = m(5, &[vec![1, 2, 3], vec![4, 0, 1], vec![2, 2, 2]]);
        let i3 = MatrixFp::identity(f(5), 3);
        assert_eq!(i3.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&i3).unwrap(), x);
    }

    #[test]
    fn hand_multiplied_product() {
        let a = m(5, &[vec![2, 0], vec![0, 3]]);
        let b = m(5, &[vec![3, 0], vec![0, 2]]);
        assert_eq!(a.mul(&b).unwrap(), MatrixFp::identity(f(5), 2));
    }

    #[test]
    fn zero_annihilates() {
        let x = m(7, &[vec![1, 2], vec![3, 4]]);
        let z = MatrixFp::zeros(f(7), 2, 2);
        assert!(z.mul(&x).unwrap().is_zero());
    }

    #[test]
    fn mul_shape_mismatch() {
        let a = m(5, &[vec![1, 2, 3]]);
        let b = m(5, &[vec![1, 2]]);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch(_))));
        let c = MatrixFp::from_rows(f(7), &[vec![1], vec![2], vec![3]]).unwrap();
        assert!(matches!(a.mul(&c), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn cauchy_single_entry() {
        let f5 = f(5);
        let v = MatrixFp::cauchy(&[f5.elem(0)], &[f5.elem(1)]).unwrap();
        // 1/(0-1) = 1/4 = 4 mod 5
        assert_eq!(v.get(0, 0).value(), 4);
        assert_eq!(v.rank(), 1);
    }

    #[test]
    fn cauchy_rejects_coincident_points() {
        let f5 = f(5);
        assert!(matches!(
            MatrixFp::cauchy(&[f5.elem(0), f5.elem(0)], &[f5.elem(1)]),
            Err(Error::InvalidPoints(_))
        ));
        assert!(matches!(
            MatrixFp::cauchy(&[f5.elem(0)], &[f5.elem(0)]),
            Err(Error::InvalidPoints(_))
        ));
    }

    #[test]
    fn cauchy_3x5_all_3x3_minors_nonsingular() {
        let f11 = f(11);
        let (alphas, betas) = f11.distinct_points(3, 5).unwrap();
        let v = MatrixFp::cauchy(&alphas, &betas).unwrap();
        let cols: Vec<usize> = (1..=5).collect();
        for c0 in 0..5 {
            for c1 in c0 + 1..5 {
                for c2 in c1 + 1..5 {
                    let sel = [cols[c0], cols[c1], cols[c2]];
                    let minor = v.submatrix(&[1, 2, 3], &sel).unwrap();
                    assert_eq!(minor.rank(), 3);
                }
            }
        }
    }

    /// Exhaustive minor oracle: every square submatrix of a Cauchy matrix up
    /// to 5x5 has rank equal to its size.
    #[test]
    fn cauchy_all_square_minors_full_rank() {
        let f11 = f(11);
        let (alphas, betas) = f11.distinct_points(5, 5).unwrap();
        let v = MatrixFp::cauchy(&alphas, &betas).unwrap();
        let subsets = |n: usize, s: usize| -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut idx: Vec<usize> = (1..=s).collect();
            loop {
                out.push(idx.clone());
                let mut i = s;
                loop {
                    if i == 0 {
                        return out;
                    }
                    i -= 1;
                    if idx[i] < n - (s - 1 - i) {
                        idx[i] += 1;
                        for j in i + 1..s {
                            idx[j] = idx[j - 1] + 1;
                        }
                        break;
                    }
                }
            }
        };
        for size in 1..=5 {
            for rows in subsets(5, size) {
                for cols in subsets(5, size) {
                    let minor = v.submatrix(&rows, &cols).unwrap();
                    assert_eq!(minor.rank(), size, "rows {rows:?} cols {cols:?}");
                }
            }
        }
    }

    #[test]
    fn submatrix_full_selection_is_identity_op() {
        let x = m(7, &[vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(x.submatrix(&[1, 2], &[1, 2, 3]).unwrap(), x);
        assert_eq!(x.submatrix(&[2], &[3]).unwrap(), m(7, &[vec![6]]));
    }

    #[test]
    fn submatrix_respects_order() {
        let x = m(7, &[vec![1, 2, 3], vec![4, 5, 6]]);
        let permuted = x.submatrix(&[2, 1], &[3, 1]).unwrap();
        assert_eq!(permuted, m(7, &[vec![6, 4], vec![3, 1]]));
    }

    #[test]
    fn submatrix_out_of_range() {
        let x = m(7, &[vec![1, 2], vec![3, 4]]);
        assert!(matches!(
            x.submatrix(&[0], &[1]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            x.submatrix(&[1], &[3]),
            Err(Error::IndexOutOfRange { index: 3, bound: 2 })
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            MatrixFp::identity(f(7), 4).inverse().unwrap(),
            MatrixFp::identity(f(7), 4)
        );
        assert_eq!(m(5, &[vec![2]]).inverse().unwrap(), m(5, &[vec![3]]));
        assert_eq!(
            m(5, &[vec![1, 1], vec![2, 2]]).inverse(),
            Err(Error::SingularMatrix)
        );
    }

    fn random_matrix(rng: &mut StdRng, p: u64, rows: usize, cols: usize) -> MatrixFp {
        let grid: Vec<Vec<u64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(0..p)).collect())
            .collect();
        MatrixFp::from_rows(f(p), &grid).unwrap()
    }

    #[test]
    fn inverse_round_trip_random() {
        let mut rng = StdRng::seed_from_u64(7);
        for &p in &[5u64, 7, 11] {
            let fp = f(p);
            let mut done = 0;
            while done < 1000 {
                let n = rng.gen_range(1..=4);
                let x = random_matrix(&mut rng, p, n, n);
                match x.inverse() {
                    Ok(inv) => {
                        assert_eq!(inv.mul(&x).unwrap(), MatrixFp::identity(fp, n));
                        assert_eq!(x.mul(&inv).unwrap(), MatrixFp::identity(fp, n));
                        done += 1;
                    }
                    Err(Error::SingularMatrix) => {
                        assert!(x.rank() < n);
                    }
                    Err(e) => panic!("unexpected error {e}"),
                }
            }
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(MatrixFp::identity(f(5), 4).rank(), 4);
        assert_eq!(MatrixFp::zeros(f(5), 3, 4).rank(), 0);
        assert_eq!(m(5, &[vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn solve_h_degenerate_and_shape() {
        let g = MatrixFp::identity(f(5), 3);
        let h = g.solve_h().unwrap();
        assert_eq!((h.rows(), h.cols()), (3, 0));

        let f11 = f(11);
        let (alphas, betas) = f11.distinct_points(3, 5).unwrap();
        let v = MatrixFp::cauchy(&alphas, &betas).unwrap();
        let g = MatrixFp::identity(f11, 3).hstack(&v).unwrap();
        let h = g.solve_h().unwrap();
        assert_eq!((h.rows(), h.cols()), (8, 5));
        assert!(g.mul(&h).unwrap().is_zero());
        assert_eq!(h.rank(), 5);
    }

    #[test]
    fn solve_h_rejects_non_systematic() {
        let g = m(5, &[vec![1, 1, 1], vec![1, 2, 3]]);
        assert!(matches!(g.solve_h(), Err(Error::UnsupportedForm(_))));
    }

    #[test]
    fn solve_h_property_random_systematic() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let p = [5u64, 7, 11][rng.gen_range(0..3)];
            let fp = f(p);
            let l = rng.gen_range(1..=3);
            let extra = rng.gen_range(0..=4);
            let v = random_matrix(&mut rng, p, l, extra);
            let g = MatrixFp::identity(fp, l).hstack(&v).unwrap();
            let h = g.solve_h().unwrap();
            assert!(g.mul(&h).unwrap().is_zero());
            assert_eq!(h.rank(), extra);
        }
    }
}
