//! Two small hand-built reference schemes.
//!
//! Both are classics of the replicated-delivery setting and double as test
//! fixtures: the second one has a *non-systematic* decoder, a shape the
//! builders never emit, so it keeps the verifier and simulator honest about
//! not assuming `G = [I | V]`.

use crate::field::PrimeField;
use crate::matrix::MatrixFp;
use crate::scheme::Scheme;
use crate::storage::StorageDesign;

/// Three servers, one single-bit message each, shared randomness
/// `(z1, z2, z1+z2)` over F_2; rate 1/3. The answers for message 1 are
/// `(w + z1, z2, z1 + z2)` and the user always adds all three.
pub fn basic_three_servers() -> Scheme {
    let field = PrimeField::new(2).expect("2 is prime");
    let storage = StorageDesign::new(3, 1, vec![vec![1], vec![2], vec![3]]).expect("valid design");
    let g = MatrixFp::from_rows(field, &[vec![1, 1, 1]]).expect("valid grid");
    let h = MatrixFp::from_rows(field, &[vec![1, 0], vec![0, 1], vec![1, 1]]).expect("valid grid");
    let f = vec![
        MatrixFp::from_rows(field, &[vec![1], vec![0], vec![0]]).expect("valid grid"),
        MatrixFp::from_rows(field, &[vec![0], vec![1], vec![0]]).expect("valid grid"),
        MatrixFp::from_rows(field, &[vec![0], vec![0], vec![1]]).expect("valid grid"),
    ];
    Scheme::new(3, 1, field, 1, storage, vec![1, 1, 1], g, h, f).expect("reference scheme is valid")
}

/// Three servers storing `{W1,W2}, {W2,W3}, {W3,W1}` over F_5 with one
/// shared randomness symbol; two-symbol messages, rate 2/3. The decoder is
/// `A1+A2+A3` and `A1+2*A2+3*A3`, which is not in systematic form.
pub fn cyclic_three_servers() -> Scheme {
    let field = PrimeField::new(5).expect("5 is prime");
    let storage =
        StorageDesign::new(3, 2, vec![vec![1, 2], vec![2, 3], vec![1, 3]]).expect("valid design");
    let g = MatrixFp::from_rows(field, &[vec![1, 1, 1], vec![1, 2, 3]]).expect("valid grid");
    let h = MatrixFp::from_rows(field, &[vec![1], vec![3], vec![1]]).expect("valid grid");
    // coefficients: (3/2, -1/2), (-1/2, 1/2) etc., written as residues mod 5
    let f = vec![
        MatrixFp::from_rows(field, &[vec![4, 2], vec![0, 0], vec![2, 3]]).expect("valid grid"),
        MatrixFp::from_rows(field, &[vec![2, 4], vec![4, 1], vec![0, 0]]).expect("valid grid"),
        MatrixFp::from_rows(field, &[vec![0, 0], vec![3, 4], vec![3, 1]]).expect("valid grid"),
    ];
    Scheme::new(3, 2, field, 2, storage, vec![1, 1, 1], g, h, f).expect("reference scheme is valid")
}
