//! Exact arithmetic in prime fields F_p.
//!
//! Every symbol in the toolkit is a canonical residue in `[0, p-1]`. The
//! field is the substrate for the coding matrices, so all operations here
//! are exact; there is no floating point anywhere downstream either.

use crate::error::{Error, Result};

/// A prime field F_p, identified by its modulus.
///
/// Primality is verified eagerly at construction (trial division; moduli at
/// desk scale stay below 10^4), so a `PrimeField` value always denotes an
/// actual field, never a ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Canonical element with value `v mod p`.
    pub fn elem(&self, v: u64) -> FieldElement {
        FieldElement {
            value: v % self.p,
            field: *self,
        }
    }

    /// Canonical element from a signed integer (wraps negatives via `+p`).
    pub fn elem_signed(&self, v: i64) -> FieldElement {
        let p = self.p as i64;
        self.elem(v.rem_euclid(p) as u64)
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// All field elements in ascending value order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.p).map(move |v| self.elem(v))
    }

    /// Deterministic distinct evaluation points for Cauchy constructions:
    /// alphas are the residues `0..n_alpha`, betas the next `n_beta` residues.
    /// All `n_alpha + n_beta` values are pairwise distinct.
    pub fn distinct_points(
        &self,
        n_alpha: usize,
        n_beta: usize,
    ) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
        let needed = n_alpha + n_beta;
        if (needed as u64) > self.p {
            return Err(Error::FieldTooSmall {
                needed,
                size: self.p,
            });
        }
        let alphas = (0..n_alpha as u64).map(|v| self.elem(v)).collect();
        let betas = (n_alpha as u64..needed as u64)
            .map(|v| self.elem(v))
            .collect();
        Ok((alphas, betas))
    }

    // Raw residue arithmetic used by the matrix kernels, where the
    // same-field invariant is enforced once at construction.
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub(crate) fn neg_raw(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub(crate) fn inv_raw(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        // Extended Euclid on (a, p); gcd is 1 because p is prime.
        let (mut r0, mut r1) = (a as i64, self.p as i64);
        let (mut s0, mut s1) = (1i64, 0i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(s0.rem_euclid(self.p as i64) as u64)
    }
}

/// A canonical residue paired with its field.
///
/// Arithmetic between elements of different fields is a structural error,
/// reported rather than silently coerced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    field: PrimeField,
}

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &FieldElement) -> Result<PrimeField> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p,
                right: other.field.p,
            });
        }
        Ok(self.field)
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        let f = self.same_field(other)?;
        Ok(FieldElement {
            value: f.add_raw(self.value, other.value),
            field: f,
        })
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        let f = self.same_field(other)?;
        Ok(FieldElement {
            value: f.sub_raw(self.value, other.value),
            field: f,
        })
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        let f = self.same_field(other)?;
        Ok(FieldElement {
            value: f.mul_raw(self.value, other.value),
            field: f,
        })
    }

    /// Multiplicative inverse, by extended Euclid.
    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement {
            value: self.field.inv_raw(self.value)?,
            field: self.field,
        })
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            value: self.field.neg_raw(self.value),
            field: self.field,
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime greater than or equal to `n`.
pub fn smallest_prime_at_least(n: u64) -> u64 {
    let mut p = n.max(2);
    while !is_prime(p) {
        p += 1;
    }
    p
}
