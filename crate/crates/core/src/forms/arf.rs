//! Quadratic forms over the two-element field and their Arf invariant.

use serde::Serialize;

use super::matrix::LambdaMatrix;
use crate::error::{Error, Result};

/// A quadratic refinement `q` of an alternating form on `F_2^dim`, given by
/// the Gram matrix (as row bitmasks) and the values of `q` on the basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Z2QuadraticForm {
    dim: usize,
    gram: Vec<u64>,
    q: Vec<u8>,
}

impl Z2QuadraticForm {
    pub fn new(gram: Vec<u64>, q: Vec<u8>) -> Result<Self> {
        let dim = gram.len();
        if dim > 64 || q.len() != dim {
            return Err(Error::Shape(format!(
                "gram has {dim} rows, q has {} values",
                q.len()
            )));
        }
        for i in 0..dim {
            if gram[i] >> dim != 0 {
                return Err(Error::Shape(format!(
                    "row {i} has bits beyond dimension {dim}"
                )));
            }
            if gram[i] >> i & 1 == 1 {
                return Err(Error::Shape(format!("form is not alternating at {i}")));
            }
            for j in 0..dim {
                if (gram[i] >> j & 1) != (gram[j] >> i & 1) {
                    return Err(Error::Shape(format!("gram not symmetric at ({i}, {j})")));
                }
            }
        }
        let q = q.into_iter().map(|v| v & 1).collect();
        Ok(Self { dim, gram, q })
    }

    /// Standard symplectic basis `(a_1, b_1, a_2, b_2, ..)` with the given
    /// values `(q(a_i), q(b_i))`.
    pub fn symplectic(values: &[(u8, u8)]) -> Self {
        let dim = 2 * values.len();
        let mut gram = vec![0u64; dim];
        let mut q = Vec::with_capacity(dim);
        for (i, &(qa, qb)) in values.iter().enumerate() {
            gram[2 * i] = 1 << (2 * i + 1);
            gram[2 * i + 1] = 1 << (2 * i);
            q.push(qa & 1);
            q.push(qb & 1);
        }
        Self { dim, gram, q }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pairing(&self, x: u64, y: u64) -> u8 {
        let mut acc = 0u32;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc ^= (self.gram[i] & y).count_ones() & 1;
            bits &= bits - 1;
        }
        acc as u8
    }

    /// `q` on an arbitrary vector, by `q(x + y) = q(x) + q(y) + <x, y>`.
    pub fn value(&self, x: u64) -> u8 {
        let mut acc = 0u8;
        let mut seen = 0u64;
        let mut bits = x;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            acc ^= self.q[i] ^ self.pairing(seen, 1 << i);
            seen |= 1 << i;
            bits &= bits - 1;
        }
        acc
    }

    fn is_standard_symplectic(&self) -> bool {
        self.dim.is_multiple_of(2)
            && (0..self.dim).all(|i| {
                let partner = if i % 2 == 0 { i + 1 } else { i - 1 };
                self.gram[i] == 1 << partner
            })
    }

    /// `sum_i q(a_i) q(b_i) mod 2`; the basis must be standard symplectic.
    pub fn arf(&self) -> Result<u8> {
        if !self.is_standard_symplectic() {
            return Err(Error::NotSymplectic(
                "expected basis (a_1, b_1, ..) with <a_i, b_i> = 1 and all other pairings 0".into(),
            ));
        }
        Ok((0..self.dim / 2).fold(0, |acc, i| acc ^ (self.q[2 * i] & self.q[2 * i + 1])))
    }

    /// Rewrites the form in a standard symplectic basis. Fails when the
    /// alternating form is degenerate.
    pub fn to_symplectic(&self) -> Result<Self> {
        let mut pool: Vec<u64> = (0..self.dim).map(|i| 1u64 << i).collect();
        let mut values = Vec::with_capacity(self.dim / 2);
        while let Some(a) = pool.pop() {
            let Some(pos) = pool.iter().position(|&v| self.pairing(a, v) == 1) else {
                return Err(Error::Degenerate(
                    "alternating form has a radical mod 2".into(),
                ));
            };
            let b = pool.swap_remove(pos);
            for v in pool.iter_mut() {
                // project v off span(a, b): v - <v, b> a - <v, a> b
                let (vb, va) = (self.pairing(*v, b), self.pairing(*v, a));
                if vb == 1 {
                    *v ^= a;
                }
                if va == 1 {
                    *v ^= b;
                }
            }
            values.push((self.value(a), self.value(b)));
        }
        Ok(Self::symplectic(&values))
    }

    pub fn arf_invariant(&self) -> Result<u8> {
        self.to_symplectic()?.arf()
    }
}

pub fn arf(q: &Z2QuadraticForm) -> Result<u8> {
    q.arf()
}

/// Augments a skew-hermitian form to `Z`, reduces mod 2 and attaches the
/// refinement values `mu` on the basis. The result is in a symplectic basis.
pub fn augment_form(m: &LambdaMatrix, mu: &[u8]) -> Result<Z2QuadraticForm> {
    if !m.is_skew_hermitian() {
        return Err(Error::Shape("matrix is not skew-hermitian".into()));
    }
    if mu.len() != m.rank() {
        return Err(Error::Shape(format!(
            "{} refinement values for rank {}",
            mu.len(),
            m.rank()
        )));
    }
    let gram = m
        .augmented()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .enumerate()
                .fold(0u64, |acc, (j, v)| acc | ((v.rem_euclid(2) as u64) << j))
        })
        .collect();
    Z2QuadraticForm::new(gram, mu.to_vec())?.to_symplectic()
}
