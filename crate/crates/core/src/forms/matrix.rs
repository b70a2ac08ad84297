use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use super::group_ring::GroupRingElement;
use crate::error::{Error, Result};

/// A `d x d` matrix over `Z[Z/r]`, row-major.
///
/// As a form, `lambda(x a, y b) = a lambda(x, y) conj(b)` with
/// `lambda(e_i, e_j)` the `(i, j)` entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaMatrix {
    r: usize,
    d: usize,
    entries: Vec<GroupRingElement>,
}

/// On-disk form: `{"r": .., "d": .., "entries": [[[c_0, .., c_{r-1}], ..], ..]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub r: usize,
    pub d: usize,
    pub entries: Vec<Vec<Vec<i64>>>,
}

impl TryFrom<MatrixFile> for LambdaMatrix {
    type Error = Error;

    fn try_from(f: MatrixFile) -> Result<Self> {
        if f.r == 0 {
            return Err(Error::Shape("r must be at least 1".into()));
        }
        if f.entries.len() != f.d {
            return Err(Error::Shape(format!(
                "expected {} rows, got {}",
                f.d,
                f.entries.len()
            )));
        }
        let mut entries = Vec::with_capacity(f.d * f.d);
        for (i, row) in f.entries.into_iter().enumerate() {
            if row.len() != f.d {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    f.d
                )));
            }
            for (j, c) in row.into_iter().enumerate() {
                if c.len() != f.r {
                    return Err(Error::Shape(format!(
                        "entry ({i}, {j}) has {} coefficients, expected {}",
                        c.len(),
                        f.r
                    )));
                }
                entries.push(GroupRingElement::from_coeffs(c)?);
            }
        }
        Ok(Self {
            r: f.r,
            d: f.d,
            entries,
        })
    }
}

impl From<&LambdaMatrix> for MatrixFile {
    fn from(m: &LambdaMatrix) -> Self {
        let entries = (0..m.d)
            .map(|i| (0..m.d).map(|j| m.get(i, j).coeffs().to_vec()).collect())
            .collect();
        MatrixFile {
            r: m.r,
            d: m.d,
            entries,
        }
    }
}

impl LambdaMatrix {
    pub fn from_fn(
        r: usize,
        d: usize,
        mut f: impl FnMut(usize, usize) -> GroupRingElement,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let e = f(i, j);
                if e.modulus() != r {
                    return Err(Error::ModulusMismatch(r as u64, e.modulus() as u64));
                }
                entries.push(e);
            }
        }
        Ok(Self { r, d, entries })
    }

    pub fn zero(r: usize, d: usize) -> Self {
        Self {
            r,
            d,
            entries: vec![GroupRingElement::zero(r); d * d],
        }
    }

    pub fn identity(r: usize, d: usize) -> Self {
        let mut m = Self::zero(r, d);
        for i in 0..d {
            m.entries[i * d + i] = GroupRingElement::one(r);
        }
        m
    }

    pub fn modulus(&self) -> usize {
        self.r
    }

    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.d + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GroupRingElement) {
        assert_eq!(v.modulus(), self.r);
        self.entries[i * self.d + j] = v;
    }

    pub fn conjugate_transpose(&self) -> Self {
        let d = self.d;
        let entries = (0..d * d)
            .map(|idx| self.get(idx % d, idx / d).involute())
            .collect();
        Self {
            r: self.r,
            d,
            entries,
        }
    }

    pub fn is_skew_hermitian(&self) -> bool {
        let ct = self.conjugate_transpose();
        ct.entries
            .iter()
            .zip(&self.entries)
            .all(|(a, b)| *a == b.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.r != other.r {
            return Err(Error::ModulusMismatch(self.r as u64, other.r as u64));
        }
        if self.d != other.d {
            return Err(Error::Shape(format!("rank {} vs {}", self.d, other.d)));
        }
        let d = self.d;
        let mut out = Self::zero(self.r, d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = GroupRingElement::zero(self.r);
                for l in 0..d {
                    acc = acc.add_unchecked(&self.get(i, l).mul_unchecked(other.get(l, j)));
                }
                out.entries[i * d + j] = acc;
            }
        }
        Ok(out)
    }

    /// `P^* M P`.
    pub fn congruent_by(&self, p: &Self) -> Result<Self> {
        p.conjugate_transpose().mul(self)?.mul(p)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.r != other.r {
            return Err(Error::ModulusMismatch(self.r as u64, other.r as u64));
        }
        let d = self.d + other.d;
        let mut out = Self::zero(self.r, d);
        for i in 0..self.d {
            for j in 0..self.d {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.d {
            for j in 0..other.d {
                out.set(self.d + i, self.d + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Image of the matrix under the character `g -> zeta^{j g}`.
    pub fn character_matrix(&self, j: usize) -> DMatrix<Complex<f64>> {
        DMatrix::from_fn(self.d, self.d, |a, b| self.get(a, b).character(j))
    }

    /// Entrywise augmentation.
    pub fn augmented(&self) -> Vec<Vec<i64>> {
        (0..self.d)
            .map(|i| (0..self.d).map(|j| self.get(i, j).augment()).collect())
            .collect()
    }

    /// Every character image is invertible: `|det chi_j(M)|` exceeds
    /// `1e-9 * max(1, |chi_j(M)|_F)^d`.
    pub fn is_nondegenerate(&self) -> bool {
        if self.d == 0 {
            return true;
        }
        (0..self.r).all(|j| {
            let m = self.character_matrix(j);
            let scale = m.norm().max(1.0).powi(self.d as i32);
            m.determinant().norm() > 1e-9 * scale
        })
    }
}

/// `n` copies of `[[0, e], [-e, 0]]` on the diagonal.
pub fn hyperbolic(n: usize, r: usize) -> LambdaMatrix {
    let mut m = LambdaMatrix::zero(r, 2 * n);
    for b in 0..n {
        m.set(2 * b, 2 * b + 1, GroupRingElement::one(r));
        m.set(2 * b + 1, 2 * b, GroupRingElement::monomial(r, -1, 0));
    }
    m
}
