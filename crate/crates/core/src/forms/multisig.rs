//! Multisignature of a non-degenerate skew-hermitian form over `Z[Z/r]`.
//!
//! The form on `Lambda^d` gives an integral skew form `p_c . lambda` on the
//! underlying `Z^{rd}`, with basis `e_i g`. Its complexification is
//! `x^* B y` for the real antisymmetric matrix
//! `B[(i,g),(j,h)] = coefficient of (h - g) in M_ij`.
//! For a `Z/r`-invariant inner product `<x, y> = x^* H y` the operator
//! `A = H^{-1} B` has purely imaginary, nonzero spectrum. The `+i` and `-i`
//! halves are `Z/r`-representations with characters `r_+`, `r_-`, and
//! `MS(g) = r_+(g) - r_-(g)`.
//!
//! Writing `MS(g) = sum_j sigma_j zeta^{j g}`, the integer `sigma_j` is the
//! signature of the hermitian matrix `i chi_j(M)`, which gives a second,
//! much smaller route to the same answer.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use serde::Serialize;

use super::matrix::LambdaMatrix;
use crate::error::{Error, Result};

type C64 = Complex<f64>;

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Multisignature {
    pub r: usize,
    /// `sigma_j` for characters `j = 0..r`.
    pub sigma: Vec<i64>,
}

impl Multisignature {
    pub fn zero(r: usize) -> Self {
        Self {
            r,
            sigma: vec![0; r],
        }
    }

    /// `MS(g) = sum_j sigma_j exp(2 pi i j g / r)`.
    pub fn value_at(&self, g: usize) -> C64 {
        let r = self.r;
        self.sigma
            .iter()
            .enumerate()
            .map(|(j, &s)| C64::from_polar(s as f64, 2.0 * PI * ((j * g) % r) as f64 / r as f64))
            .sum()
    }

    pub fn values(&self) -> Vec<C64> {
        (0..self.r).map(|g| self.value_at(g)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.r, other.r);
        Self {
            r: self.r,
            sigma: self
                .sigma
                .iter()
                .zip(&other.sigma)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

fn require_form(m: &LambdaMatrix) -> Result<()> {
    if !m.is_skew_hermitian() {
        return Err(Error::Shape("matrix is not skew-hermitian".into()));
    }
    Ok(())
}

fn count_signs(eigenvalues: impl Iterator<Item = f64>, tol: f64, what: &str) -> Result<i64> {
    let mut sig = 0;
    for ev in eigenvalues {
        if ev.abs() <= tol {
            return Err(Error::Degenerate(format!(
                "{what}: eigenvalue {ev:e} within {tol:e} of 0"
            )));
        }
        sig += if ev > 0.0 { 1 } else { -1 };
    }
    Ok(sig)
}

/// `sigma_j = signature(i chi_j(M))` for each character.
pub fn character_signatures(m: &LambdaMatrix) -> Result<Multisignature> {
    require_form(m)?;
    let r = m.modulus();
    let i = C64::new(0.0, 1.0);
    let sigma = (0..r)
        .map(|j| {
            let h = m.character_matrix(j) * i;
            let tol = TOL * h.norm().max(1.0);
            let eig = SymmetricEigen::new(h);
            count_signs(
                eig.eigenvalues.iter().copied(),
                tol,
                &format!("character {j}"),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Multisignature { r, sigma })
}

/// The integral skew form `p_c . lambda` on `Z^{rd}`.
pub fn underlying_skew_form(m: &LambdaMatrix) -> DMatrix<f64> {
    let (r, d) = (m.modulus(), m.rank());
    DMatrix::from_fn(r * d, r * d, |row, col| {
        let (i, g) = (row / r, row % r);
        let (j, h) = (col / r, col % r);
        m.get(i, j).coeff(h as i64 - g as i64) as f64
    })
}

/// Permutation matrix of `x -> x alpha` on `C^{rd}`.
pub fn group_action(r: usize, d: usize, alpha: usize) -> DMatrix<C64> {
    let mut t = DMatrix::zeros(r * d, r * d);
    for i in 0..d {
        for g in 0..r {
            t[(i * r + (g + alpha) % r, i * r + g)] = C64::new(1.0, 0.0);
        }
    }
    t
}

/// Averages a positive definite hermitian `q` over the group action.
pub fn invariant_inner_product(r: usize, d: usize, q: &DMatrix<C64>) -> DMatrix<C64> {
    (0..r).fold(DMatrix::zeros(r * d, r * d), |acc, alpha| {
        let t = group_action(r, d, alpha);
        acc + t.adjoint() * q * t
    })
}

/// Multisignature from the eigenspace decomposition of `A`, with the
/// standard inner product (invariant under the permutation action).
pub fn multisignature(m: &LambdaMatrix) -> Result<Multisignature> {
    multisignature_with_inner_product(m, None)
}

/// As [`multisignature`], with `<x, y> = x^* H y` for a given invariant
/// positive definite `H`.
pub fn multisignature_with_inner_product(
    m: &LambdaMatrix,
    inner: Option<&DMatrix<C64>>,
) -> Result<Multisignature> {
    require_form(m)?;
    let (r, d) = (m.modulus(), m.rank());
    let n = r * d;
    if n == 0 {
        return Ok(Multisignature::zero(r));
    }
    let b = underlying_skew_form(m).map(|x| C64::new(x, 0.0));

    // A' = L^{-1} B L^{-*} with H = L L^*, so that A' is skew-hermitian and
    // v = L^{-*} w carries eigenvectors of A' to eigenvectors of A.
    let (l, l_inv) = match inner {
        None => (DMatrix::identity(n, n), DMatrix::identity(n, n)),
        Some(h) => {
            if h.nrows() != n || h.ncols() != n {
                return Err(Error::Shape(format!("inner product must be {n}x{n}")));
            }
            let chol = h
                .clone()
                .cholesky()
                .ok_or_else(|| Error::Shape("inner product is not positive definite".into()))?;
            let l = chol.l();
            let l_inv = l
                .clone()
                .try_inverse()
                .ok_or_else(|| Error::Shape("singular Cholesky factor".into()))?;
            (l, l_inv)
        }
    };
    let a = &l_inv * &b * l_inv.adjoint();
    // -i A' is hermitian; its positive eigenvalues are the +i half.
    let herm = a * C64::new(0.0, -1.0);
    let tol = TOL * herm.norm().max(1.0);
    let eig = SymmetricEigen::new(herm);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (idx, &ev) in eig.eigenvalues.iter().enumerate() {
        if ev.abs() <= tol {
            return Err(Error::Degenerate(format!(
                "eigenvalue {ev:e} of A within {tol:e} of 0"
            )));
        }
        if ev > 0.0 {
            plus.push(idx);
        } else {
            minus.push(idx);
        }
    }
    let w = &eig.eigenvectors;
    let trace_on = |cols: &[usize], conj_t: &DMatrix<C64>| -> C64 {
        cols.iter()
            .map(|&c| {
                let v = w.column(c);
                (v.adjoint() * conj_t * v)[(0, 0)]
            })
            .sum()
    };

    let ms: Vec<C64> = (0..r)
        .map(|g| {
            let t = group_action(r, d, g);
            // T_g expressed in the orthonormal frame w = L^* v
            let conj_t = l.adjoint() * t * l_inv.adjoint();
            trace_on(&plus, &conj_t) - trace_on(&minus, &conj_t)
        })
        .collect();

    let sigma = (0..r)
        .map(|j| {
            let s: C64 = ms
                .iter()
                .enumerate()
                .map(|(g, &v)| {
                    v * C64::from_polar(1.0, -2.0 * PI * ((j * g) % r) as f64 / r as f64)
                })
                .sum::<C64>()
                / r as f64;
            let rounded = s.re.round();
            if (s - C64::new(rounded, 0.0)).norm() > 1e-6 {
                return Err(Error::Degenerate(format!(
                    "character multiplicity {s} for j = {j} is not an integer"
                )));
            }
            Ok(rounded as i64)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Multisignature { r, sigma })
}
