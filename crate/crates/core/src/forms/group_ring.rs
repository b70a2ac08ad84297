use std::f64::consts::PI;

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element `sum_g c_g g` of the integral group ring `Z[Z/r]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupRingElement {
    coeffs: Vec<i64>,
}

impl GroupRingElement {
    pub fn from_coeffs(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Shape(
                "group ring element needs r >= 1 coefficients".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn zero(r: usize) -> Self {
        Self { coeffs: vec![0; r] }
    }

    pub fn one(r: usize) -> Self {
        Self::monomial(r, 1, 0)
    }

    /// `c * g`.
    pub fn monomial(r: usize, c: i64, g: i64) -> Self {
        let mut x = Self::zero(r);
        x.coeffs[g.rem_euclid(r as i64) as usize] = c;
        x
    }

    pub fn modulus(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, g: i64) -> i64 {
        self.coeffs[g.rem_euclid(self.modulus() as i64) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `g -> g^{-1}`.
    pub fn involute(&self) -> Self {
        let r = self.modulus();
        let coeffs = (0..r).map(|g| self.coeffs[(r - g) % r]).collect();
        Self { coeffs }
    }

    /// Sum of coefficients.
    pub fn augment(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Coefficient of the identity.
    pub fn pc(&self) -> i64 {
        self.coeffs[0]
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// `sum_g c_g zeta^{j g}` with `zeta = exp(2 pi i / r)`.
    pub fn character(&self, j: usize) -> Complex<f64> {
        let r = self.modulus();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(g, &c)| {
                let t = 2.0 * PI * ((j * g) % r) as f64 / r as f64;
                Complex::new(c as f64 * t.cos(), c as f64 * t.sin())
            })
            .sum()
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Self { coeffs }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let r = self.modulus();
        let mut coeffs = vec![0i64; r];
        for (g, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (h, &b) in other.coeffs.iter().enumerate() {
                coeffs[(g + h) % r] += a * b;
            }
        }
        Self { coeffs }
    }
}

fn same_ring(x: &GroupRingElement, y: &GroupRingElement) -> Result<()> {
    if x.modulus() != y.modulus() {
        return Err(Error::ModulusMismatch(
            x.modulus() as u64,
            y.modulus() as u64,
        ));
    }
    Ok(())
}

pub fn gr_add(x: &GroupRingElement, y: &GroupRingElement) -> Result<GroupRingElement> {
    same_ring(x, y)?;
    Ok(x.add_unchecked(y))
}

/// Convolution product.
pub fn gr_mul(x: &GroupRingElement, y: &GroupRingElement) -> Result<GroupRingElement> {
    same_ring(x, y)?;
    Ok(x.mul_unchecked(y))
}

pub fn gr_involute(x: &GroupRingElement) -> GroupRingElement {
    x.involute()
}

pub fn gr_augment(x: &GroupRingElement) -> i64 {
    x.augment()
}

pub fn gr_pc(x: &GroupRingElement) -> i64 {
    x.pc()
}
