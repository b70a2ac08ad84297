//! The rho-invariant of `L^{a,b}`.
//!
//! For a generator `g` of `Z/r` acting by fibrewise rotation through the angle
//! `theta = 2 pi j / r` with `j < r/2`,
//!
//! ```text
//! rho(g) = -i * cos(theta/2) / (2 r^2 sin^3(theta/2)) * a b
//! ```
//!
//! and `rho(-g) = -rho(g)` fixes the remaining half. Values are purely
//! imaginary, so [`RhoValue`] stores the imaginary part.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::bundle::BundleSpec;
use crate::error::{Error, Result};
use crate::modring::Unit;
use crate::sign::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhoValue {
    pub g: u64,
    /// Imaginary part of `rho(g)`.
    pub value: f64,
}

/// Absolute tolerance for comparing rho values of bundles with product `ab`.
pub fn tolerance(ab: i128) -> f64 {
    1e-9 * (ab.unsigned_abs() as f64).max(1.0)
}

fn check_group(l: &BundleSpec) -> Result<()> {
    if l.r < 2 {
        return Err(Error::InadmissibleModulus(l.r));
    }
    if l.r.is_multiple_of(2) {
        return Err(Error::EvenModulus(l.r));
    }
    Ok(())
}

/// `-cos(theta/2) / (2 r^2 sin^3(theta/2))` for representative `j < r/2`,
/// extended to the other half by antisymmetry. This is `rho(g) / (ab)`.
fn unit_rho(r: u64, j: u64) -> f64 {
    let (j, sign) = if 2 * j < r { (j, 1.0) } else { (r - j, -1.0) };
    let half = PI * j as f64 / r as f64;
    let s = half.sin();
    -sign * half.cos() / (2.0 * (r * r) as f64 * s * s * s)
}

pub fn rho(l: &BundleSpec, g: i64) -> Result<RhoValue> {
    check_group(l)?;
    let j = l.ring().reduce(g as i128);
    if j == 0 {
        return Err(Error::ZeroElement(l.r));
    }
    let value = unit_rho(l.r, j) * l.ab() as f64;
    Ok(RhoValue { g: j, value })
}

/// `rho(g)` for every nonzero `g`, keyed by canonical representative.
pub fn rho_table(l: &BundleSpec) -> Result<BTreeMap<u64, f64>> {
    check_group(l)?;
    (1..l.r as i64)
        .map(|g| rho(l, g).map(|v| (v.g, v.value)))
        .collect()
}

fn check_pair(l: &BundleSpec, l2: &BundleSpec) -> Result<()> {
    if l.r != l2.r {
        return Err(Error::ModulusMismatch(l.r, l2.r));
    }
    check_group(l)
}

/// Whether `rho(u * beta, L) = rho(beta, L2)` for all nonzero `beta`,
/// evaluated numerically.
pub fn rho_match(l: &BundleSpec, l2: &BundleSpec, u: Unit) -> Result<bool> {
    rho_match_oriented(l, l2, u, Sign::Plus)
}

/// As [`rho_match`], with `L2` taken in orientation `flip` relative to `L`.
/// Reversing orientation negates rho.
pub fn rho_match_oriented(l: &BundleSpec, l2: &BundleSpec, u: Unit, flip: Sign) -> Result<bool> {
    check_pair(l, l2)?;
    let tol = tolerance(l.ab().abs().max(l2.ab().abs()));
    for beta in 1..l.r as i64 {
        let lhs = rho(l, u.value() as i64 * beta)?.value;
        let rhs = flip.value() as f64 * rho(l2, beta)?.value;
        if (lhs - rhs).abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact form of [`rho_match_oriented`]:
/// `ab = 0 = a'b'`, or `u = 1` and `ab = flip a'b'`, or `u = -1` and
/// `ab = -flip a'b'`.
pub fn rho_match_closed_form(l: &BundleSpec, l2: &BundleSpec, u: Unit, flip: Sign) -> Result<bool> {
    check_pair(l, l2)?;
    let (ab, ab2) = (l.ab(), flip.value() as i128 * l2.ab());
    let ring = l.ring();
    let u = u.value() as i128;
    Ok((ab == 0 && ab2 == 0)
        || (ring.congruent(u, 1) && ab == ab2)
        || (ring.congruent(u, -1) && ab == -ab2))
}
