//! Integers modulo `r` and the searches over `(Z/r)*` used by the deciders.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ring `Z/r`, with canonical representatives `0..r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModRing {
    r: u64,
}

/// A unit of `Z/r`, stored by its canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Unit(u64);

impl Unit {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl ModRing {
    pub fn new(r: i64) -> Result<Self> {
        if r < 1 {
            return Err(Error::BadModulus(r));
        }
        Ok(Self { r: r as u64 })
    }

    pub fn modulus(&self) -> u64 {
        self.r
    }

    /// Canonical representative of `x` in `0..r`.
    pub fn reduce(&self, x: i128) -> u64 {
        x.rem_euclid(self.r as i128) as u64
    }

    /// Lift of a residue to the balanced range `-floor(r/2) ..= ceil(r/2) - 1`.
    pub fn lift_balanced(&self, x: i128) -> i64 {
        let r = self.r as i128;
        let v = x.rem_euclid(r);
        let half = r / 2;
        if v >= r - half {
            (v - r) as i64
        } else {
            v as i64
        }
    }

    pub fn congruent(&self, x: i128, y: i128) -> bool {
        self.reduce(x - y) == 0
    }

    pub fn unit(&self, x: i128) -> Option<Unit> {
        let v = self.reduce(x);
        (self.r > 1 && v.gcd(&self.r) == 1).then_some(Unit(v))
    }

    pub fn pow(&self, base: i128, exponent: u32) -> u64 {
        let r = self.r as u128;
        let mut acc = 1u128 % r;
        let mut b = self.reduce(base) as u128;
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % r;
            }
            b = b * b % r;
            e >>= 1;
        }
        acc as u64
    }

    pub fn inverse(&self, u: Unit) -> Unit {
        let e = (u.0 as i64).extended_gcd(&(self.r as i64));
        Unit(self.reduce(e.x as i128))
    }

    /// All units in ascending order. Empty for `r = 1`.
    pub fn units(&self) -> Vec<Unit> {
        if self.r == 1 {
            return Vec::new();
        }
        (1..self.r)
            .filter(|v| v.gcd(&self.r) == 1)
            .map(Unit)
            .collect()
    }

    /// Units `u` with `u^exponent == target (mod r)`, ascending.
    pub fn find_units_with_power(&self, exponent: u32, target: i128) -> Vec<Unit> {
        let t = self.reduce(target);
        self.units()
            .into_iter()
            .filter(|u| self.pow(u.0 as i128, exponent) == t)
            .collect()
    }
}

/// Canonical solution `(m, n)` of `m*b0 + n*a0 = 1`.
///
/// The extended-Euclid solution is shifted along `(a0, -b0)` so that
/// `0 <= m < |a0|`; when `a0 = 0` the answer is `(b0, 0)`.
pub fn bezout_pair(a0: i64, b0: i64) -> Result<(i64, i64)> {
    if a0.gcd(&b0) != 1 {
        return Err(Error::NotCoprime(a0, b0));
    }
    if a0 == 0 {
        return Ok((b0, 0));
    }
    let e = (b0 as i128).extended_gcd(&(a0 as i128));
    // e.x * b0 + e.y * a0 = gcd = 1
    let (x, y) = if e.gcd < 0 { (-e.x, -e.y) } else { (e.x, e.y) };
    let step = (a0 as i128).abs();
    let m = x.rem_euclid(step);
    let t = (m - x) / a0 as i128;
    let n = y - t * b0 as i128;
    debug_assert_eq!(m * b0 as i128 + n * a0 as i128, 1);
    Ok((m as i64, n as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vals(us: Vec<Unit>) -> Vec<u64> {
        us.into_iter().map(Unit::value).collect()
    }

    #[test]
    fn units_small() {
        assert_eq!(vals(ModRing::new(5).unwrap().units()), vec![1, 2, 3, 4]);
        assert!(ModRing::new(1).unwrap().units().is_empty());
        assert_eq!(
            vals(ModRing::new(15).unwrap().units()),
            vec![1, 2, 4, 7, 8, 11, 13, 14]
        );
    }

    #[test]
    fn powers() {
        let z5 = ModRing::new(5).unwrap();
        assert_eq!(vals(z5.find_units_with_power(2, -1)), vec![2, 3]);
        assert_eq!(vals(z5.find_units_with_power(3, 1)), vec![1]);
        let z7 = ModRing::new(7).unwrap();
        assert_eq!(vals(z7.find_units_with_power(3, 1)), vec![1, 2, 4]);
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout_pair(1, 1).unwrap(), (0, 1));
        assert_eq!(bezout_pair(1, 5).unwrap(), (0, 1));
        assert_eq!(bezout_pair(2, 3).unwrap(), (1, -1));
        assert_eq!(bezout_pair(3, 5).unwrap(), (2, -3));
        assert_eq!(bezout_pair(0, 1).unwrap(), (1, 0));
        assert_eq!(bezout_pair(0, -1).unwrap(), (-1, 0));
        assert_eq!(bezout_pair(2, 4), Err(Error::NotCoprime(2, 4)));
    }

    #[test]
    fn bad_modulus() {
        assert_eq!(ModRing::new(0), Err(Error::BadModulus(0)));
    }

    #[test]
    fn balanced_lift() {
        let z5 = ModRing::new(5).unwrap();
        let lifts: Vec<i64> = (0..5).map(|k| z5.lift_balanced(k)).collect();
        assert_eq!(lifts, vec![0, 1, 2, -2, -1]);
        let z4 = ModRing::new(4).unwrap();
        let lifts: Vec<i64> = (0..4).map(|k| z4.lift_balanced(k)).collect();
        assert_eq!(lifts, vec![0, 1, -2, -1]);
    }

    proptest! {
        #[test]
        fn bezout_identity(a0 in -(1i64 << 31)..(1i64 << 31), b0 in -(1i64 << 31)..(1i64 << 31)) {
            prop_assume!(a0.gcd(&b0) == 1);
            let (m, n) = bezout_pair(a0, b0).unwrap();
            prop_assert_eq!(m as i128 * b0 as i128 + n as i128 * a0 as i128, 1);
            if a0 != 0 {
                prop_assert!(0 <= m && m < a0.abs());
            }
        }

        #[test]
        fn units_are_invertible(r in 1i64..400) {
            let ring = ModRing::new(r).unwrap();
            for u in ring.units() {
                prop_assert_eq!(u.value().gcd(&(r as u64)), 1);
                let inv = ring.inverse(u);
                prop_assert_eq!(ring.reduce(u.value() as i128 * inv.value() as i128), 1);
            }
        }

        #[test]
        fn power_search_is_a_filter(r in 1i64..200, e in 1u32..6, t in -50i128..50) {
            let ring = ModRing::new(r).unwrap();
            let expected: Vec<Unit> = ring
                .units()
                .into_iter()
                .filter(|u| (u.value() as i128).pow(e).rem_euclid(r as i128) == t.rem_euclid(r as i128))
                .collect();
            prop_assert_eq!(ring.find_units_with_power(e, t), expected);
        }
    }
}
