//! The bundles `L^{a,b}` and their second cohomology.
//!
//! `L^{a,b}` is the total space of the principal circle bundle over `S^2 x S^2`
//! with Euler class `a x + b y`. Its fundamental group is `Z/r` with
//! `r = gcd(a, b)`, and `H^2(L^{a,b}; Z) = Z^2 / <(a, b)>`, written here in the
//! images of `x` and `y`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modring::{bezout_pair, ModRing, Unit};
use crate::sign::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleSpec {
    pub a: i64,
    pub b: i64,
    pub r: u64,
    pub a0: i64,
    pub b0: i64,
    /// `m * b0 + n * a0 = 1`.
    pub m: i64,
    pub n: i64,
    pub orientation: Sign,
}

/// A class in `H^2(L^{a,b}; Z)` given by coordinates `(p, qhat)`.
///
/// Two coordinate pairs name the same class when they differ by a multiple of
/// `(a, b)`; use [`BundleSpec::classes_equal`] rather than `==` to compare
/// classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CohomClass {
    pub p: i64,
    pub qhat: i64,
}

impl CohomClass {
    pub fn new(p: i64, qhat: i64) -> Self {
        Self { p, qhat }
    }
}

impl std::ops::Neg for CohomClass {
    type Output = CohomClass;
    fn neg(self) -> CohomClass {
        CohomClass::new(-self.p, -self.qhat)
    }
}

/// Parameters `(s, epsilon, k)` of a normal 2-smoothing `L^{a,b} -> B_r`.
///
/// `s` fixes the image of the generator of `H^1(L_r^inf; Z/r)`, and
/// `(epsilon, k)` fix the image of the generator of `H^2(CP^inf; Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SmoothingParams {
    pub s: Unit,
    pub epsilon: Sign,
    pub k: u64,
}

impl BundleSpec {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a == 0 && b == 0 {
            return Err(Error::ZeroBundle);
        }
        let r = a.gcd(&b);
        let (a0, b0) = (a / r, b / r);
        let (m, n) = bezout_pair(a0, b0)?;
        Ok(Self {
            a,
            b,
            r: r as u64,
            a0,
            b0,
            m,
            n,
            orientation: Sign::Plus,
        })
    }

    /// Same bundle with the Bezout pair moved to `(m + t*a0, n - t*b0)`.
    pub fn with_bezout_shift(mut self, t: i64) -> Self {
        self.m += t * self.a0;
        self.n -= t * self.b0;
        self
    }

    pub fn reversed(mut self) -> Self {
        self.orientation = -self.orientation;
        self
    }

    pub fn ring(&self) -> ModRing {
        ModRing::new(self.r as i64).expect("r >= 1")
    }

    /// `a * b` as an exact integer.
    pub fn ab(&self) -> i128 {
        self.a as i128 * self.b as i128
    }

    /// `ab / r^2 = a0 * b0`.
    pub fn ab_reduced(&self) -> i128 {
        self.a0 as i128 * self.b0 as i128
    }

    /// Whether `r > 1` and `gcd(r, 6) = 1`, the range where the deciders apply.
    pub fn is_admissible(&self) -> bool {
        self.r > 1 && self.r.gcd(&6) == 1
    }

    pub fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::InadmissibleModulus(self.r))
        }
    }

    /// `|p*b0 - qhat*a0| = 1`.
    pub fn is_primitive(&self, c: CohomClass) -> bool {
        (c.p as i128 * self.b0 as i128 - c.qhat as i128 * self.a0 as i128).abs() == 1
    }

    pub fn classes_equal(&self, c1: CohomClass, c2: CohomClass) -> bool {
        let dp = c1.p as i128 - c2.p as i128;
        let dq = c1.qhat as i128 - c2.qhat as i128;
        let (a, b) = (self.a as i128, self.b as i128);
        // (dp, dq) = t (a, b) for some integer t
        if dp * b != dq * a {
            return false;
        }
        if a != 0 {
            dp % a == 0
        } else {
            dq % b == 0
        }
    }

    /// Representative with `0 <= p < |a|`, or `0 <= qhat < |b|` when `a = 0`.
    pub fn canonical_class(&self, c: CohomClass) -> CohomClass {
        let (a, b) = (self.a as i128, self.b as i128);
        let (p, q) = (c.p as i128, c.qhat as i128);
        let t = if a != 0 {
            p.div_euclid(a.abs()) * a.signum()
        } else {
            q.div_euclid(b.abs()) * b.signum()
        };
        CohomClass::new((p - t * a) as i64, (q - t * b) as i64)
    }

    /// Image of the generator of `H^2(CP^inf)` under the smoothing with
    /// parameters `(epsilon, k)`: `epsilon (m, -n) + k (a0, b0)`.
    ///
    /// `k` enters through its balanced lift.
    pub fn induced_class(&self, epsilon: Sign, k: u64) -> CohomClass {
        let k = self.ring().lift_balanced(k as i128);
        let e = epsilon.value();
        CohomClass::new(e * self.m + k * self.a0, -e * self.n + k * self.b0)
    }

    pub fn induced_class_of(&self, params: &SmoothingParams) -> CohomClass {
        self.induced_class(params.epsilon, params.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Invariant factors of a 2x2 integer matrix from its determinantal
    /// divisors: `d1 = gcd(entries)`, `d1 * d2 = |det|`.
    fn invariant_factors(m: [[i128; 2]; 2]) -> (i128, i128) {
        let d1 = m[0][0].gcd(&m[0][1]).gcd(&m[1][0]).gcd(&m[1][1]);
        let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs();
        if d1 == 0 {
            return (0, 0);
        }
        (d1, det / d1)
    }

    fn smith_primitive(l: &BundleSpec, c: CohomClass) -> bool {
        let f = invariant_factors([[c.p as i128, c.qhat as i128], [l.a as i128, l.b as i128]]);
        f == (1, l.r as i128)
    }

    #[test]
    fn make_bundle_examples() {
        let l = BundleSpec::new(5, 5).unwrap();
        assert_eq!((l.r, l.a0, l.b0, l.m, l.n), (5, 1, 1, 0, 1));
        let l = BundleSpec::new(5, 25).unwrap();
        assert_eq!((l.r, l.a0, l.b0, l.m, l.n), (5, 1, 5, 0, 1));
        let l = BundleSpec::new(6, 10).unwrap();
        assert_eq!((l.r, l.a0, l.b0, l.m, l.n), (2, 3, 5, 2, -3));
        assert_eq!(l.orientation, Sign::Plus);
        assert_eq!(BundleSpec::new(0, 0), Err(Error::ZeroBundle));
    }

    #[test]
    fn negative_coordinates() {
        let l = BundleSpec::new(-5, 10).unwrap();
        assert_eq!((l.r, l.a0, l.b0), (5, -1, 2));
        assert_eq!(l.m * l.b0 + l.n * l.a0, 1);
        let l = BundleSpec::new(0, -7).unwrap();
        assert_eq!((l.r, l.a0, l.b0, l.m, l.n), (7, 0, -1, -1, 0));
    }

    #[test]
    fn primitivity_examples() {
        let l55 = BundleSpec::new(5, 5).unwrap();
        assert!(l55.is_primitive(CohomClass::new(1, 0)));
        assert!(smith_primitive(&l55, CohomClass::new(1, 0)));
        assert!(!l55.is_primitive(CohomClass::new(1, 1)));
        let l525 = BundleSpec::new(5, 25).unwrap();
        assert!(l525.is_primitive(CohomClass::new(0, 1)));
        assert!(smith_primitive(&l525, CohomClass::new(0, 1)));
    }

    #[test]
    fn induced_class_examples() {
        let l = BundleSpec::new(5, 25).unwrap();
        assert_eq!(l.induced_class(Sign::Plus, 4), CohomClass::new(-1, -6));
        assert_eq!(l.induced_class(Sign::Minus, 2), CohomClass::new(2, 11));
        assert_eq!(l.induced_class(Sign::Plus, 0), CohomClass::new(l.m, -l.n));
    }

    #[test]
    fn class_equality_examples() {
        let l55 = BundleSpec::new(5, 5).unwrap();
        assert!(l55.classes_equal(CohomClass::new(1, 0), CohomClass::new(6, 5)));
        assert!(!l55.classes_equal(CohomClass::new(1, 0), CohomClass::new(0, 1)));
        let l525 = BundleSpec::new(5, 25).unwrap();
        assert!(l525.classes_equal(CohomClass::new(-1, -6), CohomClass::new(4, 19)));
    }

    #[test]
    fn induced_classes_are_primitive_exhaustive() {
        for r in 1..=50i64 {
            for (a0, b0) in [(1, 0), (0, 1), (1, 1), (2, 3), (-3, 5), (7, -4), (1, r)] {
                if a0.gcd(&b0) != 1 {
                    continue;
                }
                let l = BundleSpec::new(r * a0, r * b0).unwrap();
                for e in Sign::BOTH {
                    for k in 0..r as u64 {
                        let c = l.induced_class(e, k);
                        assert!(l.is_primitive(c), "L^{{{},{}}} e={e} k={k}", l.a, l.b);
                    }
                }
            }
        }
    }

    fn bundle_strategy() -> impl Strategy<Value = BundleSpec> {
        (1i64..=50, -20i64..=20, -20i64..=20)
            .prop_filter("coprime", |(_, a0, b0)| a0.gcd(b0) == 1)
            .prop_map(|(r, a0, b0)| BundleSpec::new(r * a0, r * b0).unwrap())
    }

    proptest! {
        #[test]
        fn primitive_matches_smith(l in bundle_strategy(), p in -200i64..200, q in -200i64..200) {
            let c = CohomClass::new(p, q);
            prop_assert_eq!(l.is_primitive(c), smith_primitive(&l, c));
        }

        #[test]
        fn class_equality_is_an_equivalence(
            l in bundle_strategy(),
            c in (-30i64..30, -30i64..30),
            t1 in -3i64..3,
            t2 in -3i64..3,
        ) {
            let x = CohomClass::new(c.0, c.1);
            let y = CohomClass::new(c.0 + t1 * l.a, c.1 + t1 * l.b);
            let z = CohomClass::new(y.p + t2 * l.a, y.qhat + t2 * l.b);
            prop_assert!(l.classes_equal(x, x));
            prop_assert!(l.classes_equal(x, y) && l.classes_equal(y, x));
            prop_assert!(l.classes_equal(y, z) && l.classes_equal(x, z));
            let w = CohomClass::new(c.0 + 1, c.1);
            prop_assert_eq!(l.classes_equal(x, w), l.classes_equal(w, x));
        }

        #[test]
        fn canonical_class_is_a_normal_form(l in bundle_strategy(), p in -500i64..500, q in -500i64..500, t in -4i64..4) {
            let c = CohomClass::new(p, q);
            let shifted = CohomClass::new(p + t * l.a, q + t * l.b);
            prop_assert_eq!(l.canonical_class(c), l.canonical_class(shifted));
            prop_assert!(l.classes_equal(c, l.canonical_class(c)));
        }
    }
}
