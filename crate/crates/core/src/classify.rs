//! Homotopy and diffeomorphism deciders for pairs `L^{a,b}`, `L^{a',b'}` with
//! common fundamental group `Z/r`, `gcd(r, 6) = 1`.
//!
//! Write `X(eps, k) = (eps m + k a0)(eps n - k b0)` and
//! `Y(eps, k) = b0 (eps m + k a0) - a0 (eps n - k b0)`. The bundles are
//! oriented homotopy equivalent iff for some units `s, s'`, signs `eps, eps'`
//! and residues `k, k'`
//!
//! ```text
//! s^3 a0 b0   = s'^3 a0' b0'      (mod r)
//! s   X(eps,k) = s'   X'(eps',k')  (mod r)
//! s^2 Y(eps,k) = s'^2 Y'(eps',k')  (mod r)
//! ```
//!
//! and oriented diffeomorphic iff for some `eps, eps', delta, k, k'`
//!
//! ```text
//! a b      = delta a' b'           (in Z)
//! X(eps,k) = delta X'(eps',k')     (mod r)
//! Y(eps,k) =       Y'(eps',k')     (mod r)
//! ```
//!
//! Reversing the orientation of the second bundle multiplies every right-hand
//! side by `-1`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::bundle::{BundleSpec, CohomClass};
use crate::error::{Error, Result};
use crate::modring::{ModRing, Unit};
use crate::rho::rho_match_closed_form;
use crate::sign::Sign;

pub const DEFAULT_SCAN_CAP: u64 = 1_000_000;

/// Relative orientation of the second bundle against the first.
pub type RelOrientation = Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HomotopyCert {
    pub s: Unit,
    pub s2: Unit,
    pub epsilon: Sign,
    pub epsilon2: Sign,
    pub k: u64,
    pub k2: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DiffeoCert {
    pub epsilon: Sign,
    pub epsilon2: Sign,
    pub delta: Sign,
    pub k: u64,
    pub k2: u64,
}

/// Which sign multiplies `n'` in the third congruence.
///
/// `Symmetric` uses `eps'` on the right-hand side. `Literal` uses the
/// left-hand `eps` there, which makes the relation asymmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThirdCongruence {
    #[default]
    Symmetric,
    Literal,
}

#[derive(Debug, Clone, Copy)]
pub struct DeciderConfig {
    /// Upper bound on half-tuple evaluations plus emitted certificates.
    pub scan_cap: u64,
    pub third: ThirdCongruence,
}

impl Default for DeciderConfig {
    fn default() -> Self {
        Self {
            scan_cap: DEFAULT_SCAN_CAP,
            third: ThirdCongruence::Symmetric,
        }
    }
}

struct Budget {
    used: u64,
    cap: u64,
}

impl Budget {
    fn new(cap: u64) -> Self {
        Self { used: 0, cap }
    }

    fn spend(&mut self, n: u64) -> Result<()> {
        self.used += n;
        if self.used > self.cap {
            Err(Error::ScanCapExceeded { cap: self.cap })
        } else {
            Ok(())
        }
    }
}

/// `(eps m + k a0, eps n - k b0)`, the two linear factors of `X`.
fn factors(l: &BundleSpec, eps: i128, n_sign: i128, k: i128) -> (i128, i128) {
    let u = eps * l.m as i128 + k * l.a0 as i128;
    let v = n_sign * l.n as i128 - k * l.b0 as i128;
    (u, v)
}

fn x_value(l: &BundleSpec, eps: Sign, k: u64) -> i128 {
    let e = eps.value() as i128;
    let (u, v) = factors(l, e, e, k as i128);
    u * v
}

/// `Y` with `eps_n` multiplying `n` (equal to `eps` in the symmetric reading).
fn y_value(l: &BundleSpec, eps: Sign, eps_n: Sign, k: u64) -> i128 {
    let (u, v) = factors(l, eps.value() as i128, eps_n.value() as i128, k as i128);
    l.b0 as i128 * u - l.a0 as i128 * v
}

fn check_pair(l: &BundleSpec, l2: &BundleSpec) -> Result<ModRing> {
    if l.r != l2.r {
        return Err(Error::ModulusMismatch(l.r, l2.r));
    }
    l.require_admissible()?;
    Ok(l.ring())
}

fn rhs_eps_n(third: ThirdCongruence, eps: Sign, eps2: Sign) -> Sign {
    match third {
        ThirdCongruence::Symmetric => eps2,
        ThirdCongruence::Literal => eps,
    }
}

/// Direct evaluation of the three homotopy congruences for one tuple.
pub fn homotopy_holds(
    l: &BundleSpec,
    l2: &BundleSpec,
    flip: RelOrientation,
    c: &HomotopyCert,
    third: ThirdCongruence,
) -> bool {
    let ring = l.ring();
    let f = flip.value() as i128;
    let (s, s2) = (c.s.value() as i128, c.s2.value() as i128);
    let c1 = ring.congruent(s.pow(3) * l.ab_reduced(), f * s2.pow(3) * l2.ab_reduced());
    let c2 = ring.congruent(
        s * x_value(l, c.epsilon, c.k),
        f * s2 * x_value(l2, c.epsilon2, c.k2),
    );
    let eps_n = rhs_eps_n(third, c.epsilon, c.epsilon2);
    let c3 = ring.congruent(
        s * s * y_value(l, c.epsilon, c.epsilon, c.k),
        f * s2 * s2 * y_value(l2, c.epsilon2, eps_n, c.k2),
    );
    c1 && c2 && c3
}

/// Direct evaluation of the diffeomorphism conditions for one tuple.
pub fn diffeo_holds(
    l: &BundleSpec,
    l2: &BundleSpec,
    flip: RelOrientation,
    c: &DiffeoCert,
    third: ThirdCongruence,
) -> bool {
    let ring = l.ring();
    let fd = (flip * c.delta).value() as i128;
    if l.ab() != fd * l2.ab() {
        return false;
    }
    let eps_n = rhs_eps_n(third, c.epsilon, c.epsilon2);
    ring.congruent(
        x_value(l, c.epsilon, c.k),
        fd * x_value(l2, c.epsilon2, c.k2),
    ) && ring.congruent(
        y_value(l, c.epsilon, c.epsilon, c.k),
        flip.value() as i128 * y_value(l2, c.epsilon2, eps_n, c.k2),
    )
}

/// Lexicographic walk over `(s, s', eps, eps', k, k')` calling `emit` on every
/// solution; `emit` returns `false` to stop. `unit_filter(s, s')` prunes unit
/// pairs before any congruence is evaluated.
fn walk_homotopy(
    l: &BundleSpec,
    l2: &BundleSpec,
    flip: RelOrientation,
    config: &DeciderConfig,
    unit_filter: &dyn Fn(Unit, Unit) -> bool,
    emit: &mut dyn FnMut(HomotopyCert) -> bool,
) -> Result<()> {
    let ring = check_pair(l, l2)?;
    let r = ring.modulus();
    let f = flip.value() as i128;
    let units = ring.units();
    let mut budget = Budget::new(config.scan_cap);

    // Right-hand side, per s': (eps, eps', [c1, c2, c3]) -> ascending k'.
    type Key = (Sign, Sign, [u64; 3]);
    let mut rhs: Vec<HashMap<Key, Vec<u64>>> = Vec::with_capacity(units.len());
    for &s2 in &units {
        budget.spend(4 * r)?;
        let s2v = s2.value() as i128;
        let c1 = ring.reduce(f * s2v.pow(3) * l2.ab_reduced());
        let mut table: HashMap<Key, Vec<u64>> = HashMap::new();
        for eps in Sign::BOTH {
            for eps2 in Sign::BOTH {
                let eps_n = rhs_eps_n(config.third, eps, eps2);
                for k2 in 0..r {
                    let c2 = ring.reduce(f * s2v * x_value(l2, eps2, k2));
                    let c3 = ring.reduce(f * s2v * s2v * y_value(l2, eps2, eps_n, k2));
                    table.entry((eps, eps2, [c1, c2, c3])).or_default().push(k2);
                }
            }
        }
        rhs.push(table);
    }

    for &s in &units {
        budget.spend(2 * r)?;
        let sv = s.value() as i128;
        let c1 = ring.reduce(sv.pow(3) * l.ab_reduced());
        let lhs: Vec<[u64; 3]> = Sign::BOTH
            .iter()
            .flat_map(|&eps| {
                (0..r).map(move |k| {
                    [
                        c1,
                        ring.reduce(sv * x_value(l, eps, k)),
                        ring.reduce(sv * sv * y_value(l, eps, eps, k)),
                    ]
                })
            })
            .collect();
        for (j, &s2) in units.iter().enumerate() {
            if !unit_filter(s, s2) {
                continue;
            }
            for (ei, eps) in Sign::BOTH.into_iter().enumerate() {
                for eps2 in Sign::BOTH {
                    for k in 0..r {
                        let key = (eps, eps2, lhs[ei * r as usize + k as usize]);
                        let Some(k2s) = rhs[j].get(&key) else {
                            continue;
                        };
                        for &k2 in k2s {
                            budget.spend(1)?;
                            let cert = HomotopyCert {
                                s,
                                s2,
                                epsilon: eps,
                                epsilon2: eps2,
                                k,
                                k2,
                            };
                            if !emit(cert) {
                                return Ok(());
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn walk_diffeo(
    l: &BundleSpec,
    l2: &BundleSpec,
    flip: RelOrientation,
    config: &DeciderConfig,
    emit: &mut dyn FnMut(DiffeoCert) -> bool,
) -> Result<()> {
    let ring = check_pair(l, l2)?;
    let r = ring.modulus();
    let f = flip.value() as i128;
    let mut budget = Budget::new(config.scan_cap);
    let deltas: Vec<Sign> = Sign::BOTH
        .into_iter()
        .filter(|&d| l.ab() == f * d.value() as i128 * l2.ab())
        .collect();
    if deltas.is_empty() {
        return Ok(());
    }

    type Key = (Sign, Sign, Sign, [u64; 2]);
    let mut rhs: HashMap<Key, Vec<u64>> = HashMap::new();
    for eps in Sign::BOTH {
        for eps2 in Sign::BOTH {
            let eps_n = rhs_eps_n(config.third, eps, eps2);
            for &delta in &deltas {
                budget.spend(r)?;
                let fd = f * delta.value() as i128;
                for k2 in 0..r {
                    let c2 = ring.reduce(fd * x_value(l2, eps2, k2));
                    let c3 = ring.reduce(f * y_value(l2, eps2, eps_n, k2));
                    rhs.entry((eps, eps2, delta, [c2, c3]))
                        .or_default()
                        .push(k2);
                }
            }
        }
    }
    for eps in Sign::BOTH {
        budget.spend(r)?;
        for eps2 in Sign::BOTH {
            for &delta in &deltas {
                for k in 0..r {
                    let c2 = ring.reduce(x_value(l, eps, k));
                    let c3 = ring.reduce(y_value(l, eps, eps, k));
                    let Some(k2s) = rhs.get(&(eps, eps2, delta, [c2, c3])) else {
                        continue;
                    };
                    for &k2 in k2s {
                        budget.spend(1)?;
                        let cert = DiffeoCert {
                            epsilon: eps,
                            epsilon2: eps2,
                            delta,
                            k,
                            k2,
                        };
                        if !emit(cert) {
                            return Ok(());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn all_units(_: Unit, _: Unit) -> bool {
    true
}

/// Lexicographically least homotopy certificate, if any.
pub fn decide_homotopy(
    l: &BundleSpec,
    l2: &BundleSpec,
    flip: RelOrientation,
) -> Result<Option<HomotopyCert>> {
    decide_homotopy_with(l, l2, flip, &DeciderConfig::default())
}

pub fn decide_homotopy_with(
    l: &BundleSpec,
    l2: &BundleSpec,
    flip: RelOrientation,
    config: &DeciderConfig,
) -> Result<Option<HomotopyCert>> {
    let mut found = None;
    walk_homotopy(l, l2, flip, config, &all_units, &mut |c| {
        found = Some(c);
        false
    })?;
    Ok(found)
}

/// Every homotopy certificate, in lexicographic order.
pub fn homotopy_certificates(
    l: &BundleSpec,
    l2: &BundleSpec,
    flip: RelOrientation,
    config: &DeciderConfig,
) -> Result<Vec<HomotopyCert>> {
    let mut out = Vec::new();
    walk_homotopy(l, l2, flip, config, &all_units, &mut |c| {
        out.push(c);
        true
    })?;
    Ok(out)
}

/// Lexicographically least diffeomorphism certificate in the order
/// `(eps, eps', delta, k, k')`, if any.
pub fn decide_diffeo(
    l: &BundleSpec,
    l2: &BundleSpec,
    flip: RelOrientation,
) -> Result<Option<DiffeoCert>> {
    decide_diffeo_with(l, l2, flip, &DeciderConfig::default())
}

pub fn decide_diffeo_with(
    l: &BundleSpec,
    l2: &BundleSpec,
    flip: RelOrientation,
    config: &DeciderConfig,
) -> Result<Option<DiffeoCert>> {
    let mut found = None;
    walk_diffeo(l, l2, flip, config, &mut |c| {
        found = Some(c);
        false
    })?;
    Ok(found)
}

pub fn diffeo_certificates(
    l: &BundleSpec,
    l2: &BundleSpec,
    flip: RelOrientation,
    config: &DeciderConfig,
) -> Result<Vec<DiffeoCert>> {
    let mut out = Vec::new();
    walk_diffeo(l, l2, flip, config, &mut |c| {
        out.push(c);
        true
    })?;
    Ok(out)
}

/// Unoriented homotopy equivalence: the first flip (`+1` before `-1`) that
/// admits a certificate.
pub fn decide_homotopy_unoriented(
    l: &BundleSpec,
    l2: &BundleSpec,
) -> Result<Option<(RelOrientation, HomotopyCert)>> {
    for flip in Sign::BOTH {
        if let Some(c) = decide_homotopy(l, l2, flip)? {
            return Ok(Some((flip, c)));
        }
    }
    Ok(None)
}

pub fn decide_diffeo_unoriented(
    l: &BundleSpec,
    l2: &BundleSpec,
) -> Result<Option<(RelOrientation, DiffeoCert)>> {
    for flip in Sign::BOTH {
        if let Some(c) = decide_diffeo(l, l2, flip)? {
            return Ok(Some((flip, c)));
        }
    }
    Ok(None)
}

/// Ratio `s' s^{-1}`, the unit by which a homotopy equivalence with
/// certificate `c` acts on the fundamental group.
pub fn unit_ratio(ring: &ModRing, c: &HomotopyCert) -> Unit {
    let inv = ring.inverse(c.s);
    ring.unit(c.s2.value() as i128 * inv.value() as i128)
        .expect("product of units")
}

/// Diffeomorphism through the rho-invariant criterion directly: a homotopy
/// certificate whose unit ratio `u` satisfies `rho(u beta, L) = flip
/// rho(beta, L2)` for all `beta`.
///
/// When `ab` and `a'b'` are both nonzero this coincides with
/// [`decide_diffeo`]. When both vanish rho is identically zero and every
/// homotopy certificate qualifies.
pub fn decide_diffeo_via_rho(
    l: &BundleSpec,
    l2: &BundleSpec,
    flip: RelOrientation,
) -> Result<Option<HomotopyCert>> {
    let mut found = None;
    walk_rho_filtered(l, l2, flip, &DeciderConfig::default(), &mut |c| {
        found = Some(c);
        false
    })?;
    Ok(found)
}

fn walk_rho_filtered(
    l: &BundleSpec,
    l2: &BundleSpec,
    flip: RelOrientation,
    config: &DeciderConfig,
    emit: &mut dyn FnMut(HomotopyCert) -> bool,
) -> Result<()> {
    let ring = check_pair(l, l2)?;
    let filter = |s: Unit, s2: Unit| {
        let u = unit_ratio(
            &ring,
            &HomotopyCert {
                s,
                s2,
                epsilon: Sign::Plus,
                epsilon2: Sign::Plus,
                k: 0,
                k2: 0,
            },
        );
        rho_match_closed_form(l, l2, u, flip).unwrap_or(false)
    };
    walk_homotopy(l, l2, flip, config, &filter, emit)
}

/// Warning attached to diffeomorphism verdicts when `ab a'b' = 0`: the
/// congruence criterion is derived through injectivity of rho, which fails
/// when `ab = 0`.
pub fn coverage_warning(l: &BundleSpec, l2: &BundleSpec) -> Option<&'static str> {
    (l.ab() * l2.ab() == 0).then_some(
        "proof-coverage: ab*a'b' = 0, the diffeomorphism criterion relies on rho-injectivity",
    )
}

/// `from -> to` on `H^2`, both in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ClassAction {
    pub from: CohomClass,
    pub to: CohomClass,
}

fn action(l: &BundleSpec, eps: Sign, k: u64, eps2: Sign, k2: u64) -> ClassAction {
    ClassAction {
        from: l.canonical_class(l.induced_class(eps, k)),
        to: l.canonical_class(l.induced_class(eps2, k2)),
    }
}

/// Actions on `H^2` of all self-homotopy equivalences of `L`, both
/// orientation characters: a certificate relating smoothings `(s, eps, k)`
/// and `(s', eps', k')` carries the class of `(eps, k)` to that of
/// `(eps', k')`.
pub fn self_homotopy_actions(l: &BundleSpec) -> Result<BTreeSet<ClassAction>> {
    let config = DeciderConfig {
        scan_cap: u64::MAX,
        ..DeciderConfig::default()
    };
    let mut out = BTreeSet::new();
    for flip in Sign::BOTH {
        walk_homotopy(l, l, flip, &config, &all_units, &mut |c| {
            out.insert(action(l, c.epsilon, c.k, c.epsilon2, c.k2));
            true
        })?;
    }
    Ok(out)
}

/// Actions on `H^2` realized by self-diffeomorphisms of `L`.
///
/// Computed from homotopy certificates whose unit ratio matches rho. For
/// `ab != 0` this is the same set as [`diffeo_cert_actions`]; for `ab = 0` it
/// is every self-homotopy action.
pub fn self_diffeo_actions(l: &BundleSpec) -> Result<BTreeSet<ClassAction>> {
    let config = DeciderConfig {
        scan_cap: u64::MAX,
        ..DeciderConfig::default()
    };
    let mut out = BTreeSet::new();
    for flip in Sign::BOTH {
        walk_rho_filtered(l, l, flip, &config, &mut |c| {
            out.insert(action(l, c.epsilon, c.k, c.epsilon2, c.k2));
            true
        })?;
    }
    Ok(out)
}

/// Actions read off the diffeomorphism certificates `(L, L)` for both flips.
pub fn diffeo_cert_actions(l: &BundleSpec) -> Result<BTreeSet<ClassAction>> {
    let config = DeciderConfig {
        scan_cap: u64::MAX,
        ..DeciderConfig::default()
    };
    let mut out = BTreeSet::new();
    for flip in Sign::BOTH {
        walk_diffeo(l, l, flip, &config, &mut |c| {
            out.insert(action(l, c.epsilon, c.k, c.epsilon2, c.k2));
            true
        })?;
    }
    Ok(out)
}
