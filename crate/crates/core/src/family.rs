//! Bounded enumeration of the bundles with `pi_1 = Z/r`, partitioned into
//! homotopy and diffeomorphism classes.
//!
//! The homotopy congruences separate into a left side depending only on
//! `(L, s, eps, k)` and a right side depending only on `(L', s', eps', k')`.
//! Each bundle therefore carries a finite set of triples mod `r`, and two
//! bundles are homotopy equivalent exactly when their sets meet (up to the
//! global sign coming from orientation). The same holds for the
//! diffeomorphism conditions with keys `(ab, X, Y)`. Classes are the
//! connected components of the "shares a key" relation.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::bundle::BundleSpec;
use crate::error::{Error, Result};
use crate::sign::Sign;

#[derive(Debug, Clone)]
pub struct EnumerateOptions {
    pub r: i64,
    pub bound: i64,
    /// Treat `(a, b)` and `(b, a)` as one member.
    pub identify_swap: bool,
    /// Refuse to build more than this many members.
    pub member_cap: u64,
}

impl EnumerateOptions {
    pub fn new(r: i64, bound: i64) -> Self {
        Self {
            r,
            bound,
            identify_swap: false,
            member_cap: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Member {
    pub a: i64,
    pub b: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub r: i64,
    pub bound: i64,
    pub identify_swap: bool,
    pub members: Vec<Member>,
    pub homotopy_classes: Vec<Vec<usize>>,
    pub diffeo_classes: Vec<Vec<usize>>,
    /// Per homotopy class, one member for each distinct `|ab|`, when there
    /// are at least two.
    pub theorem1_families: Vec<Vec<usize>>,
    pub largest_family: usize,
    /// Smallest bound at which some homotopy class already contains two
    /// distinct values of `|ab|`.
    pub minimal_family_bound: Option<i64>,
}

/// Classes ordered by smallest member, members ascending.
fn classes_of(uf: UnionFind<usize>) -> Vec<Vec<usize>> {
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut first: HashMap<usize, usize> = HashMap::new();
    for (i, root) in uf.into_labeling().into_iter().enumerate() {
        let key = *first.entry(root).or_insert(i);
        by_root.entry(key).or_default().push(i);
    }
    by_root.into_values().collect()
}

/// All `(a, b)` with `gcd(a, b) = r` and `0 < |a|, |b| <= bound`, ascending.
pub fn members(opts: &EnumerateOptions) -> Result<Vec<BundleSpec>> {
    let r = opts.r;
    if !(r > 1 && r.gcd(&6) == 1) {
        return Err(Error::InadmissibleModulus(r.max(0) as u64));
    }
    if opts.bound < r {
        return Err(Error::Precondition(format!(
            "bound {} is smaller than r = {r}",
            opts.bound
        )));
    }
    let steps = opts.bound / r;
    let coords: Vec<i64> = (-steps..=steps).filter(|&t| t != 0).collect();
    let mut out = Vec::new();
    for &a0 in &coords {
        for &b0 in &coords {
            if a0.gcd(&b0) != 1 {
                continue;
            }
            if opts.identify_swap && (b0, a0) < (a0, b0) {
                continue;
            }
            out.push(BundleSpec::new(a0 * r, b0 * r)?);
            if out.len() as u64 > opts.member_cap {
                return Err(Error::ScanCapExceeded {
                    cap: opts.member_cap,
                });
            }
        }
    }
    Ok(out)
}

/// Keys `(s^3 a0 b0, s X, s^2 Y) mod r` over all `(s, eps, k)`, each
/// normalized to the smaller of itself and its negative.
pub fn homotopy_keys(l: &BundleSpec) -> Vec<[u64; 3]> {
    let ring = l.ring();
    let r = ring.modulus();
    let mut keys = Vec::with_capacity(ring.units().len() * 2 * r as usize);
    for s in ring.units() {
        let s = s.value() as i128;
        let c1 = s.pow(3) * l.ab_reduced();
        for eps in Sign::BOTH {
            let e = eps.value() as i128;
            for k in 0..r as i128 {
                let u = e * l.m as i128 + k * l.a0 as i128;
                let v = e * l.n as i128 - k * l.b0 as i128;
                let y = l.b0 as i128 * u - l.a0 as i128 * v;
                let t = [c1, s * u * v, s * s * y];
                let pos = t.map(|x| ring.reduce(x));
                let neg = t.map(|x| ring.reduce(-x));
                keys.push(pos.min(neg));
            }
        }
    }
    keys.sort_unstable();
    keys.dedup();
    keys
}

/// Keys `(ab, X mod r, Y mod r)` over all `(eps, k)`, normalized over the
/// four sign changes `(ab, X, Y) -> (sigma ab, sigma X, tau Y)`.
pub fn diffeo_keys(l: &BundleSpec) -> Vec<(i128, u64, u64)> {
    let ring = l.ring();
    let r = ring.modulus();
    let mut keys = Vec::with_capacity(2 * r as usize);
    for eps in Sign::BOTH {
        let e = eps.value() as i128;
        for k in 0..r as i128 {
            let u = e * l.m as i128 + k * l.a0 as i128;
            let v = e * l.n as i128 - k * l.b0 as i128;
            let (x, y) = (u * v, l.b0 as i128 * u - l.a0 as i128 * v);
            let mut best = None;
            for sigma in [1i128, -1] {
                for tau in [1i128, -1] {
                    let key = (sigma * l.ab(), ring.reduce(sigma * x), ring.reduce(tau * y));
                    best = Some(best.map_or(key, |b: (i128, u64, u64)| b.min(key)));
                }
            }
            keys.push(best.expect("four candidates"));
        }
    }
    keys.sort_unstable();
    keys.dedup();
    keys
}

fn join_by_keys<K: std::hash::Hash + Eq + Clone>(key_sets: &[Vec<K>]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(key_sets.len());
    let mut owner: HashMap<K, usize> = HashMap::new();
    for (i, keys) in key_sets.iter().enumerate() {
        for k in keys {
            match owner.get(k) {
                Some(&j) => {
                    uf.union(i, j);
                }
                None => {
                    owner.insert(k.clone(), i);
                }
            }
        }
    }
    classes_of(uf)
}

/// Unoriented homotopy classes of `bundles` (all with the same `r`).
pub fn homotopy_partition(bundles: &[BundleSpec]) -> Vec<Vec<usize>> {
    let keys: Vec<_> = bundles.par_iter().map(homotopy_keys).collect();
    join_by_keys(&keys)
}

pub fn diffeo_partition(bundles: &[BundleSpec]) -> Vec<Vec<usize>> {
    let keys: Vec<_> = bundles.par_iter().map(diffeo_keys).collect();
    join_by_keys(&keys)
}

pub fn enumerate(opts: &EnumerateOptions) -> Result<FamilyReport> {
    let bundles = members(opts)?;
    let homotopy_classes = homotopy_partition(&bundles);
    let diffeo_classes = diffeo_partition(&bundles);

    let abs_ab = |i: usize| bundles[i].ab().abs();
    let height = |i: usize| bundles[i].a.abs().max(bundles[i].b.abs());

    let mut theorem1_families = Vec::new();
    let mut minimal_family_bound: Option<i64> = None;
    for class in &homotopy_classes {
        let mut reps: BTreeMap<i128, usize> = BTreeMap::new();
        for &i in class {
            reps.entry(abs_ab(i)).or_insert(i);
        }
        if reps.len() < 2 {
            continue;
        }
        theorem1_families.push(reps.into_values().collect());

        let mut by_height: Vec<usize> = class.clone();
        by_height.sort_by_key(|&i| height(i));
        let first = abs_ab(by_height[0]);
        if let Some(&i) = by_height.iter().find(|&&i| abs_ab(i) != first) {
            let h = height(i);
            minimal_family_bound = Some(minimal_family_bound.map_or(h, |m| m.min(h)));
        }
    }
    let largest_family = theorem1_families.iter().map(Vec::len).max().unwrap_or(0);

    Ok(FamilyReport {
        r: opts.r,
        bound: opts.bound,
        identify_swap: opts.identify_swap,
        members: bundles.iter().map(|l| Member { a: l.a, b: l.b }).collect(),
        homotopy_classes,
        diffeo_classes,
        theorem1_families,
        largest_family,
        minimal_family_bound,
    })
}
