//! Witnesses for non-diffeomorphic pairs `(N, S)`, `(N, S')` over
//! `L^{r, qr}`, and the hypothesis under which no such pair exists.
//!
//! With `m = 0, n = 1` and `q = 0 (mod r)` the homotopy congruences for
//! `L^{r,qr}` against itself reduce to
//!
//! ```text
//! s k eps   = s' k' eps'   (mod r)
//! s^2 eps   = s'^2 eps'    (mod r)
//! ```
//!
//! If `s^2 = -1` has a solution, `(s, 1, 1, -1, -1, s)` solves both, giving a
//! self-homotopy equivalence `h`. The witness class is `y`, the image of the
//! smoothing `(eps, k) = (1, -1)`, and `h^*(y)` is the image of
//! `(eps', k') = (-1, s)`. No self-diffeomorphism carries `y` to `+-h^*(y)`.

use serde::Serialize;

use crate::bundle::{BundleSpec, CohomClass};
use crate::classify::{homotopy_holds, self_diffeo_actions, HomotopyCert, ThirdCongruence};
use crate::error::{Error, Result};
use crate::modring::ModRing;
use crate::sign::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessCase {
    /// `s^2 = -1`, parameters `(s, 1, 1, -1, -1, s)`.
    SquareMinusOne,
    /// `s^2 = 1` with `s != +-1`, parameters `(s, 1, 1, 1, 1, s)`.
    SquareOne,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Witness,
    NoWitness,
    PreconditionFailed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub r: i64,
    pub q: i64,
    pub bundle: Option<(i64, i64)>,
    pub case: Option<WitnessCase>,
    pub params: Option<HomotopyCert>,
    /// `s k eps = s' k' eps' (mod r)`.
    pub eq9: bool,
    /// `s^2 eps = s'^2 eps' (mod r)`.
    pub eq10: bool,
    /// All three homotopy congruences hold for `params`.
    pub homotopy_verified: bool,
    pub y: Option<CohomClass>,
    pub y_primitive: bool,
    pub h_star_y: Option<CohomClass>,
    /// Number of self-diffeomorphism actions on `H^2`.
    pub diffeo_actions: usize,
    /// Self-diffeomorphism actions sending `y` to `+-h^*(y)`.
    pub realizing_actions: usize,
    pub verdict: Verdict,
    pub failed_precondition: Option<String>,
}

impl WitnessReport {
    fn failed(r: i64, q: i64, why: impl Into<String>) -> Self {
        Self {
            r,
            q,
            bundle: None,
            case: None,
            params: None,
            eq9: false,
            eq10: false,
            homotopy_verified: false,
            y: None,
            y_primitive: false,
            h_star_y: None,
            diffeo_actions: 0,
            realizing_actions: 0,
            verdict: Verdict::PreconditionFailed,
            failed_precondition: Some(why.into()),
        }
    }
}

fn admissible(r: i64) -> bool {
    r > 1 && r % 2 != 0 && r % 3 != 0
}

pub fn theorem5_witness(r: i64, q: i64) -> Result<WitnessReport> {
    if !admissible(r) {
        return Ok(WitnessReport::failed(
            r,
            q,
            "r must be > 1 and coprime to 6",
        ));
    }
    if q == 0 {
        return Ok(WitnessReport::failed(r, q, "q must be nonzero"));
    }
    if q % r != 0 {
        return Ok(WitnessReport::failed(r, q, "q must be divisible by r"));
    }
    let ring = ModRing::new(r)?;
    let minus_one = ring.find_units_with_power(2, -1);
    let nontrivial_involutions: Vec<_> = ring
        .find_units_with_power(2, 1)
        .into_iter()
        .filter(|u| !ring.congruent(u.value() as i128, 1) && !ring.congruent(u.value() as i128, -1))
        .collect();
    let (case, s) = if let Some(&s) = minus_one.first() {
        (WitnessCase::SquareMinusOne, s)
    } else if let Some(&s) = nontrivial_involutions.first() {
        (WitnessCase::SquareOne, s)
    } else {
        return Ok(WitnessReport::failed(
            r,
            q,
            "no unit s with s^2 = -1 and no unit s != +-1 with s^2 = 1",
        ));
    };
    let l = BundleSpec::new(
        r,
        q.checked_mul(r)
            .ok_or(Error::Precondition("q r overflows".into()))?,
    )?;
    debug_assert_eq!((l.m, l.n), (0, 1));

    let one = ring.unit(1).expect("r > 1");
    let (epsilon2, k) = match case {
        WitnessCase::SquareMinusOne => (Sign::Minus, r as u64 - 1),
        WitnessCase::SquareOne => (Sign::Plus, 1),
    };
    let params = HomotopyCert {
        s,
        s2: one,
        epsilon: Sign::Plus,
        epsilon2,
        k,
        k2: s.value(),
    };

    let (sv, s2v) = (params.s.value() as i128, params.s2.value() as i128);
    let (e, e2) = (
        params.epsilon.value() as i128,
        params.epsilon2.value() as i128,
    );
    let eq9 = ring.congruent(sv * params.k as i128 * e, s2v * params.k2 as i128 * e2);
    let eq10 = ring.congruent(sv * sv * e, s2v * s2v * e2);
    let homotopy_verified = homotopy_holds(&l, &l, Sign::Plus, &params, ThirdCongruence::Symmetric);

    let y = l.induced_class(params.epsilon, params.k);
    let hy = l.induced_class(params.epsilon2, params.k2);
    let actions = self_diffeo_actions(&l)?;
    let realizing = actions
        .iter()
        .filter(|act| {
            l.classes_equal(act.from, y)
                && (l.classes_equal(act.to, hy) || l.classes_equal(act.to, -hy))
        })
        .count();

    let verdict = if eq9 && eq10 && homotopy_verified && l.is_primitive(y) && realizing == 0 {
        Verdict::Witness
    } else {
        Verdict::NoWitness
    };
    Ok(WitnessReport {
        r,
        q,
        bundle: Some((l.a, l.b)),
        case: Some(case),
        params: Some(params),
        eq9,
        eq10,
        homotopy_verified,
        y: Some(y),
        y_primitive: l.is_primitive(y),
        h_star_y: Some(hy),
        diffeo_actions: actions.len(),
        realizing_actions: realizing,
        verdict,
        failed_precondition: None,
    })
}

/// Whether `Z/r` has no nontrivial cube root of unity and `q` is zero or not
/// divisible by `r`.
pub fn theorem5_ii_check(r: i64, q: i64) -> Result<bool> {
    if !admissible(r) {
        return Err(Error::InadmissibleModulus(r.max(0) as u64));
    }
    let ring = ModRing::new(r)?;
    let cube_roots = ring.find_units_with_power(3, 1);
    Ok(cube_roots.len() == 1 && (q == 0 || q % r != 0))
}
