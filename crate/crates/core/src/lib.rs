//! Classification of the five-manifolds `L^{a,b}`: total spaces of principal
//! circle bundles over `S^2 x S^2` with Euler class `a x + b y`, for
//! fundamental group `Z/r` with `gcd(r, 6) = 1`.
//!
//! * [`modring`]: arithmetic in `Z/r` and the unit searches.
//! * [`bundle`]: `L^{a,b}`, its second cohomology and primitive classes.
//! * [`rho`]: the rho-invariant.
//! * [`classify`]: homotopy and diffeomorphism deciders with certificates.
//! * [`witness`]: non-diffeomorphic pairs of souls in line bundles over
//!   `L^{r, qr}`.
//! * [`forms`]: multisignature and Arf invariant over `Z[Z/r]`.
//! * [`family`]: bounded enumeration and partitioning of bundle families.
//!
//! ```
//! use labclass::{BundleSpec, Sign};
//! use labclass::classify::{decide_diffeo, decide_homotopy};
//!
//! let l = BundleSpec::new(5, 5).unwrap();
//! let l2 = BundleSpec::new(5, 10).unwrap();
//! assert!(decide_homotopy(&l, &l2, Sign::Plus).unwrap().is_some());
//! assert!(decide_diffeo(&l, &l2, Sign::Plus).unwrap().is_none());
//! ```

pub mod bundle;
pub mod classify;
pub mod error;
pub mod family;
pub mod forms;
pub mod modring;
pub mod rho;
pub mod sign;
pub mod witness;

pub use bundle::{BundleSpec, CohomClass, SmoothingParams};
pub use error::{Error, Result};
pub use modring::{bezout_pair, ModRing, Unit};
pub use sign::Sign;
