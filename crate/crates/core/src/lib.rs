//! Characteristic and coboundary quasi-polynomials of central arrangements
//! over `Z` and over rings of integers of quadratic fields.
//!
//! Everything is exact: counts come either from lattice computations
//! (Hermite and Smith normal forms) or from brute-force enumeration of
//! residue rings, and the two routes are cross-checked throughout.
//!
//! ```
//! use quasichar::{Arrangement, Limits, RingElement, RingSpec};
//! use quasichar::coboundary::coboundary_quasi_polynomial;
//!
//! let ring = RingSpec::quadratic(-5).unwrap();
//! let a = Arrangement::new(
//!     ring,
//!     2,
//!     vec![
//!         vec![RingElement::pair(2, 0), RingElement::pair(1, -1)],
//!         vec![RingElement::pair(1, 1), RingElement::pair(3, 0)],
//!     ],
//! )
//! .unwrap();
//! let chi = coboundary_quasi_polynomial(&a, &Limits::default()).unwrap();
//! assert_eq!(chi.period().norm(), 6u32.into());
//! assert_eq!(chi.constituents().len(), 4);
//! ```

pub mod arrangement;
pub mod cli;
pub mod coboundary;
pub mod codes;
pub mod error;
pub mod io;
pub mod layers;
pub mod linalg;
pub mod poly;
pub mod quasi;
pub mod ring;
pub mod verify;

pub use arrangement::{Arrangement, SubsetKey};
pub use error::{Error, Result};
pub use linalg::{IntMatrix, Lattice, SnfResult};
pub use poly::{BiPoly, UniPoly};
pub use quasi::{BiQuasiPolynomial, QuasiPolynomial};
pub use ring::{Ideal, ResidueRing, RingElement, RingSpec};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Resource bounds shared by every enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest point set `N(a)^l` enumerated by brute force.
    pub max_points: u64,
    /// Largest arrangement size for subset loops over `2^n` subsets.
    pub max_subset_size: usize,
    /// Largest ideal norm for divisor enumeration and residue rings.
    pub max_norm: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_points: 10_000_000, max_subset_size: 20, max_norm: 1_000_000 }
    }
}

/// Subset masks are `u32`, so this is a hard ceiling regardless of flags.
pub const SUBSET_CEILING: usize = 30;

impl Limits {
    /// `N(a)^l` as a machine integer, if within `max_points`.
    pub fn check_points(&self, norm: &BigInt, ell: usize) -> Result<u64> {
        let total = norm.pow(ell as u32);
        total
            .to_u64()
            .filter(|&v| v <= self.max_points)
            .ok_or_else(|| Error::resource("points", &total, self.max_points))
    }

    pub fn check_subsets(&self, n: usize) -> Result<()> {
        let cap = self.max_subset_size.min(SUBSET_CEILING);
        if n > cap {
            return Err(Error::resource("arrangement size", n, cap));
        }
        Ok(())
    }
}
