//! Lower bounds on Dirichlet Laplacian and clamped-plate eigenvalues.
//!
//! The numerical core is generic over [`Scalar`] (`f32` or `f64`); the aliases at the crate
//! root fix it to `f64`, which is what the verification harness uses.
//!
//! ```
//! use spectral_lb::bounds::{li_yau_sum, planar_four_term_sum};
//! use spectral_lb::spectra::box_spectrum;
//! use spectral_lb::Domain;
//!
//! let c = Domain::unit_box(2).constants()?;
//! let exact = box_spectrum(&[1.0, 1.0], 500)?;
//! let k = 500;
//! let weyl = li_yau_sum(&c, k)?.value;
//! let refined = planar_four_term_sum(&c, k)?.value;
//! assert!(weyl < refined && refined <= exact.partial_sum(k).unwrap());
//! # Ok::<(), spectral_lb::Error>(())
//! ```

// Negated comparisons double as NaN rejection in argument checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod operator;
pub mod rearrangement;
pub mod roots;
pub mod scalar;
pub mod spectra;

pub use bounds::{evaluate, BoundFlags, Family, Variant};
pub use error::{Error, Result};
pub use geometry::Shape;
pub use operator::{Direction, Operator};
pub use rearrangement::{BandChoice, BandPolicy};
pub use scalar::Scalar;
pub use spectra::Provenance;

pub type Domain = geometry::DomainSpec<f64>;
pub type Constants = geometry::SpectralConstants<f64>;
pub type Bound = bounds::BoundEvaluation<f64>;
pub type Params = bounds::FamilyParams<f64>;
pub type RefSpectrum = spectra::Spectrum<f64>;
pub type Profile = rearrangement::Profile<f64>;
