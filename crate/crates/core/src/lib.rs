//! Exact construction of iterated integrals of polynomials, arbitrary-precision
//! zero finding, and numerical checks of their asymptotic behaviour.
//!
//! ```
//! use polyint::families::{bcd, binom_pow};
//! use polyint::rootfind::{roots, RootOptions};
//! use polyint::GaussRat;
//!
//! // Q_{n,m} is the m-fold integral of (z+1)^n from 0, divided by z^m
//! let q = bcd(2, 1);
//! assert_eq!(q.to_strings(), ["3", "3", "1"]);
//! let i = binom_pow(2).iterated_integral(1, &GaussRat::zero()).unwrap();
//! assert_eq!(i, q.shift_up(1));
//!
//! let zs = roots(&bcd(30, 30), &RootOptions::for_degree(30)).unwrap();
//! assert!(zs.converged);
//! assert_eq!(zs.len(), 30);
//! ```

pub mod asympt;
pub mod bigcomplex;
pub mod error;
pub mod exactpoly;
pub mod families;
pub mod gauss;
pub mod regions;
pub mod rootfind;
pub mod verify;

pub use bigcomplex::BigComplex;
pub use error::{Error, Result};
pub use exactpoly::RatPoly;
pub use families::FamilySpec;
pub use gauss::GaussRat;
