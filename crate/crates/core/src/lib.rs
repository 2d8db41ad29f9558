//! Two-row Hecke / Temperley-Lieb representations of braid groups over
//! finite fields, and desk-scale certification of their images.
//!
//! The crate is organized bottom-up:
//!
//! - [`field`]: exact arithmetic in `F_{p^d}`, quantum integers, Frobenius,
//!   Hilbert 90.
//! - [`linalg`]: dense matrices over a finite field, kernels, enveloping
//!   algebra dimension, hermitian congruence, transvections.
//! - [`rep`]: seminormal matrices for the shapes `[n-r, r]`, relation
//!   checks, spectra, branching, the parameter gate and the
//!   linear/unitary dichotomy.
//! - [`unitary`]: invariant hermitian forms and conjugation into the
//!   standard unitary group.
//! - [`group`]: closure enumeration, classical group orders, SL/SU
//!   containment certificates, transvection census, Dickson
//!   classification and pairwise product certificates.
//!
//! ```
//! use braidimage::field::Field;
//! use braidimage::rep::{build_rep, RepParams};
//! use braidimage::group::{closure, certify_contains_sl, Verdict};
//!
//! let f8 = Field::new(2, 3, None).unwrap();
//! let alpha = f8.element_of_order(7).unwrap();
//! let bundle = build_rep(&RepParams::new(3, 1, alpha).unwrap(), false).unwrap();
//! let image = closure(&bundle.gens, 1 << 20).unwrap();
//! assert_eq!(image.order(), 3528);
//! assert!(matches!(certify_contains_sl(&image).verdict, Verdict::ContainsSL));
//! ```

pub mod field;
pub mod group;
pub mod linalg;
mod poly;
pub mod rep;
pub mod unitary;

pub use field::{ExtPair, Field, FieldError, FqElem};
pub use linalg::{LinalgError, Matrix};
pub use rep::{RepBundle, RepCase, RepError, RepParams, SpectrumProfile};
