//! Certification engine for images of braid groups.
//!
//! Everything here works on fully enumerated groups: [`closure`] and
//! [`projective_closure`] run a breadth-first search over products of the
//! generators, storing each element as a bit-packed code. Certificates are
//! then order comparisons against [`classical_order`].

mod arith;
mod bundle;
mod certify;
mod census;
mod classical;
mod closure;
mod dickson;
mod pack;
mod product;

pub use bundle::{
    certify_bundle, certify_bundle_with, group_report, BundleImage, Enumeration, GroupReport, DIRECT_LIMIT,
};
pub use certify::{certify_contains_sl, certify_contains_su, det_image, Certificate, Route, Verdict};
pub use census::{
    census_bounds, monomial_group_census, su3_printed_count, transvection_census, unitary_transvection_count,
    CensusBounds,
};
pub use classical::{classical_order, ClassicalKind, OrderError};
pub use closure::{closure, projective_closure, GroupClosure, GroupError, DEFAULT_CAP};
pub use dickson::{braid3_model, commutator_witness, dickson_classify, DicksonClass, DicksonReport};
pub use pack::{pack, unpack, PackedCode, Packer};
pub use product::{product_certify, FactorReport, PairReport, PairRoute, ProductReport, ProductVerdict};
