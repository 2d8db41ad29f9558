//! Certification of the image of a single representation bundle.

use super::certify::{certify_contains_sl, certify_contains_su, det_image, Certificate};
use super::classical::{classical_order, ClassicalKind};
use super::closure::{closure, projective_closure, GroupClosure, GroupError};
use crate::field::ExtPair;
use crate::linalg::Matrix;
use crate::rep::{RepBundle, RepCase};
use crate::unitary::unitarize;

/// Images whose ambient classical group is larger than this are enumerated
/// in `PGL_N` rather than `GL_N`.
pub const DIRECT_LIMIT: u128 = 1 << 24;

/// Where the image is enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Enumeration {
    /// `GL_N` for small ambient groups, `PGL_N` beyond [`DIRECT_LIMIT`].
    #[default]
    Auto,
    Direct,
    /// Linear case only; unitary images are always enumerated directly.
    Projective,
}

/// The enumerated image of one bundle and its certificate.
pub struct BundleImage {
    /// The generators enumerated: the bundle's own in the linear case, the
    /// unitarized ones otherwise.
    pub gens: Vec<Matrix>,
    pub closure: GroupClosure,
    pub certificate: Certificate,
    pub det_image_order: u64,
    /// `SL` or `SU`.
    pub special: ClassicalKind,
    /// `q` in the linear case, `q^{1/2}` in the unitary case.
    pub base_order: u64,
}

/// Enumerates the image of `bundle` and certifies it against `SL_N(q)` or,
/// after unitarization, `SU_N(q^{1/2})`.
///
/// Linear images go through `PGL_N` once `|GL_N(q)|` exceeds
/// [`DIRECT_LIMIT`].
pub fn certify_bundle(bundle: &RepBundle, cap: usize) -> Result<BundleImage, GroupError> {
    certify_bundle_with(bundle, cap, Enumeration::Auto)
}

/// [`certify_bundle`] with an explicit choice of enumeration.
pub fn certify_bundle_with(bundle: &RepBundle, cap: usize, mode: Enumeration) -> Result<BundleImage, GroupError> {
    let field = bundle.params.field().clone();
    let n = bundle.dim;
    let (gens, special, base_order) = match bundle.case {
        RepCase::Linear => (bundle.gens.clone(), ClassicalKind::SL, field.order()),
        RepCase::Unitary => {
            let pair = ExtPair::new(&field).map_err(|_| GroupError::Inconsistent)?;
            let u = unitarize(bundle, &pair).map_err(|e| GroupError::Unitarize(e.to_string()))?;
            (u.bundle.gens, ClassicalKind::SU, pair.base().order())
        }
    };
    let det_image_order = det_image(&gens)?;
    let (closure, certificate) = match special {
        ClassicalKind::SU => {
            let g = closure(&gens, cap)?;
            let c = certify_contains_su(&g);
            (g, c)
        }
        _ => {
            let full = classical_order(ClassicalKind::GL, n, base_order)?;
            let projective = match mode {
                Enumeration::Auto => full > DIRECT_LIMIT && n > 1,
                Enumeration::Direct => false,
                Enumeration::Projective => true,
            };
            let g = if projective { projective_closure(&gens, cap)? } else { closure(&gens, cap)? };
            let c = certify_contains_sl(&g);
            (g, c)
        }
    };
    Ok(BundleImage { gens, closure, certificate, det_image_order, special, base_order })
}

/// Summary of [`certify_bundle`] plus the census, in serializable form.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GroupReport {
    /// Order of the enumerated group (in `PGL_N` when `projective`).
    pub order: u64,
    pub projective: bool,
    pub capped: bool,
    pub abs_irreducible: bool,
    pub det_image_order: u64,
    /// Transvections in the image; only for complete direct enumerations.
    pub transvection_count: Option<u64>,
    pub verdict: super::certify::Verdict,
    pub certificate: Certificate,
}

/// Runs [`certify_bundle`] and the transvection census.
pub fn group_report(bundle: &RepBundle, cap: usize, mode: Enumeration) -> Result<GroupReport, GroupError> {
    let n = bundle.dim;
    let abs_irreducible = crate::linalg::algebra_dimension(&bundle.gens, n * n)? == n * n;
    let img = certify_bundle_with(bundle, cap, mode)?;
    let g = &img.closure;
    let transvection_count =
        if g.capped() || g.is_projective() { None } else { Some(super::census::transvection_census(g)?) };
    Ok(GroupReport {
        order: g.order(),
        projective: g.is_projective(),
        capped: g.capped(),
        abs_irreducible,
        det_image_order: img.det_image_order,
        transvection_count,
        verdict: img.certificate.verdict.clone(),
        certificate: img.certificate,
    })
}
