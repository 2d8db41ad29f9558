//! Order-based containment certificates.

use serde::{Deserialize, Serialize};

use super::classical::{classical_order, gcd, ClassicalKind};
use super::closure::{GroupClosure, GroupError};
use crate::field::ExtPair;
use crate::linalg::Matrix;

/// Outcome of a containment check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    /// The enumerated group contains `SL_N(F_q)`.
    ContainsSL,
    /// The group lies in `GU_N(base_order)` and contains `SU_N(base_order)`.
    ContainsSU { base_order: u64 },
    /// Complete enumeration, but the available certificate does not decide.
    Inconclusive,
    /// Enumeration hit the cap; nothing is claimed.
    Capped,
    /// Complete enumeration shows the containment fails.
    Refuted,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::ContainsSU { base_order } => write!(f, "ContainsSU({base_order})"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::ContainsSL | Verdict::ContainsSU { .. })
    }
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    /// Count of determinant-one elements against the classical order.
    Direct,
    /// Order of the image in `PGL_N`, lifted back to `GL_N`.
    Projective,
    /// Nothing was computed (capped input or degree one).
    None,
}

/// A verdict together with the numbers it rests on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub route: Route,
    /// Order of the enumerated group (projective if that route was used).
    pub order: u64,
    /// Elements of determinant 1, for the direct route.
    pub det_one_count: Option<u64>,
    /// The classical order the certificate compares against.
    pub target_order: Option<u128>,
    /// For unitary checks: whether every element preserved the form.
    pub upper_containment: Option<bool>,
    pub reason: String,
}

impl Certificate {
    pub(crate) fn bare(verdict: Verdict, order: u64, reason: &str) -> Certificate {
        Certificate {
            verdict,
            route: Route::None,
            order,
            det_one_count: None,
            target_order: None,
            upper_containment: None,
            reason: reason.to_string(),
        }
    }
}

/// Decides `SL_N(F_q) <= G` for an enumerated `G` (or its projective image).
///
/// Direct closures compare the number of determinant-one elements with
/// `|SL_N(q)|`. Projective closures certify when the image is all of
/// `PGL_N(q)`, which contains `PSL_N(q)`, and then lift: any `G` whose
/// image contains `PSL_N` contains `SL_N`.
pub fn certify_contains_sl(g: &GroupClosure) -> Certificate {
    if g.capped() {
        return Certificate::bare(Verdict::Capped, g.order(), "enumeration capped");
    }
    let (n, q) = (g.degree(), g.field().order());
    if n == 1 {
        return Certificate::bare(Verdict::Inconclusive, g.order(), "degree 1: SL_1 is trivial");
    }
    let order_of = |k| classical_order(k, n, q).expect("field order is a prime power");
    if g.is_projective() {
        let pgl = order_of(ClassicalKind::PGL);
        let psl = order_of(ClassicalKind::PSL);
        let o = g.order() as u128;
        let (verdict, reason) = if o == pgl {
            (Verdict::ContainsSL, "projective image is all of PGL_N, which contains PSL_N; lifted to SL_N")
        } else if !o.is_multiple_of(psl) {
            (Verdict::Refuted, "projective order is not divisible by |PSL_N|")
        } else if gcd(n as u128, q as u128 - 1) == 1 {
            // PSL = PGL, so divisibility forces equality; unreachable
            (Verdict::Refuted, "projective order differs from |PSL_N| = |PGL_N|")
        } else {
            (Verdict::Inconclusive, "PSL_N is a proper subgroup of PGL_N here; use the direct route")
        };
        return Certificate {
            verdict,
            route: Route::Projective,
            order: g.order(),
            det_one_count: None,
            target_order: Some(if o == pgl { pgl } else { psl }),
            upper_containment: None,
            reason: reason.to_string(),
        };
    }
    let sl = order_of(ClassicalKind::SL);
    let count = g.count_where(|e| g.det_entries(e) == 1);
    let (verdict, reason) = if count as u128 == sl {
        (Verdict::ContainsSL, "determinant-one elements number |SL_N(q)|")
    } else {
        (Verdict::Refuted, "determinant-one subgroup is smaller than SL_N(q)")
    };
    Certificate {
        verdict,
        route: Route::Direct,
        order: g.order(),
        det_one_count: Some(count),
        target_order: Some(sl),
        upper_containment: None,
        reason: reason.to_string(),
    }
}

/// Decides `SU_N(q0) <= G <= GU_N(q0)` for `G` enumerated over `F_{q0^2}`,
/// where `GU` is the isometry group of the identity form.
pub fn certify_contains_su(g: &GroupClosure) -> Certificate {
    if let Ok(pair) = ExtPair::new(g.field()) {
        if !g.gens().iter().all(|m| is_identity_isometry(m, &pair)) {
            let mut cert = Certificate::bare(Verdict::Refuted, g.order(), "a generator is not an isometry of the identity form");
            cert.upper_containment = Some(false);
            return cert;
        }
    }
    if g.capped() {
        return Certificate::bare(Verdict::Capped, g.order(), "enumeration capped");
    }
    if g.is_projective() {
        return Certificate::bare(Verdict::Inconclusive, g.order(), "unitary certificates need a direct closure");
    }
    let Ok(pair) = ExtPair::new(g.field()) else {
        return Certificate::bare(Verdict::Inconclusive, g.order(), "field has no quadratic subfield");
    };
    let n = g.degree();
    let q0 = pair.base().order();
    let arith = g.arith();
    let upper = g.all(|e| {
        // (eps(G)^T G)_{ij} = sum_k eps(G_{ki}) G_{kj}
        (0..n).all(|i| {
            (0..n).all(|j| {
                let s = (0..n).fold(0u64, |acc, k| {
                    arith.add(acc, arith.mul(pair.eps_code(e[k * n + i]), e[k * n + j]))
                });
                s == (i == j) as u64
            })
        })
    });
    let mut cert = Certificate::bare(Verdict::Inconclusive, g.order(), "");
    cert.upper_containment = Some(upper);
    if !upper {
        cert.verdict = Verdict::Refuted;
        cert.reason = "an element is not an isometry of the identity form".into();
        return cert;
    }
    if n == 1 {
        cert.reason = "degree 1: SU_1 is trivial".into();
        return cert;
    }
    let su = classical_order(ClassicalKind::SU, n, q0).expect("prime power");
    let count = g.count_where(|e| g.det_entries(e) == 1);
    cert.route = Route::Direct;
    cert.det_one_count = Some(count);
    cert.target_order = Some(su);
    if count as u128 == su {
        cert.verdict = Verdict::ContainsSU { base_order: q0 };
        cert.reason = "inside GU_N and determinant-one elements number |SU_N|".into();
    } else {
        cert.verdict = Verdict::Refuted;
        cert.reason = "determinant-one subgroup is smaller than SU_N".into();
    }
    cert
}

fn is_identity_isometry(m: &Matrix, pair: &ExtPair) -> bool {
    m.conj_transpose(pair).mul(m).map(|p| p.is_identity()).unwrap_or(false)
}

/// Order of the subgroup of `F_q^x` generated by the generator determinants.
pub fn det_image(gens: &[Matrix]) -> Result<u64, GroupError> {
    let mut acc = 1u64;
    for (i, g) in gens.iter().enumerate() {
        let d = g.det()?;
        let o = d.mult_order().map_err(|_| GroupError::Singular(i))?;
        acc = acc / gcd(acc as u128, o as u128) as u64 * o;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::group::{closure, projective_closure};
    use crate::rep::{build_rep, RepParams};
    use crate::unitary::unitarize;

    fn m(f: &Field, n: usize, d: &[u64]) -> Matrix {
        Matrix::from_codes(f, n, n, d.to_vec()).unwrap()
    }

    #[test]
    fn unit_elementary_matrices_only_give_sl2_f2() {
        let f8 = Field::new(2, 3, None).unwrap();
        let g = closure(&[m(&f8, 2, &[1, 1, 0, 1]), m(&f8, 2, &[1, 0, 1, 1])], 1 << 20).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(certify_contains_sl(&g).verdict, Verdict::Refuted);
    }

    #[test]
    fn sl2_f8_by_elementary_generators() {
        let f8 = Field::new(2, 3, None).unwrap();
        let mut gens = Vec::new();
        for b in [1u64, 2, 4] {
            gens.push(m(&f8, 2, &[1, b, 0, 1]));
            gens.push(m(&f8, 2, &[1, 0, b, 1]));
        }
        let g = closure(&gens, 1 << 20).unwrap();
        let c = certify_contains_sl(&g);
        assert_eq!(c.verdict, Verdict::ContainsSL);
        assert_eq!(c.det_one_count, Some(504));
    }

    #[test]
    fn proper_subgroups_are_never_certified() {
        let f7 = Field::prime_field(7).unwrap();
        // upper unitriangular plus a diagonal: a Borel subgroup, order 42*...
        let g = closure(&[m(&f7, 2, &[1, 1, 0, 1]), m(&f7, 2, &[3, 0, 0, 5])], 1 << 20).unwrap();
        assert!(g.order() < 336);
        assert_eq!(certify_contains_sl(&g).verdict, Verdict::Refuted);
        let p = projective_closure(g.gens(), 1 << 20).unwrap();
        assert_eq!(certify_contains_sl(&p).verdict, Verdict::Refuted);
        let capped = closure(g.gens(), 3).unwrap();
        assert_eq!(certify_contains_sl(&capped).verdict, Verdict::Capped);
    }

    #[test]
    fn n3_bundle_over_f8() {
        let f8 = Field::new(2, 3, None).unwrap();
        let alpha = f8.element_of_order(7).unwrap();
        let b = build_rep(&RepParams::new(3, 1, alpha).unwrap(), false).unwrap();
        let g = closure(&b.gens, 1 << 20).unwrap();
        assert_eq!(g.order(), 3528);
        assert_eq!(certify_contains_sl(&g).verdict, Verdict::ContainsSL);
        let p = projective_closure(&b.gens, 1 << 20).unwrap();
        assert_eq!(p.order(), 504);
        let c = certify_contains_sl(&p);
        assert_eq!((c.verdict, c.route), (Verdict::ContainsSL, Route::Projective));
        assert_eq!(det_image(&b.gens).unwrap(), 7);
    }

    #[test]
    fn excluded_order_six_is_not_certified() {
        let f7 = Field::prime_field(7).unwrap();
        let alpha = f7.element_of_order(6).unwrap();
        let b = build_rep(&RepParams::new(3, 1, alpha).unwrap(), true).unwrap();
        let g = closure(&b.gens, 1 << 20).unwrap();
        assert!(!certify_contains_sl(&g).verdict.is_certified());
    }

    #[test]
    fn unitary_n3_over_f169() {
        let f = Field::new(13, 2, None).unwrap();
        let pair = ExtPair::new(&f).unwrap();
        let alpha = f.element_of_order(7).unwrap();
        let b = build_rep(&RepParams::new(3, 1, alpha.clone()).unwrap(), false).unwrap();
        let u = unitarize(&b, &pair).unwrap();
        let g = closure(&u.bundle.gens, 1 << 20).unwrap();
        assert_eq!(30576 % g.order(), 0);
        let c = certify_contains_su(&g);
        assert_eq!(c.verdict, Verdict::ContainsSU { base_order: 13 });
        assert_eq!(c.upper_containment, Some(true));

        let b2 = build_rep(&RepParams::new(2, 0, alpha).unwrap(), false).unwrap();
        let u2 = unitarize(&b2, &pair).unwrap();
        let g2 = closure(&u2.bundle.gens, 1 << 20).unwrap();
        assert_eq!(certify_contains_su(&g2).verdict, Verdict::Inconclusive);

        let mut gens = u.bundle.gens.clone();
        gens.push(m(&f, 2, &[1, 1, 0, 1]));
        let bad = closure(&gens, 1 << 20).unwrap();
        let c = certify_contains_su(&bad);
        assert_eq!((c.verdict, c.upper_containment), (Verdict::Refuted, Some(false)));
    }

    #[test]
    fn det_image_matches_direct_determinant() {
        let f = Field::prime_field(29).unwrap();
        let alpha = f.element_of_order(28).unwrap();
        for n in 3..7 {
            let b = build_rep(&RepParams::new(n, 1, alpha.clone()).unwrap(), false).unwrap();
            let direct = b.gens[0].det().unwrap().mult_order().unwrap();
            assert_eq!(det_image(&b.gens).unwrap(), direct);
        }
        assert_eq!(det_image(&[m(&f, 2, &[1, 1, 0, 1])]).unwrap(), 1);
    }
}
