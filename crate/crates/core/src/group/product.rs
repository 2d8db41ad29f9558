//! Pairwise certification that the image of `B_n` in a sum of two-row
//! representations contains the product of the special groups of the
//! factors.
//!
//! For a pair with images `H_1, H_2` and determinant images of orders
//! `d_1, d_2`, the image `H` of the sum maps onto the cyclic group generated
//! by `(det R_1(sigma), det R_2(sigma))`, of order `lcm(d_1, d_2)`. So when
//! each factor contains its special group `S_i`, `H` contains `S_1 x S_2`
//! exactly when `|H| = |H_1| |H_2| / gcd(d_1, d_2)`.
//!
//! When the joint group is too large to enumerate, a second certificate is
//! tried: if elements of `H` whose first component is trivial already
//! generate `S_2` in the second component, and `S_1` is perfect, then
//! commutators give `S_1 x 1 <= H` as well.

use serde::{Deserialize, Serialize};

use super::arith::Arith;
use super::bundle::certify_bundle;
use super::certify::{Certificate, Verdict};
use super::classical::{classical_order, gcd, ClassicalKind};
use super::closure::{closure, GroupError};
use crate::linalg::Matrix;
use crate::rep::{RepBundle, RepCase};

/// Words tried when sampling a kernel.
const MAX_KERNEL_WORDS: usize = 400;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub n: usize,
    pub r: usize,
    pub dim: usize,
    pub case: RepCase,
    pub det_image_order: u64,
    /// Order of the direct image, when it was enumerated.
    pub order: Option<u64>,
    pub certificate: Certificate,
}

impl FactorReport {
    /// The factor contains its special group (trivially so in degree 1).
    pub fn certified(&self) -> bool {
        self.dim == 1 || self.certificate.verdict.is_certified()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairRoute {
    JointEnumeration,
    KernelSampling,
    /// One factor has degree 1, so its special group is trivial and the
    /// other factor's commutators suffice.
    DegreeOne,
    NotAttempted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProductVerdict {
    ContainsProduct,
    NotFullProduct,
    Inconclusive,
    Capped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub i: usize,
    pub j: usize,
    pub route: PairRoute,
    /// `gcd(d_i, d_j)`
    pub det_linkage: u64,
    pub joint_order: Option<u64>,
    pub expected_order: Option<u128>,
    pub kernel_words: Option<usize>,
    pub verdict: ProductVerdict,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductReport {
    pub factors: Vec<FactorReport>,
    pub pairs: Vec<PairReport>,
}

struct Factor {
    gens: Vec<Matrix>,
    report: FactorReport,
    special: ClassicalKind,
    /// order of the fixed field for unitary factors, of the field otherwise
    q: u64,
}

impl Factor {
    fn perfect_special(&self) -> bool {
        let n = self.report.dim;
        let small: &[(usize, u64)] = match self.special {
            ClassicalKind::SU => &[(2, 2), (2, 3), (3, 2)],
            _ => &[(2, 2), (2, 3)],
        };
        !small.contains(&(n, self.q))
    }
}

fn certify_factor(bundle: &RepBundle, cap: usize) -> Result<Factor, GroupError> {
    let img = certify_bundle(bundle, cap)?;
    let g = &img.closure;
    let order = (!g.capped() && !g.is_projective()).then_some(g.order());
    let report = FactorReport {
        n: bundle.params.n,
        r: bundle.params.r,
        dim: bundle.dim,
        case: bundle.case,
        det_image_order: img.det_image_order,
        order,
        certificate: img.certificate,
    };
    Ok(Factor { gens: img.gens, report, special: img.special, q: img.base_order })
}

fn special_order(f: &Factor) -> Result<u128, GroupError> {
    if f.report.dim == 1 {
        return Ok(1);
    }
    Ok(classical_order(f.special, f.report.dim, f.q)?)
}

/// Multiplicative order of an invertible matrix, by repeated products.
fn matrix_order(a: &Arith, n: usize, m: &[u64], limit: u64) -> Option<u64> {
    let mut id = vec![0u64; n * n];
    for i in 0..n {
        id[i * n + i] = 1;
    }
    let mut cur = m.to_vec();
    let mut next = vec![0u64; n * n];
    for k in 1..=limit {
        if cur == id {
            return Some(k);
        }
        a.matmul(n, &cur, m, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    None
}

fn mat_pow(m: &Matrix, e: u64) -> Matrix {
    m.pow(e as i64).expect("square")
}

/// Word number `t` over `sigma_1^{+-1}, ..., sigma_{k}^{+-1}`.
fn word(mut t: usize, k: usize) -> Vec<i64> {
    let base = 2 * k;
    let mut w = Vec::new();
    loop {
        let letter = t % base;
        let g = (letter / 2 + 1) as i64;
        w.push(if letter.is_multiple_of(2) { g } else { -g });
        t /= base;
        if t == 0 {
            return w;
        }
        t -= 1;
    }
}

fn eval(gens: &[Matrix], w: &[i64]) -> Matrix {
    let n = gens[0].rows();
    let mut acc = Matrix::identity(gens[0].field(), n);
    for &l in w {
        let g = &gens[(l.unsigned_abs() - 1) as usize];
        let g = if l > 0 { g.clone() } else { g.inverse().expect("invertible") };
        acc = acc.mul(&g).expect("shapes agree");
    }
    acc
}

/// Samples `{ R_b(w)^{ord R_a(w)} }` and checks whether they generate a
/// group containing the special group of `b`.
fn kernel_sample(a: &Factor, b: &Factor, cap: usize) -> Result<Option<usize>, GroupError> {
    let arith = Arith::new(a.gens[0].field());
    let na = a.report.dim;
    let limit = a.gens[0].field().order().pow(na as u32);
    let target = special_order(b)?;
    let mut kernel: Vec<Matrix> = Vec::new();
    let mut last_checked = 0;
    for t in 0..MAX_KERNEL_WORDS {
        let w = word(t, a.gens.len());
        let ma = eval(&a.gens, &w);
        let Some(m) = matrix_order(&arith, na, ma.codes(), limit) else {
            continue;
        };
        let k = mat_pow(&eval(&b.gens, &w), m);
        if k.is_identity() || kernel.contains(&k) {
            continue;
        }
        kernel.push(k);
        if kernel.len() >= last_checked + 2 {
            last_checked = kernel.len();
            let g = closure(&kernel, cap)?;
            if g.capped() {
                return Err(GroupError::Capped(cap));
            }
            let special_count = g.count_where(|e| g.det_entries(e) == 1);
            if special_count as u128 == target {
                return Ok(Some(t + 1));
            }
        }
    }
    Ok(None)
}

fn certify_pair(i: usize, j: usize, fi: &Factor, fj: &Factor, cap: usize) -> Result<PairReport, GroupError> {
    let (di, dj) = (fi.report.det_image_order, fj.report.det_image_order);
    let linkage = gcd(di as u128, dj as u128) as u64;
    let mut rep = PairReport {
        i,
        j,
        route: PairRoute::NotAttempted,
        det_linkage: linkage,
        joint_order: None,
        expected_order: None,
        kernel_words: None,
        verdict: ProductVerdict::Inconclusive,
        reason: String::new(),
    };
    let capped = |f: &Factor| f.report.certificate.verdict == Verdict::Capped;
    if !fi.report.certified() || !fj.report.certified() {
        (rep.verdict, rep.reason) = if capped(fi) || capped(fj) {
            (ProductVerdict::Capped, "a factor enumeration was capped".into())
        } else {
            (ProductVerdict::Inconclusive, "a factor is not certified".into())
        };
        return Ok(rep);
    }

    // joint enumeration, when both factor orders are known and small
    if let (Some(oi), Some(oj)) = (fi.report.order, fj.report.order) {
        let expected = oi as u128 * oj as u128 / linkage as u128;
        rep.expected_order = Some(expected);
        if expected <= cap as u128 {
            let gens = fi
                .gens
                .iter()
                .zip(&fj.gens)
                .map(|(x, y)| x.direct_sum(y))
                .collect::<Result<Vec<_>, _>>()?;
            let g = closure(&gens, cap)?;
            rep.route = PairRoute::JointEnumeration;
            if g.capped() {
                // cannot happen below the expected order, kept for safety
                (rep.verdict, rep.reason) = (ProductVerdict::Capped, "joint enumeration capped".into());
                return Ok(rep);
            }
            rep.joint_order = Some(g.order());
            (rep.verdict, rep.reason) = if g.order() as u128 == expected {
                (ProductVerdict::ContainsProduct, "joint order equals |H_i||H_j|/gcd(d_i, d_j)".into())
            } else {
                (ProductVerdict::NotFullProduct, "joint order is smaller than the full-product order".into())
            };
            return Ok(rep);
        }
    }

    // a degree-one factor contributes no special group; commutators of the
    // other factor land in its special group times the identity
    for (big, small) in [(fi, fj), (fj, fi)] {
        if small.report.dim == 1 && big.perfect_special() {
            rep.route = PairRoute::DegreeOne;
            rep.verdict = ProductVerdict::ContainsProduct;
            rep.reason = "degree-one partner; the other special group is perfect".into();
            return Ok(rep);
        }
    }

    // kernel sampling into the factor whose image was enumerated directly
    let orient = match (fi.report.order, fj.report.order) {
        (_, Some(_)) if fi.perfect_special() => Some((fi, fj)),
        (Some(_), _) if fj.perfect_special() => Some((fj, fi)),
        _ => None,
    };
    let Some((a, b)) = orient else {
        rep.reason = "no feasible route".into();
        return Ok(rep);
    };
    rep.route = PairRoute::KernelSampling;
    match kernel_sample(a, b, cap) {
        Ok(Some(words)) => {
            rep.kernel_words = Some(words);
            rep.verdict = ProductVerdict::ContainsProduct;
            rep.reason = "kernel of one projection contains the other special group".into();
        }
        Ok(None) => rep.reason = format!("kernel samples from {MAX_KERNEL_WORDS} words did not suffice"),
        Err(GroupError::Capped(_)) => {
            rep.verdict = ProductVerdict::Capped;
            rep.reason = "kernel enumeration capped".into();
        }
        Err(e) => return Err(e),
    }
    Ok(rep)
}

/// Certifies every factor, then every pair of factors.
pub fn product_certify(bundles: &[RepBundle], cap: usize) -> Result<ProductReport, GroupError> {
    if let Some(first) = bundles.first() {
        if bundles.iter().any(|b| b.params.n != first.params.n || b.params.alpha != first.params.alpha) {
            return Err(GroupError::BundleMismatch);
        }
    }
    let factors = bundles.iter().map(|b| certify_factor(b, cap)).collect::<Result<Vec<_>, _>>()?;
    let mut pairs = Vec::new();
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            pairs.push(certify_pair(i, j, &factors[i], &factors[j], cap)?);
        }
    }
    Ok(ProductReport { factors: factors.into_iter().map(|f| f.report).collect(), pairs })
}
