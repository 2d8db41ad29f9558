//! Invariant hermitian forms and conjugation into the standard unitary group.
//!
//! For an absolutely irreducible `rho` over `F_{q^2}` whose `eps`-twisted
//! dual is isomorphic to `rho`, the intertwiner `P` with
//! `eps(rho(g)^{-T}) P = P rho(g)` is unique up to scalar. The ratio
//! `eps(P)^{-T} P` is a scalar `mu` of norm one; Hilbert 90 writes it as
//! `eps(h)/h` and `h P` is hermitian. A congruence `C* (hP) C = I` then moves
//! the representation into the isometry group of the identity form.

use thiserror::Error;

use crate::field::{hilbert90_solve, ExtPair, FieldError, FqElem};
use crate::linalg::{algebra_dimension, congruence_to_identity, LinalgError, Matrix};
use crate::rep::{RepBundle, RepCase};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnitaryError {
    #[error("representation is not eps-self-dual (no invariant form)")]
    NotSelfDual,
    #[error("intertwiner space has dimension {0}; representation is not absolutely irreducible")]
    NotAbsolutelyIrreducible(usize),
    #[error("eps(P)^-T P is not scalar")]
    NonScalarRatio,
    #[error("bundle is in the linear case")]
    LinearCase,
    #[error("bundle field is not the extension of the pair")]
    WrongField,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A nondegenerate `eps`-hermitian Gram matrix.
#[derive(Debug, Clone)]
pub struct HermitianForm {
    pub pair: ExtPair,
    pub gram: Matrix,
    /// Hilbert 90 scalar applied to the raw intertwiner.
    pub h90: FqElem,
    /// `eps(Praw)^{-T} Praw`
    pub mu: FqElem,
}

/// Eigenvalue multisets of `M` and of `eps(M^{-1})` must agree for an
/// invariant form to exist. Compares characteristic polynomials.
pub fn self_dual_spectrum(m: &Matrix, pair: &ExtPair) -> Result<bool, UnitaryError> {
    let twisted = m.inverse()?.map_codes(|c| pair.eps_code(c));
    Ok(m.charpoly()? == twisted.charpoly()?)
}

/// Solves `eps(M_i^{-1})^T P = P M_i` for all generators at once. The
/// returned representative has its first nonzero entry equal to 1.
pub fn solve_intertwiner(bundle: &RepBundle, pair: &ExtPair) -> Result<Matrix, UnitaryError> {
    let f = pair.top();
    if bundle.params.field() != f {
        return Err(UnitaryError::WrongField);
    }
    let n = bundle.dim;
    let unknowns = n * n;
    // rows: one block of n^2 equations per generator
    let mut system = Matrix::zeros(f, bundle.gens.len() * unknowns, unknowns);
    for (g, m) in bundle.gens.iter().enumerate() {
        let lhs = m.inverse()?.conj_transpose(pair);
        // (lhs P - P m)_{ij} = sum_k lhs_ik P_kj - sum_k P_ik m_kj
        for i in 0..n {
            for j in 0..n {
                let row = g * unknowns + i * n + j;
                for k in 0..n {
                    let a = lhs.code(i, k);
                    if a != 0 {
                        let c = k * n + j;
                        system.set_code(row, c, f.add(system.code(row, c), a));
                    }
                    let b = m.code(k, j);
                    if b != 0 {
                        let c = i * n + k;
                        system.set_code(row, c, f.sub(system.code(row, c), b));
                    }
                }
            }
        }
    }
    let kernel = system.kernel();
    match kernel.len() {
        0 => Err(UnitaryError::NotSelfDual),
        1 => {
            let v = &kernel[0];
            let lead = v.iter().copied().find(|&c| c != 0).expect("kernel vector nonzero");
            let inv = f.inv(lead).unwrap();
            let data = v.iter().map(|&c| f.mul(c, inv)).collect();
            Ok(Matrix::from_codes(f, n, n, data)?)
        }
        k => Err(UnitaryError::NotAbsolutelyIrreducible(k)),
    }
}

/// Rescales a raw intertwiner into a hermitian matrix.
pub fn hermitian_normalize(praw: &Matrix, pair: &ExtPair) -> Result<HermitianForm, UnitaryError> {
    let ratio = praw.conj_transpose(pair).inverse()?.mul(praw)?;
    let mu = ratio.scalar_value().ok_or(UnitaryError::NonScalarRatio)?;
    let h90 = hilbert90_solve(pair, &mu)?;
    let gram = praw.scale(&h90);
    debug_assert!(gram.conj_transpose(pair) == gram);
    Ok(HermitianForm { pair: pair.clone(), gram, h90, mu })
}

/// `M* P M = P`
pub fn verify_unitary(m: &Matrix, form: &HermitianForm) -> bool {
    m.conj_transpose(&form.pair)
        .mul(&form.gram)
        .and_then(|x| x.mul(m))
        .map(|x| x == form.gram)
        .unwrap_or(false)
}

/// `G* G = I`, isometry of the identity form.
pub fn is_standard_unitary(m: &Matrix, pair: &ExtPair) -> bool {
    m.conj_transpose(pair).mul(m).map(|x| x.is_identity()).unwrap_or(false)
}

/// Outcome of [`unitarize`].
#[derive(Debug, Clone)]
pub struct Unitarized {
    /// Generators `C^{-1} M_i C`, each satisfying `G* G = I`.
    pub bundle: RepBundle,
    pub form: HermitianForm,
    /// Congruence with `C* P C = I`.
    pub congruence: Matrix,
}

/// Conjugates a unitary-case bundle into `GU_N` of the identity form.
pub fn unitarize(bundle: &RepBundle, pair: &ExtPair) -> Result<Unitarized, UnitaryError> {
    if bundle.case != RepCase::Unitary {
        return Err(UnitaryError::LinearCase);
    }
    let n = bundle.dim;
    let dim = algebra_dimension(&bundle.gens, n * n)?;
    if dim != n * n {
        return Err(UnitaryError::NotAbsolutelyIrreducible(dim));
    }
    for m in &bundle.gens {
        if !self_dual_spectrum(m, pair)? {
            return Err(UnitaryError::NotSelfDual);
        }
    }
    let praw = solve_intertwiner(bundle, pair)?;
    let form = hermitian_normalize(&praw, pair)?;
    let c = congruence_to_identity(&form.gram, pair)?;
    let c_inv = c.inverse()?;
    let gens = bundle
        .gens
        .iter()
        .map(|m| c_inv.mul(m).and_then(|x| x.mul(&c)))
        .collect::<Result<Vec<_>, _>>()?;
    debug_assert!(gens.iter().all(|g| is_standard_unitary(g, pair)));
    let out = RepBundle { gens, ..bundle.clone() };
    Ok(Unitarized { bundle: out, form, congruence: c })
}
