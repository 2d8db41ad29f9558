//! Irreducible representations of the Hecke algebra `H_n(alpha)` attached to
//! two-row shapes `[n-r, r]`, in seminormal form.
//!
//! Basis vectors are standard tableaux of shape `[n-r, r]` listed in
//! last-letter order: first every tableau with `n` in the top row (these
//! restrict to `[n-r-1, r]`), then those with `n` in the bottom row
//! (restricting to `[n-r, r-1]`), each group ordered recursively. Restriction
//! to `B_{n-1}` is then a literal block split.
//!
//! The generator `sigma_i` acts on a tableau `t` through the axial distance
//! `d = content(i+1) - content(i)`:
//!
//! - `i, i+1` in the same row: `-1`;
//! - `i, i+1` in the same column: `alpha`;
//! - otherwise a 2x2 block on `t` and `s = s_i t`, with diagonal entry
//!   `alpha^{-d}/[-d]_alpha` for `d < 0` and `alpha - 1 - alpha^d/[d]_alpha` for
//!   `d > 0`; the entry sending the tableau with `i` in the top row to its
//!   partner is `1`, the other one is fixed by the determinant `-alpha`.
//!
//! All denominators are quantum integers `[k]_alpha` with `k <= n - 1`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{quantum_integer, Field, FieldError, FqElem};
use crate::linalg::{LinalgError, Matrix};

/// Orders of `alpha` for which the image theorem is not claimed.
pub const EXCLUDED_ORDERS: [u64; 6] = [2, 3, 4, 5, 6, 10];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("[{0}-{1}, {1}] is not a two-row partition with n >= 2")]
    BadShape(usize, usize),
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("parameter gate rejected: {0}")]
    Gate(GateFailure),
    #[error("[{0}]_alpha vanishes; seminormal form undefined")]
    NonSemisimple(usize),
    #[error("restriction needs n >= 3")]
    NothingToRestrict,
    #[error("restricted generators are not block diagonal")]
    SplitFailure,
    #[error("F_p(alpha + 1/alpha) has degree {0} inside F_p(alpha) of degree {1}")]
    OutsideDichotomy(u32, u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("malformed bundle text: {0}")]
    Parse(String),
}

/// Why the parameter gate refused.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GateFailure {
    /// `e <= n`: the Hecke algebra is not semisimple.
    NotSemisimple { e: u64, n: usize },
    /// `e` lies in [`EXCLUDED_ORDERS`].
    ExcludedOrder { e: u64 },
}

impl fmt::Display for GateFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateFailure::NotSemisimple { e, n } => write!(f, "e = {e} <= n = {n}"),
            GateFailure::ExcludedOrder { e } => write!(f, "e = {e} is in the excluded set {{2,3,4,5,6,10}}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RepCase {
    Linear,
    Unitary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepParams {
    pub n: usize,
    pub r: usize,
    pub alpha: FqElem,
    pub e: u64,
}

impl RepParams {
    pub fn new(n: usize, r: usize, alpha: FqElem) -> Result<RepParams, RepError> {
        if n < 2 || 2 * r > n {
            return Err(RepError::BadShape(n, r));
        }
        if alpha.is_zero() {
            return Err(RepError::ZeroAlpha);
        }
        let e = alpha.quantum_e()?;
        Ok(RepParams { n, r, alpha, e })
    }

    pub fn field(&self) -> &Field {
        self.alpha.field()
    }

    fn with_shape(&self, n: usize, r: usize) -> RepParams {
        RepParams { n, r, alpha: self.alpha.clone(), e: self.e }
    }
}

/// Multiplicities of the eigenvalues `-1` (`a`) and `alpha` (`b`) of any
/// generator, and the dimension `c = a + b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumProfile {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

fn binom(n: i64, k: i64) -> u64 {
    if k < 0 || k > n || n < 0 {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Number of standard tableaux of shape `[n-r, r]`, `0` when that is not a
/// partition.
pub fn dim_two_row(n: i64, r: i64) -> u64 {
    if r < 0 || n < 0 || 2 * r > n {
        return 0;
    }
    binom(n, r) - binom(n, r - 1)
}

pub fn spectrum_profile(n: usize, r: usize) -> Result<SpectrumProfile, RepError> {
    if n < 2 || 2 * r > n {
        return Err(RepError::BadShape(n, r));
    }
    let c = dim_two_row(n as i64, r as i64);
    let b = dim_two_row(n as i64 - 2, r as i64 - 1);
    Ok(SpectrumProfile { a: c - b, b, c })
}

/// Standard tableaux of shape `[n-r, r]` in last-letter order. Entry `k` of a
/// tableau is the row (0 or 1) holding the number `k + 1`.
pub fn two_row_tableaux(n: usize, r: usize) -> Vec<Vec<u8>> {
    if 2 * r > n {
        return Vec::new();
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    // n in the top row: remaining shape [n-1-r, r]
    if n > 2 * r {
        for mut t in two_row_tableaux(n - 1, r) {
            t.push(0);
            out.push(t);
        }
    }
    // n in the bottom row: remaining shape [n-r, r-1]
    if r >= 1 {
        for mut t in two_row_tableaux(n - 1, r - 1) {
            t.push(1);
            out.push(t);
        }
    }
    out
}

/// `(row, column)` of every entry.
fn positions(t: &[u8]) -> Vec<(u8, i64)> {
    let mut len = [0i64; 2];
    t.iter()
        .map(|&row| {
            let c = len[row as usize];
            len[row as usize] += 1;
            (row, c)
        })
        .collect()
}

/// Admission test: `e > n` and `e` outside [`EXCLUDED_ORDERS`].
pub fn gate(params: &RepParams) -> Result<(), GateFailure> {
    if params.e <= params.n as u64 {
        return Err(GateFailure::NotSemisimple { e: params.e, n: params.n });
    }
    if EXCLUDED_ORDERS.contains(&params.e) {
        return Err(GateFailure::ExcludedOrder { e: params.e });
    }
    Ok(())
}

/// Linear when `F_p(alpha + 1/alpha) = F_p(alpha)`, unitary when it has
/// index 2.
pub fn case_detect(params: &RepParams) -> Result<RepCase, RepError> {
    let alpha = &params.alpha;
    let s = alpha + &alpha.inv()?;
    let da = alpha.generated_subfield_degree();
    let ds = s.generated_subfield_degree();
    if ds == da {
        Ok(RepCase::Linear)
    } else if 2 * ds == da {
        Ok(RepCase::Unitary)
    } else {
        Err(RepError::OutsideDichotomy(ds, da))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepBundle {
    pub params: RepParams,
    pub dim: usize,
    /// `R(sigma_1), ..., R(sigma_{n-1})`
    pub gens: Vec<Matrix>,
    pub case: RepCase,
}

/// Seminormal matrices for `[n-r, r]`. With `force`, gate rejections are
/// ignored; vanishing denominators are always an error.
pub fn build_rep(params: &RepParams, force: bool) -> Result<RepBundle, RepError> {
    if !force {
        gate(params).map_err(RepError::Gate)?;
    }
    let (n, r) = (params.n, params.r);
    let field = params.field().clone();
    let alpha = &params.alpha;
    // g[k] = alpha^k / [k]_alpha, k = 1..n-1
    let mut g = vec![field.zero()];
    for k in 1..n {
        let qk = quantum_integer(alpha, k as u64);
        if qk.is_zero() {
            return Err(RepError::NonSemisimple(k));
        }
        g.push(&alpha.pow(k as u64) / &qk);
    }
    let one = field.one();
    let diag = |d: i64| -> FqElem {
        if d > 0 {
            &(alpha - &one) - &g[d as usize]
        } else {
            g[(-d) as usize].clone()
        }
    };
    let minus_one = -&one;

    let tabs = two_row_tableaux(n, r);
    let dim = tabs.len();
    let index: HashMap<&[u8], usize> = tabs.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let pos: Vec<Vec<(u8, i64)>> = tabs.iter().map(|t| positions(t)).collect();

    let mut gens = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let mut m = Matrix::zeros(&field, dim, dim);
        for (col, t) in tabs.iter().enumerate() {
            let (ri, ci) = pos[col][i];
            let (rj, cj) = pos[col][i + 1];
            let d = (cj - rj as i64) - (ci - ri as i64);
            if ri == rj {
                m.set(col, col, &minus_one);
            } else if d == -1 {
                m.set(col, col, alpha);
            } else {
                m.set(col, col, &diag(d));
                let mut s = t.clone();
                s.swap(i, i + 1);
                let partner = index[s.as_slice()];
                let off = if ri == 0 { one.clone() } else { &(&diag(d) * &diag(-d)) + alpha };
                m.set(partner, col, &off);
            }
        }
        gens.push(m);
    }
    let case = case_detect(params)?;
    Ok(RepBundle { params: params.clone(), dim, gens, case })
}

/// A relation of the Temperley-Lieb quotient that failed to hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    Quadratic { i: usize },
    Braid { i: usize },
    FarCommutation { i: usize, j: usize },
    TemperleyLieb { i: usize },
}

/// Checks every defining relation exactly; indices are 1-based generator
/// numbers.
pub fn verify_relations(bundle: &RepBundle) -> Vec<Violation> {
    let gens = &bundle.gens;
    let f = bundle.params.field();
    let alpha = &bundle.params.alpha;
    let one = f.one();
    let mut out = Vec::new();
    for (i, m) in gens.iter().enumerate() {
        let lhs = m.add_scalar(&one).unwrap().mul(&m.add_scalar(&-alpha).unwrap()).unwrap();
        if !lhs.is_zero() {
            out.push(Violation::Quadratic { i: i + 1 });
        }
    }
    for i in 0..gens.len().saturating_sub(1) {
        let (a, b) = (&gens[i], &gens[i + 1]);
        let ab = a.mul(b).unwrap();
        let ba = b.mul(a).unwrap();
        if ab.mul(a).unwrap() != ba.mul(b).unwrap() {
            out.push(Violation::Braid { i: i + 1 });
        }
        let bab = ba.mul(b).unwrap();
        let tl = [&ab, &ba, a, b]
            .iter()
            .fold(bab, |acc, x| acc.add(x).unwrap())
            .add_scalar(&one)
            .unwrap();
        if !tl.is_zero() {
            out.push(Violation::TemperleyLieb { i: i + 1 });
        }
    }
    for i in 0..gens.len() {
        for j in i + 2..gens.len() {
            if gens[i].mul(&gens[j]).unwrap() != gens[j].mul(&gens[i]).unwrap() {
                out.push(Violation::FarCommutation { i: i + 1, j: j + 1 });
            }
        }
    }
    out
}

/// Eigenvalue multiplicities of `R(sigma_i)` measured by kernel dimensions.
pub fn measured_spectrum(bundle: &RepBundle, i: usize) -> SpectrumProfile {
    let m = &bundle.gens[i];
    let f = bundle.params.field();
    let a = m.add_scalar(&f.one()).unwrap().kernel_dim() as u64;
    let b = m.add_scalar(&-&bundle.params.alpha).unwrap().kernel_dim() as u64;
    SpectrumProfile { a, b, c: bundle.dim as u64 }
}

/// The two pieces of a restriction to `B_{n-1}`.
#[derive(Debug, Clone)]
pub struct Restriction {
    /// `[n-r-1, r]`, when a partition
    pub upper: Option<RepBundle>,
    /// `[n-r, r-1]`, when `r >= 1`
    pub lower: Option<RepBundle>,
}

impl Restriction {
    pub fn blocks(&self) -> impl Iterator<Item = &RepBundle> {
        self.upper.iter().chain(self.lower.iter())
    }
}

/// Drops `R(sigma_{n-1})` and splits the rest into its diagonal blocks.
pub fn restrict(bundle: &RepBundle) -> Result<Restriction, RepError> {
    let p = &bundle.params;
    if p.n < 3 {
        return Err(RepError::NothingToRestrict);
    }
    let (n, r) = (p.n, p.r);
    let d1 = dim_two_row(n as i64 - 1, r as i64) as usize;
    let d2 = dim_two_row(n as i64 - 1, r as i64 - 1) as usize;
    debug_assert_eq!(d1 + d2, bundle.dim);
    let gens = &bundle.gens[..n - 2];
    for m in gens {
        if d1 > 0 && d2 > 0 && (!m.submatrix(0, d1, d1, d2).is_zero() || !m.submatrix(d1, 0, d2, d1).is_zero()) {
            return Err(RepError::SplitFailure);
        }
    }
    let piece = |offset: usize, size: usize, rr: usize| -> Option<RepBundle> {
        (size > 0).then(|| RepBundle {
            params: p.with_shape(n - 1, rr),
            dim: size,
            gens: gens.iter().map(|m| m.submatrix(offset, offset, size, size)).collect(),
            case: bundle.case,
        })
    };
    Ok(Restriction {
        upper: piece(0, d1, r),
        lower: if r >= 1 { piece(d1, d2, r - 1) } else { None },
    })
}

impl RepBundle {
    /// Field header, `REP n r alpha`, then the generators as `MAT` blocks.
    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut s = format!("{}\nREP {} {} {}\n", p.field().header(), p.n, p.r, p.alpha.code());
        for m in &self.gens {
            s.push_str(&m.to_text());
        }
        s
    }

    /// Reads the format written by [`RepBundle::to_text`]; generators are
    /// taken as given, not rebuilt.
    pub fn parse(text: &str) -> Result<RepBundle, RepError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| RepError::Parse("empty input".into()))?;
        let field = Field::parse_header(header)?;
        let rest: Vec<&str> = lines.collect();
        let joined = rest.join("\n");
        let mut toks = joined.split_whitespace().peekable();
        if toks.next() != Some("REP") {
            return Err(RepError::Parse("expected REP line".into()));
        }
        let mut num = |what: &str| -> Result<u64, RepError> {
            toks.next()
                .and_then(|t| t.parse::<u64>().ok())
                .ok_or_else(|| RepError::Parse(format!("bad {what}")))
        };
        let n = num("n")? as usize;
        let r = num("r")? as usize;
        let alpha = field.elem(num("alpha")?)?;
        let params = RepParams::new(n, r, alpha)?;
        let mut gens = Vec::with_capacity(n - 1);
        for _ in 0..n - 1 {
            gens.push(Matrix::parse_tokens(&field, &mut toks)?);
        }
        let dim = gens.first().map(|m| m.rows()).unwrap_or(0);
        if gens.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(RepError::Parse("generator shapes differ".into()));
        }
        let case = case_detect(&params)?;
        Ok(RepBundle { params, dim, gens, case })
    }

    /// `R(w)` for a braid word given as signed 1-based generator indices.
    pub fn evaluate_word(&self, word: &[i64]) -> Result<Matrix, RepError> {
        let f = self.params.field();
        let mut acc = Matrix::identity(f, self.dim);
        for &w in word {
            let i = w.unsigned_abs() as usize;
            if i == 0 || i > self.gens.len() {
                return Err(RepError::Parse(format!("generator {w} out of range")));
            }
            let g = if w > 0 { self.gens[i - 1].clone() } else { self.gens[i - 1].inverse()? };
            acc = acc.mul(&g)?;
        }
        Ok(acc)
    }
}
