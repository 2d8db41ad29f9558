//! Dense exact linear algebra over a [`Field`].
//!
//! Matrices store raw element codes in row-major order. Elimination always
//! pivots on the first nonzero entry, so every result is deterministic.

use std::fmt;

use thiserror::Error;

use crate::field::{ExtPair, Field, FqElem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("matrix dimensions must be positive")]
    Empty,
    #[error("span still growing after {0} basis extensions")]
    CapExceeded(usize),
    #[error("matrix is not hermitian")]
    NotHermitian,
    #[error("no solution of the norm equation for {0}")]
    NormUnsolvable(u64),
    #[error("malformed matrix text: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn from_codes(field: &Field, rows: usize, cols: usize, data: Vec<u64>) -> Result<Matrix, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::Empty);
        }
        if data.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch(rows, cols, data.len(), 1));
        }
        if let Some(&bad) = data.iter().find(|&&c| c >= field.order()) {
            return Err(LinalgError::Parse(format!("code {bad} out of range")));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    /// Builds a matrix from rows of elements; all entries must share a field.
    pub fn from_elems(rows: &[Vec<FqElem>]) -> Result<Matrix, LinalgError> {
        let first = rows.first().and_then(|r| r.first()).ok_or(LinalgError::Empty)?;
        let field = first.field().clone();
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::ShapeMismatch(rows.len(), cols, 1, row.len()));
            }
            for x in row {
                if x.field() != &field {
                    return Err(LinalgError::FieldMismatch);
                }
                data.push(x.code());
            }
        }
        Matrix::from_codes(&field, rows.len(), cols, data)
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::scalar(field, n, 1)
    }

    pub fn scalar(field: &Field, n: usize, code: u64) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = code;
        }
        m
    }

    pub fn diagonal(field: &Field, codes: &[u64]) -> Matrix {
        let n = codes.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &c) in codes.iter().enumerate() {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn codes(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn code(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set_code(&mut self, r: usize, c: usize, code: u64) {
        self.data[r * self.cols + c] = code;
    }

    pub fn get(&self, r: usize, c: usize) -> FqElem {
        self.field.elem(self.code(r, c)).expect("stored codes are in range")
    }

    pub fn set(&mut self, r: usize, c: usize, x: &FqElem) {
        debug_assert!(x.field() == &self.field);
        self.set_code(r, c, x.code());
    }

    fn check_same(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    if b != 0 {
                        *d = f.add(*d, f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(u64, u64) -> u64) -> Result<Matrix, LinalgError> {
        self.check_same(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        let f = self.field.clone();
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        let f = self.field.clone();
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, s: &FqElem) -> Matrix {
        self.scale_code(s.code())
    }

    pub fn scale_code(&self, s: u64) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `self + s * I`
    pub fn add_scalar(&self, s: &FqElem) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        self.add(&Matrix::scalar(&self.field, self.rows, s.code()))
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// Entrywise `eps` followed by transposition.
    pub fn conj_transpose(&self, pair: &ExtPair) -> Matrix {
        debug_assert!(pair.top() == &self.field);
        let mut t = self.transpose();
        for c in t.data.iter_mut() {
            *c = pair.eps_code(*c);
        }
        t
    }

    /// Applies a field map to every entry.
    pub fn map_codes(&self, f: impl Fn(u64) -> u64) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&c| f(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&c| c == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar_code(1)
    }

    fn is_scalar_code(&self, s: u64) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| self.data[r * self.cols + c] == if r == c { s } else { 0 })
            })
    }

    /// The scalar `s` if `self = s * I`.
    pub fn scalar_value(&self) -> Option<FqElem> {
        let s = self.data[0];
        self.is_scalar_code(s).then(|| self.field.elem(s).unwrap())
    }

    pub fn trace(&self) -> FqElem {
        let f = &self.field;
        let t = (0..self.rows.min(self.cols)).fold(0, |acc, i| f.add(acc, self.code(i, i)));
        f.elem(t).unwrap()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]).unwrap();
            for j in c..cols {
                self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = f.mul(factor, self.data[r * cols + j]);
                    self.data[i * cols + j] = f.sub(self.data[i * cols + j], v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column, each with
    /// a 1 in its free column.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let (m, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u64; self.cols];
                v[free] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.code(row, free));
                }
                v
            })
            .collect()
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.data[r * 2 * n + c] = self.code(r, c);
            }
            aug.data[r * 2 * n + n + r] = 1;
        }
        let piv = aug.rref_in_place();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.data[r * n + c] = aug.data[r * 2 * n + n + c];
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Result<FqElem, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = 1u64;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m[i * n + c] != 0) else {
                return Ok(f.zero());
            };
            if pr != c {
                for j in 0..n {
                    m.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pivot = m[c * n + c];
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).unwrap();
            for i in c + 1..n {
                let factor = f.mul(m[i * n + c], inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.mul(factor, m[c * n + j]);
                    m[i * n + j] = f.sub(m[i * n + j], v);
                }
            }
        }
        Ok(f.elem(det).unwrap())
    }

    /// `self^k`; negative powers go through the inverse.
    pub fn pow(&self, k: i64) -> Result<Matrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Characteristic polynomial `det(xI - A)`, coefficients ascending, via
    /// Hessenberg reduction.
    pub fn charpoly(&self) -> Result<Vec<FqElem>, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut h = self.data.clone();
        let at = |r: usize, c: usize| r * n + c;
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h[at(i, m - 1)] != 0) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.swap(at(i, j), at(m, j));
                }
                for j in 0..n {
                    h.swap(at(j, i), at(j, m));
                }
            }
            let inv = f.inv(h[at(m, m - 1)]).unwrap();
            for k in m + 1..n {
                let u = f.mul(h[at(k, m - 1)], inv);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = f.mul(u, h[at(m, j)]);
                    h[at(k, j)] = f.sub(h[at(k, j)], v);
                }
                for j in 0..n {
                    let v = f.mul(u, h[at(j, k)]);
                    h[at(j, m)] = f.add(h[at(j, m)], v);
                }
            }
        }
        // p[m] = charpoly of the leading m x m block
        let mut p: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            let mm = m - 1;
            // (x - h_mm) p[m-1]
            let prev = &p[m - 1];
            let mut next = vec![0u64; m + 1];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = f.add(next[d + 1], c);
                next[d] = f.sub(next[d], f.mul(h[at(mm, mm)], c));
            }
            let mut t = 1u64;
            for i in (1..m).rev() {
                // i is 1-based row index of h_{i,m}
                t = f.mul(t, h[at(i, i - 1)]);
                let coef = f.mul(h[at(i - 1, mm)], t);
                if coef == 0 {
                    continue;
                }
                for (d, &c) in p[i - 1].iter().enumerate() {
                    next[d] = f.sub(next[d], f.mul(coef, c));
                }
            }
            p.push(next);
        }
        Ok(p[n].iter().map(|&c| f.elem(c).unwrap()).collect())
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix {
        let mut out = Matrix::zeros(&self.field, nr, nc);
        for r in 0..nr {
            for c in 0..nc {
                out.data[r * nc + c] = self.code(r0 + r, c0 + c);
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same(other)?;
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        let mut out = Matrix::zeros(&self.field, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * c + j] = self.code(i, j);
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.data[(self.rows + i) * c + self.cols + j] = other.code(i, j);
            }
        }
        Ok(out)
    }

    /// Rank one and square zero after subtracting the identity.
    pub fn is_transvection(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let d = self.sub(&Matrix::identity(&self.field, n)).unwrap();
        d.rank() == 1 && d.mul(&d).unwrap().is_zero()
    }

    /// `MAT rows cols` followed by one line of codes per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("MAT {} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.code(r, c).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses a `MAT` block from a token stream positioned at `MAT`.
    pub fn parse_tokens<'a>(
        field: &Field,
        toks: &mut impl Iterator<Item = &'a str>,
    ) -> Result<Matrix, LinalgError> {
        let err = |m: &str| LinalgError::Parse(m.to_string());
        if toks.next() != Some("MAT") {
            return Err(err("expected MAT"));
        }
        let mut num = |what: &str| -> Result<u64, LinalgError> {
            toks.next()
                .ok_or_else(|| err(&format!("missing {what}")))?
                .parse::<u64>()
                .map_err(|_| err(&format!("bad {what}")))
        };
        let rows = num("row count")? as usize;
        let cols = num("column count")? as usize;
        let data = (0..rows * cols).map(|_| num("entry")).collect::<Result<Vec<_>, _>>()?;
        Matrix::from_codes(field, rows, cols, data)
    }
}

/// Incremental row-echelon basis of a subspace of `F^len`.
pub(crate) struct EchelonBasis {
    field: Field,
    rows: Vec<(usize, Vec<u64>)>,
}

impl EchelonBasis {
    pub(crate) fn new(field: &Field) -> Self {
        EchelonBasis { field: field.clone(), rows: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v` unless it already lies in the span; reports insertion.
    pub(crate) fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let f = &self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row).skip(*pivot) {
                if y != 0 {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let Some(pivot) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = f.inv(v[pivot]).unwrap();
        for x in v.iter_mut().skip(pivot) {
            *x = f.mul(*x, inv);
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, v));
        true
    }
}

/// Dimension of the unital algebra generated by `gens`. Equals `N^2` exactly
/// when the generators act absolutely irreducibly.
pub fn algebra_dimension(gens: &[Matrix], cap: usize) -> Result<usize, LinalgError> {
    let first = gens.first().ok_or(LinalgError::Empty)?;
    let n = first.rows;
    for g in gens {
        first.check_same(g)?;
        if !g.is_square() || g.rows != n {
            return Err(LinalgError::ShapeMismatch(n, n, g.rows, g.cols));
        }
    }
    let field = first.field().clone();
    let full = n * n;
    let mut basis = EchelonBasis::new(&field);
    let id = Matrix::identity(&field, n);
    basis.insert(id.data.clone());
    let mut queue = std::collections::VecDeque::from([id]);
    let mut extensions = 0usize;
    while let Some(x) = queue.pop_front() {
        if basis.dim() == full {
            break;
        }
        for g in gens {
            let y = g.mul(&x)?;
            if basis.insert(y.data.clone()) {
                extensions += 1;
                if extensions > cap {
                    return Err(LinalgError::CapExceeded(cap));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(basis.dim())
}

/// Given a nonsingular hermitian `P`, returns nonsingular `C` with
/// `C* P C = I`.
pub fn congruence_to_identity(p: &Matrix, pair: &ExtPair) -> Result<Matrix, LinalgError> {
    if !p.is_square() {
        return Err(LinalgError::NotSquare(p.rows, p.cols));
    }
    if p.field() != pair.top() {
        return Err(LinalgError::FieldMismatch);
    }
    if p.conj_transpose(pair) != *p {
        return Err(LinalgError::NotHermitian);
    }
    if p.rank() < p.rows {
        return Err(LinalgError::Singular);
    }
    let f = p.field().clone();
    let n = p.rows;
    // <u, v> = eps(u)^T P v
    let form = |u: &[u64], v: &[u64]| -> u64 {
        let mut acc = 0u64;
        for i in 0..n {
            if u[i] == 0 {
                continue;
            }
            let eu = pair.eps_code(u[i]);
            let mut row = 0u64;
            for j in 0..n {
                if v[j] != 0 {
                    row = f.add(row, f.mul(p.code(i, j), v[j]));
                }
            }
            acc = f.add(acc, f.mul(eu, row));
        }
        acc
    };
    let axpy = |u: &[u64], c: u64, v: &[u64]| -> Vec<u64> {
        u.iter().zip(v).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect()
    };
    // an element with nonzero trace, for the isotropic case
    let gamma = (1..f.order())
        .find(|&g| f.add(g, pair.eps_code(g)) != 0)
        .expect("trace map is surjective");

    let mut remaining: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut e = vec![0u64; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut columns: Vec<Vec<u64>> = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let w = if let Some(i) = remaining.iter().position(|u| form(u, u) != 0) {
            remaining.remove(i)
        } else {
            // all isotropic: combine a pair with nonzero pairing
            let mut found = None;
            'search: for i in 0..remaining.len() {
                for j in 0..remaining.len() {
                    if i == j {
                        continue;
                    }
                    let b = form(&remaining[i], &remaining[j]);
                    if b != 0 {
                        found = Some((i, j, b));
                        break 'search;
                    }
                }
            }
            let (i, j, b) = found.ok_or(LinalgError::Singular)?;
            let c = f.mul(gamma, f.inv(b).unwrap());
            let w = axpy(&remaining[i], c, &remaining[j]);
            remaining.remove(i);
            w
        };
        let t = f.elem(form(&w, &w)).unwrap();
        let target = t.inv().map_err(|_| LinalgError::Singular)?;
        let x = pair.solve_norm(&target).ok_or(LinalgError::NormUnsolvable(target.code()))?;
        let v: Vec<u64> = w.iter().map(|&c| f.mul(c, x.code())).collect();
        for u in remaining.iter_mut() {
            let k = form(&v, u);
            if k != 0 {
                *u = axpy(u, f.neg(k), &v);
            }
        }
        columns.push(v);
    }
    let mut c = Matrix::zeros(&f, n, n);
    for (j, col) in columns.iter().enumerate() {
        for i in 0..n {
            c.data[i * n + j] = col[i];
        }
    }
    debug_assert!(c.conj_transpose(pair).mul(p).unwrap().mul(&c).unwrap().is_identity());
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f8() -> Field {
        Field::new(2, 3, None).unwrap()
    }

    #[test]
    fn identity_inverse_and_singular() {
        let f = f8();
        let id = Matrix::identity(&f, 4);
        assert_eq!(id.inverse().unwrap(), id);
        let z = Matrix::zeros(&f, 3, 3);
        assert_eq!(z.inverse().unwrap_err(), LinalgError::Singular);
        assert_eq!(z.kernel_dim(), 3);
    }

    #[test]
    fn shape_errors() {
        let f = f8();
        let a = Matrix::zeros(&f, 2, 3);
        assert!(matches!(a.mul(&a), Err(LinalgError::ShapeMismatch(..))));
        assert!(matches!(a.inverse(), Err(LinalgError::NotSquare(2, 3))));
        let g = Matrix::zeros(&Field::prime_field(3).unwrap(), 2, 3);
        assert_eq!(a.add(&g).unwrap_err(), LinalgError::FieldMismatch);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = Field::prime_field(7).unwrap();
        let a = Matrix::from_codes(&f, 3, 4, vec![1, 2, 3, 4, 2, 4, 6, 1, 3, 6, 2, 5]).unwrap();
        let ker = a.kernel();
        assert_eq!(ker.len() + a.rank(), 4);
        for v in ker {
            let col = Matrix::from_codes(&f, 4, 1, v).unwrap();
            assert!(a.mul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn det_and_charpoly_agree() {
        let f = Field::new(3, 2, None).unwrap();
        let a = Matrix::from_codes(&f, 3, 3, vec![1, 5, 0, 7, 2, 3, 4, 8, 6]).unwrap();
        let cp = a.charpoly().unwrap();
        assert_eq!(cp.len(), 4);
        assert!(cp[3].is_one());
        // constant term is (-1)^3 det
        assert_eq!(cp[0], -a.det().unwrap());
        assert_eq!(cp[2], -a.trace());
        // Cayley-Hamilton
        let mut acc = Matrix::zeros(&f, 3, 3);
        for (k, c) in cp.iter().enumerate() {
            acc = acc.add(&a.pow(k as i64).unwrap().scale(c)).unwrap();
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn algebra_dimension_basics() {
        let f7 = Field::prime_field(7).unwrap();
        assert_eq!(algebra_dimension(&[Matrix::identity(&f7, 3)], 100).unwrap(), 1);
        let d1 = Matrix::diagonal(&f7, &[1, 2]);
        let d2 = Matrix::diagonal(&f7, &[2, 1]);
        assert_eq!(algebra_dimension(&[d1, d2], 100).unwrap(), 2);
        let e12 = Matrix::from_codes(&f7, 2, 2, vec![0, 1, 0, 0]).unwrap();
        let e21 = e12.transpose();
        assert_eq!(algebra_dimension(&[e12.clone(), e21], 100).unwrap(), 4);
        assert_eq!(algebra_dimension(&[e12], 0).unwrap_err(), LinalgError::CapExceeded(0));
    }

    #[test]
    fn transvections() {
        let f = f8();
        let mut t = Matrix::identity(&f, 3);
        t.set_code(0, 1, 1);
        assert!(t.is_transvection());
        assert_eq!(t.det().unwrap(), f.one());
        let a = f.generator();
        let d = Matrix::diagonal(&f, &[a.code(), a.inv().unwrap().code()]);
        assert!(!d.is_transvection());
        assert!(!Matrix::identity(&f, 2).is_transvection());
    }

    #[test]
    fn swap_like_matrix_is_a_transvection_only_in_characteristic_two() {
        // t(a,1,2) = [[0,a],[a^-1,0]]
        let f = f8();
        let a = f.generator();
        let t = Matrix::from_elems(&[vec![f.zero(), a.clone()], vec![a.inv().unwrap(), f.zero()]]).unwrap();
        assert!(t.is_transvection());
        let f5 = Field::prime_field(5).unwrap();
        let t5 = Matrix::from_codes(&f5, 2, 2, vec![0, 2, 3, 0]).unwrap();
        assert!(!t5.is_transvection());
        let mut t3 = Matrix::identity(&f, 3);
        t3.set_code(0, 0, 0);
        t3.set_code(1, 1, 0);
        t3.set_code(0, 1, a.code());
        t3.set_code(1, 0, a.inv().unwrap().code());
        assert!(t3.is_transvection());
    }

    #[test]
    fn transvections_in_sl2_brute_force() {
        for (p, d) in [(2u64, 2u32), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let f = Field::new(p, d, None).unwrap();
            let q = f.order();
            let mut count = 0;
            let mut sl = 0;
            for code in 0..q.pow(4) {
                let mut c = code;
                let entries: Vec<u64> = (0..4)
                    .map(|_| {
                        let e = c % q;
                        c /= q;
                        e
                    })
                    .collect();
                let m = Matrix::from_codes(&f, 2, 2, entries).unwrap();
                if m.det().unwrap().is_one() {
                    sl += 1;
                    if m.is_transvection() {
                        count += 1;
                    }
                }
            }
            assert_eq!(sl, q * (q * q - 1));
            assert_eq!(count, q * q - 1, "q = {q}");
        }
    }

    #[test]
    fn conj_transpose_is_an_involution() {
        let f = Field::new(13, 2, None).unwrap();
        let pair = ExtPair::new(&f).unwrap();
        let a = Matrix::from_codes(&f, 2, 3, vec![5, 100, 168, 14, 0, 77]).unwrap();
        assert_eq!(a.conj_transpose(&pair).conj_transpose(&pair), a);
        let alpha = f.element_of_order(7).unwrap();
        let d = Matrix::diagonal(&f, &[alpha.code(), 1]);
        assert_eq!(d.conj_transpose(&pair), Matrix::diagonal(&f, &[alpha.pow(13).code(), 1]));
        let id = Matrix::identity(&f, 3);
        assert_eq!(id.conj_transpose(&pair), id);
    }

    #[test]
    fn congruence_of_identity_and_diagonal() {
        let f = Field::new(13, 2, None).unwrap();
        let pair = ExtPair::new(&f).unwrap();
        let id = Matrix::identity(&f, 3);
        assert_eq!(congruence_to_identity(&id, &pair).unwrap(), id);
        let t = f.from_int(5);
        let p = Matrix::scalar(&f, 1, t.code());
        let c = congruence_to_identity(&p, &pair).unwrap();
        let x = c.get(0, 0);
        assert_eq!(pair.norm(&x), t.inv().unwrap());
    }

    #[test]
    fn congruence_handles_isotropic_basis() {
        // antidiagonal hermitian form: every basis vector isotropic
        for (p, d) in [(13u64, 2u32), (2, 2), (2, 4)] {
            let f = Field::new(p, d, None).unwrap();
            let pair = ExtPair::new(&f).unwrap();
            let p = Matrix::from_codes(&f, 2, 2, vec![0, 1, 1, 0]).unwrap();
            let c = congruence_to_identity(&p, &pair).unwrap();
            assert!(c.conj_transpose(&pair).mul(&p).unwrap().mul(&c).unwrap().is_identity());
        }
    }

    #[test]
    fn congruence_rejects_bad_forms() {
        let f = Field::new(13, 2, None).unwrap();
        let pair = ExtPair::new(&f).unwrap();
        let non_herm = Matrix::from_codes(&f, 2, 2, vec![1, 13, 0, 1]).unwrap();
        assert_eq!(congruence_to_identity(&non_herm, &pair).unwrap_err(), LinalgError::NotHermitian);
        let singular = Matrix::from_codes(&f, 2, 2, vec![1, 1, 1, 1]).unwrap();
        assert_eq!(congruence_to_identity(&singular, &pair).unwrap_err(), LinalgError::Singular);
    }

    #[test]
    fn text_round_trip() {
        let f = f8();
        let a = Matrix::from_codes(&f, 2, 3, vec![1, 2, 3, 4, 5, 6]).unwrap();
        let text = a.to_text();
        let b = Matrix::parse_tokens(&f, &mut text.split_whitespace()).unwrap();
        assert_eq!(a, b);
    }
}
