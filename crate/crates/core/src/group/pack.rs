//! Injective bit-packing of square matrices.
//!
//! Entry `k` (row-major) occupies bits `[k*w, (k+1)*w)` with
//! `w = ceil(log2 q)`. When `N^2 * w` exceeds 128 bits the code falls back to
//! a little-endian byte string of the same layout.

use crate::field::Field;
use crate::linalg::{LinalgError, Matrix};

/// A packed matrix. Which variant is used depends only on `(N, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PackedCode {
    Word(u64),
    Wide(u128),
    Bytes(Vec<u8>),
}

/// Packing layout for `N x N` matrices over a field of order `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Packer {
    pub n: usize,
    /// bits per entry
    pub width: u32,
}

impl Packer {
    pub fn new(n: usize, q: u64) -> Packer {
        let width = 64 - (q - 1).leading_zeros();
        Packer { n, width: width.max(1) }
    }

    pub fn total_bits(&self) -> u32 {
        (self.n * self.n) as u32 * self.width
    }

    pub fn fits_word(&self) -> bool {
        self.total_bits() <= 64
    }

    pub fn fits_wide(&self) -> bool {
        self.total_bits() <= 128
    }

    #[inline]
    pub fn pack_word(&self, entries: &[u64]) -> u64 {
        entries.iter().rev().fold(0u64, |acc, &c| (acc << self.width) | c)
    }

    #[inline]
    pub fn unpack_word(&self, mut code: u64, out: &mut [u64]) {
        let mask = (1u64 << self.width) - 1;
        for e in out.iter_mut() {
            *e = code & mask;
            code >>= self.width;
        }
    }

    #[inline]
    pub fn pack_wide(&self, entries: &[u64]) -> u128 {
        entries.iter().rev().fold(0u128, |acc, &c| (acc << self.width) | c as u128)
    }

    #[inline]
    pub fn unpack_wide(&self, mut code: u128, out: &mut [u64]) {
        let mask = (1u128 << self.width) - 1;
        for e in out.iter_mut() {
            *e = (code & mask) as u64;
            code >>= self.width;
        }
    }

    pub fn pack_bytes(&self, entries: &[u64]) -> Vec<u8> {
        let mut out = vec![0u8; (self.total_bits() as usize).div_ceil(8)];
        let mut bit = 0usize;
        for &c in entries {
            for b in 0..self.width as usize {
                if (c >> b) & 1 == 1 {
                    out[(bit + b) / 8] |= 1 << ((bit + b) % 8);
                }
            }
            bit += self.width as usize;
        }
        out
    }

    pub fn unpack_bytes(&self, code: &[u8], out: &mut [u64]) {
        let mut bit = 0usize;
        for e in out.iter_mut() {
            let mut c = 0u64;
            for b in 0..self.width as usize {
                let pos = bit + b;
                if (code[pos / 8] >> (pos % 8)) & 1 == 1 {
                    c |= 1 << b;
                }
            }
            *e = c;
            bit += self.width as usize;
        }
    }

    pub fn pack(&self, entries: &[u64]) -> PackedCode {
        if self.fits_word() {
            PackedCode::Word(self.pack_word(entries))
        } else if self.fits_wide() {
            PackedCode::Wide(self.pack_wide(entries))
        } else {
            PackedCode::Bytes(self.pack_bytes(entries))
        }
    }

    pub fn unpack(&self, code: &PackedCode) -> Vec<u64> {
        let mut out = vec![0u64; self.n * self.n];
        match code {
            PackedCode::Word(w) => self.unpack_word(*w, &mut out),
            PackedCode::Wide(w) => self.unpack_wide(*w, &mut out),
            PackedCode::Bytes(b) => self.unpack_bytes(b, &mut out),
        }
        out
    }
}

/// Packs a square matrix.
pub fn pack(m: &Matrix) -> Result<PackedCode, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.rows(), m.cols()));
    }
    Ok(Packer::new(m.rows(), m.field().order()).pack(m.codes()))
}

/// Inverse of [`pack`] for `n x n` matrices over `field`.
pub fn unpack(code: &PackedCode, field: &Field, n: usize) -> Result<Matrix, LinalgError> {
    let entries = Packer::new(n, field.order()).unpack(code);
    Matrix::from_codes(field, n, n, entries)
}
