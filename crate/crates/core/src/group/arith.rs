//! Allocation-free small-matrix kernels for the closure hot loop.

use crate::field::Field;

/// Field arithmetic with full `q x q` tables when `q <= 256`.
pub(crate) struct Arith {
    field: Field,
    q: usize,
    mul: Option<Vec<u8>>,
    add: Option<Vec<u8>>,
}

impl Arith {
    pub(crate) fn new(field: &Field) -> Arith {
        let q = field.order() as usize;
        let (mul, add) = if q <= 256 {
            let mut m = vec![0u8; q * q];
            let mut a = vec![0u8; q * q];
            for x in 0..q {
                for y in 0..q {
                    m[x * q + y] = field.mul(x as u64, y as u64) as u8;
                    a[x * q + y] = field.add(x as u64, y as u64) as u8;
                }
            }
            (Some(m), Some(a))
        } else {
            (None, None)
        };
        Arith { field: field.clone(), q, mul, add }
    }

    pub(crate) fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.mul {
            Some(t) => t[a as usize * self.q + b as usize] as u64,
            None => self.field.mul(a, b),
        }
    }

    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        match &self.add {
            Some(t) => t[a as usize * self.q + b as usize] as u64,
            None => self.field.add(a, b),
        }
    }

    /// `out = a * b` for `n x n` row-major entry slices.
    #[inline]
    pub(crate) fn matmul(&self, n: usize, a: &[u64], b: &[u64], out: &mut [u64]) {
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u64;
                for k in 0..n {
                    let x = a[i * n + k];
                    if x != 0 {
                        s = self.add(s, self.mul(x, b[k * n + j]));
                    }
                }
                out[i * n + j] = s;
            }
        }
    }

    /// Scales so the first nonzero entry is 1.
    #[inline]
    pub(crate) fn canonicalize(&self, m: &mut [u64]) {
        if let Some(&lead) = m.iter().find(|&&c| c != 0) {
            if lead != 1 {
                let inv = self.field.inv(lead).expect("nonzero");
                for c in m.iter_mut() {
                    *c = self.mul(*c, inv);
                }
            }
        }
    }

    /// Determinant by elimination on a scratch copy.
    pub(crate) fn det(&self, n: usize, m: &[u64]) -> u64 {
        let f = &self.field;
        let mut a = m.to_vec();
        let mut det = 1u64;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for c in 0..n {
                    a.swap(piv * n + c, col * n + c);
                }
                det = f.neg(det);
            }
            let p = a[col * n + col];
            det = self.mul(det, p);
            let pinv = f.inv(p).expect("nonzero pivot");
            for r in col + 1..n {
                let x = a[r * n + col];
                if x == 0 {
                    continue;
                }
                let factor = f.neg(self.mul(x, pinv));
                for c in col..n {
                    a[r * n + c] = self.add(a[r * n + c], self.mul(factor, a[col * n + c]));
                }
            }
        }
        det
    }
}
