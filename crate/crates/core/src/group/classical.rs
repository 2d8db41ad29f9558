//! Orders of the finite classical groups.
//!
//! For the unitary kinds `q` is the order of the fixed field, so the
//! matrices live over `F_{q^2}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassicalKind {
    GL,
    SL,
    PGL,
    PSL,
    GU,
    SU,
    PGU,
    PSU,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("order of {0:?}_{1}({2}) overflows 128 bits")]
    Overflow(ClassicalKind, usize, u64),
}

pub(crate) fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn is_prime_power(q: u64) -> bool {
    matches!(poly::prime_factors(q).as_slice(), [_])
}

/// `|kind_N(q)|`, exactly.
pub fn classical_order(kind: ClassicalKind, n: usize, q: u64) -> Result<u128, OrderError> {
    use ClassicalKind::*;
    if n == 0 {
        return Err(OrderError::ZeroDegree);
    }
    if !is_prime_power(q) {
        return Err(OrderError::NotPrimePower(q));
    }
    let overflow = || OrderError::Overflow(kind, n, q);
    let unitary = matches!(kind, GU | SU | PGU | PSU);
    let q = q as u128;
    let mut order = q.checked_pow((n * (n - 1) / 2) as u32).ok_or_else(overflow)?;
    for k in 1..=n as u32 {
        let qk = q.checked_pow(k).ok_or_else(overflow)?;
        // q^k - (-1)^k in the unitary case
        let factor = if unitary && k % 2 == 1 { qk + 1 } else { qk - 1 };
        order = order.checked_mul(factor).ok_or_else(overflow)?;
    }
    let (scalars, center) = if unitary { (q + 1, gcd(n as u128, q + 1)) } else { (q - 1, gcd(n as u128, q - 1)) };
    Ok(match kind {
        GL | GU => order,
        SL | SU | PGL | PGU => order / scalars,
        PSL | PSU => order / scalars / center,
    })
}

#[cfg(test)]
mod tests {
    use super::ClassicalKind::*;
    use super::*;

    #[test]
    fn anchors() {
        assert_eq!(classical_order(GU, 2, 13).unwrap(), 30576);
        assert_eq!(13 * 12 * 196, 30576);
        assert_eq!(classical_order(SU, 2, 13).unwrap(), 2184);
        assert_eq!(classical_order(SL, 2, 8).unwrap(), 504);
        assert_eq!(classical_order(GL, 2, 8).unwrap(), 3528);
        // 8^3 * 63 * 511
        assert_eq!(classical_order(PGL, 3, 8).unwrap(), 16_482_816);
        assert_eq!(classical_order(PSL, 3, 8).unwrap(), 16_482_816);
        assert_eq!(classical_order(PSL, 2, 7).unwrap(), 168);
        assert_eq!(classical_order(PSU, 3, 3).unwrap(), 6048);
    }

    #[test]
    fn gl_order_matches_counting_bases() {
        // |GL_N(q)| = prod (q^N - q^i)
        for (n, q) in [(1usize, 7u64), (2, 4), (3, 5), (4, 3)] {
            let q128 = q as u128;
            let direct: u128 = (0..n as u32).map(|i| q128.pow(n as u32) - q128.pow(i)).product();
            assert_eq!(classical_order(GL, n, q).unwrap(), direct);
        }
    }

    #[test]
    fn gu_order_is_ennola_dual() {
        // |GU_N(q)| = (-1)^? |GL_N(-q)| in absolute value
        for (n, q) in [(2usize, 3i128), (3, 4), (4, 2)] {
            let mut gl_neg: i128 = (-q).pow((n * (n - 1) / 2) as u32);
            for k in 1..=n as u32 {
                gl_neg *= (-q).pow(k) - 1;
            }
            assert_eq!(classical_order(GU, n, q as u64).unwrap() as i128, gl_neg.abs());
        }
    }

    #[test]
    fn errors() {
        assert_eq!(classical_order(GL, 0, 5), Err(OrderError::ZeroDegree));
        assert_eq!(classical_order(GL, 2, 12), Err(OrderError::NotPrimePower(12)));
        assert!(matches!(classical_order(GL, 20, 1 << 20), Err(OrderError::Overflow(..))));
    }
}
