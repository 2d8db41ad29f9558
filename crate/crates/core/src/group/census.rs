//! Transvection counts: enumerated censuses and the closed-form bounds they
//! are compared against.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::arith::Arith;
use super::closure::{GroupClosure, GroupError};
use crate::field::{ExtPair, Field};
use crate::rep::RepCase;

/// `E - I` has rank one and squares to zero.
pub(crate) fn is_transvection_entries(a: &Arith, n: usize, e: &[u64]) -> bool {
    let f = a.field();
    let mut d = e.to_vec();
    for i in 0..n {
        d[i * n + i] = f.sub(d[i * n + i], 1);
    }
    let Some(piv) = d.iter().position(|&c| c != 0) else {
        return false;
    };
    let (pr, pc) = (piv / n, piv % n);
    // rank one: every 2x2 minor through the pivot vanishes
    for i in 0..n {
        for j in 0..n {
            if a.mul(d[i * n + j], d[piv]) != a.mul(d[i * n + pc], d[pr * n + j]) {
                return false;
            }
        }
    }
    let mut sq = vec![0u64; n * n];
    a.matmul(n, &d, &d, &mut sq);
    sq.iter().all(|&c| c == 0)
}

/// Number of transvections in an enumerated group.
pub fn transvection_census(g: &GroupClosure) -> Result<u64, GroupError> {
    if g.capped() {
        return Err(GroupError::Capped(g.order() as usize));
    }
    if g.is_projective() {
        return Err(GroupError::ProjectiveInput);
    }
    let n = g.degree();
    Ok(g.count_where(|e| is_transvection_entries(g.arith(), n, e)))
}

/// Enumerates the monomial group `A x| S_N` (all invertible diagonals times
/// all permutation matrices) over `field`. Returns `(order, transvections)`.
pub fn monomial_group_census(field: &Field, n: usize) -> (u64, u64) {
    let a = Arith::new(field);
    let q = field.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut perms = Vec::new();
    permutations(&mut perm, 0, &mut perms);
    let units = (q - 1).pow(n as u32);
    let mut order = 0u64;
    let mut count = 0u64;
    let mut e = vec![0u64; n * n];
    for p in &perms {
        for mut idx in 0..units {
            e.iter_mut().for_each(|c| *c = 0);
            for (row, &col) in p.iter().enumerate() {
                e[row * n + col] = 1 + idx % (q - 1);
                idx /= q - 1;
            }
            order += 1;
            count += is_transvection_entries(&a, n, &e) as u64;
        }
    }
    (order, count)
}

fn permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

/// Counts the transvections of `GU_k(q0)` (identity form over
/// `F_{q0^2} = field`) by enumerating every rank-one `N = u w^T` with
/// `I + N` an isometry and `N^2 = 0`.
pub fn unitary_transvection_count(field: &Field, k: usize) -> Result<u64, GroupError> {
    let pair = ExtPair::new(field).map_err(|_| GroupError::Inconsistent)?;
    let a = Arith::new(field);
    let q = field.order();
    let vectors = |normalized: bool| -> Vec<Vec<u64>> {
        (1..q.pow(k as u32))
            .map(|mut c| {
                (0..k)
                    .map(|_| {
                        let x = c % q;
                        c /= q;
                        x
                    })
                    .collect::<Vec<u64>>()
            })
            .filter(|v| !normalized || v.iter().find(|&&x| x != 0) == Some(&1))
            .collect()
    };
    let us = vectors(true);
    let ws = vectors(false);
    let mut seen = HashSet::new();
    let mut g = vec![0u64; k * k];
    for u in &us {
        for w in &ws {
            let dot = (0..k).fold(0, |s, i| a.add(s, a.mul(w[i], u[i])));
            if dot != 0 {
                continue;
            }
            for i in 0..k {
                for j in 0..k {
                    g[i * k + j] = a.add((i == j) as u64, a.mul(u[i], w[j]));
                }
            }
            let unitary = (0..k).all(|i| {
                (0..k).all(|j| {
                    let s = (0..k).fold(0u64, |acc, r| acc_add(&a, acc, pair.eps_code(g[r * k + i]), g[r * k + j]));
                    s == (i == j) as u64
                })
            });
            if unitary {
                seen.insert(g.clone());
            }
        }
    }
    Ok(seen.len() as u64)
}

fn acc_add(a: &Arith, acc: u64, x: u64, y: u64) -> u64 {
    a.add(acc, a.mul(x, y))
}

/// The closed-form quantities of the transvection argument, with
/// `k = floor(N/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusBounds {
    pub n: usize,
    pub q: u64,
    pub case: RepCase,
    pub k: usize,
    /// `(q-1) N(N-1)/2`, the monomial-group ceiling
    pub t_linear: i128,
    /// `(q+1) N(N-1)/2`
    pub t_unitary: i128,
    /// transvections of `SL_k(q)`
    pub tprime_linear: i128,
    /// transvections of `SU_k(q)`: the linear count at `-q`
    pub tprime_unitary: i128,
    /// `f(q) = (1+..+q^{k-1})(1+..+q^{k-2}) - k(2k-1)`
    pub f_value: i128,
    /// `h_k(q) = ((-q)^k-1)((-q)^{k-1}-1) / (-(q+1)^2)`
    pub h_value: i128,
    /// `h_k(q) - k(2k-1)`
    pub h_margin: i128,
}

impl CensusBounds {
    /// The sign the argument needs for this case.
    pub fn positive(&self) -> bool {
        match self.case {
            RepCase::Linear => self.f_value > 0,
            RepCase::Unitary => self.h_margin > 0,
        }
    }
}

fn geometric(x: i128, terms: usize) -> Option<i128> {
    (0..terms as u32).try_fold(0i128, |s, i| s.checked_add(x.checked_pow(i)?))
}

/// `(x^k - 1)(x^{k-1} - 1)`
fn tprime_numerator(x: i128, k: usize) -> Option<i128> {
    let a = x.checked_pow(k as u32)?.checked_sub(1)?;
    let b = x.checked_pow(k as u32 - 1)?.checked_sub(1)?;
    a.checked_mul(b)
}

/// `((x^k - 1)(x^{k-1} - 1)) / (x - 1)`; at `x = -q` this is the unitary
/// count.
fn tprime(x: i128, k: usize) -> Option<i128> {
    if k == 0 {
        return Some(0);
    }
    let num = tprime_numerator(x, k)?;
    debug_assert_eq!(num % (x - 1), 0);
    Some(num / (x - 1))
}

/// `None` when a quantity does not fit in 128 bits.
pub fn census_bounds(n: usize, q: u64, case: RepCase) -> Option<CensusBounds> {
    let k = n / 2;
    let qi = q as i128;
    let pairs = (n * n.saturating_sub(1) / 2) as i128;
    let kk = (k * (2 * k).saturating_sub(1)) as i128;
    let f_value = if k == 0 { -kk } else { geometric(qi, k)?.checked_mul(geometric(qi, k - 1)?)? - kk };
    let h_value = if k == 0 {
        0
    } else {
        let num = tprime_numerator(-qi, k)?;
        let den = -(qi + 1) * (qi + 1);
        debug_assert_eq!(num % den, 0);
        num / den
    };
    Some(CensusBounds {
        n,
        q,
        case,
        k,
        t_linear: (qi - 1).checked_mul(pairs)?,
        t_unitary: (qi + 1).checked_mul(pairs)?,
        tprime_linear: tprime(qi, k)?,
        tprime_unitary: tprime(-qi, k)?,
        f_value,
        h_value,
        h_margin: h_value - kk,
    })
}

/// The count the `N = 5` unitary step compares with `10(q+1)`, exactly as
/// printed: `(q^3+1)(q^2-1)/(q+1)^2`. It coincides with `h_3(q)`; the
/// number of transvections of `SU_3(q)` is `(q^3+1)(q-1)`, a factor `q+1`
/// larger.
pub fn su3_printed_count(q: u64) -> i128 {
    let q = q as i128;
    (q.pow(3) + 1) * (q * q - 1) / ((q + 1) * (q + 1))
}
