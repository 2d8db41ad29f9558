//! Dickson's classification of subgroups of `PGL_2`, by order matching and
//! the derived series of the enumerated group.

use serde::{Deserialize, Serialize};

use super::classical::{classical_order, ClassicalKind};
use super::closure::{projective_closure, GroupClosure, GroupError};
use crate::field::FqElem;
use crate::linalg::{LinalgError, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", content = "q")]
pub enum DicksonClass {
    /// Derived length at most 2.
    AbelianByAbelian,
    A4,
    S4,
    A5,
    PSL(u64),
    PGL(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DicksonReport {
    pub order: u64,
    /// Orders along `G > G' > G'' > ...`, stopping at 1 or at a perfect group.
    pub derived_orders: Vec<u64>,
    pub solvable: bool,
    /// Every class consistent with the order and derived series; more than
    /// one entry means the match is ambiguous.
    pub candidates: Vec<DicksonClass>,
}

fn is_scalar(m: &Matrix) -> bool {
    m.scalar_value().is_some()
}

fn commutator(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    a.inverse()?.mul(&b.inverse()?)?.mul(a)?.mul(b)
}

/// Generators of `[H, H]` as the normal closure in `H` of the commutators of
/// the generators of `H`. Empty when `[H, H]` is trivial modulo scalars.
fn derived_generators(h_gens: &[Matrix], cap: usize) -> Result<Vec<Matrix>, GroupError> {
    let mut k_gens = Vec::new();
    for (i, a) in h_gens.iter().enumerate() {
        for b in &h_gens[i + 1..] {
            let c = commutator(a, b)?;
            if !is_scalar(&c) {
                k_gens.push(c);
            }
        }
    }
    if k_gens.is_empty() {
        return Ok(k_gens);
    }
    loop {
        let k = projective_closure(&k_gens, cap)?;
        if k.capped() {
            return Err(GroupError::Capped(cap));
        }
        let mut grew = false;
        'scan: for x in h_gens {
            let x_inv = x.inverse()?;
            for y in k_gens.clone() {
                let conj = x_inv.mul(&y)?.mul(x)?;
                if !k.contains(&conj) {
                    k_gens.push(conj);
                    grew = true;
                    break 'scan;
                }
            }
        }
        if !grew {
            return Ok(k_gens);
        }
    }
}

/// Classifies the image in `PGL_2` of a degree-2 group.
///
/// The derived series is computed by repeated normal closures, each
/// enumerated with at most `cap` elements.
pub fn dickson_classify(g: &GroupClosure, cap: usize) -> Result<DicksonReport, GroupError> {
    if g.degree() != 2 {
        return Err(GroupError::WrongDegree { expected: 2, got: g.degree() });
    }
    let owned;
    let pg = if g.is_projective() {
        g
    } else {
        owned = projective_closure(g.gens(), cap)?;
        &owned
    };
    if pg.capped() {
        return Err(GroupError::Capped(cap));
    }
    let order = pg.order();
    let mut derived_orders = vec![order];
    let mut gens: Vec<Matrix> = pg.gens().to_vec();
    let solvable = loop {
        if *derived_orders.last().unwrap() == 1 {
            break true;
        }
        let next = derived_generators(&gens, cap)?;
        let o = if next.is_empty() { 1 } else { projective_closure(&next, cap)?.order() };
        if o == *derived_orders.last().unwrap() {
            break false;
        }
        derived_orders.push(o);
        gens = next;
    };
    let derived_length = derived_orders.len() - 1;

    let mut candidates = Vec::new();
    if solvable && derived_length <= 2 {
        candidates.push(DicksonClass::AbelianByAbelian);
    }
    if order == 12 && derived_orders == [12, 4, 1] {
        candidates.push(DicksonClass::A4);
    }
    if order == 24 && derived_orders == [24, 12, 4, 1] {
        candidates.push(DicksonClass::S4);
    }
    if order == 60 && !solvable {
        candidates.push(DicksonClass::A5);
    }
    let f = g.field();
    let p = f.characteristic();
    for m in (1..=f.degree()).filter(|m| f.degree().is_multiple_of(*m)) {
        let qt = p.pow(m);
        let psl = classical_order(ClassicalKind::PSL, 2, qt)?;
        let pgl = classical_order(ClassicalKind::PGL, 2, qt)?;
        if order as u128 == pgl {
            candidates.push(DicksonClass::PGL(qt));
        }
        if order as u128 == psl {
            candidates.push(DicksonClass::PSL(qt));
        }
    }
    Ok(DicksonReport { order, derived_orders, solvable, candidates })
}

/// The 2x2 model of `sigma_1, sigma_2` for `B_3`:
/// `s1 = [[-1, -1], [0, a]]`, `s2 = [[-1, 0], [1 + a + a^2, a]]`.
pub fn braid3_model(alpha: &FqElem) -> (Matrix, Matrix) {
    let f = alpha.field();
    let one = f.one();
    let m1 = -&one;
    let s1 = Matrix::from_elems(&[vec![m1.clone(), m1.clone()], vec![f.zero(), alpha.clone()]]).unwrap();
    let c = &(&one + alpha) + &(alpha * alpha);
    let s2 = Matrix::from_elems(&[vec![m1, f.zero()], vec![c, alpha.clone()]]).unwrap();
    (s1, s2)
}

/// `(s1 s2^-1)(s1^-1 s2) - (s1^-1 s2)(s1 s2^-1)`.
pub fn commutator_witness(s1: &Matrix, s2: &Matrix) -> Result<Matrix, LinalgError> {
    let x = s1.mul(&s2.inverse()?)?;
    let y = s1.inverse()?.mul(s2)?;
    x.mul(&y)?.sub(&y.mul(&x)?)
}
