//! One line per acceptance criterion, `PASS` or `FAIL`, with the numbers
//! behind it. Run with `--nocapture` to see them; `--features heavy` adds
//! the projective `n = 4` enumeration.

use std::time::{Duration, Instant};

use braidimage::field::{ExtPair, Field, FqElem};
use braidimage::group::{
    census_bounds, certify_contains_sl, closure, product_certify, su3_printed_count, transvection_census,
    unitary_transvection_count, PairRoute, ProductVerdict, Verdict,
};
use braidimage::rep::{build_rep, gate, restrict, verify_relations, RepBundle, RepCase, RepParams};
use braidimage::unitary::unitarize;
use braidimage::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn line(criterion: &str, ok: bool, detail: impl AsRef<str>) -> bool {
    println!("criterion {criterion}: {} ({})", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
    ok
}

fn alpha(p: u64, d: u32, order: u64) -> FqElem {
    Field::new(p, d, None).unwrap().element_of_order(order).unwrap()
}

fn bundle(alpha: &FqElem, n: usize, r: usize) -> RepBundle {
    build_rep(&RepParams::new(n, r, alpha.clone()).unwrap(), false).unwrap()
}

/// (p, d, order of alpha)
const GRID_FIELDS: [(u64, u32, u64); 4] = [(2, 3, 7), (13, 2, 7), (29, 1, 28), (13, 1, 12)];

/// Every gated `(field, n, r)` cell with `n <= 12`.
fn grid() -> Vec<RepBundle> {
    let mut out = Vec::new();
    for &(p, d, k) in &GRID_FIELDS {
        let a = alpha(p, d, k);
        for n in 2..=12 {
            for r in 0..=n / 2 {
                let params = RepParams::new(n, r, a.clone()).unwrap();
                if gate(&params).is_ok() {
                    out.push(build_rep(&params, false).unwrap());
                }
            }
        }
    }
    out
}

// Standard tableaux of [n-r, r] as row words: entry i lies in row w[i].
fn ballot_words(n: usize, r: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != r {
            continue;
        }
        let w: Vec<u8> = (0..n).map(|i| (mask >> i & 1) as u8).collect();
        let mut top = 0;
        let mut bottom = 0;
        let ok = w.iter().all(|&x| {
            if x == 0 {
                top += 1
            } else {
                bottom += 1
            }
            bottom <= top
        });
        if ok {
            out.push(w);
        }
    }
    out
}

fn relations_hold(b: &RepBundle) -> bool {
    let one = b.params.field().one();
    let minus_alpha = -&b.params.alpha;
    let g = &b.gens;
    let quadratic = g.iter().all(|m| m.add_scalar(&one).unwrap().mul(&m.add_scalar(&minus_alpha).unwrap()).unwrap().is_zero());
    let braid_and_tl = g.windows(2).all(|w| {
        let (x, y) = (&w[0], &w[1]);
        let xy = x.mul(y).unwrap();
        let yx = y.mul(x).unwrap();
        let xyx = xy.mul(x).unwrap();
        let sum = [&yx, x, y].iter().fold(xyx.add(&xy).unwrap(), |s, m| s.add(m).unwrap());
        xyx == yx.mul(y).unwrap() && sum.add_scalar(&one).unwrap().is_zero()
    });
    let far = (0..g.len())
        .all(|i| (i + 2..g.len()).all(|j| g[i].mul(&g[j]).unwrap() == g[j].mul(&g[i]).unwrap()));
    quadratic && braid_and_tl && far
}

#[test]
fn criterion_1_relations() {
    let start = Instant::now();
    let cells = grid();
    let failures: Vec<_> = cells
        .iter()
        .filter(|b| !relations_hold(b) || !verify_relations(b).is_empty())
        .map(|b| (b.params.field().order(), b.params.n, b.params.r))
        .collect();
    let elapsed = start.elapsed();
    let ok = line(
        "1",
        failures.is_empty() && elapsed < Duration::from_secs(120),
        format!("{} gated cells, failures {failures:?}, {:.1}s", cells.len(), elapsed.as_secs_f64()),
    );
    assert!(ok);
}

#[test]
fn criterion_2_spectrum() {
    let cells = grid();
    let mut mismatches = Vec::new();
    let mut not_greater = Vec::new();
    for b in &cells {
        let (n, r) = (b.params.n, b.params.r);
        let words = ballot_words(n, r);
        // sigma_1 acts by -1 on tableaux with 1 and 2 in the first row, by
        // alpha on those with 2 in the second row
        let a = words.iter().filter(|w| w[1] == 0).count();
        let bb = words.len() - a;
        let m = &b.gens[0];
        let ka = m.add_scalar(&b.params.field().one()).unwrap().kernel_dim();
        let kb = m.add_scalar(&-&b.params.alpha).unwrap().kernel_dim();
        if (ka, kb) != (a, bb) {
            mismatches.push((n, r, ka, kb, a, bb));
        }
        if n >= 5 && ka <= kb {
            not_greater.push((n, r, ka, kb));
        }
    }
    let pinned: [((usize, usize), (usize, usize)); 4] =
        [((5, 0), (1, 0)), ((5, 1), (3, 1)), ((5, 2), (3, 2)), ((4, 2), (1, 1))];
    let f8 = alpha(2, 3, 7);
    let printed_ok = pinned.iter().all(|&((n, r), ab)| {
        let b = bundle(&f8, n, r);
        let one = b.params.field().one();
        let m = &b.gens[0];
        (m.add_scalar(&one).unwrap().kernel_dim(), m.add_scalar(&-&b.params.alpha).unwrap().kernel_dim()) == ab
    });
    let ok = line(
        "2",
        mismatches.is_empty() && not_greater.is_empty() && printed_ok,
        format!(
            "{} cells; kernel mismatches {mismatches:?}; a <= b at n >= 5: {not_greater:?}; printed values match: {printed_ok}",
            cells.len()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_3_linear_n3() {
    let b = bundle(&alpha(2, 3, 7), 3, 1);
    let g = closure(&b.gens, 1 << 20).unwrap();
    let cert = certify_contains_sl(&g);
    // |GL_2(8)| = (8^2-1)(8^2-8)
    let gl = (64 - 1) * (64 - 8);
    let ok = line("3", g.order() == 3528 && gl == 3528 && cert.verdict == Verdict::ContainsSL, format!("order {}, {:?}", g.order(), cert.verdict));
    assert!(ok);
}

#[test]
fn criterion_4_unitary_n3() {
    let b = bundle(&alpha(13, 2, 7), 3, 1);
    assert_eq!(b.case, RepCase::Unitary);
    let pair = ExtPair::new(b.params.field()).unwrap();
    let u = unitarize(&b, &pair).unwrap();
    let g = closure(&u.bundle.gens, 1 << 20).unwrap();
    let f = b.params.field();
    let id = Matrix::identity(f, 2);
    let isometries = g.matrices().all(|m| m.conj_transpose(&pair).mul(&m).unwrap() == id);
    let det_one = g.matrices().filter(|m| m.det().unwrap().is_one()).count();
    // |GU_2(q)| = q (q^2 - 1)(q + 1), |SU_2(q)| = q (q^2 - 1)
    let q: u64 = 13;
    let (gu, su) = (q * (q * q - 1) * (q + 1), q * (q * q - 1));
    let ok = line(
        "4",
        !g.capped() && isometries && gu == 30576 && gu % g.order() == 0 && det_one as u64 == su && su == 2184,
        format!("order {} divides {gu}: {}, all isometries: {isometries}, det-1 count {det_one}", g.order(), gu % g.order() == 0),
    );
    assert!(ok);
}

#[cfg(feature = "heavy")]
#[test]
fn criterion_5_linear_n4_projective() {
    use braidimage::group::{projective_closure, DEFAULT_CAP};
    let start = Instant::now();
    let b = bundle(&alpha(2, 3, 7), 4, 1);
    let g = projective_closure(&b.gens, DEFAULT_CAP).unwrap();
    let cert = certify_contains_sl(&g);
    // |PGL_3(8)| = 8^3 (8^2-1)(8^3-1), equal to |PSL_3(8)| as gcd(3, 7) = 1
    let pgl: u64 = 512 * 63 * 511;
    let printed: u64 = 16_515_072;
    let ok = line(
        "5",
        g.order() == pgl && cert.verdict == Verdict::ContainsSL,
        format!(
            "projective order {}, |PGL_3(8)| = {pgl}, quoted figure {printed} agrees: {}, {:?} via {:?}, {:.0}s",
            g.order(),
            printed == pgl,
            cert.verdict,
            cert.route,
            start.elapsed().as_secs_f64()
        ),
    );
    assert!(ok);
}

#[cfg(not(feature = "heavy"))]
#[test]
fn criterion_5_linear_n4_projective() {
    println!("criterion 5: SKIP (enable the heavy feature)");
}

// The 2-dimensional model: s1 = [[-1,-1],[0,a]], s2 = [[-1,0],[1+a+a^2,a]].
fn model(a: &FqElem) -> (Matrix, Matrix) {
    let f = a.field();
    let one = f.one();
    let s1 = Matrix::from_elems(&[vec![-&one, -&one], vec![f.zero(), a.clone()]]).unwrap();
    let c = &(&one + a) + &(a * a);
    let s2 = Matrix::from_elems(&[vec![-&one, f.zero()], vec![c, a.clone()]]).unwrap();
    (s1, s2)
}

fn random_gated_alphas(count: usize) -> Vec<FqElem> {
    const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    while out.len() < count {
        let p = PRIMES[rng.gen_range(0..PRIMES.len())];
        let e: u64 = rng.gen_range(7..=60);
        if e.is_multiple_of(p) || !seen.insert((p, e)) {
            continue;
        }
        let d = (1..=16u32).find(|&d| (p as u128).pow(d) % e as u128 == 1);
        let Some(d) = d else { continue };
        if (p as u128).pow(d) > 1 << 20 {
            continue;
        }
        let a = alpha(p, d, e);
        if gate(&RepParams::new(3, 1, a.clone()).unwrap()).is_ok() {
            out.push(a);
        }
    }
    out
}

#[test]
fn criterion_6_trace_identities() {
    let mut bad = Vec::new();
    let alphas = random_gated_alphas(20);
    for a in &alphas {
        let f = a.field();
        let b = bundle(a, 3, 1);
        let s = &a.inv().unwrap() + a;
        let expected = &f.one() - &s;
        let comm = b.evaluate_word(&[1, 2, -1, -2]).unwrap().trace();
        let mixed = b.evaluate_word(&[1, -2]).unwrap().trace();
        let (m1, m2) = model(a);
        let model_mixed = m1.mul(&m2.inverse().unwrap()).unwrap().trace();
        if comm != expected || mixed != expected || model_mixed != expected {
            bad.push((f.characteristic(), a.mult_order().unwrap(), comm.code(), mixed.code(), expected.code()));
        }
    }
    let ok = line("6", bad.is_empty(), format!("{} random gated (p, e); mismatches {bad:?}", alphas.len()));
    assert!(ok);
}

fn sl2_basis_generators(f: &Field) -> Vec<Matrix> {
    let mut gens = Vec::new();
    let p = f.characteristic();
    for i in 0..f.degree() {
        let b = p.pow(i);
        gens.push(Matrix::from_codes(f, 2, 2, vec![1, b, 0, 1]).unwrap());
        gens.push(Matrix::from_codes(f, 2, 2, vec![1, 0, b, 1]).unwrap());
    }
    gens
}

/// Independent count: non-identity unipotent 2x2 matrices of determinant 1
/// are exactly `I + N` with `N != 0`, `N^2 = 0`.
fn sl2_transvections_by_nilpotents(f: &Field) -> u64 {
    let q = f.order();
    let mut count = 0;
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                if (a, b, c) == (0, 0, 0) {
                    continue;
                }
                // [[a, b], [c, -a]] squares to (a^2 + bc) I
                if f.add(f.mul(a, a), f.mul(b, c)) == 0 {
                    count += 1;
                }
            }
        }
    }
    count
}

#[test]
fn criterion_7_transvection_census() {
    let mut ok = true;
    let mut census = Vec::new();
    for (p, d) in [(2u64, 2u32), (5, 1), (7, 1), (2, 3), (3, 2)] {
        let f = Field::new(p, d, None).unwrap();
        let q = f.order();
        let g = closure(&sl2_basis_generators(&f), 1 << 20).unwrap();
        let t = transvection_census(&g).unwrap();
        let b = census_bounds(4, q, RepCase::Linear).unwrap();
        ok &= g.order() == q * (q * q - 1) && t == q * q - 1 && t as i128 == b.tprime_linear;
        ok &= t == sl2_transvections_by_nilpotents(&f);
        census.push((q, t));
    }
    let prime_powers: Vec<u64> = (4..=64u64)
        .filter(|&q| (2..=q).find(|p| q % p == 0).is_some_and(|p| { let mut x = q; while x % p == 0 { x /= p } x == 1 }))
        .collect();
    let f_ok = (3..=8).all(|k| prime_powers.iter().all(|&q| census_bounds(2 * k, q, RepCase::Linear).unwrap().f_value > 0));
    let h_ok = (3..=8).all(|k| {
        prime_powers.iter().all(|&q| {
            census_bounds(2 * k, q, RepCase::Unitary).unwrap().h_margin > 0
                && census_bounds(2 * k + 1, q, RepCase::Unitary).unwrap().h_margin > 0
        })
    });
    ok &= f_ok && h_ok;
    line("7", ok, format!("SL_2 census {census:?}; f(q) > 0 for 3 <= k <= 8, 4 <= q <= 64: {f_ok}; h_k(q) - k(2k-1) > 0 on the same range: {h_ok}"));

    // N = 5 unitary: the inequality as printed, then the SU_3(q) count it
    // stands for, checked by enumeration for q = 2, 3.
    let printed: Vec<(u64, i128, i128)> = (3..=9u64).map(|q| (q, su3_printed_count(q), 10 * (q as i128 + 1))).collect();
    let printed_ok = printed.iter().all(|&(_, lhs, t)| lhs > t);
    line(
        "7 (N = 5 unitary, as printed)",
        printed_ok,
        format!("(q^3+1)(q^2-1)/(q+1)^2 vs 10(q+1): {printed:?}"),
    );
    let enumerated: Vec<(u64, u64)> = [(2u64, 2u32), (3, 2)]
        .iter()
        .map(|&(p, d)| (p, unitary_transvection_count(&Field::new(p, d, None).unwrap(), 3).unwrap()))
        .collect();
    let enum_ok = enumerated.iter().all(|&(q, t)| t == (q.pow(3) + 1) * (q - 1));
    let su3_ok = (3..=64u64).all(|q| ((q.pow(3) + 1) * (q - 1)) as i128 > 10 * (q as i128 + 1));
    let ok = line(
        "7 (N = 5 unitary, SU_3 transvections)",
        enum_ok && su3_ok,
        format!("enumerated {enumerated:?} = (q^3+1)(q-1); exceeds 10(q+1) for 3 <= q <= 64: {su3_ok}"),
    ) && ok;
    assert!(ok);
}

/// The printed `N = 5` unitary inequality. It is false at `q = 3, 4`; the
/// census test checks the true transvection count instead.
#[test]
#[ignore = "false as printed for q = 3 and q = 4"]
fn criterion_7_printed_n5_unitary_inequality() {
    for q in 3..=9u64 {
        assert!(su3_printed_count(q) > 10 * (q as i128 + 1), "fails at q = {q}");
    }
}

#[test]
fn criterion_8_special_morphism() {
    let mut ok = true;
    for &(p, d, k) in &GRID_FIELDS {
        let b = bundle(&alpha(p, d, k), 4, 2);
        ok &= b.gens[2] == b.gens[0] && b.gens[1] != b.gens[0];
    }
    assert!(line("8", ok, "R(sigma_3) = R(sigma_1) on [2,2] over all four fields"));
}

#[test]
fn criterion_9_branching() {
    let mut bad = Vec::new();
    let mut single = 0;
    for b in grid().iter().filter(|b| b.params.n >= 3) {
        let (n, r) = (b.params.n, b.params.r);
        let d1 = ballot_words(n - 1, r).len();
        let d2 = if r >= 1 { ballot_words(n - 1, r - 1).len() } else { 0 };
        let gens = &b.gens[..n - 2];
        let zero_off = gens.iter().all(|m| {
            (0..b.dim).all(|i| (0..b.dim).all(|j| (i < d1) == (j < d1) || m.code(i, j) == 0))
        });
        let res = restrict(b).unwrap();
        let dims = (res.upper.as_ref().map(|x| x.dim), res.lower.as_ref().map(|x| x.dim));
        let want = ((d1 > 0).then_some(d1), (d2 > 0).then_some(d2));
        if 2 * r == n {
            single += 1;
        }
        if !zero_off || dims != want || d1 + d2 != b.dim {
            bad.push((n, r, dims, want));
        }
    }
    assert!(line("9", bad.is_empty(), format!("{single} single-block [m,m] cells; failures {bad:?}")));
}

#[test]
fn criterion_10_products() {
    let a = alpha(2, 3, 7);
    let small = product_certify(&[bundle(&a, 3, 0), bundle(&a, 3, 1)], 1 << 20).unwrap();
    let pair = &small.pairs[0];
    let (d0, d1) = (small.factors[0].det_image_order, small.factors[1].det_image_order);
    let h0 = small.factors[0].order.unwrap();
    let h1 = small.factors[1].order.unwrap();
    let expected = h0 * h1 / gcd(d0, d1);
    let n3 = pair.joint_order == Some(3528) && expected == 3528 && pair.verdict == ProductVerdict::ContainsProduct;
    line(
        "10 (n = 3)",
        n3,
        format!("[3] order {h0}, [2,1] order {h1}, det images {d0}, {d1}: joint {:?}, expected {expected}, {:?}", pair.joint_order, pair.verdict),
    );

    let cap = if cfg!(feature = "heavy") { 1 << 26 } else { 1 << 18 };
    let start = Instant::now();
    let big = product_certify(&[bundle(&a, 4, 1), bundle(&a, 4, 2)], cap).unwrap();
    let pair = &big.pairs[0];
    let honest = match pair.verdict {
        ProductVerdict::ContainsProduct => big.factors.iter().all(|f| f.certified()),
        ProductVerdict::Capped => pair.route != PairRoute::NotAttempted || !big.factors[0].certified(),
        _ => false,
    };
    let ok = line(
        "10 (n = 4)",
        honest,
        format!(
            "[3,1] + [2,2] at cap {cap}: factors {:?}, pair via {:?} -> {:?} ({}), {:.1}s",
            big.factors.iter().map(|f| f.certificate.verdict.clone()).collect::<Vec<_>>(),
            pair.route,
            pair.verdict,
            pair.reason,
            start.elapsed().as_secs_f64()
        ),
    ) && n3;
    assert!(ok);
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
