use braidimage::field::Field;
use braidimage::group::{census_bounds, monomial_group_census, pack, unpack, Packer};
use braidimage::rep::RepCase;
use braidimage::Matrix;
use proptest::prelude::*;

fn fields() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![(2u64, 1u32), (2, 3), (2, 4), (3, 2), (5, 1), (7, 2), (13, 2), (29, 1)])
        .prop_map(|(p, d)| Field::new(p, d, None).unwrap())
}

fn field_and_codes(len: usize) -> impl Strategy<Value = (Field, Vec<u64>)> {
    fields().prop_flat_map(move |f| {
        let q = f.order();
        (Just(f), prop::collection::vec(0..q, len))
    })
}

proptest! {
    #[test]
    fn frobenius_is_a_field_automorphism((f, v) in field_and_codes(2), r in 0i64..8) {
        let (a, b) = (v[0], v[1]);
        let fr = |x| f.frobenius_code(x, r);
        prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
        prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
        prop_assert_eq!(f.frobenius_code(fr(a), -r), a);
    }

    #[test]
    fn rank_plus_nullity((f, v) in field_and_codes(12), rows in 1usize..=3) {
        let cols = 12 / rows;
        let m = Matrix::from_codes(&f, rows, cols, v[..rows * cols].to_vec()).unwrap();
        prop_assert_eq!(m.rank() + m.kernel_dim(), cols);
        for k in m.kernel() {
            let col = Matrix::from_codes(&f, cols, 1, k).unwrap();
            prop_assert!(m.mul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn pack_round_trips((f, v) in field_and_codes(25), n in 1usize..=5) {
        let m = Matrix::from_codes(&f, n, n, v[..n * n].to_vec()).unwrap();
        let code = pack(&m).unwrap();
        prop_assert_eq!(unpack(&code, &f, n).unwrap(), m.clone());
        let packer = Packer::new(n, f.order());
        prop_assert_eq!(packer.unpack(&packer.pack(m.codes())), m.codes().to_vec());
    }
}

#[test]
fn monomial_groups_stay_under_the_transvection_ceiling() {
    for q in [4u64, 5] {
        let (p, d) = if q == 4 { (2, 2) } else { (5, 1) };
        let f = Field::new(p, d, None).unwrap();
        let (order, count) = monomial_group_census(&f, 5);
        assert_eq!(order, (q - 1).pow(5) * 120);
        let t = census_bounds(5, q, RepCase::Linear).unwrap().t_linear;
        assert_eq!(t, (q as i128 - 1) * 10);
        assert!((count as i128) <= t, "q = {q}: {count} > {t}");
    }
}
