//! Randomized kernel properties, as strategies plus checks, so both the
//! proptest suite and the acceptance runner drive the same code.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use riordan::analysis::{jfraction_eval, jfraction_expand, JFraction};
use riordan::construct::involution_from_unchecked;
use riordan::rational::{int, ratio, Rational};
use riordan::{RiordanElement, TruncatedSeries};

pub const ORDER: usize = 16;
pub const CASES: u32 = 64;

type Check = Result<(), TestCaseError>;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=5, any::<bool>()).prop_map(|(n, d, neg)| ratio(if neg { -n } else { n }, d))
}

/// Random series: six leading coefficients plus up to three scattered ones,
/// which keeps coefficient growth in check.
pub fn series() -> impl Strategy<Value = TruncatedSeries> {
    (prop::collection::vec(rational(), 6), prop::collection::vec((0usize..=ORDER, rational()), 0..4)).prop_map(
        |(head, extra)| {
            let mut c = vec![int(0); ORDER + 1];
            for (i, v) in head.into_iter().enumerate() {
                c[i] = v;
            }
            for (i, v) in extra {
                c[i] = v;
            }
            TruncatedSeries::from_coeffs(c)
        },
    )
}

pub fn unit_series() -> impl Strategy<Value = TruncatedSeries> {
    (series(), nonzero_rational()).prop_map(|(s, c0)| {
        let mut c = s.into_coeffs();
        c[0] = c0;
        TruncatedSeries::from_coeffs(c)
    })
}

/// `f1` is drawn from `{1, -1, 2, -2, 1/2}`.
pub fn composable_series() -> impl Strategy<Value = TruncatedSeries> {
    let leads = [int(1), int(-1), int(2), int(-2), ratio(1, 2)];
    (series(), prop::sample::select(leads.to_vec())).prop_map(|(s, f1)| {
        let mut c = s.into_coeffs();
        c[0] = int(0);
        c[1] = f1;
        TruncatedSeries::from_coeffs(c)
    })
}

pub fn element() -> impl Strategy<Value = RiordanElement> {
    (unit_series(), composable_series()).prop_map(|(g, f)| RiordanElement::new(g, f).unwrap())
}

pub fn pseudo_involution() -> impl Strategy<Value = RiordanElement> {
    prop_oneof![
        Just(RiordanElement::identity(ORDER)),
        nonzero_rational().prop_map(|a| RiordanElement::bin_element(&a, ORDER)),
    ]
}

pub fn check_ring_axioms((a, b, c): (TruncatedSeries, TruncatedSeries, TruncatedSeries)) -> Check {
    let zero = TruncatedSeries::zero(ORDER);
    let one = TruncatedSeries::one(ORDER);
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&a + &b, &b + &a);
    prop_assert_eq!(&a + &zero, a.clone());
    prop_assert!((&a + &(-&a)).is_zero());
    prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    prop_assert_eq!(a.mul(&b), b.mul(&a));
    prop_assert_eq!(a.mul(&one), a.clone());
    prop_assert_eq!(a.mul(&(&b + &c)), &a.mul(&b) + &a.mul(&c));
    Ok(())
}

pub fn check_comp_inverse(f: TruncatedSeries) -> Check {
    let u = f.comp_inverse().unwrap();
    let x = TruncatedSeries::x(ORDER);
    prop_assert_eq!(f.compose(&u).unwrap(), x.clone());
    prop_assert_eq!(u.compose(&f).unwrap(), x);
    Ok(())
}

/// `s` is squared first, so the root exists; the root with the positive
/// constant term must come back.
pub fn check_sqrt(s: TruncatedSeries) -> Check {
    let sq = s.square();
    let root = sq.sqrt().unwrap();
    prop_assert_eq!(root.square(), sq);
    let expected = if s.coeff(0) < int(0) { -&s } else { s };
    prop_assert_eq!(root, expected);
    Ok(())
}

pub fn jfraction() -> impl Strategy<Value = JFraction> {
    (1usize..=ORDER / 2).prop_flat_map(|m| {
        (prop::collection::vec(rational(), m), prop::collection::vec(nonzero_rational(), m))
            .prop_map(|(a, b)| JFraction::new(a, b))
    })
}

pub fn check_jfraction_round_trip(jf: JFraction) -> Check {
    let order = 2 * jf.depth();
    let g = jfraction_eval(&jf, order);
    prop_assert_eq!(jf.exact_order(), Some(order));
    let back = jfraction_expand(&g, jf.depth()).unwrap();
    prop_assert_eq!(back, jf);
    Ok(())
}

pub fn check_matrix_product((a, b): (RiordanElement, RiordanElement)) -> Check {
    let rows = 13;
    let prod = a.product(&b).matrix(rows).unwrap();
    prop_assert_eq!(prod, a.matrix(rows).unwrap().mul(&b.matrix(rows).unwrap()));
    let m = a.matrix(rows).unwrap();
    prop_assert_eq!(m.row(0), &[a.g().coeff(0)][..]);
    Ok(())
}

pub fn check_group_axioms((a, b, c): (RiordanElement, RiordanElement, RiordanElement)) -> Check {
    let id = RiordanElement::identity(ORDER);
    prop_assert_eq!(a.product(&b).product(&c), a.product(&b.product(&c)));
    prop_assert_eq!(a.product(&id), a.clone());
    prop_assert_eq!(id.product(&a), a.clone());
    let inv = a.inverse().unwrap();
    prop_assert_eq!(a.product(&inv), id.clone());
    prop_assert_eq!(inv.product(&a), id);
    prop_assert_eq!(a.product(&b).inverse().unwrap(), b.inverse().unwrap().product(&inv));
    Ok(())
}

/// The conjugate is an involution, and the two rearrangements
/// `(g, f) · I = P · (g(-x), f(-x))` and `(g, f) = P · (g(-x), f(-x)) · I` hold.
pub fn check_construction((base, p): (RiordanElement, RiordanElement)) -> Check {
    let inv = involution_from_unchecked(&base, &p).unwrap();
    prop_assert!(inv.is_involution().holds());
    let right = p.product(&base.reflect());
    prop_assert_eq!(base.product(&inv), right.clone());
    prop_assert_eq!(base.clone(), right.product(&inv));
    Ok(())
}
