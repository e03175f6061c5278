//! Property tests for exact lattice arithmetic, generic over the integer backend.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use parafermion::lattice::{
    coset_min_norm, coxeter_nu, minimum, quotient_invariants, reflection, root_lattice, shell, sqrt2_a, Isometry, Lattice,
    RootFamily, Sublattice,
};
use parafermion::matrix::{from_i64, rational_from_i64, Matrix};
use parafermion::normal_form::{hermite, invariant_factors, same_row_lattice};
use parafermion::scalar::{format_ratio, parse_ratio, ratio, Q};
use parafermion::{ExactInt, Rational};
use proptest::prelude::*;

/// `B·Bᵀ` for a lower-triangular `B` with positive diagonal: always positive definite.
fn gram_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4).prop_flat_map(|n| {
        proptest::collection::vec(-3i64..=3, n * n).prop_map(move |vals| {
            let b: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| match j.cmp(&i) {
                            std::cmp::Ordering::Less => vals[i * n + j],
                            std::cmp::Ordering::Equal => vals[i * n + j].abs() + 1,
                            std::cmp::Ordering::Greater => 0,
                        })
                        .collect()
                })
                .collect();
            (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|t| b[i][t] * b[j][t]).sum()).collect())
                .collect()
        })
    })
}

/// A nonsingular integer matrix of the given size.
fn full_rank(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(-4i64..=4, n * n)
        .prop_map(move |v| (0..n).map(|i| v[i * n..(i + 1) * n].to_vec()).collect::<Vec<_>>())
        .prop_filter("nonsingular", |rows| {
            let m: Matrix<Q<i64>> = rational_from_i64(rows);
            !m.determinant().is_zero()
        })
}

fn lattice<T: ExactInt>(g: &[Vec<i64>]) -> Lattice<T> {
    Lattice::from_i64(g).unwrap()
}

proptest! {
    #[test]
    fn rationals_serialize_as_lowest_terms(n in -1000i64..1000, d in 1i64..1000) {
        let q: Rational = ratio(n, d);
        let text = format_ratio(&q);
        let (a, b) = text.split_once('/').unwrap();
        let (a, b): (BigInt, BigInt) = (a.parse().unwrap(), b.parse().unwrap());
        prop_assert!(b.is_positive());
        prop_assert!(num_integer::Integer::gcd(&a, &b).is_one());
        prop_assert_eq!(parse_ratio::<BigInt>(&text).unwrap(), q);
    }

    #[test]
    fn dual_is_involutive(g in gram_strategy()) {
        let l: Lattice = lattice(&g);
        let dd = l.dual().dual();
        prop_assert_eq!(dd.gram(), l.gram());
        prop_assert_eq!(l.dual().determinant() * l.determinant(), Rational::one());
    }

    #[test]
    fn discriminant_order_is_the_determinant(g in gram_strategy()) {
        let l: Lattice = lattice(&g);
        let d = l.discriminant_group().unwrap();
        let order: BigInt = d.invariant_factors.iter().product();
        prop_assert_eq!(Rational::from_integer(order), l.determinant());
        for w in d.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn backends_agree(g in gram_strategy()) {
        let small: Lattice<i64> = lattice(&g);
        let big: Lattice<BigInt> = lattice(&g);
        let ds = small.determinant();
        prop_assert_eq!(Rational::new(BigInt::from(*ds.numer()), BigInt::from(*ds.denom())), big.determinant());
        let ms = minimum(&small).unwrap();
        let mb = minimum(&big).unwrap();
        prop_assert_eq!(Rational::new(BigInt::from(*ms.numer()), BigInt::from(*ms.denom())), mb.clone());
        prop_assert_eq!(shell(&small, &ms).unwrap().len(), shell(&big, &mb).unwrap().len());
    }

    #[test]
    fn shells_are_symmetric_and_exact(g in gram_strategy()) {
        let l: Lattice<i64> = lattice(&g);
        let m = minimum(&l).unwrap();
        let s = shell(&l, &m).unwrap();
        prop_assert!(!s.is_empty());
        for v in &s {
            prop_assert_eq!(l.norm_int(v), m);
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            prop_assert!(s.contains(&neg));
        }
        for i in 0..l.rank() {
            prop_assert!(l.gram()[(i, i)] >= m);
        }
    }

    #[test]
    fn quotient_order_is_the_index(rows in (1usize..=4).prop_flat_map(full_rank)) {
        let n = rows.len();
        let l: Lattice<i64> = Lattice::new(Matrix::identity(n)).unwrap();
        let s = Sublattice::<i64>::from_i64(&rows);
        let order: i64 = quotient_invariants(&l, &s).unwrap().iter().product();
        let det: Matrix<Q<i64>> = rational_from_i64(&rows);
        prop_assert_eq!(order, det.determinant().to_integer().abs());
        let a: Matrix<i64> = from_i64(&rows);
        prop_assert_eq!(invariant_factors(&a).iter().product::<i64>().abs(), order);
        prop_assert!(same_row_lattice(&a, &hermite(&a)));
    }

    #[test]
    fn coset_minimum_is_a_class_function(num in proptest::collection::vec(-6i64..=6, 4), shift in proptest::collection::vec(-2i64..=2, 4)) {
        let n: Lattice<i64> = sqrt2_a(5);
        let s: Vec<Q<i64>> = num.iter().map(|&x| ratio(x, 4)).collect();
        let moved: Vec<Q<i64>> = s.iter().zip(&shift).map(|(a, &b)| a + Q::from_integer(b)).collect();
        let m = coset_min_norm(&n, &s).unwrap();
        prop_assert_eq!(m, coset_min_norm(&n, &moved).unwrap());
        prop_assert!(m <= n.norm(&s));
    }

    #[test]
    fn reflections_are_involutive_isometries(idx in 0usize..3, n in 2usize..6) {
        let family = [RootFamily::A, RootFamily::D, RootFamily::E][idx];
        let n = match family {
            RootFamily::A => n,
            RootFamily::D => n.max(4),
            RootFamily::E => 6 + n % 3,
        };
        let r: Lattice<i64> = root_lattice(family, n).unwrap();
        let root = shell(&r, &Q::from_integer(2)).unwrap()[0].clone();
        let t = reflection(&r, &root).unwrap();
        prop_assert!(Isometry::new(&r, t.matrix().clone()).is_ok());
        prop_assert!(t.then(&t).is_identity());
        let image = t.apply_int(&root);
        let neg: Vec<Q<i64>> = root.iter().map(|&x| Q::from_integer(-x)).collect();
        prop_assert_eq!(image, neg);
    }

    #[test]
    fn coxeter_nu_is_fixed_point_free_of_order_k(k in 2usize..10) {
        let nu: Isometry<i64> = coxeter_nu(k);
        prop_assert_eq!(nu.order(k + 1).unwrap(), k);
        prop_assert!(nu.is_fixed_point_free());
        let n: Lattice<i64> = sqrt2_a(k);
        prop_assert!(Isometry::new(&n, nu.matrix().clone()).is_ok());
    }
}
