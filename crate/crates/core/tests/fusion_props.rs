//! Property tests for the fusion ring, the orbifold subring and `U_{5A}`.

use parafermion::fusion::{canonical_label, fuse, fuse_presented, fuse_vectors, TildeLabel};
use parafermion::orbifold::{derive_full_table, generator_fuse, OrbLabel};
use parafermion::u5a::{b_pairing, b_pairing_from_weights, irr0_list, u_fuse, ULabel};
use parafermion::{FusionVector, IrrLabel};
use proptest::prelude::*;

/// A level in `2..=max` and a label at that level.
fn label(max: u32) -> impl Strategy<Value = IrrLabel> {
    (2..=max).prop_flat_map(|k| {
        let n = IrrLabel::all(k).len();
        (Just(k), 0..n).prop_map(|(k, idx)| IrrLabel::all(k)[idx])
    })
}

fn pair(max: u32) -> impl Strategy<Value = (IrrLabel, IrrLabel)> {
    (2..=max).prop_flat_map(|k| {
        let n = IrrLabel::all(k).len();
        (0..n, 0..n).prop_map(move |(a, b)| {
            let all = IrrLabel::all(k);
            (all[a], all[b])
        })
    })
}

fn triple(max: u32) -> impl Strategy<Value = (IrrLabel, IrrLabel, IrrLabel)> {
    (2..=max).prop_flat_map(|k| {
        let n = IrrLabel::all(k).len();
        (0..n, 0..n, 0..n).prop_map(move |(a, b, c)| {
            let all = IrrLabel::all(k);
            (all[a], all[b], all[c])
        })
    })
}

proptest! {
    #[test]
    fn canonical_label_is_idempotent_and_respects_the_identification(k in 2i64..20, i in 0i64..20, j in -40i64..40) {
        prop_assume!(i <= k);
        let c = canonical_label(i, j, k).unwrap();
        prop_assert!(c.j() < c.i() && c.i() as i64 <= k);
        prop_assert_eq!(canonical_label(c.i() as i64, c.j() as i64, k).unwrap(), c);
        prop_assert_eq!(canonical_label(k - i, j - i, k).unwrap(), c);
        prop_assert_eq!(canonical_label(i, j + k, k).unwrap(), c);
    }

    #[test]
    fn tilde_round_trip(x in label(16)) {
        let t = x.to_tilde();
        prop_assert_eq!((t.i + t.l) % 2, 0);
        prop_assert_eq!(IrrLabel::from_tilde(t).unwrap(), x);
        let alt = TildeLabel::new((x.k() - t.i) as i64, (x.k() + t.l) as i64, x.k() as i64).unwrap();
        prop_assert_eq!(alt.to_label().unwrap(), x);
    }

    #[test]
    fn fusion_is_commutative_and_presentation_independent((a, b) in pair(14)) {
        let ab = fuse(&a, &b).unwrap();
        prop_assert_eq!(&ab, &fuse(&b, &a).unwrap());
        let k = a.k() as i64;
        let (ai, aj) = a.alternate();
        let (bi, bj) = b.alternate();
        prop_assert_eq!(&fuse_presented((ai as i64, aj as i64), (b.i() as i64, b.j() as i64), k), &ab);
        prop_assert_eq!(&fuse_presented((a.i() as i64, a.j() as i64), (bi as i64, bj as i64), k), &ab);
    }

    #[test]
    fn fusion_is_associative((a, b, c) in triple(10)) {
        let (x, y, z) = (FusionVector::single(a), FusionVector::single(b), FusionVector::single(c));
        prop_assert_eq!(
            fuse_vectors(&fuse_vectors(&x, &y), &z),
            fuse_vectors(&x, &fuse_vectors(&y, &z))
        );
    }

    #[test]
    fn theta_is_a_ring_automorphism((a, b) in pair(14)) {
        prop_assume!(a.k() >= 3);
        let lhs = fuse(&a, &b).unwrap().map_labels(|x| x.theta_dual().unwrap());
        let rhs = fuse(&a.theta_dual().unwrap(), &b.theta_dual().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.theta_dual().unwrap().theta_dual().unwrap(), a);
    }

    #[test]
    fn simple_currents_permute(x in label(14), p in 0i64..14) {
        let s = IrrLabel::simple_current(p, x.k());
        let prod = fuse(&s, &x).unwrap();
        prop_assert_eq!(prod.len(), 1);
        prop_assert_eq!(prod.total(), 1);
    }

    #[test]
    fn grading_is_additive((a, b) in pair(14)) {
        let k = a.k();
        for (c, _) in fuse(&a, &b).unwrap().iter() {
            let l = |x: &IrrLabel| x.to_tilde().l % k;
            prop_assert_eq!(l(c), (l(&a) + l(&b)) % k);
        }
    }

    #[test]
    fn sigma_type_iff_l_vanishes_mod_k(x in label(16)) {
        prop_assert_eq!(x.is_sigma_type(), x.to_tilde().l % x.k() == 0);
    }

    #[test]
    fn weights_are_non_negative(x in label(20)) {
        let w = x.conformal_weight();
        prop_assert!(w >= num_rational::BigRational::from_integer(0.into()));
        prop_assert_eq!(w == num_rational::BigRational::from_integer(0.into()), x == IrrLabel::identity(x.k()));
    }

    #[test]
    fn vacuum_odd_is_an_involution(k in 3u32..=12, idx in 0usize..14) {
        let basis = OrbLabel::basis(k);
        let x = basis[idx % basis.len()];
        let g = OrbLabel::new(0, 1, k).unwrap();
        let once = generator_fuse(&g, &x).unwrap();
        prop_assert_eq!(once.len(), 1);
        let y = *once.labels().next().unwrap();
        prop_assert_eq!(generator_fuse(&g, &y).unwrap(), FusionVector::single(x));
    }

    #[test]
    fn orbifold_table_signs_multiply(k in 3u32..=10, a in 0usize..12, b in 0usize..12) {
        let table = derive_full_table(k).unwrap();
        let basis = table.basis();
        let (x, y) = (basis[a % basis.len()], basis[b % basis.len()]);
        for (z, _) in table.get(&x, &y).iter() {
            prop_assert_eq!(z.sign_parity(), (x.sign_parity() + y.sign_parity()) % 2);
        }
        prop_assert_eq!(table.get(&x, &y), table.get(&y, &x));
    }

    #[test]
    fn b_pairing_agrees_with_weights(p in 0i64..5, q in 0i64..5, idx in 0usize..45) {
        let x = irr0_list()[idx];
        prop_assert_eq!(b_pairing(p, q, &x), b_pairing_from_weights(p, q, &x).unwrap());
    }

    #[test]
    fn u5a_fusion_is_commutative_and_unital(i in 0u8..9, j in 0u8..9) {
        prop_assert_eq!(u_fuse(ULabel(i), ULabel(j)).unwrap(), u_fuse(ULabel(j), ULabel(i)).unwrap());
        prop_assert_eq!(u_fuse(ULabel(0), ULabel(i)).unwrap(), FusionVector::single(ULabel(i)));
    }
}
