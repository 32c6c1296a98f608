//! Property tests for the algebraic identities the library is built on.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use k3fm::cf;
use k3fm::efm;
use k3fm::fm::{self, ChargePair, OrthCondition};
use k3fm::lattice::{normalize_fiber_degree, LatticeBasis, MukaiVector, NsClass};

fn k3() -> LatticeBasis {
    LatticeBasis::default_k3()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exhaustive, not sampled: symmetry and bilinearity of the intersection
/// form on the default rank-2 basis for all |coords| <= 8.
#[test]
fn intersection_form_is_symmetric_and_bilinear_exhaustively() {
    let b = k3();
    let range = -8i64..=8;
    for ax in range.clone() {
        for ay in range.clone() {
            let a = NsClass::new(vec![ax, ay]);
            for bx in range.clone() {
                for by in range.clone() {
                    let c = NsClass::new(vec![bx, by]);
                    assert_eq!(b.intersect(&a, &c).unwrap(), b.intersect(&c, &a).unwrap());
                }
            }
        }
    }
    // Bilinearity: (a + b).c = a.c + b.c over the same box.
    for ax in range.clone() {
        for ay in range.clone() {
            let a = NsClass::new(vec![ax, ay]);
            for bx in range.clone() {
                for by in range.clone() {
                    let v = NsClass::new(vec![bx, by]);
                    let sum = &a + &v;
                    for (cx, cy) in [(1, 0), (0, 1), (3, -5), (-8, 8)] {
                        let c = NsClass::new(vec![cx, cy]);
                        assert_eq!(
                            b.intersect(&sum, &c).unwrap(),
                            b.intersect(&a, &c).unwrap() + b.intersect(&v, &c).unwrap()
                        );
                    }
                }
            }
        }
    }
}

fn mukai_vector_strategy() -> impl Strategy<Value = MukaiVector> {
    (-5i64..=5, -5i64..=5, -5i64..=5, -5i64..=5)
        .prop_map(|(r, x, y, s)| MukaiVector::new(r, NsClass::new(vec![x, y]), s))
}

fn ns_class_strategy() -> impl Strategy<Value = NsClass> {
    (-5i64..=5, -5i64..=5).prop_map(|(x, y)| NsClass::new(vec![x, y]))
}

proptest! {
    #[test]
    fn mukai_pairing_is_twist_invariant(
        v in mukai_vector_strategy(),
        w in mukai_vector_strategy(),
        l in ns_class_strategy(),
    ) {
        let b = k3();
        let before = b.mukai_pairing(&v, &w).unwrap();
        let after = b.mukai_pairing(&b.twist(&v, &l).unwrap(), &b.twist(&w, &l).unwrap()).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn half_dimension_is_twist_invariant(
        v in mukai_vector_strategy(),
        l in ns_class_strategy(),
    ) {
        let b = k3();
        let twisted = b.twist(&v, &l).unwrap();
        prop_assert_eq!(b.half_dimension(&v), b.half_dimension(&twisted));
    }

    #[test]
    fn self_intersection_is_even(x in -100i64..=100, y in -100i64..=100) {
        let c = NsClass::new(vec![x, y]);
        prop_assert_eq!(k3().self_intersection(&c).unwrap() % 2, 0);
    }

    #[test]
    fn normalization_hits_the_required_window(r in 1i64..500, fd in -500i64..500) {
        prop_assume!(num_integer::gcd(r, fd) == 1);
        let n = normalize_fiber_degree(r, fd).unwrap();
        prop_assert_eq!(fd + n.twist_exponent * r, -n.d);
        if r == 1 {
            prop_assert_eq!(n.d, 0);
        } else {
            prop_assert!(0 < n.d && n.d < r);
        }
        // Idempotence: a normalized pair needs no further twist.
        let again = normalize_fiber_degree(n.r, -n.d).unwrap();
        prop_assert_eq!((again.d, again.twist_exponent), (n.d, 0));
    }

    #[test]
    fn quarter_turn_has_order_four(a in -1000i64..=1000, b in -1000i64..=1000) {
        prop_assume!((a, b) != (0, 0));
        let p = ChargePair::new(a, b).unwrap();
        let once = fm::psi_charge(p);
        let twice = fm::psi_charge(once);
        prop_assert_eq!(twice.as_tuple(), (-a, -b));
        let four = fm::psi_charge(fm::psi_charge(twice));
        prop_assert_eq!(four, p);
    }

    #[test]
    fn orth_transform_commutes_with_global_sign(m in -100i64..=100, n in -100i64..=100) {
        prop_assume!((m, n) != (0, 0));
        let c = OrthCondition::new(m, n).unwrap();
        let flipped = OrthCondition::new(-m, -n).unwrap();
        prop_assert!(fm::orth_transform(c).same_condition(&fm::orth_transform(flipped)));
    }

    #[test]
    fn cf_round_trip_on_large_pairs(r in 2i64..=1_000_000, d_seed in 1i64..=1_000_000) {
        let d = 1 + d_seed % (r - 1).max(1);
        prop_assume!(d < r && num_integer::gcd(r, d) == 1);
        let digits = cf::cf_expand(r, d).unwrap();
        prop_assert!(digits.digits().iter().all(|&a| a >= 2));
        prop_assert_eq!(cf::cf_eval(&digits), rat(r, d));
    }

    #[test]
    fn efm_intermediate_pairs_stay_coprime(r in 2i64..=5000, d_seed in 1i64..=5000) {
        let d = 1 + d_seed % (r - 1).max(1);
        prop_assume!(d < r && num_integer::gcd(r, d) == 1);
        let trace = efm::efm_trace(r, d, 7).unwrap();
        for s in &trace.states {
            prop_assert_eq!(num_integer::gcd(s.r(), s.d()), 1);
            prop_assert_eq!(s.t(), 7);
        }
        prop_assert!(trace.states.windows(2).all(|w| w[0].r() > w[1].r()));
        prop_assert!(trace.terminal().is_terminal());
    }

    #[test]
    fn twist_matrices_compose_to_a_unimodular_reduction(r in 2i64..=2000, d_seed in 1i64..=2000) {
        let d = 1 + d_seed % (r - 1).max(1);
        prop_assume!(d < r && num_integer::gcd(r, d) == 1);
        let trace = efm::efm_trace(r, d, 0).unwrap();
        let total = trace.total_matrix();
        prop_assert_eq!(total.mat().det(), 1);
        prop_assert_eq!(total.apply((r, -d)), (1, 0));
    }
}

/// Twist integrality and evenness also hold on user-supplied even bases of
/// higher rank.
#[test]
fn rank_three_even_basis_supports_twists() {
    // {σ, f, e} with an extra -2-class meeting the section once.
    let basis = LatticeBasis::new(
        vec![vec![-2, 1, 1], vec![1, 0, 0], vec![1, 0, -2]],
        1,
        0,
        NsClass::new(vec![1, 3, 0]),
    )
    .unwrap();
    for x in -3..=3 {
        for y in -3..=3 {
            for z in -3..=3 {
                let c = NsClass::new(vec![x, y, z]);
                assert_eq!(basis.self_intersection(&c).unwrap() % 2, 0);
            }
        }
    }
    let v = MukaiVector::new(2, NsClass::new(vec![1, -1, 2]), 3);
    let l = NsClass::new(vec![1, 4, -2]);
    let b2 = basis.twist(&v, &l).unwrap();
    assert_eq!(
        basis.mukai_pairing(&b2, &b2).unwrap(),
        basis.mukai_pairing(&v, &v).unwrap()
    );
}
