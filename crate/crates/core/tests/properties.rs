//! Randomized and exhaustive invariants: exact ring axioms, total order
//! laws, and conservation of decomposition mass.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

use veronese_fsig::exactalg::{lex_compare, ExponentVector, Polynomial};
use veronese_fsig::frobenius::{decompose_roots, FrobeniusParams};
use veronese_fsig::veronese::VeroneseContext;

const VARS: usize = 3;

fn arb_polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0u32..4, VARS), -9i64..10, 1i64..5),
        0..5,
    )
    .prop_map(|terms| {
        let mut p = Polynomial::zero(VARS);
        for (exps, num, den) in terms {
            let t = Polynomial::from_monomial(
                ExponentVector::new(exps),
                BigRational::new(BigInt::from(num), BigInt::from(den)),
            );
            p = p.add(&t).expect("same ambient");
        }
        p
    })
}

fn arb_monomial() -> impl Strategy<Value = ExponentVector> {
    prop::collection::vec(0u32..6, VARS).prop_map(ExponentVector::new)
}

proptest! {
    #[test]
    fn addition_is_associative_and_commutative(
        a in arb_polynomial(), b in arb_polynomial(), c in arb_polynomial()
    ) {
        let left = a.add(&b).unwrap().add(&c).unwrap();
        let right = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
    }

    #[test]
    fn multiplication_is_associative_and_commutative(
        a in arb_polynomial(), b in arb_polynomial(), c in arb_polynomial()
    ) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn multiplication_distributes(
        a in arb_polynomial(), b in arb_polynomial(), c in arb_polynomial()
    ) {
        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn subtraction_inverts_addition(a in arb_polynomial(), b in arb_polynomial()) {
        prop_assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a);
    }

    #[test]
    fn order_is_total_and_antisymmetric(m1 in arb_monomial(), m2 in arb_monomial()) {
        use std::cmp::Ordering;
        let ab = lex_compare(&m1, &m2).unwrap();
        let ba = lex_compare(&m2, &m1).unwrap();
        prop_assert_eq!(ab, ba.reverse());
        prop_assert_eq!(ab == Ordering::Equal, m1 == m2);
    }

    #[test]
    fn order_is_transitive(
        m1 in arb_monomial(), m2 in arb_monomial(), m3 in arb_monomial()
    ) {
        let mut sorted = [m1, m2, m3];
        sorted.sort();
        prop_assert!(lex_compare(&sorted[0], &sorted[1]).unwrap() != std::cmp::Ordering::Greater);
        prop_assert!(lex_compare(&sorted[1], &sorted[2]).unwrap() != std::cmp::Ordering::Greater);
        prop_assert!(lex_compare(&sorted[0], &sorted[2]).unwrap() != std::cmp::Ordering::Greater);
    }

    #[test]
    fn decomposition_mass_is_conserved(
        n in 1u32..4, d in 1u32..7, pi in 0usize..4, j_seed in 0u32..100
    ) {
        let p = [2u64, 3, 5, 7][pi];
        prop_assume!(!(d as u64).is_multiple_of(p));
        let e = match n {
            1 => 4,
            2 => 2,
            _ => 1,
        };
        let ctx = VeroneseContext::new(n, d).unwrap();
        let params = FrobeniusParams::new(ctx, p, e).unwrap();
        let source = ctx.class(j_seed % d).unwrap();
        let decomp = decompose_roots(&params, source).unwrap();
        prop_assert_eq!(decomp.total(), &params.root_rank());
        prop_assert!(decomp.multiplicities().iter().all(|v| !v.is_negative()));
    }
}

/// Normalized convergence over the acceptance grid: every class multiplicity
/// sits within d/p^(ne) of the uniform share 1/d. Exhaustive, exact.
#[test]
fn normalized_multiplicities_near_uniform_on_grid() {
    for n in [2u32, 3, 4] {
        for d in [2u32, 3, 4, 5] {
            for p in [2u64, 3, 5, 7] {
                if (d as u64).is_multiple_of(p) {
                    continue;
                }
                let mut e = 1u32;
                while p.checked_pow(n * e).map(|r| r <= 100_000).unwrap_or(false) {
                    let ctx = VeroneseContext::new(n, d).unwrap();
                    let params = FrobeniusParams::new(ctx, p, e).unwrap();
                    let decomp = decompose_roots(&params, ctx.canonical_class()).unwrap();
                    let rank = params.root_rank();
                    let uniform = BigRational::new(BigInt::one(), BigInt::from(d));
                    let bound = BigRational::new(BigInt::from(d), rank.clone());
                    for m in decomp.multiplicities() {
                        let ratio = BigRational::new(m.clone(), rank.clone());
                        assert!((ratio - &uniform).abs() <= bound, "n={n} d={d} p={p} e={e}");
                    }
                    e += 1;
                }
            }
        }
    }
}
