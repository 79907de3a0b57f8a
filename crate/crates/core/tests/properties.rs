// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use sedecim::arith::is_prime_u64;
use sedecim::class_oracle::{class_number_charsum, class_number_forms};
use sedecim::cyclotomic::euclid_gcd;
use sedecim::domain::{canonical_generator, in_domain, reduce_to_domain};
use sedecim::lw::bracket;
use sedecim::sieve_lab::{twists, FactorizationRecord};
use sedecim::symbols::{quad_symbol, quartic_symbol, SymbolRing};
use sedecim::{CycInt, SymbolValue};

fn cyc(r: i64) -> impl Strategy<Value = CycInt> {
    prop::array::uniform4(-r..=r).prop_map(CycInt::from_i64s)
}

fn nonzero(r: i64) -> impl Strategy<Value = CycInt> {
    cyc(r).prop_filter("nonzero", |w| !w.is_zero())
}

fn odd(r: i64) -> impl Strategy<Value = CycInt> {
    cyc(r).prop_filter("odd", CycInt::is_odd)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_laws(x in cyc(50), y in cyc(50), z in cyc(50)) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn gcd_divides_both(x in nonzero(30), y in nonzero(30)) {
        let g = euclid_gcd(&x, &y).unwrap();
        prop_assert!(g.divides(&x) && g.divides(&y));
    }

    #[test]
    fn reduction_is_canonical(w in nonzero(40), k in -20i64..=20, j in 0i64..8) {
        let (r, _) = reduce_to_domain(&w).unwrap();
        prop_assert!(in_domain(&r).unwrap());
        let moved = w.times_epsilon_pow(k).times_zeta_pow(j);
        let (r2, _) = reduce_to_domain(&moved).unwrap();
        prop_assert!((0..8).any(|i| r.times_zeta_pow(i) == r2));
        prop_assert_eq!(canonical_generator(&moved).unwrap(), canonical_generator(&w).unwrap());
    }

    #[test]
    fn symbols_multiplicative(a in odd(20), b in odd(20), w in odd(12)) {
        let ab = &a * &b;
        prop_assert_eq!(
            quad_symbol(&ab, &w, SymbolRing::M).unwrap(),
            quad_symbol(&a, &w, SymbolRing::M).unwrap() * quad_symbol(&b, &w, SymbolRing::M).unwrap()
        );
        let q = quartic_symbol(&a, &w).unwrap();
        prop_assert_eq!(q * q, quad_symbol(&a, &w, SymbolRing::M).unwrap());
    }

    #[test]
    fn bracket_is_torsion_invariant(w in odd(15), j in 0i64..8) {
        prop_assert_eq!(bracket(&w.times_zeta_pow(j)).unwrap().total, bracket(&w).unwrap().total);
    }

    #[test]
    fn twists_satisfy_gamma2_identity(w in odd(10), z in odd(10)) {
        let t = twists(&w, &z).unwrap();
        prop_assert_eq!(t.gamma2, t.m * t.gamma3);
        prop_assert!(t.gamma1 != SymbolValue::I && t.gamma1 != SymbolValue::MinusI);
    }

    #[test]
    fn factorization_record_invariants(w in odd(30)) {
        if let Some(r) = FactorizationRecord::new(&w).unwrap() {
            prop_assert!(r.check());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn class_number_oracles_agree(n in 3u64..40_000) {
        let p = (n..).find(|&q| q % 2 == 1 && is_prime_u64(q)).unwrap();
        prop_assert_eq!(class_number_forms(p).unwrap(), class_number_charsum(p).unwrap());
    }
}
