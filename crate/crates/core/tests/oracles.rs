// SPDX-License-Identifier: Apache-2.0

//! Frozen reference values, computed by hand or taken from standard tables.

use num_bigint::BigInt;
use sedecim::class_oracle::{class_number_charsum, class_number_forms, ep, hasse8_check, ClassCache};
use sedecim::cyclotomic::{prime_generator, ResidueField};
use sedecim::domain::{enumerate_domain, enumerate_ideals};
use sedecim::lw::agreement_check;
use sedecim::sieve_lab::{f_char_sum, m_of, sum_s, type1_a, type2_b, Plugin, SMode};
use sedecim::symbols::{kronecker_i64, quartic_symbol};
use sedecim::{CycInt, PrincipalIdeal, QuarterGauss, SymbolValue};

/// `h(−p)` for the odd primes below 100.
const CLASS_NUMBERS: [(u64, u64); 24] = [
    (3, 1),
    (5, 2),
    (7, 1),
    (11, 1),
    (13, 2),
    (17, 4),
    (19, 1),
    (23, 3),
    (29, 6),
    (31, 3),
    (37, 2),
    (41, 8),
    (43, 1),
    (47, 5),
    (53, 6),
    (59, 3),
    (61, 6),
    (67, 1),
    (71, 7),
    (73, 4),
    (79, 5),
    (83, 3),
    (89, 12),
    (97, 4),
];

#[test]
fn class_numbers_below_100() {
    for (p, h) in CLASS_NUMBERS {
        assert_eq!(class_number_forms(p).unwrap(), h, "forms, p = {p}");
        assert_eq!(class_number_charsum(p).unwrap(), h, "charsum, p = {p}");
    }
}

#[test]
fn larger_class_numbers() {
    assert_eq!(class_number_forms(257).unwrap(), 16);
    assert_eq!(class_number_forms(113).unwrap(), 8);
    assert_eq!(class_number_forms(337).unwrap(), 8);
}

#[test]
fn e_p_and_hasse() {
    for (p, e) in [(17, 0), (41, -1), (73, 0), (89, 0), (97, 0), (113, -1), (257, 1)] {
        assert_eq!(ep(p).unwrap(), e, "p = {p}");
        assert!(agreement_check(p, e).unwrap().ok(), "p = {p}");
        assert_eq!(hasse8_check(p).unwrap(), e != 0, "p = {p}");
    }
}

#[test]
fn jacobi_values() {
    assert_eq!(kronecker_i64(2, 7), SymbolValue::One);
    assert_eq!(kronecker_i64(2, 5), SymbolValue::MinusOne);
    assert_eq!(kronecker_i64(-1, 3), SymbolValue::MinusOne);
    assert_eq!(kronecker_i64(6, 9), SymbolValue::Zero);
    assert_eq!(kronecker_i64(5, 21), SymbolValue::One);
}

#[test]
fn quartic_symbol_of_two() {
    // 2^((p−1)/4) mod p: −1 for p = 17, and 1 for p = 113 = 7² + 64·1².
    let w17 = CycInt::from_i64s([1, 2, 0, 0]);
    assert_eq!(quartic_symbol(&CycInt::from_int(2), &w17).unwrap(), SymbolValue::MinusOne);
    for field in ResidueField::all_above(113).unwrap() {
        let w = prime_generator(&field).unwrap();
        assert_eq!(quartic_symbol(&CycInt::from_int(2), &w).unwrap(), SymbolValue::One);
    }
}

#[test]
fn domain_counts() {
    assert_eq!(enumerate_domain(17, true).len(), 56);
    // (1), two primes of norm 9, four of norm 17.
    assert_eq!(enumerate_ideals(17, true).len(), 7);
}

#[test]
fn sums() {
    let mut cache = ClassCache::in_memory();
    assert_eq!(sum_s(100, SMode::Prime, &mut cache).unwrap().value, Some(QuarterGauss::from_integer(-1)));
    let one = PrincipalIdeal::unit();
    assert_eq!(type1_a(8, &one).unwrap().value, Some(QuarterGauss::from_integer(1)));
    for plugin in [Plugin::Ones, Plugin::OmegaSign] {
        assert_eq!(type2_b(8, 8, plugin).unwrap().value, Some(QuarterGauss::from_integer(1)));
    }
    assert_eq!(type2_b(1, 1, Plugin::Ones).unwrap().value, Some(QuarterGauss::from_integer(1)));
}

#[test]
fn twist_and_char_sum_examples() {
    assert_eq!(m_of(&CycInt::one()).unwrap(), SymbolValue::One);
    assert_eq!(m_of(&CycInt::from_i64s([1, 2, 0, 0])).unwrap(), SymbolValue::MinusOne);
    assert_eq!(f_char_sum(&CycInt::one()).unwrap(), BigInt::from(1));
    for p in enumerate_ideals(41, true).iter().filter(|p| p.norm == 17 || p.norm == 41) {
        assert_eq!(f_char_sum(&p.to_cyc()).unwrap(), BigInt::from(0), "{:?}", p.coords);
    }
}
