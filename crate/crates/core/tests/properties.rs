mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_axioms_hold(a in poly(5, 3), b in poly(5, 3), c in poly(5, 3)) {
        ring_axioms(a, b, c)?;
    }

    #[test]
    fn normalize_is_idempotent_and_scale_invariant(a in poly(6, 3), k in nonzero_rat()) {
        normalize_laws(a, k)?;
    }

    #[test]
    fn canonical_text_round_trips(a in poly(6, 4)) {
        text_round_trip(a)?;
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(4, 2), b in poly(4, 2)) {
        exact_division(a, b)?;
    }

    #[test]
    fn derivations_obey_leibniz(
        images in [poly(3, 2), poly(3, 2), poly(3, 2)],
        a in poly(4, 3),
        b in poly(4, 3),
    ) {
        leibniz(images, a, b)?;
    }

    #[test]
    fn derivations_obey_the_quotient_rule(
        images in [poly(2, 2), poly(2, 2), poly(2, 2)],
        a in poly(3, 2),
        b in poly(3, 2),
    ) {
        quotient_rule(images, a, b)?;
    }

    #[test]
    fn resultant_is_antisymmetric(f in in_x_upto(3), g in in_x_upto(3)) {
        resultant_antisymmetry(f, g)?;
    }

    #[test]
    fn resultant_is_multiplicative(f1 in in_x_upto(2), f2 in in_x_upto(2), g in in_x_upto(2)) {
        resultant_multiplicativity(f1, f2, g)?;
    }

    #[test]
    fn resultant_commutes_with_specialization(f in in_x_upto(3), g in in_x_upto(3), pt in point()) {
        resultant_specialization(f, g, pt)?;
    }

    #[test]
    fn bareiss_and_cofactor_match_permutation_expansion(m in matrix(5)) {
        determinants_agree(m)?;
    }

    #[test]
    fn resultant_vanishes_iff_common_factor((f, g) in univariate_pair()) {
        resultant_iff_gcd(f, g)?;
    }
}

#[test]
fn corrupted_derivation_is_caught() {
    use polyreplay::frame::CorruptedDerivation;
    let s = syms();
    let d = derivation([
        polyreplay::MultiPoly::var(s.y),
        polyreplay::MultiPoly::var(s.z),
        polyreplay::MultiPoly::int(1),
    ]);
    let bad = CorruptedDerivation { inner: &d, extra: polyreplay::MultiPoly::int(1) };
    let a = polyreplay::MultiPoly::var(s.x);
    let b = polyreplay::MultiPoly::var(s.y);
    assert!(d.check_leibniz(&a, &b));
    assert!(!bad.check_leibniz(&a, &b));
}
