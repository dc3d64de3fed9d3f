use klein_core::group_ring::{GroupElement, PairElement, PairRing};
use klein_core::obstruction::{relation, BasisKind, KeyComb, Witness};
use klein_core::twisted_cohomology::Cochain;
use klein_core::{
    class_is_zero, finite_quotient_test, obstruction_value, reduce_full_ring, verify_certificate,
    windowed_membership, Certificate, EpsilonSign, Generator, Outcome, QuotientBudget,
    QuotientSpec, Strategy, WindowedSearch,
};

fn g(m: i64, n: i64) -> GroupElement {
    GroupElement::new(m, n)
}

fn accepted(c: &Certificate) {
    let report =
        verify_certificate(&c.to_json()).unwrap_or_else(|e| panic!("{e}: {}", c.to_json()));
    assert_eq!(
        report.outcome,
        serde_json::to_value(c.outcome).unwrap().as_str().unwrap()
    );
}

/// Rewrites a field and recomputes the hash, so only the semantic check can
/// catch the change.
fn tampered(c: &Certificate, edit: impl FnOnce(&mut Certificate)) -> String {
    let mut c = c.clone();
    edit(&mut c);
    c.replay_hash = c.body_hash();
    c.to_json()
}

#[test]
fn windowed_zero_certificates_replay() {
    let mut target = relation(BasisKind::Alpha, Generator::BLeft, &[g(1, 0), g(0, -1)]);
    target.add_scaled(
        &relation(BasisKind::Alpha, Generator::CRight, &[g(1, 1), g(2, -1)]),
        -3,
    );
    let c = windowed_membership(BasisKind::Alpha, 2, &target, &WindowedSearch::default()).unwrap();
    assert_eq!(c.outcome, Outcome::Zero);
    accepted(&c);
    let bad = tampered(&c, |c| {
        if let Witness::Relations { terms } = &mut c.witness {
            terms[0].coefficient += 1;
        }
    });
    assert!(verify_certificate(&bad).is_err());
}

#[test]
fn character_certificates_replay() {
    let eps = EpsilonSign::from_congruence(24);
    let mut psi = Cochain::zero(4);
    psi.set(
        2,
        PairRing::monomial(PairElement::new(g(1, 2), g(-1, 0)), 3),
    );
    let c = class_is_zero(&eps, &psi, &Strategy::Character).unwrap();
    assert_eq!(c.outcome, Outcome::Nonzero);
    accepted(&c);
    assert!(
        verify_certificate(&tampered(&c, |c| c.witness = Witness::Character { value: 4 })).is_err()
    );

    let j = (1..=24).find(|&j| eps.get(j) == -eps.get(2)).unwrap();
    psi.set(j, PairRing::monomial(PairElement::new(g(0, 0), g(0, 0)), 3));
    let c = class_is_zero(&eps, &psi, &Strategy::Character).unwrap();
    assert_eq!(c.outcome, Outcome::Zero);
    accepted(&c);
}

#[test]
fn obstruction_certificates_replay() {
    let v = obstruction_value().unwrap();
    let full = reduce_full_ring(v.to_group_tensor().terms(), 4, 8).unwrap();
    assert_eq!(full.outcome, Outcome::Zero);
    accepted(&full);

    let budget = QuotientBudget::default();
    let member =
        finite_quotient_test(v.terms(), 4, &QuotientSpec::new(2, 2, 2).unwrap(), &budget).unwrap();
    assert_eq!(member.outcome, Outcome::Inconclusive);
    accepted(&member);

    let sep =
        finite_quotient_test(v.terms(), 4, &QuotientSpec::new(2, 4, 0).unwrap(), &budget).unwrap();
    assert_eq!(sep.outcome, Outcome::Nonzero);
    accepted(&sep);
    let Witness::Functional { modulus, value, .. } = sep.witness else {
        panic!()
    };
    assert_eq!((modulus, value), (64, 32));

    // a functional with one entry changed, and the same functional on a
    // relation
    let bad = tampered(&sep, |c| {
        if let Witness::Functional { entries, .. } = &mut c.witness {
            entries[0].value += 1;
        }
    });
    assert!(verify_certificate(&bad).is_err());
    let other: KeyComb = relation(
        BasisKind::Alpha,
        Generator::BRight,
        &[g(1, 0), g(0, 1), g(1, 1), g(0, 3)],
    );
    let bad = tampered(&sep, |c| {
        c.target = klein_core::obstruction::TargetDoc::new(BasisKind::Alpha, 4, &other)
    });
    assert!(verify_certificate(&bad).is_err());
}

#[test]
fn bit_flips_break_the_hash() {
    let c = reduce_full_ring(
        &relation(BasisKind::Group, Generator::CLeft, &[g(1, 1), g(0, 2)]),
        2,
        8,
    )
    .unwrap();
    accepted(&c);
    let text = c.to_json();
    let flipped = text.replacen("\"c-left\"", "\"b-left\"", 1);
    assert_ne!(flipped, text);
    assert!(verify_certificate(&flipped).is_err());
}

#[test]
fn outcome_must_match_witness() {
    let c = finite_quotient_test(
        obstruction_value().unwrap().terms(),
        4,
        &QuotientSpec::new(2, 3, 3).unwrap(),
        &QuotientBudget::default(),
    )
    .unwrap();
    assert!(verify_certificate(&tampered(&c, |c| c.outcome = Outcome::Zero)).is_err());
}
