use std::f64::consts::PI;
use std::sync::OnceLock;

use gapcert_core::enclosure::Enclosure;
use gapcert_core::fuchsia::{
    bolza_systole, classes_csv, elliptic_classes, enumerate_hyperbolic, generator_matrices,
    stability_check, verify_bolza, word_matrix, ClassKind, Classification, FieldElem,
    HyperbolicEnumeration, Mobius,
};
use gapcert_core::groupkit::{Presentation, Word};
use proptest::prelude::*;

fn classes_at_3() -> &'static HyperbolicEnumeration {
    static E: OnceLock<HyperbolicEnumeration> = OnceLock::new();
    E.get_or_init(|| enumerate_hyperbolic(3.0, 64).unwrap())
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(vec![1, -1, 2, -2, 3, -3]), 0..max_len)
        .prop_map(|l| Word::from_letters(&l))
}

#[test]
fn generator_relations_hold_exactly() {
    let (x, y, z) = generator_matrices();
    assert!(x.pow(2).is_identity());
    assert!(y.pow(3).is_identity());
    assert!(z.pow(8).is_identity());
    assert!((&(&x * &y) * &z).is_identity());
    assert!(x.field_trace().unwrap().is_zero());
    assert_eq!(z.field_trace().unwrap().abs(), FieldElem::alpha());
}

#[test]
fn classification_of_generators() {
    let (_, _, z) = generator_matrices();
    assert!(matches!(
        Mobius::identity().classify(128),
        Classification::Identity
    ));
    match z.classify(128) {
        Classification::Elliptic { order, half_angle } => {
            assert_eq!(order, Some(8));
            assert!(half_angle.overlaps(&Enclosure::pi(128).div_i64(8)));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn elliptic_list_is_deduplicated_generator_powers() {
    let p = Presentation::triangle(2, 3, 8);
    let e = elliptic_classes().unwrap();
    let reps: Vec<String> = e.iter().map(|c| p.format_word(&c.representative)).collect();
    let mut expected = vec!["x".to_string(), "y".into(), "y^2".into(), "z".into()];
    expected.extend((2..8).map(|k| format!("z^{k}")));
    assert_eq!(reps, expected);
    let mut keys = Vec::new();
    for c in &e {
        assert!(c.trace.to_f64().abs() < 2.0);
        let ClassKind::Elliptic {
            rotation_angle,
            abelian_image,
            ..
        } = &c.kind
        else {
            panic!()
        };
        keys.push((
            (rotation_angle.mid_f64() * 1e9).round() as i64,
            *abelian_image,
        ));
    }
    keys.sort();
    keys.dedup();
    assert_eq!(
        keys.len(),
        e.len(),
        "invariants separate the elliptic classes"
    );
}

#[test]
fn no_hyperbolic_classes_below_systole() {
    let h = enumerate_hyperbolic(0.1, 64).unwrap();
    assert!(h.classes.is_empty());
}

#[test]
fn hyperbolic_classes_up_to_three() {
    let h = classes_at_3();
    assert_eq!(h.classes.len(), 8);
    assert_eq!(h.classes.iter().filter(|c| c.is_primitive()).count(), 7);
    let a2 = 2.0 + 2f64.sqrt();
    let shortest = 2.0 * ((a2 - 1.0) / 2.0).acosh();
    assert!((h.classes[0].length().unwrap().mid_f64() - shortest).abs() < 1e-12);
    for c in &h.classes {
        let len = c.length().unwrap();
        assert!(len.upper_f64() <= 3.0 + 1e-12);
        let tr = word_matrix(&c.representative)
            .unwrap()
            .field_trace()
            .unwrap();
        let from_trace = tr.abs().enclose(128).div_i64(2).acosh().mul_i64(2);
        assert!(from_trace.overlaps(len));
        for conj in &c.conjugates {
            let g = word_matrix(&conj.conjugator).unwrap();
            let lhs = &(&g * &c.matrix()) * &g.inverse();
            assert!(lhs.proj_eq(&word_matrix(&conj.word).unwrap()));
        }
    }
}

#[test]
fn roots_of_non_primitive_classes() {
    let h = classes_at_3();
    let mut seen = 0;
    for c in &h.classes {
        let ClassKind::Hyperbolic {
            primitive,
            root,
            length,
        } = &c.kind
        else {
            panic!()
        };
        if *primitive {
            assert!(root.is_none());
            continue;
        }
        seen += 1;
        let (idx, k) = root.expect("non-primitive classes record their root");
        let delta = &h.classes[idx];
        assert!(delta.is_primitive());
        let power = word_matrix(&delta.representative.pow(k as i64)).unwrap();
        assert_eq!(power.field_trace().unwrap().abs(), c.trace);
        assert!(delta.length().unwrap().mul_i64(k as i64).overlaps(length));
    }
    assert_eq!(seen, 1);
}

#[test]
fn enumeration_is_stable_under_longer_words() {
    let report = stability_check(classes_at_3(), 2).unwrap();
    assert!(report.identical, "{report:?}");
    assert_eq!(report.extended_classes, 8);
}

#[test]
fn completeness_certificate_arithmetic() {
    let c = &classes_at_3().certificate;
    assert!((c.candidate_radius - (3.0 + 2.0 * c.domain_radius)).abs() < 1e-9);
    assert!((c.conjugator_radius - (1.5 + 2.0 * c.domain_radius + 0.5)).abs() < 1e-9);
    assert!(c.search_radius >= c.candidate_radius.max(c.conjugator_radius));
    assert_eq!(c.classes, 8);
}

#[test]
fn bolza_group() {
    let v = verify_bolza(128).unwrap();
    assert_eq!(v.quotient.index(), 48);
    let (len, _) = bolza_systole(3, 128).unwrap();
    assert!((len.mid_f64() - 2.0 * (1.0 + 2f64.sqrt()).acosh()).abs() < 1e-12);
}

#[test]
fn csv_export() {
    let csv = classes_csv(&classes_at_3().classes).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("kind,word,order_or_length,primitive,trace")
    );
    assert_eq!(lines.count(), 8);
}

#[test]
fn rotation_angles() {
    let e = elliptic_classes().unwrap();
    let ClassKind::Elliptic { half_angle, .. } = &e[0].kind else {
        panic!()
    };
    assert!((half_angle.mid_f64() - PI / 2.0).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matrices_respect_concatenation(a in word_strategy(10), b in word_strategy(10)) {
        let lhs = word_matrix(&a.concat(&b)).unwrap();
        let rhs = &word_matrix(&a).unwrap() * &word_matrix(&b).unwrap();
        prop_assert!(lhs.proj_eq(&rhs));
        prop_assert!(lhs.det() == gapcert_core::fuchsia::ExtElem::one());
    }

    #[test]
    fn field_is_exact(c in prop::array::uniform4(-20i64..20)) {
        let q = c.map(num_rational::Ratio::from_integer);
        let e = FieldElem::from_rationals(q).unwrap();
        let a = FieldElem::alpha();
        let a2 = &a * &a;
        let a4 = &a2 * &a2;
        prop_assert_eq!(&a4, &(&a2.scale(4) - &FieldElem::from_int(2)));
        prop_assert_eq!(&(&e * &FieldElem::one()), &e);
        prop_assert!((e.enclose(128).mid_f64() - e.to_f64()).abs() <= 1e-9 * (1.0 + e.to_f64().abs()));
    }

    #[test]
    fn traces_are_conjugation_invariant(a in word_strategy(8), c in word_strategy(8)) {
        let m = word_matrix(&a).unwrap();
        let g = word_matrix(&c).unwrap();
        let conj = &(&g * &m) * &g.inverse();
        prop_assert_eq!(conj.field_trace().unwrap().abs(), m.field_trace().unwrap().abs());
    }
}
